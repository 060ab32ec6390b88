import os
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dunkl_fueter.operators import DunklContext
from dunkl_fueter.groups import parse_group_spec
from dunkl_fueter.poly import random_poly

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=10, deadline=None, derandomize=True)
settings.register_profile("thorough", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# the built-in groups the suite exercises; mu is odd for the first three
GROUP_SPECS = {
    "A1^2": "a1:d=2:kappa=1/2,1",
    "A1^3": "a1:d=3:kappa=1,0,0",
    "classical3": "a1:d=3:kappa=0,0,0",
    "S3": "sd:d=3:kappa=1",
    "B2": "bd:d=2:kappa=1,1/2",
}

_CTX = {}


def context(spec: str) -> DunklContext:
    if spec not in _CTX:
        _CTX[spec] = DunklContext(parse_group_spec(spec))
    return _CTX[spec]


@pytest.fixture(params=sorted(GROUP_SPECS), scope="session")
def ctx(request):
    return context(GROUP_SPECS[request.param])


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def poly_from(seed: int, dim: int, max_degree: int = 3, **kw):
    return random_poly(random.Random(seed), dim, max_degree, **kw)


# acceptance criteria record one line each; printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
