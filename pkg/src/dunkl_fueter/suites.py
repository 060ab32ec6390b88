"""Verification suites: parameter grids, per-case runners and aggregation.

Every case draws its random inputs from ``random.Random`` seeded with the run
seed and the case key, so results do not depend on execution order or on the
number of worker processes.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from functools import lru_cache
from typing import Optional

from .axial import ComplexSeed, parse_seed, seed_to_axial
from .errors import InputError, ParityViolation, SeedOrderTooHigh
from .fueter import (
    ck_extend,
    ck_shape_check,
    fischer_decompose,
    fischer_rank,
    fueter_theorem31,
    fueter_theorem43,
    half_odd_mu,
    is_dunkl_monogenic,
    lemma21_check,
    lemma32_check,
    monogenic_basis,
    random_monogenic,
)
from .groups import parse_group_spec, validate
from .operators import DunklContext, spherical_residual
from .poly import CliffordPolynomial, format_poly, random_poly
from .report import VerificationReport, merge

SUITES = ("lemma21", "commute", "gamma", "lemma32", "fueter31", "fueter43", "fischer", "ck", "validate-group")


@dataclass(frozen=True)
class CaseSpec:
    suite: str
    group: str
    seed: Optional[str] = None
    m: Optional[int] = None
    n: Optional[int] = None
    k: Optional[int] = None
    negative_control: bool = False
    json: bool = False
    max_degree: int = 8
    rand_seed: int = 0
    count: int = 20
    degree: Optional[int] = None
    jobs: int = 1

    def __post_init__(self):
        if self.suite not in SUITES:
            raise InputError(f"unknown suite {self.suite!r}; expected one of {', '.join(SUITES)}")
        for name in ("m", "n", "k", "degree"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise InputError(f"--{name} must be non-negative")
        if self.count < 1 or self.jobs < 1 or self.max_degree < 0:
            raise InputError("--count and --jobs must be positive, --max-degree non-negative")
        if self.seed is not None:
            parse_seed(self.seed)


@lru_cache(maxsize=None)
def context_for(group: str) -> DunklContext:
    return DunklContext(parse_group_spec(group))


def case_rng(spec: CaseSpec, key: tuple) -> random.Random:
    return random.Random(f"{spec.rand_seed}|{spec.suite}|{spec.group}|{key}")


def _range(value: Optional[int], default: int) -> list[int]:
    return [value] if value is not None else list(range(default + 1))


def _guard(spec: CaseSpec, degree: int, what: str) -> None:
    if degree > spec.max_degree:
        raise InputError(f"{what} has degree {degree} > --max-degree {spec.max_degree}; refusing")


def _residual_text(p) -> str:
    return format_poly(p) if isinstance(p, CliffordPolynomial) else str(p)


# ---------------------------------------------------------------------------
# case enumeration


def _seeds_for(spec: CaseSpec, m: int, *, high: bool = False, n: int = 0, negative: bool = False) -> list[ComplexSeed]:
    if spec.seed is not None:
        return [parse_seed(spec.seed)]
    js = [m + 1] if high else list(range(m + 1))
    out = []
    for j in js:
        # negative controls need seeds long enough to survive the Laplacians
        top = spec.max_degree - j - n if negative else 3
        out += [ComplexSeed(j, k) for k in range(top + 1)]
    return out


def _long_seeds(spec: CaseSpec, m: int, n: int) -> list[ComplexSeed]:
    """Seeds whose image under the Laplacian power is not identically zero.

    Delta^e lowers the degree by 2e, so the short grid (k <= 3) only produces
    zero results once mu >= 5.  These seeds reach total degree 2e+1 and 2e+2,
    as far as the degree guard allows.
    """
    e = m + n + half_odd_mu(context_for(spec.group))
    out = []
    for j in range(m + 1):
        for total in (2 * e + 1, 2 * e + 2):
            k = total - j - n
            if k > 3 and total <= spec.max_degree:
                out.append(ComplexSeed(j, k))
    return out


def enumerate_cases(spec: CaseSpec) -> list[tuple]:
    s = spec.suite
    if s == "validate-group":
        return [("validate",)]
    if s == "commute":
        return [("poly", i) for i in range(spec.count)]
    if s == "gamma":
        return [("spherical", i) for i in range(spec.count)] + [("eigen", n) for n in _range(spec.n, 3)]
    if s == "lemma21":
        return [("lemma21", k, n) for n in _range(spec.n, 2) for k in _range(spec.k, 4)]
    if s == "lemma32":
        seeds = [parse_seed(spec.seed)] if spec.seed else [ComplexSeed(j, k) for j in (0, 1) for k in range(4)]
        return [("lemma32", m, n, str(sd)) for m in _range(spec.m, 3) for n in _range(spec.n, 2) for sd in seeds]
    if s == "fueter31":
        out = []
        for m in _range(spec.m, 2):
            for n in _range(spec.n, 2):
                if spec.negative_control:
                    out += [("neg-exponent", m, n, str(sd)) for sd in _seeds_for(spec, m, n=n, negative=True)]
                    out += [("neg-seed", m, n, str(sd)) for sd in _seeds_for(spec, m, high=True, n=n, negative=True)]
                else:
                    seeds = _seeds_for(spec, m)
                    if spec.seed is None:
                        seeds += _long_seeds(spec, m, n)
                    out += [("fueter31", m, n, str(sd)) for sd in seeds if sd.j <= m]
        return out
    if s == "fueter43":
        out = []
        for n in _range(spec.n, 2):
            ks = _range(spec.k, 3)
            if spec.k is None:
                # z^k with k + n > 2(n + (mu-1)/2) survives the Laplacians
                top = 2 * (n + half_odd_mu(context_for(spec.group)))
                ks += [k for k in range(4, spec.max_degree - n + 1) if top < k + n <= top + 2]
            out += [("fueter43", k, n) for k in ks]
        out += [("ck-shape", k, n) for n in _range(spec.n, 2) for k in _range(spec.k, 2) if k <= n]
        return out
    if s == "fischer":
        return [("rank", n) for n in _range(spec.n, 4)] + [("roundtrip", i) for i in range(spec.count)]
    if s == "ck":
        return [("ck", i) for i in range(spec.count)]
    raise InputError(f"unknown suite {s!r}")


# ---------------------------------------------------------------------------
# per-case runners


def run_case(spec: CaseSpec, key: tuple) -> VerificationReport:
    ctx = context_for(spec.group)
    rng = case_rng(spec, key)
    kind = key[0]
    d = ctx.dim
    case_id = f"{spec.suite}[{':'.join(str(k) for k in key)}]"

    if kind == "validate":
        rep = validate(ctx.group)
        rep.case_id = case_id
        return rep

    report = VerificationReport(case_id, rand_seed=spec.rand_seed)

    if kind == "poly":
        deg = spec.degree if spec.degree is not None else 4
        _guard(spec, deg, "random polynomial")
        p = random_poly(rng, d, deg, 8)
        for i in range(d + 1):
            ti = ctx.T(i, p)
            for j in range(i + 1, d + 1):
                res = ctx.T(j, ti) - ctx.T(i, ctx.T(j, p))
                report.add(f"T{i}T{j} = T{j}T{i}", res.is_zero(), _residual_text(res))
        return report

    if kind == "spherical":
        deg = spec.degree if spec.degree is not None else 4
        _guard(spec, deg, "random polynomial")
        p = random_poly(rng, d, deg, 8)
        res = spherical_residual(ctx, p)
        report.add("x D p + E p + Gamma p = 0", res.is_zero(), _residual_text(res))
        return report

    if kind == "eigen":
        n = key[1]
        x = CliffordPolynomial.xbar(d)
        for idx, P in enumerate(monogenic_basis(ctx, n)):
            res = ctx.gamma_op(P) + P.scale(n)
            report.add(f"Gamma P[{idx}] = -n P", res.is_zero(), _residual_text(res))
            xP = x * P
            res = ctx.gamma_op(xP) - xP.scale(ctx.mu + n - 1)
            report.add(f"Gamma x P[{idx}] = (mu+n-1) x P", res.is_zero(), _residual_text(res))
        return report

    if kind == "lemma21":
        _, k, n = key
        _guard(spec, k + n, "x^k P_n")
        for idx, P in enumerate(monogenic_basis(ctx, n)):
            sub = lemma21_check(ctx, k, P, n)
            report.extend(sub, prefix=f"P[{idx}] ")
        return report

    if kind == "lemma32":
        _, m, n, seed_txt = key
        seed = parse_seed(seed_txt)
        _guard(spec, seed.degree + n, "embedded seed")
        P = random_monogenic(ctx, n, rng)
        report.extend(lemma32_check(ctx, m, seed_to_axial(seed), P, "both", n))
        return report

    if kind in ("fueter31", "neg-exponent", "neg-seed"):
        _, m, n, seed_txt = key
        seed = parse_seed(seed_txt)
        _guard(spec, seed.degree + n, "embedded seed")
        P = random_monogenic(ctx, n, random.Random(f"{spec.rand_seed}|P|{spec.group}|{n}"))
        if kind == "fueter31":
            _, sub = fueter_theorem31(ctx, seed, m, P, n)
            report.extend(sub)
            return report
        offset = -1 if kind == "neg-exponent" else 0
        result, _ = fueter_theorem31(ctx, seed, m, P, n, exponent_offset=offset, negative_control=True)
        ok, res = is_dunkl_monogenic(ctx, result, "D")
        # informational: aggregated by run_suite
        report.add("control residual", not ok, _residual_text(res), "nonzero residual expected somewhere", expect="nonzero")
        return report

    if kind == "fueter43":
        _, k, n = key
        _guard(spec, k + n, "embedded seed")
        g = random_poly(rng, d, n, 4, homogeneous=True, with_x0=False)
        if g.is_zero():
            g = CliffordPolynomial.var(d, 1) ** n
        P = ck_extend(ctx, g)
        _, sub = fueter_theorem43(ctx, k, P, proof_checks=True)
        report.extend(sub, prefix="P=CK[g]: ")
        P0 = random_monogenic(ctx, n, rng)
        r43, sub = fueter_theorem43(ctx, k, P0)
        report.extend(sub, prefix="P x0-free: ")
        r31, _ = fueter_theorem31(ctx, ComplexSeed(0, k), 0, P0, n)
        diff = r43 - r31
        report.add("x0-free P: theorem 4.3 result = theorem 3.1 result (m=0)", diff.is_zero(), _residual_text(diff))
        return report

    if kind == "ck-shape":
        _, k, n = key
        P = random_monogenic(ctx, n - k, rng)
        report.extend(ck_shape_check(ctx, k, P, n - k, seed_power=1))
        return report

    if kind == "rank":
        n = key[1]
        r, dim = fischer_rank(ctx, n)
        report.add(f"rank of x^k M(n-k) generators = dim P({n})", r == dim, str(dim - r), f"rank {r}, dim {dim} = 2^d C(n+d-1,d-1)")
        return report

    if kind == "roundtrip":
        n = rng.randint(0, spec.n if spec.n is not None else 4)
        p = random_poly(rng, d, n, 6, homogeneous=True, with_x0=False)
        dec = fischer_decompose(ctx, p)
        res = dec.recompose() - p
        report.add(f"sum x^k M_(n-k) = p (n={n})", res.is_zero(), _residual_text(res))
        bad = [i for i, part in enumerate(dec.parts) if not ctx.dirac(part).is_zero()]
        report.add("every part is in ker D", not bad, "0" if not bad else f"parts {bad}")
        return report

    if kind == "ck":
        deg = rng.randint(0, spec.degree if spec.degree is not None else 4)
        g = random_poly(rng, d, deg, 5, with_x0=False)
        ck = ck_extend(ctx, g)
        ok, res = is_dunkl_monogenic(ctx, ck, "D")
        report.add("D CK[g] = 0", ok, _residual_text(res))
        res = ck.restrict_x0(0) - g
        report.add("CK[g]|x0=0 = g", res.is_zero(), _residual_text(res))
        hg = random_poly(rng, d, deg, 4, homogeneous=True, with_x0=False)
        report.add("CK preserves homogeneity", ck_extend(ctx, hg).is_homogeneous(deg if hg else None), "0")
        return report

    raise InputError(f"unknown case kind {kind!r}")


def _worker(args: tuple[dict, tuple]) -> VerificationReport:
    spec_dict, key = args
    return run_case(CaseSpec(**spec_dict), key)


def _aggregate_negative(spec: CaseSpec, reports: list[VerificationReport]) -> VerificationReport:
    out = VerificationReport(f"fueter31-negative:{spec.group}", rand_seed=spec.rand_seed)
    for family, label in (("neg-exponent", "exponent reduced by one"), ("neg-seed", "seed with j = m+1")):
        fam = [r for r in reports if r.case_id.startswith(f"fueter31[{family}")]
        hits = [r for r in fam if r.entries and r.entries[0].passed]
        residual = hits[0].entries[0].residual if hits else "0"
        if hits:
            detail = f"{len(hits)} of {len(fam)} cases nonzero; first at {hits[0].case_id}"
        else:
            # D Delta^e kills every seed of degree below 2e + 1
            detail = f"0 of {len(fam)} cases nonzero; seeds may be too short, try a larger --max-degree"
        out.add(
            f"{label}: nonzero residual found",
            bool(hits),
            residual,
            detail,
            expect="nonzero",
        )
    return out


def run_suite(spec: CaseSpec) -> VerificationReport:
    """Execute the named suite; the report is ordered by case key."""
    ctx = context_for(spec.group)
    if spec.suite in ("fueter31", "fueter43"):
        try:
            half_odd_mu(ctx)
        except ParityViolation as exc:
            if not spec.negative_control:
                raise
            rep = VerificationReport(f"{spec.suite}-negative:{spec.group}", rand_seed=spec.rand_seed)
            rep.add("even or fractional mu is refused", True, "0", str(exc), expect="nonzero")
            return rep
        if spec.suite == "fueter31" and spec.seed is not None and spec.m is not None and not spec.negative_control:
            seed = parse_seed(spec.seed)
            if seed.j > spec.m:
                raise SeedOrderTooHigh(f"{seed} needs m >= {seed.j}")
    keys = enumerate_cases(spec)
    if spec.jobs > 1 and len(keys) > 1:
        payload = [(asdict(replace(spec, jobs=1)), key) for key in keys]
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            reports = list(pool.map(_worker, payload))
    else:
        reports = [run_case(spec, key) for key in keys]
    if spec.negative_control and spec.suite == "fueter31":
        return _aggregate_negative(spec, reports)
    if spec.negative_control:
        raise InputError("--negative-control is only defined for fueter31 (and parity refusal in fueter43)")
    return merge(f"{spec.suite}:{spec.group}", reports, spec.rand_seed)


# ---------------------------------------------------------------------------
# full run

#: every built-in family, with odd and even mu, plus the kappa = 0 test mode
FULL_SUITE_GROUPS = (
    "a1:d=2:kappa=1/2,1",
    "a1:d=3:kappa=1,0,0",
    "a1:d=3:kappa=0,0,0",
    "sd:d=3:kappa=1",
    "bd:d=2:kappa=1,1/2",
)


def full_suite_specs(groups=FULL_SUITE_GROUPS, *, rand_seed: int = 0, jobs: int = 1) -> list[CaseSpec]:
    """Every suite on every group; theorem suites on even mu only record the refusal."""
    specs = []
    for g in groups:
        odd = True
        try:
            half = half_odd_mu(context_for(g))
        except ParityViolation:
            odd = False
        for suite in SUITES:
            theorem = suite in ("fueter31", "fueter43")
            specs.append(CaseSpec(suite, g, json=True, rand_seed=rand_seed, jobs=jobs, negative_control=theorem and not odd))
        if odd:
            # a counterexample needs a seed of degree > 2(m + n + half) at m = n = 0
            cap = max(8, 2 * half + 1)
            specs.append(CaseSpec("fueter31", g, json=True, rand_seed=rand_seed, jobs=jobs, negative_control=True, max_degree=cap))
    return specs


def run_full_suite(groups=FULL_SUITE_GROUPS, *, rand_seed: int = 0, jobs: int = 1) -> list[VerificationReport]:
    return [run_suite(spec) for spec in full_suite_specs(groups, rand_seed=rand_seed, jobs=jobs)]

