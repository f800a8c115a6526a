"""Seeded randomized checks of the LCT identities and inequalities on monomial ideals.

Every trial draws from its own Philox (counter-based) stream keyed by
``SeedSequence(seed, spawn_key=(trial,))``, so any single trial can be
replayed from the (seed, trial) pair in a ViolationReport.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .jetdim import lct_origin_via_fibers
from .newton import lct_value
from .poly import MonomialIdeal, multiplicity_at_origin

PRNG_ALGORITHM = "numpy.random.Philox (Philox4x64-10) keyed by SeedSequence(seed, spawn_key=(trial,))"


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 42
    trials: int = 100
    n_range: tuple[int, int] = (1, 3)
    degree_range: tuple[int, int] = (1, 4)
    generator_count_range: tuple[int, int] = (1, 4)
    fiber_levels: int = 12

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for name in ("n_range", "degree_range", "generator_count_range"):
            lo, hi = getattr(self, name)
            if lo > hi or lo < 1:
                raise ValueError(f"{name} must be a nonempty range of positive integers")


@dataclass(frozen=True)
class ViolationReport:
    property: str
    inputs: tuple[str, ...]
    relation: str
    values: tuple[str, ...]
    seed: int
    trial: int

    def to_json(self) -> dict:
        d = asdict(self)
        d["inputs"] = list(self.inputs)
        d["values"] = list(self.values)
        return d


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(trial,))
    return np.random.Generator(np.random.Philox(ss))


def _randint(rng: np.random.Generator, lo: int, hi: int) -> int:
    return int(rng.integers(lo, hi + 1))


def random_monomial_ideal(rng: np.random.Generator, n: int, max_degree: int, gens: int) -> MonomialIdeal:
    """Exponent vectors uniform in the box [0, max_degree]^n, zero vector redrawn."""
    exps = []
    while len(exps) < gens:
        b = tuple(int(v) for v in rng.integers(0, max_degree + 1, size=n))
        if any(b):
            exps.append(b)
    return MonomialIdeal.from_exponents(n, exps)


def draw_ideal(rng: np.random.Generator, cfg: TrialConfig, n: int | None = None) -> MonomialIdeal:
    if n is None:
        n = _randint(rng, *cfg.n_range)
    d = _randint(rng, *cfg.degree_range)
    g = _randint(rng, *cfg.generator_count_range)
    return random_monomial_ideal(rng, n, d, g)


def disjoint_union(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
    """Ideal of V(first) x V(second) in A^(n1 + n2)."""
    z1 = (0,) * first.ambient_dim
    z2 = (0,) * second.ambient_dim
    exps = [b + z2 for b in first.min_generators] + [z1 + b for b in second.min_generators]
    return MonomialIdeal.from_exponents(first.ambient_dim + second.ambient_dim, exps)


def restrict_to_hyperplane(mi: MonomialIdeal) -> MonomialIdeal | None:
    """Restriction to {x_n = 0}; None when every generator vanishes there (Y contains H)."""
    kept = [b[:-1] for b in mi.min_generators if b[-1] == 0]
    if not kept:
        return None
    return MonomialIdeal.from_exponents(mi.ambient_dim - 1, kept)


def enlarge(rng: np.random.Generator, mi: MonomialIdeal, max_degree: int) -> MonomialIdeal:
    extra = random_monomial_ideal(rng, mi.ambient_dim, max_degree, 1)
    return mi + extra


def _fmt(x) -> str:
    return "inf" if x == math.inf else str(x)


def _report(name, cfg, trial, ideals, relation, values) -> ViolationReport:
    return ViolationReport(name, tuple(i.render() for i in ideals), relation,
                           tuple(_fmt(v) for v in values), cfg.seed, trial)


def _product_trial(cfg: TrialConfig, trial: int) -> list[ViolationReport]:
    rng = trial_rng(cfg.seed, trial)
    a, b = draw_ideal(rng, cfg), draw_ideal(rng, cfg)
    joint = lct_value(disjoint_union(a, b))
    la, lb = lct_value(a), lct_value(b)
    if joint != la + lb:
        return [_report("product", cfg, trial, (a, b), "lct(A x B) == lct(A) + lct(B)", (joint, la, lb))]
    return []


def _origin_consistent(mi: MonomialIdeal, lct: Fraction, levels: int) -> bool:
    if levels < 0:
        return True
    val = lct_origin_via_fibers(mi, levels)
    return lct <= val <= lct + Fraction(mi.ambient_dim, levels + 1)


def _intersection_trial(cfg: TrialConfig, trial: int) -> list[ViolationReport]:
    rng = trial_rng(cfg.seed, trial)
    a = draw_ideal(rng, cfg)
    b = draw_ideal(rng, cfg, n=a.ambient_dim)
    s = a + b
    la, lb, ls = lct_value(a), lct_value(b), lct_value(s)
    out = []
    if not la + lb >= ls:
        out.append(_report("intersection", cfg, trial, (a, b), "lct(A) + lct(B) >= lct(A + B)", (la, lb, ls)))
    for mi, val in ((a, la), (b, lb), (s, ls)):
        if not _origin_consistent(mi, val, cfg.fiber_levels):
            out.append(_report("intersection", cfg, trial, (mi,),
                               "lct <= fiber value at 0 <= lct + n/(m_max+1)",
                               (val, lct_origin_via_fibers(mi, cfg.fiber_levels))))
    return out


def _bounds_trial(cfg: TrialConfig, trial: int) -> list[ViolationReport]:
    rng = trial_rng(cfg.seed, trial)
    mi = draw_ideal(rng, cfg)
    n = mi.ambient_dim
    lct = lct_value(mi)
    q = multiplicity_at_origin(mi)
    out = []
    if not lct <= n:
        out.append(_report("bounds", cfg, trial, (mi,), "lct <= codim <= n", (lct, n)))
    if not Fraction(1, q) <= lct <= Fraction(n, q):
        out.append(_report("bounds", cfg, trial, (mi,), "1/q <= lct <= n/q", (lct, q, n)))
    return out


def _monotonic_trial(cfg: TrialConfig, trial: int) -> list[ViolationReport]:
    rng = trial_rng(cfg.seed, trial)
    mi = draw_ideal(rng, cfg)
    bigger = enlarge(rng, mi, cfg.degree_range[1])
    small, big = lct_value(mi), lct_value(bigger)
    if not big >= small:
        return [_report("monotonic", cfg, trial, (bigger, mi), "I contains J => lct(I) >= lct(J)", (big, small))]
    return []


def _restriction_trial(cfg: TrialConfig, trial: int) -> list[ViolationReport]:
    rng = trial_rng(cfg.seed, trial)
    mi = draw_ideal(rng, cfg, n=max(2, _randint(rng, *cfg.n_range)))
    lct = lct_value(mi)
    restricted = restrict_to_hyperplane(mi)
    # Y containing H gives c(H, H) = 0 by convention
    rhs = Fraction(0) if restricted is None else lct_value(restricted)
    if not lct >= rhs:
        shown = (mi,) if restricted is None else (mi, restricted)
        return [_report("restriction", cfg, trial, shown, "lct(X, Y) >= lct(H, Y cap H)", (lct, rhs))]
    return []


CHECKS: dict[str, Callable[[TrialConfig, int], list[ViolationReport]]] = {
    "product": _product_trial,
    "intersection": _intersection_trial,
    "bounds": _bounds_trial,
    "monotonic": _monotonic_trial,
    "restriction": _restriction_trial,
}


def _run_one(name: str, cfg: TrialConfig, trial: int) -> list[ViolationReport]:
    return CHECKS[name](cfg, trial)


def run_check(name: str, cfg: TrialConfig, threads: int = 1) -> list[ViolationReport]:
    trial_fn = CHECKS[name]
    if threads <= 1:
        return [v for t in range(cfg.trials) for v in trial_fn(cfg, t)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        chunks = pool.map(_run_one, [name] * cfg.trials, [cfg] * cfg.trials, range(cfg.trials))
        return [v for chunk in chunks for v in chunk]


def check_product(cfg: TrialConfig) -> list[ViolationReport]:
    return run_check("product", cfg)


def check_intersection(cfg: TrialConfig) -> list[ViolationReport]:
    return run_check("intersection", cfg)


def check_bounds(cfg: TrialConfig) -> list[ViolationReport]:
    return run_check("bounds", cfg)


def check_monotonicity(cfg: TrialConfig) -> list[ViolationReport]:
    return run_check("monotonic", cfg)


def check_restriction(cfg: TrialConfig) -> list[ViolationReport]:
    return run_check("restriction", cfg)


def run_all(cfg: TrialConfig, names=None, threads: int = 1) -> dict[str, list[ViolationReport]]:
    if names is None or names == "all":
        names = list(CHECKS)
    elif isinstance(names, str):
        names = [names]
    else:
        names = list(names)
    return {name: run_check(name, cfg, threads) for name in names}
