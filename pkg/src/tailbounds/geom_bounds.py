"""Tail bounds for sums of independent geometric variables.

Closed-form upper bounds for P(X >= lam*mu), an upper bound for the lower
tail P(X <= lam*mu), a matching lower bound for the upper tail, and two
numerically optimized variants (a Chernoff exponent minimized over its free
parameter t, and a generating-function bound minimized over z). Every bound
is computed in log space and returned as a BoundResult.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import (
    DomainError,
    GeometricSumSpec,
    LambdaOutOfRange,
    LogProb,
    log_pgf_geometric,
    pgf_pole_gap,
)

# Optimizer settings: relative interval width target, iteration cap, and the
# fractional pull-back that keeps search domains away from poles.
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_REL_WIDTH = 1e-12
_MAX_ITER = 200
_EDGE = 1.0 - 1e-12


class Method(str, enum.Enum):
    """Identifiers for every bound this package computes."""

    THM1 = "thm1"
    THM2 = "thm2"
    COR1 = "cor1"
    COR2 = "cor2"
    TL1 = "tl1"
    TL = "tl"
    LEMMA1 = "lemma1"
    OPT_CHERNOFF = "opt-chernoff"
    OPT_LEMMA1 = "opt-lemma1"
    BEST = "best"
    TEXP_I = "texp-i"
    TEXP_II = "texp-ii"
    TEXP_III = "texp-iii"
    TEXP_IV = "texp-iv"


@dataclass(frozen=True)
class BoundResult:
    """A bound value with its method, query ratio, and any optimized parameter.

    ``internal_param`` is the Chernoff exponent's t (0 <= t < p_min) or the
    generating-function argument z (1 <= z < 1/(1-p_min)), when the method has
    one. Bounds that exceed 1 after round-off are clamped to 1 and flagged.
    """

    log_bound: LogProb
    method: Method
    lam: float
    internal_param: float | None = None
    clamped: bool = False

    @property
    def value(self) -> float:
        return self.log_bound.value

    @property
    def log_value(self) -> float:
        return self.log_bound.log_value


class UnimodalityError(RuntimeError):
    """Raised when a 1-D search detects an interior local maximum."""


def _result(
    method: Method, lam: float, log_bound: float, internal_param: float | None = None
) -> BoundResult:
    clamped = log_bound > 0.0
    return BoundResult(
        log_bound=LogProb(min(log_bound, 0.0)),
        method=method,
        lam=lam,
        internal_param=internal_param,
        clamped=clamped,
    )


def _require_upper(lam: float) -> None:
    if not lam >= 1.0:
        raise LambdaOutOfRange(f"upper-tail bound needs lambda >= 1, got {lam}")


def _minimize_unimodal(f, lo: float, hi: float):
    """Golden-section minimum of a unimodal f on [lo, hi].

    Stops at relative interval width 1e-12 or 200 iterations. The running
    four-point pattern is checked for an interior local maximum, which a
    unimodal function cannot have; detection raises UnimodalityError instead
    of silently returning garbage.
    """
    if hi <= lo:
        return lo, f(lo)
    a, b = lo, hi
    fa, fb = f(a), f(b)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    best_x, best_f = min(((a, fa), (x1, f1), (x2, f2), (b, fb)), key=lambda t: t[1])
    for _ in range(_MAX_ITER):
        slack = 1e-9 * (1.0 + abs(f1) + abs(f2))
        if f1 > max(fa, f2) + slack or f2 > max(f1, fb) + slack:
            raise UnimodalityError(
                f"interior local maximum near [{a}, {b}]: "
                f"f={fa, f1, f2, fb}; objective is not unimodal"
            )
        if b - a <= _REL_WIDTH * max(1.0, abs(a), abs(b)):
            break
        if f1 <= f2:
            b, fb = x2, f2
            x2, f2 = x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, fa = x1, f1
            x1, f1 = x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        for x, fx in ((x1, f1), (x2, f2)):
            if fx < best_f:
                best_x, best_f = x, fx
    return best_x, best_f


def upper_tail_thm1(spec: GeometricSumSpec, lam: float) -> BoundResult:
    """Closed-form Chernoff bound P(X >= lam*mu) <= exp(-p_min*mu*(lam-1-ln lam))."""
    _require_upper(lam)
    log_bound = -spec.p_min * spec.mu * (lam - 1.0 - math.log(lam))
    t = (1.0 - 1.0 / lam) * spec.p_min
    return _result(Method.THM1, lam, log_bound, internal_param=t)


def upper_tail_cor1(lam: float) -> BoundResult:
    """Parameter-free bound P(X >= lam*mu) <= lam * e^(1-lam)."""
    _require_upper(lam)
    return _result(Method.COR1, lam, math.log(lam) + 1.0 - lam)


def upper_tail_thm2(spec: GeometricSumSpec, lam: float) -> BoundResult:
    """Sharper bound P(X >= lam*mu) <= (1/lam) (1-p_min)^((lam-1-ln lam) mu).

    For p_min = 1 the sum is deterministic, so the bound is 0 for lam > 1.
    At lam = 1 the exponent factor vanishes and the bound is 1 regardless
    of p_min (the 0 * log(0) product is taken as 0, by continuity in lam).
    """
    _require_upper(lam)
    if lam == 1.0:
        return _result(Method.THM2, lam, 0.0)
    if spec.p_min == 1.0:
        return _result(Method.THM2, lam, -math.inf)
    log_bound = -math.log(lam) + (lam - 1.0 - math.log(lam)) * spec.mu * math.log1p(
        -spec.p_min
    )
    return _result(Method.THM2, lam, log_bound)


def upper_tail_cor2(lam: float) -> BoundResult:
    """Parameter-free bound P(X >= lam*mu) <= e^(1-lam)."""
    _require_upper(lam)
    return _result(Method.COR2, lam, 1.0 - lam)


def lower_tail_tl1(spec: GeometricSumSpec, lam: float) -> BoundResult:
    """Lower-tail bound P(X <= lam*mu) <= exp(-p_min*mu*(lam-1-ln lam)), 0 < lam <= 1."""
    if not (0.0 < lam <= 1.0):
        raise LambdaOutOfRange(f"lower-tail bound needs 0 < lambda <= 1, got {lam}")
    log_bound = -spec.p_min * spec.mu * (lam - 1.0 - math.log(lam))
    t = (1.0 / lam - 1.0) * spec.p_min
    return _result(Method.TL1, lam, log_bound, internal_param=t)


def upper_tail_lower_bound_tl(spec: GeometricSumSpec, lam: float) -> BoundResult:
    """LOWER bound on the upper tail:

    P(X >= lam*mu) >= (1-p_min)^(1+1/p_min) / (2 p_min mu) * (1-p_min)^((lam-1) mu).

    Degenerates to 0 when p_min = 1 (the sum is deterministic).
    """
    _require_upper(lam)
    if spec.p_min == 1.0:
        return _result(Method.TL, lam, -math.inf)
    log1mp = math.log1p(-spec.p_min)
    log_bound = (
        (1.0 + 1.0 / spec.p_min) * log1mp
        - math.log(2.0 * spec.p_min * spec.mu)
        + (lam - 1.0) * spec.mu * log1mp
    )
    return _result(Method.TL, lam, log_bound)


def lemma1_bound(spec: GeometricSumSpec, x: float, z: float) -> BoundResult:
    """Generating-function bound with its geometric-tail prefactor:

    P(X >= x) <= (1 - z(1-p_min))/p_min * z^(-x) * E z^X,

    for x >= 0 and 1 <= z < 1/(1-p_min).
    """
    if not x >= 0.0:
        raise DomainError(f"need x >= 0, got {x}")
    if not z >= 1.0:
        raise DomainError(f"need z >= 1, got {z}")
    if pgf_pole_gap(spec.p_min, z) <= 0.0:
        raise DomainError(
            f"z={z} is at or beyond the pole 1/(1-p_min) for p_min={spec.p_min}"
        )
    log_bound = _lemma1_log(spec, x, z)
    return _result(Method.LEMMA1, x / spec.mu, log_bound, internal_param=z)


def _lemma1_log(spec: GeometricSumSpec, x: float, z: float) -> float:
    prefactor = pgf_pole_gap(spec.p_min, z) / spec.p_min
    return math.log(prefactor) - x * math.log(z) + log_pgf_geometric(spec, z)


def _chernoff_log(spec: GeometricSumSpec, lam: float, t: float) -> float:
    # -t*lam*mu - sum ln(1 - t/p_i); convex in t on [0, p_min)
    return -t * lam * spec.mu - math.fsum(
        math.log1p(-t / p) for p in spec.params
    )


def optimized_chernoff(spec: GeometricSumSpec, lam: float) -> BoundResult:
    """Chernoff bound with the exponent minimized numerically over t in [0, p_min).

    Never worse than the closed form of upper_tail_thm1, whose relaxation of
    the exponent only loosens; the closed form's own t is kept as a candidate
    so equal-probability specs reproduce it to machine precision.
    """
    _require_upper(lam)
    hi = spec.p_min * _EDGE
    t_star, g_star = _minimize_unimodal(lambda t: _chernoff_log(spec, lam, t), 0.0, hi)
    t_closed = min((1.0 - 1.0 / lam) * spec.p_min, hi)
    for cand in (0.0, t_closed):
        g = _chernoff_log(spec, lam, cand)
        if g < g_star:
            t_star, g_star = cand, g
    return _result(Method.OPT_CHERNOFF, lam, g_star, internal_param=t_star)


def optimized_lemma1(spec: GeometricSumSpec, x: float) -> BoundResult:
    """lemma1_bound minimized over z: coarse log-spaced grid, then golden-section.

    For degenerate specs (p_min = 1, so X is a.s. its minimum value n) the z
    domain is unbounded and the infimum is 0 for x > n, 1 otherwise.
    """
    if not x >= 0.0:
        raise DomainError(f"need x >= 0, got {x}")
    if spec.p_min == 1.0:
        if x > spec.n:
            return _result(Method.OPT_LEMMA1, x / spec.mu, -math.inf)
        return _result(Method.OPT_LEMMA1, x / spec.mu, 0.0, internal_param=1.0)

    z_hi = (1.0 / (1.0 - spec.p_min)) * _EDGE
    if z_hi <= 1.0:
        # p_min so small that no double sits between 1 and the pole
        return _result(Method.OPT_LEMMA1, x / spec.mu, _lemma1_log(spec, x, 1.0),
                       internal_param=1.0)
    f = lambda z: _lemma1_log(spec, x, z)  # noqa: E731

    grid = [math.exp(u * math.log(z_hi) / 64.0) for u in range(65)]
    grid[0], grid[-1] = 1.0, z_hi
    values = [f(z) for z in grid]
    i0 = min(range(len(grid)), key=lambda i: values[i])
    lo = grid[max(i0 - 1, 0)]
    hi = grid[min(i0 + 1, len(grid) - 1)]
    z_star, g_star = _minimize_unimodal(f, lo, hi)
    if values[i0] < g_star:
        z_star, g_star = grid[i0], values[i0]

    # The closed-form z used by upper_tail_thm2's derivation is a good iterate
    # for x >= mu; keeping it guarantees the optimum never exceeds that bound.
    lam = x / spec.mu
    if lam >= 1.0:
        z_closed = min((lam - spec.p_min) / (lam * (1.0 - spec.p_min)), z_hi)
        g = f(z_closed)
        if g < g_star:
            z_star, g_star = z_closed, g
    return _result(Method.OPT_LEMMA1, lam, g_star, internal_param=z_star)


def best_upper(spec: GeometricSumSpec, lam: float) -> BoundResult:
    """The smallest of all upper-tail bounds, reported under the winning method."""
    _require_upper(lam)
    candidates = [
        upper_tail_thm1(spec, lam),
        upper_tail_thm2(spec, lam),
        upper_tail_cor1(lam),
        upper_tail_cor2(lam),
        optimized_chernoff(spec, lam),
        optimized_lemma1(spec, lam * spec.mu),
    ]
    return min(candidates, key=lambda r: r.log_value)


def lemma_la_check(A: float, x: float) -> bool:
    """Check A (x + ln(1-x)) <= ln(1 - A x^2 / 2) for A >= 1, 0 <= x <= 1/A.

    Self-test helper backing the lower-bound derivation; must hold on the
    whole stated domain. Small relative slack absorbs round-off.
    """
    if not A >= 1.0:
        raise DomainError(f"need A >= 1, got {A}")
    if not (0.0 <= x <= 1.0 / A):
        raise DomainError(f"need 0 <= x <= 1/A, got x={x}, A={A}")
    lhs = -math.inf if x >= 1.0 else A * (x + math.log1p(-x))
    rhs = math.log1p(-A * x * x / 2.0)
    return lhs <= rhs + 1e-12 * max(1.0, abs(rhs))
