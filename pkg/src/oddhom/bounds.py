"""First-moment bounds for homomorphisms of G(n, c/n) into odd cycles.

Three families of bounds live here:

* the induced-bipartite-subgraph rate, which rules out long odd cycles once
  the rate drops below 1;
* the five-class partition rate ``b(c, a0..a3)`` for maps into C_5, with its
  logarithmic gradient;
* a grid sweep of ``b`` whose maximum, inflated by a Lipschitz bound on
  ``log b``, certifies ``sup b < 1`` on the feasible region.

Everything is evaluated in the log domain with 64-bit floats.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np
from scipy.optimize import bisect

from .errors import InvalidParameterError

GRADIENT_BOUND = 30.0


@dataclass(frozen=True)
class BoundPoint:
    c: float
    alpha: tuple[float, float, float, float]
    alpha4: float
    log_b: float

    @property
    def b(self) -> float:
        return math.exp(self.log_b)


def _check_interior(alpha: Sequence[float]) -> tuple[float, float, float, float, float]:
    if len(alpha) != 4:
        raise InvalidParameterError(f"expected four class fractions, got {len(alpha)}")
    a0, a1, a2, a3 = (float(a) for a in alpha)
    a4 = 1.0 - a0 - a1 - a2 - a3
    if min(a0, a1, a2, a3, a4) <= 0:
        raise InvalidParameterError(f"class fractions must be positive, got {(a0, a1, a2, a3, a4)}")
    return a0, a1, a2, a3, a4


def _log_em1(x: float) -> float:
    return math.log(math.expm1(x))


def b_value(c: float, alpha: Sequence[float]) -> BoundPoint:
    """Log of the expected-count rate of valid five-class partitions."""
    a0, a1, a2, a3, a4 = _check_interior(alpha)
    entropy = -sum(a * math.log(a) for a in (a0, a1, a2, a3, a4))
    log_b = (entropy + c * (a0 * a4 - 0.5)
             + a1 * _log_em1(c * a0) + a2 * _log_em1(c * a1)
             + a3 * _log_em1(c * a2) + a4 * _log_em1(c * a3)
             + a2 * math.log1p(-math.exp(-a3 / a2 - c * a3)))
    return BoundPoint(c, (a0, a1, a2, a3), a4, log_b)


def b_log_gradient(c: float, alpha: Sequence[float]) -> np.ndarray:
    """Partial derivatives of ``log b`` with respect to a0, a1, a2, a3 (a4 = 1 - sum)."""
    a0, a1, a2, a3, a4 = _check_interior(alpha)
    r = a3 / a2
    u = r + c * a3
    d0 = (c * (-a0 + a1 + a1 / math.expm1(c * a0) + a4)
          - math.log(a0) + math.log(a4) - _log_em1(c * a3))
    d1 = (c * (-a0 + a2 + a2 / math.expm1(c * a1))
          - math.log(a1) + math.log(a4) + _log_em1(c * a0) - _log_em1(c * a3))
    # d/da2 of a2*log(1 - e^{-u}) is log(e^u - 1) - u - r/(e^u - 1)
    d2 = (c * (-a0 + a3 + a3 / math.expm1(c * a2)) - r / math.expm1(u)
          + math.log(a4) - math.log(a2) + _log_em1(c * a1) - _log_em1(c * a3)
          - r - c * a3 + _log_em1(u))
    d3 = (c * (-a0 + a4 * math.exp(c * a3) / math.expm1(c * a3))
          + (1 + c * a2) / math.expm1(u)
          + math.log(a4) - math.log(a3) + _log_em1(c * a2) - _log_em1(c * a3))
    return np.array([d0, d1, d2, d3])


@dataclass(frozen=True)
class Region:
    """Feasible class fractions: every class >= min_class, and the union of
    two classes two steps apart on C_5 (an independent set) <= max_ind_set."""

    min_class: float = 0.06
    max_ind_set: float = 0.6

    def contains(self, alpha: Sequence[float]) -> bool:
        a = list(alpha) + [1.0 - sum(alpha)]
        if min(a) < self.min_class:
            return False
        return all(a[i] + a[(i + 2) % 5] <= self.max_ind_set for i in range(5))


def grid_points(delta: float, region: Region = Region()) -> Iterator[tuple[float, float, float, float]]:
    """Grid points ``(a0, a1, a2, a3)`` in sweep order (a3 outermost).

    Bounds follow the reference sweep: partial sums leave room for the
    remaining classes, ``a1 + a3``, ``a0 + a2`` and ``a0 + a3`` stay below
    ``max_ind_set``, and the lower limit on ``a0`` encodes
    ``a4 + a1 <= max_ind_set`` and ``a4 + a2 <= max_ind_set``.
    """
    if not delta > 0:
        raise InvalidParameterError(f"delta must be positive, got {delta}")
    mc, mi = region.min_class, region.max_ind_set
    lo = 1.0 - mi
    a3 = mc
    while a3 + 4 * mc < 1:
        a2 = mc
        while a3 + a2 + 3 * mc < 1:
            a1 = mc
            while a3 + a1 < mi and a3 + a2 + a1 + 2 * mc < 1:
                a0 = max(max(mc, lo - a2 - a3), lo - a1 - a3)
                while a2 + a0 < mi and a3 + a0 < mi and a3 + a2 + a1 + a0 + mc < 1:
                    yield a0, a1, a2, a3
                    a0 += delta
                a1 += delta
            a2 += delta
        a3 += delta


def _a3_values(delta: float, min_class: float) -> np.ndarray:
    vals = []
    a3 = min_class
    while a3 + 4 * min_class < 1:
        vals.append(a3)
        a3 += delta
    return np.array(vals)


@dataclass(frozen=True)
class GridReport:
    c: float
    delta: float
    max_value: float
    argmax: tuple[float, float, float, float]
    points_evaluated: int
    lipschitz_L: float = GRADIENT_BOUND
    cap_B: float = 1.0
    region: Region = field(default_factory=Region)

    @property
    def certified_sup_bound(self) -> float:
        """Grid max inflated by ``exp(L * 4 * delta / 2)`` (Lipschitz bound on log b)."""
        return self.max_value * math.exp(self.lipschitz_L * 4 * self.delta / 2)

    @property
    def argmax_alpha4(self) -> float:
        return 1.0 - sum(self.argmax)


def grid_search(c: float, delta: float, region: Region = Region(),
                func: Callable[[float, tuple[float, float, float, float]], float] | None = None,
                lipschitz_L: float = GRADIENT_BOUND, cap_B: float = 1.0) -> GridReport:
    """Maximise ``b(c, .)`` over the grid of step ``delta``.

    With ``func=None`` the compiled sweep is used.  Otherwise ``func(c, alpha)``
    is evaluated at every grid point in Python, which is only practical for
    coarse grids (it exists for self-tests of the sweep harness).  Ties keep
    the first point in sweep order.
    """
    if not delta > 0:
        raise InvalidParameterError(f"delta must be positive, got {delta}")
    if func is not None:
        best, arg, count = 0.0, (0.0, 0.0, 0.0, 0.0), 0
        for pt in grid_points(delta, region):
            count += 1
            val = func(c, pt)
            if val > best:
                best, arg = val, pt
        return GridReport(c, delta, best, arg, count, lipschitz_L, cap_B, region)

    from ._grid import sweep

    a3s = _a3_values(delta, region.min_class)
    if a3s.size == 0:
        return GridReport(c, delta, 0.0, (0.0, 0.0, 0.0, 0.0), 0, lipschitz_L, cap_B, region)
    best, arg, counts = sweep(float(c), a3s, float(delta), float(region.min_class),
                              float(region.max_ind_set))
    # rows reduce in sweep order; strict '>' keeps the earliest maximiser
    i_best, v_best = -1, -math.inf
    for i in range(a3s.size):
        if counts[i] and best[i] > v_best:
            i_best, v_best = i, best[i]
    total = int(counts.sum())
    if i_best < 0:
        return GridReport(c, delta, 0.0, (0.0, 0.0, 0.0, 0.0), total, lipschitz_L, cap_B, region)
    a0, a1, a2 = (float(x) for x in arg[i_best])
    return GridReport(c, delta, math.exp(v_best), (a0, a1, a2, float(a3s[i_best])), total,
                      lipschitz_L, cap_B, region)


@dataclass(frozen=True)
class CertifiedBound:
    holds: bool
    epsilon: float
    required_delta: float
    rho: float
    multiplicative_bound: float
    vacuous: bool


def certify_bound(report: GridReport, rho: float = 1.0) -> CertifiedBound:
    """Turn a grid maximum into a bound on the supremum over the region.

    If the supremum were some B' >= cap_B, the grid point nearest a maximiser
    would sit within delta/2 in each of four coordinates, so it would have
    value >= B' - 4 * L * B' * delta / 2.  With ``eps = 2 L B delta`` the
    bound ``sup < rho`` holds as soon as the grid maximum is below
    ``rho - eps``.  ``required_delta`` is the largest step for which the
    observed maximum would still pass.
    """
    L, B, delta = report.lipschitz_L, report.cap_B, report.delta
    eps = 2 * L * B * delta
    vacuous = rho <= eps
    holds = (not vacuous) and report.max_value < rho - eps
    required = max(rho - report.max_value, 0.0) / (2 * B * L)
    return CertifiedBound(holds, eps, required, rho, report.certified_sup_bound, vacuous)


def grid_report_dict(report: GridReport, cert: CertifiedBound) -> dict:
    return {
        "c": report.c,
        "delta": report.delta,
        "max_value": report.max_value,
        "argmax": list(report.argmax),
        "argmax_alpha4": report.argmax_alpha4,
        "points_evaluated": report.points_evaluated,
        "lipschitz_L": report.lipschitz_L,
        "cap_B": report.cap_B,
        "certified_sup_bound": report.certified_sup_bound,
        "rho": cert.rho,
        "epsilon": cert.epsilon,
        "required_delta": cert.required_delta,
        "holds": cert.holds,
        "vacuous": cert.vacuous,
        "region": asdict(report.region),
    }


# -- long odd cycles via induced bipartite subgraphs

def _xlogx(x: float) -> float:
    return 0.0 if x <= 0 else x * math.log(x)


def log_bipartite_bound(c: float, beta: float) -> float:
    if not 0 <= beta <= 1:
        raise InvalidParameterError(f"beta must lie in [0, 1], got {beta}")
    return beta * math.log(2) - c * beta * beta / 4 - _xlogx(beta) - _xlogx(1 - beta)


def bipartite_bound(c: float, beta: float) -> float:
    """Per-vertex rate ``2^b e^{-c b^2/4} / (b^b (1-b)^{1-b})`` of the expected
    number of induced bipartite subgraphs on ``b n`` vertices."""
    return math.exp(log_bipartite_bound(c, beta))


def bipartite_threshold(c: float, tol: float = 1e-12) -> float | None:
    """Largest beta in (0.5, 1) with rate 1; above it the rate is < 1.

    Returns None when the rate does not cross 1 on (0.5, 1]: the rate is
    unimodal, so a crossing needs rate(0.5) > 1 > rate(1).
    """
    f = lambda b: log_bipartite_bound(c, b)  # noqa: E731
    if not (f(0.5) > 0 and f(1.0) < 0):
        return None
    return bisect(f, 0.5, 1.0, xtol=tol, maxiter=500)


def ell_c_bound(beta_star: float | None) -> int | None:
    """Smallest odd L with (L - 1)/L > beta_star.

    Any graph mapping to C_L keeps an induced bipartite subgraph on a
    (L-1)/L fraction of its vertices, so above the threshold no such map
    exists.
    """
    if beta_star is None:
        return None
    beta = Fraction(beta_star)
    if not 0 <= beta < 1:
        raise InvalidParameterError(f"beta_star must lie in [0, 1), got {beta_star}")
    L = math.floor(1 / (1 - beta)) + 1
    if L % 2 == 0:
        L += 1
    L = max(L, 3)
    assert Fraction(L - 1, L) > beta
    return L


def independent_set_rate(c: float, s_frac: float) -> float:
    """``log 2 - c s^2 / 2``: exponential rate of 2^n (1-p)^{C(s n, 2)}."""
    if not 0 < s_frac <= 1:
        raise InvalidParameterError(f"s_frac must lie in (0, 1], got {s_frac}")
    return math.log(2) - c * s_frac * s_frac / 2


@dataclass(frozen=True)
class PartitionTerms:
    S: int
    logP12: float
    logP3: float
    logP4_upper: float
    log_multinomial: float

    @property
    def log_total(self) -> float:
        return self.logP12 + self.logP3 + self.logP4_upper + self.log_multinomial


def partition_probability_terms(c: float, n: int, sizes: Sequence[int]) -> PartitionTerms:
    """Exact finite-n log-probabilities for a fixed five-class partition.

    ``logP12``: no edges inside classes or between classes two apart;
    ``logP3``: each vertex of V_i (i = 1..4) has a neighbour in V_{i-1};
    ``logP4_upper``: bound on every vertex of V_2 having a neighbour in V_3.
    """
    if len(sizes) != 5 or any(s < 0 for s in sizes) or sum(sizes) != n:
        raise InvalidParameterError(f"need five non-negative sizes summing to n={n}")
    if sizes[2] == 0:
        raise InvalidParameterError("class 2 must be non-empty for the P4 bound")
    p = c / n
    if not 0 <= p < 1:
        raise InvalidParameterError(f"need 0 <= c/n < 1, got {p}")
    lq = math.log1p(-p)
    S = n * (n - 1) // 2 - sum(sizes[i] * sizes[(i + 1) % 5] for i in range(5))
    logP12 = S * lq

    def log_one_minus_exp(x: float) -> float:
        # log(1 - e^x) for x <= 0
        return -math.inf if x == 0 else math.log(-math.expm1(x))

    logP3 = 0.0
    for i in range(1, 5):
        if sizes[i]:
            logP3 += sizes[i] * log_one_minus_exp(sizes[i - 1] * lq)
    n2, n3 = sizes[2], sizes[3]
    inner = n3 * (math.log1p(-1 / n2) if n2 > 1 else -math.inf) + n3 * lq if n3 else 0.0
    logP4 = n2 * log_one_minus_exp(inner)
    log_multi = math.lgamma(n + 1) - sum(math.lgamma(s + 1) for s in sizes)
    return PartitionTerms(S, logP12, logP3, logP4, log_multi)
