"""The set of fractional parts certifying extra prime divisors, the finite-n
prime products Delta and Delta1, and the asymptotic denominator-savings
constants N1 and N2.

Membership of a rational point is always decided by exact evaluation of the
three-group floor inequality (minimized over six candidate x values); the
interval description produced by :func:`compute_omega` exists for the digamma
sums, where endpoint closure has measure zero.  Finite-n prime scans never
consult the interval set, precisely because closure matters there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, SieveCapacityError
from .exact_arith import PrimeSieve, Rat, format_rat, log_d_upto
from .forms import Params

__all__ = [
    "Interval", "IntervalSet", "OmegaReport", "GridCheck",
    "floor_sum_value", "floor_sum_min", "omega_contains",
    "compute_omega", "delta_products", "n_constants",
    "finite_n_n1", "finite_n_n2", "grid_discrepancies", "certified_grid_check",
]


def _validate_ab(a: int, b: int) -> None:
    if a < 1 or b <= 4 * a or b % 2 == 0:
        raise DomainError(f"need b odd and b > 4a >= 4, got a={a}, b={b}")


# ---------------------------------------------------------------------------
# the floor inequality
# ---------------------------------------------------------------------------

def floor_sum_value(a: int, b: int, x: Rat, y: Rat) -> int:
    """Exact value of the three-group floor expression at (x, y).

    Each group has the shape [u] - [u - w] - [w] and individually lies in
    {0, 1}; the certifying condition is that the sum is >= 1 for all real x.
    """
    x, y = Fraction(x), Fraction(y)
    den = x.denominator * y.denominator
    xn = x.numerator * y.denominator
    yn = y.numerator * x.denominator
    total = 0
    for c1, c2, c3 in ((2 * a, b - 2 * a, b - 4 * a),
                       (a, b - a, b - 2 * a),
                       (0, b, b)):
        total += ((xn - c1 * yn) // den - (xn - c2 * yn) // den
                  - (c3 * yn) // den)
    return total


def _candidates(a: int, b: int) -> tuple[int, ...]:
    return (0, a, 2 * a, b - 2 * a, b - a, b)


def floor_sum_min(a: int, b: int, y: Rat) -> int:
    """min over all real x of the floor expression, for fixed y.

    In x the expression is piecewise constant, right-continuous and 1-periodic
    with jumps only at x = c*y (mod 1) for the six coefficients c below, so
    the minimum is attained at one of those candidates.  (The dense-grid
    oracle tests guard this reduction.)
    """
    y = Fraction(y)
    num, den = y.numerator, y.denominator
    best = None
    for c0 in _candidates(a, b):
        xn = c0 * num
        total = 0
        for c1, c2, c3 in ((2 * a, b - 2 * a, b - 4 * a),
                           (a, b - a, b - 2 * a),
                           (0, b, b)):
            total += ((xn - c1 * num) // den - (xn - c2 * num) // den
                      - (c3 * num) // den)
        if best is None or total < best:
            best = total
    return best


def omega_contains(a: int, b: int, y: Rat) -> bool:
    """Pointwise membership test (the authoritative one for prime products)."""
    return floor_sum_min(a, b, y) >= 1


# ---------------------------------------------------------------------------
# interval description
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: Rat
    hi: Rat
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError("interval endpoints out of order")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise DomainError("a degenerate interval must be closed")

    def contains(self, y: Rat) -> bool:
        if y < self.lo or y > self.hi:
            return False
        if y == self.lo and not self.lo_closed:
            return False
        if y == self.hi and not self.hi_closed:
            return False
        return True

    def __str__(self):
        if self.lo == self.hi:
            return "{%s}" % format_rat(self.lo)
        return "%s%s, %s%s" % ("[" if self.lo_closed else "(",
                               format_rat(self.lo), format_rat(self.hi),
                               ")" if not self.hi_closed else "]")


class IntervalSet:
    """Sorted, pairwise-disjoint rational-endpoint subintervals of [0, 1)."""

    def __init__(self, intervals):
        ivs = sorted(intervals, key=lambda iv: (iv.lo, iv.hi))
        for prev, cur in zip(ivs, ivs[1:]):
            # touching is legal only when the shared point is excluded by
            # both sides; anything else overlaps or should have been merged
            if cur.lo < prev.hi or (cur.lo == prev.hi
                                    and (cur.lo_closed or prev.hi_closed)):
                raise DomainError("intervals overlap or touch with closure")
        for iv in ivs:
            if iv.lo < 0 or iv.hi > 1 or (iv.hi == 1 and iv.hi_closed):
                raise DomainError("intervals must lie within [0, 1)")
        self.intervals: tuple[Interval, ...] = tuple(ivs)

    def contains(self, y: Rat) -> bool:
        y = Fraction(y)
        return any(iv.contains(y) for iv in self.intervals)

    def total_measure(self) -> Rat:
        return sum((iv.hi - iv.lo for iv in self.intervals), Fraction(0))

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __str__(self):
        if not self.intervals:
            return "{}"
        return " u ".join(str(iv) for iv in self.intervals)


@dataclass(frozen=True)
class OmegaReport:
    a: int
    b: int
    omega: IntervalSet
    denominator_bound: int


def _breakpoints(bound: int) -> list[Fraction]:
    pts = {Fraction(0)}
    for m in range(1, bound + 1):
        for j in range(m):
            pts.add(Fraction(j, m))
    return sorted(pts)


def compute_omega(a: int, b: int, denominator_bound: int | None = None) -> OmegaReport:
    """Exact interval description of the certifying set.

    For fixed y the min over x reduces to six candidate x values; as a
    function of y every floor argument is linear with integer coefficient of
    magnitude <= b, so the min is piecewise constant with breakpoints among
    the fractions j/m, m <= b.  Evaluating exact membership at every
    breakpoint and at one interior point of every gap therefore determines
    the set, including closure flags.  Both reductions are guarded by the
    dense-grid oracle tests rather than assumed silently.
    """
    _validate_ab(a, b)
    bound = b if denominator_bound is None else denominator_bound
    if bound < b:
        raise DomainError("denominator bound below b misses breakpoints")
    pts = _breakpoints(bound)
    events: list[tuple[Fraction, Fraction, bool, bool]] = []
    for i, p in enumerate(pts):
        events.append((p, p, True, omega_contains(a, b, p)))
        hi = pts[i + 1] if i + 1 < len(pts) else Fraction(1)
        events.append((p, hi, False, omega_contains(a, b, (p + hi) / 2)))

    intervals: list[Interval] = []
    cur: list | None = None  # [lo, hi, lo_closed, hi_closed]
    for lo, hi, is_point, inside in events:
        if inside:
            if cur is None:
                cur = [lo, hi, is_point, is_point]
            else:
                cur[1], cur[3] = hi, is_point
        elif cur is not None:
            intervals.append(Interval(*cur))
            cur = None
    if cur is not None:
        intervals.append(Interval(*cur))
    return OmegaReport(a=a, b=b, omega=IntervalSet(intervals),
                       denominator_bound=bound)


# ---------------------------------------------------------------------------
# finite-n prime products
# ---------------------------------------------------------------------------

def delta_products(params: Params, sieve: PrimeSieve | None = None) -> tuple[int, int]:
    """(Delta, Delta1) for one n: products of the primes whose fractional
    part {n/p} satisfies the floor inequality, over p > sqrt(bn) and over
    p > (b-2a)n respectively.

    Primes above bn never qualify ({n/p} < 1/b there), so the scan stops at
    bn.  Membership is decided pointwise, never via the interval set.
    """
    a, b, n = params.a, params.b, params.n
    bn = b * n
    if sieve is None:
        sieve = PrimeSieve(max(bn, 10))
    elif sieve.limit < bn:
        raise SieveCapacityError(f"sieve limit {sieve.limit} < bn = {bn}")
    delta = delta1 = 1
    cut1 = (b - 2 * a) * n
    for p in sieve.primes(2, bn):
        if p * p <= bn:
            continue
        if omega_contains(a, b, Fraction(n % p, p)):
            delta *= p
            if p > cut1:
                delta1 *= p
    return delta, delta1


# ---------------------------------------------------------------------------
# asymptotic constants
# ---------------------------------------------------------------------------

def n_constants(a: int, b: int, omega: IntervalSet, digits: int):
    """(N1, N2): the exponential rates of d_bn/Delta and d'*Delta1*d_bn/Delta.

    N1 = b - sum over components [u, v] of psi(v) - psi(u): the lcm grows at
    rate b while the digamma difference is the density of the primes counted
    in Delta.  N2 adds b - 2a for the second lcm plus the large-prime regime
    of Delta1, where {n/p} = n/p makes the density of p > (b-2a)n with
    n/p in [u, v) equal to 1/u - 1/v, restricted to [0, 1/(b-2a)) and with
    components split at the cut.  Both closed forms are certified against
    finite-n sieve oracles in the tests before anything downstream trusts
    them.
    """
    import mpmath as mp

    from .asymptotics import digamma

    _validate_ab(a, b)
    if digits < 30:
        raise DomainError("digits must be >= 30")
    with mp.workdps(digits + 10):
        psi_total = mp.mpf(0)
        for iv in omega:
            if iv.lo < iv.hi:
                psi_total += digamma(iv.hi, digits + 10) - digamma(iv.lo, digits + 10)
        n1 = mp.mpf(b) - psi_total

        cut = Fraction(1, b - 2 * a)
        large = mp.mpf(0)
        for iv in omega:
            if iv.lo >= cut:
                continue
            hi = min(iv.hi, cut)
            if iv.lo < hi:
                large += (mp.mpf(iv.lo.denominator) / iv.lo.numerator
                          - mp.mpf(hi.denominator) / hi.numerator)
        n2 = n1 + (b - 2 * a) + large
    return n1, n2


def finite_n_n1(a: int, b: int, n: int, sieve: PrimeSieve) -> float:
    """Sieve-based estimate (1/n) ln(d_bn / Delta) for one finite n."""
    _validate_ab(a, b)
    bn = b * n
    if sieve.limit < bn:
        raise SieveCapacityError(f"sieve limit {sieve.limit} < bn = {bn}")
    ln_delta = 0.0
    for p in sieve.primes(2, bn):
        if p * p > bn and omega_contains(a, b, Fraction(n % p, p)):
            ln_delta += math.log(p)
    return (log_d_upto(bn, sieve) - ln_delta) / n


def finite_n_n2(a: int, b: int, n: int, sieve: PrimeSieve) -> float:
    """Sieve-based estimate (1/n) ln(d_(b-2a)n * Delta1 * d_bn / Delta)."""
    _validate_ab(a, b)
    bn = b * n
    cut1 = (b - 2 * a) * n
    if sieve.limit < bn:
        raise SieveCapacityError(f"sieve limit {sieve.limit} < bn = {bn}")
    ln_delta = ln_delta1 = 0.0
    for p in sieve.primes(2, bn):
        if omega_contains(a, b, Fraction(n % p, p)):
            if p * p > bn:
                ln_delta += math.log(p)
            if p > cut1:
                ln_delta1 += math.log(p)
    return (log_d_upto(cut1, sieve) + ln_delta1
            + log_d_upto(bn, sieve) - ln_delta) / n


# ---------------------------------------------------------------------------
# grid agreement checks (oracles for the interval description)
# ---------------------------------------------------------------------------

def grid_discrepancies(a: int, b: int, L: int, omega: IntervalSet,
                       indices=None) -> int:
    """Count grid points y = i/L where pointwise membership disagrees with
    the interval description.  ``indices`` restricts the scan (full range
    by default); evaluation is pure integer arithmetic."""
    _validate_ab(a, b)
    cands = _candidates(a, b)
    groups = ((2 * a, b - 2 * a, b - 4 * a),
              (a, b - a, b - 2 * a),
              (0, b, b))
    bad = 0
    if indices is None:
        indices = range(L)
    for i in indices:
        best = None
        for c0 in cands:
            xn = c0 * i
            total = 0
            for c1, c2, c3 in groups:
                total += ((xn - c1 * i) // L - (xn - c2 * i) // L
                          - (c3 * i) // L)
            if best is None or total < best:
                best = total
        if (best >= 1) != omega.contains(Fraction(i, L)):
            bad += 1
    return bad


def grid_discrepancies_vectorized(a: int, b: int, L: int, omega: IntervalSet,
                                  start: int = 0, stop: int | None = None,
                                  chunk: int = 1 << 22) -> int:
    """Vectorized variant of :func:`grid_discrepancies` for huge grids.

    Each group [x-c1*y] - [x-c2*y] - [c3*y] at x = c0*y equals 1 exactly when
    ((c0-c1)*i mod L) < ((c0-c2)*i mod L), so membership needs only modular
    products per candidate.  Interval containment maps to integer index
    windows since every endpoint denominator divides L.
    """
    import numpy as np

    _validate_ab(a, b)
    windows = []
    for iv in omega:
        lo_i = iv.lo * L
        hi_i = iv.hi * L
        if lo_i.denominator != 1 or hi_i.denominator != 1:
            raise DomainError("interval endpoints do not lie on the grid")
        windows.append((int(lo_i) + (0 if iv.lo_closed else 1),
                        int(hi_i) - (0 if iv.hi_closed else 1)))
    # coefficients stay small and signed: |m| <= b keeps m*i within int64
    # even for grids beyond 10^10, and numpy's % is nonnegative for L > 0
    pairs = []
    for c0 in _candidates(a, b):
        row = []
        for c1, c2, _ in ((2 * a, b - 2 * a, b - 4 * a),
                          (a, b - a, b - 2 * a),
                          (0, b, b)):
            row.append((c0 - c1, c0 - c2))
        pairs.append(row)

    stop = L if stop is None else stop
    bad = 0
    for lo in range(start, stop, chunk):
        hi = min(lo + chunk, stop)
        i = np.arange(lo, hi, dtype=np.int64)
        mods: dict[int, "np.ndarray"] = {}

        def modcol(m):
            if m not in mods:
                mods[m] = (m * i) % L
            return mods[m]

        member = None
        for row in pairs:
            ok = None
            for m_uw, m_u in row:
                g = modcol(m_uw) < modcol(m_u)
                ok = g if ok is None else (ok | g)
            member = ok if member is None else (member & ok)
        inside = np.zeros_like(member)
        for w_lo, w_hi in windows:
            inside |= (i >= w_lo) & (i <= w_hi)
        bad += int(np.count_nonzero(member != inside))
    return bad


@dataclass(frozen=True)
class GridCheck:
    grid_size: int
    breakpoints_checked: int
    gaps_certified: int
    sampled_literal: int
    discrepancies: int


def certified_grid_check(a: int, b: int, L: int, omega: IntervalSet,
                         sample: int = 0, seed: int = 0) -> GridCheck:
    """Establish zero discrepancies over the full grid i/L without touching
    every grid point individually.

    Every floor term in the six-candidate formula is of the form [m*y] with a
    fixed integer coefficient |m| <= b.  On an open gap between consecutive
    breakpoints, each such term is constant as soon as m*y crosses no integer
    strictly inside the gap; that crossing-freeness is checked exactly per
    gap and per coefficient.  Combined with exact membership at every
    breakpoint (all of which are grid points, since lcm(1..b) | L) and at one
    interior point per gap, agreement then holds at every one of the L grid
    points.  A deterministic random sample of literal grid evaluations is run
    on top as an independent guard on this very argument.
    """
    import random

    _validate_ab(a, b)
    for m in range(1, b + 1):
        if L % m:
            raise DomainError(f"L = {L} is not divisible by {m}; breakpoints "
                              "would fall between grid points")
    coeffs = set()
    for c0 in _candidates(a, b):
        for c1, c2, c3 in ((2 * a, b - 2 * a, b - 4 * a),
                           (a, b - a, b - 2 * a),
                           (0, b, b)):
            coeffs.update((c0 - c1, c0 - c2, c3))
    coeffs.discard(0)

    pts = _breakpoints(b)
    endpoints = {iv.lo for iv in omega} | {iv.hi for iv in omega}
    bad = 0
    for i, p in enumerate(pts):
        if omega_contains(a, b, p) != omega.contains(p):
            bad += 1
        hi = pts[i + 1] if i + 1 < len(pts) else Fraction(1)
        # constancy certificate: no integer strictly inside (m*p, m*hi)
        for m in coeffs:
            lo_m, hi_m = sorted((m * p, m * hi))
            count = math.ceil(hi_m) - math.floor(lo_m) - 1
            if count > 0:
                raise DomainError(
                    f"floor term {m}*y crosses an integer inside ({p}, {hi}); "
                    "breakpoint lattice is incomplete")
        # the interval description must not subdivide the gap either
        for q in endpoints:
            if p < q < hi:
                raise DomainError(f"interval endpoint {q} inside gap ({p}, {hi})")
        mid = (p + hi) / 2
        if omega_contains(a, b, mid) != omega.contains(mid):
            bad += 1

    sampled = 0
    if sample:
        rng = random.Random(seed)
        idx = (rng.randrange(L) for _ in range(sample))
        bad += grid_discrepancies(a, b, L, omega, indices=idx)
        sampled = sample
    return GridCheck(grid_size=L, breakpoints_checked=len(pts),
                     gaps_certified=len(pts), sampled_literal=sampled,
                     discrepancies=bad)
