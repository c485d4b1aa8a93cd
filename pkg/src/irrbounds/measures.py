"""Assembly of the two measure bounds from the growth, scaling and
denominator-savings constants, the finite-n verification harness for the
integrality and decay claims, and the small parameter-space search.

Applicability (the sign condition on the decay rate) is a data outcome, not
an exception: searches iterate past inapplicable cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath as mp

from .asymptotics import (alpha_value, k_constants, saddle_complex,
                          saddle_real)
from .errors import NonApplicableError, PrecisionError
from .exact_arith import PrimeSieve, QuadRat, sqrt_bounds
from .forms import (IntegerForms, Params, eval_UVW, scaled_integer_forms,
                    x_point)
from .omega import compute_omega, delta_products, n_constants

__all__ = [
    "BoundResult", "VerificationRow", "TableRow",
    "mu_bound", "mu2_bound", "verify_forms", "search_params",
    "predicted_decay", "headline_table", "HEADLINE_KS", "is_degenerate",
]

# k values of the headline table, with the parameter choices that produce it:
# (1, 7) for every irrationality bound; non-quadraticity bounds exist for the
# even k below with (2, 23) at k = 6 and (1, 13) at k = 8, 10, 12.
HEADLINE_KS = (3, 5, 6, 7, 8, 9, 10, 11, 12)
MU2_PARAMS = {6: (2, 23), 8: (1, 13), 10: (1, 13), 12: (1, 13)}


def is_degenerate(k: int) -> bool:
    """True when 2k+1 is a perfect square, making alpha_k the logarithm of a
    rational scaled by an integer (k = 4, 12, ...)."""
    d = 2 * k + 1
    return isqrt(d) ** 2 == d


@dataclass(frozen=True)
class BoundResult:
    kind: str               # "irrationality" | "non-quadraticity"
    k: int
    a: int
    b: int
    M1: mp.mpf
    M2: mp.mpf
    K: mp.mpf
    N: mp.mpf
    bound: mp.mpf | None
    applicable: bool
    digits: int
    degenerate: bool


@dataclass(frozen=True)
class VerificationRow:
    n: int
    P: int
    Q: int
    X: int
    Y: int
    Z: int
    ell: mp.mpf
    m: mp.mpf
    decay_linear: mp.mpf
    decay_quadratic: mp.mpf
    forms: IntegerForms


def _x_numeric(k: int, digits: int):
    """x_k as mpf together with exact rational bounds for certified probing."""
    lo, hi = sqrt_bounds(2 * k + 1, digits + 6)
    x_lo = (k + 1 - hi) / k
    x_hi = (k + 1 - lo) / k
    with mp.workdps(digits + 10):
        x = (k + 1 - mp.sqrt(2 * k + 1)) / mp.mpf(k)
    return x, (x_lo, x_hi)


def _constants_once(k: int, a: int, b: int, digits: int, quadratic: bool):
    x, xb = _x_numeric(k, digits)
    _, m1 = saddle_real(a, b, x, digits, x_bounds=xb)
    _, m2 = saddle_complex(a, b, x, digits, x_bounds=xb)
    k1, k2 = k_constants(k, a, b, digits)
    report = compute_omega(a, b)
    n1, n2 = n_constants(a, b, report.omega, digits)
    return (m1, m2, k2, n2) if quadratic else (m1, m2, k1, n1)


def _bound(kind: str, k: int, a: int, b: int, digits: int) -> BoundResult:
    quadratic = kind == "non-quadraticity"
    Params(k=k, a=a, b=b, n=1)  # parameter validation only

    def assemble(d):
        m1, m2, kk, nn = _constants_once(k, a, b, d, quadratic)
        with mp.workdps(d + 10):
            denom = m2 + kk + nn
            val = 1 - (m1 + kk + nn) / denom if denom < 0 else mp.inf
            return m1, m2, kk, nn, +denom, +val

    try:
        m1, m2, kk, nn, denom, val = assemble(digits)
        _, _, _, _, _, val2 = assemble(2 * digits)
    except NonApplicableError:
        # no saddle point exists for this cell; a structured outcome, so
        # parameter searches can iterate past it
        return BoundResult(kind=kind, k=k, a=a, b=b, M1=mp.nan, M2=mp.nan,
                           K=mp.nan, N=mp.nan, bound=None, applicable=False,
                           digits=digits, degenerate=is_degenerate(k))
    with mp.workdps(2 * digits + 10):
        tol = mp.mpf(10) ** (-(digits - 5))
        mismatch = mp.isfinite(val) != mp.isfinite(val2) or (
            mp.isfinite(val) and mp.fabs(val - val2) > tol * max(1, mp.fabs(val2)))
    if mismatch:
        raise PrecisionError(f"bound({k},{a},{b}) ladder mismatch: {val} vs {val2}")
    applicable = denom < 0
    return BoundResult(kind=kind, k=k, a=a, b=b, M1=m1, M2=m2, K=kk, N=nn,
                       bound=val if applicable else None,
                       applicable=applicable, digits=digits,
                       degenerate=is_degenerate(k))


def mu_bound(k: int, a: int, b: int, digits: int = 60) -> BoundResult:
    """Irrationality-measure bound 1 - (M1+K1+N1)/(M2+K1+N1), when the
    denominator is negative; inapplicable otherwise."""
    return _bound("irrationality", k, a, b, digits)


def mu2_bound(k: int, a: int, b: int, digits: int = 60) -> BoundResult:
    """Non-quadraticity-measure bound 1 - (M1+K2+N2)/(M2+K2+N2)."""
    return _bound("non-quadraticity", k, a, b, digits)


def predicted_decay(k: int, a: int, b: int, digits: int = 60):
    """(M2+K1+N1, M2+K2+N2): the limits of (1/n) ln of the two forms."""
    _, m2, k1, n1 = _constants_once(k, a, b, digits, quadratic=False)
    _, m2b, k2, n2 = _constants_once(k, a, b, digits, quadratic=True)
    with mp.workdps(digits + 10):
        return +(m2 + k1 + n1), +(m2b + k2 + n2)


# ---------------------------------------------------------------------------
# finite-n verification harness
# ---------------------------------------------------------------------------

def _coeff_digits(c) -> int:
    c = Fraction(c)
    return len(str(abs(c.numerator))) + len(str(c.denominator))


def _alpha_combination(k: int, terms, digits: int) -> mp.mpf:
    """sum of c * alpha_k^p over exact (c, p) pairs, precise despite
    cancellation.

    The combination is exponentially small against coefficients of hundreds
    of digits, so the working precision is raised until two successive
    evaluations agree to well past ``digits`` significant digits.
    """
    terms = [(Fraction(c), p) for c, p in terms]
    dps = max(_coeff_digits(c) for c, _ in terms) + digits + 20
    prev = None
    for _ in range(48):
        alpha = alpha_value(k, dps)
        with mp.workdps(dps):
            val = mp.fsum(mp.mpf(c.numerator) / c.denominator * alpha**p
                          for c, p in terms)
        if prev is not None and val != 0:
            with mp.workdps(dps):
                if mp.fabs(prev / val - 1) < mp.mpf(10) ** (-(digits + 10)):
                    return val
        prev = val
        dps *= 2
    raise PrecisionError(f"alpha combination did not stabilize for k={k}")


def verify_forms(k: int, a: int, b: int, n_list, digits: int = 60,
                 sieve: PrimeSieve | None = None) -> list[VerificationRow]:
    """Exact integer forms and high-precision form values for each odd n.

    Integrality violations raise IntegralityError naming the quantity; a
    vanishing linear form would falsify the machinery and raises too.
    """
    rows = []
    for n in n_list:
        params = Params(k=k, a=a, b=b, n=n)
        uvw = eval_UVW(params, x_point(k))
        delta, delta1 = delta_products(params, sieve)
        forms = scaled_integer_forms(params, uvw, delta, delta1)
        ell = _alpha_combination(k, [(forms.P, 1), (forms.Q, 0)], digits)
        m = _alpha_combination(k, [(forms.X, 2), (forms.Z, 0)], digits)
        if ell == 0 or m == 0:
            raise PrecisionError(f"form vanished exactly at n={n}; "
                                 "this contradicts irrationality")
        with mp.workdps(digits + 10):
            rows.append(VerificationRow(
                n=n, P=forms.P, Q=forms.Q, X=forms.X, Y=forms.Y, Z=forms.Z,
                ell=ell, m=m,
                decay_linear=mp.log(mp.fabs(ell)) / n,
                decay_quadratic=mp.log(mp.fabs(m)) / n,
                forms=forms))
    return rows


def dual_path_ell(k: int, a: int, b: int, n: int, digits: int = 60) -> mp.mpf:
    """ell recomputed without the integer detour: S*(d/Delta) stays an exact
    rational scalar on U(x_k)*alpha - sqrt(D)*V(x_k); agreement with
    P*alpha + Q cross-checks the integer assembly."""
    from .exact_arith import d_upto
    from .forms import scaling_factors

    params = Params(k=k, a=a, b=b, n=n)
    uvw = eval_UVW(params, x_point(k))
    delta, _ = delta_products(params)
    _, s_factor, _ = scaling_factors(params)
    scale = s_factor * Fraction(d_upto(b * n), delta)
    sq_v = QuadRat.sqrt_d(2 * k + 1) * uvw.V
    return _alpha_combination(
        k, [(scale * uvw.U.u, 1), (-scale * sq_v.u, 0)], digits)


# ---------------------------------------------------------------------------
# search and table
# ---------------------------------------------------------------------------

def search_params(k: int, a_max: int, b_max: int, digits: int = 60,
                  quadratic: bool = False) -> list[BoundResult]:
    """All applicable (a, b) cells on the grid, ascending by bound; ties break
    toward smaller b, then smaller a."""
    out = []
    fn = mu2_bound if quadratic else mu_bound
    for a in range(1, a_max + 1):
        for b in range(4 * a + 1, b_max + 1):
            if b % 2 == 0:
                continue
            res = fn(k, a, b, digits)
            if res.applicable:
                out.append(res)
    out.sort(key=lambda r: (r.bound, r.b, r.a))
    return out


@dataclass(frozen=True)
class TableRow:
    k: int
    mu: BoundResult
    mu2: BoundResult | None


def headline_table(digits: int = 60) -> list[TableRow]:
    """The headline table: mu bounds at (1, 7) for the nine k values, plus
    the non-quadraticity bounds where parameters exist."""
    rows = []
    for k in HEADLINE_KS:
        mu = mu_bound(k, 1, 7, digits)
        mu2 = None
        if k in MU2_PARAMS:
            a2, b2 = MU2_PARAMS[k]
            mu2 = mu2_bound(k, a2, b2, digits)
        rows.append(TableRow(k=k, mu=mu, mu2=mu2))
    return rows
