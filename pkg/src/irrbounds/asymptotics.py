"""High-precision real/complex evaluation: digamma at rational arguments, the
saddle-point cubics behind the growth and decay rates M1 and M2, and the
scaling-rate constants K1 and K2.

Root isolation is done with exact rational sign probes (bracketing can then
never be fooled by rounding near the pole cluster), followed by damped Newton
refinement in working precision.  Every published value carries a precision
ladder: recomputation at twice the digits must agree to the reported digits.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .errors import DomainError, NonApplicableError, PrecisionError
from .exact_arith import QuadRat, Rat

__all__ = [
    "digamma", "alpha_value", "saddle_real", "saddle_complex",
    "k_constants", "quad_to_mpf", "cubic_roots_cardano", "ladder_check",
]


def quad_to_mpf(x: QuadRat, digits: int) -> mp.mpf:
    """Numeric value of u + v*sqrt(D) at the requested precision."""
    with mp.workdps(digits + 10):
        return (mp.mpf(x.u.numerator) / x.u.denominator
                + mp.mpf(x.v.numerator) / x.v.denominator * mp.sqrt(x.D))


def ladder_check(fn, digits: int, what: str) -> mp.mpf:
    """Run fn(digits) and fn(2*digits); require agreement to digits-5 places."""
    lo = fn(digits)
    hi = fn(2 * digits)
    tol = mp.mpf(10) ** (-(digits - 5))
    if mp.fabs(lo - hi) > tol * max(1, mp.fabs(hi)):
        raise PrecisionError(f"{what}: {digits}-digit value {lo} vs "
                             f"{2 * digits}-digit value {hi}")
    return hi


# ---------------------------------------------------------------------------
# digamma at rational arguments
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli(m: int) -> Fraction:
    p, q = mp.bernfrac(m)
    return Fraction(int(p), int(q))


def digamma(x: Rat, digits: int) -> mp.mpf:
    """psi(x) for rational x > 0 to ``digits`` decimal digits.

    Shifts the argument above a precision-dependent threshold with the
    recurrence psi(x+1) = psi(x) + 1/x, then applies the asymptotic series
    psi(X) = ln X - 1/(2X) - sum B_{2j} / (2j X^{2j}).  For real X the error
    after truncation is bounded by the first omitted term, so terms are added
    until they drop below the target; the threshold keeps the series well
    inside its decreasing regime before that happens.
    """
    x = Fraction(x)
    if x <= 0:
        raise DomainError(f"digamma requires a positive argument, got {x}")
    dps = digits + 10
    threshold = max(16, dps // 2 + 6)
    shift = 0
    if x < threshold:
        shift = threshold - (x.numerator // x.denominator)
    big = x + shift
    with mp.workdps(dps):
        xf = mp.mpf(big.numerator) / big.denominator
        total = mp.log(xf) - 1 / (2 * xf)
        eps = mp.mpf(10) ** (-dps)
        x2 = xf * xf
        powx = x2
        j = 1
        while True:
            bern = _bernoulli(2 * j)
            term = (mp.mpf(bern.numerator) / bern.denominator) / (2 * j * powx)
            total -= term
            if mp.fabs(term) < eps:
                break
            powx *= x2
            j += 1
            if 2 * j > 4 * threshold:
                raise PrecisionError("digamma series failed to converge; "
                                     "threshold too small for requested digits")
        for i in range(shift):
            step = x + i
            total -= mp.mpf(step.denominator) / step.numerator
        return +total


# ---------------------------------------------------------------------------
# the target numbers alpha_k
# ---------------------------------------------------------------------------

def alpha_value(k: int, digits: int) -> mp.mpf:
    """alpha_k = sqrt(2k+1) * ln((sqrt(2k+1)-1)/(sqrt(2k+1)+1)), negative."""
    if k < 1:
        raise DomainError("k must be >= 1")
    with mp.workdps(digits + 10):
        r = mp.sqrt(2 * k + 1)
        return +(r * mp.log((r - 1) / (r + 1)))


# ---------------------------------------------------------------------------
# saddle-point cubics
# ---------------------------------------------------------------------------

def _real_cubic_coeffs(a: int, b: int, x, mirror: bool):
    """Coefficients (c3, c2, c1, c0) of the cleared saddle equation.

    Direct orientation:  x*z(z-a)(z-2a) - (z-(b-2a))(z-(b-a))(z-b);
    mirror orientation:  x*z(z+a)(z+2a) - (z+(b-2a))(z+(b-a))(z+b).
    """
    s = -1 if mirror else 1
    r1, r2, r3 = s * (b - 2 * a), s * (b - a), s * b
    c3 = x - 1
    c2 = x * (-s * 3 * a) + (r1 + r2 + r3)
    c1 = x * (2 * a * a) - (r1 * r2 + r1 * r3 + r2 * r3)
    c0 = r1 * r2 * r3
    return c3, c2, c1, c0


def _eval_cubic(coeffs, z):
    c3, c2, c1, c0 = coeffs
    return ((c3 * z + c2) * z + c1) * z + c0


def _certified_sign(a: int, b: int, z: Fraction, x_lo: Fraction,
                    x_hi: Fraction, mirror: bool) -> int | None:
    """Sign of the cleared cubic at rational z, certain for every x in
    [x_lo, x_hi]; None when the bracket of x values straddles zero."""
    lo = _eval_cubic(_real_cubic_coeffs(a, b, x_lo, mirror), z)
    hi = _eval_cubic(_real_cubic_coeffs(a, b, x_hi, mirror), z)
    if lo > 0 and hi > 0:
        return 1
    if lo < 0 and hi < 0:
        return -1
    if lo == 0 and hi == 0:
        return 0
    return None


def _isolate_real_root(a: int, b: int, x_bounds, mirror: bool,
                       span: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    """Shrink [zlo, zhi] (with certified opposite signs) by exact bisection."""
    x_lo, x_hi = x_bounds
    zlo, zhi = span
    for _ in range(80):
        mid = (zlo + zhi) / 2
        s = _certified_sign(a, b, mid, x_lo, x_hi, mirror)
        if s is None:
            # nudge off the ambiguous point; the root is a single point so a
            # slightly offset probe resolves it
            mid = zlo + (zhi - zlo) * Fraction(4, 9)
            s = _certified_sign(a, b, mid, x_lo, x_hi, mirror)
            if s is None:
                break
        if s == 0:
            return mid, mid
        slo = _certified_sign(a, b, zlo, x_lo, x_hi, mirror)
        if s == slo:
            zlo = mid
        else:
            zhi = mid
    return zlo, zhi


def _newton_polish(coeffs_f, z0: mp.mpf, dps: int) -> mp.mpf:
    c3, c2, c1, c0 = [mp.mpf(str(c)) if isinstance(c, Fraction) else c
                      for c in coeffs_f]

    def f(z):
        return ((c3 * z + c2) * z + c1) * z + c0

    def fp(z):
        return (3 * c3 * z + 2 * c2) * z + c1

    z = z0
    tol = mp.mpf(10) ** (-dps + 3)
    for _ in range(200):
        fz = f(z)
        step = fz / fp(z)
        znew = z - step
        while mp.fabs(f(znew)) > mp.fabs(fz) and mp.fabs(step) > tol:
            step /= 2
            znew = z - step
        z = znew
        if mp.fabs(step) <= tol * max(1, mp.fabs(z)):
            break
    return z


def _mpf_to_fraction(x: mp.mpf) -> Fraction:
    sign, man, exp, _ = mp.mpf(x)._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise DomainError(f"cannot convert {x} to a fraction")
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def _derive_x_bounds(x, digits: int) -> tuple[Fraction, Fraction]:
    xf = _mpf_to_fraction(mp.mpf(x))
    pad = Fraction(1, 10 ** (digits + 2))
    return xf - pad, xf + pad


def _m_from_moduli(a: int, b: int, mods, x, dps: int) -> mp.mpf:
    """ln of the six-factor modulus quotient minus (b/2) ln x; ``mods`` maps
    the shift c to |z + c| (or z - c for the direct orientation)."""
    m1, m2, m3, m4, m5 = mods  # |z ~ (b-2a)|, |z ~ (b-a)|, |z ~ b|, |z ~ 2a|, |z ~ a|
    return ((b - 2 * a) * mp.log(m1) + (b - a) * mp.log(m2) + b * mp.log(m3)
            - 2 * a * mp.log(m4) - a * mp.log(m5)
            - (b - 4 * a) * mp.log(b - 4 * a) - (b - 2 * a) * mp.log(b - 2 * a)
            - b * mp.log(b) - mp.mpf(b) / 2 * mp.log(x))


def saddle_real(a: int, b: int, x, digits: int,
                x_bounds: tuple[Rat, Rat] | None = None) -> tuple[mp.mpf, mp.mpf]:
    """(z0, M1): the unique root z0 > b of the direct saddle equation and the
    growth rate of the U coefficients.

    Bracketing runs on exact rationals, with the sign at each probe certified
    simultaneously for a rational enclosure of x; Newton in working precision
    finishes the job.  More than one real root beyond b (all-real root
    configurations) raises a non-applicability error.
    """
    if a < 1 or b <= 4 * a:
        raise DomainError("need b > 4a >= 4")
    with mp.workdps(digits + 15):
        x = mp.mpf(x)
        if not 0 < x < 1:
            raise DomainError("x must lie in (0, 1)")
        if x_bounds is None:
            x_bounds = _derive_x_bounds(x, digits)
        x_lo, x_hi = x_bounds
        zlo = Fraction(b)
        zhi = Fraction(2 * b)
        while _certified_sign(a, b, zhi, x_lo, x_hi, mirror=False) in (1, None):
            zhi *= 2
            if zhi > Fraction(b) * 2**60:
                raise NonApplicableError("no sign change located beyond b")
        if _certified_sign(a, b, zlo, x_lo, x_hi, mirror=False) != 1:
            raise NonApplicableError("cleared cubic not positive at z = b")
        zlo, zhi = _isolate_real_root(a, b, (x_lo, x_hi), False, (zlo, zhi))
        coeffs = _real_cubic_coeffs(a, b, x, mirror=False)
        z0 = _newton_polish(coeffs, (mp.mpf(str(zlo)) + mp.mpf(str(zhi))) / 2,
                            digits + 10)
        # uniqueness: deflate and require the remaining pair to be complex or
        # to lie at or below b
        c3, c2, c1, c0 = coeffs
        sum_other = -c2 / c3 - z0
        prod_other = -c0 / (c3 * z0)
        disc = sum_other * sum_other - 4 * prod_other
        if disc >= 0:
            r = mp.sqrt(disc)
            others = ((sum_other + r) / 2, (sum_other - r) / 2)
            if any(w > b for w in others):
                raise NonApplicableError("real saddle root beyond b is not unique")
        mods = (z0 - (b - 2 * a), z0 - (b - a), z0 - b, z0 - 2 * a, z0 - a)
        m1 = _m_from_moduli(a, b, mods, x, digits)
        return +z0, +m1


def saddle_complex(a: int, b: int, x, digits: int,
                   x_bounds: tuple[Rat, Rat] | None = None) -> tuple[mp.mpc, mp.mpf]:
    """(z1, M2): the upper-half-plane root of the mirrored saddle equation and
    the decay rate of the linear and quadratic forms.

    The mirrored cubic always has a real root below -b (isolated exactly, as
    in the real case); the conjugate pair is recovered from the root sum and
    product.  An all-real configuration means the statement does not apply.
    """
    if a < 1 or b <= 4 * a:
        raise DomainError("need b > 4a >= 4")
    with mp.workdps(digits + 15):
        x = mp.mpf(x)
        if not 0 < x < 1:
            raise DomainError("x must lie in (0, 1)")
        if x_bounds is None:
            x_bounds = _derive_x_bounds(x, digits)
        x_lo, x_hi = x_bounds
        zhi = Fraction(-b)
        zlo = Fraction(-2 * b)
        while _certified_sign(a, b, zlo, x_lo, x_hi, mirror=True) in (-1, None):
            zlo *= 2
            if zlo < Fraction(-b) * 2**60:
                raise NonApplicableError("no sign change located below -b")
        if _certified_sign(a, b, zhi, x_lo, x_hi, mirror=True) != -1:
            raise NonApplicableError("mirrored cubic not negative at z = -b")
        zlo, zhi = _isolate_real_root(a, b, (x_lo, x_hi), True, (zlo, zhi))
        coeffs = _real_cubic_coeffs(a, b, x, mirror=True)
        r0 = _newton_polish(coeffs, (mp.mpf(str(zlo)) + mp.mpf(str(zhi))) / 2,
                            digits + 10)
        c3, c2, c1, c0 = coeffs
        re2 = -c2 / c3 - r0          # w + conj(w)
        absw2 = -c0 / (c3 * r0)      # w * conj(w)
        im2 = absw2 - re2 * re2 / 4
        if im2 <= 0:
            raise NonApplicableError("mirrored cubic has three real roots; "
                                     "no complex saddle point")
        z1 = mp.mpc(re2 / 2, mp.sqrt(im2))
        mods = (mp.fabs(z1 + (b - 2 * a)), mp.fabs(z1 + (b - a)),
                mp.fabs(z1 + b), mp.fabs(z1 + 2 * a), mp.fabs(z1 + a))
        m2 = _m_from_moduli(a, b, mods, x, digits)
        return +z1, +m2


def cubic_roots_cardano(coeffs, digits: int) -> list[mp.mpc]:
    """All three roots of c3 z^3 + c2 z^2 + c1 z + c0 by the radical formula.

    Kept as an independent oracle against the bisection/Newton/deflation path.
    """
    with mp.workdps(digits + 15):
        c3, c2, c1, c0 = [mp.mpc(str(c)) if isinstance(c, Fraction) else mp.mpc(c)
                          for c in coeffs]
        if c3 == 0:
            raise DomainError("not a cubic")
        p2, p1, p0 = c2 / c3, c1 / c3, c0 / c3
        shift = p2 / 3
        p = p1 - p2 * p2 / 3
        q = 2 * p2**3 / 27 - p2 * p1 / 3 + p0
        disc = (q / 2) ** 2 + (p / 3) ** 3
        u3 = -q / 2 + mp.sqrt(disc)
        if mp.fabs(u3) < mp.mpf(10) ** (-(digits + 5)):
            u3 = -q / 2 - mp.sqrt(disc)
        u = u3 ** (mp.mpf(1) / 3)
        if u == 0:
            return [+(-shift)] * 3
        omega = mp.mpc(-mp.mpf(1) / 2, mp.sqrt(3) / 2)
        roots = []
        for i in range(3):
            ui = u * omega**i
            roots.append(+(ui - p / (3 * ui) - shift))
        return roots


# ---------------------------------------------------------------------------
# scaling-rate constants
# ---------------------------------------------------------------------------

def k_constants(k: int, a: int, b: int, digits: int = 60) -> tuple[mp.mpf, mp.mpf]:
    """(K1, K2): exponential rates of the S and T scaling factors.

    Even k = 2m:  K1 = -((b-2a)/2) ln m,            K2 = -((b-4a)/2) ln m;
    odd k:        K1 = -((b-2a)/2) ln k + (3(b-2a)/2) ln 2, and K2 likewise
    with b-4a in the first coefficient.
    """
    if k < 1 or a < 1 or b <= 4 * a:
        raise DomainError("need k >= 1 and b > 4a")
    with mp.workdps(digits + 10):
        if k % 2 == 0:
            lnm = mp.log(k // 2)
            k1 = -mp.mpf(b - 2 * a) / 2 * lnm
            k2 = -mp.mpf(b - 4 * a) / 2 * lnm
        else:
            lnk = mp.log(k)
            ln2 = mp.log(2)
            bonus = mp.mpf(3 * (b - 2 * a)) / 2 * ln2
            k1 = -mp.mpf(b - 2 * a) / 2 * lnk + bonus
            k2 = -mp.mpf(b - 4 * a) / 2 * lnk + bonus
        return +k1, +k2
