"""Construction of the product polynomial, its coefficient transform, and the
exact evaluation of the three rational functions U, V, W that make up the
linear and quadratic forms.

The evaluation route is fully finite: the tail-series transform turns each
tail series into a polynomial in t = z/(z-1), which at the algebraic point
x_k has t = (1 - sqrt(2k+1))/2, so every value lives in Q(sqrt(2k+1)) and is
computed in integer arithmetic over a single common denominator.  The original
tail series (with an explicit geometric tail bound) is kept only as the
cross-check oracle ``series_uvw``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import DomainError, IntegralityError
from .exact_arith import QuadRat, Rat, d_upto

__all__ = [
    "Params", "IntPoly", "UVWValues", "IntegerForms",
    "x_point", "build_A", "shift_poly", "derivative", "tail_transform_coeffs",
    "eval_UVW", "scaled_integer_forms", "series_uvw",
]


@dataclass(frozen=True)
class Params:
    """Index k of alpha_k plus the construction parameters (a, b, n).

    b and n must be odd so that (bn+1)/2 and the power-of-two exponents in
    the scaling factors are integers; b > 4a keeps the three root blocks of
    the product polynomial nested.
    """

    k: int
    a: int
    b: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.a < 1 or self.b < 1 or self.n < 1:
            raise ValueError("k, a, b, n must all be positive")
        if self.b % 2 == 0:
            raise ValueError(f"b must be odd, got {self.b}")
        if self.n % 2 == 0:
            raise ValueError(f"n must be odd, got {self.n}")
        if self.b <= 4 * self.a:
            raise ValueError(f"need b > 4a, got b={self.b}, a={self.a}")

    @property
    def degree(self) -> int:
        return 3 * (self.b - 2 * self.a) * self.n

    @property
    def half_bn1(self) -> int:
        return (self.b * self.n + 1) // 2


def x_point(k: int) -> QuadRat:
    """The evaluation point x_k = (k+1 - sqrt(2k+1))/k in (0, 1)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return QuadRat(Fraction(k + 1, k), Fraction(-1, k), 2 * k + 1)


# ---------------------------------------------------------------------------
# dense polynomial over Q, stored as integers over one denominator
# ---------------------------------------------------------------------------

class IntPoly:
    """Dense polynomial with exact rational coefficients, ascending degree.

    Internally keeps integer coefficients over a single positive denominator;
    the heavy transforms below stay in pure integer arithmetic that way.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, coeffs):
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for c in fracs:
            den = lcm(den, c.denominator)
        nums = [int(c * den) for c in fracs]
        while nums and nums[-1] == 0:
            nums.pop()
        self._num = nums
        self._den = den

    @classmethod
    def _raw(cls, nums: list[int], den: int) -> "IntPoly":
        self = object.__new__(cls)
        nums = list(nums)
        while nums and nums[-1] == 0:
            nums.pop()
        if den < 0:
            den, nums = -den, [-c for c in nums]
        self._num = nums
        self._den = den
        return self

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self) -> int:
        return len(self._num) - 1

    def __call__(self, t) -> Fraction:
        if isinstance(t, int):
            return Fraction(self._eval_num(t), self._den)
        t = Fraction(t)
        acc = Fraction(0)
        for c in reversed(self._num):
            acc = acc * t + c
        return acc / self._den

    def _eval_num(self, t: int) -> int:
        acc = 0
        for c in reversed(self._num):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, IntPoly):
            return NotImplemented
        g = lcm(self._den, other._den)
        a, b = g // self._den, g // other._den
        return [c * a for c in self._num] == [c * b for c in other._num]

    def __repr__(self):
        return f"IntPoly(degree={self.degree})"


def build_A(params: Params) -> IntPoly:
    """The product of the three binomial-coefficient factors.

    Built by incremental multiplication with the factorial normalizers split
    off into the shared denominator, so intermediate coefficients never leave
    integer arithmetic.  Degree 3(b-2a)n; roots fill -1..-bn with the blocks
    -(an+1)..-(b-a)n doubled and -(2an+1)..-(b-2a)n tripled.
    """
    a, b, n = params.a, params.b, params.n
    nums = [1]
    for lo, hi in ((2 * a * n + 1, (b - 2 * a) * n),
                   (a * n + 1, (b - a) * n),
                   (1, b * n)):
        for j in range(lo, hi + 1):
            out = [0] * (len(nums) + 1)
            for i, c in enumerate(nums):
                out[i] += j * c
                out[i + 1] += c
            nums = out
    den = 1
    for m in ((b - 4 * a) * n, (b - 2 * a) * n, b * n):
        f = 1
        for i in range(2, m + 1):
            f *= i
        den *= f
    return IntPoly._raw(nums, den)


def shift_poly(p: IntPoly, s: int) -> IntPoly:
    """Taylor shift: the polynomial q with q(x) = p(x + s)."""
    if not isinstance(s, int):
        raise DomainError("only integer shifts are supported")
    nums = list(p._num)
    for i in range(len(nums) - 1):
        for j in range(len(nums) - 2, i - 1, -1):
            nums[j] += s * nums[j + 1]
    return IntPoly._raw(nums, p._den)


def derivative(p: IntPoly, order: int = 1) -> IntPoly:
    if order < 0:
        raise DomainError("derivative order must be >= 0")
    nums = p._num
    for _ in range(order):
        nums = [i * c for i, c in enumerate(nums)][1:]
    return IntPoly._raw(nums, p._den)


# ---------------------------------------------------------------------------
# coefficient transform:  -sum_{k>=1} P(-k) z^k = sum_j c_j (z/(z-1))^{j+1}
# ---------------------------------------------------------------------------

def _transform_nums(p: IntPoly, offset: int = 0) -> tuple[list[int], int]:
    """Numerators of the transform coefficients of x -> p(x - offset).

    c_j = sum_{k=1}^{j+1} (-1)^{k-1} p(-k-offset) C(j, k-1) computed by the
    signed difference triangle T[s][j] = T[s][j-1] - T[s+1][j-1] seeded with
    T[s][0] = p(-1-offset-s): subtractions only, no bignum-by-binomial
    products.  Returns (numerators over p's denominator, denominator).
    """
    d = p.degree
    if d < 0:
        return [], p._den
    row = [p._eval_num(-(1 + offset + s)) for s in range(d + 1)]
    out = [row[0]]
    for j in range(1, d + 1):
        for s in range(d - j + 1):
            row[s] -= row[s + 1]
        out.append(row[0])
    return out, p._den


def tail_transform_coeffs(p: IntPoly) -> list[Rat]:
    """Exact coefficients c_0..c_d of the geometric-pole expansion of p's tail
    series; for |z| < 1 the identity
    -sum_{k>=1} p(-k) z^k = sum_j c_j (z/(z-1))^{j+1} holds."""
    nums, den = _transform_nums(p)
    return [Fraction(c, den) for c in nums]


# ---------------------------------------------------------------------------
# exact evaluation of U, V, W
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UVWValues:
    """Exact values of the three rational functions at one point.

    At z = x_k the radical parts of U and W and the rational part of V vanish
    identically: U, W and sqrt(2k+1)*V are rational there.
    """

    U: QuadRat
    V: QuadRat
    W: QuadRat
    params: Params
    x: QuadRat


def _radical_sum(nums: list[int], den: int, t: QuadRat) -> QuadRat:
    """sum_j (nums[j]/den) * t^(j+1) over a single common denominator."""
    td = lcm(t.u.denominator, t.v.denominator)
    tu = int(t.u * td)
    tv = int(t.v * td)
    D = t.D
    jmax = len(nums) - 1
    su = sv = 0
    pu, pv = tu, tv                 # integer pair of t^(j+1), scaled by td^(j+1)
    scale = td**jmax if jmax >= 0 else 1  # td^(jmax - j), common denominator below
    for j in range(jmax + 1):
        if nums[j]:
            m = nums[j] * scale
            su += m * pu
            sv += m * pv
        pu, pv = pu * tu + D * pv * tv, pu * tv + pv * tu
        scale //= td
    full = den * td ** (jmax + 1)
    return QuadRat(Fraction(su, full), Fraction(sv, full), D)


def eval_UVW(params: Params, z: QuadRat) -> UVWValues:
    """Evaluate U, V, W exactly at z (z != 0, 1) via the finite closed forms.

    U uses the transform of A itself; V the transform of A'(. - an) with the
    extra z^{an} factor; W the transform of A''(. - 2an) with z^{2an}.  The
    two shifts land the sums on the index ranges where the transform values
    are nonzero (the doubled and tripled root blocks).
    """
    if not z:
        raise DomainError("z = 0 is outside the domain of U, V, W")
    if z == QuadRat(1):
        raise DomainError("z = 1 is a pole of the transform variable")
    a, n = params.a, params.n
    A = build_A(params)
    t = z / (z - QuadRat(1, 0, z.D))

    cu, den_u = _transform_nums(A)
    cv, den_v = _transform_nums(derivative(A), offset=a * n)
    cw, den_w = _transform_nums(derivative(A, 2), offset=2 * a * n)

    e = params.half_bn1
    U = z ** (-e) * _radical_sum(cu, den_u, t)
    V = z ** (-e + a * n) * _radical_sum(cv, den_v, t)
    W = z ** (-e + 2 * a * n) * _radical_sum(cw, den_w, t)
    return UVWValues(U=U, V=V, W=W, params=params, x=z)


# ---------------------------------------------------------------------------
# scaling to integers (the construction guarantees integrality; a violation
# is a bug, never something to round away)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerForms:
    """The integer coefficient pairs of the linear and quadratic forms.

    ell_n = P*alpha_k + Q and m_n = X*alpha_k^2 + Z are exponentially small;
    Y pairs with X in the intermediate linear form X*alpha_k + Y.  A, B, C
    are the three directly scaled integers (R*U, S*(d/Delta)*sqrt(D)*V and
    T*d'*Delta1*(d/Delta)*W); P..Z are assembled from the same ingredients.
    """

    n: int
    P: int
    Q: int
    X: int
    Y: int
    Z: int
    A: int
    B: int
    C: int
    R: Rat = field(repr=False)
    S: Rat = field(repr=False)
    T: Rat = field(repr=False)
    delta: int = field(repr=False)
    delta1: int = field(repr=False)
    d_bn: int = field(repr=False)
    d_b2an: int = field(repr=False)


def scaling_factors(params: Params) -> tuple[Rat, Rat, Rat]:
    """The three normalizing factors (R, S, T) for k even / odd."""
    k, a, b, n = params.k, params.a, params.b, params.n
    e_r = (b * n + 1) // 2
    e_s = ((b - 2 * a) * n + 1) // 2
    e_t = ((b - 4 * a) * n + 1) // 2
    if k % 2 == 0:
        m = k // 2
        return Fraction(1, m**e_r), Fraction(1, m**e_s), Fraction(1, m**e_t)
    two = 2 ** ((3 * (b - 2 * a) * n + 1) // 2)
    return Fraction(two, k**e_r), Fraction(two, k**e_s), Fraction(two, k**e_t)


def _as_int(value: Rat, quantity: str) -> int:
    if value.denominator != 1:
        raise IntegralityError(quantity, value)
    return value.numerator


def scaled_integer_forms(params: Params, uvw: UVWValues,
                         delta: int, delta1: int) -> IntegerForms:
    """Scale the exact U, V, W at x_k into the integer form coefficients.

    Every quantity here is an exact integer; a fractional result aborts with
    the offending name rather than being rounded.
    """
    k = params.k
    D = 2 * k + 1
    if uvw.x != x_point(k):
        raise DomainError("integer forms are defined only at the point x_k")
    U, V, W = uvw.U, uvw.V, uvw.W
    sqV = QuadRat.sqrt_d(D) * V
    for name, val in (("U(x_k)", U), ("sqrt(D)*V(x_k)", sqV), ("W(x_k)", W)):
        if val.v != 0:
            raise IntegralityError(f"radical part of {name}", val.v)

    R, S, T = scaling_factors(params)
    d_bn = d_upto(params.b * params.n)
    d_b2an = d_upto((params.b - 2 * params.a) * params.n)
    dd = Fraction(d_bn, delta)
    if dd.denominator != 1:
        raise IntegralityError("d_bn/Delta", dd)

    A_int = _as_int(R * U.u, "R*U(x_k)")
    B_int = _as_int(S * dd * sqV.u, "S*(d/Delta)*sqrt(D)*V(x_k)")
    C_int = _as_int(T * d_b2an * delta1 * dd * W.u,
                    "T*d'*Delta1*(d/Delta)*W(x_k)")
    P = _as_int(S * dd * U.u, "P")
    Q = _as_int(-S * dd * sqV.u, "Q")
    X = _as_int(T * d_b2an * delta1 * dd * U.u, "X")
    Y = _as_int(-T * d_b2an * delta1 * dd * sqV.u, "Y")
    Z = _as_int(-T * d_b2an * delta1 * dd * D * W.u, "Z")
    return IntegerForms(n=params.n, P=P, Q=Q, X=X, Y=Y, Z=Z,
                        A=A_int, B=B_int, C=C_int, R=R, S=S, T=T,
                        delta=delta, delta1=delta1, d_bn=d_bn, d_b2an=d_b2an)


# ---------------------------------------------------------------------------
# series oracle (reference path; exact truncation + exact tail bound)
# ---------------------------------------------------------------------------

def _root_multiset_ranges(params: Params) -> list[tuple[int, int]]:
    a, b, n = params.a, params.b, params.n
    return [(2 * a * n + 1, (b - 2 * a) * n),
            (a * n + 1, (b - a) * n),
            (1, b * n)]


def series_uvw(params: Params, z: Rat, terms: int):
    """Truncated tail series for U, V, W at rational z plus exact tail bounds.

    Returns ((U, V, W), (tail_U, tail_V, tail_W)) where each value is the
    truncation of the defining series after ``terms`` summation indices and
    each tail is a proven Rat bound on the truncation error, from the
    geometric ratio of |A(-t) z^t| beyond the cutoff and the pointwise bounds
    |A'| <= |A|*h, |A''| <= |A|*(h^2 + h2) with h, h2 the (decreasing)
    inverse-distance sums to the root multiset.
    """
    z = Fraction(z)
    if not 0 < z < 1:
        raise DomainError("series converges for 0 < z < 1 only")
    a, b, n = params.a, params.b, params.n
    K = terms
    if K <= params.degree + b * n:
        raise DomainError("truncation must reach beyond the root blocks")

    A = build_A(params)
    A1 = derivative(A)
    A2 = derivative(A, 2)
    e = params.half_bn1
    pref = z ** (-e)

    sU = sum((A(-t) * z**t for t in range(b * n + 1, K + 1)), Fraction(0))
    sV = sum((A1(-t) * z**t for t in range((b - a) * n + 1, K + 1)), Fraction(0))
    sW = sum((A2(-t) * z**t for t in range((b - 2 * a) * n + 1, K + 1)), Fraction(0))

    t0 = K + 1
    ratio = z * Fraction((t0 - 2 * a * n) * (t0 - a * n) * t0,
                         (t0 - (b - 2 * a) * n) * (t0 - (b - a) * n) * (t0 - b * n))
    if ratio >= 1:
        raise DomainError(f"tail ratio {ratio} >= 1; increase terms")
    h = Fraction(0)
    h2 = Fraction(0)
    for lo, hi in _root_multiset_ranges(params):
        for c in range(lo, hi + 1):
            h += Fraction(1, t0 - c)
            h2 += Fraction(1, (t0 - c) ** 2)
    tail_first = abs(A(-t0)) * z**t0 / (1 - ratio)
    tails = (pref * tail_first,
             pref * h * tail_first,
             pref * (h * h + h2) * tail_first)
    return (-pref * sU, -pref * sV, -pref * sW), tails
