"""Exact arithmetic substrate: rationals, quadratic extensions, prime sieve, lcm(1..n).

``Rat`` is an alias for :class:`fractions.Fraction`, which already keeps
values canonical (gcd-reduced, positive denominator).  Everything here is
immutable after construction and safe to share between workers.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import DomainError, SieveCapacityError

Rat = Fraction

DEFAULT_SIEVE_LIMIT = 2_000_000


# ---------------------------------------------------------------------------
# rational helpers
# ---------------------------------------------------------------------------

def rat_floor(x: Rat) -> int:
    """Largest integer <= x (exact, toward minus infinity)."""
    return x.numerator // x.denominator


def rat_frac(x: Rat) -> Rat:
    """Fractional part in [0, 1); satisfies x == rat_floor(x) + rat_frac(x)."""
    return x - rat_floor(x)


def format_rat(x: Rat) -> str:
    """Render as ``num/den`` (plain ``num`` when the denominator is 1)."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Rat:
    """Parse ``num/den``, integer, or decimal strings back into a Rat."""
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse rational from {s!r}") from exc


def rat_to_decimal(x: Rat, digits: int) -> str:
    """Decimal rendering with exactly ``digits`` fractional digits.

    Truncates toward zero, so the rendering of an exact decimal (denominator
    of the form 2^a * 5^b with enough digits) parses back to an equal Rat.
    """
    if digits < 0:
        raise DomainError("digits must be >= 0")
    sign = "-" if x < 0 else ""
    scaled = abs(x.numerator) * 10**digits // x.denominator
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def sqrt_bounds(d: int, digits: int) -> tuple[Rat, Rat]:
    """Exact rational bounds lo <= sqrt(d) <= hi sharing denominator 10^digits."""
    if d < 0:
        raise DomainError("sqrt of a negative integer")
    scale = 10**digits
    root = isqrt(d * scale * scale)
    lo = Fraction(root, scale)
    hi = lo if root * root == d * scale * scale else Fraction(root + 1, scale)
    return lo, hi


# ---------------------------------------------------------------------------
# quadratic extension Q(sqrt(D))
# ---------------------------------------------------------------------------

class QuadRat:
    """u + v*sqrt(D) with exact rational parts and a fixed positive integer D.

    A perfect-square D collapses to pure rational form at construction
    (v folded into u), so degenerate indices like k = 4 (D = 9) flow through
    the same code paths as the generic irrational case.  Values with v == 0
    combine with any D, which is what makes the collapse transparent.
    """

    __slots__ = ("u", "v", "D")

    def __init__(self, u, v=0, D: int = 1):
        if D < 1:
            raise DomainError(f"D must be a positive integer, got {D}")
        u, v = Fraction(u), Fraction(v)
        r = isqrt(D)
        if r * r == D and v:
            u, v = u + v * r, Fraction(0)
        self.u = u
        self.v = v
        self.D = D

    @classmethod
    def from_rat(cls, x, D: int = 1) -> "QuadRat":
        return cls(x, 0, D)

    @classmethod
    def sqrt_d(cls, D: int) -> "QuadRat":
        """The element sqrt(D) itself (collapses when D is a perfect square)."""
        return cls(0, 1, D)

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    def _join_d(self, other: "QuadRat") -> int:
        if self.D == other.D:
            return self.D
        if self.v == 0:
            return other.D
        if other.v == 0:
            return self.D
        raise DomainError(f"mismatched radicands: {self.D} vs {other.D}")

    def _coerce(self, other) -> "QuadRat":
        if isinstance(other, QuadRat):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadRat(other, 0, self.D)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.u + o.u, self.v + o.v, self._join_d(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.u - o.u, self.v - o.v, self._join_d(o))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return QuadRat(-self.u, -self.v, self.D)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        D = self._join_d(o)
        return QuadRat(self.u * o.u + D * self.v * o.v,
                       self.u * o.v + self.v * o.u, D)

    __rmul__ = __mul__

    def inverse(self) -> "QuadRat":
        n = self.norm()
        if n == 0:
            raise DomainError("inverse of zero (or of a zero-norm element)")
        return QuadRat(self.u / n, -self.v / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int) -> "QuadRat":
        if not isinstance(e, int):
            raise DomainError("QuadRat powers must be integers")
        base = self.inverse() if e < 0 else self
        e = abs(e)
        out = QuadRat(1, 0, self.D)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "QuadRat":
        return QuadRat(self.u, -self.v, self.D)

    def norm(self) -> Rat:
        return self.u * self.u - self.D * self.v * self.v

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.u != o.u or self.v != o.v:
            return False
        return self.v == 0 or self.D == o.D

    def __hash__(self):
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v, self.D))

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def __repr__(self):
        if self.v == 0:
            return f"QuadRat({format_rat(self.u)})"
        return f"QuadRat({format_rat(self.u)} + {format_rat(self.v)}*sqrt({self.D}))"


# ---------------------------------------------------------------------------
# primes and d_n = lcm(1..n)
# ---------------------------------------------------------------------------

class PrimeSieve:
    """Bit-table sieve of Eratosthenes, built once and then read-only."""

    __slots__ = ("limit", "_table")

    def __init__(self, limit: int = DEFAULT_SIEVE_LIMIT):
        if limit < 2:
            raise DomainError("sieve limit must be >= 2")
        self.limit = limit
        table = bytearray([1]) * (limit + 1)
        table[0:2] = b"\x00\x00"
        for p in range(2, isqrt(limit) + 1):
            if table[p]:
                step = len(range(p * p, limit + 1, p))
                table[p * p:: p] = b"\x00" * step
        self._table = bytes(table)

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise SieveCapacityError(f"{n} exceeds sieve limit {self.limit}")
        return n >= 0 and bool(self._table[n])

    def primes(self, lo: int = 2, hi: int | None = None) -> list[int]:
        """All primes p with lo <= p <= hi, ascending."""
        hi = self.limit if hi is None else hi
        if hi > self.limit:
            raise SieveCapacityError(f"{hi} exceeds sieve limit {self.limit}")
        return [p for p in range(max(lo, 2), hi + 1) if self._table[p]]


def primes_between(lo, hi: int, sieve: PrimeSieve) -> list[int]:
    """Primes p with lo < p <= hi; ``lo`` may be any Rat (exact comparison)."""
    lo = Fraction(lo)
    start = rat_floor(lo) + 1
    return sieve.primes(start, hi)


def primes_above_sqrt(m: int, hi: int, sieve: PrimeSieve) -> list[int]:
    """Primes p with sqrt(m) < p <= hi, decided exactly via p*p > m."""
    return [p for p in sieve.primes(2, hi) if p * p > m]


def d_upto(n: int) -> int:
    """lcm(1, ..., n), computed as the product of p^floor(log_p n)."""
    if n < 1:
        raise DomainError("d_upto requires n >= 1")
    if n == 1:
        return 1
    table = bytearray([1]) * (n + 1)
    table[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if table[p]:
            table[p * p:: p] = b"\x00" * len(range(p * p, n + 1, p))
    out = 1
    for p in range(2, n + 1):
        if table[p]:
            q = p
            while q * p <= n:
                q *= p
            out *= q
    return out


def log_d_upto(n: int, sieve: PrimeSieve) -> float:
    """ln lcm(1..n) as a float (finite-n oracle use; exact value is huge)."""
    import math

    if n > sieve.limit:
        raise SieveCapacityError(f"{n} exceeds sieve limit {sieve.limit}")
    total = 0.0
    for p in sieve.primes(2, n):
        e = 1
        q = p
        while q * p <= n:
            q *= p
            e += 1
        total += e * math.log(p)
    return total
