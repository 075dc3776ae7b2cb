"""Exact rational and cyclotomic arithmetic.

Rationals are plain :class:`fractions.Fraction` values. Elements of the
cyclotomic field Q(zeta_N) are stored in the power basis
1, zeta, ..., zeta^(phi(N)-1), i.e. reduced modulo the N-th cyclotomic
polynomial, so equality and rationality reduce to coefficient checks.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Union

from .errors import NotRational, OrderMismatch

Rational = Fraction

Scalar = Union[int, Fraction]


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # Coefficient lists are low -> high; den must be monic.
    num = list(num)
    dlen = len(den)
    quot = [0] * (len(num) - dlen + 1)
    for k in range(len(quot) - 1, -1, -1):
        q = num[k + dlen - 1]
        quot[k] = q
        if q:
            for j, c in enumerate(den):
                num[k + j] -= q * c
    if any(num[: dlen - 1]):
        raise ArithmeticError("polynomial division is not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Return the coefficients (lowest degree first) of the n-th cyclotomic polynomial.

    Computed as (x^n - 1) divided exactly by the product of Phi_d over the
    proper divisors d of n.

    >>> cyclotomic_poly(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic_poly needs n >= 1, got {n}")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of zeta_n^k for k = 0 .. 2*phi(n) - 2 (and at least n - 1)."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows: list[tuple[int, ...]] = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(n, 2 * deg - 1)):
        rows.append(tuple(cur))
        # multiply by x and reduce the overflow with x^deg = -sum(phi[:deg] x^j)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


class Cyclotomic:
    """An element of Q(zeta_N) in canonical power-basis form.

    Instances are immutable. Arithmetic with ``int`` or ``Fraction`` operands
    lifts them to constants; mixing two different orders N raises
    :class:`OrderMismatch` (use :meth:`rebase` first).
    """

    __slots__ = ("_n", "_c")

    def __init__(self, n: int, coeffs: Iterable[Scalar] = ()):
        if n < 1:
            raise ValueError(f"cyclotomic order must be >= 1, got {n}")
        deg = euler_phi(n)
        c = [Fraction(x) for x in coeffs]
        if len(c) > deg:
            c = _reduce(n, c)
        c.extend([Fraction(0)] * (deg - len(c)))
        self._n = n
        self._c = tuple(c)

    @classmethod
    def _raw(cls, n: int, coeffs: tuple[Fraction, ...]) -> Cyclotomic:
        obj = object.__new__(cls)
        obj._n = n
        obj._c = coeffs
        return obj

    @classmethod
    def constant(cls, n: int, value: Scalar) -> Cyclotomic:
        return cls(n, [value])

    @classmethod
    def from_exponents(cls, n: int, terms: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]]) -> Cyclotomic:
        """Build sum(coef * zeta_n^exp) from (exponent, coefficient) pairs."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        table = _power_table(n)
        acc = [Fraction(0)] * euler_phi(n)
        for exp, coef in items:
            coef = Fraction(coef)
            if not coef:
                continue
            for j, v in enumerate(table[exp % n]):
                if v:
                    acc[j] += v * coef
        return cls._raw(n, tuple(acc))

    @property
    def order(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def _lift(self, other: object) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other._n != self._n:
                raise OrderMismatch(
                    f"cannot combine elements of Q(zeta_{self._n}) and Q(zeta_{other._n}); "
                    "rebase both into a common field first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.constant(self._n, other)
        return None

    def __add__(self, other: object) -> Cyclotomic:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self._n, tuple(a + b for a, b in zip(self._c, o._c)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self._n, tuple(-a for a in self._c))

    def __sub__(self, other: object) -> Cyclotomic:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self._n, tuple(a - b for a, b in zip(self._c, o._c)))

    def __rsub__(self, other: object) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: object) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self._n, tuple(a * other for a in self._c))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        deg = len(self._c)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(o._c):
                    if b:
                        prod[i + j] += a * b
        return Cyclotomic._raw(self._n, tuple(_reduce(self._n, prod)))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> Cyclotomic:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Cyclotomic._raw(self._n, tuple(a / other for a in self._c))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyclotomic):
            return self._n == other._n and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._c[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._n, self._c))

    def __bool__(self) -> bool:
        return any(self._c)

    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def galois(self, k: int) -> Cyclotomic:
        """Apply the automorphism zeta -> zeta^k (k must be a unit mod N)."""
        if gcd(k, self._n) != 1:
            raise ValueError(f"{k} is not a unit modulo {self._n}")
        return Cyclotomic.from_exponents(self._n, ((j * k, c) for j, c in enumerate(self._c) if c))

    def conjugate(self) -> Cyclotomic:
        return self.galois(-1)

    def rebase(self, m: int) -> Cyclotomic:
        """Embed into Q(zeta_m); requires N | m."""
        if m % self._n:
            raise OrderMismatch(f"Q(zeta_{self._n}) does not embed in Q(zeta_{m})")
        step = m // self._n
        return Cyclotomic.from_exponents(m, ((j * step, c) for j, c in enumerate(self._c) if c))

    def __repr__(self) -> str:
        return f"Cyclotomic({self._n}, {[str(c) for c in self._c]})"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self._c):
            if not c:
                continue
            z = "" if j == 0 else (f"z{self._n}" if j == 1 else f"z{self._n}^{j}")
            if not z:
                terms.append(str(c))
            elif c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append(f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _reduce(n: int, coeffs: list[Fraction]) -> list[Fraction]:
    deg = euler_phi(n)
    if len(coeffs) <= deg:
        return coeffs + [Fraction(0)] * (deg - len(coeffs))
    table = _power_table(n)
    if len(coeffs) > len(table):
        # only reachable through the public constructor with very long input
        out = [Fraction(0)] * deg
        for k, c in enumerate(coeffs):
            if c:
                for j, v in enumerate(table[k % n]):
                    if v:
                        out[j] += v * c
        return out
    out = list(coeffs[:deg])
    for k in range(deg, len(coeffs)):
        c = coeffs[k]
        if c:
            for j, v in enumerate(table[k]):
                if v:
                    out[j] += v * c
    return out


def root_of_unity(n: int, m: int) -> Cyclotomic:
    """zeta_n^m in canonical form."""
    row = _power_table(n)[m % n]
    return Cyclotomic._raw(n, tuple(Fraction(v) for v in row))


def as_rational(x: Cyclotomic) -> Fraction:
    """Return the value of ``x`` as a Fraction, or raise :class:`NotRational`."""
    if not x.is_rational():
        raise NotRational(f"{x} is not a rational number")
    return x.coeffs[0]


def geom_sum(n: int, m: int, length: int) -> Cyclotomic:
    """Sum of (zeta_n^m)^a for a = 0 .. length - 1.

    Full periods of the root cancel, so only ``length`` modulo the order of
    zeta_n^m matters and no more than order - 1 terms are added; ``length``
    may be astronomically large.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    m %= n
    root_order = n // gcd(m, n)
    if root_order == 1:
        return Cyclotomic.constant(n, length)
    table = _power_table(n)
    acc = [0] * euler_phi(n)
    for a in range(length % root_order):
        for j, v in enumerate(table[(m * a) % n]):
            acc[j] += v
    return Cyclotomic._raw(n, tuple(Fraction(v) for v in acc))
