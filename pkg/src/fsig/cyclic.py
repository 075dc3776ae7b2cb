"""Combinatorial engine for cyclic quotient singularities 1/n(t_1, ..., t_d).

Every multiplicity function mult(M_alpha, R^{1/p^e}) is the number of
lattice points a in [0, p^e - 1]^d with sum t_i a_i = alpha (mod n).
Cutting the cube into boxes of side n (plus a remainder of side r_e) turns
that count into a polynomial in p^e whose coefficients only depend on
r_e = p^e mod n:

    phi_c(r) = (1/n) * sum_{i=c}^{d} (-1)^(i-c) C(i, c) psi_i r^(i-c)
    psi_i    = sum_{|J| = i} g_J * theta_J
    g_J      = gcd(t_J, n)      (g_{} = n)
    theta_J  = #{a in [0, r-1]^(d-|J|) : sum_{l not in J} t_l a_l = alpha mod g_J}

:func:`brute_force_mult` counts the lattice points directly and shares no
code with the formula path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd
from typing import Iterator, Sequence

from .errors import CapExceeded, DimensionTooLarge, InvalidInput, NotFaithful, NotSmall
from .numtheory import require_prime_coprime, residue, residue_cycle
from .qpoly import QuasiPolynomial

MAX_SUBSET_DIM = 24
DEFAULT_ORACLE_CAP = 10**8


def default_oracle_cap() -> int:
    """The oracle enumeration cap, overridable through ``FSIG_ORACLE_CAP``."""
    raw = os.environ.get("FSIG_ORACLE_CAP")
    if not raw:
        return DEFAULT_ORACLE_CAP
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return int(float(raw))
    except ValueError:
        raise InvalidInput(f"FSIG_ORACLE_CAP must be an integer, got {raw!r}") from None


def _gcd_all(values: Sequence[int], n: int) -> int:
    g = n
    for v in values:
        g = gcd(g, v)
    return g


@dataclass(frozen=True)
class CyclicSingularity:
    n: int
    t: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.t)

    def __str__(self) -> str:
        return f"1/{self.n}({','.join(map(str, self.t))})"


def validate(n: int, t: Sequence[int]) -> CyclicSingularity:
    """Reduce the weights mod n and check faithfulness and smallness."""
    if n < 1:
        raise InvalidInput(f"group order n must be positive, got {n}")
    if len(t) < 1:
        raise InvalidInput("need at least one weight")
    w = tuple(int(x) % n for x in t)
    g = _gcd_all(w, n)
    if g > 1:
        raise NotFaithful(
            f"gcd(t_1..t_d, n) = {g} > 1, so the action is not faithful; "
            f"divide n and the weights by {g}"
        )
    d = len(w)
    for skip in range(d):
        sub = w[:skip] + w[skip + 1 :]
        g = _gcd_all(sub, n)
        if g > 1:
            idx = [i + 1 for i in range(d) if i != skip]
            raise NotSmall(
                f"gcd of weights {idx} with n is {g}: the element g^{n // g} fixes exactly "
                f"the coordinates {idx}, so the group contains a pseudoreflection (not small)"
            )
    return CyclicSingularity(n, w)


@dataclass(frozen=True)
class SubsetProfile:
    """g_J for every subset J of {0, ..., d-1} (0-based indices)."""

    d: int
    g: dict[frozenset[int], int]

    def gamma(self, i: int) -> list[frozenset[int]]:
        return [frozenset(J) for J in combinations(range(self.d), i)]

    def all_one(self, i: int) -> bool:
        return all(self.g[J] == 1 for J in self.gamma(i))


def subset_gcds(sing: CyclicSingularity, max_dim: int = MAX_SUBSET_DIM) -> SubsetProfile:
    if sing.d > max_dim:
        raise DimensionTooLarge(f"d = {sing.d} exceeds the subset enumeration cap {max_dim}")
    table: dict[frozenset[int], int] = {}
    for i in range(sing.d + 1):
        for J in combinations(range(sing.d), i):
            table[frozenset(J)] = _gcd_all([sing.t[j] for j in J], sing.n)
    return SubsetProfile(sing.d, table)


def _residue_histogram(weights: Sequence[int], r: int, g: int) -> list[int]:
    """hist[x] = #{a in [0, r-1]^k : sum w_l a_l = x mod g}, by convolution over Z/g."""
    hist = [0] * g
    hist[0] = 1
    for w in weights:
        step = [0] * g
        for a in range(min(r, g)):
            # a, a + g, a + 2g, ... < r all land on the same residue
            step[(a * w) % g] += (r - 1 - a) // g + 1
        nz = [(y, c) for y, c in enumerate(step) if c]
        new = [0] * g
        for x, h in enumerate(hist):
            if h:
                for y, c in nz:
                    new[(x + y) % g] += h * c
        hist = new
    return hist


def theta(sing: CyclicSingularity, J: frozenset[int] | Sequence[int], alpha: int, r: int) -> int:
    """theta_J^(alpha) for the residue r = r_e (0 < r <= n)."""
    J = frozenset(J)
    if len(J) == sing.d:
        return 1
    g = _gcd_all([sing.t[j] for j in J], sing.n)
    rest = [sing.t[j] for j in range(sing.d) if j not in J]
    return _residue_histogram(rest, r, g)[alpha % g]


def psi(sing: CyclicSingularity, i: int, alpha: int, r: int) -> int:
    total = 0
    for J in combinations(range(sing.d), i):
        gJ = _gcd_all([sing.t[j] for j in J], sing.n)
        total += gJ * theta(sing, J, alpha, r)
    return total


def _phi_from_psi(psis: Sequence[int], c: int, r: int, n: int) -> Fraction:
    d = len(psis) - 1
    s = sum((-1) ** (i - c) * comb(i, c) * psis[i] * r ** (i - c) for i in range(c, d + 1))
    return Fraction(s, n)


def phi(sing: CyclicSingularity, c: int, alpha: int, r: int) -> Fraction:
    """Coefficient of p^(c e) in mult(M_alpha, R^{1/p^e}) when p^e = r mod n."""
    psis = [psi(sing, i, alpha, r) for i in range(sing.d + 1)]
    return _phi_from_psi(psis, c, r, sing.n)


def coefficient_vector(sing: CyclicSingularity, alpha: int, r: int) -> tuple[Fraction, ...]:
    """(phi_0, ..., phi_d) for one residue, sharing the psi values."""
    psis = [psi(sing, i, alpha, r) for i in range(sing.d + 1)]
    return tuple(_phi_from_psi(psis, c, r, sing.n) for c in range(sing.d + 1))


def multiplicity_qpoly(sing: CyclicSingularity, p: int, alpha: int = 0) -> QuasiPolynomial:
    """mult(M_alpha, R^{1/p^e}) as a quasi-polynomial; alpha = 0 is FS(e)."""
    require_prime_coprime(p, sing.n)
    alpha %= sing.n
    table = {r: coefficient_vector(sing, alpha, r) for r in residue_cycle(p, sing.n)}
    return QuasiPolynomial(
        p=p, modulus=sing.n, degree=sing.d, coeffs=table, alpha=alpha,
        group_order=sing.n, rank=1, label=str(sing),
    )


def all_multiplicities(sing: CyclicSingularity, p: int) -> list[QuasiPolynomial]:
    return [multiplicity_qpoly(sing, p, a) for a in range(sing.n)]


def fsignature(sing: CyclicSingularity, p: int) -> QuasiPolynomial:
    return multiplicity_qpoly(sing, p, 0)


# --- independent oracle ------------------------------------------------------


def brute_force_counts(
    sing: CyclicSingularity, p: int, e: int, cap: int | None = None
) -> list[int]:
    """Lattice-point counts in [0, p^e - 1]^d split by sum t_i a_i mod n, by full enumeration."""
    cap = default_oracle_cap() if cap is None else cap
    side = p**e
    if side**sing.d > cap:
        raise CapExceeded(
            f"enumerating {side}^{sing.d} = {side ** sing.d} points exceeds the cap {cap}"
        )
    n = sing.n
    counts = [0] * n
    # each axis lists t_i * a mod n for a = 0 .. p^e - 1; the tuple loop is the literal enumeration
    axes = [[(ti * a) % n for a in range(side)] for ti in sing.t]
    for point in product(*axes):
        counts[sum(point) % n] += 1
    return counts


def brute_force_mult(
    sing: CyclicSingularity, p: int, e: int, alpha: int, cap: int | None = None
) -> int:
    return brute_force_counts(sing, p, e, cap)[alpha % sing.n]


def congruence_count(t_sub: Sequence[int], n: int, b: int) -> int:
    """Number of solutions x in (Z/n)^i of sum t_j x_j = b mod n."""
    if n < 1:
        raise InvalidInput("n must be positive")
    g = _gcd_all(t_sub, n)
    if b % g:
        return 0
    i = len(t_sub)
    # i = 0: the empty sum is 0, and g = n divides b
    return g * n ** (i - 1) if i else 1


# --- structure ---------------------------------------------------------------


def pseudoreflection_counts(sing: CyclicSingularity) -> tuple[int, ...]:
    """|G_c| for c = 0..d: elements g^j with exactly c eigenvalues equal to 1."""
    counts = [0] * (sing.d + 1)
    for j in range(sing.n):
        counts[sum(1 for ti in sing.t if (j * ti) % sing.n == 0)] += 1
    return tuple(counts)


@dataclass(frozen=True)
class VanishingProfile:
    sing: CyclicSingularity
    first_nonzero: int | None
    pseudoreflections: tuple[int, ...]

    @property
    def vanishing_above(self) -> tuple[int, ...]:
        """Indices c < d forced to vanish by g_J = 1 on Gamma_c."""
        top = self.sing.d
        low = self.first_nonzero + 1 if self.first_nonzero is not None else 0
        return tuple(range(low, top))

    @property
    def zero_coefficients(self) -> tuple[int, ...]:
        """Indices c < d with phi_c identically zero for FS (no c-pseudoreflections)."""
        return tuple(c for c in range(self.sing.d) if self.pseudoreflections[c] == 0)

    def first_nonzero_coefficient(self, r: int, alpha: int = 0) -> Fraction | None:
        """(psi_l - C(d, l) r^(d-l)) / n for the first non-vanishing index l."""
        if self.first_nonzero is None:
            return None
        l, d = self.first_nonzero, self.sing.d
        return Fraction(psi(self.sing, l, alpha, r) - comb(d, l) * r ** (d - l), self.sing.n)


def vanishing_profile(sing: CyclicSingularity) -> VanishingProfile:
    prof = subset_gcds(sing)
    first = None
    for c in range(sing.d - 1, -1, -1):
        if not prof.all_one(c):
            first = c
            break
    return VanishingProfile(sing, first, pseudoreflection_counts(sing))


# --- cube partition ----------------------------------------------------------


@dataclass(frozen=True)
class Box:
    J: frozenset[int]
    lower: tuple[int, ...]
    upper: tuple[int, ...]  # inclusive

    def points(self) -> Iterator[tuple[int, ...]]:
        return product(*(range(lo, hi + 1) for lo, hi in zip(self.lower, self.upper)))

    @property
    def size(self) -> int:
        out = 1
        for lo, hi in zip(self.lower, self.upper):
            out *= hi - lo + 1
        return out


def cube_partition(n: int, d: int, p: int, e: int) -> Iterator[Box]:
    """The boxes C_J + n*v_{J,s} that tile [0, p^e - 1]^d.

    Writing p^e = k n + r, coordinates in J sit in a full block
    [n s_j, n s_j + n - 1] with 0 <= s_j < k; the others sit in the tail
    [k n, k n + r - 1].
    """
    q = p**e
    r = residue(p, e, n)
    k = (q - r) // n
    for i in range(d + 1):
        for J in combinations(range(d), i):
            for s in product(range(k), repeat=i):
                lower, upper = [], []
                it = iter(s)
                for j in range(d):
                    if j in J:
                        base = n * next(it)
                        lower.append(base)
                        upper.append(base + n - 1)
                    else:
                        lower.append(k * n)
                        upper.append(k * n + r - 1)
                yield Box(frozenset(J), tuple(lower), tuple(upper))


# --- Veronese closed forms ---------------------------------------------------


def _choose2(u: int) -> int:
    return u * (u - 1) // 2 if u >= 2 else 0


def veronese_theta_2d(n: int, r: int) -> int:
    """theta_{}^(0) for 1/n(1,1): #{(a, b) in [0, r-1]^2 : a + b = 0 mod n}.

    Only (0, 0) and the 2r - n - 1 pairs with a + b = n qualify.
    """
    return max(1, 2 * r - n)


def veronese_theta_3d(n: int, r: int) -> int:
    """theta_{}^(0) for 1/n(1,1,1) via stars and bars on a + b + c in {0, n, 2n}."""
    return (
        1
        + _choose2(3 * r - n - 1)
        - 3 * _choose2(2 * r - n - 1)
        + _choose2(3 * r - 2 * n - 1)
    )


# --- sweeps ------------------------------------------------------------------


def sweep_singularities(max_n: int, max_d: int, min_d: int = 1) -> Iterator[CyclicSingularity]:
    """Every valid (faithful, small) weight vector with n <= max_n, min_d <= d <= max_d."""
    for n in range(1, max_n + 1):
        for d in range(min_d, max_d + 1):
            for t in product(range(n), repeat=d):
                try:
                    yield validate(n, t)
                except (NotFaithful, NotSmall):
                    continue
