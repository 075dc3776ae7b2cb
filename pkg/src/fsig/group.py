"""Character-sum engine for arbitrary finite small groups.

A group is described by conjugacy-class data: for each class, its size and
the eigenvalue exponents (m_1, ..., m_d) of a representative, meaning the
eigenvalues are zeta_N^(m_i) for a declared modulus N. Roots of unity in the
base field and in C are both tracked by these exponents, so no explicit
isomorphism between them is ever built.

For a character chi (default: the trivial one),

    mult(M_chi, R^{1/p^e})
        = 1/|G| sum_g conj(chi(g)) prod_i sum_{a=0}^{p^e-1} xi_{g,i}^a,

where xi_{g,i} has exponent m_i * p^(-e) mod N (the Frobenius twist).
Coordinates with m_i = 0 contribute exactly p^e, so the classes with c
zero exponents make up the coefficient of p^(c e).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .cyclic import CyclicSingularity
from .errors import InvalidGroupSpec, InvalidInput, NotInteger, NotRational, SmallnessViolation
from .exactnum import Cyclotomic, as_rational, geom_sum, root_of_unity
from .numtheory import inverse_mod, require_prime_coprime, residue_cycle
from .qpoly import QuasiPolynomial

LABELINGS = ("fixed", "twisted")


@dataclass(frozen=True)
class ConjClass:
    size: int
    exponents: tuple[int, ...]
    label: str = ""

    def zeros(self) -> int:
        return sum(1 for m in self.exponents if m == 0)


@dataclass(frozen=True)
class Character:
    rank: int
    values: tuple[Cyclotomic, ...]
    label: str = ""


@dataclass(frozen=True)
class GroupSpec:
    """Conjugacy-class eigenvalue data of a finite small subgroup of GL(d).

    ``labeling`` says how character rows are read. With ``"fixed"`` a row is
    the Brauer character of one fixed representation for every e, exactly as
    in the character-sum formula above. With ``"twisted"`` the row is read
    relative to the Frobenius-twisted primitive root, i.e. the Galois twist
    zeta -> zeta^(p^-e) is applied to the character values as well; this is
    the labeling chi_alpha = xi_e^alpha used for cyclic groups, under which
    M_alpha counts the points with sum t_i a_i = alpha mod n.
    """

    N: int
    d: int
    order: int
    classes: tuple[ConjClass, ...]
    characters: tuple[Character, ...] = ()
    labeling: str = "fixed"
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.N < 1 or self.d < 1 or self.order < 1:
            raise InvalidGroupSpec("N, d and order must be positive")
        if self.labeling not in LABELINGS:
            raise InvalidGroupSpec(f"labeling must be one of {LABELINGS}, got {self.labeling!r}")
        classes = tuple(
            ConjClass(c.size, tuple(int(m) % self.N for m in c.exponents), c.label) for c in self.classes
        )
        object.__setattr__(self, "classes", classes)
        for c in classes:
            if len(c.exponents) != self.d:
                raise InvalidGroupSpec(f"class {c.label!r} has {len(c.exponents)} exponents, expected d = {self.d}")
            if c.size < 1:
                raise InvalidGroupSpec(f"class {c.label!r} has non-positive size")
        total = sum(c.size for c in classes)
        if total != self.order:
            raise InvalidGroupSpec(f"class sizes sum to {total}, but the declared order is {self.order}")
        ids = [c for c in classes if c.zeros() == self.d]
        if len(ids) != 1 or ids[0].size != 1:
            raise InvalidGroupSpec("there must be exactly one identity class (all exponents 0, size 1)")
        for c in classes:
            if c.zeros() == self.d - 1:
                raise SmallnessViolation(
                    f"class {c.label!r} with exponents {c.exponents} has exactly d - 1 eigenvalues "
                    "equal to 1: it is a pseudoreflection, so the group is not small"
                )
        for k, ch in enumerate(self.characters):
            if len(ch.values) != len(classes):
                raise InvalidGroupSpec(f"character {k} has {len(ch.values)} values for {len(classes)} classes")
            if any(v.order != self.N for v in ch.values):
                raise InvalidGroupSpec(f"character {k} values must lie in Q(zeta_{self.N})")
            if ch.values[self.identity_index] != ch.rank:
                raise InvalidGroupSpec(f"character {k}: value at the identity must equal its rank {ch.rank}")
        if self.characters and self.trivial_index is None:
            raise InvalidGroupSpec("the character list must contain the trivial character")

    @property
    def identity_index(self) -> int:
        return next(i for i, c in enumerate(self.classes) if c.zeros() == self.d)

    @property
    def trivial_index(self) -> int | None:
        if not self.characters:
            return 0
        for k, ch in enumerate(self.characters):
            if ch.rank == 1 and all(v == 1 for v in ch.values):
                return k
        return None

    def character(self, index: int | None = None) -> Character:
        """Character row ``index``; ``None`` (or 0 with no rows declared) is the trivial one."""
        if index is None:
            index = self.trivial_index
        if not self.characters:
            if index != 0:
                raise InvalidGroupSpec("this group spec declares no characters; only the trivial one (0) is available")
            return Character(1, tuple(Cyclotomic.constant(self.N, 1) for _ in self.classes), "trivial")
        if not 0 <= index < len(self.characters):
            raise InvalidGroupSpec(f"character index {index} out of range 0..{len(self.characters) - 1}")
        return self.characters[index]

    @property
    def num_characters(self) -> int:
        return len(self.characters) or 1


# --- Frobenius twist and class sums -------------------------------------------


def twist_exponent(m: int, N: int, p: int, e: int) -> int:
    """Exponent of lambda^(1/p^e) when lambda = zeta_N^m."""
    return (m * pow(inverse_mod(p, N), e, N)) % N


@lru_cache(maxsize=64)
def _class_products(classes: tuple[ConjClass, ...], N: int, r: int) -> tuple[Cyclotomic, ...]:
    """Per class: size * product over the non-identity eigenvalues, with r standing for p^e mod N."""
    inv = inverse_mod(r, N)
    out = []
    for cls in classes:
        acc = Cyclotomic.constant(N, cls.size)
        for m in cls.exponents:
            if m:
                acc = acc * geom_sum(N, (m * inv) % N, r)
        out.append(acc)
    return tuple(out)


def class_sum(spec: GroupSpec, cls: ConjClass, p: int, e: int) -> Cyclotomic:
    """prod_i sum_{a=0}^{p^e-1} (twisted eigenvalue_i)^a for one class representative."""
    q = p**e
    acc = Cyclotomic.constant(spec.N, 1)
    for m in cls.exponents:
        if m == 0:
            acc = acc * q
        else:
            acc = acc * geom_sum(spec.N, twist_exponent(m, spec.N, p, e), q)
    return acc


def _read_character(spec: GroupSpec, ch: Character, r: int) -> list[Cyclotomic]:
    """conj(chi) per class, after the Galois twist for ``twisted`` labeling."""
    if spec.labeling == "twisted":
        k = -inverse_mod(r, spec.N) % spec.N
        return [v.galois(k) for v in ch.values]
    return [v.conjugate() for v in ch.values]


def multiplicity_general(spec: GroupSpec, p: int, e: int, char_index: int | None = None) -> int:
    """mult(M_chi, R^{1/p^e}) by the full character sum; must be a non-negative integer."""
    require_prime_coprime(p, spec.order)
    inverse_mod(p, spec.N)  # NonInvertible when p | N
    ch = spec.character(char_index)
    r = pow(p, e, spec.N) or spec.N
    conj = _read_character(spec, ch, r)
    total = Cyclotomic.constant(spec.N, 0)
    for cls, x in zip(spec.classes, conj):
        total = total + x * class_sum(spec, cls, p, e) * cls.size
    value = as_rational(total) / spec.order
    if value.denominator != 1 or value < 0:
        raise NotInteger(
            f"character sum gives {value}, not a non-negative integer: the class or character data is inconsistent"
        )
    return int(value)


def multiplicity_qpoly_general(spec: GroupSpec, p: int, char_index: int | None = None) -> QuasiPolynomial:
    """Quasi-polynomial of mult(M_chi, R^{1/p^e}), keyed by p^e mod N."""
    require_prime_coprime(p, spec.order)
    inverse_mod(p, spec.N)  # NonInvertible when p | N
    idx = spec.trivial_index if char_index is None else char_index
    ch = spec.character(idx)
    table: dict[int, tuple[Fraction, ...]] = {}
    for r in residue_cycle(p, spec.N):
        conj = _read_character(spec, ch, r)
        acc = [Cyclotomic.constant(spec.N, 0) for _ in range(spec.d + 1)]
        for cls, x, prod in zip(spec.classes, conj, _class_products(spec.classes, spec.N, r)):
            c = cls.zeros()
            acc[c] = acc[c] + x * prod
        try:
            coeffs = tuple(as_rational(a) / spec.order for a in acc)
        except NotRational as exc:
            raise NotRational(f"residue {r}: {exc}; the class or character data is inconsistent") from exc
        if coeffs[spec.d] != Fraction(ch.rank, spec.order):
            raise NotRational(f"leading coefficient {coeffs[spec.d]} differs from rank/|G| = {ch.rank}/{spec.order}")
        if coeffs[spec.d - 1] != 0:
            raise NotRational(f"coefficient of p^((d-1)e) is {coeffs[spec.d - 1]}, expected 0")
        table[r] = coeffs
    return QuasiPolynomial(
        p=p, modulus=spec.N, degree=spec.d, coeffs=table, alpha=idx or 0,
        group_order=spec.order, rank=ch.rank, label=spec.name,
    )


def fsignature_qpoly_general(spec: GroupSpec, p: int, char_index: int | None = None) -> QuasiPolynomial:
    return multiplicity_qpoly_general(spec, p, char_index)


def pseudoreflection_profile_general(spec: GroupSpec) -> tuple[int, ...]:
    """|G_c| for c = 0..d, weighting each class by its size."""
    counts = [0] * (spec.d + 1)
    for cls in spec.classes:
        counts[cls.zeros()] += cls.size
    return tuple(counts)


def cyclic_to_group(sing: CyclicSingularity) -> GroupSpec:
    """Singleton classes g^j with exponents j*t mod n and characters chi_alpha(g^j) = zeta_n^(j alpha)."""
    n = sing.n
    classes = tuple(
        ConjClass(1, tuple((j * ti) % n for ti in sing.t), f"g^{j}") for j in range(n)
    )
    chars = tuple(
        Character(1, tuple(root_of_unity(n, j * a) for j in range(n)), f"chi_{a}") for a in range(n)
    )
    return GroupSpec(N=n, d=sing.d, order=n, classes=classes, characters=chars, labeling="twisted", name=str(sing))


# --- JSON -------------------------------------------------------------------


def _parse_cyclotomic(raw: object, N: int) -> Cyclotomic:
    """Accepts an integer/"a/b" constant or a list of [exponent, coefficient] pairs."""
    if isinstance(raw, (int, str)):
        return Cyclotomic.constant(N, Fraction(raw))
    if isinstance(raw, list):
        terms = []
        for item in raw:
            if not (isinstance(item, list) and len(item) == 2):
                raise InvalidGroupSpec(f"bad cyclotomic term {item!r}; expected [exponent, coefficient]")
            terms.append((int(item[0]), Fraction(item[1])))
        return Cyclotomic.from_exponents(N, terms)
    raise InvalidGroupSpec(f"cannot read a cyclotomic number from {raw!r}")


def _cyclotomic_to_json(x: Cyclotomic) -> list:
    return [[j, str(c) if c.denominator != 1 else c.numerator] for j, c in enumerate(x.coeffs) if c]


def spec_from_json(doc: dict | str, name: str = "") -> GroupSpec:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        N = int(doc["N"])
        classes = tuple(
            ConjClass(int(c["size"]), tuple(int(m) for m in c["exponents"]), str(c.get("label", "")))
            for c in doc["classes"]
        )
        chars = tuple(
            Character(int(ch["rank"]), tuple(_parse_cyclotomic(v, N) for v in ch["values"]), str(ch.get("label", "")))
            for ch in doc.get("characters", [])
        )
        return GroupSpec(
            N=N, d=int(doc["d"]), order=int(doc["order"]), classes=classes, characters=chars,
            labeling=doc.get("labeling", "fixed"), name=doc.get("name", name),
        )
    except InvalidInput:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGroupSpec(f"malformed group spec: {exc}") from exc


def spec_to_json(spec: GroupSpec) -> dict:
    doc: dict = {
        "N": spec.N,
        "d": spec.d,
        "order": spec.order,
        "classes": [{"label": c.label, "size": c.size, "exponents": list(c.exponents)} for c in spec.classes],
    }
    if spec.name:
        doc["name"] = spec.name
    if spec.labeling != "fixed":
        doc["labeling"] = spec.labeling
    if spec.characters:
        doc["characters"] = [
            {"label": ch.label, "rank": ch.rank, "values": [_cyclotomic_to_json(v) for v in ch.values]}
            for ch in spec.characters
        ]
    return doc


BUILTIN_SPECS = ("klein4", "e6", "d4_veronese3")


def load_spec(path_or_name: str | Path) -> GroupSpec:
    """Load a group spec from a JSON file, or one of the bundled names in ``BUILTIN_SPECS``."""
    p = Path(path_or_name)
    if p.is_file():
        return spec_from_json(p.read_text(), name=p.stem)
    stem = p.stem if p.suffix == ".json" else str(path_or_name)
    if stem in BUILTIN_SPECS:
        text = resources.files("fsig.data").joinpath(f"{stem}.json").read_text()
        return spec_from_json(text, name=stem)
    raise InvalidGroupSpec(f"no such group spec file {str(path_or_name)!r} (bundled: {', '.join(BUILTIN_SPECS)})")
