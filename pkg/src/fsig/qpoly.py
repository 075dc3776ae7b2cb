"""Quasi-polynomials in p^e with coefficients keyed by the residue of p^e.

A multiplicity function is stored as ``{r: (phi_0(r), ..., phi_d(r))}`` where
``r`` runs over the residues of p^e modulo the modulus. Residues use the
representative in ``1..modulus`` so that the trivial modulus 1 gets the key 1
(p^e = k*1 + 1) and e = 0 always lands on r = 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .errors import InvalidInput, MissingResidue, StructureMismatch
from .numtheory import residue, residue_cycle


def _frac(x: object) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {x!r} as an exact coefficient")


@dataclass(frozen=True)
class QuasiPolynomial:
    """sum_c phi_c(r_e) * p^(c*e), with r_e the residue of p^e modulo ``modulus``."""

    p: int
    modulus: int
    degree: int
    coeffs: Mapping[int, tuple[Fraction, ...]]
    alpha: int = 0
    group_order: int | None = None
    rank: int | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise InvalidInput("modulus must be positive")
        if gcd(self.p, self.modulus) != 1:
            raise InvalidInput(f"p = {self.p} must be coprime to the modulus {self.modulus}")
        table = {int(r): tuple(_frac(c) for c in v) for r, v in self.coeffs.items()}
        for r, v in table.items():
            if len(v) != self.degree + 1:
                raise InvalidInput(f"residue {r}: expected {self.degree + 1} coefficients, got {len(v)}")
        expected = set(residue_cycle(self.p, self.modulus))
        if set(table) != expected:
            raise InvalidInput(
                f"coefficient table keys {sorted(table)} differ from the residues "
                f"{sorted(expected)} generated by p = {self.p} mod {self.modulus}"
            )
        object.__setattr__(self, "coeffs", table)

    @property
    def period(self) -> int:
        return len(self.coeffs)

    def residues(self) -> list[int]:
        """Residues in the order e = 0, 1, ..., period - 1."""
        return residue_cycle(self.p, self.modulus)

    def coefficients_at(self, e: int) -> tuple[Fraction, ...]:
        r = residue(self.p, e, self.modulus)
        try:
            return self.coeffs[r]
        except KeyError:
            raise MissingResidue(f"no coefficients stored for residue {r} (e = {e})") from None

    def evaluate(self, e: int) -> Fraction:
        if e < 0:
            raise InvalidInput("e must be non-negative")
        q = self.p**e
        total = Fraction(0)
        power = 1
        for c in self.coefficients_at(e):
            total += c * power
            power *= q
        return total

    def is_constant(self) -> bool:
        return len(set(self.coeffs.values())) == 1

    def render(self, fmt: str = "text") -> str:
        return render(self, fmt)


def evaluate(qp: QuasiPolynomial, e: int) -> Fraction:
    return qp.evaluate(e)


def equal(a: QuasiPolynomial, b: QuasiPolynomial) -> bool:
    """Exact equality of coefficient tables; structural mismatch is an error."""
    if (a.p, a.modulus, a.degree) != (b.p, b.modulus, b.degree):
        raise StructureMismatch(
            f"cannot compare quasi-polynomials with (p, modulus, degree) = "
            f"{(a.p, a.modulus, a.degree)} and {(b.p, b.modulus, b.degree)}"
        )
    return dict(a.coeffs) == dict(b.coeffs)


# --- rendering ---------------------------------------------------------------


def _power_text(c: int) -> str:
    if c == 0:
        return ""
    if c == 1:
        return "p^e"
    return f"p^{{{c}e}}"


def polynomial_text(coeffs: Sequence[Fraction]) -> str:
    """Render one coefficient vector as e.g. ``p^{3e}/4 + 3*p^e/4``."""
    parts: list[tuple[bool, str]] = []
    for c in range(len(coeffs) - 1, -1, -1):
        q = coeffs[c]
        if not q:
            continue
        neg = q < 0
        num, den = abs(q.numerator), q.denominator
        pw = _power_text(c)
        if not pw:
            body = str(num) if den == 1 else f"{num}/{den}"
        else:
            body = pw if num == 1 else f"{num}*{pw}"
            if den != 1:
                body += f"/{den}"
        parts.append((neg, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def polynomial_latex(coeffs: Sequence[Fraction]) -> str:
    parts: list[tuple[bool, str]] = []
    for c in range(len(coeffs) - 1, -1, -1):
        q = coeffs[c]
        if not q:
            continue
        neg = q < 0
        num, den = abs(q.numerator), q.denominator
        pw = "" if c == 0 else ("p^{e}" if c == 1 else f"p^{{{c}e}}")
        if den == 1:
            scal = str(num) if (num != 1 or not pw) else ""
        else:
            scal = f"\\frac{{{num}}}{{{den}}}"
        parts.append((neg, scal + pw))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _case_groups(qp: QuasiPolynomial) -> list[tuple[list[int], list[int], tuple[Fraction, ...]]]:
    """Group e mod period by identical coefficient vectors: [(e-classes, residues, coeffs)]."""
    groups: dict[tuple[Fraction, ...], tuple[list[int], list[int]]] = {}
    for e, r in enumerate(qp.residues()):
        es, rs = groups.setdefault(qp.coeffs[r], ([], []))
        es.append(e)
        rs.append(r)
    return [(es, rs, v) for v, (es, rs) in groups.items()]


def _case_label(es: list[int], period: int, latex: bool) -> str:
    if period == 2 and len(es) == 1:
        word = "even" if es[0] == 0 else "odd"
        return f"e \\text{{ {word}}}" if latex else f"e {word}"
    cls = ", ".join(str(e) for e in es)
    if latex:
        return f"e \\equiv {cls} \\pmod{{{period}}}"
    return f"e = {cls} (mod {period})"


def render(qp: QuasiPolynomial, fmt: str = "text") -> str:
    """Render as ``text``, ``latex`` or ``json``.

    Text and LaTeX give a single closed form when the coefficients do not
    depend on the residue, otherwise one case per class of e modulo the
    period (e.g. "e even" / "e odd").
    """
    if fmt == "json":
        return json.dumps(to_json(qp), indent=2)
    if fmt not in ("text", "latex"):
        raise InvalidInput(f"unknown format {fmt!r}")
    latex = fmt == "latex"
    poly = polynomial_latex if latex else polynomial_text
    groups = _case_groups(qp)
    if len(groups) == 1:
        return poly(groups[0][2])
    if latex:
        rows = [f"{poly(v)} & {_case_label(es, qp.period, True)}" for es, _, v in groups]
        return "\\begin{cases}\n" + " \\\\\n".join(rows) + "\n\\end{cases}"
    rows = []
    for es, rs, v in groups:
        res = ", ".join(str(r) for r in rs)
        rows.append(f"{_case_label(es, qp.period, False)} [p^e = {res} mod {qp.modulus}]: {poly(v)}")
    return "\n".join(rows)


def to_json(qp: QuasiPolynomial) -> dict:
    doc = {
        "p": str(qp.p),
        "modulus": qp.modulus,
        "degree": qp.degree,
        "alpha": qp.alpha,
        "period": qp.period,
        "cases": [
            {
                "residue": r,
                "coefficients": [{"num": str(c.numerator), "den": str(c.denominator)} for c in qp.coeffs[r]],
            }
            for r in qp.residues()
        ],
    }
    if qp.group_order is not None:
        doc["group_order"] = qp.group_order
    if qp.rank is not None:
        doc["rank"] = qp.rank
    return doc


def from_json(doc: dict | str) -> QuasiPolynomial:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        coeffs = {
            int(case["residue"]): tuple(Fraction(int(c["num"]), int(c["den"])) for c in case["coefficients"])
            for case in doc["cases"]
        }
        qp = QuasiPolynomial(
            p=int(doc["p"]),
            modulus=int(doc["modulus"]),
            degree=int(doc["degree"]),
            coeffs=coeffs,
            alpha=int(doc.get("alpha", 0)),
            group_order=doc.get("group_order"),
            rank=doc.get("rank"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed quasi-polynomial JSON: {exc}") from exc
    if "period" in doc and int(doc["period"]) != qp.period:
        raise InvalidInput(f"declared period {doc['period']} does not match the table ({qp.period})")
    return qp
