"""Small number-theoretic helpers shared by both engines."""

from __future__ import annotations

from math import gcd

import gmpy2

from .errors import InvalidInput, NonInvertible, PDividesGroupOrder


def is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p))


def require_prime_coprime(p: int, n: int, what: str = "the group order") -> None:
    """Raise unless p is prime and does not divide n."""
    if not is_prime(p):
        raise InvalidInput(f"p = {p} is not prime")
    if n % p == 0:
        raise PDividesGroupOrder(
            f"p = {p} divides {what} {n}; the formulas need |G| invertible in characteristic p"
        )


def residue(p: int, e: int, n: int) -> int:
    """The representative of p^e mod n in the range 1..n."""
    return pow(p, e, n) or n


def residue_cycle(p: int, n: int) -> list[int]:
    """Residues of p^0, p^1, ... modulo n up to (excluding) the first repeat of 1.

    Its length is the multiplicative order of p mod n, i.e. the period.
    """
    if gcd(p, n) != 1:
        raise InvalidInput(f"p = {p} is not coprime to the modulus {n}")
    out = [1]
    if n == 1:
        return out
    r = p % n
    while r != 1:
        out.append(r)
        r = (r * p) % n
    return out


def inverse_mod(a: int, n: int) -> int:
    try:
        return pow(a, -1, n)
    except ValueError:
        raise NonInvertible(f"{a} is not invertible modulo {n}") from None
