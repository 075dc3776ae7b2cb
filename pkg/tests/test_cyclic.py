from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsig.cyclic import (
    CyclicSingularity,
    all_multiplicities,
    brute_force_counts,
    brute_force_mult,
    coefficient_vector,
    congruence_count,
    cube_partition,
    fsignature,
    multiplicity_qpoly,
    psi,
    pseudoreflection_counts,
    subset_gcds,
    sweep_singularities,
    theta,
    validate,
    vanishing_profile,
    veronese_theta_2d,
    veronese_theta_3d,
)
from fsig.errors import CapExceeded, DimensionTooLarge, NotFaithful, NotSmall, PDividesGroupOrder

F = Fraction


def enum_theta(sing, J, alpha, r):
    """theta_J by listing every tuple of the box [0, r-1]^(d - |J|)."""
    if len(J) == sing.d:
        return 1
    g = sing.n
    for j in J:
        g = gcd(g, sing.t[j])
    rest = [sing.t[j] for j in range(sing.d) if j not in J]
    return sum(1 for a in product(range(r), repeat=len(rest)) if (sum(w * x for w, x in zip(rest, a)) - alpha) % g == 0)


def test_validate():
    assert validate(6, (1, 2, 3)) == CyclicSingularity(6, (1, 2, 3))
    assert validate(6, (7, -4, 9)).t == (1, 2, 3)
    with pytest.raises(NotFaithful, match="divide"):
        validate(4, (2, 2))
    with pytest.raises(NotSmall, match="pseudoreflection"):
        validate(4, (1, 2))
    with pytest.raises(NotSmall):
        validate(5, (1,))
    assert validate(1, (0,)).d == 1


def test_subset_gcds():
    prof = subset_gcds(validate(6, (1, 2, 3)))
    assert prof.g[frozenset({1})] == 2 and prof.g[frozenset({2})] == 3
    assert prof.g[frozenset({1, 2})] == 1 and prof.g[frozenset()] == 6
    prof = subset_gcds(validate(6, (1, 1, 3, 3)))
    assert prof.g[frozenset({2})] == prof.g[frozenset({3})] == prof.g[frozenset({2, 3})] == 3
    with pytest.raises(DimensionTooLarge):
        subset_gcds(validate(1, (0,) * 3), max_dim=2)


def test_subset_gcd_divisibility_chain():
    for sing in sweep_singularities(10, 3):
        prof = subset_gcds(sing)
        assert prof.g[frozenset()] == sing.n
        assert prof.g[frozenset(range(sing.d))] == 1
        for J, g in prof.g.items():
            for j in range(sing.d):
                assert g % prof.g[J | {j}] == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_theta_dp_matches_enumeration(n):
    for sing in sweep_singularities(n, 3, min_d=1):
        if sing.n != n:
            continue
        for r in range(1, n + 1):
            for i in range(sing.d + 1):
                for J in combinations(range(sing.d), i):
                    for alpha in range(n):
                        assert theta(sing, J, alpha, r) == enum_theta(sing, J, alpha, r)


def test_theta_examples():
    for n in range(2, 11):
        a = validate(n, (1, n - 1))
        for r in range(1, n):
            assert theta(a, (), 0, r) == r
    assert theta(validate(4, (1, 1)), (), 0, 3) == 2
    s = validate(6, (1, 2, 3))
    assert [psi(s, i, 0, 1) for i in range(4)] == [6, 6, 3, 1]


def test_psi_with_trivial_gcds():
    s = validate(7, (1, 1, 1, 1))
    for r in range(1, 7):
        for i in range(1, 5):
            assert psi(s, i, 0, r) == comb(4, i) * r ** (4 - i)


def test_example_1_6_123():
    s = validate(6, (1, 2, 3))
    qps = all_multiplicities(s, 7)
    assert all(qp.period == 1 for qp in qps)
    got = [qp.coeffs[1] for qp in qps]
    assert got[0] == (F(1, 3), F(1, 2), 0, F(1, 6))
    assert got[1] == got[5] == (F(1, 6), F(-1, 3), 0, F(1, 6))
    assert got[2] == got[4] == (F(-1, 6), 0, 0, F(1, 6))
    assert got[3] == (F(-1, 3), F(1, 6), 0, F(1, 6))


def test_trivial_group():
    qp = fsignature(validate(1, (0, 0)), 5)
    assert qp.coeffs == {1: (0, 0, 1)}


def test_p_divides_n():
    with pytest.raises(PDividesGroupOrder):
        fsignature(validate(6, (1, 5)), 3)


def test_oracle_cap():
    s = validate(5, (1, 1, 1, 1, 1))
    with pytest.raises(CapExceeded):
        brute_force_counts(s, 7, 3)
    assert sum(brute_force_counts(s, 7, 1, cap=7**5)) == 7**5


def test_oracle_cap_env(monkeypatch):
    monkeypatch.setenv("FSIG_ORACLE_CAP", "100")
    with pytest.raises(CapExceeded):
        brute_force_counts(validate(3, (1, 1, 1)), 5, 1)


@pytest.mark.parametrize("p", [7, 11])
def test_oracle_sweep(p):
    for sing in sweep_singularities(10, 3):
        if sing.n % p == 0:
            continue
        counts = brute_force_counts(sing, p, 1)
        for alpha, qp in enumerate(all_multiplicities(sing, p)):
            assert qp.evaluate(1) == counts[alpha], (sing, alpha)


@pytest.mark.parametrize("n,t,p", [(3, (1, 1, 1), 5), (5, (1, 2, 3), 2), (4, (1, 1, 3), 3), (8, (1, 3), 5)])
def test_oracle_every_residue(n, t, p):
    s = validate(n, t)
    qps = all_multiplicities(s, p)
    for e in range(0, qps[0].period + 2):
        if (p**e) ** s.d > 10**6:
            break
        counts = brute_force_counts(s, p, e)
        assert [qp.evaluate(e) for qp in qps] == counts


def test_e_zero_is_the_ring_itself():
    for sing in sweep_singularities(6, 3):
        qps = all_multiplicities(sing, 7 if sing.n % 7 else 11)
        assert [qp.evaluate(0) for qp in qps] == [1] + [0] * (sing.n - 1)


def test_sum_over_alpha_is_rank():
    for sing in sweep_singularities(8, 3):
        p = 5 if sing.n % 5 else 3
        qps = all_multiplicities(sing, p)
        for r in qps[0].coeffs:
            total = [sum(qp.coeffs[r][c] for qp in qps) for c in range(sing.d + 1)]
            assert total == [0] * sing.d + [1]


@pytest.mark.parametrize("n", range(1, 13))
def test_congruence_count(n):
    for i in range(0, 4):
        for t_sub in product(range(n), repeat=i):
            hist = Counter(sum(w * x for w, x in zip(t_sub, xs)) % n for xs in product(range(n), repeat=i))
            for b in range(n):
                assert congruence_count(t_sub, n, b) == hist[b]


def test_pseudoreflections_and_coprime_residue():
    s = validate(6, (1, 2, 3))
    assert pseudoreflection_counts(s) == (2, 3, 0, 1)
    for sing in sweep_singularities(10, 3):
        p = next(q for q in (7, 11, 13) if sing.n % q)
        coeffs = fsignature(sing, p).coeffs[1]
        assert coeffs == tuple(F(g, sing.n) for g in pseudoreflection_counts(sing))


def test_vanishing_1_6_1133():
    s = validate(6, (1, 1, 3, 3))
    assert pseudoreflection_counts(s)[1] == 0
    prof = vanishing_profile(s)
    assert prof.first_nonzero == 2 and 1 in prof.zero_coefficients
    assert fsignature(s, 7).coeffs[1] == (F(1, 2), 0, F(1, 3), 0, F(1, 6))
    for p in (5, 11, 13):
        assert all(v[1] == 0 and v[3] == 0 for v in fsignature(s, p).coeffs.values())


def _all_unit_residues(sing):
    return [r for r in range(1, sing.n + 1) if gcd(r, sing.n) == 1]


def test_vanishing_equivalence_d4():
    for sing in sweep_singularities(10, 4, min_d=2):
        prof = subset_gcds(sing)
        vecs = [coefficient_vector(sing, 0, r) for r in _all_unit_residues(sing)]
        for c in range(1, sing.d):
            zero_block = all(v[i] == 0 for v in vecs for i in range(c, sing.d))
            assert zero_block == prof.all_one(c), (sing, c)
        G = pseudoreflection_counts(sing)
        for c in range(sing.d):
            assert all(v[c] == 0 for v in vecs) == (G[c] == 0), (sing, c)
        vp = vanishing_profile(sing)
        if vp.first_nonzero is not None:
            for r in _all_unit_residues(sing):
                assert vp.first_nonzero_coefficient(r) == coefficient_vector(sing, 0, r)[vp.first_nonzero]


def test_veronese_closed_forms():
    for n in range(1, 11):
        for r in range(1, n + 1):
            two = sum(1 for a, b in product(range(r), repeat=2) if (a + b) % n == 0)
            three = sum(1 for a in product(range(r), repeat=3) if sum(a) % n == 0)
            assert veronese_theta_2d(n, r) == two
            assert veronese_theta_3d(n, r) == three


@pytest.mark.parametrize("n,d,p,e", [(3, 2, 5, 1), (3, 3, 5, 1), (4, 2, 7, 1), (2, 3, 3, 2), (5, 2, 3, 2)])
def test_cube_partition_tiles_and_counts(n, d, p, e):
    q = p**e
    seen = Counter()
    for t in product(range(n), repeat=d):
        try:
            sing = validate(n, t)
        except (NotFaithful, NotSmall):
            continue
        boxes = list(cube_partition(n, d, p, e))
        if not seen:
            for box in boxes:
                seen.update(box.points())
            assert len(seen) == q**d and set(seen.values()) == {1}
            assert sum(b.size for b in boxes) == q**d
        r = pow(p, e, n) or n
        for box in boxes:
            g = subset_gcds(sing).g[box.J]
            for alpha in range(n):
                hits = sum(1 for pt in box.points() if (sum(w * x for w, x in zip(sing.t, pt)) - alpha) % n == 0)
                want = theta(sing, box.J, alpha, r) * g * n ** (len(box.J) - 1) if box.J else theta(sing, (), alpha, r)
                assert hits == want


def test_partition_identity_on_sweep():
    for sing in sweep_singularities(10, 3):
        for p in (7, 11):
            if sing.n % p == 0:
                continue
            for e in range(4):
                q = p**e
                r = pow(p, e, sing.n) or sing.n
                k = (q - r) // sing.n
                assert sum(comb(sing.d, i) * (k * sing.n) ** i * r ** (sing.d - i) for i in range(sing.d + 1)) == q**sing.d


@pytest.mark.parametrize("d", range(1, 13))
def test_binomial_identity(d):
    for c in range(d):
        assert sum((-1) ** (i - c) * comb(d, i) * comb(i, c) for i in range(c, d + 1)) == 0


@st.composite
def singularities(draw):
    n = draw(st.integers(1, 12))
    d = draw(st.integers(2, 4))
    t = draw(st.lists(st.integers(0, n - 1), min_size=d, max_size=d))
    try:
        return validate(n, t)
    except (NotFaithful, NotSmall):
        return validate(n, [1] * d)


@given(singularities(), st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(0, 12))
@settings(max_examples=150, deadline=None)
def test_properties_random(sing, p, e):
    if sing.n % p == 0:
        return
    qps = all_multiplicities(sing, p)
    vals = [qp.evaluate(e) for qp in qps]
    assert all(v.denominator == 1 and v >= 0 for v in vals)
    assert sum(vals) == p ** (sing.d * e)
    for qp in qps:
        for v in qp.coeffs.values():
            assert v[sing.d] == F(1, sing.n) and v[sing.d - 1] == 0
    if (p**e) ** sing.d <= 20000:
        assert vals == brute_force_counts(sing, p, e)


def test_brute_force_mult_indexes_counts():
    s = validate(6, (1, 2, 3))
    assert [brute_force_mult(s, 7, 1, a) for a in range(6)] == [61, 55, 57, 58, 57, 55]
    assert multiplicity_qpoly(s, 7, 7) == multiplicity_qpoly(s, 7, 1)
