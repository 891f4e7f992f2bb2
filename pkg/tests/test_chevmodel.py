import random
from math import factorial, prod

import pytest

from chevparab.chevmodel import (
    AdjointModel,
    SLnModel,
    check_commutator,
    chevalley_basis,
    peel,
    read_structure_constants_csv,
    sign_map,
    structure_constants,
    structure_constants_csv,
    x_sln,
)
from chevparab.laurent import CoefficientRing
from chevparab.rootsys import build_root_system

SYM = CoefficientRing(0, ("u",), ("r", "s"))


@pytest.mark.parametrize("typ", ["A3", "B2", "B3", "C3", "G2"])
def test_jacobi(typ):
    assert chevalley_basis(typ).jacobi_failures() == []


@pytest.mark.parametrize("typ", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_bracket_magnitude_is_string_length_plus_one(typ):
    cb = chevalley_basis(typ)
    rs = cb.rs
    for a in rs.roots:
        for b in rs.roots:
            if a + b in rs:
                assert abs(cb.N[(a, b)]) == cb.string_length(a, b) + 1
            else:
                assert cb.bracket_constant(a, b) == 0


@pytest.mark.parametrize("typ", ["B2", "G2", "B3", "F4"])
def test_constants_with_n_equal_one_follow_the_bracket_product(typ):
    cb = chevalley_basis(typ)
    for (a, b), terms in structure_constants(cb).items():
        for t in terms:
            if t.n == 1:
                num = prod(cb.N[(a, k * a + b)] for k in range(t.m))
                assert num % factorial(t.m) == 0
                assert t.C == num // factorial(t.m)


def test_examples_from_the_operations():
    a2 = build_root_system("A2")
    a1, a2s = a2.simples
    (term,) = structure_constants(a2)[(a1, a2s)]
    assert (term.m, term.n, term.root) == (1, 1, a1 + a2s) and abs(term.C) == 1
    g2 = build_root_system("G2")
    short = g2.simples[0]
    short_pairs = [
        t.C for (a, b), ts in structure_constants(g2).items()
        if g2.is_short(a) and g2.is_short(b) for t in ts
    ]
    assert 3 in {abs(c) for c in short_pairs}
    assert g2.is_short(short)


def test_root_and_torus_elements_are_homomorphisms():
    rs = build_root_system("G2")
    m = AdjointModel(rs, SYM)
    r, s, u = SYM.var("r"), SYM.var("s"), SYM.var("u")
    for a in rs.roots:
        assert m.x(a, 0).is_identity()
        assert m.h(a, 1).is_identity()
        assert m.x(a, r) @ m.x(a, s) == m.x(a, r + s)
        assert m.h(a, u) @ m.h(a, u ** 2) == m.h(a, u ** 3)


@pytest.mark.parametrize("typ", ["A3", "B2", "G2"])
def test_check_commutator_all_pairs(typ):
    rs = build_root_system(typ)
    m = AdjointModel(rs, SYM)
    r, s = SYM.var("r"), SYM.var("s")
    for a in rs.roots:
        for b in rs.roots:
            if a == -b:
                with pytest.raises(ValueError):
                    check_commutator(m, a, b, r, s)
                continue
            res = check_commutator(m, a, b, r, s)
            assert res.ok
            if a + b not in rs:
                assert res.lhs.is_identity()


def test_check_commutator_detects_a_wrong_constant():
    rs = build_root_system("B2")
    m = AdjointModel(rs, SYM)
    a, b = rs.simples
    table = structure_constants(rs)
    saved = table[(a, b)][0].C
    table[(a, b)][0].C = saved + 1
    try:
        assert not check_commutator(m, a, b).ok
    finally:
        table[(a, b)][0].C = saved
    assert check_commutator(m, a, b).ok


@pytest.mark.parametrize("typ", ["A2", "A3", "A4"])
def test_sign_map(typ):
    cb = chevalley_basis(typ)
    s1, s2 = sign_map(cb), sign_map(cb)
    assert s1 == s2
    assert set(s1.values()) <= {1, -1}
    assert all(s1[a] == 1 for a in cb.rs.simples)
    assert all(s1[a] == s1[-a] for a in cb.rs.roots)


def test_sign_map_rejects_other_types():
    with pytest.raises(ValueError):
        sign_map(chevalley_basis("B2"))


def test_elementary_matrix_identities():
    ring = CoefficientRing(0, (), ("r", "s"))
    r, s = ring.var("r"), ring.var("s")
    e = lambda i, j, f: x_sln(4, i, j, f, ring)
    comm = e(0, 1, r) @ e(1, 2, s) @ e(0, 1, -r) @ e(1, 2, -s)
    assert comm == e(0, 2, r * s)
    far = e(0, 1, r) @ e(2, 3, s) @ e(0, 1, -r) @ e(2, 3, -s)
    assert far.is_identity()


@pytest.mark.parametrize("typ", ["A2", "A3"])
def test_sln_and_adjoint_agree_on_commutators(typ):
    rs = build_root_system(typ)
    r, s = SYM.var("r"), SYM.var("s")
    sl, ad = SLnModel(rs, SYM), AdjointModel(rs, SYM)
    for a in rs.roots:
        for b in rs.roots:
            if a != -b:
                assert check_commutator(sl, a, b, r, s).ok
                assert check_commutator(ad, a, b, r, s).ok


def test_peel_recovers_parameters():
    rs = build_root_system("B3")
    m = AdjointModel(rs, CoefficientRing(0, ("t",)))
    t = m.ring.var("t")
    rng = random.Random(3)
    order = list(rs.positive)
    for _ in range(5):
        params = {g: rng.choice([1, -2, 3]) * t ** rng.randint(-2, 2) for g in rng.sample(order, 4)}
        g = m.identity()
        for c in order:
            if c in params:
                g = g @ m.x(c, params[c])
        got, rest = peel(m, g, order)
        assert rest.is_identity()
        assert got == params


def test_csv_roundtrip():
    text = structure_constants_csv("G2")
    back = read_structure_constants_csv(text, 2)
    table = {k: v for k, v in structure_constants("G2").items() if v}
    assert back == table
