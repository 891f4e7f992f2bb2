import pytest

from chevparab.parab import (
    ParabolicSpec,
    adj,
    adj_decompose,
    all_subsets,
    alvl,
    blocks_to_I,
    ext,
    levi_components,
    nonadj,
    partition_ok,
    profile,
    retracts_onto_almost_borel,
)
from chevparab.rootsys import build_root_system


def one_based(s):
    return sorted(i + 1 for i in s)


def test_blocks():
    p1 = blocks_to_I("A11", (1, 5, 1, 5))
    p2 = blocks_to_I("A11", (5, 1, 1, 5))
    assert one_based(p1.I) == [2, 3, 4, 5, 8, 9, 10, 11]
    assert one_based(p2.I) == [1, 2, 3, 4, 8, 9, 10, 11]
    assert blocks_to_I("A3", (1, 1, 1, 1)).is_borel
    assert blocks_to_I("A3", (4,)).I == frozenset(range(3))
    with pytest.raises(ValueError):
        blocks_to_I("A3", (2, 3))
    with pytest.raises(ValueError):
        blocks_to_I("B3", (2, 2))


def test_block_example_sets():
    p1 = blocks_to_I("A11", (1, 5, 1, 5))
    p2 = blocks_to_I("A11", (5, 1, 1, 5))
    assert nonadj(p1) == frozenset()
    assert one_based(nonadj(p2)) == [6]
    assert not retracts_onto_almost_borel(p1)
    assert retracts_onto_almost_borel(p2)
    assert retracts_onto_almost_borel(ParabolicSpec(p1.rs, frozenset()))


def test_whole_group():
    rs = build_root_system("B3")
    spec = ParabolicSpec(rs, frozenset(range(3)))
    prof = profile(spec)
    assert adj(spec) == nonadj(spec) == frozenset()
    assert prof.kernel_roots == frozenset()


def test_adj_decompose():
    a2 = build_root_system("A2")
    x, y = a2.simples
    assert adj_decompose(ParabolicSpec.from_indices(a2, [1]), y) == (-x, x + y)
    a3 = build_root_system("A3")
    x, y, z = a3.simples
    assert adj_decompose(ParabolicSpec.from_indices(a3, [2]), x) == (-y, y + x)
    with pytest.raises(ValueError):
        adj_decompose(ParabolicSpec.from_indices(a3, [1]), z)


def test_alvl_examples():
    a2 = build_root_system("A2")
    x, y = a2.simples
    spec = ParabolicSpec.from_indices(a2, [1])
    assert alvl(spec, y) == alvl(spec, x + y) == 1
    b2 = build_root_system("B2")
    long_i = next(i for i in range(2) if b2.is_long(b2.simples[i]))
    spec = ParabolicSpec(b2, frozenset({long_i}))
    short_kernel = [g for g in profile(spec).kernel_roots if b2.is_short(g)]
    assert {alvl(spec, g) for g in short_kernel} <= {1, 2}
    assert {alvl(spec, g) for g in profile(spec).kernel_roots} == {1, 2}


def test_profiles():
    a2 = build_root_system("A2")
    x, y = a2.simples
    prof = profile(ParabolicSpec.from_indices(a2, [1]))
    assert prof.ext == frozenset({0})
    assert prof.kernel_roots == {y, x + y}
    a3 = build_root_system("A3")
    spec = ParabolicSpec.from_indices(a3, [1, 3])
    prof = profile(spec)
    assert not prof.kernel_roots & set(a3.subsystem([a3.simples[0], a3.simples[2]]))
    assert [len(c) for c in levi_components(spec)] == [1, 1]


@pytest.mark.parametrize("typ", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_partition_and_kernel_order(typ):
    rs = build_root_system(typ)
    for I in all_subsets(rs.rank):
        spec = ParabolicSpec(rs, I)
        prof = profile(spec)
        assert partition_ok(prof)
        order = prof.kernel_order()
        pos = {g: k for k, g in enumerate(order)}
        for a in order:
            for b in order:
                if a + b in pos:
                    assert pos[a + b] > max(pos[a], pos[b])
        assert ext(spec) == spec.I | nonadj(spec)


def test_borel_profile_needs_valid_index():
    rs = build_root_system("A2")
    borel = ParabolicSpec(rs, frozenset())
    prof = profile(borel, 2)
    assert prof.le_roots == {rs.simples[1]}
    with pytest.raises(ValueError):
        profile(borel, 3)
    with pytest.raises(ValueError):
        ParabolicSpec.from_indices(rs, [4])
