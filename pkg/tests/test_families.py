import itertools

import numpy as np
import pytest

from upbkit.classify import complement_basis
from upbkit.families import (FAMILIES, FamilySpec, NoKnownPartition, OutOfRange, TABLE1, build,
                             d22_completion, ddd_structure, ddd_tile_id, dft_vector, ket, known_partition,
                             lone_complement_state, size_formula, two_point, v2_completion)
from upbkit.states import (flatten_set, gram_check, numerical_rank, phase_match,
                           structure_from_states)
from upbkit.tiles import Bipartition, check_quasi_partition, flatten_to_bipartition, is_u_tile, validate_structure


def closed_form(family, d):
    """Sizes written out independently of the library."""
    return {
        "ex_3x5": 10, "tiles_332": 10, "v2_422": 12, "v3_422": 9, "table1": 109,
        "dd2": (2 * d * d - 4 * d + 4) if d and d % 2 else (2 * d * d - 4 * d + 8) if d else None,
        "d22_completable": 4 * d - 4 if d else None,
        "d22_oneside": 4 * d - 7 if d else None,
        "ddd": d ** 3 - 3 * d ** 2 + 1 if d else None,
    }[family]


def all_specs(max_d=8):
    for name, lo in FAMILIES.items():
        for d in ([None] if lo is None else range(lo, max_d + 1)):
            yield name, d


@pytest.mark.parametrize("name,d", list(all_specs()))
def test_sizes_and_orthogonality(name, d):
    b = build(name, d)
    assert len(b.states) == closed_form(name, d) == size_formula(name, d)
    assert gram_check(b.states)
    assert len(b.tile_of_state) == len(b.states)
    if b.structure is not None:
        assert validate_structure(b.structure) == []


def test_size_formula_examples():
    assert size_formula("ddd", 6) == 109
    assert size_formula("d22_oneside", 4) == 9
    assert size_formula("dd2", 4) == 24


@pytest.mark.parametrize("name,d", [("dd2", 2), ("d22_completable", 3), ("d22_oneside", 3), ("ddd", 5),
                                    ("ex_3x5", 3), ("nope", None), ("dd2", None)])
def test_out_of_range(name, d):
    with pytest.raises(OutOfRange):
        build(name, d)
    with pytest.raises(OutOfRange):
        size_formula(name, d)


def test_family_names():
    assert FamilySpec("ddd", 7).name == "ddd_d7"
    assert FamilySpec("table1").name == "table1"


@pytest.mark.parametrize("name,d", [("tiles_332", None), ("v2_422", None), ("v3_422", None)]
                         + [("dd2", d) for d in range(3, 9)]
                         + [("d22_completable", d) for d in (4, 5, 6, 7, 8)]
                         + [("d22_oneside", d) for d in (4, 5, 6, 7, 8)])
def test_cube_structures_are_u_tile(name, d):
    assert is_u_tile(build(name, d).structure, max_tiles=None)


def test_states_live_on_their_tiles():
    for name, d in [("dd2", 5), ("dd2", 6), ("d22_completable", 5), ("d22_oneside", 6), ("ddd", 7)]:
        b = build(name, d)
        for x, t in zip(b.states.states, b.tile_of_state):
            if t is not None:
                assert x.support() == b.structure.tiles[t].axes


def test_tile_states_count_cells_minus_one():
    for name, d in [("dd2", 4), ("dd2", 7), ("d22_oneside", 5), ("ddd", 6), ("ddd", 8)]:
        b = build(name, d)
        counts = np.bincount([t for t in b.tile_of_state if t is not None], minlength=b.structure.ntiles)
        sizes = np.array([t.size for t in b.structure.tiles])
        assert (counts == sizes - 1).all()


def test_dd2_at_3_equals_332_literal():
    ok, _, worst = phase_match(build("tiles_332").states.states, build("dd2", 3).states.states)
    assert ok and worst > 1 - 1e-9


def test_d22_oneside_at_4_equals_literal():
    ok, _, _ = phase_match(build("v3_422").states.states, build("d22_oneside", 4).states.states)
    assert ok


def test_d22_completable_at_4_same_tiles_as_literal():
    lit, gen = build("v2_422"), build("d22_completable", 4)
    assert sorted(t.axes for t in lit.structure.tiles) == sorted(t.axes for t in gen.structure.tiles)
    # same complement: stack both and compare ranks
    a, b = lit.states.matrix(), gen.states.matrix()
    assert numerical_rank(np.vstack([a, b])) == numerical_rank(a) == numerical_rank(b) == 12


def test_ddd_at_6_matches_literal_table():
    t1 = build("table1")
    assert len(t1.states) == len(TABLE1) + 1 == 109
    ok, perm, worst = phase_match(t1.states.states, build("ddd", 6).states.states)
    assert ok and worst >= 1 - 1e-9
    assert sorted(perm) == list(range(109))


def test_ddd_per_pair_count():
    for d in (6, 7, 8):
        b = build("ddd", d)
        per = {}
        for x, t in zip(b.states.states, b.tile_of_state):
            if t is not None:
                per[t // 3] = per.get(t // 3, 0) + 1
        assert len(per) == d * d and set(per.values()) == {d - 3}
        assert len(b.states) == d * d * (d - 3) + 1


def test_ddd_crossed_states_match_table_entries():
    t1 = build("table1")
    gen = build("ddd", 6)
    for k, i in itertools.product(range(6), repeat=2):
        tid = ddd_tile_id("c", k, i, 6)
        lit = [x for x, t in zip(t1.states.states, t1.tile_of_state) if t == tid]
        new = [x for x, t in zip(gen.states.states, gen.tile_of_state) if t == tid]
        assert len(lit) == len(new) == 1
        assert phase_match(lit, new)[0]


def test_ddd_structure_tile_ids():
    s = ddd_structure(6)
    assert s.ntiles == 108
    assert ddd_tile_id("h", 6 + 1, 2, 6) == ddd_tile_id("h", 1, 2, 6)


def test_lone_complement_state_is_orthogonal():
    b = build("ex_3x5")
    x = lone_complement_state()
    assert gram_check(list(b.states.states) + [x])


@pytest.mark.parametrize("d", [4, 5, 6, 7])
def test_d22_completion_completes(d):
    b = build("d22_completable", d)
    flat = flatten_set(b.states, Bipartition.A_BC)
    psi = d22_completion(d)
    assert gram_check(list(flat.states) + psi)
    W = complement_basis(flat)
    assert W.dim == 4
    assert numerical_rank(np.array([x.vector() for x in psi])) == 4


def test_v2_completion_literal_states():
    psi = v2_completion()
    flat = flatten_set(build("v2_422").states, Bipartition.A_BC)
    assert gram_check(psi) and gram_check(list(flat.states) + psi)
    ok, _, _ = phase_match(psi, d22_completion(4))
    assert ok


def test_vector_kit():
    assert np.allclose(ket(5, "1+2-3-4"), [0, 1, 1, -1, -1])
    assert np.allclose(ket(4, "1+3-2*2"), [0, 1, -2, 1])
    with pytest.raises(ValueError):
        ket(3, "x")
    assert np.allclose(two_point(4, 1, 3, 1), [0, 1, 0, -1])
    v = dft_vector(6, [4, 1, 2], 1)
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(v[[4, 1, 2]], [1, w, w * w]) and v[0] == 0


def test_known_partitions_pass():
    cases = [("tiles_332", None, Bipartition.A_BC), ("tiles_332", None, Bipartition.B_CA)]
    cases += [("dd2", d, b) for d in (3, 4, 5, 6, 7) for b in (Bipartition.A_BC, Bipartition.B_CA)]
    cases += [(f, 6 if f == "ddd" else None, b) for f in ("ddd", "table1") for b in Bipartition]
    cases += [("ddd", d, b) for d in (7, 8) for b in Bipartition]
    for fam, d, b in cases:
        qp = known_partition(fam, b, d)
        s = flatten_to_bipartition(build(fam, d).structure, b)
        assert check_quasi_partition(s, qp.groups, max_tiles=None) == [], (fam, d, b)


def test_known_partition_3x5_and_missing():
    qp = known_partition("ex_3x5")
    assert qp.groups == ((0,), (1,), (2,), (3,), (4, 5))
    with pytest.raises(NoKnownPartition):
        known_partition("v2_422", "A|BC")
    with pytest.raises(NoKnownPartition):
        known_partition("tiles_332", "C|AB")


def test_table1_c_ab_partition_shape():
    qp = known_partition("table1", "C|AB")
    assert qp.m == 12
    first = qp.groups[0]
    want = sorted([ddd_tile_id("v", i, 0, 6) for i in range(6)] + [ddd_tile_id("h", i, 0, 6) for i in range(6)])
    assert list(first) == want
    assert list(qp.groups[6]) == sorted(ddd_tile_id("c", i, i % 6, 6) for i in range(6))


def test_structure_recovered_from_ddd_states():
    b = build("ddd", 6)
    s, _ = structure_from_states(b.states)
    assert sorted(t.axes for t in s.tiles) == sorted(t.axes for t in b.structure.tiles)
