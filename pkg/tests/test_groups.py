import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupresample import (
    GroupError,
    check_axioms,
    default_generators,
    element_order,
    group_from_spec,
    induced_subgroup,
    is_subgroup,
    left_cosets,
    make_cyclic,
    make_dihedral,
    power,
    subgroup_from_members,
)
from groupresample.groups import FiniteGroup, generated_closure, identify, load_group

from conftest import groups_up_to


@pytest.mark.parametrize("G", groups_up_to(40), ids=lambda g: g.label)
def test_axioms_hold(G):
    assert check_axioms(G) == []


def test_broken_table_reports_axioms():
    mul = make_cyclic(4).mul.copy()
    mul[1, 1], mul[1, 2] = mul[1, 2], mul[1, 1]
    broken = FiniteGroup(mul, 0, make_cyclic(4).inv, "bad")
    assert "associativity" in check_axioms(broken) or "latin-square" in check_axioms(broken)


def test_dihedral_relations():
    D = make_dihedral(7)
    s, r = 7, 1
    assert element_order(D, s) == 2
    assert element_order(D, r) == 7
    sr = int(D.mul[s, r])
    assert int(D.mul[sr, sr]) == D.identity


def test_dihedral_encoding_words():
    D = make_dihedral(5)
    assert D.element_name(0) == "e"
    assert D.element_name(3) == "r^3"
    assert D.element_name(5) == "s"
    assert D.element_name(7) == "s r^2"
    # s r^2 is s * r * r
    assert int(D.mul[D.mul[5, 1], 1]) == 7


@given(st.integers(1, 40), st.integers(-100, 100), st.integers(0, 79))
@settings(max_examples=60, deadline=None)
def test_power_matches_repeated_multiplication(n, k, g):
    D = make_dihedral(n)
    g = g % D.order
    base = g if k >= 0 else int(D.inv[g])
    x = D.identity
    for _ in range(abs(k)):
        x = int(D.mul[x, base])
    assert power(D, g, k) == x


def test_default_generators():
    assert default_generators(make_cyclic(6)).generators == (1,)
    assert default_generators(make_cyclic(1)).generators == ()
    gens = default_generators(make_dihedral(6))
    assert gens.generators == (6, 1)
    assert gens.orders == (2, 6)
    for G in groups_up_to(30):
        gens = default_generators(G)
        assert G.identity not in gens.generators
        assert generated_closure(G, gens.generators) == set(range(G.order))


def test_subgroup_checks():
    D = make_dihedral(6)
    assert is_subgroup(D, [0, 2, 4])
    assert is_subgroup(D, [0, 6])
    assert not is_subgroup(D, [0, 1])
    assert not is_subgroup(D, [2, 4])
    with pytest.raises(GroupError, match="not closed"):
        induced_subgroup(D, [0, 6, 7])


def test_induced_subgroup_labels():
    D28 = make_dihedral(14)
    assert subgroup_from_members(D28, range(14)).label == "C_14"
    assert subgroup_from_members(D28, range(0, 14, 2)).label == "C_7"
    assert subgroup_from_members(D28, list(range(0, 14, 2)) + list(range(14, 28, 2))).label == "D_14"
    H = subgroup_from_members(make_dihedral(10), [0, 5, 10, 15])
    assert H.label == "D_4"
    assert check_axioms(H.induced) == []


def test_induced_subgroup_is_homomorphic():
    G = make_dihedral(12)
    H = subgroup_from_members(G, [0, 3, 6, 9, 12, 15, 18, 21])
    m = np.asarray(H.members)
    # pos(a) * pos(b) in H equals pos(a b) in G
    assert (m[H.induced.mul] == G.mul[np.ix_(m, m)]).all()


def test_left_cosets_partition():
    G = make_dihedral(6)
    H = subgroup_from_members(G, [0, 2, 4])
    cells = left_cosets(G, H)
    assert len(cells) == 4
    assert sorted(cells[0]) == [0, 2, 4]
    flat = sorted(x for c in cells for x in c)
    assert flat == list(range(G.order))


def test_spec_round_trip(tmp_path):
    D = make_dihedral(9)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(D.to_spec()))
    E = load_group(path)
    assert E.label == "D_18"
    assert (E.mul == D.mul).all()
    assert group_from_spec({"kind": "cyclic", "n": 5, "label": "Z5"}).label == "Z5"
    with pytest.raises(GroupError):
        group_from_spec({"kind": "quaternion", "n": 2})
    with pytest.raises(GroupError):
        make_cyclic(0)


def test_table_csv():
    rows = make_cyclic(3).table_csv().splitlines()
    assert rows == ["0,1,2", "1,2,0", "2,0,1"]


def test_identify_relabelled_dihedral():
    G = make_dihedral(8)
    H = subgroup_from_members(G, [0, 2, 4, 6, 9, 11, 13, 15])
    st_ = identify(H.induced)
    assert (st_.kind, st_.n) == ("dihedral", 4)
    with pytest.raises(GroupError):
        # Klein four group from C_2 x C_2 is D_4, but C_2 x C_4 is neither
        a = np.arange(8)
        x1, x2 = a // 4, a % 4
        mul = ((x1[:, None] + x1[None, :]) % 2) * 4 + (x2[:, None] + x2[None, :]) % 4
        identify(FiniteGroup(mul, 0, np.argmax(mul == 0, axis=1)))
