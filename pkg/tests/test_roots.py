import json

import pytest
from hypothesis import given, settings, strategies as st

from koszulkit.roots import build

DATA = {
    # type: (positive roots, |W|, Coxeter number)
    "A1": (1, 2, 2),
    "A2": (3, 6, 3),
    "A3": (6, 24, 4),
    "B2": (4, 8, 4),
    "B3": (9, 48, 6),
    "C3": (9, 48, 6),
    "D4": (12, 192, 6),
    "G2": (6, 12, 6),
    "F4": (24, 1152, 12),
}


@pytest.mark.parametrize("t", sorted(DATA))
def test_counts(t):
    rs = build(t)
    npos, order, h = DATA[t]
    assert len(rs.positive_roots) == npos
    assert rs.weyl_order == order
    assert rs.coxeter_number == h


@pytest.mark.parametrize("t,npos,h", [("E6", 36, 12), ("E7", 63, 18), ("E8", 120, 30)])
def test_exceptional_root_counts(t, npos, h):
    rs = build(t)
    assert len(rs.positive_roots) == npos
    assert rs.coxeter_number == h


@pytest.mark.parametrize("bad", ["X3", "A0", "G3", "E9", "", "A"])
def test_unknown_types_rejected(bad):
    with pytest.raises(ValueError):
        build(bad)


@pytest.mark.parametrize("t", ["A2", "B3", "G2", "F4"])
def test_rho_and_w0(t):
    rs = build(t)
    simple =[a for a in rs.positive_roots if a.height == 1]
    assert all(rs.pairing(rs.rho, a) == 1 for a in simple)
    assert all(rs.pairing((0,) * rs.rank, a) == 0 for a in rs.positive_roots)
    w0 = rs.w0
    assert (w0 * w0).is_identity()
    assert w0.length == len(rs.positive_roots)
    for a in rs.positive_roots:
        assert not rs.is_positive_weight(w0(a.weight))
    # sum of positive roots is 2ρ
    total = [0] * rs.rank
    for a in rs.positive_roots:
        total = [x + y for x, y in zip(total, a.weight)]
    assert total == [2 * x for x in rs.rho]


def test_a2_highest_root_pairing():
    rs = build("A2")
    theta = max(rs.positive_roots, key=lambda a: a.height)
    assert rs.pairing(rs.rho, theta) == 2


def test_a1_reflection():
    rs = build("A1")
    s = rs.simple_reflection(0)
    assert s((1,)) == (-1,)
    assert rs.identity((5,)) == (5,)


def test_a2_w0_antidominant():
    rs = build("A2")
    assert rs.w0(rs.rho) == (-1, -1)


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "A3"])
def test_enumeration_closed(t):
    rs = build(t)
    W = rs.enumerate_weyl()
    S = set(W)
    assert len(S) == rs.weyl_order
    for u in W[:10]:
        for v in W:
            assert u * v in S


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "A3"]), st.data())
def test_reflection_changes_length_parity(t, data):
    rs = build(t)
    W = rs.enumerate_weyl()
    w = data.draw(st.sampled_from(W))
    a = data.draw(st.sampled_from(rs.positive_roots))
    sw = rs.reflection(a) * w
    assert sw.length != w.length
    assert (sw.length - w.length) % 2 == 1
    assert w.length == len(w.word)
    assert rs.from_word(w.word) == w


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_dominant_representative(t, lam):
    rs = build(t)
    dom, word = rs.dominant_representative(lam)
    assert all(x >= 0 for x in dom)
    assert rs.from_word(word)(dom) == tuple(lam)


def test_json_roundtrip_is_stable():
    rs = build("B2")
    a = json.dumps(rs.to_json(), sort_keys=True)
    b = json.dumps(build("B2").to_json(), sort_keys=True)
    assert a == b
    assert json.loads(a)["cartan_type"] == "B2"
