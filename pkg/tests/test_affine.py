import itertools

import pytest
from hypothesis import given, settings, strategies as st

from koszulkit import affine as aff
from koszulkit.affine import ExtAffineWeylElement as E
from koszulkit.roots import build

TYPES = ["A1", "A2", "B2", "G2"]


def random_element(rs, data):
    v = data.draw(st.sampled_from(rs.enumerate_weyl()))
    x = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=rs.rank, max_size=rs.rank)))
    return E(v, x)


def test_group_law_examples():
    rs = build("A2")
    a = E(rs.from_word([0, 1]), (2, -1))
    assert (a * a.inverse()).is_identity()
    assert E.t(rs, (1, 2)) * E.t(rs, (-3, 1)) == E.t(rs, (-2, 3))


def test_a1_square_against_affine_maps():
    rs = build("A1")
    s = rs.simple_reflection(0)
    w = E(s, (1,))  # s·t_ϖ
    sq = w * w
    for lam in range(-5, 6):
        assert sq.act((lam,), 7) == w.act(w.act((lam,), 7), 7)
    # (s·t_ϖ)² = t_{s(ϖ)+ϖ} = t_0
    assert sq.is_identity()


def test_dot_action_examples():
    rs = build("A1")
    s = rs.simple_reflection(0)
    assert E.identity(rs).dot((4,), 3) == (4,)
    assert E.finite_element(s).dot((0,), 3) == (-2,)
    assert E.from_t_form((1,), s).dot((0,), 3) == (1,)
    with pytest.raises(ValueError):
        E.identity(rs).dot((0,), 2)


def test_length_examples():
    rs = build("A1")
    assert E.identity(rs).length == 0
    assert E.t(rs, (1,)).length == 1
    assert aff.tau0(build("A1")).length == 0
    assert aff.tau0(build("A2")).length == 1
    assert aff.tau0(build("A2")).length == aff.tau0_length_by_roots(build("A2"))


@pytest.mark.parametrize("t,det", [("A1", 2), ("A2", 3), ("A3", 4), ("B2", 2), ("C3", 2), ("D4", 4), ("G2", 1), ("F4", 1)])
def test_omega_order_and_subgroup(t, det):
    rs = build(t)
    om = aff.omega_group(rs)
    assert len(om) == det
    assert all(w.length == 0 for w in om)
    S = set(om)
    assert all(a * b in S for a in om for b in om)


@pytest.mark.parametrize("t", TYPES + ["A3", "B3"])
def test_affine_simple_reflections(t):
    rs = build(t)
    for s in aff.affine_simple_reflections(rs):
        assert s.length == 1
        assert (s * s).is_identity()


def test_alcove_predicates():
    for t in TYPES:
        rs = build(t)
        for p in (rs.coxeter_number + 1, 2 * rs.coxeter_number + 1):
            assert aff.in_C0(rs, (0,) * rs.rank, p)
            assert not aff.is_regular(rs, tuple(-x for x in rs.rho), p)
    rs = build("A1")
    assert aff.is_restricted_dominant(rs, (2,), 3)
    assert not aff.is_restricted_dominant(rs, (3,), 3)


def test_enumerate_w0_examples():
    rs = build("A1")
    s = rs.simple_reflection(0)
    assert set(aff.enumerate_W0(rs)) == {E.identity(rs), E.from_t_form((1,), s)}
    assert len(aff.enumerate_W0(build("A2"))) == 6
    for t in TYPES:
        rs = build(t)
        p = rs.coxeter_number + 2
        for w in aff.enumerate_W0(rs):
            assert aff.is_restricted_dominant(rs, w.dot((0,) * rs.rank, p), p)


@pytest.mark.parametrize("t", TYPES)
def test_tau0(t):
    rs = build(t)
    t0 = aff.tau0(rs)
    assert (t0 * t0).is_identity()
    assert t0 in set(aff.enumerate_W0(rs))
    if t == "A1":
        assert t0 == E.from_t_form((1,), rs.simple_reflection(0))


@pytest.mark.parametrize("t", TYPES)
def test_w0_p_independence(t):
    rs = build(t)
    W0 = set(aff.enumerate_W0(rs))
    h = rs.coxeter_number
    for p in (h + 1, 2 * h + 1):
        assert set(aff.W0_by_search(rs, p)) == W0
        assert all(aff.is_restricted_dominant(rs, w.dot((0,) * rs.rank, p), p) for w in W0)


def test_upper_closure_a1():
    rs = build("A1")
    f = aff.facet_of(rs, (0,), 3)
    assert aff.upper_closure_contains(f, (0,))
    assert aff.upper_closure_contains(f, (2,))  # pairing 3 = p
    assert not aff.upper_closure_contains(f, (-1,))  # pairing 0
    for lam in range(-6, 7):
        assert aff.upper_closure_contains(aff.facet_of(rs, (lam,), 3), (lam,))
    minus_rho = (-1,)
    for w in aff.enumerate_W0(rs):
        f = aff.facet_of(rs, w.dot((0,), 3), 3)
        inside = aff.upper_closure_contains(f, w.dot(minus_rho, 3))
        assert inside == (w.finite == rs.w0)


def test_translate_simple_examples():
    rs = build("A1")
    e = E.identity(rs)
    assert aff.translate_simple(e, (-1,), 3) is None
    assert aff.translate_simple(aff.tau0(rs), (-1,), 3) == (2,)
    for w in aff.enumerate_W0(build("A2")):
        assert aff.translate_simple(w, (0, 0), 5) == w.dot((0, 0), 5)
    with pytest.raises(ValueError):
        aff.translate_simple(e, (5,), 3)


def test_w0_mu_examples():
    rs = build("A1")
    assert len(aff.W0_mu(rs, (1,), 5)) == 2  # regular
    assert aff.W0_mu(rs, (-1,), 3) == [aff.tau0(rs)]
    # the two walls of C0 for p = 3: ⟨μ+ρ, α^∨⟩ = 0 and = 3
    for mu in [(-1,), (2,)]:
        assert len(aff.W0_mu(rs, mu, 3)) == 1
    assert aff.W0_mu(rs, (2,), 3) == [E.identity(rs)]


def test_singular_walls_examples():
    rs = build("A2")
    assert aff.singular_walls(rs, (0, 0), 5) == set()
    assert aff.singular_walls(rs, (-1, -1), 5) == {(a.index, 0) for a in rs.positive_roots}
    assert aff.is_parabolic_singularity(rs, (-1, -1), [0, 1], 5)
    mu = (-1, 2)  # μ+ρ = (0, 3)
    walls = aff.singular_walls(rs, mu, 5)
    assert len(walls) == 1
    (idx, n), = walls
    assert rs.positive_roots[idx].coeffs == (1, 0) and n == 0
    assert aff.is_parabolic_singularity(rs, mu, [0], 5)
    assert not aff.is_parabolic_singularity(rs, mu, [1], 5)


@pytest.mark.parametrize("t", TYPES)
def test_parabolic_stabilizer(t):
    rs = build(t)
    p = rs.coxeter_number + 1
    for mu in itertools.product(range(-1, p), repeat=rs.rank):
        if not aff.in_closure_C0(rs, mu, p):
            continue
        I = [i for i in range(rs.rank) if mu[i] == -1]
        if aff.is_parabolic_singularity(rs, mu, I, p):
            for i in I:
                s = E.finite_element(rs.simple_reflection(i))
                assert s.dot(mu, p) == mu


def test_reduced_decomposition_examples():
    rs = build("A1")
    om = aff.omega_group(rs)[-1]
    assert aff.reduced_decomposition(om) == (om, [])
    alpha = rs.simple_roots[0]
    t_alpha = E.t(rs, alpha)
    omega, word = aff.reduced_decomposition(t_alpha)
    assert t_alpha.length == 2 and len(word) == 2
    assert aff.from_affine_word(rs, word, omega) == t_alpha


def test_reduced_decomposition_prefix_lengths_a2():
    rs = build("A2")
    gens = aff.affine_simple_reflections(rs)
    seen = {E.identity(rs)}
    frontier = list(seen)
    for _ in range(4):
        frontier = [w * s for w in frontier for s in gens if (w * s) not in seen]
        seen.update(frontier)
    for w in seen:
        omega, word = aff.reduced_decomposition(w)
        assert len(word) == w.length
        x = omega
        for k, i in enumerate(word):
            x = x * gens[i]
            assert x.length == k + 1
        assert x == w


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TYPES), st.data())
def test_group_axioms_and_dot_action(t, data):
    rs = build(t)
    a, b, c = (random_element(rs, data) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert a.length == a.inverse().length
    assert (a * b).length <= a.length + b.length
    p = rs.coxeter_number + 1
    lam = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=rs.rank, max_size=rs.rank)))
    assert (a * b).dot(lam, p) == a.dot(b.dot(lam, p), p)
    omega, word = aff.reduced_decomposition(a)
    assert len(word) == a.length
    assert aff.from_affine_word(rs, word, omega) == a


def test_w0_table_rows():
    rows = aff.w0_table(build("A2"), 5)
    assert len(rows) == 6
    partners = [r["tau0_partner"] for r in rows]
    assert sorted(partners) == list(range(6))
    assert all(rows[r["tau0_partner"]]["tau0_partner"] == r["index"] for r in rows)
