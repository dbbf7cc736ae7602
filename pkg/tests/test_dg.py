import json
import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from koszulkit import dg
from koszulkit.dg import Window
from koszulkit.linalg import QQ, GF, Matrix


def dense_cohomology(m):
    """Rank-nullity per bidegree from dense matrices (independent of the
    sparse kernel used by dg.cohomology)."""
    blocks = m.blocks()
    out = {}
    for (i, j), idx in blocks.items():
        tgt = blocks.get((i + 1, j), [])
        pos = {c: r for r, c in enumerate(tgt)}
        rows = [[0] * len(idx) for _ in tgt]
        for col, b in enumerate(idx):
            for c, x in m.d[b].items():
                rows[pos[c]][col] = x
        rank_out = Matrix.from_rows(m.field, rows, len(idx)).rank() if tgt else 0
        src = blocks.get((i - 1, j), [])
        here = {c: r for r, c in enumerate(idx)}
        rows = [[0] * len(src) for _ in idx]
        for col, b in enumerate(src):
            for c, x in m.d[b].items():
                rows[here[c]][col] = x
        rank_in = Matrix.from_rows(m.field, rows, len(src)).rank() if src else 0
        out[(i, j)] = len(idx) - rank_out - rank_in
    return out


def test_validate_examples():
    z = dg.make_module("S", 2, [(0, 0), (1, 0)])
    assert dg.validate(z)["valid"]
    assert dg.validate(dg.koszul_complex(2))["valid"]
    bad = dg.make_module("S", 1, [(0, 0), (1, 0), (2, 0)], d=[{1: 1}, {2: 1}, {}])
    rep = dg.validate(bad)
    assert not rep["valid"] and "d∘d != 0" in rep["violations"]
    t_bad = dg.make_module("T", 1, [(0, 0), (-1, 2)], actions=[[{1: 1}, {}]], d=[{}, {}])
    assert dg.validate(t_bad)["valid"]
    wrong_deg = dg.make_module("S", 1, [(0, 0), (1, 0)], actions=[[{1: 1}, {}]])
    assert not dg.validate(wrong_deg)["valid"]


def test_cohomology_examples():
    z = dg.make_module("S", 1, [(0, 0), (1, 0), (1, 0)])
    assert dg.cohomology(z) == {(0, 0): 1, (1, 0): 2}
    k1 = dg.koszul_complex(1)
    assert dg.nonzero(dg.cohomology(k1, trusted_only=True)) == {(0, 0): 1}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from("ST"), st.integers(1, 3), st.integers(0, 10**6))
def test_cohomology_against_dense_oracle(kind, dim_v, seed):
    m = dg.random_module(kind, dim_v, random.Random(seed))
    assert dg.validate(m)["valid"]
    h = dg.cohomology(m)
    assert h == dense_cohomology(m)
    assert dg.euler_characteristic(h) == dg.euler_characteristic(m.dims())


def test_functor_A_of_trivial():
    for n in range(1, 5):
        a = dg.functor_A(dg.trivial("S", n))
        assert dg.validate(a)["valid"]
        assert not any(a.d)
        dims = {}
        for (i, j), v in dg.cohomology(a).items():
            dims[i] = dims.get(i, 0) + v
        assert dims == {k: comb(n, k) for k in range(n + 1)}


def test_functor_A_of_windowed_free_module():
    for n in (1, 2):
        S = dg.functor_B(dg.trivial("T", n), Window(j0=-8, j1=0))
        assert not any(S.d)
        a = dg.functor_A(S)
        h = dg.nonzero(dg.cohomology(a, trusted_only=True))
        assert len(h) == 1 and sum(h.values()) == 1


def test_functor_A_matches_ext_oracle_dim1():
    S = dg.truncated_free_S(1, 0)  # S/(y)
    m = dg.direct_sum(S, dg.truncated_free_S(1, 2, (1, 2)), dg.trivial("S", 1, (2, -2)))
    h = dg.nonzero(dg.cohomology(dg.functor_A(m)))
    assert h == dg.ext_oracle_dim1(m)


def test_functor_B_examples():
    w = Window(0, 6, -6, 0)
    s = dg.functor_B(dg.trivial("T", 2), w)
    assert not any(s.d) and dg.validate(s)["valid"]
    lam = dg.free_T(1, (1, -2))
    kos = dg.functor_B(lam, Window(j0=-8, j1=0))
    assert dg.validate(kos)["valid"]
    assert dg.nonzero(dg.cohomology(kos, trusted_only=True)) == {(0, 0): 1}


def test_koszul_complex_examples():
    for n in (1, 3):
        m = dg.koszul_complex(n)
        h = dg.cohomology(m, trusted_only=True)
        assert dg.nonzero(h) == {(0, 0): 1}
        chi = dg.euler_characteristic(m.dims())
        assert all(v == 0 for j, v in chi.items() if j < 0)
    with pytest.raises(ValueError):
        dg.koszul_complex(0)


def test_koszul_complex_dim1_two_steps():
    m = dg.koszul_complex(1, depth=2)
    for j in sorted({j for _, j in m.degrees}):
        col = [i for i, jj in m.degrees if jj == j]
        assert len(col) <= 2


@settings(max_examples=25, deadline=None)
@given(st.sampled_from("ST"), st.integers(0, 10**6))
def test_round_trip(kind, seed):
    rng = random.Random(seed)
    m = dg.random_module(kind, rng.randint(1, 3), rng)
    lhs, rhs, w = dg.round_trip(m)
    assert lhs == rhs
    assert lhs == dg.nonzero(dg.cohomology(m))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_functor_outputs_validate(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    m = dg.random_module("S", n, rng)
    assert dg.validate(dg.functor_A(m))["valid"]
    t = dg.random_module("T", n, rng)
    lo = min(j for _, j in t.degrees) - 4
    assert dg.validate(dg.functor_B(t, Window(j0=lo)))["valid"]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_contractible_summand_invisible(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    m = dg.random_module("S", n, rng, max_dim=5)
    c = dg.contractible(dg.random_module("S", n, rng, max_dim=3))
    assert not dg.nonzero(dg.cohomology(c))
    h1 = dg.nonzero(dg.cohomology(dg.functor_A(m)))
    h2 = dg.nonzero(dg.cohomology(dg.functor_A(dg.direct_sum(m, c))))
    assert h1 == h2


def test_change_of_basis_invariance():
    rng = random.Random(5)
    g = [[1, 1], [0, 1]]
    for _ in range(10):
        m = dg.random_module("S", 2, rng)
        m2 = dg.change_generators(m, g)
        assert dg.validate(m2)["valid"]
        assert dg.cohomology(dg.functor_A(m)) == dg.cohomology(dg.functor_A(m2))
        t = dg.random_module("T", 2, rng)
        t2 = dg.change_generators(t, g)
        w = Window(j0=min(j for _, j in t.degrees) - 4)
        assert dg.cohomology(dg.functor_B(t, w)) == dg.cohomology(dg.functor_B(t2, w))


def test_xi_examples():
    s = dg.truncated_free_S(1, 1)
    x = dg.regrade_xi(s)
    # the generator y* sits at (2, -2) and moves to (0, -2)
    assert (0, -2) in x.degrees and (2, -2) not in x.degrees
    assert x.action_degree == (0, -2)
    back = dg.regrade_xi_inverse(x)
    assert back.degrees == s.degrees and back.action_degree == s.action_degree
    m = dg.random_module("S", 2, random.Random(3))
    hx = dg.cohomology(dg.regrade_xi(m))
    assert hx == {(i + j, j): v for (i, j), v in dg.cohomology(m).items()}


def test_zeta_examples():
    one = dg.trivial("S", 1, (0, 0))
    assert dg.zeta(one).degrees == one.degrees
    m = dg.random_module("S", 1, random.Random(8))
    assert dg.zeta_inverse(dg.zeta(m)).degrees == m.degrees
    # ζ(M⟨1⟩) = ζ(M)[1]⟨1⟩ on bidegrees
    lhs = dg.zeta(dg.shift(m, 0, 1))
    rhs = dg.shift(dg.zeta(m), 1, 1)
    assert lhs.degrees == rhs.degrees
    assert dg.nonzero(dg.cohomology(lhs)) == dg.nonzero(dg.cohomology(rhs))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from("ST"), st.integers(0, 10**6), st.integers(-3, 3), st.integers(-3, 3))
def test_shift_properties(kind, seed, a, b):
    m = dg.random_module(kind, 2, random.Random(seed))
    assert dg.to_json(dg.shift(m, 0, 0)) == dg.to_json(m)
    s = dg.shift(m, a, b)
    assert dg.validate(s)["valid"]
    assert dg.cohomology(s) == dg.shift_table(dg.cohomology(m), a, b)
    back = dg.shift(dg.shift(m, 0, 1), 0, -1)
    assert dg.to_json(back) == dg.to_json(m)
    assert dg.zeta(dg.zeta_inverse(m)).degrees == m.degrees


def test_psi_duality():
    p1 = dg.psi_top_duality(1)
    assert p1.signs[()] == 1
    assert set(dg.psi_top_duality(3).signs.values()) <= {1, -1}
    assert all(dg.psi_top_duality(n).matrix.rank() == 2 ** n for n in range(1, 7))
    for n in range(1, 5):
        assert dg.psi_equivariance_failures(dg.psi_top_duality(n)) == []


def test_psi_sign_on_degree_one_dim2():
    p = dg.psi_top_duality(2)
    # ψ(y_1)(y_2) = −(y_1 ∧ y_2) coefficient = −1
    assert p.psi((0,)) == {(1,): -1}
    assert p.psi((1,)) == {(0,): 1}


def test_json_roundtrip():
    rng = random.Random(1)
    for kind in "ST":
        m = dg.random_module(kind, 2, rng)
        data = dg.to_json(m)
        text = json.dumps(data, sort_keys=True)
        m2 = dg.from_json(json.loads(text))
        assert dg.to_json(m2) == data
    w = Window.parse("0:4,-8:0")
    assert str(w) == "0:4,-8:0"
    assert Window.parse(":,-2:") == Window(None, None, -2, None)
    with pytest.raises(ValueError):
        Window.parse("bad")


def test_gf_coefficients():
    m = dg.koszul_complex(2, F=GF(3))
    assert dg.nonzero(dg.cohomology(m, trusted_only=True)) == {(0, 0): 1}
