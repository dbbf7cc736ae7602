import json

import pytest
from hypothesis import given, settings, strategies as st

from koszulkit import algebra as alg
from koszulkit import examples as ex
from koszulkit.linalg import GF, QQ, echelon
from koszulkit.quiver import Arrow, Quiver, path_algebra, to_json as quiver_to_json


def span(vecs, F):
    return echelon(vecs, F)


def same_span(a, b, F):
    ea, eb = span(a, F), span(b, F)
    return len(ea) == len(eb) and all(ea.contains(v) for v in b)


def matrix_algebra(n, F=QQ):
    idx = {(i, j): k for k, (i, j) in enumerate((i, j) for i in range(n) for j in range(n))}
    products = {(idx[(i, j)], idx[(j, l)]): {idx[(i, l)]: 1} for i in range(n) for j in range(n) for l in range(n)}
    return alg.from_table(F, [0] * n * n, products, {idx[(i, i)]: 1 for i in range(n)})


def gf4_over_gf2():
    # GF(2)[x]/(x² + x + 1): a field, so it is semisimple but does not split
    products = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1, 1: 1}}
    return alg.from_table(GF(2), [0, 0], products, {0: 1})


@pytest.mark.parametrize("name", sorted(ex.BUNDLED))
def test_bundled_algebras_validate(name):
    A = ex.bundled(name)
    assert alg.validate_algebra(A)["valid"]


def test_broken_table_detected():
    A = ex.bundled("lambda2")
    table = dict(A.table)
    # make y1·y2 = y1 (wrong degree and breaks associativity)
    table[(1, 2)] = {1: 1}
    bad = alg.GradedAlgebra(A.field, A.degrees, table, A.unit)
    rep = alg.validate_algebra(bad)
    assert not rep["valid"]
    assert any(v.startswith("degree") for v in rep["violations"])
    no_unit = alg.GradedAlgebra(A.field, A.degrees, A.table, {})
    assert any(v.startswith("unit") for v in alg.validate_algebra(no_unit)["violations"])


def test_radical_examples():
    F = QQ
    assert alg.graded_radical(ex.bundled("kxk")) == []
    A = ex.bundled("dual_numbers")
    assert same_span(alg.graded_radical(A), [{1: 1}], F)
    U = ex.bundled("upper_triangular")
    assert same_span(alg.graded_radical(U), [{2: 1}], F)
    assert alg.graded_radical(matrix_algebra(2)) == []
    L = ex.bundled("lambda3")
    assert len(alg.graded_radical(L)) == 7


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("name", ["kxk", "dual_numbers", "kx_x3", "lambda2", "upper_triangular",
                                  "square_zero2", "quiver_a2", "quiver_a3_rel", "dual_numbers_deg0", "matrix_pm1"])
def test_radical_matches_bruteforce(name, p):
    F = GF(p)
    A = ex.bundled(name, F)
    if p ** A.dim > 4096:
        pytest.skip("too many elements")
    assert same_span(alg.graded_radical(A), alg.radical_bruteforce(A), F)


def test_radical_of_matrix_algebra_in_char_2():
    # trace form is identically zero on M_2 in char 2; the p-power method still works
    F = GF(2)
    A = matrix_algebra(2, F)
    assert alg.graded_radical(A) == []
    assert alg.radical_bruteforce(A) == []


@pytest.mark.parametrize("name", sorted(ex.BUNDLED))
def test_radical_is_nilpotent_ideal_with_semisimple_quotient(name):
    A = ex.bundled(name)
    r = alg.graded_radical(A)
    assert alg.is_two_sided_ideal(A, r)
    assert alg.is_nilpotent_ideal(A, r)
    Q, _ = alg.quotient_algebra(A, r)
    assert alg.validate_algebra(Q)["valid"]
    assert alg.graded_radical(Q) == []


@pytest.mark.parametrize("name", sorted(ex.BUNDLED))
def test_primitive_idempotents(name):
    A = ex.bundled(name)
    idems = alg.primitive_idempotents(A)
    F = A.field
    total = {}
    for e in idems:
        assert A.degree_of(e) == 0
        assert A.mul(e, e) == e
        for k, x in e.items():
            total[k] = F.norm(total.get(k, 0) + x)
    assert {k: x for k, x in total.items() if x} == A.unit
    for i, e in enumerate(idems):
        for j, f in enumerate(idems):
            if i != j:
                assert A.mul(e, f) == {}


def test_idempotent_counts_and_classes():
    cases = {"k": (1, 1), "kxk": (2, 2), "dual_numbers": (1, 1), "upper_triangular": (2, 2),
             "quiver_a3": (3, 3), "matrix_pm1": (2, 1), "lambda3": (1, 1)}
    for name, (n_idem, n_cls) in cases.items():
        A = ex.bundled(name)
        idems = alg.primitive_idempotents(A)
        labels = alg.idempotent_classes(A, idems, alg.graded_radical(A))
        assert len(idems) == n_idem, name
        assert len(set(labels)) == n_cls, name
    M3 = matrix_algebra(3)
    idems = alg.primitive_idempotents(M3)
    assert len(idems) == 3
    assert alg.idempotent_classes(M3, idems, []) == [0, 0, 0]


def test_non_split_field_rejected():
    A = gf4_over_gf2()
    assert alg.validate_algebra(A)["valid"]
    with pytest.raises(alg.NotSplitError):
        alg.primitive_idempotents(A)


def test_corner_and_opposite():
    U = ex.bundled("upper_triangular")
    C, basis = alg.corner(U, {0: 1})
    assert C.dim == 1
    op = U.opposite()
    assert alg.validate_algebra(op)["valid"]
    assert op.mul_basis(2, 0) == U.mul_basis(0, 2)


def test_quiver_paths_and_product_order():
    A = ex.bundled("quiver_a2")
    assert A.graded_dims() == {0: 2, 1: 1}
    names = list(A.names)
    a, e1, e2 = names.index("a"), names.index("e1"), names.index("e2")
    # p·q is "q then p": a·e1 = a, e2·a = a, e1·a = 0
    assert A.mul_basis(a, e1) == {a: 1}
    assert A.mul_basis(e2, a) == {a: 1}
    assert A.mul_basis(e1, a) == {}
    assert ex.bundled("quiver_a3").graded_dims() == {0: 3, 1: 2, 2: 1}
    assert ex.bundled("quiver_a3_rel").graded_dims() == {0: 3, 1: 2}


def test_quiver_errors():
    with pytest.raises(ValueError):
        path_algebra(Quiver(("1",), (Arrow("x", "1", "1"),)))  # infinite dimensional
    with pytest.raises(ValueError):
        Q = Quiver(("1", "2"), (Arrow("a", "1", "2"),), (((1, ("a",)), (1, ("a", "a"))),))
        path_algebra(Q)


def test_loop_with_relation_is_truncated_polynomial():
    Q = Quiver(("1",), (Arrow("x", "1", "1"),), (((1, ("x", "x", "x")),),))
    A = path_algebra(Q)
    assert A.graded_dims() == ex.bundled("kx_x3").graded_dims()
    assert alg.validate_algebra(A)["valid"]


@st.composite
def acyclic_quivers(draw):
    n = draw(st.integers(1, 4))
    verts = tuple(str(i) for i in range(n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=4)) if pairs else []
    arrows = tuple(Arrow(f"a{k}", str(i), str(j), draw(st.integers(1, 2))) for k, (i, j) in enumerate(chosen))
    return Quiver(verts, arrows)


def count_paths(Q):
    total, layer = 0, [()]
    while layer:
        total += len(layer) if layer != [()] else len(Q.vertices)
        nxt = []
        for p in layer:
            ends = [Q.arrow(p[-1]).dst] if p else None
            for a in Q.arrows:
                if ends is None or a.src in ends:
                    nxt.append(p + (a.name,))
        layer = nxt
    return total


@settings(max_examples=40, deadline=None)
@given(acyclic_quivers())
def test_acyclic_path_algebras(Q):
    A = path_algebra(Q)
    assert A.dim == count_paths(Q)
    assert alg.validate_algebra(A)["valid"]
    # the radical of an admissible path algebra is spanned by the paths of positive length
    arrows_span = [{k: 1} for k, name in enumerate(A.names) if not name.startswith("e")]
    assert same_span(alg.graded_radical(A), arrows_span, QQ)
    assert len(alg.primitive_idempotents(A)) == len(Q.vertices)
    back = alg.from_json(json.loads(json.dumps(quiver_to_json(Q))))
    assert back.degrees == A.degrees and back.table == A.table


@pytest.mark.parametrize("name", sorted(ex.BUNDLED))
def test_json_roundtrip(name):
    A = ex.bundled(name)
    data = alg.to_json(A)
    B = alg.from_json(json.loads(json.dumps(data, sort_keys=True)))
    assert alg.to_json(B) == data


def test_json_bad_ids_rejected():
    with pytest.raises(ValueError):
        alg.from_json({"basis": [{"id": 1, "degree": 0}], "unit": {"1": 1}})
