"""Bundled example algebras used by the tests, the CLI and the acceptance
suite."""
from __future__ import annotations

import itertools

from .algebra import GradedAlgebra, from_table
from .linalg import QQ, Field
from .quiver import Arrow, Quiver, path_algebra


def field_algebra(F: Field = QQ) -> GradedAlgebra:
    return from_table(F, [0], {(0, 0): {0: 1}}, {0: 1}, ["1"])


def product_kk(F: Field = QQ) -> GradedAlgebra:
    return from_table(F, [0, 0], {(0, 0): {0: 1}, (1, 1): {1: 1}}, {0: 1, 1: 1}, ["e1", "e2"])


def truncated_polynomial(n: int, x_degree: int = 1, F: Field = QQ) -> GradedAlgebra:
    """k[x]/(x^n)."""
    products = {(a, b): {a + b: 1} for a in range(n) for b in range(n) if a + b < n}
    return from_table(F, [a * x_degree for a in range(n)], products, {0: 1}, ["1"] + [f"x^{a}" for a in range(1, n)])


def exterior_algebra(d: int, F: Field = QQ) -> GradedAlgebra:
    """Λ(V), dim V = d, generators in degree 1."""
    subsets = [J for k in range(d + 1) for J in itertools.combinations(range(d), k)]
    index = {J: i for i, J in enumerate(subsets)}
    products = {}
    for J in subsets:
        for K in subsets:
            if set(J) & set(K):
                continue
            seq = list(J) + list(K)
            inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
            products[(index[J], index[K])] = {index[tuple(sorted(seq))]: -1 if inv % 2 else 1}
    names = ["1" if not J else "^".join(f"y{j+1}" for j in J) for J in subsets]
    return from_table(F, [len(J) for J in subsets], products, {0: 1}, names)


def square_zero(d: int, F: Field = QQ) -> GradedAlgebra:
    """k ⋉ V: V in degree 1 with V·V = 0."""
    products = {(0, 0): {0: 1}}
    for i in range(1, d + 1):
        products[(0, i)] = {i: 1}
        products[(i, 0)] = {i: 1}
    return from_table(F, [0] + [1] * d, products, {0: 1}, ["1"] + [f"v{i}" for i in range(1, d + 1)])


def upper_triangular(F: Field = QQ) -> GradedAlgebra:
    """Upper-triangular 2×2 matrices with E12 in degree 1."""
    # basis E11, E22, E12
    products = {
        (0, 0): {0: 1},
        (1, 1): {1: 1},
        (0, 2): {2: 1},
        (2, 1): {2: 1},
    }
    return from_table(F, [0, 0, 1], products, {0: 1, 1: 1}, ["E11", "E22", "E12"])


def matrix_pm1(F: Field = QQ) -> GradedAlgebra:
    """M_2(k) with E12 in degree 1 and E21 in degree −1 (simple but not
    non-negatively graded)."""
    names = ["E11", "E12", "E21", "E22"]
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    products = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                products[(a, b)] = {idx[(i, l)]: 1}
    return from_table(F, [0, 1, -1, 0], products, {0: 1, 3: 1}, names)


def dual_numbers_degree0(F: Field = QQ) -> GradedAlgebra:
    """k[x]/(x²) with x in degree 0, so the degree-0 part is not semisimple."""
    return truncated_polynomial(2, 0, F)


def quiver_a2(F: Field = QQ) -> GradedAlgebra:
    """•1 → •2 with the arrow in degree 1."""
    return path_algebra(Quiver(("1", "2"), (Arrow("a", "1", "2", 1),)), F)


def quiver_a3(with_relation: bool = False, F: Field = QQ) -> GradedAlgebra:
    """1 → 2 → 3, optionally with the composite set to zero."""
    arrows = (Arrow("a", "1", "2", 1), Arrow("b", "2", "3", 1))
    rels = (((1, ("a", "b")),),) if with_relation else ()
    return path_algebra(Quiver(("1", "2", "3"), arrows, rels), F)


BUNDLED = {
    "k": field_algebra,
    "kxk": product_kk,
    "dual_numbers": lambda F=QQ: truncated_polynomial(2, 1, F),
    "kx_x3": lambda F=QQ: truncated_polynomial(3, 1, F),
    "lambda1": lambda F=QQ: exterior_algebra(1, F),
    "lambda2": lambda F=QQ: exterior_algebra(2, F),
    "lambda3": lambda F=QQ: exterior_algebra(3, F),
    "square_zero2": lambda F=QQ: square_zero(2, F),
    "quiver_a2": quiver_a2,
    "quiver_a3": lambda F=QQ: quiver_a3(False, F),
    "quiver_a3_rel": lambda F=QQ: quiver_a3(True, F),
    "upper_triangular": upper_triangular,
    "matrix_pm1": matrix_pm1,
    "dual_numbers_deg0": dual_numbers_degree0,
}


def bundled(name: str, F: Field = QQ) -> GradedAlgebra:
    try:
        return BUNDLED[name](F)
    except KeyError:
        raise KeyError(f"unknown bundled algebra {name!r}; choose from {sorted(BUNDLED)}") from None
