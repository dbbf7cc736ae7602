"""Finite-dimensional graded algebras given by structure constants.

An algebra has a basis e_0, ..., e_{N-1}, each homogeneous of an integer
degree, and products ``e_a e_b = Σ_c c_{ab}^c e_c`` stored sparsely.  This
module provides validation, the Jacobson radical (which is automatically a
graded ideal), quotients, corners, and complete sets of primitive orthogonal
idempotents of the degree-zero part.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import sympy

from .linalg import QQ, Echelon, Field, echelon, sparse_kernel, sparse_rank, vec_add, vec_scale

Vec = dict


class NotSplitError(ValueError):
    """The semisimple quotient has a simple factor that is not a matrix
    algebra over the base field."""


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    field: Field
    degrees: tuple
    table: dict  # (a, b) -> Vec
    unit: Vec
    names: tuple | None = None

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def basis_vector(self, a: int) -> Vec:
        return {a: self.field.one}

    def mul_basis(self, a: int, b: int) -> Vec:
        return self.table.get((a, b), {})

    def mul(self, u: Vec, v: Vec) -> Vec:
        F = self.field
        out: Vec = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in self.table.get((a, b), {}).items():
                    w = F.norm(out.get(c, 0) + x * y * z)
                    if w:
                        out[c] = w
                    else:
                        out.pop(c, None)
        return out

    def power(self, u: Vec, k: int, one: Vec | None = None) -> Vec:
        out = dict(self.unit if one is None else one)
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def degree_of(self, v: Vec) -> int | None:
        degs = {self.degrees[k] for k in v}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_parts(self, v: Vec) -> dict:
        out: dict = {}
        for k, x in v.items():
            out.setdefault(self.degrees[k], {})[k] = x
        return out

    def basis_in_degree(self, n: int) -> list[int]:
        return [a for a, d in enumerate(self.degrees) if d == n]

    @cached_property
    def degree_range(self) -> tuple:
        return (min(self.degrees), max(self.degrees)) if self.degrees else (0, 0)

    def is_nonnegatively_graded(self) -> bool:
        return all(d >= 0 for d in self.degrees)

    def opposite(self) -> "GradedAlgebra":
        table = {(b, a): v for (a, b), v in self.table.items()}
        return GradedAlgebra(self.field, self.degrees, table, self.unit, self.names)

    def label(self, a: int) -> str:
        return self.names[a] if self.names else f"e{a}"

    def graded_dims(self) -> dict:
        out: dict = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))


def from_table(F: Field, degrees, products: dict, unit, names=None) -> GradedAlgebra:
    """Normalize user-supplied structure constants."""
    table = {}
    for (a, b), v in products.items():
        w = {int(c): F(x) for c, x in v.items() if F(x)}
        if w:
            table[(int(a), int(b))] = w
    u = {int(c): F(x) for c, x in unit.items() if F(x)}
    return GradedAlgebra(F, tuple(int(d) for d in degrees), table, u, tuple(names) if names else None)


# ---------------------------------------------------------------------------
# validation


def validate_algebra(A: GradedAlgebra) -> dict:
    """Associativity on all basis triples, two-sided unit, degree additivity."""
    F = A.field
    bad: list[str] = []
    n = A.dim
    for (a, b), v in A.table.items():
        want = A.degrees[a] + A.degrees[b]
        if any(A.degrees[c] != want for c in v):
            bad.append(f"degree: e{a}*e{b} is not homogeneous of degree {want}")
    if A.unit and A.degree_of(A.unit) != 0:
        bad.append("unit is not homogeneous of degree 0")
    for a in range(n):
        ea = A.basis_vector(a)
        if A.mul(A.unit, ea) != ea:
            bad.append(f"unit: 1*e{a} != e{a}")
        if A.mul(ea, A.unit) != ea:
            bad.append(f"unit: e{a}*1 != e{a}")
    for a, b, c in itertools.product(range(n), repeat=3):
        left = A.mul(A.mul_basis(a, b), A.basis_vector(c))
        right = A.mul(A.basis_vector(a), A.mul_basis(b, c))
        if left != right:
            bad.append(f"associativity fails at (e{a}, e{b}, e{c})")
            if len(bad) > 20:
                break
    return {"valid": not bad, "violations": bad}


# ---------------------------------------------------------------------------
# regular representation and traces


def left_mult_columns(A: GradedAlgebra, u: Vec) -> list[Vec]:
    """Columns of L_u: images u·e_b."""
    return [A.mul(u, A.basis_vector(b)) for b in range(A.dim)]


@dataclass
class _Traces:
    A: GradedAlgebra

    @cached_property
    def basis_traces(self) -> list:
        F = self.A.field
        return [F.norm(sum(self.A.mul_basis(c, b).get(b, 0) for b in range(self.A.dim))) for c in range(self.A.dim)]

    def trace(self, u: Vec):
        F = self.A.field
        return F.norm(sum(x * self.basis_traces[c] for c, x in u.items()))


def _dense_int_matrix(A: GradedAlgebra, u: Vec, p: int) -> list[list[int]]:
    n = A.dim
    M = [[0] * n for _ in range(n)]
    for b, col in enumerate(left_mult_columns(A, u)):
        for r, x in col.items():
            M[r][b] = int(x) % p
    return M


def _int_matmul(X, Y):
    n = len(X)
    Yt = list(zip(*Y))
    return [[sum(a * b for a, b in zip(row, col)) for col in Yt] for row in X]


def _int_trace_power(M, e: int) -> int:
    n = len(M)
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    B = M
    while e:
        if e & 1:
            R = _int_matmul(R, B)
        e >>= 1
        if e:
            B = _int_matmul(B, B)
    return sum(R[i][i] for i in range(n))


def _radical_trace_form(A: GradedAlgebra) -> list[Vec]:
    tr = _Traces(A)
    n = A.dim
    # x ∈ rad iff tr(L_{x e_b}) = 0 for all b
    cols = []
    for a in range(n):
        col = {}
        for b in range(n):
            t = tr.trace(A.mul_basis(a, b))
            if t:
                col[b] = t
        cols.append(col)
    return sparse_kernel(cols, A.field)


def _radical_small_char(A: GradedAlgebra) -> list[Vec]:
    """Iterated p-power trace functionals g_i(x) = tr(x̃^{p^i})/p^i mod p
    on a nested chain of ideals; the last one is the radical."""
    F, p, n = A.field, A.field.p, A.dim
    ideal = [A.basis_vector(a) for a in range(n)]
    l = 0
    while p ** (l + 1) <= n:
        l += 1
    for i in range(l + 1):
        pi = p**i
        cols = []
        for x in ideal:
            col = {}
            for b in range(n):
                z = A.mul(x, A.basis_vector(b))
                t = _int_trace_power(_dense_int_matrix(A, z, p), pi)
                if t % pi:
                    raise ArithmeticError("p-power trace not divisible; input is not an algebra")
                g = (t // pi) % p
                if g:
                    col[b] = g
            cols.append(col)
        ker = sparse_kernel(cols, F)
        new = []
        for v in ker:
            w: Vec = {}
            for k, c in v.items():
                w = vec_add(w, ideal[k], F, c)
            new.append(w)
        ideal = echelon(new, F).basis()
    return ideal


def _homogenize(A: GradedAlgebra, vecs: Iterable[Vec]) -> list[Vec]:
    parts = []
    for v in vecs:
        parts.extend(A.homogeneous_parts(v).values())
    return echelon(parts, A.field).basis()


def graded_radical(A: GradedAlgebra) -> list[Vec]:
    """Basis (canonical echelon form, homogeneous vectors) of the Jacobson
    radical.  It is a graded ideal, so homogeneous components of radical
    elements are again in the radical; this is asserted."""
    F = A.field
    if F.p is None or F.p > A.dim:
        raw = _radical_trace_form(A)
    else:
        raw = _radical_small_char(A)
    hom = _homogenize(A, raw)
    if len(hom) != len(echelon(raw, F)):
        raise ArithmeticError("radical is not graded; algebra data is inconsistent")
    return hom


def radical_bruteforce(A: GradedAlgebra, limit: int = 4096) -> list[Vec]:
    """Oracle over a finite field: {x : x·y nilpotent for every y ∈ A}."""
    F = A.field
    if F.p is None or F.p**A.dim > limit:
        raise ValueError("brute force needs a small finite field")
    elems = []
    for coeffs in itertools.product(range(F.p), repeat=A.dim):
        elems.append({k: c for k, c in enumerate(coeffs) if c})

    def nilpotent(z):
        w = z
        for _ in range(A.dim):
            if not w:
                return True
            w = A.mul(w, z)
        return not w

    rad = [x for x in elems if all(nilpotent(A.mul(x, y)) for y in elems)]
    return echelon(rad, F).basis()


# ---------------------------------------------------------------------------
# subspaces of the algebra


def in_span(vecs: Sequence[Vec], v: Vec, F: Field) -> bool:
    return echelon(vecs, F).contains(v)


def span_products(A: GradedAlgebra, left: Iterable[Vec], right: Iterable[Vec]) -> list[Vec]:
    right = list(right)
    return echelon((A.mul(u, v) for u in left for v in right), A.field).basis()


def is_two_sided_ideal(A: GradedAlgebra, vecs: Sequence[Vec]) -> bool:
    e = echelon(vecs, A.field)
    for v in vecs:
        for b in range(A.dim):
            eb = A.basis_vector(b)
            if not e.contains(A.mul(eb, v)) or not e.contains(A.mul(v, eb)):
                return False
    return True


def is_nilpotent_ideal(A: GradedAlgebra, vecs: Sequence[Vec]) -> bool:
    cur = list(vecs)
    for _ in range(A.dim + 1):
        if not cur:
            return True
        cur = span_products(A, cur, vecs)
    return not cur


def quotient_algebra(A: GradedAlgebra, ideal: Sequence[Vec]) -> tuple[GradedAlgebra, list[int]]:
    """A/I, with basis the non-pivot basis elements of A; returns (A/I, kept
    indices of A)."""
    F = A.field
    e = echelon(ideal, F)
    piv = set(e.pivots())
    keep = [a for a in range(A.dim) if a not in piv]
    pos = {a: k for k, a in enumerate(keep)}

    def proj(v):
        return {pos[k]: x for k, x in e.reduce(v).items()}

    table = {}
    for i, a in enumerate(keep):
        for j, b in enumerate(keep):
            v = proj(A.mul_basis(a, b))
            if v:
                table[(i, j)] = v
    names = tuple(A.label(a) for a in keep) if A.names else None
    return GradedAlgebra(F, tuple(A.degrees[a] for a in keep), table, proj(A.unit), names), keep


def degree_zero_subalgebra(A: GradedAlgebra) -> tuple[GradedAlgebra, list[int]]:
    keep = A.basis_in_degree(0)
    pos = {a: k for k, a in enumerate(keep)}
    table = {}
    for i, a in enumerate(keep):
        for j, b in enumerate(keep):
            v = A.mul_basis(a, b)
            if v:
                table[(i, j)] = {pos[c]: x for c, x in v.items()}
    unit = {pos[c]: x for c, x in A.unit.items()}
    names = tuple(A.label(a) for a in keep) if A.names else None
    return GradedAlgebra(A.field, tuple(0 for _ in keep), table, unit, names), keep


def subalgebra_from_basis(A: GradedAlgebra, vecs: Sequence[Vec], unit: Vec) -> GradedAlgebra:
    """The algebra structure on span(vecs) (closed under products, homogeneous
    vectors, with the given unit).  Coordinates are read off at pivots."""
    F = A.field
    e = echelon(vecs, F)
    basis = e.basis()
    pivs = e.pivots()

    def coords(v):
        if not e.contains(v):
            raise ValueError("span is not closed under multiplication")
        return {k: v[p] for k, p in enumerate(pivs) if v.get(p)}

    table = {}
    for i, u in enumerate(basis):
        for j, w in enumerate(basis):
            c = coords(A.mul(u, w))
            if c:
                table[(i, j)] = c
    degs = tuple(A.degree_of(v) for v in basis)
    if any(d is None for d in degs):
        raise ValueError("corner basis must be homogeneous")
    return GradedAlgebra(F, degs, table, coords(unit)), basis


def corner(A: GradedAlgebra, e: Vec) -> tuple[GradedAlgebra, list[Vec]]:
    """e·A·e for a homogeneous degree-0 idempotent e, with its basis in A."""
    F = A.field
    vecs = []
    for b in range(A.dim):
        v = A.mul(A.mul(e, A.basis_vector(b)), e)
        if v:
            vecs.extend(A.homogeneous_parts(v).values())
    basis = echelon(vecs, F).basis()
    return subalgebra_from_basis(A, basis, e)


# ---------------------------------------------------------------------------
# polynomials


def _sympy_domain(F: Field):
    return sympy.QQ if F.p is None else sympy.GF(F.p)


def minimal_polynomial(A: GradedAlgebra, x: Vec, one: Vec | None = None) -> list:
    """Coefficients [c_0, ..., c_d] (monic, c_d = 1) of the minimal
    polynomial of x in the algebra with identity ``one``."""
    F = A.field
    one = A.unit if one is None else one
    powers = [dict(one)]
    while True:
        powers.append(A.mul(powers[-1], x))
        ker = sparse_kernel(powers, F)
        if ker:
            v = ker[0]
            d = max(v)
            lead = v[d]
            return [F.norm(v.get(k, 0) * F.inv(lead)) for k in range(d + 1)]


def _to_poly(coeffs, F: Field):
    t = sympy.Symbol("t")
    if F.p is None:
        return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else c for c in coeffs])), t, domain=sympy.QQ)
    return sympy.Poly(list(reversed([int(c) for c in coeffs])), t, modulus=F.p)


def _from_poly(P, F: Field) -> list:
    cs = list(reversed(P.all_coeffs()))
    if F.p is None:
        from fractions import Fraction

        return [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in cs]
    return [int(c) % F.p for c in cs]


def _eval_poly(A: GradedAlgebra, coeffs, x: Vec, one: Vec) -> Vec:
    F = A.field
    out: Vec = {}
    pw = dict(one)
    for k, c in enumerate(coeffs):
        if k:
            pw = A.mul(pw, x)
        if c:
            out = vec_add(out, pw, F, F(c))
    return out


def primary_idempotents(A: GradedAlgebra, x: Vec, one: Vec) -> list[Vec]:
    """Orthogonal idempotents (polynomials in x) for the coprime factors of
    the minimal polynomial of x; a single element means no splitting."""
    F = A.field
    mp = _to_poly(minimal_polynomial(A, x, one), F)
    _, facs = mp.factor_list()
    if len(facs) < 2:
        return [one]
    qs = [f**e for f, e in facs]
    out = []
    for q in qs:
        r = sympy.div(mp, q)[0]  # m / q
        s = sympy.invert(r, q)  # r·s ≡ 1 mod q
        e_poly = sympy.rem(r * s, mp)
        out.append(_eval_poly(A, _from_poly(e_poly, F), x, one))
    return out


# ---------------------------------------------------------------------------
# idempotents


def _split_semisimple(Q: GradedAlgebra, f: Vec, rng: random.Random) -> list[Vec]:
    """Primitive orthogonal idempotents summing to f in a semisimple Q."""
    F = Q.field
    C, cbasis = corner(Q, f)
    if C.dim == 1:
        return [f]

    def in_Q(v):  # corner coordinates -> Q vector
        out: Vec = {}
        for k, c in v.items():
            out = vec_add(out, cbasis[k], F, c)
        return out

    candidates = [C.basis_vector(a) for a in range(C.dim)]
    candidates += [vec_add(C.basis_vector(a), C.basis_vector(b), F) for a in range(C.dim) for b in range(a + 1, C.dim)]
    candidates += [C.mul_basis(a, b) for a in range(C.dim) for b in range(C.dim)]
    for _ in range(30):
        candidates.append({a: F(rng.randint(-3, 3)) for a in range(C.dim) if rng.randint(-3, 3)})
    for x in candidates:
        if not x:
            continue
        idems = primary_idempotents(C, x, C.unit)
        if len(idems) > 1:
            out = []
            for e in idems:
                out.extend(_split_semisimple(Q, in_Q(e), rng))
            return out
    raise NotSplitError(f"simple factor of dimension {C.dim} does not split over {F}")


def newton_lift(A: GradedAlgebra, x: Vec, max_iter: int = 64) -> Vec:
    """Idempotent e ≡ x modulo the radical via e ← 3e² − 2e³."""
    F = A.field
    e = x
    for _ in range(max_iter):
        e2 = A.mul(e, e)
        if e2 == e:
            return e
        e3 = A.mul(e2, e)
        e = vec_add(vec_scale(e2, F(3), F), e3, F, F(-2))
    raise ArithmeticError("Newton iteration did not converge; element is not idempotent modulo a nilpotent ideal")


def primitive_idempotents(A: GradedAlgebra, seed: int = 0) -> list[Vec]:
    """A complete set of primitive orthogonal idempotents of A lying in A_0.

    Idempotents of A_0/rad(A_0) are found by splitting minimal polynomials,
    then lifted one at a time into the corner left by the previous lifts.
    Primitive idempotents of A_0 stay primitive in A."""
    F = A.field
    A0, keep = degree_zero_subalgebra(A)
    r0 = graded_radical(A0)
    Q, qkeep = quotient_algebra(A0, r0)
    rng = random.Random(seed)
    qidems = _split_semisimple(Q, Q.unit, rng)

    def q_to_A0(v):
        return {qkeep[k]: x for k, x in v.items()}

    def to_A(v):
        return {keep[k]: x for k, x in v.items()}

    lifted: list[Vec] = []
    remaining = dict(A0.unit)
    for qe in qidems:
        y = q_to_A0(qe)
        x = A0.mul(A0.mul(remaining, y), remaining)
        e = newton_lift(A0, x)
        lifted.append(e)
        remaining = vec_add(remaining, e, F, F(-1))
    if remaining:
        raise ArithmeticError("lifted idempotents do not sum to 1")
    return [to_A(e) for e in lifted]


def idempotent_classes(A: GradedAlgebra, idems: Sequence[Vec], rad: Sequence[Vec]) -> list[int]:
    """Class label per idempotent: e_i ~ e_j iff A e_i ≅ A e_j, i.e. iff
    (e_i A e_j)(e_j A e_i) is not contained in the radical."""
    F = A.field
    rad_e = echelon(rad, F)
    n = len(idems)
    basis = [A.basis_vector(b) for b in range(A.dim)]

    def corner_span(e, f):
        return echelon((A.mul(A.mul(e, b), f) for b in basis), F).basis()

    labels = [-1] * n
    reps: list[int] = []
    for i in range(n):
        for c, j in enumerate(reps):
            X = corner_span(idems[i], idems[j])
            Y = corner_span(idems[j], idems[i])
            if any(not rad_e.contains(A.mul(x, y)) for x in X for y in Y):
                labels[i] = c
                break
        else:
            labels[i] = len(reps)
            reps.append(i)
    return labels


# ---------------------------------------------------------------------------
# JSON


def to_json(A: GradedAlgebra) -> dict:
    F = A.field
    basis = [{"id": a, "degree": d} for a, d in enumerate(A.degrees)]
    if A.names:
        for b, name in zip(basis, A.names):
            b["name"] = name
    return {
        "field": str(F),
        "basis": basis,
        "unit": {str(k): F.to_json(x) for k, x in sorted(A.unit.items())},
        "products": [
            {"a": a, "b": b, "result": {str(k): F.to_json(x) for k, x in sorted(v.items())}}
            for (a, b), v in sorted(A.table.items())
        ],
    }


def from_json(data: dict) -> GradedAlgebra:
    if "quiver" in data:
        from .quiver import from_json as quiver_from_json

        return quiver_from_json(data)
    F = Field.parse(data.get("field", "QQ"))
    basis = sorted(data["basis"], key=lambda e: e["id"])
    if [e["id"] for e in basis] != list(range(len(basis))):
        raise ValueError("basis ids must be 0..N-1")
    names = [e.get("name", f"e{e['id']}") for e in basis]
    products = {(p["a"], p["b"]): p["result"] for p in data.get("products", [])}
    return from_table(F, [e["degree"] for e in basis], products, data["unit"], names)
