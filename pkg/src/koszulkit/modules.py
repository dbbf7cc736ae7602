"""Finite-dimensional graded left modules over a GradedAlgebra.

A module stores, for every algebra basis element e_a, the images of its own
basis vectors (sparse).  Shifts follow M⟨k⟩_n = M_{n−k}: a vector of degree
d in M has degree d + k in M⟨k⟩.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import GradedAlgebra
from .linalg import Echelon, echelon, sparse_kernel, vec_add

Vec = dict


@dataclass(frozen=True, eq=False)
class GradedModule:
    algebra: GradedAlgebra
    degrees: tuple
    action: tuple  # action[a][m] = e_a · (basis vector m)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def field(self):
        return self.algebra.field

    def act(self, u: Vec, v: Vec) -> Vec:
        """u · v for an algebra element u and a module vector v."""
        F = self.field
        out: Vec = {}
        for a, x in u.items():
            img = self.action[a]
            for m, y in v.items():
                for k, z in img[m].items():
                    w = F.norm(out.get(k, 0) + x * y * z)
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out

    def graded_dims(self) -> dict:
        out: dict = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def degree_of(self, v: Vec) -> int | None:
        degs = {self.degrees[k] for k in v}
        return degs.pop() if len(degs) == 1 else None


def validate_module(M: GradedModule) -> dict:
    A, F = M.algebra, M.field
    bad = []
    for a in range(A.dim):
        for m in range(M.dim):
            want = M.degrees[m] + A.degrees[a]
            if any(M.degrees[k] != want for k in M.action[a][m]):
                bad.append(f"degree: e{a}·m{m}")
    for m in range(M.dim):
        if M.act(A.unit, {m: F.one}) != {m: F.one}:
            bad.append(f"unit does not fix m{m}")
    for a in range(A.dim):
        for b in range(A.dim):
            ab = A.mul_basis(a, b)
            for m in range(M.dim):
                lhs = M.act(ab, {m: F.one})
                rhs = M.act({a: F.one}, M.action[b][m])
                if lhs != rhs:
                    bad.append(f"(e{a}e{b})·m{m} != e{a}·(e{b}·m{m})")
    return {"valid": not bad, "violations": bad[:20]}


def regular_module(A: GradedAlgebra) -> GradedModule:
    action = tuple(tuple(A.mul_basis(a, b) for b in range(A.dim)) for a in range(A.dim))
    return GradedModule(A, A.degrees, action)


def shift(M: GradedModule, k: int) -> GradedModule:
    return GradedModule(M.algebra, tuple(d + k for d in M.degrees), M.action)


def direct_sum(mods: Sequence[GradedModule]) -> tuple[GradedModule, list[int]]:
    A = mods[0].algebra
    degrees = []
    offsets = []
    action = [[] for _ in range(A.dim)]
    off = 0
    for M in mods:
        offsets.append(off)
        degrees.extend(M.degrees)
        for a in range(A.dim):
            action[a].extend({k + off: x for k, x in v.items()} for v in M.action[a])
        off += M.dim
    return GradedModule(A, tuple(degrees), tuple(tuple(x) for x in action)), offsets


class SubspaceCoords:
    """A homogeneous subspace in echelon form with coordinates read at the
    pivots."""

    def __init__(self, vecs: Iterable[Vec], F):
        self.F = F
        self.ech = echelon(vecs, F)
        self.basis = self.ech.basis()
        self.pivots = self.ech.pivots()

    def coords(self, v: Vec) -> Vec:
        if not self.ech.contains(v):
            raise ValueError("vector is not in the subspace")
        return {k: v[p] for k, p in enumerate(self.pivots) if v.get(p)}


def closure(M: GradedModule, vecs: Iterable[Vec]) -> list[Vec]:
    """Basis of the submodule generated by ``vecs`` (homogeneous parts taken)."""
    F, A = M.field, M.algebra
    ech = Echelon(F)
    todo = []
    for v in vecs:
        parts: dict = {}
        for k, x in v.items():
            parts.setdefault(M.degrees[k], {})[k] = x
        todo.extend(parts.values())
    while todo:
        v = todo.pop()
        r = ech.add(v)
        if r is None:
            continue
        for a in range(A.dim):
            w = M.act({a: F.one}, r)
            if w:
                todo.append(w)
    return ech.basis()


def submodule(M: GradedModule, vecs: Sequence[Vec]) -> tuple[GradedModule, list[Vec]]:
    """The submodule spanned by ``vecs`` (assumed A-stable) as a module, plus
    its basis as vectors of M."""
    sc = SubspaceCoords(vecs, M.field)
    degrees = tuple(M.degree_of(v) for v in sc.basis)
    action = tuple(tuple(sc.coords(M.act({a: M.field.one}, v)) for v in sc.basis) for a in range(M.algebra.dim))
    return GradedModule(M.algebra, degrees, action), sc.basis


def quotient(M: GradedModule, sub: Sequence[Vec]) -> tuple[GradedModule, list[int], Echelon]:
    """M / sub with basis the non-pivot basis vectors of M."""
    F = M.field
    ech = echelon(sub, F)
    piv = set(ech.pivots())
    keep = [m for m in range(M.dim) if m not in piv]
    pos = {m: k for k, m in enumerate(keep)}

    def proj(v):
        return {pos[k]: x for k, x in ech.reduce(v).items()}

    action = tuple(tuple(proj(M.action[a][m]) for m in keep) for a in range(M.algebra.dim))
    return GradedModule(M.algebra, tuple(M.degrees[m] for m in keep), action), keep, ech


def radical_submodule(M: GradedModule, rad: Sequence[Vec]) -> list[Vec]:
    """rad(A)·M (a basis)."""
    F = M.field
    return echelon((M.act(r, {m: F.one}) for r in rad for m in range(M.dim)), F).basis()


def product_submodule(M: GradedModule, rad: Sequence[Vec], sub: Sequence[Vec]) -> list[Vec]:
    F = M.field
    return echelon((M.act(r, v) for r in rad for v in sub), F).basis()


def idempotent_part(M: GradedModule, e: Vec) -> list[Vec]:
    """Basis of e·M."""
    F = M.field
    return echelon((M.act(e, {m: F.one}) for m in range(M.dim)), F).basis()


def hom_space(M: GradedModule, N: GradedModule) -> list[list[Vec]]:
    """Basis of degree-preserving A-linear maps M → N, each given as the list
    of images of M's basis vectors.  Solved directly as a linear system."""
    A, F = M.algebra, M.field
    unknowns = [(b, c) for b in range(M.dim) for c in range(N.dim) if M.degrees[b] == N.degrees[c]]
    eqs: dict = {}

    def eq(key):
        if key not in eqs:
            eqs[key] = len(eqs)
        return eqs[key]

    cols = []
    for b, c in unknowns:
        col: Vec = {}
        for a in range(A.dim):
            # f(e_a · m) − e_a · f(m), coefficient of the unknown f_{c,b}
            for b0 in range(M.dim):
                x = M.action[a][b0].get(b)
                if x:
                    k = eq((a, b0, c))
                    col[k] = F.norm(col.get(k, 0) + x)
            for c2, y in N.action[a][c].items():
                k = eq((a, b, c2))
                col[k] = F.norm(col.get(k, 0) - y)
        cols.append({k: v for k, v in col.items() if v})
    out = []
    for v in sparse_kernel(cols, F):
        f = [dict() for _ in range(M.dim)]
        for u, x in v.items():
            b, c = unknowns[u]
            f[b][c] = x
        out.append(f)
    return out
