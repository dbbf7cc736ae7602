"""Path algebras of graded quivers with relations, compiled to structure
constants.

Paths are written in traversal order: ``[a, b]`` means "a, then b".  The
algebra product follows composition of maps, so ``p·q`` is "q, then p" and
is zero unless q ends where p starts.  Consequently ``A·e_i`` is spanned by
the paths starting at vertex i.

Relations must be homogeneous for path length (this makes the ideal graded
by length, so the quotient can be built one length at a time) and for the
arrow grading.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import GradedAlgebra
from .linalg import QQ, Echelon, Field


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    dst: str
    degree: int = 1


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple
    relations: tuple = ()  # each: tuple of (coeff, tuple of arrow names)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(f"unknown arrow {name!r}")


def _path_ends(Q: Quiver, path: tuple, start: str | None = None):
    if not path:
        return start, start
    arrows = [Q.arrow(n) for n in path]
    for x, y in zip(arrows, arrows[1:]):
        if x.dst != y.src:
            raise ValueError(f"path {list(path)} is not composable")
    return arrows[0].src, arrows[-1].dst


def path_algebra(Q: Quiver, F: Field = QQ, max_length: int = 40) -> GradedAlgebra:
    by_src: dict = {}
    for a in Q.arrows:
        by_src.setdefault(a.src, []).append(a)
    rels = []
    for rel in Q.relations:
        terms = [(F(c), tuple(p)) for c, p in rel]
        lengths = {len(p) for _, p in terms}
        ends = {_path_ends(Q, p) for _, p in terms}
        degs = {sum(Q.arrow(n).degree for n in p) for _, p in terms}
        if len(lengths) != 1 or len(ends) != 1 or len(degs) != 1:
            raise ValueError(f"relation {rel} is not homogeneous")
        if lengths == {0}:
            raise ValueError("relations must have positive length")
        rels.append(terms)

    # paths of each length as (start vertex, arrow names)
    layers = [[(v, ()) for v in Q.vertices]]
    basis: list = []  # (start, path)
    reducers: list = []  # per length: (index map, Echelon)
    for length in range(max_length + 1):
        paths = layers[length]
        index = {p: k for k, p in enumerate(paths)}
        # the ideal in length ℓ: all u·r·w; generate by all splits
        ech = Echelon(F)
        for terms in rels:
            k = len(terms[0][1])
            if k > length:
                continue
            s_r, t_r = _path_ends(Q, terms[0][1])
            for a_len in range(length - k + 1):
                b_len = length - k - a_len
                for (v, pre) in layers[a_len]:
                    pre_end = v if not pre else Q.arrow(pre[-1]).dst
                    if pre_end != s_r:
                        continue
                    for (w, post) in layers[b_len]:
                        if w != t_r:
                            continue
                        vec = {}
                        for c, p in terms:
                            key = (v, pre + p + post)
                            vec[index[key]] = F.norm(vec.get(index[key], 0) + c)
                        ech.add({a: b for a, b in vec.items() if b})
        piv = set(ech.pivots())
        kept = [p for k, p in enumerate(paths) if k not in piv]
        reducers.append((index, ech))
        if not kept:
            break
        basis.extend(kept)
        nxt = []
        for (v, p) in paths:
            end = v if not p else Q.arrow(p[-1]).dst
            for a in by_src.get(end, []):
                nxt.append((v, p + (a.name,)))
        layers.append(nxt)
    else:
        raise ValueError(f"path algebra has nonzero paths of length {max_length}; it is not finite dimensional")

    pos = {p: k for k, p in enumerate(basis)}

    def reduce(path):
        length = len(path[1])
        if length >= len(reducers):
            return {}
        index, ech = reducers[length]
        r = ech.reduce({index[path]: F.one})
        return {pos[index_inv(index, k)]: x for k, x in r.items()}

    inv_cache: dict = {}

    def index_inv(index, k):
        key = id(index)
        if key not in inv_cache:
            inv_cache[key] = {v: p for p, v in index.items()}
        return inv_cache[key][k]

    degrees = tuple(sum(Q.arrow(n).degree for n in p) for _, p in basis)
    table = {}
    for i, (sp, p) in enumerate(basis):
        for j, (sq, q) in enumerate(basis):
            eq_ = sq if not q else Q.arrow(q[-1]).dst
            # p·q = q then p
            if eq_ != sp:
                continue
            if not q:
                prod = (sp, p)
            elif not p:
                prod = (sq, q)
            else:
                prod = (sq, q + p)
            v = reduce(prod)
            if v:
                table[(i, j)] = v
    unit = {pos[(v, ())]: F.one for v in Q.vertices}
    names = tuple(f"e{v}" if not p else "*".join(reversed(p)) for v, p in basis)
    return GradedAlgebra(F, degrees, table, unit, names)


def vertex_idempotent(A: GradedAlgebra, vertex) -> dict:
    return {A.names.index(f"e{vertex}"): A.field.one}


def from_json(data: dict) -> GradedAlgebra:
    F = Field.parse(data.get("field", "QQ"))
    q = data["quiver"]
    vertices = tuple(str(v) for v in q["vertices"])
    arrows = tuple(Arrow(str(a["name"]), str(a["src"]), str(a["dst"]), int(a.get("degree", 1))) for a in q["arrows"])
    rels = tuple(tuple((c, tuple(str(x) for x in p)) for c, p in r) for r in q.get("relations", []))
    return path_algebra(Quiver(vertices, arrows, rels), F)


def to_json(Q: Quiver, F: Field = QQ) -> dict:
    return {
        "field": str(F),
        "quiver": {
            "vertices": list(Q.vertices),
            "arrows": [{"name": a.name, "src": a.src, "dst": a.dst, "degree": a.degree} for a in Q.arrows],
            "relations": [[[F.to_json(F(c)), list(p)] for c, p in r] for r in Q.relations],
        },
    }
