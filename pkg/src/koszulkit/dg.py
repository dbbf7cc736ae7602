"""Bigraded dg-modules over S(V) and Λ(V) at a point, and the linear Koszul
duality functors between them.

Conventions:

* A basis vector carries a bidegree (i, j): cohomological degree i and
  internal degree j.  The differential has bidegree (+1, 0).
* S = S(V^*) is generated by y_1^*, ..., y_n^* in bidegree (2, -2); the
  generators commute with each other and with d.
* T = Λ(V) is generated by y_1, ..., y_n in bidegree (-1, 2); the generators
  anticommute, square to zero, and anticommute with d.

Maps are stored sparsely: ``m.d[b]`` is the image of basis vector b as a
dict {basis index: coefficient}; likewise ``m.actions[k][b]``.

ℬ(N) = S ⊗ N is infinite dimensional, so it is built on a window of
bidegrees.  Since d preserves j, every j-slice of ℬ(N) is a finite
subcomplex, and cutting by j alone loses nothing.  Cuts in i make
cohomology unreliable on the boundary columns.  Each module therefore
records ``trusted``, the region where its cohomology agrees with that of the
untruncated object (``None`` means everywhere).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .linalg import QQ, Echelon, Field, Matrix, sparse_kernel, sparse_rank, vec_add, vec_scale

Vec = dict
Bideg = tuple


# ---------------------------------------------------------------------------
# windows and trusted regions


@dataclass(frozen=True)
class Window:
    """Box i0 <= i <= i1, j0 <= j <= j1; a ``None`` side is unbounded."""

    i0: int | None = None
    i1: int | None = None
    j0: int | None = None
    j1: int | None = None

    def __post_init__(self):
        for lo, hi in ((self.i0, self.i1), (self.j0, self.j1)):
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"empty window {self}")

    def contains(self, i: int, j: int) -> bool:
        return (
            (self.i0 is None or i >= self.i0)
            and (self.i1 is None or i <= self.i1)
            and (self.j0 is None or j >= self.j0)
            and (self.j1 is None or j <= self.j1)
        )

    def shifted(self, di: int, dj: int) -> "Window":
        f = lambda x, d: None if x is None else x + d
        return Window(f(self.i0, di), f(self.i1, di), f(self.j0, dj), f(self.j1, dj))

    @classmethod
    def parse(cls, s: str) -> "Window":
        """``"i0:i1,j0:j1"``; empty bounds are unbounded."""
        try:
            ipart, jpart = s.split(",")
            i0, i1 = ipart.split(":")
            j0, j1 = jpart.split(":")
        except ValueError:
            raise ValueError(f"window {s!r} is not of the form i0:i1,j0:j1") from None
        g = lambda x: int(x) if x.strip() else None
        return cls(g(i0), g(i1), g(j0), g(j1))

    def __str__(self):
        g = lambda x: "" if x is None else str(x)
        return f"{g(self.i0)}:{g(self.i1)},{g(self.j0)}:{g(self.j1)}"


@dataclass(frozen=True)
class Region:
    """{(i, j) : (i − shear·j, j) ∈ window}; shear tracks regrading."""

    window: Window
    shear: int = 0

    def contains(self, i: int, j: int) -> bool:
        return self.window.contains(i - self.shear * j, j)

    def shifted(self, a: int, b: int) -> "Region":
        # (m[a]<b>)^i_j = m^{i+a}_{j-b}
        return Region(self.window.shifted(-(a + self.shear * b), b), self.shear)

    def to_json(self):
        return {"window": str(self.window), "shear": self.shear}


# ---------------------------------------------------------------------------
# sparse map helpers


def _apply(f: Sequence[Vec], v: Vec, F: Field) -> Vec:
    out: Vec = {}
    for b, c in v.items():
        for k, x in f[b].items():
            y = F.norm(out.get(k, 0) + c * x)
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out


def compose(f: Sequence[Vec], g: Sequence[Vec], F: Field) -> list[Vec]:
    """f ∘ g."""
    return [_apply(f, gb, F) for gb in g]


def _maps_equal(f, g, F: Field, sign=1) -> bool:
    """f == sign·g."""
    return all(not vec_add(a, b, F, -sign) for a, b in zip(f, g))


def _clean(v: Vec, F: Field) -> Vec:
    return {k: F.norm(x) for k, x in v.items() if F.norm(x)}


# ---------------------------------------------------------------------------
# the module type


DEFAULT_ACTION_DEGREE = {"S": (2, -2), "T": (-1, 2)}


@dataclass(frozen=True, eq=False)
class DgModule:
    field: Field
    kind: str  # "S": even commuting generators; "T": odd anticommuting ones
    dim_v: int
    degrees: tuple
    d: tuple
    actions: tuple
    action_degree: tuple | None = None
    trusted: Region | None = None
    cut: Window | None = None
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("S", "T"):
            raise ValueError("kind must be 'S' or 'T'")
        if self.action_degree is None:
            object.__setattr__(self, "action_degree", DEFAULT_ACTION_DEGREE[self.kind])
        n = len(self.degrees)
        if len(self.d) != n or len(self.actions) != self.dim_v or any(len(a) != n for a in self.actions):
            raise ValueError("map sizes do not match the basis")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def bidegrees(self) -> list:
        return sorted(set(self.degrees))

    def blocks(self) -> dict:
        out: dict = {}
        for b, deg in enumerate(self.degrees):
            out.setdefault(deg, []).append(b)
        return out

    def dims(self) -> dict:
        return {k: len(v) for k, v in sorted(self.blocks().items())}

    def is_trusted(self, i: int, j: int) -> bool:
        return self.trusted is None or self.trusted.contains(i, j)


def make_module(kind, dim_v, degrees, d=None, actions=None, F: Field = QQ, **kw) -> DgModule:
    n = len(degrees)
    d = d if d is not None else [{} for _ in range(n)]
    actions = actions if actions is not None else [[{} for _ in range(n)] for _ in range(dim_v)]
    return DgModule(
        F,
        kind,
        dim_v,
        tuple(tuple(x) for x in degrees),
        tuple(_clean(v, F) for v in d),
        tuple(tuple(_clean(v, F) for v in a) for a in actions),
        **kw,
    )


# ---------------------------------------------------------------------------
# validation


def validate(m: DgModule) -> dict:
    """Check the dg-module axioms by matrix identities."""
    F = m.field
    bad: list[str] = []

    def check_degree(name, f, delta):
        for b, img in enumerate(f):
            i, j = m.degrees[b]
            for c in img:
                if m.degrees[c] != (i + delta[0], j + delta[1]):
                    bad.append(f"{name} does not have bidegree {delta} (basis {b} -> {c})")
                    return

    check_degree("d", m.d, (1, 0))
    for k, a in enumerate(m.actions):
        check_degree(f"y{k+1}", a, m.action_degree)
    if any(compose(m.d, m.d, F)):
        bad.append("d∘d != 0")
    sign = 1 if m.kind == "S" else -1
    for k, a in enumerate(m.actions):
        if not _maps_equal(compose(m.d, a, F), compose(a, m.d, F), F, sign):
            bad.append(f"d∘y{k+1} != {'' if sign == 1 else '-'}y{k+1}∘d")
        if m.kind == "T" and any(compose(a, a, F)):
            bad.append(f"y{k+1}∘y{k+1} != 0")
        for l in range(k + 1, len(m.actions)):
            b_ = m.actions[l]
            if not _maps_equal(compose(a, b_, F), compose(b_, a, F), F, sign):
                bad.append(f"y{k+1}, y{l+1} do not {'commute' if sign == 1 else 'anticommute'}")
    return {"valid": not bad, "violations": bad}


# ---------------------------------------------------------------------------
# cohomology


def _block_ranks(m: DgModule) -> dict:
    F = m.field
    ranks = {}
    for deg, idx in m.blocks().items():
        ranks[deg] = sparse_rank((m.d[b] for b in idx), F)
    return ranks


def cohomology(m: DgModule, trusted_only: bool = False) -> dict:
    """{(i, j): dim H^i_j} over all bidegrees occurring in m (zeros kept)."""
    ranks = _block_ranks(m)
    out = {}
    for (i, j), idx in sorted(m.blocks().items()):
        if trusted_only and not m.is_trusted(i, j):
            continue
        out[(i, j)] = len(idx) - ranks[(i, j)] - ranks.get((i - 1, j), 0)
    return out


def nonzero(table: dict) -> dict:
    return {k: v for k, v in table.items() if v}


def cohomology_basis(m: DgModule) -> dict:
    """{(i, j): representative cocycles (sparse vectors) of a basis of H}."""
    F = m.field
    blocks = m.blocks()
    out = {}
    for (i, j), idx in sorted(blocks.items()):
        ker = sparse_kernel([m.d[b] for b in idx], F)
        ker = [{idx[k]: x for k, x in v.items()} for v in ker]
        ims = Echelon(F)
        for b in blocks.get((i - 1, j), []):
            ims.add(m.d[b])
        reps = []
        for v in ker:
            if ims.add(v) is not None:
                reps.append(v)
        if reps:
            out[(i, j)] = reps
    return out


def euler_characteristic(table: dict) -> dict:
    """{j: Σ_i (−1)^i table[(i, j)]}."""
    out: dict = {}
    for (i, j), dim in table.items():
        out[j] = out.get(j, 0) + (-1) ** (i % 2) * dim
    return {j: v for j, v in sorted(out.items())}


# ---------------------------------------------------------------------------
# exterior algebra helpers


def _subsets(n: int) -> list[tuple]:
    return [J for k in range(n + 1) for J in itertools.combinations(range(n), k)]


def _eps(i: int, J: Iterable[int]) -> int:
    """Sign with y_i ∧ y_{J} = eps · y_{J ∪ i} for sorted J, i ∉ J."""
    return -1 if sum(1 for k in J if k < i) % 2 else 1


def _remove(J: tuple, i: int) -> tuple:
    return tuple(k for k in J if k != i)


# ---------------------------------------------------------------------------
# the functors


def functor_A(m: DgModule) -> DgModule:
    """Hom(Λ(V), m) with basis φ_J ⊗ b (φ_J dual to y_J).

    d(φ_J⊗b) = (−1)^{|J|} φ_J⊗db − Σ_{i∈J} ε(i, J∖i) φ_{J∖i}⊗y_i^*·b and
    y_i·(φ_J⊗b) = −ε(i, J∖i) φ_{J∖i}⊗b, where y_i y_{J∖i} = ε y_J."""
    if m.kind != "S":
        raise ValueError("functor_A takes a module over S")
    if m.trusted is not None and m.cut is None:
        raise ValueError("functor_A needs an exact module or a box truncation of one")
    F, n = m.field, m.dim_v
    subsets = _subsets(n)
    index = {}
    degrees, labels = [], []
    for J in subsets:
        for b, (i, j) in enumerate(m.degrees):
            index[(J, b)] = len(degrees)
            degrees.append((i + len(J), j - 2 * len(J)))
            labels.append((J, b))
    N = len(degrees)
    d = [dict() for _ in range(N)]
    acts = [[dict() for _ in range(N)] for _ in range(n)]
    for (J, b), src in index.items():
        sgn = -1 if len(J) % 2 else 1
        out = d[src]
        for c, x in m.d[b].items():
            out[index[(J, c)]] = F.norm(sgn * x)
        for i in J:
            K = _remove(J, i)
            e = _eps(i, K)
            for c, x in m.actions[i][b].items():
                t = index[(K, c)]
                out[t] = F.norm(out.get(t, 0) - e * x)
            acts[i][src] = {index[(K, b)]: F(-e)}
    trusted = None
    if m.cut is not None:
        w = m.cut
        g = lambda x, dx: None if x is None else x + dx
        trusted = Region(Window(g(w.i0, n + 1), g(w.i1, -1), w.j0, g(w.j1, -2 * n)))
    return make_module("T", n, degrees, d, acts, F, trusted=trusted, labels=tuple(labels))


def _monomials(n: int, k: int) -> list[tuple]:
    """Exponent vectors of total degree k."""
    return [tuple(c.count(i) for i in range(n)) for c in itertools.combinations_with_replacement(range(n), k)]


def functor_B(nm: DgModule, window: Window) -> DgModule:
    """S ⊗ N on the bidegrees inside ``window``, with
    d(s⊗b) = s⊗db + Σ_i s·y_i^* ⊗ y_i·b.  Terms leaving the window are
    dropped, which is a subquotient since the window is a box."""
    if nm.kind != "T":
        raise ValueError("functor_B takes a module over T")
    if nm.trusted is not None:
        raise ValueError("functor_B needs an exact (untruncated) module")
    F, n = nm.field, nm.dim_v
    if n > 0 and window.j0 is None:
        raise ValueError("window must bound the internal degree from below")
    if n == 0:
        kmax = 0
    else:
        kmax = max(((j - window.j0) // 2 for _, j in nm.degrees), default=-1)
    index = {}
    degrees, labels = [], []
    cut_i0 = cut_i1 = False
    for k in range(kmax + 1):
        for s in _monomials(n, k):
            for b, (i, j) in enumerate(nm.degrees):
                ii, jj = i + 2 * k, j - 2 * k
                if window.j0 is not None and jj < window.j0:
                    continue
                if window.j1 is not None and jj > window.j1:
                    continue
                if window.i0 is not None and ii < window.i0:
                    cut_i0 = True
                    continue
                if window.i1 is not None and ii > window.i1:
                    cut_i1 = True
                    continue
                index[(s, b)] = len(degrees)
                degrees.append((ii, jj))
                labels.append((s, b))
    N = len(degrees)
    d = [dict() for _ in range(N)]
    acts = [[dict() for _ in range(N)] for _ in range(n)]
    for (s, b), src in index.items():
        out = d[src]
        for c, x in nm.d[b].items():
            t = index.get((s, c))
            if t is not None:
                out[t] = F.norm(out.get(t, 0) + x)
        for i in range(n):
            si = tuple(e + (1 if k == i else 0) for k, e in enumerate(s))
            t_act = index.get((si, b))
            if t_act is not None:
                acts[i][src] = {t_act: F.one}
            for c, x in nm.actions[i][b].items():
                t = index.get((si, c))
                if t is not None:
                    out[t] = F.norm(out.get(t, 0) + x)
    cut_j1 = window.j1 is not None and any(j > window.j1 for _, j in nm.degrees)
    cut_j0 = n > 0
    cut = Window(
        window.i0 if cut_i0 else None,
        window.i1 if cut_i1 else None,
        window.j0 if cut_j0 else None,
        window.j1 if cut_j1 else None,
    )
    trusted = Region(Window(
        None if cut.i0 is None else cut.i0 + 1,
        None if cut.i1 is None else cut.i1 - 1,
        cut.j0,
        cut.j1,
    ))
    if cut == Window():
        cut, trusted = None, None
    return make_module("S", n, degrees, d, acts, F, trusted=trusted, cut=cut, labels=tuple(labels))


# ---------------------------------------------------------------------------
# standard modules


def trivial(kind: str, dim_v: int, deg: Bideg = (0, 0), F: Field = QQ) -> DgModule:
    return make_module(kind, dim_v, [deg], F=F)


def free_T(dim_v: int, gen_deg: Bideg = (0, 0), F: Field = QQ, max_wedge: int | None = None) -> DgModule:
    """Λ(V)·g, or its quotient by Λ^{>max_wedge}."""
    top = dim_v if max_wedge is None else max_wedge
    subsets = [J for J in _subsets(dim_v) if len(J) <= top]
    index = {J: k for k, J in enumerate(subsets)}
    i0, j0 = gen_deg
    degrees = [(i0 - len(J), j0 + 2 * len(J)) for J in subsets]
    acts = [[dict() for _ in subsets] for _ in range(dim_v)]
    for J, k in index.items():
        for i in range(dim_v):
            if i in J:
                continue
            K = tuple(sorted(J + (i,)))
            if K in index:
                acts[i][k] = {index[K]: F(_eps(i, J))}
    return make_module("T", dim_v, degrees, None, acts, F, labels=tuple(subsets))


def truncated_free_S(dim_v: int, kmax: int, gen_deg: Bideg = (0, 0), F: Field = QQ) -> DgModule:
    """S/S^{>kmax} on one generator."""
    mons = [s for k in range(kmax + 1) for s in _monomials(dim_v, k)]
    index = {s: k for k, s in enumerate(mons)}
    i0, j0 = gen_deg
    degrees = [(i0 + 2 * sum(s), j0 - 2 * sum(s)) for s in mons]
    acts = [[dict() for _ in mons] for _ in range(dim_v)]
    for s, k in index.items():
        for i in range(dim_v):
            si = tuple(e + (1 if t == i else 0) for t, e in enumerate(s))
            if si in index:
                acts[i][k] = {index[si]: F.one}
    return make_module("S", dim_v, degrees, None, acts, F, labels=tuple(mons))


def koszul_complex(dim_v: int, depth: int | None = None, F: Field = QQ) -> DgModule:
    """S ⊗ Λ(V) with the Koszul differential, normalized so that the
    surviving class sits in bidegree (0, 0); built on the j-window
    [−2·dim_v − 2·depth, 0]."""
    if not 1 <= dim_v <= 6:
        raise ValueError("dim_v must be between 1 and 6")
    depth = 2 if depth is None else depth
    lam = free_T(dim_v, (dim_v, -2 * dim_v), F)
    return functor_B(lam, Window(j0=-2 * dim_v - 2 * depth, j1=0))


# ---------------------------------------------------------------------------
# constructions


def direct_sum(*mods: DgModule) -> DgModule:
    first = mods[0]
    F, kind, n = first.field, first.kind, first.dim_v
    degrees, d = [], []
    acts = [[] for _ in range(n)]
    off = 0
    for m in mods:
        if (m.field, m.kind, m.dim_v, m.action_degree) != (F, kind, n, first.action_degree):
            raise ValueError("direct sum of incompatible modules")
        if m.trusted is not None:
            raise ValueError("direct sum of truncated modules is not supported")
        degrees.extend(m.degrees)
        d.extend({k + off: x for k, x in v.items()} for v in m.d)
        for t in range(n):
            acts[t].extend({k + off: x for k, x in v.items()} for v in m.actions[t])
        off += m.dim
    return make_module(kind, n, degrees, d, acts, F, action_degree=first.action_degree)


def cone(f: Sequence[Vec], X: DgModule, Y: DgModule) -> DgModule:
    """X[1] ⊕ Y with d(x, y) = (−dx, f(x) + dy) for a chain map f: X → Y."""
    F, n = X.field, X.dim_v
    off = X.dim
    degrees = [(i - 1, j) for i, j in X.degrees] + list(Y.degrees)
    d = []
    for b in range(X.dim):
        v = {k: F.norm(-x) for k, x in X.d[b].items()}
        v.update({k + off: x for k, x in f[b].items()})
        d.append(v)
    d.extend({k + off: x for k, x in v.items()} for v in Y.d)
    sx = 1 if X.kind == "S" else -1
    acts = []
    for t in range(n):
        a = [{k: F.norm(sx * x) for k, x in v.items()} for v in X.actions[t]]
        a.extend({k + off: x for k, x in v.items()} for v in Y.actions[t])
        acts.append(a)
    return make_module(X.kind, n, degrees, d, acts, F, action_degree=X.action_degree)


def identity_map(m: DgModule) -> list[Vec]:
    return [{b: m.field.one} for b in range(m.dim)]


def contractible(m: DgModule) -> DgModule:
    """cone(id_m), which has zero cohomology."""
    return cone(identity_map(m), m, m)


def chain_map_space(X: DgModule, Y: DgModule) -> list[list[Vec]]:
    """Basis of the bidegree-(0,0) maps X → Y commuting with d and with
    every generator action."""
    F = X.field
    unknowns = [(b, c) for b in range(X.dim) for c in range(Y.dim) if X.degrees[b] == Y.degrees[c]]
    eq_index: dict = {}

    def eq(key):
        if key not in eq_index:
            eq_index[key] = len(eq_index)
        return eq_index[key]

    # (g_X then f) − (f then g_Y) = 0 for g ∈ {d, y_1, ..., y_n}
    pairs = [(X.d, Y.d)] + list(zip(X.actions, Y.actions))
    cols = []
    for b, c in unknowns:
        col: Vec = {}
        for t, (gx, gy) in enumerate(pairs):
            for b0 in range(X.dim):
                x = gx[b0].get(b)
                if x:
                    k = eq((t, b0, c))
                    col[k] = F.norm(col.get(k, 0) + x)
            for c2, y in gy[c].items():
                k = eq((t, b, c2))
                col[k] = F.norm(col.get(k, 0) - y)
        cols.append({k: v for k, v in col.items() if v})
    basis = []
    for v in sparse_kernel(cols, F):
        f = [dict() for _ in range(X.dim)]
        for u, x in v.items():
            b, c = unknowns[u]
            f[b][c] = x
        basis.append(f)
    return basis


def quotient(m: DgModule, gens: Iterable[Vec]) -> DgModule:
    """m modulo the dg-submodule generated by homogeneous vectors ``gens``."""
    F = m.field
    ech = Echelon(F)
    todo = [g for g in gens if g]
    while todo:
        v = todo.pop()
        r = ech.add(v)
        if r is None:
            continue
        todo.append(_apply(m.d, r, F))
        for a in m.actions:
            todo.append(_apply(a, r, F))
    piv = set(ech.pivots())
    keep = [b for b in range(m.dim) if b not in piv]
    pos = {b: k for k, b in enumerate(keep)}

    def proj(v):
        r = ech.reduce(v)
        return {pos[k]: x for k, x in r.items()}

    d = [proj(m.d[b]) for b in keep]
    acts = [[proj(a[b]) for b in keep] for a in m.actions]
    return make_module(m.kind, m.dim_v, [m.degrees[b] for b in keep], d, acts, F, action_degree=m.action_degree)


def change_generators(m: DgModule, g: Sequence[Sequence]) -> DgModule:
    """Same module viewed through the generators y'_i = Σ_k g[i][k] y_k."""
    F = m.field
    acts = []
    for row in g:
        a = [dict() for _ in range(m.dim)]
        for k, c in enumerate(row):
            c = F(c)
            if not c:
                continue
            for b in range(m.dim):
                a[b] = vec_add(a[b], m.actions[k][b], F, c)
        acts.append(a)
    return replace(m, actions=tuple(tuple(a) for a in acts))


# ---------------------------------------------------------------------------
# regrading and shifts


def _reindex(m: DgModule, fn, action_degree, shear_delta: int) -> DgModule:
    trusted = m.trusted
    if trusted is not None:
        trusted = Region(trusted.window, trusted.shear + shear_delta)
    return replace(
        m,
        degrees=tuple(fn(i, j) for i, j in m.degrees),
        action_degree=action_degree,
        trusted=trusted,
        cut=None if m.cut is None or shear_delta == 0 else None,
    )


def regrade_xi(m: DgModule) -> DgModule:
    """ξ(M)^i_j = M^{i−j}_j: a vector of bidegree (a, j) moves to (a+j, j)."""
    a, b = m.action_degree
    return _reindex(m, lambda i, j: (i + j, j), (a + b, b), 1)


def regrade_xi_inverse(m: DgModule) -> DgModule:
    a, b = m.action_degree
    return _reindex(m, lambda i, j: (i - j, j), (a - b, b), -1)


def zeta(m: DgModule) -> DgModule:
    """ζ(M)^i_j = M^{i+j}_j: a vector of bidegree (a, j) moves to (a−j, j)."""
    a, b = m.action_degree
    return _reindex(m, lambda i, j: (i - j, j), (a - b, b), -1)


def zeta_inverse(m: DgModule) -> DgModule:
    a, b = m.action_degree
    return _reindex(m, lambda i, j: (i + j, j), (a + b, b), 1)


def shift(m: DgModule, a: int, b: int) -> DgModule:
    """m[a]⟨b⟩ with (m[a]⟨b⟩)^i_j = m^{i+a}_{j−b}; d and the odd
    generators pick up the sign (−1)^a."""
    F = m.field
    s = -1 if a % 2 else 1
    d = tuple({k: F.norm(s * x) for k, x in v.items()} for v in m.d)
    acts = m.actions
    if m.kind == "T" and s == -1:
        acts = tuple(tuple({k: F.norm(-x) for k, x in v.items()} for v in act) for act in acts)
    return replace(
        m,
        degrees=tuple((i - a, j + b) for i, j in m.degrees),
        d=d,
        actions=acts,
        trusted=None if m.trusted is None else m.trusted.shifted(a, b),
        cut=None if m.cut is None else m.cut.shifted(-a, b),
    )


def shift_table(table: dict, a: int, b: int) -> dict:
    return {(i - a, j + b): v for (i, j), v in table.items()}


# ---------------------------------------------------------------------------
# top-degree duality on Λ(V)


@dataclass
class PsiDuality:
    dim_v: int
    subsets: list
    matrix: Matrix  # rows: φ_K, columns: y_J
    signs: dict  # J -> sign of ψ(y_J) on φ_{complement}

    def psi(self, J: tuple) -> dict:
        """ψ(y_J) as {K: coefficient}."""
        col = self.subsets.index(J)
        return {self.subsets[r]: self.matrix[r, col] for r in range(len(self.subsets)) if self.matrix[r, col]}


def _wedge(J: tuple, K: tuple):
    """(sign, J ∪ K) with y_J ∧ y_K = sign·y_{J∪K}, or (0, None)."""
    if set(J) & set(K):
        return 0, None
    seq = list(J) + list(K)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def psi_top_duality(dim_v: int) -> PsiDuality:
    """ψ(t)(u) = (−1)^{j(j+1)/2}·[t ∧ u : y_top] for t ∈ Λ^j."""
    if not 1 <= dim_v <= 6:
        raise ValueError("dim_v must be between 1 and 6")
    subsets = _subsets(dim_v)
    top = tuple(range(dim_v))
    N = len(subsets)
    rows = [[0] * N for _ in range(N)]
    signs = {}
    for c, J in enumerate(subsets):
        j = len(J)
        base = -1 if (j * (j + 1) // 2) % 2 else 1
        for r, K in enumerate(subsets):
            s, U = _wedge(J, K)
            if U == top:
                rows[r][c] = base * s
                signs[J] = base * s
    return PsiDuality(dim_v, subsets, Matrix.from_rows(QQ, rows), signs)


def psi_equivariance_failures(P: PsiDuality) -> list:
    """Instances (s, J, K) violating ψ(y_s y_J)(y_K) = −ψ(y_J)(y_s y_K)."""
    bad = []
    for s in range(P.dim_v):
        for J in P.subsets:
            for K in P.subsets:
                e1, SJ = _wedge((s,), J)
                lhs = 0 if not e1 else e1 * P.psi(SJ).get(K, 0)
                e2, SK = _wedge((s,), K)
                rhs = 0 if not e2 else e2 * P.psi(J).get(SK, 0)
                if lhs != -rhs:
                    bad.append((s, J, K))
    return bad


# ---------------------------------------------------------------------------
# random modules


def random_chain_map(X: DgModule, Y: DgModule, rng: random.Random) -> list[Vec]:
    F = X.field
    basis = chain_map_space(X, Y)
    f = [dict() for _ in range(X.dim)]
    for g in basis:
        c = rng.randint(-2, 2)
        if not c:
            continue
        for b in range(X.dim):
            f[b] = vec_add(f[b], g[b], F, F(c))
    return f


def _random_piece(kind: str, dim_v: int, rng: random.Random, budget: int, deg: Bideg, F: Field):
    opts = [trivial(kind, dim_v, deg, F)]
    if kind == "S":
        if 1 + dim_v <= budget:
            opts.append(truncated_free_S(dim_v, 1, deg, F))
        if dim_v == 1 and 3 <= budget:
            opts.append(truncated_free_S(1, 2, deg, F))
    else:
        if 1 + dim_v <= budget:
            opts.append(free_T(dim_v, deg, F, max_wedge=1))
        if 2 ** dim_v <= budget:
            opts.append(free_T(dim_v, deg, F))
    return rng.choice(opts)


def _random_sum(kind, dim_v, rng, budget, F, degs=None):
    pieces, used = [], 0
    while used < budget:
        deg = rng.choice(degs) if degs else (rng.randint(-2, 2), 2 * rng.randint(-1, 1))
        p = _random_piece(kind, dim_v, rng, budget - used, deg, F)
        if used + p.dim > budget:
            break
        pieces.append(p)
        used += p.dim
        if rng.random() < 0.4:
            break
    if not pieces:
        pieces = [trivial(kind, dim_v, (0, 0), F)]
    return direct_sum(*pieces)


def random_module(kind: str, dim_v: int, rng: random.Random, max_dim: int = 8, F: Field = QQ) -> DgModule:
    """A random valid dg-module of dimension <= max_dim: a cone of a random
    chain map between sums of small standard modules, optionally divided by
    a random cyclic dg-submodule.  Never returns the zero module."""
    while True:
        m = _random_module_once(kind, dim_v, rng, max_dim, F)
        if m.dim:
            return m


def _random_module_once(kind, dim_v, rng, max_dim, F):
    ydim = rng.randint(1, max(1, max_dim - 1))
    Y = _random_sum(kind, dim_v, rng, ydim, F)
    m = Y
    room = max_dim - Y.dim
    if room > 0:
        degs = sorted(set(Y.degrees))
        X = _random_sum(kind, dim_v, rng, room, F, degs)
        if X.dim <= room:
            m = cone(random_chain_map(X, Y, rng), X, Y)
    if rng.random() < 0.3 and m.dim > 1:
        b = rng.randrange(m.dim)
        same = [c for c in range(m.dim) if m.degrees[c] == m.degrees[b]]
        v = {c: F(rng.randint(-1, 1)) for c in same}
        v = {c: x for c, x in v.items() if x}
        m = quotient(m, [v])
    return m


# ---------------------------------------------------------------------------
# round trips


def _trusted_table(m: DgModule) -> dict:
    return {k: v for k, v in cohomology(m, trusted_only=True).items() if v}


def round_trip(m: DgModule, margin: int = 1) -> tuple[dict, dict, Window]:
    """Compare H(m) with H of 𝒜ℬ(m) (m over T) or ℬ𝒜(m) (m over S).

    ℬ is built on the j-window starting ``margin`` steps of V below the
    lowest internal degree involved, with i left unbounded, so the trusted
    region is all j >= j0.  Returns (H(m), H(round trip), window), both
    restricted to the trusted region and with zero entries dropped."""
    if m.kind == "T":
        base = m
    else:
        base = functor_A(m)
    j0 = min((j for _, j in base.degrees), default=0) - 2 * margin
    w = Window(j0=j0)
    if m.kind == "T":
        out = functor_A(functor_B(m, w))
    else:
        out = functor_B(base, w)
    lhs = {k: v for k, v in nonzero(cohomology(m)).items() if out.is_trusted(*k)}
    return lhs, _trusted_table(out), w


# ---------------------------------------------------------------------------
# independent Ext oracle for dim V = 1


def ext_oracle_dim1(m: DgModule) -> dict:
    """For a dim-1 S-module with zero differential: the cohomology of
    Hom(Λ, m) read off directly from y^*: coker contributes at (i, j),
    ker contributes at (i+1, j−2)."""
    if m.kind != "S" or m.dim_v != 1 or any(m.d):
        raise ValueError("oracle needs an S-module with dim V = 1 and d = 0")
    F = m.field
    blocks = m.blocks()
    out: dict = {}
    for (i, j), idx in blocks.items():
        rank_out = sparse_rank((m.actions[0][b] for b in idx), F)
        ker = len(idx) - rank_out
        src = blocks.get((i - 2, j + 2), [])
        rank_in = sparse_rank((m.actions[0][b] for b in src), F)
        coker = len(idx) - rank_in
        out[(i, j)] = out.get((i, j), 0) + coker
        out[(i + 1, j - 2)] = out.get((i + 1, j - 2), 0) + ker
    return nonzero(out)


# ---------------------------------------------------------------------------
# JSON


def _sparse_json(maps, F: Field) -> list:
    return [[k, b, F.to_json(x)] for b, v in enumerate(maps) for k, x in sorted(v.items())]


def _sparse_parse(entries, n: int, F: Field) -> list[Vec]:
    out = [dict() for _ in range(n)]
    for row, col, x in entries:
        out[col][row] = F(x)
    return out


def to_json(m: DgModule) -> dict:
    F = m.field
    out = {
        "field": str(F),
        "algebra": m.kind,
        "dimV": m.dim_v,
        "action_degree": list(m.action_degree),
        "basis": [{"id": b, "i": i, "j": j} for b, (i, j) in enumerate(m.degrees)],
        "diff": _sparse_json(m.d, F),
        "actions": [_sparse_json(a, F) for a in m.actions],
    }
    if m.trusted is not None:
        out["trusted"] = m.trusted.to_json()
    if m.cut is not None:
        out["cut"] = str(m.cut)
    return out


def from_json(data: dict) -> DgModule:
    F = Field.parse(data.get("field", "QQ"))
    kind = data.get("algebra", "S")
    n = int(data["dimV"])
    basis = sorted(data["basis"], key=lambda e: e["id"])
    if [e["id"] for e in basis] != list(range(len(basis))):
        raise ValueError("basis ids must be 0..N-1")
    degrees = [(int(e["i"]), int(e["j"])) for e in basis]
    N = len(degrees)
    d = _sparse_parse(data.get("diff", []), N, F)
    acts = data.get("actions") or [[] for _ in range(n)]
    if len(acts) != n:
        raise ValueError("one action matrix per generator is required")
    actions = [_sparse_parse(a, N, F) for a in acts]
    kw = {}
    if "action_degree" in data:
        kw["action_degree"] = tuple(data["action_degree"])
    if "trusted" in data:
        t = data["trusted"]
        kw["trusted"] = Region(Window.parse(t["window"]), int(t.get("shear", 0)))
    if "cut" in data:
        kw["cut"] = Window.parse(data["cut"])
    return make_module(kind, n, degrees, d, actions, F, **kw)


def table_to_json(table: dict) -> dict:
    return {f"({i},{j})": v for (i, j), v in sorted(table.items())}
