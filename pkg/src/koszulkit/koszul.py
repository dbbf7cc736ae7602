"""Minimal graded resolutions, Ext tables, the Koszulity test, the Yoneda
Ext algebra, and the Koszul ring B attached to an algebra whose graded
simples have linear Ext.

Let e_1, ..., e_r be primitive idempotents of A in degree 0, one for each
isomorphism class of simple modules.  Then P_i = A·e_i is the graded
projective cover of L_i = P_i / rad(A)·P_i.  This normalizes every simple
so that its e_i-part sits in degree 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .algebra import (
    GradedAlgebra,
    corner,
    graded_radical,
    idempotent_classes,
    primitive_idempotents,
)
from .linalg import Echelon, echelon, sparse_kernel, vec_add, vec_scale
from .modules import (
    GradedModule,
    SubspaceCoords,
    direct_sum,
    hom_space,
    idempotent_part,
    product_submodule,
    quotient,
    radical_submodule,
    regular_module,
    shift,
    submodule,
)

Vec = dict


# ---------------------------------------------------------------------------
# simples and projective covers


@dataclass
class Cover:
    index: int
    idempotent: Vec  # e_i in A
    P: GradedModule  # A·e_i
    P_basis: list  # basis vectors of A·e_i inside A
    generator: Vec  # coordinates of e_i in P
    L: GradedModule  # P / rad·P
    surjection: list  # images of P's basis in L


class AlgebraData:
    """Radical, idempotents, covers and simples of a graded algebra."""

    def __init__(self, A: GradedAlgebra):
        self.A = A
        self.F = A.field
        self.rad = graded_radical(A)
        self.rad_ech = echelon(self.rad, self.F)
        self.idempotents = primitive_idempotents(A)
        self.classes = idempotent_classes(A, self.idempotents, self.rad)
        reps = []
        for c in range(max(self.classes) + 1):
            reps.append(self.idempotents[self.classes.index(c)])
        self.reps = reps
        self.covers = [self._cover(i, e) for i, e in enumerate(reps)]

    @property
    def n_simples(self) -> int:
        return len(self.reps)

    def _cover(self, i: int, e: Vec) -> Cover:
        A, F = self.A, self.F
        reg = regular_module(A)
        vecs = [A.mul(A.basis_vector(b), e) for b in range(A.dim)]
        parts = []
        for v in vecs:
            parts.extend(A.homogeneous_parts(v).values())
        P, basis = submodule(reg, parts)
        sc = SubspaceCoords(basis, F)
        gen = sc.coords(e)
        radP = radical_submodule(P, self.rad)
        L, keep, ech = quotient(P, radP)
        pos = {m: k for k, m in enumerate(keep)}
        surj = [{pos[k]: x for k, x in ech.reduce({m: F.one}).items()} for m in range(P.dim)]
        return Cover(i, e, P, basis, gen, L, surj)

    def top_coefficient(self, i: int, z: Vec) -> object:
        """λ with e_i·z ≡ λ·e_i modulo rad(A), for z ∈ A·e_i (an A-vector)."""
        A, F = self.A, self.F
        e = self.reps[i]
        w = self.rad_ech.reduce(A.mul(e, z))
        base = self.rad_ech.reduce(e)
        if not w:
            return F.zero
        k = min(base)
        lam = F.norm(w.get(k, 0) * F.inv(base[k]))
        if vec_add(w, base, F, -lam):
            raise ArithmeticError("e·A·e is not split local")
        return lam

    def degree0_semisimple(self) -> bool:
        return not any(self.A.degree_of(v) == 0 for v in self.rad)

    def simple_multiplicities(self, M: GradedModule) -> dict:
        """{(class, degree): dim (e_i M)_degree} for a semisimple M."""
        out: dict = {}
        for i, e in enumerate(self.reps):
            for v in idempotent_part(M, e):
                d = M.degree_of(v)
                out[(i, d)] = out.get((i, d), 0) + 1
        return out


def simples_and_covers(A: GradedAlgebra) -> list[tuple[GradedModule, GradedModule, list]]:
    data = AlgebraData(A)
    return [(c.L, c.P, c.surjection) for c in data.covers]


# ---------------------------------------------------------------------------
# projectives and resolutions


@dataclass
class Projective:
    """⊕_g P_{cls(g)}⟨shift(g)⟩."""

    summands: list  # (class, shift)
    module: GradedModule
    offsets: list

    def generator(self, data: AlgebraData, g: int) -> Vec:
        off = self.offsets[g]
        gen = data.covers[self.summands[g][0]].generator
        return {k + off: x for k, x in gen.items()}

    def summand_of(self, k: int) -> int:
        lo, hi = 0, len(self.offsets) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.offsets[mid] <= k:
                lo = mid
            else:
                hi = mid - 1
        return lo


def make_projective(data: AlgebraData, summands: list) -> Projective:
    if not summands:
        mod = GradedModule(data.A, (), tuple(() for _ in range(data.A.dim)))
        return Projective([], mod, [])
    mods = [shift(data.covers[c].P, m) for c, m in summands]
    M, offs = direct_sum(mods)
    return Projective(list(summands), M, offs)


@dataclass
class ResolutionStep:
    projective: Projective
    differential: list  # images of the projective's basis in the previous target

    @property
    def summands(self) -> list:
        return self.projective.summands

    def multiplicities(self) -> dict:
        out: dict = {}
        for c, m in self.summands:
            out[(c, m)] = out.get((c, m), 0) + 1
        return out

    def generator_degrees(self) -> list:
        return sorted(m for _, m in self.summands)


@dataclass
class Resolution:
    data: AlgebraData
    module: GradedModule
    steps: list
    complete: bool  # True if the last kernel was zero

    def target(self, n: int) -> GradedModule:
        return self.module if n == 0 else self.steps[n - 1].projective.module


def _choose_generators(data: AlgebraData, target: GradedModule, K: list[Vec]) -> list:
    F = data.F
    radK = product_submodule(target, data.rad, K)
    ech = echelon(radK, F)
    gens = []
    order = sorted(range(len(K)), key=lambda k: (target.degree_of(K[k]), k))
    for k in order:
        for c, e in enumerate(data.reps):
            w = target.act(e, K[k])
            if w and ech.add(w) is not None:
                gens.append((c, target.degree_of(w), w))
    gens.sort(key=lambda t: (t[1], t[0]))
    return gens


def _kernel(proj: Projective, images: list, F) -> list[Vec]:
    M = proj.module
    blocks: dict = {}
    for b, d in enumerate(M.degrees):
        blocks.setdefault(d, []).append(b)
    out = []
    for d, idx in sorted(blocks.items()):
        for v in sparse_kernel([images[b] for b in idx], F):
            out.append({idx[k]: x for k, x in v.items()})
    return out


def minimal_graded_resolution(A_or_data, M: GradedModule, n_max: int) -> Resolution:
    """Steps 0..n_max of the minimal graded projective resolution of M."""
    if n_max > 12:
        raise ValueError("n_max must be at most 12")
    data = A_or_data if isinstance(A_or_data, AlgebraData) else AlgebraData(A_or_data)
    F = data.F
    target = M
    K = [{m: F.one} for m in range(M.dim)]
    steps = []
    complete = False
    for n in range(n_max + 1):
        if not K:
            complete = True
            break
        gens = _choose_generators(data, target, K)
        proj = make_projective(data, [(c, m) for c, m, _ in gens])
        images = []
        for g, (c, m, w) in enumerate(gens):
            cov = data.covers[c]
            for p in cov.P_basis:
                images.append(target.act(p, w))
        steps.append(ResolutionStep(proj, images))
        K = _kernel(proj, images, F)
        target = proj.module
    else:
        complete = not K
    return Resolution(data, M, steps, complete)


def check_resolution(res: Resolution) -> dict:
    """Exactness, A-linearity and minimality of the computed steps."""
    data, F = res.data, res.data.F
    A = data.A
    bad = []
    for n, step in enumerate(res.steps):
        tgt = res.target(n)
        src = step.projective.module
        d = step.differential
        for a in range(A.dim):
            for b in range(src.dim):
                lhs = _apply(d, src.action[a][b], F)
                rhs = tgt.act({a: F.one}, d[b])
                if lhs != rhs:
                    bad.append(f"step {n}: differential is not A-linear")
                    break
        radT = echelon(radical_submodule(tgt, data.rad), F)
        if n > 0 and any(not radT.contains(v) for v in d):
            bad.append(f"step {n}: image not inside rad·target (not minimal)")
        img = echelon(d, F)
        if n == 0:
            if len(img) != tgt.dim:
                bad.append("step 0 is not surjective")
        else:
            prev = res.steps[n - 1].differential
            if any(_apply(prev, v, F) for v in d):
                bad.append(f"step {n}: d∘d != 0")
            ker = _kernel(res.steps[n - 1].projective, prev, F)
            if len(ker) != len(img):
                bad.append(f"step {n}: not exact (kernel {len(ker)}, image {len(img)})")
    return {"valid": not bad, "violations": bad}


def _apply(f: Sequence[Vec], v: Vec, F) -> Vec:
    out: Vec = {}
    for b, c in v.items():
        out = vec_add(out, f[b], F, c)
    return out


# ---------------------------------------------------------------------------
# Ext tables and Koszulity


def ext_bigraded_dims(A_or_data, i: int, j: int | None = None, n_max: int = 6) -> dict:
    """{(n, m): dim Ext^n(L_i, L_j⟨m⟩)}; with j None, keyed (n, j, m)."""
    data = A_or_data if isinstance(A_or_data, AlgebraData) else AlgebraData(A_or_data)
    res = minimal_graded_resolution(data, data.covers[i].L, n_max)
    out: dict = {}
    for n, step in enumerate(res.steps):
        for (c, m), k in step.multiplicities().items():
            if j is None:
                out[(n, c, m)] = k
            elif c == j:
                out[(n, m)] = k
    return out


def ext_vanishing_check(A_or_data, n_max: int = 6) -> bool:
    """True iff Ext^n(L_i, L_j⟨m⟩) = 0 for m != n, all i, j, n <= n_max."""
    data = A_or_data if isinstance(A_or_data, AlgebraData) else AlgebraData(A_or_data)
    for i in range(data.n_simples):
        for (n, _, m) in ext_bigraded_dims(data, i, None, n_max):
            if n != m:
                return False
    return True


@dataclass(frozen=True)
class Verdict:
    kind: str  # "koszul_up_to" | "fails_at" | "not_koszul"
    n: int | None = None
    step: int | None = None
    degrees: tuple = ()
    reason: str = ""

    def to_json(self) -> dict:
        out = {"verdict": self.kind}
        if self.kind == "koszul_up_to":
            out["n"] = self.n
        if self.kind == "fails_at":
            out["step"] = self.step
            out["degrees"] = list(self.degrees)
        if self.reason:
            out["reason"] = self.reason
        return out

    def __str__(self):
        if self.kind == "koszul_up_to":
            return f"koszul_up_to({self.n})"
        if self.kind == "fails_at":
            return f"fails_at({self.step}, degrees={list(self.degrees)})"
        return f"not_koszul({self.reason})"


def is_koszul(A_or_data, n_max: int = 6) -> Verdict:
    """A_0 semisimple, A non-negatively graded, and step s of the minimal
    resolution of A_0 generated in degree s for s <= n_max."""
    data = A_or_data if isinstance(A_or_data, AlgebraData) else AlgebraData(A_or_data)
    if not data.A.is_nonnegatively_graded():
        return Verdict("not_koszul", reason="algebra has negative degrees")
    if not data.degree0_semisimple():
        return Verdict("not_koszul", reason="degree-0 part is not semisimple")
    worst = None
    for i in range(data.n_simples):
        res = minimal_graded_resolution(data, data.covers[i].L, n_max)
        for s, step in enumerate(res.steps):
            degs = step.generator_degrees()
            if any(d != s for d in degs):
                if worst is None or s < worst[0]:
                    worst = (s, tuple(degs))
                break
    if worst is not None:
        return Verdict("fails_at", step=worst[0], degrees=worst[1])
    return Verdict("koszul_up_to", n=n_max)


# ---------------------------------------------------------------------------
# radical layers


@dataclass
class Layer:
    index: int
    graded_dims: dict
    multiplicities: dict  # (class, degree) -> multiplicity of L_class⟨degree⟩


def radical_layers(A_or_data, M: GradedModule) -> list[Layer]:
    """rad^n M / rad^{n+1} M for n = 0, 1, ... until zero, with
    rad^{n+1} M = rad(A)·rad^n M."""
    data = A_or_data if isinstance(A_or_data, AlgebraData) else AlgebraData(A_or_data)
    F = data.F
    cur = [{m: F.one} for m in range(M.dim)]
    cur = echelon(cur, F).basis()
    layers = []
    n = 0
    while cur:
        nxt = product_submodule(M, data.rad, cur)
        sub, _ = submodule(M, cur)
        sc = SubspaceCoords(cur, F)
        inner = [sc.coords(v) for v in nxt]
        layer, _, _ = quotient(sub, inner)
        layers.append(Layer(n, layer.graded_dims(), data.simple_multiplicities(layer)))
        cur = nxt
        n += 1
        if n > M.dim + 1:
            raise ArithmeticError("radical filtration did not terminate")
    return layers


def layer_is_shifted_simples(data: AlgebraData, layer: Layer, n: int) -> bool:
    """Layer ≅ ⊕ L_j⟨n⟩: every e_j-part sits in degree n and the dimensions
    add up."""
    if any(d != n for (_, d) in layer.multiplicities):
        return False
    total = sum(k * data.covers[c].L.dim for (c, _), k in layer.multiplicities.items())
    return total == sum(layer.graded_dims.values())


# ---------------------------------------------------------------------------
# Yoneda Ext algebra


class _Solver:
    """Preimages under a projective's differential, one degree at a time."""

    def __init__(self, proj: Projective, images: list, F):
        self.F = F
        self.images = images
        self.blocks: dict = {}
        for b, d in enumerate(proj.module.degrees):
            self.blocks.setdefault(d, []).append(b)
        self.cache: dict = {}

    def _ech(self, d):
        if d not in self.cache:
            idx = self.blocks.get(d, [])
            cols = [self.images[b] for b in idx]
            shift_ = 1 + max((max(c) for c in cols if c), default=-1)
            e = Echelon(self.F)
            for k, c in enumerate(cols):
                row = dict(c)
                row[shift_ + k] = self.F.one
                e.add(row)
            self.cache[d] = (idx, shift_, e)
        return self.cache[d]

    def solve(self, target: Vec, d) -> Vec:
        if not target:
            return {}
        idx, shift_, e = self._ech(d)
        r = e.reduce(target)
        if any(k < shift_ for k in r):
            raise ArithmeticError("lift does not exist; resolution is not exact")
        return {idx[k - shift_]: self.F.norm(-x) for k, x in r.items()}


@dataclass
class ExtAlgebra:
    algebra: GradedAlgebra  # the truncated A^!
    basis_labels: list  # (source simple j, n, generator index, target simple, internal degree)
    n_max: int


def ext_algebra(A_or_data, n_max: int = 4) -> ExtAlgebra:
    """(⊕_n Ext^n(A_0, A_0))^op truncated at n_max, using one simple per
    isomorphism class.  Products come from lifting cocycles to chain maps
    between minimal resolutions."""
    data = A_or_data if isinstance(A_or_data, AlgebraData) else AlgebraData(A_or_data)
    F = data.F
    r = data.n_simples
    res = [minimal_graded_resolution(data, data.covers[j].L, n_max) for j in range(r)]
    labels = []
    for j in range(r):
        for n, step in enumerate(res[j].steps):
            for g, (c, m) in enumerate(step.summands):
                labels.append((j, n, g, c, m))
    index = {lab[:3]: k for k, lab in enumerate(labels)}
    solvers = {}

    def solver(i, t):
        if (i, t) not in solvers:
            st = res[i].steps[t]
            solvers[(i, t)] = _Solver(st.projective, st.differential, F)
        return solvers[(i, t)]

    table: dict = {}
    for (j, a, g, i, m) in labels:
        # lift ξ = dual of generator g of Q^{(j)}_a to F_t: Q^{(j)}_{a+t} → Q^{(i)}_t
        steps_j, steps_i = res[j].steps, res[i].steps
        Qa = steps_j[a].projective
        # F_0 on generators of Q^{(j)}_a
        gen_imgs = [dict() for _ in Qa.summands]
        gen_imgs[g] = dict(data.covers[i].generator)
        Fprev = _extend(data, Qa, gen_imgs, steps_i[0].projective.module)
        for t in range(0, n_max - a + 1):
            if a + t >= len(steps_j) or t >= len(steps_i):
                break
            if t > 0:
                Qs = steps_j[a + t].projective
                dj = steps_j[a + t].differential
                tgt_mod = steps_i[t].projective.module
                gen_imgs = []
                for h in range(len(Qs.summands)):
                    gvec = Qs.generator(data, h)
                    y = _apply(Fprev, _apply(dj, gvec, F), F)
                    deg = Qs.module.degree_of(gvec) - m
                    x = solver(i, t).solve(y, deg) if y else {}
                    x = tgt_mod.act(data.reps[Qs.summands[h][0]], x) if x else {}
                    gen_imgs.append(x)
                Fprev = _extend(data, Qs, gen_imgs, tgt_mod)
            else:
                Qs = Qa
            # read off η ∈ Ext^t(L_i, ·) for each generator h of Q^{(i)}_t
            Qt = steps_i[t].projective
            for hgen, (k, m2) in enumerate(Qt.summands):
                eta = index[(i, t, hgen)]
                out: Vec = {}
                for g2, (c2, _) in enumerate(Qs.summands):
                    if c2 != k:
                        continue
                    img = _apply(Fprev, Qs.generator(data, g2), F)
                    z = _component_in_A(data, Qt, hgen, img)
                    lam = data.top_coefficient(k, z) if z else 0
                    if lam:
                        out[index[(j, a + t, g2)]] = lam
                if out:
                    xi = index[(j, a, g)]
                    # A^! = Ext^op: ξ·η := η∘ξ
                    table[(xi, eta)] = out
    degrees = [n for (_, n, _, _, _) in labels]
    unit = {index[(j, 0, 0)]: F.one for j in range(r)}
    return ExtAlgebra(GradedAlgebra(F, tuple(degrees), table, unit), labels, n_max)


def _extend(data: AlgebraData, proj: Projective, gen_imgs: list, target: GradedModule) -> list:
    """A-linear map from ``proj`` determined by generator images."""
    imgs = []
    for g, (c, _) in enumerate(proj.summands):
        for p in data.covers[c].P_basis:
            imgs.append(target.act(p, gen_imgs[g]) if gen_imgs[g] else {})
    return imgs


def _component_in_A(data: AlgebraData, proj: Projective, h: int, v: Vec) -> Vec:
    """The summand-h component of v, as an element of A·e_k ⊆ A."""
    c = proj.summands[h][0]
    basis = data.covers[c].P_basis
    off = proj.offsets[h]
    out: Vec = {}
    for k, x in v.items():
        if off <= k < off + len(basis):
            out = vec_add(out, basis[k - off], data.F, x)
    return out


def ext_diagonal_dims(A_or_data, n_max: int) -> list[int]:
    """[Σ_{i,j} dim Ext^n(L_i, L_j⟨n⟩) for n = 0..n_max]."""
    data = A_or_data if isinstance(A_or_data, AlgebraData) else AlgebraData(A_or_data)
    out = [0] * (n_max + 1)
    for i in range(data.n_simples):
        for (n, _, m), k in ext_bigraded_dims(data, i, None, n_max).items():
            if n == m:
                out[n] += k
    return out


# ---------------------------------------------------------------------------
# the Koszul ring B and Morita transport


class HypothesisError(ValueError):
    pass


@dataclass
class BResult:
    B: GradedAlgebra
    e: Vec  # Σ of one primitive idempotent per class
    corner_basis: list  # basis of eAe inside A
    checks: dict


def basic_idempotent(data: AlgebraData) -> Vec:
    F = data.F
    e: Vec = {}
    for r in data.reps:
        e = vec_add(e, r, F)
    return e


def endomorphism_ring_B(A_or_data, n_max: int = 6, check_koszul: bool = True) -> BResult:
    """B with B_n = Hom(P⟨n⟩, P), P = ⊕_i P_i.  Under f ↦ f(e) this is
    (eAe)^op, with e the sum of the chosen primitive idempotents."""
    data = A_or_data if isinstance(A_or_data, AlgebraData) else AlgebraData(A_or_data)
    if not ext_vanishing_check(data, n_max):
        table = {i: {f"{k}": v for k, v in ext_bigraded_dims(data, i, None, n_max).items()} for i in range(data.n_simples)}
        raise HypothesisError(f"Ext^n(L_i, L_j<m>) is nonzero for some m != n: {table}")
    e = basic_idempotent(data)
    C, basis = corner(data.A, e)
    B = C.opposite()
    checks = {"nonnegatively_graded": B.is_nonnegatively_graded()}
    Bdata = AlgebraData(B)
    checks["B0_semisimple"] = Bdata.degree0_semisimple()
    if check_koszul:
        checks["koszul"] = str(is_koszul(Bdata, n_max))
    checks["hom_dims_match"] = _hom_dims(data) == B.graded_dims()
    return BResult(B, e, basis, checks)


def _hom_dims(data: AlgebraData) -> dict:
    """Σ_{i,j} dim Hom_A(P_i⟨n⟩, P_j) per n, by solving for module maps."""
    out: dict = {}
    for ci in data.covers:
        for cj in data.covers:
            for n in sorted(set(cj.P.degrees)):
                k = len(hom_space(shift(ci.P, n), cj.P))
                if k:
                    out[n] = out.get(n, 0) + k
    return dict(sorted(out.items()))


def morita_transport(A_or_data, M: GradedModule, result: BResult | None = None) -> GradedModule:
    """Hom_A(P, M) ≅ e·M.  It is a right module over B = End(P), which we
    return as a left module over B^op = eAe."""
    data = A_or_data if isinstance(A_or_data, AlgebraData) else AlgebraData(A_or_data)
    e = basic_idempotent(data) if result is None else result.e
    C, cbasis = corner(data.A, e)
    F = data.F
    eM = idempotent_part(M, e)
    sc = SubspaceCoords(eM, F)
    degrees = tuple(M.degree_of(v) for v in sc.basis)
    action = tuple(tuple(sc.coords(M.act(c, v)) for v in sc.basis) for c in cbasis)
    return GradedModule(C, degrees, action)
