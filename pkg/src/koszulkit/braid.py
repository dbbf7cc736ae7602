"""Extended affine braid group: words, the canonical lift, and a truncated
Demazure–Lusztig representation used to certify identities between words.

The representation acts on Laurent polynomials in the weight lattice with
coefficients in ℤ[v, v^{-1}], v = q^{1/2}.  The generator T_α acts by the
rescaled operator

    T_α f = v·s_α(f) + (v − v^{-1})·(f − s_α f)/(1 − e^{−α}),

which is v^{-1} times the usual q-normalized operator.  Without the v^{-1}
rescaling the mixed relation θ_x = T_α θ_{x−α} T_α only holds up to a
factor q (see ``relation_report`` with ``normalization="q"``).

Only a finite box of weights is kept, namely all x with
|⟨x, β^∨⟩| <= R for every positive root β.  The box is W-stable and convex,
so every T_α is defined everywhere on it.  Multiplication by e^x is partial:
it is undefined on monomials pushed outside the box.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .affine import (
    ExtAffineWeylElement,
    affine_simple_reflections,
    omega_group,
    reduced_decomposition,
)
from .roots import RootSystem, Weight


# ---------------------------------------------------------------------------
# Laurent polynomials in v


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in v, stored as sorted (exponent, coeff)."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d: dict) -> "LaurentPoly":
        return cls(tuple(sorted((k, c) for k, c in d.items() if c)))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other):
        d = self.as_dict()
        for k, c in other.terms:
            d[k] = d.get(k, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self):
        return LaurentPoly(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        d: dict = {}
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                d[k1 + k2] = d.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*v^{k}" for k, c in self.terms)

    def to_json(self):
        return {str(k): c for k, c in self.terms}


# ---------------------------------------------------------------------------
# braid words


@dataclass(frozen=True)
class Letter:
    """``T`` letter: ``("T", i, ±1)`` for the finite simple root i (0-based);
    ``theta`` letter: ``("theta", x)`` for a weight x."""

    kind: str
    index: int = 0
    exponent: int = 1
    weight: tuple = ()

    def inverse(self) -> "Letter":
        if self.kind == "T":
            return Letter("T", self.index, -self.exponent)
        return Letter("theta", weight=tuple(-a for a in self.weight))

    def __repr__(self):
        if self.kind == "T":
            return f"T{self.index + 1}" + ("" if self.exponent == 1 else "^-1")
        return f"θ{list(self.weight)}"

    def to_json(self):
        if self.kind == "T":
            return {"T": self.index + 1, "exp": self.exponent}
        return {"theta": list(self.weight)}


def T(i: int, e: int = 1) -> Letter:
    return Letter("T", i, e)


def Theta(x: Sequence[int]) -> Letter:
    return Letter("theta", weight=tuple(x))


BraidWord = tuple  # tuple of Letters, read left to right as a product


def word_inverse(word: Sequence[Letter]) -> BraidWord:
    return tuple(l.inverse() for l in reversed(word))


def _finite_word(rs: RootSystem, v) -> BraidWord:
    return tuple(T(i) for i in v.word)


def canonical_lift(w: ExtAffineWeylElement) -> BraidWord:
    """Positive lift: C(ω s_i1 ··· s_ik) = C(ω) C(s_i1) ··· C(s_ik) with

    * C(s_i) = T_i for finite simple reflections,
    * C(s_0) = θ_θ · C(s_θ)^{-1}, θ the highest short root (t_θ = s_0 s_θ
      with lengths adding, and θ dominant),
    * C(ω) = θ_λ · C(u^{-1})^{-1} for ω = t_λ·u of length zero.
    """
    rs = w.rs
    omega, word = reduced_decomposition(w)
    out: list = list(_omega_lift(omega))
    for i in word:
        out.extend(_simple_lift(rs, i))
    return tuple(out)


def _simple_lift(rs: RootSystem, i: int) -> BraidWord:
    if i > 0:
        return (T(i - 1),)
    theta = rs.highest_coroot_root
    s_theta = rs.reflection(theta)
    return (Theta(theta.weight),) + word_inverse(_finite_word(rs, s_theta))


def _omega_lift(omega: ExtAffineWeylElement) -> BraidWord:
    if omega.is_identity():
        return ()
    lam, u = omega.t_form()
    return (Theta(lam),) + word_inverse(_finite_word(omega.rs, u.inverse()))


# ---------------------------------------------------------------------------
# truncated representation


Vector = dict  # (weight, v-exponent) -> int


@dataclass
class TruncatedHeckeSpace:
    rs: RootSystem
    radius: int
    normalization: str = "v"
    box: frozenset = field(default=frozenset(), repr=False)
    _t_images: dict = field(default_factory=dict, repr=False)

    def in_box(self, x) -> bool:
        return all(abs(self.rs.pairing(x, b)) <= self.radius for b in self.rs.positive_roots)

    def monomials(self) -> list:
        return sorted(self.box)


def _enumerate_box(rs: RootSystem, R: int) -> frozenset:
    # every coordinate is a simple-coroot pairing, so |x_i| <= R
    out = []
    for x in itertools.product(range(-R, R + 1), repeat=rs.rank):
        if all(abs(rs.pairing(x, b)) <= R for b in rs.positive_roots):
            out.append(x)
    return frozenset(out)


def build_dl_representation(rs: RootSystem, box_radius: int, normalization: str = "v") -> TruncatedHeckeSpace:
    """Precompute the T_α images of every box monomial.

    ``normalization="v"`` is the rescaled operator satisfying all four
    relation families; ``"q"`` is the unrescaled one, kept as a control."""
    if box_radius < 2:
        raise ValueError("box_radius must be at least 2 to test any relation instance")
    if normalization not in ("v", "q"):
        raise ValueError("normalization must be 'v' or 'q'")
    space = TruncatedHeckeSpace(rs, box_radius, normalization, _enumerate_box(rs, box_radius))
    for i in range(rs.rank):
        alpha = rs.simple_roots[i]
        table = {}
        for lam in space.box:
            n = lam[i]  # ⟨λ, α_i^∨⟩
            img: dict = {}

            def add(mono, k, c):
                key = (mono, k)
                img[key] = img.get(key, 0) + c

            s_lam = tuple(a - n * b for a, b in zip(lam, alpha))
            # v^{-1}-rescaled: v·s(f) + (v − v^{-1})·D(f);  q-normalized: q·s(f) + (q − 1)·D(f)
            hi, lo = (1, -1) if normalization == "v" else (2, 0)
            add(s_lam, hi, 1)
            if n > 0:
                for k in range(n):
                    m = tuple(a - k * b for a, b in zip(lam, alpha))
                    add(m, hi, 1)
                    add(m, lo, -1)
            elif n < 0:
                for k in range(1, -n + 1):
                    m = tuple(a + k * b for a, b in zip(lam, alpha))
                    add(m, hi, -1)
                    add(m, lo, 1)
            table[lam] = {k: c for k, c in img.items() if c}
        space._t_images[i] = table
    return space


def _apply_T(space: TruncatedHeckeSpace, i: int, e: int, vec: Vector) -> Vector:
    table = space._t_images[i]
    out: dict = {}

    def apply_once(src):
        res: dict = {}
        for (mono, k), c in src.items():
            for (m2, k2), c2 in table[mono].items():
                key = (m2, k + k2)
                res[key] = res.get(key, 0) + c * c2
        return res

    res = apply_once(vec)
    if e == -1:
        # T^{-1} = T − (v − v^{-1})  (v-normalized);  T^{-1} = q^{-1}(T − (q − 1))  (q-normalized)
        if space.normalization == "v":
            corr = ((1, -1), (-1, 1))
            shift = 0
        else:
            corr = ((2, -1), (0, 1))
            shift = -2
        for (mono, k), c in vec.items():
            for dk, dc in corr:
                key = (mono, k + dk)
                res[key] = res.get(key, 0) + dc * c
        if shift:
            res = {(m, k + shift): c for (m, k), c in res.items()}
    elif e != 1:
        raise ValueError("T exponent must be ±1")
    for key, c in res.items():
        if c:
            out[key] = c
    return out


def _apply_theta(space: TruncatedHeckeSpace, x, vec: Vector):
    out = {}
    for (mono, k), c in vec.items():
        m = tuple(a + b for a, b in zip(mono, x))
        if m not in space.box:
            return None
        out[(m, k)] = c
    return out


def apply_word_to(space: TruncatedHeckeSpace, word: Sequence[Letter], vec: Vector):
    """Apply the product l_1 l_2 ··· l_n to ``vec`` (l_n acts first);
    returns None if some intermediate image leaves the box."""
    for letter in reversed(word):
        if letter.kind == "T":
            vec = _apply_T(space, letter.index, letter.exponent, vec)
        else:
            vec = _apply_theta(space, letter.weight, vec)
            if vec is None:
                return None
    return vec


def apply_word(word: Sequence[Letter], space: TruncatedHeckeSpace, monomials: Iterable | None = None) -> dict:
    """Partial operator {monomial: image vector} on the monomials where every
    intermediate image stays in the box."""
    mons = space.monomials() if monomials is None else monomials
    op = {}
    for mono in mons:
        img = apply_word_to(space, word, {(tuple(mono), 0): 1})
        if img is not None:
            op[tuple(mono)] = img
    if not op:
        raise ValueError("empty domain")
    return op


def words_equal(space: TruncatedHeckeSpace, lhs, rhs, monomials=None) -> tuple[int, list]:
    """Compare two words on their common domain.  Returns (number of
    monomials compared, list of monomials where they differ)."""
    mons = space.monomials() if monomials is None else monomials
    checked, bad = 0, []
    for mono in mons:
        a = apply_word_to(space, lhs, {(tuple(mono), 0): 1})
        if a is None:
            continue
        b = apply_word_to(space, rhs, {(tuple(mono), 0): 1})
        if b is None:
            continue
        checked += 1
        if a != b:
            bad.append(tuple(mono))
    return checked, bad


def operator_entries(op: dict) -> dict:
    """Group a partial operator's image vectors into LaurentPoly entries."""
    out = {}
    for src, vec in op.items():
        col: dict = {}
        for (mono, k), c in vec.items():
            col.setdefault(mono, {})[k] = c
        out[src] = {m: LaurentPoly.from_dict(d) for m, d in col.items()}
    return out


# ---------------------------------------------------------------------------
# relation certification


def braid_order(rs: RootSystem, i: int, j: int) -> int:
    prod = rs.cartan_matrix[i][j] * rs.cartan_matrix[j][i]
    return {0: 2, 1: 3, 2: 4, 3: 6}[prod]


def _alternating(a, b, n):
    return tuple(T(a) if k % 2 == 0 else T(b) for k in range(n))


def relation_instances(rs: RootSystem) -> dict:
    """Relation family -> list of (label, lhs word, rhs word)."""
    r = rs.rank
    small = list(itertools.product((-1, 0, 1), repeat=r))
    out: dict = {"braid": [], "lattice": [], "commute": [], "bernstein": []}
    for i in range(r):
        for j in range(i + 1, r):
            n = braid_order(rs, i, j)
            out["braid"].append((f"T{i+1}T{j+1}", _alternating(i, j, n), _alternating(j, i, n)))
    for x in small:
        for y in small:
            xy = tuple(a + b for a, b in zip(x, y))
            out["lattice"].append((f"x={list(x)},y={list(y)}", (Theta(x), Theta(y)), (Theta(xy),)))
    wide = list(itertools.product((-2, -1, 0, 1, 2), repeat=r))
    for i in range(r):
        alpha = rs.simple_roots[i]
        for x in wide:
            if x[i] == 0:
                out["commute"].append((f"a{i+1},x={list(x)}", (T(i), Theta(x)), (Theta(x), T(i))))
            if x[i] == 1:
                xa = tuple(a - b for a, b in zip(x, alpha))
                out["bernstein"].append((f"a{i+1},x={list(x)}", (Theta(x),), (T(i), Theta(xa), T(i))))
    return out


def relation_report(rs: RootSystem, radius: int = 4, normalization: str = "v") -> list[dict]:
    space = build_dl_representation(rs, radius, normalization)
    report = []
    for family, insts in relation_instances(rs).items():
        checked = 0
        failures = []
        for label, lhs, rhs in insts:
            n, bad = words_equal(space, lhs, rhs)
            checked += n
            if bad:
                failures.append({"instance": label, "monomials": [list(m) for m in bad[:3]]})
        report.append({"relation": family, "instances_checked": checked, "failures": failures})
    return report


# ---------------------------------------------------------------------------
# conjugation lemma


@dataclass
class Conjugation:
    beta: int  # finite simple root index (0-based)
    b0: BraidWord
    branch: str  # "omega" or "braid3"
    omega: ExtAffineWeylElement | None = None

    def identity_sides(self, rs: RootSystem) -> tuple[BraidWord, BraidWord]:
        s0 = affine_simple_reflections(rs)[0]
        lhs = canonical_lift(s0)
        rhs = tuple(self.b0) + (T(self.beta),) + word_inverse(self.b0)
        return lhs, rhs


def find_affine_conjugation(rs: RootSystem) -> Conjugation:
    """(β, b0) with C(s_0) = b0·C(s_β)·b0^{-1}.

    With a nontrivial length-zero ω satisfying ω s_β ω^{-1} = s_0, take
    b0 = C(ω).  Otherwise (Ω trivial) pick β with s_0 s_β of order 3 and
    b0 = C(s_β) C(s_0)."""
    gens = affine_simple_reflections(rs)
    s0 = gens[0]
    for om in omega_group(rs):
        if om.is_identity():
            continue
        for b in range(rs.rank):
            if om * gens[b + 1] * om.inverse() == s0:
                return Conjugation(b, canonical_lift(om), "omega", om)
    for b in range(rs.rank):
        sb = gens[b + 1]
        if (s0 * sb) ** 3 == ExtAffineWeylElement.identity(rs) and not (s0 * sb).is_identity():
            b0 = (T(b),) + canonical_lift(s0)
            return Conjugation(b, b0, "braid3")
    raise RuntimeError(f"no conjugation found for {rs.cartan_type}")  # pragma: no cover


def certify_conjugation(rs: RootSystem, radius: int = 4) -> dict:
    conj = find_affine_conjugation(rs)
    space = build_dl_representation(rs, radius)
    lhs, rhs = conj.identity_sides(rs)
    checked, bad = words_equal(space, lhs, rhs)
    return {
        "type": rs.cartan_type,
        "beta": conj.beta + 1,
        "branch": conj.branch,
        "b0": [l.to_json() for l in conj.b0],
        "monomials_checked": checked,
        "failures": [list(m) for m in bad],
    }


def random_lengths_add_pairs(rs: RootSystem, n: int, rng: random.Random, max_len: int = 4):
    """n pairs (u, v) of random elements with ℓ(uv) = ℓ(u) + ℓ(v)."""
    gens = affine_simple_reflections(rs)
    omegas = omega_group(rs)

    def rand_elem():
        w = rng.choice(omegas)
        for _ in range(rng.randint(0, max_len)):
            w = w * rng.choice(gens)
        return w

    out = []
    while len(out) < n:
        u, v = rand_elem(), rand_elem()
        if (u * v).length == u.length + v.length:
            out.append((u, v))
    return out
