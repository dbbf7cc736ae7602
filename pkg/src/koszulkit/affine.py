"""The extended affine Weyl group ``W ⋉ X`` acting on weights at level p.

Elements are stored in the normal form ``v · t_x`` (finite part first).  The
``t_λ · v`` form used when describing restricted dominant weights is
converted on input via ``t_λ · v = v · t_{v^{-1} λ}``.

Translations act through the dot action at a fixed integer ``p > h`` by
adding ``p·x``::

    (v · t_x) • λ = v(λ + ρ + p·x) − ρ
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .roots import Root, RootSystem, Weight, WeylElement


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _check_int(lam):
    if not all(isinstance(x, int) for x in lam):
        raise TypeError(f"weight {lam!r} is not integral")
    return tuple(lam)


@dataclass(frozen=True, eq=False)
class ExtAffineWeylElement:
    finite: WeylElement
    translation: Weight

    @property
    def rs(self) -> RootSystem:
        return self.finite.rs

    @classmethod
    def identity(cls, rs: RootSystem) -> "ExtAffineWeylElement":
        return cls(rs.identity, (0,) * rs.rank)

    @classmethod
    def t(cls, rs: RootSystem, x: Sequence[int]) -> "ExtAffineWeylElement":
        return cls(rs.identity, _check_int(x))

    @classmethod
    def from_t_form(cls, lam: Sequence[int], v: WeylElement) -> "ExtAffineWeylElement":
        """The element ``t_lam · v``."""
        return cls(v, v.inverse()(_check_int(lam)))

    @classmethod
    def finite_element(cls, v: WeylElement) -> "ExtAffineWeylElement":
        return cls(v, (0,) * v.rs.rank)

    def t_form(self) -> tuple[Weight, WeylElement]:
        """(λ, v) with self = t_λ · v."""
        return self.finite(self.translation), self.finite

    def __eq__(self, other):
        return (
            isinstance(other, ExtAffineWeylElement)
            and self.finite == other.finite
            and self.translation == other.translation
        )

    def __hash__(self):
        return hash((self.finite.matrix, self.translation))

    def __mul__(self, other: "ExtAffineWeylElement") -> "ExtAffineWeylElement":
        if self.rs != other.rs:
            raise ValueError("root system mismatch")
        u = other.finite
        return ExtAffineWeylElement(self.finite * u, _add(u.inverse()(self.translation), other.translation))

    def inverse(self) -> "ExtAffineWeylElement":
        v = self.finite
        return ExtAffineWeylElement(v.inverse(), _neg(v(self.translation)))

    def __pow__(self, k: int) -> "ExtAffineWeylElement":
        base = self if k >= 0 else self.inverse()
        out = ExtAffineWeylElement.identity(self.rs)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self.finite.is_identity() and not any(self.translation)

    def act(self, lam: Sequence[int], p: int) -> Weight:
        """Linear (non-dot) action at level p: v(λ + p·x)."""
        return self.finite(tuple(a + p * b for a, b in zip(lam, self.translation)))

    def dot(self, lam: Sequence[int], p: int) -> Weight:
        rs = self.rs
        _check_p(rs, p)
        lam = _check_int(lam)
        shifted = self.act(_add(lam, rs.rho), p)
        return _sub(shifted, rs.rho)

    @cached_property
    def length(self) -> int:
        rs = self.rs
        v, x = self.finite, self.translation
        total = 0
        for a in rs.positive_roots:
            k = rs.pairing(x, a)
            if rs.is_positive_weight(v(a.weight)):
                total += abs(k)
            else:
                total += abs(1 + k)
        return total

    def __repr__(self):
        return f"<{self.rs.cartan_type}: s{list(self.finite.word)}·t{list(self.translation)}>"

    def to_json(self) -> dict:
        lam, v = self.t_form()
        return {
            "finite_word": list(self.finite.word),
            "translation": list(self.translation),
            "t_form_weight": list(lam),
        }


def _check_p(rs: RootSystem, p: int):
    if p <= rs.coxeter_number:
        raise ValueError(f"p = {p} must exceed the Coxeter number {rs.coxeter_number}")


def multiply(a: ExtAffineWeylElement, b: ExtAffineWeylElement) -> ExtAffineWeylElement:
    return a * b


def inverse(a: ExtAffineWeylElement) -> ExtAffineWeylElement:
    return a.inverse()


def dot_action(w: ExtAffineWeylElement, lam: Sequence[int], p: int) -> Weight:
    return w.dot(lam, p)


def length(w: ExtAffineWeylElement) -> int:
    return w.length


# ---------------------------------------------------------------------------
# simple reflections, Omega, reduced words


def affine_simple_reflections(rs: RootSystem) -> list[ExtAffineWeylElement]:
    """[s_0, s_1, ..., s_r]; s_0 is the reflection in the upper wall of the
    fundamental alcove, ``s_0 = t_θ · s_θ`` for θ the highest short root."""
    theta = rs.highest_coroot_root
    s0 = ExtAffineWeylElement(rs.reflection(theta), _neg(theta.weight))
    return [s0] + [ExtAffineWeylElement.finite_element(s) for s in rs.simple_reflections]


def omega_group(rs: RootSystem) -> list[ExtAffineWeylElement]:
    """The length-zero subgroup Ω ≅ X/Y.

    Candidates are ``t_ϖ · v`` with ϖ = 0 or a fundamental weight; the finite
    part is read off from the chamber containing (alcove − ϖ)."""
    h = rs.coxeter_number
    out = []
    cands = [(0,) * rs.rank] + [tuple(int(i == j) for i in range(rs.rank)) for j in range(rs.rank)]
    for lam in cands:
        # rho/h is interior to the fundamental alcove; find v with v^{-1}(rho - h*lam) dominant
        pt = tuple(a - h * b for a, b in zip(rs.rho, lam))
        _, word = rs.dominant_representative(pt)
        v = rs.from_word(word)
        w = ExtAffineWeylElement.from_t_form(lam, v)
        if w.length == 0 and w not in out:
            out.append(w)
    return out


def reduced_decomposition(w: ExtAffineWeylElement) -> tuple[ExtAffineWeylElement, list[int]]:
    """(ω, [i1, ..., ik]) with w = ω · s_i1 ··· s_ik, k = ℓ(w); index 0 is
    the affine reflection, 1..r the finite simple reflections."""
    gens = affine_simple_reflections(w.rs)
    word: list[int] = []
    cur = w
    while cur.length > 0:
        for i, s in enumerate(gens):
            nxt = cur * s
            if nxt.length < cur.length:
                cur = nxt
                word.append(i)
                break
        else:  # pragma: no cover - impossible for a Coxeter system
            raise RuntimeError("no descent found")
    word.reverse()
    return cur, word


def from_affine_word(rs: RootSystem, word: Iterable[int], omega: ExtAffineWeylElement | None = None) -> ExtAffineWeylElement:
    gens = affine_simple_reflections(rs)
    out = omega if omega is not None else ExtAffineWeylElement.identity(rs)
    for i in word:
        out = out * gens[i]
    return out


# ---------------------------------------------------------------------------
# alcove tests


def in_C0(rs: RootSystem, lam: Sequence[int], p: int) -> bool:
    _check_p(rs, p)
    lr = _add(_check_int(lam), rs.rho)
    return all(0 < rs.pairing(lr, a) < p for a in rs.positive_roots)


def in_closure_C0(rs: RootSystem, lam: Sequence[int], p: int) -> bool:
    _check_p(rs, p)
    lr = _add(_check_int(lam), rs.rho)
    return all(0 <= rs.pairing(lr, a) <= p for a in rs.positive_roots)


def is_regular(rs: RootSystem, lam: Sequence[int], p: int) -> bool:
    _check_p(rs, p)
    lr = _add(_check_int(lam), rs.rho)
    return all(rs.pairing(lr, a) % p != 0 for a in rs.positive_roots)


def is_restricted_dominant(rs: RootSystem, lam: Sequence[int], p: int) -> bool:
    _check_p(rs, p)
    return all(0 <= x <= p - 1 for x in _check_int(lam))


def enumerate_W0(rs: RootSystem) -> list[ExtAffineWeylElement]:
    """One element ``t_λ · v`` per v ∈ W, with ⟨λ, α_i^∨⟩ = 0 or 1 according
    to whether v^{-1} α_i is positive or negative."""
    out = []
    for v in rs.enumerate_weyl():
        vi = v.inverse()
        lam = tuple(0 if rs.is_positive_weight(vi(a)) else 1 for a in rs.simple_roots)
        out.append(ExtAffineWeylElement.from_t_form(lam, v))
    return out


def W0_by_search(rs: RootSystem, p: int, radius: int = 2) -> list[ExtAffineWeylElement]:
    """Brute-force oracle: all t_λ·v with |λ_i| <= radius whose dot action
    sends 0 to a restricted dominant weight."""
    import itertools

    out = []
    for v in rs.enumerate_weyl():
        for lam in itertools.product(range(-radius, radius + 1), repeat=rs.rank):
            w = ExtAffineWeylElement.from_t_form(lam, v)
            if is_restricted_dominant(rs, w.dot((0,) * rs.rank, p), p):
                out.append(w)
    return out


def tau0(rs: RootSystem) -> ExtAffineWeylElement:
    return ExtAffineWeylElement.from_t_form(rs.rho, rs.w0)


def tau0_length_by_roots(rs: RootSystem) -> int:
    """Σ_{α>0} (⟨ρ, α^∨⟩ − 1), computed without the length function."""
    return sum(rs.pairing(rs.rho, a) - 1 for a in rs.positive_roots)


# ---------------------------------------------------------------------------
# facets


@dataclass(frozen=True)
class Facet:
    """For each positive root α (in ``rs.positive_roots`` order) either
    ``("wall", n)``: ⟨λ+ρ, α^∨⟩ = n·p, or ``("open", n)``:
    n·p < ⟨λ+ρ, α^∨⟩ < (n+1)·p."""

    rs: RootSystem = field(repr=False)
    p: int
    data: tuple

    def walls(self) -> set:
        return {(i, n) for i, (kind, n) in enumerate(self.data) if kind == "wall"}

    def is_alcove(self) -> bool:
        return all(kind == "open" for kind, _ in self.data)


def facet_of(rs: RootSystem, lam: Sequence[int], p: int) -> Facet:
    _check_p(rs, p)
    lr = _add(_check_int(lam), rs.rho)
    data = []
    for a in rs.positive_roots:
        k = rs.pairing(lr, a)
        if k % p == 0:
            data.append(("wall", k // p))
        else:
            data.append(("open", k // p))
    return Facet(rs, p, tuple(data))


def upper_closure_contains(f: Facet, mu: Sequence[int]) -> bool:
    """Walls of ``f`` must match exactly; along each open strip
    n·p < ⟨μ+ρ, α^∨⟩ <= (n+1)·p, i.e. only the upper wall may be attained."""
    rs, p = f.rs, f.p
    mr = _add(_check_int(mu), rs.rho)
    for a, (kind, n) in zip(rs.positive_roots, f.data):
        k = rs.pairing(mr, a)
        if kind == "wall":
            if k != n * p:
                return False
        elif not (n * p < k <= (n + 1) * p):
            return False
    return True


def translate_simple(w: ExtAffineWeylElement, mu0: Sequence[int], p: int) -> Weight | None:
    """Highest weight of the translated simple module: ``w • μ0`` if it lies
    in the upper closure of the facet of ``w • C0``, else None."""
    rs = w.rs
    if not in_closure_C0(rs, mu0, p):
        raise ValueError(f"{tuple(mu0)} is not in the closure of C0 for p={p}")
    zero = (0,) * rs.rank  # 0 ∈ C0 since p > h
    target = w.dot(mu0, p)
    if upper_closure_contains(facet_of(rs, w.dot(zero, p), p), target):
        return target
    return None


def singular_walls(rs: RootSystem, mu: Sequence[int], p: int) -> set:
    """{(positive root index, n) : ⟨μ+ρ, α^∨⟩ = n·p}."""
    return facet_of(rs, mu, p).walls()


def parabolic_roots(rs: RootSystem, I: Iterable[int]) -> list[Root]:
    I = set(I)
    return [a for a in rs.positive_roots if all(c == 0 or i in I for i, c in enumerate(a.coeffs))]


def is_parabolic_singularity(rs: RootSystem, mu: Sequence[int], I: Iterable[int], p: int) -> bool:
    """True iff μ lies exactly on the walls {(α, 0) : α ∈ R^+_I}."""
    want = {(a.index, 0) for a in parabolic_roots(rs, I)}
    return singular_walls(rs, mu, p) == want


def W0_mu(rs: RootSystem, mu0: Sequence[int], p: int) -> list[ExtAffineWeylElement]:
    return [w for w in enumerate_W0(rs) if translate_simple(w, mu0, p) is not None]


def w0_table(rs: RootSystem, p: int) -> list[dict]:
    """Rows describing W^0: index, normal form, length, τ0-partner, w • 0."""
    _check_p(rs, p)
    W0 = enumerate_W0(rs)
    index = {w: i for i, w in enumerate(W0)}
    t0 = tau0(rs)
    zero = (0,) * rs.rank
    rows = []
    for i, w in enumerate(W0):
        row = {"index": i}
        row.update(w.to_json())
        row["length"] = w.length
        row["tau0_partner"] = index[t0 * w]
        row["dot_zero"] = list(w.dot(zero, p))
        rows.append(row)
    return rows
