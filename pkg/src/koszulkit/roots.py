"""Root data for irreducible reduced crystallographic root systems.

Weights are integer tuples in the fundamental-weight basis, so the pairing
with a coroot is an integer dot product.  Roots are kept both in
simple-root coordinates (for positivity / height) and in weight coordinates
(for acting on weights).  Simple roots are numbered as in Bourbaki.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

Weight = tuple  # integer coordinates in the fundamental-weight basis


def _dynkin(kind: str, n: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared root lengths and edges (0-based) in Bourbaki numbering."""
    chain = [(i, i + 1) for i in range(n - 1)]
    if kind == "A":
        return [2] * n, chain
    if kind == "B":
        return [4] * (n - 1) + [2], chain
    if kind == "C":
        return [2] * (n - 1) + [4], chain
    if kind == "D":
        return [2] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if kind == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        return [2] * n, edges
    if kind == "F":
        return [4, 4, 2, 2], chain
    if kind == "G":
        return [2, 6], chain
    raise ValueError(kind)


_VALID = {
    "A": lambda n: 1 <= n <= 8,
    "B": lambda n: 2 <= n <= 8,
    "C": lambda n: 2 <= n <= 8,
    "D": lambda n: 4 <= n <= 8,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class Root:
    index: int
    coeffs: tuple   # simple-root coordinates
    weight: tuple   # fundamental-weight coordinates
    coroot: tuple   # simple-coroot coordinates

    @property
    def height(self) -> int:
        return sum(self.coeffs)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Element of the finite Weyl group, acting on weight coordinates."""

    rs: "RootSystem" = field(repr=False)
    matrix: tuple

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __call__(self, lam: Sequence[int]) -> Weight:
        return tuple(sum(a * b for a, b in zip(row, lam)) for row in self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if other.rs is not self.rs and other.rs.cartan_type != self.rs.cartan_type:
            raise ValueError("root system mismatch")
        B = other.matrix
        n = len(B)
        m = tuple(
            tuple(sum(row[k] * B[k][j] for k in range(n)) for j in range(n))
            for row in self.matrix
        )
        return WeylElement(self.rs, m)

    def is_identity(self) -> bool:
        return self == self.rs.identity

    @cached_property
    def word(self) -> tuple:
        """A reduced word ``(i1, ..., ik)`` with self = s_i1 ... s_ik."""
        rs = self.rs
        w = self
        word = []
        while True:
            for i in range(rs.rank):
                if not rs.is_positive_weight(w(rs.simple_roots[i])):
                    w = w * rs.simple_reflection(i)
                    word.append(i)
                    break
            else:
                break
        return tuple(reversed(word))

    @cached_property
    def length(self) -> int:
        rs = self.rs
        return sum(1 for r in rs.positive_roots if not rs.is_positive_weight(self(r.weight)))

    def inverse(self) -> "WeylElement":
        return self.rs.from_word(tuple(reversed(self.word)))

    def __repr__(self):
        return f"WeylElement({self.rs.cartan_type}, word={list(self.word)})"


class RootSystem:
    """Cartan data, positive roots, rho, w0 and the Coxeter number of one
    irreducible type.  Built via :func:`build`."""

    def __init__(self, cartan_type: str):
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", cartan_type)
        if not m:
            raise ValueError(f"unknown Cartan type {cartan_type!r}")
        kind, n = m.group(1).upper(), int(m.group(2))
        if not _VALID[kind](n):
            raise ValueError(f"unknown Cartan type {cartan_type!r}")
        self.cartan_type = f"{kind}{n}"
        self.kind = kind
        self.rank = n
        lengths, edges = _dynkin(kind, n)
        self.root_lengths = tuple(lengths)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = lengths[i]
        for i, j in edges:
            gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) // 2
        self.gram = tuple(tuple(r) for r in gram)
        # cartan[i][j] = <alpha_j, alpha_i^vee>
        self.cartan_matrix = tuple(
            tuple(2 * gram[i][j] // lengths[i] for j in range(n)) for i in range(n)
        )
        self.simple_roots = tuple(
            tuple(self.cartan_matrix[i][j] for i in range(n)) for j in range(n)
        )
        self.simple_coroots = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
        self.rho: Weight = (1,) * n
        self._build_roots()
        self.identity = WeylElement(self, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
        self._simple_refl = tuple(self._make_simple_reflection(i) for i in range(n))

    # -- construction ------------------------------------------------------
    def _root_weight(self, coeffs):
        n = self.rank
        return tuple(sum(self.cartan_matrix[i][j] * coeffs[j] for j in range(n)) for i in range(n))

    def _build_roots(self):
        n = self.rank
        simple = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        found = set(simple)
        queue = list(simple)
        while queue:
            b = queue.pop()
            w = self._root_weight(b)
            for i in range(n):
                k = w[i]
                if k == 0:
                    continue
                c = list(b)
                c[i] -= k
                c = tuple(c)
                if all(x >= 0 for x in c) and any(c) and c not in found:
                    found.add(c)
                    queue.append(c)
        ordered = sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))
        roots = []
        for idx, c in enumerate(ordered):
            norm = sum(c[i] * self.gram[i][j] * c[j] for i in range(n) for j in range(n))
            cor = tuple(c[i] * self.root_lengths[i] // norm for i in range(n))
            roots.append(Root(idx, c, self._root_weight(c), cor))
        self.positive_roots = tuple(roots)
        self._root_by_weight = {}
        for r in roots:
            self._root_by_weight[r.weight] = (r.index, 1)
            self._root_by_weight[tuple(-x for x in r.weight)] = (r.index, -1)

    def _make_simple_reflection(self, i: int) -> WeylElement:
        n = self.rank
        a = self.simple_roots[i]
        m = tuple(
            tuple(int(r == c) - (a[r] if c == i else 0) for c in range(n)) for r in range(n)
        )
        return WeylElement(self, m)

    # -- basic queries -----------------------------------------------------
    def __repr__(self):
        return f"RootSystem({self.cartan_type!r})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and other.cartan_type == self.cartan_type

    def __hash__(self):
        return hash(self.cartan_type)

    @property
    def simple_reflections(self) -> tuple:
        return self._simple_refl

    def simple_reflection(self, i: int) -> WeylElement:
        return self._simple_refl[i]

    def from_word(self, word: Sequence[int]) -> WeylElement:
        w = self.identity
        for i in word:
            w = w * self._simple_refl[i]
        return w

    def pairing(self, lam: Sequence[int], coroot) -> int:
        """<lam, coroot>; ``coroot`` is a Root, a root index, or simple-coroot coordinates."""
        if isinstance(coroot, Root):
            coroot = coroot.coroot
        elif isinstance(coroot, int):
            coroot = self.positive_roots[coroot].coroot
        return sum(a * b for a, b in zip(lam, coroot))

    def root_of_weight(self, wt: Sequence[int]) -> tuple[int, int] | None:
        """(positive root index, sign) if ``wt`` is a root, else None."""
        return self._root_by_weight.get(tuple(wt))

    def is_positive_weight(self, root_weight: Sequence[int]) -> bool:
        hit = self._root_by_weight.get(tuple(root_weight))
        if hit is None:
            raise ValueError(f"{root_weight} is not a root")
        return hit[1] > 0

    def reflect(self, lam: Sequence[int], root: Root) -> Weight:
        k = self.pairing(lam, root)
        return tuple(x - k * a for x, a in zip(lam, root.weight))

    def reflection(self, root: Root) -> WeylElement:
        n = self.rank
        cols = [self.reflect(tuple(int(i == j) for i in range(n)), root) for j in range(n)]
        return WeylElement(self, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))

    def weyl_act(self, w: WeylElement, lam: Sequence[int]) -> Weight:
        return w(lam)

    def dominant_representative(self, lam: Sequence[int]) -> tuple[Weight, tuple]:
        """(dominant weight in the orbit, word u) with lam = u(dominant)."""
        lam = tuple(lam)
        word = []
        while True:
            for i in range(self.rank):
                if lam[i] < 0:
                    lam = self._simple_refl[i](lam)
                    word.append(i)
                    break
            else:
                return lam, tuple(word)

    # -- distinguished elements -------------------------------------------
    @cached_property
    def w0(self) -> WeylElement:
        lam = self.rho
        word = []
        while True:
            for i in range(self.rank):
                if lam[i] > 0:
                    lam = self._simple_refl[i](lam)
                    word.append(i)
                    break
            else:
                break
        return self.from_word(tuple(reversed(word)))

    @cached_property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=lambda r: r.height)

    @cached_property
    def highest_coroot_root(self) -> Root:
        """The positive root whose coroot is the highest coroot (the highest
        short root).  Its hyperplane bounds the fundamental alcove."""
        return max(self.positive_roots, key=lambda r: sum(r.coroot))

    @cached_property
    def coxeter_number(self) -> int:
        return self.pairing(self.rho, self.highest_coroot_root) + 1

    @cached_property
    def weyl_order(self) -> int:
        # exponents are the dual partition of the root-height distribution;
        # |W| is the product of the degrees (exponent + 1)
        counts: dict[int, int] = {}
        for r in self.positive_roots:
            counts[r.height] = counts.get(r.height, 0) + 1
        order = 1
        for m in counts:
            order *= (m + 1) ** (counts[m] - counts.get(m + 1, 0))
        return order

    @cached_property
    def fundamental_group_order(self) -> int:
        """|X/Y| = det of the Cartan matrix."""
        from .linalg import QQ, Matrix

        m = Matrix.from_rows(QQ, self.cartan_matrix)
        # determinant via elimination
        rows = [list(r) for r in m.rows]
        n = len(rows)
        det = QQ.one
        for c in range(n):
            piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
            if piv is None:
                return 0
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                det = -det
            det *= rows[c][c]
            for r in range(c + 1, n):
                f = rows[r][c] / rows[c][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
        return int(det)

    def enumerate_weyl(self, limit: int = 200_000) -> list[WeylElement]:
        """All elements of W, in breadth-first (length) order."""
        if self.weyl_order > limit:
            raise ValueError(f"|W({self.cartan_type})| = {self.weyl_order} exceeds limit {limit}")
        seen = {self.identity.matrix: self.identity}
        frontier = [self.identity]
        out = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self._simple_refl:
                    u = w * s
                    if u.matrix not in seen:
                        seen[u.matrix] = u
                        nxt.append(u)
                        out.append(u)
            frontier = nxt
        return out

    def to_json(self) -> dict:
        return {
            "cartan_type": self.cartan_type,
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "simple_roots": [list(r) for r in self.simple_roots],
            "simple_coroots": [list(r) for r in self.simple_coroots],
            "positive_roots": [
                {"coeffs": list(r.coeffs), "weight": list(r.weight), "coroot": list(r.coroot)}
                for r in self.positive_roots
            ],
            "rho": list(self.rho),
            "w0": list(self.w0.word),
            "coxeter_number": self.coxeter_number,
        }


_CACHE: dict[str, RootSystem] = {}


def build(cartan_type: str) -> RootSystem:
    rs = RootSystem(cartan_type)
    return _CACHE.setdefault(rs.cartan_type, rs)
