"""Exact dense/sparse linear algebra over QQ and GF(p).

Everything downstream (cohomology tables, resolutions, radicals, Hecke
operators) reduces to row echelon computations here.  The base field of the
representation theory this package models is an algebraically closed field
of positive characteristic, but every computation we perform is a linear
system with coefficients in the prime field (or in QQ), so the closure never
enters.

Two representations coexist:

* ``Matrix`` / ``Subspace``: immutable, dense, canonical.  Used at API
  boundaries and in tests.
* sparse vectors ``dict[int, value]``: used by the hot loops (resolutions,
  dg-module cohomology).  ``echelon`` is the single elimination routine both
  paths share.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"GF({self.p}): modulus is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} is not defined in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        # after ring operations on already-converted elements
        return x if self.p is None else x % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def to_json(self, x):
        if self.p is None:
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return int(x)

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    @classmethod
    def parse(cls, s) -> "Field":
        if isinstance(s, Field):
            return s
        if s is None or s in ("QQ", "Q"):
            return QQ
        if isinstance(s, int):
            return GF(s)
        s = str(s).strip()
        if s.upper().startswith("GF(") and s.endswith(")"):
            return GF(int(s[3:-1]))
        if s.isdigit():
            return GF(int(s))
        raise ValueError(f"unknown field {s!r}")


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# sparse kernel

Vec = dict  # sparse vector: column -> nonzero field element


def vec_add(u: Vec, v: Vec, F: Field, c=1) -> Vec:
    """u + c*v."""
    out = dict(u)
    for k, x in v.items():
        y = F.norm(out.get(k, 0) + c * x)
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_scale(v: Vec, c, F: Field) -> Vec:
    if not c:
        return {}
    return {k: F.norm(c * x) for k, x in v.items()}


class Echelon:
    """Incrementally maintained reduced row echelon form of sparse rows.

    Pivot rows are normalized (pivot entry 1) and every pivot column is zero
    in all other pivot rows.  The pivot of a row is its smallest column.
    """

    def __init__(self, F: Field):
        self.F = F
        self.rows: dict[int, Vec] = {}  # pivot column -> row

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        F = self.F
        r = dict(v)
        for c in sorted(k for k in r if k in self.rows):
            x = r.get(c)
            if x:
                r = vec_add(r, self.rows[c], F, -x)
        return r

    def add(self, v: Vec) -> Vec | None:
        """Insert ``v``; return the new normalized pivot row, or None if
        ``v`` was already in the span."""
        F = self.F
        r = self.reduce(v)
        if not r:
            return None
        piv = min(r)
        r = vec_scale(r, F.inv(r[piv]), F)
        for c, row in self.rows.items():
            x = row.get(piv)
            if x:
                self.rows[c] = vec_add(row, r, F, -x)
        self.rows[piv] = r
        return r

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[Vec]:
        return [self.rows[c] for c in sorted(self.rows)]

    def pivots(self) -> list[int]:
        return sorted(self.rows)


def echelon(rows: Iterable[Vec], F: Field) -> Echelon:
    e = Echelon(F)
    for r in rows:
        e.add(r)
    return e


def sparse_kernel(columns: Sequence[Vec], F: Field) -> list[Vec]:
    """Basis of ``{x : sum_i x_i * columns[i] = 0}`` (sparse, canonical RREF)."""
    n = len(columns)
    if n == 0:
        return []
    # augment with identity; put the identity part on high columns
    shift = 1 + max((max(c) for c in columns if c), default=-1)
    e = Echelon(F)
    for i, c in enumerate(columns):
        row = dict(c)
        row[shift + i] = F.one
        e.add(row)
    ker = [
        {k - shift: x for k, x in row.items()}
        for piv, row in sorted(e.rows.items())
        if piv >= shift
    ]
    return echelon(ker, F).basis()


def sparse_solve(columns: Sequence[Vec], target: Vec, F: Field) -> Vec | None:
    """Some ``x`` with ``sum_i x_i * columns[i] == target``, or None."""
    if not target:
        return {}
    shift = 1 + max(
        [max(c) for c in columns if c] + [max(target)], default=-1
    )
    e = Echelon(F)
    for i, c in enumerate(columns):
        row = dict(c)
        row[shift + i] = F.one
        e.add(row)
    r = e.reduce(target)
    if any(k < shift for k in r):
        return None
    # target - sum(coeffs) reduces to r, so target = -r-part
    return {k - shift: F.norm(-x) for k, x in r.items()}


def sparse_rank(rows: Iterable[Vec], F: Field) -> int:
    return len(echelon(rows, F))


# ---------------------------------------------------------------------------
# dense immutable types


def _to_sparse(row: Sequence) -> Vec:
    return {j: x for j, x in enumerate(row) if x}


def _to_dense(v: Vec, n: int, F: Field) -> tuple:
    z = F.zero
    return tuple(v.get(j, z) for j in range(n))


@dataclass(frozen=True)
class Matrix:
    field: Field
    nrows: int
    ncols: int
    rows: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("entry count does not match rows x cols")

    @classmethod
    def from_rows(cls, F: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = [tuple(F(x) for x in r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(F, len(rows), ncols, tuple(rows))

    @classmethod
    def zero(cls, F: Field, r: int, c: int) -> "Matrix":
        z = F.zero
        return cls(F, r, c, tuple((z,) * c for _ in range(r)))

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        return cls.from_rows(F, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_sparse_rows(cls, F: Field, rows: Sequence[Vec], ncols: int) -> "Matrix":
        return cls(F, len(rows), ncols, tuple(_to_dense(r, ncols, F) for r in rows))

    def sparse_rows(self) -> list[Vec]:
        return [_to_sparse(r) for r in self.rows]

    def sparse_columns(self) -> list[Vec]:
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if x:
                    cols[j][i] = x
        return cols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols)))

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        F = self.field
        return Matrix(F, self.nrows, self.ncols, tuple(
            tuple(F.norm(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F(c)
        return Matrix(F, self.nrows, self.ncols, tuple(tuple(F.norm(c * a) for a in r) for r in self.rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        F = self.field
        cols = other.sparse_columns()
        out = []
        for r in self.rows:
            sr = _to_sparse(r)
            out.append(tuple(F.norm(sum(sr[k] * x for k, x in c.items() if k in sr)) for c in cols))
        return Matrix(F, self.nrows, other.ncols, tuple(out))

    def apply(self, v: Sequence) -> tuple:
        F = self.field
        return tuple(F.norm(sum(a * F(b) for a, b in zip(r, v))) for r in self.rows)

    def rref(self) -> tuple["Matrix", int]:
        e = echelon(self.sparse_rows(), self.field)
        basis = e.basis()
        rows = basis + [{}] * (self.nrows - len(basis))
        return Matrix.from_sparse_rows(self.field, rows, self.ncols), len(basis)

    def rank(self) -> int:
        return len(echelon(self.sparse_rows(), self.field))

    def kernel(self) -> "Subspace":
        return Subspace.from_sparse(self.field, self.ncols, sparse_kernel(self.sparse_columns(), self.field))

    def column_space(self) -> "Subspace":
        return Subspace.from_sparse(self.field, self.nrows, self.sparse_columns())

    def row_space(self) -> "Subspace":
        return Subspace.from_sparse(self.field, self.ncols, self.sparse_rows())

    def solve(self, b: Sequence) -> tuple | None:
        F = self.field
        x = sparse_solve(self.sparse_columns(), _to_sparse([F(t) for t in b]), F)
        return None if x is None else _to_dense(x, self.ncols, F)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("not square")
        n = self.nrows
        F = self.field
        cols = []
        for j in range(n):
            x = self.solve([int(i == j) for i in range(n)])
            if x is None:
                raise ZeroDivisionError("matrix is singular")
            cols.append(x)
        return Matrix(F, n, n, tuple(zip(*cols)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field^ambient_dim`` stored by its RREF basis, so that
    equal subspaces compare equal."""

    field: Field
    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def from_sparse(cls, F: Field, n: int, vectors: Iterable[Vec]) -> "Subspace":
        e = echelon(vectors, F)
        return cls(F, n, tuple(_to_dense(r, n, F) for r in e.basis()))

    @classmethod
    def span(cls, F: Field, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls.from_sparse(F, n, (_to_sparse([F(x) for x in v]) for v in vectors))

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, ())

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls.span(F, n, Matrix.identity(F, n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sparse_basis(self) -> list[Vec]:
        return [_to_sparse(b) for b in self.basis]

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise ValueError("ambient space mismatch")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_sparse(self.field, self.ambient_dim, self.sparse_basis() + other.sparse_basis())

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        F = self.field
        a, b = self.sparse_basis(), other.sparse_basis()
        # sum x_i a_i - sum y_j b_j = 0
        cols = a + [vec_scale(v, -1, F) for v in b]
        rel = sparse_kernel(cols, F)
        vecs = []
        for x in rel:
            w: Vec = {}
            for i, c in x.items():
                if i < len(a):
                    w = vec_add(w, a[i], F, c)
            vecs.append(w)
        return Subspace.from_sparse(F, self.ambient_dim, vecs)

    __and__ = intersection

    def contains(self, v) -> bool:
        F = self.field
        if isinstance(v, Subspace):
            self._check(v)
            return all(self.contains(b) for b in v.basis)
        e = Echelon(F)
        for b in self.sparse_basis():
            e.add(b)
        return e.contains(_to_sparse([F(x) for x in v]))

    def quotient_dim(self, sub: "Subspace") -> int:
        """dim(self / (self ∩ sub))."""
        return self.dim - self.intersection(sub).dim

    def coordinates(self, v) -> tuple | None:
        """Coefficients of ``v`` in ``self.basis``, or None if not contained."""
        F = self.field
        return Matrix(F, self.ambient_dim, self.dim, tuple(zip(*self.basis)) if self.basis else tuple(() for _ in range(self.ambient_dim))).solve(v)


def rref(m: Matrix) -> tuple[Matrix, int]:
    return m.rref()


def kernel_basis(m: Matrix) -> Subspace:
    return m.kernel()


def subspace_ops(a: Subspace, b: Subspace) -> dict:
    a._check(b)
    return {
        "sum": a + b,
        "intersection": a & b,
        "quotient_dim": a.quotient_dim(b),
        "contains": a.contains(b),
    }
