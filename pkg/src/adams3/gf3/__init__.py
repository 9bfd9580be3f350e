"""Exact sparse linear algebra over GF(3).

This is the compute kernel for every resolution, page turn and cochain
computation in the package.  Matrices are stored sparsely; elimination
runs on dense byte rows through a backend selected at import time
(see :mod:`adams3.gf3.backend`).

All values are immutable after construction and every operation is a pure
function, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .backend import BACKEND, rref_rows

__all__ = [
    "BACKEND",
    "F3Matrix",
    "Subspace",
    "rref",
    "kernel_basis",
    "solve",
    "quotient_basis",
]


def _norm(c: int) -> int:
    return c % 3


# scalar arithmetic of the field with three elements
def add(a: int, b: int) -> int:
    return (a + b) % 3


def mul(a: int, b: int) -> int:
    return (a * b) % 3


def neg(a: int) -> int:
    return (-a) % 3


def inv(a: int) -> int:
    """Multiplicative inverse: 1 and 2 are self-inverse; 0 has none."""
    a %= 3
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(3)")
    return a


@dataclass(frozen=True)
class F3Matrix:
    """Sparse matrix over GF(3): entries maps (row, col) -> nonzero residue."""

    n_rows: int
    n_cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            v = _norm(v)
            if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
                raise ValueError(f"entry ({r},{c}) outside {self.n_rows}x{self.n_cols}")
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows) -> "F3Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v % 3:
                    entries[(i, j)] = v % 3
        return cls(len(rows), ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "F3Matrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def dense_rows(self) -> list[bytearray]:
        rows = [bytearray(self.n_cols) for _ in range(self.n_rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.dense_rows()]

    def row(self, i: int) -> tuple[int, ...]:
        out = [0] * self.n_cols
        for (r, c), v in self.entries.items():
            if r == i:
                out[c] = v
        return tuple(out)

    def apply(self, vec) -> tuple[int, ...]:
        """Matrix-vector product m @ vec over GF(3)."""
        if len(vec) != self.n_cols:
            raise ValueError("vector length != n_cols")
        out = [0] * self.n_rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] = (out[r] + v * vec[c]) % 3
        return tuple(out)

    def transpose(self) -> "F3Matrix":
        return F3Matrix(self.n_cols, self.n_rows, {(c, r): v for (r, c), v in self.entries.items()})

    def nnz(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(3)^ambient_dim given by reduced-echelon basis rows."""

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors) -> "Subspace":
        rows = [bytearray(bytes(v[c] % 3 for c in range(ambient_dim))) for v in vectors]
        rref_rows(rows, ambient_dim)
        basis = tuple(tuple(r) for r in rows if any(r))
        return cls(ambient_dim, basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivot_cols(self) -> list[int]:
        out = []
        for row in self.basis:
            for j, v in enumerate(row):
                if v:
                    out.append(j)
                    break
        return out

    def reduce(self, vec) -> tuple[int, ...]:
        """Residual of vec after subtracting its projection onto the basis."""
        v = list(x % 3 for x in vec)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length != ambient_dim")
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            c = v[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        v[j] = (v[j] - c * x) % 3
        return tuple(v)

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_vectors(self.ambient_dim, list(self.basis) + list(other.basis))


def rref(m: F3Matrix) -> tuple[F3Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns of m."""
    rows = m.dense_rows()
    pivots = rref_rows(rows, m.n_cols)
    entries = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                entries[(i, j)] = v
    return F3Matrix(m.n_rows, m.n_cols, entries), len(pivots), pivots


def kernel_basis(m: F3Matrix) -> Subspace:
    """Basis of {v : m @ v = 0}, dimension n_cols - rank(m)."""
    rows = m.dense_rows()
    pivots = rref_rows(rows, m.n_cols)
    pivot_set = set(pivots)
    free_cols = [j for j in range(m.n_cols) if j not in pivot_set]
    vectors = []
    for f in free_cols:
        v = [0] * m.n_cols
        v[f] = 1
        for i, p in enumerate(pivots):
            # row i reads  x_p + sum coeff * x_free = 0
            v[p] = (-rows[i][f]) % 3
        vectors.append(tuple(v))
    return Subspace.from_vectors(m.n_cols, vectors)


def solve(m: F3Matrix, b) -> tuple[int, ...] | None:
    """One solution x of m @ x = b, or None when b is not in the image."""
    if len(b) != m.n_rows:
        raise ValueError("rhs length != n_rows")
    width = m.n_cols + 1
    rows = [bytearray(width) for _ in range(m.n_rows)]
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    for r, v in enumerate(b):
        rows[r][m.n_cols] = v % 3
    pivots = rref_rows(rows, width)
    if m.n_cols in pivots:
        return None
    x = [0] * m.n_cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][m.n_cols]
    return tuple(x)


def quotient_basis(ambient: Subspace, sub: Subspace) -> list[tuple[int, ...]]:
    """Coset representatives spanning ambient/sub (sub must lie in ambient)."""
    if ambient.ambient_dim != sub.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    for row in sub.basis:
        if not ambient.contains(row):
            raise ValueError(f"subspace vector {row} not contained in ambient space")
    reps: list[tuple[int, ...]] = []
    span = [bytearray(bytes(r)) for r in sub.basis]
    dim = sub.dim
    for row in ambient.basis:
        candidate = [bytearray(bytes(r)) for r in span] + [bytearray(bytes(row))]
        pivots = rref_rows(candidate, ambient.ambient_dim)
        if len(pivots) > dim:
            reps.append(tuple(row))
            span = candidate
            dim = len(pivots)
    return reps
