"""Exact matrices over a semiring, morphisms of the free monoid, and block helpers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .semiring import NINF, PINF, CarrierError, Special, Value, format_value, negate_value

Word = tuple  # tuple of 1-based letter indices


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    semiring: object
    rows: tuple

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ShapeError("matrices must have at least one row and one column")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ShapeError("ragged matrix rows")

    @classmethod
    def of(cls, semiring, rows: Iterable[Iterable[Value]]) -> "Matrix":
        return cls(semiring, tuple(tuple(r) for r in rows))

    @classmethod
    def row(cls, semiring, entries: Iterable[Value]) -> "Matrix":
        return cls(semiring, (tuple(entries),))

    @classmethod
    def column(cls, semiring, entries: Iterable[Value]) -> "Matrix":
        return cls(semiring, tuple((e,) for e in entries))

    @classmethod
    def identity(cls, semiring, n: int) -> "Matrix":
        z, o = semiring.zero, semiring.one
        return cls(semiring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, semiring, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(semiring, ((semiring.zero,) * cols,) * rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list:
        return [x for r in self.rows for x in r]

    def is_zero(self) -> bool:
        z = self.semiring.zero
        return all(x == z for x in self.entries())

    def validate(self) -> "Matrix":
        for x in self.entries():
            if not self.semiring.contains(x):
                raise CarrierError(f"{format_value(x) if isinstance(x, (int, Special)) else x!r} "
                                   f"is not an element of {self.semiring.name}")
        return self

    def transpose(self) -> "Matrix":
        return Matrix(self.semiring, tuple(zip(*self.rows)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __str__(self):
        lab = self.semiring.label
        return "\n".join(" ".join(lab(x) for x in r) for r in self.rows)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A.semiring != B.semiring:
        raise ShapeError(f"semiring mismatch: {A.semiring.name} vs {B.semiring.name}")
    if A.ncols != B.nrows:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    s = A.semiring
    add, mul, zero = s.add, s.mul, s.zero
    cols = list(zip(*B.rows))
    out = []
    for arow in A.rows:
        orow = []
        for bcol in cols:
            acc = zero
            for a, b in zip(arow, bcol):
                if a == zero or b == zero:
                    continue
                acc = add(acc, mul(a, b))
            orow.append(acc)
        out.append(tuple(orow))
    return Matrix(s, tuple(out))


def mat_pow(A: Matrix, k: int) -> Matrix:
    result = Matrix.identity(A.semiring, A.nrows)
    base = A
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


def place_blocks(semiring, nrows: int, ncols: int, blocks: Sequence[tuple[int, int, Matrix]]) -> Matrix:
    """Zero matrix of the given size with each ``(row, col, M)`` copied in at that offset."""
    grid = [[semiring.zero] * ncols for _ in range(nrows)]
    for r0, c0, M in blocks:
        for i, row in enumerate(M.rows):
            grid[r0 + i][c0:c0 + len(row)] = row
    return Matrix.of(semiring, grid)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ShapeError("block_diag needs at least one block")
    s = blocks[0].semiring
    placed, off = [], 0
    for B in blocks:
        if B.nrows != B.ncols:
            raise ShapeError(f"diagonal block of shape {B.shape} is not square")
        if B.semiring != s:
            raise ShapeError("diagonal blocks over different semirings")
        placed.append((off, off, B))
        off += B.nrows
    return place_blocks(s, off, off, placed)


def hconcat(parts: Sequence[Matrix]) -> Matrix:
    return Matrix(parts[0].semiring, tuple(sum((p.rows[i] for p in parts), ()) for i in range(parts[0].nrows)))


def vec_flatten(A: Matrix) -> Matrix:
    if A.nrows != A.ncols:
        raise ShapeError("vec expects a square matrix")
    return Matrix.row(A.semiring, A.entries())


def zmax_norm(A: Matrix):
    """Largest absolute value among the finite entries; None when there is none."""
    name = A.semiring.name
    if name not in ("zmax", "zmin"):
        raise ValueError(f"norm is defined for zmax/zmin, not {name}")
    finite = [abs(x) for x in A.entries() if not isinstance(x, Special)]
    return max(finite) if finite else None


def proportional(u: Matrix, v: Matrix):
    """The integer shift ``lam`` with ``u = lam + v`` entrywise (zmax/zmin), else None."""
    if u.semiring.name not in ("zmax", "zmin") or u.semiring != v.semiring:
        raise ValueError("proportionality is defined for zmax/zmin matrices of one semiring")
    if u.shape != v.shape:
        raise ShapeError("proportional expects equal shapes")
    lam = None
    for x, y in zip(u.entries(), v.entries()):
        if isinstance(x, Special) or isinstance(y, Special):
            if x != y:
                return None
            continue
        if lam is None:
            lam = x - y
        elif x - y != lam:
            return None
    return 0 if lam is None else lam


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    """A morphism from words over r letters to n x n matrices, given by its generators."""

    semiring: object
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise ShapeError("a morphism needs at least one generator")
        n = self.generators[0].nrows
        for G in self.generators:
            if G.shape != (n, n):
                raise ShapeError(f"generator of shape {G.shape}, expected {(n, n)}")
            if G.semiring != self.semiring:
                raise ShapeError("generators over different semirings")

    @classmethod
    def of(cls, semiring, gens: Iterable) -> "Morphism":
        gens = tuple(g if isinstance(g, Matrix) else Matrix.of(semiring, g) for g in gens)
        return cls(semiring, gens)

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def n(self) -> int:
        return self.generators[0].nrows

    def gen(self, letter: int) -> Matrix:
        if not 1 <= letter <= self.r:
            raise ValueError(f"letter {letter} outside 1..{self.r}")
        return self.generators[letter - 1]

    def __call__(self, word: Sequence[int]) -> Matrix:
        return apply_morphism(self, word)

    def swapped(self, i: int, j: int) -> "Morphism":
        g = list(self.generators)
        g[i - 1], g[j - 1] = g[j - 1], g[i - 1]
        return Morphism(self.semiring, tuple(g))


def apply_morphism(mu: Morphism, word: Sequence[int]) -> Matrix:
    result = Matrix.identity(mu.semiring, mu.n)
    for a in word:
        result = result @ mu.gen(a)
    return result


def diag_morphism(mus: Sequence[Morphism]) -> Morphism:
    r = mus[0].r
    if any(m.r != r for m in mus):
        raise ShapeError("diag of morphisms over different alphabets")
    return Morphism(mus[0].semiring, tuple(block_diag([m.gen(a) for m in mus]) for a in range(1, r + 1)))


def negate_matrix(A: Matrix, target) -> Matrix:
    """Entrywise sign change, mapping a zmax matrix to zmin or back."""
    return Matrix.of(target, [[negate_value(x) for x in r] for r in A.rows])


__all__ = [
    "Matrix", "Morphism", "ShapeError", "Word", "mat_mul", "mat_pow", "block_diag", "place_blocks",
    "hconcat", "vec_flatten", "zmax_norm", "proportional", "apply_morphism", "diag_morphism",
    "negate_matrix", "NINF", "PINF",
]
