"""Exact integer linear algebra over Python ints.

Everything here is dense and exact: Smith normal form with both transforms,
integer solvability of ``M z = b`` with a certificate either way, cokernel
invariants and canonical class coordinates, and a check that a matrix induces
an isomorphism between two cokernels.

Vectors are columns and matrices act by left multiplication, so ``im(M)`` is
``{M z : z integer}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix with row and column labels."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __init__(self, rows, cols, entries):
        rows, cols = tuple(rows), tuple(cols)
        entries = tuple(tuple(int(x) for x in r) for r in entries)
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("matrix labels must be distinct per axis")
        if len(entries) != len(rows) or any(len(r) != len(cols) for r in entries):
            raise DimensionError(f"entries do not match a {len(rows)}x{len(cols)} shape")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        m = len(entries)
        n = len(entries[0]) if m else (ncols or 0)
        return cls([str(i) for i in range(m)], [str(j) for j in range(n)], entries)

    @classmethod
    def identity(cls, labels: Sequence[str]) -> "IntMatrix":
        n = len(labels)
        return cls(labels, labels, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __getitem__(self, key):
        r, c = key
        if isinstance(r, str):
            r = self.rows.index(r)
        if isinstance(c, str):
            c = self.cols.index(c)
        return self.entries[r][c]

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.shape[1] != other.shape[0]:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return IntMatrix(self.rows, other.cols, matmul(self.entries, other.entries, other.shape[1]))
        vec = list(other)
        if len(vec) != self.shape[1]:
            raise DimensionError(f"cannot multiply {self.shape} by vector of length {len(vec)}")
        return [sum(a * x for a, x in zip(row, vec)) for row in self.entries]

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntMatrix(
            self.rows, self.cols, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def minus_identity(self) -> "IntMatrix":
        if self.shape[0] != self.shape[1]:
            raise DimensionError("matrix is not square")
        return IntMatrix(
            self.rows, self.cols, [[a - (i == j) for j, a in enumerate(r)] for i, r in enumerate(self.entries)]
        )

    def submatrix(self, row_labels: Sequence[str], col_labels: Sequence[str]) -> "IntMatrix":
        ri = [self.rows.index(r) for r in row_labels]
        ci = [self.cols.index(c) for c in col_labels]
        return IntMatrix(row_labels, col_labels, [[self.entries[i][j] for j in ci] for i in ri])


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], ncols: Optional[int] = None) -> list[list[int]]:
    if ncols is None:
        ncols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else [()] * ncols
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _as_rows(m) -> list[list[int]]:
    if isinstance(m, IntMatrix):
        return m.tolist()
    return [[int(x) for x in r] for r in m]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: list[list[int]]
    D: list[list[int]]
    V: list[list[int]]
    nrows: int
    ncols: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(self.nrows, self.ncols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def verify(self, m) -> None:
        """Raise AssertionError unless every Smith form invariant holds for `m`."""
        m = _as_rows(m)
        assert matmul(matmul(self.U, m, self.ncols), self.V, self.ncols) == self.D, "U M V != D"
        assert abs(determinant(self.U)) == 1, "U is not unimodular"
        assert abs(determinant(self.V)) == 1, "V is not unimodular"
        for i in range(self.nrows):
            for j in range(self.ncols):
                if i != j:
                    assert self.D[i][j] == 0, "D is not diagonal"
        diag = self.diagonal
        assert all(d >= 0 for d in diag), "negative invariant factor"
        r = self.rank
        assert all(d != 0 for d in diag[:r]) and all(d == 0 for d in diag[r:]), "zeros not last"
        for a, b in zip(diag[:r], diag[1:r]):
            assert b % a == 0, f"divisibility chain broken: {a} does not divide {b}"


def smith_normal_form(m) -> SmithDecomposition:
    """Smith normal form of an integer matrix together with both transforms.

    At each stage the pivot is the entry of smallest nonzero absolute value in
    the remaining block (first in row-major order on ties). Rows and columns
    through the pivot are cleared by Euclidean steps; if the pivot then fails
    to divide some entry of the block, that entry's row is added to the pivot
    row and the stage repeats with a strictly smaller pivot.
    """
    a = _as_rows(m)
    nr = len(a)
    nc = len(a[0]) if nr else (m.shape[1] if isinstance(m, IntMatrix) else 0)
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def min_pivot(t):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    for t in range(min(nr, nc)):
        pos = min_pivot(t)
        if pos is None:
            break
        while True:
            swap_rows(t, pos[0])
            swap_cols(t, pos[1])
            p = a[t][t]
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            remainder = None
            for i in range(t + 1, nr):
                if a[i][t] and (remainder is None or abs(a[i][t]) < abs(a[remainder[0]][remainder[1]])):
                    remainder = (i, t)
            for j in range(t + 1, nc):
                if a[t][j] and (remainder is None or abs(a[t][j]) < abs(a[remainder[0]][remainder[1]])):
                    remainder = (t, j)
            if remainder is not None:
                pos = remainder
                continue
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
            pos = (t, t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(U, a, V, nr, nc)


@dataclass(frozen=True)
class Obstruction:
    """A linear functional proving ``b`` is not in the image of ``M``.

    ``functional @ M`` is congruent to 0 modulo `modulus` while
    ``functional @ b`` is not. A modulus of 0 means exact equality: the
    functional kills every column of ``M`` yet pairs nonzero with ``b``.
    """

    index: int
    modulus: int
    value: int
    functional: list[int]

    @property
    def residue(self) -> int:
        return self.value % self.modulus if self.modulus else self.value

    def verify(self, m, b: Sequence[int]) -> bool:
        rows = _as_rows(m)
        ncols = len(rows[0]) if rows else 0
        img = [sum(u * rows[i][j] for i, u in enumerate(self.functional)) for j in range(ncols)]
        val = sum(u * x for u, x in zip(self.functional, b))
        if self.modulus:
            return all(x % self.modulus == 0 for x in img) and val % self.modulus != 0
        return all(x == 0 for x in img) and val != 0

    def describe(self) -> str:
        if self.modulus:
            return f"coordinate {self.index}: {self.value} is not divisible by {self.modulus} (residue {self.residue})"
        return f"coordinate {self.index} lies beyond the rank but equals {self.value}, not 0"


@dataclass(frozen=True)
class Solvability:
    solvable: bool
    certificate: Optional[list[int]] = None
    obstruction: Optional[Obstruction] = None

    def __bool__(self):
        return self.solvable


def in_image(m, b: Sequence[int], snf: Optional[SmithDecomposition] = None) -> Solvability:
    """Decide whether ``M z = b`` has an integer solution.

    Returns the solution ``z`` as certificate, or an `Obstruction`.
    """
    rows = _as_rows(m)
    nr = len(rows)
    nc = len(rows[0]) if nr else (m.shape[1] if isinstance(m, IntMatrix) else 0)
    b = [int(x) for x in b]
    if len(b) != nr:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {nr}")
    snf = snf or smith_normal_form(m)
    ub = [sum(u * x for u, x in zip(row, b)) for row in snf.U]
    diag = snf.diagonal
    y = [0] * nc
    for i in range(nr):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return Solvability(False, obstruction=Obstruction(i, 0, ub[i], list(snf.U[i])))
        elif ub[i] % d:
            return Solvability(False, obstruction=Obstruction(i, d, ub[i], list(snf.U[i])))
        else:
            y[i] = ub[i] // d
    z = [sum(v * yy for v, yy in zip(row, y)) for row in snf.V]
    return Solvability(True, certificate=z)


@dataclass(frozen=True)
class CokernelInvariants:
    torsion: list[int]
    free_rank: int

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def coker_invariants(m, snf: Optional[SmithDecomposition] = None) -> CokernelInvariants:
    snf = snf or smith_normal_form(m)
    torsion = [d for d in snf.diagonal if d > 1]
    return CokernelInvariants(torsion, snf.nrows - snf.rank)


@dataclass(frozen=True)
class CokerClass:
    """Canonical coordinates of a vector's class in ``coker(M)``.

    Torsion coordinates are reduced into ``[0, d)``; free coordinates are kept
    as integers. Two vectors have equal classes iff their coordinates agree.
    """

    torsion_moduli: tuple[int, ...]
    torsion: tuple[int, ...]
    free: tuple[int, ...]


def _class_coordinates(snf: SmithDecomposition, x: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    w = [sum(u * xx for u, xx in zip(row, x)) for row in snf.U]
    diag = snf.diagonal
    moduli, tors, free = [], [], []
    for i in range(snf.nrows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            free.append(w[i])
        elif d > 1:
            moduli.append(d)
            tors.append(w[i] % d)
    return tuple(moduli), tuple(tors), tuple(free)


def coker_class(m, x: Sequence[int], snf: Optional[SmithDecomposition] = None) -> CokerClass:
    snf = snf or smith_normal_form(m)
    if len(x) != snf.nrows:
        raise DimensionError(f"vector has length {len(x)}, expected {snf.nrows}")
    return CokerClass(*_class_coordinates(snf, [int(v) for v in x]))


def classes_equal(m, x: Sequence[int], y: Sequence[int], snf: Optional[SmithDecomposition] = None) -> Solvability:
    """Whether ``x`` and ``y`` have the same class in ``coker(M)``.

    The result is truthy iff ``x - y`` lies in ``im(M)``; its certificate
    solves ``M z = x - y``.
    """
    if len(x) != len(y):
        raise DimensionError("vectors have different lengths")
    return in_image(m, [a - b for a, b in zip(x, y)], snf)


def integer_kernel(m) -> list[list[int]]:
    """A basis of ``{z : M z = 0}`` over the integers, as a list of vectors."""
    snf = smith_normal_form(m)
    r = snf.rank
    return [[snf.V[i][j] for i in range(snf.ncols)] for j in range(r, snf.ncols)]


@dataclass(frozen=True)
class InducedMapReport:
    well_defined: bool
    isomorphism: bool
    injective: Optional[bool] = None
    surjective: Optional[bool] = None
    source_invariants: Optional[CokernelInvariants] = None
    target_invariants: Optional[CokernelInvariants] = None


def induced_cokernel_map_check(s, m_src, m_dst) -> InducedMapReport:
    """Check the map ``coker(m_src) -> coker(m_dst)`` induced by ``s``.

    Well-defined means every column of ``s @ m_src`` lies in ``im(m_dst)``.
    Surjective means the columns of ``[s | m_dst]`` generate the whole target
    lattice. Injective means every ``x`` with ``s x`` in ``im(m_dst)`` already
    lies in ``im(m_src)``; those ``x`` are read off an integer kernel basis of
    ``[s | -m_dst]``.
    """
    S = _as_rows(s)
    A = _as_rows(m_src)
    B = _as_rows(m_dst)
    p = len(B)
    q = len(A)
    s_cols = len(S[0]) if S else (s.shape[1] if isinstance(s, IntMatrix) else 0)
    if len(S) != p or s_cols != q or any(len(r) != q for r in A) or (B and len(B[0]) != p):
        raise DimensionError("S must map the source index set to the target index set")
    snf_src = smith_normal_form(A) if q else None
    snf_dst = smith_normal_form(B) if p else None
    inv_src = coker_invariants(A, snf_src) if q else CokernelInvariants([], 0)
    inv_dst = coker_invariants(B, snf_dst) if p else CokernelInvariants([], 0)

    if p == 0:
        # zero target: the map is injective only if the source cokernel is trivial
        trivial = not inv_src.torsion and inv_src.free_rank == 0
        return InducedMapReport(True, trivial, trivial, True, inv_src, inv_dst)
    sa = matmul(S, A, q) if q else [[] for _ in range(p)]
    well = all(in_image(B, [row[j] for row in sa], snf_dst) for j in range(q))
    if not well:
        return InducedMapReport(False, False, source_invariants=inv_src, target_invariants=inv_dst)
    joined = [list(S[i]) + list(B[i]) for i in range(p)]
    snf_joined = smith_normal_form(joined)
    surjective = snf_joined.rank == p and all(d == 1 for d in snf_joined.diagonal[:p])
    if q == 0:
        injective = True
    else:
        stacked = [list(S[i]) + [-x for x in B[i]] for i in range(p)]
        injective = all(in_image(A, z[:q], snf_src) for z in integer_kernel(stacked))
    return InducedMapReport(True, injective and surjective, injective, surjective, inv_src, inv_dst)
