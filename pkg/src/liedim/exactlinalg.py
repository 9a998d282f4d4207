"""Exact integer linear algebra: Hermite and Smith normal forms plus
submodule arithmetic over Z.

Everything here is integer-exact; there is no floating point anywhere.
Submodules of Z^n are represented by their row Hermite normal form
(row-echelon, positive pivots, entries above each pivot reduced into
[0, pivot)), which makes equality of submodules a plain data comparison.

The workhorse is :class:`Echelon`, an incremental sparse row-echelon
accumulator.  Rows are dicts mapping column index to a nonzero integer
coefficient; inserting a row either reduces it to zero against the
current basis or grows the spanned lattice.  The higher-level operations
(hnf, module_sum, module_intersect, kernels, preimages) are thin
orchestrations of insertions.
"""

import math
from dataclasses import dataclass

from .errors import DimensionMismatch, NotContained


def xgcd(a, b):
    """Extended gcd: returns (g, s, t) with g = s*a + t*b and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _addmul(dst, src, k):
    """dst += k*src, dropping zero entries.  Mutates dst."""
    if k == 0:
        return
    for col, v in src.items():
        c = dst.get(col, 0) + k * v
        if c:
            dst[col] = c
        else:
            del dst[col]


class Echelon:
    """Incremental integer row-echelon basis with sparse rows.

    Maintains a set of rows keyed by pivot column, each with a positive
    pivot entry and support only at columns >= the pivot.  The row span
    is exactly the lattice generated by every row ever inserted.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows = {}

    def copy(self):
        other = Echelon()
        other.rows = {j: dict(r) for j, r in self.rows.items()}
        return other

    @property
    def rank(self):
        return len(self.rows)

    def _tail_reduce(self, row, pivot_col):
        """Reduce entries of row at pivot columns beyond pivot_col.

        Keeps stored rows reduced against later pivots, which bounds
        coefficient growth during long insertion sequences.  Columns are
        visited in ascending order; reducing at column k only disturbs
        columns >= k, so entries behind the frontier stay final.
        """
        rows = self.rows
        frontier = pivot_col
        while True:
            k = None
            for c in row:
                if c > frontier and c in rows and (k is None or c < k):
                    k = c
            if k is None:
                return row
            q = row[k] // rows[k][k]
            if q:
                _addmul(row, rows[k], -q)
            frontier = k

    def insert(self, row):
        """Add a sparse row to the lattice.  Returns True if the span grew.

        The input dict is consumed (a copy is made only when the caller
        passes a dict it still needs).
        """
        rows = self.rows
        grew = False
        while row:
            j = min(row)
            a = row[j]
            b = rows.get(j)
            if b is None:
                if a < 0:
                    row = {k: -v for k, v in row.items()}
                rows[j] = self._tail_reduce(row, j)
                return True
            p = b[j]
            if a % p == 0:
                _addmul(row, b, -(a // p))
            else:
                # unimodular exchange: span{b, row} == span{s*b + t*row, (p/g)*row - (a/g)*b}
                g, s, t = xgcd(p, a)
                nb = {k: s * v for k, v in b.items()} if s else {}
                _addmul(nb, row, t)
                nr = {k: (p // g) * v for k, v in row.items()}
                _addmul(nr, b, -(a // g))
                rows[j] = self._tail_reduce(nb, j)
                row = nr
                grew = True
        return grew

    def member(self, row):
        """Coordinates of a sparse row over the stored rows, or None.

        Returns a dict pivot-column -> integer coefficient such that the
        row equals the corresponding combination of stored rows.
        """
        row = dict(row)
        coeffs = {}
        while row:
            j = min(row)
            b = self.rows.get(j)
            if b is None:
                return None
            a = row[j]
            q, rem = divmod(a, b[j])
            if rem:
                return None
            coeffs[j] = q
            _addmul(row, b, -q)
        return coeffs

    def contains(self, row):
        return self.member(row) is not None

    def reduce(self, row):
        """Remainder of a sparse row after reduction against stored rows.

        Leading coefficients are reduced into [0, pivot); the result is
        zero exactly when the row lies in the span.
        """
        row = dict(row)
        out = {}
        while row:
            j = min(row)
            b = self.rows.get(j)
            if b is None:
                out[j] = row.pop(j)
                continue
            q = row[j] // b[j]
            if q:
                _addmul(row, b, -q)
            if j in row:
                out[j] = row.pop(j)
        return out

    def normalize(self):
        """Reduce entries above every pivot into [0, pivot).  In place."""
        pivots = sorted(self.rows)
        for j in pivots:
            b = self.rows[j]
            p = b[j]
            for j2 in pivots:
                if j2 >= j:
                    break
                r2 = self.rows[j2]
                q = r2.get(j, 0) // p
                if q:
                    _addmul(r2, b, -q)

    def dense_rows(self, ncols):
        """Fully reduced HNF rows, pivot order, as tuples."""
        self.normalize()
        out = []
        for j in sorted(self.rows):
            r = self.rows[j]
            out.append(tuple(r.get(k, 0) for k in range(ncols)))
        return out


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, stored as a tuple of row tuples."""

    entries: tuple
    ncols: int

    def __post_init__(self):
        for row in self.entries:
            if len(row) != self.ncols:
                raise DimensionMismatch(
                    f"row of length {len(row)} in matrix with {self.ncols} columns"
                )

    @property
    def nrows(self):
        return len(self.entries)

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [tuple(int(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionMismatch("ncols required for an empty matrix")
            ncols = len(rows[0])
        return cls(tuple(rows), ncols)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(tuple(tuple(0 for _ in range(ncols)) for _ in range(nrows)), ncols)

    def row(self, i):
        return self.entries[i]

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"


@dataclass(frozen=True)
class SubmoduleBasis:
    """A submodule of Z^ambient_rank given by its row Hermite normal form."""

    ambient_rank: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.ncols != self.ambient_rank:
            raise DimensionMismatch("basis width differs from ambient rank")

    @property
    def rank(self):
        return self.basis.nrows

    @classmethod
    def zero(cls, ambient_rank):
        return cls(ambient_rank, IntMatrix((), ambient_rank))

    @classmethod
    def full(cls, ambient_rank):
        return cls(ambient_rank, IntMatrix.identity(ambient_rank))

    @classmethod
    def from_echelon(cls, ech, ambient_rank):
        return cls(ambient_rank, IntMatrix(tuple(ech.dense_rows(ambient_rank)), ambient_rank))

    def rows_sparse(self):
        out = []
        for row in self.basis.entries:
            out.append({j: v for j, v in enumerate(row) if v})
        return out

    def to_echelon(self):
        e = Echelon()
        for r in self.rows_sparse():
            e.rows[min(r)] = r
        return e

    def __repr__(self):
        return f"SubmoduleBasis(rank {self.rank} in Z^{self.ambient_rank})"


@dataclass(frozen=True)
class ElementaryDivisors:
    """Abelian group structure: cyclic orders d1 | d2 | ... (each > 1) plus free rank."""

    divisors: tuple
    free_rank: int

    def __post_init__(self):
        for i, d in enumerate(self.divisors):
            if d <= 1:
                raise ValueError(f"divisor {d} must exceed 1")
            if i and d % self.divisors[i - 1]:
                raise ValueError("divisors must form a chain")

    @property
    def is_trivial(self):
        return not self.divisors and self.free_rank == 0

    def __str__(self):
        parts = [f"C{d}" for d in self.divisors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def hnf_from_sparse(rows, ncols):
    """Hermite normal form of the lattice generated by sparse rows."""
    e = Echelon()
    for r in rows:
        e.insert(dict(r))
    return SubmoduleBasis(ncols, IntMatrix(tuple(e.dense_rows(ncols)), ncols))


def hnf(M):
    """Row Hermite normal form of the row span of M.

    >>> hnf(IntMatrix.from_rows([[1, 1], [1, -1]])).basis
    IntMatrix([[1, 1], [0, 2]])
    """
    return hnf_from_sparse(
        ({j: v for j, v in enumerate(row) if v} for row in M.entries), M.ncols
    )


def member(v, B):
    """Integer coordinates of v over the rows of B, or None if not a member.

    The zero vector always has all-zero coordinates.  Raises
    DimensionMismatch when v has the wrong length.
    """
    if len(v) != B.ambient_rank:
        raise DimensionMismatch(f"vector length {len(v)} != ambient rank {B.ambient_rank}")
    sparse = {j: x for j, x in enumerate(v) if x}
    coeffs = B.to_echelon().member(sparse)
    if coeffs is None:
        return None
    pivot_order = [min({j: x for j, x in enumerate(row) if x}) for row in B.basis.entries]
    return tuple(coeffs.get(p, 0) for p in pivot_order)


def module_sum(A, B):
    """HNF basis of A + B."""
    if A.ambient_rank != B.ambient_rank:
        raise DimensionMismatch("ambient ranks differ")
    return hnf_from_sparse(A.rows_sparse() + B.rows_sparse(), A.ambient_rank)


def preimage_lattice(rows, target, ambient):
    """The sublattice {x in Z^k : x . rows lies in target}.

    ``rows`` is a list of k sparse rows over Z^ambient describing a linear
    map Z^k -> Z^ambient; ``target`` is a SubmoduleBasis or Echelon over
    the same ambient space.  Computed by row-reducing the block matrix
    [rows | I] against [target | 0]: reduced rows whose first block
    vanished carry the preimage lattice in their second block.
    """
    k = len(rows)
    e = Echelon()
    if isinstance(target, Echelon):
        for j, r in target.rows.items():
            e.rows[j] = dict(r)
    else:
        for r in target.rows_sparse():
            e.rows[min(r)] = r
    for i, r in enumerate(rows):
        aug = dict(r)
        aug[ambient + i] = 1
        e.insert(aug)
    out = Echelon()
    for j, r in e.rows.items():
        if j >= ambient:
            out.rows[j - ambient] = {c - ambient: v for c, v in r.items()}
    return SubmoduleBasis(k, IntMatrix(tuple(out.dense_rows(k)), k))


def left_kernel(M):
    """Basis of {x : x . M = 0} for an IntMatrix M."""
    rows = [{j: v for j, v in enumerate(r) if v} for r in M.entries]
    return preimage_lattice(rows, SubmoduleBasis.zero(M.ncols), M.ncols)


def module_intersect(A, B):
    """HNF basis of the intersection of A and B."""
    if A.ambient_rank != B.ambient_rank:
        raise DimensionMismatch("ambient ranks differ")
    pre = preimage_lattice(A.rows_sparse(), B, A.ambient_rank)
    arows = A.rows_sparse()
    out = []
    for coeff_row in pre.basis.entries:
        v = {}
        for i, c in enumerate(coeff_row):
            if c:
                _addmul(v, arows[i], c)
        if v:
            out.append(v)
    return hnf_from_sparse(out, A.ambient_rank)


def quotient_structure(A, B):
    """Elementary divisors and free rank of A/B.  Requires B inside A."""
    if A.ambient_rank != B.ambient_rank:
        raise DimensionMismatch("ambient ranks differ")
    ech = A.to_echelon()
    pivot_index = {p: i for i, p in enumerate(sorted(ech.rows))}
    coeff_rows = []
    for row in B.basis.entries:
        coeffs = ech.member({j: v for j, v in enumerate(row) if v})
        if coeffs is None:
            raise NotContained(f"row {list(row)} of B is not in A")
        coeff_rows.append({pivot_index[p]: q for p, q in coeffs.items() if q})
    if not coeff_rows:
        return ElementaryDivisors((), A.rank)
    diag = _diagonalize(coeff_rows, A.rank)
    nonzero = [d for d in diag if d]
    return ElementaryDivisors(tuple(d for d in nonzero if d > 1), A.rank - len(nonzero))


def _diagonalize(rows, ncols):
    """Invariant factors of the lattice spanned by sparse rows in Z^ncols.

    Alternates row and column Hermite reductions until the matrix is
    diagonal (each pass preserves the row-equivalence class up to
    unimodular column action, which leaves invariant factors untouched),
    then fixes up the divisibility chain by pairwise gcd/lcm exchanges.
    """
    current = [dict(r) for r in rows if r]
    for _ in range(200):
        e = Echelon()
        for r in current:
            e.insert(r)
        e.normalize()
        hnf_rows = [dict(r) for r in e.rows.values()]
        if all(len(r) == 1 for r in hnf_rows):
            diag = sorted(abs(v) for r in hnf_rows for v in r.values())
            return _divisor_chain(diag)
        # transpose and reduce again
        transposed = {}
        for r in hnf_rows:
            piv = min(r)
            for col, v in r.items():
                transposed.setdefault(col, {})[piv] = v
        current = list(transposed.values())
    raise AssertionError("diagonalization did not converge")


def _divisor_chain(values):
    """Sort cyclic orders into a divisibility chain d1 | d2 | ... (zeros last)."""
    vals = [abs(v) for v in values]
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if a == 0 and b != 0:
                    vals[i], vals[j] = b, 0
                    changed = True
                elif a != 0 and b % a != 0:
                    g = math.gcd(a, b)
                    vals[i], vals[j] = g, a * b // g if b else 0
                    changed = True
    return vals


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def snf(M):
    """Smith normal form with transforms.

    Returns (diag, left, right) where left*M*right is diagonal with the
    entries of ``diag`` (length min(nrows, ncols)), each nonnegative and
    dividing the next, and left/right are unimodular.

    >>> snf(IntMatrix.from_rows([[2, 0], [0, 3]]))[0]
    (1, 6)
    """
    m, n = M.nrows, M.ncols
    A = [list(row) for row in M.entries]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_add(i, k, q):
        Ai, Ak = A[i], A[k]
        for j in range(n):
            Ai[j] += q * Ak[j]
        Ui, Uk = U[i], U[k]
        for j in range(m):
            Ui[j] += q * Uk[j]

    def col_add(j, k, q):
        for i in range(m):
            A[i][j] += q * A[i][k]
        for i in range(n):
            V[i][j] += q * V[i][k]

    def row_swap(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def col_swap(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def row_negate(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    def min_entry(t):
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                x = Ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    t = 0
    while t < min(m, n):
        found = min_entry(t)
        if found is None:
            break
        _, pi, pj = found
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        # clear row and column t; keep picking smaller pivots until clean
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_add(i, t, -q)
                    if A[i][t]:
                        row_swap(t, i)  # remainder is strictly smaller
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_add(j, t, -q)
                    if A[t][j]:
                        col_swap(t, j)
                        dirty = True
            if not dirty:
                break
        if A[t][t] < 0:
            row_negate(t)
        # enforce divisibility of the remaining block by the pivot
        p = A[t][t]
        offender = None
        for i in range(t + 1, m):
            Ai = A[i]
            for j in range(t + 1, n):
                if Ai[j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue  # redo this pivot
        t += 1

    diag = tuple(A[i][i] for i in range(min(m, n)))
    left = IntMatrix.from_rows(U, m) if m else IntMatrix((), 0)
    right = IntMatrix.from_rows(V, n) if n else IntMatrix((), 0)
    return diag, left, right


def matmul(A, B):
    """Plain matrix product of two IntMatrix values."""
    if A.ncols != B.nrows:
        raise DimensionMismatch("inner dimensions differ")
    brows = B.entries
    out = []
    for arow in A.entries:
        acc = [0] * B.ncols
        for k, a in enumerate(arow):
            if a:
                brow = brows[k]
                for j in range(B.ncols):
                    acc[j] += a * brow[j]
        out.append(tuple(acc))
    return IntMatrix(tuple(out), B.ncols)
