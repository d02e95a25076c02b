"""Exact linear algebra over F_p and Z.

Matrices are plain lists of row lists of Python ints.  Everything here is
deterministic: RREF and HNF outputs are the unique normal forms of the row
span, SNF uses least-absolute-value pivoting with (row, col) tie-breaking,
so results do not depend on which kernel implementation ran.

Conventions:
  * HNF is row-style: upper triangular with positive pivots and the entries
    above each pivot reduced into [0, pivot).
  * ``snf`` returns (D, U, V) with U*M*V == D, U and V unimodular, and the
    diagonal a divisibility chain d1 | d2 | ... with zeros last.
  * Lattices are row spans of integer matrices.
"""

from dataclasses import dataclass, field

from . import kernels
from .errors import LatticeRankError


def xgcd(a, b):
    """Extended gcd: (g, x, y) with g = a*x + b*y and g >= 0.

    >>> xgcd(12, 18)
    (6, -1, 1)
    >>> xgcd(0, -7)
    (7, 0, -1)
    """
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# F_p


def rref(rows, ncols, p):
    """Unique reduced row echelon form mod p: (nonzero rows, pivot columns)."""
    return kernels.rref([list(r) for r in rows], ncols, p)


def rank_mod(rows, ncols, p):
    return len(rref(rows, ncols, p)[1])


def kernel_basis(rows, ncols, p):
    """Basis of the right null space {v : M v = 0} over F_p.

    >>> kernel_basis([[1, 1]], 2, 2)
    [[1, 1]]
    """
    red, piv = rref(rows, ncols, p)
    pivset = set(piv)
    basis = []
    for fc in range(ncols):
        if fc in pivset:
            continue
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, piv):
            if row[fc]:
                v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Z


def hnf(rows, ncols):
    """Unique row-style Hermite normal form of the row span.

    >>> hnf([[2, 0], [1, 1]], 2)
    [[1, 1], [0, 2]]
    >>> hnf([[4], [6]], 1)
    [[2]]
    """
    ech = kernels.echelon_int([list(r) for r in rows], ncols)
    return _hnf_normalize(ech, ncols)


def _hnf_normalize(ech, ncols):
    # echelon rows have distinct increasing pivot columns; finish the form
    rows = [list(r) for r in ech]
    pivs = [_leading(r) for r in rows]
    for i, r in enumerate(rows):
        if r[pivs[i]] < 0:
            rows[i] = [-x for x in r]
    # left-to-right: reducing at pivot j only touches columns >= pivot j,
    # so earlier pivot columns stay reduced and the result is canonical
    for j in range(1, len(rows)):
        pj, h = pivs[j], rows[j][pivs[j]]
        for i in range(j):
            q = rows[i][pj] // h
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[j])]
    return rows

def _leading(row):
    for c, x in enumerate(row):
        if x:
            return c
    raise ValueError("zero row in echelon basis")


def hnf_reduce(basis, vec):
    """Residue of ``vec`` modulo the lattice spanned by echelon ``basis``.

    The residue is zero iff ``vec`` lies in the lattice; for an HNF basis it
    is the canonical coset representative (pivot coordinates in [0, pivot)).
    """
    v = list(vec)
    for row in basis:
        c = _leading(row)
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return v


def lattice_contains(basis, vec):
    return not any(hnf_reduce(basis, vec))


def snf(M, ncols=None):
    """Smith normal form with transforms: (D, U, V), U*M*V == D.

    Least-absolute-value pivoting; the diagonal is a divisibility chain with
    zeros last and nonnegative entries.

    >>> D, U, V = snf([[2, 0], [0, 3]])
    >>> [D[0][0], D[1][1]]
    [1, 6]
    """
    A = [list(r) for r in M]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = _identity(m)
    V = _identity(n)
    k = min(m, n)

    for t in range(k):
        if not _move_min_pivot(A, U, V, t, m, n):
            break
        while True:
            # balanced quotients keep remainders <= |pivot|/2, so re-picking
            # the minimum each round halves the pivot: no coefficient blowup
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    _row_sub(A, U, i, t, _bdiv(A[i][t], A[t][t]))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    _col_sub(A, V, j, t, _bdiv(A[t][j], A[t][t]))
                    if A[t][j]:
                        dirty = True
            if not dirty:
                break
            _move_min_pivot(A, U, V, t, m, n)

    for t in range(k):
        if A[t][t] < 0:
            _row_neg(A, U, t)

    # enforce the divisibility chain (zeros drift to the end)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if a == 0 and b != 0:
                _row_swap(A, U, i, i + 1)
                _col_swap(A, V, i, i + 1)
                changed = True
            elif a != 0 and b % a != 0:
                _chain_fix(A, U, V, i)
                changed = True
    return A, U, V


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _bdiv(a, b):
    """Quotient with remainder in [-|b|/2, |b|/2]."""
    q = a // b
    if 2 * abs(a - q * b) > abs(b):
        q += 1
    return q


def _move_min_pivot(A, U, V, t, m, n):
    best = None
    for i in range(t, m):
        Ai = A[i]
        for j in range(t, n):
            x = Ai[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    break
        if best and best[0] == 1:
            break
    if best is None:
        return False
    _, i, j = best
    if i != t:
        _row_swap(A, U, i, t)
    if j != t:
        _col_swap(A, V, j, t)
    return True


def _row_sub(A, U, i, j, q):
    A[i] = [x - q * y for x, y in zip(A[i], A[j])]
    U[i] = [x - q * y for x, y in zip(U[i], U[j])]


def _row_swap(A, U, i, j):
    A[i], A[j] = A[j], A[i]
    U[i], U[j] = U[j], U[i]


def _row_neg(A, U, i):
    A[i] = [-x for x in A[i]]
    U[i] = [-x for x in U[i]]


def _col_sub(A, V, j, i, q):
    # col_j -= q * col_i
    for row in A:
        row[j] -= q * row[i]
    for row in V:
        row[j] -= q * row[i]


def _col_swap(A, V, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]
    for row in V:
        row[i], row[j] = row[j], row[i]


def _chain_fix(A, U, V, i):
    # diag pair (a, b) with a not dividing b -> (gcd, a*b/gcd)
    a, b = A[i][i], A[i + 1][i + 1]
    _col_sub(A, V, i, i + 1, -1)  # col_i += col_{i+1}; A[i+1][i] becomes b
    g, s, t = xgcd(a, b)
    # row_i' = s*row_i + t*row_{i+1}; row_{i+1}' = (a/g)*row_{i+1} - (b/g)*row_i
    ri, rj = A[i], A[i + 1]
    ui, uj = U[i], U[i + 1]
    A[i] = [s * x + t * y for x, y in zip(ri, rj)]
    A[i + 1] = [(a // g) * y - (b // g) * x for x, y in zip(ri, rj)]
    U[i] = [s * x + t * y for x, y in zip(ui, uj)]
    U[i + 1] = [(a // g) * y - (b // g) * x for x, y in zip(ui, uj)]
    # clear the fill-in at (i, i+1): t*b is divisible by g
    _col_sub(A, V, i + 1, i, (t * b) // g)
    if A[i + 1][i + 1] < 0:
        _row_neg(A, U, i + 1)


def mat_mul(A, B):
    if not A or not B:
        return []
    n = len(B[0])
    Bt = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def vec_mat(v, M):
    """Row vector times matrix."""
    if not M:
        return []
    n = len(M[0])
    out = [0] * n
    for x, row in zip(v, M):
        if x:
            for j in range(n):
                out[j] += x * row[j]
    return out


def det_unimodular(M):
    """Determinant via Bareiss, for unimodularity assertions in tests."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for t in range(n - 1):
        if A[t][t] == 0:
            for i in range(t + 1, n):
                if A[i][t]:
                    A[t], A[i] = A[i], A[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                A[i][j] = (A[i][j] * A[t][t] - A[i][t] * A[t][j]) // prev
            A[i][t] = 0
        prev = A[t][t]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# structures and quotients


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Invariant factor decomposition: Z^free_rank x prod Z/d_i, d_i | d_{i+1}.

    >>> str(AbelianGroupStructure((2, 4)))
    'Z/2 x Z/4'
    >>> AbelianGroupStructure((), 1).order() is None
    True
    """

    invariant_factors: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        for d in self.invariant_factors:
            if d <= 1:
                raise ValueError("invariant factors must exceed 1")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    def order(self):
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def is_trivial(self):
        return not self.invariant_factors and not self.free_rank

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " x ".join(parts) if parts else "trivial"

    def to_json(self):
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
        }


@dataclass
class CokernelStructure:
    """Z^n modulo the row span of a relation matrix, with coordinates.

    ``project`` maps a vector to its coordinates in the invariant-factor
    decomposition; the zero tuple characterizes membership in the row span.

    >>> q = CokernelStructure([[2, 2], [0, 4]], 2)
    >>> str(q.structure)
    'Z/2 x Z/4'
    >>> q.project([2, 2]) == q.zero
    True
    """

    rows: list
    n: int
    structure: AbelianGroupStructure = field(init=False)

    def __post_init__(self):
        basis = hnf(self.rows, self.n) if self.rows else []
        if basis:
            D, _U, V = snf(basis, self.n)
            diag = [D[i][i] for i in range(min(len(basis), self.n))]
        else:
            V = _identity(self.n)
            diag = []
        diag += [0] * (self.n - len(diag))
        self._V = V
        self._diag = diag
        self.structure = AbelianGroupStructure(
            tuple(d for d in diag if d > 1), sum(1 for d in diag if d == 0)
        )

    def project(self, vec):
        if len(vec) != self.n:
            raise ValueError("vector length mismatch")
        y = vec_mat(vec, self._V)
        out = []
        for yi, d in zip(y, self._diag):
            if d == 1:
                continue
            out.append(yi % d if d else yi)
        return tuple(out)

    @property
    def zero(self):
        return tuple(0 for d in self._diag if d != 1)

    def is_zero(self, vec):
        return self.project(vec) == self.zero


def cokernel_structure(rows, ngens):
    """Structure of Z^ngens / row span.

    >>> str(cokernel_structure([[2, 2], [0, 4]], 2))
    'Z/2 x Z/4'
    """
    return CokernelStructure([list(r) for r in rows], ngens).structure


def lattice_intersect(A, B, ncols):
    """HNF basis of the intersection of two full-rank lattices in Z^ncols.

    Rows of A and B generate the lattices; both must have rank ncols.

    >>> lattice_intersect([[2, 0], [1, 1]], [[2, 0], [0, 2]], 2)
    [[2, 0], [0, 2]]
    """
    for name, M in (("first", A), ("second", B)):
        if len(kernels.echelon_int([list(r) for r in M], ncols)) != ncols:
            raise LatticeRankError(f"{name} lattice basis is rank deficient")
    stacked = [list(r) for r in A] + [list(r) for r in B]
    gens = []
    for z in _left_kernel(stacked):
        v = vec_mat(z[: len(A)], A)
        if any(v):
            gens.append(v)
    return hnf(gens, ncols)


def _left_kernel(M):
    """Basis of {z : z*M = 0} over Z."""
    n = len(M[0]) if M else 0
    D, U, _V = snf(M, n)
    k = min(len(M), n)
    out = []
    for i in range(len(M)):
        if i >= k or D[i][i] == 0:
            out.append(U[i])
    return out
