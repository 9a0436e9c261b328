"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples; vectors are tuples.  Integer routines use
arbitrary-precision ints; rational routines use fractions.Fraction.  All
results are exact; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatchError, DomainError

Vec = tuple
Mat = tuple  # tuple of row tuples


def freeze(rows) -> Mat:
    return tuple(tuple(x for x in row) for row in rows)


def shape(M: Mat) -> tuple[int, int]:
    return (len(M), len(M[0]) if M else 0)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, m: int) -> Mat:
    return tuple(tuple(0 for _ in range(m)) for _ in range(n))


def transpose(M: Mat) -> Mat:
    return tuple(zip(*M)) if M else ()


def columns(M: Mat) -> list[Vec]:
    return [tuple(row[j] for row in M) for j in range(shape(M)[1])]


def from_columns(cols, dim: int | None = None) -> Mat:
    cols = list(cols)
    if not cols:
        if dim is None:
            raise DimensionMismatchError("empty column list without ambient dimension")
        return tuple(() for _ in range(dim))
    n = len(cols[0])
    if any(len(c) != n for c in cols):
        raise DimensionMismatchError("columns of unequal length")
    return tuple(tuple(c[i] for c in cols) for i in range(n))


def matvec(M: Mat, v: Vec) -> Vec:
    n, m = shape(M)
    if len(v) != m:
        raise DimensionMismatchError(f"matvec: {m} columns vs vector of length {len(v)}")
    return tuple(sum(M[i][j] * v[j] for j in range(m)) for i in range(n))


def matmul(A: Mat, B: Mat) -> Mat:
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise DimensionMismatchError("matmul: inner dimensions differ")
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def dot(u: Vec, v: Vec):
    return sum(a * b for a, b in zip(u, v, strict=True))


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


# ---------------------------------------------------------------------------
# Hermite normal form (column style, lower triangular)
# ---------------------------------------------------------------------------

def hermite_normal_form(M: Mat) -> tuple[Mat, Mat]:
    """Column HNF: returns (H, U) with H = M.U, U unimodular.

    H is lower triangular in the staircase sense: pivot columns come first with
    strictly increasing pivot rows, pivots positive, entries left of a pivot in
    its row reduced into [0, pivot); trailing columns are zero.
    """
    n, m = shape(M)
    H = [list(row) for row in M]
    U = [list(row) for row in identity(m)]

    def colop(j, k, a, b, c, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for row in (H, U):
            for i in range(len(row)):
                x, y = row[i][j], row[i][k]
                row[i][j], row[i][k] = a * x + b * y, c * x + d * y

    piv = 0
    pivots = []  # (row, col)
    for i in range(n):
        if piv >= m:
            break
        # clear row i across columns piv..m-1 down to a single entry at piv
        j = piv
        for k in range(piv + 1, m):
            if H[i][k] == 0:
                continue
            if H[i][j] == 0:
                colop(j, k, 0, 1, 1, 0)  # swap
                continue
            g, s, t = _xgcd(H[i][j], H[i][k])
            a, b = H[i][j] // g, H[i][k] // g
            # [s t; -b a] has determinant s*a + t*b = 1
            colop(j, k, s, t, -b, a)
        if H[i][j] == 0:
            continue
        if H[i][j] < 0:
            for row in (H, U):
                for r in range(len(row)):
                    row[r][j] = -row[r][j]
        p = H[i][j]
        for k in range(j):
            q = H[i][k] // p  # floor division: leaves remainder in [0, p)
            if q:
                for row in (H, U):
                    for r in range(len(row)):
                        row[r][k] -= q * row[r][j]
        pivots.append((i, j))
        piv += 1
    return freeze(H), freeze(U)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Returns (g, s, t) with g = gcd(a,b) > 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_pivots(H: Mat) -> list[tuple[int, int]]:
    """Pivot (row, col) pairs of a column-HNF matrix."""
    n, m = shape(H)
    piv = []
    col = 0
    for i in range(n):
        if col >= m:
            break
        if H[i][col] != 0:
            piv.append((i, col))
            col += 1
    return piv


def column_lattice_basis(M: Mat) -> list[Vec]:
    """Basis (list of columns) of the lattice generated by the columns of M."""
    H, _ = hermite_normal_form(M)
    return [c for c in columns(H) if not is_zero_vec(c)]


def lattice_member(B, v: Vec) -> bool:
    """True iff v lies in the Z-span of the vectors in B."""
    return lattice_coordinates(B, v) is not None


def lattice_coordinates(B, v: Vec):
    """Integer coefficients expressing v over B, or None."""
    B = list(B)
    if not B:
        return [] if is_zero_vec(v) else None
    n = len(B[0])
    if len(v) != n or any(len(b) != n for b in B):
        raise DimensionMismatchError("lattice_member: ambient dimensions differ")
    M = from_columns(B)
    H, U = hermite_normal_form(M)
    w = list(v)
    t = [0] * len(B)
    for i, j in hnf_pivots(H):
        if w[i] % H[i][j] != 0:
            return None
        q = w[i] // H[i][j]
        t[j] = q
        for r in range(n):
            w[r] -= q * H[r][j]
    if any(w):
        return None
    return list(matvec(U, tuple(t)))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(M: Mat) -> tuple[Mat, Mat, Mat]:
    """Returns (S, U, V) with S = U.M.V diagonal, entries >= 0 dividing in sequence."""
    n, m = shape(M)
    S = [list(row) for row in M]
    U = [list(row) for row in identity(n)]
    V = [list(row) for row in identity(m)]

    def rowop(i, k, a, b, c, d):
        for T, width in ((S, m), (U, n)):
            for j in range(width):
                x, y = T[i][j], T[k][j]
                T[i][j], T[k][j] = a * x + b * y, c * x + d * y

    def colop(j, k, a, b, c, d):
        for T in (S, V):
            for row in T:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y

    t = 0
    while t < min(n, m):
        # find a nonzero pivot
        found = None
        for i in range(t, n):
            for j in range(t, m):
                if S[i][j] != 0:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        if i != t:
            rowop(t, i, 0, 1, 1, 0)
        if j != t:
            colop(t, j, 0, 1, 1, 0)
        while True:
            # clear column t; plain elimination when the pivot already divides
            # (an xgcd combine there could swap without shrinking the pivot)
            for i in range(t + 1, n):
                if S[i][t] == 0:
                    continue
                if S[i][t] % S[t][t] == 0:
                    rowop(t, i, 1, 0, -(S[i][t] // S[t][t]), 1)
                    continue
                g, s_, t_ = _xgcd(S[t][t], S[i][t])
                a, b = S[t][t] // g, S[i][t] // g
                rowop(t, i, s_, t_, -b, a)
            # clear row t
            for j in range(t + 1, m):
                if S[t][j] == 0:
                    continue
                if S[t][j] % S[t][t] == 0:
                    colop(t, j, 1, 0, -(S[t][j] // S[t][t]), 1)
                    continue
                g, s_, t_ = _xgcd(S[t][t], S[t][j])
                a, b = S[t][t] // g, S[t][j] // g
                colop(t, j, s_, t_, -b, a)
            if all(S[i][t] == 0 for i in range(t + 1, n)):
                break
        if S[t][t] < 0:
            for j in range(m):
                S[t][j] = -S[t][j]
            for j in range(n):
                U[t][j] = -U[t][j]
        t += 1
    # enforce divisibility chain: the matrix is diagonal, so replace each
    # offending pair diag(a, b) by diag(gcd, lcm) using operations confined
    # to rows/columns i and i+1 (which are zero off the diagonal).
    k = t
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a, b = S[i][i], S[i + 1][i + 1]
            if b % a != 0:
                changed = True
                rowop(i, i + 1, 1, 1, 0, 1)  # row_i += row_{i+1}: block [[a,b],[0,b]]
                g, s_, t_ = _xgcd(a, b)
                colop(i, i + 1, s_, t_, -(b // g), a // g)  # block [[g,0],[t_*b, lcm]]
                q = (t_ * b) // g
                rowop(i, i + 1, 1, 0, -q, 1)  # clear the stray entry: diag(g, lcm)
    return freeze(S), freeze(U), freeze(V)


# ---------------------------------------------------------------------------
# Lattice quotients with torsion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeQuotient:
    """Presentation of Z^n / ZB as free part + torsion coordinates.

    ``project`` maps an ambient vector to (free coords, torsion residues);
    a vector lies in ZB iff both parts vanish.
    """

    ambient_rank: int
    free_rank: int
    torsion: tuple[int, ...]  # invariant factors >= 2, dividing in sequence
    _U: Mat  # change of basis: y = U x
    _Uinv: Mat
    _torsion_rows: tuple[int, ...]
    _free_rows: tuple[int, ...]

    def project(self, v: Vec) -> tuple[tuple, tuple]:
        if len(v) != self.ambient_rank:
            raise DimensionMismatchError("quotient projection: wrong ambient dimension")
        y = matvec(self._U, v)
        free = tuple(y[i] for i in self._free_rows)
        tor = tuple(y[i] % d for i, d in zip(self._torsion_rows, self.torsion))
        return free, tor

    def free_values(self, v) -> tuple:
        """Free-part coordinates only; accepts rational input vectors."""
        if len(v) != self.ambient_rank:
            raise DimensionMismatchError("quotient projection: wrong ambient dimension")
        return tuple(sum(Fraction(a) * Fraction(x) for a, x in zip(self._U[i], v))
                     for i in self._free_rows)

    def is_zero(self, v: Vec) -> bool:
        free, tor = self.project(v)
        return is_zero_vec(free) and is_zero_vec(tor)

    def section(self, free: Vec, tor: Vec) -> Vec:
        """An ambient representative with the given quotient coordinates."""
        y = [0] * self.ambient_rank
        for i, val in zip(self._free_rows, free, strict=True):
            y[i] = val
        for i, val in zip(self._torsion_rows, tor, strict=True):
            y[i] = val
        return matvec(self._Uinv, tuple(y))

    def torsion_order(self) -> int:
        order = 1
        for d in self.torsion:
            order *= d
        return order

    def coset_representatives(self) -> list[Vec]:
        """All cosets as ambient representatives; requires free rank 0."""
        if self.free_rank != 0:
            raise DomainError("coset enumeration requires a finite quotient")
        reps = []
        from itertools import product

        for tor in product(*(range(d) for d in self.torsion)):
            reps.append(self.section((), tor))
        return reps


def quotient(ambient_rank: int, B) -> LatticeQuotient:
    """Quotient of Z^ambient_rank by the lattice spanned by the vectors in B."""
    B = [tuple(b) for b in B]
    for b in B:
        if len(b) != ambient_rank:
            raise DimensionMismatchError("quotient: sublattice vector of wrong dimension")
    if not B:
        B_mat = tuple((0,) for _ in range(ambient_rank))  # single zero column
    else:
        B_mat = from_columns(B)
    if ambient_rank == 0:
        return LatticeQuotient(0, 0, (), (), (), (), ())
    S, U, _V = smith_normal_form(B_mat)
    n, m = shape(S)
    diag = [S[i][i] for i in range(min(n, m))] + [0] * max(0, n - min(n, m))
    torsion_rows = tuple(i for i, d in enumerate(diag) if d not in (0, 1))
    free_rows = tuple(i for i, d in enumerate(diag) if d == 0)
    torsion = tuple(diag[i] for i in torsion_rows)
    Uinv = integer_inverse(U)
    return LatticeQuotient(
        ambient_rank=ambient_rank,
        free_rank=len(free_rows),
        torsion=torsion,
        _U=U,
        _Uinv=Uinv,
        _torsion_rows=torsion_rows,
        _free_rows=free_rows,
    )


def integer_inverse(U: Mat) -> Mat:
    """Exact inverse of a unimodular integer matrix."""
    n, m = shape(U)
    if n != m:
        raise DimensionMismatchError("integer_inverse: matrix not square")
    aug = [[Fraction(U[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            x = aug[i][j]
            if x.denominator != 1:
                raise DimensionMismatchError("integer_inverse: matrix not unimodular")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


# ---------------------------------------------------------------------------
# Rational linear algebra
# ---------------------------------------------------------------------------

def rational_solve(M: Mat, b: Vec):
    """Some rational x with M.x = b, or None when inconsistent (free vars -> 0)."""
    n, m = shape(M)
    if len(b) != n:
        raise DimensionMismatchError("rational_solve: dimension mismatch")
    A = [[Fraction(M[i][j]) for j in range(m)] + [Fraction(b[i])] for i in range(n)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        p = A[row][col]
        A[row] = [x / p for x in A[row]]
        for r in range(n):
            if r != row and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[row])]
        pivots.append((row, col))
        row += 1
        if row == n:
            break
    for r in range(row, n):
        if A[r][m] != 0:
            return None
    x = [Fraction(0)] * m
    for r, c in pivots:
        x[c] = A[r][m]
    return tuple(x)


def rational_rank(M: Mat) -> int:
    n, m = shape(M)
    A = [[Fraction(M[i][j]) for j in range(m)] for i in range(n)]
    rank = 0
    for col in range(m):
        piv = next((r for r in range(rank, n) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        A[rank] = [x / p for x in A[rank]]
        for r in range(n):
            if r != rank and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
        if rank == n:
            break
    return rank


def rational_kernel(M: Mat) -> list[Vec]:
    """Basis of {x in Q^m : M.x = 0}."""
    n, m = shape(M)
    A = [[Fraction(M[i][j]) for j in range(m)] for i in range(n)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        p = A[row][col]
        A[row] = [x / p for x in A[row]]
        for r in range(n):
            if r != row and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    basis = []
    pivset = set(pivots)
    for free in range(m):
        if free in pivset:
            continue
        v = [Fraction(0)] * m
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -A[r][free]
        basis.append(tuple(v))
    return basis


def integer_kernel(M: Mat) -> list[Vec]:
    """Basis of the saturated lattice {x in Z^m : M.x = 0} for integer M."""
    H, U = hermite_normal_form(M)
    ncols = shape(M)[1]
    zero_cols = [j for j, c in enumerate(columns(H)) if is_zero_vec(c)]
    return [tuple(U[i][j] for i in range(ncols)) for j in zero_cols]


def integral_system_solve(M: Mat, b: Vec):
    """Some integer x with M.x = b for integer data, or None."""
    n, m = shape(M)
    if len(b) != n:
        raise DimensionMismatchError("integral_system_solve: dimension mismatch")
    S, U, V = smith_normal_form(M)
    c = matvec(U, b)
    y = [0] * m
    k = min(n, m)
    for i in range(n):
        d = S[i][i] if i < k else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return matvec(V, tuple(y))


def clear_denominators(v) -> Vec:
    """Scale a rational vector to a primitive integer vector (positive gcd)."""
    v = [Fraction(x) for x in v]
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)
