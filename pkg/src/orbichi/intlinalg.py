"""Exact integer matrix algebra: normal forms, kernels, solving, invariants.

Matrices are tuples of tuples of Python ints (row-major), so they are
hashable and intermediate entry growth can never overflow.  Vectors are
tuples of ints.  Throughout the package matrices act on column vectors by
left multiplication; a "lattice" is the integer row span of a basis matrix
kept in canonical Hermite normal form (row style, positive pivots, entries
above each pivot reduced into [0, pivot)).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

Mat = tuple[tuple[int, ...], ...]
Vec = tuple[int, ...]


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Mat:
    return tuple((0,) * cols for _ in range(rows))


def dims(m: Mat) -> tuple[int, int]:
    return len(m), len(m[0]) if m else 0


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_neg(u: Vec) -> Vec:
    return tuple(-x for x in u)


def stack(mats: list[Mat]) -> Mat:
    return tuple(row for m in mats for row in m)


def det(m: Mat) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def is_unimodular(m: Mat) -> bool:
    return abs(det(m)) == 1


def _pick_pivot(rows: list[list[int]], start: int, col: int) -> int | None:
    """Index (>= start) of the row with the nonzero entry of least magnitude."""
    best = None
    for i in range(start, len(rows)):
        v = abs(rows[i][col])
        if v and (best is None or v < abs(rows[best][col])):
            best = i
    return best


def _balanced_quotient(x: int, p: int) -> int:
    """Quotient q minimizing |x - q*p|; keeps multipliers small so entries
    do not explode during elimination."""
    q, r = divmod(x, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def _hnf_rows(rows: list[list[int]], ncols: int,
              companions: list[list[int]] | None = None) -> int:
    """In-place row HNF; returns the rank.  Row operations are mirrored on
    ``companions`` so callers can recover the transform."""
    r = 0
    for c in range(ncols):
        while True:
            p = _pick_pivot(rows, r, c)
            if p is None:
                break
            others = [i for i in range(r, len(rows)) if i != p and rows[i][c]]
            if not others:
                break
            for i in others:
                q = rows[i][c] // rows[p][c]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[p])]
                if companions is not None:
                    companions[i] = [x - q * y
                                     for x, y in zip(companions[i], companions[p])]
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        if companions is not None:
            companions[r], companions[p] = companions[p], companions[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
            if companions is not None:
                companions[r] = [-x for x in companions[r]]
        r += 1
    # reduce entries above each pivot into [0, pivot)
    for k in range(r):
        c = next(j for j, x in enumerate(rows[k]) if x)
        for i in range(k):
            q = rows[i][c] // rows[k][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[k])]
                if companions is not None:
                    companions[i] = [x - q * y
                                     for x, y in zip(companions[i], companions[k])]
    return r


def hermite_normal_form(m: Mat, ncols: int | None = None) -> Mat:
    """Canonical basis (nonzero rows only) of the integer row span of ``m``."""
    if ncols is None:
        _, ncols = dims(m)
    rows = [list(row) for row in m]
    r = _hnf_rows(rows, ncols)
    return tuple(tuple(row) for row in rows[:r])


@dataclass(frozen=True)
class LatticeBasis:
    """A sublattice of Z^ambient_rank given by its canonical HNF row basis.

    Equal sublattices compare equal structurally.  ``basis`` is empty for
    the zero lattice.
    """

    ambient_rank: int
    basis: Mat

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Vec) -> Vec | None:
        """Integer coefficients expressing ``v`` in the basis, or None."""
        coeffs = []
        rem = list(v)
        for row in self.basis:
            c = next(j for j, x in enumerate(row) if x)
            q, r = divmod(rem[c], row[c])
            if r:
                return None
            if q:
                rem = [x - q * y for x, y in zip(rem, row)]
            coeffs.append(q)
        if any(rem):
            return None
        return tuple(coeffs)

    def contains(self, v: Vec) -> bool:
        return self.coordinates(v) is not None

    def from_coordinates(self, coeffs: Vec) -> Vec:
        out = [0] * self.ambient_rank
        for q, row in zip(coeffs, self.basis):
            if q:
                out = [x + q * y for x, y in zip(out, row)]
        return tuple(out)


def row_lattice(m: Mat, ambient_rank: int) -> LatticeBasis:
    return LatticeBasis(ambient_rank, hermite_normal_form(m, ambient_rank))


def image_lattice(m: Mat) -> LatticeBasis:
    """Lattice spanned by the columns of ``m`` (the image of x -> m.x)."""
    nrows, _ = dims(m)
    return row_lattice(transpose(m), nrows)


def kernel_lattice(m: Mat, ncols: int | None = None) -> LatticeBasis:
    """Canonical basis of the full integer kernel {x : m.x = 0}.

    Row-reduce the transpose while tracking the transform; the transform
    rows paired with zero HNF rows span the kernel.
    """
    nrows, cols = dims(m)
    if ncols is not None:
        cols = ncols
    a = [list(col) for col in zip(*m)] if nrows else [[] for _ in range(cols)]
    if nrows == 0:
        a = [[0] for _ in range(cols)]
        nrows = 1
    u = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    r = _hnf_rows(a, nrows, companions=u)
    return row_lattice(tuple(tuple(row) for row in u[r:]), cols)


def smith_normal_form(m: Mat) -> tuple[Mat, Mat, Mat]:
    """Smith normal form: returns (D, U, V) with U.m.V = D.

    D is diagonal with nonnegative entries d1 | d2 | ..., and U, V are
    unimodular.  Pivots are chosen by least magnitude to limit growth.
    """
    nrows, ncols = dims(m)
    a = [list(row) for row in m]
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    t = 0
    while t < min(nrows, ncols):
        # locate a minimal-magnitude pivot in the trailing submatrix
        piv = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        u[t], u[i] = u[i], u[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
            for row in v:
                row[t], row[j] = row[j], row[t]
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        u[t], u[i] = u[i], u[t]
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        for row in v:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the trailing submatrix by the pivot
            bad = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    to_mat = lambda rows: tuple(tuple(r) for r in rows)
    return to_mat(a), to_mat(u), to_mat(v)


class SnfSolver:
    """Reusable integer solver for m.x = b built on one SNF factorization."""

    def __init__(self, m: Mat):
        self.nrows, self.ncols = dims(m)
        d, u, v = smith_normal_form(m)
        self.diag = [d[i][i] for i in range(min(self.nrows, self.ncols))]
        self.u = u
        self.v = v
        self.kernel_rank = self.ncols - sum(1 for x in self.diag if x)

    def solve(self, b: Vec) -> Vec | None:
        ub = mat_vec(self.u, b)
        y = [0] * self.ncols
        for i, x in enumerate(ub):
            if i < len(self.diag) and self.diag[i]:
                q, r = divmod(x, self.diag[i])
                if r:
                    return None
                y[i] = q
            elif x:
                return None
        return mat_vec(self.v, tuple(y))


def solve_linear(m: Mat, b: Vec) -> Vec | None:
    """Some integer x with m.x = b, or None when no integer solution exists."""
    if len(b) != len(m):
        raise ValueError("right-hand side length must match the row count")
    return SnfSolver(m).solve(b)


def inverse_unimodular(m: Mat) -> Mat:
    """Exact inverse of a unimodular integer matrix."""
    n = len(m)
    solver = SnfSolver(m)
    cols = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        x = solver.solve(e)
        if x is None:
            raise ValueError("matrix is not unimodular")
        cols.append(x)
    return transpose(tuple(cols))


@dataclass(frozen=True)
class AbelianInvariants:
    """Isomorphism type of a finitely generated abelian group.

    ``torsion_factors`` is the invariant-factor chain d1 | d2 | ... with
    every factor >= 2; ``free_rank`` counts Z summands.
    """

    torsion_factors: tuple[int, ...]
    free_rank: int

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no order")
        return prod(self.torsion_factors)

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion_factors]
        return " + ".join(parts) if parts else "0"


def quotient_invariants(ambient_rank: int, sub: LatticeBasis,
                        sup: LatticeBasis) -> AbelianInvariants:
    """Invariants of sup/sub for lattices sub <= sup inside Z^ambient_rank."""
    coords = []
    for row in sub.basis:
        c = sup.coordinates(row)
        if c is None:
            raise ValueError("sub is not contained in sup")
        coords.append(c)
    r = sup.rank
    if r == 0:
        return AbelianInvariants((), 0)
    d, _, _ = smith_normal_form(tuple(coords) if coords else ((0,) * r,))
    diag = [d[i][i] for i in range(min(len(d), r))] + [0] * max(0, r - len(coords))
    diag = diag[:r]
    torsion = tuple(x for x in diag if x > 1)
    free = sum(1 for x in diag if x == 0)
    return AbelianInvariants(torsion, free)


def enumerate_box(bounds: list[int]):
    """All tuples t with 0 <= t[i] < bounds[i], in lexicographic order."""
    return product(*(range(b) for b in bounds))
