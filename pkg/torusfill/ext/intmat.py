"""Exact integer matrix utilities.

Python version: 3.
Release: 1.

Licensed under the GNU General Public License, version 3; if this was not
included, you can find it here:
    http://www.gnu.org/licenses/gpl-3.0.txt

Matrices are lists (or tuples) of rows of Python ints, so arithmetic never
overflows.

    FUNCTIONS

identity
mat_mul
shape
det
charpoly
inertia
smith_normal_form

"""

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp


def identity (n):
    """Return the n x n identity matrix as a list of rows."""
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape (m):
    """Return (rows, cols) of a matrix given as a list of rows."""
    return (len(m), len(m[0]) if m else 0)


def mat_mul (a, b):
    """Multiply two matrices given as lists of rows."""
    n = len(b)
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != n:
        raise ValueError('shape mismatch: {} and {}'.format(shape(a),
                                                             shape(b)))
    return [[sum(row[k] * b[k][j] for k in range(n)) for j in range(cols)]
            for row in a]


def det (m):
    """Exact determinant of a square integer matrix."""
    rows, cols = shape(m)
    if rows != cols:
        raise ValueError('determinant of a non-square matrix')
    if rows == 0:
        return 1
    return int(Matrix(m).det())


def charpoly (m):
    """Coefficients of det(xI - m), leading coefficient first."""
    if not m:
        return [1]
    return [int(c) for c in Matrix(m).charpoly().all_coeffs()]


def _sign_changes (coeffs):
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def inertia (m):
    """Inertia of a symmetric integer matrix.

inertia(m) -> (positive, negative, nullity)

All roots of the characteristic polynomial of a symmetric matrix are real, so
Descartes' rule of signs counts the positive eigenvalues exactly.

"""
    rows, cols = shape(m)
    if any(m[i][j] != m[j][i] for i in range(rows) for j in range(cols)):
        raise ValueError('inertia of a non-symmetric matrix')
    coeffs = charpoly(m)
    nullity = 0
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        nullity += 1
    positive = _sign_changes(coeffs)
    return (positive, rows - positive - nullity, nullity)


def _to_rows (m):
    return [[int(x) for x in m.row(i)] for i in range(m.rows)]


def smith_normal_form (rows):
    """Smith normal form with transforms.

smith_normal_form(rows) -> (diagonal, left, right)

left * rows * right is the diagonal matrix with the given diagonal, whose
min(rows, cols) entries are non-negative, each dividing the next, zeros last.

"""
    n, m = shape(rows)
    if not n or not m:
        return ([], identity(n), identity(m))
    D, U, V = smith_normal_decomp(Matrix(rows), domain = ZZ)
    D, left, right = _to_rows(D), _to_rows(U), _to_rows(V)
    k = min(n, m)
    for i in range(k):
        if D[i][i] < 0:
            D[i][i] = -D[i][i]
            left[i] = [-x for x in left[i]]
    # zeros last, keeping the order of the rest
    order = sorted(range(k), key = lambda i: D[i][i] == 0)
    diagonal = [D[i][i] for i in order]
    left = [left[i] for i in order] + left[k:]
    right = [[row[j] for j in order] + row[k:] for row in right]
    return (diagonal, left, right)
