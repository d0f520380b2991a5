"""Shared constructions for the test suite."""

import itertools

from hopfkit.algebra import Algebra, Bimodule
from hopfkit.exactla import QQ, Matrix, inverse


def kc2_algebra(field=QQ):
    return Algebra.from_tensor(field, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], [1, 0], name="kC2")


def brute_associativity(A: Algebra) -> bool:
    """Expand (e_i e_j) e_k = e_i (e_j e_k) coefficient by coefficient."""
    n = A.dim
    m = [[A.basis_product(i, j) for j in range(n)] for i in range(n)]
    red = A.field.reduce
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = [red(sum(m[i][j][s] * m[s][k][t] for s in range(n))) for t in range(n)]
        rhs = [red(sum(m[j][k][s] * m[i][s][t] for s in range(n))) for t in range(n)]
        if lhs != rhs:
            return False
    return True


def involution_pair(P_rows, d1, d2, field=QQ):
    """Commuting involutions P diag(d1) P^-1 and P diag(d2) P^-1, or None if P is singular."""
    P = Matrix(field, P_rows)
    Pi = inverse(P)
    if Pi is None:
        return None
    n = P.nrows
    D1 = Matrix(field, [[d1[i] if i == j else 0 for j in range(n)] for i in range(n)])
    D2 = Matrix(field, [[d2[i] if i == j else 0 for j in range(n)] for i in range(n)])
    return P @ D1 @ Pi, P @ D2 @ Pi


def kc2_bimodule(X: Matrix, Y: Matrix, A: Algebra | None = None) -> Bimodule:
    """kC2-bimodule with g acting by X on the left and Y on the right."""
    A = A or kc2_algebra(X.field)
    f = X.field
    n = X.nrows
    I = Matrix.identity(f, n)
    left = I.hstack(X)
    right = Matrix.from_columns(f, [c for m in range(n) for c in (I.col(m), Y.col(m))], n)
    return Bimodule(A, A, n, left, right)
