"""Exhaustive families of small test objects.

Every structure matrix is drawn from a fixed finite coefficient set.  Linear
constraints are solved exactly, their solution points with coordinates in the
set are enumerated, and the remaining quadratic axioms are filtered in batch.
Only B = k is supported: then B-modules are plain vector spaces.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .algebra import Algebra, Bimodule, direct_sum, ground, left_module
from .coalg import Coalgebra, ComoduleAlgebra, ModuleCoalgebra, free_module_coalgebra
from .exactla import Field, Matrix, rref
from .hopfmod import BCBimodule, DKHopfModule


class TooManyCandidates(ValueError):
    pass


def default_coefficients(field: Field) -> tuple:
    """The whole field for GF(p), {0, 1} over Q."""
    return tuple(range(field.p)) if field.is_finite else (0, 1)


def _dense(M: Matrix) -> np.ndarray:
    return np.array([[int(x) for x in r] for r in M.rows], dtype=np.int64).reshape(M.nrows, M.ncols)


def _reduce(field: Field, arr: np.ndarray) -> np.ndarray:
    return arr % field.p if field.is_finite else arr


def _grid(coeffs: Sequence[int], r: int, cap: int) -> np.ndarray:
    if len(coeffs) ** r > cap:
        raise TooManyCandidates(f"{len(coeffs)}^{r} candidate points")
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    c = np.array(coeffs, dtype=np.int64)
    idx = np.indices((len(coeffs),) * r).reshape(r, -1).T
    return c[idx]


def affine_points(field: Field, system: Matrix, rhs: Sequence, coeffs: Sequence[int],
                  cap: int = 1 << 20) -> np.ndarray:
    """All x with system @ x = rhs and every coordinate in ``coeffs``, as rows."""
    n = system.ncols
    aug = system.hstack(Matrix.column(field, [-field(x) for x in rhs]))
    R, piv = rref(aug)
    if n in piv:
        return np.zeros((0, n), dtype=np.int64)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    if field.is_finite:
        return _grid_points(field, R, piv, free, n, coeffs, cap)
    return _search_points(R, piv, free, n, coeffs, cap)


def _grid_points(field, R, piv, free, n, coeffs, cap):
    p = field.p
    F = _grid(coeffs, len(free), cap)
    X = np.zeros((F.shape[0], n), dtype=np.int64)
    X[:, free] = F
    for row, q in zip(R, piv):
        w = np.array([int(row[f]) for f in free], dtype=np.int64)
        X[:, q] = -(X[:, free] @ w + int(row[n])) % p
    keep = np.all(np.isin(X, np.array(sorted(set(coeffs)), dtype=np.int64)), axis=1)
    return X[keep]


def _search_points(R, piv, free, n, coeffs, cap):
    """Depth-first search over the free coordinates with interval pruning: each
    pivot coordinate is an integer-scaled affine function of the free ones."""
    S = sorted(set(coeffs))
    smin, smax = S[0], S[-1]
    Sset = set(S)
    rows = []
    for row, q in zip(R, piv):
        D = lcm(*(Fraction(row[j]).denominator for j in free + [n]))
        w = {f: int(Fraction(row[f]) * D) for f in free if row[f]}
        rows.append((q, D, int(Fraction(row[n]) * D), w))
    touching = {f: [(r, w[f]) for r, (_, _, _, w) in enumerate(rows) if f in w] for f in free}
    partial = [c for (_, _, c, _) in rows]
    lo = [sum(min(x * smin, x * smax) for x in w.values()) for (_, _, _, w) in rows]
    hi = [sum(max(x * smin, x * smax) for x in w.values()) for (_, _, _, w) in rows]
    out = []
    x = [0] * n
    nodes = [0]

    def feasible(r):
        q, D, _, _ = rows[r]
        # D * x_q = -(partial + rest), rest in [lo, hi]
        top, bot = -(partial[r] + lo[r]), -(partial[r] + hi[r])
        return not (top < D * smin or bot > D * smax)

    def rec(k):
        nodes[0] += 1
        if nodes[0] > cap:
            raise TooManyCandidates("search exceeded its node budget")
        if k == len(free):
            for r, (q, D, _, _) in enumerate(rows):
                num = -partial[r]
                if num % D:
                    return
                v = num // D
                if v not in Sset:
                    return
                x[q] = v
            out.append(list(x))
            return
        f = free[k]
        for v in S:
            x[f] = v
            ok = True
            for r, wf in touching[f]:
                partial[r] += wf * v
                lo[r] -= min(wf * smin, wf * smax)
                hi[r] -= max(wf * smin, wf * smax)
            for r, _ in touching[f]:
                if not feasible(r):
                    ok = False
                    break
            if ok:
                rec(k + 1)
            for r, wf in touching[f]:
                partial[r] -= wf * v
                lo[r] += min(wf * smin, wf * smax)
                hi[r] += max(wf * smin, wf * smax)
        x[f] = 0

    for r in range(len(rows)):
        if not feasible(r):
            return np.zeros((0, n), dtype=np.int64)
    rec(0)
    return np.array(out, dtype=np.int64).reshape(len(out), n)


def _to_matrix(field: Field, arr: np.ndarray) -> Matrix:
    return Matrix(field, arr.tolist(), arr.shape[1])


# modules over singly generated commutative algebras ---------------------------------

def generator_data(A: Algebra):
    """(g, P, E): a basis index g whose powers span A, the coefficients P of g^d in
    terms of 1, g, ..., g^(d-1), and E with e_i = sum_k E[i][k] g^k."""
    f = A.field
    for g in range(A.dim):
        powers = [tuple(A.unit)]
        x = A.identity().col(g)
        while len(powers) <= A.dim:
            powers.append(A.product(powers[-1], x))
        for d in range(1, A.dim + 1):
            Pm = Matrix.from_columns(f, powers[:d], A.dim)
            if Pm.rank() == A.dim and d == A.dim:
                from .exactla import solve_matrix
                rel = solve_matrix(Pm, Matrix.column(f, powers[d]))
                E = solve_matrix(Pm, A.identity())
                return g, [rel[k, 0] for k in range(d)], [[E[k, i] for k in range(d)] for i in range(A.dim)]
    raise ValueError(f"{A.name} is not generated by a single basis element")


def module_structures(A: Algebra, n: int, coeffs: Sequence[int] | None = None,
                      cap: int = 1 << 20) -> list[Matrix]:
    """Left A-module structures on k^n whose generator acts by a matrix with entries
    in ``coeffs``; returned as action matrices n x (dim A * n)."""
    f = A.field
    if A.dim == 1:
        # only scalars act: the basis vector is unit / c
        return [Matrix.identity(f, n).scale(f.inv(A.unit[0]))]
    coeffs = default_coefficients(f) if coeffs is None else coeffs
    g, rel, E = generator_data(A)
    d = A.dim
    if any(Fraction(x).denominator != 1 for row in E for x in row) or any(Fraction(x).denominator != 1 for x in rel):
        raise ValueError("generator data must be integral")
    W = _grid(coeffs, n * n, cap).reshape(-1, n, n)
    I = np.broadcast_to(np.eye(n, dtype=np.int64), W.shape)
    pw = [I, W]
    for _ in range(2, d + 1):
        pw.append(_reduce(f, pw[-1] @ W))
    lhs = pw[d]
    rhs = sum(int(rel[k]) * pw[k] for k in range(d))
    ok = np.all(_reduce(f, lhs - rhs) == 0, axis=(1, 2))
    out = []
    for k in np.nonzero(ok)[0]:
        blocks = [_reduce(f, sum(int(E[i][j]) * pw[j][k] for j in range(d))) for i in range(d)]
        out.append(_to_matrix(f, np.hstack(blocks)))
    return out


# comodules ---------------------------------------------------------------------

def _coassociative(field: Field, comult: Matrix, rho: np.ndarray, c: int, n: int) -> np.ndarray:
    """rho rows: flattened (c*n) x n coaction matrices."""
    R = rho.reshape(-1, c, n, n)
    D = _dense(comult).reshape(c * c, c)
    out = np.empty(R.shape[0], dtype=bool)
    step = 1 << 14
    for s in range(0, R.shape[0], step):
        r = R[s:s + step]
        lhs = (r.reshape(len(r), c, n * n).transpose(0, 2, 1) @ D.T).reshape(len(r), n, n, c, c)
        lhs = lhs.transpose(0, 3, 4, 1, 2)
        rhs = r[:, None, :, :, :] @ r[:, :, None, :, :]   # [k, a, b] = R_b R_a
        out[s:s + step] = np.all(_reduce(field, lhs - rhs) == 0, axis=(1, 2, 3, 4))
    return out


def _counit_system(field: Field, counit: Matrix, c: int, n: int):
    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            r = [0] * (c * n * n)
            for z in range(c):
                r[(z * n + i) * n + j] = counit[0, z]
            rows.append(r)
            rhs.append(1 if i == j else 0)
    return Matrix(field, rows, c * n * n), rhs


def comodule_structures(C: Coalgebra, n: int, coeffs: Sequence[int] | None = None,
                        cap: int = 1 << 20) -> list[Matrix]:
    f = C.field
    coeffs = default_coefficients(f) if coeffs is None else coeffs
    S, rhs = _counit_system(f, C.counit, C.dim, n)
    pts = affine_points(f, S, rhs, coeffs, cap)
    pts = pts[_coassociative(f, C.comult, pts, C.dim, n)]
    return [_to_matrix(f, p.reshape(C.dim * n, n)) for p in pts]


def bc_bimodules(CA: ComoduleAlgebra, C: Coalgebra, max_dim: int = 4, coeffs=None) -> list[BCBimodule]:
    f = CA.field
    B = CA.B
    if B.dim != 1:
        raise ValueError("test families need B = k")
    out = []
    for n in range(1, max_dim + 1):
        carrier = left_module(B, n, Matrix.identity(f, n))
        for i, rho in enumerate(comodule_structures(C, n, coeffs)):
            out.append(BCBimodule(B, C, carrier, rho, name=f"M{n}.{i:04d}"))
    return out


# Hopf modules --------------------------------------------------------------------

def _compat_system(CA: ComoduleAlgebra, Z: ModuleCoalgebra, L: np.ndarray, n: int) -> np.ndarray:
    """Rows of the linear conditions zeta(a m) = a_-1 m_-1 (x) a_0 m_0 on zeta
    (row-major, (z*n) x n) for a fixed action L (n x dimA*n)."""
    H, A = CA.H, CA.A
    h, a, z = H.dim, A.dim, Z.dim
    Lt = L.reshape(n, a, n)                              # [i, b, k]
    nu = _dense(CA.nu).reshape(h, a, a)                  # [h, b, a]
    Za = _dense(Z.action).reshape(z, h, z)               # [z', h, z]
    K = np.einsum("phz,ibk,hbq->piqzk", Za, Lt, nu)      # [z', i, a, z, k]
    # variables zeta[z, k, j]; equation index (z', i, a, j)
    M = np.zeros((z, n, a, n, z, n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    # + sum_k zeta[z', i, k] L[k, a, j]
    M += np.einsum("pq,ir,saj->piajqrs", np.eye(z, dtype=np.int64), eye, Lt)
    # - sum_{z,k} K[z', i, a, z, k] zeta[z, k, j]
    M -= np.einsum("piaqr,js->piajqrs", K, eye)
    return M.reshape(z * n * a * n, z * n * n)


def iter_hopf_modules(CA: ComoduleAlgebra, Z: ModuleCoalgebra | None = None, max_dim: int = 4,
                      coeffs=None, cap: int = 1 << 20):
    """Hopf modules of dimension 1..max_dim, lazily and in a fixed order."""
    f = CA.field
    A = CA.A
    if Z is None:
        from .coalg import trivial_coalgebra
        Z = free_module_coalgebra(CA.H, trivial_coalgebra(f))
    coeffs = default_coefficients(f) if coeffs is None else coeffs
    for n in range(1, max_dim + 1):
        count = 0
        cs, crhs = _counit_system(f, Z.Z.counit, Z.dim, n)
        for L in module_structures(A, n, coeffs, cap):
            compat = _reduce(f, _compat_system(CA, Z, _dense(L), n))
            system = Matrix(f, compat.tolist() + [list(r) for r in cs.rows], Z.dim * n * n)
            pts = affine_points(f, system, [0] * compat.shape[0] + crhs, coeffs, cap)
            pts = pts[_coassociative(f, Z.Z.comult, pts, Z.dim, n)]
            carrier = Bimodule(A, ground(f), n, L, Matrix.identity(f, n))
            for p in pts:
                yield DKHopfModule(CA, Z, carrier, _to_matrix(f, p.reshape(Z.dim * n, n)),
                                   name=f"N{n}.{count:04d}")
                count += 1


def hopf_modules(CA: ComoduleAlgebra, Z: ModuleCoalgebra | None = None, max_dim: int = 4,
                 coeffs=None, cap: int = 1 << 20) -> list[DKHopfModule]:
    return list(iter_hopf_modules(CA, Z, max_dim, coeffs, cap))


def counit_counterexample(CA: ComoduleAlgebra, max_dim: int = 4, coeffs=(0, 1, -1)) -> DKHopfModule | None:
    """The first Hopf module (Z = H) whose adjunction counit is not bijective."""
    from .coalg import trivial_coalgebra
    from .hopfmod import adjunction_counit
    C = trivial_coalgebra(CA.field)
    for N in iter_hopf_modules(CA, None, max_dim, coeffs):
        if not adjunction_counit(CA, C, N).is_invertible():
            return N
    return None


def _is_grouplike_basis(C: Coalgebra) -> bool:
    n = C.dim
    return all(C.comult.col(i) == tuple(C.field.one if j == i * n + i else C.field.zero for j in range(n * n))
               for i in range(n))


def hopf_module_idempotents(N: DKHopfModule, coeffs=None, cap: int = 1 << 20) -> list[Matrix]:
    """Idempotent A-linear, Z-colinear endomorphisms of N with entries in ``coeffs``."""
    f = N.CA.field
    coeffs = default_coefficients(f) if coeffs is None else coeffs
    n, a, z = N.dim, N.CA.A.dim, N.Z.dim
    L = _dense(N.carrier.left).reshape(n, a, n)
    zt = _dense(N.coaction).reshape(z, n, n)
    eye = np.eye(n, dtype=np.int64)
    # variables P[r, s]; P L(a, m) = L(a, P m) and zeta P = (1 (x) P) zeta
    lin = (np.einsum("ix,yaj->iajxy", eye, L) - np.einsum("iax,yj->iajxy", L, eye)).reshape(-1, n * n)
    col = (np.einsum("zix,yj->zijxy", zt, eye) - np.einsum("ix,zyj->zijxy", eye, zt)).reshape(-1, n * n)
    system = _reduce(f, np.vstack([lin, col]))
    pts = affine_points(f, Matrix(f, system.tolist(), n * n), [0] * system.shape[0], coeffs, cap)
    P = pts.reshape(-1, n, n)
    ok = np.all(_reduce(f, P @ P - P) == 0, axis=(1, 2))
    return [_to_matrix(f, p) for p in P[ok]]


def graded_hopf_modules(CA: ComoduleAlgebra, C: Coalgebra, max_dim: int = 4,
                        coeffs=None) -> list[DKHopfModule]:
    """Hopf modules for Z = H (x) kC2 over a finite field, as H-Hopf modules with a
    splitting idempotent: for grouplike C the C-part of the coaction is a grading
    by Hopf-module idempotents, so this is every such structure."""
    f = CA.field
    if not f.is_finite or C.dim != 2 or not _is_grouplike_basis(C):
        raise ValueError("graded enumeration needs a finite field and grouplike C of dim 2")
    Z = free_module_coalgebra(CA.H, C)
    h = CA.H.dim
    out = []
    counts = {}
    for N in hopf_modules(CA, None, max_dim, coeffs):
        n = N.dim
        blocks = [N.coaction.select_rows(range(k * n, (k + 1) * n)) for k in range(h)]
        for P in hopf_module_idempotents(N, coeffs):
            Q = N.carrier.identity() - P
            rows = []
            for k in range(h):
                rows += (P @ blocks[k]).rows + (Q @ blocks[k]).rows
            c = counts.get(n, 0)
            counts[n] = c + 1
            out.append(DKHopfModule(CA, Z, N.carrier, Matrix(f, rows, n), name=f"G{n}.{c:05d}"))
    return out


def direct_sums(summands: Sequence[Bimodule], max_dim: int) -> list[Bimodule]:
    """Every direct sum of the given modules (with repetition, up to order) of
    total dimension <= max_dim."""
    out = []

    def grow(start, acc):
        for i in range(start, len(summands)):
            S = summands[i]
            if (acc.dim if acc else 0) + S.dim > max_dim:
                continue
            nxt = S if acc is None else direct_sum(acc, S)
            out.append(nxt)
            grow(i, nxt)

    grow(0, None)
    return sorted(out, key=lambda M: M.dim)
