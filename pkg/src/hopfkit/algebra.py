"""Finite-dimensional algebras, bimodules and tensor products over a base.

An algebra of dimension n stores its multiplication as an n x n^2 matrix whose
column ``i*n + j`` holds the coordinates of ``e_i e_j``.  A bimodule over
(A, B) stores ``left`` (A (x) M -> M) and ``right`` (M (x) B -> M) the same way.
Left modules are bimodules whose right algebra is the ground field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactla import (
    DimensionMismatch,
    Field,
    Matrix,
    column_space,
    kernel_basis,
    permute_factors,
    rref,
    solve_matrix,
    tensor_unflatten,
)


class AlgebraMismatch(ValueError):
    pass


class NotBalanced(ValueError):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} at {self.witness}"


def violations_of(name: str, diff: Matrix, shape_in: Sequence[int], limit: int = 8) -> list[Violation]:
    """Locate nonzero entries of ``diff``; witness = (domain multi-index..., row)."""
    out = []
    for i, j in diff.nonzero_entries():
        out.append(Violation(name, tensor_unflatten(j, shape_in) + (i,)))
        if len(out) >= limit:
            break
    return out


class Algebra:
    def __init__(self, field: Field, dim: int, mult: Matrix, unit: Sequence, name: str = ""):
        if mult.shape != (dim, dim * dim):
            raise DimensionMismatch(f"multiplication must be {dim}x{dim * dim}, got {mult.shape}")
        if len(unit) != dim:
            raise DimensionMismatch("unit vector length")
        self.field = field
        self.dim = dim
        self.mult = mult
        self.unit = tuple(field(x) for x in unit)
        self.name = name

    @classmethod
    def from_tensor(cls, field, m, unit, name=""):
        """From ``m[i][j][k]``, the coefficient of e_k in e_i e_j."""
        n = len(m)
        rows = [[0] * (n * n) for _ in range(n)]
        for i in range(n):
            if len(m[i]) != n:
                raise DimensionMismatch(f"mult[{i}] has length {len(m[i])}, expected {n}")
            for j in range(n):
                if len(m[i][j]) != n:
                    raise DimensionMismatch(f"mult[{i}][{j}] has length {len(m[i][j])}, expected {n}")
                for k in range(n):
                    rows[k][i * n + j] = m[i][j][k]
        return cls(field, n, Matrix(field, rows, n * n), unit, name)

    def tensor(self):
        n = self.dim
        return [[list(self.mult.col(i * n + j)) for j in range(n)] for i in range(n)]

    @property
    def unit_map(self) -> Matrix:
        return Matrix.column(self.field, self.unit)

    def basis_product(self, i, j) -> tuple:
        return self.mult.col(i * self.dim + j)

    def product(self, u, v) -> tuple:
        f = self.field
        acc = [f.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                c = a * b
                for k, x in enumerate(self.mult.col(i * self.dim + j)):
                    if x:
                        acc[k] += c * x
        return tuple(f.reduce(x) for x in acc)

    def left_mult_matrix(self, u) -> Matrix:
        """Matrix of x -> u x."""
        n = self.dim
        cols = [self.product(u, tuple(self.field.one if k == j else self.field.zero for k in range(n)))
                for j in range(n)]
        return Matrix.from_columns(self.field, cols, n)

    def right_mult_matrix(self, u) -> Matrix:
        n = self.dim
        cols = [self.product(tuple(self.field.one if k == j else self.field.zero for k in range(n)), u)
                for j in range(n)]
        return Matrix.from_columns(self.field, cols, n)

    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def is_commutative(self) -> bool:
        sw = permute_factors(self.field, [self.dim, self.dim], [1, 0])
        return self.mult @ sw == self.mult

    def __eq__(self, other):
        return (isinstance(other, Algebra) and self.field == other.field
                and self.mult == other.mult and self.unit == other.unit)

    def __hash__(self):
        return hash((self.mult, self.unit))

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, {self.field})"


def ground(field: Field) -> Algebra:
    return Algebra(field, 1, Matrix.identity(field, 1), [1], name="k")


def check_algebra(A: Algebra) -> list[Violation]:
    n = A.dim
    I = A.identity()
    m = A.mult
    out = violations_of("associativity", m @ m.kron(I) - m @ I.kron(m), [n, n, n])
    u = A.unit_map
    out += violations_of("left unit", m @ u.kron(I) - I, [n])
    out += violations_of("right unit", m @ I.kron(u) - I, [n])
    return out


def tensor_algebra(A1: Algebra, A2: Algebra) -> Algebra:
    """A1 (x) A2 over the ground field, componentwise product."""
    f = A1.field
    sw = permute_factors(f, [A1.dim, A2.dim, A1.dim, A2.dim], [0, 2, 1, 3])
    mult = A1.mult.kron(A2.mult) @ sw
    unit = A1.unit_map.kron(A2.unit_map).col(0)
    return Algebra(f, A1.dim * A2.dim, mult, unit, name=f"{A1.name}(x){A2.name}")


def opposite(A: Algebra) -> Algebra:
    sw = permute_factors(A.field, [A.dim, A.dim], [1, 0])
    return Algebra(A.field, A.dim, A.mult @ sw, A.unit, name=f"{A.name}^op")


def is_algebra_morphism(f: Matrix, src: Algebra, dst: Algebra) -> bool:
    return (f @ src.mult == dst.mult @ f.kron(f)
            and f @ src.unit_map == dst.unit_map)


# inclusions ------------------------------------------------------------------

class AlgebraInclusion:
    def __init__(self, sub: Algebra, amb: Algebra, embed: Matrix):
        if embed.shape != (amb.dim, sub.dim):
            raise DimensionMismatch("embedding shape")
        self.sub, self.amb, self.embed = sub, amb, embed

    def check(self) -> list[Violation]:
        out = []
        if self.embed.rank() != self.sub.dim:
            out.append(Violation("embedding injective", ()))
        e = self.embed
        out += violations_of("embedding multiplicative",
                             e @ self.sub.mult - self.amb.mult @ e.kron(e), [self.sub.dim] * 2)
        out += violations_of("embedding unital", e @ self.sub.unit_map - self.amb.unit_map, [1])
        return out


def identity_inclusion(A: Algebra) -> AlgebraInclusion:
    return AlgebraInclusion(A, A, A.identity())


def ground_inclusion(A: Algebra) -> AlgebraInclusion:
    return AlgebraInclusion(ground(A.field), A, A.unit_map)


def subalgebra_from_basis(A: Algebra, J: Matrix, name: str = "") -> AlgebraInclusion:
    """The subalgebra spanned by the columns of J (closure is checked)."""
    f = A.field
    r = J.ncols
    prods = [A.product(J.col(i), J.col(j)) for i in range(r) for j in range(r)]
    P = Matrix.from_columns(f, prods, A.dim)
    X = solve_matrix(J, P)
    if X is None:
        raise ValueError("span is not closed under multiplication")
    u = solve_matrix(J, A.unit_map)
    if u is None:
        raise ValueError("span does not contain the unit")
    return AlgebraInclusion(Algebra(f, r, X, u.col(0), name=name), A, J)


# bimodules -------------------------------------------------------------------

class Bimodule:
    """(A, B)-bimodule with left: A (x) M -> M and right: M (x) B -> M."""

    def __init__(self, left_alg: Algebra, right_alg: Algebra, dim: int,
                 left: Matrix, right: Matrix, name: str = ""):
        if left.shape != (dim, left_alg.dim * dim):
            raise DimensionMismatch(f"left action shape {left.shape}")
        if right.shape != (dim, dim * right_alg.dim):
            raise DimensionMismatch(f"right action shape {right.shape}")
        self.left_alg, self.right_alg = left_alg, right_alg
        self.field = left_alg.field
        self.dim = dim
        self.left, self.right = left, right
        self.name = name

    def identity(self):
        return Matrix.identity(self.field, self.dim)

    def act_left(self, a, m) -> tuple:
        from .exactla import vec_kron
        return self.left.apply(vec_kron(a, m, self.field))

    def act_right(self, m, b) -> tuple:
        from .exactla import vec_kron
        return self.right.apply(vec_kron(m, b, self.field))

    def left_matrix_of(self, a) -> Matrix:
        """Matrix of m -> a.m."""
        return self.left @ Matrix.column(self.field, a).kron(self.identity())

    def right_matrix_of(self, b) -> Matrix:
        return self.right @ self.identity().kron(Matrix.column(self.field, b))

    def same_shape(self, other) -> bool:
        return (self.left_alg == other.left_alg and self.right_alg == other.right_alg
                and self.dim == other.dim)

    def __eq__(self, other):
        return (isinstance(other, Bimodule) and self.same_shape(other)
                and self.left == other.left and self.right == other.right)

    def __hash__(self):
        return hash((self.dim, self.left, self.right))

    def __repr__(self):
        return (f"Bimodule({self.name or '?'}: {self.left_alg.name or '?'},"
                f"{self.right_alg.name or '?'}; dim={self.dim})")


def check_bimodule(M: Bimodule) -> list[Violation]:
    A, B = M.left_alg, M.right_alg
    I = M.identity()
    l, r = M.left, M.right
    out = violations_of("left associativity", l @ A.mult.kron(I) - l @ A.identity().kron(l),
                        [A.dim, A.dim, M.dim])
    out += violations_of("left unit", l @ A.unit_map.kron(I) - I, [M.dim])
    out += violations_of("right associativity", r @ I.kron(B.mult) - r @ r.kron(B.identity()),
                         [M.dim, B.dim, B.dim])
    out += violations_of("right unit", r @ I.kron(B.unit_map) - I, [M.dim])
    out += violations_of("actions commute", r @ l.kron(B.identity()) - l @ A.identity().kron(r),
                         [A.dim, M.dim, B.dim])
    return out


def trivial_right(field: Field, dim: int) -> Matrix:
    return Matrix.identity(field, dim)


def left_module(A: Algebra, dim: int, left: Matrix, name: str = "") -> Bimodule:
    k = ground(A.field)
    return Bimodule(A, k, dim, left, trivial_right(A.field, dim), name)


def vector_space(field: Field, dim: int, name: str = "") -> Bimodule:
    k = ground(field)
    return Bimodule(k, k, dim, Matrix.identity(field, dim), Matrix.identity(field, dim), name)


def regular_bimodule(A: Algebra) -> Bimodule:
    return Bimodule(A, A, A.dim, A.mult, A.mult, name=A.name)


def direct_sum(P: Bimodule, Q: Bimodule, name: str = "") -> Bimodule:
    if not (P.left_alg == Q.left_alg and P.right_alg == Q.right_alg):
        raise AlgebraMismatch("direct summands must have the same algebras")
    f = P.field
    p, q = P.dim, Q.dim
    zp, zq = (f.zero,) * p, (f.zero,) * q

    def blocks(X, Y, outer, inner_first):
        cols = []
        for i in range(outer):
            for m in range(p + q):
                if m < p:
                    cols.append(X.col(i * p + m if inner_first else m * outer + i) + zq)
                else:
                    cols.append(zp + Y.col(i * q + m - p if inner_first else (m - p) * outer + i))
        return Matrix.from_columns(f, cols, p + q)

    left = blocks(P.left, Q.left, P.left_alg.dim, True)
    # right actions are indexed m * dim B + b, so regroup the columns afterwards
    bd = P.right_alg.dim
    by_b = blocks(P.right, Q.right, bd, False)
    right = by_b.select_columns([b * (p + q) + m for m in range(p + q) for b in range(bd)])
    return Bimodule(P.left_alg, P.right_alg, p + q, left, right,
                    name=name or f"{P.name}(+){Q.name}")


def generated_submodule(M: Bimodule, vectors, name: str = "") -> tuple[Bimodule, Matrix]:
    """The sub-bimodule A v B spanned by ``vectors``, with its inclusion matrix."""
    f = M.field
    A, B = M.left_alg, M.right_alg
    spans = []
    for v in vectors:
        for i in range(A.dim):
            av = M.left_matrix_of(A.identity().col(i)).apply(v)
            spans += [M.right_matrix_of(B.identity().col(j)).apply(av) for j in range(B.dim)]
    J = column_space(Matrix.from_columns(f, spans, M.dim))
    d = J.ncols
    left = solve_matrix(J, M.left @ A.identity().kron(J))
    right = solve_matrix(J, M.right @ J.kron(B.identity()))
    return Bimodule(A, B, d, left, right, name=name or f"<{M.name}>"), J


def restrict(M: Bimodule, left: AlgebraInclusion | None = None,
             right: AlgebraInclusion | None = None) -> Bimodule:
    """Restrict one or both actions along inclusions into the acting algebras."""
    I = M.identity()
    la, l = M.left_alg, M.left
    ra, r = M.right_alg, M.right
    if left is not None:
        if left.amb != la:
            raise AlgebraMismatch("left inclusion does not land in the left algebra")
        la, l = left.sub, l @ left.embed.kron(I)
    if right is not None:
        if right.amb != ra:
            raise AlgebraMismatch("right inclusion does not land in the right algebra")
        ra, r = right.sub, r @ I.kron(right.embed)
    return Bimodule(la, ra, M.dim, l, r, M.name)


def forget_right(M: Bimodule) -> Bimodule:
    """The underlying left module."""
    return restrict(M, right=ground_inclusion(M.right_alg))


# maps ------------------------------------------------------------------------

class BimoduleMap:
    def __init__(self, src: Bimodule, dst: Bimodule, matrix: Matrix):
        if matrix.shape != (dst.dim, src.dim):
            raise DimensionMismatch(f"map shape {matrix.shape} vs {dst.dim}x{src.dim}")
        self.src, self.dst, self.matrix = src, dst, matrix

    def check(self) -> list[Violation]:
        s, d, X = self.src, self.dst, self.matrix
        A, B = s.left_alg, s.right_alg
        out = violations_of("left linear", X @ s.left - d.left @ A.identity().kron(X), [A.dim, s.dim])
        out += violations_of("right linear", X @ s.right - d.right @ X.kron(B.identity()), [s.dim, B.dim])
        return out

    def compose(self, other: "BimoduleMap") -> "BimoduleMap":
        """self o other."""
        return BimoduleMap(other.src, self.dst, self.matrix @ other.matrix)

    def __eq__(self, other):
        return isinstance(other, BimoduleMap) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"BimoduleMap({self.src.dim}->{self.dst.dim})"


def identity_map(M: Bimodule) -> BimoduleMap:
    return BimoduleMap(M, M, M.identity())


def equivariance_system(P: Bimodule, Q: Bimodule) -> Matrix:
    """Linear conditions on X (row-major, q x p) for X to be a bimodule map."""
    f = P.field
    if P.left_alg != Q.left_alg or P.right_alg != Q.right_alg:
        raise AlgebraMismatch("bimodules over different algebras")
    A, B = P.left_alg, P.right_alg
    p, q = P.dim, Q.dim
    nvar = q * p
    rows = []

    def add(d, k, c):
        v = f.reduce(d.get(k, 0) + c)
        if v:
            d[k] = v
        else:
            d.pop(k, None)

    # X l_P (a (x) m) = l_Q (a (x) X m), and the same on the right
    for act_P, act_Q, adim, left in ((P.left, Q.left, A.dim, True), (P.right, Q.right, B.dim, False)):
        PT = act_P.T
        for i in range(q):
            Qi = act_Q.row_dict(i)
            for a in range(adim):
                for m in range(p):
                    d = {}
                    col = a * p + m if left else m * adim + a
                    for v, c in PT.row_dict(col).items():
                        add(d, i * p + v, c)
                    for u in range(q):
                        c = Qi.get(a * q + u if left else u * adim + a)
                        if c:
                            add(d, u * p + m, -c)
                    rows.append(d)
    return Matrix._sparse(f, len(rows), nvar, rows)


def bimodule_hom_basis(P: Bimodule, Q: Bimodule) -> list[BimoduleMap]:
    if P.dim == 0 or Q.dim == 0:
        return []
    ker = kernel_basis(equivariance_system(P, Q))
    return [BimoduleMap(P, Q, Matrix(P.field, [v[i * P.dim:(i + 1) * P.dim] for i in range(Q.dim)], P.dim))
            for v in ker]


def map_from_coords(P: Bimodule, Q: Bimodule, basis: list[BimoduleMap], coords) -> BimoduleMap:
    f = P.field
    M = Matrix.zeros(f, Q.dim, P.dim)
    for c, b in zip(coords, basis):
        if c:
            M = M + b.matrix.scale(c)
    return BimoduleMap(P, Q, M)


# tensor over a base ----------------------------------------------------------

class TensorOver:
    """P (x)_B Q as a quotient of P (x) Q, with projection and section.

    ``proj`` maps P (x) Q onto the quotient coordinates; ``sect`` sends each
    quotient basis vector to a representative standard tensor, so that
    ``proj @ sect`` is the identity.
    """

    def __init__(self, P: Bimodule, Q: Bimodule):
        if P.right_alg != Q.left_alg:
            raise AlgebraMismatch(f"cannot tensor {P!r} with {Q!r}: base algebras differ")
        f = P.field
        self.P, self.Q = P, Q
        B = P.right_alg
        p, q = P.dim, Q.dim
        n = p * q
        self.balancing = P.right.kron(Matrix.identity(f, q)) - Matrix.identity(f, p).kron(Q.left)
        A, C = P.left_alg, Q.right_alg
        lift_left = P.left.kron(Matrix.identity(f, q))
        lift_right = Matrix.identity(f, p).kron(Q.right)
        if self.balancing.is_zero():
            # nothing is identified, as over the ground field
            self.proj = self.sect = Matrix.identity(f, n)
            self.dim, self.base = n, B
            self.module = Bimodule(A, C, n, lift_left, lift_right, name=f"{P.name}(x){Q.name}")
            return
        rows, pivots = rref(self.balancing.T)
        pivset = set(pivots)
        free = [j for j in range(n) if j not in pivset]
        pos = {j: k for k, j in enumerate(free)}
        d = len(free)
        proj = [[f.zero] * n for _ in range(d)]
        for j in free:
            proj[pos[j]][j] = f.one
        for row, pcol in zip(rows, pivots):
            for j in free:
                if row[j]:
                    proj[pos[j]][pcol] = f.reduce(-row[j])
        self.proj = Matrix(f, proj, n)
        sect = [[f.zero] * d for _ in range(n)]
        for j in free:
            sect[j][pos[j]] = f.one
        self.sect = Matrix(f, sect, d)
        self.dim = d
        self.base = B
        left = self.proj @ lift_left @ A.identity().kron(self.sect)
        right = self.proj @ lift_right @ self.sect.kron(C.identity())
        self.module = Bimodule(A, C, d, left, right, name=f"{P.name}(x){Q.name}")

    def element(self, u, v) -> tuple:
        """Class of u (x) v."""
        from .exactla import vec_kron
        return self.proj.apply(vec_kron(u, v, self.P.field))


_tensor_cache: dict = {}


def tensor_over(P: Bimodule, Q: Bimodule) -> TensorOver:
    key = (id(P), id(Q))
    hit = _tensor_cache.get(key)
    if hit is not None and hit.P is P and hit.Q is Q:
        return hit
    T = TensorOver(P, Q)
    if len(_tensor_cache) > 4096:
        _tensor_cache.clear()
    _tensor_cache[key] = T
    return T


def induce_on_quotient(T: TensorOver, f: Matrix) -> Matrix:
    """The unique map fbar on P (x)_B Q with f = fbar o proj."""
    if f.ncols != T.P.dim * T.Q.dim:
        raise DimensionMismatch("map is not defined on P (x) Q")
    bad = f @ T.balancing
    for i, j in bad.nonzero_entries():
        raise NotBalanced(
            f"map does not vanish on balancing generator {j}",
            tensor_unflatten(j, [T.P.dim, T.base.dim, T.Q.dim]),
        )
    return f @ T.sect


def tensor_maps(src: TensorOver, dst: TensorOver, f: Matrix, g: Matrix) -> Matrix:
    """f (x)_B g from src to dst (f, g must be linear over the base)."""
    return dst.proj @ f.kron(g) @ src.sect


def associator(P: Bimodule, Q: Bimodule, R: Bimodule) -> Matrix:
    """(P (x) Q) (x) R -> P (x) (Q (x) R) over the respective bases."""
    PQ = tensor_over(P, Q)
    QR = tensor_over(Q, R)
    left = tensor_over(PQ.module, R)
    right = tensor_over(P, QR.module)
    f = P.field
    return (right.proj @ Matrix.identity(f, P.dim).kron(QR.proj)
            @ PQ.sect.kron(Matrix.identity(f, R.dim)) @ left.sect)


def left_unitor(P: Bimodule) -> Matrix:
    """A (x)_A P -> P."""
    T = tensor_over(regular_bimodule(P.left_alg), P)
    return P.left @ T.sect


def right_unitor(P: Bimodule) -> Matrix:
    """P (x)_B B -> P."""
    T = tensor_over(P, regular_bimodule(P.right_alg))
    return P.right @ T.sect


def amitsur_equalizer(inc: AlgebraInclusion) -> Matrix:
    """Kernel of a -> a (x)_B 1 - 1 (x)_B a inside A, as columns."""
    A = inc.amb
    AB = restrict(regular_bimodule(A), right=inc)
    BA = restrict(regular_bimodule(A), left=inc)
    T = tensor_over(AB, BA)
    f = A.field
    one = Matrix.column(f, A.unit)
    I = A.identity()
    diff = T.proj @ (I.kron(one) - one.kron(I))
    return Matrix.from_columns(f, kernel_basis(diff), A.dim)
