"""Coalgebras, bialgebras, Hopf algebras, comodule-algebras and module-coalgebras.

Comultiplications are stored as (dim^2 x dim) matrices: column i holds the
coordinates of Delta(e_i) in the row-major basis of C (x) C.  Counits are
1 x dim row matrices.  Coactions are left: nu: A -> H (x) A.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import (
    Algebra,
    AlgebraInclusion,
    Violation,
    check_algebra,
    ground,
    subalgebra_from_basis,
    tensor_algebra,
    violations_of,
)
from .exactla import (
    DimensionMismatch,
    Field,
    Matrix,
    kernel_basis,
    permute_factors,
    solve_matrix,
)


class NoAntipode(ArithmeticError):
    pass


class Coalgebra:
    def __init__(self, field: Field, dim: int, comult: Matrix, counit: Matrix, name: str = ""):
        if comult.shape != (dim * dim, dim):
            raise DimensionMismatch(f"comultiplication must be {dim * dim}x{dim}, got {comult.shape}")
        if counit.shape != (1, dim):
            raise DimensionMismatch("counit must be a 1 x dim row")
        self.field, self.dim = field, dim
        self.comult, self.counit = comult, counit
        self.name = name

    @classmethod
    def from_tensor(cls, field, d, counit, name=""):
        """``d[i]`` lists the coefficients of Delta(e_i), either flat (dim^2)
        or nested (dim x dim)."""
        n = len(d)
        cols = []
        for i, entry in enumerate(d):
            if len(entry) == n and all(isinstance(x, (list, tuple)) for x in entry):
                flat = []
                for j, row in enumerate(entry):
                    if len(row) != n:
                        raise DimensionMismatch(f"comult[{i}][{j}] has length {len(row)}, expected {n}")
                    flat.extend(row)
            else:
                flat = list(entry)
            if len(flat) != n * n:
                raise DimensionMismatch(f"comult[{i}] has length {len(flat)}, expected {n * n}")
            cols.append(flat)
        if len(counit) != n:
            raise DimensionMismatch(f"counit has length {len(counit)}, expected {n}")
        return cls(field, n, Matrix.from_columns(field, cols, n * n), Matrix.row(field, counit), name)

    def identity(self):
        return Matrix.identity(self.field, self.dim)

    def delta(self, i) -> tuple:
        return self.comult.col(i)

    def __eq__(self, other):
        return (isinstance(other, Coalgebra) and self.field == other.field
                and self.comult == other.comult and self.counit == other.counit)

    def __hash__(self):
        return hash((self.comult, self.counit))

    def __repr__(self):
        return f"Coalgebra({self.name or '?'}, dim={self.dim}, {self.field})"


def trivial_coalgebra(field: Field) -> Coalgebra:
    return Coalgebra(field, 1, Matrix.identity(field, 1), Matrix.identity(field, 1), name="k")


def check_coalgebra(C: Coalgebra) -> list[Violation]:
    I, d, e = C.identity(), C.comult, C.counit
    out = violations_of("coassociativity", d.kron(I) @ d - I.kron(d) @ d, [C.dim])
    out += violations_of("left counit", e.kron(I) @ d - I, [C.dim])
    out += violations_of("right counit", I.kron(e) @ d - I, [C.dim])
    return out


def tensor_coalgebra(C1: Coalgebra, C2: Coalgebra) -> Coalgebra:
    f = C1.field
    sw = permute_factors(f, [C1.dim, C1.dim, C2.dim, C2.dim], [0, 2, 1, 3])
    comult = sw @ C1.comult.kron(C2.comult)
    return Coalgebra(f, C1.dim * C2.dim, comult, C1.counit.kron(C2.counit),
                     name=f"{C1.name}(x){C2.name}")


def grouplike_coalgebra(field: Field, n: int, name: str = "") -> Coalgebra:
    """Coalgebra with every basis vector grouplike."""
    cols = []
    for i in range(n):
        v = [0] * (n * n)
        v[i * n + i] = 1
        cols.append(v)
    return Coalgebra(field, n, Matrix.from_columns(field, cols, n * n), Matrix.row(field, [1] * n), name)


class Bialgebra:
    def __init__(self, alg: Algebra, coalg: Coalgebra, name: str = ""):
        if alg.field != coalg.field or alg.dim != coalg.dim:
            raise DimensionMismatch("algebra and coalgebra parts disagree")
        self.alg, self.coalg = alg, coalg
        self.field, self.dim = alg.field, alg.dim
        self.name = name or alg.name

    @property
    def mult(self):
        return self.alg.mult

    @property
    def unit_map(self):
        return self.alg.unit_map

    @property
    def comult(self):
        return self.coalg.comult

    @property
    def counit(self):
        return self.coalg.counit

    def identity(self):
        return self.alg.identity()

    def __eq__(self, other):
        return isinstance(other, Bialgebra) and self.alg == other.alg and self.coalg == other.coalg

    def __hash__(self):
        return hash((self.alg, self.coalg))

    def __repr__(self):
        return f"Bialgebra({self.name or '?'}, dim={self.dim}, {self.field})"


def check_bialgebra(B: Bialgebra) -> list[Violation]:
    out = check_algebra(B.alg) + check_coalgebra(B.coalg)
    HH = tensor_algebra(B.alg, B.alg)
    d, e, m, u = B.comult, B.counit, B.mult, B.unit_map
    n = B.dim
    out += violations_of("comultiplication multiplicative", d @ m - HH.mult @ d.kron(d), [n, n])
    out += violations_of("counit multiplicative", e @ m - e.kron(e), [n, n])
    out += violations_of("comultiplication unital", d @ u - u.kron(u), [1])
    out += violations_of("counit unital", e @ u - Matrix.identity(B.field, 1), [1])
    return out


def convolution(B: Bialgebra, f: Matrix, g: Matrix) -> Matrix:
    return B.mult @ f.kron(g) @ B.comult


class HopfAlgebra(Bialgebra):
    def __init__(self, bialg: Bialgebra, antipode: Matrix):
        super().__init__(bialg.alg, bialg.coalg, bialg.name)
        self.bialg = bialg
        self.antipode = antipode

    def __repr__(self):
        return f"HopfAlgebra({self.name or '?'}, dim={self.dim}, {self.field})"


def antipode_system(B: Bialgebra) -> tuple[Matrix, Matrix]:
    """(M, rhs) with M vec(S) = rhs expressing m (S (x) id) Delta = u eps."""
    f, n = B.field, B.dim
    m, d = B.mult, B.comult
    rows, rhs = [], []
    target = B.unit_map @ B.counit
    for k in range(n):
        for q in range(n):
            row = [f.zero] * (n * n)
            for i in range(n):
                for j in range(n):
                    c = m[k, i * n + j]
                    if not c:
                        continue
                    for p in range(n):
                        dv = d[p * n + j, q]
                        if dv:
                            row[i * n + p] += c * dv
            rows.append([f.reduce(x) for x in row])
            rhs.append([target[k, q]])
    return Matrix(f, rows, n * n), Matrix(f, rhs, 1)


def antipode(B: Bialgebra) -> HopfAlgebra:
    """Solve for the convolution inverse of the identity; raise NoAntipode."""
    f, n = B.field, B.dim
    M, rhs = antipode_system(B)
    X = solve_matrix(M, rhs)
    if X is None:
        raise NoAntipode(f"{B.name or 'bialgebra'}: m(S(x)id)Delta = u eps has no solution")
    vec = X.col(0)
    S = Matrix(f, [vec[i * n:(i + 1) * n] for i in range(n)], n)
    I = B.identity()
    target = B.unit_map @ B.counit
    if convolution(B, I, S) != target:
        raise NoAntipode(f"{B.name or 'bialgebra'}: left convolution inverse is not a right inverse")
    if S @ B.unit_map != B.unit_map or B.counit @ S != B.counit:
        raise NoAntipode("antipode candidate fails S(1) = 1 or eps S = eps")
    return HopfAlgebra(B, S)


def check_hopf(H: HopfAlgebra) -> list[Violation]:
    out = check_bialgebra(H)
    S, I = H.antipode, H.identity()
    t = H.unit_map @ H.counit
    out += violations_of("left antipode", convolution(H, S, I) - t, [H.dim])
    out += violations_of("right antipode", convolution(H, I, S) - t, [H.dim])
    return out


def has_antipode(B: Bialgebra) -> bool:
    try:
        antipode(B)
        return True
    except NoAntipode:
        return False


def group_bialgebra(field: Field, table: Sequence[Sequence[int]], unit: int = 0, name: str = "") -> Bialgebra:
    """kG with every group element grouplike."""
    n = len(table)
    m = [[[1 if k == table[i][j] else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    A = Algebra.from_tensor(field, m, [1 if k == unit else 0 for k in range(n)], name)
    return Bialgebra(A, grouplike_coalgebra(field, n, name), name)


def ground_bialgebra(field: Field) -> Bialgebra:
    return Bialgebra(ground(field), trivial_coalgebra(field), "k")


# comodule algebras -------------------------------------------------------------

class ComoduleAlgebra:
    """Left H-comodule algebra A with a chosen subalgebra B of coinvariants.

    When ``Binc`` is omitted, B is the full coinvariant subalgebra.
    """

    def __init__(self, H: Bialgebra, A: Algebra, nu: Matrix,
                 Binc: AlgebraInclusion | None = None, name: str = ""):
        if nu.shape != (H.dim * A.dim, A.dim):
            raise DimensionMismatch(f"coaction must be {H.dim * A.dim}x{A.dim}, got {nu.shape}")
        self.H, self.A, self.nu = H, A, nu
        self.field = A.field
        self.name = name
        if Binc is None:
            Binc = coinvariant_subalgebra(self)
        if Binc.amb != A:
            raise ValueError("B is not included in A")
        self.Binc = Binc
        self.B = Binc.sub

    def __repr__(self):
        return f"ComoduleAlgebra({self.name or '?'}: H={self.H.name}, A={self.A.name}, dim B={self.B.dim})"


def coinvariant_matrix(H: Bialgebra, A_dim: int, nu: Matrix) -> Matrix:
    f = nu.field
    one = H.unit_map.kron(Matrix.identity(f, A_dim))
    return Matrix.from_columns(f, kernel_basis(nu - one), A_dim)


def coinvariants(CA: ComoduleAlgebra) -> Matrix:
    """RREF basis of A^{co H} as columns."""
    return coinvariant_matrix(CA.H, CA.A.dim, CA.nu)


def coinvariant_subalgebra(CA: ComoduleAlgebra) -> AlgebraInclusion:
    J = coinvariant_matrix(CA.H, CA.A.dim, CA.nu)
    return subalgebra_from_basis(CA.A, J, name=f"{CA.A.name}^coH")


def check_comodule_algebra(CA: ComoduleAlgebra) -> list[Violation]:
    H, A, nu = CA.H, CA.A, CA.nu
    IA, IH = A.identity(), H.identity()
    out = []
    HA = tensor_algebra(H.alg, A)
    out += violations_of("coaction multiplicative", nu @ A.mult - HA.mult @ nu.kron(nu), [A.dim, A.dim])
    out += violations_of("coaction unital", nu @ A.unit_map - HA.unit_map, [1])
    out += violations_of("coaction coassociative", H.comult.kron(IA) @ nu - IH.kron(nu) @ nu, [A.dim])
    out += violations_of("coaction counital", H.counit.kron(IA) @ nu - IA, [A.dim])
    e = CA.Binc.embed
    out += violations_of("B inside coinvariants", (nu - H.unit_map.kron(IA)) @ e, [CA.B.dim])
    out += CA.Binc.check()
    # nu is B-bilinear
    for b in range(CA.B.dim):
        x = e.col(b)
        L, R = A.left_mult_matrix(x), A.right_mult_matrix(x)
        out += [Violation("coaction left B-linear", v.witness[:-1] + (b,) + v.witness[-1:])
                for v in violations_of("", nu @ L - IH.kron(L) @ nu, [A.dim])]
        out += [Violation("coaction right B-linear", v.witness[:-1] + (b,) + v.witness[-1:])
                for v in violations_of("", nu @ R - IH.kron(R) @ nu, [A.dim])]
    return out


def regular_comodule_algebra(H: Bialgebra, Binc: AlgebraInclusion | None = None) -> ComoduleAlgebra:
    """A = H with nu = Delta."""
    return ComoduleAlgebra(H, H.alg, H.comult, Binc, name=f"{H.name} over itself")


def trivial_comodule_algebra(H: Bialgebra, A: Algebra, Binc=None) -> ComoduleAlgebra:
    nu = H.unit_map.kron(A.identity())
    return ComoduleAlgebra(H, A, nu, Binc, name=f"{A.name} trivially")


# module coalgebras -------------------------------------------------------------

class ModuleCoalgebra:
    def __init__(self, H: Bialgebra, Z: Coalgebra, action: Matrix, name: str = ""):
        if action.shape != (Z.dim, H.dim * Z.dim):
            raise DimensionMismatch("action shape")
        self.H, self.Z, self.action = H, Z, action
        self.field, self.dim = Z.field, Z.dim
        self.name = name

    def __repr__(self):
        return f"ModuleCoalgebra({self.name or '?'}, dim={self.dim})"


def check_module_coalgebra(MC: ModuleCoalgebra) -> list[Violation]:
    H, Z, al = MC.H, MC.Z, MC.action
    f = MC.field
    IZ, IH = Z.identity(), H.identity()
    out = check_coalgebra(Z)
    out += violations_of("action associative", al @ H.mult.kron(IZ) - al @ IH.kron(al), [H.dim, H.dim, Z.dim])
    out += violations_of("action unital", al @ H.unit_map.kron(IZ) - IZ, [Z.dim])
    sw = permute_factors(f, [H.dim, H.dim, Z.dim, Z.dim], [0, 2, 1, 3])
    out += violations_of("comultiplication H-linear",
                         Z.comult @ al - al.kron(al) @ sw @ H.comult.kron(Z.comult), [H.dim, Z.dim])
    out += violations_of("counit H-linear", Z.counit @ al - H.counit.kron(Z.counit), [H.dim, Z.dim])
    return out


def free_module_coalgebra(H: Bialgebra, C: Coalgebra) -> ModuleCoalgebra:
    """Z = H (x) C, H acting on the left factor, tensor-product coalgebra."""
    Z = tensor_coalgebra(H.coalg, C)
    action = H.mult.kron(C.identity())
    return ModuleCoalgebra(H, Z, action, name=f"{H.name}(x){C.name}")
