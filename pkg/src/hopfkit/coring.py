"""Corings over finite-dimensional algebras and their comodules.

A comonad on left R-modules that preserves colimits is ``D (x)_R -`` for an
R-coring D, so every comonad here is a coring.  Coactions of a comodule N land
in the coordinates of ``tensor_over(D, N)``.

Elements of iterated quotients are produced by writing a linear map on the
plain (unreduced) tensor space and pushing it through the quotient with
``descend``, which also checks that the map is well defined.
"""

from __future__ import annotations

from .algebra import (
    Algebra,
    AlgebraInclusion,
    Bimodule,
    BimoduleMap,
    NotBalanced,
    Violation,
    bimodule_hom_basis,
    check_bimodule,
    ground,
    regular_bimodule,
    restrict,
    tensor_over,
    tensor_maps,
    associator,
    violations_of,
)
from .exactla import (
    DimensionMismatch,
    Matrix,
    kernel_matrix,
    kron_all,
    permute_factors,
    solve_matrix,
    vstack_all,
)


class BaseMismatch(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class NotColax(ValueError):
    def __init__(self, msg, violations):
        super().__init__(msg)
        self.violations = violations


class NotInSubspace(ValueError):
    pass


def descend(G: Matrix, proj: Matrix, sect: Matrix, what: str = "map") -> Matrix:
    """The map Gbar with G = Gbar o proj; NotBalanced if G kills too little."""
    K = kernel_matrix(proj)
    if K.ncols:
        bad = G @ K
        for i, j in bad.nonzero_entries():
            raise NotBalanced(f"{what} is not well defined on the quotient", (j, i))
    return G @ sect


def corestrict(J: Matrix, V: Matrix, what: str = "map") -> Matrix:
    """X with J X = V, for J of full column rank; NotInSubspace otherwise."""
    X = solve_matrix(J, V)
    if X is None:
        raise NotInSubspace(f"{what} does not land in the subspace")
    return X


class Triple:
    """P (x) Q (x) R over the two bases, with composite projection/section."""

    def __init__(self, P: Bimodule, Q: Bimodule, R: Bimodule):
        f = P.field
        self.first = tensor_over(P, Q)
        self.second = tensor_over(self.first.module, R)
        IR = Matrix.identity(f, R.dim)
        self.proj = self.second.proj @ self.first.proj.kron(IR)
        self.sect = self.first.sect.kron(IR) @ self.second.sect
        self.module = self.second.module
        self.dim = self.module.dim


def _unit(A: Algebra) -> Matrix:
    return A.unit_map


# corings -----------------------------------------------------------------------

class Coring:
    def __init__(self, base: Algebra, carrier: Bimodule, delta: Matrix, eps: Matrix, name: str = ""):
        if carrier.left_alg != base or carrier.right_alg != base:
            raise BaseMismatch("carrier is not a bimodule over the base")
        self.base, self.carrier = base, carrier
        self.field = base.field
        self.T = tensor_over(carrier, carrier)
        if delta.shape != (self.T.dim, carrier.dim):
            raise DimensionMismatch(f"comultiplication shape {delta.shape}")
        if eps.shape != (base.dim, carrier.dim):
            raise DimensionMismatch(f"counit shape {eps.shape}")
        self.delta, self.eps = delta, eps
        self.name = name

    @property
    def dim(self):
        return self.carrier.dim

    def counit_left(self, N: Bimodule) -> Matrix:
        """D (x)_R N -> N, d (x) n -> eps(d) n."""
        T = tensor_over(self.carrier, N)
        return N.left @ self.eps.kron(N.identity()) @ T.sect

    def cofree_coaction(self, N: Bimodule) -> Matrix:
        """delta (x) id: D (x) N -> D (x) (D (x) N)."""
        D = self.carrier
        T = tensor_over(D, N)
        T2 = tensor_over(self.T.module, N)
        return associator(D, D, N) @ tensor_maps(T, T2, self.delta, N.identity())

    def __repr__(self):
        return f"Coring({self.name or '?'}, base dim={self.base.dim}, dim={self.dim})"


def check_coring(C: Coring) -> list[Violation]:
    D, R = C.carrier, C.base
    out = check_bimodule(D)
    out += [Violation("comultiplication " + v.axiom, v.witness)
            for v in BimoduleMap(D, C.T.module, C.delta).check()]
    out += [Violation("counit " + v.axiom, v.witness)
            for v in BimoduleMap(D, regular_bimodule(R), C.eps).check()]
    I = D.identity()
    T3 = tensor_over(C.T.module, D)
    T3r = tensor_over(D, C.T.module)
    lhs = associator(D, D, D) @ tensor_maps(C.T, T3, C.delta, I) @ C.delta
    rhs = tensor_maps(C.T, T3r, I, C.delta) @ C.delta
    out += violations_of("coassociativity", lhs - rhs, [D.dim])
    out += violations_of("left counit", D.left @ C.eps.kron(I) @ C.T.sect @ C.delta - I, [D.dim])
    out += violations_of("right counit", D.right @ I.kron(C.eps) @ C.T.sect @ C.delta - I, [D.dim])
    return out


def trivial_coring(R: Algebra) -> Coring:
    D = regular_bimodule(R)
    T = tensor_over(D, D)
    delta = T.proj @ _unit(R).kron(R.identity())
    return Coring(R, D, delta, R.identity(), name=f"trivial {R.name}")


def coring_on_tensor(C_comult: Matrix, C_counit: Matrix, cdim: int, R: Algebra,
                     left: Matrix, name: str = "") -> Coring:
    """Coring on X (x) R with right action on R and a given left action;
    delta(x (x) r) = (x1 (x) 1) (x)_R (x2 (x) r), eps(x (x) r) = eps(x) r."""
    f = R.field
    IR = R.identity()
    IC = Matrix.identity(f, cdim)
    carrier = Bimodule(R, R, cdim * R.dim, left, IC.kron(R.mult), name=name)
    T = tensor_over(carrier, carrier)
    raw = kron_all(f, [IC, _unit(R), IC, IR]) @ C_comult.kron(IR)
    delta = T.proj @ raw
    eps = C_counit.kron(IR)
    return Coring(R, carrier, delta, eps, name)


def lift_coalgebra_to_coring(C, R: Algebra) -> Coring:
    """C (x) R with r.(c (x) r') = c (x) r r'."""
    f = R.field
    IC = C.identity()
    left = IC.kron(R.mult) @ permute_factors(f, [R.dim, C.dim, R.dim], [1, 0, 2])
    return coring_on_tensor(C.comult, C.counit, C.dim, R, left, name=f"{C.name}(x){R.name}")


class CoringMorphism:
    def __init__(self, src: Coring, dst: Coring, matrix: Matrix):
        if src.base != dst.base:
            raise BaseMismatch("corings over different bases")
        if matrix.shape != (dst.dim, src.dim):
            raise DimensionMismatch("morphism shape")
        self.src, self.dst, self.matrix = src, dst, matrix

    def check(self) -> list[Violation]:
        s, d, X = self.src, self.dst, self.matrix
        out = BimoduleMap(s.carrier, d.carrier, X).check()
        lhs = d.delta @ X
        rhs = tensor_maps(s.T, d.T, X, X) @ s.delta
        out += violations_of("commutes with comultiplication", lhs - rhs, [s.dim])
        out += violations_of("commutes with counit", d.eps @ X - s.eps, [s.dim])
        return out


def is_invertible_morphism(rho: CoringMorphism) -> bool:
    return rho.matrix.is_invertible()


def counit_morphism(D: Coring) -> CoringMorphism:
    return CoringMorphism(D, trivial_coring(D.base), D.eps)


def identity_morphism(D: Coring) -> CoringMorphism:
    return CoringMorphism(D, D, D.carrier.identity())


# comodules ------------------------------------------------------------------------

class CoringComodule:
    def __init__(self, coring: Coring, carrier: Bimodule, coaction: Matrix, name: str = ""):
        if carrier.left_alg != coring.base:
            raise BaseMismatch("comodule carrier is not a module over the coring base")
        self.coring, self.carrier = coring, carrier
        self.T = tensor_over(coring.carrier, carrier)
        if coaction.shape != (self.T.dim, carrier.dim):
            raise DimensionMismatch(f"coaction shape {coaction.shape}")
        self.coaction = coaction
        self.name = name

    @property
    def dim(self):
        return self.carrier.dim

    def __repr__(self):
        return f"CoringComodule({self.name or '?'}, dim={self.dim})"


def check_comodule(M: CoringComodule) -> list[Violation]:
    D, N, d = M.coring, M.carrier, M.coaction
    R = D.base
    out = violations_of("coaction linear", d @ N.left - M.T.module.left @ R.identity().kron(d),
                        [R.dim, N.dim])
    out += violations_of("coassociativity", D.cofree_coaction(N) @ d - _lift(D, N, d) @ d, [N.dim])
    out += violations_of("counit", D.counit_left(N) @ d - N.identity(), [N.dim])
    return out


def _lift(D: Coring, N: Bimodule, d: Matrix) -> Matrix:
    """id_D (x)_R d: D (x) N -> D (x) (D (x) N)."""
    T = tensor_over(D.carrier, N)
    T2 = tensor_over(D.carrier, T.module)
    return tensor_maps(T, T2, D.carrier.identity(), d)


def cofree_comodule(D: Coring, N: Bimodule) -> CoringComodule:
    T = tensor_over(D.carrier, N)
    return CoringComodule(D, T.module, D.cofree_coaction(N), name=f"cofree({N.name})")


def check_split_cofork(M: CoringComodule) -> list[Violation]:
    D, N, d = M.coring, M.carrier, M.coaction
    DN = M.T.module
    delta_N = D.cofree_coaction(N)
    Dd = _lift(D, N, d)
    eps_N = D.counit_left(N)
    eps_DN = D.counit_left(DN)
    out = violations_of("delta_N d = D(d) d", delta_N @ d - Dd @ d, [N.dim])
    out += violations_of("eps_N d = id", eps_N @ d - N.identity(), [N.dim])
    out += violations_of("eps_DN delta_N = id", eps_DN @ delta_N - DN.identity(), [DN.dim])
    out += violations_of("d eps_N = eps_DN D(d)", d @ eps_N - eps_DN @ Dd, [DN.dim])
    return out


def transport_comodule(rho: CoringMorphism, M: CoringComodule) -> CoringComodule:
    if M.coring is not rho.src and M.coring.carrier != rho.src.carrier:
        raise BaseMismatch("comodule is not over the morphism's source")
    N = M.carrier
    T = tensor_over(rho.src.carrier, N)
    T2 = tensor_over(rho.dst.carrier, N)
    return CoringComodule(rho.dst, N, tensor_maps(T, T2, rho.matrix, N.identity()) @ M.coaction, M.name)


def comodule_morphism_ok(M: CoringComodule, M2: CoringComodule, f: Matrix) -> bool:
    D = M.coring
    return (M2.coaction @ f == tensor_maps(M.T, M2.T, D.carrier.identity(), f) @ M.coaction
            and f @ M.carrier.left == M2.carrier.left @ D.base.identity().kron(f))


# extensions and the conjugate coring ---------------------------------------------

class ExtensionData:
    """B included in A, with H = A (x)_B - left adjoint to restriction K.

    Unit: the inclusion B -> A (as B-bimodules).  Counit: the multiplication
    A (x)_B A -> A (as A-bimodules).
    """

    def __init__(self, inc: AlgebraInclusion):
        self.inc = inc
        self.A, self.B = inc.amb, inc.sub
        self.field = self.A.field
        RA = regular_bimodule(self.A)
        self.A_AA = RA
        self.A_AB = restrict(RA, right=inc)
        self.A_BA = restrict(RA, left=inc)
        self.A_BB = restrict(RA, left=inc, right=inc)
        self.eta = inc.embed
        self.AA = tensor_over(self.A_AB, self.A_BA)
        self.xi = descend(self.A.mult, self.AA.proj, self.AA.sect, "multiplication")

    def check(self) -> list[Violation]:
        A, B = self.A, self.B
        out = self.inc.check()
        RB = regular_bimodule(B)
        T1 = tensor_over(self.A_AB, RB)
        T2 = tensor_over(RB, self.A_BA)
        # xi o (A (x) eta) = unitor on A (x)_B B
        lhs = self.xi @ tensor_maps(T1, self.AA, A.identity(), self.eta)
        out += violations_of("triangle (H)", lhs - self.A_AB.right @ T1.sect, [T1.dim])
        lhs = self.xi @ tensor_maps(T2, self.AA, self.eta, A.identity())
        out += violations_of("triangle (K)", lhs - self.A_BA.left @ T2.sect, [T2.dim])
        return out


def _restrict_left_module(ext: ExtensionData, N: Bimodule) -> Bimodule:
    return restrict(N, left=ext.inc)


class ConjugateCoring(Coring):
    """A (x)_B D (x)_B A with the structure transported through (H, K)."""

    def __init__(self, ext: ExtensionData, D: Coring):
        if D.base != ext.B:
            raise BaseMismatch("coring is not over the subalgebra")
        f = ext.field
        A = ext.A
        IA = A.identity()
        ID = D.carrier.identity()
        u = _unit(A)
        self.ext, self.D = ext, D
        self.triple = Triple(ext.A_AB, D.carrier, ext.A_BA)
        E = self.triple.module
        PE, SE = self.triple.proj, self.triple.sect
        TEE = tensor_over(E, E)
        raw = (TEE.proj @ PE.kron(PE)
               @ kron_all(f, [IA, ID, u, u, ID, IA])
               @ kron_all(f, [IA, D.T.sect @ D.delta, IA]))
        delta = descend(raw, PE, SE, "conjugate comultiplication")
        raw_eps = A.mult @ A.mult.kron(IA) @ kron_all(f, [IA, ext.eta @ D.eps, IA])
        eps = descend(raw_eps, PE, SE, "conjugate counit")
        super().__init__(A, E, delta, eps, name=f"conj({D.name})")
        self.raw_proj, self.raw_sect = PE, SE

    def gamma(self) -> Matrix:
        """a (x) d -> a (x) d (x) 1, from A (x)_B D to the carrier."""
        ext = self.ext
        T = tensor_over(ext.A_AB, self.D.carrier)
        raw = self.raw_proj @ kron_all(ext.field, [ext.A.identity(), self.D.carrier.identity(), _unit(ext.A)])
        return descend(raw, T.proj, T.sect, "gamma")

    def gamma_bar(self) -> Matrix:
        """d (x) a -> 1 (x) d (x) a, from D (x)_B A to the carrier."""
        ext = self.ext
        T = tensor_over(self.D.carrier, ext.A_BA)
        raw = self.raw_proj @ kron_all(ext.field, [_unit(ext.A), self.D.carrier.identity(), ext.A.identity()])
        return descend(raw, T.proj, T.sect, "gamma bar")


def conjugate_coring(ext: ExtensionData, D: Coring) -> ConjugateCoring:
    return ConjugateCoring(ext, D)


def sweedler_coring(ext: ExtensionData) -> Coring:
    """A (x)_B A with delta(a (x) a') = (a (x) 1) (x)_A (1 (x) a'), eps = mult."""
    f = ext.field
    A = ext.A
    IA = A.identity()
    T = ext.AA
    E = T.module
    TEE = tensor_over(E, E)
    u = _unit(A)
    raw = TEE.proj @ T.proj.kron(T.proj) @ kron_all(f, [IA, u, u, IA])
    delta = descend(raw, T.proj, T.sect, "Sweedler comultiplication")
    return Coring(A, E, delta, ext.xi, name=f"Sweedler({A.name}/{ext.B.name})")


def conjugate_to_sweedler(ext: ExtensionData, E: ConjugateCoring) -> Matrix:
    """Canonical iso A (x)_B B (x)_B A -> A (x)_B A for the trivial coring."""
    A = ext.A
    raw = ext.AA.proj @ (A.mult @ A.identity().kron(ext.eta)).kron(A.identity())
    return descend(raw, E.raw_proj, E.raw_sect, "conjugate-to-Sweedler")


# comparison and descent -------------------------------------------------------------

def comparison_comodule(ext: ExtensionData, E: ConjugateCoring, M: CoringComodule) -> CoringComodule:
    """(A (x)_B M, a (x) m -> (a (x) m_-1 (x) 1) (x)_A (1 (x) m_0))."""
    D = E.D
    f = ext.field
    A = ext.A
    N = M.carrier
    TAN = tensor_over(ext.A_AB, N)
    Q = TAN.module
    TEQ = tensor_over(E.carrier, Q)
    u = _unit(A)
    raw = (TEQ.proj @ E.raw_proj.kron(TAN.proj)
           @ kron_all(f, [A.identity(), D.carrier.identity(), u, u, N.identity()])
           @ A.identity().kron(M.T.sect @ M.coaction))
    coaction = descend(raw, TAN.proj, TAN.sect, "comparison coaction")
    return CoringComodule(E, Q, coaction, name=f"Q({M.name})")


def comparison_via_gamma(ext: ExtensionData, E: ConjugateCoring, M: CoringComodule) -> Matrix:
    """The same coaction computed as transport along gamma:
    A (x)_B M -> A (x)_B (D (x)_B M) = (A (x)_B D) (x)_B M -> E (x)_B M -> E (x)_A (A (x)_B M)."""
    f = ext.field
    A = ext.A
    D = E.D
    N = M.carrier
    TAN = tensor_over(ext.A_AB, N)
    TA_DN = tensor_over(ext.A_AB, M.T.module)
    step1 = tensor_maps(TAN, TA_DN, A.identity(), M.coaction)
    TAD = tensor_over(ext.A_AB, D.carrier)
    TAD_N = tensor_over(TAD.module, N)
    inv_assoc = solve_matrix(associator(ext.A_AB, D.carrier, N), Matrix.identity(f, TA_DN.dim))
    E_B = restrict(E.carrier, right=ext.inc)
    TEN = tensor_over(E_B, N)
    step3 = tensor_maps(TAD_N, TEN, E.gamma(), N.identity())
    TEQ = tensor_over(E.carrier, TAN.module)
    u = _unit(A)
    raw = TEQ.proj @ kron_all(f, [E.carrier.identity(), u, N.identity()])
    step4 = descend(raw, TEN.proj, TEN.sect, "E (x)_B M -> E (x)_A (A (x)_B M)")
    return step4 @ step3 @ inv_assoc @ step1


class Descent:
    """K^tau(N): the equalizer inside D (x)_B N, with its D-comodule structure."""

    def __init__(self, ext: ExtensionData, E: ConjugateCoring, N: CoringComodule):
        f = ext.field
        A = ext.A
        D = E.D
        Nm = N.carrier
        NB = _restrict_left_module(ext, Nm)
        X = tensor_over(D.carrier, NB)
        Y = tensor_over(D.carrier, _restrict_left_module(ext, N.T.module))
        ID = D.carrier.identity()
        IN = Nm.identity()
        u = _unit(A)
        raw_f = (Y.proj @ ID.kron(N.T.proj @ E.raw_proj.kron(IN))
                 @ kron_all(f, [ID, u, ID, u, IN])
                 @ (D.T.sect @ D.delta).kron(IN))
        fm = descend(raw_f, X.proj, X.sect, "descent map f")
        raw_g = Y.proj @ ID.kron(N.coaction)
        gm = descend(raw_g, X.proj, X.sect, "descent map g")
        J = kernel_matrix(fm - gm)
        self.J = J
        self.X = X
        B = ext.B
        left = corestrict(J, X.module.left @ B.identity().kron(J), "B-action")
        carrier = Bimodule(B, ground(f), J.ncols, left, Matrix.identity(f, J.ncols), name=f"K({N.name})")
        Tc = tensor_over(D.carrier, carrier)
        TX = tensor_over(D.carrier, X.module)
        inc = tensor_maps(Tc, TX, ID, J)
        coaction = corestrict(inc, D.cofree_coaction(NB) @ J, "descended coaction")
        self.comodule = CoringComodule(D, carrier, coaction, name=f"K({N.name})")
        self.ext, self.E, self.N = ext, E, N

    def counit(self) -> Matrix:
        """A (x)_B K(N) -> N, a (x) sum d (x) n -> sum a eps(d) n."""
        ext, D, Nm = self.ext, self.E.D, self.N.carrier
        A = ext.A
        f = ext.field
        carrier = self.comodule.carrier
        T = tensor_over(ext.A_AB, carrier)
        raw = (Nm.left @ A.mult.kron(Nm.identity())
               @ kron_all(f, [A.identity(), ext.eta @ D.eps, Nm.identity()])
               @ A.identity().kron(self.X.sect @ self.J))
        return descend(raw, T.proj, T.sect, "descent counit")


def descent_comodule(ext: ExtensionData, E: ConjugateCoring, N: CoringComodule) -> CoringComodule:
    return Descent(ext, E, N).comodule


def comparison_unit(ext: ExtensionData, E: ConjugateCoring, M: CoringComodule) -> tuple[Matrix, Descent]:
    """M -> K^tau(Q(M)), m -> m_-1 (x) (1 (x) m_0)."""
    Q = comparison_comodule(ext, E, M)
    desc = Descent(ext, E, Q)
    f = ext.field
    N = M.carrier
    D = E.D
    TAN = tensor_over(ext.A_AB, N)
    raw = (desc.X.proj @ D.carrier.identity().kron(TAN.proj)
           @ kron_all(f, [D.carrier.identity(), _unit(ext.A), N.identity()])
           @ M.T.sect @ M.coaction)
    return corestrict(desc.J, raw, "comparison unit"), desc


# mates and the universal property --------------------------------------------------

def _as_matrix(x) -> Matrix:
    return x.matrix if isinstance(x, BimoduleMap) else x


def mate_of(ext: ExtensionData, C: Bimodule, D: Bimodule, sigma) -> Matrix:
    """sigma: A (x)_B C -> D|_B  gives  tau: C (x)_B A -> _B D, tau(c (x) a) = sigma(1 (x) c) a."""
    sigma = _as_matrix(sigma)
    f = ext.field
    A = ext.A
    TAC = tensor_over(ext.A_AB, C)
    TCA = tensor_over(C, ext.A_BA)
    if C.left_alg != ext.B or D.left_alg != A or sigma.shape != (D.dim, TAC.dim):
        raise ShapeMismatch(f"sigma has shape {sigma.shape}, expected {(D.dim, TAC.dim)}")
    raw = (D.right @ (sigma @ TAC.proj).kron(A.identity())
           @ kron_all(f, [_unit(A), C.identity(), A.identity()]))
    return descend(raw, TCA.proj, TCA.sect, "mate")


def mate_inverse(ext: ExtensionData, C: Bimodule, D: Bimodule, tau) -> Matrix:
    """tau: C (x)_B A -> _B D  gives  sigma(a (x) c) = a tau(c (x) 1)."""
    tau = _as_matrix(tau)
    f = ext.field
    A = ext.A
    TAC = tensor_over(ext.A_AB, C)
    TCA = tensor_over(C, ext.A_BA)
    if C.left_alg != ext.B or D.left_alg != A or tau.shape != (D.dim, TCA.dim):
        raise ShapeMismatch(f"tau has shape {tau.shape}, expected {(D.dim, TCA.dim)}")
    raw = (D.left @ A.identity().kron(tau @ TCA.proj)
           @ kron_all(f, [A.identity(), C.identity(), _unit(A)]))
    return descend(raw, TAC.proj, TAC.sect, "inverse mate")


def colax_violations(ext: ExtensionData, D: Coring, Ep: Coring, sigma: Matrix) -> list[Violation]:
    f = ext.field
    A = ext.A
    TAD = tensor_over(ext.A_AB, D.carrier)
    out = [Violation("sigma " + v.axiom, v.witness)
           for v in BimoduleMap(TAD.module, restrict(Ep.carrier, right=ext.inc), sigma).check()]
    s = sigma @ TAD.proj
    raw = (Ep.T.proj @ s.kron(s)
           @ kron_all(f, [A.identity(), D.carrier.identity(), _unit(A), D.carrier.identity()])
           @ A.identity().kron(D.T.sect @ D.delta))
    rhs = descend(raw, TAD.proj, TAD.sect, "colax comultiplication")
    out += violations_of("colax comultiplication", Ep.delta @ sigma - rhs, [TAD.dim])
    raw = A.mult @ A.identity().kron(ext.eta @ D.eps)
    rhs = descend(raw, TAD.proj, TAD.sect, "colax counit")
    out += violations_of("colax counit", Ep.eps @ sigma - rhs, [TAD.dim])
    return out


class UniversalFactor:
    def __init__(self, morphism: CoringMorphism, factorizes: bool, unique: bool):
        self.morphism, self.factorizes, self.unique = morphism, factorizes, unique

    @property
    def matrix(self):
        return self.morphism.matrix


def universal_factor(ext: ExtensionData, E: ConjugateCoring, Ep: Coring, sigma,
                     check_unique: bool = True) -> UniversalFactor:
    """sigma' : A (x)_B D (x)_B A -> E', a (x) d (x) a' -> sigma(a (x) d) a'."""
    sigma = _as_matrix(sigma)
    if Ep.base != ext.A:
        raise BaseMismatch("target coring is not over A")
    bad = colax_violations(ext, E.D, Ep, sigma)
    if bad:
        raise NotColax(f"sigma is not colax ({len(bad)} violations)", bad)
    TAD = tensor_over(ext.A_AB, E.D.carrier)
    raw = Ep.carrier.right @ (sigma @ TAD.proj).kron(ext.A.identity())
    sp = descend(raw, E.raw_proj, E.raw_sect, "universal factor")
    factorizes = sp @ E.gamma() == sigma
    unique = True
    if check_unique:
        g = E.gamma()
        basis = bimodule_hom_basis(E.carrier, Ep.carrier)
        if basis:
            rows = [Matrix.row(ext.field, [x for r in (b.matrix @ g).rows for x in r]) for b in basis]
            unique = vstack_all(ext.field, rows, 0).rank() == len(basis)
    return UniversalFactor(CoringMorphism(E, Ep, sp), factorizes, unique)


def mate_round_trip(ext: ExtensionData, C: Bimodule, D: Bimodule) -> tuple[int, bool]:
    """Apply mate_of then mate_inverse (and the reverse) to full hom-space bases.

    C is a B-bimodule and D an A-bimodule.  Returns (basis sizes summed, ok)."""
    TAC = tensor_over(ext.A_AB, C)
    TCA = tensor_over(C, ext.A_BA)
    sig_basis = bimodule_hom_basis(TAC.module, restrict(D, right=ext.inc))
    tau_basis = bimodule_hom_basis(TCA.module, restrict(D, left=ext.inc))
    ok = len(sig_basis) == len(tau_basis)
    for s in sig_basis:
        t = mate_of(ext, C, D, s)
        ok &= not BimoduleMap(TCA.module, restrict(D, left=ext.inc), t).check()
        ok &= mate_inverse(ext, C, D, t) == s.matrix
    for t in tau_basis:
        ok &= mate_of(ext, C, D, mate_inverse(ext, C, D, t)) == t.matrix
    return len(sig_basis) + len(tau_basis), bool(ok)
