"""Finite groups acting on commutative algebras, 1-cocycles and H^1.

With H = k^G (functions on G), a left H-comodule algebra is the same thing as
a G-action by algebra automorphisms.  The coaction used here is

    nu(a) = sum_g delta_{g^-1} (x) g.a,

which is coassociative for Delta(delta_g) = sum_{xy=g} delta_x (x) delta_y
whether or not G is abelian.  Hopf modules over this data are A-modules with a
semilinear G-action T_g(a m) = (g.a) T_g(m), via zeta(m) = sum_g delta_{g^-1} (x) T_g m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    Algebra,
    Bimodule,
    Violation,
    bimodule_hom_basis,
    is_algebra_morphism,
    left_module,
    violations_of,
)
from .coalg import (
    Bialgebra,
    Coalgebra,
    ComoduleAlgebra,
    HopfAlgebra,
    free_module_coalgebra,
    trivial_coalgebra,
)
from .exactla import Field, Matrix, inverse, kernel_basis, kernel_matrix, vstack_all


class PoolNotFinite(ValueError):
    pass


class GroupPresentation:
    def __init__(self, table: Sequence[Sequence[int]], identity: int = 0, names: Sequence[str] | None = None):
        self.table = tuple(tuple(r) for r in table)
        self.order = len(self.table)
        self.identity = identity
        self.names = list(names) if names else [f"g{i}" for i in range(self.order)]
        inv = []
        for g in range(self.order):
            hits = [h for h in range(self.order) if self.table[g][h] == identity]
            inv.append(hits[0] if hits else -1)
        self.inverse = tuple(inv)

    def mul(self, g, h):
        return self.table[g][h]

    def elements(self):
        return range(self.order)

    def check(self) -> list[Violation]:
        n, t, e = self.order, self.table, self.identity
        out = []
        for g in range(n):
            if len(t[g]) != n or any(not 0 <= x < n for x in t[g]):
                out.append(Violation("table shape", (g,)))
                return out
        for g, h, k in itertools.product(range(n), repeat=3):
            if t[t[g][h]][k] != t[g][t[h][k]]:
                out.append(Violation("associativity", (g, h, k)))
                break
        for g in range(n):
            if t[e][g] != g or t[g][e] != g:
                out.append(Violation("identity", (g,)))
            if self.inverse[g] < 0 or t[self.inverse[g]][g] != e:
                out.append(Violation("inverse", (g,)))
        return out

    def __repr__(self):
        return f"Group(order={self.order})"


def cyclic_group(n: int) -> GroupPresentation:
    return GroupPresentation([[(i + j) % n for j in range(n)] for i in range(n)], 0,
                             ["1"] + [f"s^{i}" if i > 1 else "s" for i in range(1, n)])


def trivial_group() -> GroupPresentation:
    return GroupPresentation([[0]], 0, ["1"])


def dual_group_hopf(G: GroupPresentation, field: Field) -> HopfAlgebra:
    """k^G: pointwise product, Delta(delta_g) = sum_{xy=g} delta_x (x) delta_y, S(delta_g) = delta_{g^-1}."""
    n = G.order
    m = [[[1 if (i == j == k) else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    A = Algebra.from_tensor(field, m, [1] * n, name="k^G")
    d = []
    for g in range(n):
        v = [0] * (n * n)
        for x in range(n):
            for y in range(n):
                if G.mul(x, y) == g:
                    v[x * n + y] = 1
        d.append(v)
    C = Coalgebra.from_tensor(field, d, [1 if g == G.identity else 0 for g in range(n)], name="k^G")
    S = Matrix(field, [[1 if G.inverse[g] == r else 0 for g in range(n)] for r in range(n)], n)
    return HopfAlgebra(Bialgebra(A, C, name="k^G"), S)


class GroupAction:
    def __init__(self, G: GroupPresentation, A: Algebra, maps: Sequence[Matrix], name: str = ""):
        if len(maps) != G.order:
            raise ValueError("one matrix per group element is required")
        self.G, self.A, self.maps = G, A, list(maps)
        self.field = A.field
        self.name = name

    def act(self, g, a) -> tuple:
        return self.maps[g].apply(a)


def check_action(act: GroupAction) -> list[Violation]:
    G, A = act.G, act.A
    out = []
    if not A.is_commutative():
        out.append(Violation("A commutative", ()))
    for g in G.elements():
        M = act.maps[g]
        if not (M.is_invertible() and is_algebra_morphism(M, A, A)):
            out.append(Violation("acts by automorphisms", (g,)))
        for h in G.elements():
            out += [Violation("action composes", (g, h) + v.witness)
                    for v in violations_of("", M @ act.maps[h] - act.maps[G.mul(g, h)], [A.dim])][:1]
    out += [Violation("identity acts trivially", v.witness)
            for v in violations_of("", act.maps[G.identity] - A.identity(), [A.dim])]
    return out


def frobenius_action(A: Algebra, G: GroupPresentation | None = None) -> GroupAction:
    """The Frobenius x -> x^p and its powers on a commutative algebra over GF(p)."""
    f = A.field
    if not f.is_finite:
        raise ValueError("Frobenius needs a prime field")
    p = f.p

    def frob(v):
        r = A.unit
        for _ in range(p):
            r = A.product(r, v)
        return r

    F = Matrix.from_columns(f, [frob(A.identity().col(i)) for i in range(A.dim)], A.dim)
    powers = [A.identity()]
    while True:
        nxt = F @ powers[-1]
        if nxt == A.identity():
            break
        powers.append(nxt)
    n = len(powers)
    if G is None:
        G = cyclic_group(n)
    if G.order != n:
        raise ValueError("group order does not match the Frobenius order")
    return GroupAction(G, A, powers, name="Frobenius")


def trivial_action(G: GroupPresentation, A: Algebra) -> GroupAction:
    return GroupAction(G, A, [A.identity()] * G.order, name="trivial")


def action_to_comodule_algebra(act: GroupAction, H: HopfAlgebra | None = None) -> ComoduleAlgebra:
    G, A = act.G, act.A
    f = act.field
    if H is None:
        H = dual_group_hopf(G, f)
    n = G.order
    rows = [[f.zero] * A.dim for _ in range(n * A.dim)]
    for g in G.elements():
        gi = G.inverse[g]
        M = act.maps[g]
        for b in range(A.dim):
            for a in range(A.dim):
                rows[gi * A.dim + b][a] = M[b, a]
    nu = Matrix(f, rows, A.dim)
    return ComoduleAlgebra(H, A, nu, name=f"{A.name} with {act.name or 'G'}-action")


def fixed_subalgebra(act: GroupAction) -> Matrix:
    A = act.A
    stacked = vstack_all(act.field, [M - A.identity() for M in act.maps], A.dim)
    return kernel_matrix(stacked)


# semilinear modules ---------------------------------------------------------------

class SemilinearModule:
    """An A-module N with maps T_g satisfying T_g(a m) = (g.a) T_g(m)."""

    def __init__(self, act: GroupAction, carrier: Bimodule, T: Sequence[Matrix], name: str = ""):
        self.act, self.carrier, self.T = act, carrier, list(T)
        self.name = name

    @property
    def dim(self):
        return self.carrier.dim


def check_semilinear(N: SemilinearModule) -> list[Violation]:
    act, M, T = N.act, N.carrier, N.T
    G, A = act.G, act.A
    out = []
    for g in G.elements():
        lhs = T[g] @ M.left
        rhs = M.left @ act.maps[g].kron(T[g])
        out += [Violation("semilinear", (g,) + v.witness) for v in violations_of("", lhs - rhs, [A.dim, M.dim])][:1]
        for h in G.elements():
            if T[g] @ T[h] != T[G.mul(g, h)]:
                out.append(Violation("G-action composes", (g, h)))
    if T[G.identity] != M.identity():
        out.append(Violation("identity acts trivially", ()))
    return out


def regular_semilinear(act: GroupAction) -> SemilinearModule:
    A = act.A
    return SemilinearModule(act, left_module(A, A.dim, A.mult), act.maps, name="A")


def semilinear_to_hopf(CA: ComoduleAlgebra, N: SemilinearModule):
    from .hopfmod import DKHopfModule
    G = N.act.G
    f = CA.field
    n = G.order
    Z = free_module_coalgebra(CA.H, trivial_coalgebra(f))
    rows = [[f.zero] * N.dim for _ in range(n * N.dim)]
    for g in G.elements():
        gi = G.inverse[g]
        for i in range(N.dim):
            for j in range(N.dim):
                rows[gi * N.dim + i][j] = N.T[g][i, j]
    return DKHopfModule(CA, Z, N.carrier, Matrix(f, rows, N.dim), name=N.name)


def hopf_to_semilinear(act: GroupAction, H) -> SemilinearModule:
    G = act.G
    d = H.dim
    T = []
    for g in G.elements():
        gi = G.inverse[g]
        T.append(H.coaction.select_rows(range(gi * d, (gi + 1) * d)))
    return SemilinearModule(act, H.carrier, T, name=H.name)


# cocycles -----------------------------------------------------------------------------

class Cocycle:
    def __init__(self, N: SemilinearModule, values: Sequence[Matrix], name: str = ""):
        if len(values) != N.act.G.order:
            raise ValueError("one value per group element is required")
        self.N, self.values = N, list(values)
        self.name = name

    def key(self) -> tuple:
        return tuple(x for v in self.values for x in v.flatten())


def conj_action(N: SemilinearModule, g: int, alpha: Matrix) -> Matrix:
    """(g.alpha)(x) = g.alpha(g^-1 x)."""
    G = N.act.G
    return N.T[g] @ alpha @ N.T[G.inverse[g]]


def check_cocycle(phi: Cocycle) -> list[Violation]:
    N = phi.N
    G = N.act.G
    M = N.carrier
    out = []
    for g in G.elements():
        v = phi.values[g]
        if not v.is_invertible():
            out.append(Violation("value invertible", (g,)))
        if v @ M.left != M.left @ N.act.A.identity().kron(v):
            out.append(Violation("value A-linear", (g,)))
    if phi.values[G.identity] != M.identity():
        out.append(Violation("phi(1) = id", ()))
    for f_ in G.elements():
        for g in G.elements():
            lhs = phi.values[G.mul(f_, g)]
            rhs = phi.values[f_] @ conj_action(N, f_, phi.values[g])
            if lhs != rhs:
                out.append(Violation("cocycle condition", (f_, g)))
    return out


def trivial_cocycle(N: SemilinearModule) -> Cocycle:
    return Cocycle(N, [N.carrier.identity()] * N.act.G.order, name="1")


def twist(N: SemilinearModule, phi: Cocycle) -> SemilinearModule:
    """g ._phi x = phi(g)(g.x)."""
    return SemilinearModule(N.act, N.carrier, [phi.values[g] @ N.T[g] for g in N.act.G.elements()],
                            name=f"{N.name}_{phi.name or 'phi'}")


def untwist(N: SemilinearModule, Nphi: SemilinearModule) -> Cocycle:
    """Recover phi from N and its twist: phi(g) = T'_g T_g^-1."""
    G = N.act.G
    return Cocycle(N, [Nphi.T[g] @ N.T[G.inverse[g]] for g in G.elements()])


def endomorphism_basis(N: SemilinearModule) -> list[Matrix]:
    return [b.matrix for b in bimodule_hom_basis(N.carrier, N.carrier)]


def _combination(field, basis, coords) -> Matrix:
    M = Matrix.zeros(field, basis[0].nrows, basis[0].ncols)
    for c, b in zip(coords, basis):
        if c:
            M = M + b.scale(c)
    return M


def _search_points(field: Field, r: int, deg: int, cap: int):
    """Deterministic candidate coordinates for an invertible element."""
    if field.is_finite:
        if field.p ** r > cap:
            raise PoolNotFinite(f"solution space too large to enumerate ({field.p}^{r})")
        return itertools.product(range(field.p), repeat=r)
    # a nonzero polynomial of degree <= deg has a non-root on {0..deg}^r
    if (deg + 1) ** r > cap:
        raise PoolNotFinite(f"candidate grid too large ({deg + 1}^{r})")
    return itertools.product(range(deg + 1), repeat=r)


def find_invertible(field: Field, basis: list[Matrix], cap: int = 200000) -> Matrix | None:
    if not basis:
        return None
    n = basis[0].nrows
    for coords in _search_points(field, len(basis), n, cap):
        if not any(coords):
            continue
        X = _combination(field, basis, coords)
        if X.is_invertible():
            return X
    return None


def _solution_basis(field, basis: list[Matrix], residual) -> list[Matrix]:
    """Basis of {sum c_i b_i : residual(sum c_i b_i) = 0} for linear residual."""
    if not basis:
        return []
    cols = [residual(b).flatten() for b in basis]
    Msys = Matrix.from_columns(field, cols, len(cols[0]))
    return [_combination(field, basis, v) for v in kernel_basis(Msys)]


def cohomologous(phi: Cocycle, psi: Cocycle, cap: int = 200000) -> Matrix | None:
    """An alpha in Aut_A(N) with psi(g) (g.alpha) = alpha phi(g) for all g, or None."""
    N = phi.N
    G = N.act.G
    f = N.act.field
    ends = endomorphism_basis(N)

    def residual(alpha):
        parts = [psi.values[g] @ conj_action(N, g, alpha) - alpha @ phi.values[g] for g in G.elements()]
        return vstack_all(f, parts, alpha.ncols)

    return find_invertible(f, _solution_basis(f, ends, residual), cap)


def hopf_module_isomorphism(N1, N2, cap: int = 200000) -> Matrix | None:
    """An invertible A-linear, Z-colinear map N1 -> N2 (independent of cocycle formulas)."""
    f = N1.CA.field
    if N1.dim != N2.dim:
        return None
    ends = [b.matrix for b in bimodule_hom_basis(N1.carrier, N2.carrier)]
    IZ = N1.Z.Z.identity()

    def residual(alpha):
        return N2.coaction @ alpha - IZ.kron(alpha) @ N1.coaction

    return find_invertible(f, _solution_basis(f, ends, residual), cap)


def automorphism_pool(N: SemilinearModule, pool: Sequence[Matrix] | None = None, cap: int = 200000) -> list[Matrix]:
    f = N.act.field
    if pool is not None:
        return [P for P in pool if P.is_invertible()]
    if not f.is_finite:
        raise PoolNotFinite("Aut_A(N) is infinite over Q; declare a finite candidate pool")
    ends = endomorphism_basis(N)
    if f.p ** len(ends) > cap:
        raise PoolNotFinite("automorphism group too large to enumerate")
    out = []
    for coords in itertools.product(range(f.p), repeat=len(ends)):
        if any(coords):
            X = _combination(f, ends, coords)
            if X.is_invertible():
                out.append(X)
    return out


def enumerate_cocycles(N: SemilinearModule, pool: Sequence[Matrix] | None = None) -> list[Cocycle]:
    G = N.act.G
    auts = automorphism_pool(N, pool)
    others = [g for g in G.elements() if g != G.identity]
    out = []
    for choice in itertools.product(auts, repeat=len(others)):
        vals = [None] * G.order
        vals[G.identity] = N.carrier.identity()
        for g, v in zip(others, choice):
            vals[g] = v
        phi = Cocycle(N, vals)
        if not check_cocycle(phi):
            out.append(phi)
    return out


@dataclass
class H1Class:
    representative: Cocycle
    size: int


@dataclass
class H1Result:
    classes: list
    n_cocycles: int
    pool_size: int
    relative_to_pool: bool


def h1_classes(N: SemilinearModule, pool: Sequence[Matrix] | None = None) -> H1Result:
    """Z^1 partitioned by cohomology; representatives lexicographically least."""
    G = N.act.G
    auts = automorphism_pool(N, pool)
    cocycles = enumerate_cocycles(N, auts)
    by_key = {c.key(): c for c in cocycles}
    seen = set()
    classes = []
    for key in sorted(by_key):
        if key in seen:
            continue
        phi = by_key[key]
        orbit = set()
        for alpha in auts:
            vals = [alpha @ phi.values[g] @ inverse(conj_action(N, g, alpha)) for g in G.elements()]
            k2 = Cocycle(N, vals).key()
            if k2 in by_key:
                orbit.add(k2)
        orbit.add(key)
        seen |= orbit
        rep = by_key[min(orbit)]
        classes.append(H1Class(rep, len(orbit)))
    return H1Result(classes, len(cocycles), len(auts), pool is not None)


@dataclass
class GroupoidCheck:
    untwist_ok: bool
    agreements: int
    disagreements: list

    @property
    def ok(self):
        return self.untwist_ok and not self.disagreements


def groupoid_check(CA: ComoduleAlgebra, N: SemilinearModule, pool=None) -> GroupoidCheck:
    """For every cocycle: untwisting recovers it, and cohomologous() agrees with an
    independent Hopf-module isomorphism search between the twists."""
    cocycles = enumerate_cocycles(N, automorphism_pool(N, pool))
    untwist_ok = True
    twists = []
    for phi in cocycles:
        Nt = twist(N, phi)
        if untwist(N, Nt).values != phi.values:
            untwist_ok = False
        twists.append(semilinear_to_hopf(CA, Nt))
    agree, bad = 0, []
    for i, phi in enumerate(cocycles):
        for j, psi in enumerate(cocycles):
            a = cohomologous(phi, psi) is not None
            b = hopf_module_isomorphism(twists[i], twists[j]) is not None
            if a == b:
                agree += 1
            else:
                bad.append((i, j))
    return GroupoidCheck(untwist_ok, agree, bad)
