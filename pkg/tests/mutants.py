"""Structure maps of the builtin examples and their one-constant mutants."""

from hopfkit.algebra import Algebra, check_algebra, left_module
from hopfkit.coalg import (
    Bialgebra, Coalgebra, ComoduleAlgebra, HopfAlgebra, check_bialgebra, check_coalgebra,
    check_comodule_algebra, check_hopf,
)
from hopfkit.exactla import Matrix
from hopfkit.hilbert90 import Cocycle, GroupAction, check_action, check_cocycle, trivial_cocycle
from hopfkit.hopfmod import DKHopfModule, check_hopf_module, regular_hopf_module
from hopfkit.library import builtin

import oracles as O


def bump(M: Matrix, i: int, j: int) -> Matrix:
    """M with the (i, j) constant increased by one."""
    rows = [list(r) for r in M.rows]
    rows[i][j] = M.field.reduce(rows[i][j] + 1)
    return Matrix(M.field, rows, M.ncols)


def structure_maps(name: str):
    """(label, matrix, rebuild, suite, oracle) for every structure map of a builtin;
    ``rebuild(M)`` is the object with that map replaced by M and ``oracle(M)``
    decides independently whether that object is still a legal structure."""
    b = builtin(name)
    H, CA = b.H, b.CA
    A = CA.A
    out = []
    unit_col = A.unit_map

    out.append((f"{name}/A.mult", A.mult,
                lambda M: Algebra(A.field, A.dim, M, A.unit), check_algebra,
                lambda M: O.algebra_ok(A.field, A.dim, M, A.unit)))
    out.append((f"{name}/A.unit", unit_col,
                lambda M: Algebra(A.field, A.dim, A.mult, M.col(0)), check_algebra,
                lambda M: O.algebra_ok(A.field, A.dim, A.mult, M.col(0))))
    for cn, C in b.coalgebras.items():
        if C.dim == 1:
            continue
        out.append((f"{name}/{cn}.comult", C.comult,
                    lambda M, C=C: Coalgebra(C.field, C.dim, M, C.counit), check_coalgebra,
                    lambda M, C=C: O.coalgebra_ok(C.field, C.dim, M, C.counit)))
        out.append((f"{name}/{cn}.counit", C.counit,
                    lambda M, C=C: Coalgebra(C.field, C.dim, C.comult, M), check_coalgebra,
                    lambda M, C=C: O.coalgebra_ok(C.field, C.dim, C.comult, M)))
    out.append((f"{name}/H.mult", H.mult,
                lambda M: Bialgebra(Algebra(H.field, H.dim, M, H.alg.unit), H.coalg), check_bialgebra,
                lambda M: O.bialgebra_ok(H.field, H.dim, M, H.alg.unit, H.comult, H.counit)))
    out.append((f"{name}/H.comult", H.comult,
                lambda M: Bialgebra(H.alg, Coalgebra(H.field, H.dim, M, H.counit)), check_bialgebra,
                lambda M: O.bialgebra_ok(H.field, H.dim, H.mult, H.alg.unit, M, H.counit)))
    out.append((f"{name}/H.counit", H.counit,
                lambda M: Bialgebra(H.alg, Coalgebra(H.field, H.dim, H.comult, M)), check_bialgebra,
                lambda M: O.bialgebra_ok(H.field, H.dim, H.mult, H.alg.unit, H.comult, M)))
    if isinstance(H, HopfAlgebra):
        out.append((f"{name}/H.antipode", H.antipode,
                    lambda M: HopfAlgebra(H.bialg, M), check_hopf,
                    lambda M: O.antipode_ok(H.field, H.dim, H.mult, H.alg.unit, H.comult, H.counit, M)))
    out.append((f"{name}/CA.coaction", CA.nu,
                lambda M: ComoduleAlgebra(H, A, M, CA.Binc), check_comodule_algebra,
                lambda M: O.comodule_algebra_ok(CA, M)))
    N = regular_hopf_module(CA)
    out.append((f"{name}/N.coaction", N.coaction,
                lambda M: DKHopfModule(CA, N.Z, N.carrier, M), check_hopf_module,
                lambda M: O.hopf_module_ok(N, N.carrier.left, M)))
    out.append((f"{name}/N.action", N.carrier.left,
                lambda M: DKHopfModule(CA, N.Z, left_module(A, N.dim, M), N.coaction), check_hopf_module,
                lambda M: O.hopf_module_ok(N, M, N.coaction)))
    if b.action is not None:
        act = b.action
        for g in act.G.elements():
            out.append((f"{name}/action[{g}]", act.maps[g],
                        lambda M, g=g: GroupAction(act.G, A, act.maps[:g] + [M] + act.maps[g + 1:]),
                        check_action,
                        lambda M, g=g: O.action_ok(act, act.maps[:g] + [M] + act.maps[g + 1:])))
        phi = trivial_cocycle(b.semilinear)
        for g in act.G.elements():
            out.append((f"{name}/cocycle[{g}]", phi.values[g],
                        lambda M, g=g: Cocycle(phi.N, phi.values[:g] + [M] + phi.values[g + 1:]),
                        check_cocycle,
                        lambda M, g=g: O.cocycle_ok(phi, phi.values[:g] + [M] + phi.values[g + 1:])))
    return out


def first_mutant(M: Matrix):
    """Perturb the first nonzero constant in row-major order."""
    i, j = next(iter(M.nonzero_entries()))
    return (i, j), bump(M, i, j)
