import itertools
from collections import Counter

import pytest

from hopfkit.algebra import check_bimodule
from hopfkit.coalg import free_module_coalgebra, grouplike_coalgebra
from hopfkit.exactla import GF, QQ, Matrix
from hopfkit.families import (
    TooManyCandidates, affine_points, bc_bimodules, comodule_structures, counit_counterexample,
    direct_sums, graded_hopf_modules, hopf_module_idempotents, hopf_modules, module_structures,
)
from hopfkit.hopfmod import (
    DKHopfModule, adjunction_counit, check_bc_bimodule, check_hopf_module, regular_hopf_module,
)
from hopfkit.algebra import left_module
from hopfkit.library import builtin, f4_algebra

F2 = GF(2)


def gl_order(n, q=2):
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def idempotent_count(n, q=2):
    """Idempotents in M_n(F_q): sum over k of (Gaussian binomial) q^(k(n-k))."""
    def gauss(n, k):
        num = den = 1
        for i in range(k):
            num *= q ** (n - i) - 1
            den *= q ** (i + 1) - 1
        return num // den
    return sum(gauss(n, k) * q ** (k * (n - k)) for k in range(n + 1))


def all_matrices(field, r, c):
    for v in itertools.product(range(field.p), repeat=r * c):
        yield Matrix(field, [v[i * c:(i + 1) * c] for i in range(r)])


def test_oracle_formulas():
    assert [idempotent_count(n) for n in range(1, 5)] == [2, 8, 58, 802]
    assert [gl_order(n) for n in range(1, 5)] == [1, 6, 168, 20160]


@pytest.mark.parametrize("n", [1, 2])
def test_f4_modules_match_brute_force(n):
    A = f4_algebra()
    got = {L for L in module_structures(A, n)}
    brute = set()
    for X in all_matrices(F2, n, n):
        I = Matrix.identity(F2, n)
        if X @ X == X + I:
            brute.add(I.hstack(X))
    assert got == brute
    assert len(got) == (0 if n == 1 else 2)


@pytest.mark.parametrize("n", [1, 2])
def test_kc2_comodules_match_brute_force(n):
    C = grouplike_coalgebra(F2, 2)
    got = set(comodule_structures(C, n))
    brute = set()
    I = Matrix.identity(F2, n)
    for rho in all_matrices(F2, 2 * n, n):
        coassoc = C.comult.kron(I) @ rho == C.identity().kron(rho) @ rho
        if coassoc and C.counit.kron(I) @ rho == I:
            brute.add(rho)
    assert got == brute and len(got) == idempotent_count(n)


def test_bc_bimodule_counts():
    b = builtin("f4-galois")
    bcs = bc_bimodules(b.CA, b.coalgebras["kC2"], 4)
    assert Counter(m.dim for m in bcs) == {n: idempotent_count(n) for n in range(1, 5)}
    assert len(bcs) == 870
    assert all(check_bc_bimodule(m) == [] for m in bcs[::37])
    assert len(bc_bimodules(b.CA, b.coalgebras["k"], 4)) == 4


def test_hopf_module_counts_match_orbit_formula():
    b = builtin("f4-galois")
    hms = hopf_modules(b.CA, None, 4)
    # Hopf modules over a Galois extension are A (x) W: |GL_2m| / |GL_m| of them on k^2m
    assert Counter(m.dim for m in hms) == {2: gl_order(2) // gl_order(1), 4: gl_order(4) // gl_order(2)}
    assert len(hms) == 3366
    assert all(check_hopf_module(N) == [] for N in hms[::97])
    f8 = builtin("f8-galois")
    assert len(hopf_modules(f8.CA, None, 3)) == gl_order(3)


def test_kc2_small_hopf_modules_match_brute_force():
    b = builtin("kc2")
    CA = b.CA
    Z = regular_hopf_module(CA).Z
    assert hopf_modules(CA, None, 1) == []      # Hopf modules are H (x) W, so dim is even
    got = {(N.action, N.coaction) for N in hopf_modules(CA, None, 2) if N.dim == 2}
    brute = set()
    I = Matrix.identity(QQ, 2)
    for X in itertools.product((0, 1), repeat=4):
        L = left_module(CA.A, 2, I.hstack(Matrix(QQ, [X[:2], X[2:]])))
        if check_bimodule(L):
            continue
        for z in itertools.product((0, 1), repeat=8):
            zeta = Matrix(QQ, [z[2 * i:2 * i + 2] for i in range(4)])
            N = DKHopfModule(CA, Z, L, zeta)
            if not check_hopf_module(N):
                brute.add((N.action, N.coaction))
    assert got == brute and len(got) >= 1


def test_graded_matches_direct():
    b = builtin("f4-galois")
    C = b.coalgebras["kC2"]
    Z = free_module_coalgebra(b.CA.H, C)
    direct = {(N.action, N.coaction) for N in hopf_modules(b.CA, Z, 2)}
    graded = {(N.action, N.coaction) for N in graded_hopf_modules(b.CA, C, 2)}
    assert direct == graded and len(direct) == 2 * gl_order(2)
    f8 = builtin("f8-galois")
    assert len(graded_hopf_modules(f8.CA, f8.coalgebras["kC2"], 3)) == 2 * gl_order(3)


def test_idempotents_of_regular_module():
    b = builtin("f4-galois")
    N = regular_hopf_module(b.CA)
    P = hopf_module_idempotents(N)
    assert set(P) == {Matrix.zeros(F2, 2, 2), Matrix.identity(F2, 2)}


def test_counterexample_search():
    CA = builtin("idempotent-monoid").CA
    N = counit_counterexample(CA)
    assert N is not None and N.dim == 1 and check_hopf_module(N) == []
    c = adjunction_counit(CA, builtin("idempotent-monoid").coalgebras["k"], N)
    assert c.shape == (1, 2) and not c.is_invertible()
    assert counit_counterexample(builtin("kc2").CA, 2) is None


def test_caps_are_enforced_before_allocation():
    system = Matrix.zeros(GF(3), 1, 40)
    with pytest.raises(TooManyCandidates):
        affine_points(GF(3), system, [0], (0, 1, 2), 1000)
    with pytest.raises(TooManyCandidates):
        hopf_modules(builtin("f4-galois").CA, None, 4, cap=16)


def test_families_are_deterministic():
    b = builtin("kc2")
    C = b.coalgebras["kC2"]
    Z = free_module_coalgebra(b.CA.H, C)
    a = [(N.name, N.action, N.coaction) for N in hopf_modules(b.CA, Z, 3)]
    bb = [(N.name, N.action, N.coaction) for N in hopf_modules(b.CA, Z, 3)]
    assert a == bb


@pytest.mark.slow
def test_full_f4_kc2_counit_sweep():
    b = builtin("f4-galois")
    C = b.coalgebras["kC2"]
    fam = graded_hopf_modules(b.CA, C, 4)
    assert len(fam) == 2 * gl_order(2) // gl_order(1) + 2 * gl_order(4) // gl_order(2) + gl_order(4)
    assert all(adjunction_counit(b.CA, C, N).is_invertible() for N in fam)


def test_one_dimensional_algebra_acts_by_scalars():
    from hopfkit.algebra import Algebra
    A = Algebra.from_tensor(GF(5), [[[3]]], [2])  # e0 e0 = 3 e0, unit 2 e0
    for n in (1, 2, 4):
        (L,) = module_structures(A, n)
        assert L == Matrix.identity(GF(5), n).scale(3)
        assert check_bimodule(left_module(A, n, L)) == []


def _trace(M):
    return sum(M[i, i] for i in range(M.nrows))


@pytest.mark.parametrize("name", ["kc2", "kc2-dual", "idempotent-monoid"])
def test_direct_sums_of_characters_cover_every_small_module(name):
    A = builtin(name).CA.A
    chars = [left_module(A, 1, L, f"S{i}") for i, L in enumerate(module_structures(A, 1, (0, 1, -1)))]
    assert len(chars) == 2
    sums = direct_sums(chars, 4)
    assert [m.dim for m in sums] == [1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4]
    g = [0, 1]

    def signature(M):
        return M.dim, _trace(M.left_matrix_of(g))

    reps = {signature(m) for m in sums}
    assert len(reps) == len(sums)
    for n, coeffs in [(n, None) for n in range(1, 5)] + [(n, (0, 1, -1)) for n in range(1, 4)]:
        for L in module_structures(A, n, coeffs):
            assert signature(left_module(A, n, L)) in reps
