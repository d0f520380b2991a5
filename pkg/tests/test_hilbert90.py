import itertools

import pytest
from hypothesis import given, strategies as st

from hopfkit.coalg import check_comodule_algebra, check_hopf, coinvariants
from hopfkit.exactla import GF, QQ, Matrix, same_column_space
from hopfkit.hilbert90 import (
    Cocycle, GroupAction, GroupPresentation, PoolNotFinite, action_to_comodule_algebra, check_action,
    check_cocycle, check_semilinear, cohomologous, conj_action, cyclic_group, dual_group_hopf,
    enumerate_cocycles, fixed_subalgebra, groupoid_check, h1_classes, hopf_module_isomorphism,
    hopf_to_semilinear, regular_semilinear, semilinear_to_hopf, trivial_action, trivial_cocycle,
    trivial_group, twist, untwist,
)
from hopfkit.hopfmod import check_hopf_module
from hopfkit.library import builtin, f4_algebra, kc2_dual

W = (0, 1)        # omega in F4
W2 = (1, 1)       # omega^2 = omega + 1


def f4():
    b = builtin("f4-galois")
    return b, b.semilinear, b.action.A


def test_groups():
    assert cyclic_group(3).check() == [] and trivial_group().check() == []
    bad = GroupPresentation([[0, 1], [1, 1]])
    assert bad.check()
    G = cyclic_group(4)
    assert [G.inverse[g] for g in G.elements()] == [0, 3, 2, 1]


def test_dual_group_hopf():
    H = dual_group_hopf(cyclic_group(2), QQ)
    assert H.dim == 2 and check_hopf(H) == []
    # algebra maps k^G -> k with 0/1 values: exactly the evaluations
    chars = [v for v in itertools.product((0, 1), repeat=2)
             if Matrix.row(QQ, v) @ H.mult == Matrix.row(QQ, v).kron(Matrix.row(QQ, v))
             and Matrix.row(QQ, v) @ H.unit_map == Matrix.identity(QQ, 1)]
    assert sorted(chars) == [(0, 1), (1, 0)]
    assert check_hopf(dual_group_hopf(cyclic_group(3), GF(2))) == []


@pytest.mark.parametrize("name", ["f4-galois", "f8-galois", "gf3-trivial", "kc2-dual"])
def test_actions_and_fixed_points(name):
    b = builtin(name)
    assert check_action(b.action) == [] and check_semilinear(b.semilinear) == []
    assert check_comodule_algebra(b.CA) == []
    assert same_column_space(fixed_subalgebra(b.action), coinvariants(b.CA))
    N = semilinear_to_hopf(b.CA, b.semilinear)
    assert check_hopf_module(N) == []
    back = hopf_to_semilinear(b.action, N)
    assert back.T == b.semilinear.T


def test_trivial_group_gives_ground_hopf():
    A = f4_algebra()
    act = trivial_action(trivial_group(), A)
    CA = action_to_comodule_algebra(act)
    assert CA.H.dim == 1
    assert CA.nu == Matrix.identity(GF(2), 2)
    r = h1_classes(regular_semilinear(act))
    assert (len(r.classes), r.n_cocycles) == (1, 1)


def test_broken_action_detected():
    A = f4_algebra()
    ident = A.identity()
    # swapping 1 and omega is not unital
    wrong = GroupAction(cyclic_group(2), A, [ident, Matrix(GF(2), [[0, 1], [1, 0]])])
    assert check_action(wrong)


def test_cocycle_examples():
    b, N, A = f4()
    assert check_cocycle(trivial_cocycle(N)) == []
    phi = Cocycle(N, [A.identity(), A.left_mult_matrix(W)])
    assert check_cocycle(phi) == []
    Ntriv = regular_semilinear(trivial_action(b.action.G, A))
    assert check_cocycle(Cocycle(Ntriv, [A.identity(), A.left_mult_matrix(W)]))


def test_twist_examples():
    b, N, A = f4()
    assert twist(N, trivial_cocycle(N)).T == N.T
    phi = Cocycle(N, [A.identity(), A.left_mult_matrix(W)])
    Nt = twist(N, phi)
    # x -> omega x^2: 1 -> omega, omega -> 1
    assert Nt.T[1] == Matrix(GF(2), [[0, 1], [1, 0]])
    assert check_semilinear(Nt) == []
    assert untwist(N, Nt).values == phi.values


def test_twist_composition():
    b, N, A = f4()
    for phi in enumerate_cocycles(N):
        Nt = twist(N, phi)
        for psi in enumerate_cocycles(Nt):
            prod = Cocycle(N, [psi.values[g] @ phi.values[g] for g in N.act.G.elements()])
            assert check_cocycle(prod) == []
            assert twist(Nt, psi).T == twist(N, prod).T


def test_cohomologous_witnesses():
    b, N, A = f4()
    phi = Cocycle(N, [A.identity(), A.left_mult_matrix(W)])
    one = trivial_cocycle(N)
    alpha = cohomologous(phi, one)
    assert alpha is not None and alpha.is_invertible()
    for g in N.act.G.elements():
        assert one.values[g] @ conj_action(N, g, alpha) == alpha @ phi.values[g]
    assert alpha == A.left_mult_matrix(W)
    same = cohomologous(phi, phi)
    assert same is not None
    assert all(phi.values[g] @ conj_action(N, g, same) == same @ phi.values[g] for g in N.act.G.elements())


def test_gf3_minus_one_not_a_coboundary():
    b = builtin("gf3-trivial")
    N = b.semilinear
    I = N.carrier.identity()
    minus = Cocycle(N, [I, I.scale(-1)])
    assert check_cocycle(minus) == []
    assert cohomologous(minus, trivial_cocycle(N)) is None
    assert hopf_module_isomorphism(semilinear_to_hopf(b.CA, twist(N, minus)),
                                   semilinear_to_hopf(b.CA, N)) is None


@pytest.mark.parametrize("name,classes,cocycles", [("f4-galois", 1, 3), ("f8-galois", 1, 7), ("gf3-trivial", 2, 2)])
def test_h1_counts(name, classes, cocycles):
    r = h1_classes(builtin(name).semilinear)
    assert (len(r.classes), r.n_cocycles) == (classes, cocycles)
    assert sum(c.size for c in r.classes) == cocycles
    assert not r.relative_to_pool


def test_h1_representatives_are_least():
    r = h1_classes(builtin("gf3-trivial").semilinear)
    keys = [c.representative.key() for c in r.classes]
    assert keys == sorted(keys)
    assert keys[0] == trivial_cocycle(builtin("gf3-trivial").semilinear).key()


def test_rationals_need_a_pool():
    b = kc2_dual()
    N = b.semilinear
    with pytest.raises(PoolNotFinite):
        h1_classes(N)
    A = b.action.A
    pool = [A.left_mult_matrix(v) for v in itertools.product((-1, 0, 1), repeat=2)]
    r = h1_classes(N, pool)
    assert r.relative_to_pool and len(r.classes) >= 1
    assert all(check_cocycle(c.representative) == [] for c in r.classes)


@pytest.mark.parametrize("name", ["f4-galois", "gf3-trivial"])
def test_groupoid_check(name):
    b = builtin(name)
    g = groupoid_check(b.CA, b.semilinear)
    assert g.ok and g.agreements == len(enumerate_cocycles(b.semilinear)) ** 2


F8 = builtin("f8-galois")
F8_COCYCLES = enumerate_cocycles(F8.semilinear)


@given(st.sampled_from(F8_COCYCLES), st.sampled_from(F8_COCYCLES))
def test_f8_twists(phi, psi):
    N = F8.semilinear
    Nt = twist(N, phi)
    assert check_semilinear(Nt) == []
    assert check_hopf_module(semilinear_to_hopf(F8.CA, Nt)) == []
    assert untwist(N, Nt).values == phi.values
    a = cohomologous(phi, psi)
    assert a is not None
    for g in N.act.G.elements():
        assert psi.values[g] @ conj_action(N, g, a) == a @ phi.values[g]
