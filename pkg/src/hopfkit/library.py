"""The shipped example library.

Each builtin is a ``Bundle``: a field, a bialgebra, a comodule algebra over it,
coalgebras C to pair with it, and a few named test objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Algebra
from .coalg import (
    Bialgebra,
    Coalgebra,
    ComoduleAlgebra,
    HopfAlgebra,
    NoAntipode,
    antipode,
    group_bialgebra,
    grouplike_coalgebra,
    regular_comodule_algebra,
    trivial_coalgebra,
)
from .exactla import GF, QQ, Field
from .hilbert90 import (
    GroupAction,
    SemilinearModule,
    action_to_comodule_algebra,
    cyclic_group,
    frobenius_action,
    regular_semilinear,
    trivial_action,
)
from .hopfmod import regular_hopf_module


@dataclass
class Bundle:
    name: str
    field: Field
    H: Bialgebra
    CA: ComoduleAlgebra
    coalgebras: dict = dc_field(default_factory=dict)
    action: GroupAction | None = None
    semilinear: SemilinearModule | None = None
    description: str = ""

    @property
    def hopf(self) -> HopfAlgebra | None:
        return self.H if isinstance(self.H, HopfAlgebra) else None

    def hopf_modules(self):
        return [regular_hopf_module(self.CA)]


def _hopf_or_bialgebra(B: Bialgebra) -> Bialgebra:
    try:
        return antipode(B)
    except NoAntipode:
        return B


def kc2(field: Field | None = None) -> Bundle:
    f = field or QQ
    H = antipode(group_bialgebra(f, [[0, 1], [1, 0]], name="kC2"))
    CA = regular_comodule_algebra(H)
    return Bundle("kc2", f, H, CA, {"k": trivial_coalgebra(f), "kC2": grouplike_coalgebra(f, 2, "kC2")},
                  description="group algebra of C2 over Q, A = H, B = k")


def _galois_bundle(name, A: Algebra, description, act: GroupAction | None = None) -> Bundle:
    f = A.field
    if act is None:
        act = frobenius_action(A)
    CA = action_to_comodule_algebra(act)
    return Bundle(name, f, CA.H, CA, {"k": trivial_coalgebra(f), "kC2": grouplike_coalgebra(f, 2, "kC2")},
                  action=act, semilinear=regular_semilinear(act), description=description)


def kc2_dual(field: Field | None = None) -> Bundle:
    f = field or QQ
    A = Algebra.from_tensor(f, [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [1, 1], name="k^C2")
    act = GroupAction(cyclic_group(2), A, [A.identity(), A.identity().select_rows([1, 0])], name="translation")
    return _galois_bundle("kc2-dual", A, "functions on C2 over Q, C2 acting by translation", act)


def f4_algebra() -> Algebra:
    """GF(2)[w]/(w^2 + w + 1) in the basis 1, w."""
    return Algebra.from_tensor(GF(2), [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], [1, 0], name="F4")


def f8_algebra() -> Algebra:
    """GF(2)[x]/(x^3 + x + 1) in the basis 1, x, x^2."""
    f = GF(2)
    # x^i x^j = x^(i+j) reduced with x^3 = x + 1, x^4 = x^2 + x
    red = {0: [1, 0, 0], 1: [0, 1, 0], 2: [0, 0, 1], 3: [1, 1, 0], 4: [0, 1, 1]}
    m = [[red[i + j] for j in range(3)] for i in range(3)]
    return Algebra.from_tensor(f, m, [1, 0, 0], name="F8")


def f4_galois() -> Bundle:
    return _galois_bundle("f4-galois", f4_algebra(), "F4 over GF(2) with its Frobenius, H = GF(2)^C2")


def f8_galois() -> Bundle:
    return _galois_bundle("f8-galois", f8_algebra(), "F8 over GF(2) with its Frobenius, H = GF(2)^C3")


def gf3_trivial() -> Bundle:
    f = GF(3)
    A = Algebra.from_tensor(f, [[[1]]], [1], name="GF(3)")
    act = trivial_action(cyclic_group(2), A)
    b = _galois_bundle("gf3-trivial", A, "C2 acting trivially on GF(3)", act)
    return b


def sweedler_h4_bialgebra(field: Field | None = None) -> Bialgebra:
    """Basis 1, g, x, gx; g^a x^b has index a + 2b."""
    f = field or QQ

    def idx(a, b):
        return a + 2 * b

    m = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for a, b, c, d in ((a, b, c, d) for a in (0, 1) for b in (0, 1) for c in (0, 1) for d in (0, 1)):
        if b + d < 2:
            m[idx(a, b)][idx(c, d)][idx((a + c) % 2, b + d)] = (-1) ** (b * c)
    A = Algebra.from_tensor(f, m, [1, 0, 0, 0], name="H4")

    def t(i, j):
        return i * 4 + j

    d = [[0] * 16 for _ in range(4)]
    d[0][t(0, 0)] = 1
    d[1][t(1, 1)] = 1
    d[2][t(2, 0)] = 1
    d[2][t(1, 2)] = 1
    d[3][t(3, 1)] = 1
    d[3][t(0, 3)] = 1
    C = Coalgebra.from_tensor(f, d, [1, 1, 0, 0], name="H4")
    return Bialgebra(A, C, name="H4")


def sweedler_h4() -> Bundle:
    f = QQ
    H = antipode(sweedler_h4_bialgebra(f))
    CA = regular_comodule_algebra(H)
    return Bundle("sweedler-h4", f, H, CA, {"k": trivial_coalgebra(f)},
                  description="Sweedler's four-dimensional Hopf algebra over Q, A = H")


def idempotent_monoid_bialgebra(field: Field | None = None) -> Bialgebra:
    """k{1, e} with e^2 = e, both grouplike."""
    return group_bialgebra(field or QQ, [[0, 1], [1, 1]], name="k{1,e}")


def idempotent_monoid() -> Bundle:
    f = QQ
    H = idempotent_monoid_bialgebra(f)
    CA = regular_comodule_algebra(H)
    return Bundle("idempotent-monoid", f, H, CA, {"k": trivial_coalgebra(f)},
                  description="monoid bialgebra of {1, e} with e idempotent over Q, A = H")


BUILTINS = {
    "kc2": kc2,
    "kc2-dual": kc2_dual,
    "f4-galois": f4_galois,
    "f8-galois": f8_galois,
    "sweedler-h4": sweedler_h4,
    "idempotent-monoid": idempotent_monoid,
    "gf3-trivial": gf3_trivial,
}

_CACHE: dict = {}


def builtin(name: str) -> Bundle:
    if name not in BUILTINS:
        raise KeyError(name)
    if name not in _CACHE:
        _CACHE[name] = BUILTINS[name]()
    return _CACHE[name]
