"""JSON presentation documents: a field, named objects given by structure
tensors of scalar strings, and an optional task list.

Tensor conventions (all indices are basis indices):
  algebra          mult[i][j][k]: e_i e_j = sum_k mult[i][j][k] e_k; unit[k]
  coalgebra        comult[i][j][k]: Delta(e_i) = sum d[i][j][k] e_j (x) e_k; counit[i]
  bialgebra        "algebra" + "coalgebra" names, or the four tensors inline
  comodule-algebra "H", "A", coaction[a][h][b]: nu(e_a) = sum c[a][h][b] e_h (x) e_b;
                   optional "B": list of vectors spanning the subalgebra
  module-coalgebra "H", "coalgebra", action[h][z][w]: e_h . e_z = sum act[h][z][w] e_w
  module           "algebra", "dim", action[a][m][k]: e_a . e_m = sum l[a][m][k] e_k
  hopf-module      "comodule-algebra", "module", optional "coalgebra" (Z = H (x) C) or
                   "module-coalgebra", coaction[m][z][k]: zeta(e_m) = sum c[m][z][k] e_z (x) e_k
  group-action     "algebra", "table" (group multiplication), "maps": one matrix per element
  cocycle          "action", "values": one matrix per element, acting on A itself
Matrices are lists of rows.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .algebra import Algebra, Bimodule, ground, subalgebra_from_basis
from .coalg import (
    Bialgebra,
    Coalgebra,
    ComoduleAlgebra,
    ModuleCoalgebra,
    NoAntipode,
    antipode,
    free_module_coalgebra,
    trivial_coalgebra,
)
from .exactla import GF, QQ, Field, Matrix
from .hilbert90 import Cocycle, GroupAction, GroupPresentation, regular_semilinear
from .hopfmod import DKHopfModule


class DocumentError(Exception):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}" if path else msg)
        self.path = path


class ParseError(DocumentError):
    pass


class ShapeError(DocumentError):
    pass


class UnknownName(DocumentError):
    pass


KINDS = ("algebra", "coalgebra", "bialgebra", "comodule-algebra", "module-coalgebra",
         "module", "hopf-module", "group-action", "cocycle")


class Document:
    def __init__(self, field: Field, objects: dict, tasks: list, source: str = ""):
        self.field, self.objects, self.tasks, self.source = field, objects, tasks, source


def parse_field(desc: Any, path: str = "field") -> Field:
    if not isinstance(desc, str):
        raise ParseError(path, "field must be a string such as \"Q\" or \"GF(5)\"")
    s = desc.strip()
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", s)
    if m:
        try:
            return GF(int(m.group(1)))
        except ValueError as e:
            raise ParseError(path, str(e)) from None
    raise ParseError(path, f"unknown field {desc!r}")


def _scalar(field: Field, x: Any, path: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(path, f"scalar must be a string or integer, got {type(x).__name__}")
    try:
        return field(x)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(path, f"bad scalar {x!r} for {field}: {e}") from None


def _tensor(field: Field, x: Any, shape: tuple, path: str):
    if not shape:
        return _scalar(field, x, path)
    if not isinstance(x, list):
        raise ShapeError(path, f"expected a list of length {shape[0]}")
    if len(x) != shape[0]:
        raise ShapeError(path, f"expected length {shape[0]}, got {len(x)}")
    return [_tensor(field, y, shape[1:], f"{path}[{i}]") for i, y in enumerate(x)]


def _flat(t) -> list:
    if isinstance(t, list):
        return [x for y in t for x in _flat(y)]
    return [t]


def _get(spec: dict, key: str, path: str):
    if key not in spec:
        raise ParseError(path, f"missing key {key!r}")
    return spec[key]


def _dim(spec: dict, path: str) -> int:
    d = _get(spec, "dim", path)
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ParseError(f"{path}.dim", "dim must be a positive integer")
    return d


class _Builder:
    def __init__(self, field: Field, raw: dict):
        self.field, self.raw = field, raw
        self.built: dict = {}

    def ref(self, name: Any, kinds: tuple, path: str):
        if not isinstance(name, str) or name not in self.raw:
            raise UnknownName(path, f"unknown object {name!r}")
        obj = self.build(name)
        if not isinstance(obj, kinds):
            raise UnknownName(path, f"object {name!r} has the wrong kind")
        return obj

    def build(self, name: str):
        if name in self.built:
            if self.built[name] is None:
                raise ParseError(f"objects.{name}", "circular reference")
            return self.built[name]
        self.built[name] = None
        spec = self.raw[name]
        path = f"objects.{name}"
        if not isinstance(spec, dict):
            raise ParseError(path, "object must be a mapping")
        kind = _get(spec, "kind", path)
        if kind not in KINDS:
            raise ParseError(f"{path}.kind", f"unknown kind {kind!r}")
        obj = getattr(self, "_" + kind.replace("-", "_"))(spec, path, name)
        self.built[name] = obj
        return obj

    def _algebra(self, spec, path, name):
        f = self.field
        n = _dim(spec, path)
        m = _tensor(f, _get(spec, "mult", path), (n, n, n), f"{path}.mult")
        u = _tensor(f, _get(spec, "unit", path), (n,), f"{path}.unit")
        return Algebra.from_tensor(f, m, u, name=name)

    def _coalgebra(self, spec, path, name):
        f = self.field
        n = _dim(spec, path)
        d = _tensor(f, _get(spec, "comult", path), (n, n, n), f"{path}.comult")
        e = _tensor(f, _get(spec, "counit", path), (n,), f"{path}.counit")
        return Coalgebra.from_tensor(f, d, e, name=name)

    def _bialgebra(self, spec, path, name):
        if "algebra" in spec:
            A = self.ref(spec["algebra"], (Algebra,), f"{path}.algebra")
            C = self.ref(_get(spec, "coalgebra", path), (Coalgebra,), f"{path}.coalgebra")
        else:
            A = self._algebra(spec, path, name)
            C = self._coalgebra(spec, path, name)
        if A.dim != C.dim:
            raise ShapeError(path, "algebra and coalgebra dimensions differ")
        B = Bialgebra(A, C, name=name)
        try:
            return antipode(B)
        except NoAntipode:
            return B
        except ArithmeticError:
            return B

    def _comodule_algebra(self, spec, path, name):
        f = self.field
        H = self.ref(_get(spec, "H", path), (Bialgebra,), f"{path}.H")
        A = self.ref(_get(spec, "A", path), (Algebra,), f"{path}.A")
        c = _tensor(f, _get(spec, "coaction", path), (A.dim, H.dim, A.dim), f"{path}.coaction")
        nu = Matrix.from_columns(f, [_flat(c[a]) for a in range(A.dim)], H.dim * A.dim)
        Binc = None
        if "B" in spec:
            vecs = spec["B"]
            if not isinstance(vecs, list) or not vecs:
                raise ShapeError(f"{path}.B", "expected a nonempty list of vectors")
            cols = [_tensor(f, v, (A.dim,), f"{path}.B[{i}]") for i, v in enumerate(vecs)]
            try:
                Binc = subalgebra_from_basis(A, Matrix.from_columns(f, cols, A.dim), name=f"{name}.B")
            except ValueError as e:
                raise ParseError(f"{path}.B", str(e)) from None
        return ComoduleAlgebra(H, A, nu, Binc, name=name)

    def _module_coalgebra(self, spec, path, name):
        f = self.field
        H = self.ref(_get(spec, "H", path), (Bialgebra,), f"{path}.H")
        Z = self.ref(_get(spec, "coalgebra", path), (Coalgebra,), f"{path}.coalgebra")
        t = _tensor(f, _get(spec, "action", path), (H.dim, Z.dim, Z.dim), f"{path}.action")
        cols = [t[h][z] for h in range(H.dim) for z in range(Z.dim)]
        return ModuleCoalgebra(H, Z, Matrix.from_columns(f, cols, Z.dim), name=name)

    def _module(self, spec, path, name):
        f = self.field
        A = self.ref(_get(spec, "algebra", path), (Algebra,), f"{path}.algebra")
        n = _dim(spec, path)
        t = _tensor(f, _get(spec, "action", path), (A.dim, n, n), f"{path}.action")
        cols = [t[a][m] for a in range(A.dim) for m in range(n)]
        return Bimodule(A, ground(f), n, Matrix.from_columns(f, cols, n), Matrix.identity(f, n), name=name)

    def _hopf_module(self, spec, path, name):
        f = self.field
        CA = self.ref(_get(spec, "comodule-algebra", path), (ComoduleAlgebra,), f"{path}.comodule-algebra")
        M = self.ref(_get(spec, "module", path), (Bimodule,), f"{path}.module")
        if M.left_alg != CA.A:
            raise ShapeError(f"{path}.module", "module is not over the comodule algebra")
        if "module-coalgebra" in spec:
            Z = self.ref(spec["module-coalgebra"], (ModuleCoalgebra,), f"{path}.module-coalgebra")
        else:
            C = (self.ref(spec["coalgebra"], (Coalgebra,), f"{path}.coalgebra")
                 if "coalgebra" in spec else trivial_coalgebra(f))
            Z = free_module_coalgebra(CA.H, C)
        t = _tensor(f, _get(spec, "coaction", path), (M.dim, Z.dim, M.dim), f"{path}.coaction")
        zeta = Matrix.from_columns(f, [_flat(t[m]) for m in range(M.dim)], Z.dim * M.dim)
        return DKHopfModule(CA, Z, M, zeta, name=name)

    def _group_action(self, spec, path, name):
        f = self.field
        A = self.ref(_get(spec, "algebra", path), (Algebra,), f"{path}.algebra")
        table = _get(spec, "table", path)
        if not isinstance(table, list) or not table:
            raise ShapeError(f"{path}.table", "expected a square table")
        n = len(table)
        for i, row in enumerate(table):
            if not isinstance(row, list) or len(row) != n:
                raise ShapeError(f"{path}.table[{i}]", f"expected length {n}")
            for j, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
                    raise ParseError(f"{path}.table[{i}][{j}]", "entries must be element indices")
        maps = _tensor(f, _get(spec, "maps", path), (n, A.dim, A.dim), f"{path}.maps")
        G = GroupPresentation(table, int(spec.get("identity", 0)))
        return GroupAction(G, A, [Matrix(f, m, A.dim) for m in maps], name=name)

    def _cocycle(self, spec, path, name):
        f = self.field
        act = self.ref(_get(spec, "action", path), (GroupAction,), f"{path}.action")
        N = regular_semilinear(act)
        n = act.G.order
        vals = _tensor(f, _get(spec, "values", path), (n, N.dim, N.dim), f"{path}.values")
        return Cocycle(N, [Matrix(f, v, N.dim) for v in vals], name=name)


TASKS = ("check", "antipode", "galois", "fthm", "h1", "operators", "coring")


def parse_document(data: bytes | str, source: str = "") -> Document:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError("", f"input is not UTF-8: {e}") from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}", e.msg) from None
    if not isinstance(raw, dict):
        raise ParseError("", "document must be a mapping")
    field = parse_field(_get(raw, "field", ""))
    objs = _get(raw, "objects", "")
    if not isinstance(objs, dict):
        raise ParseError("objects", "must be a mapping")
    b = _Builder(field, objs)
    built = {}
    for name in objs:
        try:
            built[name] = b.build(name)
        except DocumentError:
            raise
        except (ValueError, ArithmeticError) as e:
            raise ShapeError(f"objects.{name}", str(e)) from None
    tasks = raw.get("tasks", [])
    if not isinstance(tasks, list):
        raise ParseError("tasks", "must be a list")
    for i, t in enumerate(tasks):
        if t not in TASKS:
            raise UnknownName(f"tasks[{i}]", f"unknown task {t!r}")
    return Document(field, built, list(tasks), source)
