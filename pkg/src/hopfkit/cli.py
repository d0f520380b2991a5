"""Command line: run verification tasks on a document or a builtin example.

    hopfkit <task> --input FILE | --builtin NAME [--objects a,b] [--format text|machine]

Exit codes: 0 when every task passes, 1 when any verification fails, 2 on
input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, Bimodule, check_algebra, check_bimodule, left_module, Violation
from .coalg import (
    Bialgebra,
    Coalgebra,
    ComoduleAlgebra,
    HopfAlgebra,
    ModuleCoalgebra,
    NoAntipode,
    antipode,
    check_bialgebra,
    check_coalgebra,
    check_comodule_algebra,
    check_hopf,
    check_module_coalgebra,
    free_module_coalgebra,
    trivial_coalgebra,
)
from .coring import (
    ExtensionData,
    check_coring,
    conjugate_coring,
    mate_round_trip,
    sweedler_coring,
    trivial_coring,
)
from .document import TASKS, Document, DocumentError, parse_document
from .exactla import Matrix
from .families import TooManyCandidates, bc_bimodules, counit_counterexample, graded_hopf_modules, hopf_modules
from .hilbert90 import (
    Cocycle,
    GroupAction,
    PoolNotFinite,
    action_to_comodule_algebra,
    check_action,
    check_cocycle,
    groupoid_check,
    h1_classes,
    regular_semilinear,
)
from .hopfmod import (
    DKHopfModule,
    canonical_map,
    check_hopf_module,
    fthm_report,
    fusion_operator,
    galois_factorization,
    hopf_colax_check,
    lemma_aux_check,
    regular_hopf_module,
    smash_to_end,
    trivial_bc_bimodule,
)
from .library import BUILTINS, builtin


# reports --------------------------------------------------------------------------

@dataclass
class Item:
    object: str
    verdict: str
    detail: str = ""
    witnesses: list = dc_field(default_factory=list)


@dataclass
class TaskResult:
    task: str
    items: list = dc_field(default_factory=list)
    seconds: float | None = None

    @property
    def verdict(self) -> str:
        if not self.items:
            return "skipped"
        if any(i.verdict == "fail" for i in self.items):
            return "fail"
        return "pass"


SKIP_REASONS = {
    "check": "no objects to check",
    "antipode": "no bialgebra in scope",
    "galois": "no comodule algebra in scope",
    "fthm": "no comodule algebra in scope",
    "h1": "no group action in scope",
    "operators": "no comodule algebra or bialgebra in scope",
    "coring": "no comodule algebra in scope",
}


@dataclass
class Report:
    source: str
    tasks: list = dc_field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(t.verdict == "fail" for t in self.tasks)

    def to_dict(self) -> dict:
        out = {"source": self.source, "tasks": []}
        for t in self.tasks:
            d = {"task": t.task, "verdict": t.verdict, "items": [
                {"object": i.object, "verdict": i.verdict, "detail": i.detail, "witnesses": list(i.witnesses)}
                for i in t.items]}
            if t.verdict == "skipped":
                d["reason"] = SKIP_REASONS.get(t.task, "nothing to do")
            if t.seconds is not None:
                d["seconds"] = round(t.seconds, 3)
            out["tasks"].append(d)
        out["exit"] = 1 if self.failed else 0
        return out

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"source: {d['source']}"]
        for t in d["tasks"]:
            head = f"task {t['task']}: {t['verdict'].upper()}"
            if "seconds" in t:
                head += f" ({t['seconds']:.3f} s)"
            if "reason" in t:
                head += f" ({t['reason']})"
            lines.append(head)
            for i in t["items"]:
                lines.append(f"  [{i['verdict']}] {i['object']}: {i['detail']}")
                for w in i["witnesses"]:
                    lines.append(f"      witness: {w}")
        lines.append(f"exit: {d['exit']}")
        return "\n".join(lines) + "\n"


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _fmt_matrix(M: Matrix) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in r) for r in M.rows) + "]"


# workspaces -----------------------------------------------------------------------

class Workspace:
    """Named objects a report runs over, in a fixed order."""

    def __init__(self, source: str, objects: dict, max_dim: int = 3):
        self.source, self.objects, self.max_dim = source, dict(objects), max_dim

    def of(self, kinds):
        return [(n, o) for n, o in self.objects.items() if isinstance(o, kinds)]

    def coalgebras(self, field):
        cs = [(n, o) for n, o in self.of(Coalgebra)]
        if not any(o.dim == 1 for _, o in cs):
            cs.insert(0, ("k", trivial_coalgebra(field)))
        return cs


def builtin_workspace(name: str, max_dim: int = 3) -> Workspace:
    b = builtin(name)
    objs = {"H": b.H, "A": b.CA.A, "CA": b.CA}
    for cn, C in b.coalgebras.items():
        objs[cn] = C
    if b.action is not None:
        objs["G"] = b.action
    objs["N"] = regular_hopf_module(b.CA)
    return Workspace(f"builtin:{name}", objs, max_dim)


def document_workspace(doc: Document, max_dim: int = 3) -> Workspace:
    return Workspace(doc.source, doc.objects, max_dim)


def _select(ws: Workspace, names: list[str] | None) -> Workspace:
    if not names:
        return ws
    missing = [n for n in names if n not in ws.objects]
    if missing:
        raise DocumentError("--objects", f"unknown object(s): {', '.join(missing)}")
    keep = {n: ws.objects[n] for n in ws.objects if n in names}
    return Workspace(ws.source, keep, ws.max_dim)


WITNESS_LIMIT = 8


def _witnesses(vs: list[Violation], limit: int = WITNESS_LIMIT) -> list[str]:
    return [str(v) for v in sorted(vs, key=lambda v: (v.axiom, v.witness))[:limit]]


# tasks --------------------------------------------------------------------------

def task_check(ws: Workspace) -> list[Item]:
    out = []
    for name, obj in ws.objects.items():
        if isinstance(obj, HopfAlgebra):
            vs, kind = check_bialgebra(obj) + check_hopf(obj), "Hopf algebra"
        elif isinstance(obj, Bialgebra):
            vs, kind = check_bialgebra(obj), "bialgebra"
        elif isinstance(obj, Algebra):
            vs, kind = check_algebra(obj), "algebra"
        elif isinstance(obj, Coalgebra):
            vs, kind = check_coalgebra(obj), "coalgebra"
        elif isinstance(obj, ComoduleAlgebra):
            vs, kind = check_comodule_algebra(obj), "comodule algebra"
        elif isinstance(obj, ModuleCoalgebra):
            vs, kind = check_module_coalgebra(obj), "module coalgebra"
        elif isinstance(obj, DKHopfModule):
            vs, kind = check_hopf_module(obj), "Hopf module"
        elif isinstance(obj, Bimodule):
            vs, kind = check_bimodule(obj), "module"
        elif isinstance(obj, GroupAction):
            vs, kind = obj.G.check() + check_action(obj), "group action"
        elif isinstance(obj, Cocycle):
            vs, kind = check_cocycle(obj), "cocycle"
        else:
            continue
        out.append(Item(name, _verdict(not vs), f"{kind}, {len(vs)} violations", _witnesses(vs)))
    return out


def task_antipode(ws: Workspace) -> list[Item]:
    out = []
    for name, H in ws.of(Bialgebra):
        fusion = fusion_operator(H, 1).is_invertible()
        try:
            S = antipode(H)
            vs = check_hopf(S)
            ok = not vs and fusion
            detail = f"S = {_fmt_matrix(S.antipode)}; fusion invertible: {'yes' if fusion else 'no'}"
            out.append(Item(name, _verdict(ok), detail, _witnesses(vs)))
        except NoAntipode:
            detail = f"no antipode; fusion invertible: {'yes' if fusion else 'no'}"
            w = ["fusion operator invertible although no antipode exists"] if fusion else []
            out.append(Item(name, "fail", detail, w))
    return out


def task_galois(ws: Workspace) -> list[Item]:
    out = []
    for name, CA in ws.of(ComoduleAlgebra):
        can = canonical_map(CA)
        galois = can.is_invertible()
        _, smash = smash_to_end(CA)
        agree = smash.invertible == galois
        facts = []
        for cn, C in ws.coalgebras(CA.field):
            fc = galois_factorization(CA, C, left_module(CA.B, CA.B.dim, CA.B.mult))
            facts.append((cn, fc))
        fact_ok = all(fc.ok for _, fc in facts)
        detail = (f"canonical map {can.nrows}x{can.ncols} rank {can.rank()}: "
                  f"{'invertible' if galois else 'not invertible'}; smash map "
                  f"{'invertible' if smash.invertible else 'not invertible'}; factorization "
                  + ", ".join(f"C={cn} {'ok' if fc.ok else 'broken'}" for cn, fc in facts))
        w = []
        if not agree:
            w.append("smash map invertibility disagrees with the canonical map")
        w += [f"factorization broken for C={cn}" for cn, fc in facts if not fc.ok]
        out.append(Item(name, _verdict(galois and agree and fact_ok), detail, w))
    return out


def _test_objects(ws: Workspace, CA: ComoduleAlgebra, C: Coalgebra, trivial_C: bool):
    """Exhaustive small families where available, else the objects in the workspace."""
    notes = []
    try:
        bcs = bc_bimodules(CA, C, ws.max_dim)
        notes.append(f"{len(bcs)} (B,C)-bimodules of dim <= {ws.max_dim}")
    except (ValueError, TooManyCandidates):
        bcs = [trivial_bc_bimodule(CA.B, C, n) for n in range(1, ws.max_dim + 1)] if CA.B.dim == 1 and C.dim == 1 else []
        notes.append(f"{len(bcs)} listed (B,C)-bimodules")
    hms = [N for _, N in ws.of(DKHopfModule) if N.CA is CA and N.Z.Z == _z_for(CA, C)]
    fam = None
    if not trivial_C:
        # the graded enumeration is exhaustive and much cheaper where it applies
        try:
            fam = graded_hopf_modules(CA, C, ws.max_dim)
        except (ValueError, TooManyCandidates):
            fam = None
    if fam is None:
        try:
            fam = hopf_modules(CA, None if trivial_C else free_module_coalgebra(CA.H, C), ws.max_dim)
        except (ValueError, TooManyCandidates):
            fam = None
    if fam is not None:
        hms += fam
        notes.append(f"{len(fam)} Hopf modules of dim <= {ws.max_dim}")
    else:
        if not hms and trivial_C:
            hms = [regular_hopf_module(CA)]
        notes.append(f"{len(hms)} listed Hopf modules")
    return bcs, hms, notes


def _z_for(CA, C):
    from .coalg import tensor_coalgebra
    return tensor_coalgebra(CA.H.coalg, C)


def task_fthm(ws: Workspace) -> list[Item]:
    out = []
    for name, CA in ws.of(ComoduleAlgebra):
        for cn, C in ws.coalgebras(CA.field):
            label = f"{name} with C={cn}"
            trivial_C = C.dim == 1
            bcs, hms, notes = _test_objects(ws, CA, C, trivial_C)
            try:
                rep = fthm_report(CA, C, bcs, hms)
            except ValueError as e:
                out.append(Item(label, "skipped", f"{type(e).__name__}: {e}"))
                continue
            if not rep.galois and trivial_C and not rep.failing():
                N = counit_counterexample(CA, ws.max_dim)
                if N is not None:
                    rep = fthm_report(CA, C, bcs, hms + [N])
                    notes.append(f"counterexample search found {N.name}")
            units = [e for e in rep.entries if e.kind == "unit"]
            counits = [e for e in rep.entries if e.kind == "counit"]
            detail = (f"Galois {'yes' if rep.galois else 'no'}; flat {'yes' if rep.flat else 'no'} "
                      f"({rep.flat_reason}); units {sum(e.bijective for e in units)}/{len(units)} bijective; "
                      f"counits {sum(e.bijective for e in counits)}/{len(counits)} bijective; "
                      + "; ".join(notes))
            fails = rep.failing()
            w = [f"{e.kind} of {e.name} ({e.dim_src} -> {e.dim_dst}) is not bijective" for e in fails[:WITNESS_LIMIT]]
            if len(fails) > WITNESS_LIMIT:
                w.append(f"... and {len(fails) - WITNESS_LIMIT} more")
            if not rep.consistent:
                w.insert(0, "inconsistent: Galois and flat but a unit or counit fails")
            if not rep.dims_preserved:
                w.append("dim B(A(M)) differs from dim M")
            out.append(Item(label, _verdict(rep.equivalence_verified), detail, w))
    return out


def _q_pool(N):
    """Over Q: multiplications by elements of A with coordinates in {-1, 0, 1}."""
    import itertools
    A = N.act.A
    pool = []
    for v in itertools.product((-1, 0, 1), repeat=A.dim):
        L = A.left_mult_matrix([A.field(x) for x in v])
        if L.is_invertible():
            pool.append(L)
    return pool


def task_h1(ws: Workspace) -> list[Item]:
    out = []
    for name, act in ws.of(GroupAction):
        CA = action_to_comodule_algebra(act)
        N = regular_semilinear(act)
        pool = None if act.field.is_finite else _q_pool(N)
        try:
            r = h1_classes(N, pool)
            g = groupoid_check(CA, N, pool)
        except PoolNotFinite as e:
            out.append(Item(name, "skipped", str(e)))
            continue
        galois = canonical_map(CA).is_invertible()
        sizes = ", ".join(str(c.size) for c in r.classes)
        detail = (f"{r.n_cocycles} cocycles in {len(r.classes)} class{'' if len(r.classes) == 1 else 'es'} (sizes {sizes})"
                  + (f", relative to a pool of {r.pool_size} automorphisms" if r.relative_to_pool else "")
                  + f"; groupoid check {'ok' if g.ok else 'broken'}")
        w = [f"class representative [{', '.join(str(x) for x in c.representative.key())}]" for c in r.classes]
        ok = g.ok and not (galois and act.field.is_finite and len(r.classes) != 1)
        if galois and act.field.is_finite and len(r.classes) != 1:
            w.insert(0, "Galois extension of finite fields with more than one class")
        out.append(Item(name, _verdict(ok), detail, w))
    for name, phi in ws.of(Cocycle):
        vs = check_cocycle(phi)
        out.append(Item(name, _verdict(not vs), f"cocycle, {len(vs)} violations", _witnesses(vs)))
    return out


def task_operators(ws: Workspace) -> list[Item]:
    out = []
    for name, CA in ws.of(ComoduleAlgebra):
        A = CA.A
        MB = left_module(CA.B, CA.B.dim, CA.B.mult)
        for cn, C in ws.coalgebras(CA.field):
            aux = lemma_aux_check(CA, C, left_module(A, A.dim, A.mult), MB)
            fc = galois_factorization(CA, C, MB)
            hc = hopf_colax_check(CA, C)
            ok = bool(aux.aux_equals_galois and aux.chi_K_hopf_equals_aux and fc.ok and hc.ok)
            detail = (f"aux = Galois on free modules: {aux.aux_equals_galois}; chi K(Hopf) = aux: "
                      f"{aux.chi_K_hopf_equals_aux}; factorization: {fc.ok}; Hopf operator is the "
                      f"universal colax factor: {hc.ok}")
            out.append(Item(f"{name} with C={cn}", _verdict(ok), detail))
        H = CA.H
        try:
            antipode(H)
            has = True
        except NoAntipode:
            has = False
        fus = fusion_operator(H, 1).is_invertible()
        out.append(Item(f"{name} fusion", _verdict(has == fus),
                        f"fusion invertible: {fus}; antipode exists: {has}"))
    return out


def task_coring(ws: Workspace) -> list[Item]:
    out = []
    for name, CA in ws.of(ComoduleAlgebra):
        ext = ExtensionData(CA.Binc)
        E = conjugate_coring(ext, trivial_coring(ext.B))
        S = sweedler_coring(ext)
        same = E.delta == S.delta and E.eps == S.eps and E.carrier == S.carrier
        vs = check_coring(E) + ext.check()
        n, mates_ok = mate_round_trip(ext, ext.A_BB, ext.A_AA)
        hc = hopf_colax_check(CA, trivial_coalgebra(CA.field))
        ok = same and not vs and mates_ok and hc.ok
        detail = (f"conjugate of the trivial coring equals the Sweedler coring: {same}; "
                  f"coring axioms: {len(vs)} violations; mates round trip on {n} basis maps: {mates_ok}; "
                  f"universal factor of chi equals the Hopf operator: {hc.factor_matches_hopf}")
        out.append(Item(name, _verdict(ok), detail, _witnesses(vs)))
    return out


TASK_FUNCS = {
    "check": task_check,
    "antipode": task_antipode,
    "galois": task_galois,
    "fthm": task_fthm,
    "h1": task_h1,
    "operators": task_operators,
    "coring": task_coring,
}


def run(ws: Workspace, tasks: list[str], timing: bool = False) -> Report:
    rep = Report(ws.source)
    for t in tasks:
        t0 = time.perf_counter()
        try:
            items = TASK_FUNCS[t](ws)
        except Exception as e:  # surfaced into the report, never a crash
            items = [Item("*", "fail", f"error: {type(e).__name__}: {e}")]
        res = TaskResult(t, items)
        if timing:
            res.seconds = time.perf_counter() - t0
        rep.tasks.append(res)
    return rep


# entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfkit", description="Exact verification of Hopf-module structure theorems.")
    p.add_argument("task", choices=list(TASKS) + ["run"])
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="JSON presentation document, or builtin:NAME")
    src.add_argument("--builtin", choices=sorted(BUILTINS), help="shipped example")
    p.add_argument("--objects", help="comma-separated object names to restrict to")
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.add_argument("--max-dim", type=int, default=3, help="largest test-module dimension for fthm")
    p.add_argument("--timing", action="store_true", help="include per-task wall time (not deterministic)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.builtin or (args.input and args.input.startswith("builtin:")):
            name = args.builtin or args.input[len("builtin:"):]
            if name not in BUILTINS:
                raise DocumentError("--input", f"unknown builtin {name!r}")
            ws = builtin_workspace(name, args.max_dim)
            doc_tasks = list(TASKS)
        else:
            try:
                with open(args.input, "rb") as fh:
                    data = fh.read()
            except OSError as e:
                raise DocumentError("--input", str(e)) from None
            doc = parse_document(data, source=args.input)
            ws = document_workspace(doc, args.max_dim)
            doc_tasks = doc.tasks or list(TASKS)
        names = [s for s in args.objects.split(",") if s] if args.objects else None
        ws = _select(ws, names)
    except DocumentError as e:
        print(f"hopfkit: error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    tasks = doc_tasks if args.task == "run" else [args.task]
    rep = run(ws, tasks, args.timing)
    if args.format == "machine":
        sys.stdout.write(json.dumps(rep.to_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(rep.to_text())
    return 1 if rep.failed else 0


if __name__ == "__main__":
    sys.exit(main())
