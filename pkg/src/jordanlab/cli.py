"""Command line front end producing JSON run reports.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 malformed
input, 3 budget exceeded, 4 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__, maps
from .decompose import decompose_centralizer, decompose_generalized
from .dsl import ParseError, UnboundSymbol, eval_identity, parse_identity, read_identity_file
from .enumeration import (
    CLASS_NAMES,
    DEEP_BUDGET,
    DEFAULT_BUDGET,
    MapClass,
    default_workers,
    enumerate_additive_maps,
    enumerate_jordan_n_centralizers,
)
from .errors import BudgetExceeded, DefinitionError, JordanLabError, PreconditionError, UnsupportedOperation
from .peirce import (
    center_commutant,
    center_peirce,
    check_condition_2_1,
    check_orthogonality_hypothesis,
    check_spade,
    compute_xi,
    is_faithful_bimodule,
    is_prime,
    make_peirce_context,
)
from .pipeline import default_idempotent, verify_theorem_pipeline
from .rings import find_idempotents, is_two_torsion_free, validate_ring
from .specs import SpecError, load_json, map_from_spec, ring_from_spec

SCHEMA = 1

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = range(5)

CHECK_CLASSES = (
    "additive",
    "derivation",
    "jordan_n_derivation",
    "generalized_jordan_n_derivation",
    "jordan_n_centralizer",
    "centralizer",
    "singular_jordan_derivation",
    "antiderivation",
)


class _Run:
    """Collects the pieces of one report."""

    def __init__(self, command: str, args: dict):
        self.command = command
        self.args = args
        self.inputs: dict[str, dict] = {}
        self.ring = None
        self.start = time.perf_counter()
        self.timings: dict[str, float] = {}

    def digest(self, role: str, path) -> None:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise SpecError(f"{path}: {exc.strerror}") from None
        self.inputs[role] = {"path": str(path), "sha256": hashlib.sha256(data).hexdigest()}

    def load_ring(self, path):
        self.digest("ring", path)
        self.ring = ring_from_spec(load_json(path))
        return self.ring

    def load_map(self, role, path, ring):
        self.digest(role, path)
        spec = load_json(path)
        if "ring" in spec and ring is None:
            ring = self.ring = ring_from_spec(spec["ring"])
        return map_from_spec(spec, ring)

    def el(self, i):
        if i is None:
            return None
        return {"index": int(i), "label": self.ring.label(int(i))}

    def timed(self, key, fn, *a, **kw):
        t0 = time.perf_counter()
        out = fn(*a, **kw)
        self.timings[key] = round((time.perf_counter() - t0) * 1000, 3)
        return out

    def report(self, exit_code: int, results: dict, failed=()) -> dict:
        self.timings["total_ms"] = round((time.perf_counter() - self.start) * 1000, 3)
        out = {
            "schema": SCHEMA,
            "tool": {"name": "jordanlab", "version": __version__},
            "command": self.command,
            "arguments": self.args,
            "inputs": self.inputs,
            "results": results,
            "failed": list(failed),
            "exit_code": exit_code,
            "timings": self.timings,
        }
        if self.ring is not None:
            out["ring"] = {"name": self.ring.name, "order": self.ring.order}
        return out


def _witness(run: _Run, check) -> dict | None:
    if check.ok:
        return None
    w = check.witness
    if isinstance(w, tuple):
        return {"law": check.law, "tuple": [run.el(x) for x in w]}
    return {"law": check.law, "element": run.el(w)}


# -- commands --------------------------------------------------------------


def cmd_analyze(run: _Run, args) -> tuple[int, dict, list]:
    ring = run.load_ring(args.ring)
    failed = []
    v = validate_ring(ring)
    results = {"validate": {"ok": v.ok, "axiom": v.axiom, "witness": list(v.witness) if v.witness else None}}
    if not v.ok:
        return EXIT_CHECK, results, ["validate"]
    torsion = is_two_torsion_free(ring)
    results["two_torsion_free"] = {"ok": torsion.ok, "witness": _witness(run, torsion)}
    if not torsion:
        failed.append("two_torsion_free")
    idems = find_idempotents(ring)
    nontrivial = [e.index for e in idems if e.nontrivial]
    results["idempotents"] = {"count": len(idems), "nontrivial": [run.el(e) for e in nontrivial]}
    if not nontrivial:
        failed.append("nontrivial_idempotent")

    center = center_commutant(ring)
    results["center"] = {"size": len(center), "elements": [run.el(z) for z in sorted(center.elements)]}
    cond = check_condition_2_1(ring)
    results["condition_2_1"] = {"ok": cond.ok, "witness": _witness(run, cond)}
    if not cond:
        failed.append("condition_2_1")
    prime = run.timed("prime_ms", is_prime, ring)
    results["prime"] = {"ok": prime.ok, "witness": _witness(run, prime)}

    if args.e1 is not None:
        targets = [ring.element(args.e1)]
    else:
        targets = nontrivial
    per = []
    for e in targets:
        try:
            ctx = make_peirce_context(ring, e)
        except ValueError as exc:
            raise SpecError(str(exc)) from None
        spade = check_spade(ctx)
        agree = center_peirce(ctx).elements == center.elements
        xi = compute_xi(ctx)
        faithful = is_faithful_bimodule(ctx)
        entry = {
            "e1": run.el(e),
            "peirce_sizes": ctx.sizes(),
            "spade": {"ok": spade.ok, "witness": _witness(run, spade)},
            "center_agreement": agree,
            "xi": {
                "ok": xi.ok,
                "mapping": [[run.el(k), run.el(val)] for k, val in sorted(xi.mapping.items())],
                "diagnostics": xi.diagnostics,
            },
            "faithful": {"left": faithful.left_faithful, "right": faithful.right_faithful},
            "orthogonality": check_orthogonality_hypothesis(ctx),
        }
        per.append(entry)
        tag = ring.label(e)
        for name, ok in (("spade", spade.ok), ("center_agreement", agree), ("xi", xi.ok)):
            if not ok:
                failed.append(f"{name}[{tag}]")
    results["idempotent_analyses"] = per
    return (EXIT_CHECK if failed else EXIT_OK), results, failed


def _check(run, args, ring, f):
    name = args.cls
    if name not in CHECK_CLASSES:
        raise SpecError(f"unknown class {name!r}; expected one of {CHECK_CLASSES}")
    n = args.n
    if name == "additive":
        return maps.is_additive(f)
    if name == "derivation":
        return maps.is_derivation(f)
    if name == "antiderivation":
        return maps.is_antiderivation(f)
    if name == "centralizer":
        return maps.is_centralizer(f)
    if name == "jordan_n_derivation":
        return maps.is_jordan_n_derivation(f, n, args.budget or maps.DEFAULT_TUPLE_BUDGET)
    if name == "jordan_n_centralizer":
        return maps.is_jordan_n_centralizer(f, n, args.budget or maps.DEFAULT_TUPLE_BUDGET)
    if name == "singular_jordan_derivation":
        e1 = ring.element(args.e1) if args.e1 is not None else default_idempotent(ring)
        if e1 is None:
            raise SpecError("ring has no nontrivial idempotent")
        return maps.is_singular_jordan_derivation(f, make_peirce_context(ring, e1))
    if args.delta is None:
        raise SpecError("generalized_jordan_n_derivation needs --delta")
    delta = run.load_map("delta", args.delta, ring)
    return maps.is_generalized_jordan_n_derivation(f, delta, n, args.budget or maps.DEFAULT_TUPLE_BUDGET)


def cmd_check_map(run: _Run, args):
    ring = run.load_ring(args.ring) if args.ring else None
    f = run.load_map("map", args.map, ring)
    ring = f.ring
    try:
        check = run.timed("check_ms", _check, run, args, ring, f)
    except DefinitionError as exc:
        results = {"class": args.cls, "n": args.n, "holds": False, "error": str(exc),
                   "witness": [run.el(x) for x in exc.witness]}
        return EXIT_CHECK, results, ["associated_jordan_n_derivation"]
    results = {"class": args.cls, "n": args.n, "holds": check.ok, "witness": _witness(run, check)}
    if check.info:
        results["info"] = {"additive": check.info.get("additive"), "zero_image": run.el(check.info.get("zero_image"))}
    return (EXIT_OK if check.ok else EXIT_CHECK), results, ([] if check.ok else [args.cls])


def _flag_witnesses(run, witnesses):
    out = {}
    for key, w in sorted(witnesses.items()):
        if isinstance(w, tuple):
            out[key] = [run.el(x) for x in w]
        else:
            out[key] = run.el(w)
    return out


def cmd_decompose(run: _Run, args):
    ring = run.load_ring(args.ring) if args.ring else None
    F = run.load_map("map", args.map, ring)
    ring = F.ring
    try:
        if args.delta is not None:
            delta = run.load_map("delta", args.delta, ring)
            rep = run.timed("decompose_ms", decompose_generalized, F, delta, args.n)
            mode = "generalized"
        else:
            rep = run.timed("decompose_ms", decompose_centralizer, F, args.n)
            mode = "centralizer"
    except DefinitionError as exc:
        results = {"error": str(exc), "witness": [run.el(x) for x in exc.witness]}
        return EXIT_CHECK, results, ["associated_jordan_n_derivation"]
    except UnsupportedOperation as exc:
        return EXIT_CHECK, {"error": str(exc)}, ["two_torsion_free"]
    results = {
        "mode": mode,
        "n": args.n,
        "mu": run.el(rep.mu),
        "flags": rep.flags(),
        "witnesses": _flag_witnesses(run, rep.witnesses),
        "notes": {k: (run.el(v) if k == "delta_at_zero" else v) for k, v in sorted(rep.notes.items())},
        "residual_is_zero": bool(not rep.residual.images.any()),
    }
    failed = [k for k, v in rep.flags().items() if not v]
    return (EXIT_OK if not failed else EXIT_CHECK), results, failed


def _parse_enum_class(name: str, n: int, e1):
    if name == "jordan_n_centralizer":
        return None
    base = name[: -len("_additive")] if name.endswith("_additive") else name
    if base not in CLASS_NAMES:
        raise SpecError(f"unknown class {name!r}")
    return MapClass(base, n, e1)


def cmd_enumerate(run: _Run, args):
    ring = run.load_ring(args.ring)
    workers = args.workers or default_workers()
    if args.cls == "singular_jordan_derivation" or args.cls == "singular_jordan_derivation_additive":
        e1 = ring.element(args.e1) if args.e1 is not None else default_idempotent(ring)
        if e1 is None:
            raise SpecError("ring has no nontrivial idempotent")
    else:
        e1 = None
    try:
        cls = _parse_enum_class(args.cls, args.n, e1)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    if cls is None:
        res = enumerate_jordan_n_centralizers(ring, args.n, workers)
        center = center_commutant(ring)
        extra = {"center_size": len(center), "mu": [run.el(f(ring.one)) for f in res.maps]}
    else:
        limit = DEEP_BUDGET if args.deep else DEFAULT_BUDGET
        budget = min(args.budget, limit) if args.budget else limit
        res = enumerate_additive_maps(ring, cls, budget, workers)
        extra = {"scope": "additive maps only"}
        if cls.name in ("jordan_n_derivation", "singular_jordan_derivation"):
            extra["also_derivation"] = [bool(maps.is_derivation(f)) for f in res.maps]
    body = res.to_json()
    run.timings["elapsed_ms"] = body.pop("elapsed_ms")
    body.update(extra)
    return EXIT_OK, body, []


def cmd_verify(run: _Run, args):
    ring = run.load_ring(args.ring)
    rep = run.timed("pipeline_ms", verify_theorem_pipeline, ring, args.e1, args.n, args.trials, args.seed)
    results = {
        "e1": run.el(rep.e1),
        "n": args.n,
        "stages": [s.to_json() for s in rep.stages],
        "hypotheses_met": rep.hypotheses_met,
        "conclusions_hold": rep.conclusions_hold,
    }
    return (EXIT_OK if rep.ok else EXIT_CHECK), results, rep.failed


def cmd_eval(run: _Run, args):
    ring = run.load_ring(args.ring)
    bindings = {}
    for item in args.map or []:
        name, sep, path = item.partition("=")
        if not sep or not name:
            raise SpecError(f"--map for eval takes NAME=PATH, got {item!r}")
        bindings[name] = run.load_map(f"map:{name}", path, ring)
    run.digest("identities", args.identities)
    lines = read_identity_file(Path(args.identities).read_text(encoding="utf-8"))
    parsed = []
    for lineno, text in lines:
        try:
            parsed.append((lineno, text, parse_identity(text)))
        except ParseError as exc:
            results = {"parse_error": {"line": lineno, "offset": exc.offset, "expected": list(exc.expected), "found": exc.found}}
            return EXIT_INPUT, results, [f"parse:line{lineno}"]
    verdicts, failed = [], []
    for lineno, text, ast in parsed:
        try:
            res = eval_identity(ring, ast, bindings, args.budget or 10**8)
        except UnboundSymbol as exc:
            raise SpecError(f"line {lineno}: {exc}") from None
        entry = {"line": lineno, "identity": text, "holds": res.ok}
        if not res.ok:
            entry["counterexample"] = {k: run.el(v) for k, v in res.counterexample.items()}
            failed.append(f"line{lineno}")
        verdicts.append(entry)
    return (EXIT_OK if not failed else EXIT_CHECK), {"identities": verdicts}, failed


COMMANDS = {
    "analyze": cmd_analyze,
    "check-map": cmd_check_map,
    "decompose": cmd_decompose,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "eval": cmd_eval,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jordanlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"jordanlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ring_required=True):
        p.add_argument("--ring", required=ring_required, help="ring spec JSON file")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("analyze", help="hypotheses relative to each nontrivial idempotent")
    common(p)
    p.add_argument("--e1", help="restrict to one idempotent (index or label)")

    p = sub.add_parser("check-map", help="test a map against a class predicate")
    common(p, ring_required=False)
    p.add_argument("--map", required=True)
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--delta")
    p.add_argument("--e1")
    p.add_argument("--budget", type=int)

    p = sub.add_parser("decompose", help="extract mu from a (generalized) Jordan n-centralizer/derivation")
    common(p, ring_required=False)
    p.add_argument("--map", required=True)
    p.add_argument("--delta")
    p.add_argument("--n", type=int, default=2)

    p = sub.add_parser("enumerate", help="count the maps in a class")
    common(p)
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--budget", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--deep", action="store_true", help=f"allow searches up to {DEEP_BUDGET} assignments")
    p.add_argument("--e1")

    p = sub.add_parser("verify", help="run the full structure-theorem pipeline")
    common(p)
    p.add_argument("--e1")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("eval", help="evaluate identities from a file")
    common(p)
    p.add_argument("--identities", required=True, help="one identity per line, '#' comments")
    p.add_argument("--map", action="append", metavar="NAME=PATH", help="bind a map symbol")
    p.add_argument("--budget", type=int)
    return parser


def _normalized_args(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "command")}


def run_command(argv: list[str]) -> tuple[int, dict]:
    parser = build_parser()
    args = parser.parse_args(argv)
    run = _Run(args.command, _normalized_args(args))
    try:
        code, results, failed = COMMANDS[args.command](run, args)
    except (SpecError, ValueError) as exc:
        code, results, failed = EXIT_INPUT, {"error": str(exc)}, ["input"]
    except BudgetExceeded as exc:
        code, results, failed = EXIT_BUDGET, {"error": str(exc), "required": exc.required, "budget": exc.budget}, ["budget"]
    except PreconditionError as exc:
        code, results, failed = EXIT_CHECK, {"error": str(exc)}, [exc.predicate]
    except UnsupportedOperation as exc:
        code, results, failed = EXIT_CHECK, {"error": str(exc)}, ["unsupported"]
    except JordanLabError as exc:
        code, results, failed = EXIT_INTERNAL, {"error": str(exc)}, ["internal"]
    return code, run.report(code, results, failed)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        code, report = run_command(argv)
    except SystemExit:
        raise
    except Exception as exc:  # noqa: BLE001 - the exit code contract needs a catch-all
        code = EXIT_INTERNAL
        report = {"schema": SCHEMA, "command": argv[0] if argv else None, "exit_code": code,
                  "results": {"error": f"{type(exc).__name__}: {exc}"}, "failed": ["internal"], "timings": {}}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    dest = _out_path(argv)
    if dest:
        Path(dest).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


def _out_path(argv):
    for i, a in enumerate(argv):
        if a == "--out" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--out="):
            return a.split("=", 1)[1]
    return None


if __name__ == "__main__":
    sys.exit(main())
