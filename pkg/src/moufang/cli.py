"""
Command-line front end.

    moufang algebra check FILE [--malcev] [--jacobi] [--all] [--json OUT]
    moufang algebra envelope FILE [--json OUT]
    moufang octonion verify [--gmc] [--relations] [--reductivity] [--yamaguti-lie] [--dimension] [--all]
    moufang octonion export [-o OUT]
    moufang loop check (FILE | --builtin NAME) [--json OUT]

Exit status: 0 every selected check passed, 1 some check failed, 2 bad input
or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

from . import __version__
from .algebra import AntiCommAlgebra, IdentityReport, check_jacobi, check_malcev, load_algebra
from .envelope import (
    OCTONION_MODEL,
    abstract_envelope,
    check_jacobi_envelope,
    envelope_dimension,
    verify_gmc,
    verify_reductivity,
    verify_relations_1_to_3,
    verify_yamagutian_constraints,
    verify_yamagutian_lie,
)
from .errors import InputError, PreconditionError
from .linalg import format_rational
from .loops import BUILTIN_LOOPS, CayleyTable, analyze, load_loop
from .octonion import check_alternative_moufang, tangent_structure_constants

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


@dataclass
class CheckResult:
    name: str
    status: str
    witness: Optional[dict] = None
    duration: float = 0.0
    info: dict = field(default_factory=dict)

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.info:
            out["info"] = _jsonable(self.info)
        if timings:
            out["duration"] = round(self.duration, 6)
        return out


@dataclass
class RunReport:
    command: str
    checks: List[CheckResult] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    tool_version: str = __version__

    @property
    def overall(self) -> str:
        return "pass" if all(c.status == "pass" for c in self.checks) else "fail"

    @property
    def exit_code(self) -> int:
        return EXIT_PASS if self.overall == "pass" else EXIT_FAIL

    def run(self, name: str, fn: Callable[[], IdentityReport], **info) -> IdentityReport:
        t0 = time.perf_counter()
        rep = fn()
        self.add(name, rep, time.perf_counter() - t0, **info)
        return rep

    def add(self, name: str, rep: IdentityReport, duration: float = 0.0, **info):
        witness = None
        if not rep.holds:
            witness = {"args": _jsonable(rep.witness), "defect": _jsonable(rep.defect)}
            if rep.note:
                witness["note"] = rep.note
        info = {"cases": rep.cases, **info}
        self.checks.append(CheckResult(name, "pass" if rep.holds else "fail", witness, duration, info))

    def to_json(self, timings: bool = False) -> dict:
        out = {"tool_version": self.tool_version, "command": self.command}
        out.update(_jsonable(self.extra))
        out["checks"] = [c.to_json(timings) for c in self.checks]
        out["overall"] = self.overall
        return out

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=False) + "\n"

    def human(self) -> str:
        lines = [f"moufang {self.tool_version}: {self.command}"]
        for key, value in self.extra.items():
            lines.append(f"  {key}: {json.dumps(_jsonable(value))}")
        for c in self.checks:
            line = f"  [{c.status.upper()}] {c.name} ({c.info.get('cases', 0)} cases, {c.duration:.3f}s)"
            if c.witness is not None:
                line += f"\n         witness: {json.dumps(c.witness)}"
            lines.append(line)
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines)


def _emit(report: RunReport, args) -> int:
    print(report.human())
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(report.dumps(timings=args.timings))
    return report.exit_code


# -- commands ----------------------------------------------------------------

def cmd_algebra_check(args) -> int:
    A = load_algebra(args.file)
    run_all = args.all or not (args.malcev or args.jacobi)
    report = RunReport(f"algebra check {args.file}", extra={"dim": A.dim})
    if run_all or args.jacobi:
        report.run("jacobi", lambda: check_jacobi(A))
    if run_all or args.malcev:
        report.run("malcev", lambda: check_malcev(A))
    return _emit(report, args)


def cmd_envelope(args) -> int:
    A = load_algebra(args.file)
    report = RunReport(f"algebra envelope {args.file}")
    malcev = report.run("malcev", lambda: check_malcev(A))
    if not malcev.holds:
        return _emit(report, args)
    E = abstract_envelope(A)
    report.extra.update(
        ambient_dim=E.ambient_dim,
        quotient_dim=E.quotient_dim,
        bound=E.bound,
        relation_ideal_dim=E.relation_ideal.dim,
        basis=list(E.names),
    )
    report.add(
        "dimension_bound",
        IdentityReport.ok(1) if E.quotient_dim <= E.bound
        else IdentityReport(False, ("quotient_dim", "bound"), (E.quotient_dim, E.bound), 1),
    )
    report.run("jacobi_envelope", lambda: check_jacobi_envelope(E))
    return _emit(report, args)


OCTONION_SUITES = ("moufang", "malcev", "gmc", "relations", "reductivity", "yamaguti_lie", "dimension")


def cmd_octonion_verify(args) -> int:
    selected = [s for s in OCTONION_SUITES if getattr(args, s)]
    if args.all or not selected:
        selected = list(OCTONION_SUITES)
    model = OCTONION_MODEL
    report = RunReport("octonion verify " + " ".join(f"--{s.replace('_', '-')}" for s in selected))
    if "moufang" in selected:
        report.run("moufang_identity", check_alternative_moufang)
    if "malcev" in selected:
        A = model.algebra
        report.run("tangent_malcev", lambda: check_malcev(A))
        jac = check_jacobi(A)
        # the tangent algebra is expected NOT to be Lie
        report.add(
            "tangent_not_lie",
            IdentityReport.ok(jac.cases, note=f"jacobi witness {jac.witness}") if not jac.holds
            else IdentityReport(False, ("jacobi",), ("holds",), jac.cases),
            jacobi_witness=jac.witness,
        )
    if "gmc" in selected:
        report.run("generalized_maurer_cartan", lambda: verify_gmc(model))
    if "relations" in selected:
        report.run("relations_LL_RR", lambda: verify_relations_1_to_3(model))
        report.run("yamagutian_antisymmetry_and_cyclic", lambda: verify_yamagutian_constraints(model))
    if "reductivity" in selected:
        report.run("reductivity", lambda: verify_reductivity(model))
    if "yamaguti_lie" in selected:
        report.run("yamagutian_lie", lambda: verify_yamagutian_lie(model))
    if "dimension" in selected:
        t0 = time.perf_counter()
        dim, bound = envelope_dimension(model)
        report.extra.update(rank=dim, bound=bound)
        rep = IdentityReport.ok(1) if dim <= bound else IdentityReport(False, ("rank", "bound"), (dim, bound), 1)
        report.add("dimension_bound", rep, time.perf_counter() - t0, rank=dim, bound=bound)
    return _emit(report, args)


def cmd_octonion_export(args) -> int:
    text = tangent_structure_constants().dumps() + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_loop_check(args) -> int:
    if args.builtin:
        t = BUILTIN_LOOPS[args.builtin]()
        source = f"--builtin {args.builtin}"
    elif args.file:
        t = load_loop(args.file)
        source = args.file
    else:
        raise InputError("give a loop JSON file or --builtin NAME")
    return _emit(loop_report(t, f"loop check {source}"), args)


def loop_report(t: CayleyTable, command: str) -> RunReport:
    r = analyze(t)
    report = RunReport(command, extra={"order": t.order})
    report.add("latin_square", r.is_quasigroup)
    e = r.identity
    report.add("identity", IdentityReport.ok(1) if e is not None else IdentityReport(False, ("identity",), (None,), t.order))
    if e is not None:
        if r.inverses is not None:
            report.add("inverses", IdentityReport.ok(t.order))
        else:
            report.add("inverses", IdentityReport(False, ("inverses",), (None,), t.order))
    report.add("moufang", r.is_moufang)
    if r.translation_inverses is not None:
        report.add("translation_inverses", r.translation_inverses)
    # associativity is informational only
    report.extra["loop"] = {
        "identity": t.names[e] if e is not None else None,
        "inverses": [t.names[i] for i in r.inverses] if r.inverses is not None else None,
        "is_associative": r.is_associative.holds,
        "associativity_witness": (
            None if r.is_associative.holds
            else {"args": [t.names[i] for i in r.is_associative.witness],
                  "lhs": t.names[r.is_associative.defect[0]], "rhs": t.names[r.is_associative.defect[1]]}
        ),
    }
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moufang", description="Exact checks for Moufang loops, Mal'tsev algebras and their envelopes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="group", required=True)

    def outputs(sp):
        sp.add_argument("--json", metavar="OUT", help="write the machine-readable report here")
        sp.add_argument("--timings", action="store_true", help="include durations in the JSON report")

    alg = sub.add_parser("algebra", help="anticommutative algebras from JSON").add_subparsers(dest="cmd", required=True)
    sp = alg.add_parser("check", help="Jacobi / Mal'tsev identity checks")
    sp.add_argument("file")
    sp.add_argument("--malcev", action="store_true")
    sp.add_argument("--jacobi", action="store_true")
    sp.add_argument("--all", action="store_true")
    outputs(sp)
    sp.set_defaults(func=cmd_algebra_check)
    sp = alg.add_parser("envelope", help="abstract envelope of a Mal'tsev algebra")
    sp.add_argument("file")
    outputs(sp)
    sp.set_defaults(func=cmd_envelope)

    octo = sub.add_parser("octonion", help="built-in octonion model").add_subparsers(dest="cmd", required=True)
    sp = octo.add_parser("verify", help="translation-operator relation suite")
    for s in OCTONION_SUITES:
        sp.add_argument(f"--{s.replace('_', '-')}", dest=s, action="store_true")
    sp.add_argument("--all", action="store_true")
    outputs(sp)
    sp.set_defaults(func=cmd_octonion_verify)
    sp = octo.add_parser("export", help="tangent algebra in algebra JSON format")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_octonion_export)

    loop = sub.add_parser("loop", help="finite loops from Cayley tables").add_subparsers(dest="cmd", required=True)
    sp = loop.add_parser("check", help="quasigroup / loop / Moufang checks")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--builtin", choices=sorted(BUILTIN_LOOPS))
    outputs(sp)
    sp.set_defaults(func=cmd_loop_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionError, OSError) as exc:
        print(f"moufang: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
