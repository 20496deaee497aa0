"""Command-line front end: every analysis as a subcommand.

Each subcommand selects a problem (``sat N M``, ``composite WIDTH``,
``connectivity V``, or ``generic PATH`` with a JSON descriptor), runs one
analysis, and writes a deterministic report. Exit codes: 0 success, 1
validation error, 2 budget exhausted, 3 a checked property failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .budget import Budget, BudgetExceededError
from .engine import internal_independence, irreducibility_report, is_complete, \
    simple_independence, strong_independence, verify_galois
from .problems import composite_problem, connectivity_problem, generic_problem, \
    sat_problem
from .tracer import ProgramFaultError, built_in_programs, kernel, trace_records
from .wizardry import classify, cover

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2
EXIT_VIOLATION = 3

_PROBLEM_USAGE = "sat N M | composite WIDTH | connectivity V | generic PATH"


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("problem", choices=["sat", "composite", "connectivity", "generic"],
                    help=_PROBLEM_USAGE)
    sp.add_argument("args", nargs="*", help="problem arguments")
    sp.add_argument("--budget-strings", type=int, default=None, metavar="N",
                    help="max candidate strings per search")
    sp.add_argument("--budget-seconds", type=float, default=None, metavar="S",
                    help="max wall-clock seconds per search")
    sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
    sp.add_argument("--seed", type=int, default=0, metavar="K",
                    help="seed for sampled checks")
    sp.add_argument("--out", default=None, metavar="PATH",
                    help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logogram",
        description="Certificate-structure analysis of finite decision problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("logogram", help="reduced logogram of the target set")
    _add_common(sp)
    sp.add_argument("--regions", action="store_true",
                    help="also emit each region's reduced logogram")

    for name, help_text in [
        ("wizards", "classify logogram strings as witnesses or wizards"),
        ("independence", "internal, simple, and strong independence checks"),
        ("irreducible", "irreducibility of the reduced logogram, with removal witnesses"),
        ("galois", "sampled checks of the expansion/logogram closure laws"),
        ("kernel", "kernels of the built-in traced solvers, compared"),
        ("cover", "cover table: chart sizes and containing-region counts"),
    ]:
        sp = sub.add_parser(name, help=help_text)
        _add_common(sp)
        if name == "galois":
            sp.add_argument("--samples", type=int, default=1000, metavar="N")
        if name == "kernel":
            sp.add_argument("--dump-traces", default=None, metavar="PATH",
                            help="write per-input probe traces as JSON lines")

    return parser


def _resolve_problem(kind: str, args: list[str]):
    def ints(count: int) -> list[int]:
        if len(args) != count or not all(a.lstrip("-").isdigit() for a in args):
            raise ValueError(f"{kind} expects {count} integer argument(s), got {args!r}")
        return [int(a) for a in args]

    if kind == "sat":
        n, m = ints(2)
        return sat_problem(n, m)
    if kind == "composite":
        return composite_problem(ints(1)[0])
    if kind == "connectivity":
        return connectivity_problem(ints(1)[0])
    if len(args) != 1:
        raise ValueError("generic expects one descriptor path")
    with open(args[0], encoding="utf-8") as fh:
        return generic_problem(json.load(fh))


def _antichain_doc(chain, problem, set_label: str) -> dict:
    return {
        "slice": problem.slice.descriptor(),
        "set_label": set_label,
        "strings": chain.texts(problem.slice.length),
        "count": len(chain),
    }


def cmd_logogram(ns, problem, budget):
    meter = budget.start(f"logogram: {problem.label}")
    log = problem.logogram(meter=meter)
    doc = _antichain_doc(log, problem, f"target:{problem.label}")
    rows = [("string",)] + [(t,) for t in doc["strings"]]
    if ns.regions:
        doc["regions"] = [
            _antichain_doc(problem.region_logogram(i, meter=meter), problem,
                           f"region:{i}:{problem.solution_text(problem.solutions[i])}")
            for i in range(problem.alpha)]
    return doc, rows, False


def cmd_wizards(ns, problem, budget):
    report = classify(problem, budget)
    doc = report.to_json_dict()
    rows = [("string", "kind", "regions")]
    for e in report.entries:
        rows.append((e.string.render(problem.slice.length),
                     "wizard" if e.is_wizard else "witness",
                     " ".join(map(str, e.witness_regions))))
    return doc, rows, False


def cmd_independence(ns, problem, budget):
    # three metered checks share the subcommand's wall-clock allowance
    share = Budget(budget.max_strings, budget.max_seconds / 3)
    reports = [
        internal_independence(problem.slice, share),
        simple_independence(problem, share),
        strong_independence(problem, share),
    ]
    doc = {"problem": problem.label}
    for rep in reports:
        doc[rep.kind] = rep.to_json_dict()
    rows = [("check", "verdict", "strings_checked", "budget_exhausted")]
    rows += [(rep.kind, "pass" if rep.passed else "fail",
              rep.strings_checked, rep.budget_exhausted) for rep in reports]
    return doc, rows, not all(rep.passed for rep in reports)


def cmd_irreducible(ns, problem, budget):
    log = problem.logogram(budget)
    report = irreducibility_report(log.elements, problem, budget)
    L = problem.slice.length
    doc = {
        "problem": problem.label,
        "logogram_size": len(log),
        "irreducible": report.irreducible,
        "removable": [s.render(L) for s in report.removable],
        "removal_witnesses": report.witness_texts(L),
    }
    rows = [("string", "removal_witness")]
    rows += sorted(doc["removal_witnesses"].items())
    rows += [(s, "") for s in doc["removable"]]
    return doc, rows, not report.irreducible


def cmd_galois(ns, problem, budget):
    report = verify_galois(problem.slice, sample_count=ns.samples,
                           seed=ns.seed, budget=budget)
    doc = report.to_json_dict()
    rows = [("law", "samples", "verdict")]
    rows += [(c["eq"], c["samples"], c["verdict"]) for c in doc["checks"]]
    return doc, rows, not report.passed


def cmd_kernel(ns, problem, budget):
    log = problem.logogram(budget)
    L = problem.slice.length
    programs = built_in_programs(problem)
    # per-program sweeps and the final irreducibility check split the clock
    share = Budget(budget.max_strings, budget.max_seconds / (len(programs) + 1))
    entries = []
    fault = None
    kernels = {}
    for prog in programs:
        try:
            k = kernel(prog, problem, share)
        except ProgramFaultError as err:
            fault = str(err)
            break
        kernels[prog.name] = k
        entries.append({
            "name": prog.name,
            "kernel": k.texts(L),
            "size": len(k),
            "complete": is_complete(k.elements, problem, share),
            "matches_logogram": k.elements == log.elements,
        })
    if ns.dump_traces and fault is None:
        with open(ns.dump_traces, "w", encoding="utf-8") as fh:
            for prog in programs:
                for record in trace_records(prog, problem, budget):
                    fh.write(json.dumps({"program": prog.name, **record},
                                        sort_keys=True) + "\n")
    all_equal = len({tuple(k.elements) for k in kernels.values()}) <= 1
    doc = {
        "problem": problem.label,
        "logogram_size": len(log),
        "logogram_irreducible": irreducibility_report(log.elements, problem, share).irreducible,
        "programs": entries,
        "all_equal": all_equal,
    }
    if fault:
        doc["fault"] = fault
    rows = [("program", "kernel_size", "complete", "matches_logogram")]
    rows += [(e["name"], e["size"], e["complete"], e["matches_logogram"])
             for e in entries]
    violation = bool(fault) or not all_equal or not all(
        e["complete"] and e["matches_logogram"] for e in entries)
    return doc, rows, violation


def cmd_cover(ns, problem, budget):
    report = cover(problem, budget)
    doc = report.to_json_dict()
    rows = [("string", "expansion_size", "containing_regions")] + report.rows()
    return doc, rows, False


HANDLERS = {
    "logogram": cmd_logogram,
    "wizards": cmd_wizards,
    "independence": cmd_independence,
    "irreducible": cmd_irreducible,
    "galois": cmd_galois,
    "kernel": cmd_kernel,
    "cover": cmd_cover,
}


def _render_text(doc: dict, indent: str = "") -> str:
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                cells = " ".join(f"{k}={v}" for k, v in item.items())
                lines.append(f"{indent}  - {cells}")
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: " + " ".join(map(str, value)))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def _emit(doc: dict, rows: list[tuple], ns) -> None:
    if ns.format == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    elif ns.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = _render_text(doc) + "\n"
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors; remap
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        problem = _resolve_problem(ns.problem, ns.args)
        defaults = Budget.default()
        budget = Budget(
            max_strings=defaults.max_strings if ns.budget_strings is None
            else ns.budget_strings,
            max_seconds=defaults.max_seconds if ns.budget_seconds is None
            else ns.budget_seconds)
        doc, rows, violation = HANDLERS[ns.command](ns, problem, budget)
    except BudgetExceededError as err:
        print(f"budget exhausted: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    _emit(doc, rows, ns)
    return EXIT_VIOLATION if violation else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
