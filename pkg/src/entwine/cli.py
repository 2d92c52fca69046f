"""Command-line interface.

Subcommands: info, verify, decompose, peek, ask, evolve, simulate, serve.
Output is human-readable by default; ``--format structured`` switches to
JSON documents.  Errors land on stderr as one JSON object with a stable
code; exit status is 0 on success, 1 for validation-class failures, 2
for internal ones.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import (
    jacobi_residual,
    normalize_algebra_id,
    parse_su,
    su_fundamental,
    verify_generator_set,
)
from .errors import BadParameter, EntwineError
from .measure import joint_peek, peek, simulate_sequence
from .reporting import render_distribution_chart, write_simulation_report
from .reps import decompose_product
from .scenario import (
    apply_ask,
    apply_evolve,
    apply_reset,
    builtin_names,
    get_scenario,
    history_fingerprint,
    new_session,
    resolve_question,
    session_from_snapshot,
)
from .serialize import (
    decomposition_to_doc,
    distribution_to_doc,
    joint_distribution_to_doc,
    scenario_info_doc,
    state_summary_doc,
)


def _json_default(value):
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"not JSON serializable: {type(value)}")


def _emit(doc: dict, args, human) -> None:
    if args.format == "structured":
        print(json.dumps(doc, indent=2, default=_json_default))
    else:
        human(doc)


def _bar(probability: float, width: int = 24) -> str:
    filled = round(probability * width)
    return "#" * filled + "." * (width - filled)


def _fmt_value(value: float) -> str:
    # display rounding only; structured output keeps the raw floats
    return f"{round(value, 6) + 0.0:+.4g}"


def _print_distribution(doc: dict) -> None:
    for outcome in doc["outcomes"]:
        label = outcome.get("eigenvalue")
        if label is None:
            label = ", ".join(_fmt_value(v) for v in outcome["values"])
        else:
            label = _fmt_value(label)
        p = outcome["probability"]
        print(f"  {label:>16}  {_bar(p)}  {p:8.4%}")


def _scenario_from_args(args):
    if getattr(args, "file", None):
        doc = json.loads(Path(args.file).read_text())
        return get_scenario(doc)
    if getattr(args, "scenario", None):
        return get_scenario(args.scenario)
    raise BadParameter("pass --scenario NAME or --file scenario.json")


def _load_session(args):
    """Session from the snapshot file when it exists, else a fresh one."""
    path = Path(args.snapshot) if args.snapshot else None
    if path and path.exists():
        return session_from_snapshot(json.loads(path.read_text())), path
    scenario = _scenario_from_args(args)
    return new_session(scenario, seed=args.seed), path


def _save_session(session, path) -> None:
    if path:
        path.write_text(json.dumps(session.snapshot(), indent=2,
                                   default=_json_default))


def _question_ref(args):
    if getattr(args, "coefficients", None):
        return [float(x) for x in args.coefficients.split(",")]
    if getattr(args, "question", None):
        refs = args.question
        return refs if len(refs) > 1 else refs[0]
    raise BadParameter("pass --question NAME (repeatable) or --coefficients c1,c2,...")


# ---------------------------------------------------------------------------
# subcommands

def cmd_info(args) -> int:
    scenario = _scenario_from_args(args)
    doc = scenario_info_doc(scenario)

    def human(d):
        print(f"{d['name']}: {d['algebra']} ({d['family']}), rank {d['rank']}")
        print(f"  generators d={d['d']}, representation d_r={d['d_r']}, "
              f"trace index T={d['trace_index']:.6g}")
        print(f"  quadratic Casimir scalar C2={d['c2']:.10g} "
              f"({'irreducible' if d['c2_is_scalar'] else 'reducible'})")
        print("  weights:")
        for w in d["weights"]:
            print("    (" + ", ".join(f"{x:+.6f}" for x in w) + ")")
        print("  questions: " + ", ".join(d["questions"]))
        for warning in d["warnings"]:
            print(f"  warning: {warning}")

    _emit(doc, args, human)
    return 0


def cmd_verify(args) -> int:
    if getattr(args, "algebra", None):
        rep = su_fundamental(parse_su(normalize_algebra_id(args.algebra)))
        label = normalize_algebra_id(args.algebra) + " fundamental"
    else:
        scenario = _scenario_from_args(args)
        rep = scenario.rep
        label = scenario.name
    report = verify_generator_set(rep)
    jacobi = float("nan")
    if not rep.is_trivial():
        jacobi = jacobi_residual(rep.constants)
    doc = {
        "subject": label,
        "generator_checks": report.as_dict(),
        "jacobi_residual": jacobi,
        "jacobi_ok": bool(jacobi <= 1e-12),
        "passed": bool(report.passed and jacobi <= 1e-12),
    }

    def human(d):
        print(f"verify {d['subject']}")
        for name, check in d["generator_checks"]["checks"].items():
            flag = "ok " if check["ok"] else "FAIL"
            print(f"  [{flag}] {name:<14} residual {check['residual']:.3e} "
                  f"(tolerance {check['tolerance']:.0e})")
        flag = "ok " if d["jacobi_ok"] else "FAIL"
        print(f"  [{flag}] jacobi         residual {d['jacobi_residual']:.3e} "
              f"(tolerance 1e-12)")
        print("passed" if d["passed"] else "FAILED")

    _emit(doc, args, human)
    return 0 if doc["passed"] else 1


def cmd_decompose(args) -> int:
    result = decompose_product(args.algebra, args.tensor, args.max_dim)
    doc = decomposition_to_doc(result, with_isometries=args.with_isometries)
    doc["factors"] = list(args.tensor)

    def human(d):
        print(" (x) ".join(d["factors"]) + " = " + d["summary"].replace("+", "(+)"))
        for part in d["parts"]:
            print(f"  {part['name']:>8}  d_r={part['d_r']:<3} "
                  f"multiplicity {part['multiplicity']}  "
                  f"c2={part['c2']:.6g} c3={part['c3']:+.6g}")
        print(f"  residual {d['residual']:.3e}")

    _emit(doc, args, human)
    return 0


def cmd_peek(args) -> int:
    session, path = _load_session(args)
    ref = _question_ref(args)
    if isinstance(ref, list) and ref and isinstance(ref[0], str):
        questions = [resolve_question(session.scenario, r) for r in ref]
        dist = joint_peek(session.state, questions)
        doc = {"questions": ref, **joint_distribution_to_doc(dist)}
    else:
        q = resolve_question(session.scenario, ref)
        dist = peek(session.state, q)
        doc = {"question": ref, **distribution_to_doc(dist)}
    if args.plot:
        render_distribution_chart(dist, args.plot, title=str(ref))
        doc["figure"] = args.plot
    if path and not path.exists():
        _save_session(session, path)

    def human(d):
        print(f"peek {d.get('question') or d.get('questions')} "
              f"(session {session.id}, state untouched)")
        _print_distribution(d)
        if "figure" in d:
            print(f"  figure: {d['figure']}")

    _emit(doc, args, human)
    return 0


def cmd_ask(args) -> int:
    session, path = _load_session(args)
    ref = _question_ref(args)
    if isinstance(ref, list) and ref and isinstance(ref[0], str):
        raise BadParameter("ask commits to a single question; peek handles joint lists")
    q = resolve_question(session.scenario, ref)
    before = distribution_to_doc(peek(session.state, q))
    event = apply_ask(session, ref)
    _save_session(session, path)
    doc = {
        "outcome": {k: event[k] for k in ("eigenvalue", "outcome_index", "seq", "seed")},
        "distribution_before": before,
        "state_summary": state_summary_doc(session.state),
    }

    def human(d):
        print(f"answer: {d['outcome']['eigenvalue']:+.6g}  "
              f"(event {d['outcome']['seq']}, session {session.id})")
        _print_distribution(d["distribution_before"])

    _emit(doc, args, human)
    return 0


def cmd_evolve(args) -> int:
    session, path = _load_session(args)
    ref = _question_ref(args)
    event = apply_evolve(session, ref, args.theta)
    _save_session(session, path)
    doc = {
        "event": {k: event[k] for k in ("seq", "theta")},
        "state_summary": state_summary_doc(session.state),
    }

    def human(d):
        mags = ", ".join(f"{m:.4f}" for m in d["state_summary"]["magnitudes"])
        print(f"evolved by theta={d['event']['theta']:.6g}; magnitudes: {mags}")

    _emit(doc, args, human)
    return 0


def cmd_simulate(args) -> int:
    scenario = _scenario_from_args(args)
    names = [part.strip() for part in args.chain.split(",") if part.strip()]
    questions = [resolve_question(scenario, name) for name in names]
    seed = args.seed if args.seed is not None else 0
    table = simulate_sequence(scenario.initial_state, questions, args.trials, seed)
    doc = table.as_doc()
    if args.report_dir:
        doc["report"] = write_simulation_report(table, args.report_dir)

    def human(d):
        print(f"chain {' -> '.join(d['chain'])}, {d['trials']} trials, seed {d['seed']}")
        for entry in d["counts"]:
            values = ", ".join(_fmt_value(v) for v in entry["outcomes"])
            freq = entry["count"] / d["trials"]
            print(f"  ({values})  {entry['count']:>8}  {freq:8.4%}")
        if "report" in d:
            print(f"  report: {d['report']['csv']}, {d['report']['figure']}")

    _emit(doc, args, human)
    return 0


def cmd_history(args) -> int:
    session, _ = _load_session(args)
    doc = {"id": session.id, "seed": session.seed,
           "history": history_fingerprint(session.history),
           "full_history": session.history}

    def human(d):
        for event in d["full_history"]:
            print(f"  {event}")

    _emit(doc, args, human)
    return 0


def cmd_reset(args) -> int:
    session, path = _load_session(args)
    apply_reset(session)
    _save_session(session, path)
    doc = {"state_summary": state_summary_doc(session.state)}
    _emit(doc, args, lambda d: print("reset to initial state"))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        allow_origins=args.allow_origin or None,
        snapshot_dir=args.snapshot_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_scenarios(args) -> int:
    doc = {"scenarios": builtin_names()}
    _emit(doc, args, lambda d: print("\n".join(d["scenarios"])))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entwine",
        description="Entwined-question inference over Lie algebra representations.",
    )
    parser.add_argument("--version", action="version", version=f"entwine {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--scenario", help="built-in scenario name")
    common.add_argument("--file", help="scenario document (JSON file)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--snapshot", help="session snapshot file (created if missing)")

    p = sub.add_parser("info", parents=[common], help="algebra/representation metadata")
    p.set_defaults(handler=cmd_info)

    p = sub.add_parser("verify", parents=[common], help="generator and Jacobi checks")
    p.add_argument("--algebra", help="check the fundamental of this algebra, e.g. su3")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="split a tensor product")
    p.add_argument("--algebra", required=True)
    p.add_argument("--tensor", nargs="+", required=True, metavar="IRREP")
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--with-isometries", action="store_true")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("peek", parents=[common], help="answer distribution, no collapse")
    p.add_argument("--question", action="append", metavar="NAME")
    p.add_argument("--coefficients", help="raw unit-norm coefficients c1,c2,...")
    p.add_argument("--plot", help="write a probability bar chart to this file")
    p.set_defaults(handler=cmd_peek)

    p = sub.add_parser("ask", parents=[common], help="commit to a question")
    p.add_argument("--question", action="append", metavar="NAME")
    p.add_argument("--coefficients")
    p.set_defaults(handler=cmd_ask)

    p = sub.add_parser("evolve", parents=[common], help="rotate the state")
    p.add_argument("--question", action="append", metavar="NAME")
    p.add_argument("--coefficients")
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(handler=cmd_evolve)

    p = sub.add_parser("simulate", parents=[common], help="seeded measurement chains")
    p.add_argument("--chain", required=True, help="comma-separated question names")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--report-dir", help="write outcomes.csv and frequencies.png here")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("history", parents=[common], help="session event log")
    p.set_defaults(handler=cmd_history)

    p = sub.add_parser("reset", parents=[common], help="return session to initial state")
    p.set_defaults(handler=cmd_reset)

    p = sub.add_parser("scenarios", parents=[common], help="list built-in scenarios")
    p.set_defaults(handler=cmd_scenarios)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8710)
    p.add_argument("--allow-origin", action="append", metavar="ORIGIN")
    p.add_argument("--snapshot-dir", help="persist sessions here on shutdown")
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except EntwineError as exc:
        doc = {"code": exc.code, "message": exc.message}
        if exc.path:
            doc["path"] = exc.path
        print(json.dumps(doc), file=sys.stderr)
        return 2 if exc.code == "INTERNAL" else 1
    except Exception as exc:  # pragma: no cover - defensive
        print(json.dumps({"code": "INTERNAL", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
