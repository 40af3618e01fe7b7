"""Command line interface: analysis, verification, sweeps, serving, terminal play.

Exit codes: 0 on success, 1 when a computation disagrees with its reference
(verify failures, sweep mismatches), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import rewrite, service, solver, sums
from .errors import KnotGameError
from .tangle import (
    RationalPseudodiagram,
    format_position,
    parse_diagram,
    parse_position,
)

# Reference winners for the twelve brute-force evaluations bundled with the
# engine: twist list, winner when the Unknotter (Ursula) starts, winner when
# the Knotter (Lear) starts.
VERIFY_CASES = [
    ([3, 1, 3], "Ursula", "Lear"),
    ([0, 1, 3, 1, 3], "Lear", "Ursula"),
    ([2, 1, 2, 2], "Ursula", "Lear"),
    ([0, 1, 2, 1, 2, 2], "Lear", "Ursula"),
    ([2, 2, 1, 2], "Ursula", "Lear"),
    ([0, 1, 2, 2, 1, 2], "Lear", "Ursula"),
    ([2, 1, 1, 2], "Lear", "Ursula"),
    ([0, 1, 2, 1, 1, 2], "Ursula", "Lear"),
    ([2, 2, 1, 2, 2], "Ursula", "Lear"),
    ([0, 1, 2, 2, 1, 2, 2], "Lear", "Ursula"),
    ([2, 2], "Lear", "Ursula"),
    ([0, 1, 2, 2], "Ursula", "Lear"),
]

_NAME_OF = {solver.Player.UNKNOTTER: "Ursula", solver.Player.KNOTTER: "Lear"}


def _emit(args: argparse.Namespace, payload: dict[str, Any], human: str) -> None:
    if getattr(args, "format", "human") == "json":
        print(json.dumps(payload))
    else:
        print(human)


def _cmd_fraction(args: argparse.Namespace) -> int:
    diagram = parse_diagram(args.diagram)
    frac = diagram.fraction()
    closure = "knot" if frac.p % 2 else "two-component link"
    extra = ""
    if diagram.fully_resolved and frac.p % 2:
        extra = ", unknot" if diagram.is_unknot() else ", knotted"
    payload = {
        "diagram": str(diagram),
        "p": frac.p,
        "q": frac.q,
        "closure": closure,
    }
    _emit(args, payload, f"p/q = {frac.p}/{frac.q} ({closure}{extra})")
    return 0


def _cmd_outcome(args: argparse.Namespace) -> int:
    position = parse_position(args.position)
    result = solver.outcome(position)
    u_first = solver.wins_moving_first(position, solver.Player.UNKNOTTER)
    k_first = solver.wins_moving_first(position, solver.Player.KNOTTER)
    payload = {
        "position": format_position(position),
        "outcome": result.value,
        "unknotter_first_winner": u_first.value,
        "knotter_first_winner": k_first.value,
    }
    _emit(
        args,
        payload,
        f"{result.value} (unknotter first: {u_first.value} wins, "
        f"knotter first: {k_first.value} wins)",
    )
    return 0


def _cmd_xy(args: argparse.Namespace) -> int:
    position = parse_position(args.position)
    pair = solver.normalized_outcome(position)
    value = solver.xy(position)
    payload = {
        "position": format_position(position),
        "x": value.x,
        "y": value.y,
        "normalized": [pair.even_outcome.value, pair.odd_outcome.value],
    }
    _emit(
        args,
        payload,
        f"X={value.x} Y={value.y} "
        f"normalized=({pair.even_outcome.value},{pair.odd_outcome.value})",
    )
    return 0


_CLASS_LABEL = {
    rewrite.ShadowKind.ODD_EVEN_REDUCIBLE: "odd-even-reducible",
    rewrite.ShadowKind.IRREDUCIBLE_21: "irreducible-(2,1)",
}


def _cmd_classify(args: argparse.Namespace) -> int:
    diagram = parse_diagram(args.diagram)
    result = rewrite.classify_shadow(diagram)
    trace = rewrite.format_trace(result.witness)
    payload = {"diagram": str(diagram), "kind": result.kind.value, "trace": trace}
    lines = [_CLASS_LABEL[result.kind]] + [f"  {line}" for line in trace]
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    diagram = parse_diagram(args.diagram)
    trace = rewrite.reduce_to_unknot(diagram)
    lines = rewrite.format_trace(trace)
    payload = {"diagram": str(diagram), "trace": lines}
    _emit(args, payload, "\n".join(lines) if lines else "already trivial")
    return 0


def _cmd_sum_outcome(args: argparse.Namespace) -> int:
    position = parse_position(args.position)
    closed = sums.outcome_closed_form(position)
    payload = {
        "position": format_position(position),
        "outcome": closed.outcome.value,
        "rationale": closed.rationale.value,
    }
    _emit(args, payload, f"{closed.outcome.value} ({closed.rationale.value})")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    disagreements = 0
    count = 0
    for report in sums.sweep(
        args.max_crossings, max_regions=args.max_regions, max_entry=args.max_entry
    ):
        count += 1
        if not report.agree:
            disagreements += 1
        print(
            f"{format_position(report.position)}\t"
            f"{report.closed_form.outcome.value}\t"
            f"{report.solver_outcome.value}\t"
            f"{'ok' if report.agree else 'MISMATCH'}"
        )
    print(f"# {count} positions, {disagreements} disagreements", file=sys.stderr)
    return 1 if disagreements else 0


def _cmd_verify(args: argparse.Namespace) -> int:
    failures = 0
    for twists, ursula_first, lear_first in VERIFY_CASES:
        diagram = RationalPseudodiagram.shadow(twists)
        got_u = _NAME_OF[solver.wins_moving_first(diagram, solver.Player.UNKNOTTER)]
        got_k = _NAME_OF[solver.wins_moving_first(diagram, solver.Player.KNOTTER)]
        ok = (got_u, got_k) == (ursula_first, lear_first)
        if not ok:
            failures += 1
        label = "PASS" if ok else "FAIL"
        print(
            f"{label} {twists}: Ursula first -> {got_u} (expected {ursula_first}), "
            f"Lear first -> {got_k} (expected {lear_first})"
        )
    return 1 if failures else 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    app = service.create_app(
        crossing_cap=args.crossing_cap,
        event_log=args.event_log,
        ui_dir=args.ui_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_play(args: argparse.Namespace) -> int:
    store = service.GameStore(crossing_cap=args.crossing_cap)
    session = store.create(
        args.position,
        engine_role=args.engine_role,
        first_mover="engine" if args.engine_first else "human",
    )
    human_side = session.engine_plays.opponent.value
    print(f"you play the {human_side}; engine plays the {session.engine_plays.value}")
    while session.status is service.GameStatus.IN_PROGRESS:
        print(f"\nposition: {format_position(session.position)}")
        if session.to_move == "engine":
            move, session = store.engine_move(session.id)
            print(
                f"engine resolves component {move.component} region {move.region} "
                f"with sign {'+' if move.sign > 0 else '-'}"
            )
            continue
        try:
            line = input("your move (component region +|-): ").strip()
        except EOFError:
            print("\nno input, stopping")
            return 0
        if line in ("q", "quit", "exit"):
            return 0
        parts = line.split()
        if len(parts) != 3 or parts[2] not in ("+", "-", "+1", "-1"):
            print("expected: <component> <region> <+|->")
            continue
        try:
            move = (int(parts[0]), int(parts[1]), 1 if parts[2].startswith("+") else -1)
            session = store.submit_human_move(session.id, move)
        except (ValueError, KnotGameError) as exc:
            print(f"rejected: {exc}")
    print(f"\nfinal position: {format_position(session.position)}")
    print(f"result: {session.status.value}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotgame",
        description="Solve, classify, and play the knotting-unknotting game on rational pseudodiagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["human", "json"], default="human")

    p = sub.add_parser("fraction", help="continued-fraction value of a diagram")
    p.add_argument("diagram")
    add_format(p)
    p.set_defaults(func=_cmd_fraction)

    p = sub.add_parser("outcome", help="perfect-play outcome class of a position")
    p.add_argument("position")
    add_format(p)
    p.set_defaults(func=_cmd_outcome)

    p = sub.add_parser("xy", help="normalized outcome and X/Y values")
    p.add_argument("position")
    add_format(p)
    p.set_defaults(func=_cmd_xy)

    p = sub.add_parser("classify", help="classify a knot shadow with a reduction trace")
    p.add_argument("diagram")
    add_format(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("reduce", help="reduce a knot shadow to the trivial diagram")
    p.add_argument("diagram")
    add_format(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("sum-outcome", help="closed-form outcome of a sum of shadows")
    p.add_argument("position")
    add_format(p)
    p.set_defaults(func=_cmd_sum_outcome)

    p = sub.add_parser("sweep", help="closed form vs. solver over bounded shadow sums (TSV)")
    p.add_argument("--max-crossings", type=int, required=True)
    p.add_argument("--max-regions", type=int, default=4)
    p.add_argument("--max-entry", type=int, default=4)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="re-run the twelve bundled reference evaluations")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--crossing-cap", type=int, default=service.DEFAULT_CROSSING_CAP)
    p.add_argument("--event-log", default=None)
    p.add_argument("--ui-dir", default=None)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("play", help="play a game in the terminal")
    p.add_argument("position")
    p.add_argument("--engine-role", choices=["unknotter", "knotter"], default="knotter")
    p.add_argument("--engine-first", action="store_true")
    p.add_argument("--crossing-cap", type=int, default=service.DEFAULT_CROSSING_CAP)
    p.set_defaults(func=_cmd_play)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KnotGameError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
