"""Command-line interface: solve, verify, gen, campaign.

Exit codes: 0 success, 1 usage or input error, 2 solver stalled (the stall
certificate is printed). All outputs are byte-deterministic given inputs and
seeds; campaign reports carry no timestamps (a sidecar file holds
wall-clock metadata).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from .engine import SolveStatus, solve
from .generators import parse_genspec
from .graph import Graph, GraphFormatError, format_edge_list, parse_graph
from .verify import CampaignConfig, check_theorem, evaluate_hypotheses, run_campaign, theorem_by_id


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write_output(path: Optional[str], payload: str) -> None:
    if path is None:
        sys.stdout.write(payload)
    else:
        with open(path, "w") as fh:
            fh.write(payload)


def _load_graph(path: str) -> Graph:
    return parse_graph(_read_input(path))


def _format_potential(p) -> str:
    flat = (p.branch_flag, p.leaf_count, p.shape_rank, *p.measure)
    return ",".join(str(x) for x in flat)


def _format_edges(edges) -> str:
    return ",".join(f"{u}-{v}" for u, v in edges)


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        g = _load_graph(args.input)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not g.is_connected():
        print("error: input graph is disconnected", file=sys.stderr)
        return 1
    outcome = solve(
        g,
        oracle_fallback=args.oracle,
        oracle_cap=args.oracle_cap,
        move_cap=args.move_cap,
    )
    lines: list[str] = []
    if args.trace:
        for entry in outcome.trace:
            lines.append(
                f"{entry.rule_id} {_format_edges(entry.adds)} {_format_edges(entry.removes)} "
                f"{_format_potential(entry.before)} {_format_potential(entry.after)}"
            )
    if args.json:
        payload = {
            "status": outcome.status.value,
            "branch_count": outcome.branch_count,
            "moves_applied": list(outcome.moves_applied),
            "tree_parent_array": list(outcome.tree.parent),
            "certificate": outcome.certificate.to_json_dict() if outcome.certificate else None,
        }
        if args.trace:
            payload["trace"] = lines
        _write_output(args.out, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        body = "\n".join(lines) + "\n" if lines else ""
        body += outcome.tree.to_parent_text()
        body += f"branch_count {outcome.branch_count}\n"
        body += f"status {outcome.status.value}\n"
        if outcome.certificate is not None and outcome.status in (
            SolveStatus.STALLED,
            SolveStatus.CAP_EXHAUSTED,
        ):
            body += "certificate " + json.dumps(outcome.certificate.to_json_dict(), sort_keys=True) + "\n"
        _write_output(args.out, body)
    if outcome.status in (SolveStatus.STALLED, SolveStatus.CAP_EXHAUSTED):
        return 2
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        g = _load_graph(args.input)
        thm = theorem_by_id(args.theorem)
    except (OSError, GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report, conclusion = check_theorem(g, thm, oracle_cap=args.oracle_cap, move_cap=args.move_cap)
    payload = {
        "theorem": thm.ident,
        "hypothesis": report.to_json_dict(),
        "conclusion": conclusion,
    }
    _write_output(args.out, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        spec = parse_genspec(args.spec)
        if args.seed is not None and spec.strategy not in ("named", "line"):
            from dataclasses import replace

            spec = replace(spec, seed=args.seed)
        g = spec.build()
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write_output(args.out, format_edge_list(g))
    return 0


def cmd_campaign(args: argparse.Namespace) -> int:
    try:
        with open(args.config) as fh:
            data = json.load(fh)
        config = CampaignConfig.from_json_dict(data)
        if args.seed is not None:
            from dataclasses import replace

            config = replace(config, master_seed=args.seed)
        theorem_by_id(config.theorem)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = args.out or "campaign_report.json"
    started = time.time()
    report = run_campaign(config, out_path=out)
    with open(out + ".meta", "w") as fh:
        json.dump({"wall_clock_seconds": time.time() - started}, fh)
        fh.write("\n")
    print(out)
    if report.counterexamples:
        print(f"counterexamples: {len(report.counterexamples)}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twobranch",
        description="Spanning trees with few branch vertices in claw-free graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="find a spanning tree with few branch vertices")
    p_solve.add_argument("input", help="edge-list file, or - for stdin")
    p_solve.add_argument("--trace", action="store_true", help="print one line per applied move")
    p_solve.add_argument("--json", action="store_true")
    p_solve.add_argument("--oracle", action="store_true", help="fall back to the exact oracle on stall")
    p_solve.add_argument("--oracle-cap", type=int, default=12)
    p_solve.add_argument("--move-cap", type=int, default=None)
    p_solve.add_argument("--out", default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="check one degree-sum statement on one graph")
    p_verify.add_argument("input", help="edge-list file, or - for stdin")
    p_verify.add_argument("--theorem", required=True, help="t14, t15, or conj:<k>")
    p_verify.add_argument("--json", action="store_true", help="output is always JSON")
    p_verify.add_argument("--oracle-cap", type=int, default=12)
    p_verify.add_argument("--move-cap", type=int, default=None)
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="emit a generated graph as an edge list")
    p_gen.add_argument("spec", help="e.g. clawrepair:12:0.35:7, gnp:10:0.5:3, line:K4, named:net")
    p_gen.add_argument("--seed", type=int, default=None, help="override the spec's seed")
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_campaign = sub.add_parser("campaign", help="run a batch verification campaign")
    p_campaign.add_argument("config", help="JSON campaign config file")
    p_campaign.add_argument("--seed", type=int, default=None, help="override the master seed")
    p_campaign.add_argument("--out", default=None)
    p_campaign.set_defaults(func=cmd_campaign)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
