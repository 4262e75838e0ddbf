"""Batch verification of degree-sum statements against the exact oracle.

A statement here is: for every connected claw-free graph whose degree-sum
value over independent sets of a given size clears a threshold, a spanning
tree with at most a given number of branch vertices exists. Campaigns sample
seeded instances, evaluate the hypothesis exactly, run the exchange solver,
and confirm conclusions with the oracle. A counterexample is recorded only
after an oracle-exact optimum exceeds the claimed bound and a full re-check
(connectivity, claw-freeness, degree sums, oracle with a doubled cap)
confirms it.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field, replace
from typing import Optional

from .engine import SolveStatus, solve
from .generators import GenSpec, derive_seed, parse_genspec
from .graph import DegreeSumBound, Graph, format_edge_list
from .oracle import min_branch_vertices_exact


@dataclass(frozen=True)
class TheoremSpec:
    """Hypothesis and conclusion parameters of one degree-sum statement."""

    ident: str
    branch_bound: int  # conclusion: a spanning tree with at most this many branch vertices
    sigma_size: int  # independent-set size for the degree-sum value
    threshold_offset: int  # hypothesis threshold is n + offset


T14 = TheoremSpec("t14", branch_bound=2, sigma_size=7, threshold_offset=-2)
T15 = TheoremSpec("t15", branch_bound=2, sigma_size=6, threshold_offset=-5)


def conjecture_spec(k: int) -> TheoremSpec:
    if k < 0:
        raise ValueError("branch bound must be nonnegative")
    return TheoremSpec(f"conj:{k}", branch_bound=k, sigma_size=2 * k + 3, threshold_offset=-2)


def theorem_by_id(ident: str) -> TheoremSpec:
    if ident == "t14":
        return T14
    if ident == "t15":
        return T15
    if ident.startswith("conj:"):
        return conjecture_spec(int(ident.split(":", 1)[1]))
    raise ValueError(f"unknown theorem id {ident!r}")


@dataclass(frozen=True)
class HypothesisReport:
    connected: bool
    claw_free: bool
    sigma_value: DegreeSumBound
    sigma_threshold: int
    satisfied: bool
    vacuous: bool

    def to_json_dict(self) -> dict:
        return {
            "connected": self.connected,
            "claw_free": self.claw_free,
            "sigma_value": self.sigma_value.to_json(),
            "sigma_threshold": self.sigma_threshold,
            "satisfied": self.satisfied,
            "vacuous": self.vacuous,
        }


def evaluate_hypotheses(g: Graph, thm: TheoremSpec) -> HypothesisReport:
    connected = g.is_connected()
    claw_free = g.find_claw() is None
    sigma = g.sigma_k(thm.sigma_size)
    threshold = g.n + thm.threshold_offset
    satisfied = connected and claw_free and sigma.at_least(threshold)
    return HypothesisReport(
        connected=connected,
        claw_free=claw_free,
        sigma_value=sigma,
        sigma_threshold=threshold,
        satisfied=satisfied,
        vacuous=satisfied and sigma.is_unbounded,
    )


def check_theorem(
    g: Graph,
    thm: TheoremSpec,
    oracle_cap: int = 12,
    move_cap: Optional[int] = None,
) -> tuple[HypothesisReport, Optional[bool]]:
    """Evaluate hypotheses exactly; conclusion None when they do not hold.

    The conclusion is established by the solver's witness when it already
    meets the bound, otherwise decided exactly by the oracle when the graph
    is within the oracle cap (None beyond it).
    """
    report = evaluate_hypotheses(g, thm)
    if not report.satisfied:
        return report, None
    outcome = solve(g, oracle_fallback=False, move_cap=move_cap)
    if outcome.branch_count <= thm.branch_bound:
        return report, True
    if g.n <= oracle_cap:
        res = min_branch_vertices_exact(g, cap=oracle_cap, incumbent=outcome.tree)
        return report, res.optimum <= thm.branch_bound
    return report, None


@dataclass(frozen=True)
class InstanceRecord:
    genspec: str
    n: int
    m: int
    hypothesis: HypothesisReport
    solver_status: str
    solver_branch_count: int
    solver_moves: int
    solver_within_bound: bool
    oracle_optimum: Optional[int]
    oracle_explored: Optional[int]
    conclusion: Optional[bool]
    is_counterexample: bool

    def to_json_dict(self) -> dict:
        return {
            "genspec": self.genspec,
            "n": self.n,
            "m": self.m,
            "hypothesis": self.hypothesis.to_json_dict(),
            "solver_status": self.solver_status,
            "solver_branch_count": self.solver_branch_count,
            "solver_moves": self.solver_moves,
            "solver_within_bound": self.solver_within_bound,
            "oracle_optimum": self.oracle_optimum,
            "oracle_explored": self.oracle_explored,
            "conclusion": self.conclusion,
            "is_counterexample": self.is_counterexample,
        }


@dataclass(frozen=True)
class CampaignConfig:
    theorem: str
    instances: int
    n_min: int
    n_max: int
    strategies: tuple[str, ...] = ("clawrepair", "linegraph")
    master_seed: int = 1
    edge_prob: float = 0.35
    oracle: str = "always"  # always | fallback | never
    oracle_cap: int = 12
    move_cap: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instances": self.instances,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "strategies": list(self.strategies),
            "master_seed": self.master_seed,
            "edge_prob": self.edge_prob,
            "oracle": self.oracle,
            "oracle_cap": self.oracle_cap,
            "move_cap": self.move_cap,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "CampaignConfig":
        return CampaignConfig(
            theorem=data["theorem"],
            instances=int(data["instances"]),
            n_min=int(data["n_min"]),
            n_max=int(data["n_max"]),
            strategies=tuple(data.get("strategies", ("clawrepair", "linegraph"))),
            master_seed=int(data.get("master_seed", 1)),
            edge_prob=float(data.get("edge_prob", 0.35)),
            oracle=data.get("oracle", "always"),
            oracle_cap=int(data.get("oracle_cap", 12)),
            move_cap=data.get("move_cap"),
        )

    def digest(self) -> str:
        canonical = json.dumps(self.to_json_dict(), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()


@dataclass
class CampaignReport:
    spec_digest: str
    config: CampaignConfig
    records: list[InstanceRecord] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def satisfied_count(self) -> int:
        return sum(1 for r in self.records if r.hypothesis.satisfied)

    @property
    def vacuous_count(self) -> int:
        return sum(1 for r in self.records if r.hypothesis.vacuous)

    @property
    def solver_only_success_rate(self) -> Optional[float]:
        satisfied = [r for r in self.records if r.hypothesis.satisfied]
        if not satisfied:
            return None
        good = sum(1 for r in satisfied if r.solver_within_bound)
        return good / len(satisfied)

    def to_json_dict(self) -> dict:
        status_counts: dict[str, int] = {}
        for r in self.records:
            status_counts[r.solver_status] = status_counts.get(r.solver_status, 0) + 1
        return {
            "spec_digest": self.spec_digest,
            "config": self.config.to_json_dict(),
            "instance_count": len(self.records),
            "satisfied_count": self.satisfied_count,
            "vacuous_count": self.vacuous_count,
            "solver_only_success_rate": self.solver_only_success_rate,
            "status_counts": dict(sorted(status_counts.items())),
            "counterexample_count": len(self.counterexamples),
            "counterexamples": self.counterexamples,
            "instances": [r.to_json_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def _instance_genspec(config: CampaignConfig, index: int) -> GenSpec:
    seed = derive_seed(config.master_seed, index)
    span = config.n_max - config.n_min + 1
    n = config.n_min + (seed >> 8) % span
    strategy = config.strategies[index % len(config.strategies)]
    return GenSpec(strategy=strategy, n=n, p=config.edge_prob, seed=seed)


def run_instance(g: Graph, genspec: str, thm: TheoremSpec, config: CampaignConfig) -> InstanceRecord:
    report = evaluate_hypotheses(g, thm)
    if not g.is_connected():
        return InstanceRecord(
            genspec, g.n, g.m, report, "skipped", 0, 0, False, None, None, None, False
        )
    outcome = solve(g, oracle_fallback=False, move_cap=config.move_cap)
    within = outcome.branch_count <= thm.branch_bound
    run_oracle = config.oracle == "always" or (config.oracle == "fallback" and not within)
    oracle_optimum = None
    oracle_explored = None
    if run_oracle and report.satisfied and g.n <= config.oracle_cap:
        res = min_branch_vertices_exact(g, cap=config.oracle_cap, incumbent=outcome.tree)
        oracle_optimum = res.optimum
        oracle_explored = res.explored
    if not report.satisfied:
        conclusion = None
    elif within or (oracle_optimum is not None and oracle_optimum <= thm.branch_bound):
        conclusion = True
    elif oracle_optimum is not None:
        conclusion = False
    else:
        conclusion = None
    is_cx = bool(report.satisfied and oracle_optimum is not None and oracle_optimum > thm.branch_bound)
    return InstanceRecord(
        genspec=genspec,
        n=g.n,
        m=g.m,
        hypothesis=report,
        solver_status=outcome.status.value,
        solver_branch_count=outcome.branch_count,
        solver_moves=len(outcome.moves_applied),
        solver_within_bound=within,
        oracle_optimum=oracle_optimum,
        oracle_explored=oracle_explored,
        conclusion=conclusion,
        is_counterexample=is_cx,
    )


def confirm_counterexample(
    genspec: str, thm: TheoremSpec, config: CampaignConfig
) -> Optional[dict]:
    """Re-verify everything from the generation spec before persisting.

    Proved statements make genuine counterexamples impossible, so the
    pipeline suspects itself first: the instance is rebuilt from its spec and
    every hypothesis is recomputed, then the oracle runs with a doubled cap.
    """
    g = parse_genspec(genspec).build()
    if not g.is_connected():
        return None
    if g.find_claw() is not None:
        return None
    sigma = g.sigma_k(thm.sigma_size)
    if not sigma.at_least(g.n + thm.threshold_offset):
        return None
    res = min_branch_vertices_exact(g, cap=2 * config.oracle_cap, force=False)
    if res.optimum <= thm.branch_bound:
        return None
    return {
        "genspec": genspec,
        "theorem": thm.ident,
        "oracle_optimum": res.optimum,
        "branch_bound": thm.branch_bound,
        "sigma_value": sigma.to_json(),
        "sigma_threshold": g.n + thm.threshold_offset,
        "edge_list": format_edge_list(g),
    }


def _write_atomic(path: str, payload: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(payload)
    os.replace(tmp, path)


def run_campaign(
    config: CampaignConfig,
    out_path: Optional[str] = None,
    theorem: Optional[TheoremSpec] = None,
) -> CampaignReport:
    """Run a seeded campaign; deterministic given the config.

    Counterexamples are persisted to `<out>.counterexamples.json` the moment
    they are confirmed; the final report is written atomically. The report
    payload carries no wall-clock data, so identical configs produce
    byte-identical reports.
    """
    thm = theorem if theorem is not None else theorem_by_id(config.theorem)
    report = CampaignReport(spec_digest=config.digest(), config=config)
    for index in range(config.instances):
        spec = _instance_genspec(config, index)
        g = spec.build()
        record = run_instance(g, spec.to_string(), thm, config)
        if record.is_counterexample:
            confirmed = confirm_counterexample(spec.to_string(), thm, config)
            if confirmed is not None:
                report.counterexamples.append(confirmed)
                if out_path is not None:
                    _write_atomic(
                        out_path + ".counterexamples.json",
                        json.dumps(report.counterexamples, sort_keys=True, indent=2) + "\n",
                    )
            else:
                record = replace(record, is_counterexample=False)
        report.records.append(record)
    if out_path is not None:
        _write_atomic(out_path, report.to_json())
    return report
