"""Acceptance suite: seeded campaigns against the exact oracle, invariant
checks at scale, and oracle self-consistency. One pass/fail line is printed
per criterion (run with ``pytest tests/test_acceptance.py -v -s`` to see them
on success).
"""

import time

import pytest

from helpers import assert_valid_spanning_tree, naive_sigma
from twobranch import (
    CampaignConfig,
    ShiftRegisterRng,
    complete_graph,
    count_spanning_trees,
    cycle_graph,
    min_branch_vertices_exact,
    min_leaves_exact,
    parse_genspec,
    random_claw_free_connected,
    random_graph,
    reduce_leaves,
    run_campaign,
    solve,
    spanning_tree_dfs,
)

ORACLE_CAP = 12


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"{criterion}: {detail}"


def _campaign(theorem: str, instances: int, seed: int) -> tuple:
    config = CampaignConfig(
        theorem=theorem,
        instances=instances,
        n_min=5,
        n_max=12,
        strategies=("clawrepair", "linegraph"),
        master_seed=seed,
        edge_prob=0.2,
        oracle="always",
        oracle_cap=ORACLE_CAP,
    )
    started = time.time()
    report = run_campaign(config)
    return report, time.time() - started


@pytest.fixture(scope="module")
def t14_campaign():
    return _campaign("t14", 500, seed=14)


@pytest.fixture(scope="module")
def t15_campaign():
    return _campaign("t15", 500, seed=15)


def test_criterion_1_t14_campaign(t14_campaign):
    report, elapsed = t14_campaign
    satisfied = [r for r in report.records if r.hypothesis.satisfied]
    optima_ok = all(
        r.oracle_optimum is not None and r.oracle_optimum <= 2 for r in satisfied
    )
    ok = (
        len(report.records) == 500
        and not report.counterexamples
        and optima_ok
        and elapsed < 300
    )
    _report(
        "1 (t14 campaign)",
        ok,
        f"500 instances, {len(satisfied)} hypothesis-satisfying, "
        f"{len(report.counterexamples)} counterexamples, all oracle optima <= 2, "
        f"{elapsed:.1f}s",
    )


def test_criterion_2_t15_campaign(t15_campaign):
    report, elapsed = t15_campaign
    satisfied = [r for r in report.records if r.hypothesis.satisfied]
    optima_ok = all(
        r.oracle_optimum is not None and r.oracle_optimum <= 2 for r in satisfied
    )
    ok = (
        len(report.records) == 500
        and not report.counterexamples
        and optima_ok
        and elapsed < 300
    )
    _report(
        "2 (t15 campaign)",
        ok,
        f"500 instances, {len(satisfied)} hypothesis-satisfying, "
        f"{len(report.counterexamples)} counterexamples, {elapsed:.1f}s",
    )


def test_criterion_3_conjecture_probe():
    started = time.time()
    details = []
    ok = True
    for k in (1, 2, 3):
        report, _ = _campaign(f"conj:{k}", 200, seed=30 + k)
        satisfied = [r for r in report.records if r.hypothesis.satisfied]
        bound_ok = all(
            r.oracle_optimum is not None and r.oracle_optimum <= k for r in satisfied
        )
        ok = ok and not report.counterexamples and bound_ok
        details.append(f"k={k}: {len(satisfied)} satisfying, 0 counterexamples")
    elapsed = time.time() - started
    ok = ok and elapsed < 600
    _report("3 (conjecture probe k=1,2,3)", ok, "; ".join(details) + f", {elapsed:.1f}s")


def test_criterion_4_leaf_bounds(t14_campaign, t15_campaign):
    t14_report, _ = t14_campaign
    reduced_ok = 0
    oracle6_ok = 0
    sample14 = [r for r in t14_report.records if r.hypothesis.satisfied][:120]
    for record in sample14:
        g = parse_genspec(record.genspec).build()
        t = reduce_leaves(g, spanning_tree_dfs(g, 0), 6)
        if len(t.leaves()) <= 6:
            reduced_ok += 1
        if min_leaves_exact(g, cap=ORACLE_CAP).optimum <= 6:
            oracle6_ok += 1
    t15_report, _ = t15_campaign
    sample15 = [r for r in t15_report.records if r.hypothesis.satisfied][:120]
    oracle5_ok = 0
    for record in sample15:
        g = parse_genspec(record.genspec).build()
        if min_leaves_exact(g, cap=ORACLE_CAP).optimum <= 5:
            oracle5_ok += 1
    ok = (
        reduced_ok == len(sample14)
        and oracle6_ok == len(sample14)
        and oracle5_ok == len(sample15)
    )
    _report(
        "4 (leaf bounds)",
        ok,
        f"reduce_leaves <= 6 on {reduced_ok}/{len(sample14)}, oracle <= 6 on "
        f"{oracle6_ok}/{len(sample14)}, oracle <= 5 on {oracle5_ok}/{len(sample15)}",
    )


def _instance_pool(count: int, seed: int):
    rng = ShiftRegisterRng(seed)
    pool = []
    for i in range(count):
        n = 5 + rng.next_below(8)
        kind = rng.next_below(3)
        s = rng.next_u64()
        if kind == 0:
            g = random_claw_free_connected(n, s, "clawrepair", 0.2)
        elif kind == 1:
            g = random_claw_free_connected(n, s, "linegraph")
        else:
            g = random_graph(n, 0.5, s)
            if not g.is_connected():
                g = cycle_graph(n)
        pool.append(g)
    return pool


def test_criterion_5_invariant_suite(t14_campaign):
    # leaf identity on >= 1000 random spanning trees
    rng = ShiftRegisterRng(55)
    pool = _instance_pool(120, seed=5)
    trees = []
    residual_violations = 0
    while len(trees) < 1000:
        g = pool[rng.next_below(len(pool))]
        t = spanning_tree_dfs(g, rng.next_below(g.n))
        for _ in range(3):
            non_tree = [e for e in g.edges() if e not in t.edge_set()]
            if not non_tree:
                break
            add = non_tree[rng.next_below(len(non_tree))]
            cycle = t.tree_path(*add).vertices
            i = rng.next_below(len(cycle) - 1)
            t = t.exchange(add, (cycle[i], cycle[i + 1]))
        trees.append((g, t))
        if t.leaf_identity_residual() != 0:
            residual_violations += 1

    # exchange validity on >= 10^4 random moves
    exchanges = 0
    exchange_violations = 0
    while exchanges < 10_000:
        g, t = trees[rng.next_below(len(trees))]
        non_tree = [e for e in g.edges() if e not in t.edge_set()]
        if not non_tree:
            continue
        add = non_tree[rng.next_below(len(non_tree))]
        cycle = t.tree_path(*add).vertices
        i = rng.next_below(len(cycle) - 1)
        t2 = t.exchange(add, (cycle[i], cycle[i + 1]))
        try:
            assert_valid_spanning_tree(g, t2)
        except AssertionError:
            exchange_violations += 1
        exchanges += 1

    # potential strict descent on every move of every campaign solve
    t14_report, _ = t14_campaign
    descent_violations = 0
    moves_checked = 0
    for record in t14_report.records:
        g = parse_genspec(record.genspec).build()
        out = solve(g, oracle_fallback=False)
        for entry in out.trace:
            moves_checked += 1
            if not entry.after < entry.before:
                descent_violations += 1

    # sigma branch-and-bound equals naive enumeration, 200 graphs with n <= 10
    sigma_mismatches = 0
    for i in range(200):
        s = ShiftRegisterRng(500 + i)
        n = 4 + s.next_below(7)
        g = random_graph(n, 0.15 + 0.1 * s.next_below(6), s.next_u64())
        for k in (2, 3, 5, 7):
            if g.sigma_k(k).value != naive_sigma(g, k):
                sigma_mismatches += 1

    ok = (
        residual_violations == 0
        and exchange_violations == 0
        and descent_violations == 0
        and sigma_mismatches == 0
    )
    _report(
        "5 (invariant suite)",
        ok,
        f"{len(trees)} trees residual=0, {exchanges} exchanges valid, "
        f"{moves_checked} solver moves strictly descending, "
        f"sigma naive-vs-bnb mismatches={sigma_mismatches}",
    )


def test_criterion_6_oracle_self_consistency():
    mismatches = 0
    checked = 0
    for i in range(100):
        s = ShiftRegisterRng(600 + i)
        n = 4 + s.next_below(5)  # n <= 8
        g = random_graph(n, 0.3 + 0.1 * s.next_below(5), s.next_u64())
        if not g.is_connected():
            g = cycle_graph(n)
        checked += 1
        if (
            min_branch_vertices_exact(g, method="enumerate").optimum
            != min_branch_vertices_exact(g, method="bnb").optimum
        ):
            mismatches += 1
        if (
            min_leaves_exact(g, method="enumerate").optimum
            != min_leaves_exact(g, method="bnb").optimum
        ):
            mismatches += 1
    counts_ok = (
        count_spanning_trees(complete_graph(4)) == 16
        and count_spanning_trees(complete_graph(3)) == 3
    )
    ok = mismatches == 0 and counts_ok
    _report(
        "6 (oracle self-consistency)",
        ok,
        f"{checked} graphs, enumeration == branch-and-bound on both objectives, "
        f"count(K4)=16 count(K3)=3: {counts_ok}",
    )


def test_criterion_7_solver_effectiveness(t14_campaign, t15_campaign):
    # informational: reported, not gated
    for name, (report, _) in (("t14", t14_campaign), ("t15", t15_campaign)):
        rate = report.solver_only_success_rate
        print(
            f"ACCEPTANCE 7 (solver effectiveness, {name}): INFO — "
            f"exchange-only success rate {rate:.3f} over "
            f"{report.satisfied_count} hypothesis-satisfying instances"
        )
    assert True
