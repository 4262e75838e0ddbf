"""Shared test helpers: independent brute-force oracles and tiny builders.

The naive implementations here deliberately avoid the package's own search
code so that equivalence tests compare two genuinely different routes.
"""

from __future__ import annotations

from itertools import combinations

from twobranch import Graph, SpanningTree


def naive_sigma(g: Graph, k: int):
    """Minimum degree sum over independent k-sets by full enumeration."""
    best = None
    for combo in combinations(range(g.n), k):
        ok = True
        for a, b in combinations(combo, 2):
            if g.has_edge(a, b):
                ok = False
                break
        if ok:
            total = sum(g.degree(v) for v in combo)
            if best is None or total < best:
                best = total
    return best


def naive_has_claw(g: Graph) -> bool:
    """Exhaustive check over every (center, neighbor triple)."""
    for center in range(g.n):
        for a, b, c in combinations(g.adj[center], 3):
            if not g.has_edge(a, b) and not g.has_edge(a, c) and not g.has_edge(b, c):
                return True
    return False


def assert_valid_spanning_tree(g: Graph, t: SpanningTree) -> None:
    edges = t.edges()
    assert len(edges) == g.n - 1
    for u, v in edges:
        assert g.has_edge(u, v)
    # connectivity implies acyclicity at n-1 edges
    adj = {v: [] for v in range(g.n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    assert len(seen) == g.n


def graph_and_tree(edges, n):
    """A tree used as its own host graph."""
    g = Graph(n, edges)
    return g, SpanningTree(g, edges)
