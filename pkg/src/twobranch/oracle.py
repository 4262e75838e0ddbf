"""Exact desk-scale ground truth: spanning-tree counting and enumeration,
minimum branch vertices, minimum leaves.

The spanning-tree count (an exact integer determinant) gates the strategy:
small tree spaces are enumerated outright by contraction/deletion, large
ones go through branch-and-bound over edge decisions with a forced-leaf
lower bound. Both strategies are exact; the oracle refuses graphs above its
vertex cap instead of approximating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, TYPE_CHECKING

from .graph import Graph

if TYPE_CHECKING:
    from .tree import SpanningTree

Edge = tuple[int, int]

DEFAULT_CAP = 12
ENUMERATION_GATE = 20_000


class OracleCapExceeded(ValueError):
    """Graph larger than the configured exactness cap (pass force=True to run anyway)."""


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: "SpanningTree"
    explored: int  # trees visited (enumeration) or nodes expanded (branch-and-bound)
    exact: bool
    method: str


@dataclass(frozen=True)
class EnumerationOutcome:
    count: int
    truncated: bool


def _det_int(matrix: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    a = [row[:] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def count_spanning_trees(g: Graph) -> int:
    """Exact spanning-tree count via a Laplacian minor determinant."""
    if g.n == 0:
        raise ValueError("count requires at least one vertex")
    if not g.is_connected():
        return 0
    if g.n == 1:
        return 1
    n = g.n
    lap = [[0] * n for _ in range(n)]
    for v in range(n):
        lap[v][v] = g.degree(v)
        for w in g.adj[v]:
            lap[v][w] = -1
    minor = [row[1:] for row in lap[1:]]
    return _det_int(minor)


class _Abort(Exception):
    pass


def _enumerate_edge_sets(g: Graph, limit: Optional[int]) -> Iterator[list[Edge]]:
    """Yield the edge sets of all spanning trees, deterministic order.

    Contraction/deletion on the lexicographically first live edge; the
    include branch is explored first. Deleting an edge is only allowed when
    the remaining live edges still connect all contracted classes.
    """
    n = g.n
    if n == 0:
        return
    if n == 1:
        yield []
        return
    all_edges = list(g.edges())

    def connects(parent: list[int], edges: list[Edge]) -> bool:
        par = parent[:]

        def find(x: int) -> int:
            while par[x] != x:
                par[x] = par[par[x]]
                x = par[x]
            return x

        comps = len({find(v) for v in range(n)})
        for u, v in edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                par[ru] = rv
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def find_in(par: list[int], x: int) -> int:
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    def rec(parent: list[int], live: list[Edge], chosen: list[Edge]) -> Iterator[list[Edge]]:
        if len(chosen) == n - 1:
            yield chosen[:]
            return
        live = [e for e in live if find_in(parent, e[0]) != find_in(parent, e[1])]
        if not live:
            return
        e = live[0]
        rest = live[1:]
        # include e
        par2 = parent[:]
        par2[find_in(par2, e[0])] = find_in(par2, e[1])
        chosen.append(e)
        yield from rec(par2, rest, chosen)
        chosen.pop()
        # exclude e, only if the rest still connects everything
        if connects(parent, rest):
            yield from rec(parent, rest, chosen)

    count = 0
    for edges in rec(list(range(n)), all_edges, []):
        if limit is not None and count >= limit:
            raise _Abort
        count += 1
        yield edges


def enumerate_spanning_trees(
    g: Graph, limit: int, visitor: Callable[["SpanningTree"], None]
) -> EnumerationOutcome:
    """Visit distinct spanning trees up to `limit`; truncation is reported."""
    from .tree import SpanningTree

    if limit <= 0:
        raise ValueError("limit must be positive")
    if not g.is_connected():
        return EnumerationOutcome(0, False)
    count = 0
    try:
        for edges in _enumerate_edge_sets(g, limit):
            visitor(SpanningTree(g, edges))
            count += 1
    except _Abort:
        return EnumerationOutcome(count, True)
    return EnumerationOutcome(count, False)


def _branch_count(deg: list[int]) -> int:
    return sum(1 for d in deg if d >= 3)


def _leaf_count(deg: list[int]) -> int:
    return sum(1 for d in deg if d == 1)


def _forced_leaf_bound(g: Graph) -> tuple[int, int]:
    """(min possible leaves, min possible branch vertices) from degree-1 vertices."""
    forced = sum(1 for v in range(g.n) if g.degree(v) == 1)
    leaf_lb = max(2, forced) if g.n >= 2 else 0
    max_deg = max((g.degree(v) for v in range(g.n)), default=0)
    if forced <= 2 or max_deg <= 2:
        branch_lb = 0
    else:
        branch_lb = -(-(forced - 2) // (max_deg - 2))  # ceil division
    return leaf_lb, branch_lb


def _min_by_enumeration(g: Graph, objective: Callable[[list[int]], int]):
    best: Optional[int] = None
    best_edges: Optional[list[Edge]] = None
    explored = 0
    for edges in _enumerate_edge_sets(g, None):
        explored += 1
        deg = [0] * g.n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        val = objective(deg)
        if best is None or val < best:
            best = val
            best_edges = edges
    return best, best_edges, explored


def _min_by_bnb(
    g: Graph,
    objective: Callable[[list[int]], int],
    node_bound: Callable[[list[int], list[int]], int],
    global_lb: int,
    incumbent_edges: Optional[list[Edge]],
):
    """Branch-and-bound over edge inclusion/exclusion in lexicographic order."""
    n = g.n
    edges = list(g.edges())
    m = len(edges)
    inc_left = [0] * n  # undecided edges incident to each vertex
    for u, v in edges:
        inc_left[u] += 1
        inc_left[v] += 1

    best: Optional[int] = None
    best_edges: Optional[list[Edge]] = None
    if incumbent_edges is not None:
        deg = [0] * n
        for u, v in incumbent_edges:
            deg[u] += 1
            deg[v] += 1
        best = objective(deg)
        best_edges = list(incumbent_edges)
    explored = 0

    parent = list(range(n))
    deg_now = [0] * n
    chosen: list[Edge] = []

    def find(par: list[int], x: int) -> int:
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    def feasible(par: list[int], idx: int) -> bool:
        tmp = par[:]
        comps = len({find(tmp, v) for v in range(n)})
        for u, v in edges[idx:]:
            ru, rv = find(tmp, u), find(tmp, v)
            if ru != rv:
                tmp[ru] = rv
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def rec(idx: int, par: list[int]) -> None:
        nonlocal best, best_edges, explored
        explored += 1
        if best is not None and best <= global_lb:
            return
        if len(chosen) == n - 1:
            val = objective(deg_now)
            if best is None or val < best:
                best = val
                best_edges = chosen[:]
            return
        if idx == m:
            return
        if best is not None and node_bound(deg_now, inc_left) >= best:
            return
        u, v = edges[idx]
        same = find(par, u) == find(par, v)
        inc_left[u] -= 1
        inc_left[v] -= 1
        if not same:
            # include first: getting to full trees early gives incumbents
            par2 = par[:]
            par2[find(par2, u)] = find(par2, v)
            deg_now[u] += 1
            deg_now[v] += 1
            chosen.append((u, v))
            rec(idx + 1, par2)
            chosen.pop()
            deg_now[u] -= 1
            deg_now[v] -= 1
        # exclude (forced when the edge closes a cycle)
        if same or feasible(par, idx + 1):
            rec(idx + 1, par)
        inc_left[u] += 1
        inc_left[v] += 1

    rec(0, parent)
    return best, best_edges, explored


def _exact_min(
    g: Graph,
    which: str,
    cap: int,
    force: bool,
    method: str,
    incumbent: Optional["SpanningTree"],
) -> OracleResult:
    from .tree import SpanningTree, spanning_tree_dfs

    if not g.is_connected():
        raise ValueError("oracle requires a connected graph")
    if g.n > cap and not force:
        raise OracleCapExceeded(f"n={g.n} exceeds oracle cap {cap}")
    if g.n <= 2:
        tree = SpanningTree(g, g.edges())
        deg = [tree.degree(v) for v in range(g.n)]
        val = _branch_count(deg) if which == "branch" else _leaf_count(deg)
        return OracleResult(val, tree, 1, True, "trivial")

    objective = _branch_count if which == "branch" else _leaf_count
    leaf_lb, branch_lb = _forced_leaf_bound(g)
    global_lb = branch_lb if which == "branch" else leaf_lb

    if method == "auto":
        method = "enumerate" if count_spanning_trees(g) <= ENUMERATION_GATE else "bnb"

    if method == "enumerate":
        best, best_edges, explored = _min_by_enumeration(g, objective)
    elif method == "bnb":
        if incumbent is None:
            if which == "branch":
                incumbent = spanning_tree_dfs(g, 0)
            else:
                from .engine import reduce_leaves

                incumbent = reduce_leaves(g, spanning_tree_dfs(g, 0), 2)
        if which == "branch":

            def node_bound(deg_now: list[int], inc_left: list[int]) -> int:
                return max(global_lb, _branch_count(deg_now))

        else:

            def node_bound(deg_now: list[int], inc_left: list[int]) -> int:
                # leaf count of any completion is 2 plus the final degree
                # excess, and degrees only grow from here
                excess = 0
                certain = 0
                for x in range(g.n):
                    d = deg_now[x]
                    if d > 2:
                        excess += d - 2
                    elif d == 1 and inc_left[x] == 0:
                        certain += 1
                return max(global_lb, 2 + excess, certain)

        best, best_edges, explored = _min_by_bnb(
            g, objective, node_bound, global_lb, list(incumbent.edges())
        )
    else:
        raise ValueError(f"unknown oracle method {method!r}")

    witness = SpanningTree(g, best_edges)
    return OracleResult(best, witness, explored, True, method)


def min_branch_vertices_exact(
    g: Graph,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    method: str = "auto",
    incumbent: Optional["SpanningTree"] = None,
) -> OracleResult:
    """Exact minimum number of branch vertices over all spanning trees."""
    return _exact_min(g, "branch", cap, force, method, incumbent)


def min_leaves_exact(
    g: Graph,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    method: str = "auto",
    incumbent: Optional["SpanningTree"] = None,
) -> OracleResult:
    """Exact minimum number of leaves over all spanning trees."""
    return _exact_min(g, "leaves", cap, force, method, incumbent)
