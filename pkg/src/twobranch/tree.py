"""Spanning trees: leaves, branch vertices, oriented paths, edge exchange,
and classification of trees into the shape catalog driving the solver.

A tree shape names the arrangement of branch vertices:

* ``AT_MOST_TWO_BRANCH``: at most two branch vertices (the solver's goal).
* ``S1``: three branch vertices of degree 3 on a common path.
* ``S2``: three branch vertices, the degree-4 one at an end of the hub path.
* ``S3``: four degree-3 branch vertices on a common path, or the collapsed
  variant where the two interior hubs coincide in a single degree-4 vertex.
* ``S4``: four degree-3 branch vertices, one of which is the median of the
  other three.
* ``OTHER``: anything else (more than six leaves, unusual degree patterns).

Every shape S1..S4 names a cast of vertices: hub path endpoints ``s`` and
``t``, interior hubs ``w`` (and ``z``), one leaf ``u_i`` plus an attachment
vertex ``v_i`` per pendant branch set ``B_i``, the hub path interiors, and a
designated candidate independent set used by the stall diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .graph import Graph


class TreeError(ValueError):
    """Invalid tree construction or exchange."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class SpanningTree:
    """A spanning tree of a host graph.

    Stored both as a parent array (root sentinel -1) and as adjacency lists;
    the root is an implementation detail and never observable in results.
    Trees are values: `exchange` returns a new tree.
    """

    __slots__ = ("host", "parent", "adj", "_edge_set", "_deg")

    def __init__(self, host: Graph, edges: Iterable[tuple[int, int]], root: int = 0):
        n = host.n
        edge_set = frozenset(_norm(u, v) for u, v in edges)
        if n > 0 and len(edge_set) != n - 1:
            raise TreeError(f"expected {n - 1} edges, got {len(edge_set)}")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_set:
            if not host.has_edge(u, v):
                raise TreeError(f"edge ({u}, {v}) not in host graph")
            adj[u].append(v)
            adj[v].append(u)
        parent = [-2] * n
        if n > 0:
            parent[root] = -1
            stack = [root]
            seen = 1
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if parent[y] == -2:
                        parent[y] = x
                        seen += 1
                        stack.append(y)
            if seen != n:
                raise TreeError("edge set does not span the graph")
        self.host = host
        self.parent = tuple(parent)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self._edge_set = edge_set
        self._deg = tuple(len(a) for a in adj)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._edge_set))

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return self._edge_set

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._edge_set

    def degree(self, v: int) -> int:
        return self._deg[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def leaves(self) -> frozenset[int]:
        return frozenset(v for v in range(self.host.n) if self._deg[v] == 1)

    def branch_vertices(self) -> frozenset[int]:
        return frozenset(v for v in range(self.host.n) if self._deg[v] >= 3)

    def leaf_identity_residual(self) -> int:
        """|L| - 2 - sum over branch vertices of (deg - 2); always 0."""
        excess = sum(self._deg[v] - 2 for v in range(self.host.n) if self._deg[v] >= 3)
        return len(self.leaves()) - 2 - excess

    def tree_path(self, u: int, v: int) -> "OrientedPath":
        """The unique tree path from u to v, oriented u -> v."""
        if u == v:
            raise TreeError("tree path endpoints must differ")
        prev = {u: u}
        queue = [u]
        while queue:
            nxt: list[int] = []
            for x in queue:
                for y in self.adj[x]:
                    if y not in prev:
                        prev[y] = x
                        if y == v:
                            path = [v]
                            while path[-1] != u:
                                path.append(prev[path[-1]])
                            path.reverse()
                            return OrientedPath(tuple(path))
                        nxt.append(y)
            queue = nxt
        raise TreeError("endpoints not connected in tree")  # unreachable for valid trees

    def distance(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return len(self.tree_path(u, v)) - 1

    def exchange(self, add: tuple[int, int], remove: tuple[int, int]) -> "SpanningTree":
        """Replace tree edge `remove` by graph edge `add`.

        `remove` must lie on the unique tree cycle closed by `add`, otherwise
        the result would be disconnected.
        """
        a, b = add
        if not self.host.has_edge(a, b):
            raise TreeError(f"edge ({a}, {b}) not in host graph")
        if self.has_edge(a, b):
            raise TreeError(f"edge ({a}, {b}) already in tree")
        cycle_path = self.tree_path(a, b)
        if _norm(*remove) not in cycle_path.edge_set():
            raise TreeError(f"removed edge {remove} not on the cycle closed by {add}")
        new_edges = (self._edge_set - {_norm(*remove)}) | {_norm(a, b)}
        return SpanningTree(self.host, new_edges)

    def to_parent_text(self) -> str:
        """Parent-array serialization: `t <n>` then one `v parent(v)` per line."""
        lines = [f"t {self.host.n}"]
        lines.extend(f"{v} {self.parent[v]}" for v in range(self.host.n))
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"SpanningTree(n={self.host.n}, branch={sorted(self.branch_vertices())})"


class OrientedPath:
    """A tree path with a fixed orientation, supporting successor/predecessor."""

    __slots__ = ("vertices", "_index")

    def __init__(self, vertices: tuple[int, ...]):
        self.vertices = vertices
        self._index = {v: i for i, v in enumerate(vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self._index

    def successor(self, x: int) -> Optional[int]:
        i = self._index[x]
        return self.vertices[i + 1] if i + 1 < len(self.vertices) else None

    def predecessor(self, x: int) -> Optional[int]:
        i = self._index[x]
        return self.vertices[i - 1] if i > 0 else None

    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            _norm(self.vertices[i], self.vertices[i + 1])
            for i in range(len(self.vertices) - 1)
        )

    def reversed(self) -> "OrientedPath":
        return OrientedPath(tuple(reversed(self.vertices)))

    def __eq__(self, other) -> bool:
        return isinstance(other, OrientedPath) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"OrientedPath({list(self.vertices)})"


def spanning_tree_dfs(g: Graph, root: int = 0) -> SpanningTree:
    """Depth-first spanning tree, neighbors explored in increasing id."""
    if g.n == 0:
        raise TreeError("empty graph has no spanning tree")
    if not 0 <= root < g.n:
        raise TreeError(f"root {root} out of range")
    if not g.is_connected():
        raise TreeError("graph is disconnected")
    visited = [False] * g.n
    visited[root] = True
    edges: list[tuple[int, int]] = []
    stack: list[tuple[int, int]] = [(root, -1)]
    while stack:
        x, par = stack.pop()
        # re-check: a vertex may be stacked more than once
        if par != -1:
            if visited[x]:
                continue
            visited[x] = True
            edges.append((par, x))
        for y in reversed(g.adj[x]):
            if not visited[y]:
                stack.append((y, x))
    return SpanningTree(g, edges, root=root)


class Shape(Enum):
    AT_MOST_TWO_BRANCH = "at_most_two_branch"
    S1 = "s1"
    S2 = "s2"
    S3 = "s3"
    S4 = "s4"
    OTHER = "other"


@dataclass(frozen=True)
class ShapeConfig:
    """A classified tree shape with its named cast.

    For shapes S1..S4: `us[i]` is the unique leaf of `branch_sets[i]`,
    `vs[i]` its attachment (the one vertex of the branch set adjacent to a
    hub) and `hubs_of[i]` the hub it attaches to. Hub path interiors are
    exposed as `p1`/`p2`/`p3` (and `q1`/`q2` for S3, where `p1 = q1 | q2`).
    `independent_candidates` is the designated set whose independence the
    stall diagnostics test.
    """

    shape: Shape
    s: Optional[int] = None
    t: Optional[int] = None
    w: Optional[int] = None
    z: Optional[int] = None
    collapsed: bool = False  # S3 with z == w (one degree-4 interior hub)
    us: tuple[int, ...] = ()
    vs: tuple[int, ...] = ()
    hubs_of: tuple[int, ...] = ()
    branch_sets: tuple[frozenset[int], ...] = ()
    p1: frozenset[int] = frozenset()
    p2: frozenset[int] = frozenset()
    p3: frozenset[int] = frozenset()
    q1: frozenset[int] = frozenset()
    q2: frozenset[int] = frozenset()
    r1: Optional[int] = None
    r2: Optional[int] = None
    r3: Optional[int] = None
    independent_candidates: frozenset[int] = frozenset()
    branch_distance_total: int = 0  # sum of pairwise hub distances (OTHER measure)

    def hubs(self) -> tuple[int, ...]:
        out = []
        for h in (self.s, self.w, self.z, self.t):
            if h is not None and h not in out:
                out.append(h)
        return tuple(out)


def _median(t: SpanningTree, a: int, b: int, c: int) -> int:
    """The unique vertex common to all three pairwise tree paths."""
    on_ab = set(t.tree_path(a, b))
    on_bc = set(t.tree_path(b, c))
    for x in t.tree_path(a, c):
        if x in on_ab and x in on_bc:
            return x
    raise TreeError("median not found")  # impossible in a tree


def _pendant_components(
    t: SpanningTree, hubs: frozenset[int]
) -> tuple[list[tuple[int, int, int, frozenset[int]]], frozenset[int]]:
    """Split T - hubs into pendant branch sets and hub-path interior vertices.

    Returns (pendants, interior) where each pendant is
    (hub, attachment, leaf, vertex set). Every component of T - hubs is a
    path because all non-hub vertices have tree degree at most 2; a component
    with one hub link is a pendant branch set, one with two hub links is a
    piece of the hub path.
    """
    n = t.host.n
    seen = [False] * n
    for h in hubs:
        seen[h] = True
    pendants: list[tuple[int, int, int, frozenset[int]]] = []
    interior: set[int] = set()
    for start in range(n):
        if seen[start]:
            continue
        comp: list[int] = []
        stack = [start]
        seen[start] = True
        links: list[tuple[int, int]] = []  # (vertex in comp, hub)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in t.adj[x]:
                if y in hubs:
                    links.append((x, y))
                elif not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comp_set = frozenset(comp)
        comp_leaves = [x for x in comp if t.degree(x) == 1]
        if len(links) == 1 and len(comp_leaves) == 1:
            attach, hub = links[0]
            pendants.append((hub, attach, comp_leaves[0], comp_set))
        elif len(links) == 2 and not comp_leaves:
            interior.update(comp)
        else:
            raise TreeError("unexpected component structure")  # impossible
    return pendants, frozenset(interior)


def _assign_branch_sets(
    pendants: list[tuple[int, int, int, frozenset[int]]], hub_order: list[int]
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[frozenset[int], ...]]:
    """Order pendant branch sets by hub (in `hub_order`), ties by attachment id."""
    us: list[int] = []
    vs: list[int] = []
    hubs_of: list[int] = []
    sets: list[frozenset[int]] = []
    for h in hub_order:
        mine = sorted((p for p in pendants if p[0] == h), key=lambda p: p[1])
        for hub, attach, leaf, comp in mine:
            us.append(leaf)
            vs.append(attach)
            hubs_of.append(hub)
            sets.append(comp)
    return tuple(us), tuple(vs), tuple(hubs_of), tuple(sets)


def _interior_set(t: SpanningTree, a: int, b: int) -> frozenset[int]:
    return frozenset(t.tree_path(a, b).interior())


def _pairwise_branch_distance(t: SpanningTree, branch: list[int]) -> int:
    return sum(t.distance(a, b) for a, b in combinations(branch, 2))


def classify_shape(g: Graph, t: SpanningTree) -> ShapeConfig:
    """Classify a spanning tree into the shape catalog.

    Deterministic role assignment: when a shape is symmetric, the labeling
    minimizing (r1, r2, r3) lexicographically is chosen, with ties broken by
    smallest vertex id for s (then t, then w).
    """
    branch = sorted(t.branch_vertices())
    if len(branch) <= 2:
        return ShapeConfig(shape=Shape.AT_MOST_TWO_BRANCH)
    leaves = t.leaves()
    if len(leaves) > 6:
        return ShapeConfig(
            shape=Shape.OTHER,
            branch_distance_total=_pairwise_branch_distance(t, branch),
        )
    degs = {b: t.degree(b) for b in branch}

    if len(branch) == 3:
        a, b, c = branch
        med = _median(t, a, b, c)
        # with exactly three branch vertices the median is one of them
        ends = [x for x in branch if x != med]
        degseq = sorted(degs.values())
        if degseq == [3, 3, 3]:
            s, t_end = _orient_endpoints(t, ends, med)
            return _build_path_shape(g, t, Shape.S1, s, t_end, med, None)
        if degseq == [3, 3, 4]:
            if degs[med] == 4:
                # collapsed S3: both interior branch sets hang off one hub
                s, t_end = _orient_endpoints(t, ends, med)
                return _build_path_shape(g, t, Shape.S3, s, t_end, med, med)
            deg4 = next(x for x in ends if degs[x] == 4)
            other = next(x for x in ends if x != deg4)
            return _build_path_shape(g, t, Shape.S2, deg4, other, med, None)
        return ShapeConfig(
            shape=Shape.OTHER,
            branch_distance_total=_pairwise_branch_distance(t, branch),
        )

    if len(branch) == 4 and all(degs[x] == 3 for x in branch):
        branch_set = frozenset(branch)
        skel: dict[int, list[int]] = {b: [] for b in branch}
        for x, y in combinations(branch, 2):
            if not any(v in branch_set for v in t.tree_path(x, y).interior()):
                skel[x].append(y)
                skel[y].append(x)
        skel_degs = sorted(len(v) for v in skel.values())
        if skel_degs == [1, 1, 2, 2]:
            # path arrangement: order the hubs along the path
            end = min(b for b in branch if len(skel[b]) == 1)
            order = [end]
            while len(order) < 4:
                nxt = [x for x in skel[order[-1]] if x not in order]
                order.append(nxt[0])
            fwd = order
            bwd = list(reversed(order))

            def key(o: list[int]) -> tuple:
                return (t.distance(o[0], o[1]), t.distance(o[0], o[2]), o[0])

            s0, w0, z0, t0 = min(fwd, bwd, key=key)
            return _build_path_shape(g, t, Shape.S3, s0, t0, w0, z0)
        if skel_degs == [1, 1, 1, 3]:
            center = next(b for b in branch if len(skel[b]) == 3)
            others = [b for b in branch if b != center]
            best = None
            for s0, t0, w0 in _permutations3(others):
                k = (t.distance(s0, t0), t.distance(s0, w0), s0, t0, w0)
                if best is None or k < best[0]:
                    best = (k, (s0, t0, w0))
            s0, t0, w0 = best[1]
            return _build_star_shape(g, t, s0, t0, w0, center)

    return ShapeConfig(
        shape=Shape.OTHER,
        branch_distance_total=_pairwise_branch_distance(t, branch),
    )


def _permutations3(items: list[int]) -> Iterator[tuple[int, int, int]]:
    a, b, c = items
    yield a, b, c
    yield a, c, b
    yield b, a, c
    yield b, c, a
    yield c, a, b
    yield c, b, a


def _orient_endpoints(t: SpanningTree, ends: list[int], med: int) -> tuple[int, int]:
    """Pick which hub-path endpoint plays s: minimize (d(s, med), s)."""
    e1, e2 = ends
    k1 = (t.distance(e1, med), e1)
    k2 = (t.distance(e2, med), e2)
    return (e1, e2) if k1 <= k2 else (e2, e1)


def _build_path_shape(
    g: Graph,
    t: SpanningTree,
    shape: Shape,
    s: int,
    t_end: int,
    w: int,
    z: Optional[int],
) -> ShapeConfig:
    collapsed = shape is Shape.S3 and z == w
    hub_ids = {s, t_end, w} | ({z} if z is not None else set())
    pendants, _ = _pendant_components(t, frozenset(hub_ids))
    if shape is Shape.S3 and not collapsed:
        hub_order = [s, t_end, w, z]
    else:
        hub_order = [s, t_end, w]
    us, vs, hubs_of, sets = _assign_branch_sets(pendants, hub_order)

    r1 = t.distance(s, t_end)
    r2 = t.distance(s, w)
    cfg = dict(
        shape=shape,
        s=s,
        t=t_end,
        w=w,
        z=z,
        collapsed=collapsed,
        us=us,
        vs=vs,
        hubs_of=hubs_of,
        branch_sets=sets,
        r1=r1,
        r2=r2,
    )
    if shape in (Shape.S1, Shape.S2):
        cfg["p1"] = _interior_set(t, w, s)
        cfg["p2"] = _interior_set(t, t_end, w)
    else:  # S3, possibly collapsed
        zz = w if collapsed else z
        q1 = _interior_set(t, w, s)
        q2 = frozenset() if collapsed else _interior_set(t, zz, w)
        cfg["q1"] = q1
        cfg["q2"] = q2
        cfg["p1"] = q1 | q2
        cfg["p2"] = _interior_set(t, t_end, zz)
        cfg["r3"] = t.distance(s, zz)
    if shape is Shape.S1:
        ind = set(us) | {t_end, s}
    else:
        ind = set(us) | {t_end}
    cfg["independent_candidates"] = frozenset(ind)
    return ShapeConfig(**cfg)


def _build_star_shape(
    g: Graph, t: SpanningTree, s: int, t_end: int, w: int, z: int
) -> ShapeConfig:
    pendants, _ = _pendant_components(t, frozenset({s, t_end, w, z}))
    us, vs, hubs_of, sets = _assign_branch_sets(pendants, [s, t_end, w])
    return ShapeConfig(
        shape=Shape.S4,
        s=s,
        t=t_end,
        w=w,
        z=z,
        us=us,
        vs=vs,
        hubs_of=hubs_of,
        branch_sets=sets,
        p1=_interior_set(t, z, s),
        p2=_interior_set(t, z, t_end),
        p3=_interior_set(t, z, w),
        r1=t.distance(s, t_end),
        r2=t.distance(s, w),
        r3=t.distance(s, z),
        independent_candidates=frozenset(set(us) | {z}),
    )
