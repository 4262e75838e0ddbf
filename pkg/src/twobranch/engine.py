"""Local-search solver: leaf reduction, shape-guided exchange moves, and the
lexicographic potential that guarantees termination.

The move catalog is organized in five rule families. Each family generates
candidate multi-edge exchanges from a structural pattern; a candidate is kept
only if applying it yields a valid spanning tree whose potential is strictly
smaller (reaching at most two branch vertices always qualifies, since the
leading potential coordinate drops). Edge-existence checks make every rule
sound on arbitrary graphs, not only claw-free ones.

* ``R-LEAF-MERGE``: an edge between two members of the designated candidate
  set (typically two leaves) lets a pendant branch re-hang there; removal
  candidates are the detach edges of the two members and the hub path edges.
* ``R-ATTACH-SLIDE``: a leaf adjacent to a vertex outside its own pendant
  branch re-hangs the whole branch at that vertex.
* ``R-ENDPOINT-HOP``: an attachment vertex adjacent to a hub-path neighbor
  hops its branch off the hub, shortening hub distances; includes the
  path-shortcut variant where the two path neighbors of a hub are adjacent.
* ``R-CLAW-FORCED``: when two attachments at one hub are adjacent in the
  graph, the hub can release both of them at once; paired either with
  re-hanging both at a common neighbor or with an extra splice edge.
* ``R-TRIPLE-SPLICE``: three additions against three removals, rewiring two
  hub-path vertices adjacent to candidate-set members together with a hub
  path edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, NamedTuple, Optional

from .graph import DegreeSumBound, Graph
from .oracle import min_branch_vertices_exact
from .tree import Shape, ShapeConfig, SpanningTree, classify_shape, spanning_tree_dfs

Edge = tuple[int, int]

_SHAPE_RANK = {
    Shape.AT_MOST_TWO_BRANCH: 0,
    Shape.S1: 1,
    Shape.S2: 2,
    Shape.S3: 3,
    Shape.S4: 4,
    Shape.OTHER: 5,
}


class Potential(NamedTuple):
    """Lexicographic descent measure for the local search.

    Compared coordinate by coordinate: reaching at most two branch vertices
    beats everything, then fewer leaves, then an earlier shape, then the
    shape's own distance measure.
    """

    branch_flag: int
    leaf_count: int
    shape_rank: int
    measure: tuple[int, int, int]


def potential(g: Graph, t: SpanningTree, cfg: Optional[ShapeConfig] = None) -> Potential:
    if cfg is None:
        cfg = classify_shape(g, t)
    leaf_count = len(t.leaves())
    if cfg.shape is Shape.AT_MOST_TWO_BRANCH:
        return Potential(0, leaf_count, 0, (0, 0, 0))
    if cfg.shape in (Shape.S1, Shape.S2):
        measure = (cfg.r1, cfg.r2, 0)
    elif cfg.shape is Shape.S3:
        measure = (cfg.r1, cfg.r2, cfg.r3)
    elif cfg.shape is Shape.S4:
        measure = (len(cfg.p1) + len(cfg.p2) + len(cfg.p3), 0, 0)
    else:
        measure = (cfg.branch_distance_total, 0, 0)
    return Potential(1, leaf_count, _SHAPE_RANK[cfg.shape], measure)


@dataclass(frozen=True)
class ExchangeMove:
    """A batch of edge additions and an equal batch of removals.

    Applying them together (removals first, then additions, as one edge-set
    surgery) must leave a valid spanning tree.
    """

    rule_id: str
    adds: tuple[Edge, ...]
    removes: tuple[Edge, ...]


@dataclass(frozen=True)
class TraceEntry:
    rule_id: str
    adds: tuple[Edge, ...]
    removes: tuple[Edge, ...]
    before: Potential
    after: Potential


class SolveStatus(Enum):
    SOLVED = "solved"
    STALLED = "stalled"
    ORACLE_SOLVED = "oracle_solved"
    CAP_EXHAUSTED = "cap_exhausted"


@dataclass(frozen=True)
class RegionBound:
    """One counting region: observed candidate-set neighbor hits vs capacity."""

    name: str
    vertices: frozenset[int]
    count: int
    capacity: int

    @property
    def violated(self) -> bool:
        return self.count > self.capacity


@dataclass(frozen=True)
class CountingCertificate:
    """Stall diagnostic: the per-region counting argument for a shaped tree.

    The regions partition the vertex set, so `degree_sum` (the degree sum of
    the candidate set I) always equals the total of the per-region counts.
    When every region respects its capacity, `degree_sum <= total_capacity`;
    a degree-sum hypothesis forcing `degree_sum` above `total_capacity` is
    then impossible, so a genuine stall under the hypothesis must exhibit a
    violated region (a move the catalog failed to find) or a non-independent
    candidate set.
    """

    shape: ShapeConfig
    regions: tuple[RegionBound, ...]
    independent: bool
    degree_sum: int
    sigma_size: int
    sigma_bound: DegreeSumBound
    total_capacity: int
    contradiction_margin: int

    def violated_regions(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.regions if r.violated)

    def to_json_dict(self) -> dict:
        return {
            "shape": self.shape.shape.value,
            "collapsed": self.shape.collapsed,
            "regions": [
                {
                    "name": r.name,
                    "count": r.count,
                    "capacity": r.capacity,
                    "violated": r.violated,
                }
                for r in self.regions
            ],
            "independent": self.independent,
            "degree_sum": self.degree_sum,
            "sigma_size": self.sigma_size,
            "sigma_bound": self.sigma_bound.to_json(),
            "total_capacity": self.total_capacity,
            "contradiction_margin": self.contradiction_margin,
            "violated_regions": list(self.violated_regions()),
        }


@dataclass(frozen=True)
class SolveOutcome:
    status: SolveStatus
    tree: SpanningTree
    moves_applied: tuple[str, ...]
    trace: tuple[TraceEntry, ...] = ()
    certificate: Optional[CountingCertificate] = None

    @property
    def branch_count(self) -> int:
        return len(self.tree.branch_vertices())


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def try_apply(
    g: Graph, t: SpanningTree, adds: tuple[Edge, ...], removes: tuple[Edge, ...]
) -> Optional[SpanningTree]:
    """Apply an edge-set surgery; None when the result is not a spanning tree."""
    add_set = {_norm(*e) for e in adds}
    rem_set = {_norm(*e) for e in removes}
    if len(add_set) != len(adds) or len(rem_set) != len(removes):
        return None
    if len(add_set) != len(rem_set):
        return None
    tree_edges = t.edge_set()
    for e in add_set:
        if not g.has_edge(*e) or e in tree_edges:
            return None
    if not rem_set <= tree_edges:
        return None
    new_edges = (tree_edges - rem_set) | add_set
    if len(new_edges) != g.n - 1:
        return None
    # connectivity check over the new edge set
    adj: dict[int, list[int]] = {}
    for u, v in new_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if g.n > 1 and len(adj) != g.n:
        return None
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != g.n:
        return None
    return SpanningTree(g, new_edges)


def apply_move(g: Graph, t: SpanningTree, move: ExchangeMove) -> SpanningTree:
    out = try_apply(g, t, move.adds, move.removes)
    if out is None:
        raise ValueError(f"move {move.rule_id} does not keep a spanning tree")
    return out


@dataclass(frozen=True)
class _Anatomy:
    """Generic pendant-branch decomposition of a tree with branch vertices."""

    hubs: tuple[int, ...]
    hub_of_leaf: dict[int, int]
    attach_of_leaf: dict[int, int]
    branch_of_leaf: dict[int, frozenset[int]]
    attachments_at: dict[int, tuple[tuple[int, int], ...]]  # hub -> ((v, leaf), ...)
    core: frozenset[int]  # hub-path interiors (non-pendant, non-hub)
    hub_path_edges: tuple[Edge, ...]


def _anatomy(t: SpanningTree) -> _Anatomy:
    from .tree import _pendant_components  # shared decomposition helper

    hubs = tuple(sorted(t.branch_vertices()))
    pendants, core = _pendant_components(t, frozenset(hubs))
    hub_of_leaf: dict[int, int] = {}
    attach_of_leaf: dict[int, int] = {}
    branch_of_leaf: dict[int, frozenset[int]] = {}
    attachments_at: dict[int, list[tuple[int, int]]] = {h: [] for h in hubs}
    for hub, attach, leaf, comp in pendants:
        hub_of_leaf[leaf] = hub
        attach_of_leaf[leaf] = attach
        branch_of_leaf[leaf] = comp
        attachments_at[hub].append((attach, leaf))
    path_edges: set[Edge] = set()
    for h in hubs:
        for y in t.adj[h]:
            if y in core or t.degree(y) >= 3:
                path_edges.add(_norm(h, y))
    # edges inside the core are also hub path edges
    for x in core:
        for y in t.adj[x]:
            if y in core:
                path_edges.add(_norm(x, y))
    return _Anatomy(
        hubs=hubs,
        hub_of_leaf=hub_of_leaf,
        attach_of_leaf=attach_of_leaf,
        branch_of_leaf=branch_of_leaf,
        attachments_at={h: tuple(sorted(v)) for h, v in attachments_at.items()},
        core=core,
        hub_path_edges=tuple(sorted(path_edges)),
    )


def _candidate_set(cfg: ShapeConfig, t: SpanningTree) -> tuple[int, ...]:
    if cfg.independent_candidates:
        return tuple(sorted(cfg.independent_candidates))
    return tuple(sorted(t.leaves()))


def _detach_edge(anat: _Anatomy, member: int) -> Optional[Edge]:
    """The edge releasing `member`'s pendant branch from its hub, if a leaf."""
    hub = anat.hub_of_leaf.get(member)
    if hub is None:
        return None
    return _norm(hub, anat.attach_of_leaf[member])


def _generate_candidates(
    g: Graph, cfg: ShapeConfig, t: SpanningTree
) -> Iterator[tuple[str, tuple[Edge, ...], tuple[Edge, ...]]]:
    anat = _anatomy(t)
    cand = _candidate_set(cfg, t)
    tree_edges = t.edge_set()
    hub_path_edges = anat.hub_path_edges

    # R-LEAF-MERGE: graph edge inside the candidate set, or from a candidate
    # member to a hub outside the set; the released edge is a detach edge or
    # a hub path edge
    merge_targets = tuple(sorted(set(cand) | set(anat.hubs)))
    for i, a in enumerate(cand):
        for b in merge_targets:
            if b <= a and b in cand:
                continue
            if b == a or not g.has_edge(a, b) or _norm(a, b) in tree_edges:
                continue
            removals: list[Edge] = []
            for member in (a, b):
                det = _detach_edge(anat, member)
                if det is not None:
                    removals.append(det)
            removals.extend(hub_path_edges)
            for rem in removals:
                yield "R-LEAF-MERGE", ((a, b),), (rem,)

    # R-ATTACH-SLIDE: leaf adjacent to a vertex outside its own branch
    for leaf in sorted(anat.hub_of_leaf):
        det = _detach_edge(anat, leaf)
        own = anat.branch_of_leaf[leaf]
        hub = anat.hub_of_leaf[leaf]
        for x in g.adj[leaf]:
            if x in own or x == hub or _norm(leaf, x) in tree_edges:
                continue
            yield "R-ATTACH-SLIDE", ((leaf, x),), (det,)

    # hub-path neighbor pool shared by the hop rules
    path_side: list[tuple[int, int]] = []  # (hub, neighbor on hub path)
    for h in anat.hubs:
        for y in t.adj[h]:
            if y in anat.core or t.degree(y) >= 3:
                path_side.append((h, y))
    hop_targets = sorted({y for _, y in path_side})

    # R-ENDPOINT-HOP: re-hang one attachment at a hub-path neighbor
    for h in anat.hubs:
        for v, _leaf in anat.attachments_at[h]:
            for y in hop_targets:
                if y == h or y == v or not g.has_edge(v, y):
                    continue
                if _norm(v, y) in tree_edges:
                    continue
                yield "R-ENDPOINT-HOP", ((v, y),), ((h, v),)
    # path shortcut: the two path neighbors of a hub joined directly
    for h in anat.hubs:
        nbrs = sorted(y for hh, y in path_side if hh == h)
        for i, p in enumerate(nbrs):
            for q in nbrs[i + 1 :]:
                if not g.has_edge(p, q) or _norm(p, q) in tree_edges:
                    continue
                yield "R-ENDPOINT-HOP", ((p, q),), ((h, p),)
                yield "R-ENDPOINT-HOP", ((p, q),), ((h, q),)

    # R-CLAW-FORCED: two attachments at one hub adjacent in the graph
    for h in anat.hubs:
        att = anat.attachments_at[h]
        for i in range(len(att)):
            for j in range(i + 1, len(att)):
                va, vb = att[i][0], att[j][0]
                if not g.has_edge(va, vb):
                    continue
                removes = (_norm(h, va), _norm(h, vb))
                pair = _norm(va, vb)
                if pair in tree_edges:
                    continue
                # re-hang both attachments at a common neighbor
                common = sorted(set(g.adj[va]) & set(g.adj[vb]) - {h})
                for x in common:
                    adds = (_norm(x, va), _norm(x, vb))
                    if any(e in tree_edges for e in adds):
                        continue
                    yield "R-CLAW-FORCED", adds, removes
                # splice: pair the forced edge with one extra candidate edge
                for y in cand:
                    for x in g.adj[y]:
                        e = _norm(x, y)
                        if e in tree_edges or e == pair:
                            continue
                        yield "R-CLAW-FORCED", (e, pair), removes

    # forced-pair splice: two candidate members hitting the two endpoints of
    # one tree edge let that edge go, releasing a detach or hub path edge
    cand_set = set(cand)
    cand_hits = {
        v: tuple(u for u in cand if g.has_edge(u, v)) for v in range(g.n)
    }
    for x, y in sorted(tree_edges):
        for alpha in cand_hits[x]:
            if alpha == y:
                continue
            for beta in cand_hits[y]:
                if beta == x or beta == alpha:
                    continue
                e1 = _norm(alpha, x)
                e2 = _norm(beta, y)
                if e1 in tree_edges or e2 in tree_edges or e1 == e2:
                    continue
                removals: list[Edge] = []
                for member in (alpha, beta):
                    det = _detach_edge(anat, member)
                    if det is not None:
                        removals.append(det)
                removals.extend(hub_path_edges)
                for rem in removals:
                    if rem == (x, y):
                        continue
                    yield "R-CLAW-FORCED", (e1, e2), ((x, y), rem)

    # R-TRIPLE-SPLICE: two adjacent hub-path hits by one candidate member,
    # one more candidate edge, and a hub path edge released
    core_sorted = sorted(anat.core | set(anat.hubs))
    for beta in cand:
        beta_adj = set(g.adj[beta])
        for x in core_sorted:
            if x not in beta_adj:
                continue
            for xm in t.adj[x]:
                if xm not in beta_adj or xm == beta:
                    continue
                e1 = _norm(beta, x)
                e2 = _norm(beta, xm)
                if e1 in tree_edges or e2 in tree_edges:
                    continue
                rem1 = _norm(x, xm)
                for alpha in cand:
                    if alpha == beta:
                        continue
                    for y in g.adj[alpha]:
                        if y not in anat.core or y in (x, xm):
                            continue
                        e3 = _norm(alpha, y)
                        if e3 in tree_edges:
                            continue
                        for ym in t.adj[y]:
                            rem2 = _norm(y, ym)
                            if rem2 == rem1:
                                continue
                            for rem3 in hub_path_edges:
                                if rem3 in (rem1, rem2):
                                    continue
                                yield "R-TRIPLE-SPLICE", (e1, e2, e3), (rem1, rem2, rem3)


def catalog_moves(g: Graph, cfg: ShapeConfig, t: SpanningTree) -> list[ExchangeMove]:
    """All valid, strictly improving moves for the current tree.

    Deterministic: candidates are deduplicated on their edge sets and the
    result is sorted by (rule id, added edges, removed edges).
    """
    base = potential(g, t, cfg)
    seen: set[tuple[frozenset[Edge], frozenset[Edge]]] = set()
    out: list[ExchangeMove] = []
    for rule, adds, removes in _generate_candidates(g, cfg, t):
        adds = tuple(sorted(_norm(*e) for e in adds))
        removes = tuple(sorted(_norm(*e) for e in removes))
        key = (frozenset(adds), frozenset(removes))
        if key in seen:
            continue
        seen.add(key)
        t2 = try_apply(g, t, adds, removes)
        if t2 is None:
            continue
        if potential(g, t2) < base:
            out.append(ExchangeMove(rule, adds, removes))
    out.sort(key=lambda m: (m.rule_id, m.adds, m.removes))
    return out


def reduce_leaves(g: Graph, t: SpanningTree, target: int) -> SpanningTree:
    """Greedy leaf reduction by single edge exchanges.

    Repeatedly applies the first exchange (added edges in lexicographic
    order, removals along the closed cycle) that strictly decreases the leaf
    count, until the target is met or no such exchange exists. The leaf count
    never increases.
    """
    if target < 2:
        raise ValueError("target must be at least 2")
    if g.n <= 2:
        return t
    while True:
        leaves_now = len(t.leaves())
        if leaves_now <= target:
            return t
        move = _first_leaf_reducing_exchange(g, t)
        if move is None:
            return t
        t = t.exchange(*move)


def _first_leaf_reducing_exchange(
    g: Graph, t: SpanningTree
) -> Optional[tuple[Edge, Edge]]:
    deg = [t.degree(v) for v in range(g.n)]
    tree_edges = t.edge_set()
    for a, b in g.edges():
        if (a, b) in tree_edges:
            continue
        path = t.tree_path(a, b)
        verts = path.vertices
        for i in range(len(verts) - 1):
            c, d = verts[i], verts[i + 1]
            delta: dict[int, int] = {a: 1, b: 1}
            delta[c] = delta.get(c, 0) - 1
            delta[d] = delta.get(d, 0) - 1
            change = 0
            for x, dd in delta.items():
                if dd:
                    change += (deg[x] + dd == 1) - (deg[x] == 1)
            if change < 0:
                return (a, b), _norm(c, d)
    return None


def minimize(g: Graph, t0: SpanningTree, move_cap: Optional[int] = None) -> SolveOutcome:
    """Drive the tree down the potential order with first-improving moves."""
    if move_cap is None:
        move_cap = max(1, g.n**3)
    t = t0
    trace: list[TraceEntry] = []
    while True:
        cfg = classify_shape(g, t)
        if cfg.shape is Shape.AT_MOST_TWO_BRANCH:
            return SolveOutcome(
                SolveStatus.SOLVED, t, tuple(e.rule_id for e in trace), tuple(trace)
            )
        if len(trace) >= move_cap:
            cert = _maybe_certificate(g, cfg)
            return SolveOutcome(
                SolveStatus.CAP_EXHAUSTED,
                t,
                tuple(e.rule_id for e in trace),
                tuple(trace),
                cert,
            )
        moves = catalog_moves(g, cfg, t)
        if not moves:
            cert = _maybe_certificate(g, cfg)
            return SolveOutcome(
                SolveStatus.STALLED, t, tuple(e.rule_id for e in trace), tuple(trace), cert
            )
        before = potential(g, t, cfg)
        move = moves[0]
        t2 = apply_move(g, t, move)
        after = potential(g, t2)
        assert after < before, "catalog returned a non-improving move"
        trace.append(TraceEntry(move.rule_id, move.adds, move.removes, before, after))
        t = t2


def _maybe_certificate(g: Graph, cfg: ShapeConfig) -> Optional[CountingCertificate]:
    if cfg.shape in (Shape.S1, Shape.S2, Shape.S3, Shape.S4):
        return counting_certificate(g, cfg)
    return None


def solve(
    g: Graph,
    oracle_fallback: bool = True,
    oracle_cap: int = 12,
    move_cap: Optional[int] = None,
) -> SolveOutcome:
    """Full pipeline: depth-first tree, leaf reduction, potential descent.

    When the local search stalls and the oracle is allowed (and the graph is
    within its cap), the exact optimum witness replaces the stalled tree.
    """
    if not g.is_connected():
        raise ValueError("input graph is disconnected")
    t0 = spanning_tree_dfs(g, 0)
    t1 = reduce_leaves(g, t0, 6)
    out = minimize(g, t1, move_cap)
    if (
        out.status in (SolveStatus.STALLED, SolveStatus.CAP_EXHAUSTED)
        and oracle_fallback
        and g.n <= oracle_cap
    ):
        res = min_branch_vertices_exact(g, cap=oracle_cap, incumbent=out.tree)
        return SolveOutcome(
            SolveStatus.ORACLE_SOLVED,
            res.witness,
            out.moves_applied,
            out.trace,
            out.certificate,
        )
    return out


def _region(name: str, vertices: frozenset[int], capacity: int) -> tuple[str, frozenset[int], int]:
    return (name, vertices, capacity)


def _certificate_regions(cfg: ShapeConfig) -> list[tuple[str, frozenset[int], int]]:
    b = cfg.branch_sets
    shape = cfg.shape
    if shape is Shape.S1:
        regions = [
            _region("B1", b[0], len(b[0])),
            _region("B2", b[1], len(b[1])),
            _region("B3", b[2], len(b[2])),
            _region("B4", b[3], len(b[3])),
            _region("B5", b[4], len(b[4]) - 1),
            _region("{w}", frozenset({cfg.w}), 1),
            _region("P1", cfg.p1, len(cfg.p1)),
            _region("P2", cfg.p2, len(cfg.p2)),
            _region("{s}", frozenset({cfg.s}), 0),
            _region("{t}", frozenset({cfg.t}), 0),
        ]
    elif shape is Shape.S2:
        grouped = b[0] | b[1] | b[2] | b[5]
        regions = [
            _region("B4", b[3], len(b[3])),
            _region("B5", b[4], len(b[4])),
            _region("B1+B2+B3+B6", grouped, len(grouped) - 3),
            _region("{s}", frozenset({cfg.s}), 0),
            _region("{w}", frozenset({cfg.w}), 1),
            _region("P1", cfg.p1, len(cfg.p1)),
            _region("P2", cfg.p2, len(cfg.p2) + 2),
            _region("{t}", frozenset({cfg.t}), 0),
        ]
    elif shape is Shape.S3 and not cfg.collapsed:
        regions = [
            _region("B1", b[0], len(b[0]) - 1),
            _region("B2", b[1], len(b[1]) - 1),
            _region("B3", b[2], len(b[2])),
            _region("B4", b[3], len(b[3])),
            _region("B5", b[4], len(b[4]) - 1),
            _region("B6", b[5], len(b[5]) - 1),
            _region("{s,w,z}", frozenset({cfg.s, cfg.w, cfg.z}), 4),
            _region("Q1", cfg.q1, len(cfg.q1)),
            _region("Q2", cfg.q2, len(cfg.q2)),
            _region("P2", cfg.p2, len(cfg.p2) + 1),
            _region("{t}", frozenset({cfg.t}), 0),
        ]
    elif shape is Shape.S3:  # collapsed: z == w
        regions = [
            _region("B1", b[0], len(b[0]) - 1),
            _region("B2", b[1], len(b[1]) - 1),
            _region("B3", b[2], len(b[2])),
            _region("B4", b[3], len(b[3])),
            _region("B5", b[4], len(b[4]) - 1),
            _region("B6", b[5], len(b[5]) - 1),
            _region("{s,w}", frozenset({cfg.s, cfg.w}), 2),
            _region("P1+P2", cfg.p1 | cfg.p2, len(cfg.p1) + len(cfg.p2)),
            _region("{t}", frozenset({cfg.t}), 0),
        ]
    elif shape is Shape.S4:
        regions = [
            _region(f"B{i + 1}", b[i], len(b[i]) - 1) for i in range(6)
        ]
        regions.extend(
            [
                _region("{s,t,w}", frozenset({cfg.s, cfg.t, cfg.w}), 3),
                _region(
                    "P1+P2+P3",
                    cfg.p1 | cfg.p2 | cfg.p3,
                    len(cfg.p1) + len(cfg.p2) + len(cfg.p3),
                ),
                _region("{z}", frozenset({cfg.z}), 0),
            ]
        )
    else:
        raise ValueError("counting certificate requires a shaped tree (S1..S4)")
    return regions


def counting_certificate(g: Graph, cfg: ShapeConfig) -> CountingCertificate:
    """Evaluate the per-region counting argument for a shaped tree.

    For every region R the count is the sum over candidate-set members u of
    |N(u) ∩ R|; capacities are the per-shape bounds the exchange analysis
    promises. The regions partition the vertex set, so the counts always add
    up to the candidate set's degree sum.
    """
    if cfg.shape not in (Shape.S1, Shape.S2, Shape.S3, Shape.S4):
        raise ValueError("counting certificate requires a shaped tree (S1..S4)")
    regions_spec = _certificate_regions(cfg)
    members = sorted(cfg.independent_candidates)
    neighborhoods = [set(g.adj[u]) for u in members]
    regions: list[RegionBound] = []
    for name, verts, capacity in regions_spec:
        count = sum(len(nb & verts) for nb in neighborhoods)
        regions.append(RegionBound(name, verts, count, capacity))
    degree_sum = sum(g.degree(u) for u in members)
    sigma_size = len(members)
    sigma = g.sigma_k(sigma_size)
    total_capacity = sum(r.capacity for r in regions)
    return CountingCertificate(
        shape=cfg,
        regions=tuple(regions),
        independent=g.is_independent(members),
        degree_sum=degree_sum,
        sigma_size=sigma_size,
        sigma_bound=sigma,
        total_capacity=total_capacity,
        contradiction_margin=total_capacity - degree_sum,
    )
