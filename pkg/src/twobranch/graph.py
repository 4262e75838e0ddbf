"""Immutable simple-graph core: neighborhoods, claw detection, degree-sum bounds."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional


class GraphFormatError(ValueError):
    """Malformed graph input (bad edge-list line, out-of-range id, self-loop)."""


@dataclass(frozen=True)
class ClawWitness:
    """An induced K_{1,3}: `center` adjacent to three pairwise nonadjacent `talons`."""

    center: int
    talons: tuple[int, int, int]


@dataclass(frozen=True)
class DegreeSumBound:
    """Minimum degree sum over independent vertex sets of a fixed size.

    ``value is None`` means unbounded: no independent set of the requested
    size exists, so any threshold comparison is vacuously satisfied.
    """

    value: Optional[int] = None

    @property
    def is_unbounded(self) -> bool:
        return self.value is None

    def at_least(self, threshold: int) -> bool:
        return self.value is None or self.value >= threshold

    def to_json(self):
        return "unbounded" if self.value is None else self.value

    def __str__(self) -> str:
        return "unbounded" if self.value is None else str(self.value)


class Graph:
    """Simple undirected graph on dense vertex ids 0..n-1.

    Immutable after construction; duplicate edges are merged, self-loops are
    rejected. Neighbor lists are kept sorted so that every derived operation
    is deterministic.
    """

    __slots__ = ("n", "m", "adj", "_adj_sets", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        dedup: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
            dedup.add((u, v) if u < v else (v, u))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in dedup:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.m = len(dedup)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._adj_sets = tuple(frozenset(a) for a in self.adj)
        self._edges = tuple(sorted(dedup))

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) with u < v, sorted."""
        return self._edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def vertices(self) -> range:
        return range(self.n)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def is_connected(self) -> bool:
        """One traversal from vertex 0 reaches everything; n=0 is connected."""
        if self.n == 0:
            return True
        seen = [False] * self.n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == self.n

    def find_claw(self) -> Optional[ClawWitness]:
        """First induced K_{1,3} in (center, talon-triple) lexicographic order."""
        sets = self._adj_sets
        for center in range(self.n):
            nbrs = self.adj[center]
            if len(nbrs) < 3:
                continue
            for a, b, c in combinations(nbrs, 3):
                if b not in sets[a] and c not in sets[a] and c not in sets[b]:
                    return ClawWitness(center, (a, b, c))
        return None

    def neighborhood(self, xs: Iterable[int]) -> frozenset[int]:
        """All vertices with at least one neighbor in `xs` (may intersect `xs`)."""
        out: set[int] = set()
        for x in xs:
            out.update(self.adj[x])
        return frozenset(out)

    def neighborhood_exact_count(self, xs: Iterable[int], k: int) -> frozenset[int]:
        """Vertices having exactly k neighbors inside `xs`."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        xset = frozenset(xs)
        return frozenset(
            v for v in range(self.n) if len(self._adj_sets[v] & xset) == k
        )

    def is_independent(self, xs: Iterable[int]) -> bool:
        vs = sorted(set(xs))
        for i, u in enumerate(vs):
            au = self._adj_sets[u]
            for v in vs[i + 1 :]:
                if v in au:
                    return False
        return True

    def sigma_k(self, k: int) -> DegreeSumBound:
        """Exact minimum degree sum over independent k-sets.

        Branch-and-bound: partial independent sets are extended in increasing
        vertex id; a branch is pruned when its degree sum plus the remaining
        slots times the minimum degree among still-eligible ids cannot beat
        the incumbent. Unbounded when the independence number is below k.
        """
        if k <= 0:
            raise ValueError("k must be positive")
        n = self.n
        if k > n:
            return DegreeSumBound(None)
        deg = [len(a) for a in self.adj]
        # suffix_min[v] = min degree among vertices with id >= v
        suffix_min = [0] * (n + 1)
        suffix_min[n] = 0
        best: Optional[int] = None
        for v in range(n - 1, -1, -1):
            suffix_min[v] = deg[v] if v == n - 1 else min(deg[v], suffix_min[v + 1])
        sets = self._adj_sets
        chosen: list[int] = []

        def extend(start: int, cur_sum: int, left: int) -> None:
            nonlocal best
            if left == 0:
                if best is None or cur_sum < best:
                    best = cur_sum
                return
            for v in range(start, n - left + 1):
                if best is not None and cur_sum + left * suffix_min[v] >= best:
                    return  # suffix minimum only grows with v
                if best is not None and cur_sum + deg[v] + (left - 1) * suffix_min[v + 1] >= best:
                    continue
                av = sets[v]
                if any(u in av for u in chosen):
                    continue
                chosen.append(v)
                extend(v + 1, cur_sum + deg[v], left - 1)
                chosen.pop()

        extend(0, 0, k)
        return DegreeSumBound(best)


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format.

    Optional header line ``p <n> <m>``; then one edge per line ``u v``;
    lines starting with ``#`` are ignored. Without a header, n is one more
    than the largest vertex id seen.
    """
    declared_n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    max_id = -1
    saw_header_slot = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if not saw_header_slot and parts[0] == "p":
            saw_header_slot = True
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: header must be 'p <n> <m>'")
            try:
                declared_n = int(parts[1])
                int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header field") from None
            if declared_n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        saw_header_slot = True
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex id")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        if declared_n is not None and (u >= declared_n or v >= declared_n):
            raise GraphFormatError(
                f"line {lineno}: vertex id {max(u, v)} out of range for n={declared_n}"
            )
        edges.append((u, v))
        max_id = max(max_id, u, v)
    n = declared_n if declared_n is not None else max_id + 1
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    """Canonical serialization: header plus sorted edges, one per line."""
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All vertex pairs (u, v) with u < v in lexicographic order."""
    for u in range(n):
        for v in range(u + 1, n):
            yield u, v
