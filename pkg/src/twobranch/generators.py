"""Deterministic, seeded construction of test instances.

Randomness comes from a fixed 64-bit shift-register generator written out
below (not a library RNG), so identical generation specs produce
byte-identical graphs on every platform and language runtime.

Seed mixing (one round, applied to the raw seed to avoid weak states)::

    z = (seed + 0x9E3779B97F4A7C15) mod 2^64
    z = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    state = z XOR (z >> 31); if state == 0 then state = 0x9E3779B97F4A7C15

Each draw (xorshift with a multiplicative scramble)::

    state = state XOR (state >> 12)
    state = (state XOR (state << 25)) mod 2^64
    state = state XOR (state >> 27)
    output = (state * 0x2545F4914F6CDD1D) mod 2^64

Bounded draws use rejection sampling on the top multiples of the bound;
unit-interval draws take the top 53 bits divided by 2^53.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Graph, iter_pairs

_MASK = (1 << 64) - 1


def _mix(seed: int) -> int:
    z = (seed + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    z = z ^ (z >> 31)
    return z if z != 0 else 0x9E3779B97F4A7C15


class ShiftRegisterRng:
    """The documented 64-bit generator; see the module docstring for the algorithm."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = _mix(seed & _MASK)

    def next_u64(self) -> int:
        s = self.state
        s ^= s >> 12
        s = (s ^ (s << 25)) & _MASK
        s ^= s >> 27
        self.state = s
        return (s * 0x2545F4914F6CDD1D) & _MASK

    def next_below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def next_unit(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)


def derive_seed(master_seed: int, index: int) -> int:
    """Independent per-instance seed stream from one master seed."""
    return _mix((master_seed & _MASK) ^ _mix(index & _MASK))


def line_graph(g: Graph) -> Graph:
    """Line graph: one vertex per edge, adjacency by shared endpoint.

    Always claw-free, which makes it a standard instance source.
    """
    base_edges = g.edges()
    index = {e: i for i, e in enumerate(base_edges)}
    out: set[tuple[int, int]] = set()
    for v in range(g.n):
        incident = sorted(
            index[(v, w) if v < w else (w, v)] for w in g.adj[v]
        )
        for i, a in enumerate(incident):
            for b in incident[i + 1 :]:
                out.add((a, b))
    return Graph(len(base_edges), out)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Each vertex pair independently with probability p, pairs in lex order."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("probability must lie in [0, 1]")
    rng = ShiftRegisterRng(seed)
    edges = [(u, v) for u, v in iter_pairs(n) if rng.next_unit() < p]
    return Graph(n, edges)


def _random_connected(n: int, p: float, rng: ShiftRegisterRng) -> Graph:
    """Random recursive tree plus independent extra edges."""
    edges: set[tuple[int, int]] = set()
    for v in range(1, n):
        u = rng.next_below(v)
        edges.add((u, v))
    for u, v in iter_pairs(n):
        if rng.next_unit() < p:
            edges.add((u, v))
    return Graph(n, edges)


def _repair_claws(g: Graph) -> Graph:
    """Add an edge between the two lowest-id nonadjacent talons until claw-free.

    Terminates because edges are only ever added.
    """
    edges = set(g.edges())
    while True:
        witness = g.find_claw()
        if witness is None:
            return g
        a, b = sorted(witness.talons)[:2]
        edges.add((a, b))
        g = Graph(g.n, edges)


def _trim_connected(g: Graph, n: int) -> Graph:
    """Drop highest-id vertices whose removal keeps the graph connected."""
    while g.n > n:
        removed = None
        for v in range(g.n - 1, -1, -1):
            keep = [x for x in range(g.n) if x != v]
            relabel = {x: i for i, x in enumerate(keep)}
            edges = [
                (relabel[u], relabel[w])
                for u, w in g.edges()
                if u != v and w != v
            ]
            candidate = Graph(g.n - 1, edges)
            if candidate.is_connected():
                removed = candidate
                break
        if removed is None:
            raise RuntimeError("no removable vertex found")  # impossible when connected
        g = removed
    return g


def random_claw_free_connected(n: int, seed: int, strategy: str = "clawrepair", p: float = 0.35) -> Graph:
    """Connected claw-free instance; both properties are verified before return.

    ``clawrepair``: random connected graph, then repeated claw repair.
    ``linegraph``: line graph of a random connected base graph sized to land
    near n vertices, trimmed down to exactly n (induced subgraphs of line
    graphs stay claw-free).
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = ShiftRegisterRng(seed)
    if strategy == "clawrepair":
        g = _repair_claws(_random_connected(n, p, rng))
    elif strategy == "linegraph":
        if n <= 3:
            g = line_graph(path_graph(n + 1))
        else:
            # a connected base with n vertices and n-1+extra edges has that
            # many line-graph vertices; land slightly above n, then trim
            extra = 1 + rng.next_below(3)
            base_edges: set[tuple[int, int]] = set()
            for v in range(1, n):
                u = rng.next_below(v)
                base_edges.add((u, v))
            pairs = [e for e in iter_pairs(n) if e not in base_edges]
            for _ in range(extra):
                if not pairs:
                    break
                base_edges.add(pairs.pop(rng.next_below(len(pairs))))
            g = _trim_connected(line_graph(Graph(n, base_edges)), n)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if not g.is_connected():
        raise RuntimeError("generator produced a disconnected graph")
    if g.find_claw() is not None:
        raise RuntimeError("generator produced a graph with a claw")
    return g


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, list(iter_pairs(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(k: int) -> Graph:
    """K_{1,k}: center 0 with k talons."""
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def net_graph() -> Graph:
    """Triangle 0,1,2 with pendants 3,4,5 attached to its corners."""
    return Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])


def named_graph(name: str) -> Graph:
    """Compact family names: K5, C6, P4, K1,3, net."""
    name = name.strip()
    if name == "net":
        return net_graph()
    if name.startswith("K1,"):
        return star_graph(int(name[3:]))
    if name.startswith("K"):
        return complete_graph(int(name[1:]))
    if name.startswith("C"):
        return cycle_graph(int(name[1:]))
    if name.startswith("P"):
        return path_graph(int(name[1:]))
    raise ValueError(f"unknown named graph {name!r}")


@dataclass(frozen=True)
class GenSpec:
    """A reproducible generation request, serialized as `strategy:n:p:seed`.

    The named forms `named:<family>` and `line:<family>` have no numeric
    parameters.
    """

    strategy: str
    n: int = 0
    p: float = 0.0
    seed: int = 0
    family: Optional[str] = None

    def to_string(self) -> str:
        if self.strategy in ("named", "line"):
            return f"{self.strategy}:{self.family}"
        return f"{self.strategy}:{self.n}:{self.p:g}:{self.seed}"

    def build(self) -> Graph:
        if self.strategy == "named":
            return named_graph(self.family)
        if self.strategy == "line":
            return line_graph(named_graph(self.family))
        if self.strategy == "gnp":
            return random_graph(self.n, self.p, self.seed)
        if self.strategy in ("clawrepair", "linegraph"):
            return random_claw_free_connected(self.n, self.seed, self.strategy, self.p)
        raise ValueError(f"unknown strategy {self.strategy!r}")


def parse_genspec(text: str) -> GenSpec:
    parts = text.strip().split(":")
    if not parts or not parts[0]:
        raise ValueError("empty generation spec")
    strategy = parts[0]
    if strategy in ("named", "line"):
        if len(parts) != 2:
            raise ValueError(f"{strategy} spec needs exactly one family name")
        return GenSpec(strategy=strategy, family=parts[1])
    if strategy in ("gnp", "clawrepair", "linegraph"):
        if len(parts) != 4:
            raise ValueError(f"{strategy} spec must be {strategy}:n:p:seed")
        return GenSpec(
            strategy=strategy, n=int(parts[1]), p=float(parts[2]), seed=int(parts[3])
        )
    raise ValueError(f"unknown strategy {strategy!r}")
