"""Graph representation, induced-pattern search, cograph structure, probe
partitions and certified random instance generation.

Vertices are dense integers ``0..n-1``.  Adjacency is exposed both as
frozensets (``Graph.adj``) and as int bitmasks (``Graph.adj_bits``); the
bitmasks are what every hot loop in the package runs on.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import (
    GenerationTimeout,
    InvalidCertificate,
    InvalidEdge,
    InvalidInstance,
    NotACograph,
    NotConnected,
    UnsupportedPattern,
)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "adj_bits")

    def __init__(self, n: int, adj: tuple[frozenset[int], ...]):
        self.n = n
        self.adj = adj
        self.adj_bits = tuple(
            sum(1 << u for u in neighbours) for neighbours in adj
        )

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted lexicographically."""
        return [
            (u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v
        ]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        """Copy of the graph with the given edges added."""
        return build_graph(self.n, self.edges() + [tuple(e) for e in extra])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list, deduplicating as needed.

    Raises :class:`InvalidEdge` for out-of-range endpoints or self-loops.
    """
    if n < 0:
        raise InvalidEdge(f"vertex count must be non-negative, got {n}")
    neighbours: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge {(u, v)} out of range for n={n}")
        if u == v:
            raise InvalidEdge(f"self-loop at vertex {u}")
        neighbours[u].add(v)
        neighbours[v].add(u)
    return Graph(n, tuple(frozenset(s) for s in neighbours))


@dataclass(frozen=True)
class PartitionedProbeGraph:
    """A graph together with its probe / non-probe bipartition.

    ``nonprobes`` must be an independent set and the two sides must
    partition the vertex set.
    """

    graph: Graph
    probes: frozenset[int]
    nonprobes: frozenset[int]

    def __post_init__(self):
        g = self.graph
        all_v = frozenset(range(g.n))
        if self.probes & self.nonprobes:
            raise InvalidInstance("probes and nonprobes overlap")
        if self.probes | self.nonprobes != all_v:
            raise InvalidInstance("probes and nonprobes do not cover V")
        for v in self.nonprobes:
            if g.adj[v] & self.nonprobes:
                raise InvalidInstance(
                    f"nonprobe set is not independent (edge at vertex {v})"
                )


@dataclass(frozen=True)
class ProbeCertificate:
    """A set of candidate edges inside the non-probe side.

    Adding these edges should put the graph in the target pattern-free
    class; :func:`verify_probe_certificate` checks exactly that.
    """

    f_edges: frozenset[tuple[int, int]]

    @staticmethod
    def of(pairs: Iterable[tuple[int, int]]) -> "ProbeCertificate":
        return ProbeCertificate(
            frozenset((min(u, v), max(u, v)) for u, v in pairs)
        )


@dataclass(frozen=True)
class Pattern:
    """A named small graph searched for as an induced subgraph."""

    name: str
    graph: Graph


def path_pattern(t: int) -> Pattern:
    return Pattern(f"P{t}", build_graph(t, [(i, i + 1) for i in range(t - 1)]))


def cycle_pattern(r: int) -> Pattern:
    edges = [(i, (i + 1) % r) for i in range(r)]
    return Pattern(f"C{r}", build_graph(r, edges))


def star_pattern(leaves: int) -> Pattern:
    """K_{1,leaves}: centre is vertex 0."""
    return Pattern(
        f"K1,{leaves}",
        build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)]),
    )


def independent_pattern(s: int) -> Pattern:
    return Pattern(f"{s}P1", build_graph(s, []))


def sp1_p4_pattern(s: int) -> Pattern:
    """s isolated vertices (ids 0..s-1) plus a path on ids s..s+3."""
    edges = [(s + i, s + i + 1) for i in range(3)]
    name = "P4" if s == 0 else "P1+P4" if s == 1 else f"{s}P1+P4"
    return Pattern(name, build_graph(s + 4, edges))


def diamond_pattern() -> Pattern:
    """K4 minus one edge; the missing edge is (2, 3)."""
    return Pattern(
        "diamond", build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    )


def two_p2_pattern() -> Pattern:
    return Pattern("2P2", build_graph(4, [(0, 1), (2, 3)]))


def split_forbidden_patterns() -> tuple[Pattern, Pattern, Pattern]:
    """The three patterns whose absence characterises split graphs."""
    return (two_p2_pattern(), cycle_pattern(4), cycle_pattern(5))


def parse_pattern(name: str) -> Pattern:
    """Parse a pattern name such as P4, C5, K1,3, 2P2, 4P1, 2P1+P4, diamond."""
    text = name.strip()
    if text == "diamond":
        return diamond_pattern()
    if text == "2P2":
        return two_p2_pattern()
    m = re.fullmatch(r"(?:(\d*)P1\+)?P4", text)
    if m:
        digits = m.group(1)
        if digits is None:
            return sp1_p4_pattern(0)
        return sp1_p4_pattern(int(digits) if digits else 1)
    m = re.fullmatch(r"P(\d+)", text)
    if m:
        return path_pattern(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", text)
    if m:
        return cycle_pattern(int(m.group(1)))
    m = re.fullmatch(r"K1,(\d+)", text)
    if m:
        return star_pattern(int(m.group(1)))
    m = re.fullmatch(r"(\d+)P1", text)
    if m:
        return independent_pattern(int(m.group(1)))
    raise UnsupportedPattern(f"unknown pattern name {name!r}")


def is_connected(g: Graph) -> bool:
    """True iff the graph has exactly one connected component.

    The empty graph is not connected; a single vertex is.
    """
    if g.n == 0:
        return False
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if not (seen >> u) & 1:
                seen |= 1 << u
                stack.append(u)
    return seen == (1 << g.n) - 1


def connected_components(
    g: Graph, within: Optional[Iterable[int]] = None
) -> list[list[int]]:
    """Connected components (of the induced subgraph on ``within`` if given),
    each sorted, ordered by smallest member."""
    verts = sorted(range(g.n) if within is None else within)
    allowed = set(verts)
    seen: set[int] = set()
    comps: list[list[int]] = []
    for s in verts:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u in allowed and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on the given vertices, relabelled densely.

    Returns the subgraph and a mapping list: new id -> original id.
    """
    verts = sorted(set(vertices))
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[u], index[v])
        for u in verts
        for v in g.adj[u]
        if v in index and u < v
    ]
    return build_graph(len(verts), edges), verts


def find_induced(g: Graph, h: Pattern) -> Optional[dict[int, int]]:
    """Find an induced occurrence of the pattern in ``g``.

    Returns an injective map pattern-vertex -> graph-vertex preserving both
    edges and non-edges, or None if the graph is pattern-free.  The result
    is the lexicographically least occurrence: pattern vertices are assigned
    in id order, candidates tried in ascending order.
    """
    k = h.graph.n
    if k > 8:
        raise UnsupportedPattern(
            f"pattern {h.name} has {k} > 8 vertices"
        )
    if k > g.n:
        return None
    pat_adj = h.graph.adj_bits
    adj = g.adj_bits
    # vertices with enough degree to host pattern vertex j
    deg_ok = [
        sum(1 << v for v in range(g.n) if g.degree(v) >= h.graph.degree(j))
        for j in range(k)
    ]
    image = [0] * k

    def rec(j: int, used: int) -> bool:
        if j == k:
            return True
        cand = deg_ok[j] & ~used
        want = pat_adj[j]
        for i in range(j):
            if (want >> i) & 1:
                cand &= adj[image[i]]
            else:
                cand &= ~adj[image[i]]
            if not cand:
                return False
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            image[j] = w
            if rec(j + 1, used | low):
                return True
        return False

    if rec(0, 0):
        return {i: image[i] for i in range(k)}
    return None


def verify_probe_certificate(
    ppg: PartitionedProbeGraph, cert: ProbeCertificate, h: Pattern
) -> bool:
    """True iff adding the certificate edges makes the graph pattern-free.

    Raises :class:`InvalidCertificate` if the certificate breaks its
    invariants against the instance (endpoints outside the non-probe side,
    or pairs that are already edges).
    """
    g = ppg.graph
    for u, v in cert.f_edges:
        if u == v or u not in ppg.nonprobes or v not in ppg.nonprobes:
            raise InvalidCertificate(
                f"certificate pair {(u, v)} not inside the non-probe side"
            )
        if g.has_edge(u, v):
            raise InvalidCertificate(
                f"certificate pair {(u, v)} is already an edge"
            )
    return find_induced(g.with_edges(cert.f_edges), h) is None


def _co_components(g: Graph, verts: list[int]) -> list[list[int]]:
    """Components of the complement of the induced subgraph on ``verts``."""
    vert_mask = sum(1 << v for v in verts)
    seen: set[int] = set()
    comps: list[list[int]] = []
    for s in verts:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            non_nbrs = vert_mask & ~g.adj_bits[v] & ~(1 << v)
            m = non_nbrs
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _is_cograph(g: Graph, verts: list[int]) -> bool:
    if len(verts) <= 3:
        return True
    comps = connected_components(g, verts)
    if len(comps) > 1:
        return all(_is_cograph(g, c) for c in comps)
    cocomps = _co_components(g, verts)
    if len(cocomps) > 1:
        return all(_is_cograph(g, c) for c in cocomps)
    return False


def is_p4_free(g: Graph):
    """True if the graph is a cograph, else a witness induced path.

    The check runs the cograph decomposition (every induced subgraph on two
    or more vertices must be disconnected or co-disconnected); the witness
    for the negative case is the lexicographically least induced P4, as a
    4-tuple in path order.
    """
    if _is_cograph(g, list(range(g.n))):
        return True
    occurrence = find_induced(g, path_pattern(4))
    assert occurrence is not None
    return tuple(occurrence[i] for i in range(4))


def dominating_edge(g: Graph) -> tuple[int, int]:
    """An edge (u, v) of a connected cograph such that every other vertex
    is adjacent to u or to v.

    Taken from the top-level join: u and v are the smallest vertices of the
    first two co-components.
    """
    if g.n < 2 or not is_connected(g):
        raise NotConnected("dominating_edge needs a connected graph on >= 2 vertices")
    if is_p4_free(g) is not True:
        raise NotACograph("dominating_edge needs a P4-free graph")
    cocomps = _co_components(g, list(range(g.n)))
    if len(cocomps) < 2:
        raise NotACograph("connected cograph must be co-disconnected")
    return (cocomps[0][0], cocomps[1][0])


def join_split(g: Graph) -> tuple[frozenset[int], frozenset[int]]:
    """The top-level join of a connected cograph: two non-empty disjoint
    vertex sets covering V that are complete to one another."""
    if g.n < 2 or not is_connected(g):
        raise NotConnected("join_split needs a connected graph on >= 2 vertices")
    if is_p4_free(g) is not True:
        raise NotACograph("join_split needs a P4-free graph")
    cocomps = _co_components(g, list(range(g.n)))
    if len(cocomps) < 2:
        raise NotACograph("connected cograph must be co-disconnected")
    s1 = frozenset(cocomps[0])
    s2 = frozenset(v for c in cocomps[1:] for v in c)
    return s1, s2


def random_probe_hfree(
    n: int,
    h: Pattern,
    density: float,
    seed: int,
    attempts: int = 10_000,
) -> tuple[PartitionedProbeGraph, ProbeCertificate]:
    """Generate a certified partitioned probe pattern-free instance.

    Rejection-samples a pattern-free graph with the given edge probability,
    removes the edges inside a random vertex subset to form the non-probe
    side, and retries until the remaining graph is connected.  The deleted
    edges are returned as the certificate.  Deterministic in ``seed``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must be a probability")
    rng = random.Random(seed)
    for _ in range(attempts):
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < density
        ]
        gstar = build_graph(n, edges)
        if find_induced(gstar, h) is not None:
            continue
        nprime = frozenset(v for v in range(n) if rng.random() < 0.5)
        deleted = {(u, v) for (u, v) in edges if u in nprime and v in nprime}
        kept = [e for e in edges if e not in deleted]
        g = build_graph(n, kept)
        if not is_connected(g):
            continue
        ppg = PartitionedProbeGraph(
            g, frozenset(range(n)) - nprime, nprime
        )
        return ppg, ProbeCertificate.of(deleted)
    raise GenerationTimeout(
        f"no connected {h.name}-free instance in {attempts} attempts"
    )


def iter_bits(mask: int) -> Iterator[int]:
    """Vertices of a bitmask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
