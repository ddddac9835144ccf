"""Finite simple graphs: representation, edge-list parsing, generators.

Vertices are 0-based integers; edges are stored as sorted pairs (u, v)
with u < v.  Everything downstream (counting, thresholds, simulation)
builds on this one immutable type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class EdgeListError(ValueError):
    """Raised when an edge-list document violates the format.

    ``reason`` is one of: "malformed-line", "duplicate-edge",
    "self-loop", "vertex-out-of-range", "bad-header".
    """

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class GraphParameterError(ValueError):
    """Raised for invalid generator parameters (e.g. odd matching size)."""


@dataclass(frozen=True)
class Graph:
    """A finite simple graph on vertices 0..vertex_count-1."""

    vertex_count: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range or unsorted")

    # The paper-style size symbols: v(H) and e(H) == |H|.
    @property
    def v(self) -> int:
        return self.vertex_count

    @property
    def e(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree_sequence(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency_bitsets(self) -> list[int]:
        """Per-vertex neighbor sets packed into Python ints."""
        adj = [0] * self.vertex_count
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def neighbors(self, u: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == u:
                out.append(b)
            elif b == u:
                out.append(a)
        return sorted(out)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def support(self) -> list[int]:
        """Vertices incident to at least one edge."""
        seen = set()
        for u, v in self.edges:
            seen.add(u)
            seen.add(v)
        return sorted(seen)

    def strip_isolated(self) -> "Graph":
        """Relabel onto the edge support, dropping isolated vertices."""
        sup = self.support()
        index = {x: i for i, x in enumerate(sup)}
        return Graph(
            len(sup),
            frozenset((index[u], index[v]) for u, v in self.edges),
        )

    def induced(self, vertices) -> "Graph":
        """Induced subgraph on ``vertices``, relabeled to 0..k-1."""
        vs = sorted(set(vertices))
        index = {x: i for i, x in enumerate(vs)}
        keep = set(vs)
        return Graph(
            len(vs),
            frozenset(
                (index[u], index[v]) for u, v in self.edges if u in keep and v in keep
            ),
        )

    def subgraph_of_edges(self, edge_subset) -> "Graph":
        """Subgraph with the given edges, relabeled onto its support."""
        edge_subset = frozenset(tuple(sorted(e)) for e in edge_subset)
        if not edge_subset <= self.edges:
            raise ValueError("edge subset is not a subset of this graph's edges")
        sup = sorted({x for e in edge_subset for x in e})
        index = {x: i for i, x in enumerate(sup)}
        return Graph(len(sup), frozenset((index[u], index[v]) for u, v in edge_subset))

    def components(self) -> list[list[int]]:
        """Connected components (vertex lists, sorted)."""
        adj = self.adjacency_bitsets()
        unseen = set(range(self.vertex_count))
        comps = []
        while unseen:
            root = min(unseen)
            stack = [root]
            comp = {root}
            unseen.remove(root)
            while stack:
                x = stack.pop()
                m = adj[x]
                while m:
                    b = m & -m
                    m ^= b
                    y = b.bit_length() - 1
                    if y in unseen:
                        unseen.remove(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_clique_union(self) -> bool:
        """True when every connected component is a complete graph."""
        for comp in self.components():
            k = len(comp)
            cs = set(comp)
            count = sum(1 for u, v in self.edges if u in cs and v in cs)
            if count != k * (k - 1) // 2:
                return False
        return True

    def to_edge_list_text(self) -> str:
        lines = [str(self.vertex_count)]
        lines.extend(f"{u} {v}" for u, v in self.sorted_edges())
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format.

    Line 1 is the vertex count; each later non-empty, non-``#`` line is
    "u v" with 0-based endpoints.  Malformed lines, self-loops,
    duplicate edges and out-of-range endpoints are distinct errors.
    """
    lines = text.splitlines()
    body = [ln.strip() for ln in lines]
    idx = 0
    while idx < len(body) and (not body[idx] or body[idx].startswith("#")):
        idx += 1
    if idx == len(body):
        raise EdgeListError("bad-header", "missing vertex-count header line")
    try:
        n = int(body[idx])
    except ValueError:
        raise EdgeListError("bad-header", f"bad vertex count: {body[idx]!r}") from None
    if n < 0:
        raise EdgeListError("bad-header", f"negative vertex count: {n}")
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(body[idx + 1 :], start=idx + 2):
        if not raw or raw.startswith("#"):
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise EdgeListError("malformed-line", f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(
                "malformed-line", f"line {lineno}: non-integer endpoint in {raw!r}"
            ) from None
        if u == v:
            raise EdgeListError("self-loop", f"line {lineno}: self-loop at vertex {u}")
        if u > v:
            u, v = v, u
        if not (0 <= u and v < n):
            raise EdgeListError(
                "vertex-out-of-range",
                f"line {lineno}: endpoint out of range for vertex count {n}",
            )
        if (u, v) in edges:
            raise EdgeListError("duplicate-edge", f"line {lineno}: duplicate edge {u} {v}")
        edges.add((u, v))
    return Graph(n, frozenset(edges))


def clique(k: int) -> Graph:
    if k < 1:
        raise GraphParameterError("clique needs k >= 1")
    return Graph(k, frozenset(itertools.combinations(range(k), 2)))


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphParameterError("cycle needs k >= 3")
    edges = {tuple(sorted((i, (i + 1) % k))) for i in range(k)}
    return Graph(k, frozenset(edges))


def path(k: int) -> Graph:
    """Path on k vertices (k - 1 edges)."""
    if k < 1:
        raise GraphParameterError("path needs k >= 1")
    return Graph(k, frozenset((i, i + 1) for i in range(k - 1)))


def perfect_matching(n: int) -> Graph:
    if n < 2 or n % 2:
        raise GraphParameterError("perfect matching needs even n >= 2")
    return Graph(n, frozenset((2 * i, 2 * i + 1) for i in range(n // 2)))


def sun(k: int) -> Graph:
    """Clique on 0..k-1 plus a pendant edge i -- (k + i) for each i."""
    if k < 1:
        raise GraphParameterError("sun needs k >= 1")
    edges = set(itertools.combinations(range(k), 2))
    edges.update((i, k + i) for i in range(k))
    return Graph(2 * k, frozenset(edges))


def disjoint_cliques(sizes) -> Graph:
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise GraphParameterError("disjoint_cliques needs positive sizes")
    edges = set()
    offset = 0
    for s in sizes:
        edges.update(itertools.combinations(range(offset, offset + s), 2))
        offset += s
    return Graph(offset, frozenset(edges))


def cycle_with_out_edges(k: int) -> Graph:
    """k-cycle on 0..k-1 plus one pendant edge per cycle vertex; v = e = 2k."""
    if k < 3:
        raise GraphParameterError("cycle_with_out_edges needs k >= 3")
    edges = {tuple(sorted((i, (i + 1) % k))) for i in range(k)}
    edges.update((i, k + i) for i in range(k))
    return Graph(2 * k, frozenset(edges))


_FAMILIES = {
    "clique": lambda p: clique(int(p["k"])),
    "cycle": lambda p: cycle(int(p["k"])),
    "path": lambda p: path(int(p["k"])),
    "matching": lambda p: perfect_matching(int(p["n"])),
    "sun": lambda p: sun(int(p["k"])),
    "disjoint-cliques": lambda p: disjoint_cliques(
        [int(x) for x in str(p["sizes"]).split(",") if x != ""]
    ),
    "cycle-out": lambda p: cycle_with_out_edges(int(p["k"])),
}

FAMILY_NAMES = sorted(_FAMILIES)


def generate(family: str, **params) -> Graph:
    """Build a named pattern family; see FAMILY_NAMES for options."""
    key = family.replace("_", "-")
    if key == "perfect-matching":
        key = "matching"
    if key == "cycle-with-out-edges":
        key = "cycle-out"
    if key not in _FAMILIES:
        raise GraphParameterError(f"unknown family {family!r}; choose from {FAMILY_NAMES}")
    try:
        return _FAMILIES[key](params)
    except KeyError as exc:
        raise GraphParameterError(f"family {family!r} missing parameter {exc}") from None
