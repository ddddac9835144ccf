"""Isomorphism classes of subgraphs of a pattern graph.

A subgraph is an edge subset with its support as vertex set (no
isolated vertices).  Enumeration is exact: either a raw scan over all
2^e edge subsets, or a level BFS over orbits of edge subsets under
Aut(H) when the pattern is symmetric enough for that to pay off.
Both paths deduplicate to one representative per isomorphism class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from planted.canon import CanonicalForm, canonical_form, subset_orbit_key
from planted.graphs import Graph

DEFAULT_EDGE_CAP = 24
_RAW_SCAN_LIMIT = 13  # 2^13 masks; beyond this the orbit BFS wins


class EnumerationBudgetError(RuntimeError):
    """Pattern exceeds the configured enumeration cap."""


@dataclass(frozen=True)
class SubgraphClass:
    graph: Graph  # representative, relabeled onto its support
    canon: CanonicalForm
    rep_edges: frozenset[tuple[int, int]]  # one embedding inside the pattern

    @property
    def v(self) -> int:
        return self.graph.vertex_count

    @property
    def e(self) -> int:
        return self.graph.e


def _raw_classes(H: Graph) -> dict[CanonicalForm, frozenset]:
    edges = H.sorted_edges()
    e = len(edges)
    classes: dict[CanonicalForm, frozenset] = {}
    # invariant buckets avoid canonicalizing every mask twice over
    buckets: dict[tuple, list[tuple[frozenset, CanonicalForm]]] = {}
    for mask in range(1, 1 << e):
        subset = frozenset(edges[i] for i in range(e) if (mask >> i) & 1)
        sub = H.subgraph_of_edges(subset)
        inv = (sub.vertex_count, sub.e, tuple(sorted(sub.degree_sequence())))
        bucket = buckets.setdefault(inv, [])
        cf = canonical_form(sub)
        if all(cf != known for _, known in bucket):
            bucket.append((subset, cf))
            classes[cf] = subset
    return classes


def _orbit_bfs_classes(H: Graph) -> dict[CanonicalForm, frozenset]:
    edges = H.sorted_edges()
    e = len(edges)
    bits = {edge: 1 << i for i, edge in enumerate(edges)}

    def mask_edges(mask: int) -> frozenset:
        return frozenset(edges[i] for i in range(e) if (mask >> i) & 1)

    classes: dict[CanonicalForm, frozenset] = {}
    level: dict[bytes, int] = {}
    for edge in edges:
        key = subset_orbit_key(H, [edge])
        level.setdefault(key, bits[edge])
    while level:
        for mask in level.values():
            subset = mask_edges(mask)
            cf = canonical_form(H.subgraph_of_edges(subset))
            if cf not in classes:
                classes[cf] = subset
        nxt: dict[bytes, int] = {}
        seen_masks: set[int] = set()
        for mask in level.values():
            for i in range(e):
                bit = 1 << i
                if mask & bit:
                    continue
                child = mask | bit
                if child in seen_masks:
                    continue
                seen_masks.add(child)
                key = subset_orbit_key(H, mask_edges(child))
                if key not in nxt:
                    nxt[key] = child
        level = nxt
    return classes


@lru_cache(maxsize=256)
def _classes_cached(n: int, edge_tuple: tuple, cap: int) -> tuple[SubgraphClass, ...]:
    H = Graph(n, frozenset(edge_tuple))
    e = H.e
    if e > cap:
        raise EnumerationBudgetError(
            f"pattern has {e} edges, above the enumeration cap {cap}"
        )
    if e <= _RAW_SCAN_LIMIT or canonical_form(H).automorphism_order == 1:
        found = _raw_classes(H)
    else:
        found = _orbit_bfs_classes(H)
    out = [
        SubgraphClass(H.subgraph_of_edges(rep), cf, rep)
        for cf, rep in found.items()
    ]
    # stable order: by (e, v, canonical edge list)
    out.sort(key=lambda c: (c.e, c.v, c.canon.edges))
    return tuple(out)


def subgraph_classes(H: Graph, cap: int = DEFAULT_EDGE_CAP) -> tuple[SubgraphClass, ...]:
    """One representative per isomorphism class of nonempty subgraphs."""
    return _classes_cached(H.vertex_count, tuple(H.sorted_edges()), cap)


def enumerate_subgraphs(
    H: Graph, min_edges: int = 1, cap: int = DEFAULT_EDGE_CAP
) -> Iterator[tuple[Graph, CanonicalForm]]:
    """Stream (representative graph, canonical form) for every class of
    subgraphs J of H with e(J) >= min_edges."""
    if not (1 <= min_edges <= H.e):
        raise ValueError("min_edges must be between 1 and e(H)")
    for cls in subgraph_classes(H, cap=cap):
        if cls.e >= min_edges:
            yield cls.graph, cls.canon
