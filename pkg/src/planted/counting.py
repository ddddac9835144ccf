"""Copy counting and subgraph-isomorphism enumeration.

A "copy" of a pattern H inside a host is an edge subset of the host
whose graph is isomorphic to H; distinct copies are distinct edge
sets.  Embedding counts relate to copy counts through |Aut(H)|:
every copy is hit by exactly |Aut(H)| injective edge-preserving maps.

Hosts are held as bit-packed adjacency (one int per vertex), which is
what makes the Monte Carlo simulation loop affordable.
"""

from __future__ import annotations

import math
from typing import Iterator

from planted.canon import aut_order
from planted.graphs import Graph


def _require_edges(P: Graph, what: str):
    if P.e == 0:
        raise ValueError(f"{what} needs a pattern with at least one edge")


def _pattern_order(P: Graph) -> list[int]:
    """Vertex order for backtracking: greedy, most placed neighbors first."""
    deg = P.degree_sequence()
    adj = P.adjacency_bitsets()
    order: list[int] = []
    placed = 0
    remaining = set(range(P.vertex_count))
    while remaining:
        best = max(
            remaining,
            key=lambda v: (bin(adj[v] & placed).count("1"), deg[v], -v),
        )
        order.append(best)
        placed |= 1 << best
        remaining.remove(best)
    return order


def _iter_embeddings(P: Graph, n: int, host_adj: list[int]) -> Iterator[tuple[int, ...]]:
    """All injective edge-preserving maps from P into the host, as tuples
    indexed by pattern vertex.  Deterministic order."""
    vP = P.vertex_count
    if vP > n:
        return
    order = _pattern_order(P)
    padj = P.adjacency_bitsets()
    pdeg = P.degree_sequence()
    host_deg = [bin(m).count("1") for m in host_adj]
    full = (1 << n) - 1
    # for each position in the order, pattern neighbors already placed
    back_nbrs: list[list[int]] = []
    pos_of = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        back_nbrs.append(
            [u for u in range(vP) if (padj[v] >> u) & 1 and pos_of[u] < i]
        )
    assignment = [0] * vP
    used = 0

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if i == vP:
            yield tuple(assignment)
            return
        v = order[i]
        cand = full & ~used
        for u in back_nbrs[i]:
            cand &= host_adj[assignment[u]]
        need = pdeg[v]
        while cand:
            bit = cand & -cand
            cand ^= bit
            w = bit.bit_length() - 1
            if host_deg[w] < need:
                continue
            assignment[v] = w
            used |= bit
            yield from rec(i + 1)
            used ^= bit

    yield from rec(0)


def _iter_clique_combos(k: int, n: int, host_adj: list[int]) -> Iterator[tuple[int, ...]]:
    """Increasing k-tuples of pairwise-adjacent host vertices."""
    full = (1 << n) - 1
    combo = [0] * k

    def rec(depth: int, cand: int):
        if depth == k:
            yield tuple(combo)
            return
        m = cand
        while m:
            bit = m & -m
            m ^= bit
            w = bit.bit_length() - 1
            combo[depth] = w
            higher = full & ~((bit << 1) - 1)
            yield from rec(depth + 1, cand & host_adj[w] & higher)

    yield from rec(0, full)


def _is_clique(P: Graph) -> bool:
    return P.e == P.vertex_count * (P.vertex_count - 1) // 2 and P.vertex_count >= 2


def count_embeddings(P: Graph, host: Graph) -> int:
    _require_edges(P, "count_embeddings")
    adj = host.adjacency_bitsets()
    if _is_clique(P):
        combos = sum(1 for _ in _iter_clique_combos(P.vertex_count, host.vertex_count, adj))
        return combos * math.factorial(P.vertex_count)
    return sum(1 for _ in _iter_embeddings(P, host.vertex_count, adj))


def count_copies_in_complete(H: Graph, n: int) -> int:
    """M_H: copies of H in the complete graph K_n, as an exact integer.

    Equals the falling factorial (n)_{v(H)} over |Aut(H)|.  H should
    carry no isolated vertices if copies are read as edge sets.
    """
    if H.vertex_count > n:
        raise ValueError(f"pattern has {H.vertex_count} vertices but n = {n}")
    num = math.perm(n, H.vertex_count)
    a = aut_order(H)
    assert num % a == 0
    return num // a


def count_copies_in(J: Graph, H: Graph) -> int:
    """M_{J,H}: copies of J (as edge sets) inside H.  Exact."""
    Js = J.strip_isolated()
    if Js.e == 0:
        raise ValueError("count_copies_in needs a pattern with at least one edge")
    a = aut_order(Js)
    emb = count_embeddings(Js, H)
    assert emb % a == 0
    return emb // a


def enumerate_copies(H: Graph, host: Graph) -> Iterator[frozenset[tuple[int, int]]]:
    """Each copy of H in the host exactly once, as an edge set.
    Deterministic order for a fixed host."""
    Hs = H.strip_isolated()
    _require_edges(Hs, "enumerate_copies")
    adj = host.adjacency_bitsets()
    n = host.vertex_count
    pattern_edges = Hs.sorted_edges()
    if _is_clique(Hs):
        for combo in _iter_clique_combos(Hs.vertex_count, n, adj):
            yield frozenset(
                (combo[a], combo[b]) for a, b in pattern_edges
            )
        return
    seen: set[frozenset[tuple[int, int]]] = set()
    for emb in _iter_embeddings(Hs, n, adj):
        copy = frozenset(
            (emb[a], emb[b]) if emb[a] < emb[b] else (emb[b], emb[a])
            for a, b in pattern_edges
        )
        if copy not in seen:
            seen.add(copy)
            yield copy


def copy_statistics(H: Graph, n: int, host_adj: list[int]) -> tuple[int, dict[tuple[int, int], int]]:
    """(Z, per-edge copy counts) for copies of H in the host.

    Z is the number of copies; the dict maps each host edge that lies
    in at least one copy to the number of copies containing it.
    """
    Hs = H.strip_isolated()
    _require_edges(Hs, "copy_statistics")
    counts: dict[tuple[int, int], int] = {}
    pattern_edges = Hs.sorted_edges()
    if _is_clique(Hs):
        z = 0
        for combo in _iter_clique_combos(Hs.vertex_count, n, host_adj):
            z += 1
            for a, b in pattern_edges:
                x, y = combo[a], combo[b]
                key = (x, y) if x < y else (y, x)
                counts[key] = counts.get(key, 0) + 1
        return z, counts
    a = aut_order(Hs)
    emb_total = 0
    for emb in _iter_embeddings(Hs, n, host_adj):
        emb_total += 1
        for i, j in pattern_edges:
            x, y = emb[i], emb[j]
            key = (x, y) if x < y else (y, x)
            counts[key] = counts.get(key, 0) + 1
    assert emb_total % a == 0
    for key in counts:
        assert counts[key] % a == 0
        counts[key] //= a
    return emb_total // a, counts


def sample_copies(
    H: Graph, n: int, host_adj: list[int], rng, k: int
) -> list[frozenset[tuple[int, int]]]:
    """k independent uniform copies of H contained in the host (reservoir
    over the embedding stream; embeddings per copy are constant, so
    uniform embeddings give uniform copies)."""
    Hs = H.strip_isolated()
    _require_edges(Hs, "sample_copies")
    pattern_edges = Hs.sorted_edges()
    if _is_clique(Hs):
        stream = _iter_clique_combos(Hs.vertex_count, n, host_adj)
    else:
        stream = _iter_embeddings(Hs, n, host_adj)
    picks: list[tuple | None] = [None] * k
    seen = 0
    for emb in stream:
        seen += 1
        for slot in range(k):
            if rng.random() < 1.0 / seen:
                picks[slot] = emb
    out = []
    for emb in picks:
        if emb is None:
            raise ValueError("host contains no copy of the pattern")
        out.append(
            frozenset(
                (emb[a], emb[b]) if emb[a] < emb[b] else (emb[b], emb[a])
                for a, b in pattern_edges
            )
        )
    return out
