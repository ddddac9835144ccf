"""Exact canonical labeling and automorphism group orders.

Backtracking over degree-refined orderings (individualization +
equitable refinement), with pruning by automorphisms discovered during
the search.  Group orders come from a separate orbit-stabilizer chain
whose membership tests are color-preserving isomorphism searches, so
the two computations cross-check each other.

Pairs may carry a type in {0, 1, 2}: 0 = non-edge, 1 = edge, 2 =
marked edge.  Type 2 is used to compute orbit keys of edge subsets
under the automorphism group of the ambient graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from planted.graphs import Graph

_AUTO = 1
_NORMAL = 0


def _build(n: int, typed_edges) -> tuple[list[list[int]], list[list[tuple[int, int]]]]:
    """Pair-type matrix and typed adjacency lists from (u, v, type) triples."""
    mat = [[0] * n for _ in range(n)]
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v, t in typed_edges:
        mat[u][v] = t
        mat[v][u] = t
        adj[u].append((v, t))
        adj[v].append((u, t))
    return mat, adj


def _refine_joint(adjs, colors_list):
    """Equitable refinement of one or more colorings, with ids assigned
    jointly from sorted signatures so the result is comparable across
    graphs.  Returns the refined colorings, or None when the color
    histograms diverge (joint use only)."""
    k = len(adjs)
    while True:
        sigs_list = []
        for g in range(k):
            colors = colors_list[g]
            adj = adjs[g]
            sigs = [
                (colors[v], tuple(sorted((t, colors[u]) for u, t in adj[v])))
                for v in range(len(colors))
            ]
            sigs_list.append(sigs)
        universe = sorted({s for sigs in sigs_list for s in sigs})
        rank = {s: i for i, s in enumerate(universe)}
        new_list = [[rank[s] for s in sigs] for sigs in sigs_list]
        if k > 1:
            hist0 = sorted(new_list[0])
            if any(sorted(nl) != hist0 for nl in new_list[1:]):
                return None
        done = all(
            len(set(new)) == len(set(old))
            for new, old in zip(new_list, colors_list)
        )
        colors_list = new_list
        if done:
            return colors_list


def _cells(colors):
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def _individualize(colors, w):
    out = [2 * c for c in colors]
    out[w] = 2 * colors[w] + 1
    return out


class _CanonSearch:
    """Minimum leaf encoding over the individualization-refinement tree."""

    def __init__(self, n, mat, adj, init_colors):
        self.n = n
        self.mat = mat
        self.adj = adj
        self.init_colors = list(init_colors)
        self.first_enc: bytes | None = None
        self.first_perm: list[int] | None = None
        self.best_enc: bytes | None = None
        self.best_perm: list[int] | None = None
        self.generators: list[tuple[int, ...]] = []

    def run(self) -> tuple[bytes, list[int]]:
        (colors,) = _refine_joint([self.adj], [self.init_colors])
        self._node(colors, (), True)
        assert self.best_enc is not None and self.best_perm is not None
        return self.best_enc, self.best_perm

    def _encode(self, perm) -> bytes:
        mat = self.mat
        out = bytearray()
        for i in range(self.n):
            vi = perm[i]
            row = mat[vi]
            for j in range(i + 1, self.n):
                out.append(row[perm[j]])
        return bytes(out)

    def _perm_from(self, colors) -> list[int]:
        return sorted(range(self.n), key=lambda v: colors[v])

    def _register_auto(self, perm_a, perm_b) -> bool:
        gamma = [0] * self.n
        for k in range(self.n):
            gamma[perm_a[k]] = perm_b[k]
        mat = self.mat
        for u in range(self.n):
            gu = gamma[u]
            for v in range(u + 1, self.n):
                if mat[u][v] != mat[gu][gamma[v]]:
                    return False
        g = tuple(gamma)
        if g not in self.generators:
            self.generators.append(g)
        return True

    def _node(self, colors, path, on_first_path) -> int:
        if len(set(colors)) == self.n:
            perm = self._perm_from(colors)
            enc = self._encode(perm)
            if self.first_enc is None:
                self.first_enc = enc
                self.first_perm = perm
                self.best_enc = enc
                self.best_perm = perm
                return _NORMAL
            if enc == self.first_enc:
                if self._register_auto(self.first_perm, perm):
                    return _AUTO
            if self.best_enc is None or enc < self.best_enc:
                self.best_enc = enc
                self.best_perm = perm
            elif enc == self.best_enc:
                self._register_auto(self.best_perm, perm)
            return _NORMAL

        cells = _cells(colors)
        target = min(
            (cell for cell in cells.values() if len(cell) > 1),
            key=lambda cell: (len(cell), colors[cell[0]]),
        )
        tried: list[int] = []
        first_candidate = True
        for w in target:
            if self._skippable(w, path, tried):
                tried.append(w)
                continue
            child = _refine_joint([self.adj], [_individualize(colors, w)])[0]
            status = self._node(
                child, path + (w,), on_first_path and first_candidate
            )
            tried.append(w)
            first_candidate = False
            if status == _AUTO and not on_first_path:
                return _AUTO
        return _NORMAL

    def _skippable(self, w, path, tried) -> bool:
        if not tried:
            return False
        for g in self.generators[:64]:
            if g[w] in tried and all(g[x] == x for x in path):
                return True
        return False


def _iso_search(matA, adjA, matB, adjB, colorsA, colorsB) -> bool:
    refined = _refine_joint([adjA, adjB], [colorsA, colorsB])
    if refined is None:
        return False
    cA, cB = refined
    n = len(cA)
    if len(set(cA)) == n:
        pos = {}
        for v in range(n):
            pos[cB[v]] = v
        phi = [pos[cA[v]] for v in range(n)]
        for u in range(n):
            pu = phi[u]
            for v in range(u + 1, n):
                if matA[u][v] != matB[pu][phi[v]]:
                    return False
        return True
    cells = _cells(cA)
    color, cell = min(
        ((c, cell) for c, cell in cells.items() if len(cell) > 1),
        key=lambda item: (len(item[1]), item[0]),
    )
    a = cell[0]
    b_cell = [v for v in range(n) if cB[v] == color]
    indA = _individualize(cA, a)
    for b in b_cell:
        if _iso_search(matA, adjA, matB, adjB, indA, _individualize(cB, b)):
            return True
    return False


def _pinned_auto_exists(n, mat, adj, pins) -> bool:
    """Is there an automorphism g with g(a) = b for every (a, b) in pins?"""
    colorsA = [0] * n
    colorsB = [0] * n
    for i, (a, b) in enumerate(pins):
        colorsA[a] = i + 1
        colorsB[b] = i + 1
    return _iso_search(mat, adj, mat, adj, colorsA, colorsB)


def _aut_order(n, mat, adj) -> int:
    """Exact |Aut| via an orbit-stabilizer chain; membership tests are
    pinned isomorphism searches, so no search-tree bookkeeping is needed."""
    order = 1
    pins: list[tuple[int, int]] = []
    colors = [0] * n
    while True:
        work = list(colors)
        for i, (a, _) in enumerate(pins):
            work[a] = i + 1
        (refined,) = _refine_joint([adj], [work])
        cells = _cells(refined)
        target = None
        for v in range(n):
            cell = cells[refined[v]]
            if len(cell) > 1:
                target = (v, cell)
                break
        if target is None:
            return order
        v, cell = target
        orbit = 1
        for w in cell:
            if w == v:
                continue
            if _pinned_auto_exists(n, mat, adj, pins + [(v, w)]):
                orbit += 1
        order *= orbit
        pins.append((v, v))


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Canonical representative of an isomorphism class.

    Two graphs have equal CanonicalForm iff they are isomorphic; the
    edge list is the lexicographically smallest adjacency encoding over
    the refinement tree's leaf orderings.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    automorphism_order: int

    def to_graph(self) -> Graph:
        return Graph(self.vertex_count, frozenset(self.edges))

    def as_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edges": [list(e) for e in self.edges],
            "automorphism_order": self.automorphism_order,
        }


def _graph_key(G: Graph):
    return (G.vertex_count, tuple(G.sorted_edges()))


@lru_cache(maxsize=65536)
def _canonical_form_cached(n: int, edges: tuple) -> CanonicalForm:
    mat, adj = _build(n, [(u, v, 1) for u, v in edges])
    if n == 0:
        return CanonicalForm(0, (), 1)
    enc, perm = _CanonSearch(n, mat, adj, [0] * n).run()
    canon_edges = []
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            if enc[idx]:
                canon_edges.append((i, j))
            idx += 1
    return CanonicalForm(n, tuple(canon_edges), _aut_order(n, mat, adj))


def canonical_form(G: Graph) -> CanonicalForm:
    return _canonical_form_cached(*_graph_key(G))


def aut_order(G: Graph) -> int:
    return canonical_form(G).automorphism_order


def are_isomorphic(G: Graph, H: Graph) -> bool:
    if G.vertex_count != H.vertex_count or G.e != H.e:
        return False
    return canonical_form(G) == canonical_form(H)


def subset_orbit_key(G: Graph, edge_subset) -> bytes:
    """Canonical key of (G, S): equal keys iff some automorphism of G
    maps one edge subset onto the other."""
    subset = {tuple(sorted(e)) for e in edge_subset}
    typed = [(u, v, 2 if (u, v) in subset else 1) for u, v in G.edges]
    n = G.vertex_count
    if n == 0:
        return b""
    mat, adj = _build(n, typed)
    enc, _ = _CanonSearch(n, mat, adj, [0] * n).run()
    return enc
