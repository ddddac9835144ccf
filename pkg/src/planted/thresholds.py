"""First-moment thresholds and the generalized expectation threshold.

For a subgraph J on v vertices with e edges and M_J copies in K_n, the
first moment threshold is p1m(J) = M_J^(-1/e).  psi_q(H) maximizes
p1m(J) over subgraph classes J of H holding at least a q fraction of
H's edges; alpha_q(H) minimizes v(J)/e(J) over the same family and is
the dense-regime exponent of psi_q.

Copy counts are exact big integers.  Maxima and ties are decided by
exact integer cross-powers (M_A^{e_B} vs M_B^{e_A}), never by floats;
floats only narrow the shortlist and appear in reports.

Two exact engines compute psi_q:

* enumeration over isomorphism classes of edge subsets (default cap
  e(H) <= 24);
* a profile engine for patterns whose components are all complete
  (disjoint unions of cliques): for every vertex support, completing
  the induced edges can only raise p1m there, because |Aut| shrinks at
  most to the support's factorial product while e grows, so induced
  complete profiles dominate.  This covers the clique-union examples
  whose edge counts are far beyond any subset enumeration.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from planted.canon import CanonicalForm, canonical_form
from planted.graphs import Graph, disjoint_cliques
from planted.subgraphs import (
    DEFAULT_EDGE_CAP,
    EnumerationBudgetError,
    subgraph_classes,
)

GENERIC_ALPHA_VERTEX_CAP = 24


@dataclass(frozen=True)
class Witness:
    """A subgraph class achieving a threshold optimum."""

    graph: Graph
    canon: CanonicalForm
    copies: int  # exact count of copies in K_n

    @property
    def v(self) -> int:
        return self.graph.vertex_count

    @property
    def e(self) -> int:
        return self.graph.e


@dataclass(frozen=True)
class PsiValue:
    value: float  # may underflow to 0.0 for huge n; log_value is authoritative
    log_value: float  # ln(psi) <= 0
    witness: Witness

    @property
    def lam(self) -> float:
        """lambda = log(1/psi)."""
        return -self.log_value


def copies_in_complete(n: int, v: int, aut: int) -> int:
    num = math.perm(n, v)
    assert num % aut == 0
    return num // aut


def floor_edges(q: Fraction, e_total: int) -> int:
    """Smallest integer edge count meeting "at least a q fraction"."""
    return max(1, math.ceil(q * e_total))


def _p1m_less(Ma: int, ea: int, Mb: int, eb: int) -> bool:
    """Exact test: p1m(A) < p1m(B), i.e. M_A^{1/e_A} > M_B^{1/e_B}."""
    return Ma**eb > Mb**ea


def _p1m_equal(Ma: int, ea: int, Mb: int, eb: int) -> bool:
    return Ma**eb == Mb**ea


@dataclass(frozen=True)
class P1mValue:
    value: float
    log_value: float
    copies: int
    edges: int


def p1m(J: Graph, n: int) -> P1mValue:
    """First moment threshold M_J^(-1/e(J)) with its exact log data."""
    Js = J.strip_isolated()
    if Js.e == 0:
        raise ValueError("p1m needs a pattern with at least one edge")
    if Js.vertex_count > n:
        raise ValueError("pattern does not fit in K_n")
    M = copies_in_complete(n, Js.vertex_count, canonical_form(Js).automorphism_order)
    log_value = -math.log(M) / Js.e
    return P1mValue(math.exp(log_value), log_value, M, Js.e)


def _clique_component_sizes(H: Graph) -> list[int] | None:
    """Component sizes when every component is complete, else None.
    Size-1 components (isolated vertices) are dropped."""
    if not H.is_clique_union():
        return None
    return sorted(
        (len(c) for c in H.components() if len(c) >= 2), reverse=True
    )


@lru_cache(maxsize=128)
def _partial_partitions(k: int) -> tuple[tuple[int, ...], ...]:
    """Multisets of integers >= 2 with sum <= k, sorted descending:
    the ways to place disjoint cliques inside one K_k."""
    out: set[tuple[int, ...]] = {()}
    stack = [((), k)]
    while stack:
        prefix, room = stack.pop()
        hi = prefix[-1] if prefix else room
        for t in range(2, min(room, hi) + 1):
            child = prefix + (t,)
            key = tuple(sorted(child, reverse=True))
            if key not in out:
                out.add(key)
            stack.append((child, room - t))
    return tuple(sorted(out))


@lru_cache(maxsize=128)
def _clique_packings(sizes: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Every multiset of clique sizes placeable disjointly into parts of
    the given sizes, one tuple (sorted descending) per multiset."""
    out: set[tuple[int, ...]] = set()
    per_part = [_partial_partitions(k) for k in sizes]
    for combo in itertools.product(*per_part):
        flat = tuple(sorted((t for grp in combo for t in grp), reverse=True))
        out.add(flat)
    return tuple(sorted(out, reverse=True))


def _packing_stats(parts: tuple[int, ...]) -> tuple[int, int, int]:
    """(v, e, |Aut|) of a disjoint union of cliques with the given sizes."""
    v = sum(parts)
    e = sum(t * (t - 1) // 2 for t in parts)
    aut = 1
    for t in parts:
        aut *= math.factorial(t)
    for _, grp in itertools.groupby(parts):
        aut *= math.factorial(len(list(grp)))
    return v, e, aut


def _candidates_clique_union(H: Graph) -> list[tuple[int, int, int, tuple]]:
    """(v, e, aut, clique sizes) for every candidate subgraph class of a
    disjoint union of cliques.

    This candidate set is provably sufficient for maximizing p1m: for
    any subgraph J, replacing every connected component by the complete
    graph on its vertices (keeping the component partition) stays
    inside H, weakly increases the edge count, and weakly increases
    |Aut| (each component's group grows to the full symmetric group,
    and the component-permutation factor can only coarsen), so p1m
    only goes up.  The maximum is therefore attained by a disjoint
    union of cliques packed into the parts.
    """
    sizes = _clique_component_sizes(H)
    assert sizes is not None
    out = []
    for parts in _clique_packings(tuple(sizes)):
        if not parts:
            continue
        v, e, aut = _packing_stats(parts)
        out.append((v, e, aut, parts))
    return out


def _argmax_p1m(cands: list[tuple[int, int, object]]) -> list[object]:
    """cands: (M, e, payload).  Returns payloads of all exact maximizers
    of p1m = M^(-1/e).  Floats narrow the shortlist; integers decide."""
    lams = [math.log(M) / e for M, e, _ in cands]
    lo = min(lams)
    window = 1e-9 * max(1.0, abs(lo))
    shortlist = [c for c, lam in zip(cands, lams) if lam <= lo + window]
    best = [shortlist[0]]
    for cand in shortlist[1:]:
        M, e, _ = cand
        Mb, eb, _ = best[0]
        if _p1m_less(Mb, eb, M, e):
            best = [cand]
        elif _p1m_equal(Mb, eb, M, e):
            best.append(cand)
    return [payload for _, _, payload in best]


def _psi_from_witness(n: int, graph: Graph, canon: CanonicalForm) -> PsiValue:
    M = copies_in_complete(n, graph.vertex_count, canon.automorphism_order)
    log_value = -math.log(M) / graph.e
    return PsiValue(math.exp(log_value), log_value, Witness(graph, canon, M))


def psi_q(
    H: Graph, n: int, q: Fraction | float, cap: int = DEFAULT_EDGE_CAP
) -> PsiValue:
    """Generalized expectation threshold at edge fraction q, with witness.

    Exact over isomorphism classes; witness ties broken by the
    lexicographically smallest canonical form.
    """
    q = Fraction(q).limit_denominator(10**12) if isinstance(q, float) else Fraction(q)
    if not (0 <= q <= 1):
        raise ValueError("q must lie in [0, 1]")
    Hs = H.strip_isolated()
    if Hs.e == 0:
        raise ValueError("psi_q needs a pattern with at least one edge")
    if Hs.vertex_count > n:
        raise ValueError("pattern does not fit in K_n")
    floor = floor_edges(q, Hs.e)

    sizes = _clique_component_sizes(Hs)
    if sizes is not None:
        cands = []
        for v, e, aut, parts in _candidates_clique_union(Hs):
            if e >= floor:
                M = copies_in_complete(n, v, aut)
                cands.append((M, e, parts))
        winners = _argmax_p1m(cands)
        graphs = [disjoint_cliques(list(parts)) for parts in winners]
        pairs = [(g, canonical_form(g)) for g in graphs]
    else:
        cands = []
        for cls in subgraph_classes(Hs, cap=cap):
            if cls.e >= floor:
                M = copies_in_complete(n, cls.v, cls.canon.automorphism_order)
                cands.append((M, cls.e, (cls.graph, cls.canon)))
        winners = _argmax_p1m(cands)
        pairs = list(winners)

    graph, canon = min(pairs, key=lambda p: (p[1].vertex_count, p[1].edges))
    return _psi_from_witness(n, graph, canon)


def expectation_threshold(H: Graph, n: int, cap: int = DEFAULT_EDGE_CAP) -> PsiValue:
    """Kahn-Kalai expectation threshold p_E = psi_0."""
    return psi_q(H, n, Fraction(0), cap=cap)


def lambda_q(
    H: Graph, n: int, q: Fraction | float, cap: int = DEFAULT_EDGE_CAP
) -> float:
    """Log-scale threshold log(1/psi_q)."""
    return psi_q(H, n, q, cap=cap).lam


def dense_approx_p1m(H: Graph, n: int) -> float:
    """Dense-regime approximation n^(-v(H)/e(H)) of the first moment
    threshold (exact up to the |Aut| and falling-factorial factors)."""
    Hs = H.strip_isolated()
    if Hs.e == 0:
        raise ValueError("dense_approx_p1m needs at least one edge")
    return math.exp(-Fraction(Hs.vertex_count, Hs.e) * math.log(n))


def _alpha_supports_generic(H: Graph, floor: int):
    """Yield (v, e, support_mask) over induced supports with e >= floor."""
    nv = H.vertex_count
    edges = H.sorted_edges()
    if nv <= 16:
        edge_masks = [(1 << u) | (1 << v) for u, v in edges]
        for mask in range(1, 1 << nv):
            e = 0
            for em in edge_masks:
                if mask & em == em:
                    e += 1
            if e >= floor:
                yield bin(mask).count("1"), e, mask
        return
    if nv > GENERIC_ALPHA_VERTEX_CAP:
        raise EnumerationBudgetError(
            f"alpha search needs v(H) <= {GENERIC_ALPHA_VERTEX_CAP} for "
            f"general patterns; got {nv}"
        )
    import numpy as np

    chunk = 1 << 20
    total = 1 << nv
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        e_counts = np.zeros(idx.shape, dtype=np.uint16)
        for u, v in edges:
            e_counts += ((idx >> np.uint64(u)) & 1).astype(np.uint16) * (
                (idx >> np.uint64(v)) & 1
            ).astype(np.uint16)
        v_counts = np.zeros(idx.shape, dtype=np.uint8)
        for b in range(nv):
            v_counts += ((idx >> np.uint64(b)) & 1).astype(np.uint8)
        ok = e_counts >= floor
        for mask, vv, ee in zip(idx[ok].tolist(), v_counts[ok].tolist(), e_counts[ok].tolist()):
            yield int(vv), int(ee), int(mask)


def alpha_q(
    H: Graph, q: Fraction | float
) -> tuple[Fraction, list[int]]:
    """Exact minimum of v(J)/e(J) over subgraphs with at least a q
    fraction of the edges, with a minimizing vertex set of H.

    Restricting to induced subgraphs is lossless: for a fixed support,
    taking every induced edge raises e(J) (so feasibility can only
    improve) and lowers v/e.
    """
    q = Fraction(q).limit_denominator(10**12) if isinstance(q, float) else Fraction(q)
    if not (0 <= q <= 1):
        raise ValueError("q must lie in [0, 1]")
    Hs = H.strip_isolated()
    if Hs.e == 0:
        raise ValueError("alpha_q needs a pattern with at least one edge")
    floor = floor_edges(q, Hs.e)

    sizes = _clique_component_sizes(Hs)
    if sizes is not None:
        comps = sorted(
            (c for c in Hs.components() if len(c) >= 2),
            key=len,
            reverse=True,
        )
        best: tuple[Fraction, tuple[int, ...]] | None = None
        for v, e, _aut, parts in _candidates_clique_union(Hs):
            if e < floor:
                continue
            ratio = Fraction(v, e)
            if best is None or ratio < best[0] or (ratio == best[0] and parts > best[1]):
                best = (ratio, parts)
        assert best is not None
        ratio, parts = best
        support: list[int] = []
        # assign part sizes to concrete same-size components in order
        used = [False] * len(comps)
        for t in parts:
            for i, comp in enumerate(comps):
                if not used[i] and len(comp) >= t:
                    used[i] = True
                    support.extend(comp[:t])
                    break
        return ratio, sorted(support)

    best_ratio: Fraction | None = None
    best_masks: list[int] = []
    best_float = math.inf
    for v, e, mask in _alpha_supports_generic(Hs, floor):
        f = v / e
        if f > best_float + 1e-9:
            continue
        ratio = Fraction(v, e)
        if best_ratio is None or ratio < best_ratio:
            best_ratio = ratio
            best_masks = [mask]
            best_float = f
        elif ratio == best_ratio:
            best_masks.append(mask)
    assert best_ratio is not None
    support = sorted(
        min(
            (sorted(b for b in range(Hs.vertex_count) if (mask >> b) & 1)
             for mask in best_masks),
        )
    )
    return best_ratio, support


@dataclass(frozen=True)
class ThresholdQuery:
    pattern: Graph
    n: int
    q_grid: tuple[Fraction, ...]
    cap: int = DEFAULT_EDGE_CAP

    def __post_init__(self):
        if self.pattern.strip_isolated().vertex_count > self.n:
            raise ValueError("pattern does not fit in K_n")
        if any(not (0 <= q <= 1) for q in self.q_grid):
            raise ValueError("q grid must lie in [0, 1]")


@dataclass(frozen=True)
class CurvePoint:
    q: Fraction
    floor: int
    psi: PsiValue | None  # None when only the alpha surrogate is available
    alpha: Fraction
    alpha_witness: list[int]
    log_psi_lower: float  # -alpha * log n, the dense surrogate


@dataclass(frozen=True)
class ThresholdCurve:
    pattern: Graph
    n: int
    p1m_pattern: P1mValue
    expectation: PsiValue | None
    points: list[CurvePoint]
    psi_available: bool

    def as_dict(self) -> dict:
        def fr(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        points = []
        for pt in self.points:
            entry = {
                "q": fr(pt.q),
                "min_edges": pt.floor,
                "alpha": fr(pt.alpha),
                "alpha_witness_vertices": pt.alpha_witness,
                "log_psi_lower": pt.log_psi_lower,
            }
            if pt.psi is not None:
                entry["psi"] = pt.psi.value
                entry["log_psi"] = pt.psi.log_value
                entry["witness_edges"] = [list(e) for e in pt.psi.witness.canon.edges]
                entry["witness_vertex_count"] = pt.psi.witness.v
                entry["witness_copies"] = str(pt.psi.witness.copies)
            else:
                entry["psi"] = None
                entry["log_psi"] = None
                entry["witness_edges"] = []
            points.append(entry)
        return {
            "n": self.n,
            "p1m": self.p1m_pattern.value,
            "log_p1m": self.p1m_pattern.log_value,
            "p_E": self.expectation.value if self.expectation else None,
            "psi_available": self.psi_available,
            "points": points,
        }


def threshold_curve(query: ThresholdQuery) -> ThresholdCurve:
    """psi_q, alpha_q and witnesses across the grid, plus p1m(H), p_E(H).

    When the pattern exceeds the enumeration cap (and is not a clique
    union), psi values are omitted and only the alpha surrogate is
    reported.
    """
    H = query.pattern.strip_isolated()
    n = query.n
    base = p1m(H, n)
    psi_ok = True
    try:
        expectation = expectation_threshold(H, n, cap=query.cap)
    except EnumerationBudgetError:
        psi_ok = False
        expectation = None
    points = []
    logn = math.log(n)
    prev: PsiValue | None = None
    prev_alpha: Fraction | None = None
    for q in sorted(query.q_grid):
        alpha, alpha_w = alpha_q(H, q)
        psi_val = None
        if psi_ok:
            psi_val = psi_q(H, n, q, cap=query.cap)
            if prev is not None:
                assert psi_val.log_value <= prev.log_value + 1e-12, "psi must be non-increasing in q"
            assert psi_val.log_value >= -alpha * logn - 1e-9, "psi >= n^-alpha"
            prev = psi_val
        if prev_alpha is not None:
            assert alpha >= prev_alpha
        prev_alpha = alpha
        points.append(
            CurvePoint(q, floor_edges(q, H.e), psi_val, alpha, alpha_w, -float(alpha) * logn)
        )
    return ThresholdCurve(H, n, base, expectation, points, psi_ok)
