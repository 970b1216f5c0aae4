"""Exact counting of semi-induced pattern copies and host statistics.

All counts are exact Python integers, so there is no overflow to manage even
at n = 10^4 with 6-vertex patterns.  The closed-form fast paths are verified
against the generic backtracking counter by the test suite.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .graphs import (
    HostGraph,
    PartedHost,
    PatternGraph,
    UnsupportedSizeError,
    canonical_form,
    lex_pairs,
)


@dataclass(frozen=True)
class DegreeStats:
    """Red-degree statistics of a host.

    t counts 3-vertex sets spanning exactly two red edges; s_open counts
    3-red-edge paths whose endpoints form a blue pair.
    """

    degrees: tuple[int, ...]
    m: int
    t: int
    s_open: int

    @property
    def n(self) -> int:
        return len(self.degrees)


def degree_stats(g: HostGraph) -> DegreeStats:
    n, masks = g.n, g.masks
    degs = tuple(m.bit_count() for m in masks)
    m_edges = sum(degs) // 2
    tri3 = 0  # sum of codegrees over red edges = 3 * (#red triangles)
    p4_mid = 0  # sum over red edges of (d_u - 1)(d_v - 1)
    c4_pairs = 0  # sum over all pairs of C(codegree, 2)
    for u in range(n):
        mu = masks[u]
        du = degs[u]
        for v in range(u + 1, n):
            codeg = (mu & masks[v]).bit_count()
            c4_pairs += codeg * (codeg - 1) // 2
            if mu >> v & 1:
                tri3 += codeg
                p4_mid += (du - 1) * (degs[v] - 1)
    cherries = sum(d * (d - 1) // 2 for d in degs)
    t = cherries - tri3  # tri3 == 3 * triangles
    paths3 = p4_mid - tri3  # 3-edge path subgraph copies
    red_c4 = c4_pairs // 2
    s_open = paths3 - 4 * red_c4  # remove paths whose endpoints are red
    return DegreeStats(degs, m_edges, t, s_open)


def sum_blue_degree_products(g: HostGraph, power: int = 1) -> int:
    """Sum of d_u^power * d_v^power over blue pairs uv."""
    degs = g.degrees()
    dp = [d**power for d in degs]
    total = (sum(dp) ** 2 - sum(x * x for x in dp)) // 2
    red_part = 0
    for u in range(g.n):
        m = g.masks[u] >> (u + 1)
        v = u + 1
        while m:
            if m & 1:
                red_part += dp[u] * dp[v]
            m >>= 1
            v += 1
    return total - red_part


def count_injections(h: PatternGraph, g: HostGraph) -> int:
    """Number of injections respecting red->red and blue->blue on constrained
    pairs; free pairs are unconstrained.  Returns 0 when h has more vertices
    than g."""
    if h.h > g.n:
        return 0
    n = g.n
    full = (1 << n) - 1
    red = g.masks
    blue = tuple(full ^ m ^ (1 << v) for v, m in enumerate(red))

    neighbors: list[set[int]] = [set() for _ in range(h.h)]
    for i, j in h.red_pairs | h.blue_pairs:
        neighbors[i].add(j)
        neighbors[j].add(i)

    # most-constrained-first vertex order
    order: list[int] = []
    placed: set[int] = set()
    remaining = set(range(h.h))
    while remaining:
        best = max(
            remaining,
            key=lambda v: (len(neighbors[v] & placed), len(neighbors[v]), -v),
        )
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    pos_of = {v: i for i, v in enumerate(order)}
    cons: list[tuple[tuple[int, bool], ...]] = []
    for idx, v in enumerate(order):
        row = []
        for u in neighbors[v]:
            if pos_of[u] < idx:
                pair = (min(u, v), max(u, v))
                row.append((pos_of[u], pair in h.red_pairs))
        cons.append(tuple(row))

    # positions from tail_start on carry no constraints at all
    tail_start = h.h
    while tail_start > 0 and not neighbors[order[tail_start - 1]]:
        tail_start -= 1

    hh = h.h
    assign = [0] * hh

    def rec(pos: int, used: int) -> int:
        if pos == tail_start:
            avail = n - pos
            out = 1
            for k in range(hh - pos):
                out *= avail - k
            return out
        cands = full & ~used
        for ep, isred in cons[pos]:
            cands &= red[assign[ep]] if isred else blue[assign[ep]]
        if pos == hh - 1:
            return cands.bit_count()
        total = 0
        while cands:
            low = cands & -cands
            v = low.bit_length() - 1
            cands ^= low
            assign[pos] = v
            total += rec(pos + 1, used | low)
        return total

    return rec(0, 0)


def count_ap4_fast(g: HostGraph) -> int:
    """Labeled alternating-3-path count via degree statistics."""
    st = degree_stats(g)
    return 2 * (sum_blue_degree_products(g) - st.t)


def count_ac4_fast(g: HostGraph) -> int:
    """Labeled alternating-4-cycle count: 2 * (sum_blue d_u d_v - t - s)."""
    st = degree_stats(g)
    return 2 * (sum_blue_degree_products(g) - st.t - st.s_open)


def _falling(x: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= x - i
        if out == 0:
            return 0
    return out


def count_star_fast(g: HostGraph, a: int, b: int) -> int:
    """Labeled stars with a red and b blue leaves: sum_v (d_v)_a (n-1-d_v)_b."""
    if a + b + 1 > g.n:
        return 0
    n = g.n
    return sum(_falling(d, a) * _falling(n - 1 - d, b) for d in g.degrees())


def ds_upper_bound(g: HostGraph, s: int) -> int:
    """2 * sum over blue pairs of d_u^s d_v^s; an upper bound on the labeled
    alternating double-star count with s arms per center."""
    if s < 1:
        raise ValueError("arm count must be at least 1")
    return 2 * sum_blue_degree_products(g, power=s)


@dataclass(frozen=True)
class InducedProfile:
    """Counts of k-subsets of a host by the isomorphism class they induce."""

    k: int
    counts: dict

    def total(self) -> int:
        return sum(self.counts.values())


@lru_cache(maxsize=None)
def _mask_class_table(k: int) -> tuple[bytes, ...]:
    prs = lex_pairs(k)
    table = []
    for mask in range(1 << len(prs)):
        pairs = [prs[t] for t in range(len(prs)) if mask >> t & 1]
        table.append(canonical_form(HostGraph.from_red_pairs(k, pairs)))
    return tuple(table)


_PROFILE_BUDGET = 8_000_000


def induced_profile(g: HostGraph, k: int) -> InducedProfile:
    """Exact induced k-profile; k <= 5 and C(n, k) capped at desk scale."""
    if not 1 <= k <= 5:
        raise UnsupportedSizeError("profiles support 1 <= k <= 5")
    if k > g.n:
        raise ValueError("k exceeds host size")
    if comb(g.n, k) > _PROFILE_BUDGET:
        raise UnsupportedSizeError(
            f"C({g.n},{k}) subsets exceed the profile budget"
        )
    n, masks = g.n, g.masks
    raw: Counter = Counter()
    if k == 1:
        raw[0] = n
    elif k == 2:
        for a in range(n):
            for b in range(a + 1, n):
                raw[masks[a] >> b & 1] += 1
    elif k == 3:
        for a in range(n):
            ma = masks[a]
            for b in range(a + 1, n):
                m2 = ma >> b & 1
                mb = masks[b]
                for c in range(b + 1, n):
                    raw[m2 | (ma >> c & 1) << 1 | (mb >> c & 1) << 2] += 1
    elif k == 4:
        for a in range(n):
            ma = masks[a]
            for b in range(a + 1, n):
                m2 = ma >> b & 1
                mb = masks[b]
                for c in range(b + 1, n):
                    m3 = m2 | (ma >> c & 1) << 1 | (mb >> c & 1) << 3
                    mc = masks[c]
                    for d in range(c + 1, n):
                        raw[
                            m3
                            | (ma >> d & 1) << 2
                            | (mb >> d & 1) << 4
                            | (mc >> d & 1) << 5
                        ] += 1
    else:
        for a in range(n):
            ma = masks[a]
            for b in range(a + 1, n):
                m2 = ma >> b & 1
                mb = masks[b]
                for c in range(b + 1, n):
                    m3 = m2 | (ma >> c & 1) << 1 | (mb >> c & 1) << 4
                    mc = masks[c]
                    for d in range(c + 1, n):
                        m4 = (
                            m3
                            | (ma >> d & 1) << 2
                            | (mb >> d & 1) << 5
                            | (mc >> d & 1) << 7
                        )
                        md = masks[d]
                        for e in range(d + 1, n):
                            raw[
                                m4
                                | (ma >> e & 1) << 3
                                | (mb >> e & 1) << 6
                                | (mc >> e & 1) << 8
                                | (md >> e & 1) << 9
                            ] += 1
    table = _mask_class_table(k)
    counts: dict[bytes, int] = {}
    for mask, cnt in raw.items():
        code = table[mask]
        counts[code] = counts.get(code, 0) + cnt
    return InducedProfile(k, counts)


def normalized_density(count: int, n: int, h: int) -> float:
    """count / n^h, the scale on which profile values live."""
    if n < h:
        raise ValueError("host smaller than pattern")
    return count / n**h


def blowup_injections(h: PatternGraph, parts: PartedHost) -> int:
    """Exact injection count into a parted host, in O(parts^h) time.

    Works for any pattern and any host size, since vertices inside a part are
    interchangeable."""
    p = len(parts.sizes)
    sizes = parts.sizes
    by_vertex: list[list[tuple[int, bool]]] = [[] for _ in range(h.h)]
    for i, j in sorted(h.red_pairs):
        by_vertex[j].append((i, True))
    for i, j in sorted(h.blue_pairs):
        by_vertex[j].append((i, False))

    def pair_red(pi: int, pj: int) -> bool:
        return parts.internal_red[pi] if pi == pj else parts.cross_red[pi][pj]

    assign = [0] * h.h
    used = [0] * p
    total = 0

    def rec(v: int):
        nonlocal total
        if v == h.h:
            mult = 1
            for pi in range(p):
                mult *= _falling(sizes[pi], used[pi])
            total += mult
            return
        for pi in range(p):
            if used[pi] >= sizes[pi]:
                continue
            ok = True
            for u, isred in by_vertex[v]:
                if pair_red(assign[u], pi) != isred:
                    ok = False
                    break
            if ok:
                assign[v] = pi
                used[pi] += 1
                rec(v + 1)
                used[pi] -= 1
        return

    rec(0)
    return total


# ---------------------------------------------------------------------------
# built-in patterns


def ap4_pattern() -> PatternGraph:
    """Alternating 3-edge path: red, blue, red."""
    return PatternGraph.of(4, red=[(0, 1), (2, 3)], blue=[(1, 2)])


def ac4_pattern() -> PatternGraph:
    """Alternating 4-cycle: red, blue, red, blue."""
    return PatternGraph.of(4, red=[(0, 1), (2, 3)], blue=[(1, 2), (0, 3)])


def peenn_pattern() -> PatternGraph:
    """5-vertex path colored red, red, blue, blue."""
    return PatternGraph.of(5, red=[(0, 1), (1, 2)], blue=[(2, 3), (3, 4)])


def star_pattern(a: int, b: int) -> PatternGraph:
    """Star with a red and b blue leaves from one center."""
    if a < 0 or b < 0 or a + b == 0:
        raise ValueError("star needs a + b >= 1 leaves")
    red = [(0, i) for i in range(1, a + 1)]
    blue = [(0, i) for i in range(a + 1, a + b + 1)]
    return PatternGraph.of(1 + a + b, red=red, blue=blue)


def double_star_pattern(s: int) -> PatternGraph:
    """Two centers joined by a blue pair, each with s red leaves."""
    if s < 1:
        raise ValueError("double star needs s >= 1")
    red = [(0, i) for i in range(2, s + 2)] + [(1, i) for i in range(s + 2, 2 * s + 2)]
    return PatternGraph.of(2 * s + 2, red=red, blue=[(0, 1)])


def tree_pattern(edges) -> PatternGraph:
    """Monochromatic (all-red) tree pattern from an edge list."""
    es = [(min(i, j), max(i, j)) for i, j in edges]
    h = max(max(e) for e in es) + 1
    return PatternGraph.of(h, red=es)


def pattern_isomorphic(h1: PatternGraph, h2: PatternGraph) -> bool:
    if h1.h != h2.h:
        return False
    from itertools import permutations

    for perm in permutations(range(h1.h)):
        mapped_red = {(min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in h1.red_pairs}
        mapped_blue = {(min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in h1.blue_pairs}
        if mapped_red == set(h2.red_pairs) and mapped_blue == set(h2.blue_pairs):
            return True
    return False


def pattern_automorphism_order(h: PatternGraph) -> int:
    from itertools import permutations

    red, blue = set(h.red_pairs), set(h.blue_pairs)
    count = 0
    for perm in permutations(range(h.h)):
        mr = {(min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in red}
        if mr != red:
            continue
        mb = {(min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in blue}
        if mb == blue:
            count += 1
    return count


def classify_pattern(h: PatternGraph):
    """Recognize patterns with a closed-form fast counter.

    Returns ('ap4',), ('ac4',), ('star', a, b) or None.
    """
    if h.h == 4 and pattern_isomorphic(h, ap4_pattern()):
        return ("ap4",)
    if h.h == 4 and pattern_isomorphic(h, ac4_pattern()):
        return ("ac4",)
    cons = list(h.red_pairs | h.blue_pairs)
    if cons and len(cons) == h.h - 1:
        from collections import Counter as _C

        deg = _C()
        for i, j in cons:
            deg[i] += 1
            deg[j] += 1
        centers = [v for v, d in deg.items() if d == h.h - 1]
        if centers and len(deg) == h.h:
            a = sum(1 for p in h.red_pairs)
            b = sum(1 for p in h.blue_pairs)
            return ("star", a, b)
    return None


def fast_count(h: PatternGraph, g: HostGraph) -> int | None:
    """Closed-form count when the pattern has one, else None."""
    tag = classify_pattern(h)
    if tag is None:
        return None
    if tag[0] == "ap4":
        return count_ap4_fast(g)
    if tag[0] == "ac4":
        return count_ac4_fast(g)
    return count_star_fast(g, tag[1], tag[2])
