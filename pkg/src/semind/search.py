"""Finite extremal search over colorings.

`exact_max` and `full_profile` walk isomorphism classes (exact up to n = 8);
`brute_force_profile` is the independent oracle that walks every raw coloring
(n <= 6).  `hill_climb` generates lower-bound colorings at mid-size n by
single-pair flips, or red/blue swaps when the density is pinned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .graphs import (
    ConstructionSpec,
    HostGraph,
    PatternGraph,
    UnsupportedSizeError,
    _graph_classes,
    canonical_form,
    lex_pairs,
    make_construction,
)
from .counting import count_injections, fast_count, classify_pattern

MAX_EXACT_N = 8
MAX_ORACLE_N = 6
MAX_CLIMB_N = 200


@dataclass(frozen=True)
class SearchResult:
    best_count: int
    witnesses: tuple[bytes, ...]
    per_edge_count: dict | None = None


def _witness_sort(codes) -> tuple[bytes, ...]:
    return tuple(sorted(codes))


def exact_max(h: PatternGraph, n: int, m: int | None = None) -> SearchResult:
    """True maximum of the injection count over all n-vertex colorings, with
    exactly m red pairs when m is given.  Witnesses are canonical codes."""
    if n > MAX_EXACT_N:
        raise UnsupportedSizeError(
            f"exact search is capped at n <= {MAX_EXACT_N}; use hill_climb"
        )
    npairs = comb(n, 2)
    if m is not None and not 0 <= m <= npairs:
        raise ValueError(f"m must lie in [0, {npairs}]")
    best = -1
    witnesses: list[bytes] = []
    for g in _graph_classes(n):
        if m is not None and g.red_count() != m:
            continue
        c = count_injections(h, g)
        if c > best:
            best = c
            witnesses = [g.to_text().encode()]
        elif c == best:
            witnesses.append(g.to_text().encode())
    if best < 0:
        raise ValueError("no coloring matches the constraints")
    return SearchResult(best, _witness_sort(witnesses))


def full_profile(h: PatternGraph, n: int) -> SearchResult:
    """exact_max for every red-pair count m in one sweep."""
    if n > MAX_EXACT_N:
        raise UnsupportedSizeError(
            f"exact search is capped at n <= {MAX_EXACT_N}; use hill_climb"
        )
    per_m: dict[int, int] = {m: -1 for m in range(comb(n, 2) + 1)}
    wit_m: dict[int, list[bytes]] = {m: [] for m in per_m}
    for g in _graph_classes(n):
        m = g.red_count()
        c = count_injections(h, g)
        if c > per_m[m]:
            per_m[m] = c
            wit_m[m] = [g.to_text().encode()]
        elif c == per_m[m]:
            wit_m[m].append(g.to_text().encode())
    best = max(per_m.values())
    witnesses: list[bytes] = []
    for m, c in per_m.items():
        if c == best:
            witnesses.extend(wit_m[m])
    return SearchResult(best, _witness_sort(set(witnesses)), dict(per_m))


def brute_force_profile(h: PatternGraph, n: int) -> dict:
    """Per-m maxima over every raw coloring of K_n.  Independent oracle: no
    canonicalization, no class enumeration."""
    if n > MAX_ORACLE_N:
        raise UnsupportedSizeError(f"raw enumeration is capped at n <= {MAX_ORACLE_N}")
    prs = lex_pairs(n)
    per_m = {m: -1 for m in range(len(prs) + 1)}
    for colored in range(1 << len(prs)):
        masks = [0] * n
        rest = colored
        idx = 0
        while rest:
            if rest & 1:
                i, j = prs[idx]
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            rest >>= 1
            idx += 1
        g = HostGraph(n, tuple(masks))
        m = colored.bit_count()
        c = count_injections(h, g)
        if c > per_m[m]:
            per_m[m] = c
    return per_m


def _make_counter(h: PatternGraph):
    if classify_pattern(h) is not None:
        return lambda g: fast_count(h, g)
    return lambda g: count_injections(h, g)


def _random_masks(n: int, m: int, rng: random.Random) -> list[int]:
    prs = lex_pairs(n)
    chosen = rng.sample(range(len(prs)), m)
    masks = [0] * n
    for t in chosen:
        i, j = prs[t]
        masks[i] |= 1 << j
        masks[j] |= 1 << i
    return masks


def _adjust_edge_count(masks: list[int], n: int, m_target: int, rng: random.Random):
    prs = lex_pairs(n)
    current = sum(mk.bit_count() for mk in masks) // 2
    red = [t for t, (i, j) in enumerate(prs) if masks[i] >> j & 1]
    blue = [t for t in range(len(prs)) if t not in set(red)]
    rng.shuffle(red)
    rng.shuffle(blue)
    while current > m_target:
        i, j = prs[red.pop()]
        masks[i] &= ~(1 << j)
        masks[j] &= ~(1 << i)
        current -= 1
    while current < m_target:
        i, j = prs[blue.pop()]
        masks[i] |= 1 << j
        masks[j] |= 1 << i
        current += 1


def _flip(masks: list[int], i: int, j: int):
    masks[i] ^= 1 << j
    masks[j] ^= 1 << i


def hill_climb(
    h: PatternGraph,
    n: int,
    target_density: float | None = None,
    restarts: int = 0,
    seed: int = 0,
    seeds=(),
    move_budget: int | None = None,
) -> SearchResult:
    """Stochastic local search for high-count colorings.

    Seeds may be ConstructionSpec or HostGraph values; they are evaluated
    as-is (after pinning the red-pair count when target_density is given),
    and each restart climbs from one of them by single-pair flips, or by
    red/blue swap moves when the density is pinned.  restarts=0 just scores
    the seeds.  Deterministic for a fixed seed."""
    if n > MAX_CLIMB_N:
        raise UnsupportedSizeError(f"hill climbing is capped at n <= {MAX_CLIMB_N}")
    rng = random.Random(seed)
    counter = _make_counter(h)
    npairs = comb(n, 2)
    m_target = None
    if target_density is not None:
        m_target = round(target_density * npairs)

    starts: list[list[int]] = []
    for s in seeds:
        host = make_construction(s, n) if isinstance(s, ConstructionSpec) else s
        starts.append(list(host.masks))
    if not starts:
        m0 = m_target if m_target is not None else npairs // 2
        starts.append(_random_masks(n, m0, rng))
    if m_target is not None:
        for masks in starts:
            _adjust_edge_count(masks, n, m_target, rng)

    def snapshot(masks) -> bytes:
        host = HostGraph(n, tuple(masks))
        if n <= 16:
            return canonical_form(host)
        return host.to_text().encode()

    best = -1
    best_wit: bytes = b""
    for masks in starts:
        c = counter(HostGraph(n, tuple(masks)))
        if c > best:
            best, best_wit = c, snapshot(masks)

    budget = move_budget if move_budget is not None else 60 * n
    plateau_cap = 2 * n
    prs = lex_pairs(n)

    for r in range(restarts):
        masks = [x for x in starts[r % len(starts)]]
        if r >= len(starts):
            # perturb repeated starts so restarts explore new basins
            for _ in range(max(1, n // 10)):
                i, j = prs[rng.randrange(npairs)]
                _flip(masks, i, j)
            if m_target is not None:
                _adjust_edge_count(masks, n, m_target, rng)
        cur = counter(HostGraph(n, tuple(masks)))
        plateau = 0
        for _ in range(budget):
            if m_target is None:
                i, j = prs[rng.randrange(npairs)]
                _flip(masks, i, j)
                undo = [(i, j)]
            else:
                # swap one red and one blue pair; rejection sampling keeps
                # the proposal uniform and the rng stream deterministic
                pick = None
                for _ in range(64 * npairs):
                    a, b = prs[rng.randrange(npairs)]
                    if masks[a] >> b & 1:
                        pick = (a, b)
                        break
                if pick is None:
                    break
                pick2 = None
                for _ in range(64 * npairs):
                    c, d = prs[rng.randrange(npairs)]
                    if not masks[c] >> d & 1:
                        pick2 = (c, d)
                        break
                if pick2 is None:
                    break
                _flip(masks, *pick)
                _flip(masks, *pick2)
                undo = [pick, pick2]
            cand = counter(HostGraph(n, tuple(masks)))
            if cand > cur:
                cur = cand
                plateau = 0
            elif cand == cur and plateau < plateau_cap:
                plateau += 1
            else:
                for a, b in undo:
                    _flip(masks, a, b)
                continue
            if cur > best:
                best, best_wit = cur, snapshot(masks)

    return SearchResult(best, (best_wit,))
