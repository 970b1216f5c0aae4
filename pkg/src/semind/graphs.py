"""Red/blue colorings of complete graphs.

A host is a complete graph on n vertices whose pairs are each colored red or
blue; we store the red relation as per-vertex bitmasks.  A pattern fixes some
pairs red, some blue, and leaves the remaining pairs free.  This module owns
the value types, serialization, exact canonical forms, enumeration up to
isomorphism, and the parametric construction families used by the profile and
search tools.

All values are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


MAX_CANONICAL_N = 16
MAX_ENUM_K = 7
_MAX_INTERNAL_K = 8  # extremal search may stream classes one size past the public cap


class GraphFormatError(ValueError):
    """Malformed host/pattern text; `offset` is the byte position at fault."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnsupportedSizeError(ValueError):
    pass


class ConstructionError(ValueError):
    pass


def lex_pairs(n: int) -> list[tuple[int, int]]:
    """Unordered pairs of [0, n) in lexicographic order (0,1),(0,2),..."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class HostGraph:
    """An n-vertex red/blue coloring of the complete graph.

    `masks[i]` has bit j set iff pair {i, j} is red.  Blue is the complement
    on off-diagonal pairs.
    """

    n: int
    masks: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("host needs at least one vertex")
        if len(self.masks) != self.n:
            raise ValueError("mask count must equal n")
        for i, m in enumerate(self.masks):
            if m >> self.n:
                raise ValueError("mask bits outside vertex range")
            if m >> i & 1:
                raise ValueError("self-pairs are not stored")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.masks[i] >> j & 1) != (self.masks[j] >> i & 1):
                    raise ValueError("red relation must be symmetric")

    @staticmethod
    def from_red_pairs(n: int, pairs) -> "HostGraph":
        masks = [0] * n
        for i, j in pairs:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bad pair ({i},{j}) for n={n}")
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return HostGraph(n, tuple(masks))

    def red(self, i: int, j: int) -> bool:
        return bool(self.masks[i] >> j & 1)

    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.masks)

    def red_count(self) -> int:
        return sum(m.bit_count() for m in self.masks) // 2

    def red_density(self) -> float:
        if self.n < 2:
            return 0.0
        return self.red_count() / (self.n * (self.n - 1) / 2)

    def complement(self) -> "HostGraph":
        full = (1 << self.n) - 1
        return HostGraph(
            self.n, tuple((full ^ m ^ (1 << i)) for i, m in enumerate(self.masks))
        )

    def relabel(self, perm) -> "HostGraph":
        """New graph where new vertex i is old vertex perm[i]."""
        masks = [0] * self.n
        inv = [0] * self.n
        for i, v in enumerate(perm):
            inv[v] = i
        for i, v in enumerate(perm):
            m = self.masks[v]
            acc = 0
            while m:
                low = m & -m
                acc |= 1 << inv[low.bit_length() - 1]
                m ^= low
            masks[i] = acc
        return HostGraph(self.n, tuple(masks))

    def induced(self, vertices) -> "HostGraph":
        vs = list(vertices)
        k = len(vs)
        masks = [0] * k
        for a in range(k):
            for b in range(a + 1, k):
                if self.red(vs[a], vs[b]):
                    masks[a] |= 1 << b
                    masks[b] |= 1 << a
        return HostGraph(k, tuple(masks))

    def to_text(self) -> str:
        chars = ["R" if self.red(i, j) else "B" for i, j in lex_pairs(self.n)]
        return f"{self.n} {''.join(chars)}"


@dataclass(frozen=True)
class PatternGraph:
    """A pattern: red pairs must map to red, blue to blue, free pairs to either."""

    h: int
    red_pairs: frozenset
    blue_pairs: frozenset

    def __post_init__(self):
        for i, j in self.red_pairs | self.blue_pairs:
            if not (0 <= i < j < self.h):
                raise ValueError(f"pair ({i},{j}) out of range for h={self.h}")
        if self.red_pairs & self.blue_pairs:
            raise ValueError("red and blue pairs must be disjoint")

    @staticmethod
    def of(h: int, red=(), blue=()) -> "PatternGraph":
        norm = lambda ps: frozenset((min(i, j), max(i, j)) for i, j in ps)
        return PatternGraph(h, norm(red), norm(blue))

    def color_swap(self) -> "PatternGraph":
        return PatternGraph(self.h, self.blue_pairs, self.red_pairs)

    def free_pairs(self) -> frozenset:
        return frozenset(lex_pairs(self.h)) - self.red_pairs - self.blue_pairs

    def to_text(self) -> str:
        chars = []
        for p in lex_pairs(self.h):
            chars.append("R" if p in self.red_pairs else "B" if p in self.blue_pairs else "F")
        return f"{self.h} {''.join(chars)}"


def _parse_header(text: str, what: str) -> tuple[int, str, int]:
    sp = text.find(" ")
    if sp < 0:
        head, body, base = text, "", len(text)  # n = 1 has an empty pair string
    elif sp == 0:
        raise GraphFormatError(f"{what}: missing vertex count", 0)
    else:
        head, body, base = text[:sp], text[sp + 1 :], sp + 1
    if not head.isdigit():
        raise GraphFormatError(f"{what}: malformed vertex count {head!r}", 0)
    n = int(head)
    if n < 1:
        raise GraphFormatError(f"{what}: vertex count must be positive", 0)
    return n, body, base


def parse_host(text: str) -> HostGraph:
    """Parse `<n> <pairstring>` with pairstring over {R, B} in lex pair order."""
    text = text.strip()
    n, body, base = _parse_header(text, "host")
    want = n * (n - 1) // 2
    if len(body) != want:
        raise GraphFormatError(
            f"host: pair string has {len(body)} characters, expected {want}",
            base + len(body),
        )
    masks = [0] * n
    for idx, (pair, ch) in enumerate(zip(lex_pairs(n), body)):
        if ch == "R":
            i, j = pair
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        elif ch != "B":
            raise GraphFormatError(f"host: illegal character {ch!r}", base + idx)
    return HostGraph(n, tuple(masks))


def parse_pattern(text: str) -> PatternGraph:
    """Parse `<h> <pairstring>` with pairstring over {R, B, F}."""
    text = text.strip()
    h, body, base = _parse_header(text, "pattern")
    want = h * (h - 1) // 2
    if len(body) != want:
        raise GraphFormatError(
            f"pattern: pair string has {len(body)} characters, expected {want}",
            base + len(body),
        )
    red, blue = set(), set()
    for idx, (pair, ch) in enumerate(zip(lex_pairs(h), body)):
        if ch == "R":
            red.add(pair)
        elif ch == "B":
            blue.add(pair)
        elif ch != "F":
            raise GraphFormatError(f"pattern: illegal character {ch!r}", base + idx)
    return PatternGraph(h, frozenset(red), frozenset(blue))


# ---------------------------------------------------------------------------
# canonical forms


def _min_placements(g: HostGraph, fixed: tuple[int, ...] = ()) -> list[tuple[int, ...]]:
    """All vertex orderings minimizing the colex color string.

    The code is compared segment by segment: placing the vertex at position j
    determines the colors to positions 0..j-1, read earliest-first.  `fixed`
    pins a prefix of the ordering (used for rooted flags).
    """
    n = g.n
    masks = g.masks
    start_used = 0
    for v in fixed:
        start_used |= 1 << v
    states = [(tuple(fixed), start_used)]
    for pos in range(len(fixed), n):
        best_seg = None
        kept: list[tuple[tuple[int, ...], int]] = []
        for placed, used in states:
            for v in range(n):
                if used >> v & 1:
                    continue
                mv = masks[v]
                seg = 0
                for u in placed:
                    seg = (seg << 1) | (mv >> u & 1)
                if best_seg is None or seg < best_seg:
                    best_seg = seg
                    kept = [(placed + (v,), used | 1 << v)]
                elif seg == best_seg:
                    kept.append((placed + (v,), used | 1 << v))
        states = kept
    return [p for p, _ in states]


def canonical_host(g: HostGraph) -> HostGraph:
    """Canonical representative of g's color-preserving isomorphism class."""
    if g.n > MAX_CANONICAL_N:
        raise UnsupportedSizeError(
            f"canonicalization supports n <= {MAX_CANONICAL_N}, got {g.n}"
        )
    return g.relabel(_min_placements(g)[0])


def canonical_form(g: HostGraph) -> bytes:
    """Isomorphism-class code: the serialized canonical representative.

    Equal codes iff the hosts are related by a red-preserving bijection.  The
    representative minimizes the colex color string over all orderings; the
    code doubles as parseable host text.
    """
    return canonical_host(g).to_text().encode()


def canonical_with_aut(g: HostGraph) -> tuple[HostGraph, list[tuple[int, ...]]]:
    """Canonical representative plus the automorphism group of that representative."""
    placements = _min_placements(g)
    p0 = placements[0]
    rep = g.relabel(p0)
    pos_of = {v: i for i, v in enumerate(p0)}
    auts = []
    for p in placements:
        auts.append(tuple(pos_of[v] for v in p))
    return rep, auts


# ---------------------------------------------------------------------------
# enumeration up to isomorphism


def _extend(parent: HostGraph, mask: int) -> HostGraph:
    k = parent.n + 1
    masks = list(parent.masks) + [mask]
    for v in range(parent.n):
        if mask >> v & 1:
            masks[v] |= 1 << (k - 1)
    return HostGraph(k, tuple(masks))


@lru_cache(maxsize=None)
def _graph_classes(k: int) -> tuple[HostGraph, ...]:
    if k < 1 or k > _MAX_INTERNAL_K:
        raise UnsupportedSizeError(f"class enumeration supports 1 <= k <= {_MAX_INTERNAL_K}")
    if k == 1:
        return (HostGraph(1, (0,)),)
    found: dict[str, HostGraph] = {}
    for parent in _graph_classes(k - 1):
        _, auts = canonical_with_aut(parent)
        seen_masks = set()
        for mask in range(1 << (k - 1)):
            if mask in seen_masks:
                continue
            orbit_min = mask
            if len(auts) > 1:
                orbit = set()
                for perm in auts:
                    pm = 0
                    rest = mask
                    while rest:
                        low = rest & -rest
                        pm |= 1 << perm[low.bit_length() - 1]
                        rest ^= low
                    orbit.add(pm)
                seen_masks |= orbit
                orbit_min = min(orbit)
                if orbit_min != mask:
                    continue
            rep = canonical_host(_extend(parent, orbit_min))
            found.setdefault(rep.to_text(), rep)
    return tuple(found[key] for key in sorted(found))


def enumerate_colored_graphs(k: int) -> list[HostGraph]:
    """All k-vertex colorings up to isomorphism, canonical and sorted."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > MAX_ENUM_K:
        raise UnsupportedSizeError(
            f"enumeration is capped at k <= {MAX_ENUM_K} (memory guard)"
        )
    return list(_graph_classes(k))


def is_induced_subgraph(small: HostGraph, big: HostGraph) -> bool:
    """True iff some injection carries red pairs to red and blue pairs to blue."""
    if small.n > big.n:
        return False
    n, k = big.n, small.n

    def rec(pos: int, used: int, assignment: tuple[int, ...]) -> bool:
        if pos == k:
            return True
        for v in range(n):
            if used >> v & 1:
                continue
            ok = True
            for q in range(pos):
                if big.red(assignment[q], v) != small.red(q, pos):
                    ok = False
                    break
            if ok and rec(pos + 1, used | 1 << v, assignment + (v,)):
                return True
        return False

    return rec(0, 0, ())


# ---------------------------------------------------------------------------
# constructions


@dataclass(frozen=True)
class PartedHost:
    """Host assembled from uniform parts: each part is internally all-red or
    all-blue, and each pair of parts is uniformly colored across."""

    sizes: tuple[int, ...]
    internal_red: tuple[bool, ...]
    cross_red: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        p = len(self.sizes)
        if len(self.internal_red) != p or len(self.cross_red) != p:
            raise ValueError("part metadata shape mismatch")
        for row in self.cross_red:
            if len(row) != p:
                raise ValueError("cross matrix must be square")
        for i in range(p):
            for j in range(p):
                if self.cross_red[i][j] != self.cross_red[j][i]:
                    raise ValueError("cross matrix must be symmetric")
        if any(s < 0 for s in self.sizes):
            raise ValueError("part sizes must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def complement(self) -> "PartedHost":
        return PartedHost(
            self.sizes,
            tuple(not b for b in self.internal_red),
            tuple(tuple(not b for b in row) for row in self.cross_red),
        )

    def to_host(self) -> HostGraph:
        n = self.n
        part_of = []
        for p, s in enumerate(self.sizes):
            part_of.extend([p] * s)
        masks = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                pi, pj = part_of[i], part_of[j]
                red = self.internal_red[pi] if pi == pj else self.cross_red[pi][pj]
                if red:
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        return HostGraph(n, tuple(masks))


@dataclass(frozen=True)
class ConstructionSpec:
    """Parametric extremal-construction family.

    kinds: clique_plus_isolated(a), disjoint_cliques(f1,...), circulant(d-frac),
    three_part(x, y), complement(inner).
    """

    kind: str
    fractions: tuple[float, ...] = ()
    inner: "ConstructionSpec | None" = None

    def describe(self) -> str:
        if self.kind == "complement":
            return f"complement:{self.inner.describe()}"
        return f"{self.kind}:" + ",".join(f"{f:g}" for f in self.fractions)


def clique_plus_isolated(a: float) -> ConstructionSpec:
    if not 0 <= a <= 1:
        raise ConstructionError("clique fraction must lie in [0,1]")
    return ConstructionSpec("clique_plus_isolated", (float(a),))


def disjoint_cliques(fractions) -> ConstructionSpec:
    fs = tuple(float(f) for f in fractions)
    if any(f < 0 for f in fs):
        raise ConstructionError("clique fractions must be nonnegative")
    if sum(fs) > 1 + 1e-9:
        raise ConstructionError("clique fractions must sum to at most 1")
    return ConstructionSpec("disjoint_cliques", fs)


def circulant(degree_fraction: float) -> ConstructionSpec:
    if not 0 <= degree_fraction <= 1:
        raise ConstructionError("degree fraction must lie in [0,1]")
    return ConstructionSpec("circulant", (float(degree_fraction),))


def three_part(x: float, y: float) -> ConstructionSpec:
    if x < 0 or y < 0 or x + y > 1 + 1e-9:
        raise ConstructionError("three_part needs x, y >= 0 and x + y <= 1")
    return ConstructionSpec("three_part", (float(x), float(y)))


def complement_of(spec: ConstructionSpec) -> ConstructionSpec:
    return ConstructionSpec("complement", (), spec)


def apportion(fractions, n: int) -> list[int]:
    """Largest-remainder rounding of n * fractions to integers summing to n."""
    fs = [float(f) for f in fractions]
    total = sum(fs)
    if total > 1 + 1e-9:
        raise ConstructionError("part fractions exceed 1")
    quotas = [f * n for f in fs]
    base = [math.floor(q) for q in quotas]
    rem = n - sum(base)
    order = sorted(range(len(fs)), key=lambda i: (base[i] - quotas[i], i))
    for i in order[:rem]:
        base[i] += 1
    return base


def construction_parts(spec: ConstructionSpec, n: int) -> PartedHost | None:
    """Part structure of the construction, or None for the circulant family."""
    if spec.kind == "clique_plus_isolated":
        a = spec.fractions[0]
        sizes = apportion([a, 1 - a], n)
        return PartedHost(tuple(sizes), (True, False), ((False, False), (False, False)))
    if spec.kind == "disjoint_cliques":
        fs = list(spec.fractions)
        slack = 1 - sum(fs)
        parts = fs + ([slack] if slack > 1e-12 else [])
        sizes = apportion(parts, n)
        p = len(sizes)
        internal = [True] * len(fs) + [False] * (p - len(fs))
        cross = tuple(tuple(False for _ in range(p)) for _ in range(p))
        return PartedHost(tuple(sizes), tuple(internal), cross)
    if spec.kind == "three_part":
        x, y = spec.fractions
        sizes = apportion([x, y, 1 - x - y], n)
        cross = (
            (False, True, False),
            (True, True, False),
            (False, False, False),
        )
        return PartedHost(tuple(sizes), (False, True, False), cross)
    if spec.kind == "complement":
        inner = construction_parts(spec.inner, n)
        return None if inner is None else inner.complement()
    if spec.kind == "circulant":
        return None
    raise ConstructionError(f"unknown construction kind {spec.kind!r}")


def _circulant_host(n: int, frac: float) -> HostGraph:
    d = round(frac * (n - 1))
    if d >= n:
        raise ConstructionError("circulant degree must be below n")
    if d % 2 == 1 and n % 2 == 1:
        d -= 1  # odd-regular graphs need an even vertex count
    offsets = set()
    half = d // 2
    for s in range(1, half + 1):
        offsets.add(s)
        offsets.add(n - s)
    if d % 2 == 1:
        offsets.add(n // 2)
    masks = [0] * n
    for i in range(n):
        acc = 0
        for s in offsets:
            acc |= 1 << ((i + s) % n)
        masks[i] = acc
    return HostGraph(n, tuple(masks))


def make_construction(spec: ConstructionSpec, n: int) -> HostGraph:
    """Realize the construction on n vertices (largest-remainder part sizes)."""
    if n < 2:
        raise ConstructionError("constructions need n >= 2")
    if spec.kind == "circulant":
        return _circulant_host(n, spec.fractions[0])
    if spec.kind == "complement" and spec.inner.kind == "circulant":
        return _circulant_host(n, spec.inner.fractions[0]).complement()
    parts = construction_parts(spec, n)
    return parts.to_host()
