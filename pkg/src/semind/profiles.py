"""Closed-form density-profile curves and construction-value optimizers.

Scalar curve math lives in double precision with 1e-10 root/optimum
tolerances; exact rational arithmetic is reserved for the certificate
verifiers.  Evaluating a curve outside its validity interval returns a
flagged value instead of clamping, so figures can restrict drawing to the
valid range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq


class BracketError(ValueError):
    pass


class CurveSpecError(ValueError):
    pass


_SIMPLE_TAGS = {
    "ap4",
    "ac4",
    "peenn",
    "peenn_hi",
    "peenn_lo",
    "s21",
    "ac4_cliques",
    "conj_s21",
}
_AB_TAGS = {"ell", "ellc", "r", "c", "cc", "prog_s", "prog_cs"}


@dataclass(frozen=True)
class CurveId:
    """Identifier of a closed-form profile curve plus its parameters."""

    tag: str
    a: int = 0
    b: int = 0
    s: int = 0
    k: int = 0

    def __post_init__(self):
        if self.tag in _SIMPLE_TAGS:
            return
        if self.tag == "ds":
            if self.s < 1:
                raise CurveSpecError("ds needs s >= 1")
        elif self.tag == "rw_star":
            if self.k < 1:
                raise CurveSpecError("rw_star needs k >= 1")
        elif self.tag in _AB_TAGS:
            if self.a < 1 or self.b < 1:
                raise CurveSpecError(f"{self.tag} needs a, b >= 1")
            if self.tag in ("ell", "ellc") and self.a < self.b:
                raise CurveSpecError(f"{self.tag} expects a >= b")
        else:
            raise CurveSpecError(f"unknown curve tag {self.tag!r}")

    def label(self) -> str:
        if self.tag == "ds":
            return f"ds:{self.s}"
        if self.tag == "rw_star":
            return f"rw_star:{self.k}"
        if self.tag in _AB_TAGS:
            return f"{self.tag}:{self.a},{self.b}"
        return self.tag


def curve(text: str) -> CurveId:
    """Parse 'ap4', 'ds:2', 'ell:2,1', 'rw_star:3', ..."""
    tag, _, rest = text.partition(":")
    if tag in _SIMPLE_TAGS:
        return CurveId(tag)
    if tag == "ds":
        return CurveId(tag, s=int(rest))
    if tag == "rw_star":
        return CurveId(tag, k=int(rest))
    if tag in _AB_TAGS:
        a_str, b_str = rest.split(",")
        return CurveId(tag, a=int(a_str), b=int(b_str))
    raise CurveSpecError(f"unknown curve tag {tag!r}")


@dataclass(frozen=True)
class CurveValue:
    value: float
    in_range: bool


def validity_interval(cid: CurveId) -> tuple[float, float]:
    t = cid.tag
    if t == "ds":
        return (1 - 1 / (2 * cid.s), 1.0)
    if t == "s21":
        return (0.25, 1.0)
    if t == "ell":
        a, b = cid.a, cid.b
        return ((a - 1) ** 2 / (a + b - 1) ** 2, (a - 1) / (a + b - 1))
    if t == "ellc":
        a, b = cid.a, cid.b
        return (1 - (b - 1) / (a + b - 1), 1 - (b - 1) ** 2 / (a + b - 1) ** 2)
    if t == "ac4_cliques":
        return (0.0, 0.5)
    return (0.0, 1.0)


def _raw_value(cid: CurveId, beta: float) -> float:
    t = cid.tag
    if t == "ap4":
        return beta * beta * (1 - beta)
    if t == "ds":
        return beta ** (2 * cid.s) * (1 - beta)
    if t == "ac4":
        return beta * beta * (1 - beta)
    if t == "peenn":
        return max(
            beta ** 1.5 - beta**2,
            (1 - beta) ** 1.5 - (1 - beta) ** 2,
        )
    if t == "peenn_hi":
        return beta ** 1.5 - beta**2
    if t == "peenn_lo":
        return (1 - beta) ** 1.5 - (1 - beta) ** 2
    if t == "s21":
        if beta <= 0.5:
            return beta / 4
        return beta * beta * (1 - beta)
    if t == "rw_star":
        eta = 1 - math.sqrt(1 - beta)
        return max(beta ** ((cid.k + 1) / 2), eta + (1 - eta) * eta**cid.k)
    if t == "ell":
        a, b = cid.a, cid.b
        return beta * (a - 1) ** (a - 1) * b**b / (a + b - 1) ** (a + b - 1)
    if t == "ellc":
        a, b = cid.a, cid.b
        return (1 - beta) * a**a * (b - 1) ** (b - 1) / (a + b - 1) ** (a + b - 1)
    if t == "r":
        return beta**cid.a * (1 - beta) ** cid.b
    if t == "c":
        rt = math.sqrt(beta)
        return rt * beta ** (cid.a / 2) * (1 - rt) ** cid.b
    if t == "cc":
        rt = math.sqrt(1 - beta)
        return rt * (1 - rt) ** cid.a * (1 - beta) ** (cid.b / 2)
    if t == "prog_s":
        return solve_prog_s(beta, cid.a, cid.b)[2]
    if t == "prog_cs":
        return solve_prog_cs(beta, cid.a, cid.b)[2]
    if t == "ac4_cliques":
        b = min(beta, 1 - beta)
        if b <= 0:
            return 0.0
        return ac4_clique_value(b)[2]
    if t == "conj_s21":
        if beta <= 0.25:
            return solve_prog_s(beta, 2, 1)[2]
        if beta <= 0.5:
            return beta / 4
        return beta * beta * (1 - beta)
    raise CurveSpecError(f"unknown curve tag {t!r}")


def eval_curve(cid: CurveId, beta: float) -> CurveValue:
    """Exact closed-form value plus an in-range flag (never clamps)."""
    if not 0 <= beta <= 1:
        raise ValueError("beta must lie in [0, 1]")
    lo, hi = validity_interval(cid)
    return CurveValue(_raw_value(cid, beta), lo - 1e-12 <= beta <= hi + 1e-12)


# ---------------------------------------------------------------------------
# disjoint-clique optimizer for the alternating 4-cycle


def _frac_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def ac4_clique_value_exact(beta: Fraction):
    """Exact-rational clique split when the discriminant is a perfect square
    (in particular at every beta = 1/k); returns None otherwise."""
    beta = Fraction(beta)
    if not 0 < beta <= Fraction(1, 2):
        raise ValueError("beta must lie in (0, 1/2]")
    k = -((-beta.denominator) // beta.numerator)  # ceil(1/beta)
    j = k - 1
    disc = Fraction(j * j) - j * (j + 1) * (1 - beta)
    root = _frac_sqrt(disc)
    if root is None:
        return None
    u = (j + root) / Fraction(j * (j + 1))
    w = 1 - j * u
    if not 0 <= w <= u:
        raise ValueError("no feasible clique split at this beta")
    return (u, w, beta**2 - (j * u**4 + w**4))


def ac4_clique_value(beta) -> tuple[float, float, float]:
    """Optimal clique-partition value for the alternating 4-cycle at red
    density beta <= 1/2.

    Uses k = ceil(1/beta) parts: k-1 cliques of vertex fraction u and one of
    fraction w with (k-1)u + w = 1, (k-1)u^2 + w^2 = beta, 0 <= w <= u.
    Returns (u, w, beta^2 - ((k-1)u^4 + w^4)).  Exact rational arithmetic is
    used whenever beta is rational and the discriminant is a perfect square,
    so values at beta = 1/k are exact.
    """
    if not 0 < beta <= Fraction(1, 2):
        raise ValueError("beta must lie in (0, 1/2]")
    frac_beta = Fraction(beta) if not isinstance(beta, float) else None
    if frac_beta is not None:
        k = -((-frac_beta.denominator) // frac_beta.numerator)  # ceil(1/beta)
    else:
        k = math.ceil(1 / beta - 1e-12)  # guard float noise at beta = 1/k
    j = k - 1
    if frac_beta is not None:
        disc = Fraction(j * j) - j * (j + 1) * (1 - frac_beta)
        root = _frac_sqrt(disc)
        if root is not None:
            u = (j + root) / Fraction(j * (j + 1))
            w = 1 - j * u
            if not 0 <= w <= u:
                raise ValueError("no feasible clique split at this beta")
            value = frac_beta**2 - (j * u**4 + w**4)
            return (float(u), float(w), float(value))
        beta = float(frac_beta)
    disc = j * j - j * (j + 1) * (1 - beta)
    if disc < 0:
        if disc < -1e-12:
            raise ValueError("no feasible clique split at this beta")
        disc = 0.0
    u = (j + math.sqrt(disc)) / (j * (j + 1))
    w = 1 - j * u
    if w < -1e-12 or w > u + 1e-12:
        raise ValueError("no feasible clique split at this beta")
    w = min(max(w, 0.0), u)
    value = beta * beta - (j * u**4 + w**4)
    return (u, w, value)


# ---------------------------------------------------------------------------
# structured optimizer: all coordinates in {0, alpha} plus one remainder


@dataclass(frozen=True)
class OptStructure:
    alpha: float
    m: int
    remainder: float
    objective: float


def double_star_leg(s: int):
    """The coordinate function (1-x) x^(2s) and its convex/concave split point."""
    if s < 1:
        raise ValueError("s must be >= 1")
    gamma = (2 * s - 1) / (2 * s + 1)
    return (lambda x: (1 - x) * x ** (2 * s)), gamma


def opt_structure_max(f, gamma: float, D: float, n: int) -> OptStructure:
    """Maximize sum f(x_i) over x in [0,1]^n with sum x_i = D, restricted to
    the structured family: m coordinates at alpha >= gamma, at most one
    remainder coordinate, the rest zero.

    One-dimensional search over alpha in [max(gamma, D/n), 1]; for each alpha,
    m = floor(D / alpha) and the remainder is D - m*alpha.  The objective is
    located to within 1e-10.
    """
    if not 0 < gamma < 1:
        raise CurveSpecError("gamma must lie in (0, 1)")
    if not 0 <= D <= n:
        raise ValueError("need 0 <= D <= n")
    f0 = f(0.0)
    if D == 0:
        return OptStructure(gamma, 0, 0.0, n * f0)

    alpha_lo = max(gamma, D / n)
    if alpha_lo > 1:
        raise ValueError("infeasible: D/n exceeds 1")

    def objective_at(alpha: float) -> tuple[float, int, float]:
        m = math.floor(D / alpha + 1e-15)
        m = min(m, n)
        rem = D - m * alpha
        if rem < 0:
            rem = 0.0
        used = m + (1 if rem > 1e-15 else 0)
        if used > n:
            return (-math.inf, m, rem)
        val = m * f(alpha) + (f(rem) if rem > 1e-15 else 0.0) + (n - used) * f0
        return (val, m, rem)

    # coarse scan to collect candidate m values
    grid = np.linspace(alpha_lo, 1.0, 4001)
    cand_m = set()
    best = (-math.inf, alpha_lo, 0, 0.0)
    for alpha in grid:
        val, m, rem = objective_at(float(alpha))
        cand_m.add(m)
        if val > best[0]:
            best = (val, float(alpha), m, rem)
    extra = set()
    for m in cand_m:
        extra.update({m - 1, m + 1, m + 2})
    cand_m |= {m for m in extra if 1 <= m <= n}

    # per-m golden-section refinement on the alpha interval where floor(D/alpha) = m
    gr = (math.sqrt(5) - 1) / 2
    for m in sorted(cand_m):
        if m < 1 or m > n:
            continue
        lo = max(alpha_lo, D / (m + 1) + 1e-15)
        hi = min(1.0, D / m) if m > 0 else 1.0
        if lo > hi:
            continue

        def h(alpha, m=m):
            rem = D - m * alpha
            if rem < -1e-12:
                return -math.inf
            rem = max(rem, 0.0)
            used = m + (1 if rem > 1e-15 else 0)
            if used > n:
                return -math.inf
            return m * f(alpha) + (f(rem) if rem > 1e-15 else 0.0) + (n - used) * f0

        # seed with a local scan, then contract
        xs = np.linspace(lo, hi, 201)
        vals = [h(float(x)) for x in xs]
        i0 = int(np.argmax(vals))
        a = float(xs[max(0, i0 - 1)])
        b = float(xs[min(len(xs) - 1, i0 + 1)])
        x1 = b - gr * (b - a)
        x2 = a + gr * (b - a)
        f1, f2 = h(x1), h(x2)
        for _ in range(120):
            if b - a < 1e-14:
                break
            if f1 < f2:
                a, x1, f1 = x1, x2, f2
                x2 = a + gr * (b - a)
                f2 = h(x2)
            else:
                b, x2, f2 = x2, x1, f1
                x1 = b - gr * (b - a)
                f1 = h(x1)
        for alpha in (a, (a + b) / 2, b, lo, hi):
            val, mm, rem = objective_at(alpha)
            if val > best[0]:
                best = (val, alpha, mm, rem)

    val, alpha, m, rem = best[0], best[1], best[2], best[3]
    return OptStructure(alpha, m, rem, val)


# ---------------------------------------------------------------------------
# one-variable polynomial programs for the three-part star constructions


def _prog_objective(y: np.ndarray, beta: float, a: int, b: int) -> np.ndarray:
    x = (beta - y * y) / (2 * y)
    z = 1 - x - y
    val = x * y**a * (1 - y) ** b + y * (x + y) ** a * np.where(z > 0, z, 0.0) ** b
    return val


def solve_prog_s(beta: float, a: int, b: int) -> tuple[float, float, float]:
    """Maximize x y^a (1-y)^b + y (x+y)^a (1-x-y)^b over x, y >= 0 with
    2xy + y^2 = beta and x + y <= 1.

    x is eliminated through the constraint, leaving a one-variable scan over
    y in [1 - sqrt(1-beta), sqrt(beta)] refined by golden section to 1e-12.
    Both boundary constructions (x = 0 and x + y = 1) are inside the scan
    range.  Returns (x, y, value)."""
    if beta <= 0:
        return (0.0, 0.0, 0.0)
    if beta >= 1:
        return (0.0, 1.0, 0.0)
    y_lo = max(1 - math.sqrt(1 - beta), 1e-14)
    y_hi = math.sqrt(beta)
    if y_lo >= y_hi:
        y = y_hi
        return ((beta - y * y) / (2 * y) if y > 0 else 0.0, y, 0.0)

    ys = np.linspace(y_lo, y_hi, 20001)
    vals = _prog_objective(ys, beta, a, b)
    i0 = int(np.argmax(vals))
    lo = float(ys[max(0, i0 - 1)])
    hi = float(ys[min(len(ys) - 1, i0 + 1)])

    def h(y: float) -> float:
        return float(_prog_objective(np.array([y]), beta, a, b)[0])

    gr = (math.sqrt(5) - 1) / 2
    aa, bb = lo, hi
    x1 = bb - gr * (bb - aa)
    x2 = aa + gr * (bb - aa)
    f1, f2 = h(x1), h(x2)
    for _ in range(200):
        if bb - aa < 1e-15:
            break
        if f1 < f2:
            aa, x1, f1 = x1, x2, f2
            x2 = aa + gr * (bb - aa)
            f2 = h(x2)
        else:
            bb, x2, f2 = x2, x1, f1
            x1 = bb - gr * (bb - aa)
            f1 = h(x1)
    y_best = (aa + bb) / 2
    candidates = [y_best, y_lo, y_hi]
    y_star = max(candidates, key=h)
    val = h(y_star)
    x_star = max((beta - y_star * y_star) / (2 * y_star), 0.0)
    return (x_star, y_star, val)


def solve_prog_cs(beta: float, a: int, b: int) -> tuple[float, float, float]:
    """Complementary program: objective x y^b (1-y)^a + y (x+y)^b (1-x-y)^a
    with 2xy + y^2 = 1 - beta.  Identical to solve_prog_s at 1-beta with the
    roles of a and b swapped."""
    return solve_prog_s(1 - beta, b, a)


@lru_cache(maxsize=None)
def s21_prog_boundary() -> float:
    """Density below which the three-part program for (a,b) = (2,1) strictly
    beats its x = 0 boundary (the clique-plus-isolated value)."""

    def interior_gap(beta: float) -> float:
        x, y, val = solve_prog_s(beta, 2, 1)
        c_val = _raw_value(CurveId("c", a=2, b=1), beta)
        return val - c_val

    lo, hi = 1e-6, 0.25
    if interior_gap(lo) <= 1e-14:
        return lo
    for _ in range(80):
        mid = (lo + hi) / 2
        if interior_gap(mid) > 1e-13:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def find_crossover(c1: CurveId, c2: CurveId, lo: float, hi: float) -> float:
    """Smallest root of eval_curve(c1) - eval_curve(c2) on [lo, hi] via Brent.

    The difference is scanned on a grid first, so a degenerate common zero at
    an endpoint does not mask an interior crossing."""

    def diff(beta: float) -> float:
        return _raw_value(c1, beta) - _raw_value(c2, beta)

    grid = np.linspace(lo, hi, 2049)
    vals = [diff(float(x)) for x in grid]
    if all(v == 0.0 for v in vals):
        raise BracketError(
            f"{c1.label()} - {c2.label()} vanishes identically on [{lo}, {hi}]"
        )
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            return float(grid[i])
        if a * b < 0:
            return float(
                brentq(diff, float(grid[i]), float(grid[i + 1]), xtol=1e-14, rtol=8.9e-16)
            )
    if vals[-1] == 0.0:
        return hi
    raise BracketError(
        f"no sign change of {c1.label()} - {c2.label()} on [{lo}, {hi}]"
    )
