"""Mechanical re-verification of the two sum-of-squares certificates and the
stability-family facts, with exact arithmetic end to end.

Every PASS/FAIL decision routes through Q(sqrt2) rationals and Sturm-based
sign analysis; floating point appears only in rendered previews.  The
expected coefficient tables ship as reviewed data files and the verifier
recomputes everything from first principles before diffing against them, so
a transcription slip and a calculus bug cannot cancel silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .counting import ap4_pattern, peenn_pattern
from .exactalg import (
    HALF_SQRT2,
    Poly,
    Q2,
    SQRT2,
    count_roots_open,
    poly_eval,
    poly_nonnegative_on,
    poly_nonpositive_on,
)
from .flags import (
    GraphCombo,
    RootedFlag,
    basis_combo,
    combo_square,
    expand_pattern,
    flag_product,
    lift,
    unit_flag,
    unlabel,
)
from .graphs import HostGraph, canonical_host, is_induced_subgraph, lex_pairs


# ---------------------------------------------------------------------------
# digit-string codecs and the reference data files


def host_from_digits(digits: str) -> HostGraph:
    """Decode a class key: one digit per lexicographic pair, 1=blue, 2=red."""
    npairs = len(digits)
    n = round((1 + math.isqrt(1 + 8 * npairs)) / 2)
    if n * (n - 1) // 2 != npairs:
        raise ValueError(f"digit string length {npairs} is not triangular")
    pairs = []
    for p, ch in zip(lex_pairs(n), digits):
        if ch == "2":
            pairs.append(p)
        elif ch != "1":
            raise ValueError(f"illegal digit {ch!r}")
    return HostGraph.from_red_pairs(n, pairs)


def parse_poly(text: str, names) -> Poly:
    """Parse '+/-' separated products of rationals and powers like 3/2*B*a^2."""
    names = tuple(names)
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    out = Poly.const(names, 0)
    i = 0
    while i < len(s):
        sign = 1
        while i < len(s) and s[i] in "+-":
            if s[i] == "-":
                sign = -sign
            i += 1
        j = i
        while j < len(s) and s[j] not in "+-":
            j += 1
        term = s[i:j]
        i = j
        coeff = Fraction(sign)
        exps = [0] * len(names)
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            base, _, power = factor.partition("^")
            if base in names:
                exps[names.index(base)] += int(power) if power else 1
            else:
                if power:
                    coeff *= Fraction(base) ** int(power)
                else:
                    coeff *= Fraction(base)
        out = out + Poly(names, {tuple(exps): Q2.of(coeff)})
    return out


def _data_lines(fname: str):
    text = resources.files("semind").joinpath("data", fname).read_text()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            yield line


def _class_code(digits: str) -> str:
    return canonical_host(host_from_digits(digits)).to_text()


_AP4_NAMES = ("x",)
_PEENN_NAMES = ("a", "B", "C")
_AP4_COLUMNS = ("O", "C1", "C2", "C3", "C4", "E")


@lru_cache(maxsize=None)
def ap4_reference_table() -> dict:
    """Expected expansions {class code: {column: Poly in x}}."""
    table = {}
    for line in _data_lines("ap4_certificate_table.txt"):
        cells = [c.strip() for c in line.split("|")]
        digits, cols = cells[0], cells[1:]
        if len(cols) != len(_AP4_COLUMNS):
            raise ValueError(f"bad table row: {line!r}")
        code = _class_code(digits)
        if code in table:
            raise ValueError(f"duplicate class {digits}")
        table[code] = {
            name: parse_poly(cell, _AP4_NAMES)
            for name, cell in zip(_AP4_COLUMNS, cols)
        }
    if len(table) != 11:
        raise ValueError("expected 11 classes in the reference table")
    return table


@lru_cache(maxsize=None)
def peenn_reference_coeffs() -> dict:
    """Expected certificate coefficients {class code: Poly in (a, B, C)}."""
    table = {}
    for line in _data_lines("peenn_certificate_coeffs.txt"):
        digits, _, poly_text = line.partition("|")
        code = _class_code(digits.strip())
        if code in table:
            raise ValueError(f"duplicate class {digits.strip()}")
        table[code] = parse_poly(poly_text.strip(), _PEENN_NAMES)
    if len(table) != 34:
        raise ValueError("expected all 34 classes in the reference list")
    return table


@lru_cache(maxsize=None)
def peenn_expansion_reference() -> dict:
    """Expected integer expansion {class code: injections} of the path pattern."""
    table = {}
    for line in _data_lines("peenn_expansion.txt"):
        digits, cnt = line.split()
        code = _class_code(digits)
        if code in table:
            raise ValueError(f"duplicate class {digits}")
        table[code] = int(cnt)
    return table


# ---------------------------------------------------------------------------
# report plumbing


@dataclass
class CertLine:
    code: str
    coeff: str
    status: str  # nonpositive | zero | VIOLATION (certificates), yes | no (stability)


@dataclass
class CertReport:
    name: str
    passed: bool
    lines: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    zero_classes: tuple = ()
    boundary_zero_classes: tuple = ()
    interior_root_classes: dict = field(default_factory=dict)

    def render(self) -> str:
        out = [f"# certificate report: {self.name}"]
        for note in self.notes:
            out.append(f"# {note}")
        for ln in self.lines:
            out.append(f"class={ln.code!r} coeff={ln.coeff} sign={ln.status}")
        for f in self.failures:
            out.append(f"FAIL {f}")
        verdict = "PASS" if self.passed else "FAIL"
        max_coeff = "0" if self.passed else "VIOLATION"
        out.append(
            f"verdict={verdict} classes={len(self.lines)} max_coeff={max_coeff}"
        )
        return "\n".join(out)


# ---------------------------------------------------------------------------
# alternating-3-path certificate (11-class basis, parameter x = blue density)


def _flag3(digits: str) -> RootedFlag:
    return RootedFlag(host_from_digits(digits), (0, 1))


@lru_cache(maxsize=None)
def ap4_certificate_terms() -> dict:
    """Recomputed expansions of O, C1..C4, E on the 11-class basis."""
    names = _AP4_NAMES
    x = Poly.var(names, "x")
    one = Poly.const(names, 1)

    O = expand_pattern(ap4_pattern(), 4, names)

    def sq(items) -> GraphCombo:
        first = _flag3(items[0][0])
        combo = GraphCombo.build(
            3, 2, first.type_colors(), names, [(_flag3(d), c) for d, c in items]
        )
        return unlabel(combo_square(combo))

    c1 = sq([("221", one), ("212", -one)])
    c2 = sq([("121", one), ("112", -one)])
    c3 = sq([("222", -x), ("221", one - x - x), ("211", one - x)]).scale(12)
    c4 = sq([("122", -x), ("121", one - x - x), ("111", one - x)]).scale(12)

    blue_pair = unit_flag(host_from_digits("1"), (), names)
    E = lift(blue_pair, 4).scale(6) - basis_combo(4, names).scale(x * 6)
    return {"O": O, "C1": c1, "C2": c2, "C3": c3, "C4": c4, "E": E}


AP4_MULTIPLIERS = {
    "O": "1",
    "C1": "48*x^3-96*x^2+48*x",
    "C2": "48*x^3-72*x^2+24*x+12",
    "C3": "-4*x+4",
    "C4": "-4*x+2",
    "E": "-12*x^2+16*x-4",
}
AP4_TARGET = "24*x^3-48*x^2+24*x"  # 24*x*(1-x)^2
_AP4_SOS = ("C1", "C2", "C3", "C4")  # terms whose multipliers must stay >= 0


def verify_ap4_certificate(
    alpha_interval: tuple = (Fraction(0), Fraction(1, 2)),
    reference: dict | None = None,
) -> CertReport:
    """Check the alternating-3-path bound certificate.

    1. recompute the six expansions and diff them against the reference table;
    2. check the linear combination hits the constant target on every class;
    3. check the square multipliers are nonnegative on the x-interval.
    """
    report = CertReport(name="ap4", passed=True)
    reference = reference if reference is not None else ap4_reference_table()
    terms = ap4_certificate_terms()
    codes = sorted(reference)

    computed: dict[str, dict[str, Poly]] = {code: {} for code in codes}
    for col, combo in terms.items():
        by_code = {flag.graph.to_text(): poly for flag, poly in combo.terms.items()}
        for code in codes:
            computed[code][col] = by_code.get(code, Poly.const(_AP4_NAMES, 0))

    for code in codes:
        for col in _AP4_COLUMNS:
            got, want = computed[code][col], reference[code][col]
            if got != want:
                report.passed = False
                report.failures.append(
                    f"expansion mismatch class={code!r} column={col}: "
                    f"computed {got}, reference {want}"
                )

    mults = {k: parse_poly(v, _AP4_NAMES) for k, v in AP4_MULTIPLIERS.items()}
    target = parse_poly(AP4_TARGET, _AP4_NAMES)
    for code in codes:
        combined = Poly.const(_AP4_NAMES, 0)
        for col in _AP4_COLUMNS:
            combined = combined + mults[col] * computed[code][col]
        ok = combined == target
        report.lines.append(
            CertLine(code, str(combined), "zero" if ok else "VIOLATION")
        )
        if not ok:
            report.passed = False
            report.failures.append(
                f"combination mismatch class={code!r}: {combined} != {target}"
            )

    lo, hi = Q2.of(alpha_interval[0]), Q2.of(alpha_interval[1])
    for col in _AP4_SOS:
        cs = mults[col].univariate("x")
        if not poly_nonnegative_on(cs, lo, hi):
            report.passed = False
            report.failures.append(
                f"square multiplier for {col} is negative somewhere on "
                f"[{lo}, {hi}]: {mults[col]}"
            )
    report.notes.append(
        f"square multipliers checked nonnegative for x in [{lo}, {hi}]"
    )
    return report


# ---------------------------------------------------------------------------
# 5-vertex path certificate (34-class basis, parameters a, B, C)


def _flag4(digits: str) -> RootedFlag:
    return RootedFlag(host_from_digits(digits), (0, 1, 2))


@lru_cache(maxsize=None)
def peenn_certificate_combo() -> GraphCombo:
    """The certificate's right-hand side on the 34-class basis, symbolic in
    a, B, C."""
    names = _PEENN_NAMES
    a = Poly.var(names, "a")
    one = Poly.const(names, 1)
    B = Poly.var(names, "B")
    C = Poly.var(names, "C")
    asq = a * a
    tgt = a * asq - asq * asq  # a^3 - a^4

    P = expand_pattern(peenn_pattern(), 5, names)
    pref = asq * (one - asq)
    term1 = P.scale(pref) - basis_combo(5, names).scale(pref * tgt * 120)

    L = GraphCombo.build(
        3,
        0,
        (),
        names,
        [
            (RootedFlag(host_from_digits("222")), tgt * asq * 120),
            (RootedFlag(host_from_digits("111")), -(one - asq) * tgt * 120),
            # the a^6 coefficient here must be -120 for the 34-class reference
            # list to be reproducible; see the decisions ledger
            (
                RootedFlag(host_from_digits("112")),
                parse_poly("-120*a^6+120*a^5+80*a^4-80*a^3+20*a^2-20*a", names),
            ),
            (RootedFlag(host_from_digits("122")), B * 15),
        ],
    )
    red_pair = unit_flag(host_from_digits("2"), (), names)
    term2 = flag_product(L, red_pair, 5) - lift(L, 5).scale(asq)

    d1 = GraphCombo.build(
        4,
        3,
        _flag4("111211").type_colors(),
        names,
        [(_flag4("111211"), a), (_flag4("111222"), a - one)],
    )
    term3 = unlabel(combo_square(d1)).scale((a - asq) * 60)

    d2 = GraphCombo.build(
        4,
        3,
        _flag4("122222").type_colors(),
        names,
        [(_flag4("122222"), a), (_flag4("121212"), a - one)],
    )
    term4 = unlabel(combo_square(d2)).scale(C * 30)

    return term1 + term2 + term3 + term4


REGIME_SQRT2 = {
    "B": SQRT2 - Q2.of(1),
    "C": SQRT2 - Q2.of(1),
    "lo": HALF_SQRT2,
    "hi": Q2.of(Fraction(4, 5)),
    "include_lo": True,
    "include_hi": True,
}
REGIME_RATIONAL = {
    "B": Q2.of(Fraction(361, 1000)),
    "C": Q2.of(0),
    "lo": Q2.of(Fraction(4, 5)),
    "hi": Q2.of(1),
    "include_lo": False,
    "include_hi": True,
}


def verify_peenn_certificate(
    B: Q2,
    C: Q2,
    interval: tuple,
    include_lo: bool = True,
    include_hi: bool = True,
    reference: dict | None = None,
) -> CertReport:
    """Check the 5-vertex path certificate for one (B, C, interval) regime.

    0. validate the expander against the integer expansion list;
    1. recompute the right-hand side symbolically and diff it against the
       reference coefficient list with B, C left symbolic;
    2. substitute B, C and certify every class coefficient <= 0 on the
       a-interval by exact root counting;
    3. check the square multipliers 60(a - a^2) and 30 C are nonnegative.
    Zero loci (identically-zero classes, endpoint zeros, interior roots) are
    recorded on the report.
    """
    report = CertReport(name="peenn", passed=True)
    lo, hi = Q2.of(interval[0]), Q2.of(interval[1])
    names = _PEENN_NAMES

    expansion = expand_pattern(peenn_pattern(), 5, names)
    got = {
        flag.graph.to_text(): poly for flag, poly in expansion.terms.items()
    }
    want_exp = peenn_expansion_reference()
    exp_ok = set(got) == set(want_exp) and all(
        got[code] == Poly.const(names, cnt) for code, cnt in want_exp.items()
    )
    if not exp_ok:
        report.passed = False
        report.failures.append("pattern expansion does not match the integer list")
    else:
        report.notes.append("pattern expansion matches the 23-term integer list")

    reference = reference if reference is not None else peenn_reference_coeffs()
    combo = peenn_certificate_combo()
    computed = {flag.graph.to_text(): poly for flag, poly in combo.terms.items()}
    zero_poly = Poly.const(names, 0)
    for code in sorted(reference):
        got_poly = computed.get(code, zero_poly)
        if got_poly != reference[code]:
            report.passed = False
            report.failures.append(
                f"coefficient mismatch class={code!r}: computed {got_poly}, "
                f"reference {reference[code]}"
            )
    for code in sorted(computed):
        if code not in reference:
            report.passed = False
            report.failures.append(f"unexpected class {code!r} in expansion")

    # sign analysis with B, C substituted
    zero_classes = []
    lo_zero = []
    interior = {}
    for code in sorted(reference):
        poly = computed.get(code, zero_poly).substitute(B=B, C=C)
        cs = poly.univariate("a")
        if not cs:
            zero_classes.append(code)
            report.lines.append(CertLine(code, "0", "zero"))
            continue
        ok = poly_nonpositive_on(cs, lo, hi, include_lo, include_hi)
        at_lo = poly_eval(cs, lo).sign() == 0
        n_inside = count_roots_open(cs, lo, hi)
        if at_lo and include_lo:
            lo_zero.append(code)
        if n_inside:
            interior[code] = n_inside
        status = "nonpositive" if ok else "VIOLATION"
        report.lines.append(CertLine(code, str(poly), status))
        if not ok:
            report.passed = False
            where = []
            if include_lo and poly_eval(cs, lo).sign() > 0:
                where.append(f"at a={float(lo):.6f}")
            if include_hi and poly_eval(cs, hi).sign() > 0:
                where.append(f"at a={float(hi):.6f}")
            from .exactalg import isolate_roots

            for r_lo, r_hi in isolate_roots(cs, lo, hi):
                where.append(f"near a={float((r_lo + r_hi)) / 2:.6f}")
            report.failures.append(
                f"positivity violation class={code!r} on a in "
                f"[{lo}, {hi}]" + (f" ({'; '.join(where)})" if where else "")
            )

    # square multipliers
    mult1 = (Poly.var(names, "a") - Poly.var(names, "a") * Poly.var(names, "a")) * 60
    if not poly_nonnegative_on(mult1.univariate("a"), lo, hi, include_lo, include_hi):
        report.passed = False
        report.failures.append("multiplier 60(a - a^2) negative on the interval")
    if (C * 30).sign() < 0:
        report.passed = False
        report.failures.append(f"multiplier 30*C = {C * 30} is negative")

    report.zero_classes = tuple(zero_classes)
    report.boundary_zero_classes = tuple(lo_zero)
    report.interior_root_classes = dict(interior)
    report.notes.append(
        f"B={B} C={C} interval=[{lo}, {hi}] include_lo={include_lo} "
        f"include_hi={include_hi}"
    )
    report.notes.append(
        f"identically-zero classes: {len(zero_classes)}; "
        f"vanishing at the left endpoint: {len(lo_zero)}; "
        f"interior roots found: {sum(interior.values())}"
    )
    return report


# ---------------------------------------------------------------------------
# stability families


FAMILY_MAIN_DIGITS = (
    "1111111111",
    "1111111112",
    "1111111222",
    "1111222222",
    "2222222222",
)
FAMILY_HALF_DIGITS = (
    "2222222221",
    "2222222111",
    "2222111111",
    "2112211212",
)
C5_DIGITS = "2112211212"
FORBIDDEN_4_DIGITS = ("111122", "112211", "112212", "112222", "122221")


def family_main() -> list[HostGraph]:
    return [host_from_digits(d) for d in FAMILY_MAIN_DIGITS]


def family_half() -> list[HostGraph]:
    return [host_from_digits(d) for d in FAMILY_HALF_DIGITS]


def family_forbidden() -> list[HostGraph]:
    return [host_from_digits(d) for d in FORBIDDEN_4_DIGITS]


def stability_family_check() -> CertReport:
    """Check that none of the five 4-vertex graphs embeds induced into any of
    the nine 5-vertex family members except the alternating 5-cycle, and
    record which of them do embed into the 5-cycle."""
    report = CertReport(name="stability", passed=True)
    hosts = [(d, host_from_digits(d)) for d in FAMILY_MAIN_DIGITS + FAMILY_HALF_DIGITS]
    c5_embeds = []
    for hd, host in hosts:
        for fd in FORBIDDEN_4_DIGITS:
            sub = host_from_digits(fd)
            embeds = is_induced_subgraph(sub, host)
            is_c5 = hd == C5_DIGITS
            status = "yes" if embeds else "no"
            report.lines.append(
                CertLine(f"host={hd} sub={fd}", "-", status)
            )
            if embeds and not is_c5:
                report.passed = False
                report.failures.append(
                    f"forbidden induced embedding: {fd} inside {hd}"
                )
            if embeds and is_c5:
                c5_embeds.append(fd)
    report.notes.append(
        f"family sizes: main=5 half=4; forbidden 4-vertex list=5; "
        f"members embedding into the alternating 5-cycle: {sorted(c5_embeds)}"
    )
    if not c5_embeds:
        report.passed = False
        report.failures.append(
            "expected at least one forbidden graph inside the alternating "
            "5-cycle (that is why it is excluded)"
        )
    report.zero_classes = tuple(sorted(c5_embeds))
    return report
