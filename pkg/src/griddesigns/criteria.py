"""Exact t-design criteria for grid incidence structures, t in {2, 3}.

Two structures are attached to a block graph: D, whose blocks form the orbit
of the block under independent row/column permutations, and (on square grids)
Dhat, the orbit under the full automorphism group of K_{m,m}.  Both are
always 1-designs; whether they are 2- or 3-designs is decided purely by the
subgraph statistics of the block graph, and every test below is an exact
integer/rational equality.  Neither structure is ever a 4-design.

Lambda values need the stabilizer orders and are therefore only computed when
an AutReport is supplied; verdicts alone never pay the automorphism cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .bigraph import BiGraph, stats
from .permgroup import AutReport, group_order


@dataclass(frozen=True)
class CaseReport:
    """Trichotomy of a t-design on a square grid, with the discriminators.

    case1: D = Dhat (tau-equivalent) and D is a t-design.
    case2: D != Dhat and D is a t-design (then Dhat is too).
    case3: Dhat is a t-design but D is not.
    none:  Dhat is not a t-design.

    row_2paths_match / row_claws_match report whether the row-side counts hit
    the half-share values that separate case 3 from the others.
    """

    t: int
    label: str
    d_is_design: bool
    dhat_is_design: bool
    row_2paths_match: bool
    row_claws_match: bool | None  # only meaningful for t = 3


@dataclass(frozen=True)
class CriteriaReport:
    """Full criteria evaluation for one block graph."""

    m: int
    n: int
    k: int
    d_is_2design: bool
    d_is_3design: bool
    dhat_is_2design: bool | None
    dhat_is_3design: bool | None
    case_2: CaseReport | None
    case_3: CaseReport | None
    lambda_d_2: int | None
    lambda_d_3: int | None
    lambda_dhat_2: int | None
    lambda_dhat_3: int | None
    b_d: int | None
    b_dhat: int | None
    k_order: int | None
    g_order: int | None
    tau_equivalent: bool | None
    outside_standard_range: bool  # k outside 3 <= k <= mn/2


def outside_standard_range(g: BiGraph) -> bool:
    """The criteria are stated under 3 <= k <= mn/2; callers get a warning
    flag outside that range rather than a refusal."""
    return not (3 <= g.k and 2 * g.k <= g.m * g.n)


def _d2_targets(m: int, n: int, k: int):
    """Required 2-path counts for D to be a 2-design (exact fractions)."""
    v = m * n
    p2_r = Fraction(k * (k - 1) * (n - 1), 2 * (v - 1))
    p2_c = Fraction(k * (k - 1) * (m - 1), 2 * (v - 1))
    return p2_r, p2_c


def _d3_targets(m: int, n: int, k: int):
    """Additional claw/3-path counts for D to be a 3-design."""
    v = m * n
    claw_r = Fraction(k * (k - 1) * (k - 2) * (n - 1) * (n - 2), 6 * (v - 1) * (v - 2))
    claw_c = Fraction(k * (k - 1) * (k - 2) * (m - 1) * (m - 2), 6 * (v - 1) * (v - 2))
    p3 = Fraction(k * (k - 1) * (k - 2) * (m - 1) * (n - 1), (v - 1) * (v - 2))
    return claw_r, claw_c, p3


def _dhat_targets(m: int, k: int):
    """Required totals for Dhat on an m x m grid (exact fractions)."""
    p2 = Fraction(k * (k - 1), m + 1)
    claw = Fraction(k * (k - 1) * (k - 2) * (m - 2), 3 * (m + 1) * (m * m - 2))
    p3 = Fraction(k * (k - 1) * (k - 2) * (m - 1), (m + 1) * (m * m - 2))
    return p2, claw, p3


def _exact_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return int(x)


def check_D(g: BiGraph, aut: AutReport | None = None):
    """Verdicts (and lambdas, when aut is given) for the row/column-orbit
    design D.

    2-design: the counts of 2-paths of each type equal
    k(k-1)(n-1) / (2(mn-1)) and k(k-1)(m-1) / (2(mn-1)).
    3-design: additionally the two 3-claw counts and the 3-path count hit
    their own exact values.  Non-integral right-hand sides simply fail.
    Returns (is_2design, is_3design, lambda_2, lambda_3).
    """
    m, n, k = g.m, g.n, g.k
    v = m * n
    if v < 2 or k < 2:
        return False, False, None, None
    st = stats(g)
    t_p2r, t_p2c = _d2_targets(m, n, k)
    is2 = st.p2_r == t_p2r and st.p2_c == t_p2c
    is3 = False
    if is2 and v >= 3 and k >= 3:
        t_clr, t_clc, t_p3 = _d3_targets(m, n, k)
        is3 = st.claw3_r == t_clr and st.claw3_c == t_clc and st.p3 == t_p3
    lam2 = lam3 = None
    if aut is not None:
        if is2:
            lam2 = _exact_int(
                Fraction(k * (k - 1) * factorial(m - 1) * factorial(n - 1),
                         (v - 1) * aut.k_order)
            )
        if is3:
            lam3 = _exact_int(
                Fraction(k * (k - 1) * (k - 2) * factorial(m - 1) * factorial(n - 1),
                         (v - 1) * (v - 2) * aut.k_order)
            )
    return is2, is3, lam2, lam3


def check_Dhat(g: BiGraph, aut: AutReport | None = None):
    """Verdicts (and lambdas) for the full-group design Dhat; m = n required.

    2-design: total 2-paths = k(k-1)/(m+1).
    3-design: additionally total 3-claws = k(k-1)(k-2)(m-2) / (3(m+1)(m^2-2))
    and 3-paths = k(k-1)(k-2)(m-1) / ((m+1)(m^2-2)).
    Returns (is_2design, is_3design, lambda_2, lambda_3).
    """
    if g.m != g.n:
        raise ValueError("Dhat criteria require a square grid")
    m, k = g.m, g.k
    if m < 2 or k < 2:
        return False, False, None, None
    st = stats(g)
    t_p2, t_claw, t_p3 = _dhat_targets(m, k)
    is2 = st.p2_total == t_p2
    is3 = is2 and k >= 3 and st.claw3_total == t_claw and st.p3 == t_p3
    lam2 = lam3 = None
    if aut is not None:
        if aut.g_order is None:
            raise ValueError("AutReport has no G data")
        if is2:
            lam2 = _exact_int(
                Fraction(2 * k * (k - 1) * factorial(m - 1) * factorial(m - 2),
                         (m + 1) * aut.g_order)
            )
        if is3:
            lam3 = _exact_int(
                Fraction(2 * k * (k - 1) * (k - 2) * factorial(m - 1) * factorial(m - 2),
                         (m + 1) * (m * m - 2) * aut.g_order)
            )
    return is2, is3, lam2, lam3


def check_D_tau_reduced(g: BiGraph) -> bool | None:
    """Redundant verdict path for tau-equivalent square graphs: then D is a
    2-design iff the total 2-path count is k(k-1)/(m+1).  Returns None when
    the reduction does not apply (callers must check tau-equivalence)."""
    if g.m != g.n or g.k < 2:
        return None
    st = stats(g)
    if st.p2_r != st.p2_c:
        # tau-equivalence forces equal type counts; reduction not applicable
        return None
    return st.p2_total == Fraction(g.k * (g.k - 1), g.m + 1)


def classify_case(g: BiGraph, aut: AutReport, t: int) -> CaseReport:
    """Place a square-grid block graph in the t-design trichotomy.

    The case-3 side condition (row-side 2-path count, and for t = 3 also the
    row-side 3-claw count, off their half-share values) is evaluated and
    reported; it must agree with the direct comparison of the two verdicts.
    """
    if g.m != g.n:
        raise ValueError("case classification requires a square grid")
    if t not in (2, 3):
        raise ValueError("t must be 2 or 3")
    if aut.tau_equivalent is None:
        raise ValueError("AutReport has no G data")
    m, k = g.m, g.k
    st = stats(g)
    d2, d3, _, _ = check_D(g)
    h2, h3, _, _ = check_Dhat(g)
    d_design = d2 if t == 2 else d3
    dhat_design = h2 if t == 2 else h3

    row_2paths_match = st.p2_r == Fraction(k * (k - 1), 2 * (m + 1))
    row_claws_match = None
    if t == 3:
        row_claws_match = st.claw3_r == Fraction(
            k * (k - 1) * (k - 2) * (m - 2), 6 * (m + 1) * (m * m - 2)
        )

    if aut.tau_equivalent and d_design:
        label = "case1"
    elif not aut.tau_equivalent and d_design:
        label = "case2"
    elif dhat_design and not d_design:
        label = "case3"
    else:
        label = "none"

    if label == "case3":
        # discriminator route must agree with the verdict route
        if t == 2:
            assert dhat_design and not row_2paths_match
        else:
            assert dhat_design and (not row_2paths_match or not row_claws_match)

    return CaseReport(t, label, d_design, dhat_design, row_2paths_match, row_claws_match)


def evaluate(g: BiGraph, aut: AutReport | None = None) -> CriteriaReport:
    """Assemble the full report; block counts and lambdas appear only with an
    AutReport, lambdas only for positive verdicts."""
    d2, d3, lam_d2, lam_d3 = check_D(g, aut)
    square = g.m == g.n
    h2 = h3 = None
    lam_h2 = lam_h3 = None
    case_2 = case_3 = None
    b_d = b_dhat = None
    if square:
        h2, h3, lam_h2, lam_h3 = check_Dhat(g, aut)
        if aut is not None:
            case_2 = classify_case(g, aut, 2)
            case_3 = classify_case(g, aut, 3)
    if aut is not None:
        b_d = group_order(g.m, g.n, "K") // aut.k_order
        if square:
            b_dhat = group_order(g.m, g.n, "G") // aut.g_order
    return CriteriaReport(
        m=g.m,
        n=g.n,
        k=g.k,
        d_is_2design=d2,
        d_is_3design=d3,
        dhat_is_2design=h2,
        dhat_is_3design=h3,
        case_2=case_2,
        case_3=case_3,
        lambda_d_2=lam_d2,
        lambda_d_3=lam_d3,
        lambda_dhat_2=lam_h2,
        lambda_dhat_3=lam_h3,
        b_d=b_d,
        b_dhat=b_dhat,
        k_order=aut.k_order if aut else None,
        g_order=aut.g_order if aut else None,
        tau_equivalent=aut.tau_equivalent if aut else None,
        outside_standard_range=outside_standard_range(g),
    )


def lambda_identity_holds(report: CriteriaReport) -> bool:
    """Counting identity every emitted lambda must satisfy:
    lambda * C(v, t) = b * C(k, t)."""
    v = report.m * report.n
    checks = [
        (report.lambda_d_2, report.b_d, 2),
        (report.lambda_d_3, report.b_d, 3),
        (report.lambda_dhat_2, report.b_dhat, 2),
        (report.lambda_dhat_3, report.b_dhat, 3),
    ]
    for lam, b, t in checks:
        if lam is None:
            continue
        if b is None or lam * comb(v, t) != b * comb(report.k, t):
            return False
    return True
