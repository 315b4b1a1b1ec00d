"""Slater-type lower bounds computed from the degree sequence alone."""

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import ConstructionError, HypothesisError, UndefinedParameterError
from .graph import DegreeProfile, Graph, degree_profile

logger = logging.getLogger(__name__)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def slater_number(P: DegreeProfile) -> int:
    """Least t >= 1 with t + d_1 + ... + d_t >= n (lower bound on γ)."""
    if P.n < 1:
        raise UndefinedParameterError("The Slater number needs at least one vertex")
    for t in range(1, P.n + 1):
        if t + P.prefix[t] >= P.n:
            return t
    raise AssertionError("t = n always satisfies the Slater inequality")


def _double_slater_holds(P: DegreeProfile, t: int) -> bool:
    return t + P.prefix[max(0, t - P.e)] >= 2 * P.n - P.p


def double_slater(P: DegreeProfile) -> int:
    """Least t with t + d_1 + ... + d_{t-e} >= 2n - p.

    The degree sum is empty when t <= e. Defined only for graphs without
    isolated vertices.
    """
    if P.n < 1 or P.min_degree < 1:
        raise UndefinedParameterError("The double Slater number needs minimum degree at least 1")
    for t in range(1, P.n + 1):
        if _double_slater_holds(P, t):
            assert all(_double_slater_holds(P, s) for s in range(t, P.n + 1))
            return t
    raise AssertionError("t = n must satisfy the double Slater inequality when δ >= 1")


def harary_haynes_bound(P: DegreeProfile, k: int = 2) -> int:
    """⌈kn/(1+Δ)⌉: every vertex k-tuple dominates at most 1+Δ closed neighbourhoods."""
    return _ceil_div(k * P.n, 1 + P.max_degree)


def proposition_2_1_bounds(P: DegreeProfile) -> tuple[int, int]:
    """(⌈2n/(1+Δ)⌉, ⌈2n/(1+δ)⌉), bracketing sℓ×2 when δ >= 2."""
    if P.min_degree < 2:
        raise HypothesisError(f"Regular-degree bounds need δ >= 2, got δ = {P.min_degree}")
    return _ceil_div(2 * P.n, 1 + P.max_degree), _ceil_div(2 * P.n, 1 + P.min_degree)


@dataclass(frozen=True)
class Prop22Checks:
    """Both sides of each statement about sℓ×2 for graphs with δ >= 2."""

    sl: int
    sl2: int
    difference: int
    difference_cap: int  # ⌈n/(δ+1)⌉
    sl2_is_two: bool
    has_two_universal: bool
    sl2_is_n: bool
    size_small: bool  # m <= ⌊(n+δ)/2⌋
    sl2_meets_lower: bool  # sℓ×2 = 2n/(1+Δ)
    lower_condition: bool  # (1+Δ) | 2n and d_{2n/(1+Δ)} = Δ

    @property
    def difference_ok(self) -> bool:
        return 1 <= self.difference <= self.difference_cap

    @property
    def holds(self) -> bool:
        return (
            self.difference_ok
            and self.sl2_is_two == self.has_two_universal
            and self.sl2_is_n == self.size_small
            and self.sl2_meets_lower == self.lower_condition
        )


def proposition_2_2_checks(G: Graph) -> Prop22Checks:
    P = degree_profile(G)
    if P.min_degree < 2:
        raise HypothesisError(f"These statements need δ >= 2, got δ = {P.min_degree}")
    n, delta, big = P.n, P.min_degree, P.max_degree
    sl, sl2 = slater_number(P), double_slater(P)

    q, rem = divmod(2 * n, 1 + big)
    return Prop22Checks(
        sl=sl,
        sl2=sl2,
        difference=sl2 - sl,
        difference_cap=_ceil_div(n, delta + 1),
        sl2_is_two=sl2 == 2,
        has_two_universal=sum(1 for d in P.degrees if d == n - 1) >= 2,
        sl2_is_n=sl2 == n,
        size_small=P.m <= (n + delta) // 2,
        sl2_meets_lower=sl2 * (1 + big) == 2 * n,
        lower_condition=rem == 0 and P.d(q) == big,
    )


def theorem4_bound(P: DegreeProfile) -> Fraction:
    """(4n - 2m + e - p)/3 as an exact fraction."""
    return Fraction(4 * P.n - 2 * P.m + P.e - P.p, 3)


def theorem4_equality_predicate(P: DegreeProfile) -> bool:
    """Degree-sequence test for sℓ×2 = (4n - 2m + e - p)/3."""
    if P.min_degree < 1:
        raise UndefinedParameterError("The double Slater number needs minimum degree at least 1")
    n, m, e, p = P.n, P.m, P.e, P.p
    if (n + m + e - p) % 3:
        return False

    def degree_two_at(numerator: int) -> bool:
        q = numerator // 3
        return 1 <= q <= n and P.d(q) == 2

    if P.min_degree >= 2:
        return degree_two_at(4 * n - 2 * m + 3)
    if n == 2 * m - e + p:
        return True
    return n < 2 * m - e + p and degree_two_at(4 * n - 2 * m - 2 * e - p + 3)


def theorem_t2_bound(n: int, leaves: int, supports: int) -> Fraction:
    """(2n + ℓ - s + 2)/3 for a nontrivial tree."""
    return Fraction(2 * n + leaves - supports + 2, 3)


def theorem_t3_bound(n: int, e: int, p: int, cycles: int) -> Fraction:
    """(2n + e - p + 2)/3 - 2c/3 for a connected graph with ``cycles`` cycles."""
    return Fraction(2 * n + e - p + 2 - 2 * cycles, 3)


@dataclass(frozen=True)
class SlaterReport:
    n: int
    m: int
    e: int
    p: int
    sl: int
    sl2: int | None
    lb_regular: int
    ub_regular: int | None
    t4_bound: Fraction | None
    t4_equality: bool | None
    p1: Prop22Checks | None

    def to_dict(self) -> dict:
        data = asdict(self)
        if self.t4_bound is not None:
            data["t4_bound"] = {
                "numerator": self.t4_bound.numerator,
                "denominator": self.t4_bound.denominator,
                "value": str(self.t4_bound),
            }
        if self.p1 is not None:
            data["p1"]["holds"] = self.p1.holds
        return data


def slater_report(G: Graph) -> SlaterReport:
    """Collect every bound this module knows for ``G``.

    Fields that need δ >= 1 (sℓ×2, the size bound) or δ >= 2 (the regular
    upper bound and the δ >= 2 statements) are ``None`` when undefined.
    """
    P = degree_profile(G)
    sl2 = t4 = eq = None
    ub = p1 = None
    if P.min_degree >= 1:
        sl2 = double_slater(P)
        t4 = theorem4_bound(P)
        eq = theorem4_equality_predicate(P)
        assert sl2 >= t4
    if P.min_degree >= 2:
        _, ub = proposition_2_1_bounds(P)
        p1 = proposition_2_2_checks(G)
    logger.debug(f"Slater report n={P.n} m={P.m}: sl2={sl2}, t4={t4}")
    return SlaterReport(
        n=P.n,
        m=P.m,
        e=P.e,
        p=P.p,
        sl=slater_number(P),
        sl2=sl2,
        lb_regular=harary_haynes_bound(P, 2) if P.n else 0,
        ub_regular=ub,
        t4_bound=t4,
        t4_equality=eq,
        p1=p1,
    )


# Constructions separating sℓ×2 from the simpler bounds


def remark_star_path_graph(b: int) -> Graph:
    """Hub 0 joined to every other vertex, the others forming a path; n = 4b + 4.

    Here sℓ×2 = b + 2 while ⌈2n/(1+Δ)⌉ = 2.
    """
    if b < 1:
        raise ConstructionError("b must be at least 1")
    n = 4 * b + 4
    edges = [(0, v) for v in range(1, n)]
    edges.extend((v, v + 1) for v in range(1, n - 1))
    return Graph.from_edges(n, edges)


def remark_spider_tree(b: int) -> Graph:
    """Path P_{6b+4} (vertices 0..) with one pendant leaf per path vertex.

    Here sℓ×2 = 9b + 6 while (2n + ℓ - s + 2)/3 = 8b + 6.
    """
    if b < 1:
        raise ConstructionError("b must be at least 1")
    spine = 6 * b + 4
    edges = [(v, v + 1) for v in range(spine - 1)]
    edges.extend((v, spine + v) for v in range(spine))
    return Graph.from_edges(2 * spine, edges)
