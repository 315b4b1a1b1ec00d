"""Exact k-tuple domination numbers and k-tuple domatic partitions.

Every solver returns a self-checking record: certificates carry the lower
bound that proves optimality, and domatic results are re-validated part by
part before they are returned.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from functools import lru_cache

from .errors import BudgetExceededError, CapExceededError, UndefinedParameterError
from .graph import Graph, degree_profile, iter_bits
from .slater import double_slater, harary_haynes_bound, slater_number, theorem4_bound

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_ORDER = 24
DOMATIC_MAX_ORDER = 12
DEFAULT_NODE_BUDGET = 5_000_000


class BoundSource(StrEnum):
    DOUBLE_SLATER = "double-Slater"
    THEOREM_4 = "Theorem-4"
    SLATER = "Slater"
    HARARY_HAYNES = "Harary-Haynes"
    EXHAUSTED = "exhausted-search"


class Method(StrEnum):
    BRUTE_FORCE = "brute-force"
    BRANCH_AND_BOUND = "branch-and-bound"


def vertex_mask(S) -> int:
    """Accept a bitmask or an iterable of vertices."""
    if isinstance(S, int):
        return S
    mask = 0
    for v in S:
        mask |= 1 << v
    return mask


def is_ktuple_dominating(G: Graph, S, k: int) -> bool:
    """True iff |N[v] ∩ S| >= k for every vertex v."""
    mask = vertex_mask(S)
    return all((row & mask).bit_count() >= k for row in G.closed_rows)


def _require_defined(G: Graph, k: int) -> None:
    if k < 1:
        raise UndefinedParameterError(f"k must be at least 1, got {k}")
    if G.n and G.min_degree < k - 1:
        raise UndefinedParameterError(
            f"γ×{k} is defined only when δ >= {k - 1}, got δ = {G.min_degree}"
        )


@dataclass(frozen=True)
class DominationCertificate:
    k: int
    vertices: tuple[int, ...]
    value: int
    lower_bound: int
    bound_source: BoundSource
    method: Method
    nodes: int = 0

    @property
    def proven_by_bound(self) -> bool:
        return self.bound_source != BoundSource.EXHAUSTED and self.lower_bound == self.value

    def validate(self, G: Graph) -> None:
        if not is_ktuple_dominating(G, self.vertices, self.k):
            raise AssertionError(f"Certificate set is not {self.k}-tuple dominating")
        if len(self.vertices) != self.value or self.lower_bound > self.value:
            raise AssertionError("Certificate value and bound are inconsistent")

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "set": list(self.vertices),
            "value": self.value,
            "lower_bound": self.lower_bound,
            "bound_source": str(self.bound_source),
            "method": str(self.method),
            "nodes": self.nodes,
        }


@lru_cache(maxsize=256)
def _combination_masks(n: int, size: int) -> tuple[int, ...]:
    return tuple(sum(1 << v for v in combo) for combo in itertools.combinations(range(n), size))


def gamma_ktuple_bruteforce(G: Graph, k: int) -> DominationCertificate:
    """Scan subsets by increasing size; the first hit is optimal."""
    _require_defined(G, k)
    if G.n > BRUTE_FORCE_MAX_ORDER:
        raise CapExceededError(f"Brute force is limited to n <= {BRUTE_FORCE_MAX_ORDER}")
    closed = G.closed_rows
    for size in range(G.n + 1):
        if G.n <= 16:
            candidates = _combination_masks(G.n, size)
        else:
            candidates = (vertex_mask(c) for c in itertools.combinations(range(G.n), size))
        for mask in candidates:
            if all((row & mask).bit_count() >= k for row in closed):
                certificate = DominationCertificate(
                    k=k,
                    vertices=tuple(iter_bits(mask)),
                    value=size,
                    lower_bound=size,
                    bound_source=BoundSource.EXHAUSTED,
                    method=Method.BRUTE_FORCE,
                )
                certificate.validate(G)
                return certificate
    raise AssertionError("V(G) is k-tuple dominating whenever δ >= k - 1")


def static_lower_bounds(G: Graph, k: int) -> dict[BoundSource, int]:
    """Degree-sequence lower bounds on γ×k, in tie-break priority order."""
    P = degree_profile(G)
    if G.n == 0:
        return {BoundSource.HARARY_HAYNES: 0}
    if k == 1:
        return {
            BoundSource.SLATER: slater_number(P),
            BoundSource.HARARY_HAYNES: harary_haynes_bound(P, 1),
        }
    if k == 2:
        return {
            BoundSource.DOUBLE_SLATER: double_slater(P),
            BoundSource.THEOREM_4: math.ceil(theorem4_bound(P)),
            BoundSource.HARARY_HAYNES: harary_haynes_bound(P, 2),
        }
    return {BoundSource.HARARY_HAYNES: harary_haynes_bound(P, k)}


class _OutOfBudget(Exception):
    pass


class _BranchAndBound:
    """Depth-first search branching on the least-slack undominated vertex."""

    def __init__(self, G: Graph, k: int, node_budget: int):
        self.G = G
        self.k = k
        self.node_budget = node_budget
        self.closed = G.closed_rows
        self.nodes = 0

        bounds = static_lower_bounds(G, k)
        self.source, self.lower_bound = max(bounds.items(), key=lambda item: item[1])

        # a vertex of degree k-1 needs its whole closed neighbourhood
        self.forced = 0
        for v, row in enumerate(G.rows):
            if row.bit_count() == k - 1:
                self.forced |= self.closed[v]

        self.best = self._greedy(self.forced)
        self.best_size = self.best.bit_count()

    def _unmet(self, chosen: int) -> int:
        unmet = 0
        for v, row in enumerate(self.closed):
            if (row & chosen).bit_count() < self.k:
                unmet |= 1 << v
        return unmet

    def _greedy(self, chosen: int) -> int:
        unmet = self._unmet(chosen)
        while unmet:
            pick = max(
                iter_bits(self.G.full_mask & ~chosen),
                key=lambda u: ((self.closed[u] & unmet).bit_count(), -u),
            )
            chosen |= 1 << pick
            unmet = self._unmet(chosen)
        return chosen

    def solve(self) -> int:
        if self.best_size > self.lower_bound:
            self._search(self.forced, 0, self.forced.bit_count())
        return self.best

    def _search(self, chosen: int, excluded: int, size: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _OutOfBudget
        available = self.G.full_mask & ~chosen & ~excluded

        pivot = -1
        pivot_slack = 0
        unmet = 0
        total_need = 0
        max_need = 0
        for v, row in enumerate(self.closed):
            need = self.k - (row & chosen).bit_count()
            if need <= 0:
                continue
            slack = (row & available).bit_count() - need
            if slack < 0:
                return
            unmet |= 1 << v
            total_need += need
            max_need = max(max_need, need)
            if pivot < 0 or slack < pivot_slack:
                pivot, pivot_slack = v, slack

        if pivot < 0:
            if size < self.best_size:
                self.best, self.best_size = chosen, size
                logger.debug(f"Incumbent improved to {size} after {self.nodes} nodes")
            return

        gains = {u: (self.closed[u] & unmet).bit_count() for u in iter_bits(available)}
        top_gain = max(gains.values())
        if size + max(max_need, -(-total_need // top_gain)) >= self.best_size:
            return

        candidates = sorted(iter_bits(self.closed[pivot] & available), key=lambda u: (-gains[u], u))
        for u in candidates:
            self._search(chosen | (1 << u), excluded, size + 1)
            if self.best_size <= self.lower_bound:
                return
            excluded |= 1 << u


def gamma_ktuple_bnb(G: Graph, k: int, node_budget: int | None = None) -> DominationCertificate:
    """Branch and bound for γ×k, stopping as soon as a lower bound is met."""
    _require_defined(G, k)
    budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
    search = _BranchAndBound(G, k, budget)
    try:
        best = search.solve()
    except _OutOfBudget:
        logger.warning(f"Node budget {budget} exhausted on a graph of order {G.n}")
        raise BudgetExceededError(
            tuple(iter_bits(search.best)), search.lower_bound, search.nodes
        ) from None

    value = best.bit_count()
    if value == search.lower_bound:
        lower, source = search.lower_bound, search.source
    else:
        lower, source = value, BoundSource.EXHAUSTED
    logger.info(f"γ×{k} = {value} ({source}, {search.nodes} nodes)")
    certificate = DominationCertificate(
        k=k,
        vertices=tuple(iter_bits(best)),
        value=value,
        lower_bound=lower,
        bound_source=source,
        method=Method.BRANCH_AND_BOUND,
        nodes=search.nodes,
    )
    certificate.validate(G)
    return certificate


def gamma_ktuple(G: Graph, k: int, node_budget: int | None = None) -> DominationCertificate:
    """Brute force on small graphs, branch and bound above that."""
    if G.n <= DOMATIC_MAX_ORDER:
        return gamma_ktuple_bruteforce(G, k)
    return gamma_ktuple_bnb(G, k, node_budget)


# Domatic partitions


@dataclass(frozen=True)
class DomaticResult:
    k: int
    partition: tuple[tuple[int, ...], ...]

    @property
    def value(self) -> int:
        return len(self.partition)

    def validate(self, G: Graph) -> None:
        covered = sorted(v for part in self.partition for v in part)
        if covered != list(range(G.n)):
            raise AssertionError("Parts do not partition the vertex set")
        for part in self.partition:
            if not is_ktuple_dominating(G, part, self.k):
                raise AssertionError(f"Part {part} is not {self.k}-tuple dominating")

    def to_dict(self) -> dict:
        return {"k": self.k, "value": self.value, "partition": [list(p) for p in self.partition]}


def find_partition(
    G: Graph, k: int, r: int, fixed: dict[int, int] | None = None
) -> list[list[int]] | None:
    """Split V(G) into ``r`` k-tuple dominating sets, or return None.

    ``fixed`` pins vertices to part indices. Free vertices are placed in
    index order and may open at most one new part at a time, so the first
    free vertex of an unpinned search always lands in part 0.
    """
    closed = G.closed_rows
    parts = [0] * r
    unassigned = G.full_mask
    fixed = fixed or {}
    for v, j in fixed.items():
        parts[j] |= 1 << v
        unassigned &= ~(1 << v)

    def feasible(around: int) -> bool:
        for u in iter_bits(around):
            row = closed[u]
            free = (row & unassigned).bit_count()
            for mask in parts:
                if (row & mask).bit_count() + free < k:
                    return False
        return True

    if not feasible(G.full_mask):
        return None
    rest = [v for v in range(G.n) if v not in fixed]

    def place(index: int, used: int) -> bool:
        nonlocal unassigned
        if index == len(rest):
            return True
        v = rest[index]
        bit = 1 << v
        unassigned &= ~bit
        for j in range(min(used + 1, r)):
            parts[j] |= bit
            if feasible(closed[v]) and place(index + 1, max(used, j + 1)):
                return True
            parts[j] &= ~bit
        unassigned |= bit
        return False

    used = max(fixed.values()) + 1 if fixed else 0
    if not place(0, used):
        return None
    return [list(iter_bits(mask)) for mask in parts]


def domatic_ktuple_exact(G: Graph, k: int) -> DomaticResult:
    """Largest k-tuple domatic partition, trying part counts from (δ+1)//k downwards."""
    _require_defined(G, k)
    if G.n > DOMATIC_MAX_ORDER:
        raise CapExceededError(f"Exact domatic search is limited to n <= {DOMATIC_MAX_ORDER}")
    if G.n == 0:
        return DomaticResult(k, ())
    for r in range((G.min_degree + 1) // k, 0, -1):
        parts = find_partition(G, k, r)
        if parts is not None:
            result = DomaticResult(k, tuple(sorted(tuple(p) for p in parts)))
            result.validate(G)
            return result
    raise AssertionError("V(G) alone is a k-tuple domatic partition")


def domatic_upper_bound(n: int, m: int, k: int, gamma_k: int) -> float:
    """1/2 + sqrt(1/4 + (2m - (k-1)n)/(k γ×k)); informational only."""
    return 0.5 + math.sqrt(0.25 + (2 * m - (k - 1) * n) / (k * gamma_k))


def _domatic_form(d: int, n: int, m: int, k: int, gamma_k: int) -> int:
    return -k * gamma_k * d * d + k * gamma_k * d + 2 * m - (k - 1) * n


def domatic_bound_holds(d: int, n: int, m: int, k: int, gamma_k: int) -> bool:
    """Integer form of the domatic upper bound: -kγd² + kγd + 2m - (k-1)n >= 0."""
    return _domatic_form(d, n, m, k, gamma_k) >= 0


def domatic_bound_tight(d: int, n: int, m: int, k: int, gamma_k: int) -> bool:
    return _domatic_form(d, n, m, k, gamma_k) == 0


def is_psi_partition(G: Graph, parts, k: int) -> bool:
    """Each part induces a (k-1)-regular graph and sends exactly k edges from
    each of its vertices into every other part."""
    masks = [vertex_mask(p) for p in parts]
    for i, own in enumerate(masks):
        for v in iter_bits(own):
            row = G.rows[v]
            if (row & own).bit_count() != k - 1:
                return False
            if any((row & other).bit_count() != k for j, other in enumerate(masks) if j != i):
                return False
    return True


def is_full(G: Graph) -> bool:
    """d(G) = δ(G) + 1."""
    if G.n < 1:
        raise UndefinedParameterError("Fullness needs at least one vertex")
    d = domatic_ktuple_exact(G, 1).value
    assert d <= G.min_degree + 1
    return d == G.min_degree + 1
