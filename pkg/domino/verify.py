"""Exhaustive and seeded verification of the domination and domatic statements.

Each statement is registered under a short id together with the universe it
quantifies over. A universe is cut into plain-data shards so it can be fanned
out over worker processes; results are merged in shard order, which keeps
reports identical for identical inputs apart from the wall time.
"""

import itertools
import logging
import random
import sys
import time
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from tqdm import tqdm

from .errors import CapExceededError, DominoError, UnknownTheoremError
from .exact import (
    domatic_bound_holds,
    domatic_bound_tight,
    domatic_ktuple_exact,
    gamma_ktuple,
    gamma_ktuple_bnb,
    is_full,
    is_ktuple_dominating,
    is_psi_partition,
)
from .families import (
    build_psi,
    domatic_matching_decomposition,
    full_structure_witness,
    psi_parts,
    recognize_omega,
    regular_full_decomposition,
)
from .gadget import (
    CnfFormula,
    emit_dimacs_cnf,
    evaluate,
    gadget_gamma_x2,
    is_satisfiable,
    parse_dimacs_cnf,
    random_cnf,
    sat_gadget,
)
from .graph import (
    MAX_ENUMERATION_ORDER,
    MAX_TREE_ORDER,
    Graph,
    corona,
    degree_profile,
    diameter,
    emit_graph6,
    enumerate_graphs,
    enumerate_regular_graphs,
    enumerate_trees,
    extend_transitive_orientation,
    is_connected,
    k1_corona_tower,
    mask_count,
    parse_graph6,
    random_comparability,
    random_graph,
)
from .slater import (
    double_slater,
    proposition_2_1_bounds,
    proposition_2_2_checks,
    theorem4_bound,
    theorem4_equality_predicate,
    theorem_t2_bound,
    theorem_t3_bound,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 7
MASK_CHUNK = 1 << 13
SAMPLE_CHUNK = 10
MAX_RECORDED_FAILURES = 100
PSI_MAX_ORDER = 12
GADGET_BNB_MAX_VARIABLES = 2


@dataclass(frozen=True)
class VerifyOptions:
    seed: int = DEFAULT_SEED
    jobs: int = 1
    progress: bool = False
    pairs: int = 50  # corona pairs per k
    pair_order: int = 4  # largest order of each corona factor
    towers: int = 20  # random H per tower height
    tower_order: int = 6
    orientations: int = 20
    cnfs: int = 20
    cnf_variables: int = 6
    domatic_order: int = 6  # the domatic universes stop here


@dataclass(frozen=True)
class Instance:
    graphs: tuple[Graph, ...]
    params: dict = field(default_factory=dict)

    def encode(self) -> str:
        """graph6 of every graph, space separated (pairs for corona instances)."""
        return " ".join(emit_graph6(G) for G in self.graphs)


@dataclass(frozen=True)
class Failure:
    graph6: str
    detail: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"graph6": self.graph6, "detail": self.detail, "params": self.params}

    @classmethod
    def from_dict(cls, data: dict) -> "Failure":
        return cls(data["graph6"], data.get("detail", ""), dict(data.get("params", {})))


@dataclass(frozen=True)
class Report:
    theorem: str
    universe: dict
    instances: int
    failures: tuple[Failure, ...]
    failure_count: int
    wall_time: float

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_dict(self, include_time: bool = True) -> dict:
        data = {
            "theorem": self.theorem,
            "universe": self.universe,
            "instances": self.instances,
            "passed": self.passed,
            "failure_count": self.failure_count,
            "failures": [f.to_dict() for f in self.failures],
        }
        if include_time:
            data["wall_time"] = round(self.wall_time, 3)
        return data


@dataclass(frozen=True)
class GraphFilter:
    """Hypotheses a statement places on the graphs it quantifies over."""

    connected: bool = False
    min_degree: int = 0
    trees_only: bool = False
    regular: bool = False
    n_min: int = 1
    domatic_cap: bool = False

    def admits(self, G: Graph) -> bool:
        if G.n < self.n_min or G.min_degree < self.min_degree:
            return False
        if self.trees_only and (G.m != G.n - 1 or not is_connected(G)):
            return False
        if self.connected and not is_connected(G):
            return False
        if self.regular and G.min_degree != G.max_degree:
            return False
        return True

    def orders(self, n_max: int, options: VerifyOptions) -> range:
        top = min(n_max, options.domatic_order) if self.domatic_cap else n_max
        return range(self.n_min, top + 1)

    def describe(self) -> dict:
        return {
            "connected": self.connected,
            "min_degree": self.min_degree,
            "trees_only": self.trees_only,
            "regular": self.regular,
        }


@dataclass(frozen=True)
class Shard:
    theorem: str
    kind: str
    args: tuple


@dataclass(frozen=True)
class Theorem:
    id: str
    description: str
    check: Callable[[Instance], str | None]
    filter: GraphFilter | None = None
    samples: Callable[[str, VerifyOptions], list[Shard]] | None = None

    def shards(self, n_max: int, options: VerifyOptions) -> list[Shard]:
        shards: list[Shard] = []
        if self.filter is not None:
            for n in self.filter.orders(n_max, options):
                if self.filter.trees_only:
                    shards.append(Shard(self.id, "trees", (n,)))
                elif self.filter.regular:
                    shards.extend(Shard(self.id, "regular", (n, r)) for r in range(n))
                else:
                    total = mask_count(n)
                    shards.extend(
                        Shard(self.id, "graphs", (n, start, min(start + MASK_CHUNK, total)))
                        for start in range(0, total, MASK_CHUNK)
                    )
        if self.samples is not None:
            shards.extend(self.samples(self.id, options))
        return shards

    def universe(self, n_max: int, options: VerifyOptions) -> dict:
        data: dict = {"seed": options.seed}
        if self.filter is not None:
            orders = self.filter.orders(n_max, options)
            data.update(n_min=orders.start, n_max=orders.stop - 1, filters=self.filter.describe())
        if self.samples is not None:
            data["samples"] = _SAMPLE_DESCRIPTIONS[self.id](options)
        return data


THEOREMS: dict[str, Theorem] = {}
_SAMPLE_DESCRIPTIONS: dict[str, Callable[[VerifyOptions], dict]] = {}


def theorem(
    theorem_id: str,
    description: str,
    graph_filter: GraphFilter | None = None,
    samples: Callable[[str, VerifyOptions], list[Shard]] | None = None,
    sample_description: Callable[[VerifyOptions], dict] | None = None,
):
    def register(check: Callable[[Instance], str | None]):
        THEOREMS[theorem_id] = Theorem(theorem_id, description, check, graph_filter, samples)
        if sample_description is not None:
            _SAMPLE_DESCRIPTIONS[theorem_id] = sample_description
        return check

    return register


def _gamma(G: Graph, k: int) -> int:
    return gamma_ktuple(G, k).value


# Graph statements


@theorem("eq1", "γ×2 >= sℓ×2", GraphFilter(min_degree=1))
def check_eq1(instance: Instance) -> str | None:
    (G,) = instance.graphs
    g2, sl2 = _gamma(G, 2), double_slater(degree_profile(G))
    if g2 < sl2:
        return f"γ×2 = {g2} < sℓ×2 = {sl2}"
    return None


@theorem("prop21", "⌈2n/(1+Δ)⌉ <= sℓ×2 <= ⌈2n/(1+δ)⌉ for δ >= 2", GraphFilter(min_degree=2))
def check_prop21(instance: Instance) -> str | None:
    (G,) = instance.graphs
    P = degree_profile(G)
    lower, upper = proposition_2_1_bounds(P)
    sl2 = double_slater(P)
    if not lower <= sl2 <= upper:
        return f"sℓ×2 = {sl2} outside [{lower}, {upper}]"
    return None


@theorem("prop22", "difference bounds and the three sℓ×2 biconditionals for δ >= 2", GraphFilter(min_degree=2))
def check_prop22(instance: Instance) -> str | None:
    (G,) = instance.graphs
    checks = proposition_2_2_checks(G)
    if not checks.holds:
        return f"statement fails: {checks}"
    return None


@theorem("thm-general", "γ×2 >= (4n-2m+e-p)/3 with equality iff G ∈ Ω", GraphFilter(min_degree=1))
def check_general(instance: Instance) -> str | None:
    (G,) = instance.graphs
    P = degree_profile(G)
    bound = 4 * G.n - 2 * G.m + P.e - P.p
    g2 = _gamma(G, 2)
    if 3 * g2 < bound:
        return f"γ×2 = {g2} < ({bound})/3"
    witness = recognize_omega(G)
    if (3 * g2 == bound) != (witness is not None):
        return f"equality is {3 * g2 == bound} but Ω recognition returned {witness}"
    if witness is not None and (len(witness.core) != g2 or not is_ktuple_dominating(G, witness.core, 2)):
        return f"Ω witness {witness.core} is not a γ×2-set"
    return None


@theorem("thm-t2", "γ×2(T) >= (2n+ℓ-s+2)/3 with equality iff T ∈ Ω′", GraphFilter(trees_only=True, n_min=2))
def check_t2(instance: Instance) -> str | None:
    (T,) = instance.graphs
    P = degree_profile(T)
    bound = theorem_t2_bound(T.n, P.e, P.p)
    g2 = _gamma(T, 2)
    if g2 < bound:
        return f"γ×2 = {g2} < {bound}"
    if (g2 == bound) != (recognize_omega(T) is not None):
        return f"equality is {g2 == bound} but Ω recognition disagrees"
    return None


@theorem("thm-t3", "γ×2 >= (2n+e-p+2)/3 - 2c/3 with c = m-n+1", GraphFilter(connected=True, min_degree=1))
def check_t3(instance: Instance) -> str | None:
    (G,) = instance.graphs
    P = degree_profile(G)
    bound = theorem_t3_bound(G.n, P.e, P.p, G.m - G.n + 1)
    g2 = _gamma(G, 2)
    if g2 < bound:
        return f"γ×2 = {g2} < {bound}"
    return None


@theorem("thm-t4", "γ×2 >= sℓ×2 >= (4n-2m+e-p)/3 and the equality predicate", GraphFilter(connected=True, min_degree=1))
def check_t4(instance: Instance) -> str | None:
    (G,) = instance.graphs
    P = degree_profile(G)
    g2, sl2, bound = _gamma(G, 2), double_slater(P), theorem4_bound(P)
    if not g2 >= sl2 >= bound:
        return f"chain broken: γ×2 = {g2}, sℓ×2 = {sl2}, bound = {bound}"
    if theorem4_equality_predicate(P) != (sl2 == bound):
        return f"predicate disagrees with sℓ×2 = {sl2} vs bound {bound}"
    return None


@theorem("thm-full", "G is full iff it has the Θ structure", GraphFilter())
def check_full(instance: Instance) -> str | None:
    (G,) = instance.graphs
    full = is_full(G)
    witness = full_structure_witness(G)
    if full != (witness is not None):
        return f"is_full = {full} but structure witness is {witness}"
    return None


@theorem("cor-regular-full", "an r-regular G is full iff it splits into r+1 perfectly matched parts", GraphFilter(regular=True))
def check_regular_full(instance: Instance) -> str | None:
    (G,) = instance.graphs
    full = is_full(G)
    decomposition = regular_full_decomposition(G)
    if full != (decomposition is not None):
        return f"is_full = {full} but decomposition is {decomposition}"
    return None


@theorem("cor-domatic", "d <= 1/2 + sqrt(1/4 + 2m/γ) with equality iff perfect-matching parts", GraphFilter(domatic_cap=True))
def check_cor_domatic(instance: Instance) -> str | None:
    (G,) = instance.graphs
    gamma = _gamma(G, 1)
    d = domatic_ktuple_exact(G, 1).value
    if not domatic_bound_holds(d, G.n, G.m, 1, gamma):
        return f"d = {d} exceeds the bound for γ = {gamma}"
    tight = domatic_bound_tight(d, G.n, G.m, 1, gamma)
    matched = G.min_degree == G.max_degree and d == G.min_degree + 1
    if tight != matched:
        return f"tight = {tight} but regular-and-full = {matched}"
    if tight and domatic_matching_decomposition(G) is None:
        return "tight bound without a perfect-matching decomposition"
    return None


# Domatic bound: all small graphs plus generated Ψ members


def _psi_shards(theorem_id: str, options: VerifyOptions) -> list[Shard]:
    shards = []
    for k, r, q in itertools.product(range(1, PSI_MAX_ORDER + 1), repeat=3):
        if q >= k and r * q <= PSI_MAX_ORDER and q * (k - 1) % 2 == 0:
            shards.append(Shard(theorem_id, "psi", (k, r, q, options.seed)))
    return shards


def _psi_description(options: VerifyOptions) -> dict:
    return {"psi_members": len(_psi_shards("", options)), "max_order": PSI_MAX_ORDER}


def _check_domatic_graph(G: Graph) -> str | None:
    for k in (1, 2):
        if G.min_degree < k - 1:
            continue
        gamma = _gamma(G, k)
        domatic = domatic_ktuple_exact(G, k)
        d = domatic.value
        if not domatic_bound_holds(d, G.n, G.m, k, gamma):
            return f"k={k}: d×k = {d} exceeds the bound for γ×k = {gamma}"
        if k == 1 and d > G.min_degree + 1:
            return f"d = {d} > δ + 1"
        tight = domatic_bound_tight(d, G.n, G.m, k, gamma)
        if tight != is_psi_partition(G, domatic.partition, k):
            return f"k={k}: tight = {tight} disagrees with the Ψ structure of {domatic.partition}"
    return None


def _check_psi_member(params: dict) -> str | None:
    k, r, q = params["k"], params["r"], params["q"]
    G = build_psi(k, r, q, params["seed"])
    gamma = _gamma(G, k)
    d = domatic_ktuple_exact(G, k).value
    if (d, gamma) != (r, q):
        return f"Ψ member has d×k = {d}, γ×k = {gamma}; expected {r}, {q}"
    if not domatic_bound_tight(d, G.n, G.m, k, gamma):
        return "Ψ member misses equality in the domatic bound"
    if not is_psi_partition(G, psi_parts(r, q), k):
        return "block partition is not a Ψ partition"
    return None


@theorem(
    "thm-domatic",
    "d×k <= 1/2 + sqrt(1/4 + (2m-(k-1)n)/(kγ×k)) with equality iff G ∈ Ψ",
    GraphFilter(domatic_cap=True),
    samples=_psi_shards,
    sample_description=_psi_description,
)
def check_domatic(instance: Instance) -> str | None:
    if instance.params.get("kind") == "psi":
        return _check_psi_member(instance.params)
    (G,) = instance.graphs
    return _check_domatic_graph(G)


# Corona products and towers


def _corona_shards(theorem_id: str, options: VerifyOptions) -> list[Shard]:
    return [
        Shard(theorem_id, "corona", (k, options.seed, start, min(start + SAMPLE_CHUNK, options.pairs), options.pair_order))
        for k in (2, 3)
        for start in range(0, options.pairs, SAMPLE_CHUNK)
    ]


def _corona_description(options: VerifyOptions) -> dict:
    return {"pairs_per_k": options.pairs, "k": [2, 3], "max_factor_order": options.pair_order}


@theorem(
    "cor-formula",
    "γ×k(G⊙H) = |V(G)|(γ×(k-1)(H) + 1)",
    samples=_corona_shards,
    sample_description=_corona_description,
)
def check_corona(instance: Instance) -> str | None:
    G, H = instance.graphs
    k = instance.params["k"]
    product = corona(G, H).graph
    lhs = _gamma(product, k)
    rhs = G.n * (_gamma(H, k - 1) + 1)
    if lhs != rhs:
        return f"k={k}: γ×k(G⊙H) = {lhs}, formula gives {rhs}"
    return None


def _tower_shards(theorem_id: str, options: VerifyOptions) -> list[Shard]:
    shards = [
        Shard(theorem_id, "tower", (k, options.seed, start, min(start + SAMPLE_CHUNK, options.towers), options.tower_order))
        for k in (2, 3)
        for start in range(0, options.towers, SAMPLE_CHUNK)
    ]
    shards.extend(
        Shard(theorem_id, "orientation", (options.seed, start, min(start + SAMPLE_CHUNK, options.orientations), options.tower_order))
        for start in range(0, options.orientations, SAMPLE_CHUNK)
    )
    return shards


def _tower_description(options: VerifyOptions) -> dict:
    return {
        "towers_per_k": options.towers,
        "k": [2, 3],
        "max_order": options.tower_order,
        "orientations": options.orientations,
    }


def comparability_instance(key: str, order: int):
    """Seeded comparability graph and its transitive orientation."""
    rng = random.Random(key)
    return random_comparability(rng.randint(1, order), rng)


@theorem(
    "tower",
    "γ×k(H_k) = γ(H) + k - 1, diam(H_t) <= 2, and orientation extension",
    samples=_tower_shards,
    sample_description=_tower_description,
)
def check_tower(instance: Instance) -> str | None:
    params = instance.params
    if params.get("kind") == "orientation":
        G, D = comparability_instance(params["rng"], params["order"])
        extend_transitive_orientation(G, D)
        return None
    (H,) = instance.graphs
    k = params["k"]
    tower = k1_corona_tower(H, k)
    for t, Ht in enumerate(tower[1:], start=2):
        if diameter(Ht) > 2:
            return f"diam(H_{t}) = {diameter(Ht)}"
    lhs, rhs = _gamma(tower[-1], k), _gamma(H, 1) + k - 1
    if lhs != rhs:
        return f"γ×{k}(H_{k}) = {lhs}, expected γ(H) + {k - 1} = {rhs}"
    return None


# Gadget


def _contradictory_cnf(rng: random.Random, a: int) -> CnfFormula:
    """One variable per clause, with (v, v, v) and (-v, -v, -v) for some v."""
    forced = rng.randint(1, a)
    clauses = [(forced,) * 3, (-forced,) * 3]
    for v in range(1, a + 1):
        for _ in range(rng.randint(0, 2)):
            clauses.append(tuple(v if rng.random() < 0.5 else -v for _ in range(3)))
    rng.shuffle(clauses)
    return CnfFormula(a, tuple(clauses))


def gadget_formula(seed: int, index: int, max_variables: int) -> CnfFormula:
    """Every fourth formula is unsatisfiable with one variable per clause, the rest are random."""
    rng = random.Random(f"{seed}-cnf-{index}")
    a = rng.randint(1, max_variables)
    if index % 4 == 3:
        return _contradictory_cnf(rng, a)
    return random_cnf(a, rng.randint(1, max(1, 5 * a // 3)), rng.randrange(1 << 30))


def _gadget_shards(theorem_id: str, options: VerifyOptions) -> list[Shard]:
    return [
        Shard(theorem_id, "gadget", (options.seed, start, min(start + SAMPLE_CHUNK, options.cnfs), options.cnf_variables))
        for start in range(0, options.cnfs, SAMPLE_CHUNK)
    ]


def _gadget_description(options: VerifyOptions) -> dict:
    return {"cnfs": options.cnfs, "max_variables": options.cnf_variables}


@theorem(
    "gadget",
    "satisfiable F gives γ×2 = sℓ×2 = 2a on a properly 4-coloured gadget",
    samples=_gadget_shards,
    sample_description=_gadget_description,
)
def check_gadget(instance: Instance) -> str | None:
    F = parse_dimacs_cnf(instance.params["cnf"])
    G, labels = sat_gadget(F)
    sl2 = double_slater(degree_profile(G))
    clause_edges = sum(G.degree(c) for c in labels.clauses)
    if sl2 < 2 * F.a or (clause_edges >= 3 * F.b and sl2 != 2 * F.a):
        return f"sℓ×2 = {sl2} with {clause_edges} clause edges, 2a = {2 * F.a}"

    satisfiable, _ = is_satisfiable(F)
    solution = gadget_gamma_x2(F)
    if solution.satisfying != satisfiable:
        return f"gadget search says satisfiable={solution.satisfying}, SAT solver says {satisfiable}"
    if satisfiable and (solution.value != 2 * F.a or not evaluate(F, solution.assignment)):
        return "satisfiable formula without a 2a-set from its assignment"
    single = all(len(set(map(abs, clause))) == 1 for clause in F.clauses)
    if single and not satisfiable and solution.value is not None:
        return f"unsatisfiable one-variable formula admits a 2a-set {solution.witness}"
    if F.a <= GADGET_BNB_MAX_VARIABLES:
        exact = gamma_ktuple_bnb(G, 2).value
        if (exact == 2 * F.a) != (solution.value is not None):
            return f"branch and bound finds γ×2 = {exact}, gadget search says {solution.value}"
        if single and not satisfiable and exact <= 2 * F.a:
            return f"unsatisfiable one-variable formula has γ×2 = {exact} <= 2a"
    return None


# Running


def _expand(shard: Shard) -> Iterator[Instance]:
    kind, args = shard.kind, shard.args
    if kind == "graphs":
        n, start, stop = args
        flt = THEOREMS[shard.theorem].filter
        for G in enumerate_graphs(n, connected=flt.connected, min_degree=flt.min_degree, masks=range(start, stop)):
            if flt.admits(G):
                yield Instance((G,))
    elif kind == "trees":
        for T in enumerate_trees(args[0]):
            yield Instance((T,))
    elif kind == "regular":
        for G in enumerate_regular_graphs(*args):
            yield Instance((G,))
    elif kind == "psi":
        k, r, q, seed = args
        yield Instance((build_psi(k, r, q, seed),), {"kind": "psi", "k": k, "r": r, "q": q, "seed": seed})
    elif kind == "corona":
        k, seed, start, stop, order = args
        for i in range(start, stop):
            rng = random.Random(f"{seed}-corona-{k}-{i}")
            G = random_graph(rng.randint(1, order), rng)
            H = random_graph(rng.randint(1, order), rng)
            while H.min_degree < k - 2:
                H = random_graph(rng.randint(2, order), rng)
            yield Instance((G, H), {"k": k})
    elif kind == "tower":
        k, seed, start, stop, order = args
        for i in range(start, stop):
            rng = random.Random(f"{seed}-tower-{k}-{i}")
            yield Instance((random_graph(rng.randint(1, order), rng),), {"k": k})
    elif kind == "orientation":
        seed, start, stop, order = args
        for i in range(start, stop):
            key = f"{seed}-orient-{i}"
            G, _ = comparability_instance(key, order)
            yield Instance((G,), {"kind": "orientation", "rng": key, "order": order})
    elif kind == "gadget":
        seed, start, stop, max_variables = args
        for i in range(start, stop):
            F = gadget_formula(seed, i, max_variables)
            yield Instance((), {"kind": "gadget", "cnf": emit_dimacs_cnf(F)})
    else:
        raise ValueError(f"Unknown shard kind {kind!r}")


def _evaluate(theorem_id: str, instance: Instance) -> str | None:
    try:
        return THEOREMS[theorem_id].check(instance)
    except (AssertionError, DominoError) as exc:
        return f"{type(exc).__name__}: {exc}"


def _run_shard(shard: Shard) -> tuple[int, list[Failure]]:
    count = 0
    failures = []
    for instance in _expand(shard):
        count += 1
        detail = _evaluate(shard.theorem, instance)
        if detail is not None:
            failures.append(Failure(instance.encode(), detail, instance.params))
    return count, failures


def get_theorem(theorem_id: str) -> Theorem:
    try:
        return THEOREMS[theorem_id]
    except KeyError:
        raise UnknownTheoremError(f"Unknown theorem id {theorem_id!r}; known: {', '.join(THEOREMS)}") from None


def verify_theorem(theorem_id: str, n_max: int, options: VerifyOptions | None = None) -> Report:
    options = options or VerifyOptions()
    statement = get_theorem(theorem_id)
    cap = MAX_TREE_ORDER if statement.filter is not None and statement.filter.trees_only else MAX_ENUMERATION_ORDER
    if not 1 <= n_max <= cap:
        raise CapExceededError(f"n_max must lie in 1..{cap}, got {n_max}")

    shards = statement.shards(n_max, options)
    logger.info(f"Verifying {theorem_id}: {len(shards)} shards, n <= {n_max}, {options.jobs} jobs")
    started = time.perf_counter()
    progress = tqdm(total=len(shards), desc=theorem_id, unit="shard", file=sys.stderr, disable=not options.progress)

    results: list[tuple[int, list[Failure]]] = []
    with progress:
        if options.jobs > 1 and len(shards) > 1:
            with ProcessPoolExecutor(max_workers=options.jobs) as executor:
                for result in executor.map(_run_shard, shards):
                    results.append(result)
                    progress.update()
        else:
            for shard in shards:
                results.append(_run_shard(shard))
                progress.update()

    instances = sum(count for count, _ in results)
    failures = [f for _, found in results for f in found]
    if failures:
        logger.warning(f"{theorem_id}: {len(failures)} failures in {instances} instances")
    return Report(
        theorem=theorem_id,
        universe=statement.universe(n_max, options),
        instances=instances,
        failures=tuple(failures[:MAX_RECORDED_FAILURES]),
        failure_count=len(failures),
        wall_time=time.perf_counter() - started,
    )


def recheck(theorem_id: str, failure: Failure) -> str | None:
    """Re-run a recorded failure; returns the failure detail, or None if it now passes."""
    statement = get_theorem(theorem_id)
    graphs = tuple(parse_graph6(code) for code in failure.graph6.split())
    return _evaluate(statement.id, Instance(graphs, dict(failure.params)))
