"""Extremal graph families: builders, recognizers and structure witnesses.

Ω graphs attain the size-based lower bound on γ×2 and Ω′ is the tree
restriction of Ω. Ψ graphs attain the k-tuple domatic upper bound and Θ
graphs are exactly the domatically full graphs.
"""

import itertools
import logging
import random
from dataclasses import dataclass

from .errors import CapExceededError, ConstructionError, HypothesisError, UndefinedParameterError
from .exact import (
    domatic_bound_tight,
    domatic_ktuple_exact,
    find_partition,
    gamma_ktuple,
    is_ktuple_dominating,
    is_psi_partition,
    vertex_mask,
)
from .graph import Graph, circulant, degree_profile, disjoint_union, is_connected, iter_bits

logger = logging.getLogger(__name__)

RECOGNIZE_MAX_ORDER = 16
STRUCTURE_MAX_ORDER = 12


# Ω: graphs with γ×2 = (4n - 2m + e - p)/3


@dataclass(frozen=True)
class OmegaParams:
    """Bipartite skeleton X-Y plus a matching inside Y and pendants on the rest of Y.

    Built graphs number Y first (``0..y_count-1``), then X, then the
    end-vertices in the order of the Y-vertices they hang from.
    """

    x_count: int
    y_count: int
    matching: tuple[tuple[int, int], ...]
    pendants: tuple[int, ...]  # end-vertices per Y-vertex, 0 for M-saturated ones
    x_neighbors: tuple[tuple[int, int], ...]  # the two Y-neighbours of each X-vertex

    def __post_init__(self):
        if self.y_count < 1 or self.x_count < 0:
            raise ConstructionError("y_count must be positive and x_count non-negative")
        if len(self.pendants) != self.y_count:
            raise ConstructionError(f"pendants: expected {self.y_count} entries, got {len(self.pendants)}")
        if len(self.x_neighbors) != self.x_count:
            raise ConstructionError(f"x_neighbors: expected {self.x_count} pairs, got {len(self.x_neighbors)}")

        partner = self.partner_map()
        for x, (u, w) in enumerate(self.x_neighbors):
            if u == w or not (0 <= u < self.y_count and 0 <= w < self.y_count):
                raise ConstructionError(f"x_neighbors: X-vertex {x} needs two distinct Y-vertices, got ({u}, {w})")
        for y, count in enumerate(self.pendants):
            if y in partner and count:
                raise ConstructionError(f"pendants: M-saturated Y-vertex {y} cannot carry end-vertices")
            if y not in partner and count < 1:
                raise ConstructionError(f"pendants: unsaturated Y-vertex {y} needs at least one end-vertex")

        # a saturated vertex without X-neighbours would become an end-vertex
        attached = {y for pair in self.x_neighbors for y in pair}
        for u, w in self.matching:
            if (u in attached) != (w in attached):
                lonely = w if u in attached else u
                raise ConstructionError(f"matching: saturated Y-vertex {lonely} has no X-neighbour")

    def partner_map(self) -> dict[int, int]:
        partner: dict[int, int] = {}
        for u, w in self.matching:
            if u == w or not (0 <= u < self.y_count and 0 <= w < self.y_count):
                raise ConstructionError(f"matching: invalid pair ({u}, {w})")
            if u in partner or w in partner:
                raise ConstructionError(f"matching: pair ({u}, {w}) is not disjoint from the others")
            partner[u], partner[w] = w, u
        return partner

    @property
    def order(self) -> int:
        return self.y_count + self.x_count + sum(self.pendants)


@dataclass(frozen=True)
class OmegaBuild:
    graph: Graph
    params: OmegaParams
    witness: tuple[int, ...]  # double dominating set of size (4n - 2m + e - p)/3


def build_omega(params: OmegaParams) -> OmegaBuild:
    y, x = params.y_count, params.x_count
    edges = list(params.matching)
    edges.extend((y + i, u) for i, pair in enumerate(params.x_neighbors) for u in pair)
    leaf = y + x
    for center, count in enumerate(params.pendants):
        for _ in range(count):
            edges.append((center, leaf))
            leaf += 1
    G = Graph.from_edges(params.order, edges)

    witness = tuple(range(y)) + tuple(range(y + x, G.n))
    P = degree_profile(G)
    if 3 * len(witness) != 4 * G.n - 2 * G.m + P.e - P.p:
        raise AssertionError("Ω witness size differs from (4n - 2m + e - p)/3")
    if not is_ktuple_dominating(G, witness, 2):
        raise AssertionError("Ω witness is not double dominating")
    return OmegaBuild(G, params, witness)


def random_omega_params(rng: random.Random, max_y: int = 4, max_x: int = 3) -> OmegaParams:
    """Draw small valid parameters; saturated vertices left without X-neighbours are patched."""
    y_count = rng.randint(1, max_y)
    order = list(range(y_count))
    rng.shuffle(order)
    pairs = rng.randint(0, y_count // 2)
    matching = [tuple(sorted(order[2 * i : 2 * i + 2])) for i in range(pairs)]
    saturated = {u for pair in matching for u in pair}
    pendants = [0 if v in saturated else rng.randint(1, 2) for v in range(y_count)]

    x_neighbors = []
    if y_count >= 2:
        for _ in range(rng.randint(0, max_x)):
            x_neighbors.append(tuple(sorted(rng.sample(range(y_count), 2))))
    attached = {u for pair in x_neighbors for u in pair}
    # patching one vertex may attach the partner-less side of another pair
    while True:
        lonely = next(
            (v for u, w in matching for v in (u, w) if v not in attached and (u in attached or w in attached)),
            None,
        )
        if lonely is None:
            break
        other = rng.choice([v for v in range(y_count) if v != lonely])
        x_neighbors.append(tuple(sorted((lonely, other))))
        attached.update((lonely, other))

    return OmegaParams(
        x_count=len(x_neighbors),
        y_count=y_count,
        matching=tuple(matching),
        pendants=tuple(pendants),
        x_neighbors=tuple(x_neighbors),
    )


@dataclass(frozen=True)
class OmegaWitness:
    core: tuple[int, ...]  # A: a minimum double dominating set
    outside: tuple[int, ...]  # V∖A: independent, two neighbours each in A
    matching: tuple[tuple[int, int], ...]  # P₂ components made of non-forced vertices


def _omega_structure(G: Graph, core: int, ends: int, supports: int) -> bool:
    rows = G.rows
    outside = G.full_mask & ~core
    for v in iter_bits(outside):
        if rows[v] & outside or (rows[v] & core).bit_count() != 2:
            return False
    forced = ends | supports
    for v in iter_bits(core & ~ends):
        inner = rows[v] & core
        if supports >> v & 1:
            # star centre: every neighbour inside A is an end-vertex
            if inner & ~ends:
                return False
        elif inner.bit_count() != 1 or inner & forced:
            return False
    return True


def recognize_omega(G: Graph) -> OmegaWitness | None:
    """Find A ⊇ L ∪ P with |A| = (4n - 2m + e - p)/3 splitting G as Ω does."""
    if G.n == 0 or G.min_degree < 1:
        raise UndefinedParameterError("Ω recognition needs minimum degree at least 1")
    if G.n > RECOGNIZE_MAX_ORDER:
        raise CapExceededError(f"Ω recognition is limited to n <= {RECOGNIZE_MAX_ORDER}")
    P = degree_profile(G)
    size, rem = divmod(4 * G.n - 2 * G.m + P.e - P.p, 3)
    if rem:
        return None

    ends = vertex_mask(v for v in range(G.n) if G.degree(v) == 1)
    supports = vertex_mask(v for v in range(G.n) if G.rows[v] & ends)
    forced = ends | supports
    extra = size - forced.bit_count()
    if extra < 0:
        return None

    free = list(iter_bits(G.full_mask & ~forced))
    for combo in itertools.combinations(free, extra):
        core = forced | vertex_mask(combo)
        if _omega_structure(G, core, ends, supports):
            matching = tuple(
                (u, w) for u in combo for w in iter_bits(G.rows[u] & core) if u < w
            )
            return OmegaWitness(
                core=tuple(iter_bits(core)),
                outside=tuple(iter_bits(G.full_mask & ~core)),
                matching=matching,
            )
    return None


def omega_params_from_witness(G: Graph, witness: OmegaWitness) -> tuple[OmegaParams, list[int]]:
    """Rebuild parameters from a recognized graph.

    Returns the parameters and ``perm`` with ``perm[v]`` the vertex of the
    rebuilt graph playing the role of ``v``. An isolated P₂ made of two
    end-vertices is read as a one-leaf star centred at its smaller vertex.
    """
    ends = {v for v in range(G.n) if G.degree(v) == 1}
    core = set(witness.core)
    y_vertices = [v for v in witness.core if v not in ends]
    y_vertices.extend(
        v for v in witness.core if v in ends and G.neighbors(v)[0] in ends and v < G.neighbors(v)[0]
    )
    y_vertices.sort()
    y_index = {v: i for i, v in enumerate(y_vertices)}
    leaves = [v for v in witness.core if v not in y_index]

    pendants = [0] * len(y_vertices)
    by_centre: dict[int, list[int]] = {v: [] for v in y_vertices}
    for leaf in leaves:
        centre = G.neighbors(leaf)[0]
        pendants[y_index[centre]] += 1
        by_centre[centre].append(leaf)

    x_vertices = list(witness.outside)
    x_neighbors = tuple(
        tuple(sorted(y_index[u] for u in iter_bits(G.rows[x] & vertex_mask(core)))) for x in x_vertices
    )
    params = OmegaParams(
        x_count=len(x_vertices),
        y_count=len(y_vertices),
        matching=tuple(sorted((y_index[u], y_index[w]) for u, w in witness.matching)),
        pendants=tuple(pendants),
        x_neighbors=x_neighbors,
    )

    perm = [0] * G.n
    for v, i in y_index.items():
        perm[v] = i
    for i, x in enumerate(x_vertices):
        perm[x] = len(y_vertices) + i
    slot = len(y_vertices) + len(x_vertices)
    for centre in y_vertices:
        for leaf in by_centre[centre]:
            perm[leaf] = slot
            slot += 1
    return params, perm


# Ω′: the trees in Ω


def _anchor(name: str, a: int, s: int) -> int:
    kind, number = name[:1], name[1:]
    if not number.isdigit():
        raise ConstructionError(f"Connector anchor {name!r} must look like 'p3' or 'c0'")
    index = int(number)
    if kind == "p" and index < 2 * a:
        return index
    if kind == "c" and index < s:
        return 2 * a + index
    raise ConstructionError(f"Connector anchor {name!r} is out of range for a={a}, s={s}")


def build_omega_prime_tree(
    a: int, star_leaf_sizes: list[int], connectors: list[tuple[str, str]]
) -> OmegaBuild:
    """Join ``a`` copies of P₂ and stars through degree-two connector vertices.

    P₂ copy ``i`` has anchors ``p{2i}`` and ``p{2i+1}``; star ``j`` has its
    centre at anchor ``c{j}``. There must be exactly ``a + s - 1``
    connectors, every P₂ vertex must meet one, and the result must be a tree.
    """
    s = len(star_leaf_sizes)
    if a < 0 or a + s < 1:
        raise ConstructionError("Need at least one P₂ copy or star")
    if any(size < 1 for size in star_leaf_sizes):
        raise ConstructionError("star_leaf_sizes: every star needs at least one leaf")
    if len(connectors) != a + s - 1:
        raise ConstructionError(f"connectors: expected r = a + s - 1 = {a + s - 1}, got {len(connectors)}")

    x_neighbors = []
    for first, second in connectors:
        u, w = _anchor(first, a, s), _anchor(second, a, s)
        if u == w:
            raise ConstructionError(f"Connector ({first}, {second}) joins an anchor to itself")
        x_neighbors.append(tuple(sorted((u, w))))
    touched = {u for pair in x_neighbors for u in pair}
    for v in range(2 * a):
        if v not in touched:
            raise ConstructionError(f"P₂ vertex p{v} is not incident with any connector")

    params = OmegaParams(
        x_count=len(x_neighbors),
        y_count=2 * a + s,
        matching=tuple((2 * i, 2 * i + 1) for i in range(a)),
        pendants=(0,) * (2 * a) + tuple(star_leaf_sizes),
        x_neighbors=tuple(x_neighbors),
    )
    built = build_omega(params)
    G = built.graph
    if G.m != G.n - 1 or not is_connected(G):
        raise ConstructionError("Connectors do not produce a tree (a cycle or a disconnected piece remains)")
    return built


# Ψ: graphs attaining the k-tuple domatic upper bound


def psi_parts(r: int, q: int) -> list[list[int]]:
    """The blocks H_1..H_r of :func:`build_psi`, in vertex order."""
    return [list(range(i * q, (i + 1) * q)) for i in range(r)]


def build_psi(k: int, r: int, q: int, seed: int = 0) -> Graph:
    """r copies of a (k-1)-regular circulant of order q, pairwise joined k-regularly.

    Vertex ``i`` of block ``s`` meets vertices ``i..i+k-1 (mod q)`` of every
    later block. ``seed`` picks the circulant offsets shared by all blocks.
    """
    if k < 1 or r < 1:
        raise ConstructionError("k and r must be at least 1")
    if q < k:
        raise ConstructionError(f"q: a k-regular bipartite join needs q >= k, got q={q}, k={k}")
    if q * (k - 1) % 2:
        raise ConstructionError(f"q*(k-1) must be even for a (k-1)-regular part, got q={q}, k={k}")

    rng = random.Random(seed)
    offsets = rng.sample(range(1, (q + 1) // 2), (k - 1) // 2) if k > 2 else []
    if (k - 1) % 2:
        offsets.append(q // 2)
    block = circulant(q, offsets) if q > 1 else Graph(1, (0,))
    assert block.min_degree == block.max_degree == k - 1

    base = disjoint_union(*([block] * r))
    edges = list(base.edges())
    for s, t in itertools.combinations(range(r), 2):
        for i in range(q):
            edges.extend((s * q + i, t * q + (i + j) % q) for j in range(k))
    G = Graph.from_edges(r * q, edges)
    assert G.min_degree == G.max_degree == k * r - 1
    assert is_psi_partition(G, psi_parts(r, q), k)
    logger.debug(f"Built Ψ member k={k} r={r} q={q} with offsets {sorted(offsets)}")
    return G


# Θ: full graphs


def build_theta(
    parts: list[Graph],
    i: int,
    v: int,
    cross_edges: list[tuple[int, int]],
    v_targets: list[int] | None = None,
) -> Graph:
    """Join isolated vertex ``v`` of ``parts[i]`` to one vertex of every other part.

    Vertices are numbered part after part; ``v`` is local to ``parts[i]``
    while ``cross_edges`` and ``v_targets`` use global numbers. By default
    ``v`` is joined to the first vertex of each other part.
    """
    if not 0 <= i < len(parts):
        raise ConstructionError(f"Part index {i} out of range")
    if not 0 <= v < parts[i].n or parts[i].degree(v) != 0:
        raise ConstructionError(f"Vertex {v} is not an isolated vertex of part {i}")

    starts = list(itertools.accumulate((p.n for p in parts), initial=0))
    owner = [t for t, p in enumerate(parts) for _ in range(p.n)]
    apex = starts[i] + v
    others = [t for t in range(len(parts)) if t != i]
    if v_targets is None:
        v_targets = [starts[t] for t in others]
    if sorted(owner[u] for u in v_targets) != others:
        raise ConstructionError("v_targets must name exactly one vertex in each other part")

    base = disjoint_union(*parts)
    edges = list(base.edges())
    edges.extend((apex, u) for u in v_targets)
    for u, w in cross_edges:
        if apex in (u, w):
            raise ConstructionError(f"Cross edge ({u}, {w}) touches the isolated vertex {apex}")
        if owner[u] == owner[w]:
            raise ConstructionError(f"Cross edge ({u}, {w}) lies inside part {owner[u]}")
        edges.append((u, w))
    G = Graph.from_edges(base.n, edges)

    for u in range(G.n):
        for t in range(len(parts)):
            if t != owner[u] and not any(owner[w] == t for w in G.neighbors(u)):
                raise ConstructionError(f"Vertex {u} of part {owner[u]} has no neighbour in part {t}")
    return G


@dataclass(frozen=True)
class FullWitness:
    vertex: int  # minimum-degree vertex, alone in its part among its neighbours
    partition: tuple[tuple[int, ...], ...]


def full_structure_witness(G: Graph) -> FullWitness | None:
    """Domatic partition of size δ+1 in which a minimum-degree vertex sees one vertex per other part."""
    if G.n < 1:
        raise UndefinedParameterError("Fullness needs at least one vertex")
    if G.n > STRUCTURE_MAX_ORDER:
        raise CapExceededError(f"Structure search is limited to n <= {STRUCTURE_MAX_ORDER}")
    delta = G.min_degree
    v = next(u for u in range(G.n) if G.degree(u) == delta)
    fixed = {v: 0}
    fixed.update((u, j) for j, u in enumerate(G.neighbors(v), start=1))
    parts = find_partition(G, 1, delta + 1, fixed)
    if parts is None:
        return None
    for j, part in enumerate(parts):
        if j and len(set(part) & set(G.neighbors(v))) != 1:
            raise AssertionError(f"Vertex {v} does not see exactly one vertex of part {j}")
    return FullWitness(v, tuple(tuple(p) for p in parts))


@dataclass(frozen=True)
class MatchingDecomposition:
    """Independent parts whose pairwise edges form perfect matchings."""

    parts: tuple[tuple[int, ...], ...]
    matchings: dict[tuple[int, int], tuple[tuple[int, int], ...]]

    def to_dict(self) -> dict:
        return {
            "parts": [list(p) for p in self.parts],
            "matchings": [
                {"parts": list(key), "edges": [list(e) for e in edges]}
                for key, edges in sorted(self.matchings.items())
            ],
        }


def _matching_decomposition(G: Graph, parts) -> MatchingDecomposition:
    owner = {v: j for j, part in enumerate(parts) for v in part}
    matchings: dict[tuple[int, int], list[tuple[int, int]]] = {
        pair: [] for pair in itertools.combinations(range(len(parts)), 2)
    }
    for u, w in G.edges():
        s, t = sorted((owner[u], owner[w]))
        if s == t:
            raise AssertionError(f"Edge ({u}, {w}) lies inside part {s}")
        matchings[(s, t)].append((u, w) if owner[u] == s else (w, u))
    for (s, t), edges in matchings.items():
        if len(edges) != len(parts[s]) or len(parts[s]) != len(parts[t]):
            raise AssertionError(f"Edges between parts {s} and {t} are not a perfect matching")
    return MatchingDecomposition(
        tuple(tuple(p) for p in parts),
        {key: tuple(edges) for key, edges in matchings.items()},
    )


def regular_full_decomposition(G: Graph) -> MatchingDecomposition | None:
    """Split an r-regular full graph into r+1 parts paired by perfect matchings."""
    if G.n < 1 or G.min_degree != G.max_degree:
        raise HypothesisError("The decomposition applies to non-empty regular graphs")
    if G.n > STRUCTURE_MAX_ORDER:
        raise CapExceededError(f"Structure search is limited to n <= {STRUCTURE_MAX_ORDER}")
    parts = find_partition(G, 1, G.min_degree + 1)
    if parts is None:
        return None
    return _matching_decomposition(G, parts)


def domatic_matching_decomposition(G: Graph) -> MatchingDecomposition | None:
    """When d(G) meets 1/2 + sqrt(1/4 + 2m/γ), return its perfect-matching partition."""
    gamma = gamma_ktuple(G, 1).value
    domatic = domatic_ktuple_exact(G, 1)
    if not domatic_bound_tight(domatic.value, G.n, G.m, 1, gamma):
        return None
    assert is_psi_partition(G, domatic.partition, 1)
    return _matching_decomposition(G, domatic.partition)
