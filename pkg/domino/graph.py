"""Core graph representation, I/O and small-graph enumeration.

Graphs are immutable and store one neighbourhood bitset per vertex: bit ``u``
of ``rows[v]`` is set iff ``uv`` is an edge. Python integers serve as
arbitrary-width bit vectors, so there is no vertex limit in the
representation itself; only the exhaustive enumerators are capped.
"""

import itertools
import math
import random
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import networkx as nx

from .errors import CapExceededError, ConstructionError, GraphParseError, OrientationError


MAX_ENUMERATION_ORDER = 8
MAX_TREE_ORDER = 9
MAX_CANONICAL_ORDER = 8
GRAPH6_HEADER = ">>graph6<<"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    n: int
    rows: tuple[int, ...]
    m: int = field(init=False, compare=False)

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ConstructionError(f"Expected {self.n} adjacency rows, got {len(self.rows)}")
        object.__setattr__(self, "m", sum(row.bit_count() for row in self.rows) // 2)
        if __debug__:
            self.validate()

    def validate(self) -> None:
        """Check symmetry, absence of loops and the handshake identity."""
        full = (1 << self.n) - 1
        total = 0
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ConstructionError(f"Vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ConstructionError(f"Vertex {v} has a self-loop")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise ConstructionError(f"Edge {v}-{u} is not symmetric")
            total += row.bit_count()
        if total != 2 * self.m:
            raise ConstructionError("Edge count does not match half the degree sum")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ConstructionError(f"Self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ConstructionError(f"Edge {u}-{v} outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Convert a networkx graph, numbering vertices in ``sorted`` node order."""
        index = {node: i for i, node in enumerate(sorted(g.nodes))}
        return cls.from_edges(len(index), ((index[u], index[v]) for u, v in g.edges))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``."""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    @cached_property
    def closed_rows(self) -> tuple[int, ...]:
        """Closed neighbourhoods N[v] as bitsets."""
        return tuple(row | (1 << v) for v, row in enumerate(self.rows))

    @property
    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.rows), default=0)

    @property
    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.rows), default=0)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def relabel(self, perm: list[int] | tuple[int, ...]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, vertices renumbered in the given order."""
        order = list(vertices)
        index = {v: i for i, v in enumerate(order)}
        return Graph.from_edges(
            len(order),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )


# Named graphs


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ConstructionError("A cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def circulant(n: int, offsets: Iterable[int]) -> Graph:
    """Circulant graph joining ``i`` to ``i ± s (mod n)`` for every offset ``s``."""
    edges = set()
    for s in offsets:
        if not 0 < s < n:
            raise ConstructionError(f"Circulant offset {s} outside 1..{n - 1}")
        for i in range(n):
            j = (i + s) % n
            edges.add((min(i, j), max(i, j)))
    return Graph.from_edges(n, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    for g in graphs:
        shift = len(rows)
        rows.extend(row << shift for row in g.rows)
    return Graph(len(rows), tuple(rows))


# graph6 and edge-list formats


@lru_cache(maxsize=None)
def pair_order(n: int) -> tuple[tuple[int, int], ...]:
    """Vertex pairs in graph6 bit order: column by column of the upper triangle."""
    return tuple((i, j) for j in range(1, n) for i in range(j))


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> shift & 0x3F)) for shift in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> shift & 0x3F)) for shift in (30, 24, 18, 12, 6, 0))


def emit_graph6(G: Graph) -> str:
    """Encode ``G`` in graph6 without header or newline."""
    bits = [1 if G.rows[i] >> j & 1 else 0 for i, j in pair_order(G.n)]
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for start in range(0, len(bits), 6):
        value = 0
        for bit in bits[start : start + 6]:
            value = value << 1 | bit
        body.append(chr(63 + value))
    return _encode_order(G.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    line = text.strip()
    base = 0
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER) :]
        base = len(GRAPH6_HEADER)
    if not line:
        raise GraphParseError("Empty graph6 string", offset=base)
    for i, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"Non-printable graph6 byte {ch!r}", offset=base + i)

    values = [ord(ch) - 63 for ch in line]
    if values[0] != 63:
        n, pos = values[0], 1
    elif len(values) >= 2 and values[1] != 63:
        if len(values) < 4:
            raise GraphParseError("Truncated 4-byte graph6 header", offset=base + len(values))
        n = values[1] << 12 | values[2] << 6 | values[3]
        pos = 4
    else:
        if len(values) < 8:
            raise GraphParseError("Truncated 8-byte graph6 header", offset=base + len(values))
        n = 0
        for v in values[2:8]:
            n = n << 6 | v
        pos = 8

    pairs = pair_order(n)
    expected = pos + -(-len(pairs) // 6)
    if len(values) != expected:
        raise GraphParseError(
            f"graph6 body has {len(values) - pos} bytes, expected {expected - pos}",
            offset=base + min(len(values), expected),
        )

    rows = [0] * n
    for index, (i, j) in enumerate(pairs):
        value = values[pos + index // 6]
        if value >> (5 - index % 6) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    padding = -len(pairs) % 6
    if padding and values[-1] & ((1 << padding) - 1):
        raise GraphParseError("Non-zero graph6 padding bits", offset=base + len(values) - 1)
    return Graph(n, tuple(rows))


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines of ``u v``."""
    lines = [(number, raw.split()) for number, raw in enumerate(text.splitlines(), start=1)]
    lines = [(number, parts) for number, parts in lines if parts]
    if not lines:
        raise GraphParseError("Missing 'n m' header", line=1)

    header_line, header = lines[0]
    try:
        n, m = (int(x) for x in header)
    except ValueError:
        raise GraphParseError("Header must be two integers 'n m'", line=header_line) from None
    if n < 0 or m < 0:
        raise GraphParseError("Negative vertex or edge count", line=header_line)
    if len(lines) - 1 != m:
        last = lines[-1][0]
        raise GraphParseError(f"Header announces {m} edges, found {len(lines) - 1}", line=last)

    rows = [0] * n
    for number, parts in lines[1:]:
        try:
            u, v = (int(x) for x in parts)
        except ValueError:
            raise GraphParseError("Edge must be two integers 'u v'", line=number) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"Vertex out of range 0..{n - 1}", line=number)
        if u == v:
            raise GraphParseError(f"Self-loop at vertex {u}", line=number)
        if rows[u] >> v & 1:
            raise GraphParseError(f"Duplicate edge {u} {v}", line=number)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def emit_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    """Parse either format, choosing edge-list when the first line is two integers."""
    first = next((line for line in text.splitlines() if line.strip()), "")
    parts = first.split()
    if len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts):
        return parse_edge_list(text)
    return parse_graph6(first)


# Degree analytics


@dataclass(frozen=True)
class DegreeProfile:
    """Non-increasing degree sequence with prefix sums and end/penultimate counts."""

    n: int
    m: int
    degrees: tuple[int, ...]
    prefix: tuple[int, ...]
    e: int  # end-vertices (degree one)
    p: int  # penultimate vertices (adjacent to an end-vertex)
    min_degree: int
    max_degree: int

    def d(self, i: int) -> int:
        """The ``i``-th largest degree, 1-indexed as in d_1 >= ... >= d_n."""
        return self.degrees[i - 1]


def degree_profile(G: Graph) -> DegreeProfile:
    raw = G.degrees()
    counts = [0] * (G.n + 1)
    for d in raw:
        counts[d] += 1
    degrees: list[int] = []
    for d in range(G.n, -1, -1):
        degrees.extend([d] * counts[d])

    prefix = [0]
    for d in degrees:
        prefix.append(prefix[-1] + d)

    ends = 0
    for v, d in enumerate(raw):
        if d == 1:
            ends |= 1 << v
    penultimate = sum(1 for row in G.rows if row & ends)

    profile = DegreeProfile(
        n=G.n,
        m=G.m,
        degrees=tuple(degrees),
        prefix=tuple(prefix),
        e=ends.bit_count(),
        p=penultimate,
        min_degree=degrees[-1] if degrees else 0,
        max_degree=degrees[0] if degrees else 0,
    )
    assert profile.prefix[-1] == 2 * G.m
    return profile


# Products and orientations


@dataclass(frozen=True)
class CoronaProduct:
    """G ⊙ H with G's vertices first, then copy ``i`` of H at ``|G| + i*|H|``."""

    graph: Graph
    base_order: int
    copy_order: int
    copy_of: tuple[int, ...]  # -1 for base vertices, else the index of the H-copy

    def copy_vertices(self, i: int) -> range:
        start = self.base_order + i * self.copy_order
        return range(start, start + self.copy_order)


def corona(G: Graph, H: Graph) -> CoronaProduct:
    if G.n == 0:
        raise ConstructionError("Corona product needs a non-empty first factor")
    edges = list(G.edges())
    copy_of = [-1] * G.n
    for i in range(G.n):
        start = G.n + i * H.n
        edges.extend((start + u, start + v) for u, v in H.edges())
        edges.extend((i, start + j) for j in range(H.n))
        copy_of.extend([i] * H.n)
    product = Graph.from_edges(G.n * (1 + H.n), edges)
    assert product.m == G.m + G.n * (H.m + H.n)
    return CoronaProduct(product, G.n, H.n, tuple(copy_of))


def k1_corona_tower(H: Graph, k: int) -> list[Graph]:
    """H_1 = H and H_t = K_1 ⊙ H_{t-1}; the new vertex of each H_t is vertex 0."""
    if k < 2:
        raise ConstructionError("Tower height k must be at least 2")
    tower = [H]
    apex = complete(1)
    for _ in range(k - 1):
        tower.append(corona(apex, tower[-1]).graph)
    return tower


@dataclass(frozen=True)
class Orientation:
    """One arc per edge of an undirected graph."""

    arcs: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, arcs: Iterable[tuple[int, int]]) -> "Orientation":
        return cls(frozenset(arcs))

    def check_orients(self, G: Graph) -> None:
        """Raise unless every edge of ``G`` carries exactly one arc and nothing else does."""
        for x, y in self.arcs:
            if not G.has_edge(x, y):
                raise OrientationError(f"Arc ({x},{y}) is not an edge", ((x, y),))
            if (y, x) in self.arcs:
                raise OrientationError(f"Edge {x}-{y} is oriented both ways", ((x, y), (y, x)))
        if len(self.arcs) != G.m:
            raise OrientationError(f"{G.m - len(self.arcs)} edges carry no arc")

    def find_violation(self) -> tuple[tuple[int, int], tuple[int, int]] | None:
        """Return arcs ``(x,y), (y,z)`` with ``(x,z)`` missing, if any."""
        successors: dict[int, set[int]] = defaultdict(set)
        for x, y in self.arcs:
            successors[x].add(y)
        for x, y in sorted(self.arcs):
            for z in sorted(successors[y]):
                if z not in successors[x]:
                    return (x, y), (y, z)
        return None

    def is_transitive(self) -> bool:
        return self.find_violation() is None


def extend_transitive_orientation(
    H: Graph, D: Orientation, H2: Graph | None = None
) -> Orientation:
    """Orient K_1 ⊙ H from a transitive orientation of H.

    The apex is vertex 0 of ``H2`` and vertex ``v`` of ``H`` is ``v + 1``,
    matching :func:`corona`. Returns the shifted arcs of ``D`` plus ``(0, v+1)``.
    """
    D.check_orients(H)
    violation = D.find_violation()
    if violation is not None:
        (x, y), (_, z) = violation
        raise OrientationError(
            f"Orientation is not transitive: ({x},{y}) and ({y},{z}) but no ({x},{z})",
            violation,
        )
    expected = corona(complete(1), H).graph
    if H2 is not None and H2 != expected:
        raise ConstructionError("H2 must be K_1 ⊙ H with the apex as vertex 0")

    arcs = {(x + 1, y + 1) for x, y in D.arcs}
    arcs.update((0, v + 1) for v in range(H.n))
    extended = Orientation(frozenset(arcs))
    extended.check_orients(expected)
    assert extended.is_transitive()
    return extended


# Distances


def _bfs_layers(G: Graph, source: int) -> tuple[int, int]:
    """Return (eccentricity, reached mask) from ``source``."""
    visited = frontier = 1 << source
    depth = 0
    while True:
        reach = 0
        for v in iter_bits(frontier):
            reach |= G.rows[v]
        frontier = reach & ~visited
        if not frontier:
            return depth, visited
        visited |= frontier
        depth += 1


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    _, reached = _bfs_layers(G, 0)
    return reached == G.full_mask


def diameter(G: Graph) -> int | float:
    """Largest eccentricity, or ``math.inf`` for a disconnected graph."""
    best = 0
    for v in range(G.n):
        ecc, reached = _bfs_layers(G, v)
        if reached != G.full_mask:
            return math.inf
        best = max(best, ecc)
    return best


# Enumeration


def graph_from_mask(n: int, mask: int) -> Graph:
    """Graph whose edge set is the bitmask over :func:`pair_order`."""
    rows = [0] * n
    for index, (i, j) in enumerate(pair_order(n)):
        if mask >> index & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def mask_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def _check_order(n: int, cap: int = MAX_ENUMERATION_ORDER) -> None:
    if not 1 <= n <= cap:
        raise CapExceededError(f"Exhaustive enumeration supports 1 <= n <= {cap}, got {n}")


def enumerate_trees(n: int) -> Iterator[Graph]:
    """All n^(n-2) labeled trees, decoded from Prüfer sequences."""
    _check_order(n, MAX_TREE_ORDER)
    if n <= 2:
        yield path(n)
        return
    for sequence in itertools.product(range(n), repeat=n - 2):
        yield Graph.from_networkx(nx.from_prufer_sequence(list(sequence)))


def enumerate_regular_graphs(n: int, r: int) -> Iterator[Graph]:
    """All labeled r-regular graphs on n vertices, by degree-capped backtracking."""
    _check_order(n)
    if r < 0 or r >= n or (n * r) % 2:
        return
    rows = [0] * n
    deg = [0] * n

    def extend(v: int) -> Iterator[Graph]:
        if v == n:
            yield Graph(n, tuple(rows))
            return
        need = r - deg[v]
        candidates = [u for u in range(v + 1, n) if deg[u] < r]
        if need > len(candidates):
            return
        for chosen in itertools.combinations(candidates, need):
            for u in chosen:
                rows[v] |= 1 << u
                rows[u] |= 1 << v
                deg[u] += 1
            deg[v] += need
            yield from extend(v + 1)
            deg[v] -= need
            for u in chosen:
                rows[v] &= ~(1 << u)
                rows[u] &= ~(1 << v)
                deg[u] -= 1

    yield from extend(0)


def canonical_key(G: Graph) -> str:
    """Lexicographically smallest graph6 string over all relabelings."""
    if G.n > MAX_CANONICAL_ORDER:
        raise CapExceededError(f"Canonical keys are limited to n <= {MAX_CANONICAL_ORDER}")
    return min(emit_graph6(G.relabel(perm)) for perm in itertools.permutations(range(G.n)))


def enumerate_graphs(
    n: int,
    connected: bool = False,
    min_degree: int = 0,
    trees_only: bool = False,
    regular: int | None = None,
    dedup: bool = False,
    masks: range | None = None,
) -> Iterator[Graph]:
    """Stream all labeled simple graphs on ``n`` vertices passing the filter.

    ``masks`` restricts the edge-subset range (used to shard the universe);
    it is ignored for the tree and regular generators.
    """
    _check_order(n)
    if trees_only:
        source: Iterable[Graph] = enumerate_trees(n)
    elif regular is not None:
        source = enumerate_regular_graphs(n, regular)
    else:
        span = masks if masks is not None else range(mask_count(n))
        source = (graph_from_mask(n, mask) for mask in span)

    seen: set[str] = set()
    for G in source:
        if min_degree and G.min_degree < min_degree:
            continue
        if connected and not is_connected(G):
            continue
        if dedup:
            key = canonical_key(G)
            if key in seen:
                continue
            seen.add(key)
        yield G


# Random instances


def random_graph(n: int, rng: random.Random, density: float = 0.5) -> Graph:
    return Graph.from_edges(n, (pair for pair in pair_order(n) if rng.random() < density))


def random_comparability(
    n: int, rng: random.Random, density: float = 0.4
) -> tuple[Graph, Orientation]:
    """Comparability graph of a random partial order, with its transitive orientation."""
    order = list(range(n))
    rng.shuffle(order)
    reach = {v: set() for v in range(n)}
    for j in range(n):
        for i in range(j):
            if rng.random() < density:
                reach[order[i]].add(order[j])
    # transitive closure, processing in reverse topological order
    for v in reversed(order):
        for u in list(reach[v]):
            reach[v] |= reach[u]
    arcs = frozenset((x, y) for x, targets in reach.items() for y in targets)
    return Graph.from_edges(n, arcs), Orientation(arcs)
