"""Restricted 3-SAT instances and the double-domination reduction gadget.

Each variable u_i becomes a block H_i of order 5a²: a triangle q_i, q_i′, q_i″
plus 5a² - 3 independent vertices joined to all three triangle vertices.
Each clause C_j becomes a vertex c_j adjacent to q_i″ for every variable it
mentions and to q_i (or q_i′) for every positive (or negated) literal.
"""

import itertools
import logging
import random
from collections import Counter
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from pysat.solvers import Solver

from .errors import CnfError
from .exact import is_ktuple_dominating, vertex_mask
from .graph import Graph, degree_profile
from .slater import double_slater

logger = logging.getLogger(__name__)

CLAUSE_ARITY = 3
MAX_OCCURRENCES = 5  # clauses mentioning a variable, either sign
SAT_SOLVER = "g3"


@dataclass(frozen=True)
class CnfFormula:
    """``a`` variables, clauses of exactly three signed literals (repeats allowed)."""

    a: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.a < 1:
            raise CnfError("A formula needs at least one variable")
        for j, clause in enumerate(self.clauses):
            if len(clause) != CLAUSE_ARITY:
                raise CnfError(f"Clause {j + 1} has {len(clause)} literals, expected {CLAUSE_ARITY}")
            for literal in clause:
                if literal == 0 or abs(literal) > self.a:
                    raise CnfError(f"Clause {j + 1} uses literal {literal} outside 1..{self.a}")
        for variable, count in self.occurrences().items():
            if count > MAX_OCCURRENCES:
                raise CnfError(f"Variable {variable} occurs in {count} clauses, at most {MAX_OCCURRENCES} allowed")

    @property
    def b(self) -> int:
        return len(self.clauses)

    def occurrences(self) -> Counter:
        return Counter(v for clause in self.clauses for v in set(map(abs, clause)))


def parse_dimacs_cnf(text: str) -> CnfFormula:
    """Parse DIMACS CNF; clauses may span lines and end with ``0``."""
    header: tuple[int, int] | None = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    start_line = 0
    seen: Counter = Counter()

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise CnfError("Duplicate 'p cnf' header", line=number)
            if len(parts) != 4 or parts[1] != "cnf" or not (parts[2].isdigit() and parts[3].isdigit()):
                raise CnfError("Header must read 'p cnf <variables> <clauses>'", line=number)
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise CnfError("Clause before the 'p cnf' header", line=number)

        for token in line.split():
            try:
                literal = int(token)
            except ValueError:
                raise CnfError(f"Literal {token!r} is not an integer", line=number) from None
            if not pending:
                start_line = number
            if literal:
                if abs(literal) > header[0]:
                    raise CnfError(f"Literal {literal} outside 1..{header[0]}", line=number)
                pending.append(literal)
                continue
            if len(pending) != CLAUSE_ARITY:
                raise CnfError(f"Clause has {len(pending)} literals, expected {CLAUSE_ARITY}", line=start_line)
            for variable in set(map(abs, pending)):
                seen[variable] += 1
                if seen[variable] > MAX_OCCURRENCES:
                    raise CnfError(
                        f"Variable {variable} occurs in more than {MAX_OCCURRENCES} clauses", line=start_line
                    )
            clauses.append(tuple(pending))
            pending = []

    if header is None:
        raise CnfError("Missing 'p cnf' header")
    if pending:
        raise CnfError("Last clause is not terminated by 0", line=start_line)
    if len(clauses) != header[1]:
        raise CnfError(f"Header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def emit_dimacs_cnf(F: CnfFormula) -> str:
    lines = [f"p cnf {F.a} {F.b}"]
    lines.extend(" ".join(map(str, clause)) + " 0" for clause in F.clauses)
    return "\n".join(lines) + "\n"


def evaluate(F: CnfFormula, assignment: Sequence[bool]) -> bool:
    """``assignment[i]`` is the value of variable ``i + 1``."""
    return all(any(assignment[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in F.clauses)


def is_satisfiable(F: CnfFormula) -> tuple[bool, tuple[bool, ...] | None]:
    with Solver(name=SAT_SOLVER, bootstrap_with=[list(c) for c in F.clauses]) as solver:
        if not solver.solve():
            return False, None
        positive = {lit for lit in solver.get_model() if lit > 0}
    assignment = tuple(v in positive for v in range(1, F.a + 1))
    assert evaluate(F, assignment)
    return True, assignment


def random_cnf(a: int, b: int, seed: int) -> CnfFormula:
    """Seeded formula respecting the occurrence cap; variables in a clause are distinct when possible."""
    rng = random.Random(seed)
    used: Counter = Counter()
    clauses = []
    for _ in range(b):
        available = [v for v in range(1, a + 1) if used[v] < MAX_OCCURRENCES]
        if not available:
            raise CnfError(f"{b} clauses exceed the occurrence cap for {a} variables")
        variables = rng.sample(available, min(CLAUSE_ARITY, len(available)))
        while len(variables) < CLAUSE_ARITY:
            variables.append(rng.choice(variables))
        used.update(set(variables))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    return CnfFormula(a, tuple(clauses))


# The gadget


@dataclass(frozen=True)
class GadgetLabels:
    a: int
    b: int
    q: tuple[int, ...]
    q_prime: tuple[int, ...]
    q_double_prime: tuple[int, ...]
    independents: tuple[tuple[int, ...], ...]
    clauses: tuple[int, ...]

    @property
    def block_order(self) -> int:
        return 5 * self.a * self.a

    def literal_vertex(self, literal: int) -> int:
        i = abs(literal) - 1
        return self.q[i] if literal > 0 else self.q_prime[i]

    def block(self, i: int) -> range:
        start = i * self.block_order
        return range(start, start + self.block_order)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "variables": [
                {
                    "q": self.q[i],
                    "q_prime": self.q_prime[i],
                    "q_double_prime": self.q_double_prime[i],
                    "independents": list(self.independents[i]),
                }
                for i in range(self.a)
            ],
            "clauses": list(self.clauses),
        }


def sat_gadget(F: CnfFormula) -> tuple[Graph, GadgetLabels]:
    a, b = F.a, F.b
    size = 5 * a * a
    starts = [i * size for i in range(a)]
    labels = GadgetLabels(
        a=a,
        b=b,
        q=tuple(starts),
        q_prime=tuple(s + 1 for s in starts),
        q_double_prime=tuple(s + 2 for s in starts),
        independents=tuple(tuple(range(s + 3, s + size)) for s in starts),
        clauses=tuple(range(a * size, a * size + b)),
    )

    edges = set()
    for i in range(a):
        triangle = (labels.q[i], labels.q_prime[i], labels.q_double_prime[i])
        edges.update(itertools.combinations(triangle, 2))
        edges.update((t, w) for w in labels.independents[i] for t in triangle)
    for j, clause in enumerate(F.clauses):
        c = labels.clauses[j]
        for literal in clause:
            edges.add((labels.q_double_prime[abs(literal) - 1], c))
            edges.add((labels.literal_vertex(literal), c))
    G = Graph.from_edges(a * size + b, edges)
    assert G.n == 5 * a**3 + b

    coloring = gadget_coloring(labels)
    for u, v in G.edges():
        if coloring[u] == coloring[v]:
            raise AssertionError(f"Gadget colouring clashes on edge {u}-{v}")

    sl2 = double_slater(degree_profile(G))
    clause_edges = sum(G.degree(c) for c in labels.clauses)
    if sl2 < 2 * a:
        raise AssertionError(f"Gadget double Slater number {sl2} is below 2a = {2 * a}")
    # the 2a largest degrees carry enough clause edges only in this case
    if clause_edges >= 3 * b and sl2 != 2 * a:
        raise AssertionError(f"Gadget double Slater number is {sl2}, expected 2a = {2 * a}")
    logger.info(f"Built gadget for a={a}, b={b}: n={G.n}, m={G.m}, double Slater number {sl2}")
    return G, labels


def gadget_coloring(labels: GadgetLabels) -> list[int]:
    """q_i -> 0, q_i′ -> 1, q_i″ -> 2, independents and clause vertices -> 3."""
    coloring = [3] * (labels.a * labels.block_order + labels.b)
    for i in range(labels.a):
        coloring[labels.q[i]] = 0
        coloring[labels.q_prime[i]] = 1
        coloring[labels.q_double_prime[i]] = 2
    return coloring


@dataclass(frozen=True)
class GadgetSolution:
    """Outcome of the 2a test; ``value`` is None when γ×2 > 2a is proven."""

    a: int
    value: int | None
    witness: tuple[int, ...]
    assignment: tuple[bool, ...] | None
    satisfying: bool

    @property
    def exceeds(self) -> bool:
        return self.value is None

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "value": self.value,
            "exceeds_2a": self.exceeds,
            "set": list(self.witness),
            "assignment": list(self.assignment) if self.assignment is not None else None,
            "satisfying": self.satisfying,
        }


def _pair_choices(labels: GadgetLabels, i: int) -> tuple[tuple[int, int], ...]:
    q, qp, qpp = labels.q[i], labels.q_prime[i], labels.q_double_prime[i]
    return (q, qpp), (qp, qpp), (q, qp)


def _scan_pairs(
    clause_rows: tuple[int, ...], choices: tuple[tuple[tuple[int, int], ...], ...], prefix: tuple[int, ...]
) -> tuple[int, ...] | None:
    """Try every pair choice extending ``prefix`` (indices into each block's choices)."""
    fixed = 0
    for i, c in enumerate(prefix):
        fixed |= vertex_mask(choices[i][c])
    for tail in itertools.product(*choices[len(prefix) :]):
        mask = fixed | vertex_mask(v for pair in tail for v in pair)
        if all((row & mask).bit_count() >= 2 for row in clause_rows):
            return tuple(sorted(v for v in range(mask.bit_length()) if mask >> v & 1))
    return None


def gadget_gamma_x2(F: CnfFormula, jobs: int = 1) -> GadgetSolution:
    """Decide whether the gadget has a double dominating set of size 2a.

    Any such set holds exactly two triangle vertices of each block. A
    satisfying assignment from the SAT solver gives one directly (q_i″ plus
    the literal vertex of the true literal). Otherwise every one of the 3^a
    triangle-pair choices is tried; this matters when a clause mentions two
    distinct variables, since the q_i″ vertices alone then double dominate it.
    """
    G, labels = sat_gadget(F)
    a = F.a
    satisfiable, values = is_satisfiable(F)
    if satisfiable:
        witness = tuple(
            sorted(
                [labels.q_double_prime[i] for i in range(a)]
                + [labels.q[i] if values[i] else labels.q_prime[i] for i in range(a)]
            )
        )
        assert is_ktuple_dominating(G, witness, 2)
        logger.info(f"Satisfying assignment gives γ×2 = {2 * a}")
        return GadgetSolution(a, 2 * a, witness, values, True)

    choices = tuple(_pair_choices(labels, i) for i in range(a))
    clause_rows = tuple(G.closed_rows[c] for c in labels.clauses)
    prefixes = list(itertools.product(range(3), repeat=min(a, 2)))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            found = list(
                executor.map(
                    _scan_pairs,
                    [clause_rows] * len(prefixes),
                    [choices] * len(prefixes),
                    prefixes,
                )
            )
    else:
        found = [_scan_pairs(clause_rows, choices, prefix) for prefix in prefixes]

    for witness in found:
        if witness is not None:
            assert is_ktuple_dominating(G, witness, 2)
            logger.warning(f"Unsatisfiable formula still admits a 2a-set: {witness}")
            return GadgetSolution(a, 2 * a, witness, None, False)
    logger.info(f"No triangle-pair choice double dominates; γ×2 > {2 * a}")
    return GadgetSolution(a, None, (), None, False)
