"""Tests for CNF handling and the double-domination gadget."""

import pytest

from domino.errors import CnfError
from domino.exact import gamma_ktuple_bnb, is_ktuple_dominating
from domino.gadget import (
    MAX_OCCURRENCES,
    CnfFormula,
    emit_dimacs_cnf,
    evaluate,
    gadget_coloring,
    gadget_gamma_x2,
    is_satisfiable,
    parse_dimacs_cnf,
    random_cnf,
    sat_gadget,
)
from domino.graph import degree_profile
from domino.slater import double_slater


class TestDimacs:
    """Test DIMACS CNF parsing."""

    def test_parse(self, four_variable_cnf):
        """Comments are skipped and clauses kept in order."""
        F = parse_dimacs_cnf(four_variable_cnf)
        assert (F.a, F.b) == (4, 4)
        assert F.clauses[1] == (4, -2, -1)

    def test_clause_spanning_lines(self):
        """A clause ends at 0, not at the line break."""
        F = parse_dimacs_cnf("p cnf 3 2\n1 -2\n3 0 -1 2 3\n0\n%\n0\n")
        assert F.clauses == ((1, -2, 3), (-1, 2, 3))

    def test_emit(self, four_variable_cnf):
        """Emitted text parses back to the same formula."""
        F = parse_dimacs_cnf(four_variable_cnf)
        assert emit_dimacs_cnf(F).startswith("p cnf 4 4\n1 2 -3 0\n")
        assert parse_dimacs_cnf(emit_dimacs_cnf(F)) == F

    def test_missing_header(self):
        """Clauses need a header first."""
        with pytest.raises(CnfError) as exc:
            parse_dimacs_cnf("1 2 3 0\n")
        assert exc.value.line == 1

    def test_wrong_arity(self):
        """Two-literal clauses are rejected with their line."""
        with pytest.raises(CnfError) as exc:
            parse_dimacs_cnf("p cnf 2 1\nc note\n1 2 0\n")
        assert exc.value.line == 3

    def test_literal_out_of_range(self):
        """Literals beyond the declared variable count are rejected."""
        with pytest.raises(CnfError):
            parse_dimacs_cnf("p cnf 2 1\n1 2 3 0\n")

    def test_occurrence_cap(self):
        """A variable in more than five clauses is refused."""
        text = "p cnf 1 6\n" + "1 1 1 0\n" * 6
        with pytest.raises(CnfError, match="more than 5"):
            parse_dimacs_cnf(text)

    def test_clause_count(self):
        """The header clause count must match."""
        with pytest.raises(CnfError):
            parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n")

    def test_formula_validation(self):
        """Direct construction checks literals too."""
        with pytest.raises(CnfError):
            CnfFormula(2, ((1, 2, 0),))


class TestFormulas:
    """Test evaluation, satisfiability and random generation."""

    def test_evaluate(self, four_variable_cnf):
        """The all-true assignment falsifies the last clause."""
        F = parse_dimacs_cnf(four_variable_cnf)
        assert not evaluate(F, (True, True, True, True))
        assert evaluate(F, (True, True, False, True))

    def test_sat_solver(self, four_variable_cnf):
        """The SAT solver returns a satisfying assignment."""
        F = parse_dimacs_cnf(four_variable_cnf)
        satisfiable, assignment = is_satisfiable(F)
        assert satisfiable and evaluate(F, assignment)
        assert is_satisfiable(CnfFormula(1, ((1, 1, 1), (-1, -1, -1)))) == (False, None)

    def test_random_cnf_respects_cap(self):
        """Random formulas never exceed five occurrences."""
        for seed in range(20):
            F = random_cnf(6, 10, seed)
            assert F.b == 10
            assert max(F.occurrences().values()) <= MAX_OCCURRENCES

    def test_random_cnf_impossible(self):
        """Too many clauses for the cap raise."""
        with pytest.raises(CnfError):
            random_cnf(1, 6, 0)


class TestGadget:
    """Test the reduction graph."""

    def test_order(self):
        """n = 5a³ + b."""
        G, labels = sat_gadget(CnfFormula(2, ((1, -2, 2),)))
        assert G.n == 41
        assert labels.clauses == (40,)
        assert labels.block(1) == range(20, 40)

    def test_four_variable_example(self, four_variable_cnf):
        """Order 324 and double Slater number 8."""
        F = parse_dimacs_cnf(four_variable_cnf)
        G, labels = sat_gadget(F)
        assert G.n == 324
        assert double_slater(degree_profile(G)) == 8
        assert labels.literal_vertex(-2) == 81
        assert labels.to_dict()["variables"][3]["q_double_prime"] == 242

    def test_mixed_literal_set_double_dominates(self, four_variable_cnf):
        """q1, q1″, q2′, q2″, q3, q3″, q4′, q4″."""
        G, labels = sat_gadget(parse_dimacs_cnf(four_variable_cnf))
        chosen = []
        for i, value in enumerate((True, False, True, False)):
            chosen += [labels.q[i] if value else labels.q_prime[i], labels.q_double_prime[i]]
        assert sorted(chosen) == [0, 2, 81, 82, 160, 162, 241, 242]
        assert is_ktuple_dominating(G, chosen, 2)

    def test_coloring(self, four_variable_cnf):
        """Four colours, no monochromatic edge."""
        G, labels = sat_gadget(parse_dimacs_cnf(four_variable_cnf))
        coloring = gadget_coloring(labels)
        assert set(coloring) == {0, 1, 2, 3}
        assert all(coloring[u] != coloring[v] for u, v in G.edges())


class TestGadgetSolver:
    """Test the 2a decision procedure."""

    def test_satisfiable(self, four_variable_cnf):
        """The SAT solver's assignment yields a 2a-set."""
        F = parse_dimacs_cnf(four_variable_cnf)
        solution = gadget_gamma_x2(F)
        assert solution.value == 8
        assert solution.satisfying and evaluate(F, solution.assignment)
        G, labels = sat_gadget(F)
        assert labels.q_double_prime[0] in solution.witness
        assert is_ktuple_dominating(G, solution.witness, 2)

    def test_unsatisfiable_single_variable(self):
        """Contradictory one-variable clauses push γ×2 above 2a."""
        F = CnfFormula(2, ((1, 1, 1), (-1, -1, -1)))
        solution = gadget_gamma_x2(F)
        assert solution.exceeds and solution.value is None
        assert gamma_ktuple_bnb(sat_gadget(F)[0], 2).value > 4

    def test_single_clause(self):
        """One variable, one clause: γ×2 = 2."""
        assert gadget_gamma_x2(CnfFormula(1, ((1, 1, 1),))).value == 2

    def test_unsatisfiable_but_dominated(self):
        """Clauses over two variables are double dominated by the q″ vertices."""
        F = CnfFormula(2, ((1, 1, 2), (1, 1, -2), (-1, -1, 2), (-1, -1, -2)))
        assert is_satisfiable(F) == (False, None)
        G, _ = sat_gadget(F)
        assert G.n == 44
        solution = gadget_gamma_x2(F)
        assert solution.value == 4 and not solution.satisfying
        assert is_ktuple_dominating(G, solution.witness, 2)

    def test_parallel_matches_serial(self):
        """Sharding the pair search does not change the answer."""
        F = CnfFormula(2, ((1, 1, 1), (-1, -1, -1)))
        assert gadget_gamma_x2(F, jobs=2) == gadget_gamma_x2(F, jobs=1)

    def test_solution_dict(self):
        """Solutions serialise the 2a verdict."""
        data = gadget_gamma_x2(CnfFormula(1, ((1, 1, 1),))).to_dict()
        assert data["value"] == 2 and data["exceeds_2a"] is False
        assert data["assignment"] == [True]
