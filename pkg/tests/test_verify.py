"""Tests for the verification harness."""

import pytest

from domino.errors import CapExceededError, UnknownTheoremError
from domino.exact import gamma_ktuple_bnb
from domino.gadget import emit_dimacs_cnf, gadget_gamma_x2, is_satisfiable, sat_gadget
from domino.graph import cycle, disjoint_union, emit_graph6, empty, path
from domino.verify import (
    DEFAULT_SEED,
    THEOREMS,
    Failure,
    GraphFilter,
    Instance,
    VerifyOptions,
    check_gadget,
    gadget_formula,
    get_theorem,
    recheck,
    verify_theorem,
)

ALL_IDS = {
    "eq1",
    "prop21",
    "prop22",
    "thm-general",
    "thm-t2",
    "thm-t3",
    "thm-t4",
    "thm-full",
    "cor-regular-full",
    "cor-domatic",
    "thm-domatic",
    "cor-formula",
    "tower",
    "gadget",
}


class TestRegistry:
    """Test theorem registration and lookup."""

    def test_every_statement_registered(self):
        """All statement ids are available."""
        assert set(THEOREMS) == ALL_IDS

    def test_unknown_id(self):
        """Unknown ids raise a domain error listing the known ones."""
        with pytest.raises(UnknownTheoremError, match="eq1"):
            get_theorem("thm-missing")

    def test_n_max_cap(self):
        """Exhaustive universes stop at order 8."""
        with pytest.raises(CapExceededError):
            verify_theorem("eq1", 9)
        with pytest.raises(CapExceededError):
            verify_theorem("eq1", 0)

    def test_tree_universe_cap(self):
        """Tree universes go one order further."""
        with pytest.raises(CapExceededError, match="1..9"):
            verify_theorem("thm-t2", 10)


class TestGraphFilter:
    """Test hypothesis filters."""

    def test_min_degree(self):
        """Isolated vertices are filtered out."""
        flt = GraphFilter(min_degree=1)
        assert flt.admits(path(3))
        assert not flt.admits(disjoint_union(path(2), empty(1)))

    def test_trees_and_regular(self):
        """Tree and regular filters."""
        assert GraphFilter(trees_only=True).admits(path(4))
        assert not GraphFilter(trees_only=True).admits(cycle(4))
        assert GraphFilter(regular=True).admits(cycle(5))
        assert not GraphFilter(regular=True).admits(path(3))

    def test_domatic_cap(self):
        """Domatic universes stop at the configured order."""
        flt = GraphFilter(domatic_cap=True)
        assert flt.orders(8, VerifyOptions(domatic_order=5)) == range(1, 6)


class TestExhaustiveRuns:
    """Run the exhaustive statements on small universes."""

    def test_eq1_counts_instances(self):
        """46 labeled graphs of order at most 4 have no isolated vertex."""
        report = verify_theorem("eq1", 4)
        assert report.passed
        assert report.instances == 46
        assert report.universe["n_max"] == 4
        assert report.universe["filters"]["min_degree"] == 1

    @pytest.mark.parametrize(
        "theorem_id, n_max",
        [
            ("prop21", 5),
            ("prop22", 5),
            ("thm-general", 5),
            ("thm-t2", 6),
            ("thm-t3", 5),
            ("thm-t4", 5),
            ("thm-full", 5),
            ("cor-regular-full", 6),
            ("cor-domatic", 5),
        ],
    )
    def test_statement_holds(self, theorem_id, n_max):
        """No counterexamples on small universes."""
        report = verify_theorem(theorem_id, n_max)
        assert report.passed, report.failures[:3]
        assert report.instances > 0

    def test_domatic_bound_with_psi_members(self):
        """The domatic bound holds and every Ψ member attains it."""
        report = verify_theorem("thm-domatic", 4)
        assert report.passed, report.failures[:3]
        assert report.universe["samples"]["psi_members"] > 0

    def test_report_is_deterministic(self):
        """Identical inputs give identical reports apart from the time."""
        first = verify_theorem("thm-t4", 5).to_dict(include_time=False)
        second = verify_theorem("thm-t4", 5).to_dict(include_time=False)
        assert first == second
        assert "wall_time" not in first

    def test_parallel_matches_inline(self):
        """Worker processes merge to the same report."""
        inline = verify_theorem("thm-t3", 5, VerifyOptions(jobs=1))
        parallel = verify_theorem("thm-t3", 5, VerifyOptions(jobs=2))
        assert inline.to_dict(include_time=False) == parallel.to_dict(include_time=False)


class TestSampledRuns:
    """Run the seeded statements on reduced sample sizes."""

    def test_corona_formula(self):
        """γ×k(G⊙H) = |V(G)|(γ×(k-1)(H) + 1) on seeded pairs."""
        report = verify_theorem("cor-formula", 4, VerifyOptions(pairs=10, pair_order=3))
        assert report.passed, report.failures[:3]
        assert report.instances == 20

    def test_towers_and_orientations(self):
        """Tower identity, diameter and orientation extension."""
        report = verify_theorem("tower", 4, VerifyOptions(towers=10, tower_order=4, orientations=10))
        assert report.passed, report.failures[:3]
        assert report.instances == 30

    def test_gadget(self):
        """Seeded CNFs behave as the reduction predicts."""
        report = verify_theorem("gadget", 4, VerifyOptions(cnfs=8, cnf_variables=3))
        assert report.passed, report.failures[:3]
        assert report.instances == 8
        assert report.universe["samples"] == {"cnfs": 8, "max_variables": 3}

    def test_gadget_formulas_are_seeded(self):
        """The same seed and index give the same formula."""
        assert gadget_formula(7, 5, 4) == gadget_formula(7, 5, 4)
        single = gadget_formula(7, 3, 4)
        assert all(len(set(map(abs, clause))) == 1 for clause in single.clauses)

    @pytest.mark.parametrize("index", [3, 7, 11, 15, 19])
    def test_every_fourth_formula_is_unsatisfiable(self, index):
        """Contradictory one-variable formulas leave γ×2 above 2a."""
        F = gadget_formula(DEFAULT_SEED, index, 6)
        assert is_satisfiable(F) == (False, None)
        assert gadget_gamma_x2(F).value is None
        assert check_gadget(Instance((), {"cnf": emit_dimacs_cnf(F)})) is None

    def test_unsatisfiable_gadget_exceeds_2a(self):
        """Branch and bound confirms γ×2 > 2a on a two-variable contradiction."""
        formulas = (gadget_formula(DEFAULT_SEED, index, 2) for index in range(3, 400, 4))
        F = next(F for F in formulas if F.a == 2)
        G, _ = sat_gadget(F)
        assert gamma_ktuple_bnb(G, 2).value > 2 * F.a


class TestRecheck:
    """Test re-running recorded failures."""

    def test_passing_instance(self):
        """A graph that satisfies the statement rechecks clean."""
        assert recheck("eq1", Failure(emit_graph6(cycle(4)), "")) is None

    def test_hypothesis_violation_is_reported(self):
        """Errors inside a check become failure details."""
        detail = recheck("eq1", Failure(emit_graph6(empty(2)), ""))
        assert detail.startswith("UndefinedParameterError")

    def test_failure_dict(self):
        """Failures survive a JSON-shaped round trip."""
        failure = Failure("C~", "detail", {"k": 2})
        assert Failure.from_dict(failure.to_dict()) == failure


@pytest.mark.slow
class TestAcceptance:
    """Exhaustive and sampled runs at full size."""

    @pytest.mark.parametrize("theorem_id", ["eq1", "thm-general", "thm-t4", "prop22", "thm-full"])
    def test_order_seven(self, theorem_id):
        """Zero violations over every labeled graph of order at most 7."""
        report = verify_theorem(theorem_id, 7, VerifyOptions(jobs=4))
        assert report.passed, report.failures[:3]

    @pytest.mark.parametrize("theorem_id, n_max", [("thm-domatic", 6), ("cor-domatic", 6), ("cor-regular-full", 8)])
    def test_domatic_universes(self, theorem_id, n_max):
        """Domatic statements hold on every graph in their full universe."""
        report = verify_theorem(theorem_id, n_max, VerifyOptions(jobs=4))
        assert report.passed, report.failures[:3]
        assert report.universe["n_max"] == n_max

    def test_default_samples(self):
        """The default sample sizes pass."""
        for theorem_id in ("cor-formula", "tower", "gadget"):
            assert verify_theorem(theorem_id, 6).passed
