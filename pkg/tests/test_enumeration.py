"""Tests for percol.enumeration module."""

from functools import lru_cache

import pytest

from percol import (
    BUDGET_ENV_VAR,
    BoundsMismatch,
    BudgetExceeded,
    Catalog,
    ClassLabel,
    ColoringClass,
    ConfigurationError,
    DomainError,
    Family,
    Kind,
    NotPerfect,
    PeriodicColoring,
    PreconditionViolated,
    brute_force_enumerate,
    canonicalize,
    catalog_diff,
    check_perfect,
    classify,
    equivalence_partition,
    glue,
    lift_block_monochrome,
    series_mirror,
    series_name,
    theorem_enumerate,
)
from percol.constructions import restores
from percol.enumeration import (
    DisjunctiveEvidence,
    SemicoloringEvidence,
    ThreePeriodicEvidence,
    disjoint_profile_assignments,
    resolve_budget,
)

MATCHED = PeriodicColoring(Family.empty(2), 2, ((2, 0), (1, 1), (0, 2), (1, 1)))
BIPARTITE = PeriodicColoring(
    Family.empty(2), 4, ((2, 0, 0, 0), (0, 0, 2, 0), (1, 1, 0, 0), (0, 0, 1, 1))
)
THREE_PERIODIC = PeriodicColoring(Family.complete(2), 3, ((1, 1, 0), (2, 0, 0), (0, 0, 2)))


class TestClassify:
    """Tests for classify and its evidence."""

    def test_matched(self):
        result = classify(MATCHED)
        assert isinstance(result, ColoringClass)
        assert result.label is ClassLabel.MATCHED
        assert isinstance(result.evidence, SemicoloringEvidence)
        assert result.reconstruct() == MATCHED

    def test_disjunctive(self):
        c = lift_block_monochrome(series_mirror(3, "22"), Family.empty(2))
        result = classify(c)
        assert result.label is ClassLabel.DISJUNCTIVE
        assert isinstance(result.evidence, DisjunctiveEvidence)
        assert series_name(result.evidence.path) == "S22(3)"
        assert result.reconstruct() == c

    def test_bipartite(self):
        result = classify(BIPARTITE)
        assert result.label is ClassLabel.BIPARTITE
        assert result.evidence.even.colors() == (0, 1)
        assert result.evidence.odd.colors() == (2, 3)
        assert result.reconstruct() == BIPARTITE

    def test_three_periodic(self):
        result = classify(THREE_PERIODIC)
        assert result.label is ClassLabel.THREE_PERIODIC
        assert isinstance(result.evidence, ThreePeriodicEvidence)
        assert result.reconstruct() == THREE_PERIODIC

    def test_split_block_is_disjunctive(self):
        c = PeriodicColoring(Family.empty(2), 3, ((2, 0, 0), (0, 1, 1)))
        result = classify(c)
        assert result.label is ClassLabel.DISJUNCTIVE
        assert result.evidence.profiles == ((2, 0, 0), (0, 1, 1))

    def test_not_perfect(self):
        with pytest.raises(PreconditionViolated, match="not perfect"):
            classify(PeriodicColoring.from_path([0, 0, 0, 1]))

    @pytest.mark.parametrize(
        "family,k_max,p_max",
        [(Family.empty(2), 3, 4), (Family.complete(2), 3, 3), (Family.empty(3), 3, 4)],
    )
    def test_every_constructed_coloring_is_classified(self, family, k_max, p_max):
        for entry in theorem_enumerate(family, k_max, p_max):
            result = classify(entry.coloring)
            assert isinstance(result, ColoringClass)
            assert entry.label is result.label
            assert canonicalize(result.reconstruct()) == entry.coloring


class TestBruteForce:
    """Tests for brute_force_enumerate."""

    def test_path_small(self):
        catalog = brute_force_enumerate(Family.path(), 2, 4)
        assert len(catalog) == 4
        names = {series_name(entry.coloring) for entry in catalog}
        assert names == {"S(1)", "S(2)", "S12(2)", "S22(2)"}

    def test_single_color(self):
        catalog = brute_force_enumerate(Family.path(), 1, 5)
        assert [entry.coloring.period for entry in catalog] == [((1,),)]

    def test_empty_two_small(self):
        catalog = brute_force_enumerate(Family.empty(2), 2, 2)
        mixed = PeriodicColoring(Family.empty(2), 2, ((1, 1),))
        alternating = PeriodicColoring(Family.empty(2), 2, ((2, 0), (0, 2)))
        assert canonicalize(mixed) in catalog.colorings()
        assert canonicalize(alternating) in catalog.colorings()

    def test_entries_are_canonical_and_sorted(self):
        catalog = brute_force_enumerate(Family.empty(2), 3, 4)
        keys = [(e.coloring.colors, e.coloring.p) for e in catalog]
        assert keys == sorted(keys)
        for entry in catalog:
            assert canonicalize(entry.coloring) == entry.coloring
            assert entry.coloring.primitive_length() == entry.coloring.p

    def test_matrices_recorded(self):
        catalog = brute_force_enumerate(Family.path(), 2, 2)
        matrices = [entry.matrix.rows for entry in catalog]
        assert matrices == [((2,),), ((0, 2), (2, 0))]

    def test_bounds_checked(self):
        with pytest.raises(DomainError, match="Color bound"):
            brute_force_enumerate(Family.path(), 0, 3)
        with pytest.raises(DomainError, match="Period bound"):
            brute_force_enumerate(Family.path(), 2, 0)

    def test_budget_exceeded(self):
        with pytest.raises(BudgetExceeded) as info:
            brute_force_enumerate(Family.empty(2), 3, 4, budget=10)
        assert info.value.budget == 10

    def test_budget_from_environment(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "5")
        with pytest.raises(BudgetExceeded, match="5 states"):
            brute_force_enumerate(Family.empty(2), 3, 4)

    def test_parallel_matches_serial(self):
        serial = brute_force_enumerate(Family.empty(2), 2, 4)
        parallel = brute_force_enumerate(Family.empty(2), 2, 4, jobs=2)
        assert catalog_diff(serial, parallel) == ((), ())


class TestResolveBudget:
    """Tests for resolve_budget."""

    def test_explicit(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "7")
        assert resolve_budget(3) == 3

    def test_environment(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "7")
        assert resolve_budget() == 7

    def test_default(self, monkeypatch):
        monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
        assert resolve_budget() == 100_000_000

    def test_not_an_integer(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "lots")
        with pytest.raises(ConfigurationError, match="must be an integer"):
            resolve_budget()

    def test_not_positive(self):
        with pytest.raises(ConfigurationError, match="positive"):
            resolve_budget(0)


class TestTheoremEnumerate:
    """Tests for theorem_enumerate and its agreement with the oracle."""

    def test_path_small(self):
        assert len(theorem_enumerate(Family.path(), 2, 4)) == 4

    def test_assignments(self):
        found = list(disjoint_profile_assignments(2, 2, 3))
        assert [(2, 0), (0, 2)] in found
        assert [(1, 1, 0), (0, 0, 2)] in found
        assert [(2, 0, 0), (0, 1, 1)] in found

    def test_assignments_respect_color_bound(self):
        assert list(disjoint_profile_assignments(3, 2, 2)) == []

    def test_budget_counts_candidates(self):
        with pytest.raises(BudgetExceeded):
            theorem_enumerate(Family.empty(2), 3, 4, budget=3)

    def test_summary(self):
        catalog = theorem_enumerate(Family.path(), 2, 4)
        assert catalog.summary() == [
            (1, 1, "disjunctive", 1),
            (2, 2, "disjunctive", 1),
            (2, 3, "disjunctive", 1),
            (2, 4, "disjunctive", 1),
        ]
        assert catalog.class_counts() == {"disjunctive": 4}
        assert catalog.envelope == "empty(n=1), k <= 2, p <= 4"

    def test_non_disjunctive_classes_present(self):
        counts = theorem_enumerate(Family.empty(2), 4, 4).class_counts()
        assert counts["matched"] > 0
        assert counts["bipartite"] > 0
        counts = theorem_enumerate(Family.complete(2), 3, 3).class_counts()
        assert counts["three-periodic"] > 0

    @pytest.mark.parametrize(
        "family,k_max,p_max",
        [
            (Family.path(), 4, 8),
            (Family.empty(2), 2, 4),
            (Family.empty(2), 3, 4),
            (Family.complete(2), 2, 4),
            (Family.complete(2), 3, 3),
            (Family.empty(3), 2, 4),
        ],
    )
    def test_agrees_with_oracle(self, family, k_max, p_max):
        oracle = brute_force_enumerate(family, k_max, p_max)
        constructed = theorem_enumerate(family, k_max, p_max)
        assert catalog_diff(oracle, constructed) == ((), ())

    def test_path_count(self):
        assert len(theorem_enumerate(Family.path(), 4, 8)) == 12

    def test_bounds_mismatch(self):
        a = theorem_enumerate(Family.path(), 2, 4)
        b = theorem_enumerate(Family.path(), 2, 3)
        with pytest.raises(BoundsMismatch, match="Cannot compare"):
            catalog_diff(a, b)

    def test_diff_reports_missing(self):
        full = theorem_enumerate(Family.path(), 2, 4)
        trimmed = type(full)(full.family, 2, 4, full.entries[:-1])
        only_full, only_trimmed = catalog_diff(full, trimmed)
        assert only_full == (full.entries[-1].coloring,)
        assert only_trimmed == ()


@lru_cache(maxsize=None)
def _oracle(family: Family, k_max: int, p_max: int) -> Catalog:
    return brute_force_enumerate(family, k_max, p_max)


FULL_BOUNDS = [
    (Family.path(), 5, 10),
    (Family.empty(2), 4, 6),
    (Family.empty(3), 4, 6),
    (Family.complete(2), 4, 6),
    (Family.complete(3), 4, 6),
]

LABELS = {
    Kind.EMPTY: {ClassLabel.DISJUNCTIVE, ClassLabel.BIPARTITE, ClassLabel.MATCHED},
    Kind.COMPLETE: {ClassLabel.DISJUNCTIVE, ClassLabel.THREE_PERIODIC},
}

GLUED_SERIES = {Kind.EMPTY: {"S(1)", "S(2)"}, Kind.COMPLETE: {"S(1)"}}


@pytest.fixture(scope="module", params=FULL_BOUNDS, ids=lambda b: f"{b[0]}-k{b[1]}-p{b[2]}")
def oracle_catalog(request):
    return _oracle(*request.param)


class TestFullCatalogs:
    """Every oracle entry at the full bounds is constructed, classified and restorable."""

    def test_path_count(self):
        assert len(_oracle(Family.path(), 5, 10)) == 16

    def test_matches_theorem(self, oracle_catalog):
        constructed = theorem_enumerate(
            oracle_catalog.family, oracle_catalog.max_colors, oracle_catalog.max_period
        )
        assert catalog_diff(oracle_catalog, constructed) == ((), ())

    def test_every_entry_classified(self, oracle_catalog):
        allowed = LABELS[oracle_catalog.family.kind]
        for entry in oracle_catalog:
            result = classify(entry.coloring)
            assert isinstance(result, ColoringClass), f"{entry.coloring}: {result}"
            assert result.label is entry.label
            assert result.label in allowed
            assert canonicalize(result.reconstruct()) == entry.coloring

    def test_three_periodic_entries_have_period_three(self, oracle_catalog):
        for entry in oracle_catalog:
            if entry.label is ClassLabel.THREE_PERIODIC:
                assert entry.coloring.primitive_root().p in (1, 3)

    def test_every_block_pair_restores(self, oracle_catalog):
        for entry in oracle_catalog:
            for block in range(entry.coloring.p):
                assert restores(entry.coloring, block), f"{entry.coloring} at block {block}"

    def test_glue_is_a_series_lift(self, oracle_catalog):
        for entry in oracle_catalog:
            equivalence_partition(entry.coloring)
            glued = glue(entry.coloring)
            assert not isinstance(check_perfect(glued), NotPerfect)
            assert glued.is_block_monochrome()
            assert series_name(glued) is not None, f"{entry.coloring} glues to {glued}"

    def test_non_disjunctive_glue_targets(self, oracle_catalog):
        names = {
            series_name(glue(entry.coloring))
            for entry in oracle_catalog
            if entry.label is not ClassLabel.DISJUNCTIVE
        }
        assert names <= GLUED_SERIES[oracle_catalog.family.kind]

    def test_reduced_colorings_with_non_disjunctive_splittings(self):
        names = {
            series_name(glue(entry.coloring))
            for n in (2, 3)
            for entry in _oracle(Family.empty(n), 4, 6)
            if entry.label is not ClassLabel.DISJUNCTIVE
        }
        assert names == {"S(1)", "S(2)"}

    def test_small_empty_catalog_splittings(self):
        names = {
            series_name(glue(entry.coloring))
            for entry in theorem_enumerate(Family.empty(2), 4, 4)
            if entry.label is not ClassLabel.DISJUNCTIVE
        }
        assert names == {"S(1)", "S(2)"}
