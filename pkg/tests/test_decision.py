import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canvasflow.decision import (
    DEFAULT_SWEEP_DELTAS,
    FEATURE_NAMES,
    CriterionSpec,
    DecisionTable,
    FeatureChecklist,
    PairwiseMatrix,
    ReciprocityWarning,
    applicability_score,
    build_report,
    consistency_ratio,
    default_specs,
    dump_decision_table,
    format_report,
    geometric_mean_weights,
    load_decision_table,
    load_feature_checklists,
    load_pairwise_matrix,
    normalize_criterion,
    perturb_weights,
    priority_vector,
    rank_alternatives,
    sensitivity_sweep,
)

# Published four-criterion judgment matrix and its study data. The frozen
# expectations below come from an independent plain-Python oracle
# (matrix-vector loops and min-max arithmetic written separately from the
# numpy implementation).

LABELS = ["price", "users", "applicability", "simplicity"]
JUDGMENTS = [
    [1.000, 1.223, 0.820, 0.888],
    [0.818, 1.000, 0.670, 0.670],
    [1.220, 1.492, 1.000, 1.084],
    [1.126, 1.377, 0.923, 1.000],
]

PUBLISHED_WEIGHTS = {"price": 0.241, "users": 0.193, "applicability": 0.294, "simplicity": 0.271}

ORACLE_WEIGHTS = [0.241097687511068, 0.193296732409271, 0.29415035081587, 0.271455229263791]
ORACLE_LAMBDA_MAX = 3.98077282453763

ALTERNATIVES = ["Academic Presenter", "Office 365", "Prezi", "SlideShare", "PowToon", "emaze"]
TABLE_CRITERIA = ["price", "users", "simplicity", "applicability"]
TABLE_VALUES = [
    [0.0, 0.022, 0.5, 0.75],
    [79.99, 15.2, 0.5, 0.88],
    [159.0, 40.0, 0.8, 0.58],
    [228.0, 70.0, 1.0, 0.25],
    [228.0, 6.0, 0.5, 0.50],
    [178.92, 0.011, 1.0, 0.58],
]

ORACLE_SCORES = {
    "Academic Presenter": 0.474580726863546,
    "Office 365": 0.492612154529924,
    "PowToon": 0.13326684506124,
    "Prezi": 0.500357922272813,
    "SlideShare": 0.464751961673062,
    "emaze": 0.477433434027808,
}

ORACLE_SIMPLICITY_TRAJECTORIES = {
    "Academic Presenter": [2, 2, 3, 3, 3, 4, 5, 5, 5, 5, 5],
    "Office 365": [1, 1, 1, 1, 1, 2, 2, 4, 4, 4, 4],
    "Prezi": [3, 3, 2, 2, 2, 1, 1, 1, 1, 2, 2],
    "SlideShare": [5, 5, 5, 5, 5, 5, 4, 3, 3, 3, 3],
    "PowToon": [6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6],
    "emaze": [4, 4, 4, 4, 4, 3, 3, 2, 2, 1, 1],
}
ORACLE_APPLICABILITY_TRAJECTORIES = {
    "Academic Presenter": [5, 5, 5, 5, 5, 4, 3, 3, 3, 3, 3],
    "Office 365": [4, 4, 4, 2, 2, 2, 2, 1, 1, 1, 1],
    "Prezi": [1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2],
    "SlideShare": [2, 2, 2, 3, 4, 5, 5, 5, 5, 5, 5],
    "PowToon": [6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6],
    "emaze": [3, 3, 3, 4, 3, 3, 4, 4, 4, 4, 4],
}


def judgment_matrix() -> PairwiseMatrix:
    return PairwiseMatrix(labels=list(LABELS), entries=[list(r) for r in JUDGMENTS])


def study_table() -> DecisionTable:
    return DecisionTable(
        alternatives=list(ALTERNATIVES),
        criteria=list(TABLE_CRITERIA),
        values=[list(r) for r in TABLE_VALUES],
    )


def study_specs():
    return default_specs(TABLE_CRITERIA)


def study_weights():
    return dict(zip(LABELS, priority_vector(judgment_matrix())))


class TestPriorityVector:
    def test_all_ones_matrix_uniform(self):
        m = PairwiseMatrix(labels=list("abcd"), entries=[[1.0] * 4 for _ in range(4)])
        assert np.allclose(priority_vector(m), 0.25, atol=1e-12)

    def test_consistent_matrix_recovers_weights(self):
        w = (0.5, 0.3, 0.2)
        m = PairwiseMatrix.consistent(["a", "b", "c"], w)
        assert np.allclose(priority_vector(m), w, atol=1e-10)

    def test_published_weights_reproduced(self):
        weights = priority_vector(judgment_matrix())
        for got, (label, published) in zip(weights, PUBLISHED_WEIGHTS.items()):
            assert abs(got - published) <= 0.005, label

    def test_matches_independent_oracle(self):
        weights = priority_vector(judgment_matrix())
        assert np.allclose(weights, ORACLE_WEIGHTS, atol=1e-9)

    def test_weights_positive_and_sum_one(self):
        weights = priority_vector(judgment_matrix())
        assert np.all(weights > 0)
        assert abs(weights.sum() - 1.0) <= 1e-12

    @settings(max_examples=40)
    @given(st.lists(st.floats(0.05, 1.0), min_size=2, max_size=7))
    def test_consistent_random_matrices(self, raw):
        w = np.asarray(raw) / sum(raw)
        m = PairwiseMatrix.consistent([f"c{i}" for i in range(len(raw))], w)
        assert np.allclose(priority_vector(m), w, atol=1e-9)
        assert abs(consistency_ratio(m).cr) <= 1e-9

    @settings(max_examples=40)
    @given(st.lists(st.floats(0.05, 1.0), min_size=3, max_size=7), st.data())
    def test_geometric_mean_agrees_on_consistentish_matrices(self, raw, data):
        w = np.asarray(raw) / sum(raw)
        labels = [f"c{i}" for i in range(len(raw))]
        entries = [
            [
                float(w[i] / w[j] * data.draw(st.floats(0.95, 1.05222)))
                if i < j
                else (1.0 if i == j else 0.0)
                for j in range(len(raw))
            ]
            for i in range(len(raw))
        ]
        for i in range(len(raw)):
            for j in range(i):
                entries[i][j] = 1.0 / entries[j][i]
        m = PairwiseMatrix(labels=labels, entries=entries)
        if consistency_ratio(m).cr < 0.1:
            assert np.allclose(priority_vector(m), geometric_mean_weights(m), atol=0.01)


class TestConsistency:
    def test_consistent_matrix_cr_zero(self):
        m = PairwiseMatrix.consistent(list("abcd"), (0.4, 0.3, 0.2, 0.1))
        result = consistency_ratio(m)
        assert abs(result.lambda_max - 4.0) <= 1e-9
        assert abs(result.cr) <= 1e-9

    def test_two_by_two_cr_zero_by_convention(self):
        m = PairwiseMatrix(labels=["a", "b"], entries=[[1.0, 3.0], [1 / 3, 1.0]])
        assert consistency_ratio(m).cr == 0.0

    def test_published_inconsistency_about_one_percent(self):
        result = consistency_ratio(judgment_matrix())
        assert abs(result.lambda_max - ORACLE_LAMBDA_MAX) <= 1e-9
        # aggregated judgments break reciprocity, pushing lambda_max below n
        assert result.ci < 0
        assert 0.005 <= result.cr <= 0.02

    def test_oversized_matrix_rejected(self):
        n = 11
        entries = [[1.0] * n for _ in range(n)]
        m = PairwiseMatrix(labels=[f"c{i}" for i in range(n)], entries=entries)
        with pytest.raises(ValueError, match="random index"):
            consistency_ratio(m)


class TestMatrixValidation:
    def test_strong_reciprocity_violation_warns(self):
        entries = [[1.0, 4.0], [0.5, 1.0]]  # product 2.0, deviation 1.0
        with pytest.warns(ReciprocityWarning):
            PairwiseMatrix(labels=["a", "b"], entries=entries)

    def test_published_matrix_within_tolerance(self):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            m = judgment_matrix()  # max deviation 0.0774 stays under 0.1
        assert 0.07 < m.max_reciprocity_deviation < 0.1

    def test_nonpositive_entry_rejected(self):
        with pytest.raises(ValueError):
            PairwiseMatrix(labels=["a", "b"], entries=[[1.0, 0.0], [2.0, 1.0]])

    def test_bad_diagonal_rejected(self):
        with pytest.raises(ValueError):
            PairwiseMatrix(labels=["a", "b"], entries=[[2.0, 1.0], [1.0, 1.0]])


class TestApplicability:
    def checklists(self):
        from importlib import resources

        text = resources.files("canvasflow.data").joinpath("feature_checklists.json").read_text()
        return load_feature_checklists(text)

    def test_published_scores(self):
        expected = {
            "Academic Presenter": 0.75,
            "Office 365": 0.88,
            "Prezi": 0.58,
            "SlideShare": 0.25,
            "PowToon": 0.50,
            "emaze": 0.58,
        }
        checklists = self.checklists()
        for name, published in expected.items():
            assert abs(applicability_score(checklists[name]) - published) <= 0.005 + 1e-12

    def test_matches_decision_table_column(self):
        checklists = self.checklists()
        table = study_table()
        col = table.column("applicability")
        for name, raw in zip(table.alternatives, col):
            assert abs(round(applicability_score(checklists[name]), 2) - raw) <= 1e-12

    def test_all_zero_checklist(self):
        cl = FeatureChecklist(scores={f: 0.0 for f in FEATURE_NAMES})
        assert applicability_score(cl) == 0.0

    def test_missing_feature_rejected(self):
        scores = {f: 1.0 for f in FEATURE_NAMES[:-1]}
        with pytest.raises(ValueError, match="missing"):
            FeatureChecklist(scores=scores)

    def test_off_scale_score_rejected(self):
        scores = {f: 1.0 for f in FEATURE_NAMES}
        scores[FEATURE_NAMES[0]] = 0.7
        with pytest.raises(ValueError, match="score"):
            FeatureChecklist(scores=scores)


class TestNormalize:
    def test_price_column_cost_direction(self):
        values = [0, 79.99, 159, 228, 228, 178.92]
        norm = normalize_criterion(values, "cost")
        assert norm[0] == 1.0
        assert norm[3] == 0.0 and norm[4] == 0.0

    def test_simplicity_column_benefit(self):
        norm = normalize_criterion([0.5, 0.5, 0.8, 1, 0.5, 1], "benefit")
        assert norm == [0.0, 0.0, pytest.approx(0.6), 1.0, 0.0, 1.0]

    def test_identical_values_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            normalize_criterion([3.0, 3.0, 3.0], "benefit")

    def test_non_finite_values_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            normalize_criterion([1.0, math.nan, 2.0], "benefit")

    @given(st.lists(st.floats(-100, 100), min_size=2, max_size=9).filter(lambda v: max(v) > min(v)))
    def test_range_is_unit_interval(self, values):
        for direction in ("benefit", "cost"):
            norm = normalize_criterion(values, direction)
            assert min(norm) == 0.0 and max(norm) == 1.0


class TestRanking:
    def test_single_criterion_degenerates_to_column_order(self):
        table = DecisionTable(
            alternatives=["a", "b", "c"], criteria=["x"], values=[[1.0], [3.0], [2.0]]
        )
        ranked = rank_alternatives(table, [CriterionSpec("x")], {"x": 1.0})
        assert [r.name for r in ranked] == ["b", "c", "a"]

    def test_dominating_alternative_ranks_first(self):
        table = DecisionTable(
            alternatives=["worse", "better"],
            criteria=["x", "y"],
            values=[[1.0, 2.0], [5.0, 4.0]],
        )
        specs = [CriterionSpec("x"), CriterionSpec("y")]
        ranked = rank_alternatives(table, specs, {"x": 0.5, "y": 0.5})
        assert ranked[0].name == "better"

    def test_full_study_scores_match_oracle(self):
        ranked = rank_alternatives(study_table(), study_specs(), study_weights())
        assert [r.name for r in ranked] == [
            "Prezi",
            "Office 365",
            "emaze",
            "Academic Presenter",
            "SlideShare",
            "PowToon",
        ]
        for r in ranked:
            assert abs(r.score - ORACLE_SCORES[r.name]) <= 1e-9

    def test_ties_alphabetical_and_flagged(self):
        table = DecisionTable(
            alternatives=["zeta", "alpha", "mid"],
            criteria=["x"],
            values=[[5.0], [5.0], [1.0]],
        )
        ranked = rank_alternatives(table, [CriterionSpec("x")], {"x": 1.0})
        assert [(r.name, r.tied) for r in ranked] == [
            ("alpha", True),
            ("zeta", True),
            ("mid", False),
        ]

    def test_permutation_equivariance(self):
        table = study_table()
        ranked = rank_alternatives(table, study_specs(), study_weights())
        order = [3, 0, 5, 1, 4, 2]
        permuted = DecisionTable(
            alternatives=[table.alternatives[i] for i in order],
            criteria=table.criteria,
            values=[table.values[i] for i in order],
        )
        ranked_p = rank_alternatives(permuted, study_specs(), study_weights())
        assert [(r.name, r.rank) for r in ranked] == [(r.name, r.rank) for r in ranked_p]

    def test_benefit_column_scale_invariance_is_exact(self):
        table = study_table()
        scaled = DecisionTable(
            alternatives=table.alternatives,
            criteria=table.criteria,
            values=[
                [v * (7.0 if c == "users" else 1.0) for c, v in zip(table.criteria, row)]
                for row in table.values
            ],
        )
        base = rank_alternatives(table, study_specs(), study_weights())
        after = rank_alternatives(scaled, study_specs(), study_weights())
        assert [r.name for r in base] == [r.name for r in after]
        # min-max normalization of the scaled column is identical, so scores are too
        for a, b in zip(base, after):
            assert a.score == b.score

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            rank_alternatives(study_table(), study_specs(), [0.5, 0.5])


class TestSensitivity:
    def test_zero_delta_is_identity(self):
        sweep = sensitivity_sweep(study_table(), study_specs(), study_weights(), "simplicity", [0.0])
        base = rank_alternatives(study_table(), study_specs(), study_weights())
        assert [(r.name, r.rank) for r in sweep.rankings[0]] == [(r.name, r.rank) for r in base]

    def test_weight_near_one_converges_to_solo_ranking(self):
        weights = study_weights()
        delta = 0.999 - weights["simplicity"]
        sweep = sensitivity_sweep(study_table(), study_specs(), weights, "simplicity", [delta])
        solo = rank_alternatives(
            study_table(),
            study_specs(),
            {"price": 0.0, "users": 0.0, "simplicity": 1.0, "applicability": 0.0},
        )
        # convergence modulo solo ties (the residual weight breaks them)
        solo_scores = {r.name: r.score for r in solo}
        position = {r.name: r.rank for r in sweep.rankings[0]}
        for a in solo_scores:
            for b in solo_scores:
                if solo_scores[a] > solo_scores[b] + 1e-9:
                    assert position[a] < position[b]

    def test_out_of_range_delta_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            perturb_weights(study_weights(), "simplicity", 0.9)

    def test_rescaled_weights_sum_to_one(self):
        perturbed = perturb_weights(study_weights(), "applicability", 0.04)
        assert abs(sum(perturbed.values()) - 1.0) <= 1e-12

    def test_trajectories_match_oracle(self):
        deltas = [d / 100 for d in range(-5, 6)]
        for criterion, oracle in (
            ("simplicity", ORACLE_SIMPLICITY_TRAJECTORIES),
            ("applicability", ORACLE_APPLICABILITY_TRAJECTORIES),
        ):
            sweep = sensitivity_sweep(study_table(), study_specs(), study_weights(), criterion, deltas)
            assert sweep.trajectories == oracle


class TestIO:
    def test_csv_round_trip(self):
        table = study_table()
        again = load_decision_table(dump_decision_table(table))
        assert again.alternatives == table.alternatives
        assert again.criteria == table.criteria
        assert again.values == table.values

    def test_bundled_data_loads(self):
        from importlib import resources

        data = resources.files("canvasflow.data")
        table = load_decision_table(data.joinpath("tools.csv").read_text())
        matrix = load_pairwise_matrix(data.joinpath("criteria_judgments.json").read_text())
        assert table.alternatives == ALTERNATIVES
        assert matrix.labels == LABELS
        assert table.values == TABLE_VALUES

    def test_report_structure_and_determinism(self):
        from importlib import resources

        data = resources.files("canvasflow.data")
        matrix = load_pairwise_matrix(data.joinpath("criteria_judgments.json").read_text())
        table = load_decision_table(data.joinpath("tools.csv").read_text())
        checklists = load_feature_checklists(data.joinpath("feature_checklists.json").read_text())
        r1 = build_report(matrix, table, checklists=checklists)
        r2 = build_report(matrix, table, checklists=checklists)
        assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)
        for key in ("weights", "lambda_max", "ci", "cr", "scores", "ranking", "sensitivity"):
            assert key in r1
        assert r1["applicability"]["Office 365"] == 0.88
        # the instability of the published study is surfaced, not hidden
        assert r1["sensitivity"]["simplicity"]["stable"]["Academic Presenter"] is False
        text = format_report(r1)
        assert "rank changes" in text and "Academic Presenter" in text

    def test_sweep_deltas_default_grid(self):
        assert DEFAULT_SWEEP_DELTAS[0] == -0.05 and DEFAULT_SWEEP_DELTAS[-1] == 0.05
        assert len(DEFAULT_SWEEP_DELTAS) == 11
