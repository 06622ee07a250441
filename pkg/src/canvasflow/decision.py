"""Multi-criteria decision pipeline built on pairwise judgment matrices.

Criterion weights come from the principal right eigenvector of a positive
judgment matrix (power iteration). Raw criterion values are min-max
normalized (cost criteria inverted), weighted into scores, ranked, and
swept for weight sensitivity. All functions are deterministic.
"""

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import NumericalError

# Saaty random indices for matrix sizes 1..10 (standard literature constants).
RANDOM_INDEX = {1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49}

POWER_ITERATION_TOL = 1e-12
POWER_ITERATION_MAX = 10_000

# Expected reciprocity: |m[i][j] * m[j][i] - 1| beyond this is suspicious.
RECIPROCITY_TOLERANCE = 0.1

# The applicability-in-academia checklist: feature -> {0, 0.5, 1}.
FEATURE_NAMES = (
    "Supporting Images",
    "Supporting Sounds",
    "Supporting Videos",
    "Formula and Latex",
    "Online Presentation",
    "Offline Presentation",
    "Nonlinear Presentation",
    "Linear Presentation",
    "Annotation",
    "Supporting Second Screen",
    "Charts",
    "Running on different OSs",
)
FEATURE_SCORE_LEVELS = (0.0, 0.5, 1.0)


class ReciprocityWarning(UserWarning):
    """A judgment matrix deviates from reciprocity more than expected."""


@dataclass
class PairwiseMatrix:
    """Square positive judgment matrix with unit diagonal.

    Reciprocity (m[i][j] * m[j][i] == 1) is expected but not required:
    aggregated survey judgments routinely break it. Deviations beyond
    RECIPROCITY_TOLERANCE raise a ReciprocityWarning, never an error.
    """

    labels: list[str]
    entries: list[list[float]]

    def __post_init__(self):
        n = len(self.labels)
        if n < 2:
            raise ValueError(f"need at least 2 criteria, got {n}")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError(f"entries must be {n}x{n} to match labels")
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                if not (math.isfinite(value) and value > 0):
                    raise ValueError(f"entry [{i}][{j}] must be positive and finite, got {value}")
            if abs(row[i] - 1.0) > 1e-9:
                raise ValueError(f"diagonal entry [{i}][{i}] must be 1, got {row[i]}")
        dev = self.max_reciprocity_deviation
        if dev > RECIPROCITY_TOLERANCE:
            warnings.warn(
                f"judgment matrix deviates from reciprocity by {dev:.3f}",
                ReciprocityWarning,
                stacklevel=2,
            )

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def max_reciprocity_deviation(self) -> float:
        n = self.size
        return max(
            abs(self.entries[i][j] * self.entries[j][i] - 1.0)
            for i in range(n)
            for j in range(i + 1, n)
        ) if n > 1 else 0.0

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    @classmethod
    def consistent(cls, labels: Sequence[str], weights: Sequence[float]) -> "PairwiseMatrix":
        """Build the perfectly consistent matrix m[i][j] = w_i / w_j."""
        w = list(weights)
        entries = [[wi / wj for wj in w] for wi in w]
        return cls(labels=list(labels), entries=entries)


@dataclass(frozen=True)
class CriterionSpec:
    name: str
    direction: str = "benefit"  # or "cost": larger raw values are worse
    source: str = "quantitative"  # or "qualitative": already scaled to [0, 1]

    def __post_init__(self):
        if self.direction not in ("benefit", "cost"):
            raise ValueError(f"direction must be benefit or cost, got {self.direction!r}")
        if self.source not in ("quantitative", "qualitative"):
            raise ValueError(f"source must be quantitative or qualitative, got {self.source!r}")


def default_specs(criteria: Iterable[str]) -> list[CriterionSpec]:
    """Price-like criteria are costs; everything else is a benefit."""
    specs = []
    for name in criteria:
        direction = "cost" if name.strip().lower() in ("price", "cost") else "benefit"
        specs.append(CriterionSpec(name=name, direction=direction))
    return specs


@dataclass
class DecisionTable:
    """Alternatives (rows) by criteria (columns) of raw values."""

    alternatives: list[str]
    criteria: list[str]
    values: list[list[float]]

    def __post_init__(self):
        m, n = len(self.alternatives), len(self.criteria)
        if len(self.values) != m or any(len(row) != n for row in self.values):
            raise ValueError(f"values must be {m}x{n}")
        for row in self.values:
            for v in row:
                if not math.isfinite(v):
                    raise ValueError(f"table values must be finite, got {v}")

    def column(self, criterion: str) -> list[float]:
        j = self.criteria.index(criterion)
        return [row[j] for row in self.values]


@dataclass
class FeatureChecklist:
    """Per-alternative scores for the canonical feature list."""

    scores: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        missing = [f for f in FEATURE_NAMES if f not in self.scores]
        if missing:
            raise ValueError(f"checklist missing features: {missing}")
        unknown = [f for f in self.scores if f not in FEATURE_NAMES]
        if unknown:
            raise ValueError(f"checklist has unknown features: {unknown}")
        for name, score in self.scores.items():
            if score not in FEATURE_SCORE_LEVELS:
                raise ValueError(
                    f"feature {name!r} score {score} not in {FEATURE_SCORE_LEVELS}"
                )


def priority_vector(matrix: PairwiseMatrix) -> np.ndarray:
    """Normalized principal right eigenvector via power iteration.

    Iterates v <- Mv / sum(Mv) until the relative change drops below
    POWER_ITERATION_TOL; positive matrices always converge.
    """
    m = matrix.as_array()
    n = matrix.size
    v = np.full(n, 1.0 / n)
    for _ in range(POWER_ITERATION_MAX):
        w = m @ v
        w /= w.sum()
        if np.max(np.abs(w - v) / np.maximum(np.abs(v), 1e-300)) < POWER_ITERATION_TOL:
            return w
        v = w
    raise NumericalError("power iteration failed to converge")


class ConsistencyResult(NamedTuple):
    lambda_max: float
    ci: float
    cr: float


def consistency_ratio(matrix: PairwiseMatrix) -> ConsistencyResult:
    """Dominant eigenvalue, consistency index, and consistency ratio.

    CI = (lambda_max - n) / (n - 1) keeps its sign: reciprocal matrices
    always have lambda_max >= n, but matrices that deviate from
    reciprocity can dip below n. CR reports the magnitude |CI| / RI(n)
    so it stays comparable against the usual 0.1 acceptance threshold,
    and is defined as 0 where RI(n) = 0.
    """
    n = matrix.size
    if n > max(RANDOM_INDEX):
        raise ValueError(f"no random index for matrices larger than {max(RANDOM_INDEX)}x{max(RANDOM_INDEX)}")
    m = matrix.as_array()
    v = priority_vector(matrix)
    lambda_max = float((m @ v).sum() / v.sum())
    ci = (lambda_max - n) / (n - 1)
    ri = RANDOM_INDEX[n]
    cr = 0.0 if ri == 0.0 else abs(ci) / ri
    return ConsistencyResult(lambda_max, ci, cr)


def geometric_mean_weights(matrix: PairwiseMatrix) -> np.ndarray:
    """Row-geometric-mean approximation; kept as an independent cross-check
    of the eigenvector route, not used in the pipeline."""
    m = matrix.as_array()
    g = np.exp(np.log(m).mean(axis=1))
    return g / g.sum()


def applicability_score(checklist: FeatureChecklist) -> float:
    """Arithmetic mean over the canonical features (full precision; reports
    round to 2 decimals)."""
    return sum(checklist.scores[f] for f in FEATURE_NAMES) / len(FEATURE_NAMES)


def normalize_criterion(values: Sequence[float], direction: str = "benefit") -> list[float]:
    """Min-max normalize one criterion column into [0, 1].

    Benefit: (v - min) / (max - min). Cost: (max - v) / (max - min).
    A column of identical values carries no ranking information and is
    rejected.
    """
    if direction not in ("benefit", "cost"):
        raise ValueError(f"direction must be benefit or cost, got {direction!r}")
    if any(not math.isfinite(v) for v in values):
        raise ValueError("criterion values must be finite")
    lo, hi = min(values), max(values)
    if hi == lo:
        raise ValueError("degenerate criterion: all values equal")
    span = hi - lo
    if direction == "benefit":
        return [(v - lo) / span for v in values]
    return [(hi - v) / span for v in values]


@dataclass(frozen=True)
class RankedAlternative:
    name: str
    score: float
    rank: int
    tied: bool = False


SCORE_TIE_TOLERANCE = 1e-12


def _weights_for(table: DecisionTable, weights) -> dict[str, float]:
    if isinstance(weights, Mapping):
        missing = [c for c in table.criteria if c not in weights]
        if missing:
            raise ValueError(f"weights missing criteria: {missing}")
        return {c: float(weights[c]) for c in table.criteria}
    values = [float(w) for w in weights]
    if len(values) != len(table.criteria):
        raise ValueError(
            f"got {len(values)} weights for {len(table.criteria)} criteria"
        )
    return dict(zip(table.criteria, values))


def normalized_matrix(table: DecisionTable, specs: Sequence[CriterionSpec]) -> dict[str, list[float]]:
    """Normalize every column; returns criterion -> per-alternative values."""
    by_name = {s.name: s for s in specs}
    missing = [c for c in table.criteria if c not in by_name]
    if missing:
        raise ValueError(f"specs missing criteria: {missing}")
    return {
        c: normalize_criterion(table.column(c), by_name[c].direction) for c in table.criteria
    }


def rank_alternatives(
    table: DecisionTable, specs: Sequence[CriterionSpec], weights
) -> list[RankedAlternative]:
    """Weighted sum of normalized values, sorted descending.

    ``weights`` is a mapping criterion -> weight or a sequence aligned
    with table.criteria. Score ties (within SCORE_TIE_TOLERANCE) are
    ordered alphabetically and flagged.
    """
    w = _weights_for(table, weights)
    norm = normalized_matrix(table, specs)
    scores = []
    for i, name in enumerate(table.alternatives):
        score = sum(w[c] * norm[c][i] for c in table.criteria)
        scores.append((name, score))
    scores.sort(key=lambda item: -item[1])

    # group near-equal scores, alphabetize inside each group
    ranked: list[RankedAlternative] = []
    i = 0
    while i < len(scores):
        j = i + 1
        while j < len(scores) and scores[i][1] - scores[j][1] <= SCORE_TIE_TOLERANCE:
            j += 1
        group = sorted(scores[i:j], key=lambda item: item[0])
        tied = len(group) > 1
        for name, score in group:
            ranked.append(RankedAlternative(name=name, score=score, rank=len(ranked) + 1, tied=tied))
        i = j
    return ranked


@dataclass
class SweepResult:
    """Rank trajectories under perturbation of one criterion's weight."""

    criterion: str
    deltas: list[float]
    rankings: list[list[RankedAlternative]]
    trajectories: dict[str, list[int]]

    def stable(self, alternative: str) -> bool:
        ranks = self.trajectories[alternative]
        return len(set(ranks)) == 1


def perturb_weights(weights: Mapping[str, float], criterion: str, delta: float) -> dict[str, float]:
    """Shift one weight by delta; rescale the rest to restore sum 1."""
    if criterion not in weights:
        raise ValueError(f"unknown criterion {criterion!r}")
    base = weights[criterion]
    target = base + delta
    if not 0.0 < target < 1.0:
        raise ValueError(f"perturbed weight {target} outside (0, 1)")
    scale = (1.0 - target) / (1.0 - base)
    return {c: (target if c == criterion else w * scale) for c, w in weights.items()}


def sensitivity_sweep(
    table: DecisionTable,
    specs: Sequence[CriterionSpec],
    weights,
    criterion: str,
    deltas: Sequence[float],
) -> SweepResult:
    """Re-rank under each weight perturbation and collect rank trajectories."""
    w = _weights_for(table, weights)
    rankings = []
    for delta in deltas:
        rankings.append(rank_alternatives(table, specs, perturb_weights(w, criterion, delta)))
    trajectories = {
        name: [next(r.rank for r in ranking if r.name == name) for ranking in rankings]
        for name in table.alternatives
    }
    return SweepResult(
        criterion=criterion,
        deltas=[float(d) for d in deltas],
        rankings=rankings,
        trajectories=trajectories,
    )


# --- file formats and report assembly ---------------------------------------

DEFAULT_SWEEP_DELTAS = tuple(round(d * 0.01, 2) for d in range(-5, 6))


def load_decision_table(text: str) -> DecisionTable:
    """CSV with header ``alternative,<criterion>,...`` (RFC-4180 quoting)."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows:
        raise ValueError("decision table CSV is empty")
    header = rows[0]
    if len(header) < 2:
        raise ValueError("decision table needs at least one criterion column")
    criteria = [h.strip() for h in header[1:]]
    alternatives = []
    values = []
    for row in rows[1:]:
        if len(row) != len(header):
            raise ValueError(f"row {row!r} does not match header width {len(header)}")
        alternatives.append(row[0].strip())
        values.append([float(v) for v in row[1:]])
    return DecisionTable(alternatives=alternatives, criteria=criteria, values=values)


def dump_decision_table(table: DecisionTable) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["alternative"] + table.criteria)
    for name, row in zip(table.alternatives, table.values):
        writer.writerow([name] + [repr(v) for v in row])
    return out.getvalue()


def load_pairwise_matrix(text: str) -> PairwiseMatrix:
    data = json.loads(text)
    return PairwiseMatrix(labels=list(data["labels"]), entries=[list(r) for r in data["entries"]])


def load_feature_checklists(text: str) -> dict[str, FeatureChecklist]:
    data = json.loads(text)
    return {name: FeatureChecklist(scores=dict(scores)) for name, scores in data["checklists"].items()}


def build_report(
    matrix: PairwiseMatrix,
    table: DecisionTable,
    specs: Sequence[CriterionSpec] | None = None,
    checklists: dict[str, FeatureChecklist] | None = None,
    sweep_criteria: Sequence[str] | None = None,
    sweep_deltas: Sequence[float] = DEFAULT_SWEEP_DELTAS,
) -> dict:
    """Run the full pipeline into one JSON-ready report.

    Machine output keeps full precision; the human rendering is the
    formatter's job. Sensitivity defaults to sweeping every qualitative
    judgment criterion present in the table.
    """
    specs = list(specs) if specs is not None else default_specs(table.criteria)
    weights_vec = priority_vector(matrix)
    weights = {label: float(w) for label, w in zip(matrix.labels, weights_vec)}
    consistency = consistency_ratio(matrix)
    ranking = rank_alternatives(table, specs, weights)
    if sweep_criteria is None:
        sweep_criteria = [c for c in ("simplicity", "applicability") if c in table.criteria]
    sensitivity = {}
    for criterion in sweep_criteria:
        sweep = sensitivity_sweep(table, specs, weights, criterion, sweep_deltas)
        sensitivity[criterion] = {
            "deltas": sweep.deltas,
            "trajectories": sweep.trajectories,
            "stable": {name: sweep.stable(name) for name in table.alternatives},
        }
    report = {
        "weights": weights,
        "lambda_max": consistency.lambda_max,
        "ci": consistency.ci,
        "cr": consistency.cr,
        "max_reciprocity_deviation": matrix.max_reciprocity_deviation,
        "normalized": normalized_matrix(table, specs),
        "scores": {r.name: r.score for r in ranking},
        "ranking": [
            {"name": r.name, "score": r.score, "rank": r.rank, "tied": r.tied} for r in ranking
        ],
        "sensitivity": sensitivity,
    }
    if checklists:
        report["applicability"] = {
            name: round(applicability_score(cl), 2) for name, cl in checklists.items()
        }
    return report


def format_report(report: dict) -> str:
    """Human-readable tables, values rounded to 3 decimals."""
    lines = []
    lines.append("criterion weights")
    for name, w in report["weights"].items():
        lines.append(f"  {name:<24s} {w:7.3f}")
    lines.append(
        f"lambda_max {report['lambda_max']:.3f}   CI {report['ci']:.3f}   CR {report['cr']:.3f}"
    )
    if "applicability" in report:
        lines.append("applicability scores")
        for name, v in report["applicability"].items():
            lines.append(f"  {name:<24s} {v:7.2f}")
    lines.append("ranking")
    for entry in report["ranking"]:
        tie = " (tie)" if entry["tied"] else ""
        lines.append(f"  {entry['rank']:2d}. {entry['name']:<24s} {entry['score']:7.3f}{tie}")
    for criterion, sweep in report.get("sensitivity", {}).items():
        stable = [name for name, ok in sweep["stable"].items() if ok]
        moving = [name for name, ok in sweep["stable"].items() if not ok]
        lines.append(f"sensitivity on {criterion}: deltas {sweep['deltas'][0]:+.2f}..{sweep['deltas'][-1]:+.2f}")
        if stable:
            lines.append(f"  stable: {', '.join(sorted(stable))}")
        if moving:
            lines.append(f"  rank changes: {', '.join(sorted(moving))}")
            for name in sorted(moving):
                ranks = sweep["trajectories"][name]
                lines.append(f"    {name}: ranks {ranks}")
    return "\n".join(lines) + "\n"
