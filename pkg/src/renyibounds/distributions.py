"""Finite probability types and exhaustive MAP / list-MAP oracles.

Joint matrices are laid out with rows indexed by the hypothesis ``x`` and
columns by the observation ``y``.
"""

from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

NORMALIZATION_TOL = 1e-12
LIMIT_SNAP = 1e-9


class ValidationError(ValueError):
    """Input data is not a valid distribution / matrix."""


class DomainError(ValueError):
    """A quantity is undefined for the given (valid) input."""


class BudgetError(RuntimeError):
    """An exhaustive computation would exceed its enumeration budget."""


def _as_nonnegative_matrix(data, ndim: int) -> np.ndarray:
    arr = np.array(data, dtype=float)
    if arr.ndim != ndim:
        raise ValidationError(f"expected a {ndim}-d array, got shape {arr.shape}")
    if arr.size == 0:
        raise ValidationError("empty array")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("non-finite entries")
    if np.any(arr < 0):
        raise ValidationError("negative entries")
    return arr


@dataclass(frozen=True)
class ProbVector:
    """A pmf on ``{0, ..., len-1}``.

    Construct with ``ProbVector.from_weights`` to normalize arbitrary
    nonnegative weights; the plain constructor demands a pmf already.
    """

    masses: np.ndarray

    def __post_init__(self):
        arr = _as_nonnegative_matrix(self.masses, 1)
        total = arr.sum()
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"masses sum to {total!r}, not 1")
        arr = arr / total
        arr.setflags(write=False)
        object.__setattr__(self, "masses", arr)

    @classmethod
    def from_weights(cls, weights) -> "ProbVector":
        arr = _as_nonnegative_matrix(weights, 1)
        total = arr.sum()
        if total <= 0:
            raise ValidationError("weights sum to zero")
        return cls(arr / total)

    @classmethod
    def uniform(cls, m: int) -> "ProbVector":
        return cls(np.full(m, 1.0 / m))

    def __len__(self) -> int:
        return self.masses.size

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.masses > 0)

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.masses > 0))

    @property
    def p_max(self) -> float:
        return float(self.masses.max())

    @property
    def p_min(self) -> float:
        """Smallest nonzero mass."""
        return float(self.masses[self.masses > 0].min())

    @property
    def mode(self) -> int:
        return int(np.argmax(self.masses))


@dataclass(frozen=True)
class JointPMF:
    """Joint pmf ``P_XY`` on a finite ``M x N`` grid."""

    matrix: np.ndarray

    def __post_init__(self):
        arr = _as_nonnegative_matrix(self.matrix, 2)
        total = arr.sum()
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"joint sums to {total!r}, not 1")
        arr = arr / total
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @classmethod
    def from_weights(cls, weights) -> "JointPMF":
        arr = _as_nonnegative_matrix(weights, 2)
        total = arr.sum()
        if total <= 0:
            raise ValidationError("weights sum to zero")
        return cls(arr / total)

    @classmethod
    def from_prior_channel(cls, prior: ProbVector, channel: "Channel") -> "JointPMF":
        if len(prior) != channel.n_inputs:
            raise ValidationError("prior and channel input sizes differ")
        return cls(prior.masses[:, None] * channel.transition)

    @property
    def M(self) -> int:
        return self.matrix.shape[0]

    @property
    def N(self) -> int:
        return self.matrix.shape[1]

    @property
    def prior(self) -> ProbVector:
        return ProbVector(self.matrix.sum(axis=1))

    @property
    def output(self) -> ProbVector:
        return ProbVector(self.matrix.sum(axis=0))

    @property
    def live_columns(self) -> np.ndarray:
        """Indices ``y`` with ``P_Y(y) > 0``."""
        return np.flatnonzero(self.matrix.sum(axis=0) > 0)

    def posterior(self, y: int) -> ProbVector:
        col = self.matrix[:, y]
        if col.sum() <= 0:
            raise DomainError(f"observation {y} has zero probability")
        return ProbVector(col / col.sum())

    def posteriors(self) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(P_Y on live columns, M x N' posterior matrix)``."""
        cols = self.live_columns
        sub = self.matrix[:, cols]
        py = sub.sum(axis=0)
        return py, sub / py

    def conditional(self, x: int) -> ProbVector:
        """``P_{Y|X=x}``; requires ``P_X(x) > 0``."""
        row = self.matrix[x]
        if row.sum() <= 0:
            raise DomainError(f"hypothesis {x} has zero prior")
        return ProbVector(row / row.sum())

    def positive_posteriors(self) -> bool:
        _, post = self.posteriors()
        return bool(np.all(post > 0))


@dataclass(frozen=True)
class Channel:
    """DMC transition matrix ``P_{Y|X}``, rows indexed by input."""

    transition: np.ndarray

    def __post_init__(self):
        arr = _as_nonnegative_matrix(self.transition, 2)
        sums = arr.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > NORMALIZATION_TOL):
            raise ValidationError("channel rows must sum to 1")
        arr = arr / sums[:, None]
        arr.setflags(write=False)
        object.__setattr__(self, "transition", arr)

    @classmethod
    def bsc(cls, delta: float) -> "Channel":
        if not 0.0 <= delta <= 1.0:
            raise ValidationError("crossover probability must lie in [0, 1]")
        return cls(np.array([[1 - delta, delta], [delta, 1 - delta]]))

    @property
    def n_inputs(self) -> int:
        return self.transition.shape[0]

    @property
    def n_outputs(self) -> int:
        return self.transition.shape[1]

    def is_binary_symmetric_output(self, tol: float = 1e-12) -> bool:
        """True for binary-input channels with an output involution mapping row 0 to row 1."""
        if self.n_inputs != 2:
            return False
        w0, w1 = self.transition
        partner = [-1] * self.n_outputs
        for y in range(self.n_outputs):
            if partner[y] >= 0:
                continue
            for z in range(y, self.n_outputs):
                if partner[z] < 0 and abs(w1[y] - w0[z]) <= tol and abs(w1[z] - w0[y]) <= tol:
                    partner[y], partner[z] = z, y
                    break
            else:
                return False
        return True


class Tag(enum.Enum):
    NEG_INF = "-inf"
    ZERO = "0"
    ONE = "1"
    POS_INF = "inf"
    FINITE = "finite"


@dataclass(frozen=True)
class Order:
    """Extended-real Renyi order with exact tags at -inf, 0, 1, +inf.

    Finite values within ``LIMIT_SNAP`` of 0 or 1 collapse onto those tags.
    """

    value: float
    tag: Tag = field(init=False)

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v):
            raise ValidationError("order is NaN")
        if v == math.inf:
            tag = Tag.POS_INF
        elif v == -math.inf:
            tag = Tag.NEG_INF
        elif abs(v) <= LIMIT_SNAP:
            tag, v = Tag.ZERO, 0.0
        elif abs(v - 1.0) <= LIMIT_SNAP:
            tag, v = Tag.ONE, 1.0
        else:
            tag = Tag.FINITE
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "tag", tag)

    @classmethod
    def of(cls, alpha) -> "Order":
        if isinstance(alpha, Order):
            return alpha
        if isinstance(alpha, str):
            text = alpha.strip().lower()
            if text in {"inf", "+inf", "infinity", "∞"}:
                return cls(math.inf)
            if text in {"-inf", "-infinity", "-∞"}:
                return cls(-math.inf)
            if "/" in text:
                num, den = text.split("/", 1)
                return cls(float(num) / float(den))
            return cls(float(text))
        return cls(float(alpha))

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        if self.tag is Tag.POS_INF:
            return "inf"
        if self.tag is Tag.NEG_INF:
            return "-inf"
        return f"{self.value:g}"


# --------------------------------------------------------------------------
# Loading


def load_joint(path: str | Path) -> JointPMF:
    """Read a joint pmf from JSON (``{"matrix": ..., "normalize": bool}``) or CSV."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_joint_json(text)
    return parse_joint_csv(text)


def parse_joint_json(text: str) -> JointPMF:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise ValidationError('JSON joint must be an object with a "matrix" key')
    if obj.get("normalize", True):
        return JointPMF.from_weights(obj["matrix"])
    return JointPMF(obj["matrix"])


def parse_joint_csv(text: str) -> JointPMF:
    rows = [r for r in csv.reader(text.splitlines()) if any(c.strip() for c in r)]
    try:
        data = [[float(c) for c in r] for r in rows]
    except ValueError as exc:
        raise ValidationError(f"malformed CSV: {exc}") from exc
    if len({len(r) for r in data}) > 1:
        raise ValidationError("ragged CSV rows")
    return JointPMF.from_weights(data)


def parse_channel(obj) -> Channel:
    """Channel from ``{"bsc": delta}`` or ``{"matrix": [[...]]}``."""
    if isinstance(obj, dict) and "bsc" in obj:
        return Channel.bsc(float(obj["bsc"]))
    if isinstance(obj, dict) and "matrix" in obj:
        return Channel(obj["matrix"])
    raise ValidationError('channel must be {"bsc": delta} or {"matrix": [[...]]}')


# --------------------------------------------------------------------------
# Exact MAP quantities


def map_error(joint: JointPMF) -> float:
    """Minimum Bayesian error probability ``1 - sum_y max_x P_XY(x, y)``."""
    return float(1.0 - joint.matrix.max(axis=0).sum())


def map_decision(joint: JointPMF) -> np.ndarray:
    """MAP rule per column; ties go to the lowest hypothesis index."""
    return np.argmax(joint.matrix, axis=0)


def map_list_error(joint: JointPMF, L: int) -> float:
    """Miss probability of the decoder keeping the ``L`` largest posteriors."""
    if not 1 <= L <= joint.M:
        raise ValueError(f"list size must lie in [1, {joint.M}], got {L}")
    # stable sort on -P keeps lowest indices first among ties
    order = np.argsort(-joint.matrix, axis=0, kind="stable")
    kept = np.take_along_axis(joint.matrix, order[:L], axis=0)
    return float(max(0.0, 1.0 - kept.sum()))


def conditional_error_given_y(joint: JointPMF, y: int) -> float:
    return 1.0 - joint.posterior(y).p_max


@dataclass(frozen=True)
class PairwiseTest:
    prior: ProbVector  # (P[X_ij = i], P[X_ij = j])
    p_i: ProbVector
    p_j: ProbVector
    error: float  # exact binary MAP error


def pairwise_restriction(joint: JointPMF, i: int, j: int) -> PairwiseTest:
    """Binary test between hypotheses ``i`` and ``j`` with renormalized priors."""
    if i == j:
        raise ValueError("pairwise restriction needs i != j")
    pi, pj = joint.matrix[i].sum(), joint.matrix[j].sum()
    if pi + pj <= 0:
        raise DomainError(f"hypotheses {i} and {j} both have zero prior")
    row_i, row_j = joint.matrix[i], joint.matrix[j]
    err = np.minimum(row_i, row_j).sum() / (pi + pj)
    cond_i = ProbVector(row_i / pi) if pi > 0 else ProbVector(row_j / pj)
    cond_j = ProbVector(row_j / pj) if pj > 0 else cond_i
    return PairwiseTest(ProbVector(np.array([pi, pj]) / (pi + pj)), cond_i, cond_j, float(err))


# --------------------------------------------------------------------------
# Named joints used throughout the tests and the CLI

EXAMPLE_TABLES = np.array([[8, 1, 6], [3, 5, 7], [4, 9, 2]], dtype=float) / 45
EXAMPLE_NEGATIVE_ORDER = (
    np.array(
        [[10, 38, 10, 26], [32, 20, 44, 20], [10, 29, 10, 35], [41, 20, 35, 20]],
        dtype=float,
    )
    / 400
)
EXAMPLE_BINARY = np.array([[0.1906, 0.3737], [0.4319, 0.0038]])


def example_joint(name: str) -> JointPMF:
    table = {
        "tables": EXAMPLE_TABLES,
        "negative-order": EXAMPLE_NEGATIVE_ORDER,
        "binary": EXAMPLE_BINARY,
    }
    return JointPMF.from_weights(table[name])
