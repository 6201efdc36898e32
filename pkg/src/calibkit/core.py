"""Domain types shared by every module.

All types are frozen dataclasses holding tuples, validated on
construction, and safe to share across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import OutOfRange, ShapeMismatch

_SOFTMAX_TOL = 1e-9


def softmax(logits: np.ndarray) -> np.ndarray:
    """Numerically stable softmax over the last axis."""
    z = np.asarray(logits, dtype=np.float64)
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


@dataclass(frozen=True)
class DimensionStep:
    """One action dimension at one timestep: the selected token's probability,
    optionally backed by the full logit vector."""

    top_prob: float
    logits: tuple[float, ...] | None = None
    chosen_token: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.top_prob) and 0.0 <= self.top_prob <= 1.0):
            raise OutOfRange(f"top_prob {self.top_prob!r} not in [0, 1]")
        if self.logits is not None:
            object.__setattr__(self, "logits", tuple(float(v) for v in self.logits))
            if len(self.logits) < 2:
                raise OutOfRange("logits need a vocabulary of at least 2 tokens")
            if not all(math.isfinite(v) for v in self.logits):
                raise OutOfRange("logits must be finite")
            probs = softmax(np.array(self.logits))
            if self.chosen_token is not None:
                k = self.chosen_token
                if not 0 <= k < len(self.logits):
                    raise OutOfRange(f"chosen_token {k} outside vocabulary")
            else:
                k = int(np.argmax(self.logits))
            if self.logits[k] < max(self.logits):
                raise OutOfRange("chosen_token is not an argmax of logits")
            if abs(probs[k] - self.top_prob) > _SOFTMAX_TOL:
                raise OutOfRange(
                    f"softmax(logits)[{k}]={probs[k]:.12g} disagrees with "
                    f"top_prob={self.top_prob:.12g}"
                )
        elif self.chosen_token is not None and self.chosen_token < 0:
            raise OutOfRange("chosen_token must be non-negative")


@dataclass(frozen=True)
class TimestepRecord:
    """All action dimensions at one timestep, plus the proximity flag used
    by the halting monitor."""

    t: int
    dims: tuple[DimensionStep, ...]
    proximity_flag: bool = False

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        if self.t < 1:
            raise OutOfRange(f"timestep t={self.t} must be >= 1")
        if not self.dims:
            raise OutOfRange("dims must be non-empty")


@dataclass(frozen=True)
class VariantTrajectory:
    """The trajectory recorded under one instruction wording.

    Variant 0 is the original instruction; higher ids are paraphrases.
    """

    variant_id: int
    instruction_text: str
    steps: tuple[TimestepRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.variant_id < 0:
            raise OutOfRange("variant_id must be >= 0")
        for i, step in enumerate(self.steps):
            if step.t != i + 1:
                raise OutOfRange(
                    f"steps must be contiguous from 1; position {i} has t={step.t}"
                )
        dims = {len(s.dims) for s in self.steps}
        if len(dims) > 1:
            raise ShapeMismatch(f"ragged dimension counts within variant: {sorted(dims)}")


@dataclass(frozen=True)
class EpisodeRecord:
    """One robot trial: a binary outcome plus per-variant trajectories.

    Variant 0 defines the episode length and carries the outcome; other
    variants may have diverged and be shorter or longer.
    """

    episode_id: str
    task_id: str
    outcome: int
    variants: tuple[VariantTrajectory, ...]

    def __post_init__(self):
        object.__setattr__(self, "variants", tuple(self.variants))
        if self.outcome not in (0, 1):
            raise OutOfRange(f"outcome must be 0 or 1, got {self.outcome!r}")
        if not self.variants:
            raise OutOfRange("at least one variant required")
        if self.variants[0].variant_id != 0:
            raise OutOfRange("variant 0 (original instruction) must come first")
        dims = {len(s.dims) for v in self.variants for s in v.steps}
        if len(dims) > 1:
            raise ShapeMismatch(f"variants disagree on dimension count: {sorted(dims)}")

    @property
    def num_steps(self) -> int:
        """Episode length, defined by variant 0."""
        return len(self.variants[0].steps)

    @property
    def num_dims(self) -> int:
        return len(self.variants[0].steps[0].dims) if self.variants[0].steps else 0


@dataclass(frozen=True)
class ConfidenceSample:
    """A trial-level (confidence, outcome) pair; the unit all metrics consume."""

    confidence: float
    outcome: int

    def __post_init__(self):
        if not (math.isfinite(self.confidence) and 0.0 <= self.confidence <= 1.0):
            raise OutOfRange(f"confidence {self.confidence!r} not in [0, 1]")
        if self.outcome not in (0, 1):
            raise OutOfRange(f"outcome must be 0 or 1, got {self.outcome!r}")


@dataclass(frozen=True)
class BinStat:
    """Summary of one equal-mass bin."""

    count: int
    mean_confidence: float
    mean_accuracy: float


@dataclass(frozen=True)
class BinnedDiagram:
    """Equal-mass reliability bins.

    Bin counts differ by at most one for inputs with distinct confidences;
    tied confidences are never split across bins, which can unbalance
    counts (see metrics.equal_mass_bins).
    """

    bins: tuple[BinStat, ...]
    total_n: int

    def __post_init__(self):
        object.__setattr__(self, "bins", tuple(self.bins))
        if not self.bins:
            raise OutOfRange("diagram needs at least one bin")
        if sum(b.count for b in self.bins) != self.total_n:
            raise OutOfRange("bin counts do not sum to total_n")
        for b in self.bins:
            if b.count <= 0:
                raise OutOfRange("bins must be non-empty")
            if not (0.0 <= b.mean_confidence <= 1.0 and 0.0 <= b.mean_accuracy <= 1.0):
                raise OutOfRange("bin means must lie in [0, 1]")
        confs = [b.mean_confidence for b in self.bins]
        if any(a > b for a, b in zip(confs, confs[1:])):
            raise OutOfRange("bin mean confidences must be non-decreasing")


class RecalibratorKind(str, enum.Enum):
    PLATT = "platt"
    TEMPERATURE = "temperature"
    ACTIONWISE_PLATT = "actionwise_platt"
    ACTIONWISE_TEMPERATURE = "actionwise_temperature"


@dataclass(frozen=True)
class FitMeta:
    """Bookkeeping from a recalibrator fit."""

    n: int
    converged: bool
    iterations: int
    final_nll: float
    seed: int | None = None


@dataclass(frozen=True)
class Recalibrator:
    """A fitted confidence transform.

    params layout by kind:
      platt                  -> (alpha, beta)
      temperature            -> (T,)
      actionwise_platt       -> ((alpha_0, beta_0), ..., (alpha_{D-1}, beta_{D-1}))
      actionwise_temperature -> (T_0, ..., T_{D-1})
    """

    kind: RecalibratorKind
    params: tuple
    meta: FitMeta | None = None

    def __post_init__(self):
        kind = RecalibratorKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is RecalibratorKind.PLATT:
            a, b = self.params
            object.__setattr__(self, "params", (float(a), float(b)))
        elif kind is RecalibratorKind.TEMPERATURE:
            (t,) = self.params
            if not t > 0:
                raise OutOfRange("temperature must be strictly positive")
            object.__setattr__(self, "params", (float(t),))
        elif kind is RecalibratorKind.ACTIONWISE_PLATT:
            pairs = tuple((float(a), float(b)) for a, b in self.params)
            if not pairs:
                raise OutOfRange("action-wise parameters must be non-empty")
            object.__setattr__(self, "params", pairs)
        else:
            temps = tuple(float(t) for t in self.params)
            if not temps:
                raise OutOfRange("action-wise temperatures must be non-empty")
            if any(t <= 0 for t in temps):
                raise OutOfRange("all temperatures must be strictly positive")
            object.__setattr__(self, "params", temps)

    @property
    def num_dims(self) -> int | None:
        """D for action-wise kinds, None for global ones."""
        if self.kind in (RecalibratorKind.ACTIONWISE_PLATT,
                         RecalibratorKind.ACTIONWISE_TEMPERATURE):
            return len(self.params)
        return None


@dataclass(frozen=True)
class ThresholdProfile:
    """Per-completion-level confidence thresholds for the halting monitor.

    thresholds[p] is the cutoff at completion percent p, for p in 0..99.
    """

    quantile_level: float
    thresholds: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "thresholds", tuple(float(v) for v in self.thresholds))
        if not 0.0 < self.quantile_level < 1.0:
            raise OutOfRange("quantile_level must lie in (0, 1)")
        if len(self.thresholds) != 100:
            raise OutOfRange("profile must cover all 100 completion levels")
        for v in self.thresholds:
            if not (math.isfinite(v) and 0.0 <= v <= 1.0):
                raise OutOfRange(f"threshold {v!r} not in [0, 1]")

    def at(self, completion_pct: int) -> float:
        if not 0 <= completion_pct <= 99:
            raise OutOfRange(f"completion percent {completion_pct} outside 0..99")
        return self.thresholds[completion_pct]


def samples_to_arrays(samples: Sequence[ConfidenceSample]) -> tuple[np.ndarray, np.ndarray]:
    """Split samples into (confidence, outcome) float64/int arrays."""
    conf = np.fromiter((s.confidence for s in samples), dtype=np.float64, count=len(samples))
    y = np.fromiter((s.outcome for s in samples), dtype=np.float64, count=len(samples))
    return conf, y


def require_shared_dimension(episodes: Iterable[EpisodeRecord]) -> int:
    """Return the common action-dimension count, rejecting mixed-D pools."""
    dims = {ep.num_dims for ep in episodes}
    dims.discard(0)
    if not dims:
        raise ShapeMismatch("no episode carries any timestep")
    if len(dims) > 1:
        raise ShapeMismatch(f"episodes mix dimension counts: {sorted(dims)}")
    return dims.pop()
