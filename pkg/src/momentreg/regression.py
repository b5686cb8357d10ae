"""Sufficient statistics of a bag dataset and the LS / Radon-Nikodym estimators."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .basis import BasisSpec, Family
from .exceptions import InputError, SpanError
from .linalg import SPDFactor, _as_symmetric
from .moments import (BagDataset, MomentVector, Normalization, dataset_moments,
                      point_state_moments)

# Relative share of an input state that must fall in the retained span of G.
SPAN_TOL = 1e-10


class Estimator(str, enum.Enum):
    LS = "ls"
    RN = "rn"


def _frozen(a):
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TrainedModel:
    """Accumulated ``G``, ``yG`` and ``Y`` plus what is needed to use them.

    The factorization of ``G`` is computed once at construction; instances
    are immutable and safe to share between threads.
    """

    basis: BasisSpec
    mode: Normalization
    gram: np.ndarray
    ygram: np.ndarray
    ymoments: np.ndarray
    mean_bag_size: float
    label_range: tuple[float, float]
    bag_count: int = 1
    factor: SPDFactor = field(init=False, repr=False)

    def __post_init__(self):
        d = self.basis.degree_count
        object.__setattr__(self, "mode", Normalization(self.mode))
        gram = _as_symmetric(self.gram)
        ygram = _as_symmetric(self.ygram)
        ymom = np.asarray(self.ymoments, dtype=np.float64).reshape(-1)
        if gram.shape != (d, d) or ygram.shape != (d, d):
            raise InputError(f"G and yG must be {d}x{d}, got {gram.shape} and {ygram.shape}")
        if ymom.shape != (d,):
            raise InputError(f"Y must have {d} entries, got {ymom.size}")
        if not np.all(np.isfinite(ymom)):
            raise InputError("Y entries must be finite")
        lo, hi = (float(v) for v in self.label_range)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise InputError(f"invalid label range {self.label_range!r}")
        size = float(self.mean_bag_size)
        if not (math.isfinite(size) and size > 0):
            raise InputError(f"mean_bag_size must be positive, got {self.mean_bag_size!r}")
        if int(self.bag_count) < 1:
            raise InputError("bag_count must be at least 1")
        object.__setattr__(self, "gram", _frozen(gram))
        object.__setattr__(self, "ygram", _frozen(ygram))
        object.__setattr__(self, "ymoments", _frozen(ymom))
        object.__setattr__(self, "label_range", (lo, hi))
        object.__setattr__(self, "mean_bag_size", size)
        object.__setattr__(self, "bag_count", int(self.bag_count))
        object.__setattr__(self, "factor", SPDFactor(gram))

    @property
    def degeneracy_flag(self) -> bool:
        return self.factor.degenerate

    @property
    def degree_count(self) -> int:
        return self.basis.degree_count

    def point_state(self, x, reference_size=None) -> MomentVector:
        """Point-state moments at ``x`` in this model's basis and mode.

        ``reference_size`` (raw-sum mode only) defaults to the mean bag size.
        """
        if reference_size is None:
            reference_size = self.mean_bag_size
        return point_state_moments(x, self.basis, self.mode, reference_size)

    def check(self, m: MomentVector) -> np.ndarray:
        if m.basis != self.basis or m.mode is not self.mode:
            raise InputError(
                f"moment vector built with {m.basis} / {m.mode.value}, model uses "
                f"{self.basis} / {self.mode.value}")
        return m.values

    def same_layout(self, other: TrainedModel) -> bool:
        return self.basis == other.basis and self.mode is other.mode


def fit(dataset: BagDataset, basis: BasisSpec | None = None,
        mode=Normalization.SIZE_NORMALIZED, *, degree_count=10,
        family=Family.CHEBYSHEV) -> TrainedModel:
    """Accumulate ``G``, ``yG`` and ``Y`` over all bags of ``dataset``.

    Without an explicit ``basis`` the domain is the range of all observations.
    Every sum is correctly rounded.
    """
    if not isinstance(dataset, BagDataset):
        dataset = BagDataset(tuple(dataset))
    mode = Normalization(mode)
    if basis is None:
        values, _ = dataset.flat()
        basis = BasisSpec.for_observations(values, degree_count, family)
    moments = dataset_moments(dataset, basis, mode)
    labels = dataset.labels
    gram, ygram, ymom = _kernels.accumulate_statistics(moments, labels)
    return TrainedModel(
        basis=basis,
        mode=mode,
        gram=gram,
        ygram=ygram,
        ymoments=ymom,
        mean_bag_size=dataset.mean_bag_size,
        label_range=(float(labels.min()), float(labels.max())),
        bag_count=len(dataset),
    )


def merge(first: TrainedModel, second: TrainedModel) -> TrainedModel:
    """Combine fits of two disjoint datasets by adding their statistics."""
    if not first.same_layout(second):
        raise InputError("cannot merge models with different basis or mode")
    count = first.bag_count + second.bag_count
    size = (first.mean_bag_size * first.bag_count
            + second.mean_bag_size * second.bag_count) / count
    return TrainedModel(
        basis=first.basis,
        mode=first.mode,
        gram=first.gram + second.gram,
        ygram=first.ygram + second.ygram,
        ymoments=first.ymoments + second.ymoments,
        mean_bag_size=size,
        label_range=(min(first.label_range[0], second.label_range[0]),
                     max(first.label_range[1], second.label_range[1])),
        bag_count=count,
    )


def predict_ls(model: TrainedModel, m: MomentVector) -> float:
    """Least-squares estimate ``m^T G^{-1} Y``."""
    values = model.check(m)
    return float(model.factor.solve(values) @ model.ymoments)


def predict_rn(model: TrainedModel, m: MomentVector, clip: bool = True) -> float:
    """Radon-Nikodym estimate ``m^T G^-1 yG G^-1 m / m^T G^-1 m``.

    Evaluated as the Rayleigh quotient of ``u = G^-1 m`` for the pencil
    ``(yG, G)``, which lies in the training label range.  ``clip`` removes
    the rounding-level excursions past the range ends.
    """
    values = model.check(m)
    factor = model.factor
    if factor.span_fraction(values) <= SPAN_TOL:
        raise SpanError()
    u = factor.solve(values)
    den = float(u @ model.gram @ u)
    if not den > 0.0:
        raise SpanError()
    value = float(u @ model.ygram @ u) / den
    if not clip:
        return value
    lo, hi = model.label_range
    return min(max(value, lo), hi)


def predict_from_distribution(model: TrainedModel, m: MomentVector,
                              estimator=Estimator.RN) -> float:
    """Estimate ``y`` for a state given by arbitrary moments ``m``."""
    if Estimator(estimator) is Estimator.LS:
        return predict_ls(model, m)
    return predict_rn(model, m)
