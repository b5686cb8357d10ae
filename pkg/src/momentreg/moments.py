"""Reduction of bags (and point states) to basis moment vectors."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .basis import BasisSpec, evaluate_basis
from .exceptions import InputError


class Normalization(str, enum.Enum):
    """How a bag's basis sums are scaled.

    ``RAW_SUM`` keeps ``sum_j Q_k(x_j)``; ``SIZE_NORMALIZED`` divides by the
    bag size so bags of different sizes are comparable.
    """

    RAW_SUM = "raw_sum"
    SIZE_NORMALIZED = "size_normalized"


def _readonly(values):
    arr = np.array(values, dtype=np.float64).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Bag:
    observations: np.ndarray
    label: float

    def __post_init__(self):
        obs = _readonly(self.observations)
        if obs.size == 0:
            raise InputError("a bag needs at least one observation")
        if not np.all(np.isfinite(obs)):
            raise InputError("bag observations must be finite")
        label = float(self.label)
        if not math.isfinite(label):
            raise InputError(f"bag label must be finite, got {self.label!r}")
        object.__setattr__(self, "observations", obs)
        object.__setattr__(self, "label", label)

    @property
    def size(self) -> int:
        return self.observations.size

    def __eq__(self, other):
        if not isinstance(other, Bag):
            return NotImplemented
        return self.label == other.label and np.array_equal(
            self.observations, other.observations)


@dataclass(frozen=True)
class BagDataset:
    """``M >= 1`` labeled bags plus free-form metadata (e.g. generator config)."""

    bags: tuple[Bag, ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        bags = tuple(self.bags)
        if not bags:
            raise InputError("a dataset needs at least one bag")
        for bag in bags:
            if not isinstance(bag, Bag):
                raise InputError(f"expected Bag, got {type(bag).__name__}")
        object.__setattr__(self, "bags", bags)

    def __len__(self):
        return len(self.bags)

    def __iter__(self):
        return iter(self.bags)

    @property
    def labels(self) -> np.ndarray:
        return np.array([bag.label for bag in self.bags])

    @property
    def sizes(self) -> np.ndarray:
        return np.array([bag.size for bag in self.bags], dtype=np.int64)

    @property
    def mean_bag_size(self) -> float:
        return float(self.sizes.sum()) / len(self.bags)

    def flat(self):
        """Concatenated observations and the ``M + 1`` bag offsets into them."""
        offsets = np.zeros(len(self.bags) + 1, dtype=np.int64)
        np.cumsum(self.sizes, out=offsets[1:])
        return np.concatenate([bag.observations for bag in self.bags]), offsets


@dataclass(frozen=True, eq=False)
class MomentVector:
    """Basis moments of some x-distribution, tagged with how they were built."""

    values: np.ndarray
    basis: BasisSpec
    mode: Normalization = Normalization.SIZE_NORMALIZED

    def __post_init__(self):
        values = _readonly(self.values)
        if values.size != self.basis.degree_count:
            raise InputError(
                f"moment vector has {values.size} entries, basis expects "
                f"{self.basis.degree_count}")
        if not np.all(np.isfinite(values)):
            raise InputError("moment vector entries must be finite")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mode", Normalization(self.mode))

    def scaled(self, factor: float) -> MomentVector:
        return MomentVector(self.values * factor, self.basis, self.mode)

    def __eq__(self, other):
        if not isinstance(other, MomentVector):
            return NotImplemented
        return (self.basis == other.basis and self.mode == other.mode
                and np.array_equal(self.values, other.values))


def _raw_sums(spec, values, offsets):
    a, b = spec.domain
    return _kernels.bag_moment_sums(
        values, offsets, spec.family.code, spec.degree_count, a, b)


def bag_moments(bag: Bag, spec: BasisSpec,
                mode=Normalization.SIZE_NORMALIZED) -> MomentVector:
    """Moments of one bag: ``sum_j Q_k(x_j)``, divided by ``N`` if normalized.

    Sums are correctly rounded, hence independent of observation order.
    """
    mode = Normalization(mode)
    offsets = np.array([0, bag.size], dtype=np.int64)
    sums = _raw_sums(spec, np.ascontiguousarray(bag.observations), offsets)[0]
    if mode is Normalization.SIZE_NORMALIZED:
        sums = sums / bag.size
    return MomentVector(sums, spec, mode)


def dataset_moments(dataset: BagDataset, spec: BasisSpec,
                    mode=Normalization.SIZE_NORMALIZED) -> np.ndarray:
    """``(M, d_x)`` array whose row ``l`` equals ``bag_moments(bag_l).values``."""
    mode = Normalization(mode)
    values, offsets = dataset.flat()
    sums = _raw_sums(spec, values, offsets)
    if mode is Normalization.SIZE_NORMALIZED:
        sums = sums / dataset.sizes[:, None].astype(np.float64)
    return sums


def point_state_moments(x: float, spec: BasisSpec,
                        mode=Normalization.SIZE_NORMALIZED,
                        reference_size: float = 1.0) -> MomentVector:
    """Moments of a bag whose observations all equal ``x``.

    In raw-sum mode this is ``reference_size * Q_k(x)``; normalized mode
    ignores ``reference_size``.
    """
    mode = Normalization(mode)
    q = evaluate_basis(spec, x)
    if mode is Normalization.RAW_SUM:
        reference_size = float(reference_size)
        if not (math.isfinite(reference_size) and reference_size > 0):
            raise InputError(f"reference_size must be positive, got {reference_size!r}")
        q = reference_size * q
    # match the +0.0 that exact bag sums give for vanishing moments
    return MomentVector(q + 0.0, spec, mode)


def distribution_moments(samples, spec: BasisSpec,
                         mode=Normalization.SIZE_NORMALIZED) -> MomentVector:
    """Moments of an arbitrary sample treated as one (unlabeled) bag."""
    return bag_moments(Bag(samples, 0.0), spec, mode)
