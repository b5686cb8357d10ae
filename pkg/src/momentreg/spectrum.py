"""Outcome spectrum of a trained model and per-state outcome probabilities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import SpanError
from .linalg import reduced_eigh
from .moments import MomentVector
from .regression import SPAN_TOL, TrainedModel


@dataclass(frozen=True, eq=False)
class SpectralModel:
    """Generalized eigenpairs of ``(yG, G)`` for a trained model.

    ``outcomes`` are ascending and do not depend on any input state;
    ``eigvecs`` holds the ``G``-orthonormal vectors as columns.  When ``G``
    was truncated only ``d_eff < d_x`` modes are kept.
    """

    outcomes: np.ndarray
    eigvecs: np.ndarray
    source: TrainedModel

    @property
    def d_eff(self) -> int:
        return self.outcomes.size

    @property
    def truncated(self) -> bool:
        return self.d_eff < self.source.degree_count


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    outcomes: np.ndarray
    probabilities: np.ndarray
    total_weight: float
    # signed projections before squaring, useful to check eigenvector orientation
    projections: np.ndarray

    @property
    def mean(self) -> float:
        return float(self.probabilities @ self.outcomes)

    @property
    def most_likely(self) -> float:
        return float(self.outcomes[np.argmax(self.probabilities)])


def spectral_decompose(model: TrainedModel, clip: bool = True) -> SpectralModel:
    """Solve ``yG psi = y G psi`` on the retained span of ``G``.

    Outcomes are exact Rayleigh quotients and so lie in the label range;
    ``clip`` removes rounding-level excursions past its ends.
    """
    values, vectors = reduced_eigh(model.ygram, model.factor)
    if clip:
        values = np.clip(values, *model.label_range)
    values.setflags(write=False)
    vectors.setflags(write=False)
    return SpectralModel(values, vectors, model)


def project(model: TrainedModel, m1: MomentVector, m2: MomentVector) -> float:
    """Projection ``m1^T G^-1 m2`` of two states; symmetric in its arguments."""
    a = model.check(m1)
    b = model.check(m2)
    solve = model.factor.solve
    # both orders averaged so that swapping the arguments is bit-exact
    return 0.5 * (float(a @ solve(b)) + float(b @ solve(a)))


def outcome_distribution(spectral: SpectralModel, m: MomentVector) -> OutcomeDistribution:
    """Probabilities ``P_i = w_i / sum w`` with ``w_i = (m . psi_i)^2``."""
    values = spectral.source.check(m)
    projections = values @ spectral.eigvecs
    weights = projections * projections
    total = float(weights.sum())
    if spectral.d_eff == 0 or not total > 0.0 \
            or spectral.source.factor.span_fraction(values) <= SPAN_TOL:
        raise SpanError()
    return OutcomeDistribution(
        outcomes=spectral.outcomes,
        probabilities=weights / total,
        total_weight=total,
        projections=projections,
    )
