"""Polynomial bases evaluated by three-term recurrence on a mapped domain."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exceptions import InputError


class Family(str, enum.Enum):
    CHEBYSHEV = "chebyshev"
    LEGENDRE = "legendre"
    # Only meant as a low-degree test oracle; ill-conditioned beyond d_x ~ 10.
    MONOMIAL = "monomial"

    @property
    def code(self) -> int:
        return _FAMILY_CODES[self]


_FAMILY_CODES = {
    Family.CHEBYSHEV: _kernels.CHEBYSHEV,
    Family.LEGENDRE: _kernels.LEGENDRE,
    Family.MONOMIAL: _kernels.MONOMIAL,
}


@dataclass(frozen=True)
class BasisSpec:
    """Basis family, number of functions ``d_x`` and the domain ``[a, b]``.

    Evaluation happens at ``t = (x - (a + b)/2) / ((b - a)/2)``, which maps the
    domain onto ``[-1, 1]``.  Points outside the domain are allowed.
    """

    family: Family = Family.CHEBYSHEV
    degree_count: int = 10
    domain: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        try:
            family = Family(self.family)
        except ValueError:
            raise InputError(f"unknown basis family {self.family!r}") from None
        object.__setattr__(self, "family", family)
        d = self.degree_count
        if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
            raise InputError(f"degree_count must be a positive integer, got {d!r}")
        object.__setattr__(self, "degree_count", int(d))
        try:
            a, b = (float(v) for v in self.domain)
        except (TypeError, ValueError):
            raise InputError(f"domain must be a pair of reals, got {self.domain!r}") from None
        if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
            raise InputError(f"domain must satisfy a < b with finite ends, got {self.domain!r}")
        object.__setattr__(self, "domain", (a, b))

    @classmethod
    def for_observations(cls, observations, degree_count=10, family=Family.CHEBYSHEV):
        """Spec whose domain is the observed ``[min, max]`` range.

        A degenerate range (all values equal) is widened by one unit on
        each side.
        """
        obs = np.asarray(observations, dtype=np.float64)
        if obs.size == 0:
            raise InputError("cannot infer a domain from no observations")
        lo, hi = float(obs.min()), float(obs.max())
        if not lo < hi:
            lo, hi = lo - 1.0, hi + 1.0
        return cls(family, degree_count, (lo, hi))

    def map(self, x):
        a, b = self.domain
        return _kernels.map_to_unit(x, a, b)

    def contains(self, x) -> bool:
        a, b = self.domain
        return a <= x <= b

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "degree_count": self.degree_count,
            "domain": list(self.domain),
        }

    @classmethod
    def from_dict(cls, data) -> BasisSpec:
        return cls(Family(data["family"]), data["degree_count"], tuple(data["domain"]))


def evaluate_basis(spec: BasisSpec, x: float) -> np.ndarray:
    """Return ``[Q_0(x), ..., Q_{d-1}(x)]``; ``Q_0`` is identically 1."""
    x = float(x)
    if not math.isfinite(x):
        raise InputError(f"x must be finite, got {x!r}")
    return basis_matrix(spec, np.array([x]))[0]


def basis_matrix(spec: BasisSpec, xs) -> np.ndarray:
    """Vectorized :func:`evaluate_basis`: one row per point of ``xs``."""
    xs = np.ascontiguousarray(xs, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(xs)):
        raise InputError("all x values must be finite")
    return _kernels.basis_matrix(spec.map(xs), spec.family.code, spec.degree_count)
