"""Synthetic bag datasets: random centers, labels ``f(center)``, uniform noise.

Bag ``l`` is drawn from its own ``numpy.random.Philox`` stream seeded with
``SeedSequence([seed, l])``: first the center ``x ~ U(x_support)``, then
``N`` values ``eps_j ~ U(-1, 1)``, giving observations ``x + R * eps_j``.
Bags can therefore be generated independently (and in parallel) while the
whole dataset stays a pure function of the config.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import InputError
from .moments import Bag, BagDataset

RNG_NAME = "philox4x64-seedsequence(seed,l)"


class Target(str, enum.Enum):
    LINEAR = "linear"
    RUNGE = "runge"
    STEP = "step"


def target_function(target, x):
    """``x``, ``1/(1+25x^2)`` or the unit step (0 at ``x <= 0``); vectorized."""
    target = Target(target)
    x = np.asarray(x, dtype=np.float64)
    if target is Target.LINEAR:
        out = x.copy()
    elif target is Target.RUNGE:
        out = 1.0 / (1.0 + 25.0 * x * x)
    else:
        out = np.where(x <= 0.0, 0.0, 1.0)
    return out[()] if out.ndim == 0 else out


def target_range(target, support=(-1.0, 1.0)) -> tuple[float, float]:
    """Closed range of ``f`` over the support interval."""
    lo, hi = support
    target = Target(target)
    if target is Target.LINEAR:
        return (lo, hi)
    if target is Target.RUNGE:
        ends = target_function(target, np.array([lo, hi]))
        top = 1.0 if lo <= 0.0 <= hi else float(ends.max())
        return (float(ends.min()), top)
    return (0.0 if lo <= 0.0 else 1.0, 1.0 if hi > 0.0 else 0.0)


@dataclass(frozen=True)
class ExperimentConfig:
    target: Target = Target.LINEAR
    N: int = 100
    M: int = 2000
    R: float = 0.1
    seed: int = 42
    x_support: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "target", Target(self.target))
        for name in ("N", "M"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise InputError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        r = float(self.R)
        if not (math.isfinite(r) and r >= 0.0):
            raise InputError(f"R must be a finite nonnegative number, got {self.R!r}")
        object.__setattr__(self, "R", r)
        if isinstance(self.seed, bool) or int(self.seed) != self.seed \
                or not 0 <= self.seed < 2**64:
            raise InputError(f"seed must be an integer in [0, 2**64), got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))
        lo, hi = (float(v) for v in self.x_support)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise InputError(f"invalid x_support {self.x_support!r}")
        object.__setattr__(self, "x_support", (lo, hi))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["target"] = self.target.value
        out["x_support"] = list(self.x_support)
        out["rng"] = RNG_NAME
        return out


def bag_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def generate(config: ExperimentConfig) -> BagDataset:
    lo, hi = config.x_support
    bags = []
    for l in range(config.M):
        rng = bag_rng(config.seed, l)
        center = rng.uniform(lo, hi)
        eps = rng.uniform(-1.0, 1.0, config.N)
        label = float(target_function(config.target, center))
        bags.append(Bag(center + config.R * eps, label))
    return BagDataset(tuple(bags), meta={"generator": config.to_dict()})
