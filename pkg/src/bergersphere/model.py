"""Axisymmetric left-invariant metrics on SU(2) and momentum bookkeeping.

A metric here is a left-invariant Riemannian metric on SU(2) whose
eigenvalues in a fixed orthonormal frame of the Lie algebra are
``(i1, i1, i3)``: the two equatorial directions share the eigenvalue
``i1`` and the axis direction carries ``i3``.  These are the Berger
spheres.  The shape parameter

    eta = i1/i3 - 1

measures the deviation from the bi-invariant round case ``eta = 0``;
metrics with ``eta < 0`` are dominated by the round behaviour, while
``eta > 0`` stretches the axis relative to the equator.

Geodesics from the identity are parametrized by an initial momentum
covector ``p`` normalized to unit speed, i.e. to Hamiltonian level

    H(p) = (p1^2/i1 + p2^2/i1 + p3^2/i3) / 2 = 1/2.

Because the two equatorial eigenvalues coincide, every cut and conjugate
quantity depends on ``p`` only through the axis fraction
``pbar3 = p3/|p|``, and on that level set the Euclidean norm of the
momentum is ``|p| = sqrt(i1/(1 + eta*pbar3^2))``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "BergerMetric",
    "ReducedMomentum",
    "Momentum",
    "Regime",
    "momentum_norm",
    "classify_regime",
]


class Regime(enum.Enum):
    """Diameter regime of a metric, split by the ratio i1/i3."""

    ROUND_DOMINATED = "ROUND_DOMINATED"  # i1 <= i3
    MIDDLE = "MIDDLE"                    # i3 < i1 <= 2*i3
    PROLATE = "PROLATE"                  # 2*i3 < i1


@dataclass(frozen=True)
class BergerMetric:
    """Metric eigenvalues ``(i1, i1, i3)``; both must be finite and positive."""

    i1: float
    i3: float

    def __post_init__(self) -> None:
        for name in ("i1", "i3"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise ValueError(f"{name} must be a real number, got {v!r}")
            v = float(v)
            if not math.isfinite(v) or v <= 0.0:
                raise ValueError(f"{name} must be finite and positive, got {v!r}")
            object.__setattr__(self, name, v)

    def eta(self) -> float:
        """Shape parameter ``i1/i3 - 1``; always greater than -1."""
        return self.i1 / self.i3 - 1.0


@dataclass(frozen=True)
class ReducedMomentum:
    """Axis fraction ``pbar3 = p3/|p|`` of a unit-speed momentum, in [-1, 1]."""

    pbar3: float

    def __post_init__(self) -> None:
        v = self.pbar3
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ValueError(f"pbar3 must be a real number, got {v!r}")
        v = float(v)
        if not math.isfinite(v) or abs(v) > 1.0:
            raise ValueError(f"pbar3 must lie in [-1, 1], got {v!r}")
        object.__setattr__(self, "pbar3", v)


@dataclass(frozen=True)
class Momentum:
    """Momentum covector ``(p1, p2, p3)`` in the frame of the metric."""

    p1: float
    p2: float
    p3: float

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "p3"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise ValueError(f"{name} must be a real number, got {v!r}")
            v = float(v)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)

    def norm(self) -> float:
        """Euclidean norm ``sqrt(p1^2 + p2^2 + p3^2)``."""
        return math.sqrt(self.p1 * self.p1 + self.p2 * self.p2 + self.p3 * self.p3)

    def reduced(self) -> ReducedMomentum:
        """Axis fraction of this covector.  Undefined for the zero covector."""
        n = self.norm()
        if n == 0.0:
            raise ValueError("the zero momentum has no axis fraction")
        # roundoff can push the quotient a few ulp past 1
        return ReducedMomentum(min(1.0, max(-1.0, self.p3 / n)))


def _pbar3_value(pb: "ReducedMomentum | float") -> float:
    """Accept either a ReducedMomentum or a bare float, validated either way."""
    if isinstance(pb, ReducedMomentum):
        return pb.pbar3
    return ReducedMomentum(pb).pbar3


def momentum_norm(m: BergerMetric, pb: "ReducedMomentum | float") -> float:
    """Norm ``|p| = sqrt(i1/(1 + eta*pbar3^2))`` on the unit-speed level set.

    The denominator is bounded below by ``min(1, i1/i3) > 0``, so the
    expression is well defined for every admissible metric and axis
    fraction.
    """
    pbar3 = _pbar3_value(pb)
    return math.sqrt(m.i1 / (1.0 + m.eta() * pbar3 * pbar3))


def classify_regime(m: BergerMetric) -> Regime:
    """Diameter regime of ``m``; boundaries belong to the slower-growing branch.

    ``i1 == i3`` classifies as ROUND_DOMINATED and ``i1 == 2*i3`` as
    MIDDLE, which matches the continuity of the closed-form diameter
    across both boundaries.
    """
    if m.i1 <= m.i3:
        return Regime.ROUND_DOMINATED
    if m.i1 <= 2.0 * m.i3:
        return Regime.MIDDLE
    return Regime.PROLATE
