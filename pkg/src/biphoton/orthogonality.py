"""Operational orthogonality of photon pairs.

Two pairs are orthogonal exactly when the two-photon transition amplitude
between them vanishes, which in the beamsplitter test shows up as the
absence of true coincidences.  Given three of the four single-photon modes,
the fourth mode making the pairs orthogonal is unique (up to a degenerate
configuration where every choice works) and has a closed form.
"""
from __future__ import annotations

from dataclasses import dataclass

from .polarization import (
    JonesVector,
    PoincarePoint,
    jones_from_poincare,
    overlap,
    poincare_from_jones,
)
from .qutrit import BiphotonQutrit, qutrit_inner_product

__all__ = [
    "OrthogonalityReport",
    "AnyPartnerError",
    "DEFAULT_TOLERANCE",
    "DEGENERATE_TOLERANCE",
    "is_orthogonal",
    "orthogonal_partner",
    "orthogonal_partner_jones",
]

# Loose enough for experimental comparisons to override explicitly, tight
# enough that analytic constructions register as orthogonal.
DEFAULT_TOLERANCE = 1e-9

# Constraint-vector norm below which every partner satisfies the condition.
DEGENERATE_TOLERANCE = 1e-12


class AnyPartnerError(ValueError):
    """The reference mode is orthogonal to both halves of the fixed pair, so
    every polarization is a valid partner."""


@dataclass(frozen=True)
class OrthogonalityReport:
    amplitude: complex
    magnitude: float
    orthogonal: bool
    tolerance: float

    def to_json(self) -> dict:
        return {
            "amplitude": [self.amplitude.real, self.amplitude.imag],
            "magnitude": self.magnitude,
            "orthogonal": self.orthogonal,
            "tolerance": self.tolerance,
        }


def is_orthogonal(
    x: BiphotonQutrit, y: BiphotonQutrit, tol: float = DEFAULT_TOLERANCE
) -> OrthogonalityReport:
    """Test two-photon orthogonality of two normalized qutrits."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    amplitude = qutrit_inner_product(x, y)
    magnitude = abs(amplitude)
    return OrthogonalityReport(amplitude, magnitude, magnitude < tol, tol)


def orthogonal_partner_jones(
    a: JonesVector, b: JonesVector, c: JonesVector
) -> JonesVector:
    """Mode d such that the pair (c, d) is orthogonal to the pair (a, b).

    The amplitude is <d|u> with u = <c|a> b + <c|b> a, so d is the
    polarization orthogonal to u.

    Raises AnyPartnerError when u vanishes (c orthogonal to both a and b);
    then the condition holds for every d.
    """
    uh = overlap(c, a) * b.h + overlap(c, b) * a.h
    uv = overlap(c, a) * b.v + overlap(c, b) * a.v
    if abs(uh) ** 2 + abs(uv) ** 2 < DEGENERATE_TOLERANCE ** 2:
        raise AnyPartnerError(
            "reference mode is orthogonal to both halves; every partner works"
        )
    return JonesVector(-uv.conjugate(), uh.conjugate())


def orthogonal_partner(
    a: PoincarePoint, b: PoincarePoint, c: PoincarePoint
) -> PoincarePoint:
    """Sphere point whose pair with c is orthogonal to the pair (a, b)."""
    d = orthogonal_partner_jones(
        jones_from_poincare(a), jones_from_poincare(b), jones_from_poincare(c)
    )
    return poincare_from_jones(d)
