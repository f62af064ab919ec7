r"""
The filtration calculator: c_1 of direct images of twisted structure
sheaves along a Teichmuller curve, by telescoping along sections.

A reduction schedule encodes a chain of first-Chern-class identities: each
``telescoping(a, b)`` step on the section through the j-th singularity
contributes

    sum_{i=0}^{a-1} (b - i)  *  S_j^2

and the chain bottoms out on a trivial direct image (``base-trivial``).
Per unit orbifold Euler characteristic the self-intersections are

    S_j^2 = -1/(d_j + 2)            quadratic order d_j,
    S_j^2 = -1/(2 m_j + 2)          abelian order m_j,

and the resulting c_1/chi feeds the Riemann-Roch identities

    L^+ = (6g - 6) + 2 c_1/chi - 12 kappa        (quadratic)
    L   = g + 2 c_1/chi                          (abelian).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .invariants import QuadraticSignature, kappa_quadratic
from .origami import AbelianSignature


@dataclass(frozen=True)
class Telescoping:
    """c_1 of the direct image on the non-reduced section: O_{aS}(bS)."""

    a: int
    b: int
    section: int        # 1-based index into the signature

    def weight(self) -> int:
        if self.a < 1:
            raise ValueError("telescoping needs a >= 1")
        return sum(self.b - i for i in range(self.a))


@dataclass(frozen=True)
class ReductionSchedule:
    """The telescoping chain computing c_1(f_* O(sum d_j S_j)) for one
    component, as in the filtration appendix."""

    case_id: str
    kind: str            # "quadratic" or "abelian"
    genus: int
    signature: tuple
    steps: tuple         # Telescoping steps; base-trivial tails are implicit

    def __post_init__(self):
        if self.kind not in ("quadratic", "abelian"):
            raise ValueError("kind must be 'quadratic' or 'abelian'")
        for s in self.steps:
            if not 1 <= s.section <= len(self.signature):
                raise ValueError(f"step on section {s.section} outside signature")

    def section_square(self, j: int) -> Fraction:
        """S_j^2 per unit chi."""
        d = self.signature[j - 1]
        if self.kind == "quadratic":
            return -Fraction(1, d + 2)
        return -Fraction(1, 2 * d + 2)


def filtration_c1(schedule: ReductionSchedule) -> Fraction:
    """c_1 per unit chi accumulated over the schedule's telescoping steps."""
    total = Fraction(0)
    for step in schedule.steps:
        total += step.weight() * schedule.section_square(step.section)
    return total


def L_from_c1(c1_per_chi: Fraction, genus: int, signature, kind: str) -> Fraction:
    """Read the Lyapunov sum off the Riemann-Roch identity."""
    if kind == "quadratic":
        kappa = kappa_quadratic(QuadraticSignature(tuple(signature)))
        return (6 * genus - 6) + 2 * c1_per_chi - 12 * kappa
    if kind == "abelian":
        AbelianSignature(tuple(signature))
        return genus + 2 * c1_per_chi
    raise ValueError("kind must be 'quadratic' or 'abelian'")


def evaluate_schedule(schedule: ReductionSchedule) -> tuple:
    """(c_1/chi, L) for one bundled case."""
    c1 = filtration_c1(schedule)
    return c1, L_from_c1(c1, schedule.genus, schedule.signature, schedule.kind)


# the six cases of the filtration appendix, as data
BUNDLED_SCHEDULES = (
    ReductionSchedule(
        case_id="Q(6,3,-1)^irr", kind="quadratic", genus=3,
        signature=(6, 3, -1),
        steps=(Telescoping(3, 6, 1), Telescoping(2, 3, 2), Telescoping(1, 2, 1)),
    ),
    ReductionSchedule(
        case_id="Q(12)^irr", kind="quadratic", genus=4,
        signature=(12,),
        steps=(Telescoping(7, 12, 1), Telescoping(1, 4, 1)),
    ),
    ReductionSchedule(
        case_id="Q(9,3)^irr", kind="quadratic", genus=4,
        signature=(9, 3),
        steps=(Telescoping(5, 9, 1), Telescoping(2, 3, 2), Telescoping(1, 3, 1)),
    ),
    ReductionSchedule(
        case_id="H(4,2)^odd", kind="abelian", genus=4,
        signature=(4, 2),
        steps=(Telescoping(2, 4, 1), Telescoping(1, 2, 2)),
    ),
    ReductionSchedule(
        case_id="H(4,2)^even", kind="abelian", genus=4,
        signature=(4, 2),
        steps=(Telescoping(1, 4, 1), Telescoping(1, 2, 2), Telescoping(1, 2, 1)),
    ),
    ReductionSchedule(
        case_id="H(6,2)^odd", kind="abelian", genus=5,
        signature=(6, 2),
        steps=(Telescoping(3, 6, 1), Telescoping(1, 2, 2)),
    ),
)


def bundled_schedule(case_id: str) -> ReductionSchedule:
    for s in BUNDLED_SCHEDULES:
        if s.case_id == case_id:
            return s
    raise ValueError(f"unknown filtration case {case_id!r}; "
                     f"known: {[s.case_id for s in BUNDLED_SCHEDULES]}")
