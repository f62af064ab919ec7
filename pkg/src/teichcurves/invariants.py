r"""
Exact invariants of Teichmuller curves: kappa, Lyapunov-exponent sums, the
invariant/anti-invariant split, Siegel-Veech constant, slope, intersection
numbers and the closed forms for components of hyperelliptic half-translation
surfaces.

All arithmetic is exact rational; no floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .origami import AbelianSignature


@dataclass(frozen=True)
class QuadraticSignature:
    """Orders (d_1, ..., d_n) of a quadratic differential, d_j >= -1."""

    orders: tuple

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(sorted(self.orders, reverse=True)))
        if any(d < -1 for d in self.orders):
            raise ValueError("quadratic orders must be >= -1")
        total = sum(self.orders)
        if total % 4 or total < -4:
            raise ValueError(f"sum of orders is {total}, not of the form 4g - 4")
        if sum(1 for d in self.orders if d % 2) % 2:
            raise ValueError("a quadratic signature needs an even number of odd orders")

    @property
    def genus(self) -> int:
        return (sum(self.orders) + 4) // 4

    @property
    def pole_count(self) -> int:
        return sum(1 for d in self.orders if d == -1)

    def double_cover_signature(self) -> AbelianSignature:
        """Zero orders of the canonical double cover.

        An even order d contributes two zeros of order d/2, an odd order d >= 1
        one zero of order d + 1; simple poles lift to regular branch points.
        """
        ms = []
        for d in self.orders:
            if d == -1:
                continue
            if d % 2 == 0:
                if d > 0:
                    ms.extend([d // 2, d // 2])
            else:
                ms.append(d + 1)
        return AbelianSignature(tuple(ms))

    def __str__(self) -> str:
        return "Q(" + ",".join(str(d) for d in self.orders) + ")"


def kappa_quadratic(sig: QuadraticSignature) -> Fraction:
    """kappa = (1/24) * sum d_j (d_j + 4) / (d_j + 2)."""
    return sum((Fraction(d * (d + 4), d + 2) for d in sig.orders),
               Fraction(0)) / 24


def kappa_abelian(sig: AbelianSignature) -> Fraction:
    """kappa = (1/12) * sum m_i (m_i + 2) / (m_i + 1)."""
    return sum((Fraction(m * (m + 2), m + 1) for m in sig.orders),
               Fraction(0)) / 12


def lyapunov_sum(orbit, sig_cover: AbelianSignature) -> Fraction:
    """Sum of Lyapunov exponents of the double cover from its orbit data.

    ``L = kappa + c`` where the Siegel-Veech constant of a square-tiled
    surface is the orbit average of the cylinder inverse-moduli sums.
    """
    if not orbit.complete:
        raise ValueError("orbit enumeration is incomplete; cannot evaluate L")
    return kappa_abelian(sig_cover) + orbit.moduli_sum / orbit.index


def split_delta(sig: QuadraticSignature) -> Fraction:
    """The defect L^- - L^+ = (1/4) * sum over odd d_j of 1/(d_j + 2)."""
    return sum((Fraction(1, d + 2) for d in sig.orders if d % 2),
               Fraction(0)) / 4


def split_L(L: Fraction, sig: QuadraticSignature) -> tuple:
    """Split the cover sum L = L^+ + L^- into its invariant and
    anti-invariant parts."""
    delta = split_delta(sig)
    l_plus = (L - delta) / 2
    return l_plus, L - l_plus


def siegel_veech(l_plus: Fraction, sig: QuadraticSignature) -> Fraction:
    """Area Siegel-Veech constant c = L^+ - kappa."""
    return l_plus - kappa_quadratic(sig)


def slope(l_plus: Fraction, sig: QuadraticSignature) -> Fraction:
    """s = 12 c / L^+ = 12 - 12 kappa / L^+."""
    if l_plus == 0:
        raise ZeroDivisionError("slope undefined for L^+ = 0")
    return 12 - 12 * kappa_quadratic(sig) / l_plus


@dataclass(frozen=True)
class IntersectionRecord:
    """Intersections of a Teichmuller curve with the tautological classes."""

    chi: Fraction
    c_lambda: Fraction          # C . lambda
    c_delta: Fraction           # C . delta
    sections_square: tuple      # S_j^2 per singularity, following sig order
    sections_omega: tuple       # S_j . omega_pi per singularity

    def noether_residual(self, kappa: Fraction) -> Fraction:
        """12 C.lambda - C.delta - 6 chi kappa; identically zero."""
        return 12 * self.c_lambda - self.c_delta - 6 * self.chi * kappa


def teich_intersections(chi: Fraction, sig: QuadraticSignature,
                        l_plus: Fraction) -> IntersectionRecord:
    """S_j^2 = -chi/(d_j+2), S_j.omega = chi/(d_j+2), C.lambda = chi L^+/2,
    C.delta = 6 chi c."""
    if chi <= 0:
        raise ValueError("chi must be positive")
    c = siegel_veech(l_plus, sig)
    return IntersectionRecord(
        chi=Fraction(chi),
        c_lambda=Fraction(chi) * l_plus / 2,
        c_delta=6 * Fraction(chi) * c,
        sections_square=tuple(-Fraction(chi, d + 2) for d in sig.orders),
        sections_omega=tuple(Fraction(chi, d + 2) for d in sig.orders),
    )


# -- hyperelliptic components -------------------------------------------------

@dataclass(frozen=True)
class HyperellipticComponentSpec:
    """One of the three families of components of hyperelliptic
    half-translation surfaces, indexed by (type, g, k)."""

    type: int
    g: int
    k: int

    def __post_init__(self):
        if self.type not in (1, 2, 3):
            raise ValueError("type must be 1, 2 or 3")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if min(self.stratum().orders) < 1:
            raise ValueError(f"(type,g,k)=({self.type},{self.g},{self.k}) "
                             "is outside the family range")

    def stratum(self) -> QuadraticSignature:
        g, k = self.g, self.k
        if self.type == 1:
            orders = (2 * (g - k) - 3, 2 * (g - k) - 3, 2 * k + 1, 2 * k + 1)
        elif self.type == 2:
            orders = (2 * (g - k) - 3, 2 * (g - k) - 3, 4 * k + 2)
        else:
            orders = (4 * (g - k) - 6, 4 * k + 2)
        return QuadraticSignature(orders)


def hyperelliptic_Lplus(spec: HyperellipticComponentSpec) -> Fraction:
    """Closed-form L^+ for the three hyperelliptic families."""
    g, k = spec.g, spec.k
    if spec.type == 1:
        return (Fraction(g + 1, 2)
                - Fraction(g + 1, 2 * (2 * g - 2 * k - 1) * (2 * k + 3)))
    if spec.type == 2:
        return Fraction(2 * g + 1, 4) - Fraction(1, 4 * (2 * g - 2 * k - 1))
    return Fraction(g, 2)


# -- full per-curve report ----------------------------------------------------

@dataclass(frozen=True)
class TeichCurveReport:
    """All invariants of one Teichmuller curve, exact rationals throughout."""

    signature: QuadraticSignature
    cover_signature: AbelianSignature
    index: int
    cusp_count: int
    chi: Fraction
    kappa_cover: Fraction
    kappa_quotient: Fraction
    L: Fraction
    L_plus: Fraction
    L_minus: Fraction
    c: Fraction
    slope: Fraction
    intersections: IntersectionRecord

    def to_dict(self) -> dict:
        rec = {
            "stratum": str(self.signature),
            "cover_stratum": str(self.cover_signature),
            "index": self.index,
            "cusps": self.cusp_count,
            "chi": str(self.chi),
            "kappa_cover": str(self.kappa_cover),
            "kappa_quotient": str(self.kappa_quotient),
            "L": str(self.L),
            "L_plus": str(self.L_plus),
            "L_minus": str(self.L_minus),
            "c": str(self.c),
            "slope": str(self.slope),
            "C.lambda": str(self.intersections.c_lambda),
            "C.delta": str(self.intersections.c_delta),
        }
        for d, s2 in zip(self.signature.orders, self.intersections.sections_square):
            rec.setdefault("S^2", {})[str(d)] = str(s2)
        return rec


def curve_report(orbit, quotient_sig: QuadraticSignature,
                 cover_sig: AbelianSignature) -> TeichCurveReport:
    """Assemble the full invariant report of the Teichmuller curve generated
    by a double-cover origami with the given quotient signature."""
    L = lyapunov_sum(orbit, cover_sig)
    l_plus, l_minus = split_L(L, quotient_sig)
    c = siegel_veech(l_plus, quotient_sig)
    chi = Fraction(orbit.index, 6)
    return TeichCurveReport(
        signature=quotient_sig,
        cover_signature=cover_sig,
        index=orbit.index,
        cusp_count=orbit.cusp_count,
        chi=chi,
        kappa_cover=kappa_abelian(cover_sig),
        kappa_quotient=kappa_quadratic(quotient_sig),
        L=L,
        L_plus=l_plus,
        L_minus=l_minus,
        c=c,
        slope=slope(l_plus, quotient_sig) if l_plus else Fraction(0),
        intersections=teich_intersections(chi, quotient_sig, l_plus),
    )
