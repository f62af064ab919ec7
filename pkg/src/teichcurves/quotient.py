r"""
Recovering the half-translation surface underneath a double-cover origami.

A (-1)-involution of an origami (r, u) is a permutation ``s`` of the squares
with ``s^2 = id``, ``s r s = r^-1`` and ``s u s = u^-1``; geometrically it is
an affine involution with derivative -I, rotating every square by a half
turn.  Its quotient is a half-translation surface and the origami is a
double cover of it, branched at the fixed points of the involution.

Fixed points sit at

* square centers where ``s(i) = i``,
* right-edge midpoints where ``s(i) = r(i)`` and top-edge midpoints where
  ``s(i) = u(i)``,
* vertices whose cycle is preserved: the vertex at the top-right corner of
  square ``i`` is the cycle of the commutator containing ``u(r(i))``, and
  the involution maps it to the vertex whose cycle contains ``s(i)``.

The quotient orders follow the covering rules: a swapped pair of zeros of
order m descends to one zero of order 2m, a fixed zero of order m to a
branch point of order m - 1, and a fixed regular point to a simple pole.
"""

from __future__ import annotations

from dataclasses import dataclass

from .invariants import QuadraticSignature
from .origami import Origami
from .perms import Permutation, perm_compose, perm_cycles, perm_invert


class CensusError(ValueError):
    """The fixed-point census of a claimed involution is inconsistent
    (Riemann-Hurwitz or signature-sum violation); signals a convention bug."""


@dataclass(frozen=True)
class FixedCensus:
    vertices: int
    edge_midpoints: int
    centers: int

    @property
    def total(self) -> int:
        return self.vertices + self.edge_midpoints + self.centers


@dataclass(frozen=True)
class QuotientStructure:
    """One (-1)-involution together with the recovered quadratic structure."""

    sigma: Permutation
    signature: QuadraticSignature
    base_genus: int
    census: FixedCensus
    paired_regular_points: int    # swapped pairs of marked regular vertices

    def to_dict(self) -> dict:
        return {
            "sigma": str(self.sigma),
            "signature": list(self.signature.orders),
            "base_genus": self.base_genus,
            "fixed_vertices": self.census.vertices,
            "fixed_edge_midpoints": self.census.edge_midpoints,
            "fixed_centers": self.census.centers,
        }


def find_neg_involutions(o: Origami) -> list:
    """All permutations s with s^2 = id, s r s = r^-1 and s u s = u^-1.

    Backtracks over the n candidate images of square 1 and propagates along
    the r- and u-edges; on a connected surface the image of one square
    determines everything.
    """
    o.require_connected()
    n, r, u = o.raw()
    ri, ui = perm_invert(r), perm_invert(u)
    found = []
    for target in range(n):
        sigma = [-1] * n
        sigma[0] = target
        stack = [0]
        ok = True
        while stack and ok:
            i = stack.pop()
            s = sigma[i]
            for j, img in ((r[i], ri[s]), (u[i], ui[s])):
                if sigma[j] < 0:
                    sigma[j] = img
                    stack.append(j)
                elif sigma[j] != img:
                    ok = False
                    break
        if not ok or -1 in sigma:
            continue
        if any(sigma[sigma[i]] != i for i in range(n)):
            continue
        found.append(Permutation(tuple(sigma), zero_based=True))
    return found


def _vertex_data(o: Origami):
    """Vertex cycles of the commutator plus the cycle id of each label."""
    n, r, u = o.raw()
    v = perm_compose(perm_compose(r, u),
                     perm_compose(perm_invert(r), perm_invert(u)))
    cycles = perm_cycles(v, singletons=True)
    cyc_of = [0] * n
    for k, c in enumerate(cycles):
        for x in c:
            cyc_of[x] = k
    return cycles, cyc_of


def quotient_structure(o: Origami, sigma: Permutation) -> QuotientStructure:
    """Quotient signature, base genus and fixed-point census for one
    involution; raises :class:`CensusError` if the bookkeeping is violated."""
    n, r, u = o.raw()
    s = sigma.t
    ri, ui = perm_invert(r), perm_invert(u)
    if (any(s[s[i]] != i for i in range(n))
            or any(s[r[s[i]]] != ri[i] for i in range(n))
            or any(s[u[s[i]]] != ui[i] for i in range(n))):
        raise ValueError("sigma is not a (-1)-involution of this origami")

    cycles, cyc_of = _vertex_data(o)
    # induced action on vertices: the corner marker u(r(i)) maps to s(i)
    vert_image = [None] * len(cycles)
    for i in range(n):
        m = u[r[i]]
        img = cyc_of[s[i]]
        k = cyc_of[m]
        if vert_image[k] is None:
            vert_image[k] = img
        elif vert_image[k] != img:
            raise CensusError("involution does not permute the vertices")

    fixed_vertices = 0
    orders = []
    paired_regular = 0
    seen = set()
    for k, c in enumerate(cycles):
        if k in seen:
            continue
        seen.add(k)
        k2 = vert_image[k]
        if k2 == k:
            fixed_vertices += 1
            if len(c) == 1:
                orders.append(-1)
            else:
                orders.append(len(c) - 2)
        else:
            if vert_image[k2] != k or len(cycles[k2]) != len(c):
                raise CensusError("vertex pairing is not an involution")
            seen.add(k2)
            if len(c) == 1:
                paired_regular += 1
            else:
                orders.append(2 * (len(c) - 1))

    fixed_right = sum(1 for i in range(n) if s[i] == r[i])
    fixed_top = sum(1 for i in range(n) if s[i] == u[i])
    fixed_centers = sum(1 for i in range(n) if s[i] == i)
    orders.extend([-1] * (fixed_right + fixed_top + fixed_centers))

    census = FixedCensus(fixed_vertices, fixed_right + fixed_top, fixed_centers)
    total = sum(orders)
    if total % 4:
        raise CensusError(f"quotient orders sum to {total}, not 4g - 4")
    base_genus = (total + 4) // 4
    g_cover = o.genus()
    if 2 * g_cover - 2 != 2 * (2 * base_genus - 2) + census.total:
        raise CensusError(
            f"Riemann-Hurwitz violated: cover genus {g_cover}, base genus "
            f"{base_genus}, {census.total} branch points")
    return QuotientStructure(
        sigma=sigma,
        signature=QuadraticSignature(tuple(orders)),
        base_genus=base_genus,
        census=census,
        paired_regular_points=paired_regular,
    )


def quotient_structures(o: Origami) -> list:
    """Quotient structures of all (-1)-involutions of ``o``."""
    return [quotient_structure(o, s) for s in find_neg_involutions(o)]


def matches_stratum(o: Origami, sig: QuadraticSignature) -> QuotientStructure | None:
    """First involution whose quotient signature equals ``sig`` exactly."""
    for s in find_neg_involutions(o):
        try:
            q = quotient_structure(o, s)
        except CensusError:
            continue
        if q.signature == sig:
            return q
    return None
