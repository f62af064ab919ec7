r"""
Square-tiled surfaces as permutation pairs.

An origami on ``n`` unit squares is a pair of permutations ``(r, u)`` of the
squares: ``r(i)`` is the square to the right of ``i`` and ``u(i)`` the square
on top of it.  The surface is connected iff the group generated by ``r`` and
``u`` acts transitively.

Conventions (fixed once, validated by the L-origami tests):

* permutations act on the left, ``(a*b)(i) = a(b(i))``;
* the vertex permutation is the commutator ``v = r u r^-1 u^-1``;
* the vertex sitting at the top-right corner of square ``i`` is the
  ``v``-cycle containing ``u(r(i))``.

A vertex whose ``v``-cycle has length ``l`` is a cone point of angle
``2*pi*l``, i.e. a zero of order ``l - 1`` of the one-form (a regular marked
point when ``l = 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .perms import (
    Permutation,
    parse_cycle_tuples,
    perm_check,
    perm_compose,
    perm_cycles,
    perm_from_cycles,
    perm_invert,
    cycles_string,
)


@dataclass(frozen=True)
class AbelianSignature:
    """Zero orders (m_1, ..., m_k) of an abelian differential, sorted decreasingly."""

    orders: tuple

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(sorted(self.orders, reverse=True)))
        if any(m < 0 for m in self.orders):
            raise ValueError("abelian zero orders must be nonnegative")
        if sum(self.orders) % 2:
            raise ValueError("sum of zero orders must be even (= 2g - 2)")

    @property
    def genus(self) -> int:
        return sum(self.orders) // 2 + 1

    def __str__(self) -> str:
        return "H(" + ",".join(str(m) for m in self.orders) + ")"


@dataclass(frozen=True)
class CylinderDecomposition:
    """Horizontal cylinders as (width, height) pairs."""

    cylinders: tuple

    def __post_init__(self):
        object.__setattr__(self, "cylinders",
                           tuple(sorted(tuple(c) for c in self.cylinders)))

    @property
    def area(self) -> int:
        return sum(w * h for w, h in self.cylinders)

    def moduli_sum(self) -> Fraction:
        """Sum of the inverse moduli h/w over all cylinders."""
        return sum((Fraction(h, w) for w, h in self.cylinders), Fraction(0))


def _cylinders_raw(r: Sequence[int], u: Sequence[int], v: Sequence[int]) -> list:
    """Horizontal cylinder (width, height) list for one-line 0-based data."""
    n = len(r)
    # vertex-cycle length of each label under v
    vlen = [0] * n
    for c in perm_cycles(v, singletons=True):
        for x in c:
            vlen[x] = len(c)
    rows = perm_cycles(r, singletons=True)
    rowid = [0] * n
    for k, row in enumerate(rows):
        for x in row:
            rowid[x] = k
    # the row of square i merges with the row above when every vertex on the
    # shared horizontal line (top-right corners u(r(i)) for i in the row) is
    # regular
    up = [None] * len(rows)
    for k, row in enumerate(rows):
        if all(vlen[u[r[i]]] == 1 for i in row):
            up[k] = rowid[u[row[0]]]
    # group rows into chains / closed towers along the up-links
    has_in = [False] * len(rows)
    for k, t in enumerate(up):
        if t is not None:
            has_in[t] = True
    cyls = []
    seen = [False] * len(rows)
    for k in range(len(rows)):
        if seen[k] or has_in[k]:
            continue
        width = len(rows[k])
        height = 0
        j = k
        while j is not None and not seen[j]:
            seen[j] = True
            height += 1
            j = up[j]
        cyls.append((width, height))
    # remaining rows sit in closed towers (every vertex on the cycle regular)
    for k in range(len(rows)):
        if seen[k]:
            continue
        width = len(rows[k])
        height = 0
        j = k
        while not seen[j]:
            seen[j] = True
            height += 1
            j = up[j]
        cyls.append((width, height))
    return cyls


class Origami:
    """A connected-or-not square-tiled surface given by (right, up) permutations."""

    __slots__ = ("n", "_r", "_u", "_connected")

    def __init__(self, r: Permutation, u: Permutation):
        if r.n != u.n:
            raise ValueError(f"r and u act on different sets ({r.n} vs {u.n})")
        object.__setattr__(self, "n", r.n)
        object.__setattr__(self, "_r", r.t)
        object.__setattr__(self, "_u", u.t)
        object.__setattr__(self, "_connected", None)

    def __setattr__(self, *args):
        raise AttributeError("Origami is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_cycles(cls, r: str, u: str, n: int | None = None) -> "Origami":
        """Build from cycle strings; ``n`` defaults to the largest symbol seen
        in ``r`` and ``u`` jointly."""
        rc = parse_cycle_tuples(r)
        uc = parse_cycle_tuples(u)
        if n is None:
            n = max(
                max((max(c) for c in rc if c), default=1),
                max((max(c) for c in uc if c), default=1),
            )
        return cls(
            Permutation(perm_from_cycles(rc, n), zero_based=True),
            Permutation(perm_from_cycles(uc, n), zero_based=True),
        )

    @classmethod
    def from_arrays(cls, n: int, r: Sequence[int], u: Sequence[int]) -> "Origami":
        """Compact machine format: square count and 1-based one-line arrays."""
        if len(r) != n or len(u) != n:
            raise ValueError("one-line arrays must have length n")
        return cls(Permutation(r), Permutation(u))

    @classmethod
    def from_text(cls, text: str) -> "Origami":
        """Parse the surface text format::

            n = 16            (optional)
            r = (2,3)(4,5)
            u = (1,2,4,6)(3,5)

        Lines starting with ``#`` are ignored.
        """
        n = None
        parts = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"cannot parse surface line {line!r}")
            key, _, rhs = line.partition("=")
            key = key.strip().lower()
            if key == "n":
                n = int(rhs)
            elif key in ("r", "u"):
                parts[key] = parts.get(key, "") + rhs.strip()
            else:
                raise ValueError(f"unknown surface field {key!r}")
        if "r" not in parts or "u" not in parts:
            raise ValueError("surface text needs both an 'r =' and a 'u =' line")
        return cls.from_cycles(parts["r"], parts["u"], n)

    def to_text(self) -> str:
        return (f"n = {self.n}\n"
                f"r = {cycles_string(self._r)}\n"
                f"u = {cycles_string(self._u)}\n")

    # -- accessors ---------------------------------------------------------

    @property
    def r(self) -> Permutation:
        return Permutation(self._r, zero_based=True)

    @property
    def u(self) -> Permutation:
        return Permutation(self._u, zero_based=True)

    def raw(self) -> tuple:
        """(n, r, u) with 0-based one-line tuples; the fast-path view."""
        return self.n, self._r, self._u

    def relabel(self, g: Permutation) -> "Origami":
        """Simultaneous conjugation (r, u) -> (g r g^-1, g u g^-1)."""
        return Origami(self.r.conjugate_by(g), self.u.conjugate_by(g))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Origami)
                and self._r == other._r and self._u == other._u)

    def __hash__(self) -> int:
        return hash((self._r, self._u))

    def __repr__(self) -> str:
        return f"Origami(r={cycles_string(self._r)}, u={cycles_string(self._u)}, n={self.n})"

    # -- topology ----------------------------------------------------------

    def is_connected(self) -> bool:
        if self._connected is None:
            r, u = self._r, self._u
            seen = [False] * self.n
            stack = [0]
            seen[0] = True
            count = 1
            while stack:
                i = stack.pop()
                for j in (r[i], u[i]):
                    if not seen[j]:
                        seen[j] = True
                        count += 1
                        stack.append(j)
            object.__setattr__(self, "_connected", count == self.n)
        return self._connected

    def require_connected(self):
        if not self.is_connected():
            raise ValueError("disconnected surface")

    def vertex_permutation(self) -> Permutation:
        """The commutator v = r u r^-1 u^-1 whose cycles are the vertices."""
        r, u = self._r, self._u
        v = perm_compose(perm_compose(r, u),
                         perm_compose(perm_invert(r), perm_invert(u)))
        return Permutation(v, zero_based=True)

    def stratum(self) -> AbelianSignature:
        """Zero orders of the one-form: l - 1 for each vertex cycle of length l > 1."""
        self.require_connected()
        v = self.vertex_permutation().t
        orders = [len(c) - 1 for c in perm_cycles(v)]
        return AbelianSignature(tuple(orders))

    def regular_vertex_count(self) -> int:
        """Number of marked regular points (vertex cycles of length 1)."""
        self.require_connected()
        v = self.vertex_permutation().t
        return sum(1 for i in range(self.n) if v[i] == i)

    def genus(self) -> int:
        return sum(self.stratum().orders) // 2 + 1

    def horizontal_cylinders(self) -> CylinderDecomposition:
        """Maximal horizontal cylinders, each as (width, height)."""
        self.require_connected()
        v = self.vertex_permutation().t
        return CylinderDecomposition(tuple(_cylinders_raw(self._r, self._u, v)))

    def lattice_index(self) -> int:
        """Index in Z^2 of the lattice spanned by the absolute periods.

        The origami is reduced (primitive) iff this is 1; the Veech-group
        index equals the SL(2,Z)-orbit size only for reduced origamis.
        """
        self.require_connected()
        r, u = self._r, self._u
        # spanning tree of the move graph, tracking (x, y) displacement
        disp = [None] * self.n
        disp[0] = (0, 0)
        stack = [0]
        ri, ui = perm_invert(r), perm_invert(u)
        periods = []
        while stack:
            i = stack.pop()
            x, y = disp[i]
            for j, dx, dy in ((r[i], 1, 0), (u[i], 0, 1), (ri[i], -1, 0), (ui[i], 0, -1)):
                if disp[j] is None:
                    disp[j] = (x + dx, y + dy)
                    stack.append(j)
                else:
                    px, py = disp[j]
                    periods.append((x + dx - px, y + dy - py))
        return _lattice_index(periods)


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _lattice_index(vectors) -> int:
    """Index in Z^2 of the subgroup generated by integer 2-vectors.

    Maintains a Hermite basis (a, b), (0, d) and folds each generator in by
    integer row operations.
    """
    from math import gcd

    a = b = d = 0
    for x, y in vectors:
        if x == 0:
            d = gcd(d, y)
            continue
        if a == 0:
            a, b = x, y
            continue
        g, p, q = _xgcd(a, x)
        d = gcd(d, (a * y - x * b) // g)
        a, b = g, p * b + q * y
    if a == 0 or d == 0:
        raise ValueError("period lattice is degenerate")
    return abs(a * d)
