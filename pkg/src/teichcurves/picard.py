r"""
Exact divisor-class arithmetic on the rational Picard group of the moduli
space of stable n-pointed genus-g curves, for small g and n.

Basis labels
------------

* ``("lambda",)``          first Chern class of the Hodge bundle
* ``("omega", i)``         relative dualizing sheaf pulled back via the
                           i-th point, i = 1..n
* ``("delta0",)``          irreducible nodal boundary
* ``("delta", i, S)``      boundary divisor: genus-i component carrying
                           exactly the marked points of S (frozenset);
                           admissible when |S| >= 2 for i = 0, and with the
                           convention 1 in S when i = g/2 (the two names
                           delta_{g/2;S} and delta_{g/2;S^c} denote the same
                           divisor and are canonicalized to the 1-side)

The psi classes are derived: psi_i = omega_i + sum over S containing i of
delta_{0;S}.

The library covers the Weierstrass divisor on the one-pointed space for
g = 2, 3, 4, the hyperelliptic divisor in genus 3, and the pointed
Brill-Noether divisors BN^1 for total degree g with the printed coordinate
vectors; boundary pushforwards pi_{m*}( . delta_{0;{a,m}}) implement the
standard rule table and reproduce the genus-4 classes from one another.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

LAMBDA = ("lambda",)
DELTA0 = ("delta0",)


def omega(i: int) -> tuple:
    return ("omega", i)


def delta(i: int, S) -> tuple:
    return ("delta", i, frozenset(S))


class PicBasis:
    """Standard basis of Pic of the moduli of stable (g, n)-curves."""

    def __init__(self, g: int, n: int):
        if g < 1:
            raise ValueError("need g >= 1")
        if n < 0:
            raise ValueError("need n >= 0")
        self.g = g
        self.n = n
        self.points = frozenset(range(1, n + 1))

    def canonical(self, label: tuple) -> tuple:
        """Canonicalize a label, folding delta_{g/2;S} onto its 1-in-S name."""
        if label[0] != "delta":
            return label
        _, i, S = label
        S = frozenset(S)
        if not S <= self.points:
            raise ValueError(f"marked points {set(S)} outside 1..{self.n}")
        if i == 0:
            if len(S) < 2:
                raise ValueError("delta_{0;S} needs |S| >= 2")
            return ("delta", 0, S)
        if not 1 <= i <= self.g - 1:
            raise ValueError(f"no boundary divisor of genus {i} in genus {self.g}")
        if i > self.g - i or (2 * i == self.g and self.n >= 1 and 1 not in S):
            i, S = self.g - i, self.points - S
        if 2 * i > self.g:
            raise ValueError("boundary genus exceeds g/2 after folding")
        return ("delta", i, S)

    def boundary_labels(self) -> list:
        """All boundary labels: delta0, the delta_{0;S} and the delta_{i;S}."""
        out = [DELTA0]
        for size in range(2, self.n + 1):
            for S in combinations(sorted(self.points), size):
                out.append(delta(0, S))
        seen = set()
        for i in range(1, self.g // 2 + 1):
            for size in range(0, self.n + 1):
                for S in combinations(sorted(self.points), size):
                    lab = self.canonical(delta(i, S))
                    if lab not in seen:
                        seen.add(lab)
                        out.append(lab)
        return out

    def psi(self, i: int) -> "DivisorClass":
        coords = {omega(i): Fraction(1)}
        for size in range(2, self.n + 1):
            for S in combinations(sorted(self.points), size):
                if i in S:
                    coords[delta(0, S)] = Fraction(1)
        return DivisorClass(self, coords)

    def __eq__(self, other):
        return (isinstance(other, PicBasis)
                and (self.g, self.n) == (other.g, other.n))

    def __repr__(self):
        return f"PicBasis(g={self.g}, n={self.n})"


def _label_str(label: tuple) -> str:
    if label == LAMBDA:
        return "lambda"
    if label == DELTA0:
        return "delta_0"
    if label[0] == "omega":
        return f"omega_{label[1]}"
    _, i, S = label
    inner = "{" + ",".join(str(x) for x in sorted(S)) + "}"
    return f"delta_{{{i};{inner}}}"


@dataclass(frozen=True)
class DivisorClass:
    """Exact-rational coordinate vector over a PicBasis; immutable."""

    basis: PicBasis
    coords: dict

    def __post_init__(self):
        clean = {}
        for label, c in self.coords.items():
            c = Fraction(c)
            if c == 0:
                continue
            if label[0] == "delta":
                label = self.basis.canonical(label)
            clean[label] = clean.get(label, Fraction(0)) + c
        object.__setattr__(self, "coords",
                           {k: v for k, v in clean.items() if v != 0})

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if self.basis != other.basis:
            raise ValueError("classes live on different moduli spaces")
        merged = dict(self.coords)
        for k, v in other.coords.items():
            merged[k] = merged.get(k, Fraction(0)) + v
        return DivisorClass(self.basis, merged)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "DivisorClass":
        s = Fraction(scalar)
        return DivisorClass(self.basis,
                            {k: s * v for k, v in self.coords.items()})

    def __getitem__(self, label) -> Fraction:
        if label[0] == "delta":
            label = self.basis.canonical(label)
        return self.coords.get(label, Fraction(0))

    def __eq__(self, other) -> bool:
        return (isinstance(other, DivisorClass) and self.basis == other.basis
                and self.coords == other.coords)

    def boundary_part(self) -> dict:
        return {k: v for k, v in self.coords.items()
                if k[0] in ("delta", "delta0")}

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        def sort_key(item):
            label = item[0]
            kind = {"lambda": 0, "omega": 1, "delta0": 2, "delta": 3}[label[0]]
            return (kind,) + tuple(
                (x if not isinstance(x, frozenset) else tuple(sorted(x)))
                for x in label[1:])
        parts = []
        for label, c in sorted(self.coords.items(), key=sort_key):
            term = _label_str(label)
            if c == 1:
                parts.append("+ " + term)
            elif c == -1:
                parts.append("- " + term)
            elif c > 0:
                parts.append(f"+ {c}*{term}")
            else:
                parts.append(f"- {-c}*{term}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _cls(basis: PicBasis, pairs) -> DivisorClass:
    return DivisorClass(basis, {k: Fraction(v) for k, v in pairs})


# -- the class library ---------------------------------------------------------

def weierstrass_class(g: int) -> DivisorClass:
    """W = -lambda + (g(g+1)/2) omega_1 - sum over i of
    ((g-i)(g-i+1)/2) delta_{i;{1}} on the one-pointed space."""
    basis = PicBasis(g, 1)
    pairs = [(LAMBDA, -1), (omega(1), Fraction(g * (g + 1), 2))]
    for i in range(1, g):
        pairs.append((delta(i, {1}), -Fraction((g - i) * (g - i + 1), 2)))
    return _cls(basis, pairs)


def hyperelliptic_class_g3() -> DivisorClass:
    """H = 9 lambda - delta_0 - 3 delta_1 on the unpointed genus-3 space."""
    basis = PicBasis(3, 0)
    return _cls(basis, [(LAMBDA, 9), (DELTA0, -1), (delta(1, ()), -3)])


def bn_2_11() -> DivisorClass:
    basis = PicBasis(2, 2)
    return _cls(basis, [
        (LAMBDA, -1), (omega(1), 1), (omega(2), 1),
        (delta(0, {1, 2}), -1), (delta(1, ()), -1),
    ])


def bn_3_21() -> DivisorClass:
    basis = PicBasis(3, 2)
    return _cls(basis, [
        (LAMBDA, -1), (omega(1), 3), (omega(2), 1),
        (delta(0, {1, 2}), -2),
        (delta(1, ()), -1), (delta(1, {1}), -1), (delta(1, {1, 2}), -3),
    ])


def bn_3_111() -> DivisorClass:
    basis = PicBasis(3, 3)
    pairs = [(LAMBDA, -1), (omega(1), 1), (omega(2), 1), (omega(3), 1)]
    for S in combinations((1, 2, 3), 2):
        pairs.append((delta(0, S), -1))
        pairs.append((delta(1, S), -1))
    pairs.append((delta(0, {1, 2, 3}), -3))
    pairs.append((delta(1, ()), -1))
    pairs.append((delta(1, {1, 2, 3}), -3))
    return _cls(basis, pairs)


def bn_4_1111() -> DivisorClass:
    """Logan's pointed Brill-Noether class for four unit weights; the sums
    run over all subsets, so at i = 2 = g/2 the two names of each divisor
    both contribute."""
    basis = PicBasis(4, 4)
    coords = {LAMBDA: Fraction(-1)}
    for i in (1, 2, 3, 4):
        coords[omega(i)] = Fraction(1)
    pts = (1, 2, 3, 4)
    cls = DivisorClass(basis, coords)
    extra = {}
    for size in range(0, 5):
        for S in combinations(pts, size):
            if size >= 2:
                c0 = Fraction(size * (size - 1), 2)
                extra[delta(0, S)] = extra.get(delta(0, S), Fraction(0)) - c0
            if size != 1:
                a = abs(size - 1)
                key = basis.canonical(delta(1, S))
                extra[key] = extra.get(key, Fraction(0)) - Fraction(a * (a + 1), 2)
            if size != 2:
                a = abs(size - 2)
                key = basis.canonical(delta(2, S))
                extra[key] = extra.get(key, Fraction(0)) - Fraction(a * (a + 1), 2)
    merged = dict(cls.coords)
    for k, v in extra.items():
        merged[k] = merged.get(k, Fraction(0)) + v
    return DivisorClass(basis, merged)


def bn_4_211() -> DivisorClass:
    basis = PicBasis(4, 3)
    return _cls(basis, [
        (LAMBDA, -1), (omega(1), 3), (omega(2), 1), (omega(3), 1),
        (delta(0, {1, 2}), -2), (delta(0, {1, 3}), -2),
        (delta(0, {2, 3}), -1), (delta(0, {1, 2, 3}), -5),
        (delta(1, ()), -1), (delta(1, {1}), -1), (delta(1, {2, 3}), -1),
        (delta(1, {1, 3}), -3), (delta(1, {1, 2}), -3),
        (delta(1, {1, 2, 3}), -6),
        (delta(2, ()), -6), (delta(2, {2}), -2), (delta(2, {3}), -2),
    ])


def bn_4_31() -> DivisorClass:
    basis = PicBasis(4, 2)
    return _cls(basis, [
        (LAMBDA, -1), (omega(1), 6), (omega(2), 1),
        (delta(0, {1, 2}), -3),
        (delta(1, ()), -1), (delta(1, {1}), -3), (delta(1, {1, 2}), -6),
        (delta(2, ()), -6), (delta(2, {1}), -2),
    ])


def bn_4_22() -> DivisorClass:
    basis = PicBasis(4, 2)
    return _cls(basis, [
        (LAMBDA, -1), (omega(1), 3), (omega(2), 3),
        (delta(0, {1, 2}), -4),
        (delta(1, ()), -1), (delta(1, {1}), -1), (delta(1, {2}), -1),
        (delta(1, {1, 2}), -6),
        (delta(2, ()), -6),
    ])


def psi1_minus_lambda(n: int) -> DivisorClass:
    """psi_1 - lambda on the n-pointed genus-1 space; its boundary expansion
    is the sum of the delta_{0;S} with 1 in S."""
    basis = PicBasis(1, n)
    return basis.psi(1) - _cls(basis, [(LAMBDA, 1)])


_LIBRARY = {
    "W_2": lambda: weierstrass_class(2),
    "W_3": lambda: weierstrass_class(3),
    "W_4": lambda: weierstrass_class(4),
    "H_3": hyperelliptic_class_g3,
    "BN_2_11": bn_2_11,
    "BN_3_21": bn_3_21,
    "BN_3_111": bn_3_111,
    "BN_4_1111": bn_4_1111,
    "BN_4_211": bn_4_211,
    "BN_4_31": bn_4_31,
    "BN_4_22": bn_4_22,
}


def class_library(name: str, g: int | None = None, n: int | None = None) -> DivisorClass:
    """Fetch a named divisor class; ``W`` resolves through ``g``."""
    if name == "W":
        if g is None:
            raise ValueError("W needs the genus")
        name = f"W_{g}"
    if name.startswith("psi1_minus_lambda"):
        if n is None:
            raise ValueError("psi1_minus_lambda needs n")
        return psi1_minus_lambda(n)
    if name not in _LIBRARY:
        raise ValueError(f"unknown divisor class {name!r}; "
                         f"known: {sorted(_LIBRARY)} and W, psi1_minus_lambda")
    return _LIBRARY[name]()


# -- boundary pushforward --------------------------------------------------------

def pushforward_boundary(D: DivisorClass, pair) -> DivisorClass:
    """pi_{m*}(D . delta_{0;{a,m}}): push a class on the m-pointed space to
    the (m-1)-pointed space along the boundary divisor where the points a
    and m collide.

    The rules are linear: lambda and delta_0 are fixed; omega_m falls onto
    omega_a while the other omegas persist; the pairing divisor itself
    contributes -psi_a; a boundary divisor survives iff its point set either
    avoids {a, m} or contains both (dropping m), and dies otherwise.
    """
    a, m = sorted(pair)
    basis = D.basis
    if m != basis.n:
        raise ValueError(f"pair must contain the last marked point {basis.n}")
    if basis.n < 2:
        raise ValueError("need at least two marked points to push forward")
    target = PicBasis(basis.g, basis.n - 1)
    pair_label = basis.canonical(delta(0, {a, m}))
    out = {}

    def put(label, c):
        out[label] = out.get(label, Fraction(0)) + c

    for label, c in D.coords.items():
        if label == LAMBDA or label == DELTA0:
            put(label, c)
        elif label[0] == "omega":
            i = label[1]
            put(omega(a if i == m else i), c)
        else:
            _, i, S = label
            if label == pair_label:
                # pi_{m*}(delta^2) = -psi_a
                psi_a = target.psi(a)
                for lab2, c2 in psi_a.coords.items():
                    put(lab2, -c * c2)
            elif not (a in S or m in S):
                put(("delta", i, S), c)
            elif a in S and m in S:
                put(("delta", i, S - {m}), c)
            else:
                pass  # exactly one of a, m: the divisor dies
    return DivisorClass(target, out)


# -- Picard relations -------------------------------------------------------------

def expand_relations(g: int, n: int) -> list:
    """Relation classes that pair to zero with every curve class.

    Genus 1: delta_0 = 12 lambda and psi_i = lambda + sum_{i in S} delta_{0;S}.
    Genus 2: the pullback of lambda = delta_0/10 + delta_1/5.
    Genus >= 3 the rational Picard group is free: no relations.
    """
    basis = PicBasis(g, n)
    if g == 1:
        rels = [_cls(basis, [(DELTA0, 1), (LAMBDA, -12)])]
        for i in range(1, n + 1):
            rels.append(basis.psi(i) - _cls(basis, [(LAMBDA, 1)])
                        - _sum_delta0_through(basis, i))
        return rels
    if g == 2:
        pairs = [(LAMBDA, 1), (DELTA0, Fraction(-1, 10))]
        seen = set()
        for size in range(0, n + 1):
            for S in combinations(range(1, n + 1), size):
                lab = basis.canonical(delta(1, S))
                if lab not in seen:
                    seen.add(lab)
                    pairs.append((lab, Fraction(-1, 5)))
        return [_cls(basis, pairs)]
    return []


def _sum_delta0_through(basis: PicBasis, i: int) -> DivisorClass:
    coords = {}
    for size in range(2, basis.n + 1):
        for S in combinations(range(1, basis.n + 1), size):
            if i in S:
                coords[delta(0, S)] = Fraction(1)
    return DivisorClass(basis, coords)
