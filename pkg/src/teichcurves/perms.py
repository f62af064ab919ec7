r"""
Permutations on {1, ..., n} with cycle-notation input and output.

Internally everything is 0-based: a permutation is a tuple ``t`` of length
``n`` with ``t[i]`` the image of ``i``.  The functional helpers below
(`perm_compose`, `perm_invert`, ...) operate on such tuples and are what the
performance-critical code uses.  The :class:`Permutation` wrapper carries the
1-based interface used for parsing and printing square-tiled surfaces.

Composition acts on the left: ``perm_compose(a, b)`` is the map
``i -> a[b[i]]``, i.e. apply ``b`` first.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence


def perm_identity(n: int) -> tuple:
    return tuple(range(n))


def perm_check(t: Sequence[int]) -> bool:
    n = len(t)
    seen = [False] * n
    for x in t:
        if not isinstance(x, int) or x < 0 or x >= n or seen[x]:
            return False
        seen[x] = True
    return True


def perm_compose(a: Sequence[int], b: Sequence[int]) -> tuple:
    """Left composition: apply ``b`` first, then ``a``."""
    return tuple(a[x] for x in b)


def perm_invert(t: Sequence[int]) -> tuple:
    inv = [0] * len(t)
    for i, x in enumerate(t):
        inv[x] = i
    return tuple(inv)


def perm_conjugate(t: Sequence[int], g: Sequence[int]) -> tuple:
    """Return g t g^{-1}."""
    new = [0] * len(t)
    for i, x in enumerate(t):
        new[g[i]] = g[x]
    return tuple(new)


def perm_cycles(t: Sequence[int], singletons: bool = False) -> list:
    """Cycles of ``t`` as 0-based tuples, each starting at its smallest element."""
    n = len(t)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = t[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = t[j]
        if len(cyc) > 1 or singletons:
            cycles.append(tuple(cyc))
    return cycles


def perm_cycle_type(t: Sequence[int]) -> tuple:
    """Multiset of cycle lengths, sorted decreasingly (fixed points included)."""
    return tuple(sorted((len(c) for c in perm_cycles(t, singletons=True)), reverse=True))


_TOKEN = re.compile(r"\(|\)|,|\s+|[^(),\s]+")


def parse_cycle_tuples(text: str) -> list:
    """Parse ``"(a,b,...)(...)"`` into a list of 1-based integer tuples.

    Whitespace is ignored everywhere.  Raises ``ValueError`` on anything that
    is not a well-formed product of cycles of positive integers.
    """
    cycles = []
    current = None
    for m in _TOKEN.finditer(text):
        tok = m.group(0)
        if tok.isspace() or tok == ",":
            continue
        if tok == "(":
            if current is not None:
                raise ValueError("nested '(' in cycle notation")
            current = []
        elif tok == ")":
            if current is None:
                raise ValueError("unmatched ')' in cycle notation")
            if current:
                cycles.append(tuple(current))
            current = None
        else:
            if current is None:
                raise ValueError(f"symbol {tok!r} outside of a cycle")
            try:
                val = int(tok)
            except ValueError:
                raise ValueError(f"non-integer token {tok!r} in cycle notation") from None
            if val <= 0:
                raise ValueError(f"cycle symbols must be positive, got {val}")
            current.append(val)
    if current is not None:
        raise ValueError("unterminated cycle")
    return cycles


def perm_from_cycles(cycles: Iterable[Sequence[int]], n: int | None = None) -> tuple:
    """Build a 0-based permutation tuple from 1-based cycles.

    Symbols absent from the cycles are fixed points.  ``n`` defaults to the
    maximum symbol present (0 for no cycles).
    """
    cycles = [tuple(c) for c in cycles]
    maxsym = max((max(c) for c in cycles if c), default=0)
    if n is None:
        n = maxsym
    elif maxsym > n:
        raise ValueError(f"symbol {maxsym} exceeds declared n = {n}")
    images = list(range(n))
    seen = set()
    for c in cycles:
        for sym in c:
            if sym in seen:
                raise ValueError(f"repeated symbol {sym} in cycle notation")
            seen.add(sym)
        for a, b in zip(c, c[1:] + c[:1]):
            images[a - 1] = b - 1
    return tuple(images)


def cycles_string(t: Sequence[int]) -> str:
    """Canonical cycle notation, 1-based, fixed points suppressed."""
    cycles = perm_cycles(t)
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycles)


class Permutation:
    """A permutation of {1, ..., n}, immutable.

    ``images`` is the 1-based one-line form; the 0-based tuple is available
    as ``.t`` for the internal fast paths.
    """

    __slots__ = ("t",)

    def __init__(self, images, zero_based: bool = False):
        t = tuple(images) if zero_based else tuple(x - 1 for x in images)
        if not perm_check(t):
            raise ValueError("not a bijection of {1,...,n}")
        object.__setattr__(self, "t", t)

    def __setattr__(self, *args):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def from_cycles(cls, text: str, n: int | None = None) -> "Permutation":
        return cls(perm_from_cycles(parse_cycle_tuples(text), n), zero_based=True)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(perm_identity(n), zero_based=True)

    @property
    def n(self) -> int:
        return len(self.t)

    @property
    def images(self) -> tuple:
        return tuple(x + 1 for x in self.t)

    def __call__(self, i: int) -> int:
        return self.t[i - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Left-action composition: ``(self * other)(i) = self(other(i))``."""
        return Permutation(perm_compose(self.t, other.t), zero_based=True)

    def inverse(self) -> "Permutation":
        return Permutation(perm_invert(self.t), zero_based=True)

    def conjugate_by(self, g: "Permutation") -> "Permutation":
        return Permutation(perm_conjugate(self.t, g.t), zero_based=True)

    def cycles(self, singletons: bool = False) -> list:
        return [tuple(x + 1 for x in c) for c in perm_cycles(self.t, singletons)]

    def cycle_type(self) -> tuple:
        return perm_cycle_type(self.t)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.t))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.t == other.t

    def __hash__(self) -> int:
        return hash(self.t)

    def __str__(self) -> str:
        return cycles_string(self.t)

    def __repr__(self) -> str:
        return f"Permutation({self!s}, n={self.n})"


def parse_cycles(text: str, n: int | None = None) -> Permutation:
    """Parse whitespace-tolerant cycle notation into a :class:`Permutation`."""
    return Permutation.from_cycles(text, n)
