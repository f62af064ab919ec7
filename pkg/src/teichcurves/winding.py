r"""
Spin parity of abelian origamis via winding numbers.

For a translation surface whose zero orders are all even, the parity of the
spin structure is the Arf invariant of the quadratic form

    q(c) = winding(c) + 1 + self_crossings(c)   (mod 2)

on H_1 of the punctured surface, where ``c`` runs over immersed closed
curves avoiding the cone points.  Curves are represented as closed walks on
the square complex, stepping between square centers in the four compass
directions; the winding number is the turning count in quarter turns
divided by four.

Crossings are counted combinatorially.  Each passage of a walk through an
edge gets a rank along that edge; a visit to a square is then a chord
joining the entry and exit passage points, and two chords cross iff their
endpoints interleave along the boundary circle of the square.  Swapping two
ranks on an edge flips the crossing state in the two adjacent squares
simultaneously, so the total crossing parity does not depend on how ranks
are assigned.

A spanning tree of the move graph yields n + 1 fundamental closed walks
generating H_1 of the surface punctured at the vertices (the complement of
the vertices retracts onto the move graph).  The vertex loops span the
radical of the mod-2 intersection form and carry q = 0 exactly when all
zero orders are even, so the Arf invariant of the induced symplectic form
is well defined.
"""

from __future__ import annotations

from .origami import Origami
from .perms import perm_invert

E, N, W, S = 0, 1, 2, 3
_TURN = {0: 0, 1: 1, 3: -1}

# boundary traversal: counterclockwise from the bottom-left corner the sides
# appear as bottom (S), right (E), top (N), left (W); offsets along an edge
# ascend with the canonical edge orientation (rightward / upward), which is
# reversed against the traversal on the top and left sides
_SIDE_POS = {S: 0, E: 1, N: 2, W: 3}
_SIDE_REVERSED = {S: False, E: False, N: True, W: True}


def _step(r, u, ri, ui, i, m):
    if m == E:
        return r[i]
    if m == N:
        return u[i]
    if m == W:
        return ri[i]
    return ui[i]


def _reduce_closed_walk(data, start, moves):
    """Cancel backtracks including cyclic wrap; tracks the start square."""
    r, u, ri, ui = data
    out = []
    for m in moves:
        if out and out[-1] == (m + 2) % 4:
            out.pop()
        else:
            out.append(m)
    while len(out) >= 2 and out[0] == (out[-1] + 2) % 4:
        start = _step(r, u, ri, ui, start, out[0])
        out.pop()
        out.pop(0)
    return start, out


class _Walk:
    """A reduced closed walk: squares visited, moves, and crossed edges."""

    def __init__(self, data, start, moves):
        r, u, ri, ui = data
        self.moves = moves
        squares = [start]
        for m in moves:
            squares.append(_step(r, u, ri, ui, squares[-1], m))
        assert squares[-1] == squares[0]
        self.squares = squares[:-1]
        # edge crossed by move k, canonical id ("v"/"h", square)
        self.edges = []
        for sq, m in zip(self.squares, moves):
            if m == E:
                self.edges.append(("v", sq))
            elif m == W:
                self.edges.append(("v", ri[sq]))
            elif m == N:
                self.edges.append(("h", sq))
            else:
                self.edges.append(("h", ui[sq]))

    def winding(self) -> int:
        total = 0
        L = len(self.moves)
        for k in range(L):
            total += _TURN[(self.moves[(k + 1) % L] - self.moves[k]) % 4]
        assert total % 4 == 0
        return total // 4


def _build_chords(walks):
    """Chords of all walks grouped by square.

    A passage is one crossing of an edge, shared by the exit endpoint of a
    visit and the entry endpoint of the next; it receives one rank on its
    edge.  Returns {square: [(walk_id, pos_in, pos_out), ...]} with cyclic
    boundary coordinates in [0, 4).
    """
    counts = {}
    rank = {}
    for wid, w in enumerate(walks):
        for k, edge in enumerate(w.edges):
            rank[(wid, k)] = counts.get(edge, 0)
            counts[edge] = counts.get(edge, 0) + 1

    def position(side, edge, rk):
        cnt = counts[edge]
        frac = (cnt - rk) / (cnt + 1) if _SIDE_REVERSED[side] \
            else (rk + 1) / (cnt + 1)
        return _SIDE_POS[side] + frac

    by_square = {}
    for wid, w in enumerate(walks):
        L = len(w.moves)
        for k in range(L):
            sq = w.squares[k]
            d_in = w.moves[k - 1]
            d_out = w.moves[k]
            pos_in = position((d_in + 2) % 4, w.edges[k - 1], rank[(wid, k - 1 if k else L - 1)])
            pos_out = position(d_out, w.edges[k], rank[(wid, k)])
            by_square.setdefault(sq, []).append((wid, pos_in, pos_out))
    return by_square


def _chords_cross(a_in, a_out, b_in, b_out) -> bool:
    lo, hi = (a_in, a_out) if a_in < a_out else (a_out, a_in)
    return (lo < b_in < hi) != (lo < b_out < hi)


def _crossings(by_square, wid1, wid2) -> int:
    """Mod-2 crossing count between two walks, or of one with itself."""
    total = 0
    for chords in by_square.values():
        c1 = [c for c in chords if c[0] == wid1]
        if wid1 == wid2:
            for i in range(len(c1)):
                for j in range(i + 1, len(c1)):
                    total += _chords_cross(c1[i][1], c1[i][2],
                                           c1[j][1], c1[j][2])
        else:
            c2 = [c for c in chords if c[0] == wid2]
            for a in c1:
                for b in c2:
                    total += _chords_cross(a[1], a[2], b[1], b[2])
    return total % 2


def _fundamental_walks(o: Origami):
    """Reduced closed walks generating H_1 of the punctured surface."""
    n, r, u = o.raw()
    ri, ui = perm_invert(r), perm_invert(u)
    data = (r, u, ri, ui)
    parent = {0: None}
    order = [0]
    path = {0: []}
    tree_edges = set()
    for i in order:
        for m in (E, N, W, S):
            j = _step(r, u, ri, ui, i, m)
            if j not in parent:
                parent[j] = (i, m)
                path[j] = path[i] + [m]
                tree_edges.add((i, m) if m in (E, N) else (j, (m + 2) % 4))
                order.append(j)
    walks = []
    for i in range(n):
        for m in (E, N):
            if (i, m) in tree_edges:
                continue
            j = _step(r, u, ri, ui, i, m)
            back = [(x + 2) % 4 for x in reversed(path[j])]
            start, moves = _reduce_closed_walk(data, 0, path[i] + [m] + back)
            assert moves, "fundamental cycle reduced to nothing"
            walks.append(_Walk(data, start, moves))
    return walks


def spin_parity(o: Origami) -> str:
    """Parity ("even" or "odd") of the spin structure of an origami whose
    zero orders are all even."""
    o.require_connected()
    sig = o.stratum()
    if any(m % 2 for m in sig.orders):
        raise ValueError(f"spin parity needs even zero orders, got {sig}")
    g = sig.genus

    walks = _fundamental_walks(o)
    by_square = _build_chords(walks)
    k = len(walks)
    qv = [(w.winding() + 1 + _crossings(by_square, wid, wid)) % 2
          for wid, w in enumerate(walks)]
    gram = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            gram[i][j] = gram[j][i] = _crossings(by_square, i, j)

    def bits_of(x):
        out = []
        while x:
            out.append((x & -x).bit_length() - 1)
            x &= x - 1
        return out

    def pairing(x, y):
        tot = 0
        for i in bits_of(x):
            row = gram[i]
            for j in bits_of(y):
                tot ^= row[j]
        return tot

    def qform(x):
        bits = bits_of(x)
        tot = sum(qv[i] for i in bits) % 2
        for a in range(len(bits)):
            for b in range(a + 1, len(bits)):
                tot ^= gram[bits[a]][bits[b]]
        return tot

    arf = 0
    pairs = 0
    pool = [1 << i for i in range(k)]
    while True:
        found = None
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                if pairing(pool[i], pool[j]):
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        e, f = pool[i], pool[j]
        arf ^= qform(e) & qform(f)
        pairs += 1
        rest = []
        for t, x in enumerate(pool):
            if t in (i, j):
                continue
            pe, pf = pairing(x, e), pairing(x, f)
            if pf:
                x ^= e
            if pe:
                x ^= f
            rest.append(x)
        pool = rest
    if pairs != g:
        raise AssertionError(f"symplectic rank {2 * pairs}, expected {2 * g}")
    for x in pool:
        if qform(x):
            raise AssertionError("quadratic form nonzero on the radical")
    return "odd" if arf else "even"
