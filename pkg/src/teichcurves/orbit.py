r"""
SL(2,Z)-orbit enumeration of origamis via canonical forms.

The generators act by

* ``T`` (horizontal shear):   (r, u) -> (r, u o r^-1)
* ``S`` (quarter rotation):   (r, u) -> (u^-1, r)

and the orbit of a reduced origami has cardinality equal to the index of its
Veech group in SL(2,Z).  Origamis are identified up to simultaneous
relabeling of the squares; the canonical form relabels by breadth-first
discovery order (following r then u) from every start square and keeps the
lexicographic minimum, so equal keys characterize relabeling-equivalent
surfaces.

The enumeration is a breadth-first closure over canonical byte keys with a
sharded visited set.  Cusps are the T-orbits on the closure, tracked by a
union-find as T-edges are expanded.  With a cache directory the closure is
resumable: every accepted key is appended to a fixed-width log in insertion
order, and the manifest stores counters plus the unprocessed frontier.
"""

from __future__ import annotations

import bisect
import json
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .origami import Origami, _cylinders_raw
from .perms import perm_compose, perm_invert

GENERATOR_CONVENTION = "T:(r,u*rinv) S:(uinv,r)"
CACHE_VERSION = 1


# -- raw actions ---------------------------------------------------------------

def _act_T_raw(r, u):
    ri = perm_invert(r)
    return r, tuple(u[x] for x in ri)


def _act_S_raw(r, u):
    return perm_invert(u), r


def act_T(o: Origami) -> Origami:
    """Horizontal shear (r, u) -> (r, u o r^-1)."""
    n, r, u = o.raw()
    rn, un = _act_T_raw(r, u)
    return Origami.from_arrays(n, [x + 1 for x in rn], [x + 1 for x in un])


def act_S(o: Origami) -> Origami:
    """Quarter rotation (r, u) -> (u^-1, r)."""
    n, r, u = o.raw()
    rn, un = _act_S_raw(r, u)
    return Origami.from_arrays(n, [x + 1 for x in rn], [x + 1 for x in un])


# -- canonical form ------------------------------------------------------------

def _canonical_pair(r, u, n):
    """Lexicographically minimal relabeling over all BFS start squares."""
    best_r = None
    best_u = None
    rng = range(n)
    for s in rng:
        pos = [-1] * n
        pos[s] = 0
        order = [s]
        for x in order:
            a = r[x]
            if pos[a] < 0:
                pos[a] = len(order)
                order.append(a)
            b = u[x]
            if pos[b] < 0:
                pos[b] = len(order)
                order.append(b)
        rn = [0] * n
        un = [0] * n
        for x in rng:
            p = pos[x]
            rn[p] = pos[r[x]]
            un[p] = pos[u[x]]
        rn = tuple(rn)
        if best_r is not None and rn > best_r:
            continue
        un = tuple(un)
        if best_r is None or rn < best_r or un < best_u:
            best_r, best_u = rn, un
    return best_r, best_u


def _key_bytes_per_entry(n: int) -> int:
    return 1 if n <= 255 else 2


def _encode(r, u, n) -> bytes:
    if n <= 255:
        return bytes(r) + bytes(u)
    out = bytearray()
    for x in r:
        out += x.to_bytes(2, "little")
    for x in u:
        out += x.to_bytes(2, "little")
    return bytes(out)


def _decode(key: bytes, n: int) -> tuple:
    if n <= 255:
        return tuple(key[:n]), tuple(key[n:])
    vals = [int.from_bytes(key[i:i + 2], "little") for i in range(0, 4 * n, 2)]
    return tuple(vals[:n]), tuple(vals[n:])


@dataclass(frozen=True)
class CanonicalForm:
    """An origami in canonical labeling plus its byte key."""

    n: int
    r: tuple
    u: tuple
    key: bytes

    def origami(self) -> Origami:
        return Origami.from_arrays(self.n, [x + 1 for x in self.r],
                                   [x + 1 for x in self.u])


def canonical_form(o: Origami) -> CanonicalForm:
    o.require_connected()
    n, r, u = o.raw()
    cr, cu = _canonical_pair(r, u, n)
    return CanonicalForm(n, cr, cu, _encode(cr, cu, n))


# -- visited store ---------------------------------------------------------------

class ShardedVisited:
    """Set of fixed-width byte keys mapping to dense insertion ids.

    Keys live in per-shard dicts; under a memory cap each shard flushes its
    dict into an immutable sorted run (in RAM, or on disk as fixed-width
    ``key || uint64 id`` records when a spill directory is available).
    Membership checks the recent dict plus a binary search per run.
    """

    SHARDS = 16

    def __init__(self, key_width: int, max_memory: int | None = None,
                 spill_dir: str | None = None):
        self.key_width = key_width
        self.max_memory = max_memory
        self.spill_dir = spill_dir
        self._recent = [dict() for _ in range(self.SHARDS)]
        self._ram_runs = [[] for _ in range(self.SHARDS)]
        self._disk_runs = [[] for _ in range(self.SHARDS)]
        self._count = 0
        self._spill_seq = 0
        self.overflowed = False

    def __len__(self) -> int:
        return self._count

    def _shard(self, key: bytes) -> int:
        return key[0] & (self.SHARDS - 1)

    def _find(self, s: int, key: bytes):
        got = self._recent[s].get(key)
        if got is not None:
            return got
        for keys, ids in self._ram_runs[s]:
            i = bisect.bisect_left(keys, key)
            if i < len(keys) and keys[i] == key:
                return ids[i]
        for run in self._disk_runs[s]:
            got = run.find(key)
            if got is not None:
                return got
        return None

    def get(self, key: bytes):
        return self._find(self._shard(key), key)

    def __contains__(self, key: bytes) -> bool:
        return self._find(self._shard(key), key) is not None

    def add(self, key: bytes):
        """Insert; return (id, inserted)."""
        s = self._shard(key)
        got = self._find(s, key)
        if got is not None:
            return got, False
        ident = self._count
        self._recent[s][key] = ident
        self._count += 1
        if self.max_memory is not None and self._estimate() > self.max_memory:
            if self.spill_dir is not None:
                self._spill_to_disk()
            else:
                self._flush_to_runs()
                if self._estimate() > self.max_memory:
                    self.overflowed = True
        return ident, True

    def _estimate(self) -> int:
        per_dict = self.key_width + 130
        per_run = self.key_width + 80
        return (sum(len(d) for d in self._recent) * per_dict
                + sum(len(keys) for runs in self._ram_runs
                      for keys, _ in runs) * per_run)

    def _flush_to_runs(self):
        for s in range(self.SHARDS):
            if len(self._recent[s]) < 1024:
                continue
            items = sorted(self._recent[s].items())
            self._ram_runs[s].append(([k for k, _ in items], [i for _, i in items]))
            self._recent[s] = {}
            if len(self._ram_runs[s]) > 8:
                self._merge_ram_runs(s)

    def _merge_ram_runs(self, s: int):
        import heapq
        keys, ids = [], []
        for k, i in heapq.merge(*[zip(k, i) for k, i in self._ram_runs[s]]):
            keys.append(k)
            ids.append(i)
        self._ram_runs[s] = [(keys, ids)]

    def _spill_to_disk(self):
        self._flush_to_runs()
        os.makedirs(self.spill_dir, exist_ok=True)
        for s in range(self.SHARDS):
            for keys, ids in self._ram_runs[s]:
                path = os.path.join(self.spill_dir,
                                    f"run-{s:02d}-{self._spill_seq:04d}.bin")
                self._spill_seq += 1
                with open(path, "wb") as fh:
                    for k, i in zip(keys, ids):
                        fh.write(k)
                        fh.write(i.to_bytes(8, "little"))
                self._disk_runs[s].append(_DiskRun(path, self.key_width))
            self._ram_runs[s] = []


class _DiskRun:
    """Immutable sorted run of ``key || uint64`` records on disk."""

    def __init__(self, path: str, key_width: int):
        self.path = path
        self.key_width = key_width
        self.record = key_width + 8
        self.count = os.path.getsize(path) // self.record
        self._fh = open(path, "rb")

    def _key_at(self, i: int) -> bytes:
        self._fh.seek(i * self.record)
        return self._fh.read(self.key_width)

    def find(self, key: bytes):
        lo, hi = 0, self.count
        while lo < hi:
            mid = (lo + hi) // 2
            k = self._key_at(mid)
            if k < key:
                lo = mid + 1
            elif k > key:
                hi = mid
            else:
                self._fh.seek(mid * self.record + self.key_width)
                return int.from_bytes(self._fh.read(8), "little")
        return None


# -- orbit summary ---------------------------------------------------------------

@dataclass(frozen=True)
class OrbitSummary:
    """Result of an SL(2,Z)-orbit closure."""

    index: int
    cusp_count: int
    cusp_widths: tuple
    moduli_sum: Fraction
    representative: CanonicalForm
    cylinder_counts: tuple        # ((w, h, multiplicity), ...)
    lattice_index: int
    complete: bool

    @property
    def is_reduced(self) -> bool:
        return self.lattice_index == 1


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self):
        self.parent = []

    def make(self):
        self.parent.append(len(self.parent))

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def class_sizes(self):
        sizes = Counter(self.find(i) for i in range(len(self.parent)))
        return tuple(sorted(sizes.values(), reverse=True))


def _expand_batch(n, keys):
    """Canonical T- and S-images plus cylinder data for each popped key."""
    out = []
    for key in keys:
        r, u = _decode(key, n)
        v = perm_compose(perm_compose(r, u),
                         perm_compose(perm_invert(r), perm_invert(u)))
        cyls = _cylinders_raw(r, u, v)
        tr, tu = _act_T_raw(r, u)
        ct = _canonical_pair(tr, tu, n)
        sr, su = _act_S_raw(r, u)
        cs = _canonical_pair(sr, su, n)
        out.append((key, tuple(cyls),
                    _encode(ct[0], ct[1], n), _encode(cs[0], cs[1], n)))
    return out


def _expand_batch_star(args):
    return _expand_batch(*args)


def enumerate_orbit(o: Origami, max_size: int | None = None,
                    max_memory: int | None = None, jobs: int = 1,
                    cache_dir: str | None = None) -> OrbitSummary:
    """Breadth-first closure of the SL(2,Z)-action on canonical forms.

    The summary (orbit size = Veech-group index, cusp data, accumulated
    cylinder moduli) is deterministic and independent of ``jobs``.  When a
    limit interrupts the closure the summary is flagged incomplete; with a
    ``cache_dir`` the partial state is persisted and a later call resumes it.
    """
    o.require_connected()
    n, _, _ = o.raw()
    seed = canonical_form(o)
    lattice = o.lattice_index()

    cache = _OrbitCache(cache_dir, seed.key, n) if cache_dir else None
    if cache is not None:
        done = cache.load_summary()
        if done is not None and done.complete:
            return done

    width = 2 * n * _key_bytes_per_entry(n)
    visited = ShardedVisited(width, max_memory,
                             spill_dir=cache.spill_dir if cache else None)
    cusps = _UnionFind()
    moduli = Counter()
    frontier = [seed.key]

    resumed = cache.load_partial(visited, cusps, moduli) if cache else None
    if resumed is not None:
        frontier = resumed
    else:
        visited.add(seed.key)
        cusps.make()
        if cache is not None:
            cache.log_key(seed.key)

    pool = None
    if jobs > 1:
        import multiprocessing
        pool = multiprocessing.Pool(jobs)
    complete = True
    try:
        while frontier:
            if max_size is not None and len(visited) > max_size:
                complete = False
                break
            if visited.overflowed:
                complete = False
                break
            if pool is not None and len(frontier) >= 4 * jobs:
                chunk = (len(frontier) + jobs - 1) // jobs
                batches = [(n, frontier[i:i + chunk])
                           for i in range(0, len(frontier), chunk)]
                expanded = [item for batch in pool.map(_expand_batch_star, batches)
                            for item in batch]
            else:
                expanded = _expand_batch(n, frontier)
            frontier = []
            for key, cyls, tkey, skey in expanded:
                for w, h in cyls:
                    moduli[(w, h)] += 1
                src_id = visited.get(key)
                tid, new = visited.add(tkey)
                if new:
                    cusps.make()
                    frontier.append(tkey)
                    if cache is not None:
                        cache.log_key(tkey)
                cusps.union(src_id, tid)
                sid, new = visited.add(skey)
                if new:
                    cusps.make()
                    frontier.append(skey)
                    if cache is not None:
                        cache.log_key(skey)
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    index = len(visited)
    moduli_sum = sum((Fraction(h, w) * mult for (w, h), mult in moduli.items()),
                     Fraction(0))
    rep_key = min(_iter_keys(visited))
    rep_r, rep_u = _decode(rep_key, n)
    widths = cusps.class_sizes() if complete else ()
    summary = OrbitSummary(
        index=index,
        cusp_count=len(widths),
        cusp_widths=widths,
        moduli_sum=moduli_sum,
        representative=CanonicalForm(n, rep_r, rep_u, rep_key),
        cylinder_counts=tuple(sorted((w, h, m) for (w, h), m in moduli.items())),
        lattice_index=lattice,
        complete=complete,
    )
    if cache is not None:
        cache.store(summary, frontier, cusps, moduli)
    return summary


def _iter_keys(visited: ShardedVisited):
    for s in range(visited.SHARDS):
        yield from visited._recent[s].keys()
        for keys, _ in visited._ram_runs[s]:
            yield from keys
        for run in visited._disk_runs[s]:
            for i in range(run.count):
                yield run._key_at(i)


# -- disk cache -------------------------------------------------------------------

class _OrbitCache:
    """Orbit state on disk, keyed by the seed's canonical key, the generator
    convention and the cache format version.

    Layout per orbit under the cache root:

    * ``orbit-<hex>.json``   manifest: counters, completeness flag, frontier
    * ``orbit-<hex>.keys``   visited keys, fixed-width, in insertion order
    * ``orbit-<hex>.par``    union-find parents, uint64 records (partial runs)
    * ``orbit-<hex>.spill/`` sorted runs spilled under a memory cap
    """

    def __init__(self, root: str, seed_key: bytes, n: int):
        self.root = root
        self.n = n
        base = f"orbit-{seed_key.hex()}"
        self.manifest_path = os.path.join(root, base + ".json")
        self.keys_path = os.path.join(root, base + ".keys")
        self.parents_path = os.path.join(root, base + ".par")
        self.spill_dir = os.path.join(root, base + ".spill")
        self._log = None

    def log_key(self, key: bytes):
        if self._log is None:
            os.makedirs(self.root, exist_ok=True)
            self._log = open(self.keys_path, "ab")
        self._log.write(key)

    def _read_manifest(self):
        if not os.path.exists(self.manifest_path):
            return None
        with open(self.manifest_path) as fh:
            doc = json.load(fh)
        if (doc.get("version") != CACHE_VERSION
                or doc.get("convention") != GENERATOR_CONVENTION):
            return None
        return doc

    def load_summary(self) -> OrbitSummary | None:
        doc = self._read_manifest()
        if doc is None or not doc.get("complete"):
            return None
        rep_key = bytes.fromhex(doc["representative"])
        rep_r, rep_u = _decode(rep_key, self.n)
        return OrbitSummary(
            index=doc["index"],
            cusp_count=doc["cusps"],
            cusp_widths=tuple(doc["cusp_widths"]),
            moduli_sum=Fraction(doc["moduli_sum"]),
            representative=CanonicalForm(self.n, rep_r, rep_u, rep_key),
            cylinder_counts=tuple(tuple(t) for t in doc["cylinders"]),
            lattice_index=doc["lattice_index"],
            complete=True,
        )

    def load_partial(self, visited: ShardedVisited, cusps: _UnionFind,
                     moduli: Counter):
        """Restore an interrupted closure; returns the frontier or None."""
        doc = self._read_manifest()
        if doc is None or doc.get("complete") or "frontier" not in doc:
            return None
        width = 2 * self.n * _key_bytes_per_entry(self.n)
        with open(self.keys_path, "rb") as fh:
            blob = fh.read()
        for off in range(0, len(blob), width):
            visited.add(blob[off:off + width])
        with open(self.parents_path, "rb") as fh:
            par = fh.read()
        cusps.parent = [int.from_bytes(par[i:i + 8], "little")
                        for i in range(0, len(par), 8)]
        for w, h, mult in doc["moduli"]:
            moduli[(w, h)] = mult
        self._log = open(self.keys_path, "ab")
        return [bytes.fromhex(k) for k in doc["frontier"]]

    def store(self, summary: OrbitSummary, frontier, cusps: _UnionFind,
              moduli: Counter):
        os.makedirs(self.root, exist_ok=True)
        if self._log is not None:
            self._log.close()
            self._log = None
        doc = {
            "version": CACHE_VERSION,
            "convention": GENERATOR_CONVENTION,
            "n": self.n,
            "index": summary.index,
            "cusps": summary.cusp_count,
            "cusp_widths": list(summary.cusp_widths),
            "moduli_sum": str(summary.moduli_sum),
            "representative": summary.representative.key.hex(),
            "cylinders": [list(t) for t in summary.cylinder_counts],
            "lattice_index": summary.lattice_index,
            "complete": summary.complete,
        }
        if not summary.complete:
            doc["frontier"] = [k.hex() for k in frontier]
            doc["moduli"] = [[w, h, m] for (w, h), m in sorted(moduli.items())]
            with open(self.parents_path, "wb") as fh:
                for p in cusps.parent:
                    fh.write(p.to_bytes(8, "little"))
        tmp = self.manifest_path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(doc, fh)
        os.replace(tmp, self.manifest_path)
