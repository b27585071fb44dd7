"""Finite posets on labels 1..n and the chain combinatorics everything
else is built on: strict pairs and triples with fixed lexicographic
indices, interval lengths, and the two chain-generated equivalence
partitions (of pairs and of triples).

Posets are immutable after construction; all derived structure is cached
on first use and safe for concurrent reads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, NamedTuple

from .errors import BadLabel, CycleDetected, NotComparable, ParseError, ProjectionBroken


class StrictPair(NamedTuple):
    x: int
    y: int
    index: int


class StrictTriple(NamedTuple):
    x: int
    y: int
    z: int
    index: int


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, i):
        p = self.parent
        root = i
        while p[root] != root:
            root = p[root]
        while p[i] != root:
            p[i], i = root, p[i]
        return root

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # keep the smaller index as root so class ids are canonical
            if ri > rj:
                ri, rj = rj, ri
            self.parent[rj] = ri


@dataclass(frozen=True)
class SimPartition:
    """Partition of the strict pairs into classes generated by direct
    links; two pairs link directly when their four elements are pairwise
    comparable. Class id = smallest member pair index."""

    class_ids: tuple
    members: Mapping[int, tuple]
    class_of: tuple

    @property
    def num_classes(self):
        return len(self.class_ids)


@dataclass(frozen=True)
class ApproxPartition:
    """Same construction on strict triples (six elements pairwise
    comparable); proj sends each triple class to the pair class of its
    outer pair (x,y,z) -> (x,z)."""

    class_ids: tuple
    members: Mapping[int, tuple]
    class_of: tuple
    proj: Mapping[int, int]

    @property
    def num_classes(self):
        return len(self.class_ids)


class Poset:
    """A finite poset on labels 1..n, stored as the full order relation."""

    def __init__(self, n, leq):
        if n < 0:
            raise BadLabel(f"bad element count {n}")
        self.n = n
        self._leq = tuple(tuple(row) for row in leq)
        if len(self._leq) != n + 1 or any(len(row) != n + 1 for row in self._leq):
            raise ValueError("order matrix must be (n+1) x (n+1), row/col 0 unused")
        for x in range(1, n + 1):
            if not self._leq[x][x]:
                raise ValueError("order relation must be reflexive")
            for y in range(1, n + 1):
                if x != y and self._leq[x][y] and self._leq[y][x]:
                    raise CycleDetected(f"{x} and {y} are mutually comparable")
        for x in range(1, n + 1):
            for y in range(1, n + 1):
                if not self._leq[x][y]:
                    continue
                for z in range(1, n + 1):
                    if self._leq[y][z] and not self._leq[x][z]:
                        raise ValueError("order relation must be transitive")
        self._hash = hash((n, self._leq))
        self._ilen_memo = {}

    @classmethod
    def from_hasse(cls, n, edges):
        """Build the poset as the reflexive-transitive closure of the
        given covering edges; rejects out-of-range labels and cycles."""
        if n < 0:
            raise BadLabel(f"bad element count {n}")
        leq = [[False] * (n + 1) for _ in range(n + 1)]
        for x in range(1, n + 1):
            leq[x][x] = True
        for e in edges:
            u, v = e
            if not (isinstance(u, int) and isinstance(v, int)):
                raise BadLabel(f"bad edge {e!r}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise BadLabel(f"edge {e!r} out of range 1..{n}")
            if u == v:
                raise CycleDetected(f"self-loop at {u}")
            leq[u][v] = True
        for k in range(1, n + 1):
            lk = leq[k]
            for i in range(1, n + 1):
                if leq[i][k]:
                    li = leq[i]
                    for j in range(1, n + 1):
                        if lk[j]:
                            li[j] = True
        for x in range(1, n + 1):
            for y in range(x + 1, n + 1):
                if leq[x][y] and leq[y][x]:
                    raise CycleDetected(f"cycle through {x} and {y}")
        return cls(n, leq)

    @classmethod
    def from_strict(cls, n, strict):
        """Internal fast path for enumeration: strict must already be a
        transitive irreflexive relation given as (u, v) pairs."""
        leq = [[False] * (n + 1) for _ in range(n + 1)]
        for x in range(1, n + 1):
            leq[x][x] = True
        for u, v in strict:
            leq[u][v] = True
        return cls(n, leq)

    # -- basic queries -------------------------------------------------

    def _check(self, x):
        if not isinstance(x, int) or not 1 <= x <= self.n:
            raise BadLabel(f"label {x!r} out of range 1..{self.n}")

    def leq(self, x, y):
        self._check(x)
        self._check(y)
        return self._leq[x][y]

    def less(self, x, y):
        return x != y and self.leq(x, y)

    def comparable(self, x, y):
        self._check(x)
        self._check(y)
        return self._leq[x][y] or self._leq[y][x]

    @cached_property
    def pairs(self):
        out = []
        for x in range(1, self.n + 1):
            row = self._leq[x]
            for y in range(1, self.n + 1):
                if x != y and row[y]:
                    out.append(StrictPair(x, y, len(out)))
        return tuple(out)

    @cached_property
    def pair_index(self):
        return {(p.x, p.y): p.index for p in self.pairs}

    @cached_property
    def triples(self):
        out = []
        leq = self._leq
        for x in range(1, self.n + 1):
            for y in range(1, self.n + 1):
                if x == y or not leq[x][y]:
                    continue
                for z in range(1, self.n + 1):
                    if y != z and z != x and leq[y][z]:
                        out.append(StrictTriple(x, y, z, len(out)))
        return tuple(out)

    @cached_property
    def triple_index(self):
        return {(t.x, t.y, t.z): t.index for t in self.triples}

    @cached_property
    def compose(self):
        """Index map of the basis product: (i, j) -> k when the pairs
        chain as (x,y),(y,v) -> (x,v). In bijection with the triples."""
        pi = self.pair_index
        starts = {}
        for q in self.pairs:
            starts.setdefault(q.x, []).append(q)
        out = {}
        for p in self.pairs:
            for q in starts.get(p.y, ()):
                out[(p.index, q.index)] = pi[(p.x, q.y)]
        return out

    # -- chains and lengths --------------------------------------------

    def interval_length(self, x, y):
        """Longest chain inside the closed interval [x, y], counted in
        steps; 0 iff x == y."""
        self._check(x)
        self._check(y)
        if not self._leq[x][y]:
            raise NotComparable(f"{x} is not below {y}")
        return self._ilen(x, y)

    def _ilen(self, x, y):
        if x == y:
            return 0
        memo = self._ilen_memo
        got = memo.get((x, y))
        if got is not None:
            return got
        leq = self._leq
        best = 1
        for z in range(1, self.n + 1):
            if z != x and z != y and leq[x][z] and leq[z][y]:
                cand = 1 + self._ilen(z, y)
                if cand > best:
                    best = cand
        memo[(x, y)] = best
        return best

    @cached_property
    def length(self):
        """Length of the longest chain in the whole poset."""
        if not self.pairs:
            return 0
        return max(self._ilen(p.x, p.y) for p in self.pairs)

    @cached_property
    def min_elements(self):
        leq = self._leq
        return frozenset(
            x
            for x in range(1, self.n + 1)
            if not any(y != x and leq[y][x] for y in range(1, self.n + 1))
        )

    @cached_property
    def max_elements(self):
        leq = self._leq
        return frozenset(
            x
            for x in range(1, self.n + 1)
            if not any(y != x and leq[x][y] for y in range(1, self.n + 1))
        )

    @cached_property
    def covers(self):
        """The covering (Hasse) edges of the order."""
        return tuple((p.x, p.y) for p in self.pairs if self._ilen(p.x, p.y) == 1)

    # -- equivalence partitions ------------------------------------------

    @cached_property
    def sim_partition(self):
        pairs = self.pairs
        m = len(pairs)
        uf = _UnionFind(m)
        leq = self._leq
        for i in range(m):
            a = pairs[i]
            for j in range(i + 1, m):
                b = pairs[j]
                if (
                    (leq[a.x][b.x] or leq[b.x][a.x])
                    and (leq[a.x][b.y] or leq[b.y][a.x])
                    and (leq[a.y][b.x] or leq[b.x][a.y])
                    and (leq[a.y][b.y] or leq[b.y][a.y])
                ):
                    uf.union(i, j)
        members = {}
        for i in range(m):
            members.setdefault(uf.find(i), []).append(i)
        class_of = [0] * m
        for cid, idxs in members.items():
            for i in idxs:
                class_of[i] = cid
        return SimPartition(
            class_ids=tuple(sorted(members)),
            members={cid: tuple(idxs) for cid, idxs in members.items()},
            class_of=tuple(class_of),
        )

    @cached_property
    def approx_partition(self):
        triples = self.triples
        m = len(triples)
        uf = _UnionFind(m)
        leq = self._leq
        for i in range(m):
            a = triples[i]
            ea = (a.x, a.y, a.z)
            for j in range(i + 1, m):
                b = triples[j]
                if all(leq[u][v] or leq[v][u] for u in ea for v in (b.x, b.y, b.z)):
                    uf.union(i, j)
        members = {}
        for i in range(m):
            members.setdefault(uf.find(i), []).append(i)
        class_of = [0] * m
        for cid, idxs in members.items():
            for i in idxs:
                class_of[i] = cid
        sim = self.sim_partition
        pi = self.pair_index
        proj = {}
        for cid, idxs in members.items():
            targets = {sim.class_of[pi[(triples[i].x, triples[i].z)]] for i in idxs}
            if len(targets) != 1:
                raise ProjectionBroken(
                    f"triple class {cid} projects into {len(targets)} pair classes"
                )
            proj[cid] = targets.pop()
        return ApproxPartition(
            class_ids=tuple(sorted(members)),
            members={cid: tuple(idxs) for cid, idxs in members.items()},
            class_of=tuple(class_of),
            proj=proj,
        )

    def sufficient_condition_holds(self):
        """True when every pair class receives at most one triple class
        under proj, i.e. linked outer pairs force linked triples."""
        ap = self.approx_partition
        seen = set()
        for cid in ap.class_ids:
            d = ap.proj[cid]
            if d in seen:
                return False
            seen.add(d)
        return True

    # -- relabeling and serialization ------------------------------------

    def relabel(self, perm):
        """Apply a relabeling; perm[i-1] is the new label of element i."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise BadLabel(f"not a permutation of 1..{self.n}: {perm!r}")
        leq = [[False] * (self.n + 1) for _ in range(self.n + 1)]
        for x in range(1, self.n + 1):
            for y in range(1, self.n + 1):
                if self._leq[x][y]:
                    leq[perm[x - 1]][perm[y - 1]] = True
        return Poset(self.n, leq)

    def encode(self):
        """The strict relation packed into an int, bit (x-1)*n + (y-1)."""
        code = 0
        n = self.n
        for p in self.pairs:
            code |= 1 << ((p.x - 1) * n + (p.y - 1))
        return code

    def to_json(self):
        return {"n": self.n, "hasse": [list(e) for e in self.covers]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "n" not in obj or "hasse" not in obj:
            raise ParseError(f"bad poset description: need keys 'n' and 'hasse'")
        if not isinstance(obj["n"], int):
            raise ParseError(f"bad element count {obj['n']!r}")
        edges = obj["hasse"]
        if not isinstance(edges, list) or any(
            not isinstance(e, (list, tuple)) or len(e) != 2 for e in edges
        ):
            raise ParseError("'hasse' must be a list of [u, v] edges")
        return cls.from_hasse(obj["n"], [tuple(e) for e in edges])

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}: {exc}") from exc
        return cls.from_json(obj)

    def __eq__(self, other):
        return (
            isinstance(other, Poset) and other.n == self.n and other._leq == self._leq
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Poset(n={self.n}, hasse={list(self.covers)})"
