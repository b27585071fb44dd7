"""The strictly-upper part of an incidence algebra as a nilpotent algebra
in its own right: sparse elements over the strict-pair basis e_xy (x < y),
the product e_xy . e_uv = [y == u] e_xv, the annihilator and the square of
the algebra in closed form, and the centroid with an explicit spanning
family (chain-constant diagonal maps plus annihilator-valued maps).

All values are immutable after construction; operations return fresh
objects and never mutate inputs.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import (
    BadLabel,
    ChainConflict,
    DivisionByZero,
    DuplicateEntry,
    MixedContext,
    ParseError,
    Singular,
)
from .poset import StrictPair


def _same_context(a, b):
    if a.poset != b.poset or a.field != b.field:
        raise MixedContext("operands belong to different posets or fields")


class JElement:
    """A sparse vector over the strict-pair basis, tied to a poset and a
    field. No explicit zero entries are stored."""

    __slots__ = ("poset", "field", "coeffs")

    def __init__(self, poset, field, coeffs=None, *, _norm=True):
        self.poset = poset
        self.field = field
        if coeffs is None:
            coeffs = {}
        if _norm:
            coeffs = {i: c for i, c in coeffs.items() if c}
        if coeffs:
            m = len(poset.pairs)
            for i in coeffs:
                if not 0 <= i < m:
                    raise BadLabel(f"pair index {i} out of range for this poset")
        self.coeffs = coeffs

    @classmethod
    def zero(cls, poset, field):
        return cls(poset, field, {}, _norm=False)

    @classmethod
    def basis(cls, poset, field, x, y):
        idx = poset.pair_index.get((x, y))
        if idx is None:
            raise BadLabel(f"({x},{y}) is not a strict pair of this poset")
        return cls(poset, field, {idx: field.one}, _norm=False)

    def is_zero(self):
        return not self.coeffs

    def coeff(self, x, y):
        idx = self.poset.pair_index.get((x, y))
        if idx is None:
            raise BadLabel(f"({x},{y}) is not a strict pair of this poset")
        return self.coeffs.get(idx, self.field.zero)

    def __add__(self, other):
        _same_context(self, other)
        F = self.field
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = F.add(out.get(i, F.zero), c)
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return JElement(self.poset, self.field, out, _norm=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.field.neg
        return JElement(
            self.poset, self.field, {i: neg(c) for i, c in self.coeffs.items()}, _norm=False
        )

    def scale(self, c):
        if not c:
            return JElement.zero(self.poset, self.field)
        mul = self.field.mul
        return JElement(
            self.poset, self.field, {i: mul(c, v) for i, v in self.coeffs.items()}, _norm=True
        )

    def support(self):
        return tuple(sorted(self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, JElement)
            and other.poset == self.poset
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        pairs = self.poset.pairs
        fmt = self.field.format
        terms = [f"{fmt(self.coeffs[i])}*e({pairs[i].x},{pairs[i].y})" for i in sorted(self.coeffs)]
        return " + ".join(terms)

    def to_json(self):
        pairs = self.poset.pairs
        fmt = self.field.format
        return [
            {"pair": [pairs[i].x, pairs[i].y], "coeff": fmt(self.coeffs[i])}
            for i in sorted(self.coeffs)
        ]

    @classmethod
    def from_json(cls, poset, field, data):
        if not isinstance(data, list):
            raise ParseError("element must be a list of {'pair','coeff'} entries")
        out = {}
        for item in data:
            if not isinstance(item, dict) or "pair" not in item or "coeff" not in item:
                raise ParseError(f"bad element entry {item!r}")
            x, y = item["pair"]
            idx = poset.pair_index.get((x, y))
            if idx is None:
                raise BadLabel(f"({x},{y}) is not a strict pair of this poset")
            if idx in out:
                raise DuplicateEntry(f"pair ({x},{y}) listed twice")
            out[idx] = field.parse(item["coeff"])
        return cls(poset, field, out)


def mul_basis(poset, p, q):
    """Product of two basis pairs: (x,y).(u,v) = (x,v) when y == u, else
    None. Accepts StrictPair values or raw (x, y) tuples."""
    px, py = (p.x, p.y) if isinstance(p, StrictPair) else p
    qx, qy = (q.x, q.y) if isinstance(q, StrictPair) else q
    pi = poset.pair_index
    if (px, py) not in pi or (qx, qy) not in pi:
        raise BadLabel("arguments must be strict pairs of the poset")
    if py != qx:
        return None
    return poset.pairs[pi[(px, qy)]]


def mul(a, b):
    """The bilinear extension of the basis product."""
    _same_context(a, b)
    F = a.field
    comp = a.poset.compose
    add, fmul, zero = F.add, F.mul, F.zero
    out = {}
    for i, ca in a.coeffs.items():
        for j, cb in b.coeffs.items():
            k = comp.get((i, j))
            if k is None:
                continue
            s = add(out.get(k, zero), fmul(ca, cb))
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return JElement(a.poset, a.field, out, _norm=False)


@lru_cache(maxsize=512)
def _ann_indices(poset):
    mins, maxs = poset.min_elements, poset.max_elements
    return frozenset(p.index for p in poset.pairs if p.x in mins and p.y in maxs)


@lru_cache(maxsize=512)
def _jj_indices(poset):
    return frozenset(p.index for p in poset.pairs if poset._ilen(p.x, p.y) > 1)


def ann_basis(poset):
    """Basis pairs spanning the annihilator: x minimal and y maximal."""
    idxs = _ann_indices(poset)
    return tuple(p for p in poset.pairs if p.index in idxs)


def jj_basis(poset):
    """Basis pairs spanning the square of the algebra: interval length > 1."""
    idxs = _jj_indices(poset)
    return tuple(p for p in poset.pairs if p.index in idxs)


class LinearEndo:
    """A linear map of the radical to itself, stored as sparse columns:
    cols[j] holds the coefficients of the image of basis pair j."""

    __slots__ = ("poset", "field", "cols")

    def __init__(self, poset, field, cols, *, _norm=True):
        m = len(poset.pairs)
        cols = tuple(cols)
        if len(cols) != m:
            raise ValueError(f"expected {m} columns, got {len(cols)}")
        if _norm:
            cols = tuple({i: c for i, c in col.items() if c} for col in cols)
        self.poset = poset
        self.field = field
        self.cols = cols

    @classmethod
    def zero(cls, poset, field):
        m = len(poset.pairs)
        return cls(poset, field, [{} for _ in range(m)], _norm=False)

    @classmethod
    def identity(cls, poset, field):
        m = len(poset.pairs)
        return cls(poset, field, [{j: field.one} for j in range(m)], _norm=False)

    @classmethod
    def elementary(cls, poset, field, src, dst):
        """The map sending basis pair src to basis pair dst, zero elsewhere."""
        m = len(poset.pairs)
        cols = [{} for _ in range(m)]
        cols[src] = {dst: field.one}
        return cls(poset, field, cols, _norm=False)

    def apply(self, elt):
        if elt.poset != self.poset or elt.field != self.field:
            raise MixedContext("element belongs to a different poset or field")
        F = self.field
        add, fmul, zero = F.add, F.mul, F.zero
        out = {}
        for j, c in elt.coeffs.items():
            for i, v in self.cols[j].items():
                s = add(out.get(i, zero), fmul(c, v))
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return JElement(self.poset, self.field, out, _norm=False)

    def __add__(self, other):
        _same_context(self, other)
        F = self.field
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            for i, c in b.items():
                s = F.add(col.get(i, F.zero), c)
                if s:
                    col[i] = s
                else:
                    col.pop(i, None)
            cols.append(col)
        return LinearEndo(self.poset, self.field, cols, _norm=False)

    def scale(self, c):
        if not c:
            return LinearEndo.zero(self.poset, self.field)
        mul_ = self.field.mul
        return LinearEndo(
            self.poset,
            self.field,
            [{i: mul_(c, v) for i, v in col.items()} for col in self.cols],
            _norm=True,
        )

    def inverse(self):
        """Exact inverse by Gauss-Jordan elimination; raises Singular."""
        F = self.field
        m = len(self.poset.pairs)
        a = [[F.zero] * m for _ in range(m)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                a[i][j] = v
        inv = [[F.one if i == j else F.zero for j in range(m)] for i in range(m)]
        for col in range(m):
            piv = None
            for r in range(col, m):
                if a[r][col]:
                    piv = r
                    break
            if piv is None:
                raise Singular("map is not invertible")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            f = F.inv(a[col][col])
            a[col] = [F.mul(f, v) for v in a[col]]
            inv[col] = [F.mul(f, v) for v in inv[col]]
            for r in range(m):
                if r == col or not a[r][col]:
                    continue
                g = a[r][col]
                a[r] = [F.sub(v, F.mul(g, w)) for v, w in zip(a[r], a[col])]
                inv[r] = [F.sub(v, F.mul(g, w)) for v, w in zip(inv[r], inv[col])]
        cols = [{i: inv[i][j] for i in range(m) if inv[i][j]} for j in range(m)]
        return LinearEndo(self.poset, self.field, cols, _norm=False)

    def __eq__(self, other):
        return (
            isinstance(other, LinearEndo)
            and other.poset == self.poset
            and other.field == self.field
            and other.cols == self.cols
        )

    def to_json(self):
        fmt = self.field.format
        pairs = self.poset.pairs
        return [
            [
                {"pair": [pairs[i].x, pairs[i].y], "coeff": fmt(col[i])}
                for i in sorted(col)
            ]
            for col in self.cols
        ]

    @classmethod
    def from_json(cls, poset, field, data):
        m = len(poset.pairs)
        if not isinstance(data, list) or len(data) != m:
            raise ParseError(f"expected {m} columns in pair-index order")
        cols = [JElement.from_json(poset, field, col).coeffs for col in data]
        return cls(poset, field, cols, _norm=False)


class ChainConstantMap:
    """A scalar for every pair class of the chain-generated equivalence;
    equivalently a map on strict pairs that is constant on chains."""

    __slots__ = ("poset", "field", "values")

    def __init__(self, poset, field, values):
        ids = poset.sim_partition.class_ids
        if set(values) != set(ids):
            raise ValueError("values must cover every pair class exactly")
        self.poset = poset
        self.field = field
        self.values = dict(values)

    @classmethod
    def constant(cls, poset, field, c):
        return cls(poset, field, {d: c for d in poset.sim_partition.class_ids})

    @classmethod
    def indicator(cls, poset, field, class_id):
        if class_id not in poset.sim_partition.members:
            raise BadLabel(f"no pair class with id {class_id}")
        return cls(
            poset,
            field,
            {
                d: (field.one if d == class_id else field.zero)
                for d in poset.sim_partition.class_ids
            },
        )

    @classmethod
    def from_class_values(cls, poset, field, partial):
        values = {d: field.zero for d in poset.sim_partition.class_ids}
        for d, c in partial.items():
            if d not in values:
                raise BadLabel(f"no pair class with id {d}")
            values[d] = c
        return cls(poset, field, values)

    @classmethod
    def from_pair_values(cls, poset, field, pair_values):
        """Build from per-pair scalars, checking constancy on classes;
        unmentioned classes get zero."""
        sim = poset.sim_partition
        pi = poset.pair_index
        values = {d: field.zero for d in sim.class_ids}
        witness = {}
        for (x, y), c in pair_values.items():
            idx = pi.get((x, y))
            if idx is None:
                raise BadLabel(f"({x},{y}) is not a strict pair of this poset")
            d = sim.class_of[idx]
            if d in witness:
                if values[d] != c:
                    raise ChainConflict(
                        f"pairs {witness[d]} and {(x, y)} lie on a common chain "
                        f"but carry different values"
                    )
            else:
                witness[d] = (x, y)
                values[d] = c
        return cls(poset, field, values)

    def at_pair(self, index):
        return self.values[self.poset.sim_partition.class_of[index]]

    def __eq__(self, other):
        return (
            isinstance(other, ChainConstantMap)
            and other.poset == self.poset
            and other.field == self.field
            and other.values == self.values
        )

    def to_json(self):
        fmt = self.field.format
        return [
            {"pair": [p.x, p.y], "coeff": fmt(self.at_pair(p.index))}
            for p in self.poset.pairs
        ]

    @classmethod
    def from_json(cls, poset, field, data):
        if not isinstance(data, list):
            raise ParseError("chain-constant map must be a list of {'pair','coeff'}")
        pair_values = {}
        for item in data:
            if not isinstance(item, dict) or "pair" not in item or "coeff" not in item:
                raise ParseError(f"bad entry {item!r}")
            x, y = item["pair"]
            if (x, y) in pair_values:
                raise DuplicateEntry(f"pair ({x},{y}) listed twice")
            pair_values[(x, y)] = field.parse(item["coeff"])
        return cls.from_pair_values(poset, field, pair_values)


def is_centroid(poset, field, phi):
    """Check phi(e_p . e_q) = e_p . phi(e_q) = phi(e_p) . e_q on all basis
    pairs; by bilinearity this settles the identity on the whole algebra."""
    if phi.poset != poset or phi.field != field:
        raise MixedContext("map belongs to a different poset or field")
    comp = poset.compose
    cols = phi.cols
    m = len(poset.pairs)
    for i in range(m):
        col_i = cols[i]
        for j in range(m):
            k = comp.get((i, j))
            lhs = cols[k] if k is not None else {}
            # e_i . phi(e_j): target indices are distinct for distinct sources
            mid = {}
            for s, c in cols[j].items():
                t = comp.get((i, s))
                if t is not None:
                    mid[t] = c
            if lhs != mid:
                return False
            rhs = {}
            for s, c in col_i.items():
                t = comp.get((s, j))
                if t is not None:
                    rhs[t] = c
            if lhs != rhs:
                return False
    return True


def phi_sigma(poset, field, sigma):
    """The diagonal centroid element of a chain-constant map: basis pair
    (x,y) is scaled by the value of its class."""
    if sigma.poset != poset or sigma.field != field:
        raise MixedContext("map belongs to a different poset or field")
    cols = []
    for p in poset.pairs:
        v = sigma.at_pair(p.index)
        cols.append({p.index: v} if v else {})
    return LinearEndo(poset, field, cols, _norm=False)


def annihilator_valued_map_basis(poset, field):
    """Elementary maps e_p -> e_a for p of interval length 1 and a in the
    annihilator basis; they span all annihilator-valued linear maps."""
    jj = _jj_indices(poset)
    ann = sorted(_ann_indices(poset))
    out = []
    for p in poset.pairs:
        if p.index in jj:
            continue
        for a in ann:
            out.append(LinearEndo.elementary(poset, field, p.index, a))
    return out


def centroid_basis(poset, field):
    """A spanning family for the centroid: one diagonal indicator map per
    pair class plus the annihilator-valued elementary maps. The family
    need not be linearly independent."""
    out = [
        phi_sigma(poset, field, ChainConstantMap.indicator(poset, field, d))
        for d in poset.sim_partition.class_ids
    ]
    out.extend(annihilator_valued_map_basis(poset, field))
    return out
