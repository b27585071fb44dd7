"""Bilinear products on the radical as structure-constant tables, the
compatibility predicates between two products, and the canonical
constructors: the incidence product itself, products determined by
centroid elements, the per-triple-class and per-pair-class products,
annihilator-valued products from a corner map, mutations, and transport
along (anti)automorphisms.

Every predicate evaluates its identity on basis triples only; since all
products are bilinear this is equivalent to the universally quantified
statement. Tables are sparse: absent entries are zero. Products are
immutable after construction.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import (
    BadLabel,
    BadMu,
    DuplicateEntry,
    MixedContext,
    NotAntiautomorphism,
    NotAutomorphism,
    NotCentroid,
    ParseError,
)
from .radical import JElement, _ann_indices, _jj_indices, _same_context, is_centroid


class BilinearProduct:
    """A bilinear product as a sparse table (i, j) -> value over pair
    indices; values are elements of the radical."""

    __slots__ = ("poset", "field", "table")

    def __init__(self, poset, field, table, *, _norm=True):
        if _norm:
            table = {k: v for k, v in table.items() if v.coeffs}
        self.poset = poset
        self.field = field
        self.table = table

    @classmethod
    def zero(cls, poset, field):
        return cls(poset, field, {}, _norm=False)

    def entry(self, i, j):
        v = self.table.get((i, j))
        if v is None:
            return JElement.zero(self.poset, self.field)
        return v

    def apply(self, a, b):
        """Evaluate the product on two elements by bilinear extension."""
        _same_context(a, b)
        if a.poset != self.poset or a.field != self.field:
            raise MixedContext("elements belong to a different poset or field")
        F = self.field
        add, fmul, zero = F.add, F.mul, F.zero
        out = {}
        for i, ca in a.coeffs.items():
            for j, cb in b.coeffs.items():
                v = self.table.get((i, j))
                if v is None:
                    continue
                c = fmul(ca, cb)
                for w, d in v.coeffs.items():
                    s = add(out.get(w, zero), fmul(c, d))
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
        return JElement(self.poset, self.field, out, _norm=False)

    def __add__(self, other):
        _same_context(self, other)
        table = dict(self.table)
        for k, v in other.table.items():
            cur = table.get(k)
            s = v if cur is None else cur + v
            if s.coeffs:
                table[k] = s
            else:
                table.pop(k, None)
        return BilinearProduct(self.poset, self.field, table, _norm=False)

    def __neg__(self):
        return BilinearProduct(
            self.poset, self.field, {k: -v for k, v in self.table.items()}, _norm=False
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return BilinearProduct.zero(self.poset, self.field)
        return BilinearProduct(
            self.poset, self.field, {k: v.scale(c) for k, v in self.table.items()}, _norm=True
        )

    def is_zero(self):
        return not self.table

    def support(self):
        return tuple(sorted(self.table))

    def __eq__(self, other):
        return (
            isinstance(other, BilinearProduct)
            and other.poset == self.poset
            and other.field == self.field
            and other.table == self.table
        )

    def __repr__(self):
        return f"BilinearProduct({len(self.table)} entries)"

    def to_json(self):
        pairs = self.poset.pairs
        entries = []
        for (i, j) in sorted(self.table):
            entries.append(
                {
                    "a": [pairs[i].x, pairs[i].y],
                    "b": [pairs[j].x, pairs[j].y],
                    "value": self.table[(i, j)].to_json(),
                }
            )
        return {"entries": entries}

    @classmethod
    def from_json(cls, poset, field, obj):
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ParseError("product must be an object with an 'entries' list")
        pi = poset.pair_index
        table = {}
        for item in obj["entries"]:
            if not isinstance(item, dict) or not {"a", "b", "value"} <= set(item):
                raise ParseError(f"bad product entry {item!r}")
            ax, ay = item["a"]
            bx, by = item["b"]
            i, j = pi.get((ax, ay)), pi.get((bx, by))
            if i is None or j is None:
                raise BadLabel(f"entry keys ({ax},{ay}), ({bx},{by}) must be strict pairs")
            if (i, j) in table:
                raise DuplicateEntry(f"entry (({ax},{ay}),({bx},{by})) listed twice")
            table[(i, j)] = JElement.from_json(poset, field, item["value"])
        return cls(poset, field, table)


class MuTable:
    """Corner data of an annihilator-valued product: values on pairs of
    interval-length-1 basis pairs, landing in the annihilator span."""

    __slots__ = ("poset", "field", "entries")

    def __init__(self, poset, field, entries):
        jj = _jj_indices(poset)
        ann = _ann_indices(poset)
        clean = {}
        for (i, j), v in entries.items():
            if i in jj or j in jj:
                raise BadMu(f"key {(i, j)} involves a pair of interval length > 1")
            if v.poset != poset or v.field != field:
                raise MixedContext("value belongs to a different poset or field")
            if any(w not in ann for w in v.coeffs):
                raise BadMu(f"value at {(i, j)} leaves the annihilator span")
            if v.coeffs:
                clean[(i, j)] = v
        self.poset = poset
        self.field = field
        self.entries = clean


# -- predicates ---------------------------------------------------------
#
# A mixed monomial like (a .1 b) .2 c vanishes on a basis triple unless
# the inner factor is an entry of the inner table, so each monomial is
# evaluated support-first: walk the inner table, follow the outer table
# through an index on the shared key, and collect the nonzero values
# keyed by basis triple. Two monomials agree everywhere iff the collected
# maps are equal.


def _index_by_first(table):
    by = {}
    for (i, j), v in table.items():
        by.setdefault(i, []).append((j, v))
    return by


def _index_by_second(table):
    by = {}
    for (i, j), v in table.items():
        by.setdefault(j, []).append((i, v))
    return by


def _outer_right(field, outer_by_first, inner_table):
    """Nonzero values of outer(inner(e_p, e_q), e_r) keyed by (p, q, r)."""
    add, fmul, zero = field.add, field.mul, field.zero
    out = {}
    for (p, q), v in inner_table.items():
        for s, c in v.coeffs.items():
            for r, w in outer_by_first.get(s, ()):
                key = (p, q, r)
                acc = out.get(key)
                if acc is None:
                    acc = out[key] = {}
                for t, d in w.coeffs.items():
                    u = add(acc.get(t, zero), fmul(c, d))
                    if u:
                        acc[t] = u
                    else:
                        acc.pop(t, None)
    return {k: v for k, v in out.items() if v}


def _outer_left(field, outer_by_second, inner_table):
    """Nonzero values of outer(e_p, inner(e_q, e_r)) keyed by (p, q, r)."""
    add, fmul, zero = field.add, field.mul, field.zero
    out = {}
    for (q, r), v in inner_table.items():
        for s, c in v.coeffs.items():
            for p, w in outer_by_second.get(s, ()):
                key = (p, q, r)
                acc = out.get(key)
                if acc is None:
                    acc = out[key] = {}
                for t, d in w.coeffs.items():
                    u = add(acc.get(t, zero), fmul(c, d))
                    if u:
                        acc[t] = u
                    else:
                        acc.pop(t, None)
    return {k: v for k, v in out.items() if v}


def is_associative(product):
    """(a*b)*c == a*(b*c) on all basis triples."""
    F, T = product.field, product.table
    left = _outer_right(F, _index_by_first(T), T)
    right = _outer_left(F, _index_by_second(T), T)
    return left == right


def _four_monomials(b1, b2):
    """The four mixed monomial maps on basis triples:
    (a.1 b).2 c, (a.2 b).1 c, a.1 (b.2 c), a.2 (b.1 c)."""
    f = b1.field
    t1, t2 = b1.table, b2.table
    m1 = _outer_right(f, _index_by_first(t2), t1)
    m2 = _outer_right(f, _index_by_first(t1), t2)
    m3 = _outer_left(f, _index_by_second(t1), t2)
    m4 = _outer_left(f, _index_by_second(t2), t1)
    return m1, m2, m3, m4


def is_sigma_matching(b1, b2, sigma):
    """The two matching identities for sigma in {'id', '(12)'}."""
    _same_context(b1, b2)
    if sigma not in ("id", "(12)"):
        raise ValueError(f"sigma must be 'id' or '(12)', got {sigma!r}")
    m1, m2, m3, m4 = _four_monomials(b1, b2)
    if sigma == "(12)":
        return m1 == m4 and m2 == m3
    return m1 == m3 and m2 == m4


def is_interchangeable(b1, b2):
    """Products can be swapped inside each bracketing."""
    _same_context(b1, b2)
    m1, m2, m3, m4 = _four_monomials(b1, b2)
    return m1 == m2 and m3 == m4


def is_totally_compatible_with(b1, b2):
    """All four mixed monomials agree on every basis triple."""
    _same_context(b1, b2)
    m1, m2, m3, m4 = _four_monomials(b1, b2)
    return m1 == m2 and m2 == m3 and m3 == m4


def are_mutually_annihilating(b1, b2):
    """All four mixed monomials vanish identically."""
    _same_context(b1, b2)
    m1, m2, m3, m4 = _four_monomials(b1, b2)
    return not (m1 or m2 or m3 or m4)


def is_annihilator_valued(product):
    """Values land in the annihilator span and entries keyed by a pair of
    interval length > 1 vanish; together these say the product and the
    incidence product mutually annihilate."""
    ann = _ann_indices(product.poset)
    jj = _jj_indices(product.poset)
    for (i, j), v in product.table.items():
        if i in jj or j in jj:
            return False
        if any(w not in ann for w in v.coeffs):
            return False
    return True


# -- canonical constructors ----------------------------------------------


@lru_cache(maxsize=256)
def dot_product(poset, field):
    """The incidence product as a structure-constant table."""
    table = {
        key: JElement(poset, field, {k: field.one}, _norm=False)
        for key, k in poset.compose.items()
    }
    return BilinearProduct(poset, field, table, _norm=False)


def from_mu(poset, field, mu):
    """The annihilator-valued product determined by corner data: the
    table is exactly the corner map on length-1 keys, zero elsewhere."""
    if not isinstance(mu, MuTable):
        mu = MuTable(poset, field, dict(mu))
    return BilinearProduct(poset, field, dict(mu.entries), _norm=False)


def star_phi(poset, field, phi):
    """The product a, b -> phi(a . b) of a centroid element phi."""
    if not is_centroid(poset, field, phi):
        raise NotCentroid("map does not satisfy the centroid identities")
    table = {}
    for key, k in poset.compose.items():
        col = phi.cols[k]
        if col:
            table[key] = JElement(poset, field, dict(col), _norm=False)
    return BilinearProduct(poset, field, table, _norm=False)


@lru_cache(maxsize=2048)
def star_approx_class(poset, field, class_id):
    """The product with e_xy * e_yv = e_xv exactly when the triple
    (x, y, v) lies in the given triple class, zero otherwise."""
    ap = poset.approx_partition
    if class_id not in ap.members:
        raise BadLabel(f"no triple class with id {class_id}")
    pi = poset.pair_index
    table = {}
    for t_idx in ap.members[class_id]:
        t = poset.triples[t_idx]
        i, j, k = pi[(t.x, t.y)], pi[(t.y, t.z)], pi[(t.x, t.z)]
        table[(i, j)] = JElement(poset, field, {k: field.one}, _norm=False)
    return BilinearProduct(poset, field, table, _norm=False)


def star_sim_class(poset, field, class_id):
    """The product with e_xy * e_yv = e_xv exactly when the outer pair
    (x, v) lies in the given pair class."""
    sim = poset.sim_partition
    if class_id not in sim.members:
        raise BadLabel(f"no pair class with id {class_id}")
    table = {}
    for key, k in poset.compose.items():
        if sim.class_of[k] == class_id:
            table[key] = JElement(poset, field, {k: field.one}, _norm=False)
    return BilinearProduct(poset, field, table, _norm=False)


def mutation(poset, field, x):
    """The product a, b -> a . x . b for a fixed element x."""
    if x.poset != poset or x.field != field:
        raise MixedContext("element belongs to a different poset or field")
    comp = poset.compose
    m = len(poset.pairs)
    table = {}
    for i in range(m):
        # e_i . x, sparse: source s contributes at compose(i, s)
        left = {}
        for s, c in x.coeffs.items():
            t = comp.get((i, s))
            if t is not None:
                left[t] = c
        if not left:
            continue
        for j in range(m):
            out = {}
            add, fmul, zero = field.add, field.mul, field.zero
            for t, c in left.items():
                u = comp.get((t, j))
                if u is not None:
                    s = add(out.get(u, zero), c)
                    if s:
                        out[u] = s
                    else:
                        out.pop(u, None)
            if out:
                table[(i, j)] = JElement(poset, field, out, _norm=False)
    return BilinearProduct(poset, field, table, _norm=False)


def _is_multiplicative(phi, anti):
    """Check phi(e_i . e_j) = phi(e_i) . phi(e_j) (arguments swapped on
    the right when anti) on all basis pairs."""
    poset, F = phi.poset, phi.field
    comp = poset.compose
    cols = phi.cols
    m = len(poset.pairs)
    add, fmul, zero = F.add, F.mul, F.zero
    for i in range(m):
        for j in range(m):
            k = comp.get((i, j))
            lhs = cols[k] if k is not None else {}
            a, b = (cols[j], cols[i]) if anti else (cols[i], cols[j])
            rhs = {}
            for s, c in a.items():
                for t, d in b.items():
                    u = comp.get((s, t))
                    if u is None:
                        continue
                    v = add(rhs.get(u, zero), fmul(c, d))
                    if v:
                        rhs[u] = v
                    else:
                        rhs.pop(u, None)
            if lhs != rhs:
                return False
    return True


def transport(product, phi, anti=False):
    """Carry the product along an automorphism of the radical, or along
    an antiautomorphism with the arguments swapped. The map is validated,
    not trusted."""
    poset, field = product.poset, product.field
    if phi.poset != poset or phi.field != field:
        raise MixedContext("map belongs to a different poset or field")
    inv = phi.inverse()
    if not _is_multiplicative(phi, anti):
        if anti:
            raise NotAntiautomorphism("map does not reverse the incidence product")
        raise NotAutomorphism("map does not preserve the incidence product")
    m = len(poset.pairs)
    add, fmul, zero = field.add, field.mul, field.zero
    table = {}
    for i in range(m):
        for j in range(m):
            first, second = (inv.cols[j], inv.cols[i]) if anti else (inv.cols[i], inv.cols[j])
            inner = {}
            for s, c in first.items():
                for t, d in second.items():
                    v = product.table.get((s, t))
                    if v is None:
                        continue
                    cd = fmul(c, d)
                    for w, e in v.coeffs.items():
                        u = add(inner.get(w, zero), fmul(cd, e))
                        if u:
                            inner[w] = u
                        else:
                            inner.pop(w, None)
            if not inner:
                continue
            out = {}
            for w, c in inner.items():
                for u, d in phi.cols[w].items():
                    v = add(out.get(u, zero), fmul(c, d))
                    if v:
                        out[u] = v
                    else:
                        out.pop(u, None)
            if out:
                table[(i, j)] = JElement(poset, field, out, _norm=False)
    return BilinearProduct(poset, field, table, _norm=False)


def diagonal_automorphism(poset, field, weights):
    """The automorphism e_xy -> g(y)/g(x) e_xy for nonzero per-element
    weights g; the ratio is multiplicative along chains by construction."""
    from .radical import LinearEndo

    for x in range(1, poset.n + 1):
        if x not in weights or not weights[x]:
            raise BadLabel(f"need a nonzero weight for element {x}")
    cols = []
    for p in poset.pairs:
        tau = field.div(weights[p.y], weights[p.x])
        cols.append({p.index: tau})
    return LinearEndo(poset, field, cols, _norm=False)
