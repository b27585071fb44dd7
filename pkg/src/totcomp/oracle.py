"""Independent verification by exact linear algebra.

Every check here re-derives its subject from raw definitions: the
compatibility identities and the centroid identities are assembled as
linear systems in the unknown tensor or matrix entries and solved by
exact sparse Gaussian elimination; the annihilator and the square of the
algebra are computed as a kernel and a product span. The solution spaces
are then compared, as canonical row-echelon subspaces, against the
closed-form spanning families the other modules produce. None of the
closed-form code paths are reused on the oracle side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .classify import decompose
from .errors import SpanMismatch
from .radical import JElement, centroid_basis, _ann_indices, _jj_indices
from .sampling import DEFAULT_SEED
from .structures import BilinearProduct, is_associative, star_approx_class


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^ambient_dim in reduced row echelon form: rows have
    strictly increasing pivots, unit pivot coefficients, and pivot
    columns cleared from all other rows. Equal spans compare equal."""

    field: object
    ambient_dim: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        return not _reduce(self.field, {min(r): r for r in self.basis}, dict(vec))


@dataclass
class LinearSystem:
    field: object
    ncols: int
    rows: list = dc_field(default_factory=list)


def _reduce(field, pivots, row):
    """Fully reduce a sparse row against unit-pivot rows; mutates and
    returns the row (empty when it lies in the row space)."""
    sub, mul = field.sub, field.mul
    while row:
        c = min(row)
        prow = pivots.get(c)
        if prow is None:
            return row
        f = row[c]
        for k, v in prow.items():
            t = sub(row.get(k, field.zero), mul(f, v))
            if t:
                row[k] = t
            else:
                row.pop(k, None)
    return row


def _echelon(field, rows):
    """Reduced row echelon form of a sparse row collection, as a map
    pivot column -> row."""
    inv, mul, sub = field.inv, field.mul, field.sub
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                f = row[c]
                if f != field.one:
                    g = inv(f)
                    row = {k: mul(g, v) for k, v in row.items()}
                pivots[c] = row
                break
            f = row[c]
            for k, v in prow.items():
                t = sub(row.get(k, field.zero), mul(f, v))
                if t:
                    row[k] = t
                else:
                    row.pop(k, None)
    # clear pivot columns upward; higher pivots are already clean
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        for k in [k for k in row if k != c and k in pivots]:
            f = row[k]
            for k2, v in pivots[k].items():
                t = sub(row.get(k2, field.zero), mul(f, v))
                if t:
                    row[k2] = t
                else:
                    row.pop(k2, None)
    return pivots


def _subspace_from_pivots(field, ncols, pivots):
    return Subspace(field, ncols, tuple(pivots[c] for c in sorted(pivots)))


def span_subspace(field, ncols, vectors):
    """Canonical subspace spanned by the given sparse vectors."""
    return _subspace_from_pivots(field, ncols, _echelon(field, vectors))


def nullspace(system):
    """Exact kernel basis of a sparse linear system, canonicalized."""
    field = system.field
    pivots = _echelon(field, system.rows)
    free = [c for c in range(system.ncols) if c not in pivots]
    vecs = {f: {f: field.one} for f in free}
    neg = field.neg
    for c, row in pivots.items():
        for k, v in row.items():
            if k != c:
                vecs[k][c] = neg(v)
    return span_subspace(field, system.ncols, [vecs[f] for f in free])


# -- assembling identity systems -------------------------------------------


def _comp_maps(poset):
    """For each pair index, the compositions it enters: left[p] lists
    (w, u) with u = compose(p, w); right[r] lists (w, u) with
    u = compose(w, r)."""
    m = len(poset.pairs)
    left = [[] for _ in range(m)]
    right = [[] for _ in range(m)]
    for (i, j), k in poset.compose.items():
        left[i].append((j, k))
        right[j].append((i, k))
    return [sorted(l) for l in left], [sorted(r) for r in right]


def _equation_rows(rows_out, mono_a, mono_b):
    """Emit the coordinate rows of mono_a = mono_b; each monomial maps a
    coordinate to a single unknown, so every row has at most two terms.
    Rows are canonicalized (smaller variable positive) for deduplication."""
    for u in mono_a.keys() | mono_b.keys():
        va = mono_a.get(u)
        vb = mono_b.get(u)
        if va == vb:
            continue
        if va is None:
            rows_out.add((vb,))
        elif vb is None:
            rows_out.add((va,))
        else:
            rows_out.add((min(va, vb), max(va, vb)))


def totcomp_linear_space(poset, field):
    """Kernel of the four-monomial identities with the incidence product,
    linear in the unknown table entries T[p][q][w]."""
    m = len(poset.pairs)
    ncols = m * m * m
    if ncols == 0:
        return Subspace(field, 0, ())
    comp = poset.compose
    left, right = _comp_maps(poset)
    rows_set = set()
    mm = m * m
    for p in range(m):
        lp = left[p]
        for q in range(m):
            s = comp.get((p, q))
            base_pq = (p * m + q) * m
            a1_base = (s * m) * m if s is not None else None
            for r in range(m):
                t = comp.get((q, r))
                # (a.b) T c ; (a T b).c ; a.(b T c) ; a T (b.c)
                m1 = {u: a1_base + r * m + u for u in range(m)} if s is not None else {}
                m2 = {u: base_pq + w for (w, u) in right[r]}
                m3 = {u: (q * m + r) * m + w for (w, u) in lp}
                m4 = {u: (p * m + t) * m + u for u in range(m)} if t is not None else {}
                _equation_rows(rows_set, m1, m2)
                _equation_rows(rows_set, m2, m3)
                _equation_rows(rows_set, m3, m4)
    one, neg_one = field.one, field.neg(field.one)
    rows = []
    for row in sorted(rows_set):
        if len(row) == 1:
            rows.append({row[0]: one})
        else:
            rows.append({row[0]: one, row[1]: neg_one})
    return nullspace(LinearSystem(field, ncols, rows))


def _centroid_linear_space(poset, field):
    """Kernel of the centroid identities, linear in the matrix entries
    phi[j][w] (column-major: variable j*m + w)."""
    m = len(poset.pairs)
    ncols = m * m
    if ncols == 0:
        return Subspace(field, 0, ())
    comp = poset.compose
    left, right = _comp_maps(poset)
    rows_set = set()
    for p in range(m):
        lp = left[p]
        for q in range(m):
            s = comp.get((p, q))
            b1 = {u: s * m + u for u in range(m)} if s is not None else {}
            b2 = {u: q * m + w for (w, u) in lp}
            b3 = {u: p * m + w for (w, u) in right[q]}
            _equation_rows(rows_set, b1, b2)
            _equation_rows(rows_set, b2, b3)
    one, neg_one = field.one, field.neg(field.one)
    rows = []
    for row in sorted(rows_set):
        if len(row) == 1:
            rows.append({row[0]: one})
        else:
            rows.append({row[0]: one, row[1]: neg_one})
    return nullspace(LinearSystem(field, ncols, rows))


# -- flattening between products/maps and coordinate vectors ----------------


def flatten_product(product):
    m = len(product.poset.pairs)
    vec = {}
    for (i, j), v in product.table.items():
        base = (i * m + j) * m
        for w, c in v.coeffs.items():
            vec[base + w] = c
    return vec


def product_from_vector(poset, field, vec):
    m = len(poset.pairs)
    grouped = {}
    for var, c in vec.items():
        if not c:
            continue
        w = var % m
        ij = var // m
        grouped.setdefault((ij // m, ij % m), {})[w] = c
    table = {
        key: JElement(poset, field, coeffs, _norm=False) for key, coeffs in grouped.items()
    }
    return BilinearProduct(poset, field, table, _norm=False)


def flatten_endo(endo):
    m = len(endo.poset.pairs)
    vec = {}
    for j, col in enumerate(endo.cols):
        for w, c in col.items():
            vec[j * m + w] = c
    return vec


# -- verification reports ----------------------------------------------------


@dataclass
class Report:
    check: str
    poset: dict
    field: dict
    status: str
    dims: dict
    witness: object = None

    def to_json(self):
        out = {
            "check": self.check,
            "poset": self.poset,
            "field": self.field,
            "status": self.status,
            "dims": self.dims,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _witness_vector(field, a, b):
    """A vector in the symmetric difference of two subspaces."""
    for row in a.basis:
        if not b.contains(row):
            return dict(row)
    for row in b.basis:
        if not a.contains(row):
            return dict(row)
    return None


def _format_witness(field, vec):
    if vec is None:
        return None
    return [[k, field.format(vec[k])] for k in sorted(vec)]


def _mismatch(check, poset, field, dims, a, b):
    vec = _witness_vector(field, a, b)
    raise SpanMismatch(
        f"{check}: computed space and closed-form span differ",
        check=check,
        dims=dims,
        witness=_format_witness(field, vec),
    )


def _elementary_ann_product_vectors(poset, field):
    m = len(poset.pairs)
    jj = _jj_indices(poset)
    ann = sorted(_ann_indices(poset))
    short = [p.index for p in poset.pairs if p.index not in jj]
    return [
        {(i * m + j) * m + a: field.one}
        for i in short
        for j in short
        for a in ann
    ]


def verify_totcomp_span(poset, field, samples=50, rng=None):
    """Solve the compatibility identities from scratch and compare the
    kernel with the span of the elementary annihilator-valued products
    and the per-triple-class products; then sample random kernel
    elements, keep the associative ones, and run them through decompose."""
    m = len(poset.pairs)
    ncols = m * m * m
    kernel = totcomp_linear_space(poset, field)
    ann_vectors = _elementary_ann_product_vectors(poset, field)
    class_ids = poset.approx_partition.class_ids
    class_vectors = [
        flatten_product(star_approx_class(poset, field, cid)) for cid in class_ids
    ]
    span = span_subspace(field, ncols, ann_vectors + class_vectors)
    dims = {"kernel": kernel.dim, "closed_form": span.dim}
    if kernel != span:
        _mismatch("totcomp", poset, field, dims, kernel, span)
    # corollary: kernel splits as annihilator-valued products plus the
    # class products that escape them
    ann_span = span_subspace(field, ncols, ann_vectors)
    outside = sum(1 for v in class_vectors if not ann_span.contains(v))
    dims["ann_products"] = ann_span.dim
    dims["classes_outside_ann"] = outside
    assert kernel.dim == ann_span.dim + outside, "dimension bookkeeping broke"
    if rng is None:
        rng = random.Random(DEFAULT_SEED)
    associative = 0
    for _ in range(samples):
        vec = {}
        add, zero = field.add, field.zero
        for bvec in kernel.basis:
            c = field.sample(rng)
            if not c:
                continue
            for k, v in bvec.items():
                s = add(vec.get(k, zero), field.mul(c, v))
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        candidate = product_from_vector(poset, field, vec)
        if is_associative(candidate):
            associative += 1
            decompose(poset, field, candidate)
    dims["sampled"] = samples
    dims["sampled_associative"] = associative
    return Report("totcomp", poset.to_json(), field.to_json(), "ok", dims)


def verify_centroid_span(poset, field):
    """Solve the centroid identities from scratch and compare with the
    span of the explicit spanning family."""
    m = len(poset.pairs)
    kernel = _centroid_linear_space(poset, field)
    span = span_subspace(
        field, m * m, [flatten_endo(phi) for phi in centroid_basis(poset, field)]
    )
    dims = {"kernel": kernel.dim, "closed_form": span.dim}
    if kernel != span:
        _mismatch("centroid", poset, field, dims, kernel, span)
    return Report("centroid", poset.to_json(), field.to_json(), "ok", dims)


def verify_radical_closed_forms(poset, field):
    """Recompute the annihilator as the kernel of all one-sided
    multiplications and the square as the span of all basis products;
    compare both with their closed forms."""
    m = len(poset.pairs)
    left, right = _comp_maps(poset)
    rows = []
    for p in range(m):
        for (w, _) in left[p]:
            rows.append({w: field.one})
        for (w, _) in right[p]:
            rows.append({w: field.one})
    ann_def = nullspace(LinearSystem(field, m, rows))
    ann_closed = span_subspace(
        field, m, [{a: field.one} for a in sorted(_ann_indices(poset))]
    )
    dims = {"ann": ann_def.dim}
    if ann_def != ann_closed:
        _mismatch("radical", poset, field, dims, ann_def, ann_closed)
    jj_def = span_subspace(
        field, m, [{k: field.one} for k in poset.compose.values()]
    )
    jj_closed = span_subspace(
        field, m, [{j: field.one} for j in sorted(_jj_indices(poset))]
    )
    dims["jj"] = jj_def.dim
    if jj_def != jj_closed:
        _mismatch("radical", poset, field, dims, jj_def, jj_closed)
    return Report("radical", poset.to_json(), field.to_json(), "ok", dims)
