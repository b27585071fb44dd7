"""Seeded random generators for elements, corner maps, products and
automorphisms; used by the self-checks and the test suites. Everything
takes an explicit random.Random so runs are reproducible."""

from __future__ import annotations

from .radical import JElement, _ann_indices, _jj_indices
from .structures import (
    BilinearProduct,
    MuTable,
    diagonal_automorphism,
    from_mu,
    star_approx_class,
)

DEFAULT_SEED = 574203


def random_j_element(poset, field, rng, support=None, nonzero=False):
    if support is None:
        support = range(len(poset.pairs))
    coeffs = {i: field.sample(rng) for i in support}
    elt = JElement(poset, field, coeffs)
    if nonzero and elt.is_zero() and len(poset.pairs):
        i = rng.choice(list(support))
        return JElement(poset, field, {i: field.sample_nonzero(rng)})
    return elt


def random_mu_table(poset, field, rng, density=0.5):
    """Random corner data for an annihilator-valued product. Keys whose
    pair itself lies in the annihilator are skipped, which keeps the
    resulting product associative on every poset."""
    ann = _ann_indices(poset)
    jj = _jj_indices(poset)
    ann_support = sorted(ann)
    keys = [p.index for p in poset.pairs if p.index not in jj and p.index not in ann]
    entries = {}
    for i in keys:
        for j in keys:
            if rng.random() >= density:
                continue
            v = random_j_element(poset, field, rng, support=ann_support)
            if not v.is_zero():
                entries[(i, j)] = v
    return MuTable(poset, field, entries)


def random_ann_valued_structure(poset, field, rng, density=0.5):
    return from_mu(poset, field, random_mu_table(poset, field, rng, density))


def random_totcomp_structure(poset, field, rng):
    """A random product of the decomposable shape: an annihilator-valued
    structure plus a per-triple-class combination. Returns the chosen
    class coefficients, the annihilator-valued part, and their sum."""
    bullet = random_ann_valued_structure(poset, field, rng)
    alpha = {cid: field.sample(rng) for cid in poset.approx_partition.class_ids}
    total = bullet
    for cid in sorted(alpha):
        if alpha[cid]:
            total = total + star_approx_class(poset, field, cid).scale(alpha[cid])
    return alpha, bullet, total


def random_chain_constant_map(poset, field, rng):
    from .radical import ChainConstantMap

    values = {d: field.sample(rng) for d in poset.sim_partition.class_ids}
    return ChainConstantMap(poset, field, values)


def random_centroid_element(poset, field, rng, density=0.3):
    """A random centroid element: diagonal chain-constant part plus a
    random combination of annihilator-valued elementary maps."""
    from .radical import annihilator_valued_map_basis, phi_sigma

    sigma = random_chain_constant_map(poset, field, rng)
    phi = phi_sigma(poset, field, sigma)
    for eta in annihilator_valued_map_basis(poset, field):
        if rng.random() < density:
            c = field.sample(rng)
            if c:
                phi = phi + eta.scale(c)
    return phi


def random_diagonal_automorphism(poset, field, rng):
    weights = {x: field.sample_nonzero(rng) for x in range(1, poset.n + 1)}
    return diagonal_automorphism(poset, field, weights)


def random_bilinear_product(poset, field, rng, density=0.2):
    """An arbitrary sparse product table, with no structure imposed."""
    m = len(poset.pairs)
    table = {}
    for i in range(m):
        for j in range(m):
            if rng.random() >= density:
                continue
            v = random_j_element(poset, field, rng)
            if not v.is_zero():
                table[(i, j)] = v
    return BilinearProduct(poset, field, table, _norm=False)
