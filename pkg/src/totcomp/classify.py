"""Classification of totally compatible products: decompose any such
product into a per-triple-class combination plus an annihilator-valued
structure, decide properness with a certificate or an explicit witness,
and the two poset-level predicates (all structures annihilator-valued,
all structures proper).

Pinning analysis. Call a triple (x, y, z) LONG when one of its legs has
interval length > 1, and EXPOSED when it is not long but its outer pair
(x, z) is not in the annihilator. A triple class containing a long or an
exposed triple is PINNED: subtracting a diagonal product with value s on
the class's pair class leaves, on that class, entries that are either
keyed by a long pair (must vanish) or valued outside the annihilator
span (must vanish), so s is forced to equal the class coefficient.
Unpinned classes contribute annihilator-valued products and impose
nothing. The analysis is a derived criterion, so every certificate is
re-verified directly before being returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    InternalInconsistency,
    NotTotallyCompatible,
    SelfCheckFailed,
    VerificationFailed,
)
from .field import GF
from .radical import ChainConstantMap, _ann_indices, phi_sigma
from .sampling import DEFAULT_SEED, random_totcomp_structure
from .structures import (
    BilinearProduct,
    dot_product,
    is_annihilator_valued,
    is_associative,
    is_totally_compatible_with,
    star_approx_class,
    star_phi,
)


@dataclass
class Decomposition:
    """Per-triple-class coefficients plus an annihilator-valued structure
    whose sum reconstructs the input exactly."""

    alpha: dict
    bullet: BilinearProduct

    def reconstruct(self, poset, field):
        total = self.bullet
        for cid in sorted(self.alpha):
            c = self.alpha[cid]
            if c:
                total = total + star_approx_class(poset, field, cid).scale(c)
        return total


@dataclass
class PropernessCertificate:
    """A chain-constant map and an annihilator-valued structure with
    input = (diagonal product of sigma) + bullet."""

    sigma: ChainConstantMap
    bullet: BilinearProduct


@dataclass
class NonPropernessWitness:
    """Two pinned triples over one pair class forcing different values."""

    sim_class: int
    triple1: object
    triple2: object
    alpha1: object
    alpha2: object


def decompose(poset, field, product):
    """Split a totally compatible structure into class coefficients and
    an annihilator-valued structure. The coefficient of a class is read
    off the outer-pair coordinate of the product on any of its triples
    and must agree across the class."""
    if product.poset != poset or product.field != field:
        raise NotTotallyCompatible("product belongs to a different poset or field")
    if not is_associative(product):
        raise NotTotallyCompatible("product is not associative")
    if not is_totally_compatible_with(dot_product(poset, field), product):
        raise NotTotallyCompatible("product is not totally compatible with the incidence product")
    ap = poset.approx_partition
    pi = poset.pair_index
    alpha = {}
    for cid in ap.class_ids:
        val = None
        for t_idx in ap.members[cid]:
            t = poset.triples[t_idx]
            entry = product.table.get((pi[(t.x, t.y)], pi[(t.y, t.z)]))
            c = entry.coeffs.get(pi[(t.x, t.z)], field.zero) if entry else field.zero
            if val is None:
                val = c
            elif val != c:
                raise InternalInconsistency(
                    f"coefficient varies inside triple class {cid}: {val} vs {c}"
                )
        alpha[cid] = val
    combination = BilinearProduct.zero(poset, field)
    for cid in ap.class_ids:
        if alpha[cid]:
            combination = combination + star_approx_class(poset, field, cid).scale(alpha[cid])
    bullet = product - combination
    if not is_annihilator_valued(bullet):
        raise InternalInconsistency("remainder is not annihilator-valued")
    if not is_associative(bullet):
        raise InternalInconsistency("remainder is not associative")
    if bullet + combination != product:
        raise InternalInconsistency("reconstruction is not exact")
    return Decomposition(alpha=alpha, bullet=bullet)


def pinned_classes(poset):
    """Triple classes whose coefficient is forced, with the first long or
    exposed triple of each as witness. Field-independent."""
    ap = poset.approx_partition
    ann = _ann_indices(poset)
    pi = poset.pair_index
    out = {}
    for cid in ap.class_ids:
        for t_idx in ap.members[cid]:
            t = poset.triples[t_idx]
            long = poset._ilen(t.x, t.y) > 1 or poset._ilen(t.y, t.z) > 1
            if long or pi[(t.x, t.z)] not in ann:
                out[cid] = t
                break
    return out


def decide_proper(poset, field, product):
    """Return a properness certificate or a witness that none exists.

    Pinned classes force the chain-constant map on their pair classes; a
    conflict between two pinned classes over one pair class is returned
    as a witness. Otherwise the certificate is built with forced values
    (zero on unconstrained classes) and verified directly: the remainder
    must be an annihilator-valued structure."""
    dec = decompose(poset, field, product)
    ap = poset.approx_partition
    pinned = pinned_classes(poset)
    forced = {}
    for cid in sorted(pinned):
        d = ap.proj[cid]
        v = dec.alpha[cid]
        if d in forced:
            v0, t0 = forced[d]
            if v0 != v:
                return NonPropernessWitness(
                    sim_class=d, triple1=t0, triple2=pinned[cid], alpha1=v0, alpha2=v
                )
        else:
            forced[d] = (v, pinned[cid])
    values = {
        d: (forced[d][0] if d in forced else field.zero)
        for d in poset.sim_partition.class_ids
    }
    sigma = ChainConstantMap(poset, field, values)
    bullet = product - star_phi(poset, field, phi_sigma(poset, field, sigma))
    if not is_annihilator_valued(bullet) or not is_associative(bullet):
        raise VerificationFailed("pinning analysis produced an invalid certificate")
    return PropernessCertificate(sigma=sigma, bullet=bullet)


def all_ann_valued(poset):
    """Whether every totally compatible structure on this poset's radical
    is annihilator-valued; holds exactly when the poset length is at most
    2. Self-checked against the incidence product and the per-class
    products over GF(2)."""
    answer = poset.length <= 2
    field = GF(2)
    dot = dot_product(poset, field)
    if answer:
        if not is_annihilator_valued(dot):
            raise SelfCheckFailed("incidence product should be annihilator-valued")
        for cid in poset.approx_partition.class_ids:
            if not is_annihilator_valued(star_approx_class(poset, field, cid)):
                raise SelfCheckFailed(f"class product {cid} should be annihilator-valued")
    else:
        if is_annihilator_valued(dot):
            raise SelfCheckFailed("incidence product should not be annihilator-valued")
    return answer


def all_proper(poset, field, rng=None, samples=20):
    """Whether every totally compatible structure on this poset's radical
    is proper: true iff no pair class carries two pinned triple classes.
    Self-checked by sampling when true and by exhibiting a witness when
    false."""
    if rng is None:
        rng = random.Random(DEFAULT_SEED)
    ap = poset.approx_partition
    pinned = pinned_classes(poset)
    fibers = {}
    for cid in sorted(pinned):
        fibers.setdefault(ap.proj[cid], []).append(cid)
    conflicted = {d: cids for d, cids in fibers.items() if len(cids) >= 2}
    answer = not conflicted
    if answer:
        for _ in range(samples):
            _, _, product = random_totcomp_structure(poset, field, rng)
            if not isinstance(decide_proper(poset, field, product), PropernessCertificate):
                raise SelfCheckFailed("sampled structure unexpectedly not proper")
    else:
        for d in sorted(conflicted):
            probe = star_approx_class(poset, field, conflicted[d][0])
            if not isinstance(decide_proper(poset, field, probe), NonPropernessWitness):
                raise SelfCheckFailed(f"expected a witness over pair class {d}")
    return answer


# -- serialization --------------------------------------------------------


def decomposition_to_json(poset, field, dec):
    fmt = field.format
    alpha = []
    for cid in sorted(dec.alpha):
        t = poset.triples[cid]
        alpha.append({"class_rep": [t.x, t.y, t.z], "coeff": fmt(dec.alpha[cid])})
    return {"alpha": alpha, "bullet": dec.bullet.to_json()}


def certificate_to_json(poset, field, cert):
    fmt = field.format
    sigma = []
    for d in sorted(cert.sigma.values):
        p = poset.pairs[d]
        sigma.append({"class_rep": [p.x, p.y], "coeff": fmt(cert.sigma.values[d])})
    return {"sigma": sigma, "bullet": cert.bullet.to_json()}


def witness_to_json(poset, field, wit):
    fmt = field.format
    p = poset.pairs[wit.sim_class]
    return {
        "sim_class_rep": [p.x, p.y],
        "triple1": [wit.triple1.x, wit.triple1.y, wit.triple1.z],
        "triple2": [wit.triple2.x, wit.triple2.y, wit.triple2.z],
        "alpha1": fmt(wit.alpha1),
        "alpha2": fmt(wit.alpha2),
    }
