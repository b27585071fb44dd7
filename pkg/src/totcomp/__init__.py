"""Toolkit for totally compatible bilinear structures on the radical of
the incidence algebra of a finite poset: exact arithmetic over Q and
GF(p), the chain-generated equivalence partitions, the canonical product
constructions, decomposition and properness certificates, and an
independent linear-algebra oracle for every closed form."""

from .field import GF, QQ, PrimeField, Rationals, field_from_json, field_to_json
from .poset import Poset, StrictPair, StrictTriple
from .radical import (
    ChainConstantMap,
    JElement,
    LinearEndo,
    ann_basis,
    annihilator_valued_map_basis,
    centroid_basis,
    is_centroid,
    jj_basis,
    mul,
    mul_basis,
    phi_sigma,
)
from .structures import (
    BilinearProduct,
    MuTable,
    are_mutually_annihilating,
    diagonal_automorphism,
    dot_product,
    from_mu,
    is_annihilator_valued,
    is_associative,
    is_interchangeable,
    is_sigma_matching,
    is_totally_compatible_with,
    mutation,
    star_approx_class,
    star_phi,
    star_sim_class,
    transport,
)
from .classify import (
    Decomposition,
    NonPropernessWitness,
    PropernessCertificate,
    all_ann_valued,
    all_proper,
    decide_proper,
    decompose,
    pinned_classes,
)
from .oracle import (
    LinearSystem,
    Subspace,
    nullspace,
    totcomp_linear_space,
    verify_centroid_span,
    verify_radical_closed_forms,
    verify_totcomp_span,
)
from .search import PosetSurveyRow, canonical_poset, enumerate_posets, survey

__all__ = [name for name in dir() if not name.startswith("_")]
