import random

import pytest

from totcomp.errors import (
    BadMu,
    DuplicateEntry,
    MixedContext,
    NotAutomorphism,
    NotCentroid,
    Singular,
)
from totcomp.field import GF, QQ
from totcomp.poset import Poset
from totcomp.radical import (
    ChainConstantMap,
    JElement,
    LinearEndo,
    _ann_indices,
    ann_basis,
    annihilator_valued_map_basis,
    mul,
    phi_sigma,
)
from totcomp.sampling import (
    random_ann_valued_structure,
    random_bilinear_product,
    random_centroid_element,
    random_diagonal_automorphism,
    random_j_element,
    random_totcomp_structure,
)
from totcomp.structures import (
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

SEED = 20250810


def basis_elt(P, F, x, y):
    return JElement.basis(P, F, x, y)


def single_entry(P, F, a, b, value_pairs):
    pi = P.pair_index
    val = JElement(P, F, {pi[w]: F.one for w in value_pairs})
    return BilinearProduct(P, F, {(pi[a], pi[b]): val})


# -- apply and the incidence product -----------------------------------------


def test_dot_product_is_mul(y6):
    F = GF(3)
    dot = dot_product(y6, F)
    rng = random.Random(SEED)
    for _ in range(30):
        a = random_j_element(y6, F, rng)
        b = random_j_element(y6, F, rng)
        assert dot.apply(a, b) == mul(a, b)


def test_apply_zero(y6):
    F = QQ
    dot = dot_product(y6, F)
    z = JElement.zero(y6, F)
    assert dot.apply(z, basis_elt(y6, F, 1, 2)).is_zero()


def test_apply_matches_dense_double_loop(y5):
    F = GF(3)
    rng = random.Random(SEED + 1)
    m = len(y5.pairs)
    for _ in range(20):
        B = random_bilinear_product(y5, F, rng)
        a = random_j_element(y5, F, rng)
        b = random_j_element(y5, F, rng)
        out = {}
        for i in range(m):
            for j in range(m):
                ca = a.coeffs.get(i, F.zero)
                cb = b.coeffs.get(j, F.zero)
                if not ca or not cb:
                    continue
                v = B.table.get((i, j))
                if v is None:
                    continue
                for w, d in v.coeffs.items():
                    out[w] = F.add(out.get(w, F.zero), F.mul(F.mul(ca, cb), d))
        assert B.apply(a, b) == JElement(y5, F, out)


def test_dot_product_chain3(chain3):
    F = QQ
    dot = dot_product(chain3, F)
    pi = chain3.pair_index
    assert set(dot.table) == {(pi[(1, 2)], pi[(2, 3)])}
    assert is_associative(dot)
    assert is_totally_compatible_with(dot, dot)


# -- predicates ----------------------------------------------------------------


def test_mutation_is_id_matching(y6):
    F = GF(5)
    rng = random.Random(SEED + 2)
    dot = dot_product(y6, F)
    for _ in range(10):
        x = random_j_element(y6, F, rng)
        B = mutation(y6, F, x)
        assert is_sigma_matching(dot, B, "id")


def test_dot_is_12_matching_with_itself(y6):
    F = QQ
    dot = dot_product(y6, F)
    assert is_sigma_matching(dot, dot, "(12)")


def test_sigma_matching_counterexample(chain3):
    """A product that fails both matching identities against the
    incidence product: route e_12 * e_23 back to e_12."""
    F = QQ
    dot = dot_product(chain3, F)
    bad = single_entry(chain3, F, (1, 2), (2, 3), [(1, 2)])
    assert not is_sigma_matching(dot, bad, "id")
    assert not is_sigma_matching(dot, bad, "(12)")
    assert not is_interchangeable(dot, bad)
    assert not is_totally_compatible_with(dot, bad)


def test_single_ann_entry_is_totally_compatible(chain3):
    """The table with lone entry ((1,2),(1,2)) -> e_13 is annihilator
    valued, hence passes every compatibility predicate."""
    F = QQ
    dot = dot_product(chain3, F)
    B = single_entry(chain3, F, (1, 2), (1, 2), [(1, 3)])
    assert is_annihilator_valued(B)
    assert is_sigma_matching(dot, B, "id")
    assert is_sigma_matching(dot, B, "(12)")
    assert is_totally_compatible_with(dot, B)


def test_interchangeable_examples(y6):
    F = GF(3)
    dot = dot_product(y6, F)
    assert is_interchangeable(dot, dot)
    for cid in y6.approx_partition.class_ids:
        assert is_interchangeable(dot, star_approx_class(y6, F, cid))


def test_totally_compatible_iff_both_matchings(y5):
    F = GF(2)
    dot = dot_product(y5, F)
    rng = random.Random(SEED + 3)
    for _ in range(60):
        B = random_bilinear_product(y5, F, rng, density=0.15)
        both = is_sigma_matching(dot, B, "id") and is_sigma_matching(dot, B, "(12)")
        assert is_totally_compatible_with(dot, B) == both


def test_star_phi_totally_compatible(y5, y6):
    rng = random.Random(SEED + 4)
    for P in (y5, y6):
        for F in (GF(2), QQ):
            dot = dot_product(P, F)
            for _ in range(5):
                phi = random_centroid_element(P, F, rng)
                assert is_totally_compatible_with(dot, star_phi(P, F, phi))


def test_mutually_annihilating_examples(y6, chain4):
    F = GF(3)
    cids = y6.approx_partition.class_ids
    a = star_approx_class(y6, F, cids[0])
    b = star_approx_class(y6, F, cids[1])
    assert are_mutually_annihilating(a, b)
    dot = dot_product(chain4, F)
    assert not are_mutually_annihilating(dot, dot)
    rng = random.Random(SEED + 5)
    phi = random_centroid_element(chain4, F, rng)
    bullet = random_ann_valued_structure(chain4, F, rng)
    assert are_mutually_annihilating(star_phi(chain4, F, phi), bullet)


def test_is_annihilator_valued(y4, chain4):
    F = QQ
    assert is_annihilator_valued(dot_product(y4, F))  # length 2 poset
    assert not is_annihilator_valued(dot_product(chain4, F))  # e_12.e_23 = e_13
    assert is_annihilator_valued(BilinearProduct.zero(chain4, F))


# -- constructors ---------------------------------------------------------------


def test_from_mu_empty_is_zero(y4):
    assert from_mu(y4, QQ, MuTable(y4, QQ, {})).is_zero()


def test_from_mu_recovers_class_product(y4):
    F = QQ
    pi = y4.pair_index
    mu = MuTable(
        y4,
        F,
        {(pi[(1, 2)], pi[(2, 3)]): JElement.basis(y4, F, 1, 3)},
    )
    cid = y4.approx_partition.class_of[y4.triple_index[(1, 2, 3)]]
    assert from_mu(y4, F, mu) == star_approx_class(y4, F, cid)


def test_from_mu_validation(y4, chain4):
    F = QQ
    pi = y4.pair_index
    with pytest.raises(BadMu):
        # value outside the annihilator span
        MuTable(y4, F, {(pi[(1, 2)], pi[(2, 3)]): JElement.basis(y4, F, 2, 3)})
    with pytest.raises(BadMu):
        # key of interval length > 1
        MuTable(y4, F, {(pi[(1, 3)], pi[(1, 2)]): JElement.basis(y4, F, 1, 3)})
    assert is_annihilator_valued(from_mu(y4, F, MuTable(y4, F, {})))


def test_any_mu_associative_when_ann_inside_square(y4):
    # on this poset the annihilator equals the square, so every corner
    # map yields an associative product
    F = GF(3)
    rng = random.Random(SEED + 6)
    pi = y4.pair_index
    ann = sorted(_ann_indices(y4))
    short = [pi[(1, 2)], pi[(2, 3)], pi[(2, 4)]]
    for _ in range(40):
        entries = {}
        for i in short:
            for j in short:
                if rng.random() < 0.5:
                    v = JElement(y4, F, {a: F.sample(rng) for a in ann})
                    if not v.is_zero():
                        entries[(i, j)] = v
        B = from_mu(y4, F, MuTable(y4, F, entries))
        assert is_annihilator_valued(B)
        assert is_associative(B)


def test_star_phi_identity_is_dot(y6):
    F = QQ
    assert star_phi(y6, F, LinearEndo.identity(y6, F)) == dot_product(y6, F)


def test_star_phi_of_phi_sigma(y6):
    F = GF(5)
    rng = random.Random(SEED + 7)
    values = {d: F.sample(rng) for d in y6.sim_partition.class_ids}
    sigma = ChainConstantMap(y6, F, values)
    B = star_phi(y6, F, phi_sigma(y6, F, sigma))
    for (i, j), k in y6.compose.items():
        expected = sigma.at_pair(k)
        got = B.entry(i, j).coeffs.get(k, F.zero)
        assert got == expected


def test_star_phi_of_ann_map_is_zero(y6):
    F = QQ
    for eta in annihilator_valued_map_basis(y6, F):
        assert star_phi(y6, F, eta).is_zero()


def test_star_phi_requires_centroid(y6):
    F = QQ
    src, dst = y6.pair_index[(1, 2)], y6.pair_index[(1, 3)]
    with pytest.raises(NotCentroid):
        star_phi(y6, F, LinearEndo.elementary(y6, F, src, dst))


def test_star_approx_class_y6_table(y6):
    F = QQ
    starC = star_approx_class(y6, F, 0)
    pi = y6.pair_index
    expected = {
        (pi[(1, 2)], pi[(2, 3)]): basis_elt(y6, F, 1, 3),
        (pi[(1, 2)], pi[(2, 5)]): basis_elt(y6, F, 1, 5),
        (pi[(1, 3)], pi[(3, 5)]): basis_elt(y6, F, 1, 5),
        (pi[(2, 3)], pi[(3, 5)]): basis_elt(y6, F, 2, 5),
    }
    assert starC.table == expected
    # products with keys outside the class vanish
    assert starC.entry(pi[(1, 2)], pi[(2, 4)]).is_zero()


def test_star_approx_class_chain3_is_dot(chain3):
    F = QQ
    assert star_approx_class(chain3, F, 0) == dot_product(chain3, F)


def test_star_sim_class_is_fiber_sum(y4, y5, y6, chain4):
    for P in (y4, y5, y6, chain4):
        F = GF(3)
        ap = P.approx_partition
        for d in P.sim_partition.class_ids:
            total = BilinearProduct.zero(P, F)
            for cid in ap.class_ids:
                if ap.proj[cid] == d:
                    total = total + star_approx_class(P, F, cid)
            assert star_sim_class(P, F, d) == total


def test_star_sim_class_single_class_is_dot(y6):
    F = QQ
    d = y6.sim_partition.class_ids[0]
    assert star_sim_class(y6, F, d) == dot_product(y6, F)


def test_mutation_examples(chain4):
    F = QQ
    assert mutation(chain4, F, JElement.zero(chain4, F)).is_zero()
    B = mutation(chain4, F, basis_elt(chain4, F, 2, 3))
    pi = chain4.pair_index
    assert B.table == {(pi[(1, 2)], pi[(3, 4)]): basis_elt(chain4, F, 1, 4)}


# -- transport -------------------------------------------------------------------


def test_transport_identity(y6):
    F = QQ
    dot = dot_product(y6, F)
    assert transport(dot, LinearEndo.identity(y6, F)) == dot


def test_transport_diagonal_fixes_dot(y5, y6):
    rng = random.Random(SEED + 8)
    for P in (y5, y6):
        for F in (QQ, GF(5)):
            dot = dot_product(P, F)
            for _ in range(5):
                phi = random_diagonal_automorphism(P, F, rng)
                assert transport(dot, phi) == dot


def test_transport_requires_automorphism(y6):
    F = QQ
    dot = dot_product(y6, F)
    with pytest.raises(Singular):
        transport(dot, LinearEndo.zero(y6, F))
    # invertible but not multiplicative: swap two unrelated basis pairs
    pi = y6.pair_index
    m = len(y6.pairs)
    cols = [{j: F.one} for j in range(m)]
    i, j = pi[(1, 2)], pi[(1, 3)]
    cols[i], cols[j] = {j: F.one}, {i: F.one}
    with pytest.raises(NotAutomorphism):
        transport(dot, LinearEndo(y6, F, cols))


def test_transport_antiautomorphism_on_chain(chain4):
    """The order-reversing relabeling of a chain induces an
    antiautomorphism e_xy -> e_(5-y)(5-x)."""
    F = QQ
    n = chain4.n
    pi = chain4.pair_index
    cols = [{} for _ in range(len(chain4.pairs))]
    for p in chain4.pairs:
        cols[p.index] = {pi[(n + 1 - p.y, n + 1 - p.x)]: F.one}
    rho = LinearEndo(chain4, F, cols)
    dot = dot_product(chain4, F)
    from totcomp.errors import NotAntiautomorphism

    with pytest.raises(NotAutomorphism):
        transport(dot, rho, anti=False)
    star = transport(dot, rho, anti=True)
    # the transported product is again a totally compatible structure
    assert is_associative(star)
    assert is_totally_compatible_with(dot, star)
    assert star == dot  # reversing a chain turns the product around twice


def test_transport_preserves_structure_kind(y5):
    F = GF(5)
    rng = random.Random(SEED + 9)
    dot = dot_product(y5, F)
    for _ in range(10):
        _, _, B = random_totcomp_structure(y5, F, rng)
        phi = random_diagonal_automorphism(y5, F, rng)
        star = transport(B, phi)
        assert is_associative(star)
        assert is_totally_compatible_with(dot, star)


def test_diagonal_automorphism_is_multiplicative(y6):
    F = GF(7)
    rng = random.Random(SEED + 10)
    phi = random_diagonal_automorphism(y6, F, rng)
    for (i, j), k in y6.compose.items():
        lhs = phi.cols[k]
        a, b = phi.cols[i], phi.cols[j]
        assert lhs == {k: F.mul(a[i], b[j])}


# -- lemma-level properties --------------------------------------------------------


def test_linear_combinations_stay_totally_compatible(y5):
    F = GF(5)
    rng = random.Random(SEED + 11)
    dot = dot_product(y5, F)
    cids = y5.approx_partition.class_ids
    for _ in range(20):
        family = [dot] + [star_approx_class(y5, F, c) for c in cids]
        family.append(random_ann_valued_structure(y5, F, rng))
        combo1 = BilinearProduct.zero(y5, F)
        combo2 = BilinearProduct.zero(y5, F)
        for B in family:
            combo1 = combo1 + B.scale(F.sample(rng))
            combo2 = combo2 + B.scale(F.sample(rng))
        assert is_totally_compatible_with(combo1, combo2)


def test_interchangeable_pushes_zero_products_into_ann(y5, y6):
    """When a product is interchangeable with the incidence product,
    non-composable basis pairs map into the annihilator."""
    rng = random.Random(SEED + 12)
    for P in (y5, y6):
        F = GF(3)
        ann = _ann_indices(P)
        for _ in range(10):
            _, _, B = random_totcomp_structure(P, F, rng)
            assert is_interchangeable(dot_product(P, F), B)
            for (i, j), v in B.table.items():
                if (i, j) not in P.compose:
                    assert set(v.coeffs) <= ann


def test_12_matching_kills_long_noncomposable_entries(y5, y6):
    jj_cache = {}
    rng = random.Random(SEED + 13)
    for P in (y5, y6):
        F = GF(5)
        from totcomp.radical import _jj_indices

        jj = _jj_indices(P)
        for _ in range(10):
            _, _, B = random_totcomp_structure(P, F, rng)
            assert is_sigma_matching(dot_product(P, F), B, "(12)")
            for (i, j), v in B.table.items():
                if (i, j) not in P.compose and (i in jj or j in jj):
                    assert v.is_zero()


def test_composable_entries_live_on_diagonal_plus_ann(y5, y6):
    rng = random.Random(SEED + 14)
    for P in (y5, y6):
        F = GF(3)
        ann = _ann_indices(P)
        from totcomp.radical import _jj_indices

        jj = _jj_indices(P)
        for _ in range(10):
            _, _, B = random_totcomp_structure(P, F, rng)
            for (i, j), k in P.compose.items():
                v = B.entry(i, j)
                off = {w for w in v.coeffs if w != k}
                if i in jj or j in jj:
                    assert not off
                else:
                    assert off <= ann


def test_diagonal_coefficient_constant_on_classes(y5, y6):
    rng = random.Random(SEED + 15)
    for P in (y5, y6):
        F = GF(7)
        ap = P.approx_partition
        pi = P.pair_index
        for _ in range(10):
            _, _, B = random_totcomp_structure(P, F, rng)
            for cid in ap.class_ids:
                seen = set()
                for t_idx in ap.members[cid]:
                    t = P.triples[t_idx]
                    v = B.entry(pi[(t.x, t.y)], pi[(t.y, t.z)])
                    seen.add(v.coeffs.get(pi[(t.x, t.z)], F.zero))
                assert len(seen) == 1


# -- serialization -----------------------------------------------------------------


def test_product_json_round_trip(y6):
    F = GF(3)
    rng = random.Random(SEED + 16)
    for _ in range(10):
        B = random_bilinear_product(y6, F, rng)
        assert BilinearProduct.from_json(y6, F, B.to_json()) == B


def test_product_json_duplicate_rejected(chain3):
    obj = {
        "entries": [
            {"a": [1, 2], "b": [2, 3], "value": [{"pair": [1, 3], "coeff": "1"}]},
            {"a": [1, 2], "b": [2, 3], "value": [{"pair": [1, 3], "coeff": "2"}]},
        ]
    }
    with pytest.raises(DuplicateEntry):
        BilinearProduct.from_json(chain3, QQ, obj)
