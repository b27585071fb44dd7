import random
from itertools import product as iproduct

import pytest

from totcomp.errors import TooLarge
from totcomp.field import GF, QQ
from totcomp.poset import Poset
from totcomp.search import (
    canonical_encoding,
    canonical_poset,
    enumerate_posets,
    survey,
    survey_to_csv,
    survey_to_jsonl,
)


def brute_force_labeled_count(n):
    """Count partial orders by filtering every relation matrix."""
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    count = 0
    for bits in iproduct([False, True], repeat=len(cells)):
        rel = {c for c, b in zip(cells, bits) if b}
        if any((v, u) in rel for (u, v) in rel):
            continue
        if any(
            w != u and (u, w) not in rel
            for (u, v) in rel
            for (v2, w) in rel
            if v2 == v
        ):
            continue
        count += 1
    return count


def test_labeled_counts_small():
    for n in (1, 2, 3):
        assert sum(1 for _ in enumerate_posets(n)) == brute_force_labeled_count(n)


def test_labeled_counts_frozen():
    # verified against the matrix filter for n <= 4 during development
    assert sum(1 for _ in enumerate_posets(4)) == 219
    assert sum(1 for _ in enumerate_posets(5)) == 4231


def test_iso_counts():
    assert sum(1 for _ in enumerate_posets(2, up_to_iso=True)) == 2
    assert sum(1 for _ in enumerate_posets(3, up_to_iso=True)) == 5
    assert sum(1 for _ in enumerate_posets(4, up_to_iso=True)) == 16
    assert sum(1 for _ in enumerate_posets(5, up_to_iso=True)) == 63


def test_enumeration_guard():
    with pytest.raises(TooLarge):
        list(enumerate_posets(8))


def test_enumeration_is_sorted_and_valid():
    seen = []
    for P in enumerate_posets(4):
        seen.append(P.encode())
        assert P.n == 4
    assert seen == sorted(seen)
    assert len(set(seen)) == len(seen)


def test_canonical_encoding_is_iso_invariant():
    rng = random.Random(20250810)
    for P in list(enumerate_posets(4, up_to_iso=True)):
        code = canonical_encoding(P)
        for _ in range(6):
            perm = list(range(1, P.n + 1))
            rng.shuffle(perm)
            assert canonical_encoding(P.relabel(perm)) == code
        assert canonical_poset(P).encode() == code


def test_canonical_encoding_separates_iso_classes():
    reps = [canonical_encoding(P) for P in enumerate_posets(4, up_to_iso=True)]
    assert len(set(reps)) == len(reps)


def test_survey_rows_and_implications(y4, y5):
    rows = survey(5, up_to_iso=True)
    assert len(rows) == 1 + 2 + 5 + 16 + 63
    for row in rows:
        assert not (row.all_ann_valued and not row.all_proper)
        assert not (row.suff_cond and not row.all_proper)
        if row.length <= 2:
            assert row.all_ann_valued
        else:
            assert not row.all_ann_valued
    by_hasse = {(r.n, r.canonical_hasse): r for r in rows}
    y4row = by_hasse[(4, canonical_poset(y4).covers)]
    assert y4row.all_ann_valued and y4row.all_proper
    y5row = by_hasse[(5, canonical_poset(y5).covers)]
    assert not y5row.suff_cond and y5row.all_proper and not y5row.all_ann_valued


def test_survey_six_element_poset_not_proper(y6):
    from totcomp.search import survey_row

    row = survey_row(canonical_poset(y6), GF(2))
    assert not row.all_proper
    assert row.num_approx_classes == 2


def test_survey_deterministic():
    rows1 = survey(4, up_to_iso=True)
    rows2 = survey(4, up_to_iso=True)
    assert survey_to_csv(rows1) == survey_to_csv(rows2)
    assert survey_to_jsonl(rows1) == survey_to_jsonl(rows2)


def test_survey_rows_relabel_invariant():
    """Relabeled posets produce identical rows apart from the edge list."""
    from totcomp.search import survey_row

    rng = random.Random(7)
    for P in list(enumerate_posets(4, up_to_iso=True))[:8]:
        row = survey_row(P, GF(2))
        perm = list(range(1, P.n + 1))
        rng.shuffle(perm)
        other = survey_row(P.relabel(perm), GF(2))
        assert (
            row.length,
            row.num_sim_classes,
            row.num_approx_classes,
            row.suff_cond,
            row.all_ann_valued,
            row.all_proper,
        ) == (
            other.length,
            other.num_sim_classes,
            other.num_approx_classes,
            other.suff_cond,
            other.all_ann_valued,
            other.all_proper,
        )


def test_survey_field_choice():
    rows_q = survey(3, field=QQ, up_to_iso=True)
    rows_2 = survey(3, up_to_iso=True)
    assert [r.all_proper for r in rows_q] == [r.all_proper for r in rows_2]


def test_survey_guard():
    with pytest.raises(TooLarge):
        survey(7)
