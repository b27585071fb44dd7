"""Enumeration of small posets and the survey of poset-level predicates.

Labeled enumeration goes through naturally labeled orders (strict
relations contained in the numeric order) expanded by all relabelings;
deduplication up to isomorphism uses a minimum-encoding canonical form
with invariant-based pruning of the candidate relabelings.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from itertools import permutations, product as iproduct

from .classify import all_ann_valued, all_proper
from .errors import SelfCheckFailed, TooLarge
from .field import GF
from .poset import Poset

_MAX_N = 7


def _natural_orders(n):
    """All strict orders contained in the numeric order on 1..n, built by
    choosing a down-closed predecessor set for each element in turn."""
    if n == 0:
        return [frozenset()]
    out = []

    def grow(j, below):
        # below[v] = frozenset of elements strictly under v so far
        if j > n:
            rel = frozenset((u, v) for v in range(1, n + 1) for u in below[v])
            out.append(rel)
            return
        candidates = list(range(1, j))
        for mask in range(1 << len(candidates)):
            chosen = {candidates[k] for k in range(len(candidates)) if mask >> k & 1}
            if any(not below[v] <= chosen for v in chosen):
                continue  # not down-closed
            below2 = dict(below)
            below2[j] = frozenset(chosen)
            grow(j + 1, below2)

    grow(1, {})
    return out


def _relabel_relation(rel, perm):
    return frozenset((perm[u - 1], perm[v - 1]) for (u, v) in rel)


def _encode_relation(n, rel):
    code = 0
    for (u, v) in rel:
        code |= 1 << ((u - 1) * n + (v - 1))
    return code


def _decode_relation(n, code):
    rel = set()
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if code >> ((u - 1) * n + (v - 1)) & 1:
                rel.add((u, v))
    return frozenset(rel)


def _invariant_blocks(n, rel):
    """Group elements by an isomorphism-invariant signature; candidate
    canonical relabelings only permute inside blocks."""
    below = {v: sum(1 for (u, w) in rel if w == v) for v in range(1, n + 1)}
    above = {v: sum(1 for (u, w) in rel if u == v) for v in range(1, n + 1)}
    sig = {}
    for v in range(1, n + 1):
        down_profile = tuple(sorted(below[u] for (u, w) in rel if w == v))
        up_profile = tuple(sorted(above[w] for (u, w) in rel if u == v))
        sig[v] = (below[v], above[v], down_profile, up_profile)
    blocks = {}
    for v in range(1, n + 1):
        blocks.setdefault(sig[v], []).append(v)
    return [blocks[s] for s in sorted(blocks)]


def canonical_encoding_of_relation(n, rel):
    """Minimum encoding over all relabelings that sort the invariant
    signature; an isomorphism invariant of the poset."""
    blocks = _invariant_blocks(n, rel)
    best = None
    slots = []
    start = 1
    for block in blocks:
        slots.append(list(range(start, start + len(block))))
        start += len(block)
    for perms in iproduct(*(permutations(s) for s in slots)):
        perm = [0] * n
        for block, images in zip(blocks, perms):
            for v, img in zip(block, images):
                perm[v - 1] = img
        code = _encode_relation(n, _relabel_relation(rel, perm))
        if best is None or code < best:
            best = code
    return best


def canonical_encoding(poset):
    rel = frozenset((p.x, p.y) for p in poset.pairs)
    return canonical_encoding_of_relation(poset.n, rel)


def canonical_poset(poset):
    """The canonical representative of the isomorphism class."""
    code = canonical_encoding(poset)
    return Poset.from_strict(poset.n, _decode_relation(poset.n, code))


def enumerate_posets(n, up_to_iso=False):
    """All posets on labels 1..n, in ascending encoding order; with
    up_to_iso, one canonical representative per isomorphism class."""
    if n > _MAX_N:
        raise TooLarge(f"refusing to enumerate posets on {n} > {_MAX_N} elements")
    if n < 0:
        raise TooLarge(f"bad element count {n}")
    naturals = _natural_orders(n)
    codes = set()
    if up_to_iso:
        for rel in naturals:
            codes.add(canonical_encoding_of_relation(n, rel))
    else:
        perms = list(permutations(range(1, n + 1)))
        for rel in naturals:
            for perm in perms:
                codes.add(_encode_relation(n, _relabel_relation(rel, perm)))
    for code in sorted(codes):
        yield Poset.from_strict(n, _decode_relation(n, code))


@dataclass
class PosetSurveyRow:
    n: int
    canonical_hasse: tuple
    length: int
    num_sim_classes: int
    num_approx_classes: int
    suff_cond: bool
    all_ann_valued: bool
    all_proper: bool

    def to_json(self):
        return {
            "n": self.n,
            "canonical_hasse": [list(e) for e in self.canonical_hasse],
            "length": self.length,
            "num_sim_classes": self.num_sim_classes,
            "num_approx_classes": self.num_approx_classes,
            "suff_cond": self.suff_cond,
            "all_ann_valued": self.all_ann_valued,
            "all_proper": self.all_proper,
        }


def survey_row(poset, field, rng=None):
    row = PosetSurveyRow(
        n=poset.n,
        canonical_hasse=poset.covers,
        length=poset.length,
        num_sim_classes=poset.sim_partition.num_classes,
        num_approx_classes=poset.approx_partition.num_classes,
        suff_cond=poset.sufficient_condition_holds(),
        all_ann_valued=all_ann_valued(poset),
        all_proper=all_proper(poset, field, rng=rng),
    )
    if row.all_ann_valued and not row.all_proper:
        raise SelfCheckFailed("annihilator-valued-only posets must be all-proper")
    if row.suff_cond and not row.all_proper:
        raise SelfCheckFailed("the sufficient condition must imply all-proper")
    return row


def survey(n_max, field=None, up_to_iso=False, rng=None):
    """One row per poset with 1..n_max elements. GF(2) by default; the
    properness flags do not depend on the field."""
    if n_max > 6:
        raise TooLarge(f"survey limited to n_max <= 6, got {n_max}")
    if field is None:
        field = GF(2)
    rows = []
    for n in range(1, n_max + 1):
        for poset in enumerate_posets(n, up_to_iso=up_to_iso):
            rows.append(survey_row(poset, field, rng=rng))
    return rows


_CSV_COLUMNS = (
    "n",
    "canonical_hasse",
    "length",
    "num_sim_classes",
    "num_approx_classes",
    "suff_cond",
    "all_ann_valued",
    "all_proper",
)


def survey_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.n,
                json.dumps([list(e) for e in row.canonical_hasse], separators=(",", ":")),
                row.length,
                row.num_sim_classes,
                row.num_approx_classes,
                str(row.suff_cond).lower(),
                str(row.all_ann_valued).lower(),
                str(row.all_proper).lower(),
            ]
        )
    return buf.getvalue()


def survey_to_jsonl(rows):
    return "".join(
        json.dumps(row.to_json(), sort_keys=True, separators=(",", ":")) + "\n"
        for row in rows
    )
