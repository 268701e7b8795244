"""Acceptance gate: every stated criterion, checked end to end."""

import json
import os
import time
from importlib import resources

import pytest

from triquad.trisums import sieve, truants, _clear_cache
from triquad.qforms import TernaryForm, genus_classes, is_isometric, \
    reduce_form, enumerate_reduced, same_genus
from triquad.goodvec import b_set
from triquad.escalation import (escalate, summarize, criterion_check,
                                EXCEPTIONS)
from triquad.verify import (load_tables, verify_all,
                            verify_candidate_pipeline, conjecture_sweep)
from helpers import odd_square_bits, multisets
import test_qforms as qf

EXPECTED_COUNTS = {1: (29, {4: 11, 5: 18}, 0),
                   2: (72, {3: 1, 4: 34, 5: 37}, 1),
                   4: (138, {4: 127, 5: 11}, 0),
                   5: (171, {4: 56, 5: 115}, 0),
                   8: (80, {4: 7, 5: 73}, 0)}

_cache = {}


def records(m):
    if m not in _cache:
        t0 = time.time()
        _cache[m] = (escalate(m, 10 ** 5), time.time() - t0)
        _clear_cache()
    return _cache[m]


def golden(m):
    ref = resources.files("triquad.data").joinpath("candidates_m%d.json" % m)
    return json.loads(ref.read_text())


def reports():
    if "reports" not in _cache:
        _cache["reports"] = verify_all(20000)
    return _cache["reports"]


def test_criterion_1_candidate_counts():
    total_time = 0.0
    for m in EXCEPTIONS:
        recs, dt = records(m)
        total_time += dt
        s = summarize(recs)
        proper, by_k, conditional = EXPECTED_COUNTS[m]
        assert s["counts"]["proper"] == proper, m
        assert s["proper_by_arity"] == by_k, m
        assert s["conditional"] == conditional, m
    assert total_time < 600


def expected_emissions(m):
    g = golden(m)
    expected = {}
    seeds = []
    for row in g["rows"]:
        prefix = tuple(row["prefix"])
        for alpha in range(row["lo"], row["hi"] + 1):
            node = prefix + (alpha,)
            label = row["excluded"].get(str(alpha), "proper")
            if label == "rejected":
                if len(node) == 5:
                    seeds.append(node)
            else:
                expected[node] = label
    for star in g["extra_stars"]:
        expected[tuple(star)] = "star"
    for seed in seeds:
        chain = seed
        while len(chain) < 8:
            v = chain[-1]
            for j in range(1, m + 1):
                expected[chain + (v + j,)] = "dagger"
            chain = chain + (v,)
    return expected, g


def test_criterion_2_golden_table_equality():
    for m in EXCEPTIONS:
        recs, _ = records(m)
        expected, g = expected_emissions(m)
        emitted = {r.coeffs: r.classification for r in recs}
        assert emitted == expected, m
        conditional = sorted(r.coeffs for r in recs if r.conditional)
        assert conditional == [tuple(c) for c in g["conditional"]], m


def test_criterion_3_truant_ladder():
    ladder = {(2,): 3, (2, 3): 4, (2, 2, 3): 10, (2, 3, 4): 8,
              (2, 2, 3, 3): 19, (2, 2, 3, 6): 16,
              (1,): 4, (1, 3): 5, (1, 4): 8, (1, 4, 4): 20}
    for coeffs, t2 in ladder.items():
        assert truants(coeffs, 2, 1000).truants[1] == t2, coeffs


def test_criterion_4_conjecture_sweep():
    rep = conjecture_sweep(10 ** 6)
    assert rep["computed"] == [2]
    assert rep["seconds"] < 120


@pytest.mark.skipif(not os.environ.get("TRIQUAD_LONG"),
                    reason="opt-in long run (set TRIQUAD_LONG=1)")
def test_criterion_4_conjecture_sweep_long():
    rep = conjecture_sweep(10 ** 7)
    assert rep["computed"] == [2]


def test_criterion_5_genus_facts():
    assert genus_classes(TernaryForm.diagonal(2, 3, 3)).class_count == 1

    gs = genus_classes(TernaryForm.diagonal(3, 4, 16))
    mate = TernaryForm(((4, 0, 0), (0, 7, 1), (0, 1, 7)))
    assert gs.class_count == 2
    assert any(is_isometric(mate, c) for c in gs.classes)

    gs = genus_classes(TernaryForm.diagonal(2, 3, 4))
    assert any(is_isometric(TernaryForm.diagonal(1, 2, 12), c)
               for c in gs.classes)

    gs = genus_classes(TernaryForm(((1, 0, 0), (0, 4, 2), (0, 2, 9))))
    assert gs.class_count == 3
    assert any(is_isometric(TernaryForm.diagonal(1, 1, 32), c)
               for c in gs.classes)


def test_criterion_6_bad_vector_data():
    f = TernaryForm.diagonal(2, 3, 4)
    g = TernaryForm.diagonal(1, 2, 12)
    assert b_set(f, g, 5, 1).members == ((1, 0, 0), (4, 0, 0))
    assert b_set(f, g, 5, 4).members == ((2, 0, 0), (3, 0, 0))

    by_check = {(r["case_id"], r["check"]): r for r in reports()}
    big = by_check[("m4-1-2-11-a4-15", "b-size-d48-a2")]
    assert big["expected"] == 384 and big["status"] == "pass"
    mid = by_check[("m4-1-2-6-a4-10-20-40-45", "b-size-d28-a1")]
    assert mid["expected"] == 16 and mid["status"] == "pass"
    for r in reports():
        if r["check"].startswith("b-size"):
            assert r["status"] == "pass", r


def test_criterion_7_transfer_certificates_empirical():
    saw_transfer = False
    for r in reports():
        if r["check"].startswith(("good-transfer", "pme-transfer",
                                  "t-certificate", "t-determinant",
                                  "t-eigenvector", "t-eigenvalue",
                                  "sufficient-condition", "class-number",
                                  "genus-mates", "aux-")):
            saw_transfer = True
            assert r["status"] == "pass", r
    assert saw_transfer


def test_criterion_8_offset_schemes():
    scheme_reports = [r for r in reports() if r["check"] == "offset-scheme"]
    assert len(scheme_reports) == 7
    for r in scheme_reports:
        assert r["status"] == "pass", r
    fams = [r for r in reports() if r["check"] == "identity-family"]
    assert len(fams) == 4
    for r in fams:
        assert r["status"] == "pass", r


def test_criterion_9_parity_equivalence_exhaustive():
    for coeffs in multisets(5, 10):
        total = sum(coeffs)
        bits = odd_square_bits(coeffs, 8 * 200 + total)
        sv = sieve(coeffs, 200)
        for n in range(201):
            direct = bool(bits >> (8 * n + total) & 1)
            assert sv.represents(n) == direct, (coeffs, n)
    _clear_cache()


def test_criterion_9_sieve_oracle_agreement():
    import test_trisums
    test_trisums.test_sieve_against_brute_force()


def test_criterion_9_reduction_round_trips():
    qf.test_reduce_round_trips()


def test_criterion_9_genus_partition():
    forms = enumerate_reduced(192)
    rep_map = {}
    for f in forms:
        r, _ = reduce_form(f)
        rep_map[f] = r.gram
    for f in forms:
        for g in forms:
            if rep_map[f] == rep_map[g]:
                assert same_genus(f, g)


def test_pipeline_criterion_agreement():
    total_proper = 0
    for m in EXCEPTIONS:
        recs, _ = records(m)
        for r in recs:
            pipeline = verify_candidate_pipeline(r.coeffs, m, 10 ** 4)
            passes = pipeline["status"] == "pass"
            assert criterion_check(r.coeffs, m, 10 ** 4) == passes, r
            if r.classification == "proper":
                total_proper += 1
                assert passes, r
        _clear_cache()
    assert total_proper == 490
