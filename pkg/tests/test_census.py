import io
import json

import pytest

from levispherical import (
    CapExceeded,
    CensusRecord,
    InconsistencyError,
    cross_check,
    from_word,
    left_descents,
    run_census,
)
from conftest import spec_of
from oracles import a_type_census, sym_eval_word


def census_lines(type_str, **kw):
    sink = io.StringIO()
    summary = run_census(spec_of(type_str), sink=sink, **kw)
    return sink.getvalue(), summary


def test_a2_against_brute_force_fixture():
    spec = spec_of("A2")
    records = []
    summary = run_census(spec, records_out=records)
    oracle = a_type_census(2)
    assert summary.pair_count == len(oracle["pairs"]) == 13
    seen = {}
    for rec in records:
        perm = sym_eval_word(2, rec.w_word)
        key = (perm, rec.levi)
        assert key not in seen
        seen[key] = rec.spherical
    assert seen == oracle["pairs"]
    non_spherical = [k for k, ok in oracle["pairs"].items() if not ok]
    assert len(non_spherical) == 1
    perm, levi = non_spherical[0]
    assert perm == (3, 2, 1) and levi == ()


def test_a1_census_every_pair_spherical():
    _, summary = census_lines("A1")
    assert summary.group_order == 2
    assert summary.pair_count == 3  # (e, {}), (s1, {}), (s1, {1})
    assert summary.spherical_count == 3
    assert summary.toric_count == 2


@pytest.mark.parametrize(
    "type_str,pairs,spherical,toric",
    [("A2", 13, 12, 5), ("B2", 17, 12, 5), ("G2", 25, 12, 5)],
)
def test_rank_two_census_totals(type_str, pairs, spherical, toric):
    _, summary = census_lines(type_str)
    assert summary.pair_count == pairs
    assert summary.spherical_count == spherical
    assert summary.toric_count == toric


def test_census_is_byte_deterministic():
    first, _ = census_lines("B3")
    second, _ = census_lines("B3")
    assert first == second
    assert first.count("\n") == len(first.splitlines())


def test_parallel_census_matches_serial():
    serial, s1 = census_lines("B3")
    parallel, s2 = census_lines("B3", jobs=2)
    assert serial == parallel
    assert s1.to_json_dict() == s2.to_json_dict()


def test_census_record_stream_is_consistent():
    spec = spec_of("B3")
    records = []
    summary = run_census(spec, records_out=records)
    assert summary.pair_count == len(records)
    assert summary.spherical_count == sum(r.spherical for r in records)
    toric = [r for r in records if r.levi == ()]
    assert summary.group_order == len(toric)
    assert summary.toric_count == sum(r.spherical for r in toric)
    for rec in records:
        # levi is admissible and d matches an independent reclassification
        w = from_word(spec, rec.w_word)
        assert set(rec.levi) <= left_descents(spec, w)
        assert rec.length == len(rec.w_word)
        if rec.levi == ():
            assert rec.d_word == rec.w_word
            assert rec.spherical == (len(set(rec.w_word)) == len(rec.w_word))


def test_census_length_histogram():
    spec = spec_of("B3")
    _, summary = census_lines("B3")
    per = summary.by_length
    assert sum(v["elements"] for v in per.values()) == summary.group_order
    assert sum(v["pairs"] for v in per.values()) == summary.pair_count
    assert sum(v["spherical"] for v in per.values()) == summary.spherical_count
    assert sorted(per) == list(range(10))  # lengths 0..9 in B3
    assert per[0] == {"elements": 1, "pairs": 1, "spherical": 1}
    dct = summary.to_json_dict()
    assert list(dct["by_length"]) == [str(k) for k in range(10)]


def test_full_descent_only_mode():
    spec = spec_of("B3")
    records = []
    summary = run_census(spec, levi_mode="full-descent-only",
                         records_out=records)
    assert summary.pair_count == summary.group_order == 48
    for rec in records:
        w = from_word(spec, rec.w_word)
        assert rec.levi == tuple(sorted(left_descents(spec, w)))


def test_invalid_levi_mode():
    with pytest.raises(ValueError, match="levi_mode"):
        run_census(spec_of("A2"), levi_mode="everything")


def test_cap_refusal_emits_nothing():
    sink = io.StringIO()
    with pytest.raises(CapExceeded):
        run_census(spec_of("B2"), cap=5, sink=sink)
    assert sink.getvalue() == ""


def test_record_json_roundtrip():
    spec = spec_of("F4")
    records = []
    run_census(spec_of("A2"), records_out=records)
    rec = records[-1]
    line = rec.to_json_line()
    assert list(json.loads(line)) == ["type", "w", "len", "levi", "d",
                                      "spherical"]
    again = CensusRecord.from_json_line(spec_of("A2"), line)
    assert again == rec
    with pytest.raises(ValueError, match="does not match"):
        CensusRecord.from_json_line(spec, line)


def test_cross_check_a2_full_battery():
    spec = spec_of("A2")
    records = []
    run_census(spec, records_out=records)
    report = cross_check(spec, records, [(1, 0), (0, 1), (1, 1)])
    assert report.records_seen == 13
    assert report.sampled == 13  # group of order 6: full sampling
    assert report.spherical_checked == 12
    assert report.witness_found == 1  # (w0, {}): adjoint zero weight twice
    assert report.witness_inconclusive == 0


def test_cross_check_empty_battery():
    spec = spec_of("A2")
    records = []
    run_census(spec, records_out=records)
    report = cross_check(spec, records, [])
    assert report.battery_size == 0
    assert report.spherical_checked == 12


def test_cross_check_flags_wrong_spherical_claim():
    spec = spec_of("D4")
    lie = CensusRecord(
        cartan_type=spec.cartan_type,
        w_word=(3, 2, 3, 4, 2, 1, 2),
        length=7,
        levi=(2, 3),
        d_word=(1, 4, 2, 1),
        spherical=True,
    )
    with pytest.raises(InconsistencyError) as exc:
        cross_check(spec, [lie], [(1, 1, 0, 0)])
    err = exc.value
    assert err.record is lie
    assert err.lam == (1, 1, 0, 0)
    assert err.mu == (0, 1, 1, -1)
    assert err.multiplicity == 2
    assert "multiplicity" in str(err)


def test_cross_check_battery_validation():
    spec = spec_of("A2")
    with pytest.raises(ValueError, match="not dominant"):
        cross_check(spec, [], [(1, -1)])
    with pytest.raises(ValueError, match="not dominant"):
        cross_check(spec, [], [(1, 0, 0)])


def test_cross_check_sampling_is_seeded():
    spec = spec_of("B3")
    records = []
    run_census(spec, records_out=records)
    one = cross_check(spec, records, [(1, 0, 0)], sample=0.3)
    two = cross_check(spec, records, [(1, 0, 0)], sample=0.3)
    assert one.to_json_dict() == two.to_json_dict()
    assert one.records_seen == len(records)
    assert 0 < one.sampled < len(records)
    none = cross_check(spec, records, [(1, 0, 0)], sample=0.0)
    assert none.sampled == 0
