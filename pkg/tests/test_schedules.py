import json

import pytest
from hypothesis import given, strategies as st

from flashcards import engine
from flashcards.schedules import (Schedule, ScheduleError, random_schedule, schedule_affine,
                                  schedule_constant, schedule_from_spec, schedule_power,
                                  schedule_recap, schedule_slow, schedule_table)


def test_examples():
    assert schedule_slow()(1) == 2
    assert schedule_recap()(3) == 8
    assert schedule_constant(5)(99) == 5
    assert schedule_affine(3, 1)(4) == 13
    assert schedule_power(3)(2) == 9


def test_table_extension():
    s = schedule_table([1, 4, 2])
    assert [s(k) for k in range(1, 6)] == [1, 4, 2, 2, 2]
    e = schedule_table([1, 4, 2], extend="error")
    assert e(3) == 2
    with pytest.raises(ScheduleError):
        e(4)
    assert e.table(10) == [0, 1, 4, 2]


def test_cached_table():
    s = schedule_slow()
    assert s.table(5) == [0, 2, 3, 4, 5, 6]
    assert s.table(3)[3] == 4


@pytest.mark.parametrize("bad", [
    "nope", "constant", "constant:0", "constant:x", "affine:0:0", "power:0",
    "table:", "table:1,0", "table:1:sometimes", '{"kind":"slow","c":1}', '{"kind":"bogus"}',
    '{"kind":"constant"}', "{not json", '{"kind":"slow","seed":3}', "uniform:-1",
    '{"kind":"table","values":5}',
])
def test_malformed_descriptors(bad):
    with pytest.raises(ScheduleError):
        schedule_from_spec(bad)


def test_view_count_must_be_positive():
    with pytest.raises(ScheduleError):
        schedule_slow()(0)


@pytest.mark.parametrize("text", [
    "slow", "recap", "constant:5", "affine:3:1", "power:2", "table:1,2,3",
    "table:4,1:error", "uniform", "uniform:7", "poisson:3",
])
def test_descriptor_round_trip(text):
    s = schedule_from_spec(text)
    assert schedule_from_spec(s.to_json()) == s
    assert schedule_from_spec(json.loads(s.to_json())) == s


def test_json_kinds():
    for d in ({"kind": "slow"}, {"kind": "recap"}, {"kind": "constant", "c": 3},
              {"kind": "affine", "a": 2, "b": 5}, {"kind": "power", "b": 2},
              {"kind": "table", "values": [3, 1], "extend": "repeat-last"},
              {"kind": "uniform"}, {"kind": "poisson"}):
        s = schedule_from_spec(d)
        assert s.kind == d["kind"]


def test_structure_flags():
    assert schedule_constant(5).bound == 5
    assert schedule_table([2, 9, 3]).bound == 9
    assert schedule_slow().bound is None
    assert schedule_affine(0, 4).bound == 4
    assert schedule_slow().is_strictly_increasing
    assert schedule_affine(3, 1).is_strictly_increasing
    assert not schedule_affine(0, 3).is_strictly_increasing
    assert not schedule_table([1, 2, 3]).is_strictly_increasing


@given(st.sampled_from(["slow", "recap", "affine:3:1", "affine:2:-1", "power:3", "table:1,5,2,8"]),
       st.integers(min_value=1, max_value=5000))
def test_first_reaching_matches_brute_force(text, n):
    s = schedule_from_spec(text)
    expected = next((j for j in range(1, 6000) if s(j) >= n), None)
    assert s.first_reaching(n, kmax=6000) == expected


def test_uniform_range_and_determinism():
    s = random_schedule("uniform", 4)
    assert {s(1, d) for d in range(500)} == {1, 2, 3}
    assert all(1 <= s(k, d) <= 2 * k + 1 for k in (1, 5, 40) for d in range(300))
    assert s(9, 123) == random_schedule("uniform", 4)(9, 123)


def test_poisson_is_clamped():
    s = random_schedule("poisson", 2)
    values = [s(k, d) for k in (1, 2, 30) for d in range(2000)]
    assert min(values) == 1


def test_random_schedule_kind():
    with pytest.raises(ScheduleError):
        random_schedule("slow")
    with pytest.raises(ScheduleError):
        random_schedule("uniform").table(3)
    assert Schedule("uniform").seed == 0


@pytest.mark.parametrize("kind", ["uniform", "poisson"])
def test_same_seed_same_viewing_prefix(kind):
    a = engine.viewing_prefix(random_schedule(kind, 99), 10 ** 4)
    b = engine.viewing_prefix(random_schedule(kind, 99), 10 ** 4)
    c = engine.viewing_prefix(random_schedule(kind, 100), 10 ** 4)
    assert a == b
    assert a != c
