import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelfair import Allocation, Instance, InputError, bundle_value, is_leveled, quota_plan, validate
from levelfair.instance import (
    allocation_from_json,
    allocation_to_json,
    check_allocation,
    instance_from_json,
    instance_to_json,
)

from oracles import leveled_by_definition, leveled_violation


def test_validate_ten_item_instance(ten_items):
    report = validate(ten_items)
    assert report.ok
    assert report.leveled == (True, True, True)


def test_validate_single_item():
    report = validate(Instance.from_rows([[5]]))
    assert report.ok and report.all_leveled


def test_validate_zero_entry():
    report = validate(Instance.from_rows([[1, 0], [2, 2]]))
    assert not report.ok
    assert any("nonpositive value" in v for v in report.violations)


def test_validate_dimension_mismatch():
    report = validate(Instance(2, 3, [[1, 2, 3], [1, 2]]))
    assert not report.ok
    assert any("row 1" in v for v in report.violations)
    report = validate(Instance(3, 2, [[1, 2], [1, 2]]))
    assert any("2 rows" in v for v in report.violations)


@pytest.mark.parametrize(
    "row, expected",
    [
        ([9, 9, 9, 7, 7, 7, 7, 7, 7, 7], True),
        ([9, 9, 9, 1, 1, 1, 1, 1, 1, 1], False),
        ([4, 4, 4], True),
        ([1], True),
        ([3, 2], True),
        ([10, 9, 9, 9, 7, 7, 7, 7, 7, 7], False),  # one notch past 4a > 3b
    ],
)
def test_is_leveled_examples(row, expected):
    assert is_leveled(row) is expected


def test_is_leveled_empty_row():
    with pytest.raises(InputError, match="no items"):
        is_leveled([])


def test_is_leveled_boundary_pairs():
    # 4a > 3b is exactly the binding constraint for 3 b-items and 7 a-items
    for a in range(1, 30):
        for b in range(a + 1, 40):
            assert is_leveled([b] * 3 + [a] * 7) == (4 * a > 3 * b)


@pytest.mark.parametrize("m", range(1, 6))
def test_is_leveled_every_ordered_row(m):
    for row in itertools.product(range(1, 6), repeat=m):
        assert is_leveled(row) == leveled_by_definition(row), row


@given(st.lists(st.integers(1, 20), min_size=1, max_size=7))
@settings(max_examples=200, deadline=None)
def test_leveled_rows_order_all_bundle_pairs(row):
    violation = leveled_violation(row)
    if is_leveled(row):
        assert violation is None
    else:
        S, T = violation
        assert len(S) > len(T)
        assert sum(row[g] for g in S) <= sum(row[g] for g in T)


def test_bundle_value(ten_items):
    assert bundle_value(ten_items, 2, {3, 4, 5}) == 21
    assert bundle_value(ten_items, 1, set()) == 0
    assert bundle_value(ten_items, 0, range(10)) == 76


def test_bundle_value_out_of_range(ten_items):
    with pytest.raises(InputError):
        bundle_value(ten_items, 3, [0])
    with pytest.raises(InputError):
        bundle_value(ten_items, 0, [10])


@given(
    st.lists(st.integers(1, 50), min_size=1, max_size=12),
    st.data(),
)
def test_bundle_value_additive(row, data):
    inst = Instance.from_rows([row])
    items = list(range(len(row)))
    labels = data.draw(st.lists(st.sampled_from([0, 1, 2]), min_size=len(row), max_size=len(row)))
    S = [g for g in items if labels[g] == 0]
    T = [g for g in items if labels[g] == 1]
    assert bundle_value(inst, 0, S + T) == bundle_value(inst, 0, S) + bundle_value(inst, 0, T)


@pytest.mark.parametrize(
    "n, m, k, r, sizes",
    [(3, 10, 3, 1, (3, 3, 4)), (4, 8, 2, 0, (2, 2, 2, 2)), (5, 17, 3, 2, (3, 3, 3, 4, 4)), (4, 3, 0, 3, (0, 1, 1, 1))],
)
def test_quota_plan(n, m, k, r, sizes):
    plan = quota_plan(n, m)
    assert (plan.k, plan.r, plan.sizes) == (k, r, sizes)


@given(st.integers(1, 30), st.integers(1, 200))
def test_quota_plan_invariants(n, m):
    plan = quota_plan(n, m)
    assert m == plan.k * n + plan.r and 0 <= plan.r < n
    assert sum(plan.sizes) == m
    assert set(plan.sizes) <= {plan.k, plan.k + 1}
    assert list(plan.sizes) == sorted(plan.sizes)


def test_quota_plan_rejects_zero():
    with pytest.raises(InputError):
        quota_plan(0, 3)


def test_check_allocation_errors(ten_items):
    check_allocation(ten_items, Allocation([[0, 1, 2], [3, 4, 5], [6, 7, 8, 9]]))
    with pytest.raises(InputError, match="appears in bundles"):
        check_allocation(ten_items, Allocation([[0, 1, 2], [2, 4, 5], [3, 6, 7, 8, 9]]))
    with pytest.raises(InputError, match="incomplete"):
        check_allocation(ten_items, Allocation([[0, 1, 2], [3, 4, 5], [6, 7, 8]]))
    with pytest.raises(InputError, match="bundles, expected 3"):
        check_allocation(ten_items, Allocation([list(range(10))]))
    with pytest.raises(InputError, match="invalid item"):
        check_allocation(ten_items, Allocation([[0, 1, 2], [3, 4, 5], [6, 7, 8, 9, 10]]))


def test_instance_json_roundtrip(ten_items):
    text = instance_to_json(ten_items)
    assert text.startswith('{"m":10,"n":3,"values":[[9,9,9,7')
    assert instance_from_json(text) == ten_items
    assert instance_to_json(instance_from_json(text)) == text
    pretty = instance_to_json(ten_items, canonical=False)
    assert json.loads(pretty) == json.loads(text)


def test_allocation_json_sorts_bundles():
    alloc = allocation_from_json('{"bundles": [[2, 0, 1], [5, 3, 4]]}')
    assert allocation_to_json(alloc) == '{"bundles":[[0,1,2],[3,4,5]]}'


@pytest.mark.parametrize(
    "text, message",
    [
        ('{"n": 1, "m": 2, "values": [[1, 2]', "line 1"),
        ('{"m": 2, "values": [[1, 2]]}', "'n'"),
        ('{"n": 1, "m": 2, "values": [[1, "x"]]}', "not an integer"),
        ('{"n": 1, "m": 2, "values": [[1, 0]]}', "nonpositive"),
        ('{"n": 2, "m": 2, "values": [[1, 1]]}', "rows"),
        ('[1, 2]', "object"),
    ],
)
def test_instance_json_errors(text, message):
    with pytest.raises(InputError, match=message):
        instance_from_json(text)
