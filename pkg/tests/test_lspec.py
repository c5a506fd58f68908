import pytest

from thetakit.exceptions import ArgumentError, FormatError
from thetakit.lspec import (
    CofiniteL,
    FiniteL,
    ModularL,
    ThresholdL,
    below,
    member,
    odd_numbers,
    parse_lspec,
)


def test_member_examples():
    assert member(ThresholdL(), 0) is False
    assert member(ThresholdL(), 3) is True
    assert member(ModularL(3, frozenset({1, 2})), 7) is True
    assert member(ModularL(3, frozenset({1, 2})), 6) is False
    assert member(FiniteL(frozenset({0, 2})), 2) is True
    assert member(CofiniteL(frozenset({0})), 0) is False
    with pytest.raises(ArgumentError):
        member(ThresholdL(), -1)


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("threshold", ThresholdL()),
        ("finite:0,1", FiniteL(frozenset({0, 1}))),
        ("mod:3:1,2", ModularL(3, frozenset({1, 2}))),
        ("cofinite-excl:0", CofiniteL(frozenset({0}))),
        ("cofinite-excl:", CofiniteL(frozenset())),
        (" finite:2 ", FiniteL(frozenset({2}))),
    ],
)
def test_parse_lspec(text, expected):
    parsed = parse_lspec(text)
    assert parsed == expected
    assert parse_lspec(parsed.descriptor) == parsed
    assert str(parsed) == parsed.descriptor


@pytest.mark.parametrize(
    "text", ["", "finite:", "finite:a", "mod:x:1", "mod:3:", "interval:1", "threshold:1"]
)
def test_parse_lspec_rejects_bad_descriptors(text):
    with pytest.raises(FormatError):
        parse_lspec(text)


def test_lspec_value_errors():
    with pytest.raises(ArgumentError):
        FiniteL(frozenset())
    with pytest.raises(ArgumentError):
        FiniteL(frozenset({-1}))
    with pytest.raises(ArgumentError):
        ModularL(4, frozenset({1}))
    with pytest.raises(ArgumentError):
        ModularL(3, frozenset({3}))
    with pytest.raises(ArgumentError):
        parse_lspec("mod:4:1")


def test_membership_tables():
    assert ThresholdL().table(3) == (False, True, True, True)
    assert odd_numbers().table(4) == (False, True, False, True, False)
    assert FiniteL(frozenset({0, 2})).table(2) == (True, False, True)
    assert CofiniteL(frozenset({1})).table(2) == (True, False, True)


def test_helpers_and_sizes():
    assert below(3) == FiniteL(frozenset({0, 1, 2}))
    assert below(3).s == 3
    assert odd_numbers().s == 1
    assert FiniteL(frozenset({1, 4})).max_finite == 4
    assert ThresholdL().max_finite == 0
    assert CofiniteL(frozenset({0, 5})).max_finite == 5
    with pytest.raises(ArgumentError):
        below(0)
