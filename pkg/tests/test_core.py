from fractions import Fraction

import pytest

from conftest import obs
from persuasion import (
    InvalidRational,
    Observation,
    PersuasionInstance,
    UndefinedPosterior,
    WorldSet,
    event_mass,
    intersect,
    is_solution,
    make_space,
    posterior,
    rational,
    validate_space,
)
from persuasion.core import format_rational, parse_rational


@pytest.mark.parametrize(
    "num, den, expected",
    [(2, 60, (1, 30)), (-1, -3, (1, 3)), (0, 7, (0, 1)), (3, -6, (-1, 2))],
)
def test_rational_normalizes(num, den, expected):
    r = rational(num, den)
    assert (r.numerator, r.denominator) == expected


def test_rational_zero_denominator():
    with pytest.raises(InvalidRational):
        rational(1, 0)


@pytest.mark.parametrize("text", ["0.5", "1/0", "", "a/b", "1//2", "1e3"])
def test_parse_rational_rejects(text):
    with pytest.raises(InvalidRational):
        parse_rational(text)


def test_parse_rational_roundtrip():
    assert parse_rational("22/42") == Fraction(11, 21)
    assert format_rational(parse_rational("22/42")) == "11/21"
    assert parse_rational("1") == 1


def test_worldset_ops():
    a = WorldSet.of([0, 1, 2], 4)
    b = WorldSet.of([2, 3], 4)
    assert list(a & b) == [2]
    assert list(a | b) == [0, 1, 2, 3]
    assert list(a - b) == [0, 1]
    assert list(b.complement()) == [0, 1]
    assert WorldSet.of([2], 4) <= a
    assert not b <= a
    assert len(a) == 3 and 1 in a and 3 not in a
    with pytest.raises(ValueError):
        a & WorldSet.of([0], 5)
    with pytest.raises(ValueError):
        WorldSet.of([4], 4)


def test_intersect_conventions(worked):
    space = worked.space
    assert intersect(space, Observation()) == space.omega()
    assert intersect(space, obs(2)) == space.events[1].members


def test_intersect_worked(worked):
    space = worked.space
    assert space.labels(intersect(space, obs(1, 3))) == ["W0", "X0", "Y_2_2"]


def test_event_mass(worked):
    space = worked.space
    assert event_mass(space, WorldSet.empty(space.size)) == 0
    assert event_mass(space, space.omega()) == 1
    assert event_mass(space, space.worlds_of(["W0", "X0"])) == Fraction(2, 3)


def test_posterior_worked(worked):
    assert posterior(worked, obs(1, 3)) == Fraction(21, 41)
    assert posterior(worked, obs(3)) == Fraction(11, 21)
    assert posterior(worked, obs(3)) == worked.threshold
    assert posterior(worked, Observation()) == Fraction(2, 5)


def test_is_solution_worked(worked):
    assert is_solution(worked, obs(3))
    assert not is_solution(worked, obs(1, 3))


@pytest.fixture
def toy():
    space = make_space(
        ["a", "b", "c"],
        [Fraction(1, 2), Fraction(1, 2), Fraction(0)],
        [("ab", ["a", "b"]), ("c", ["c"]), ("a", ["a"])],
    )
    return space


def test_posterior_trivial_values(toy):
    inst = PersuasionInstance(toy, toy.worlds_of(["a", "b"]), Fraction(1, 2))
    assert posterior(inst, obs(1)) == 1
    inst = PersuasionInstance(toy, toy.worlds_of(["c"]), Fraction(0))
    assert posterior(inst, obs(3)) == 0
    assert is_solution(inst, obs(3))


def test_zero_mass_intersection(toy):
    inst = PersuasionInstance(toy, toy.worlds_of(["c"]), Fraction(0))
    with pytest.raises(UndefinedPosterior):
        posterior(inst, obs(2))
    # the decision contract is total
    assert is_solution(inst, obs(2)) is False
    assert is_solution(inst, obs(1, 2)) is False


def test_observation_index_checked(worked):
    with pytest.raises(IndexError):
        intersect(worked.space, Observation({7}))


def test_validate_space_ok():
    space = make_space(list("abcd"), [Fraction(1, 4)] * 4, [("e", "ab")])
    assert validate_space(space) == []


def test_validate_space_normalization():
    space = make_space(list("abc"), [Fraction(3, 10)] * 3, [])
    assert [v.kind for v in validate_space(space)] == ["NormalizationViolation"]


def test_validate_space_range_and_labels():
    space = make_space(["a", "a"], [Fraction(3, 2), Fraction(-1, 2)], [("e", ["a"])])
    kinds = sorted(v.kind for v in validate_space(space))
    assert kinds == ["DuplicateLabel", "RangeViolation", "RangeViolation"]


def test_validate_space_width(worked):
    from dataclasses import replace

    from persuasion import Event

    bad = replace(worked.space, events=(Event("wide", WorldSet.of([0], 9)),))
    assert [v.kind for v in validate_space(bad)] == ["WidthViolation"]


def test_instance_threshold_range(toy):
    with pytest.raises(ValueError):
        PersuasionInstance(toy, toy.omega(), Fraction(3, 2))
