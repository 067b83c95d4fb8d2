"""Exact probability spaces, persuasion instances and posterior evaluation.

Every probability in the package is a :class:`fractions.Fraction`; there is
no floating point anywhere.  Sets of worlds are bit-vectors over the world
indices of their owning space, so intersections and unions are single integer
operations.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import InvalidRational, UndefinedPosterior

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def rational(num: int, den: int = 1) -> Fraction:
    """Build a lowest-terms rational with the sign carried by the numerator."""
    if den == 0:
        raise InvalidRational(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p``.  Decimal notation is rejected on purpose."""
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise InvalidRational(f"not a rational literal: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    return rational(num, den)


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class WorldSet:
    """A set of worlds stored as a bit-vector of fixed ``width``."""

    bits: int
    width: int

    def __post_init__(self):
        if self.width < 0 or self.bits < 0 or self.bits >> self.width:
            raise ValueError(f"bits {self.bits:#x} do not fit width {self.width}")

    @classmethod
    def empty(cls, width: int) -> WorldSet:
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> WorldSet:
        return cls((1 << width) - 1, width)

    @classmethod
    def of(cls, indices: Iterable[int], width: int) -> WorldSet:
        bits = 0
        for i in indices:
            if not 0 <= i < width:
                raise ValueError(f"world index {i} out of range for width {width}")
            bits |= 1 << i
        return cls(bits, width)

    def _check(self, other: WorldSet) -> None:
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")

    def __and__(self, other: WorldSet) -> WorldSet:
        self._check(other)
        return WorldSet(self.bits & other.bits, self.width)

    def __or__(self, other: WorldSet) -> WorldSet:
        self._check(other)
        return WorldSet(self.bits | other.bits, self.width)

    def __sub__(self, other: WorldSet) -> WorldSet:
        self._check(other)
        return WorldSet(self.bits & ~other.bits, self.width)

    def __le__(self, other: WorldSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: WorldSet) -> bool:
        return other <= self

    def complement(self) -> WorldSet:
        return WorldSet(((1 << self.width) - 1) & ~self.bits, self.width)

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.width and bool(self.bits >> index & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0


@dataclass(frozen=True)
class Event:
    name: str
    members: WorldSet


@dataclass(frozen=True)
class ProbabilitySpace:
    """Worlds (by label, indexed by position), the event family and π.

    Construction only checks that the pieces line up; probabilistic
    invariants are reported by :func:`validate_space`.
    """

    worlds: tuple[str, ...]
    events: tuple[Event, ...]
    prob: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "prob", tuple(Fraction(p) for p in self.prob))
        if len(self.prob) != len(self.worlds):
            raise ValueError(
                f"{len(self.prob)} probabilities for {len(self.worlds)} worlds"
            )

    @property
    def size(self) -> int:
        return len(self.worlds)

    def omega(self) -> WorldSet:
        return WorldSet.full(self.size)

    def world_index(self, label: str) -> int:
        return self.worlds.index(label)

    def worlds_of(self, labels: Iterable[str]) -> WorldSet:
        return WorldSet.of((self.world_index(lbl) for lbl in labels), self.size)

    def labels(self, s: WorldSet) -> list[str]:
        return [self.worlds[i] for i in s]

    def event_index(self, name: str) -> int:
        for i, ev in enumerate(self.events):
            if ev.name == name:
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class PersuasionInstance:
    space: ProbabilitySpace
    goal: WorldSet
    threshold: Fraction

    def __post_init__(self):
        object.__setattr__(self, "threshold", Fraction(self.threshold))
        if self.goal.width != self.space.size:
            raise ValueError(
                f"goal width {self.goal.width} != |worlds| {self.space.size}"
            )
        if not 0 <= self.threshold <= 1:
            raise ValueError(f"threshold {self.threshold} outside [0, 1]")


@dataclass(frozen=True)
class Observation:
    """A subset of the event family, by 0-based event index."""

    selected: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "selected", frozenset(self.selected))

    @classmethod
    def from_mask(cls, mask: int) -> Observation:
        return cls(frozenset(i for i in range(mask.bit_length()) if mask >> i & 1))

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.selected)

    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.selected))

    def check(self, space: ProbabilitySpace) -> None:
        for i in self.selected:
            if not 0 <= i < len(space.events):
                raise IndexError(f"event index {i} out of range")


@dataclass(frozen=True)
class ObservationProfile:
    """Counts of role-tagged worlds surviving an observation of a reduced instance."""

    y_count: int
    z_count: int
    has_w0: bool
    has_x0: bool


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


def intersect(space: ProbabilitySpace, obs: Observation) -> WorldSet:
    """Intersection of the selected events; the empty observation gives every world."""
    obs.check(space)
    result = space.omega()
    for i in obs.selected:
        result = result & space.events[i].members
    return result


def event_mass(space: ProbabilitySpace, s: WorldSet) -> Fraction:
    if s.width != space.size:
        raise ValueError(f"set width {s.width} != |worlds| {space.size}")
    return sum((space.prob[i] for i in s), Fraction(0))


def posterior(inst: PersuasionInstance, obs: Observation) -> Fraction:
    """Probability of the goal conditioned on the intersection of ``obs``."""
    survivors = intersect(inst.space, obs)
    denominator = event_mass(inst.space, survivors)
    if denominator == 0:
        raise UndefinedPosterior(
            f"observation {sorted(obs.selected)} leaves zero probability mass"
        )
    return event_mass(inst.space, survivors & inst.goal) / denominator


def is_solution(inst: PersuasionInstance, obs: Observation) -> bool:
    try:
        return posterior(inst, obs) >= inst.threshold
    except UndefinedPosterior:
        return False


def validate_space(space: ProbabilitySpace) -> list[Violation]:
    out: list[Violation] = []
    seen: set[str] = set()
    for label in space.worlds:
        if label in seen:
            out.append(Violation("DuplicateLabel", f"world {label!r}"))
        seen.add(label)
    names: set[str] = set()
    for ev in space.events:
        if ev.name in names:
            out.append(Violation("DuplicateLabel", f"event {ev.name!r}"))
        names.add(ev.name)
        if ev.members.width != space.size:
            out.append(
                Violation(
                    "WidthViolation",
                    f"event {ev.name!r} has width {ev.members.width}, expected {space.size}",
                )
            )
    for label, p in zip(space.worlds, space.prob):
        if not 0 <= p <= 1:
            out.append(
                Violation("RangeViolation", f"world {label!r} has probability {p}")
            )
    total = sum(space.prob, Fraction(0))
    if total != 1:
        out.append(
            Violation("NormalizationViolation", f"probabilities sum to {total}")
        )
    return out


def make_space(
    worlds: Sequence[str],
    prob: Sequence[Fraction],
    events: Sequence[tuple[str, Iterable[str]]],
) -> ProbabilitySpace:
    """Convenience builder: events given as ``(name, member labels)``."""
    worlds = tuple(worlds)
    width = len(worlds)
    index = {lbl: i for i, lbl in enumerate(worlds)}
    built = tuple(
        Event(name, WorldSet.of((index[m] for m in members), width))
        for name, members in events
    )
    return ProbabilitySpace(worlds, built, tuple(prob))
