"""Seeded random instance generators.

All randomness goes through one :class:`random.Random` seeded from the
config, so a config always produces the same instance (and the same file
bytes once rendered).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Event, PersuasionInstance, ProbabilitySpace, WorldSet
from .solvers import ExactCoverInstance

_MAX_DRAWS = 10_000


@dataclass(frozen=True)
class GenConfig:
    seed: int
    n: tuple[int, int] = (1, 6)
    k: tuple[int, int] = (1, 7)
    planted: bool = False
    worlds: tuple[int, int] = (2, 8)
    events: tuple[int, int] = (1, 6)
    threshold: Fraction | None = None
    positive: bool = True
    anchored: bool = False
    max_weight: int = 16

    def __post_init__(self):
        if not 0 <= self.seed < 1 << 64:
            raise ValueError(f"seed {self.seed} is not a 64-bit unsigned integer")
        for name, lo_min in (("n", 1), ("k", 1), ("worlds", 1), ("events", 0)):
            lo, hi = getattr(self, name)
            if not lo_min <= lo <= hi:
                raise ValueError(f"impossible range for {name}: {lo}..{hi}")
        if self.threshold is not None and not 0 <= self.threshold <= 1:
            raise ValueError(f"threshold {self.threshold} outside [0, 1]")
        if self.max_weight < 1:
            raise ValueError("max_weight must be at least 1")


def _random_subset(rng: random.Random, elements: list[int]) -> frozenset[int]:
    size = rng.randint(1, len(elements))
    return frozenset(rng.sample(elements, size))


def _split(rng: random.Random, elements: list[int], parts: int) -> list[frozenset[int]]:
    """Shuffle ``elements`` and cut them into ``parts`` non-empty blocks."""
    order = elements[:]
    rng.shuffle(order)
    cuts = sorted(rng.sample(range(1, len(order)), parts - 1))
    bounds = [0, *cuts, len(order)]
    return [frozenset(order[a:b]) for a, b in zip(bounds, bounds[1:])]


def gen_eci(cfg: GenConfig) -> ExactCoverInstance:
    """Random cover instance with ``n`` and ``k`` drawn from the config ranges.

    ``k`` distinct non-empty subsets are drawn (``k`` is clamped to
    ``2^n - 1``), then every element the draw missed gets a singleton patch
    set, so the final family can be larger than ``k``.  In planted mode the
    first subsets are the blocks of a random partition of the universe.
    """
    rng = random.Random(cfg.seed)
    n = rng.randint(*cfg.n)
    k = min(rng.randint(*cfg.k), (1 << n) - 1)
    universe = list(range(1, n + 1))

    chosen: list[frozenset[int]] = []
    if cfg.planted:
        chosen.extend(_split(rng, universe, rng.randint(1, min(n, k))))
    while len(chosen) < k:
        for _ in range(_MAX_DRAWS):
            s = _random_subset(rng, universe)
            if s not in chosen:
                break
        else:
            raise RuntimeError("could not draw a fresh subset")
        chosen.append(s)

    covered = frozenset().union(*chosen)
    chosen.extend(frozenset([e]) for e in universe if e not in covered)
    rng.shuffle(chosen)
    return ExactCoverInstance(n, tuple(chosen))


def gen_ppi(cfg: GenConfig) -> PersuasionInstance:
    """Random persuasion instance.

    World weights are integers in ``[1, max_weight]`` (``[0, max_weight]``
    when ``positive`` is off); every world but the last gets ``weight/total``
    and the last takes the residual mass, so probabilities sum to exactly 1.
    With ``anchored`` one positive-mass world is put into every event, so
    the intersection of the whole family never has zero mass.
    """
    rng = random.Random(cfg.seed)
    n_worlds = rng.randint(*cfg.worlds)
    n_events = rng.randint(*cfg.events)
    low = 1 if cfg.positive else 0
    weights = [rng.randint(low, cfg.max_weight) for _ in range(n_worlds)]
    if sum(weights) == 0:
        weights[-1] = 1
    total = sum(weights)
    prob = [Fraction(w, total) for w in weights[:-1]]
    prob.append(1 - sum(prob, Fraction(0)))

    events = []
    for j in range(n_events):
        density = rng.choice((0.5, 0.75, 0.9))
        members = [w for w in range(n_worlds) if rng.random() < density]
        events.append(Event(f"F{j + 1}", WorldSet.of(members, n_worlds)))
    if cfg.anchored:
        anchor = rng.choice([w for w, p in enumerate(prob) if p > 0])
        pin = WorldSet.of([anchor], n_worlds)
        events = [Event(ev.name, ev.members | pin) for ev in events]
    goal = WorldSet.of((w for w in range(n_worlds) if rng.random() < 0.5), n_worlds)

    if cfg.threshold is not None:
        threshold = cfg.threshold
    else:
        den = rng.randint(1, 12)
        threshold = Fraction(rng.randint(0, den), den)
    space = ProbabilitySpace(
        tuple(f"w{i}" for i in range(n_worlds)), tuple(events), tuple(prob)
    )
    return PersuasionInstance(space, goal, threshold)
