"""Deciders for Persuasion, Strong Persuasion and Exact Cover."""
from __future__ import annotations

import math
import os
from concurrent.futures import Executor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .core import Observation, PersuasionInstance, intersect
from .dlx import DancingLinks
from .parallel import run_tasks
from .errors import AssumptionViolated, CapExceeded, InvalidECI, NotStrongInstance

DEFAULT_CAP = 24
CAP_ENV = "PERSUASION_ENUM_CAP"

# low bits of a mask are swept from a precomputed table of this many events
_TABLE_BITS = 12


def enumeration_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV)
    return int(env) if env else DEFAULT_CAP


def check_cap(size: int, cap: int | None) -> None:
    limit = enumeration_cap(cap)
    if size > limit:
        raise CapExceeded(size, limit)


@dataclass(frozen=True)
class ExactCoverInstance:
    """Universe ``{1..universe_size}`` and a family of named subsets.

    Subsets are addressed by 0-based position; ``names`` default to A1..Ak.
    """

    universe_size: int
    subsets: tuple[frozenset[int], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        subsets = tuple(frozenset(s) for s in self.subsets)
        object.__setattr__(self, "subsets", subsets)
        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"A{i + 1}" for i in range(len(subsets)))
            )
        else:
            object.__setattr__(self, "names", tuple(self.names))
        problems = eci_problems(self)
        if problems:
            raise InvalidECI("; ".join(problems))

    @property
    def k(self) -> int:
        return len(self.subsets)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.subsets)

    def masks(self) -> list[int]:
        return [sum(1 << (e - 1) for e in s) for s in self.subsets]


def eci_problems(eci: ExactCoverInstance) -> list[str]:
    out = []
    n = eci.universe_size
    if n < 1:
        out.append(f"universe size {n} must be positive")
    if len(eci.names) != len(eci.subsets):
        out.append("one name per subset required")
    if len(set(eci.names)) != len(eci.names):
        out.append("subset names must be distinct")
    seen: dict[frozenset[int], int] = {}
    for i, s in enumerate(eci.subsets):
        if not s:
            out.append(f"subset {i + 1} is empty")
        bad = sorted(e for e in s if not 1 <= e <= n)
        if bad:
            out.append(f"subset {i + 1} has elements outside 1..{n}: {bad}")
        if s in seen:
            out.append(f"subset {i + 1} duplicates subset {seen[s] + 1}")
        seen.setdefault(s, i)
    covered = frozenset().union(*eci.subsets)
    missing = sorted(set(range(1, n + 1)) - covered)
    if missing:
        out.append(f"universe elements not covered: {missing}")
    return out


@dataclass(frozen=True)
class PersuasionVerdict:
    solvable: bool
    witness: Observation | None = None
    best_posterior: Fraction | None = None


@dataclass(frozen=True)
class CoverVerdict:
    solvable: bool
    witness: frozenset[int] | None = None
    solution_count: int | None = None


def _solution_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return mask.bit_count(), tuple(
        i for i in range(mask.bit_length()) if mask >> i & 1
    )


def _sweep_persuasion(task):
    """Sweep every observation whose high bits are one of ``prefixes``.

    Probabilities arrive as integer weights over a common denominator, so
    masses compare as integers.  Returns ``(best_num, best_den, witness_key)``.
    """
    events, goal, weights, tau_num, tau_den, low, prefixes = task
    full = (1 << len(weights)) - 1
    table = [full] * (1 << low)
    for m in range(1, 1 << low):
        lowbit = m & -m
        table[m] = table[m ^ lowbit] & events[lowbit.bit_length() - 1]
    masses: dict[int, int] = {}

    def mass(bits: int) -> int:
        got = masses.get(bits)
        if got is None:
            got = 0
            b = bits
            while b:
                lb = b & -b
                got += weights[lb.bit_length() - 1]
                b ^= lb
            masses[bits] = got
        return got

    best_num, best_den = 0, 0
    best_key = None
    for prefix in prefixes:
        base = full
        j = 0
        p = prefix
        while p:
            if p & 1:
                base &= events[low + j]
            p >>= 1
            j += 1
        for m in range(1 << low):
            inter = base & table[m]
            den = mass(inter)
            if den == 0:
                continue
            num = mass(inter & goal)
            if best_den == 0 or num * best_den > best_num * den:
                best_num, best_den = num, den
            if num * tau_den >= tau_num * den:
                mask = prefix << low | m
                if best_key is None or mask.bit_count() <= best_key[0]:
                    key = _solution_key(mask)
                    if best_key is None or key < best_key:
                        best_key = key
    return best_num, best_den, best_key


def _shard_prefixes(k: int, workers: int) -> tuple[int, list[list[int]]]:
    """Split ``2^k`` masks into (low bit count, groups of high-bit prefixes)."""
    high = max(0, k - _TABLE_BITS)
    if workers > 1:
        high = max(high, min(k, (workers * 4 - 1).bit_length()))
    n_groups = 1 if workers <= 1 else min(workers * 4, 1 << high)
    groups: list[list[int]] = [[] for _ in range(n_groups)]
    for p in range(1 << high):
        groups[p % n_groups].append(p)
    return k - high, groups


def brute_force_persuasion(
    inst: PersuasionInstance,
    cap: int | None = None,
    workers: int = 1,
    executor: Executor | None = None,
) -> PersuasionVerdict:
    """Try all ``2^|F|`` observations.

    The witness is the least solution ordered by size, then by sorted event
    indices; ``best_posterior`` is the maximum over all defined posteriors.
    The result does not depend on ``workers``.
    """
    space = inst.space
    k = len(space.events)
    check_cap(k, cap)
    scale = math.lcm(*(p.denominator for p in space.prob)) if space.prob else 1
    weights = [int(p * scale) for p in space.prob]
    events = [ev.members.bits for ev in space.events]
    low, groups = _shard_prefixes(k, workers)
    tau = inst.threshold
    tasks = [
        (events, inst.goal.bits, weights, tau.numerator, tau.denominator, low, g)
        for g in groups
    ]
    best_num, best_den, best_key = 0, 0, None
    for num, den, key in run_tasks(_sweep_persuasion, tasks, workers, executor):
        if den and (best_den == 0 or num * best_den > best_num * den):
            best_num, best_den = num, den
        if key is not None and (best_key is None or key < best_key):
            best_key = key
    best = Fraction(best_num, best_den) if best_den else None
    if best_key is None:
        return PersuasionVerdict(False, None, best)
    return PersuasionVerdict(True, Observation(frozenset(best_key[1])), best)


def _require_strong(inst: PersuasionInstance) -> None:
    if inst.threshold != 1:
        raise NotStrongInstance(f"threshold is {inst.threshold}, not 1")


def all_events(inst: PersuasionInstance) -> Observation:
    return Observation(frozenset(range(len(inst.space.events))))


def _positive_worlds(inst: PersuasionInstance) -> int:
    return sum(1 << w for w, p in enumerate(inst.space.prob) if p > 0)


def _certain(survivors: int, positive: int, goal: int) -> bool:
    # posterior is exactly 1 iff some mass survives and none of it lies outside the goal
    live = survivors & positive
    return live != 0 and live & ~goal == 0


def intersection_within_goal(inst: PersuasionInstance) -> bool:
    """Set-inclusion diagnostic: does the intersection of all events lie in the goal?

    Differs from the strong deciders only when the excess carries zero mass.
    """
    return intersect(inst.space, all_events(inst)) <= inst.goal


def strong_persuasion_standard(inst: PersuasionInstance) -> PersuasionVerdict:
    """Threshold-1 decider that only tries the full event family.

    Requires the intersection of all events to carry positive mass.
    """
    _require_strong(inst)
    survivors = inst.space.omega().bits
    for ev in inst.space.events:
        survivors &= ev.members.bits
    positive = _positive_worlds(inst)
    if survivors & positive == 0:
        raise AssumptionViolated("intersection of all events has zero mass")
    if _certain(survivors, positive, inst.goal.bits):
        return PersuasionVerdict(True, all_events(inst))
    return PersuasionVerdict(False)


def strong_persuasion_general(inst: PersuasionInstance) -> PersuasionVerdict:
    """Threshold-1 decider trying, per positive goal world, every event containing it.

    Runs in O(|goal| * |F|) bit operations; no assumption on the full intersection.
    """
    _require_strong(inst)
    positive = _positive_worlds(inst)
    goal = inst.goal.bits
    events = [ev.members.bits for ev in inst.space.events]
    full = inst.space.omega().bits
    for w in inst.goal:
        if not positive >> w & 1:
            continue
        survivors = full
        chosen = []
        for i, bits in enumerate(events):
            if bits >> w & 1:
                survivors &= bits
                chosen.append(i)
        if _certain(survivors, positive, goal):
            return PersuasionVerdict(True, Observation(frozenset(chosen)))
    return PersuasionVerdict(False)


def verify_cover(eci: ExactCoverInstance, h: Iterable[int]) -> bool:
    chosen = sorted(set(h))
    for i in chosen:
        if not 0 <= i < eci.k:
            raise IndexError(f"subset index {i} out of range")
    for i, j in combinations(chosen, 2):
        if eci.subsets[i] & eci.subsets[j]:
            return False
    covered = frozenset().union(*(eci.subsets[i] for i in chosen))
    return covered == frozenset(range(1, eci.universe_size + 1))


def exact_cover_brute(eci: ExactCoverInstance, cap: int | None = None) -> CoverVerdict:
    """Check every subfamily; report the least cover (by size, then indices) and the count."""
    k = eci.k
    check_cap(k, cap)
    masks = eci.masks()
    full = (1 << eci.universe_size) - 1
    low = min(k, _TABLE_BITS)
    # table[m]: union of the low subsets in m, or -1 if two of them overlap
    table = [0] * (1 << low)
    for m in range(1, 1 << low):
        lowbit = m & -m
        rest = table[m ^ lowbit]
        s = masks[lowbit.bit_length() - 1]
        table[m] = -1 if rest < 0 or rest & s else rest | s
    count = 0
    best_key = None
    for prefix in range(1 << (k - low)):
        base = 0
        j = 0
        p = prefix
        while p and base >= 0:
            if p & 1:
                s = masks[low + j]
                base = -1 if base & s else base | s
            p >>= 1
            j += 1
        if base < 0:
            continue
        for m in range(1 << low):
            t = table[m]
            if t < 0 or t & base or t | base != full:
                continue
            count += 1
            key = _solution_key(prefix << low | m)
            if best_key is None or key < best_key:
                best_key = key
    if best_key is None:
        return CoverVerdict(False, None, 0)
    return CoverVerdict(True, frozenset(best_key[1]), count)


def exact_cover_dlx(eci: ExactCoverInstance, count_all: bool = False) -> CoverVerdict:
    """Algorithm X with the fewest-rows column rule; ties go to the lowest column, then row."""
    rows: Sequence[list[int]] = [sorted(e - 1 for e in s) for s in eci.subsets]
    first, count = DancingLinks(eci.universe_size, rows).search(count_all)
    witness = frozenset(first) if first is not None else None
    return CoverVerdict(first is not None, witness, count if count_all else None)
