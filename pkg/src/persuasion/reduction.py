"""Exact Cover to Persuasion reduction, its back/forward maps and an exhaustive checker.

World layout of a reduced instance: ``W0``, ``X0``, then one ``Y_i_l`` per
membership ``s_l in A_i`` sorted by ``(i, l)``, then one ``Z_l`` per universe
element.  Event ``F_i`` removes the Y and Z worlds of ``A_i`` and nothing else.
"""
from __future__ import annotations

from concurrent.futures import Executor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import (
    Event,
    Observation,
    ObservationProfile,
    PersuasionInstance,
    ProbabilitySpace,
    WorldSet,
    format_rational,
    intersect,
    posterior,
)
from .parallel import run_tasks
from .errors import InvalidECI, ReductionInconsistency
from .solvers import (
    ExactCoverInstance,
    check_cap,
    eci_problems,
    exact_cover_brute,
    verify_cover,
)

W0, X0, Y, Z = "W0", "X0", "Y", "Z"


@dataclass(frozen=True)
class WorldRole:
    """``subset`` is the 0-based index of A_i (Y only); ``element`` is l (Y and Z)."""

    kind: str
    subset: int | None = None
    element: int | None = None

    @property
    def label(self) -> str:
        if self.kind == Y:
            return f"Y_{self.subset + 1}_{self.element}"
        if self.kind == Z:
            return f"Z_{self.element}"
        return self.kind


@dataclass(frozen=True)
class ReductionParams:
    n: int
    k: int
    m: int
    x: Fraction
    y: Fraction
    z: Fraction
    tau: Fraction


@dataclass(frozen=True)
class ReductionArtifact:
    instance: PersuasionInstance
    eci: ExactCoverInstance
    roles: tuple[WorldRole, ...]
    event_of_subset: tuple[int, ...]
    params: ReductionParams

    def worlds_with(self, kind: str) -> WorldSet:
        return WorldSet.of(
            (w for w, r in enumerate(self.roles) if r.kind == kind), len(self.roles)
        )


def reduction_params(n: int, k: int, m: int) -> ReductionParams:
    x = Fraction(1, 3)
    y = (1 - 2 * x) / (m * (1 + 2 * n))
    z = 2 * m * y
    tau = (x + (m - n) * y) / (2 * x + (m - n) * y)
    return ReductionParams(n, k, m, x, y, z, tau)


def reduce(eci: ExactCoverInstance) -> ReductionArtifact:
    problems = eci_problems(eci)
    if problems:
        raise InvalidECI("; ".join(problems))
    n, k = eci.universe_size, eci.k
    params = reduction_params(n, k, eci.m)

    roles = [WorldRole(W0), WorldRole(X0)]
    roles += [
        WorldRole(Y, i, ell) for i, s in enumerate(eci.subsets) for ell in sorted(s)
    ]
    roles += [WorldRole(Z, None, ell) for ell in range(1, n + 1)]
    width = len(roles)
    index = {r: w for w, r in enumerate(roles)}

    prob = {W0: params.x, X0: params.x, Y: params.y, Z: params.z}
    events = []
    for i, s in enumerate(eci.subsets):
        removed = WorldSet.of(
            [index[WorldRole(Y, i, ell)] for ell in s]
            + [index[WorldRole(Z, None, ell)] for ell in s],
            width,
        )
        events.append(Event(f"F{i + 1}", removed.complement()))
    space = ProbabilitySpace(
        tuple(r.label for r in roles), tuple(events), tuple(prob[r.kind] for r in roles)
    )
    goal = WorldSet.of((w for w, r in enumerate(roles) if r.kind in (W0, Y)), width)
    return ReductionArtifact(
        PersuasionInstance(space, goal, params.tau),
        eci,
        tuple(roles),
        tuple(range(k)),
        params,
    )


def back_map(art: ReductionArtifact, obs: Observation) -> frozenset[int]:
    """Subsets A_i with some Y_i_l removed by some selected event.

    Evaluated literally over the worlds, then cross-checked against the
    shortcut ``{i : F_i selected}`` that the event construction implies.
    """
    events = art.instance.space.events
    literal = set()
    for r in obs.selected:
        members = events[r].members
        for w, role in enumerate(art.roles):
            if role.kind == Y and w not in members:
                literal.add(role.subset)
    shortcut = {i for i, e in enumerate(art.event_of_subset) if e in obs.selected}
    if literal != shortcut:
        raise ReductionInconsistency(
            f"back map disagrees for {sorted(obs.selected)}: {literal} vs {shortcut}"
        )
    return frozenset(literal)


def forward_map(art: ReductionArtifact, h: Iterable[int]) -> Observation:
    return Observation(frozenset(art.event_of_subset[i] for i in h))


def profile(art: ReductionArtifact, obs: Observation) -> ObservationProfile:
    survivors = intersect(art.instance.space, obs)
    kinds = [art.roles[w].kind for w in survivors]
    return ObservationProfile(
        y_count=kinds.count(Y),
        z_count=kinds.count(Z),
        has_w0=W0 in kinds,
        has_x0=X0 in kinds,
    )


CHECKS = (
    ("z-survivor-below-threshold", "a surviving Z world keeps the posterior below tau"),
    ("few-y-below-threshold", "fewer than m-n surviving Y worlds keeps the posterior below tau"),
    ("solution-has-m-minus-n-y", "every solution leaves exactly m-n Y worlds"),
    ("solution-backmaps-to-cover", "every solution maps back to an exact cover"),
    ("solvability-equivalence", "the persuasion instance is solvable iff the cover instance is"),
    ("cover-hits-threshold", "every exact cover maps forward to posterior exactly tau"),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    violations: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class VerificationReport:
    params: ReductionParams
    observations: int
    solutions: int
    covers: int
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        p = self.params
        lines = [
            f"reduction n={p.n} k={p.k} m={p.m} tau={format_rational(p.tau)} "
            f"observations={self.observations} solutions={self.solutions} covers={self.covers}"
        ]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status} {c.name} violations={len(c.violations)}")
            for mask in c.violations:
                lines.append(f"  mask={mask:#x}")
        return "\n".join(lines) + "\n"


def _sweep_reduction(task):
    art, masks = task
    tau = art.params.tau
    target = art.params.m - art.params.n
    bad: list[list[int]] = [[], [], [], [], [], []]
    solutions: list[int] = []
    covers: list[int] = []
    for mask in masks:
        obs = Observation.from_mask(mask)
        prof = profile(art, obs)
        post = posterior(art.instance, obs)
        reaches = post >= tau
        if prof.z_count >= 1 and reaches:
            bad[0].append(mask)
        if prof.y_count < target and reaches:
            bad[1].append(mask)
        if reaches:
            solutions.append(mask)
            if prof.y_count != target:
                bad[2].append(mask)
            if not verify_cover(art.eci, back_map(art, obs)):
                bad[3].append(mask)
        # subset masks and observation masks coincide because F_i sits at index i
        h = obs.selected
        if verify_cover(art.eci, h):
            covers.append(mask)
            if posterior(art.instance, forward_map(art, h)) != tau:
                bad[5].append(mask)
    return bad, solutions, covers


def verify_reduction(
    eci: ExactCoverInstance,
    cap: int | None = None,
    workers: int = 1,
    executor: Executor | None = None,
) -> VerificationReport:
    """Sweep every observation of ``reduce(eci)`` and check the reduction's properties.

    All comparisons are exact.  Violations are reported as observation masks in
    ascending order, so the report is the same for any ``workers``.
    """
    check_cap(eci.k, cap)
    art = reduce(eci)
    total = 1 << eci.k
    n_tasks = 1 if workers <= 1 else min(total, workers * 4)
    tasks = [(art, range(t, total, n_tasks)) for t in range(n_tasks)]
    bad: list[list[int]] = [[] for _ in CHECKS]
    solutions: list[int] = []
    covers: list[int] = []
    for part_bad, part_sol, part_cov in run_tasks(_sweep_reduction, tasks, workers, executor):
        for acc, part in zip(bad, part_bad):
            acc.extend(part)
        solutions.extend(part_sol)
        covers.extend(part_cov)
    solutions.sort()
    covers.sort()

    cover_solvable = exact_cover_brute(eci, cap=cap).solvable
    if bool(solutions) != cover_solvable:
        # the least witness of whichever side is solvable
        bad[4] = [min(solutions or covers or [0])]

    checks = tuple(
        CheckResult(name, tuple(sorted(v))) for (name, _), v in zip(CHECKS, bad)
    )
    return VerificationReport(art.params, total, len(solutions), len(covers), checks)
