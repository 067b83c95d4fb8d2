"""Line-oriented text formats for instances, role sidecars and verdicts.

Persuasion instance (events are written by the worlds they exclude)::

    # comment
    world <label> <p/q>
    event <name> excludes <label>...
    goal <label>...
    threshold <p/q>

Exact cover instance::

    universe <n>
    set <name> <element>...

Role sidecar for a reduced instance::

    params n=<n> k=<k> m=<m> x=<p/q> y=<p/q> z=<p/q> tau=<p/q>
    role <world label> W0|X0
    role <world label> Y <subset number> <element>
    role <world label> Z <element>
    subset <subset name> <event name>

Subset numbers are 1-based in files; blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .core import (
    Event,
    Observation,
    PersuasionInstance,
    ProbabilitySpace,
    Violation,
    WorldSet,
    format_rational,
    parse_rational,
    posterior,
    validate_space,
)
from .errors import InvalidInstance, InvalidRational, ParseError
from .reduction import ReductionArtifact, WorldRole, reduce
from .solvers import CoverVerdict, ExactCoverInstance, PersuasionVerdict


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _rational(token: str, lineno: int) -> Fraction:
    try:
        return parse_rational(token)
    except InvalidRational as exc:
        raise ParseError(str(exc), lineno) from None


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None


def render_ppi(inst: PersuasionInstance) -> str:
    space = inst.space
    out = []
    for label, p in zip(space.worlds, space.prob):
        out.append(f"world {label} {format_rational(p)}")
    for ev in space.events:
        excluded = space.labels(ev.members.complement())
        out.append(" ".join(["event", ev.name, "excludes", *excluded]))
    out.append(" ".join(["goal", *space.labels(inst.goal)]))
    out.append(f"threshold {format_rational(inst.threshold)}")
    return "\n".join(out) + "\n"


def parse_ppi(text: str) -> PersuasionInstance:
    worlds: list[str] = []
    prob: list[Fraction] = []
    index: dict[str, int] = {}
    raw_events: list[tuple[str, list[str], int]] = []
    goal: list[str] | None = None
    threshold: Fraction | None = None

    for lineno, tok in _lines(text):
        head = tok[0]
        if head == "world":
            if len(tok) != 3:
                raise ParseError("expected: world <label> <p/q>", lineno)
            if raw_events or goal is not None:
                raise ParseError("world lines must precede events and goal", lineno)
            if tok[1] in index:
                raise ParseError(f"duplicate world {tok[1]!r}", lineno)
            index[tok[1]] = len(worlds)
            worlds.append(tok[1])
            prob.append(_rational(tok[2], lineno))
        elif head == "event":
            if len(tok) < 3 or tok[2] != "excludes":
                raise ParseError("expected: event <name> excludes <label>...", lineno)
            raw_events.append((tok[1], tok[3:], lineno))
        elif head == "goal":
            if goal is not None:
                raise ParseError("more than one goal line", lineno)
            goal = tok[1:]
            goal_line = lineno
        elif head == "threshold":
            if len(tok) != 2 or threshold is not None:
                raise ParseError("expected a single: threshold <p/q>", lineno)
            threshold = _rational(tok[1], lineno)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    if goal is None:
        raise ParseError("missing goal line")
    if threshold is None:
        raise ParseError("missing threshold line")

    width = len(worlds)

    def world_set(labels: list[str], lineno: int) -> WorldSet:
        unknown = [lbl for lbl in labels if lbl not in index]
        if unknown:
            raise ParseError(f"unknown worlds {unknown}", lineno)
        if len(set(labels)) != len(labels):
            raise ParseError("a world is listed twice", lineno)
        return WorldSet.of((index[lbl] for lbl in labels), width)

    events = tuple(
        Event(name, world_set(excl, lineno).complement())
        for name, excl, lineno in raw_events
    )
    goal_set = world_set(goal, goal_line)
    space = ProbabilitySpace(tuple(worlds), events, tuple(prob))
    violations = validate_space(space)
    if not 0 <= threshold <= 1:
        violations.append(Violation("ThresholdRange", f"threshold {threshold}"))
    if violations:
        raise InvalidInstance(violations)
    return PersuasionInstance(space, goal_set, threshold)


def render_eci(eci: ExactCoverInstance) -> str:
    out = [f"universe {eci.universe_size}"]
    for name, s in zip(eci.names, eci.subsets):
        out.append(" ".join(["set", name, *map(str, sorted(s))]))
    return "\n".join(out) + "\n"


def parse_eci(text: str) -> ExactCoverInstance:
    n: int | None = None
    names: list[str] = []
    subsets: list[frozenset[int]] = []
    for lineno, tok in _lines(text):
        if tok[0] == "universe":
            if len(tok) != 2 or n is not None:
                raise ParseError("expected a single: universe <n>", lineno)
            n = _int(tok[1], lineno)
        elif tok[0] == "set":
            if len(tok) < 2:
                raise ParseError("expected: set <name> <element>...", lineno)
            elems = [_int(t, lineno) for t in tok[2:]]
            if len(set(elems)) != len(elems):
                raise ParseError("an element is listed twice", lineno)
            names.append(tok[1])
            subsets.append(frozenset(elems))
        else:
            raise ParseError(f"unknown directive {tok[0]!r}", lineno)
    if n is None:
        raise ParseError("missing universe line")
    return ExactCoverInstance(n, tuple(subsets), tuple(names))


def render_roles(art: ReductionArtifact) -> str:
    p = art.params
    out = [
        f"params n={p.n} k={p.k} m={p.m} x={format_rational(p.x)} "
        f"y={format_rational(p.y)} z={format_rational(p.z)} tau={format_rational(p.tau)}"
    ]
    labels = art.instance.space.worlds
    for label, role in zip(labels, art.roles):
        fields = [role.kind]
        if role.subset is not None:
            fields.append(str(role.subset + 1))
        if role.element is not None:
            fields.append(str(role.element))
        out.append(" ".join(["role", label, *fields]))
    events = art.instance.space.events
    for name, e in zip(art.eci.names, art.event_of_subset):
        out.append(f"subset {name} {events[e].name}")
    return "\n".join(out) + "\n"


def load_artifact(ppi_text: str, roles_text: str) -> ReductionArtifact:
    """Rebuild a reduction artifact from its instance file and role sidecar.

    The recovered cover instance is reduced again and must reproduce both
    files exactly.
    """
    inst = parse_ppi(ppi_text)
    params: dict[str, str] = {}
    roles: list[WorldRole] = []
    subset_names: list[str] = []
    for lineno, tok in _lines(roles_text):
        if tok[0] == "params":
            for item in tok[1:]:
                key, _, value = item.partition("=")
                params[key] = value
        elif tok[0] == "role":
            if len(tok) < 3:
                raise ParseError("expected: role <label> <kind> ...", lineno)
            kind, rest = tok[2], [_int(t, lineno) for t in tok[3:]]
            if kind in ("W0", "X0") and not rest:
                roles.append(WorldRole(kind))
            elif kind == "Y" and len(rest) == 2:
                roles.append(WorldRole("Y", rest[0] - 1, rest[1]))
            elif kind == "Z" and len(rest) == 1:
                roles.append(WorldRole("Z", None, rest[0]))
            else:
                raise ParseError(f"malformed role for {tok[1]!r}", lineno)
            if roles[-1].label != tok[1]:
                raise ParseError(f"role does not match label {tok[1]!r}", lineno)
        elif tok[0] == "subset":
            if len(tok) != 3:
                raise ParseError("expected: subset <name> <event>", lineno)
            subset_names.append(tok[1])
        else:
            raise ParseError(f"unknown directive {tok[0]!r}", lineno)
    try:
        n = int(params["n"])
    except (KeyError, ValueError):
        raise ParseError("params line must give n") from None
    members: list[set[int]] = [set() for _ in subset_names]
    for role in roles:
        if role.kind == "Y":
            if not 0 <= role.subset < len(members):
                raise ParseError(f"role refers to unknown subset {role.subset + 1}")
            members[role.subset].add(role.element)
    eci = ExactCoverInstance(n, tuple(map(frozenset, members)), tuple(subset_names))
    art = reduce(eci)
    if art.instance != inst or render_roles(art) != _canonical(roles_text):
        raise ParseError("instance and roles are not a reduction of the same cover instance")
    return art


def _canonical(text: str) -> str:
    return "\n".join(" ".join(tok) for _, tok in _lines(text)) + "\n"


def _braced(names: list[str]) -> str:
    return "{" + ", ".join(names) + "}"


def render_persuasion_verdict(inst: PersuasionInstance, v: PersuasionVerdict) -> str:
    out = [f"solvable: {'yes' if v.solvable else 'no'}"]
    if v.witness is not None:
        names = [inst.space.events[i].name for i in v.witness.indices()]
        out.append(f"witness: {_braced(names)}")
        out.append(f"witness_posterior: {format_rational(posterior(inst, v.witness))}")
    else:
        out.append("witness: none")
    if v.best_posterior is not None:
        out.append(f"best_posterior: {format_rational(v.best_posterior)}")
    return "\n".join(out) + "\n"


def render_cover_verdict(eci: ExactCoverInstance, v: CoverVerdict) -> str:
    out = [f"solvable: {'yes' if v.solvable else 'no'}"]
    if v.witness is not None:
        out.append(f"witness: {_braced([eci.names[i] for i in sorted(v.witness)])}")
    else:
        out.append("witness: none")
    if v.solution_count is not None:
        out.append(f"solution_count: {v.solution_count}")
    return "\n".join(out) + "\n"


def observation_from_names(inst: PersuasionInstance, names: list[str]) -> Observation:
    return Observation(frozenset(inst.space.event_index(n) for n in names))
