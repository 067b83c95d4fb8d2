"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline.
"""
import os
import subprocess
import sys
import time
from fractions import Fraction

import pytest

import oracles
from conftest import obs
from persuasion import (
    ExactCoverInstance,
    brute_force_persuasion,
    exact_cover_brute,
    exact_cover_dlx,
    forward_map,
    posterior,
    reduce,
    strong_persuasion_general,
    strong_persuasion_standard,
    validate_space,
    verify_cover,
    verify_reduction,
)
from persuasion.formats import parse_ppi, render_persuasion_verdict, render_ppi
from persuasion.generate import GenConfig, gen_eci, gen_ppi

CORPUS_SEEDS = range(500)
EQUIVALENCE = 4  # index of the solvability-equivalence check in a report


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def corpus():
    fixtures = [
        ExactCoverInstance(2, ({1}, {2}, {1, 2})),
        ExactCoverInstance(3, ({1, 2}, {2, 3})),
    ]
    return [gen_eci(GenConfig(seed=s, n=(1, 6), k=(1, 7))) for s in CORPUS_SEEDS] + fixtures


@pytest.fixture(scope="module")
def reports(corpus):
    return [verify_reduction(eci) for eci in corpus]


def test_corpus_shape(corpus):
    assert len(corpus) >= 502
    assert all(eci.universe_size <= 6 and eci.k <= 7 for eci in corpus)
    solvable = sum(exact_cover_brute(eci).solvable for eci in corpus)
    # both outcomes are represented
    assert 0 < solvable < len(corpus)


def test_1_reduction_equivalence(capsys, corpus, reports):
    start = time.perf_counter()
    agree = sum(
        exact_cover_brute(eci).solvable == brute_force_persuasion(reduce(eci).instance).solvable
        for eci in corpus
    )
    elapsed = time.perf_counter() - start
    flagged = sum(not r.checks[EQUIVALENCE].passed for r in reports)
    ok = agree == len(corpus) and flagged == 0 and elapsed < 60
    report(
        capsys, 1, ok,
        f"agreement {agree}/{len(corpus)} in {elapsed:.2f}s (limit 60s); "
        f"{flagged} reports flag a mismatch",
    )


def test_2_reduced_space_is_a_distribution(capsys):
    bad = 0
    for seed in range(1000):
        space = reduce(gen_eci(GenConfig(seed=seed, n=(1, 8), k=(1, 10)))).instance.space
        if validate_space(space) or sum(space.prob, Fraction(0)) != 1:
            bad += 1
    report(capsys, 2, bad == 0, f"{bad} of 1000 reduced spaces invalid; sum exactly 1 otherwise")


def test_3_threshold_lemmas(capsys, corpus, reports):
    violations = sum(len(c.violations) for r in reports for c in r.checks[:4])
    observations = sum(r.observations for r in reports)
    report(
        capsys, 3, violations == 0,
        f"{violations} violations of checks (a)-(d) over {observations} observations",
    )


def test_4_covers_hit_threshold_exactly(capsys, corpus, reports, worked_art):
    covers = mismatches = 0
    for eci in corpus:
        art = reduce(eci)
        for h in oracles.exact_covers(eci.universe_size, list(eci.subsets)):
            covers += 1
            if posterior(art.instance, forward_map(art, h)) != art.params.tau:
                mismatches += 1
    flagged = sum(len(r.checks[5].violations) for r in reports)
    worked = posterior(worked_art.instance, forward_map(worked_art, {2}))
    ok = mismatches == 0 and flagged == 0 and covers > 0 and worked == Fraction(11, 21)
    report(capsys, 4, ok, f"{covers} covers, {mismatches} off tau; worked instance gives {worked}")


def test_5_strong_persuasion(capsys):
    disagreements = 0
    solvable = 0
    for seed in range(1000):
        inst = gen_ppi(
            GenConfig(seed=seed, worlds=(2, 64), events=(0, 12), threshold=Fraction(1),
                      positive=True, anchored=True)
        )
        verdicts = {
            strong_persuasion_standard(inst).solvable,
            strong_persuasion_general(inst).solvable,
            brute_force_persuasion(inst).solvable,
        }
        disagreements += len(verdicts) > 1
        solvable += True in verdicts

    slowest = 0.0
    for seed in range(1000):
        inst = gen_ppi(
            GenConfig(seed=10_000 + seed, worlds=(32, 64), events=(8, 16),
                      threshold=Fraction(1), positive=True, anchored=True)
        )
        for decide in (strong_persuasion_standard, strong_persuasion_general):
            best = min(_timed(decide, inst) for _ in range(3))
            slowest = max(slowest, best)
    ok = disagreements == 0 and slowest < 1e-3
    report(
        capsys, 5, ok,
        f"{disagreements} disagreements over 1000 ({solvable} solvable); "
        f"slowest polynomial decision {slowest * 1e3:.3f} ms (limit 1 ms)",
    )


def _timed(fn, arg):
    t0 = time.perf_counter()
    fn(arg)
    return time.perf_counter() - t0


def test_6_dlx(capsys, corpus):
    extra = [gen_eci(GenConfig(seed=s, n=(4, 8), k=(8, 12))) for s in range(200)]
    pool = [eci for eci in corpus + extra if eci.k <= 12]
    disagree = sum(exact_cover_dlx(e).solvable != exact_cover_brute(e).solvable for e in pool)
    slowest = 0.0
    bad_witness = 0
    for seed in range(20):
        eci = gen_eci(GenConfig(seed=seed, n=(25, 25), k=(50, 50), planted=seed % 2 == 1))
        t0 = time.perf_counter()
        v = exact_cover_dlx(eci)
        slowest = max(slowest, time.perf_counter() - t0)
        if v.solvable and not verify_cover(eci, v.witness):
            bad_witness += 1
    ok = disagree == 0 and slowest < 1.0 and bad_witness == 0
    report(
        capsys, 6, ok,
        f"{disagree} disagreements over {len(pool)} instances; "
        f"n=25,k=50 slowest {slowest * 1e3:.1f} ms (limit 1000 ms)",
    )


_RENDER_IN_FRESH_PROCESS = (
    "import sys\n"
    "from persuasion import ExactCoverInstance, reduce\n"
    "from persuasion.formats import render_ppi\n"
    "sys.stdout.write(render_ppi(reduce(ExactCoverInstance(2, ({1}, {2}, {1, 2}))).instance))\n"
)


def test_7_exactness_and_stability(capsys, worked_eci):
    first = render_ppi(reduce(worked_eci).instance)
    second = subprocess.run(
        [sys.executable, "-c", _RENDER_IN_FRESH_PROCESS],
        capture_output=True, text=True, check=True,
        env={**os.environ, "PYTHONHASHSEED": "12345"},
    ).stdout
    again = parse_ppi(first)
    values = (posterior(again, obs(3)), posterior(again, obs(1, 3)))
    ok = first == second and render_ppi(again) == first and values == (
        Fraction(11, 21), Fraction(21, 41)
    )
    report(
        capsys, 7, ok,
        f"byte-identical across processes={first == second}; "
        f"posteriors after round trip {values[0]}, {values[1]}",
    )


def test_8_worker_independence(capsys, corpus, reports, pool):
    differing = 0
    for eci, single in zip(corpus, reports):
        if verify_reduction(eci, workers=3, executor=pool).render() != single.render():
            differing += 1
        inst = reduce(eci).instance
        one = render_persuasion_verdict(inst, brute_force_persuasion(inst))
        many = render_persuasion_verdict(inst, brute_force_persuasion(inst, workers=3, executor=pool))
        differing += one != many
    report(capsys, 8, differing == 0, f"{differing} differing outputs between 1 and 3 workers")
