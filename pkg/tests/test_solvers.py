"""Solver engines: worked examples, oracle equivalence, extractor checks."""

import random

import pytest

from ramseykit import (
    AvoidEvidence,
    Classification,
    ClopenCode,
    DomainViolation,
    HSReport,
    NotInDomain,
    OpenCode,
    ProblemKind,
    Universe,
    avigad_extract,
    classify,
    full_strings,
    solve_brute,
    solve_pruned,
)
from ramseykit.reductions import _rand_code
from ramseykit.solvers import InvalidClopen

U63 = Universe(6, 3)


def test_delta_rt_example():
    d = ClopenCode(OpenCode([(0,), (2,), (4,)]), OpenCode([(1,), (3,), (5,)]))
    r = solve_brute(ProblemKind.DELTA_RT, d, U63)
    assert r == HSReport((0, 2, 4), Classification.LANDS)


def test_weak_sigma_examples():
    assert solve_brute(ProblemKind.W_FIND_HS_SIGMA, OpenCode([()]), U63).side is Classification.LANDS
    with pytest.raises(DomainViolation):
        solve_brute(ProblemKind.W_FIND_HS_SIGMA, OpenCode([]), U63)


def test_find_pi_least_witness():
    # (0,1,2) has no (1,3) subsequence, so it is the least avoider
    r = solve_pruned(ProblemKind.FIND_HS_PI, OpenCode([(1, 3)]), U63)
    assert r == HSReport((0, 1, 2), Classification.AVOIDS)


def test_find_sigma_odd_pairs():
    odd = OpenCode([(a, b) for a in range(6) for b in range(a + 1, 6) if a % 2 and b % 2])
    assert solve_pruned(ProblemKind.FIND_HS_SIGMA, odd, U63).solution == (1, 3, 5)


def test_invalid_clopen_rejected():
    bad = ClopenCode(OpenCode([(0,)]), OpenCode([(0, 1)]))
    with pytest.raises(InvalidClopen):
        solve_brute(ProblemKind.DELTA_RT, bad, Universe(4, 3))


def _outcome(engine, kind, code, universe):
    try:
        return engine(kind, code, universe)
    except (NotInDomain, DomainViolation) as exc:
        return type(exc).__name__


def test_pruned_equals_brute_on_random_instances():
    rng = random.Random(99)
    universes = [Universe(5, 3), Universe(6, 3), Universe(7, 3), Universe(8, 4)]
    open_kinds = [
        ProblemKind.SIGMA_RT, ProblemKind.FIND_HS_SIGMA, ProblemKind.FIND_HS_PI,
        ProblemKind.W_FIND_HS_SIGMA, ProblemKind.W_FIND_HS_PI,
    ]
    for _ in range(400):
        u = rng.choice(universes)
        code = _rand_code(rng, u, max_gens=5)
        kind = rng.choice(open_kinds)
        assert _outcome(solve_brute, kind, code, u) == _outcome(solve_pruned, kind, code, u)


def test_pruned_equals_brute_on_clopen_partitions():
    rng = random.Random(5)
    clopen_kinds = [ProblemKind.DELTA_RT, ProblemKind.FIND_HS_DELTA, ProblemKind.W_FIND_HS_DELTA]
    for _ in range(150):
        M = rng.choice([4, 5, 6])
        u = Universe(M, 3)
        values = rng.sample(range(M), rng.randrange(M + 1))
        pos = OpenCode([(v,) for v in sorted(values)]) if values else OpenCode([])
        rest = [v for v in range(M) if v not in values]
        neg = OpenCode([(v,) for v in rest]) if rest else OpenCode([])
        if not values:
            pos = OpenCode([])
            neg = OpenCode([()])
        if not rest:
            pos = OpenCode([()])
            neg = OpenCode([])
        d = ClopenCode(pos, neg)
        kind = rng.choice(clopen_kinds)
        assert _outcome(solve_brute, kind, d, u) == _outcome(solve_pruned, kind, d, u)


def test_weak_pi_domain_is_exhaustive():
    # wFindHS_Pi succeeds iff no full-length string lands
    rng = random.Random(17)
    u = Universe(6, 3)
    for _ in range(100):
        code = _rand_code(rng, u, max_gens=4)
        some_lands = any(
            classify(h, code, u) is Classification.LANDS for h in full_strings(u)
        )
        try:
            r = solve_brute(ProblemKind.W_FIND_HS_PI, code, u)
            assert not some_lands
            assert classify(r.solution, code, u) is Classification.AVOIDS
        except DomainViolation:
            assert some_lands
        except NotInDomain:
            assert not some_lands


# ---------------------------------------------------------------------------
# the labeling extractor


def test_avigad_trivial_codes():
    u = Universe(4, 3)
    r = avigad_extract(OpenCode([()]), u)
    assert r == HSReport((0, 1, 2), Classification.LANDS)
    r = avigad_extract(OpenCode([]), u)
    assert isinstance(r, AvoidEvidence) and r.reason == "full_length_avoid_node"


def test_avigad_even_pairs_has_avoiders():
    u = Universe(8, 3)
    even = OpenCode([(a, b) for a in range(8) for b in range(a + 1, 8) if a % 2 == 0 and b % 2 == 0])
    r = avigad_extract(even, u)
    assert isinstance(r, AvoidEvidence)
    # agreement with the oracle's side availability
    assert solve_brute(ProblemKind.FIND_HS_PI, even, u).side is Classification.AVOIDS


def test_avigad_state_record():
    u = Universe(5, 3)
    code = OpenCode([(a, b) for a in range(5) for b in range(a + 1, 5)])
    result, state = avigad_extract(code, u, with_state=True)
    assert isinstance(result, HSReport)
    assert state.root_good
    for node, (v, streams_u, good) in state.per_node.items():
        assert set(streams_u) <= set(v)
        assert list(v) == sorted(v) and list(streams_u) == sorted(streams_u)
        assert good == state.per_node[node][2]


def test_avigad_agrees_with_oracle_on_random_codes():
    rng = random.Random(31)
    universes = [Universe(6, 3), Universe(7, 3), Universe(8, 4)]
    for _ in range(250):
        u = rng.choice(universes)
        code = _rand_code(rng, u, max_gens=6, min_len=2)
        try:
            solve_brute(ProblemKind.W_FIND_HS_SIGMA, code, u)
            in_domain = True
        except (NotInDomain, DomainViolation):
            in_domain = False
        r = avigad_extract(code, u)
        if in_domain:
            assert isinstance(r, HSReport)
            assert classify(r.solution, code, u) is Classification.LANDS
        try:
            solve_brute(ProblemKind.FIND_HS_PI, code, u)
            has_avoiders = True
        except NotInDomain:
            has_avoiders = False
        if has_avoiders:
            assert isinstance(r, AvoidEvidence)
            assert r.witness is not None
            assert classify(r.witness, code, u) is Classification.AVOIDS
