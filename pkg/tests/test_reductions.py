"""Reduction catalog: worked examples, corpus verification, negative control."""

import dataclasses

import pytest

from ramseykit import (
    Classification,
    ClopenCode,
    OpenCode,
    TreeGen,
    Universe,
    classify,
    prefix_closure,
    solve_brute,
)
from ramseykit.constructions import pow_base, solovay_code
from ramseykit.reductions import (
    CATALOG,
    UniverseTooSmall,
    generate_corpus,
    get_spec,
    run_reduction,
    verify_reduction,
)
from ramseykit.solvers import ProblemKind


def tree_of(*peaks):
    return TreeGen(prefix_closure(peaks))


def test_describe_example():
    out = run_reduction(get_spec("R-DESCRIBE"), tree_of((0, 1, 3)), Universe(4, 3))
    assert out == (0, 1, 3)


def test_id_roundtrip():
    out = run_reduction(get_spec("R-ID"), (1, 2, 4), Universe(5, 3))
    assert out == (1, 2, 4)


def test_stc_both_branches():
    u = Universe(3, 2)
    flag, value = run_reduction(get_spec("R-STC"), tree_of((0, 2)), u)
    assert flag == 1 and value == (0, 2)
    flag, value = run_reduction(get_spec("R-STC"), tree_of((1,)), u)
    assert flag == 0


def test_solovay_tc_dominated_path():
    u = Universe(5, 3)
    corpus = generate_corpus("TotalChoice", u, 20, seed=3)
    spec = get_spec("R-SOLOVAY-TC")
    rep = verify_reduction(spec, corpus, u)
    assert rep.ok, rep.items


def test_econs_identity_backward():
    u = Universe(6, 3)
    d = ClopenCode(OpenCode([(0,), (2,), (4,)]), OpenCode([(1,), (3,), (5,)]))
    out = run_reduction(get_spec("R-ECONS"), d, u)
    assert classify(out, d, u) is not Classification.NEITHER


def test_union_avoids_both_components():
    u = Universe(12, 3)
    # Solovay codes of ill-founded-at-horizon trees over disjoint power ranges
    t1 = tree_of((0, 1, 2), (0, 1, 3))
    t2 = tree_of((0, 1, 2), (1, 2, 3))
    p = solovay_code(t1, pow_base(2), u)
    q = solovay_code(t2, pow_base(3), u)
    out = run_reduction(get_spec("R-UNION"), (p, q), u)
    f, g = out
    assert f == g
    assert classify(f, p, u) is Classification.AVOIDS
    assert classify(f, q, u) is Classification.AVOIDS


def test_catalog_verification_small():
    plans = {
        "R-DESCRIBE": Universe(4, 3),
        "R-STC": Universe(3, 2),
        "R-ECONS": Universe(6, 3),
        "R-ID": Universe(5, 3),
        "R-BOX": Universe(5, 2),
        "R-UNION": Universe(6, 3),
        "R-SOLOVAY-TC": Universe(5, 3),
    }
    for sid, u in plans.items():
        spec = CATALOG[sid]
        corpus = generate_corpus(spec.source_kind, u, 40, seed=20)
        rep = verify_reduction(spec, corpus, u)
        assert rep.ok, (sid, [i for i in rep.items if not i["pass"]][:3])


def test_verify_parallel_matches_serial():
    u = Universe(5, 3)
    spec = CATALOG["R-DESCRIBE"]
    corpus = generate_corpus(spec.source_kind, u, 20, seed=8)
    serial = verify_reduction(spec, corpus, u, jobs=1)
    parallel = verify_reduction(spec, corpus, u, jobs=4)
    assert serial.items == parallel.items


def test_corrupted_spec_reports_failures():
    spec = get_spec("R-DESCRIBE")
    broken = dataclasses.replace(spec, backward=lambda inst, u, sol, tu: sol)
    u = Universe(4, 3)
    corpus = generate_corpus(spec.source_kind, u, 15, seed=4)
    rep = verify_reduction(broken, corpus, u)
    assert rep.n_fail > 0


def test_generate_corpus_is_deterministic_and_in_domain():
    u = Universe(6, 3)
    a = generate_corpus("FindHS_Sigma", u, 10, seed=42)
    b = generate_corpus("FindHS_Sigma", u, 10, seed=42)
    assert a == b
    for code in a:
        r = solve_brute(ProblemKind.FIND_HS_SIGMA, code, u)
        assert r.side is Classification.LANDS
    pis = generate_corpus("wFindHS_Pi", u, 5, seed=1)
    for code in pis:
        assert solve_brute(ProblemKind.W_FIND_HS_PI, code, u).side is Classification.AVOIDS


def test_generate_corpus_guards():
    with pytest.raises(ValueError):
        generate_corpus("FindHS_Sigma", Universe(6, 3), 0, seed=1)
    with pytest.raises(UniverseTooSmall):
        generate_corpus("wFindHS_Pi_pair", Universe(3, 2), 3, seed=1, max_attempts=50)
    with pytest.raises(KeyError):
        get_spec("R-NONSENSE")


def test_forward_size_stays_polynomial():
    # |box product gens| <= |P||Q| * M^(2 depth); the loose documented bound
    u = Universe(5, 2)
    rng_codes = generate_corpus("FindHS_Sigma_pair", u, 10, seed=9)
    from ramseykit.constructions import box_product_codes

    for p1, p2 in rng_codes:
        prod = box_product_codes(p1, p2, u)
        bound = len(p1) * len(p2) * u.M ** (2 * max(p1.depth, p2.depth))
        assert len(prod) <= bound
