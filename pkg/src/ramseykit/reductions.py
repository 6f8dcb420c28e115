"""Reduction pipeline: forward instance transform, brute-force realizer,
backward solution transform, plus the executable catalog and corpus tools.

A reduction spec never touches the realizer: ``run_reduction`` always solves
the target instance with the exhaustive engine, so catalog verification is
anchored to the oracle. Forward transforms that enlarge the alphabet return
the enlarged universe along with the instance and the engine threads it.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from .constructions import (
    box_product_codes,
    box_universe,
    clopen_double_code,
    decode_pair_string,
    decode_path,
    describe_chain_generators,
    describe_path_code,
    describe_universe,
    ensure_min_gen_length,
    identity_embedding,
    pow_base,
    project_paired,
    solovay_code,
    string_code_pow,
    StringCoder,
)
from .core import Classification, ClopenCode, OpenCode, Universe, classify, union_codes
from .solvers import DomainViolation, NotInDomain, ProblemKind, solve_brute
from .trees import TreeGen, bounded_subtree, find_full_path, prefix_closure

__all__ = [
    "BackwardFailure",
    "CATALOG",
    "ReductionReport",
    "ReductionSpec",
    "UniverseTooSmall",
    "generate_corpus",
    "get_spec",
    "run_reduction",
    "verify_reduction",
]


class BackwardFailure(Exception):
    """The backward transform could not interpret the realizer answer."""


class UniverseTooSmall(ValueError):
    """No valid instance of the requested kind exists at the bounds."""


@dataclass(frozen=True)
class ReductionSpec:
    id: str
    source_kind: str
    target_kind: ProblemKind
    forward: Callable[[Any, Universe], tuple[Any, Universe]]
    backward: Callable[[Any, Universe, tuple, Universe], Any]


def run_reduction(spec: ReductionSpec, instance: Any, universe: Universe) -> Any:
    """forward, solve the target exhaustively, backward."""
    target_instance, target_universe = spec.forward(instance, universe)
    report = solve_brute(spec.target_kind, target_instance, target_universe)
    try:
        return spec.backward(instance, universe, report.solution, target_universe)
    except (NotInDomain, DomainViolation):
        raise
    except Exception as exc:  # noqa: BLE001 - surfaced as a broken spec
        raise BackwardFailure(str(exc)) from exc


# ---------------------------------------------------------------------------
# catalog


def _coder_for(universe: Universe) -> StringCoder:
    return StringCoder(alphabet=universe.M, max_len=universe.L)


def _describe_forward(tree: TreeGen, universe: Universe):
    phi = identity_embedding(_coder_for(universe))
    return describe_path_code(tree, phi), describe_universe(phi, universe.L + 1)


def _describe_backward(tree, universe, solution, target_universe):
    return decode_path(solution, identity_embedding(_coder_for(universe)))


def _id_forward(p: tuple, universe: Universe):
    phi = identity_embedding(_coder_for(universe))
    tree = TreeGen(prefix_closure([p]))
    return describe_path_code(tree, phi).pos, describe_universe(phi, universe.L + 1)


def _id_backward(p, universe, solution, target_universe):
    return decode_path(solution, identity_embedding(_coder_for(universe)))


def _econs_forward(d: ClopenCode, universe: Universe):
    return clopen_double_code(d, universe), universe


def _econs_backward(d, universe, solution, target_universe):
    return solution


def _box_forward(pair: tuple[OpenCode, OpenCode], universe: Universe):
    p1, p2 = pair
    p1 = ensure_min_gen_length(p1, universe)
    return box_product_codes(p1, p2, universe), box_universe(universe)


def _box_backward(pair, universe, solution, target_universe):
    paired = decode_pair_string(solution)
    return project_paired(1, paired), project_paired(2, paired)


def _union_forward(pair: tuple[OpenCode, OpenCode], universe: Universe):
    p, q = pair
    return union_codes(p, q), universe


def _union_backward(pair, universe, solution, target_universe):
    return solution, solution


def _solovay_tc_forward(tree: TreeGen, universe: Universe):
    return solovay_code(tree, identity_embedding(), universe), universe


def _solovay_tc_backward(tree, universe, solution, target_universe):
    path = find_full_path(bounded_subtree(tree, solution), universe)
    return path if path is not None else solution


def _stc_lift(universe: Universe) -> tuple[StringCoder, Universe]:
    coder = _coder_for(universe)
    lifted_M = 2**coder.size + 1
    lifted = Universe(M=lifted_M, L=universe.L + 1)
    if 3**lifted.L >= lifted_M:
        raise UniverseTooSmall("not enough power-of-3 values in the lifted alphabet")
    return coder, lifted


def _stc_forward(tree: TreeGen, universe: Universe):
    coder, lifted = _stc_lift(universe)
    # chains are materialized at full lifted length so the describe side has
    # one generator depth; pair generators would let junk tails land
    described = describe_chain_generators(tree, string_code_pow(2, coder), lifted.L)
    dodge = solovay_code(tree, pow_base(3), lifted)
    return union_codes(described, dodge), lifted


def _stc_backward(tree, universe, solution, target_universe):
    first = solution[0]
    if first >= 2 and first & (first - 1) == 0:
        coder = _coder_for(universe)
        return 1, decode_path(solution, string_code_pow(2, coder))
    return 0, solution


CATALOG: dict[str, ReductionSpec] = {
    spec.id: spec
    for spec in [
        ReductionSpec(
            "R-DESCRIBE", "ClosedChoice", ProblemKind.FIND_HS_DELTA,
            _describe_forward, _describe_backward,
        ),
        ReductionSpec(
            "R-STC", "StrongTotalChoice", ProblemKind.FIND_HS_SIGMA,
            _stc_forward, _stc_backward,
        ),
        ReductionSpec(
            "R-ECONS", "DeltaRT", ProblemKind.W_FIND_HS_DELTA,
            _econs_forward, _econs_backward,
        ),
        ReductionSpec(
            "R-ID", "Identity", ProblemKind.FIND_HS_SIGMA,
            _id_forward, _id_backward,
        ),
        ReductionSpec(
            "R-BOX", "FindHS_Sigma_pair", ProblemKind.FIND_HS_SIGMA,
            _box_forward, _box_backward,
        ),
        ReductionSpec(
            "R-UNION", "wFindHS_Pi_pair", ProblemKind.W_FIND_HS_PI,
            _union_forward, _union_backward,
        ),
        ReductionSpec(
            "R-SOLOVAY-TC", "TotalChoice", ProblemKind.SIGMA_RT,
            _solovay_tc_forward, _solovay_tc_backward,
        ),
    ]
}


def get_spec(spec_id: str) -> ReductionSpec:
    try:
        return CATALOG[spec_id]
    except KeyError:
        raise KeyError(
            f"unknown reduction spec {spec_id!r}; known: {sorted(CATALOG)}"
        ) from None


# ---------------------------------------------------------------------------
# ground-truth validation per source kind


def _validate(source_kind: str, instance: Any, universe: Universe, output: Any) -> str | None:
    """None when the output solves the source instance, else a description."""
    if source_kind == "Identity":
        return None if output == instance else f"expected {instance}, got {output}"
    if source_kind == "ClosedChoice":
        if output in instance and len(output) == universe.L:
            return None
        return f"{output} is not a full-length node"
    if source_kind == "TotalChoice":
        if find_full_path(instance, universe) is None:
            return None
        if output in instance and len(output) == universe.L:
            return None
        return f"tree has a full path but got {output}"
    if source_kind == "StrongTotalChoice":
        flag, value = output
        has_path = find_full_path(instance, universe) is not None
        if flag != (1 if has_path else 0):
            return f"flag {flag} but full path present: {has_path}"
        if has_path and not (value in instance and len(value) == universe.L):
            return f"flag 1 but {value} is not a full-length node"
        return None
    if source_kind == "FindHS_Sigma_pair":
        for part, code in zip(output, instance):
            if classify(part, code, universe) is not Classification.LANDS:
                return f"{part} does not land"
        return None
    if source_kind == "wFindHS_Pi_pair":
        for part, code in zip(output, instance):
            if classify(part, code, universe) is not Classification.AVOIDS:
                return f"{part} does not avoid"
        return None
    if source_kind == ProblemKind.DELTA_RT.value:
        if classify(output, instance, universe) is not Classification.NEITHER:
            return None
        return f"{output} is not homogeneous"
    raise ValueError(f"no validator for source kind {source_kind!r}")


@dataclass
class ReductionReport:
    spec_id: str
    items: list[dict] = field(default_factory=list)

    @property
    def n_pass(self) -> int:
        return sum(1 for item in self.items if item["pass"])

    @property
    def n_fail(self) -> int:
        return len(self.items) - self.n_pass

    @property
    def ok(self) -> bool:
        return self.n_fail == 0


def verify_reduction(
    spec: ReductionSpec,
    corpus: list,
    universe: Universe,
    jobs: int = 1,
) -> ReductionReport:
    """Run the reduction on every corpus instance and validate the output
    against the source problem's ground truth. Failures become report
    entries, never exceptions."""

    def one(indexed) -> dict:
        index, instance = indexed
        entry: dict = {"index": index, "pass": False}
        try:
            output = run_reduction(spec, instance, universe)
            problem = _validate(spec.source_kind, instance, universe, output)
            entry["output"] = _plain(output)
            if problem is None:
                entry["pass"] = True
            else:
                entry["error"] = problem
        except Exception as exc:  # noqa: BLE001 - recorded, not raised
            entry["error"] = f"{type(exc).__name__}: {exc}"
        return entry

    report = ReductionReport(spec_id=spec.id)
    work = list(enumerate(corpus))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            report.items = list(pool.map(one, work))
    else:
        report.items = [one(w) for w in work]
    return report


def _plain(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    return value


# ---------------------------------------------------------------------------
# corpus generation


def _rand_string(rng: random.Random, M: int, lo: int, hi: int) -> tuple[int, ...]:
    k = rng.randint(lo, min(hi, M))
    return tuple(sorted(rng.sample(range(M), k)))


def _rand_code(
    rng: random.Random,
    universe: Universe,
    max_gens: int = 4,
    min_len: int = 1,
    max_len: int | None = None,
    first_two: list[int] | None = None,
) -> OpenCode:
    max_len = universe.L if max_len is None else max_len
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        if first_two is not None:
            a, b = sorted(rng.sample(first_two, 2))
            tail_pool = [v for v in range(b + 1, universe.M)]
            extra = rng.randint(0, max(0, max_len - 2))
            tail = tuple(sorted(rng.sample(tail_pool, min(extra, len(tail_pool)))))
            gens.append((a, b) + tail)
        else:
            gens.append(_rand_string(rng, universe.M, min_len, max_len))
    return OpenCode(gens)


def _rand_tree(
    rng: random.Random,
    universe: Universe,
    plant_full: bool | None = None,
    dom_closed: bool = False,
) -> TreeGen:
    peaks = [
        _rand_string(rng, universe.M, 1, universe.L)
        for _ in range(rng.randint(1, 3))
    ]
    if plant_full is True or (plant_full is None and rng.random() < 0.5):
        peaks.append(_rand_string(rng, universe.M, universe.L, universe.L))
    elif plant_full is False:
        peaks = [p[: universe.L - 1] or (rng.randrange(universe.M),) for p in peaks]
    nodes = set(prefix_closure(peaks))
    if dom_closed:
        extra = set()
        for n in nodes:
            if not n:
                continue
            for t in itertools.combinations(range(max(n) + 1), len(n)):
                if all(a <= b for a, b in zip(t, n)):
                    extra.add(t)
        nodes |= extra
        nodes = set(prefix_closure(nodes))
    return TreeGen(nodes)


def _landing_exists(code: OpenCode, universe: Universe) -> bool:
    try:
        solve_brute(ProblemKind.FIND_HS_SIGMA, code, universe)
        return True
    except NotInDomain:
        return False


def _avoiding_exists(code: OpenCode, universe: Universe) -> bool:
    try:
        solve_brute(ProblemKind.FIND_HS_PI, code, universe)
        return True
    except NotInDomain:
        return False


def _gen_w_sigma(rng: random.Random, universe: Universe) -> OpenCode | None:
    # bias towards instances with no avoiding solution: pair generators over
    # a co-small value set kill every candidate avoider
    M, L = universe.M, universe.L
    co = rng.randint(0, max(0, L - 2))
    keep = sorted(rng.sample(range(M), M - co))
    pairs = [(a, b) for a, b in itertools.combinations(keep, 2) if rng.random() < 0.9]
    extras = [_rand_string(rng, M, 3, L) for _ in range(rng.randint(0, 2)) if L >= 3]
    code = OpenCode(pairs + extras)
    if not code.generators or code.depth > L:
        return None
    if _avoiding_exists(code, universe) or not _landing_exists(code, universe):
        return None
    return code


def _gen_one(kind: str, rng: random.Random, universe: Universe) -> Any | None:
    pk = None
    try:
        pk = ProblemKind(kind)
    except ValueError:
        pass
    if pk is ProblemKind.SIGMA_RT:
        code = _rand_code(rng, universe)
        return code if _landing_exists(code, universe) or _avoiding_exists(code, universe) else None
    if pk is ProblemKind.FIND_HS_SIGMA:
        code = _rand_code(rng, universe, min_len=1, max_len=2)
        return code if _landing_exists(code, universe) else None
    if pk is ProblemKind.FIND_HS_PI:
        code = _rand_code(rng, universe)
        return code if _avoiding_exists(code, universe) else None
    if pk is ProblemKind.W_FIND_HS_SIGMA:
        return _gen_w_sigma(rng, universe)
    if pk is ProblemKind.W_FIND_HS_PI:
        code = _rand_code(rng, universe, min_len=2)
        if _landing_exists(code, universe) or not _avoiding_exists(code, universe):
            return None
        return code
    if pk in (ProblemKind.DELTA_RT, ProblemKind.FIND_HS_DELTA, ProblemKind.W_FIND_HS_DELTA):
        side = rng.randrange(universe.M + 1)
        values = rng.sample(range(universe.M), side)
        pos = OpenCode([(v,) for v in sorted(values)]) if values else OpenCode([])
        neg_vals = [v for v in range(universe.M) if v not in values]
        neg = OpenCode([(v,) for v in neg_vals]) if neg_vals else OpenCode([])
        if not values:
            pos, neg = OpenCode([]), OpenCode([()])
        elif not neg_vals:
            pos, neg = OpenCode([()]), OpenCode([])
        d = ClopenCode(pos, neg)
        try:
            solve_brute(pk, d, universe)
        except (NotInDomain, DomainViolation):
            return None
        return d
    if kind == "ClosedChoice":
        return _rand_tree(rng, universe, plant_full=True)
    if kind == "TotalChoice":
        return _rand_tree(rng, universe, dom_closed=True)
    if kind == "StrongTotalChoice":
        return _rand_tree(rng, universe)
    if kind == "Identity":
        return _rand_string(rng, universe.M, universe.L, universe.L)
    if kind == "FindHS_Sigma_pair":
        # length-exactly-2 generators keep the pair coding sound at every
        # horizon (each 2-subsequence pins both coordinate generators)
        left = _rand_code(rng, universe, min_len=2, max_len=2)
        right = _rand_code(rng, universe, min_len=2, max_len=2)
        if _landing_exists(left, universe) and _landing_exists(right, universe):
            return left, right
        return None
    if kind == "wFindHS_Pi_pair":
        evens = [v for v in range(universe.M) if v % 2 == 0]
        odds = [v for v in range(universe.M) if v % 2 == 1]
        if len(evens) < 2 or len(odds) < 2:
            return None
        left = _rand_code(rng, universe, first_two=evens)
        right = _rand_code(rng, universe, first_two=odds)
        for code in (left, right):
            if code.depth > universe.L:
                return None
            if _landing_exists(code, universe) or not _avoiding_exists(code, universe):
                return None
        return left, right
    raise ValueError(f"unknown corpus kind {kind!r}")


def generate_corpus(
    kind: str, universe: Universe, count: int, seed: int, max_attempts: int = 4000
) -> list:
    """Deterministic seeded instances, filtered by brute-force domain
    membership. Same seed, same corpus."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    out: list = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > max_attempts + count:
            raise UniverseTooSmall(
                f"could not build {count} {kind} instances at {universe} "
                f"after {attempts} attempts"
            )
        item = _gen_one(kind, rng, universe)
        if item is not None:
            out.append(item)
    return out
