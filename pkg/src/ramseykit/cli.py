"""Command line interface: construct / solve / reduce / verify / lattice.

Results go to stdout (or --output) as canonical JSON; diagnostics go to
stderr. Exit codes: 0 success, 1 domain errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions as cons
from . import jsonio, lattice
from .core import ClopenCode, HorizonTooSmall, OpenCode, Universe
from .reductions import (
    UniverseTooSmall,
    generate_corpus,
    get_spec,
    run_reduction,
    verify_reduction,
)
from .solvers import (
    AvoidEvidence,
    DomainViolation,
    InvalidClopen,
    NotInDomain,
    ProblemKind,
    avigad_extract,
    solve,
)
from .trees import TreeGen

_DOMAIN_ERRORS = (
    NotInDomain,
    DomainViolation,
    HorizonTooSmall,
    InvalidClopen,
    UniverseTooSmall,
    cons.LengthOneGenerator,
    cons.NotAChain,
    cons.NotIncreasing,
    lattice.ParseError,
    ValueError,
    KeyError,
)


def _parse_universe(text: str) -> Universe:
    try:
        m, l = text.split(",")
        return Universe(M=int(m), L=int(l))
    except Exception as exc:
        raise argparse.ArgumentTypeError(f"universe must be 'M,L': {exc}") from exc


def _emit(args, payload) -> None:
    text = jsonio.dumps(payload) + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _load_instances(args) -> tuple[list, Universe]:
    instances = []
    universe = getattr(args, "universe", None)
    for path in args.instance:
        inst, embedded = jsonio.load_instance(path)
        instances.append(inst)
        if embedded is not None:
            universe = embedded  # embedded bounds override the flag
    if universe is None:
        raise SystemExit(2)
    return instances, universe


def _phi(name: str, universe: Universe) -> cons.EmbeddingMap:
    coder = cons.StringCoder(universe.M, universe.L)
    if name == "identity":
        return cons.identity_embedding(coder)
    if name == "pow2":
        return cons.pow_base(2)
    if name == "pow3":
        return cons.pow_base(3)
    raise ValueError(f"unknown embedding {name!r}")


def _cmd_construct(args) -> int:
    instances, universe = _load_instances(args)
    name = args.name
    if name == "union":
        result = cons.union_codes(*instances) if len(instances) == 2 else None
        if result is None:
            print("union needs two open instances", file=sys.stderr)
            return 2
    elif name == "complement":
        from .core import complement_clopen

        result = complement_clopen(instances[0])
    elif name == "element-power":
        result = cons.element_power_code(args.n, instances[0])
        universe = cons.power_universe(args.n, universe)
    elif name == "box-product":
        if len(instances) != 2:
            print("box-product needs two open instances", file=sys.stderr)
            return 2
        left = cons.ensure_min_gen_length(instances[0], universe)
        result = cons.box_product_codes(left, instances[1], universe)
        universe = cons.box_universe(universe)
    elif name == "solovay":
        result = cons.solovay_code(instances[0], _phi(args.phi, universe), universe)
    elif name == "describe-path":
        phi = cons.identity_embedding(cons.StringCoder(universe.M, universe.L))
        result = cons.describe_path_code(instances[0], phi)
        universe = cons.describe_universe(phi, universe.L + 1)
    elif name == "decode-path":
        phi = cons.identity_embedding(cons.StringCoder(universe.M, universe.L))
        result = cons.decode_path(instances[0], phi)
    elif name == "clopen-double":
        result = cons.clopen_double_code(instances[0], universe)
    elif name == "avoid-tree":
        result = cons.avoid_side_tree(instances[0], universe)
    else:
        print(f"unknown construction {name!r}", file=sys.stderr)
        return 2
    _emit(args, jsonio.instance_to_json(result, universe))
    return 0


def _cmd_solve(args) -> int:
    instances, universe = _load_instances(args)
    instance = instances[0]
    if args.engine == "avigad":
        if not isinstance(instance, OpenCode):
            print("the avigad engine takes an open code", file=sys.stderr)
            return 2
        result = avigad_extract(instance, universe)
        _emit(args, result.to_json())
        return 0
    kind = ProblemKind(args.kind)
    report = solve(kind, instance, universe, engine=args.engine)
    _emit(args, report.to_json())
    return 0


def _cmd_reduce(args) -> int:
    spec = get_spec(args.spec)
    instances, universe = _load_instances(args)
    instance = instances[0] if len(instances) == 1 else tuple(instances)
    output = run_reduction(spec, instance, universe)
    _emit(args, {"result": _plain(output)})
    return 0


def _plain(value):
    if isinstance(value, (TreeGen, OpenCode, ClopenCode)):
        return jsonio.instance_to_json(value)
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    return value


def _cmd_verify(args) -> int:
    spec = get_spec(args.spec)
    corpus = generate_corpus(spec.source_kind, args.universe, args.count, args.seed)
    report = verify_reduction(spec, corpus, args.universe, jobs=args.jobs)
    lines = [jsonio.dumps(item) for item in report.items]
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(
        f"{spec.id}: {report.n_pass}/{len(report.items)} passed",
        file=sys.stderr,
    )
    return 0


def _cmd_lattice(args) -> int:
    path = args.facts or lattice.default_facts_path()
    facts = lattice.load_facts(path)
    closure = lattice.close_and_check(facts)
    if args.action == "check":
        for c in closure.contradictions:
            print(c, file=sys.stderr)
        _emit(
            args,
            {
                "facts": len(facts.facts),
                "nodes": len(facts.nodes),
                "contradictions": len(closure.contradictions),
            },
        )
        return 0 if not closure.contradictions else 1
    if args.action == "dot":
        text = lattice.export_dot(facts, closure)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        return 0
    print(f"unknown lattice action {args.action!r}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramseykit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, instances: bool = True) -> None:
        if instances:
            p.add_argument("--instance", action="append", default=[], required=True)
        p.add_argument("--universe", type=_parse_universe, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", default=None)

    p = sub.add_parser("construct", help="apply a code/tree transformation")
    p.add_argument("name")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--phi", default="identity", choices=["identity", "pow2", "pow3"])
    common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("solve", help="solve a homogeneous-solution problem")
    p.add_argument("--kind", default=ProblemKind.SIGMA_RT.value,
                   choices=[k.value for k in ProblemKind])
    p.add_argument("--engine", default="pruned", choices=["brute", "pruned", "avigad"])
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("reduce", help="run a catalog reduction on an instance")
    p.add_argument("--spec", required=True)
    common(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify", help="validate a catalog reduction on a seeded corpus")
    p.add_argument("--spec", required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--jobs", type=int, default=int(os.environ.get("RAMSEY_JOBS", "1")))
    common(p, instances=False)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("lattice", help="check or render the degree fact database")
    p.add_argument("action", choices=["check", "dot"])
    p.add_argument("--facts", default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_lattice)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "verify" and args.universe is None:
        print("verify needs --universe M,L", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        name = type(exc).__name__
        sys.stdout.write(jsonio.dumps({"error": name, "detail": str(exc)}) + "\n")
        print(f"{name}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
