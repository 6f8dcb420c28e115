"""Machine-checked database of degree nodes and (non-)reducibility facts.

Facts are stored directed and raw, one per line::

    LHS REL RHS  # citation
    node NAME [annotation ...]  # citation

All symmetry and implication content is derived by the closure engine, never
stored. The closure tracks provenance so a contradiction can be reported
with its derivation chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

__all__ = [
    "Closure",
    "FactSet",
    "ParseError",
    "RelFact",
    "close_and_check",
    "default_facts_path",
    "export_dot",
    "load_facts",
    "parse_facts",
]

RELATIONS = (
    "leW", "ltW", "equivW", "leSW", "equivSW", "notLeW", "notLeSW",
    "leAW", "ltAW", "equivAW", "incompW",
)
_STRICT = {"ltW", "ltAW", "incompW", "notLeW", "notLeSW"}

# positive/negative derived levels
_LEVELS = ("W", "SW", "AW")


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class RelFact:
    lhs: str
    relation: str
    rhs: str
    citation: str = ""

    def __str__(self) -> str:
        return f"{self.lhs} {self.relation} {self.rhs}"


@dataclass
class FactSet:
    facts: list[RelFact] = field(default_factory=list)
    node_notes: dict[str, list[str]] = field(default_factory=dict)

    @property
    def nodes(self) -> list[str]:
        seen = set(self.node_notes)
        for f in self.facts:
            seen.add(f.lhs)
            seen.add(f.rhs)
        return sorted(seen)

    def add_node(self, name: str, note: str = "") -> None:
        self.node_notes.setdefault(name, [])
        if note:
            self.node_notes[name].append(note)


def parse_facts(text: str) -> FactSet:
    out = FactSet()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, citation = raw.partition("#")
        body = body.strip()
        citation = citation.strip()
        if not body:
            continue
        parts = body.split()
        if parts[0] == "node":
            if len(parts) < 2:
                raise ParseError(f"line {lineno}: node line needs a name")
            out.add_node(parts[1], " ".join(parts[2:]))
            continue
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'LHS REL RHS', got {body!r}")
        lhs, rel, rhs = parts
        if rel not in RELATIONS:
            raise ParseError(f"line {lineno}: unknown relation {rel!r}")
        if lhs == rhs and rel in _STRICT:
            raise ParseError(f"line {lineno}: {rel} needs distinct sides")
        out.facts.append(RelFact(lhs, rel, rhs, citation))
    return out


def load_facts(path: str | Path) -> FactSet:
    return parse_facts(Path(path).read_text())


def default_facts_path() -> Path:
    return Path(str(resources.files("ramseykit").joinpath("data/figure1.facts")))


# ---------------------------------------------------------------------------
# closure


@dataclass
class Closure:
    le: dict[str, set[tuple[str, str]]]
    not_le: dict[str, set[tuple[str, str]]]
    incomparable: set[tuple[str, str]]
    provenance: dict
    contradictions: list[str]
    nodes: list[str]

    def holds(self, level: str, a: str, b: str) -> bool:
        return (a, b) in self.le[level]

    def equiv_aw_classes(self) -> list[list[str]]:
        """Arithmetic equivalence classes with at least two members."""
        classes: list[list[str]] = []
        seen: set[str] = set()
        for a in self.nodes:
            if a in seen:
                continue
            cls = [
                b
                for b in self.nodes
                if self.holds("AW", a, b) and self.holds("AW", b, a)
            ]
            seen.update(cls)
            if len(cls) >= 2:
                classes.append(sorted(cls))
        return sorted(classes)

    def explain(self, level: str, a: str, b: str, negative: bool = False) -> list[str]:
        key = (("not" if negative else "") + level, a, b)
        return _render_chain(self.provenance, key)


def _render_chain(prov: dict, key, depth: int = 0) -> list[str]:
    if depth > 12 or key not in prov:
        return []
    why = prov[key]
    kind, a, b = key
    if why[0] == "given":
        return [f"{kind}({a},{b})  [fact: {why[1]}]"]
    lines = [f"{kind}({a},{b})  [{why[0]}]"]
    for parent in why[1:]:
        for sub in _render_chain(prov, parent, depth + 1):
            lines.append("  " + sub)
    return lines


def close_and_check(factset: FactSet) -> Closure:
    nodes = factset.nodes
    le: dict[str, set[tuple[str, str]]] = {lvl: set() for lvl in _LEVELS}
    not_le: dict[str, set[tuple[str, str]]] = {lvl: set() for lvl in _LEVELS}
    incomparable: set[tuple[str, str]] = set()
    prov: dict = {}

    def add_le(lvl: str, a: str, b: str, why) -> bool:
        if (a, b) in le[lvl]:
            return False
        le[lvl].add((a, b))
        prov[(lvl, a, b)] = why
        return True

    def add_not(lvl: str, a: str, b: str, why) -> bool:
        if (a, b) in not_le[lvl]:
            return False
        not_le[lvl].add((a, b))
        prov[("not" + lvl, a, b)] = why
        return True

    # seed with the raw facts
    for f in factset.facts:
        given = ("given", str(f) + (f" # {f.citation}" if f.citation else ""))
        a, b = f.lhs, f.rhs
        if f.relation == "leW":
            add_le("W", a, b, given)
        elif f.relation == "ltW":
            add_le("W", a, b, given)
            add_not("W", b, a, given)
        elif f.relation == "equivW":
            add_le("W", a, b, given)
            add_le("W", b, a, given)
        elif f.relation == "leSW":
            add_le("SW", a, b, given)
        elif f.relation == "equivSW":
            add_le("SW", a, b, given)
            add_le("SW", b, a, given)
        elif f.relation == "notLeW":
            add_not("W", a, b, given)
        elif f.relation == "notLeSW":
            add_not("SW", a, b, given)
        elif f.relation == "leAW":
            add_le("AW", a, b, given)
        elif f.relation == "ltAW":
            add_le("AW", a, b, given)
            add_not("AW", b, a, given)
        elif f.relation == "equivAW":
            add_le("AW", a, b, given)
            add_le("AW", b, a, given)
        elif f.relation == "incompW":
            incomparable.add((a, b))
            prov[("incompW", a, b)] = given

    for n in nodes:
        for lvl in _LEVELS:
            add_le(lvl, n, n, ("reflexivity",))

    # fixed point under implication and transitivity
    changed = True
    while changed:
        changed = False
        # strong implies plain, plain implies arithmetic
        for a, b in list(le["SW"]):
            if add_le("W", a, b, ("strong-implies-plain", ("SW", a, b))):
                changed = True
        for a, b in list(le["W"]):
            if add_le("AW", a, b, ("plain-implies-arithmetic", ("W", a, b))):
                changed = True
        # failure propagates downward: no arithmetic reduction means no plain
        # one, no plain one means no strong one
        for a, b in list(not_le["AW"]):
            if add_not("W", a, b, ("no-arithmetic-so-no-plain", ("notAW", a, b))):
                changed = True
        for a, b in list(not_le["W"]):
            if add_not("SW", a, b, ("no-plain-so-no-strong", ("notW", a, b))):
                changed = True
        # transitivity per level
        for lvl in _LEVELS:
            pairs = list(le[lvl])
            by_lhs: dict[str, list[str]] = {}
            for a, b in pairs:
                by_lhs.setdefault(a, []).append(b)
            for a, b in pairs:
                for c in by_lhs.get(b, ()):
                    if add_le(
                        lvl, a, c, ("transitivity", (lvl, a, b), (lvl, b, c))
                    ):
                        changed = True

    contradictions: list[str] = []
    for lvl in _LEVELS:
        for a, b in sorted(le[lvl] & not_le[lvl]):
            lines = [f"le{lvl}({a},{b}) holds and is denied:"]
            lines += ["  " + s for s in _render_chain(prov, (lvl, a, b))]
            lines += ["  " + s for s in _render_chain(prov, ("not" + lvl, a, b))]
            contradictions.append("\n".join(lines))
    for a, b in sorted(incomparable):
        for x, y in ((a, b), (b, a)):
            if (x, y) in le["W"]:
                lines = [f"incompW({a},{b}) but leW({x},{y}) is derivable:"]
                lines += ["  " + s for s in _render_chain(prov, ("W", x, y))]
                contradictions.append("\n".join(lines))

    return Closure(
        le=le,
        not_le=not_le,
        incomparable=incomparable,
        provenance=prov,
        contradictions=contradictions,
        nodes=nodes,
    )


# ---------------------------------------------------------------------------
# DOT export


def export_dot(factset: FactSet, closure: Closure | None = None) -> str:
    """Render the raw facts as a DOT digraph: dashed edges for non-strict
    reducibility, solid for strict, clusters for arithmetic equivalence
    classes. Node and edge order is deterministic."""
    closure = closure or close_and_check(factset)
    classes = closure.equiv_aw_classes()
    clustered = {n for cls in classes for n in cls}
    lines = ["digraph degrees {", "  rankdir=BT;", "  node [shape=box];"]
    for i, cls in enumerate(classes):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="arithmetic class: {" = ".join(cls)}";')
        for n in cls:
            lines.append(f'    "{n}";')
        lines.append("  }")
    for n in closure.nodes:
        if n not in clustered:
            lines.append(f'  "{n}";')
    edges: set[tuple[str, str, str]] = set()
    for f in factset.facts:
        if f.relation in ("leW", "leSW"):
            edges.add((f.lhs, f.rhs, "[style=dashed]"))
        elif f.relation in ("equivW", "equivSW"):
            edges.add((f.lhs, f.rhs, "[style=dashed, dir=both]"))
        elif f.relation == "ltW":
            edges.add((f.lhs, f.rhs, "[style=solid]"))
    for lhs, rhs, attrs in sorted(edges):
        lines.append(f'  "{lhs}" -> "{rhs}" {attrs};')
    lines.append("}")
    return "\n".join(lines) + "\n"
