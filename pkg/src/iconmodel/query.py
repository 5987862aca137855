"""Basic-graph-pattern evaluation with property paths, plus the catalog
of competency questions bound to the shipped case studies.

Patterns are built through the API or a small JSON format; there is no
query-language parser. Competency questions always run over the closure
of their case fixture: several answers exist only by shortcut
contraction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional, Union

from .graph import BlankNode, Graph, Iri, Literal, Term, term_key
from .turtle_io import PrefixMap
from .vocab import DATA_NAMESPACE, NAMESPACES, curie_to_iri
from .reasoner import ClosureGraph


class QueryError(Exception):
    pass


class UnboundProjectionError(QueryError):
    pass


class UnknownQuestionError(QueryError):
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Inv:
    path: "PathExpr"


@dataclass(frozen=True)
class Seq:
    first: "PathExpr"
    second: "PathExpr"


@dataclass(frozen=True)
class Alt:
    left: "PathExpr"
    right: "PathExpr"


@dataclass(frozen=True)
class Plus:
    path: "PathExpr"


PathExpr = Union[Iri, Inv, Seq, Alt, Plus]
PatternTerm = Union[Term, Var]
PatternTriple = tuple[PatternTerm, Union[Iri, PathExpr, Var], PatternTerm]


@dataclass(frozen=True)
class Pattern:
    triples: tuple[PatternTriple, ...]


@dataclass(frozen=True)
class Solution:
    """One binding set; immutable and hashable for set semantics."""
    bindings: tuple[tuple[str, Term], ...]

    @classmethod
    def of(cls, mapping: dict[str, Term]) -> "Solution":
        return cls(tuple(sorted(mapping.items())))

    def __getitem__(self, name: str) -> Term:
        for k, v in self.bindings:
            if k == name:
                return v
        raise KeyError(name)

    def as_dict(self) -> dict[str, Term]:
        return dict(self.bindings)


def path_pairs(g: Graph, path: PathExpr) -> set[tuple[Term, Term]]:
    """All (start, end) pairs related by the path over the frozen graph."""
    if isinstance(path, Iri):
        return {(t.subject, t.object) for t in g.match(p=path)}
    if isinstance(path, Inv):
        return {(b, a) for a, b in path_pairs(g, path.path)}
    if isinstance(path, Seq):
        left = path_pairs(g, path.first)
        right = path_pairs(g, path.second)
        by_start: dict[Term, set[Term]] = {}
        for a, b in right:
            by_start.setdefault(a, set()).add(b)
        return {(a, c) for a, b in left for c in by_start.get(b, ())}
    if isinstance(path, Alt):
        return path_pairs(g, path.left) | path_pairs(g, path.right)
    if isinstance(path, Plus):
        pairs = path_pairs(g, path.path)
        out = set(pairs)
        while True:
            by_start: dict[Term, set[Term]] = {}
            for a, b in out:
                by_start.setdefault(a, set()).add(b)
            new = {(a, c) for a, b in out for c in by_start.get(b, ())} - out
            if not new:
                return out
            out |= new
    raise TypeError(f"bad path expression {path!r}")


def path_match(g: Graph, start: Term, path: PathExpr) -> set[Term]:
    return {b for a, b in path_pairs(g, path) if a == start}


def _bind(value: PatternTerm, binding: dict[str, Term]) -> PatternTerm:
    if isinstance(value, Var):
        return binding.get(value.name, value)
    return value


def evaluate(g: Graph, pattern: Pattern, projection: Iterable[Var]) -> set[Solution]:
    """Exactly the binding sets under which every pattern triple holds."""
    projection = list(projection)
    pattern_vars = set()
    for s, p, o in pattern.triples:
        for x in (s, p, o):
            if isinstance(x, Var):
                pattern_vars.add(x.name)
    for v in projection:
        if v.name not in pattern_vars:
            raise UnboundProjectionError(f"projected variable ?{v.name} "
                                         "does not occur in the pattern")

    def extend(binding: dict[str, Term],
               pairs: Iterable[tuple[PatternTerm, Term]]) -> Optional[dict[str, Term]]:
        nb = dict(binding)
        for slot, val in pairs:
            if isinstance(slot, Var):
                if slot.name in nb and nb[slot.name] != val:
                    return None
                nb[slot.name] = val
            elif slot != val:
                return None
        return nb

    bindings: list[dict[str, Term]] = [{}]
    for s, p, o in pattern.triples:
        next_bindings: list[dict[str, Term]] = []
        for binding in bindings:
            bs, bo = _bind(s, binding), _bind(o, binding)
            if isinstance(p, (Inv, Seq, Alt, Plus)):
                for a, b in path_pairs(g, p):
                    nb = extend(binding, ((bs, a), (bo, b)))
                    if nb is not None:
                        next_bindings.append(nb)
            else:
                bp = _bind(p, binding)
                ms = None if isinstance(bs, Var) else bs
                mp = None if isinstance(bp, Var) else bp
                mo = None if isinstance(bo, Var) else bo
                for t in g.match(s=ms, p=mp, o=mo):
                    nb = extend(binding, ((bs, t.subject), (bp, t.predicate),
                                          (bo, t.object)))
                    if nb is not None:
                        next_bindings.append(nb)
        bindings = next_bindings
    return {Solution.of({v.name: b[v.name] for v in projection}) for b in bindings}


# ---------------------------------------------------------------------------
# JSON pattern format

def _term_from_json(value, prefixes: PrefixMap) -> PatternTerm:
    if isinstance(value, dict):
        if "lit" in value:
            dt = value.get("datatype")
            return Literal(value["lit"], lang=value.get("lang"),
                           datatype=Iri(_resolve(dt, prefixes)) if dt else None)
        raise QueryError(f"bad term object {value!r}")
    if not isinstance(value, str):
        raise QueryError(f"bad term {value!r}")
    if value.startswith("?"):
        return Var(value[1:])
    if value.startswith("_:"):
        return BlankNode(value[2:])
    return Iri(_resolve(value, prefixes))


def _resolve(value: str, prefixes: PrefixMap) -> str:
    if value.startswith("<") and value.endswith(">"):
        return value[1:-1]
    if "://" in value:
        return value
    if ":" in value:
        prefix, local = value.split(":", 1)
        ns = prefixes.get(prefix)
        if ns is None:
            raise QueryError(f"undeclared prefix {prefix!r} in pattern")
        return ns + local
    raise QueryError(f"cannot resolve term {value!r}")


def _path_from_json(value, prefixes: PrefixMap):
    if isinstance(value, str):
        if value.startswith("?"):
            return Var(value[1:])
        return Iri(_resolve(value, prefixes))
    if isinstance(value, dict):
        if "inv" in value:
            return Inv(_path_from_json(value["inv"], prefixes))
        if "plus" in value:
            return Plus(_path_from_json(value["plus"], prefixes))
        if "seq" in value:
            parts = [_path_from_json(v, prefixes) for v in value["seq"]]
            if len(parts) < 2:
                raise QueryError("seq needs at least two steps")
            expr = parts[0]
            for part in parts[1:]:
                expr = Seq(expr, part)
            return expr
        if "alt" in value:
            parts = [_path_from_json(v, prefixes) for v in value["alt"]]
            if len(parts) < 2:
                raise QueryError("alt needs at least two branches")
            expr = parts[0]
            for part in parts[1:]:
                expr = Alt(expr, part)
            return expr
    raise QueryError(f"bad path expression {value!r}")


def pattern_from_json(doc: dict, prefixes: Optional[PrefixMap] = None
                      ) -> tuple[Pattern, list[Var]]:
    merged = dict(NAMESPACES)
    if prefixes:
        merged.update(prefixes)
    try:
        select = doc["select"]
        where = doc["where"]
    except (TypeError, KeyError):
        raise QueryError('pattern JSON needs "select" and "where" keys')
    projection = []
    for v in select:
        if not (isinstance(v, str) and v.startswith("?")):
            raise QueryError(f"bad projection entry {v!r}")
        projection.append(Var(v[1:]))
    triples = []
    for row in where:
        if not (isinstance(row, list) and len(row) == 3):
            raise QueryError(f"bad pattern triple {row!r}")
        s = _term_from_json(row[0], merged)
        p = _path_from_json(row[1], merged)
        o = _term_from_json(row[2], merged)
        triples.append((s, p, o))
    return Pattern(tuple(triples)), projection


def term_to_json(t: Term):
    if isinstance(t, Iri):
        return t.value
    if isinstance(t, BlankNode):
        return f"_:{t.label}"
    out = {"lit": t.lexical}
    if t.lang:
        out["lang"] = t.lang
    elif t.datatype and t.datatype.value != "http://www.w3.org/2001/XMLSchema#string":
        out["datatype"] = t.datatype.value
    return out


def term_from_json(value) -> Term:
    if isinstance(value, dict):
        dt = value.get("datatype")
        return Literal(value["lit"], lang=value.get("lang"),
                       datatype=Iri(dt) if dt else None)
    if value.startswith("_:"):
        return BlankNode(value[2:])
    return Iri(value)


def solutions_to_json(solutions: set[Solution]) -> list[dict]:
    rows = [{f"?{k}": term_to_json(v) for k, v in s.bindings} for s in solutions]
    return sorted(rows, key=lambda r: sorted(r.items(), key=str))


def solutions_from_json(rows: list[dict]) -> set[Solution]:
    out = set()
    for row in rows:
        out.add(Solution.of({k.lstrip("?"): term_from_json(v) for k, v in row.items()}))
    return out


# ---------------------------------------------------------------------------
# competency questions

@dataclass(frozen=True)
class CompetencyQuestion:
    id: str
    case_id: str
    prose: str
    pattern: Pattern
    projection: tuple[Var, ...]


def _d(case_id: str, slug: str) -> Iri:
    return Iri(f"{DATA_NAMESPACE}{case_id}/{slug}")


def cq_catalog() -> list[CompetencyQuestion]:
    def i(curie: str) -> Iri:
        return curie_to_iri(curie)

    vb = "vermeer-balance"
    lc = "laocoon"
    np = "neptune"
    hs = "hercules-salvation"
    return [
        CompetencyQuestion(
            "CQ1a", vb,
            "What is the relation between the act of weighting an empty balance "
            "and the weighing of Souls in the Last Judgement?",
            Pattern(((_d(vb, "weighing-balance-event"), Var("rel"),
                      _d(vb, "weighing-souls-event")),)),
            (Var("rel"),)),
        CompetencyQuestion(
            "CQ1b", vb,
            "What is the relation between the artwork and the phenomenon of "
            "Catholicism prohibition?",
            Pattern(((Var("artwork"), i("icon:isDocumentOf"), Var("phenomenon")),)),
            (Var("artwork"), Var("phenomenon"))),
        CompetencyQuestion(
            "CQ1c", vb,
            "What is the evidence of the relation between the artwork and the "
            "cultural phenomenon?",
            Pattern(((Var("recognition"), i("icon:assignsTo"),
                      _d(vb, "woman-holding-balance-painting")),
                     (Var("recognition"),
                      Alt(i("cito:citesAsEvidence"), i("cito:obtainsBackgroundFrom")),
                      Var("evidence")))),
            (Var("evidence"),)),
        CompetencyQuestion(
            "CQ2a", lc,
            "What are the different attributes of the subject in the two "
            "representations?",
            Pattern(((Var("character"), i("vir:K17_has_attribute"), Var("attribute")),)),
            (Var("character"), Var("attribute"))),
        CompetencyQuestion(
            "CQ2b", lc,
            "What is the cultural phenomenon characterising the artists' approach?",
            Pattern(((Var("artwork"), i("icon:isDocumentOf"), Var("phenomenon")),)),
            (Var("phenomenon"),)),
        CompetencyQuestion(
            "CQ3", np,
            "What is the symbolic meaning in common between the Neptune's statue, "
            "the iconographic source Quos Ego, and the text source of Virgil's work?",
            Pattern(((_d(np, "giambologna-quos-ego-representation"),
                      i("icon:symbolizes"), Var("meaning")),
                     (_d(np, "raimondi-quos-ego-representation"),
                      i("icon:symbolizes"), Var("meaning")),
                     (_d(np, "aeneid-text"), i("crm:P165_incorporates"),
                      Var("meaning")))),
            (Var("meaning"),)),
        CompetencyQuestion(
            "CQ4a", hs,
            "What are the attributes that allow us to recognize an iconographical "
            "subject and what are the attributes that are relevant to an "
            "iconological recognition?",
            Pattern(((Var("subject"),
                      Alt(i("icon:hasIdentifyingAttribute"), i("cito:citesAsEvidence")),
                      Var("attribute")),)),
            (Var("subject"), Var("attribute"))),
        CompetencyQuestion(
            "CQ4b", hs,
            "What is the relation between characters and attributes in the two "
            "scenes?",
            Pattern(((Var("later"), i("icon:showsMotifsOf"), Var("earlier")),)),
            (Var("later"), Var("earlier"))),
    ]


def find_cq(cq_id: str) -> CompetencyQuestion:
    for cq in cq_catalog():
        if cq.id == cq_id:
            return cq
    raise UnknownQuestionError(f"unknown competency question {cq_id!r}")


def load_golden(case_id: str) -> dict[str, set[Solution]]:
    text = (resources.files("iconmodel") / "fixtures" / f"{case_id}.golden.json"
            ).read_text("utf-8")
    doc = json.loads(text)
    return {cq_id: solutions_from_json(rows) for cq_id, rows in doc.items()}


@dataclass
class CqResult:
    solutions: set[Solution]
    matches_golden: bool


def run_cq(closure: ClosureGraph, cq_id: str) -> CqResult:
    """Evaluate one catalog question over a case closure and compare the
    result against the golden solution set shipped with the fixture."""
    cq = find_cq(cq_id)
    solutions = evaluate(closure.graph(), cq.pattern, cq.projection)
    golden = load_golden(cq.case_id).get(cq.id, set())
    return CqResult(solutions, solutions == golden)
