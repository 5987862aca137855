"""Forward-chaining materialization over an interpretation graph.

Rules (all driven by the registry's alignment axioms):
  R1/R3  transitivity of asserted rdfs:subClassOf / rdfs:subPropertyOf
  R2/R4  instance/statement propagation along the hierarchy, both for
         registry axiom edges and for edges asserted in the graph
  R5     domain/range typing (off by default; the declarations are
         treated as validation constraints, not inference licenses)
  R6     shortcut contraction: a recognition node assigning m to x
         yields (x icon:symbolizes m), and additionally
         (x icon:isDocumentOf m) when m is a cultural phenomenon

Evaluation is semi-naive: only newly derived triples re-fire rules.
Shortcut *expansion* mints blank nodes and is deliberately not part of
close(); it is the explicit authoring operation expand_shortcut().
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .graph import BlankNode, Graph, Iri, Literal, Term, Triple, union
from .turtle_io import RDF_TYPE
from .vocab import TermRegistry


class ReasonerError(Exception):
    pass


class WrongPredicateError(ReasonerError):
    pass


@dataclass
class RuleSet:
    hierarchy: bool = True
    shortcut_contraction: bool = True
    domain_range_typing: bool = False

    def any_enabled(self) -> bool:
        return self.hierarchy or self.shortcut_contraction or self.domain_range_typing


@dataclass(frozen=True)
class Derivation:
    rule: str
    premises: tuple[Triple, ...]


@dataclass
class ClosureGraph:
    base: Graph
    inferred: Graph
    provenance: dict[Triple, Derivation] = field(default_factory=dict)

    def __contains__(self, t: Triple) -> bool:
        return t in self.base or t in self.inferred

    def graph(self) -> Graph:
        return union(self.base, self.inferred)

    def __len__(self) -> int:
        return len(self.base) + len(self.inferred)


class _Engine:
    def __init__(self, base: Graph, reg: TermRegistry, rules: RuleSet):
        self.base = base
        self.reg = reg
        self.rules = rules
        self.sub_class_of = reg.iri("rdfs:subClassOf")
        self.sub_property_of = reg.iri("rdfs:subPropertyOf")
        self.recognition = reg.iri("icon:IconologicalRecognition")
        self.phenomenon = reg.iri("icon:CulturalPhenomenon")
        self.assigns_to = reg.iri("icon:assignsTo")
        self.assigned = reg.iri("icon:assigned")
        self.symbolizes = reg.iri("icon:symbolizes")
        self.is_document_of = reg.iri("icon:isDocumentOf")
        self.domains = {}
        self.ranges = {}
        for p, c in reg.domain_axioms():
            self.domains.setdefault(p, set()).add(c)
        for p, c in reg.range_axioms():
            self.ranges.setdefault(p, set()).add(c)

        self.all: set[Triple] = set()
        self.inferred = Graph()
        self.provenance: dict[Triple, Derivation] = {}
        # joint indexes over base + inferred
        self.types: dict[Term, set[Iri]] = {}          # node -> classes
        self.instances: dict[Iri, set[Term]] = {}      # class -> nodes
        self.by_pred: dict[Iri, set[tuple[Term, Term]]] = {}
        self.sub_c_edges: dict[Iri, set[Iri]] = {}     # asserted subclass triples
        self.sub_p_edges: dict[Iri, set[Iri]] = {}

    def run(self) -> ClosureGraph:
        queue: deque[Triple] = deque(self.base.sorted_triples())
        enqueued: set[Triple] = set(queue)
        while queue:
            t = queue.popleft()
            if t in self.all:
                continue
            self.all.add(t)
            self._index(t)
            for derived, deriv in self._consequences(t):
                if derived in enqueued or derived in self.all:
                    continue
                if derived not in self.base:
                    self.provenance[derived] = deriv
                    self.inferred.insert(derived)
                enqueued.add(derived)
                queue.append(derived)
        return ClosureGraph(self.base, self.inferred.freeze(), self.provenance)

    def _index(self, t: Triple):
        if t.predicate == RDF_TYPE and isinstance(t.object, Iri):
            self.types.setdefault(t.subject, set()).add(t.object)
            self.instances.setdefault(t.object, set()).add(t.subject)
        if (t.predicate == self.sub_class_of and isinstance(t.subject, Iri)
                and isinstance(t.object, Iri)):
            self.sub_c_edges.setdefault(t.subject, set()).add(t.object)
        if (t.predicate == self.sub_property_of and isinstance(t.subject, Iri)
                and isinstance(t.object, Iri)):
            self.sub_p_edges.setdefault(t.subject, set()).add(t.object)
        self.by_pred.setdefault(t.predicate, set()).add((t.subject, t.object))

    def _consequences(self, t: Triple):
        out: list[tuple[Triple, Derivation]] = []
        if self.rules.hierarchy:
            out += self._hierarchy(t)
        if self.rules.domain_range_typing:
            out += self._domain_range(t)
        if self.rules.shortcut_contraction:
            out += self._shortcut(t)
        return out

    # -- R1-R4 ------------------------------------------------------------

    def _hierarchy(self, t: Triple):
        out = []
        s, p, o = t.subject, t.predicate, t.object
        if p == RDF_TYPE and isinstance(o, Iri):
            for d in self.reg.superclasses(o):
                out.append((Triple(s, RDF_TYPE, d), Derivation("R2-axiom", (t,))))
            for d in self.sub_c_edges.get(o, ()):
                edge = Triple(o, self.sub_class_of, d)
                out.append((Triple(s, RDF_TYPE, d), Derivation("R2", (t, edge))))
        if p == self.sub_class_of and isinstance(s, Iri) and isinstance(o, Iri):
            for e in self.sub_c_edges.get(o, ()):
                mid = Triple(o, self.sub_class_of, e)
                out.append((Triple(s, self.sub_class_of, e), Derivation("R1", (t, mid))))
            for c, cs in self.sub_c_edges.items():
                if s in cs and c != s:
                    left = Triple(c, self.sub_class_of, s)
                    out.append((Triple(c, self.sub_class_of, o),
                                Derivation("R1", (left, t))))
            for x in self.instances.get(s, ()):
                inst = Triple(x, RDF_TYPE, s)
                out.append((Triple(x, RDF_TYPE, o), Derivation("R2", (inst, t))))
        if p == self.sub_property_of and isinstance(s, Iri) and isinstance(o, Iri):
            for e in self.sub_p_edges.get(o, ()):
                mid = Triple(o, self.sub_property_of, e)
                out.append((Triple(s, self.sub_property_of, e),
                            Derivation("R3", (t, mid))))
            for c, cs in self.sub_p_edges.items():
                if s in cs and c != s:
                    left = Triple(c, self.sub_property_of, s)
                    out.append((Triple(c, self.sub_property_of, o),
                                Derivation("R3", (left, t))))
            for (xs, xo) in self.by_pred.get(s, ()):
                stmt = Triple(xs, s, xo)
                out.append((Triple(xs, o, xo), Derivation("R4", (stmt, t))))
        # statement propagation for the triple's own predicate
        for q in self.reg.superproperties(p):
            out.append((Triple(s, q, o), Derivation("R4-axiom", (t,))))
        for q in self.sub_p_edges.get(p, ()):
            edge = Triple(p, self.sub_property_of, q)
            out.append((Triple(s, q, o), Derivation("R4", (t, edge))))
        return out

    # -- R5 ---------------------------------------------------------------

    def _domain_range(self, t: Triple):
        out = []
        for c in self.domains.get(t.predicate, ()):
            out.append((Triple(t.subject, RDF_TYPE, c), Derivation("R5-domain", (t,))))
        for c in self.ranges.get(t.predicate, ()):
            if isinstance(t.object, (Iri, BlankNode)):
                out.append((Triple(t.object, RDF_TYPE, c), Derivation("R5-range", (t,))))
        return out

    # -- R6 ---------------------------------------------------------------

    def _recognitions_assigning(self, m: Term):
        for (r, mm) in self.by_pred.get(self.assigned, set()):
            if mm == m:
                yield r

    def _shortcut_for(self, r: Term):
        """All R6 conclusions available for recognition node r right now."""
        out = []
        if self.recognition not in self.types.get(r, ()):
            return out
        rec_t = Triple(r, RDF_TYPE, self.recognition)
        targets = [x for (rr, x) in self.by_pred.get(self.assigns_to, set()) if rr == r]
        meanings = [m for (rr, m) in self.by_pred.get(self.assigned, set()) if rr == r]
        for x in targets:
            if isinstance(x, Literal):
                continue
            for m in meanings:
                a_t = Triple(r, self.assigns_to, x)
                b_t = Triple(r, self.assigned, m)
                out.append((Triple(x, self.symbolizes, m),
                            Derivation("R6-symbolizes", (rec_t, a_t, b_t))))
                if self.phenomenon in self.types.get(m, ()):
                    ph_t = Triple(m, RDF_TYPE, self.phenomenon)
                    out.append((Triple(x, self.is_document_of, m),
                                Derivation("R6-document", (rec_t, a_t, b_t, ph_t))))
        return out

    def _shortcut(self, t: Triple):
        out = []
        if t.predicate in (self.assigns_to, self.assigned):
            out += self._shortcut_for(t.subject)
        elif t.predicate == RDF_TYPE and t.object == self.recognition:
            out += self._shortcut_for(t.subject)
        elif t.predicate == RDF_TYPE and t.object == self.phenomenon:
            for r in self._recognitions_assigning(t.subject):
                out += self._shortcut_for(r)
        return out


def close(g: Graph, reg: TermRegistry, rules: Optional[RuleSet] = None) -> ClosureGraph:
    """Materialize the closure of a frozen graph to fixpoint."""
    if rules is None:
        rules = RuleSet()
    if not g.frozen:
        raise ReasonerError("close() requires a frozen graph")
    return _Engine(g, reg, rules).run()


def entails(g: Graph, reg: TermRegistry, rules: RuleSet, t: Triple) -> bool:
    return t in close(g, reg, rules)


def expand_shortcut(g: Graph, t: Triple, reg: TermRegistry,
                    actor: Optional[Iri] = None) -> Graph:
    """Rewrite a shortcut triple into an explicit recognition node.

    Returns a delta graph with a fresh blank recognition node; running
    shortcut contraction over the delta re-derives t.
    """
    symbolizes = reg.iri("icon:symbolizes")
    is_document_of = reg.iri("icon:isDocumentOf")
    if t.predicate not in (symbolizes, is_document_of):
        raise WrongPredicateError(
            f"cannot expand {t.predicate!r}: not a shortcut property")
    if t not in g:
        raise ReasonerError("triple to expand is not in the graph")
    used = g.blank_labels()
    n = 1
    while f"r{n}" in used:
        n += 1
    r = BlankNode(f"r{n}")
    delta = Graph()
    delta.insert(Triple(r, RDF_TYPE, reg.iri("icon:IconologicalRecognition")))
    delta.insert(Triple(r, reg.iri("icon:assignsTo"), t.subject))
    delta.insert(Triple(r, reg.iri("icon:assigned"), t.object))
    if t.predicate == is_document_of:
        delta.insert(Triple(t.object, RDF_TYPE, reg.iri("icon:CulturalPhenomenon")))
    if actor is not None:
        delta.insert(Triple(r, reg.iri("crm:P14_carried_out_by"), actor))
    return delta.freeze()
