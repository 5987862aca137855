"""RDF-style terms, triples, and an indexed in-memory graph.

Graphs are append-only while being built and are frozen before any
query runs on them. All derived graphs (unions, closures) are new
values, so a frozen graph can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"


class GraphError(Exception):
    pass


class FrozenGraphError(GraphError):
    """Raised on any attempt to mutate a frozen graph."""


@dataclass(frozen=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value or ":" not in self.value:
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def __repr__(self):
        return f"<{self.value}>"


@dataclass(frozen=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not self.label:
            raise ValueError("blank node label must be non-empty")

    def __repr__(self):
        return f"_:{self.label}"


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: Optional[Iri] = None
    lang: Optional[str] = None

    def __post_init__(self):
        if self.lang is not None and self.datatype is not None:
            raise ValueError("literal cannot carry both a language tag and a datatype")
        if self.lang is not None:
            object.__setattr__(self, "lang", self.lang.lower())
        elif self.datatype is None:
            object.__setattr__(self, "datatype", Iri(XSD_STRING))

    def __repr__(self):
        if self.lang:
            return f'"{self.lexical}"@{self.lang}'
        if self.datatype and self.datatype.value != XSD_STRING:
            return f'"{self.lexical}"^^{self.datatype!r}'
        return f'"{self.lexical}"'


Term = Union[Iri, BlankNode, Literal]

# Total order over terms: IRIs < blank nodes < literals, each by canonical string.
def term_key(t: Term) -> tuple:
    if isinstance(t, Iri):
        return (0, t.value)
    if isinstance(t, BlankNode):
        return (1, t.label)
    return (2, t.lexical, t.lang or "", t.datatype.value if t.datatype else "")


@dataclass(frozen=True)
class Triple:
    subject: Union[Iri, BlankNode]
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise ValueError(f"bad triple subject: {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise ValueError(f"bad triple predicate: {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise ValueError(f"bad triple object: {self.object!r}")

    def __repr__(self):
        return f"({self.subject!r} {self.predicate!r} {self.object!r})"


def triple_key(t: Triple) -> tuple:
    return (term_key(t.subject), term_key(t.predicate), term_key(t.object))


class Graph:
    """Triple set with subject/predicate/object indexes.

    Build with insert(), then freeze(); match() and iteration are only
    meaningful on the final contents.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: set[Triple] = set()
        self._by_s: dict[Term, set[Triple]] = {}
        self._by_p: dict[Iri, set[Triple]] = {}
        self._by_o: dict[Term, set[Triple]] = {}
        self._frozen = False
        for t in triples:
            self.insert(t)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "Graph":
        self._frozen = True
        return self

    def insert(self, t: Triple) -> bool:
        """Add a triple; returns True iff it was not already present."""
        if self._frozen:
            raise FrozenGraphError("cannot insert into a frozen graph")
        if t in self._triples:
            return False
        self._triples.add(t)
        self._by_s.setdefault(t.subject, set()).add(t)
        self._by_p.setdefault(t.predicate, set()).add(t)
        self._by_o.setdefault(t.object, set()).add(t)
        return True

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def match(self, s: Optional[Term] = None, p: Optional[Iri] = None,
              o: Optional[Term] = None) -> set[Triple]:
        """All triples agreeing with every bound position."""
        candidates = None
        if s is not None:
            candidates = self._by_s.get(s, set())
        if p is not None:
            bucket = self._by_p.get(p, set())
            candidates = bucket if candidates is None else candidates & bucket
        if o is not None:
            bucket = self._by_o.get(o, set())
            candidates = bucket if candidates is None else candidates & bucket
        if candidates is None:
            return set(self._triples)
        return set(candidates)

    def subjects(self) -> set[Term]:
        return set(self._by_s)

    def objects(self) -> set[Term]:
        return set(self._by_o)

    def terms(self) -> set[Term]:
        out: set[Term] = set()
        for t in self._triples:
            out.add(t.subject)
            out.add(t.predicate)
            out.add(t.object)
        return out

    def blank_labels(self) -> set[str]:
        return {x.label for x in self.terms() if isinstance(x, BlankNode)}

    def sorted_triples(self) -> list[Triple]:
        return sorted(self._triples, key=triple_key)


def union(a: Graph, b: Graph) -> Graph:
    """Set union of two graphs, returned frozen.

    Blank node labels are merged as-is: callers must keep labels
    disjoint unless identification across the inputs is intended.
    """
    g = Graph(a)
    for t in b:
        g.insert(t)
    return g.freeze()


def _ground(t: Triple) -> bool:
    return not (isinstance(t.subject, BlankNode) or isinstance(t.object, BlankNode))


def isomorphic(a: Graph, b: Graph) -> bool:
    """True iff some blank-node bijection maps a exactly onto b.

    Backtracking search over candidate bijections with signature-based
    pruning; exponential in the worst case, fine at fixture scale.
    """
    ground_a = {t for t in a if _ground(t)}
    ground_b = {t for t in b if _ground(t)}
    if ground_a != ground_b or len(a) != len(b):
        return False
    bnodes_a = sorted(a.blank_labels())
    bnodes_b = sorted(b.blank_labels())
    if len(bnodes_a) != len(bnodes_b):
        return False
    if not bnodes_a:
        return True

    def signature(g: Graph, label: str) -> tuple:
        # the far-end slot is () for blank neighbours so rows stay comparable
        n = BlankNode(label)
        rows = []
        for t in g.match(s=n):
            rows.append(("s", t.predicate.value,
                         () if isinstance(t.object, BlankNode) else term_key(t.object)))
        for t in g.match(o=n):
            rows.append(("o", t.predicate.value,
                         () if isinstance(t.subject, BlankNode) else term_key(t.subject)))
        return tuple(sorted(rows))

    sig_a = {x: signature(a, x) for x in bnodes_a}
    sig_b = {x: signature(b, x) for x in bnodes_b}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return False

    candidates = {x: [y for y in bnodes_b if sig_b[y] == sig_a[x]] for x in bnodes_a}
    order = sorted(bnodes_a, key=lambda x: len(candidates[x]))

    def rename(t: Triple, mapping: dict[str, str]) -> Triple:
        s = BlankNode(mapping[t.subject.label]) if isinstance(t.subject, BlankNode) else t.subject
        o = BlankNode(mapping[t.object.label]) if isinstance(t.object, BlankNode) else t.object
        return Triple(s, t.predicate, o)

    bset = set(b)

    def backtrack(i: int, mapping: dict[str, str], used: set[str]) -> bool:
        if i == len(order):
            return all(rename(t, mapping) in bset for t in a if not _ground(t))
        x = order[i]
        for y in candidates[x]:
            if y in used:
                continue
            mapping[x] = y
            used.add(y)
            # prune: every triple fully mapped so far must exist in b
            ok = True
            for t in a.match(s=BlankNode(x)) | a.match(o=BlankNode(x)):
                labels = {n.label for n in (t.subject, t.object) if isinstance(n, BlankNode)}
                if labels <= mapping.keys() and rename(t, mapping) not in bset:
                    ok = False
                    break
            if ok and backtrack(i + 1, mapping, used):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return backtrack(0, {}, set())
