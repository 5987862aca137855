"""The four shipped case studies and the interpretation-level classifier.

Levels follow the four-strata reading of a visual work: Lev1 for
pre-iconographic atoms, Lev2 for identified subjects (representations,
attributes, characters, personifications and their visual recognitions),
Lev3 for intended conceptual meanings, Lev4 for unintentional
socio-cultural meanings. Levels are always derived from the closure,
never asserted as triples. When several rules match, the highest level
wins; that tie-break is a deliberate artifact decision since the upper
strata shade into each other.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources

from .graph import Graph, Iri, Term
from .reasoner import ClosureGraph
from .turtle_io import RDF_TYPE, parse_turtle
from .vocab import DATA_NAMESPACE, curie_to_iri


class CasebookError(Exception):
    pass


class UnknownCaseError(CasebookError):
    pass


class NodeAbsentError(CasebookError):
    pass


class InterpretationLevel(enum.Enum):
    LEV1 = "Lev1"
    LEV2 = "Lev2"
    LEV3 = "Lev3"
    LEV4 = "Lev4"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class CaseStudy:
    id: str
    typology: int
    title: str
    cited_works: tuple[Iri, ...]


def _d(case_id: str, slug: str) -> Iri:
    return Iri(f"{DATA_NAMESPACE}{case_id}/{slug}")


_CASES = [
    CaseStudy("hercules-salvation", 4,
              "Hercules and the Erymanthian Boar / Allegory of Salvation",
              ()),
    CaseStudy("laocoon", 2,
              "Laocoon and His Sons, illumination and statue",
              (_d("laocoon", "aeneid-text"),)),
    CaseStudy("neptune", 3,
              "Giambologna's Neptune and Raimondi's Quos Ego",
              (_d("neptune", "aeneid-text"),)),
    CaseStudy("vermeer-balance", 1,
              "Vermeer, Woman Holding a Balance",
              (_d("vermeer-balance", "liedtke-2010"),)),
]


def list_cases() -> list[CaseStudy]:
    """All case studies, in stable order by id."""
    return list(_CASES)


def case_meta(case_id: str) -> CaseStudy:
    for case in _CASES:
        if case.id == case_id:
            return case
    raise UnknownCaseError(f"unknown case id {case_id!r}")


def case_document(case_id: str) -> str:
    """The raw Turtle text of a case fixture."""
    case = case_meta(case_id)
    return (resources.files("iconmodel") / "fixtures" / f"{case.id}.ttl"
            ).read_text("utf-8")


def load_case(case_id: str) -> tuple[Graph, CaseStudy]:
    """Parse one case fixture into a frozen graph, with its metadata."""
    meta = case_meta(case_id)
    result = parse_turtle(case_document(case_id))
    return result.graph, meta


_LEV2_CLASSES = ("vir:IC9_Representation", "vir:IC10_Attribute",
                 "vir:IC11_Personification", "vir:IC16_Character",
                 "vir:IC12_Visual_Recognition")


def level_of(closure: ClosureGraph, node: Term) -> InterpretationLevel:
    """Classify a node into an interpretation level over a closure.

    Highest matching level wins. Raises NodeAbsentError when the node
    occurs nowhere in the closed graph.
    """
    g = closure.graph()
    if node not in g.terms():
        raise NodeAbsentError(f"node {node!r} does not occur in the graph")

    types = {t.object for t in g.match(s=node, p=RDF_TYPE)}
    phenomenon = curie_to_iri("icon:CulturalPhenomenon")
    recognition = curie_to_iri("icon:IconologicalRecognition")
    assigned = curie_to_iri("icon:assigned")

    def assigned_objects(r: Term) -> set[Term]:
        return {t.object for t in g.match(s=r, p=assigned)}

    def is_phenomenon(m: Term) -> bool:
        return any(t.object == phenomenon for t in g.match(s=m, p=RDF_TYPE))

    if phenomenon in types:
        return InterpretationLevel.LEV4
    if recognition in types and any(is_phenomenon(m) for m in assigned_objects(node)):
        return InterpretationLevel.LEV4

    e28 = curie_to_iri("crm:E28_Conceptual_Object")
    is_assigned_object = any(True for _ in g.match(p=assigned, o=node))
    if e28 in types and is_assigned_object:
        return InterpretationLevel.LEV3
    if recognition in types and any(
            not is_phenomenon(m) and e28 in {t.object for t in g.match(s=m, p=RDF_TYPE)}
            for m in assigned_objects(node)):
        return InterpretationLevel.LEV3

    if any(curie_to_iri(c) in types for c in _LEV2_CLASSES):
        return InterpretationLevel.LEV2
    if curie_to_iri("vir:IC1_Iconographical_Atom") in types:
        return InterpretationLevel.LEV1
    return InterpretationLevel.UNCLASSIFIED
