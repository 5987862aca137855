import random

import pytest
from hypothesis import given, settings, strategies as st

from iconmodel.graph import BlankNode, Graph, Iri, Triple, union
from iconmodel.reasoner import (ReasonerError, RuleSet, WrongPredicateError,
                                close, entails, expand_shortcut)
from iconmodel.turtle_io import RDF_TYPE

from conftest import registry_random_graph
from oracles import naive_close

D = "https://w3id.org/icon/data/test/"


def d(name):
    return Iri(D + name)


def recognition_graph(reg, meaning_is_phenomenon=False):
    g = Graph()
    g.insert(Triple(d("r"), RDF_TYPE, reg.iri("icon:IconologicalRecognition")))
    g.insert(Triple(d("r"), reg.iri("icon:assignsTo"), d("artwork")))
    g.insert(Triple(d("r"), reg.iri("icon:assigned"), d("meaning")))
    if meaning_is_phenomenon:
        g.insert(Triple(d("meaning"), RDF_TYPE, reg.iri("icon:CulturalPhenomenon")))
    return g.freeze()


class TestHierarchyRules:
    def test_axiom_class_propagation(self, reg):
        g = Graph([Triple(d("r"), RDF_TYPE,
                          reg.iri("icon:IconologicalRecognition"))]).freeze()
        c = close(g, reg)
        assert Triple(d("r"), RDF_TYPE, reg.iri("crm:E13_Attribute_Assignment")) in c
        assert Triple(d("r"), RDF_TYPE, reg.iri("hico:InterpretationAct")) in c

    def test_axiom_property_propagation(self, reg):
        g = Graph([Triple(d("x"), reg.iri("icon:hasIdentifyingAttribute"),
                          d("y"))]).freeze()
        c = close(g, reg)
        assert Triple(d("x"), reg.iri("vir:K17_has_attribute"), d("y")) in c

    def test_asserted_subclass_transitivity(self, reg):
        sub = reg.iri("rdfs:subClassOf")
        a, b, cc = d("A"), d("B"), d("C")
        g = Graph([Triple(a, sub, b), Triple(b, sub, cc),
                   Triple(d("x"), RDF_TYPE, a)]).freeze()
        c = close(g, reg)
        assert Triple(a, sub, cc) in c
        assert Triple(d("x"), RDF_TYPE, cc) in c

    def test_asserted_subproperty_transitivity(self, reg):
        sub = reg.iri("rdfs:subPropertyOf")
        p, q, r = d("p"), d("q"), d("r")
        g = Graph([Triple(p, sub, q), Triple(q, sub, r),
                   Triple(d("x"), p, d("y"))]).freeze()
        c = close(g, reg)
        assert Triple(p, sub, r) in c
        assert Triple(d("x"), r, d("y")) in c

    def test_edge_arriving_after_instance(self, reg):
        # order independence: the subclass edge sorts after the typing
        sub = reg.iri("rdfs:subClassOf")
        g = Graph([Triple(d("x"), RDF_TYPE, d("A")),
                   Triple(d("A"), sub, d("zzz"))]).freeze()
        assert Triple(d("x"), RDF_TYPE, d("zzz")) in close(g, reg)


class TestShortcutContraction:
    def test_symbolizes_derived(self, reg):
        c = close(recognition_graph(reg), reg)
        assert Triple(d("artwork"), reg.iri("icon:symbolizes"), d("meaning")) in c
        assert Triple(d("artwork"), reg.iri("icon:isDocumentOf"),
                      d("meaning")) not in c

    def test_document_needs_phenomenon_typing(self, reg):
        c = close(recognition_graph(reg, meaning_is_phenomenon=True), reg)
        doc = Triple(d("artwork"), reg.iri("icon:isDocumentOf"), d("meaning"))
        assert doc in c
        # and the hierarchy lifts it to the generic depiction property
        assert Triple(d("artwork"), reg.iri("crm:P62_depicts"), d("meaning")) in c

    def test_untyped_node_is_no_recognition(self, reg):
        g = Graph([Triple(d("r"), reg.iri("icon:assignsTo"), d("a")),
                   Triple(d("r"), reg.iri("icon:assigned"), d("m"))]).freeze()
        assert len(close(g, reg).inferred) == 0

    def test_rules_off_means_no_shortcuts(self, reg):
        c = close(recognition_graph(reg), reg,
                  RuleSet(hierarchy=True, shortcut_contraction=False))
        assert Triple(d("artwork"), reg.iri("icon:symbolizes"), d("meaning")) not in c


class TestDomainRange:
    def test_off_by_default(self, reg):
        g = Graph([Triple(d("a"), reg.iri("icon:symbolicallyRefersTo"),
                          d("b"))]).freeze()
        c = close(g, reg)
        assert Triple(d("a"), RDF_TYPE, reg.iri("crm:E5_Event")) not in c

    def test_types_both_ends_when_enabled(self, reg):
        g = Graph([Triple(d("a"), reg.iri("icon:symbolicallyRefersTo"),
                          d("b"))]).freeze()
        c = close(g, reg, RuleSet(domain_range_typing=True))
        assert Triple(d("a"), RDF_TYPE, reg.iri("crm:E5_Event")) in c
        assert Triple(d("b"), RDF_TYPE, reg.iri("crm:E5_Event")) in c


class TestClosureShape:
    def test_requires_frozen_graph(self, reg):
        with pytest.raises(ReasonerError):
            close(Graph(), reg)

    def test_base_and_inferred_are_disjoint(self, reg, case_graphs, case_closures):
        for case_id, c in case_closures.items():
            assert not (set(c.base) & set(c.inferred))
            assert set(c.graph()) == set(c.base) | set(c.inferred)

    def test_provenance_covers_inferred_only(self, reg, case_closures):
        for c in case_closures.values():
            assert set(c.provenance) == set(c.inferred)
            for t, deriv in c.provenance.items():
                assert deriv.rule
                for premise in deriv.premises:
                    assert premise in c

    def test_entails(self, reg):
        g = recognition_graph(reg)
        assert entails(g, reg, RuleSet(),
                       Triple(d("artwork"), reg.iri("icon:symbolizes"), d("meaning")))
        assert not entails(g, reg, RuleSet(),
                           Triple(d("artwork"), reg.iri("icon:symbolizes"), d("other")))


class TestAgainstNaiveOracle:
    def test_fixture_closures(self, reg, case_graphs, case_closures):
        for case_id, g in case_graphs.items():
            assert set(case_closures[case_id].graph()) == \
                naive_close(g, reg, RuleSet())

    def test_random_graphs(self, reg):
        rng = random.Random(1105)
        for _ in range(40):
            g = registry_random_graph(rng, reg)
            rules = RuleSet(domain_range_typing=rng.random() < 0.3)
            assert set(close(g, reg, rules).graph()) == naive_close(g, reg, rules)

    def test_idempotence(self, reg):
        rng = random.Random(7)
        for _ in range(15):
            g = registry_random_graph(rng, reg)
            once = close(g, reg).graph()
            assert set(close(once, reg).graph()) == set(once)

    def test_monotonicity(self, reg):
        rng = random.Random(8)
        for _ in range(15):
            g1 = registry_random_graph(rng, reg, max_triples=30)
            g2 = registry_random_graph(rng, reg, max_triples=30)
            merged = union(g1, g2)
            assert set(close(g1, reg).graph()) <= set(close(merged, reg).graph())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_closure_equals_oracle_property(reg, seed):
    g = registry_random_graph(random.Random(seed), reg, max_triples=40)
    assert set(close(g, reg).graph()) == naive_close(g, reg, RuleSet())


class TestExpandShortcut:
    def test_round_trip_symbolizes(self, reg):
        base = close(recognition_graph(reg), reg).graph()
        t = Triple(d("artwork"), reg.iri("icon:symbolizes"), d("meaning"))
        delta = expand_shortcut(base, t, reg)
        assert t in close(delta, reg)

    def test_round_trip_document(self, reg):
        base = close(recognition_graph(reg, True), reg).graph()
        t = Triple(d("artwork"), reg.iri("icon:isDocumentOf"), d("meaning"))
        delta = expand_shortcut(base, t, reg)
        assert t in close(delta, reg)
        # the delta re-asserts the phenomenon typing it depends on
        assert Triple(d("meaning"), RDF_TYPE,
                      reg.iri("icon:CulturalPhenomenon")) in delta

    def test_actor_attribution(self, reg):
        base = close(recognition_graph(reg), reg).graph()
        t = Triple(d("artwork"), reg.iri("icon:symbolizes"), d("meaning"))
        delta = expand_shortcut(base, t, reg, actor=d("scholar"))
        assert any(x.predicate == reg.iri("crm:P14_carried_out_by")
                   and x.object == d("scholar") for x in delta)

    def test_fresh_blank_node(self, reg):
        g = Graph([Triple(BlankNode("r1"), reg.iri("icon:assignsTo"), d("a")),
                   Triple(d("x"), reg.iri("icon:symbolizes"), d("m"))]).freeze()
        delta = expand_shortcut(g, Triple(d("x"), reg.iri("icon:symbolizes"),
                                          d("m")), reg)
        assert delta.blank_labels() == {"r2"}

    def test_wrong_predicate_rejected(self, reg):
        g = Graph([Triple(d("x"), reg.iri("crm:P62_depicts"), d("m"))]).freeze()
        with pytest.raises(WrongPredicateError):
            expand_shortcut(g, Triple(d("x"), reg.iri("crm:P62_depicts"), d("m")), reg)

    def test_absent_triple_rejected(self, reg):
        g = Graph().freeze()
        with pytest.raises(ReasonerError):
            expand_shortcut(g, Triple(d("x"), reg.iri("icon:symbolizes"), d("m")), reg)

    def test_every_fixture_shortcut_round_trips(self, reg, case_closures):
        sym, doc = reg.iri("icon:symbolizes"), reg.iri("icon:isDocumentOf")
        seen = 0
        for c in case_closures.values():
            whole = c.graph()
            for t in c.inferred:
                if t.predicate in (sym, doc):
                    delta = expand_shortcut(whole, t, reg)
                    assert t in close(delta, reg)
                    seen += 1
        assert seen > 0
