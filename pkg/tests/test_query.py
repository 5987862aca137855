import random

import pytest
from hypothesis import given, settings, strategies as st

from iconmodel.graph import Graph, Iri, Literal, Triple
from iconmodel.query import (Alt, Inv, Pattern, Plus, QueryError, Seq,
                             Solution, UnboundProjectionError,
                             UnknownQuestionError, Var, cq_catalog, evaluate,
                             find_cq, load_golden, path_match, path_pairs,
                             pattern_from_json, run_cq, solutions_from_json,
                             solutions_to_json)

from conftest import plain_random_graph
from oracles import brute_evaluate, oracle_path_pairs

E = "http://example.org/"


def e(name):
    return Iri(E + name)


@pytest.fixture(scope="module")
def chain():
    # a -p-> b -p-> c -q-> d, plus a literal leaf
    return Graph([Triple(e("a"), e("p"), e("b")),
                  Triple(e("b"), e("p"), e("c")),
                  Triple(e("c"), e("q"), e("d")),
                  Triple(e("a"), e("name"), Literal("alpha"))]).freeze()


class TestPaths:
    def test_plain_predicate(self, chain):
        assert path_pairs(chain, e("p")) == {(e("a"), e("b")), (e("b"), e("c"))}

    def test_inverse(self, chain):
        assert path_pairs(chain, Inv(e("q"))) == {(e("d"), e("c"))}

    def test_sequence(self, chain):
        assert path_pairs(chain, Seq(e("p"), e("q"))) == {(e("b"), e("d"))}
        assert path_pairs(chain, Seq(e("p"), Seq(e("p"), e("q")))) \
            == {(e("a"), e("d"))}

    def test_alternative(self, chain):
        assert path_pairs(chain, Alt(e("p"), e("q"))) \
            == {(e("a"), e("b")), (e("b"), e("c")), (e("c"), e("d"))}

    def test_plus_is_transitive(self, chain):
        assert path_pairs(chain, Plus(e("p"))) \
            == {(e("a"), e("b")), (e("b"), e("c")), (e("a"), e("c"))}

    def test_plus_handles_cycles(self):
        g = Graph([Triple(e("x"), e("p"), e("y")),
                   Triple(e("y"), e("p"), e("x"))]).freeze()
        assert path_pairs(g, Plus(e("p"))) == {
            (e("x"), e("y")), (e("y"), e("x")), (e("x"), e("x")), (e("y"), e("y"))}

    def test_path_match_from_start(self, chain):
        assert path_match(chain, e("a"), Plus(e("p"))) == {e("b"), e("c")}


class TestEvaluate:
    def test_single_triple_binding(self, chain):
        got = evaluate(chain, Pattern(((Var("x"), e("p"), Var("y")),)),
                       [Var("x"), Var("y")])
        assert got == {Solution.of({"x": e("a"), "y": e("b")}),
                       Solution.of({"x": e("b"), "y": e("c")})}

    def test_join_on_shared_variable(self, chain):
        pattern = Pattern(((Var("x"), e("p"), Var("y")),
                           (Var("y"), e("p"), Var("z"))))
        assert evaluate(chain, pattern, [Var("x"), Var("z")]) \
            == {Solution.of({"x": e("a"), "z": e("c")})}

    def test_predicate_variable(self, chain):
        got = evaluate(chain, Pattern(((e("c"), Var("rel"), e("d")),)),
                       [Var("rel")])
        assert got == {Solution.of({"rel": e("q")})}

    def test_same_variable_subject_and_object(self):
        g = Graph([Triple(e("n"), e("p"), e("n")),
                   Triple(e("n"), e("p"), e("m"))]).freeze()
        got = evaluate(g, Pattern(((Var("x"), e("p"), Var("x")),)), [Var("x")])
        assert got == {Solution.of({"x": e("n")})}

    def test_path_in_pattern(self, chain):
        got = evaluate(chain, Pattern(((e("a"), Plus(e("p")), Var("end")),)),
                       [Var("end")])
        assert got == {Solution.of({"end": e("b")}), Solution.of({"end": e("c")})}

    def test_no_solutions(self, chain):
        assert evaluate(chain, Pattern(((Var("x"), e("nope"), Var("y")),)),
                        [Var("x")]) == set()

    def test_empty_pattern_empty_projection(self, chain):
        assert evaluate(chain, Pattern(()), []) == {Solution.of({})}

    def test_unbound_projection_rejected(self, chain):
        with pytest.raises(UnboundProjectionError):
            evaluate(chain, Pattern(((Var("x"), e("p"), Var("y")),)),
                     [Var("ghost")])

    def test_projection_subset(self, chain):
        got = evaluate(chain, Pattern(((Var("x"), e("p"), Var("y")),)), [Var("x")])
        assert got == {Solution.of({"x": e("a")}), Solution.of({"x": e("b")})}


def random_pattern(rng, g):
    """Pattern over the graph's own vocabulary: up to 3 triples, up to 3
    variables, mixed constants, predicate vars, and property paths."""
    terms = sorted(g.terms(), key=repr) or [e("x")]
    preds = sorted({t.predicate for t in g}, key=repr) or [e("p")]
    var_pool = [Var("a"), Var("b"), Var("c")][:rng.randint(1, 3)]

    def endpoint():
        return rng.choice(var_pool) if rng.random() < 0.6 else rng.choice(terms)

    def predicate():
        roll = rng.random()
        if roll < 0.45:
            return rng.choice(preds)
        if roll < 0.6:
            return rng.choice(var_pool)
        base = rng.choice(preds)
        other = rng.choice(preds)
        return rng.choice([Inv(base), Plus(base), Seq(base, other),
                           Alt(base, other)])

    triples = tuple((endpoint(), predicate(), endpoint())
                    for _ in range(rng.randint(1, 3)))
    used = {x.name for s, p, o in triples for x in (s, p, o) if isinstance(x, Var)}
    projection = [v for v in var_pool if v.name in used]
    return Pattern(triples), projection


def as_tuples(solutions):
    return {s.bindings for s in solutions}


class TestAgainstBruteForce:
    def test_random_patterns(self, reg):
        rng = random.Random(42)
        for _ in range(60):
            g = plain_random_graph(rng, rng.randint(0, 40))
            pattern, projection = random_pattern(rng, g)
            got = as_tuples(evaluate(g, pattern, projection))
            want = brute_evaluate(g, pattern, projection)
            assert got == want, (pattern, projection)

    def test_path_semantics_match(self):
        rng = random.Random(99)
        for _ in range(30):
            g = plain_random_graph(rng, rng.randint(0, 30))
            preds = sorted({t.predicate for t in g}, key=repr) or [e("p")]
            p = rng.choice(preds)
            q = rng.choice(preds)
            for path in (Inv(p), Plus(p), Seq(p, q), Alt(p, q),
                         Seq(Inv(p), Plus(q))):
                assert path_pairs(g, path) == oracle_path_pairs(set(g), path)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_evaluate_equals_brute_force_property(seed):
    rng = random.Random(seed)
    g = plain_random_graph(rng, rng.randint(0, 30))
    pattern, projection = random_pattern(rng, g)
    assert as_tuples(evaluate(g, pattern, projection)) \
        == brute_evaluate(g, pattern, projection)


class TestJsonFormats:
    def test_pattern_from_json(self):
        doc = {"select": ["?x"],
               "where": [["?x", "icon:symbolizes", "?m"],
                         ["?m", {"alt": ["cito:citesAsEvidence",
                                         {"inv": "icon:assignsTo"}]}, "_:b"],
                         ["<http://example.org/s>", "http://example.org/p",
                          {"lit": "v", "lang": "en"}]]}
        pattern, projection = pattern_from_json(doc)
        assert projection == [Var("x")]
        assert pattern.triples[0][1] == Iri("https://w3id.org/icon/ontology/symbolizes")
        assert isinstance(pattern.triples[1][1], Alt)
        s, p, o = pattern.triples[2]
        assert s == Iri("http://example.org/s")
        assert o == Literal("v", lang="en")

    def test_pattern_json_errors(self):
        with pytest.raises(QueryError):
            pattern_from_json({"select": ["?x"]})
        with pytest.raises(QueryError):
            pattern_from_json({"select": ["x"], "where": []})
        with pytest.raises(QueryError):
            pattern_from_json({"select": [], "where": [["?x", "nope:p", "?y"]]})
        with pytest.raises(QueryError):
            pattern_from_json({"select": [], "where": [["?x", "?p"]]})

    def test_solutions_round_trip(self):
        solutions = {Solution.of({"x": e("a"), "y": Literal("v", lang="en")}),
                     Solution.of({"x": e("b"), "y": Literal("w")})}
        assert solutions_from_json(solutions_to_json(solutions)) == solutions

    def test_solutions_to_json_sorted(self):
        solutions = {Solution.of({"x": e("b")}), Solution.of({"x": e("a")})}
        rows = solutions_to_json(solutions)
        assert rows == [{"?x": E + "a"}, {"?x": E + "b"}]


class TestCompetencyCatalog:
    def test_eight_questions(self):
        catalog = cq_catalog()
        assert [cq.id for cq in catalog] == ["CQ1a", "CQ1b", "CQ1c", "CQ2a",
                                            "CQ2b", "CQ3", "CQ4a", "CQ4b"]
        assert all(cq.prose for cq in catalog)

    def test_case_assignment(self):
        by_case = {}
        for cq in cq_catalog():
            by_case.setdefault(cq.case_id, []).append(cq.id)
        assert by_case == {"vermeer-balance": ["CQ1a", "CQ1b", "CQ1c"],
                           "laocoon": ["CQ2a", "CQ2b"],
                           "neptune": ["CQ3"],
                           "hercules-salvation": ["CQ4a", "CQ4b"]}

    def test_unknown_question(self):
        with pytest.raises(UnknownQuestionError):
            find_cq("CQ99")

    def test_goldens_cover_catalog(self):
        for cq in cq_catalog():
            golden = load_golden(cq.case_id)
            assert cq.id in golden and golden[cq.id]

    def test_run_cq_matches_golden(self, case_closures):
        for cq in cq_catalog():
            result = run_cq(case_closures[cq.case_id], cq.id)
            assert result.matches_golden, cq.id

    def test_run_cq_detects_mismatch(self, reg):
        empty = Graph().freeze()
        from iconmodel.reasoner import close
        result = run_cq(close(empty, reg), "CQ3")
        assert not result.matches_golden and result.solutions == set()
