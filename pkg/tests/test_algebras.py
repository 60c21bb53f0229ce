import itertools

import pytest

from aprop.algebras import (
    AlgebraSpecError,
    FiniteAlgebra,
    Mapping,
    evaluate,
    is_homomorphism,
    is_injective_term,
    is_isomorphism,
    load_algebra,
    parse_spec_file,
    solution_set,
    term_table,
    unique_solution_elements,
)
from aprop.terms import Language, parse_term
from aprop.verify import bundled_algebra

A2 = bundled_algebra("A2")
PCOMM = bundled_algebra("PCOMM")
SIREFL = bundled_algebra("SIREFL")


class TestSpecFormat:
    def test_load_a2(self):
        language, alg = load_algebra(
            """
            algebra A2 {
              universe: a, b, c, d;
              op f/1: a -> b, b -> b, c -> c, d -> d;
            }
            """
        )
        assert alg.universe == ("a", "b", "c", "d")
        assert alg.tables == A2.tables

    def test_default_identity_shorthand(self):
        _, alg = load_algebra(
            """
            algebra A2 {
              universe: a, b, c, d;
              op f/1 default identity: a -> b;
            }
            """
        )
        assert alg.tables == A2.tables

    def test_trivial_algebra(self):
        _, alg = load_algebra("algebra T { universe: a; }")
        assert alg.universe == ("a",)
        assert alg.language.symbols == ()

    def test_two_op_algebra(self):
        alg = bundled_algebra("CPTRANS")
        assert alg.apply("g", ("a",)) == "b"
        assert alg.apply("h", ("c",)) == "d"
        assert alg.apply("h", ("a",)) == "a"

    def test_missing_row_rejected(self):
        with pytest.raises(AlgebraSpecError):
            load_algebra("algebra X { universe: a, b; op f/1: a -> b; }")

    def test_output_outside_universe_rejected(self):
        with pytest.raises(AlgebraSpecError):
            load_algebra("algebra X { universe: a; op f/1: a -> z; }")

    def test_duplicate_element_rejected(self):
        with pytest.raises(AlgebraSpecError):
            load_algebra("algebra X { universe: a, a; }")

    def test_mapping_section(self):
        spec = parse_spec_file(
            """
            algebra S { universe: a, c, d; op f/1: a -> a, c -> d, d -> c; }
            mapping swap : S -> S { a -> a, c -> d, d -> c }
            """
        )
        h = spec.mappings["swap"]
        assert h("c") == "d"
        assert is_isomorphism(h)


class TestEvaluate:
    def test_projection(self):
        assert evaluate(parse_term("x0", A2.language), A2, {0: "a"}) == "a"

    def test_single_application(self):
        assert evaluate(parse_term("f(x0)", A2.language), A2, {0: "a"}) == "b"

    def test_fixpoint_iteration(self):
        assert evaluate(parse_term("f(f(x0))", A2.language), A2, {0: "a"}) == "b"

    def test_unassigned_variable(self):
        with pytest.raises(KeyError):
            evaluate(parse_term("f(x1)", A2.language), A2, {0: "a"})

    def test_agrees_with_full_table(self):
        t = parse_term("f(f(x0))", A2.language)
        table = term_table(t, A2, (0,))
        for value, e in zip(table, A2.universe):
            assert evaluate(t, A2, {0: e}) == value


class TestHomomorphisms:
    def test_identity(self):
        h = Mapping("id", A2, A2, {e: e for e in A2.universe})
        assert is_homomorphism(h)
        assert is_isomorphism(h)

    def test_empty_language_vacuous(self):
        a1 = bundled_algebra("A1")
        h = Mapping("const", a1, a1, {e: "a" for e in a1.universe})
        assert is_homomorphism(h)
        assert not is_isomorphism(h)

    def test_non_homomorphism(self):
        table = {e: e for e in A2.universe}
        table["a"] = "c"
        h = Mapping("bad", A2, A2, table)
        assert not is_homomorphism(h)

    def test_swap_automorphism(self):
        h = Mapping("swap", SIREFL, SIREFL, {"a": "a", "c": "d", "d": "c"})
        assert is_isomorphism(h)


class TestSolutionSets:
    def test_projection_solution(self):
        s = parse_term("x0", A2.language)
        assert solution_set(s, "a", A2) == {("a",)}

    def test_two_preimages(self):
        s = parse_term("f(x0)", A2.language)
        assert solution_set(s, "b", A2) == {("a",), ("b",)}

    def test_no_preimage(self):
        s = parse_term("f(x0)", A2.language)
        assert solution_set(s, "a", A2) == set()

    def test_partition_property(self):
        s = parse_term("f(f(x0))", A2.language)
        sets = [solution_set(s, a, A2) for a in A2.universe]
        union = set().union(*sets)
        assert len(union) == len(A2.universe)
        assert sum(len(x) for x in sets) == len(union)

    def test_unique_solution_elements(self):
        s = parse_term("x0", A2.language)
        assert unique_solution_elements(s, A2) == set(A2.universe)
        s = parse_term("f(x0)", A2.language)
        assert unique_solution_elements(s, A2) == {"c", "d"}
        s = parse_term("f(x0)", PCOMM.language)
        assert unique_solution_elements(s, PCOMM) == set()


class TestInjectivity:
    def test_projection(self):
        assert is_injective_term(parse_term("x0", A2.language), A2)

    def test_merging_function(self):
        assert not is_injective_term(parse_term("f(x0)", A2.language), A2)

    def test_permutation(self):
        assert is_injective_term(parse_term("f(x0)", SIREFL.language), SIREFL)


def test_solution_sets_partition_assignments():
    for alg in (A2, PCOMM, SIREFL):
        for text in ("x0", "f(x0)", "f(f(x0))"):
            s = parse_term(text, alg.language)
            total = sum(len(solution_set(s, a, alg)) for a in alg.universe)
            assert total == len(alg.universe) ** len(s.variables())


def test_cross_algebra_identity_is_by_name():
    shared = [e for e in A2.universe if e in SIREFL.index]
    assert shared == ["a", "c", "d"]
