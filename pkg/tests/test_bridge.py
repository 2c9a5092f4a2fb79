import pytest

from ltldom import counting
from ltldom.bridge import (STANDARD_MAPPING, SampleSpec, Verdict, check_agreement,
                           check_equivalent, check_unsatisfiable, letter_to_symbol,
                           separation_demo)
from ltldom.counting import CountingAutomaton, PhiNot, Plus, Transition
from ltldom.formula import parse
from ltldom.lasso import LassoWord, parse_lasso
from ltldom.semantics import holds

SMALL = SampleSpec(samples=200)


def untouched(phi):
    # one counter that no transition ever changes
    return CountingAutomaton(["q"], ["c0"], ["a", "b"],
                             {("q", "a"): Transition("q"), ("q", "b"): Transition("q")}, "q", phi)


def test_sample_spec_validation():
    with pytest.raises(ValueError):
        SampleSpec(samples=0)
    with pytest.raises(ValueError):
        SampleSpec(max_period=0)


@pytest.mark.parametrize("f, g", [("true ~ p", "F G p"), ("p << true", "G F !p")])
def test_equivalences_hold(f, g):
    report = check_equivalent(f, g, SMALL)
    assert report.verdict is Verdict.NO_COUNTEREXAMPLE
    assert report.trials == 200


def test_equivalence_counterexample():
    report = check_equivalent("p", "!p", SMALL)
    assert report.verdict is Verdict.COUNTEREXAMPLE
    w, i = report.witness.word, report.witness.position
    assert holds(w, i, parse("p")) != holds(w, i, parse("!p"))
    assert (report.trial_index, i) == (0, 0)


def test_equivalence_symmetric():
    a = check_equivalent("p", "X p", SMALL)
    b = check_equivalent("X p", "p", SMALL)
    assert a.verdict == b.verdict is Verdict.COUNTEREXAMPLE
    assert (a.trial_index, a.witness.position) == (b.trial_index, b.witness.position)


@pytest.mark.parametrize("f", ["true << p", "p & !p"])
def test_unsatisfiable(f):
    assert check_unsatisfiable(f, SMALL).ok


def test_satisfiable_found():
    report = check_unsatisfiable("p", SMALL)
    assert not report.ok
    assert "p" in report.witness.word.letter_at(report.witness.position)


def test_reports_deterministic():
    assert check_equivalent("p", "X p", SMALL) == check_equivalent("p", "X p", SMALL)


def test_letter_to_symbol():
    assert letter_to_symbol(frozenset({"p"}), STANDARD_MAPPING) == "a"
    assert letter_to_symbol(frozenset(), STANDARD_MAPPING) == "b"
    with pytest.raises(KeyError, match="not covered"):
        letter_to_symbol(frozenset({"p", "q"}), STANDARD_MAPPING)
    assert letter_to_symbol(frozenset({"q", "p"})) == "{p,q}"


def test_one_sided_formula_disagrees_with_l_omega():
    # !(!p << p) only bounds the surplus of p; b^omega has an unbounded deficit
    spec = SampleSpec(alphabet={"p"}, samples=1000)
    report = check_agreement("!( !p << p )", counting.l_omega_automaton(), STANDARD_MAPPING, spec)
    assert report.verdict is Verdict.COUNTEREXAMPLE
    w = report.witness.word
    mapped = LassoWord([letter_to_symbol(x, STANDARD_MAPPING) for x in w.stem],
                       [letter_to_symbol(x, STANDARD_MAPPING) for x in w.loop])
    assert holds(w, 0, parse("!( !p << p )")) != counting.accepts(counting.l_omega_automaton(), mapped)
    b_omega = parse_lasso(";{}")
    assert holds(b_omega, 0, parse("!( !p << p )"))
    assert not counting.accepts(counting.l_omega_automaton(), LassoWord([], ["b"]))


def test_two_sided_formula_agrees_with_l_omega():
    spec = SampleSpec(alphabet={"p"}, samples=1000)
    assert check_agreement("!p ~ p", counting.l_omega_automaton(), STANDARD_MAPPING, spec).ok


def test_agreement_false_and_true():
    spec = SampleSpec(alphabet={"p"}, samples=100)
    always_accepts = untouched(PhiNot(Plus("c0")))
    assert check_agreement("false", counting.complement(always_accepts), STANDARD_MAPPING, spec).ok
    assert check_agreement("true", always_accepts, STANDARD_MAPPING, spec).ok
    assert not check_agreement("false", always_accepts, STANDARD_MAPPING, spec).ok


def test_agreement_unmapped_letter():
    with pytest.raises(KeyError):
        check_agreement("p", counting.l_omega_automaton(), STANDARD_MAPPING, SMALL)


def test_agreement_canonical_symbols():
    # automaton over canonical letter renderings that accepts iff p recurs forever
    aut = CountingAutomaton(
        ["q"], ["c"], ["{}", "{p}"],
        {("q", "{p}"): Transition("q", frozenset({"c"})), ("q", "{}"): Transition("q")},
        "q", Plus("c"))
    assert check_agreement("G F p", aut, None, SampleSpec(alphabet={"p"}, samples=300)).ok


def test_separation_demo_sub_checks():
    result = separation_demo(SampleSpec(samples=300))
    checks = result.checks
    assert checks["equivalent: true ~ p == F G p"].ok
    assert checks["equivalent: p << true == G F !p"].ok
    assert checks["unsatisfiable: true << p"].ok
    assert checks["supplementary: !p ~ p"].ok
    assert not checks["agreement: !( !p << p )"].ok
    assert result.report == checks["agreement: !( !p << p )"]
    assert "not re-proved" in result.summary


def test_separation_demo_one_sample():
    result = separation_demo(SampleSpec(samples=1))
    assert result.report.trials == 1


def test_separation_demo_mutated_automaton():
    aut = counting.l_omega_automaton()
    flipped = counting.complement(aut)
    result = separation_demo(SampleSpec(samples=1000), automaton=flipped)
    assert not result.report.ok
    assert not result.checks["supplementary: !p ~ p"].ok
