import pytest
from hypothesis import given, strategies as st

from ltldom.lasso import (LassoSyntaxError, LassoWord, letter_at, parse_lasso,
                          parse_symbol_lasso, random_lasso, render_lasso, render_symbol_lasso,
                          suffix)
from strategies import lassos

P, Q, E = frozenset({"p"}), frozenset({"q"}), frozenset()


def test_letter_at():
    w = LassoWord([P], [E])
    assert letter_at(w, 0) == P
    assert letter_at(w, 7) == E
    assert letter_at(LassoWord([], [P, Q]), 3) == Q


def test_empty_loop_rejected():
    with pytest.raises(ValueError):
        LassoWord([P], [])


def test_suffix_examples():
    w = LassoWord([P], [E])
    assert suffix(w, 0) == w
    assert suffix(w, 1) == LassoWord([], [E])
    assert suffix(LassoWord([], [P, Q]), 1) == LassoWord([], [Q, P])


def test_random_lasso_deterministic():
    a = random_lasso({"p", "q"}, 6, 6, seed=1234)
    assert a == random_lasso({"p", "q"}, 6, 6, seed=1234)


@pytest.mark.parametrize("seed", range(20))
def test_random_lasso_bounds(seed):
    assert random_lasso({"p"}, 0, 4, seed).stem == ()
    assert len(random_lasso({"p"}, 4, 1, seed).loop) == 1
    w = random_lasso({"p", "q"}, 3, 5, seed)
    assert w.s <= 3 and 1 <= w.p <= 5
    assert w.letters() <= {E, P, Q, frozenset({"p", "q"})}


def test_parse_lasso():
    assert parse_lasso("{p}{};{q}") == LassoWord([P, E], [Q])
    assert parse_lasso(";{p}") == LassoWord([], [P])
    assert parse_lasso("{ q , p };{}") == LassoWord([frozenset({"p", "q"})], [E])


@pytest.mark.parametrize("text, message", [
    ("{p};", "empty loop"),
    ("{p}", "';'"),
    ("{p;{q}", "malformed"),
    (";{P}", "malformed"),
    (";{p,}", "malformed"),
    (";x", "unexpected character"),
    (";{p};{q}", "';'"),
])
def test_parse_lasso_errors(text, message):
    with pytest.raises(LassoSyntaxError, match=message):
        parse_lasso(text)


def test_symbol_lasso():
    assert parse_symbol_lasso("b;ab") == LassoWord(["b"], ["a", "b"])
    assert parse_symbol_lasso(";{q,p}{}") == LassoWord([], ["{p,q}", "{}"])
    assert render_symbol_lasso(parse_symbol_lasso(" b ; a b ")) == "b;ab"
    with pytest.raises(LassoSyntaxError):
        parse_symbol_lasso("ab;")


@given(lassos())
def test_render_round_trip(w):
    assert parse_lasso(render_lasso(w)) == w


@given(lassos(), st.integers(0, 40))
def test_periodicity(w, k):
    k += w.s
    assert letter_at(w, k) == letter_at(w, k + w.p)


@given(lassos(), st.integers(0, 15), st.integers(0, 15))
def test_suffix_composition(w, i, j):
    window = w.s + 2 * w.p
    assert suffix(suffix(w, i), j).prefix(window) == suffix(w, i + j).prefix(window)
    sub = suffix(w, i)
    assert sub.p == w.p
    assert [letter_at(sub, k) for k in range(window)] == [letter_at(w, i + k) for k in range(window)]
