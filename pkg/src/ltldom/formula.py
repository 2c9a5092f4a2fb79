"""Syntax of LTL with the domination operator ``<<``.

Formulas are immutable trees over six core constructors. Derived
connectives (``|``, ``->``, ``true``, ``false``, ``F``, ``G``, ``~``) are
accepted by :func:`parse` but expanded on the spot, so every consumer only
ever sees the core cases.

Concrete syntax, tightest binding first::

    ! X F G        unary prefix
    U              right-associative
    << ~           non-associative (chains need parentheses)
    &              left-associative
    |              left-associative
    ->             right-associative
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Formula", "Atom", "Not", "And", "Next", "Until", "DominatedBy",
    "FormulaSyntaxError", "parse", "render", "subformulas", "atoms", "depth",
    "top", "bottom", "disj", "implies", "eventually", "always", "almost_equal",
    "random_formula", "FIXED_PROP",
]

RESERVED = frozenset({"X", "U", "F", "G", "true", "false"})
FIXED_PROP = "p"
_PROP_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class Formula:
    __slots__ = ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not _PROP_RE.match(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid proposition name {self.name!r}")


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class DominatedBy(Formula):
    """``left << right``: *left* is dominated by *right*."""
    left: Formula
    right: Formula


FormulaT = Union[Atom, Not, And, Next, Until, DominatedBy]


# -- derived connectives -----------------------------------------------------

def disj(a, b):
    return Not(And(Not(a), Not(b)))


def implies(a, b):
    return disj(Not(a), b)


def top():
    p = Atom(FIXED_PROP)
    return disj(p, Not(p))


def bottom():
    return Not(top())


def eventually(a):
    return Until(top(), a)


def always(a):
    return Not(eventually(Not(a)))


def almost_equal(a, b):
    return And(Not(DominatedBy(a, b)), Not(DominatedBy(b, a)))


# -- traversal ---------------------------------------------------------------

def children(f):
    if isinstance(f, Atom):
        return ()
    if isinstance(f, (Not, Next)):
        return (f.arg,)
    return (f.left, f.right)


def _postorder(f) -> Iterator[Formula]:
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        stack.append((node, True))
        for child in reversed(children(node)):
            stack.append((child, False))


def subformulas(f):
    """Distinct subformulas of *f*, children before parents, *f* last."""
    seen = {}
    for node in _postorder(f):
        if node not in seen:
            seen[node] = None
    return list(seen)


def atoms(f):
    return {node.name for node in _postorder(f) if isinstance(node, Atom)}


def depth(f):
    """Operator nesting depth; atoms have depth 0."""
    d = {}
    for node in _postorder(f):
        kids = children(node)
        d[node] = 1 + max(d[k] for k in kids) if kids else 0
    return d[f]


# -- rendering ---------------------------------------------------------------

# binding strength of each constructor as it appears in rendered text
_PREC_AND, _PREC_DOM, _PREC_UNTIL, _PREC_UNARY = 2, 3, 4, 5


def _prec(f):
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, DominatedBy):
        return _PREC_DOM
    if isinstance(f, Until):
        return _PREC_UNTIL
    return _PREC_UNARY


def render(f) -> str:
    """Render *f* in the concrete syntax with minimal parentheses."""

    def sub(g, need):
        text = render(g)
        return f"({text})" if _prec(g) < need else text

    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + sub(f.arg, _PREC_UNARY)
    if isinstance(f, Next):
        return "X " + sub(f.arg, _PREC_UNARY)
    if isinstance(f, And):
        return f"{sub(f.left, _PREC_AND)} & {sub(f.right, _PREC_DOM)}"
    if isinstance(f, Until):
        return f"{sub(f.left, _PREC_UNARY)} U {sub(f.right, _PREC_UNTIL)}"
    if isinstance(f, DominatedBy):
        return f"{sub(f.left, _PREC_UNTIL)} << {sub(f.right, _PREC_UNTIL)}"
    raise TypeError(f"not a formula: {f!r}")


# -- parsing -----------------------------------------------------------------

class FormulaSyntaxError(ValueError):
    def __init__(self, message, text, pos, expected=()):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.expected = tuple(sorted(expected))
        detail = f"{message} at line {self.line}, column {self.column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


_TOKEN_RE = re.compile(r"->|<<|[!&|~()]|[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        tokens.append((m.group(), pos))
        pos = m.end()
    tokens.append(("<eof>", len(text)))
    return tokens


_UNARY = {"!": Not, "X": Next, "F": eventually, "G": always}
_PRIMARY_START = ("!", "X", "F", "G", "true", "false", "(", "IDENT")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        tok, pos = self.tokens[self.i]
        what = "end of input" if tok == "<eof>" else f"token {tok!r}"
        raise FormulaSyntaxError(f"unexpected {what}", self.text, pos, expected)

    def parse(self):
        f = self.implication()
        if self.peek() != "<eof>":
            self.fail(("->", "|", "&", "<<", "~", "U", "<eof>"))
        return f

    def implication(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.advance()
            return implies(left, self.implication())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.peek() == "|":
            self.advance()
            f = disj(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.domination()
        while self.peek() == "&":
            self.advance()
            f = And(f, self.domination())
        return f

    def domination(self):
        left = self.until()
        op = self.peek()
        if op not in ("<<", "~"):
            return left
        self.advance()
        right = self.until()
        if self.peek() in ("<<", "~"):
            tok, pos = self.tokens[self.i]
            raise FormulaSyntaxError(
                f"'{tok}' is non-associative; parenthesize the chain", self.text, pos)
        return DominatedBy(left, right) if op == "<<" else almost_equal(left, right)

    def until(self):
        left = self.unary()
        if self.peek() == "U":
            self.advance()
            return Until(left, self.until())
        return left

    def unary(self):
        tok, pos = self.tokens[self.i]
        if tok in _UNARY:
            self.advance()
            return _UNARY[tok](self.unary())
        if tok == "true":
            self.advance()
            return top()
        if tok == "false":
            self.advance()
            return bottom()
        if tok == "(":
            self.advance()
            f = self.implication()
            if self.peek() != ")":
                self.fail((")", "->", "|", "&", "<<", "~", "U"))
            self.advance()
            return f
        if tok == "U":
            raise FormulaSyntaxError("reserved word 'U' used as an atom", self.text, pos,
                                     _PRIMARY_START)
        if tok[0].isalpha() or tok[0] == "_":
            if not _PROP_RE.match(tok):
                raise FormulaSyntaxError(
                    f"invalid proposition name {tok!r} (must start with a lowercase letter)",
                    self.text, pos, _PRIMARY_START)
            self.advance()
            return Atom(tok)
        self.fail(_PRIMARY_START)


def parse(text: str) -> Formula:
    """Parse *text* into a core formula, expanding derived connectives."""
    return _Parser(text).parse()


# -- random generation -------------------------------------------------------

_CONSTRUCTORS = (Not, And, Next, Until, DominatedBy)


def random_formula(rng: random.Random, props=("p", "q"), max_depth=4, leaf_prob=0.25):
    """Random core formula of depth at most *max_depth* over *props*."""
    props = sorted(props)
    if max_depth == 0 or rng.random() < leaf_prob:
        return Atom(rng.choice(props))
    ctor = rng.choice(_CONSTRUCTORS)
    if ctor in (Not, Next):
        return ctor(random_formula(rng, props, max_depth - 1, leaf_prob))
    return ctor(random_formula(rng, props, max_depth - 1, leaf_prob),
                random_formula(rng, props, max_depth - 1, leaf_prob))
