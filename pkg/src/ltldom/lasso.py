"""Ultimately periodic omega-words ``stem . loop^omega``.

A letter is whatever the consumer needs: a ``frozenset`` of proposition
names for the logic side, an opaque symbol string for automata. The
:class:`LassoWord` itself only cares that letters are hashable.

Text format for proposition lassos is ``STEM;LOOP`` where each letter is
``{p,q}`` or ``{}``, e.g. ``{p}{};{q}``. Symbol lassos (automaton input)
use the same ``STEM;LOOP`` split with single-character symbols or braced
groups, e.g. ``b;ab`` or ``{p};{}{p}``.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Hashable, Sequence

__all__ = [
    "LassoWord", "LassoSyntaxError", "letter_at", "suffix", "random_lasso",
    "random_symbol_lasso", "parse_lasso", "render_lasso", "parse_symbol_lasso",
    "render_symbol_lasso", "render_letter",
]


@dataclass(frozen=True)
class LassoWord:
    stem: tuple
    loop: tuple

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "loop", tuple(self.loop))
        if not self.loop:
            raise ValueError("lasso loop must contain at least one letter")

    @property
    def s(self) -> int:
        return len(self.stem)

    @property
    def p(self) -> int:
        return len(self.loop)

    def __len__(self):
        """Number of distinct positions, ``s + p``."""
        return len(self.stem) + len(self.loop)

    def canonical(self, i: int) -> int:
        """Map position *i* onto ``[0, s+p)`` preserving the suffix word."""
        if i < 0:
            raise ValueError(f"negative position {i}")
        if i < len(self):
            return i
        return self.s + (i - self.s) % self.p

    def successor(self, k: int) -> int:
        return k + 1 if k + 1 < len(self) else self.s

    def letter_at(self, i: int) -> Hashable:
        k = self.canonical(i)
        return self.stem[k] if k < self.s else self.loop[k - self.s]

    def prefix(self, n: int) -> list:
        return [self.letter_at(i) for i in range(n)]

    def letters(self) -> set:
        return set(self.stem) | set(self.loop)

    def __str__(self):
        return render_lasso(self)


def letter_at(w: LassoWord, i: int):
    return w.letter_at(i)


def suffix(w: LassoWord, i: int) -> LassoWord:
    """The word read from position *i* on; loop length is kept at ``p``."""
    if i < 0:
        raise ValueError(f"negative position {i}")
    if i <= w.s:
        return LassoWord(w.stem[i:], w.loop)
    shift = (i - w.s) % w.p
    return LassoWord((), w.loop[shift:] + w.loop[:shift])


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_lasso(alphabet, max_stem: int, max_period: int, seed) -> LassoWord:
    """Random proposition lasso; each letter is a uniform subset of *alphabet*.

    *seed* is an int or a ``random.Random`` to draw from.
    """
    if max_period < 1:
        raise ValueError("max_period must be at least 1")
    rng = _rng(seed)
    props = sorted(alphabet)

    def letter():
        return frozenset(x for x in props if rng.random() < 0.5)

    s = rng.randint(0, max_stem)
    p = rng.randint(1, max_period)
    return LassoWord([letter() for _ in range(s)], [letter() for _ in range(p)])


def random_symbol_lasso(symbols, max_stem: int, max_period: int, seed) -> LassoWord:
    """Random lasso over opaque *symbols*, each position uniform."""
    if max_period < 1:
        raise ValueError("max_period must be at least 1")
    rng = _rng(seed)
    symbols = sorted(symbols)
    s = rng.randint(0, max_stem)
    p = rng.randint(1, max_period)
    return LassoWord([rng.choice(symbols) for _ in range(s)],
                     [rng.choice(symbols) for _ in range(p)])


# -- text format -------------------------------------------------------------

class LassoSyntaxError(ValueError):
    pass


_IDENT = r"[a-z][a-zA-Z0-9_]*"
_LETTER_RE = re.compile(r"\{\s*(?:(%s)\s*((?:,\s*%s\s*)*))?\}" % (_IDENT, _IDENT))


def render_letter(letter) -> str:
    """Canonical rendering of a proposition set: sorted names in braces."""
    return "{" + ",".join(sorted(letter)) + "}"


def _split(text):
    if text.count(";") != 1:
        raise LassoSyntaxError(f"expected exactly one ';' separating stem and loop in {text!r}")
    return text.split(";")


def _parse_letters(part, offset, text):
    letters = []
    pos = 0
    while pos < len(part):
        if part[pos].isspace():
            pos += 1
            continue
        if part[pos] != "{":
            raise LassoSyntaxError(
                f"unexpected character {part[pos]!r} at column {offset + pos + 1} in {text!r}")
        m = _LETTER_RE.match(part, pos)
        if m is None:
            raise LassoSyntaxError(f"malformed letter at column {offset + pos + 1} in {text!r}")
        names = re.findall(_IDENT, m.group()) if m.group(1) else []
        letters.append(frozenset(names))
        pos = m.end()
    return letters


def parse_lasso(text: str) -> LassoWord:
    stem_text, loop_text = _split(text)
    stem = _parse_letters(stem_text, 0, text)
    loop = _parse_letters(loop_text, len(stem_text) + 1, text)
    if not loop:
        raise LassoSyntaxError(f"empty loop in {text!r}")
    return LassoWord(stem, loop)


def render_lasso(w: LassoWord) -> str:
    if all(isinstance(x, (frozenset, set)) for x in w.stem + w.loop):
        part = lambda seq: "".join(render_letter(x) for x in seq)
    else:
        part = lambda seq: "".join(_render_symbol(x) for x in seq)
    return f"{part(w.stem)};{part(w.loop)}"


def _render_symbol(sym):
    sym = str(sym)
    if len(sym) == 1 or (sym.startswith("{") and sym.endswith("}")):
        return sym
    raise ValueError(f"symbol {sym!r} has no lasso text form (use one character or {{...}})")


_SYMBOL_RE = re.compile(r"\{[^{};]*\}|[^\s{};]")


def _parse_symbols(part, offset, text):
    symbols = []
    pos = 0
    while pos < len(part):
        if part[pos].isspace():
            pos += 1
            continue
        m = _SYMBOL_RE.match(part, pos)
        if m is None:
            raise LassoSyntaxError(
                f"unexpected character {part[pos]!r} at column {offset + pos + 1} in {text!r}")
        sym = m.group()
        if sym.startswith("{"):
            # braced symbols are letter renderings; normalise so {q,p} == {p,q}
            sym = render_letter(_parse_letters(sym, offset + pos, text)[0])
        symbols.append(sym)
        pos = m.end()
    return symbols


def parse_symbol_lasso(text: str) -> LassoWord:
    stem_text, loop_text = _split(text)
    stem = _parse_symbols(stem_text, 0, text)
    loop = _parse_symbols(loop_text, len(stem_text) + 1, text)
    if not loop:
        raise LassoSyntaxError(f"empty loop in {text!r}")
    return LassoWord(stem, loop)


def render_symbol_lasso(w: LassoWord) -> str:
    return "".join(map(_render_symbol, w.stem)) + ";" + "".join(map(_render_symbol, w.loop))
