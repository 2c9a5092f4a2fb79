"""Satisfaction of formulas on lasso words.

:func:`label` computes, bottom-up over the subformulas, a truth vector on
the ``s + p`` distinct positions of a lasso. Every later position ``k``
reads the entry at ``w.canonical(k)``: the suffix starting at ``k`` equals
the one starting at ``k - p`` once past the stem, and truth only depends
on the suffix.

``A << B`` asks whether ``card(B on [i, j]) - card(A on [i, j])`` is
unbounded above as ``j`` grows. On a lasso that difference grows by a
fixed amount per loop traversal, so the operator is true exactly when the
per-lap drift is positive, independently of ``i``.

:func:`oracle_holds` is a deliberately naive second evaluator that scans
positions and counts explicitly; it shares nothing with :func:`label`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .formula import And, Atom, DominatedBy, Next, Not, Until, subformulas
from .lasso import LassoWord

__all__ = ["LabelTable", "label", "holds", "count_satisfying", "loop_drift", "oracle_holds"]


@dataclass(frozen=True)
class LabelTable:
    word: LassoWord
    entries: dict

    def truth(self, f, i: int) -> bool:
        return self.entries[f][self.word.canonical(i)]

    def row(self, i: int) -> dict:
        """Truth of every labelled subformula at position *i*."""
        k = self.word.canonical(i)
        return {g: vec[k] for g, vec in self.entries.items()}


def _drift(w: LassoWord, a_vec, b_vec) -> int:
    return sum(b_vec[k] - a_vec[k] for k in range(w.s, len(w)))


def _until(w: LassoWord, a_vec, b_vec):
    n = len(w)
    out = [False] * n
    # least fixpoint of out[k] = b[k] or (a[k] and out[succ k]);
    # a backward sweep settles the stem, the loop may need a second lap
    changed = True
    while changed:
        changed = False
        for k in range(n - 1, -1, -1):
            v = b_vec[k] or (a_vec[k] and out[w.successor(k)])
            if v != out[k]:
                out[k] = v
                changed = True
    return tuple(out)


@lru_cache(maxsize=4096)
def label(w: LassoWord, f) -> LabelTable:
    n = len(w)
    entries = {}
    for g in subformulas(f):
        if isinstance(g, Atom):
            vec = tuple(g.name in w.letter_at(k) for k in range(n))
        elif isinstance(g, Not):
            vec = tuple(not x for x in entries[g.arg])
        elif isinstance(g, And):
            vec = tuple(x and y for x, y in zip(entries[g.left], entries[g.right]))
        elif isinstance(g, Next):
            arg = entries[g.arg]
            vec = tuple(arg[w.successor(k)] for k in range(n))
        elif isinstance(g, Until):
            vec = _until(w, entries[g.left], entries[g.right])
        elif isinstance(g, DominatedBy):
            vec = (_drift(w, entries[g.left], entries[g.right]) > 0,) * n
        else:
            raise TypeError(f"not a formula: {g!r}")
        entries[g] = vec
    return LabelTable(w, entries)


def holds(w: LassoWord, i: int, f) -> bool:
    return label(w, f).truth(f, i)


def loop_drift(w: LassoWord, a, b) -> int:
    """Net ``#b - #a`` over one traversal of the loop."""
    return _drift(w, label(w, a).entries[a], label(w, b).entries[b])


def count_satisfying(w: LassoWord, f, i: int, j: int) -> int:
    """Number of positions ``k`` in ``[i, j]`` where *f* holds."""
    if i < 0:
        raise ValueError(f"negative position {i}")
    if j < i:
        return 0
    table = label(w, f)

    def upto(m):
        # positions 0..m-1
        if m <= len(w):
            return sum(table.truth(f, k) for k in range(m))
        per_lap = sum(table.truth(f, k) for k in range(w.s, len(w)))
        laps, rest = divmod(m - w.s, w.p)
        return (sum(table.truth(f, k) for k in range(w.s))
                + laps * per_lap
                + sum(table.truth(f, w.s + k) for k in range(rest)))

    return upto(j + 1) - upto(i)


def oracle_holds(w: LassoWord, i: int, f, laps: int = 10) -> bool:
    """Evaluate by direct scanning and counting, with no label table.

    Until looks for a witness up to ``laps`` loop traversals past the later
    of ``i`` and the stem end; a first witness, if any, lies within one.
    ``A << B`` compares the counted difference at two horizons ``laps``
    traversals apart and reports whether it grew.
    """
    if laps < 2:
        raise ValueError("laps must be at least 2")
    s, p = w.s, w.p
    memo = {}

    def ev(g, k):
        key = (g, k)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            r = g.name in w.letter_at(k)
        elif isinstance(g, Not):
            r = not ev(g.arg, k)
        elif isinstance(g, And):
            r = ev(g.left, k) and ev(g.right, k)
        elif isinstance(g, Next):
            r = ev(g.arg, k + 1)
        elif isinstance(g, Until):
            r = False
            for j in range(k, max(k, s) + laps * p + 1):
                if ev(g.right, j):
                    r = True
                    break
                if not ev(g.left, j):
                    break
        elif isinstance(g, DominatedBy):
            j1 = max(k, s) + p - 1
            j2 = j1 + laps * p

            def diff(j):
                return sum(ev(g.right, m) - ev(g.left, m) for m in range(k, j + 1))

            r = diff(j2) - diff(j1) > 0
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[key] = r
        return r

    return ev(f, i)
