"""Sampling-based cross-checks between formulas and automata.

These are refutation searches. A report of ``NO_COUNTEREXAMPLE`` is
evidence gathered on random lassos, not a proof of equivalence.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Optional

from . import counting
from .formula import parse, render
from .lasso import LassoWord, random_lasso, render_letter, render_lasso
from .semantics import holds

__all__ = [
    "SampleSpec", "Verdict", "Witness", "CheckReport", "check_equivalent",
    "check_unsatisfiable", "letter_to_symbol", "check_agreement", "separation_demo",
    "SeparationResult", "STANDARD_MAPPING", "SEPARATING_FORMULA",
]

# a := {P}, b := {} for the one-proposition alphabet
STANDARD_MAPPING = {frozenset({"p"}): "a", frozenset(): "b"}
SEPARATING_FORMULA = "!( !p << p )"


@dataclass(frozen=True)
class SampleSpec:
    alphabet: frozenset = frozenset({"p", "q"})
    max_stem: int = 6
    max_period: int = 6
    samples: int = 1000
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.max_period < 1:
            raise ValueError("max_period must be at least 1")

    def words(self):
        rng = random.Random(self.seed)
        for _ in range(self.samples):
            yield random_lasso(self.alphabet, self.max_stem, self.max_period, rng)


class Verdict(enum.Enum):
    NO_COUNTEREXAMPLE = "no counterexample found"
    COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class Witness:
    word: LassoWord
    position: int
    details: str = ""

    def __str__(self):
        text = f"{render_lasso(self.word)} at position {self.position}"
        return f"{text}: {self.details}" if self.details else text


@dataclass(frozen=True)
class CheckReport:
    verdict: Verdict
    trials: int
    witness: Optional[Witness] = None
    trial_index: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.NO_COUNTEREXAMPLE

    def __str__(self):
        if self.ok:
            return f"no counterexample found in {self.trials} trials"
        return f"counterexample in trial {self.trial_index} of {self.trials}: {self.witness}"


def _formula(f):
    return parse(f) if isinstance(f, str) else f


def _found(trials, index, word, position, details):
    return CheckReport(Verdict.COUNTEREXAMPLE, trials, Witness(word, position, details), index)


def check_equivalent(f, g, spec: SampleSpec = SampleSpec()) -> CheckReport:
    f, g = _formula(f), _formula(g)
    for n, w in enumerate(spec.words()):
        for i in range(len(w)):
            vf, vg = holds(w, i, f), holds(w, i, g)
            if vf != vg:
                return _found(spec.samples, n, w, i,
                              f"{render(f)} is {vf}, {render(g)} is {vg}")
    return CheckReport(Verdict.NO_COUNTEREXAMPLE, spec.samples)


def check_unsatisfiable(f, spec: SampleSpec = SampleSpec()) -> CheckReport:
    f = _formula(f)
    for n, w in enumerate(spec.words()):
        for i in range(len(w)):
            if holds(w, i, f):
                return _found(spec.samples, n, w, i, f"{render(f)} holds")
    return CheckReport(Verdict.NO_COUNTEREXAMPLE, spec.samples)


def letter_to_symbol(letter, mapping=None) -> str:
    """Automaton symbol for a proposition letter.

    Without *mapping* the symbol is the canonical rendering, e.g. ``{p,q}``.
    """
    letter = frozenset(letter)
    if mapping is None:
        return render_letter(letter)
    try:
        return mapping[letter]
    except KeyError:
        raise KeyError(f"letter {render_letter(letter)} is not covered by the mapping") from None


def _map_word(w: LassoWord, mapping) -> LassoWord:
    return LassoWord([letter_to_symbol(x, mapping) for x in w.stem],
                     [letter_to_symbol(x, mapping) for x in w.loop])


def check_agreement(f, aut: counting.CountingAutomaton, mapping=None,
                    spec: SampleSpec = SampleSpec()) -> CheckReport:
    """Compare ``holds(w, 0, f)`` with acceptance of the mapped word."""
    f = _formula(f)
    for n, w in enumerate(spec.words()):
        in_formula = holds(w, 0, f)
        in_automaton = counting.accepts(aut, _map_word(w, mapping))
        if in_formula != in_automaton:
            return _found(spec.samples, n, w, 0,
                          f"formula {in_formula}, automaton "
                          f"{'accepts' if in_automaton else 'rejects'}")
    return CheckReport(Verdict.NO_COUNTEREXAMPLE, spec.samples)


@dataclass
class SeparationResult:
    report: CheckReport
    checks: dict = field(default_factory=dict)
    summary: str = ""


def separation_demo(spec: Optional[SampleSpec] = None, automaton=None) -> SeparationResult:
    """Check the separating formula against the bounded-difference automaton.

    Also re-runs the three equivalences relating ``~``/``<<`` to plain LTL.
    The overall report is the first failing sub-check in the order listed.
    A supplementary check of the two-sided formula ``!p ~ p`` is reported
    but does not enter the overall verdict.
    """
    spec = spec or SampleSpec()
    aut = automaton or counting.l_omega_automaton()
    one_prop = SampleSpec(frozenset({"p"}), spec.max_stem, spec.max_period, spec.samples, spec.seed)
    checks = {
        "agreement: " + SEPARATING_FORMULA: check_agreement(
            SEPARATING_FORMULA, aut, STANDARD_MAPPING, one_prop),
        "equivalent: true ~ p == F G p": check_equivalent(
            "true ~ p", "F G p", spec),
        "equivalent: p << true == G F !p": check_equivalent(
            "p << true", "G F !p", spec),
        "unsatisfiable: true << p": check_unsatisfiable("true << p", spec),
    }
    supplementary = check_agreement("!p ~ p", aut, STANDARD_MAPPING, one_prop)

    failing = [r for r in checks.values() if not r.ok]
    report = failing[0] if failing else CheckReport(Verdict.NO_COUNTEREXAMPLE, spec.samples)

    lines = [f"{name}: {r}" for name, r in checks.items()]
    lines.append(f"supplementary agreement: !p ~ p: {supplementary}")
    agreement = checks["agreement: " + SEPARATING_FORMULA]
    if agreement.ok:
        lines.append(f"The language of {SEPARATING_FORMULA} matched the bounded a/b-difference "
                     f"automaton on all {agreement.trials} sampled words (a = {{p}}, b = {{}}).")
    else:
        lines.append(f"The language of {SEPARATING_FORMULA} differs from the bounded "
                     f"a/b-difference language: {agreement.witness}.")
    lines.append("Non-regularity of the bounded a/b-difference language is a cited proof fact; "
                 "it is not re-proved by sampling.")
    checks["supplementary: !p ~ p"] = supplementary
    return SeparationResult(report, checks, "\n".join(lines))
