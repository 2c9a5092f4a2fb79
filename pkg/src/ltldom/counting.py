"""Deterministic k-counting automata on lasso words.

A counting automaton is a total DFA whose transitions also bump counters
up or down. The counters are never read; acceptance is a Boolean condition
over atoms ``c+`` (counter ``c`` is unbounded above along the run) and
``c-`` (unbounded below).

On a lasso input the run is eventually periodic in ``(state, phase)``
where phase is the canonical lasso position, so a counter is unbounded
above iff its net change over that cycle is positive.
"""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from typing import Iterable

from .lasso import LassoWord

__all__ = [
    "Plus", "Minus", "PhiNot", "PhiAnd", "PhiOr", "parse_phi", "render_phi",
    "phi_counters", "eval_phi", "Transition", "CountingAutomaton", "AutomatonError",
    "RunAnalysis", "validate", "step", "analyze_run", "accepts", "complement",
    "product", "l_omega_automaton", "prefix_count_oracle", "MullerAutomaton",
    "muller_to_counting", "load_automaton", "dump_automaton", "to_json", "from_json",
    "random_automaton", "random_phi",
]


# -- acceptance formulas -----------------------------------------------------

@dataclass(frozen=True)
class Plus:
    counter: str


@dataclass(frozen=True)
class Minus:
    counter: str


@dataclass(frozen=True)
class PhiNot:
    arg: object


@dataclass(frozen=True)
class PhiAnd:
    left: object
    right: object


@dataclass(frozen=True)
class PhiOr:
    left: object
    right: object


def eval_phi(phi, pos_unbounded, neg_unbounded) -> bool:
    """Evaluate *phi* given the sets of counters unbounded above / below."""
    if isinstance(phi, Plus):
        return phi.counter in pos_unbounded
    if isinstance(phi, Minus):
        return phi.counter in neg_unbounded
    if isinstance(phi, PhiNot):
        return not eval_phi(phi.arg, pos_unbounded, neg_unbounded)
    if isinstance(phi, PhiAnd):
        return (eval_phi(phi.left, pos_unbounded, neg_unbounded)
                and eval_phi(phi.right, pos_unbounded, neg_unbounded))
    if isinstance(phi, PhiOr):
        return (eval_phi(phi.left, pos_unbounded, neg_unbounded)
                or eval_phi(phi.right, pos_unbounded, neg_unbounded))
    raise TypeError(f"not an acceptance formula: {phi!r}")


def phi_counters(phi) -> set:
    if isinstance(phi, (Plus, Minus)):
        return {phi.counter}
    if isinstance(phi, PhiNot):
        return phi_counters(phi.arg)
    return phi_counters(phi.left) | phi_counters(phi.right)


def _map_counters(phi, fn):
    if isinstance(phi, Plus):
        return Plus(fn(phi.counter))
    if isinstance(phi, Minus):
        return Minus(fn(phi.counter))
    if isinstance(phi, PhiNot):
        return PhiNot(_map_counters(phi.arg, fn))
    return type(phi)(_map_counters(phi.left, fn), _map_counters(phi.right, fn))


_PHI_PREC = {PhiOr: 1, PhiAnd: 2}


def render_phi(phi) -> str:
    def sub(g, need):
        text = render_phi(g)
        return f"({text})" if _PHI_PREC.get(type(g), 3) < need else text

    if isinstance(phi, Plus):
        return phi.counter + "+"
    if isinstance(phi, Minus):
        return phi.counter + "-"
    if isinstance(phi, PhiNot):
        return "!" + sub(phi.arg, 3)
    if isinstance(phi, PhiAnd):
        return f"{sub(phi.left, 2)} & {sub(phi.right, 3)}"
    if isinstance(phi, PhiOr):
        return f"{sub(phi.left, 1)} | {sub(phi.right, 2)}"
    raise TypeError(f"not an acceptance formula: {phi!r}")


_PHI_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)([+-])|([!&|()]))")


def parse_phi(text: str):
    """Parse ``!c0+ & (c1- | c2+)``-style acceptance conditions."""
    tokens = []
    pos = 0
    while text[pos:].strip():
        m = _PHI_TOKEN_RE.match(text, pos)
        if m is None:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ValueError(f"bad acceptance formula {text!r} at column {col}")
        tokens.append(m.group(3) or (Plus if m.group(2) == "+" else Minus)(m.group(1)))
        pos = m.end()
    tokens.append(None)
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def disjunction():
        f = conjunction()
        while peek() == "|":
            take()
            f = PhiOr(f, conjunction())
        return f

    def conjunction():
        f = unary()
        while peek() == "&":
            take()
            f = PhiAnd(f, unary())
        return f

    def unary():
        tok = take()
        if tok == "!":
            return PhiNot(unary())
        if tok == "(":
            f = disjunction()
            if take() != ")":
                raise ValueError(f"missing ')' in acceptance formula {text!r}")
            return f
        if isinstance(tok, (Plus, Minus)):
            return tok
        raise ValueError(f"unexpected {tok!r} in acceptance formula {text!r}")

    phi = disjunction()
    if peek() is not None:
        raise ValueError(f"trailing {peek()!r} in acceptance formula {text!r}")
    return phi


# -- automata ----------------------------------------------------------------

@dataclass(frozen=True)
class Transition:
    target: str
    inc: frozenset = frozenset()
    dec: frozenset = frozenset()


class AutomatonError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class CountingAutomaton:
    states: tuple
    counters: tuple
    alphabet: tuple
    delta: dict = field(hash=False)
    initial: str
    phi: object

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "counters", tuple(self.counters))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    @property
    def k(self) -> int:
        return len(self.counters)


def validate(aut: CountingAutomaton) -> list:
    """All well-formedness violations of *aut*; empty means valid."""
    problems = []
    states, counters, alphabet = set(aut.states), set(aut.counters), set(aut.alphabet)
    if not states:
        problems.append("no states")
    if not alphabet:
        problems.append("empty alphabet")
    for kind, seq in (("state", aut.states), ("counter", aut.counters), ("symbol", aut.alphabet)):
        if len(set(seq)) != len(seq):
            problems.append(f"duplicate {kind} names")
    if aut.initial not in states:
        problems.append(f"initial state {aut.initial!r} not in states")
    for q in aut.states:
        for a in aut.alphabet:
            if (q, a) not in aut.delta:
                problems.append(f"delta not total: missing ({q}, {a})")
    for (q, a), t in aut.delta.items():
        where = f"({q}, {a})"
        if q not in states:
            problems.append(f"transition {where} from unknown state {q!r}")
        if a not in alphabet:
            problems.append(f"transition {where} on unknown symbol {a!r}")
        if t.target not in states:
            problems.append(f"transition {where} to unknown state {t.target!r}")
        for c in sorted((t.inc | t.dec) - counters):
            problems.append(f"transition {where} uses unknown counter {c!r}")
        if t.inc & t.dec:
            problems.append(f"transition {where}: C+ and C- overlap on {sorted(t.inc & t.dec)}")
    try:
        for c in sorted(phi_counters(aut.phi) - counters):
            problems.append(f"acceptance formula uses unknown counter {c!r}")
    except (TypeError, AttributeError):
        problems.append(f"malformed acceptance formula {aut.phi!r}")
    return problems


def check(aut: CountingAutomaton) -> CountingAutomaton:
    problems = validate(aut)
    if problems:
        raise AutomatonError(problems)
    return aut


def step(aut: CountingAutomaton, state, valuation: dict, symbol):
    """One transition; returns ``(next_state, next_valuation)``."""
    try:
        t = aut.delta[state, symbol]
    except KeyError:
        raise ValueError(f"no transition from {state!r} on symbol {symbol!r}") from None
    v = dict(valuation)
    for c in t.inc:
        v[c] += 1
    for c in t.dec:
        v[c] -= 1
    return t.target, v


@dataclass(frozen=True)
class RunAnalysis:
    visited: list
    cycle_start: int
    cycle_length: int
    drift: dict
    classification: dict

    @property
    def pos_unbounded(self):
        return {c for c, (pos, _) in self.classification.items() if pos}

    @property
    def neg_unbounded(self):
        return {c for c, (_, neg) in self.classification.items() if neg}


def analyze_run(aut: CountingAutomaton, w: LassoWord) -> RunAnalysis:
    """Simulate the unique run until ``(state, phase)`` repeats.

    ``visited[j]`` is the configuration before reading position ``j``.
    """
    unknown = sorted(set(w.letters()) - set(aut.alphabet), key=str)
    if unknown:
        raise ValueError(f"symbols {unknown} not in the automaton alphabet")
    state = aut.initial
    valuation = {c: 0 for c in aut.counters}
    visited = []
    first_seen = {}
    j = 0
    while True:
        phase = w.canonical(j)
        key = (state, phase)
        if key in first_seen:
            break
        # stem phases never recur, so only loop phases are worth indexing
        if phase >= w.s:
            first_seen[key] = j
        visited.append((state, phase, valuation))
        state, valuation = step(aut, state, valuation, w.letter_at(j))
        j += 1
    start = first_seen[key]
    entry = visited[start][2]
    drift = {c: valuation[c] - entry[c] for c in aut.counters}
    classification = {c: (d > 0, d < 0) for c, d in drift.items()}
    return RunAnalysis(visited, start, j - start, drift, classification)


def accepts(aut: CountingAutomaton, w: LassoWord) -> bool:
    run = analyze_run(aut, w)
    return eval_phi(aut.phi, run.pos_unbounded, run.neg_unbounded)


def complement(aut: CountingAutomaton) -> CountingAutomaton:
    # deterministic and total: one run per word, so negating phi suffices
    return CountingAutomaton(aut.states, aut.counters, aut.alphabet, dict(aut.delta),
                             aut.initial, PhiNot(aut.phi))


def product(a1: CountingAutomaton, a2: CountingAutomaton, mode: str = "and") -> CountingAutomaton:
    """Synchronous product; counters tagged ``l_``/``r_`` to keep them disjoint."""
    mode = mode.lower()
    if mode not in ("and", "or"):
        raise ValueError(f"mode must be 'and' or 'or', not {mode!r}")
    if set(a1.alphabet) != set(a2.alphabet):
        raise ValueError(f"alphabet mismatch: {sorted(a1.alphabet)} vs {sorted(a2.alphabet)}")
    left = lambda c: "l_" + c
    right = lambda c: "r_" + c
    name = lambda q1, q2: f"({q1},{q2})"
    states = [name(q1, q2) for q1 in a1.states for q2 in a2.states]
    if len(set(states)) != len(states):
        raise ValueError("product state names collide; rename states to avoid ',' and parentheses")
    delta = {}
    for q1 in a1.states:
        for q2 in a2.states:
            for a in a1.alphabet:
                t1, t2 = a1.delta[q1, a], a2.delta[q2, a]
                delta[name(q1, q2), a] = Transition(
                    name(t1.target, t2.target),
                    frozenset(map(left, t1.inc)) | frozenset(map(right, t2.inc)),
                    frozenset(map(left, t1.dec)) | frozenset(map(right, t2.dec)),
                )
    phi1, phi2 = _map_counters(a1.phi, left), _map_counters(a2.phi, right)
    phi = PhiAnd(phi1, phi2) if mode == "and" else PhiOr(phi1, phi2)
    counters = [left(c) for c in a1.counters] + [right(c) for c in a2.counters]
    return CountingAutomaton(states, counters, a1.alphabet, delta,
                             name(a1.initial, a2.initial), phi)


def l_omega_automaton() -> CountingAutomaton:
    """One state, one counter: ``a`` counts up, ``b`` counts down, accept if bounded."""
    return CountingAutomaton(
        states=["q"], counters=["c0"], alphabet=["a", "b"],
        delta={("q", "a"): Transition("q", frozenset({"c0"})),
               ("q", "b"): Transition("q", dec=frozenset({"c0"}))},
        initial="q",
        phi=PhiAnd(PhiNot(Plus("c0")), PhiNot(Minus("c0"))),
    )


def prefix_count_oracle(w: LassoWord) -> bool:
    """Is ``|#a - #b|`` bounded over all finite prefixes of *w*?"""
    bad = sorted(set(w.letters()) - {"a", "b"}, key=str)
    if bad:
        raise ValueError(f"letters {bad} are not 'a' or 'b'")
    # prefixes past the stem differ from a lap-boundary prefix by < p,
    # so boundedness is decided by the net difference of one lap
    return w.loop.count("a") - w.loop.count("b") == 0


# -- Muller automata ---------------------------------------------------------

@dataclass(frozen=True)
class MullerAutomaton:
    states: tuple
    alphabet: tuple
    delta: dict = field(hash=False)
    initial: str
    family: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "family", frozenset(frozenset(f) for f in self.family))

    def validate(self) -> list:
        problems = []
        if self.initial not in self.states:
            problems.append(f"initial state {self.initial!r} not in states")
        for q in self.states:
            for a in self.alphabet:
                if self.delta.get((q, a)) not in self.states:
                    problems.append(f"delta not total or dangling at ({q}, {a})")
        for member in self.family:
            if not member <= set(self.states):
                problems.append(f"family member {sorted(member)} not a subset of states")
        return problems

    def infinitely_visited(self, w: LassoWord) -> frozenset:
        state, j, seen, trace = self.initial, 0, {}, []
        while (state, w.canonical(j)) not in seen:
            seen[state, w.canonical(j)] = j
            trace.append(state)
            state = self.delta[state, w.letter_at(j)]
            j += 1
        return frozenset(trace[seen[state, w.canonical(j)]:])

    def accepts(self, w: LassoWord) -> bool:
        return self.infinitely_visited(w) in self.family


def muller_to_counting(m: MullerAutomaton) -> CountingAutomaton:
    """One nondecreasing counter per state, bumped on every entry into it."""
    counter = {q: f"c{i}" for i, q in enumerate(m.states)}
    delta = {(q, a): Transition(m.delta[q, a], frozenset({counter[m.delta[q, a]]}))
             for q in m.states for a in m.alphabet}
    disjuncts = []
    for member in sorted(m.family, key=lambda f: sorted(f)):
        lits = [Plus(counter[q]) if q in member else PhiNot(Plus(counter[q])) for q in m.states]
        conj = lits[0]
        for lit in lits[1:]:
            conj = PhiAnd(conj, lit)
        disjuncts.append(conj)
    if disjuncts:
        phi = disjuncts[0]
        for d in disjuncts[1:]:
            phi = PhiOr(phi, d)
    else:
        c = counter[m.states[0]]
        phi = PhiAnd(Plus(c), PhiNot(Plus(c)))
    return CountingAutomaton(m.states, [counter[q] for q in m.states], m.alphabet, delta,
                             m.initial, phi)


# -- file format -------------------------------------------------------------

def to_json(aut: CountingAutomaton) -> dict:
    return {
        "states": list(aut.states),
        "counters": list(aut.counters),
        "alphabet": list(aut.alphabet),
        "initial": aut.initial,
        "delta": [
            {"from": q, "symbol": a, "to": t.target,
             "inc": sorted(t.inc), "dec": sorted(t.dec)}
            for (q, a), t in aut.delta.items()
        ],
        "phi": render_phi(aut.phi),
    }


def from_json(doc: dict) -> CountingAutomaton:
    try:
        delta = {}
        for entry in doc["delta"]:
            key = (entry["from"], entry["symbol"])
            if key in delta:
                raise AutomatonError([f"duplicate transition for {key}"])
            delta[key] = Transition(entry["to"], frozenset(entry.get("inc", ())),
                                    frozenset(entry.get("dec", ())))
        phi = parse_phi(doc["phi"])
        return CountingAutomaton(doc["states"], doc["counters"], doc["alphabet"], delta,
                                 doc["initial"], phi)
    except KeyError as e:
        raise AutomatonError([f"missing field {e.args[0]!r}"]) from None
    except AutomatonError:
        raise
    except (TypeError, AttributeError, ValueError) as e:
        raise AutomatonError([f"malformed automaton document: {e}"]) from None


def dump_automaton(aut: CountingAutomaton) -> str:
    return json.dumps(to_json(aut), indent=2) + "\n"


def load_automaton(text: str) -> CountingAutomaton:
    return from_json(json.loads(text))


# -- random generation -------------------------------------------------------

def random_phi(rng: random.Random, counters, max_depth=3):
    if max_depth == 0 or rng.random() < 0.3:
        return rng.choice((Plus, Minus))(rng.choice(list(counters)))
    kind = rng.choice((PhiNot, PhiAnd, PhiOr))
    if kind is PhiNot:
        return PhiNot(random_phi(rng, counters, max_depth - 1))
    return kind(random_phi(rng, counters, max_depth - 1), random_phi(rng, counters, max_depth - 1))


def random_automaton(rng: random.Random, max_states=4, max_counters=2,
                     alphabet: Iterable = ("a", "b"), phi_depth=3) -> CountingAutomaton:
    """Random valid automaton; inc/dec sets are disjoint by construction."""
    states = [f"q{i}" for i in range(rng.randint(1, max_states))]
    counters = [f"c{i}" for i in range(rng.randint(1, max_counters))]
    alphabet = list(alphabet)
    delta = {}
    for q in states:
        for a in alphabet:
            effect = {c: rng.choice((1, 0, -1)) for c in counters}
            delta[q, a] = Transition(
                rng.choice(states),
                frozenset(c for c, e in effect.items() if e > 0),
                frozenset(c for c, e in effect.items() if e < 0),
            )
    return CountingAutomaton(states, counters, alphabet, delta, states[0],
                             random_phi(rng, counters, phi_depth))
