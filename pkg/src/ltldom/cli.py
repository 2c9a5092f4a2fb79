"""Command-line front end.

Exit status: 0 when the property holds / the word is accepted / no
counterexample was found, 1 for the negative outcome, 2 for usage or input
errors. The last line of normal output is always ``RESULT <verdict>``.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bridge, counting
from .formula import DominatedBy, parse, render, subformulas
from .lasso import parse_lasso, parse_symbol_lasso, render_lasso
from .semantics import holds, label, loop_drift

BUILTIN_LOMEGA = "builtin:lomega"


class InputError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from None


def load_automaton_arg(spec: str) -> counting.CountingAutomaton:
    if spec == BUILTIN_LOMEGA:
        return counting.l_omega_automaton()
    try:
        aut = counting.load_automaton(_read(spec))
    except json.JSONDecodeError as e:
        raise InputError(f"{spec}: invalid JSON: {e}") from None
    except counting.AutomatonError as e:
        raise InputError(f"{spec}: invalid automaton:\n  " + "\n  ".join(e.problems)) from None
    problems = counting.validate(aut)
    if problems:
        raise InputError(f"{spec}: invalid automaton:\n  " + "\n  ".join(problems))
    return aut


def load_mapping(path: str) -> dict:
    """``LETTER -> SYMBOL`` per line; blank lines and ``#`` comments ignored."""
    mapping = {}
    for n, line in enumerate(_read(path).splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise InputError(f"{path}:{n}: expected 'LETTER -> SYMBOL'")
        letter_text, symbol = (part.strip() for part in line.split("->", 1))
        try:
            letter = parse_lasso(";" + letter_text).loop
        except ValueError as e:
            raise InputError(f"{path}:{n}: {e}") from None
        if len(letter) != 1 or not symbol:
            raise InputError(f"{path}:{n}: expected exactly one letter and a symbol")
        mapping[letter[0]] = symbol
    return mapping


def _formula(text):
    try:
        return parse(text)
    except ValueError as e:
        raise InputError(f"formula {text!r}: {e}") from None


def _word(text):
    try:
        return parse_lasso(text)
    except ValueError as e:
        raise InputError(f"word {text!r}: {e}") from None


def _result(verdict):
    print(f"RESULT {verdict}")


# -- commands ----------------------------------------------------------------

def cmd_eval(args):
    f = _formula(args.formula)
    w = _word(args.word)
    if args.position < 0:
        raise InputError("position must be nonnegative")
    value = holds(w, args.position, f)
    if args.explain:
        for g in subformulas(f):
            if isinstance(g, DominatedBy):
                print(f"drift {render(g)}: {loop_drift(w, g.left, g.right):+d}")
        row = label(w, f).row(args.position)
        for g in subformulas(f):
            print(f"{'T' if row[g] else 'F'}  {render(g)}")
    print("true" if value else "false")
    _result("true" if value else "false")
    return 0 if value else 1


def cmd_accept(args):
    aut = load_automaton_arg(args.automaton)
    try:
        w = parse_symbol_lasso(args.word)
        run = counting.analyze_run(aut, w)
    except ValueError as e:
        raise InputError(f"word {args.word!r}: {e}") from None
    ok = counting.eval_phi(aut.phi, run.pos_unbounded, run.neg_unbounded)
    for c in aut.counters:
        pos, neg = run.classification[c]
        print(f"counter {c}: drift {run.drift[c]:+d} per cycle of {run.cycle_length}; "
              f"{c}+ {str(pos).lower()}, {c}- {str(neg).lower()}")
    verdict = "accepted" if ok else "rejected"
    print(verdict)
    _result(verdict)
    return 0 if ok else 1


def _emit_automaton(aut, out):
    _write(out, counting.dump_automaton(aut))
    print(f"{len(aut.states)} states, {len(aut.counters)} counters", file=sys.stderr if out == "-" else sys.stdout)


def cmd_complement(args):
    aut = counting.complement(load_automaton_arg(args.automaton))
    _emit_automaton(aut, args.out)
    if args.out != "-":
        _result("ok")
    return 0


def cmd_product(args):
    left, right = load_automaton_arg(args.left), load_automaton_arg(args.right)
    try:
        aut = counting.product(left, right, args.mode)
    except ValueError as e:
        raise InputError(str(e)) from None
    _emit_automaton(aut, args.out)
    if args.out != "-":
        _result("ok")
    return 0


def cmd_builtin(args):
    aut = counting.l_omega_automaton()
    _emit_automaton(aut, args.out)
    if args.out != "-":
        _result("ok")
    return 0


def _sample_spec(args, default_alphabet):
    alphabet = default_alphabet
    if args.alphabet is not None:
        alphabet = {x.strip() for x in args.alphabet.split(",") if x.strip()}
    try:
        return bridge.SampleSpec(frozenset(alphabet), args.max_stem, args.max_period,
                                 args.samples, args.seed)
    except ValueError as e:
        raise InputError(str(e)) from None


def _report(report):
    print(f"trials: {report.trials}")
    if report.ok:
        print("no counterexample found")
        _result("ok")
        return 0
    w = report.witness
    print(f"counterexample (trial {report.trial_index}): word {render_lasso(w.word)} "
          f"position {w.position}")
    if w.details:
        print(w.details)
    _result("counterexample")
    return 1


def cmd_check(args):
    if args.check == "equiv":
        f, g = _formula(args.f), _formula(args.g)
        return _report(bridge.check_equivalent(f, g, _sample_spec(args, {"p", "q"})))
    if args.check == "unsat":
        return _report(bridge.check_unsatisfiable(_formula(args.f), _sample_spec(args, {"p", "q"})))
    f = _formula(args.f)
    aut = load_automaton_arg(args.automaton)
    if args.map is not None:
        mapping = load_mapping(args.map)
    elif args.automaton == BUILTIN_LOMEGA:
        mapping = bridge.STANDARD_MAPPING
    else:
        mapping = None
    alphabet = set().union(*mapping) if mapping else {"p"}
    spec = _sample_spec(args, alphabet)
    try:
        return _report(bridge.check_agreement(f, aut, mapping, spec))
    except (KeyError, ValueError) as e:
        raise InputError(str(e.args[0] if e.args else e)) from None


def cmd_demo(args):
    result = bridge.separation_demo(_sample_spec(args, {"p", "q"}))
    print(result.summary)
    _result("ok" if result.report.ok else "counterexample")
    return 0 if result.report.ok else 1


# -- argument parsing --------------------------------------------------------

def _add_sampling(p):
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--max-stem", type=int, default=6)
    p.add_argument("--max-period", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphabet", help="comma-separated propositions to sample letters from")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ltldom", description="Temporal domination logic and k-counting automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a formula on a lasso word")
    p.add_argument("--formula", required=True)
    p.add_argument("--word", required=True, help="lasso such as '{p}{};{q}'")
    p.add_argument("--position", type=int, default=0)
    p.add_argument("--explain", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("accept", help="run an automaton on a lasso of symbols")
    p.add_argument("--automaton", required=True, help=f"JSON file or {BUILTIN_LOMEGA}")
    p.add_argument("--word", required=True, help="symbol lasso such as 'b;ab'")
    p.set_defaults(func=cmd_accept)

    p = sub.add_parser("complement", help="write the complement automaton")
    p.add_argument("--automaton", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("product", help="write the AND/OR product automaton")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--mode", choices=("and", "or"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("check", help="sampled counterexample search")
    checks = p.add_subparsers(dest="check", required=True)
    c = checks.add_parser("equiv")
    c.add_argument("--f", required=True)
    c.add_argument("--g", required=True)
    _add_sampling(c)
    c = checks.add_parser("unsat")
    c.add_argument("--f", required=True)
    _add_sampling(c)
    c = checks.add_parser("agree")
    c.add_argument("--f", required=True)
    c.add_argument("--automaton", required=True)
    c.add_argument("--map", help="file of 'LETTER -> SYMBOL' lines")
    _add_sampling(c)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("builtin", help="write a built-in automaton")
    p.add_argument("name", choices=("lomega",))
    p.add_argument("--out", required=True, help="file name, or '-' for stdout")
    p.set_defaults(func=cmd_builtin)

    p = sub.add_parser("demo", help="separation demo and the domination lemmas")
    _add_sampling(p)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
