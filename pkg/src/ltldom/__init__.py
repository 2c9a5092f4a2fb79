"""Temporal domination logic (LTL with ``<<``) on lasso words, and k-counting automata."""
from .formula import Formula, parse, render, subformulas, atoms
from .lasso import LassoWord, parse_lasso, render_lasso, parse_symbol_lasso, suffix, random_lasso
from .semantics import holds, label, loop_drift, count_satisfying, oracle_holds
from .counting import (CountingAutomaton, MullerAutomaton, accepts, analyze_run, complement,
                       product, l_omega_automaton, muller_to_counting, prefix_count_oracle,
                       validate)
from .bridge import SampleSpec, check_equivalent, check_unsatisfiable, check_agreement, separation_demo

__version__ = "0.1.0"
