"""Past-time linear temporal logic with knowledge operators.

Model checking over finite and lasso traces, a decision procedure for the
Since fragment, multi-agent voting and conflict-resolution knowledge, and
projective unification with rule admissibility.
"""
from .decision import Witness, counterexample, equivalent, satisfiable, valid_in_logic
from .errors import (
    FormatError, FutureOperatorPresent, KAllPresent, NestedKAll, NotAUnifier,
    ParseError, ResourceLimit, TempKnowError,
)
from .formula import (
    BOT, TOP, And, Atom, BoxPast, Bottom, DiamondPast, Formula, Iff, Implies, K1, K2,
    KAll, KParam, Next, Not, Or, Since, SinceStrict, Top, Until, apply_substitution,
    desugar, letters, subformula_closure,
)
from .models import LassoTrace, MultiAgentModel, Trace
from .parser import Rule, load_model, parse_formula, parse_rule, pretty_print
from .semantics import TruthTable, eval_brute, eval_conflict_K, eval_kall, eval_lasso, eval_past, vote
from .unification import (
    NotUnifiable, Projective, UnknownProjective, check_admissible, check_most_general,
    ground_unifiers, is_admissible, is_unifiable, loewenheim_candidate, projective_unifier,
    verify_projective,
)

__version__ = "0.1.0"
