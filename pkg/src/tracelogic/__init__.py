"""Linear temporal logic over finite and lasso traces, with typed atoms."""

from .errors import (BadLassoStart, BadParameters, EmptyCycle, EmptyTrace, FormatError,
                     IndexOutOfRange, NotFinite, NotInfinite, TermTypeError, TraceLogicError,
                     UnboundVariable, UnsupportedConstruct)
from .formula import (FALSE, TRUE, And, Atom, ConstProp, Finally, Formula, Globally, Iff, Imp,
                      Not, Or, Release, SNext, Until, WNext)
from .parser import ParseError, SourceSpan, parse_formula, parse_term, print_formula, print_term
from .semantics import Evaluator, Verdict, check, sat, sat_at
from .terms import (STRONG, WEAK, BinOp, Binary, Const, Definedness, Shift, Strength, Term,
                    Unary, UnOp, Var, collect_gets, eval_term, term_definedness)
from .trace import (INFINITE, FiniteTrace, LassoTrace, State, Trace, length, shift, state_at,
                    trace_from_states, trace_lasso)
from .traceio import load_trace, parse_trace

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
