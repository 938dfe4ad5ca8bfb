from .terms import App, Const, DefEnv, LIBRARY, Lam, Ref, Term, Var, alpha_eq
from .syntax import format_term, parse_script, parse_term
from .reduce import CycleDetected, FuelExhausted, NormalForm, normalize, whnf_search
from .classify import Evidence, Solvable, Unknown, Unsolvable, classify, is_root_active
from .logic import TruthTable, TruthValue, decode, encode_value, truth_table
from .props import direct_eval, eval_prop, parse_prop
