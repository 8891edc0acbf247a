"""Symbolic expressions in the coordinates t, x, y, z and named parameters."""
from .calculus import differentiate, substitute
from .evaluate import EvaluationError, compile_expr, evaluate, evaluate_many
from .nodes import (
    COORDINATES,
    FUNCTIONS,
    ONE,
    ZERO,
    Add,
    Const,
    Div,
    Expr,
    Func,
    Mul,
    Neg,
    Param,
    Pow,
    T,
    Var,
    X,
    Y,
    Z,
    as_expr,
    exp,
    ln,
    sqrt,
)
from .parser import ParseError, parse
from .printer import to_text
from .simplify import simplify
from .zerotest import (
    Domain,
    Hyperplane,
    TriState,
    ZeroTestConfig,
    ZeroTestResult,
    is_identically_zero,
    zero_test,
)

__all__ = [
    "COORDINATES", "FUNCTIONS", "ONE", "ZERO", "Add", "Const", "Div", "Domain",
    "EvaluationError", "Expr", "Func", "Hyperplane", "Mul", "Neg", "Param",
    "ParseError", "Pow", "T", "TriState", "Var", "X", "Y", "Z", "ZeroTestConfig",
    "ZeroTestResult", "as_expr", "compile_expr", "differentiate", "evaluate",
    "evaluate_many", "exp", "is_identically_zero", "ln", "parse", "simplify",
    "sqrt", "substitute", "to_text", "zero_test",
]
