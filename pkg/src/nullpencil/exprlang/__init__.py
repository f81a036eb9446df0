"""Expression language: parser, evaluator, and dual-number derivatives."""

from .dual import Dual2, real
from .parser import (
    FUNCTIONS,
    VARIABLES,
    BinOp,
    Call,
    Expr,
    Neg,
    Num,
    Var,
    eval_dual,
    eval_expr,
    evaluate,
    free_variables,
    parse,
    render,
)

__all__ = [
    "Dual2",
    "real",
    "FUNCTIONS",
    "VARIABLES",
    "BinOp",
    "Call",
    "Expr",
    "Neg",
    "Num",
    "Var",
    "eval_dual",
    "eval_expr",
    "evaluate",
    "free_variables",
    "parse",
    "render",
]
