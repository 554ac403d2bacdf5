"""Exact symbolic toolkit for the quantum superalgebra U_q[osp(1/2)] and
its dual quantum supergroup OSp_q(1/2)."""

from .scalars import (
    ExactScalar,
    Surd,
    kbracket,
    kfactorial,
    sq_bracket,
    angle_bracket,
    eval_numeric,
    format_scalar,
    parse_scalar,
)

__all__ = [
    "ExactScalar",
    "Surd",
    "kbracket",
    "kfactorial",
    "sq_bracket",
    "angle_bracket",
    "eval_numeric",
    "format_scalar",
    "parse_scalar",
]

__version__ = "0.1.0"
