"""First-order logic over permutations: syntax, semantics, transformations, EF games."""

from .ef import EF_BUDGET, EFBudgetError, EFType, atomic_diagram, duplicator_wins, ef_equivalent, ef_type
from .evaluate import UnboundVariableError, evaluate, evaluate_batch, evaluate_table, witnesses
from .formula import (
    EQ, LT1, LT2, R, And, Atom, Exists, ForAll, Formula, Fresh, Iff, Implies, Not, Or,
    Signature, all_variables, check_signature, conj, depth, disj, exists, forall,
    free_variables, le1, node_count, signature_of,
)
from .parser import FormulaSyntaxError, parse, render
from .transform import relativize, relativize_to_witness, rename_free, reverse_formula, succ_formula

__all__ = [
    "EF_BUDGET", "EFBudgetError", "EFType", "atomic_diagram", "duplicator_wins", "ef_equivalent",
    "ef_type", "UnboundVariableError", "evaluate", "evaluate_batch", "evaluate_table", "witnesses",
    "EQ", "LT1", "LT2", "R", "And", "Atom", "Exists", "ForAll", "Formula", "Fresh", "Iff",
    "Implies", "Not", "Or", "Signature", "all_variables", "check_signature", "conj", "depth",
    "disj", "exists", "forall", "free_variables", "le1", "node_count", "signature_of",
    "FormulaSyntaxError", "parse", "render", "relativize", "relativize_to_witness",
    "rename_free", "reverse_formula", "succ_formula",
]
