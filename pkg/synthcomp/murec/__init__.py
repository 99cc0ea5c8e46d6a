from synthcomp.murec.machine import (
    StepEvaluator,
    denote,
    eval_ref,
    quote,
    run,
    run_machine,
    step_eval,
)
from synthcomp.murec.syntax import MACROS, expand_macro, parse, print_term
from synthcomp.murec.terms import (
    Code,
    Comp,
    Mu,
    PrimRec,
    Proj,
    Succ,
    Term,
    Zero,
    decode,
    encode,
    size,
)

__all__ = [
    "Code",
    "Comp",
    "MACROS",
    "Mu",
    "PrimRec",
    "Proj",
    "StepEvaluator",
    "Succ",
    "Term",
    "Zero",
    "decode",
    "denote",
    "encode",
    "eval_ref",
    "expand_macro",
    "parse",
    "print_term",
    "quote",
    "run",
    "run_machine",
    "size",
    "step_eval",
]
