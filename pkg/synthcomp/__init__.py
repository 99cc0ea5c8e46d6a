from synthcomp.__metadata__ import (
    __author__,
    __description__,
    __license__,
    __title__,
    __url__,
    __version__,
)
from synthcomp.baire_cantor import F_apply, G_apply, LeafEnumeration
from synthcomp.errors import (
    BudgetExhausted,
    DisjointnessViolation,
    DivergenceAtFuel,
    GuardViolation,
    InputDivergence,
    NotALeaf,
    NotANode,
    NotBounded,
    ParseError,
    PropertyViolation,
)
from synthcomp.kleene import KleeneTree, kleene_tree
from synthcomp.model import (
    CommandOutput,
    Config,
    Domain,
    Evidence,
    FuelEscalation,
    Point,
    Report,
    SuiteResult,
)
from synthcomp.murec import (
    Code,
    Term,
    decode,
    encode,
    eval_ref,
    parse,
    print_term,
    quote,
    run,
    step_eval,
)
from synthcomp.partiality import (
    PartialValue,
    bind,
    equivalent_upto,
    has_value,
    least_fuel,
    mu,
    mu_nat,
    ret,
    seval,
    terminates,
    undef,
)
from synthcomp.trees import DecTree, check_tree_axioms, tree_from_modulus
from synthcomp.universal import (
    PartialFamily,
    diag,
    e_bool,
    e_from_phi,
    evaluate_escalating,
    machine_family,
    phi_from_T,
)

__all__ = [
    "__author__",
    "__description__",
    "__license__",
    "__title__",
    "__url__",
    "__version__",
    "BudgetExhausted",
    "DisjointnessViolation",
    "DivergenceAtFuel",
    "GuardViolation",
    "InputDivergence",
    "NotALeaf",
    "NotANode",
    "NotBounded",
    "ParseError",
    "PropertyViolation",
    "CommandOutput",
    "Config",
    "Domain",
    "Evidence",
    "FuelEscalation",
    "Point",
    "Report",
    "SuiteResult",
    "PartialValue",
    "bind",
    "equivalent_upto",
    "has_value",
    "least_fuel",
    "mu",
    "mu_nat",
    "ret",
    "seval",
    "terminates",
    "undef",
    "Code",
    "Term",
    "decode",
    "encode",
    "eval_ref",
    "parse",
    "print_term",
    "quote",
    "run",
    "step_eval",
    "PartialFamily",
    "diag",
    "e_bool",
    "e_from_phi",
    "evaluate_escalating",
    "machine_family",
    "phi_from_T",
    "DecTree",
    "check_tree_axioms",
    "tree_from_modulus",
    "KleeneTree",
    "kleene_tree",
    "F_apply",
    "G_apply",
    "LeafEnumeration",
]
