"""The Kleene tree: infinite, yet no computable path stays inside it."""
from functools import lru_cache
from typing import List, Optional, Sequence

from loguru import logger
from pydantic import BaseModel, ConfigDict

from synthcomp.encodings import decode_bool
from synthcomp.errors import BudgetExhausted, InputDivergence
from synthcomp.murec import step_eval
from synthcomp.partiality import PartialValue, seval
from synthcomp.trees import Bits, DecTree
from synthcomp.universal import Diagonal, diag, e_bool, machine_family


class KleeneTree(BaseModel):
    """A Kleene tree together with the diagonal it was built from.

    Attributes:
        tree: the decidable tree.
        d: boolean diagonal.

    """

    model_config = ConfigDict(frozen=True)

    tree: DecTree
    d: Diagonal

    def member(self, u: Sequence[bool]) -> bool:
        """Membership in the underlying tree."""
        return self.tree.member(tuple(u))


@lru_cache(maxsize=None)
def machine_diagonal() -> Diagonal:
    """Memoized boolean diagonal over the machine family."""
    d = diag(e_bool(machine_family()))

    @lru_cache(maxsize=1 << 16)
    def memo(n: int) -> PartialValue[bool]:
        return d(n)

    return memo


@lru_cache(maxsize=64)
def kleene_tree(d: Optional[Diagonal] = None) -> KleeneTree:
    """Build the Kleene tree of a boolean diagonal, once per diagonal.

    The fuel used for membership is the length of the list, so membership is a pure
    function of the list and `d`.

    Args:
        d: boolean diagonal, by default the one over the machine family.

    Returns:
        new Kleene tree.

    """
    diagonal = machine_diagonal() if d is None else d

    def member(u: Bits) -> bool:
        fuel = len(u)
        for n, b in enumerate(u):
            x = seval(diagonal(n), fuel)
            if x is not None and x != b:
                return False
        return True

    return KleeneTree(tree=DecTree(member=member, label="kleene"), d=diagonal)


def deep_member(kt: KleeneTree, k: int) -> Bits:
    """A member of length `k`: the diagonal's values at fuel `k`, False where silent."""
    values = (seval(kt.d(n), k) for n in range(k))
    return tuple(bool(x) for x in values)


def refute_path(kt: KleeneTree, c: int, budget: int, fuel: int = 10_000) -> int:
    """Depth at which the path of a computable boolean function leaves the tree.

    The path is ``f i``, the boolean output of code `c` on input `i`, computed as
    the prefix grows.

    Args:
        kt: Kleene tree.
        c: code of a total boolean program.
        budget: deepest prefix examined.
        fuel: step budget for each ``f i``.

    Returns:
        least `m` with ``[f 0, ..., f (m-1)]`` outside the tree.

    Raises:
        InputDivergence: when some ``f i`` is silent at `fuel`.
        BudgetExhausted: when the path stays inside the tree to depth `budget`.

    """
    logger.debug(f"Refuting the path of {c} up to depth {budget}...")
    prefix: List[bool] = []
    for m in range(budget + 1):
        if not kt.member(prefix):
            logger.debug(f"Path of {c} leaves the tree at depth {m}")
            return m
        if m == budget:
            break
        value = step_eval(c, m, fuel)
        if value is None:
            raise InputDivergence(f"Code {c} is silent on {m} at fuel {fuel}", index=m)
        prefix.append(decode_bool(value))
    raise BudgetExhausted(f"Path of {c} stays in the tree to depth {budget}", point=c)


def leaf_check(kt: KleeneTree, u: Sequence[bool]) -> bool:
    """True when `u` is nonempty, its parent is a member and `u` itself is not."""
    return len(u) >= 1 and kt.member(u[:-1]) and not kt.member(u)
