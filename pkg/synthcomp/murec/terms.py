from functools import lru_cache
from typing import Literal, NewType, Tuple, Union

from pydantic import BaseModel, ConfigDict

from synthcomp.encodings import decode_nat_list, encode_nat_list, pair, unpair

Code = NewType("Code", int)


class _Node(BaseModel):
    model_config = ConfigDict(frozen=True)


class Zero(_Node):
    """Constant zero of the given arity."""

    kind: Literal["zero"] = "zero"
    k: int = 0


class Succ(_Node):
    """Successor of the first argument."""

    kind: Literal["succ"] = "succ"


class Proj(_Node):
    """Projection on argument `i` out of `k`; out of range reads 0."""

    kind: Literal["proj"] = "proj"
    i: int
    k: int


class Comp(_Node):
    """Composition `f(g1(x), ..., gn(x))`."""

    kind: Literal["comp"] = "comp"
    f: "Term"
    gs: Tuple["Term", ...] = ()


class PrimRec(_Node):
    """Primitive recursion on the first argument.

    ``h(0, x) = f(x)`` and ``h(n+1, x) = g(n, h(n, x), x)``.
    """

    kind: Literal["primrec"] = "primrec"
    f: "Term"
    g: "Term"


class Mu(_Node):
    """Least `y` with `f(y, x) = 0`, all earlier candidates converging."""

    kind: Literal["mu"] = "mu"
    f: "Term"


Term = Union[Zero, Succ, Proj, Comp, PrimRec, Mu]

Comp.model_rebuild()
PrimRec.model_rebuild()
Mu.model_rebuild()

ZERO_TAG, SUCC_TAG, PROJ_TAG, COMP_TAG, PRIMREC_TAG, MU_TAG = range(6)


def encode(t: Term) -> Code:
    """Gödel number of a term.

    Args:
        t: program syntax.

    Returns:
        code with ``decode(encode(t)) == t``.

    """
    if isinstance(t, Zero):
        return Code(pair(ZERO_TAG, t.k))
    if isinstance(t, Succ):
        return Code(pair(SUCC_TAG, 0))
    if isinstance(t, Proj):
        return Code(pair(PROJ_TAG, pair(t.i, t.k)))
    if isinstance(t, Comp):
        gs = encode_nat_list([encode(g) for g in t.gs])
        return Code(pair(COMP_TAG, pair(encode(t.f), gs)))
    if isinstance(t, PrimRec):
        return Code(pair(PRIMREC_TAG, pair(encode(t.f), encode(t.g))))
    return Code(pair(MU_TAG, encode(t.f)))


@lru_cache(maxsize=8192)
def decode(c: int) -> Term:
    """Program denoted by a code.

    Every sub-code read from a payload is strictly smaller than `c`, so decoding
    terminates on every natural number.

    Args:
        c: any natural number.

    Returns:
        the term with code `c`; for codes produced by `encode` this inverts it.

    """
    first, payload = unpair(c)
    tag = first % 6
    if tag == ZERO_TAG:
        return Zero(k=payload)
    if tag == SUCC_TAG:
        return Succ()
    if tag == PROJ_TAG:
        i, k = unpair(payload)
        return Proj(i=i, k=k)
    if tag == COMP_TAG:
        f, gs = unpair(payload)
        return Comp(f=decode(f), gs=tuple(decode(g) for g in decode_nat_list(gs)))
    if tag == PRIMREC_TAG:
        f, g = unpair(payload)
        return PrimRec(f=decode(f), g=decode(g))
    return Mu(f=decode(payload))


def size(t: Term) -> int:
    """Number of nodes of a term."""
    if isinstance(t, Comp):
        return 1 + size(t.f) + sum(size(g) for g in t.gs)
    if isinstance(t, PrimRec):
        return 1 + size(t.f) + size(t.g)
    if isinstance(t, Mu):
        return 1 + size(t.f)
    return 1
