from functools import lru_cache
from itertools import count
from typing import Callable, Iterator, NamedTuple, Optional, Tuple

import tenacity
from loguru import logger
from pydantic import BaseModel, ConfigDict

from synthcomp.encodings import decode_bool, decode_option, pair, unpair
from synthcomp.errors import DivergenceAtFuel
from synthcomp.model import Evidence, FuelEscalation
from synthcomp.murec import Code, StepEvaluator, Term, encode, run, step_eval
from synthcomp.partiality import PartialValue, bind, mu, ret, seval
from synthcomp.synthetic import Enumerator, Reduction, SemiDecider

UniversalEnumerator = Callable[[int, int], Optional[int]]
BoolFamily = Callable[[int, int], PartialValue[bool]]
Diagonal = Callable[[int], PartialValue[bool]]


class PartialFamily(BaseModel):
    """A family of partial functions on the naturals indexed by codes.

    Attributes:
        e: ``e(c, x)`` is the partial value of function `c` on input `x`.

    """

    model_config = ConfigDict(frozen=True)

    e: Callable[[int, int], PartialValue[int]]

    def __call__(self, c: int, x: int) -> PartialValue[int]:
        """Computation of member `c` on input `x`."""
        return self.e(c, x)


def _cached(
    e: Callable[[int, int], PartialValue[int]]
) -> Callable[[int, int], PartialValue[int]]:
    # One partial value per (code, input), so search progress survives re-queries.
    return lru_cache(maxsize=1 << 16)(e)


def phi_from_T(T: StepEvaluator) -> UniversalEnumerator:
    """Enumerator family read off a step-indexed evaluator.

    ``φ(c, pair(n, m))`` is the option decoded from ``T(c, n, m)``; a silent run and a
    run returning 0 both give None.

    Args:
        T: monotone step-indexed evaluator.

    Returns:
        total function ``(code, index) -> Optional[int]``.

    """

    def phi(c: int, k: int) -> Optional[int]:
        n, m = unpair(k)
        value = T(c, n, m)
        return None if value is None else decode_option(value)

    return phi


PHI: UniversalEnumerator = phi_from_T(step_eval)


def quote_option_fn(t: Term) -> Code:
    """Code whose φ-enumeration has the range of `t`, read through option coding."""
    return encode(t)


def W(phi: UniversalEnumerator, c: int) -> SemiDecider[int]:
    """Predicate enumerated by ``φ c``: fires on `x` at index `m` iff φ emits `x`."""
    return lambda x, m: phi(c, m) == x


def pairs_enumerator(phi: UniversalEnumerator) -> Enumerator[Tuple[int, int]]:
    """Enumerate all pairs ``(c, x)`` with `x` in ``𝒲 c``.

    Index ``pair(n, m)`` emits ``(n, k)`` when ``φ(n, m) == Some k``.
    """

    def enumerate_at(k: int) -> Optional[Tuple[int, int]]:
        n, m = unpair(k)
        value = phi(n, m)
        return None if value is None else (n, value)

    return enumerate_at


def W_enumerator(phi: UniversalEnumerator, c: int) -> Enumerator[int]:
    """Enumerator of ``𝒲 c``, filtering `pairs_enumerator` on the first component."""
    pairs = pairs_enumerator(phi)

    def enumerate_at(k: int) -> Optional[int]:
        emitted = pairs(k)
        if emitted is None or emitted[0] != c:
            return None
        return emitted[1]

    return enumerate_at


def e_from_phi(phi: UniversalEnumerator) -> PartialFamily:
    """Partial functions from an enumerator of their graphs.

    ``e(c, x)`` searches the least `n` such that ``φ(c, n)`` emits some ``pair(x, y)``
    and converges to `y`. With fuel `k` the candidates ``0 .. k-1`` are examined.

    Args:
        phi: enumerator family, each ``φ c`` read as a graph of pairs.

    Returns:
        new partial family.

    """

    def e(c: int, x: int) -> PartialValue[int]:
        def emits_x(n: int) -> bool:
            value = phi(c, n)
            return value is not None and unpair(value)[0] == x

        def output(n: int) -> PartialValue[int]:
            value = phi(c, n)
            assert value is not None
            return ret(unpair(value)[1])

        return bind(mu(emits_x), output)

    return PartialFamily(e=_cached(e))


def phi_from_e(e: PartialFamily) -> UniversalEnumerator:
    """Range enumerator of a family: ``φ(c, pair(n, m)) = seval(e c n, m)``."""

    def phi(c: int, k: int) -> Optional[int]:
        n, m = unpair(k)
        return seval(e(c, n), m)

    return phi


def graph_phi_from_e(e: PartialFamily) -> UniversalEnumerator:
    """Enumerator of the graphs of a partial family.

    ``φ(c, pair(n, m))`` is ``pair(n, y)`` when ``e c n`` converges to `y` with fuel
    `m`. Feeding this to `e_from_phi` gives back a family equivalent to `e`.

    Args:
        e: partial family.

    Returns:
        graph enumerator family.

    """

    def phi(c: int, k: int) -> Optional[int]:
        n, m = unpair(k)
        value = seval(e(c, n), m)
        return None if value is None else pair(n, value)

    return phi


def T_from_e(e: PartialFamily) -> StepEvaluator:
    """Step-indexed evaluator of a partial family: ``T(c, x, n) = seval(e c x, n)``."""
    return lambda c, x, n: seval(e(c, x), n)


def e_bool(e: PartialFamily) -> BoolFamily:
    """Boolean family: outputs are read with 0 as False and anything else as True."""

    def eb(c: int, x: int) -> PartialValue[bool]:
        return bind(e(c, x), lambda v: ret(decode_bool(v)))

    return eb


def diag(eb: BoolFamily) -> Diagonal:
    """Boolean diagonal ``d n = not (eb n n)``, diverging where ``eb n n`` does."""

    def d(n: int) -> PartialValue[bool]:
        return bind(eb(n, n), lambda b: ret(not b))

    return d


def diagonal_disagreement(
    eb: BoolFamily, c: int, fuel: int
) -> Optional[Tuple[bool, bool]]:
    """Observe the diagonal disagreeing with program `c` at its own index.

    Args:
        eb: boolean family.
        c: code of a total boolean program.
        fuel: step budget.

    Returns:
        ``(d c, eb c c)`` when both converge within `fuel`, else None.

    """
    d_value = seval(diag(eb)(c), fuel)
    own_value = seval(eb(c, c), fuel)
    if d_value is None or own_value is None:
        return None
    return d_value, own_value


def machine_family() -> PartialFamily:
    """The partial family induced directly by T: ``e(c, x) = run(c, x)``."""
    return PartialFamily(e=_cached(run))


def totalize(c: int) -> Callable[[int], PartialValue[int]]:
    """Function computed by a code claimed total; divergence stays non-convergence."""
    return lambda x: run(c, x)


def k0_semidecider(phi: UniversalEnumerator) -> SemiDecider[int]:
    """Semi-decider of K₀, the codes `n` with ``n ∈ 𝒲 n``."""
    return lambda n, m: phi(n, m) == n


def k0_enumerator(phi: UniversalEnumerator) -> Enumerator[int]:
    """Enumerator of K₀, keeping the pairs ``(n, n)`` of `pairs_enumerator`."""
    pairs = pairs_enumerator(phi)

    def enumerate_at(k: int) -> Optional[int]:
        emitted = pairs(k)
        if emitted is None or emitted[0] != emitted[1]:
            return None
        return emitted[0]

    return enumerate_at


def k0_to_K(phi: UniversalEnumerator) -> Reduction[int, Callable[[int], bool]]:
    """Reduction of K₀ to K: `n` maps to the test firing on its witnesses."""
    return lambda n: lambda m: phi(n, m) == n


def k0_complement_refuter(
    c: int, fuel: int, phi: Optional[UniversalEnumerator] = None
) -> Optional[Evidence]:
    """Finite evidence that ``𝒲 c`` is not the complement of K₀.

    Args:
        c: any code.
        fuel: highest φ index examined.
        phi: enumerator family, the one read off T by default.

    Returns:
        evidence naming the index where ``φ c`` emits `c`, or None when nothing is
        observed in budget. None is inconclusive.

    """
    phi = PHI if phi is None else phi
    for m in range(fuel + 1):
        if phi(c, m) == c:
            return Evidence(
                code=c,
                witness=m,
                conclusion=(
                    f"{c} is enumerated by W {c} and lies in K0, "
                    f"so W {c} is not the complement of K0"
                ),
            )
    logger.debug(f"No self-emission of {c} up to index {fuel}")
    return None


class KReductions(NamedTuple):
    """The reductions between K and K_ℕ."""

    K_to_Knat: Reduction[Callable[[int], bool], Callable[[int], int]]
    Knat_to_K: Reduction[Callable[[int], int], Callable[[int], bool]]


def K_reductions() -> KReductions:
    """``K f`` iff `f` is true somewhere; ``K_ℕ f`` iff `f` is nonzero somewhere."""

    def K_to_Knat(f: Callable[[int], bool]) -> Callable[[int], int]:
        return lambda n: 1 if f(n) else 0

    def Knat_to_K(f: Callable[[int], int]) -> Callable[[int], bool]:
        return lambda n: f(n) != 0

    return KReductions(K_to_Knat=K_to_Knat, Knat_to_K=Knat_to_K)


def K_holds_upto(f: Callable[[int], bool], budget: int) -> bool:
    """Bounded K: `f` is true at some argument up to `budget`."""
    return any(f(n) for n in range(budget + 1))


def Knat_holds_upto(f: Callable[[int], int], budget: int) -> bool:
    """Bounded K_ℕ: `f` is nonzero at some argument up to `budget`."""
    return any(f(n) != 0 for n in range(budget + 1))


@tenacity.retry
def _evaluate_once(c: int, x: int, fuels: Iterator[int]) -> Tuple[int, int]:
    fuel = next(fuels)
    value = step_eval(c, x, fuel)
    if value is None:
        raise DivergenceAtFuel(f"Code {c} on {x} is silent at fuel {fuel}")
    return value, fuel


def evaluate_escalating(
    c: int, x: int, escalation: Optional[FuelEscalation] = None
) -> Tuple[int, int]:
    """Run a code with geometrically growing fuel.

    Args:
        c: program code.
        x: input.
        escalation: attempts and fuel schedule.

    Returns:
        ``(value, fuel of the converging attempt)``.

    Raises:
        DivergenceAtFuel: when the last attempt is still silent.

    """
    escalation = escalation or FuelEscalation()
    logger.debug(f"Escalating evaluation of {c} on {x}...")
    fuels = (escalation.fuel_for(attempt) for attempt in count(1))
    new_callable = _evaluate_once.retry_with(  # type: ignore[attr-defined]
        **escalation.retrying_config
    )
    result: Tuple[int, int] = new_callable(c, x, fuels)
    logger.debug(f"Escalating evaluation finished at fuel {result[1]}")
    return result
