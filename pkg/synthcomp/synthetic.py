from typing import (
    Callable,
    Dict,
    Hashable,
    Iterable,
    List,
    Literal,
    Optional,
    Set,
    Tuple,
    TypeVar,
)

from loguru import logger

from synthcomp.encodings import decode_list, encode_list, pair, unpair
from synthcomp.errors import BudgetExhausted, DisjointnessViolation, GuardViolation
from synthcomp.model import Domain
from synthcomp.partiality import mu_nat

X = TypeVar("X")
Y = TypeVar("Y")
K = TypeVar("K", bound=Hashable)
H = TypeVar("H", bound=Hashable)

Decider = Callable[[X], bool]
SemiDecider = Callable[[X, int], bool]
CoSemiDecider = Callable[[X, int], bool]
Enumerator = Callable[[int], Optional[X]]
Reduction = Callable[[X], Y]

NAT = Domain(enum_points=lambda n: n, index=lambda x: x, eq=lambda a, b: a == b)
BOOL_LISTS = Domain(
    enum_points=decode_list,
    index=encode_list,
    eq=lambda a, b: tuple(a) == tuple(b),
)


def compl_dec(d: Decider[X]) -> Decider[X]:
    """Decider of the complement."""
    return lambda x: not d(x)


def combine_dec(
    d1: Decider[X], d2: Decider[X], mode: Literal["and", "or"]
) -> Decider[X]:
    """Decider of the conjunction or disjunction."""
    if mode == "and":
        return lambda x: d1(x) and d2(x)
    return lambda x: d1(x) or d2(x)


def combine_semidec(
    s1: SemiDecider[X], s2: SemiDecider[X], mode: Literal["and", "or"]
) -> SemiDecider[X]:
    """Semi-decider of the conjunction or disjunction.

    The disjunction fires when either side fires at the same fuel. The conjunction
    fires at fuel `n` when both sides have fired at some fuel up to `n`, found by
    rescanning instead of remembering witnesses.

    Args:
        s1: first semi-decider.
        s2: second semi-decider.
        mode: "and" or "or".

    Returns:
        new semi-decider.

    """
    if mode == "or":
        return lambda x, n: s1(x, n) or s2(x, n)

    def both(x: X, n: int) -> bool:
        return any(s1(x, k) for k in range(n + 1)) and any(
            s2(x, k) for k in range(n + 1)
        )

    return both


def dec_to_semidec(d: Decider[X]) -> SemiDecider[X]:
    """A decidable predicate is semi-decidable, ignoring the fuel."""
    return lambda x, _: d(x)


def dec_to_cosemidec(d: Decider[X]) -> CoSemiDecider[X]:
    """A decidable predicate is co-semi-decidable: it holds iff no fuel fires."""
    return lambda x, _: not d(x)


def semidec_to_enum(s: SemiDecider[X], dom: Domain) -> Enumerator[X]:
    """Enumerate a semi-decidable predicate over an enumerable type.

    Index ``pair(i, n)`` emits the `i`-th point of the domain when `s` fires on it
    with fuel `n`.

    Args:
        s: semi-decider.
        dom: domain enumerating the type.

    Returns:
        enumerator whose range is the semi-decided predicate.

    """

    def enumerate_at(k: int) -> Optional[X]:
        i, n = unpair(k)
        x = dom.enum_points(i)
        if x is not None and s(x, n):
            return x  # type: ignore[no-any-return]
        return None

    return enumerate_at


def enum_to_semidec(en: Enumerator[X], dom: Domain) -> SemiDecider[X]:
    """Semi-decide an enumerable predicate over a discrete type.

    Args:
        en: enumerator.
        dom: domain whose equality compares points.

    Returns:
        semi-decider firing at fuel `n` when `en(n)` is the point.

    """

    def fires(x: X, n: int) -> bool:
        y = en(n)
        return y is not None and dom.eq(x, y)

    return fires


def semidec_compl_to_cosemidec(s: SemiDecider[X]) -> CoSemiDecider[X]:
    """The complement of a semi-decidable predicate, read under "no fuel fires"."""
    return s


def red_to_K(s: SemiDecider[X]) -> Reduction[X, Callable[[int], bool]]:
    """Reduction to K, where ``K f`` holds iff ``f`` is true somewhere."""
    return lambda x: lambda n: s(x, n)


def red_from_K(r: Reduction[X, Callable[[int], bool]]) -> SemiDecider[X]:
    """Semi-decider read off a reduction to K."""
    return lambda x, n: r(x)(n)


def red_transport(r: Reduction[X, Y], dq: Decider[Y]) -> Decider[X]:
    """Decide ``p`` from a reduction ``p ⪯ q`` and a decider of ``q``."""
    return lambda x: dq(r(x))


def cantor_diag(table: Callable[[int], Callable[[int], int]]) -> Callable[[int], int]:
    """A function differing from every row of `table` on the diagonal.

    Args:
        table: a sequence of functions on the naturals.

    Returns:
        ``g`` with ``g(n) = table(n)(n) + 1``, so ``g`` is no row of `table`.

    """
    return lambda n: table(n)(n) + 1


def post_decider(
    sp: SemiDecider[X], sn: SemiDecider[X], budget: int
) -> Callable[[X], bool]:
    """Decide a predicate from semi-deciders of it and of its complement.

    Fuels are tried in the interleaved order ``sp 0, sn 0, sp 1, sn 1, ...`` up to
    `budget`.

    Args:
        sp: semi-decider of the predicate.
        sn: semi-decider of the complement.
        budget: highest fuel tried.

    Returns:
        decider raising `BudgetExhausted` when neither side fires in budget and
        `DisjointnessViolation` when both fire at the same fuel.

    """

    def decide(x: X) -> bool:
        for n in range(budget + 1):
            positive = sp(x, n)
            negative = sn(x, n)
            if positive and negative:
                raise DisjointnessViolation(
                    f"Both semi-deciders fire on {x!r} with fuel {n}"
                )
            if positive or negative:
                return positive
        logger.debug(f"post_decider inconclusive on {x!r} up to fuel {budget}")
        raise BudgetExhausted(f"No witness for {x!r} up to fuel {budget}", point=x)

    return decide


def dec_choice(
    relation: Callable[[H, int], bool], xs: Iterable[H], budget: int
) -> Dict[H, int]:
    """Choice for decidable relations into the naturals.

    Args:
        relation: decidable relation.
        xs: points to choose for.
        budget: a witness is promised at or below this number for each point.

    Returns:
        the least witness of every point.

    Raises:
        BudgetExhausted: naming the first point without a witness in budget.

    """
    choice = {}
    for x in xs:
        try:
            choice[x] = mu_nat(lambda n: relation(x, n), budget)
        except GuardViolation as e:
            raise BudgetExhausted(f"No choice for {x!r} up to {budget}", point=x) from e
    return choice


def _dovetail(
    relation: SemiDecider[Tuple[H, int]], x: H, budget: int, choice: Dict[H, int]
) -> bool:
    # Diagonal s lists unpair(k) for k in order: (s, 0), (s - 1, 1), ..., (0, s).
    for s in range(2 * budget + 1):
        for fuel in range(max(0, s - budget), min(s, budget) + 1):
            if relation((x, s - fuel), fuel):
                choice[x] = s - fuel
                return True
    return False


def semidec_choice(
    relation: SemiDecider[Tuple[H, int]], xs: Iterable[H], budget: int
) -> Dict[H, int]:
    """Choice for semi-decidable relations into the naturals.

    Candidates ``(n, fuel)`` are dovetailed in the order ``unpair(0), unpair(1),
    ...``; pairs with a component above `budget` are skipped.

    Args:
        relation: semi-decider of the relation, on ``((x, n), fuel)``.
        xs: points to choose for.
        budget: bound for both the chosen value and the fuel.

    Returns:
        the value of the first firing candidate for every point.

    Raises:
        BudgetExhausted: naming the first point without a firing candidate.

    """
    choice = {}
    for x in xs:
        if not _dovetail(relation, x, budget, choice):
            raise BudgetExhausted(f"No choice for {x!r} up to {budget}", point=x)
    return choice


def enum_choice(
    relation: Enumerator[Tuple[K, X]],
    keys: Iterable[K],
    dom: Domain = NAT,
    budget: int = 10_000,
) -> Dict[K, X]:
    """Choice for enumerable relations out of a discrete type.

    Args:
        relation: enumerator of pairs ``(key, value)``.
        keys: keys to choose for.
        dom: domain of the keys; its equality matches keys.
        budget: highest enumeration index examined.

    Returns:
        for every key, the value emitted at the least index.

    Raises:
        BudgetExhausted: naming the first key never emitted in budget.

    """
    pending: List[K] = list(keys)
    choice: Dict[K, X] = {}
    for k in range(budget + 1):
        if not pending:
            break
        emitted = relation(k)
        if emitted is None:
            continue
        key, value = emitted
        for wanted in [w for w in pending if dom.eq(w, key)]:
            choice[wanted] = value
            pending.remove(wanted)
    if pending:
        raise BudgetExhausted(
            f"No choice for {pending[0]!r} up to {budget}", point=pending[0]
        )
    return choice


def bounded_extension(s: SemiDecider[X], xs: Iterable[X], budget: int) -> Set[X]:
    """Points of `xs` on which `s` fires with some fuel up to `budget`."""
    return {x for x in xs if any(s(x, n) for n in range(budget + 1))}


def bounded_range(en: Enumerator[X], budget: int) -> Set[X]:
    """Values `en` emits at indices up to `budget`."""
    emitted = (en(k) for k in range(budget + 1))
    return {x for x in emitted if x is not None}


def range_equivalent_upto(f: Enumerator[X], g: Enumerator[X], budget: int) -> bool:
    """Bounded range equivalence: both emit the same values up to `budget`."""
    return bounded_range(f, budget) == bounded_range(g, budget)
