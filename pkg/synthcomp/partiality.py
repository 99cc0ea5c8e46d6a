from threading import RLock
from typing import Callable, Generic, Optional, Tuple, TypeVar

from loguru import logger

from synthcomp.errors import GuardViolation

A = TypeVar("A")
B = TypeVar("B")


class PartialValue(Generic[A]):
    """A computation observed through step-indexed evaluation.

    The wrapped function must be monotone in fuel and produce at most one value.
    Observations are memoized: the least fuel seen converging and the largest fuel
    seen silent. Both caches are sound because of monotonicity.

    Attributes:
        label: human readable description, used in logs and reprs.

    """

    __slots__ = ("_steps", "_lock", "_value", "_value_fuel", "_silent_upto", "label")

    def __init__(self, steps: Callable[[int], Optional[A]], label: str = "partial"):
        self._steps = steps
        self._lock = RLock()
        self._value: Optional[A] = None
        self._value_fuel: Optional[int] = None
        self._silent_upto = -1
        self.label = label

    def steps(self, fuel: int) -> Optional[A]:
        """Evaluate with the given fuel.

        Args:
            fuel: step index.

        Returns:
            the value if the computation converges within ``fuel``, else None.

        """
        with self._lock:
            if self._value_fuel is not None and fuel >= self._value_fuel:
                return self._value
            if fuel <= self._silent_upto:
                return None
            value = self._steps(fuel)
            if value is None:
                self._silent_upto = fuel
            else:
                self._value, self._value_fuel = value, fuel
            return value

    def __repr__(self) -> str:
        """Label of the computation."""
        return f"PartialValue({self.label})"


def ret(a: A) -> PartialValue[A]:
    """Monadic return: converges to ``a`` at every fuel."""
    return PartialValue(lambda _: a, label=f"ret {a!r}")


def undef() -> PartialValue[A]:
    """The value that never converges."""
    return PartialValue(lambda _: None, label="undef")


def bind(x: PartialValue[A], f: Callable[[A], PartialValue[B]]) -> PartialValue[B]:
    """Monadic bind.

    With fuel ``n`` the first computation runs at fuel ``n`` and, on convergence, the
    continuation runs at the same fuel ``n``.

    Args:
        x: first computation.
        f: continuation producing the second computation.

    Returns:
        a partial value converging to ``b`` iff ``x`` converges to some ``a`` and
        ``f(a)`` converges to ``b``.

    """
    continuation: Optional[PartialValue[B]] = None

    def steps(fuel: int) -> Optional[B]:
        nonlocal continuation
        a = x.steps(fuel)
        if a is None:
            return None
        if continuation is None:
            continuation = f(a)
        return continuation.steps(fuel)

    return PartialValue(steps, label=f"bind({x.label})")


def mu(f: Callable[[int], bool]) -> PartialValue[int]:
    """Unbounded search for the least ``n`` with ``f(n)``.

    With fuel ``k`` the candidates ``0 .. k-1`` are tested. Scan progress is kept
    between observations so growing fuels never rescan.

    Args:
        f: total boolean predicate on the naturals.

    Returns:
        a partial value converging to the least witness, if any.

    """
    scanned = 0
    found: Optional[int] = None

    def steps(fuel: int) -> Optional[int]:
        nonlocal scanned, found
        if found is not None:
            return found if found < fuel else None
        while scanned < fuel:
            if f(scanned):
                found = scanned
                return found
            scanned += 1
        return None

    return PartialValue(steps, label="mu")


def seval(x: PartialValue[A], n: int) -> Optional[A]:
    """Step-indexed evaluation of ``x`` with fuel ``n``."""
    return x.steps(n)


def has_value(x: PartialValue[A], a: A, fuel: int) -> bool:
    """Bounded definedness: ``x`` converges to ``a`` within ``fuel``."""
    value = x.steps(fuel)
    return value is not None and value == a


def terminates(x: PartialValue[A], fuel: int) -> bool:
    """Bounded termination: ``x`` converges to something within ``fuel``."""
    return x.steps(fuel) is not None


def least_fuel(x: PartialValue[A], fuel: int) -> Optional[Tuple[int, A]]:
    """Least fuel at which ``x`` converges, searched by bisection below ``fuel``.

    Args:
        x: partial value.
        fuel: upper bound of the search.

    Returns:
        ``(least fuel, value)`` or None when ``x`` is silent at ``fuel``.

    """
    value = x.steps(fuel)
    if value is None:
        return None
    low, high = 0, fuel
    while low < high:
        middle = (low + high) // 2
        if x.steps(middle) is None:
            low = middle + 1
        else:
            high = middle
    return low, value


def equivalent_upto(x: PartialValue[A], y: PartialValue[A], fuel: int) -> bool:
    """Bounded equivalence: at ``fuel`` both are silent or both converge equally."""
    return x.steps(fuel) == y.steps(fuel)


def mu_nat(f: Callable[[int], bool], search_bound: int) -> int:
    """Guarded minimisation.

    The caller's evidence that a witness exists becomes an explicit bound.

    Args:
        f: total boolean predicate on the naturals.
        search_bound: a witness is promised at or below this number.

    Returns:
        the least ``n`` with ``f(n)``.

    Raises:
        GuardViolation: when no witness exists up to ``search_bound``.

    """
    for n in range(search_bound + 1):
        if f(n):
            return n
    logger.debug(f"mu_nat found no witness up to {search_bound}")
    raise GuardViolation(f"No witness up to {search_bound}")
