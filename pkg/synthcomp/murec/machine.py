from threading import Lock
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from synthcomp.murec.terms import (
    Code,
    Comp,
    PrimRec,
    Proj,
    Succ,
    Term,
    Zero,
    decode,
    encode,
)
from synthcomp.partiality import PartialValue

# Every evaluation node costs one step and a minimisation one more per candidate.
StepEvaluator = Callable[[int, int, int], Optional[int]]


class _OutOfFuel(Exception):
    pass


def _arg(args: Sequence[int], i: int) -> int:
    return args[i] if i < len(args) else 0


def eval_ref(
    t: Term, args: Sequence[int], max_steps: int
) -> Optional[Tuple[int, int]]:
    """Reference big-step evaluation with Kleene semantics.

    Args:
        t: program.
        args: argument vector; missing arguments read as 0.
        max_steps: step budget.

    Returns:
        ``(value, steps used)`` when the run finishes within `max_steps`, else None.

    """
    used = 0

    def tick() -> None:
        nonlocal used
        used += 1
        if used > max_steps:
            raise _OutOfFuel

    def ev(t: Term, args: Sequence[int]) -> int:
        tick()
        if isinstance(t, Zero):
            return 0
        if isinstance(t, Succ):
            return _arg(args, 0) + 1
        if isinstance(t, Proj):
            return _arg(args, t.i)
        if isinstance(t, Comp):
            return ev(t.f, [ev(g, args) for g in t.gs])
        if isinstance(t, PrimRec):
            n, rest = _arg(args, 0), list(args[1:])
            acc = ev(t.f, rest)
            for i in range(n):
                acc = ev(t.g, [i, acc, *rest])
            return acc
        y = 0
        while True:
            tick()
            if ev(t.f, [y, *args]) == 0:
                return y
            y += 1

    try:
        value = ev(t, args)
    except _OutOfFuel:
        return None
    return value, used


class _CompFrame(NamedTuple):
    f: Term
    gs: Tuple[Term, ...]
    args: Sequence[int]
    done: Tuple[int, ...]


class _RecFrame(NamedTuple):
    g: Term
    n: int
    rest: List[int]
    i: int


class _MuFrame(NamedTuple):
    f: Term
    args: Sequence[int]
    y: int


def run_machine(
    t: Term, args: Sequence[int], max_steps: int
) -> Optional[Tuple[int, int]]:
    """Small-step evaluation on an explicit continuation stack.

    Args:
        t: program.
        args: argument vector; missing arguments read as 0.
        max_steps: step budget.

    Returns:
        ``(value, steps used)`` when the run finishes within `max_steps`, else None.

    """
    stack: List[Union[_CompFrame, _RecFrame, _MuFrame]] = []
    used = 0
    # Entering `node` on `node_args` when node is set, returning `value` otherwise.
    node: Optional[Term] = t
    node_args: Sequence[int] = list(args)
    value = 0
    while True:
        if node is not None:
            used += 1
            if used > max_steps:
                return None
            current, node = node, None
            if isinstance(current, Zero):
                value = 0
            elif isinstance(current, Succ):
                value = _arg(node_args, 0) + 1
            elif isinstance(current, Proj):
                value = _arg(node_args, current.i)
            elif isinstance(current, Comp):
                if current.gs:
                    stack.append(_CompFrame(current.f, current.gs, node_args, ()))
                    node = current.gs[0]
                else:
                    node, node_args = current.f, []
            elif isinstance(current, PrimRec):
                rest = list(node_args[1:])
                stack.append(_RecFrame(current.g, _arg(node_args, 0), rest, 0))
                node, node_args = current.f, rest
            else:
                used += 1
                if used > max_steps:
                    return None
                stack.append(_MuFrame(current.f, node_args, 0))
                node, node_args = current.f, [0, *node_args]
            continue
        if not stack:
            return value, used
        frame = stack.pop()
        if isinstance(frame, _CompFrame):
            done = (*frame.done, value)
            if len(done) < len(frame.gs):
                stack.append(frame._replace(done=done))
                node, node_args = frame.gs[len(done)], frame.args
            else:
                node, node_args = frame.f, list(done)
        elif isinstance(frame, _RecFrame):
            if frame.i < frame.n:
                stack.append(frame._replace(i=frame.i + 1))
                node, node_args = frame.g, [frame.i, value, *frame.rest]
        elif value == 0:
            value = frame.y
        else:
            used += 1
            if used > max_steps:
                return None
            stack.append(frame._replace(y=frame.y + 1))
            node, node_args = frame.f, [frame.y + 1, *frame.args]


class _RunCache:
    """Per (code, input): exact cost of finished runs, largest fuel seen silent."""

    def __init__(self, max_entries: int = 200_000):
        self._lock = Lock()
        self._finished: Dict[Tuple[int, int], Tuple[int, int]] = {}
        self._silent: Dict[Tuple[int, int], int] = {}
        self._max_entries = max_entries

    def lookup(self, key: Tuple[int, int], fuel: int) -> Tuple[bool, Optional[int]]:
        with self._lock:
            if key in self._finished:
                value, cost = self._finished[key]
                return True, value if cost <= fuel else None
            if self._silent.get(key, -1) >= fuel:
                return True, None
            return False, None

    def silent_upto(self, key: Tuple[int, int]) -> int:
        with self._lock:
            return self._silent.get(key, 0)

    def store(
        self, key: Tuple[int, int], fuel: int, result: Optional[Tuple[int, int]]
    ) -> None:
        with self._lock:
            if len(self._finished) + len(self._silent) > self._max_entries:
                self._finished.clear()
                self._silent.clear()
            if result is None:
                self._silent[key] = max(fuel, self._silent.get(key, -1))
            else:
                self._finished[key] = result


_CACHE = _RunCache()


def step_eval(c: int, x: int, n: int) -> Optional[int]:
    """The universal step-indexed evaluator T.

    Args:
        c: program code, any natural number.
        x: input; the program sees the argument vector ``[x]`` padded with zeros.
        n: fuel.

    Returns:
        the output if the program finishes within `n` steps, else None.

    """
    key = (c, x)
    known, value = _CACHE.lookup(key, n)
    if known:
        return value
    # A silent run is retried with at least twice the fuel seen so far, so growing
    # fuels cost amortized linear work.
    fuel = max(n, 2 * _CACHE.silent_upto(key))
    result = run_machine(decode(c), [x], fuel)
    _CACHE.store(key, fuel, result)
    if result is None or result[1] > n:
        return None
    return result[0]


def quote(t: Term) -> Code:
    """A code computing the function denoted by `t`; the same number as `encode`."""
    return encode(t)


def run(c: int, x: int) -> PartialValue[int]:
    """Lift T into a partial value: ``run(c, x).steps(n) == step_eval(c, x, n)``."""
    return PartialValue(lambda n: step_eval(c, x, n), label=f"run {c} on {x}")


def denote(t: Term, fuel: int) -> Callable[[int], Optional[int]]:
    """Host function for a term, silent (None) where `fuel` does not suffice."""
    c = encode(t)
    return lambda x: step_eval(c, x, fuel)
