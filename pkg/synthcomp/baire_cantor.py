from bisect import bisect_left
from functools import lru_cache
from threading import Lock
from typing import Callable, Iterator, List, Sequence, Tuple

from loguru import logger

from synthcomp.encodings import decode_bool, encode_list
from synthcomp.errors import BudgetExhausted, InputDivergence, NotALeaf
from synthcomp.kleene import KleeneTree, leaf_check
from synthcomp.model import Point, Report
from synthcomp.murec import step_eval
from synthcomp.trees import Bits, Modulus, path_exit

# Highest boolean-list code a leaf scan examines; `budget` elsewhere is a path depth.
DEFAULT_LEAF_BUDGET = 1 << 20


class LeafEnumeration:
    """Injective enumeration of the leaves of a Kleene tree in length-lex order.

    Leaves are found level by level: the children of the members of one depth, in
    lexicographic order, are either members of the next depth or leaves. Children of
    non-members are never leaves, so they are not visited. The scan is shared by all
    callers and guarded by a lock.
    """

    def __init__(self, kt: KleeneTree):
        self.kt = kt
        self._lock = Lock()
        self._leaves: List[Bits] = []
        self._codes: List[int] = []
        self._candidates = self._children()
        self._pending: Tuple[int, Bits, bool] = (-1, (), False)
        self._exhausted = False

    def _children(self) -> Iterator[Tuple[int, Bits, bool]]:
        level: List[Bits] = [()]
        while level:
            next_level: List[Bits] = []
            for u in level:
                for b in (False, True):
                    v = u + (b,)
                    is_member = self.kt.member(v)
                    if is_member:
                        next_level.append(v)
                    yield encode_list(v), v, not is_member
            level = next_level

    def _scan_until(self, enough: Callable[[], bool], budget: int) -> None:
        while not enough() and not self._exhausted:
            code, v, is_leaf = self._pending
            if code < 0:
                try:
                    code, v, is_leaf = next(self._candidates)
                except StopIteration:
                    self._exhausted = True
                    return
                self._pending = (code, v, is_leaf)
            if code > budget:
                return
            self._pending = (-1, (), False)
            if is_leaf:
                self._leaves.append(v)
                self._codes.append(code)

    def leaf(self, i: int, budget: int) -> Bits:
        """The `i`-th leaf, scanning list codes up to `budget`.

        Raises:
            BudgetExhausted: when fewer than ``i + 1`` leaves have code in budget.

        """
        with self._lock:
            self._scan_until(lambda: len(self._leaves) > i, budget)
            if len(self._leaves) > i and self._codes[i] <= budget:
                return self._leaves[i]
        logger.debug(f"Leaf {i} not found up to list code {budget}")
        raise BudgetExhausted(f"Fewer than {i + 1} leaves up to code {budget}", point=i)

    def index(self, u: Sequence[bool], budget: int) -> int:
        """Position of leaf `u` in the enumeration.

        Raises:
            NotALeaf: when `u` is not a leaf.
            BudgetExhausted: when the code of `u` is above `budget`.

        """
        leaf = tuple(bool(b) for b in u)
        if not leaf_check(self.kt, leaf):
            raise NotALeaf(f"{list(leaf)} is not a leaf")
        code = encode_list(leaf)
        if code > budget:
            raise BudgetExhausted(f"Leaf code {code} above {budget}", point=leaf)
        with self._lock:
            self._scan_until(lambda: code in self._codes[-1:], code)
            return bisect_left(self._codes, code)


@lru_cache(maxsize=64)
def leaf_enumeration(kt: KleeneTree) -> LeafEnumeration:
    """Shared leaf enumeration of a Kleene tree."""
    return LeafEnumeration(kt)


def leaf_enum(kt: KleeneTree, i: int, budget: int = DEFAULT_LEAF_BUDGET) -> Bits:
    """The `i`-th leaf in length-lex order, scanning list codes up to `budget`."""
    return leaf_enumeration(kt).leaf(i, budget)


def leaf_enum_inv(
    kt: KleeneTree, u: Sequence[bool], budget: int = DEFAULT_LEAF_BUDGET
) -> int:
    """Index of a leaf: the number of leaves with a smaller list code."""
    return leaf_enumeration(kt).index(u, budget)


def F_apply(
    kt: KleeneTree, f: Point, n: int, budget: int = DEFAULT_LEAF_BUDGET
) -> bool:
    """Bit `n` of ``leaf(f 0) ++ leaf(f 1) ++ ...``.

    Leaves are nonempty, so at most ``f 0 .. f n`` are read, within the modulus
    ``[0 .. n+1]``.

    Args:
        kt: Kleene tree.
        f: point of Baire space.
        n: index.
        budget: leaf scan budget.

    Returns:
        the bit.

    """
    offset, j = 0, 0
    while True:
        block = leaf_enum(kt, f.at(j), budget)
        if n < offset + len(block):
            return block[n - offset]
        offset, j = offset + len(block), j + 1


def F_modulus() -> Modulus:
    """Modulus of `F`: bit `n` depends on ``f 0 .. f (n+1)`` only."""
    return lambda f, n: list(range(n + 2))


def F_point(kt: KleeneTree, f: Point, budget: int = DEFAULT_LEAF_BUDGET) -> Point:
    """`F` applied to a whole point."""
    return Point(rule=lambda n: F_apply(kt, f, n, budget), source=f"F({f.source})")


def pref(kt: KleeneTree, g: Point, budget: int) -> Bits:
    """Shortest prefix of `g` outside the tree, a leaf by minimality.

    Raises:
        BudgetExhausted: when the path of `g` stays inside the tree to `budget`.

    """
    m = path_exit(kt.tree, g, budget)
    if m is None:
        raise BudgetExhausted(
            f"{g.source} stays in the tree to depth {budget}", point=g.source
        )
    return tuple(bool(b) for b in g.prefix(m))


def nxt(g: Point, k: int) -> Point:
    """The point `g` shifted left by `k`."""
    if k == 0:
        return g
    return Point(rule=lambda n: g.at(n + k), source=f"nxt({g.source}, {k})")


class _Blocks:
    def __init__(self) -> None:
        self.lock = Lock()
        self.blocks: List[Bits] = []
        self.offset = 0


@lru_cache(maxsize=256)
def _blocks_of(kt: KleeneTree, g: Point, budget: int) -> _Blocks:
    return _Blocks()


def leaf_blocks(kt: KleeneTree, g: Point, count: int, budget: int) -> List[Bits]:
    """The first `count` leaf blocks of `g`, ``pref g``, ``pref (nxt g |pref g|)``, ...

    Block boundaries are memoized per tree, point and budget.
    """
    memo = _blocks_of(kt, g, budget)
    with memo.lock:
        while len(memo.blocks) < count:
            block = pref(kt, nxt(g, memo.offset), budget)
            memo.blocks.append(block)
            memo.offset += len(block)
        return memo.blocks[:count]


def G_apply(
    kt: KleeneTree,
    g: Point,
    n: int,
    budget: int,
    leaf_budget: int = DEFAULT_LEAF_BUDGET,
) -> int:
    """Index of the `n`-th leaf block of `g`.

    Args:
        kt: Kleene tree.
        g: point of Cantor space.
        n: index.
        budget: deepest prefix `pref` examines.
        leaf_budget: leaf scan budget.

    Returns:
        the natural at index `n` of ``G g``.

    """
    return leaf_enum_inv(kt, leaf_blocks(kt, g, n + 1, budget)[n], leaf_budget)


def G_modulus(kt: KleeneTree, budget: int) -> Modulus:
    """Modulus of `G`: index `n` depends on the bits of the first ``n + 1`` blocks."""

    def modulus(g: Point, n: int) -> List[int]:
        blocks = leaf_blocks(kt, g, n + 1, budget)
        return list(range(sum(len(block) for block in blocks)))

    return modulus


def G_point(
    kt: KleeneTree, g: Point, budget: int, leaf_budget: int = DEFAULT_LEAF_BUDGET
) -> Point:
    """`G` applied to a whole point."""
    return Point(
        rule=lambda n: G_apply(kt, g, n, budget, leaf_budget), source=f"G({g.source})"
    )


def roundtrip_check(
    kt: KleeneTree,
    g: Point,
    N: int,
    budget: int,
    leaf_budget: int = DEFAULT_LEAF_BUDGET,
) -> Report:
    """Check ``F (G g) n == g n`` for every ``n < N``."""
    logger.debug(f"Round trip of {g.source} on {N} indices...")
    report = Report(name=f"F(G({g.source})) against {g.source}", checked=N)
    image = G_point(kt, g, budget, leaf_budget)
    for n in range(N):
        got, want = F_apply(kt, image, n, leaf_budget), bool(g.at(n))
        if got != want:
            report.violations.append(f"index {n}: F(G g) = {got}, g = {want}")
    return report


def find_leaf_prefix(kt: KleeneTree, u: Sequence[bool]) -> Bits:
    """The leaf that is a prefix of the non-member `u`.

    Raises:
        NotALeaf: when `u` is a member, so no prefix of it is a leaf.

    """
    bits = tuple(bool(b) for b in u)
    for m in range(len(bits) + 1):
        if not kt.member(bits[:m]):
            return bits[:m]
    raise NotALeaf(f"{list(bits)} is a member, none of its prefixes is a leaf")


def point_from_leaves(
    kt: KleeneTree, indices: Sequence[int], budget: int = DEFAULT_LEAF_BUDGET
) -> Point:
    """Cantor point repeating the concatenation of the leaves at `indices` forever."""
    if not indices:
        raise ValueError("A leaf point needs at least one leaf index.")
    bits = tuple(b for i in indices for b in leaf_enum(kt, i, budget))
    return Point(
        rule=lambda n: bits[n % len(bits)],
        source=f"leaves:{','.join(str(i) for i in indices)}",
    )


def point_from_code(c: int, fuel: int, cantor: bool = False) -> Point:
    """Point computed by a program code.

    Reading an index where the program is silent at `fuel` raises `InputDivergence`.

    Args:
        c: program code.
        fuel: step budget per index.
        cantor: read outputs as booleans, 0 as False.

    Returns:
        new point.

    """

    def rule(n: int) -> object:
        value = step_eval(c, n, fuel)
        if value is None:
            raise InputDivergence(f"Code {c} is silent on {n} at fuel {fuel}", index=n)
        return decode_bool(value) if cantor else value

    return Point(rule=rule, source=f"code:{c}")
