from typing import Callable, List, Optional, Sequence, Tuple

from loguru import logger
from pydantic import BaseModel, ConfigDict

from synthcomp.encodings import decode_list
from synthcomp.errors import NotANode, NotBounded
from synthcomp.model import Point, Report

Bits = Tuple[bool, ...]
Modulus = Callable[[Point, int], List[int]]


class DecTree(BaseModel):
    """A decidable binary tree.

    Attributes:
        member: decidable membership of boolean lists.
        label: description used in logs and reports.

    """

    model_config = ConfigDict(frozen=True)

    member: Callable[[Bits], bool]
    label: str = "tree"

    def __contains__(self, u: Sequence[bool]) -> bool:
        """Membership of any boolean sequence, read as a list."""
        return self.member(tuple(u))


def full_tree() -> DecTree:
    """The tree containing every list."""
    return DecTree(member=lambda _: True, label="full")


def depth_tree(n: int) -> DecTree:
    """The tree of all lists of length at most `n`."""
    return DecTree(member=lambda u: len(u) <= n, label=f"depth<={n}")


def extend(u: Sequence[bool], i: int) -> Point:
    """The first `i` entries of `u` followed by False forever."""
    head = tuple(u[:i])
    return Point(
        rule=lambda n: head[n] if n < len(head) else False,
        source=f"extend:{''.join('1' if b else '0' for b in head)}",
    )


def check_tree_axioms(t: DecTree, depth: int) -> Report:
    """Exhaustively verify the tree axioms on lists up to `depth`.

    Prefix closure is checked against the immediate parent, which implies it for
    every prefix.

    Args:
        t: candidate tree.
        depth: longest list checked.

    Returns:
        report listing the root violation and every member with a non-member parent.

    """
    report = Report(name=f"tree axioms of {t.label} to depth {depth}")
    if not t.member(()):
        report.violations.append("the empty list is not a member")
    lists = (1 << (depth + 1)) - 1
    for k in range(1, lists):
        u = decode_list(k)
        if t.member(u) and not t.member(u[:-1]):
            report.violations.append(f"{_show(u)} is a member but its parent is not")
    report.checked = lists
    return report


def subtree_at(t: DecTree, u: Sequence[bool]) -> DecTree:
    """The subtree ``v ↦ member(u ++ v)``.

    Raises:
        NotANode: when `u` is not a member, the subtree would lack a root.

    """
    node = tuple(u)
    if not t.member(node):
        raise NotANode(f"{_show(node)} is not a member of {t.label}")
    return DecTree(
        member=lambda v: t.member(node + tuple(v)),
        label=f"{t.label}@{_show(node)}",
    )


def direct_subtrees(t: DecTree, u: Sequence[bool] = ()) -> List[Tuple[bool, DecTree]]:
    """The children of node `u` that are members, with their subtrees."""
    node = tuple(u)
    children = [node + (b,) for b in (False, True)]
    return [(v[-1], subtree_at(t, v)) for v in children if t.member(v)]


def infinite_to_depth(t: DecTree, n: int) -> Optional[Bits]:
    """Find a member of length exactly `n`.

    Depth-first search through members only, False first, so the result is the
    lexicographically least member at that depth.

    Args:
        t: tree.
        n: required length.

    Returns:
        the member, or None when there is no member at depth `n`.

    """
    stack: List[Bits] = [()] if t.member(()) else []
    while stack:
        u = stack.pop()
        if len(u) == n:
            return u
        stack.extend(v for v in (u + (True,), u + (False,)) if t.member(v))
    logger.debug(f"{t.label} has no member at depth {n}")
    return None


def bounded_check(t: DecTree, n: int) -> bool:
    """True when no member has length exactly `n`, so the tree is bounded by `n`."""
    return infinite_to_depth(t, n) is None


def longest_element(t: DecTree, bound: int) -> Bits:
    """Longest member of a tree bounded by `bound`, lexicographically least.

    Args:
        t: tree.
        bound: depth with no member.

    Returns:
        a member of maximal length.

    Raises:
        NotBounded: when some member has length `bound`.

    """
    if not bounded_check(t, bound):
        raise NotBounded(f"{t.label} has members of length {bound}")
    for depth in range(bound - 1, -1, -1):
        u = infinite_to_depth(t, depth)
        if u is not None:
            return u
    raise NotBounded(f"{t.label} has no root")


def path_exit(t: DecTree, point: Point, depth: int) -> Optional[int]:
    """Least `m` up to `depth` with ``point[0 .. m-1]`` outside the tree, if any."""
    prefix: List[bool] = []
    for m in range(depth + 1):
        if not t.member(tuple(prefix)):
            return m
        prefix.append(bool(point.at(m)))
    return None


def follows_path(t: DecTree, point: Point, depth: int) -> bool:
    """True when every prefix of `point` up to length `depth` is a member."""
    return path_exit(t, point, depth) is None


def tree_from_modulus(M: Modulus) -> DecTree:
    """Tree of the lists whose every prefix is decided early by a modulus.

    ``u`` is a member when for every ``0 < i <= len(u)`` some ``k < i`` lies in
    ``M(extend(u, i), 0)``.

    Args:
        M: modulus of continuity of a map out of Cantor space, total on points.

    Returns:
        new tree.

    """

    def member(u: Bits) -> bool:
        return all(
            any(k < i for k in M(extend(u, i), 0)) for i in range(1, len(u) + 1)
        )

    return DecTree(member=member, label="from-modulus")


def _show(u: Sequence[bool]) -> str:
    return "[" + "".join("1" if b else "0" for b in u) + "]"
