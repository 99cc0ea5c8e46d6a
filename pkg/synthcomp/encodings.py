from math import isqrt
from typing import List, Optional, Sequence, Tuple


def pair(n: int, m: int) -> int:
    """Cantor pairing ``⟨n, m⟩ = (n+m)(n+m+1)/2 + m``.

    Args:
        n: first component.
        m: second component.

    Returns:
        the code of the pair.

    """
    s = n + m
    return s * (s + 1) // 2 + m


def unpair(k: int) -> Tuple[int, int]:
    """Inverse of `pair`.

    Args:
        k: any natural number.

    Returns:
        the unique ``(n, m)`` with ``pair(n, m) == k``.

    """
    s = (isqrt(8 * k + 1) - 1) // 2
    m = k - s * (s + 1) // 2
    return s - m, m


def encode_list(bits: Sequence[bool]) -> int:
    """Length-lex code of a boolean list.

    The code is ``2^|l| - 1`` plus the big-endian value of the list, so shorter lists
    come first and lists of equal length are ordered with false < true.

    Args:
        bits: boolean list.

    Returns:
        the code of the list.

    """
    value = 0
    for bit in bits:
        value = 2 * value + int(bit)
    return (1 << len(bits)) - 1 + value


def decode_list(k: int) -> Tuple[bool, ...]:
    """Inverse of `encode_list`.

    Args:
        k: any natural number.

    Returns:
        the boolean list with code ``k``, as a tuple.

    """
    length = (k + 1).bit_length() - 1
    value = k - ((1 << length) - 1)
    return tuple(bool((value >> (length - 1 - i)) & 1) for i in range(length))


def encode_nat_list(values: Sequence[int]) -> int:
    """Code a list of naturals: ``[] ↦ 0`` and ``x :: xs ↦ 1 + ⟨x, code xs⟩``."""
    code = 0
    for value in reversed(values):
        code = 1 + pair(value, code)
    return code


def decode_nat_list(k: int) -> List[int]:
    """Inverse of `encode_nat_list`; total since every tail code is smaller."""
    values = []
    while k > 0:
        head, k = unpair(k - 1)
        values.append(head)
    return values


def encode_option(value: Optional[int]) -> int:
    """Option coding: ``None ↦ 0`` and ``Some x ↦ x + 1``."""
    return 0 if value is None else value + 1


def decode_option(k: int) -> Optional[int]:
    """Inverse of `encode_option`."""
    return None if k == 0 else k - 1


def decode_bool(k: int) -> bool:
    """Boolean reading of a natural: ``0 ↦ false`` and ``x + 1 ↦ true``."""
    return k != 0


def encode_bool(b: bool) -> int:
    """Canonical natural for a boolean, inverse of `decode_bool` on ``{0, 1}``."""
    return int(b)
