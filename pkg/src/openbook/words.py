"""Free-group words over the edge loops of a one-vertex spine.

A word is a tuple of nonzero integers; ``k`` traverses edge ``k`` forwards
and ``-k`` traverses it backwards.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple[int, ...]


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def free_reduce(word: Iterable[int]) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("0 is not a letter")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def letter_order(word: Sequence[int]) -> tuple[int, ...]:
    """Sort key ordering letters as 1, -1, 2, -2, ..."""
    return tuple(2 * abs(x) + (x < 0) for x in word)


def least_rotation(word: Sequence[int]) -> Word:
    """Least cyclic rotation under :func:`letter_order` (words here are short)."""
    w = tuple(word)
    if not w:
        return w
    return min((w[k:] + w[:k] for k in range(len(w))), key=letter_order)


def canonical_cyclic(word: Iterable[int]) -> Word:
    return least_rotation(cyclic_reduce(word))


def primitive_root(word: Sequence[int]) -> tuple[Word, int]:
    """Return ``(u, k)`` with ``word == u**k`` and ``k`` maximal."""
    w = tuple(word)
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d], n // d
    return w, 1


def substitute(word: Iterable[int], images: Sequence[Word]) -> Word:
    """Apply the homomorphism sending edge ``k`` to ``images[k - 1]``."""
    out: list[int] = []
    for x in word:
        img = images[x - 1] if x > 0 else inverse(images[-x - 1])
        out.extend(img)
    return free_reduce(out)


def abelianize(word: Iterable[int], rank: int) -> list[int]:
    v = [0] * rank
    for x in word:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v
