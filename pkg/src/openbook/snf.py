"""Smith normal form over the integers, enough for abelian group invariants."""

from __future__ import annotations

from typing import Sequence


def _diagonalize(A: list[list[int]]) -> list[int]:
    rows, cols = len(A), len(A[0]) if A else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    A[t], A[i] = A[i], A[t]
                    done = False
                    break
            if not done:
                continue
            p = A[t][t]
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                    done = False
                    break
            if not done:
                continue
            # the pivot must divide the whole remaining block
            p = A[t][t]
            for i in range(t + 1, rows):
                if any(A[i][j] % p for j in range(t + 1, cols)):
                    A[t] = [a + b for a, b in zip(A[t], A[i])]
                    done = False
                    break
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def invariant_factors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries d_1 | d_2 | ... of the Smith normal form."""
    A = [[int(x) for x in row] for row in matrix]
    if not A or not A[0]:
        return []
    return _diagonalize(A)


def abelian_invariants(n_generators: int, relations: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Free rank and torsion coefficients of ``Z^n / <relations>``.

    Each relation is a length-``n`` integer vector.
    """
    rels = [list(r) for r in relations if any(r)]
    if not rels:
        return n_generators, []
    d = invariant_factors(rels)
    torsion = [x for x in d if x > 1]
    return n_generators - len(d), torsion
