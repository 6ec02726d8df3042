"""Mapping classes written as words in Dehn twists.

A :class:`TwistWord` is read like a composition of functions: the leftmost
letter acts last.  Exact equality goes through :class:`GroupoidMap`, the
action of a mapping class on the boundary-based fundamental groupoid of the
page.  A homeomorphism fixing the boundary is determined up to isotopy by
where it sends the edge loops and the chords from the base corner to the
other corners, and those images are words we can compare literally.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .curves import (ArcClass, CurveClass, Path, algebraic_intersection, apply_twist,
                     cut_pieces, geometric_intersection, is_separating,
                     is_simple, neighborhood_boundary)
from .surface import Surface, standard_curves
from .words import Word, abelianize, free_reduce, inverse as word_inverse, substitute


@dataclass(frozen=True)
class Letter:
    """A Dehn twist about ``curve``; ``power`` +1 is right-handed."""

    curve: CurveClass
    power: int = 1

    def __post_init__(self):
        if self.power not in (1, -1):
            raise ValueError("letters carry power +1 or -1; use repetition for powers")
        # twists do not see the orientation of their curve
        c = self.curve
        object.__setattr__(self, "curve", CurveClass(c.surface, c.unoriented))

    def inverse(self) -> "Letter":
        return Letter(self.curve, -self.power)

    def __repr__(self):
        return f"{'R' if self.power > 0 else 'L'}({' '.join(self.curve.names())})"


@dataclass(frozen=True)
class TwistWord:
    surface: Surface
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        for L in letters:
            if L.curve.surface != self.surface:
                raise ValueError("letter lives on another surface")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "TwistWord") -> "TwistWord":
        return compose(self, other)

    def __pow__(self, k: int) -> "TwistWord":
        if k < 0:
            return inverse(self) ** (-k)
        return TwistWord(self.surface, self.letters * k)

    @property
    def is_positive(self) -> bool:
        return all(L.power > 0 for L in self.letters)

    def __repr__(self):
        return " * ".join(map(repr, self.letters)) or "id"


def twist(curve: CurveClass, power: int = 1) -> TwistWord:
    """``D_curve ** power`` as a word."""
    L = Letter(curve, 1 if power > 0 else -1)
    return TwistWord(curve.surface, (L,) * abs(power))


def identity(surface: Surface) -> TwistWord:
    return TwistWord(surface, ())


def _same_surface(*ws):
    s = ws[0].surface
    if any(w.surface != s for w in ws):
        raise ValueError("words live on different surfaces")


def compose(w1: TwistWord, w2: TwistWord) -> TwistWord:
    _same_surface(w1, w2)
    return TwistWord(w1.surface, w1.letters + w2.letters)


def inverse(w: TwistWord) -> TwistWord:
    return TwistWord(w.surface, tuple(L.inverse() for L in reversed(w.letters)))


def conjugate_push(w: TwistWord, f: TwistWord) -> TwistWord:
    """``f w f^-1`` rewritten as twists about the image curves."""
    _same_surface(w, f)
    return TwistWord(w.surface, tuple(Letter(act_on(f, L.curve), L.power) for L in w.letters))


# ---------------------------------------------------------------------------
# groupoid action


@dataclass(frozen=True)
class GroupoidMap:
    """Images of the edge loops and corner chords under a mapping class.

    ``loops[k-1]`` is the image of the loop around edge ``k`` based at the
    base corner 0; ``chords[c]`` the image of the empty chord from corner 0
    to corner ``c``.
    """

    loops: tuple[Word, ...]
    chords: tuple[Word, ...]

    def then(self, other: "GroupoidMap") -> "GroupoidMap":
        """``self`` composed after ``other``."""
        loops = tuple(substitute(w, self.loops) for w in other.loops)
        chords = tuple(free_reduce(substitute(u, self.loops) + v)
                       for u, v in zip(other.chords, self.chords))
        return GroupoidMap(loops, chords)

    def curve(self, x: CurveClass) -> CurveClass:
        return CurveClass(x.surface, substitute(x.word, self.loops))

    def arc(self, x: ArcClass) -> ArcClass:
        w = word_inverse(self.chords[x.start]) + substitute(x.word, self.loops) + self.chords[x.end]
        return ArcClass(x.surface, x.start, w, x.end)


def _identity_map(s: Surface) -> GroupoidMap:
    return GroupoidMap(tuple((k,) for k in range(1, s.rank + 1)),
                       tuple(() for _ in range(s.spine.n_corners)))


@lru_cache(maxsize=None)
def _letter_map(s: Surface, curve_word: Word, power: int) -> GroupoidMap:
    gamma = CurveClass(s, curve_word)
    if not is_simple(gamma):
        raise ValueError(f"{gamma!r} is not a simple closed curve")
    loops = tuple(apply_twist(ArcClass(s, 0, (k,), 0), gamma, power).word
                  for k in range(1, s.rank + 1))
    chords = tuple(apply_twist(ArcClass(s, 0, (), c), gamma, power).word
                   for c in range(s.spine.n_corners))
    return GroupoidMap(loops, chords)


def groupoid_map(w: TwistWord) -> GroupoidMap:
    acc = _identity_map(w.surface)
    for L in reversed(w.letters):
        acc = _letter_map(w.surface, L.curve.word, L.power).then(acc)
    return acc


def act_on(w: TwistWord, x: Path) -> Path:
    """Image of a curve or arc, the rightmost letter acting first."""
    if x.surface != w.surface:
        raise ValueError("object and word live on different surfaces")
    if not w.letters:
        return x
    m = groupoid_map(w)
    return m.curve(x) if isinstance(x, CurveClass) else m.arc(x)


def act_by_surgery(w: TwistWord, x: Path) -> Path:
    """Same as :func:`act_on` but twisting one letter at a time."""
    for L in reversed(w.letters):
        x = apply_twist(x, L.curve, L.power)
    return x


def equal(w1: TwistWord, w2: TwistWord) -> bool:
    """Equality of mapping classes, decided on the filling loops and chords."""
    _same_surface(w1, w2)
    return groupoid_map(w1) == groupoid_map(w2)


def is_identity(w: TwistWord) -> bool:
    return groupoid_map(w) == _identity_map(w.surface)


# ---------------------------------------------------------------------------
# homology


@lru_cache(maxsize=None)
def _form(s: Surface) -> tuple:
    loops = [CurveClass(s, (k,)) for k in range(1, s.rank + 1)]
    return tuple(tuple(algebraic_intersection(a, b) for b in loops) for a in loops)


def intersection_form(s: Surface) -> np.ndarray:
    """Algebraic intersections of the edge loops, the basis of first homology."""
    return np.array(_form(s), dtype=np.int64).reshape(s.rank, s.rank)


def homology_class(x: CurveClass) -> np.ndarray:
    return np.array(abelianize(x.word, x.surface.rank), dtype=np.int64)


def transvection(curve: CurveClass, power: int = 1) -> np.ndarray:
    """Action of ``D_curve ** power``: ``x -> x + power * <curve, x> [curve]``."""
    s = curve.surface
    v = homology_class(curve)
    J = intersection_form(s)
    return np.eye(s.rank, dtype=np.int64) + power * np.outer(v, v @ J)


def homology_action(w: TwistWord) -> np.ndarray:
    M = np.eye(w.surface.rank, dtype=np.int64)
    for L in w.letters:
        M = M @ transvection(L.curve, L.power)
    return M


def abelianized_action(w: TwistWord) -> np.ndarray:
    """Homology action read off the groupoid map instead of transvections."""
    m = groupoid_map(w)
    cols = [abelianize(img, w.surface.rank) for img in m.loops]
    return np.array(cols, dtype=np.int64).T.reshape(w.surface.rank, w.surface.rank)


# ---------------------------------------------------------------------------
# relations


def chain_boundary(chain: Sequence[CurveClass]) -> list[CurveClass]:
    """Boundary curves ``d`` or ``d_1, d_2`` of a neighbourhood of a chain."""
    check_chain(chain)
    return neighborhood_boundary(list(chain))


def check_chain(chain: Sequence[CurveClass]):
    for i, a in enumerate(chain):
        if not is_simple(a):
            raise ValueError(f"{a!r} is not simple")
        for j in range(i + 1, len(chain)):
            want = 1 if j == i + 1 else 0
            if geometric_intersection(a, chain[j]) != want:
                raise ValueError(f"curves {i + 1} and {j + 1} break the chain pattern")


def chain_relation_sides(chain: Sequence[CurveClass]) -> tuple[TwistWord, TwistWord]:
    s = chain[0].surface
    k = len(chain)
    P = TwistWord(s, tuple(Letter(c) for c in chain))
    bd = chain_boundary(chain)
    rhs = identity(s)
    for d in bd:
        rhs = rhs * twist(d)
    lhs = P ** (2 * k + 2 if k % 2 == 0 else k + 1)
    return lhs, rhs


def verify_relation(kind: str, data, *, level: str = "exact") -> bool:
    """Check one of the standard relations between Dehn twists.

    ``kind`` is ``commute`` or ``braid`` (data: two curves), ``isotopy``
    (two curves meeting once: ``D_d D_c (d) = c``), ``conjugate`` (data: a
    curve and a word ``f``) or ``chain`` (data: list of curves).  With
    ``level="homology"`` both sides are compared by their homology action.
    """
    if kind in ("commute", "braid", "isotopy"):
        c, d = data
        need = 0 if kind == "commute" else 1
        if geometric_intersection(c, d) != need:
            raise ValueError(f"{kind} relation needs curves meeting {need} times")
        if kind == "isotopy":
            return act_on(twist(d) * twist(c), d).same_unoriented(c)
        if kind == "commute":
            lhs, rhs = twist(c) * twist(d), twist(d) * twist(c)
        else:
            lhs, rhs = twist(c) * twist(d) * twist(c), twist(d) * twist(c) * twist(d)
    elif kind == "conjugate":
        c, f = data
        lhs, rhs = f * twist(c) * inverse(f), twist(act_on(f, c))
    elif kind == "chain":
        lhs, rhs = chain_relation_sides(list(data))
    else:
        raise ValueError(f"unknown relation {kind!r}")
    if level == "homology":
        return bool(np.array_equal(homology_action(lhs), homology_action(rhs)))
    return equal(lhs, rhs)


# ---------------------------------------------------------------------------
# carrying curves to standard position


def generator_curves(s: Surface) -> list[CurveClass]:
    """Curves whose twists move curves around during searches."""
    ncs = standard_curves(s)
    gens = list(ncs.chain)
    g = s.genus
    gens += [CurveClass(s, (2 * k - 1,)) for k in range(2, g + 1)]
    for z in range(2 * g + 1, s.rank + 1):
        gens.append(CurveClass(s, (z,)))
        if g:
            gens.append(CurveClass(s, (1, z)))
            gens.append(CurveClass(s, (2, z)))
    uniq = {c.unoriented: c for c in gens}
    return list(uniq.values())


def carry(x: CurveClass, targets: Sequence[CurveClass], *, budget: int = 4000,
          gens: Sequence[CurveClass] | None = None) -> tuple[TwistWord, int] | None:
    """Find ``f`` and ``t`` with ``act_on(f, targets[t]) == x`` up to orientation.

    Best-first search over twists about generator curves, ordered by word
    length.  Returns None once ``budget`` curves have been expanded.
    """
    s = x.surface
    goal = {t.unoriented: i for i, t in enumerate(targets)}
    gens = list(gens) if gens is not None else generator_curves(s)
    moves = [(g, e) for g in gens for e in (1, -1)]
    start = x.unoriented
    parent: dict[Word, tuple | None] = {start: None}
    tie = itertools.count()
    heap = [(len(start), 0, next(tie), start)]
    expanded = 0
    while heap:
        _, depth, _, cur = heapq.heappop(heap)
        if cur in goal:
            steps = []
            node = cur
            while parent[node] is not None:
                prev, g, e = parent[node]
                steps.append(Letter(g, -e))
                node = prev
            # cur = T_s...T_1(x) so x = T_1^-1 ... T_s^-1 (cur)
            return TwistWord(s, tuple(reversed(steps))), goal[cur]
        expanded += 1
        if expanded > budget:
            return None
        c = CurveClass(s, cur)
        for g, e in moves:
            y = apply_twist(c, g, e).unoriented
            if y not in parent:
                parent[y] = (cur, g, e)
                heapq.heappush(heap, (len(y) + depth // 4, depth + 1, next(tie), y))
    return None


def standard_separating(s: Surface, h: int) -> list[tuple[CurveClass, list[CurveClass]]]:
    """Separating curves cutting off genus ``h`` together with a 2h-chain inside."""
    chain = list(standard_curves(s).chain)
    out = []
    for i in range(len(chain) - 2 * h + 1):
        sub = chain[i:i + 2 * h]
        bd = neighborhood_boundary(sub)
        if len(bd) == 1:
            out.append((bd[0], sub))
    return out


def closed_off_genus(gamma: CurveClass) -> int | None:
    """Genus of a piece cut off by ``gamma`` that meets no page boundary."""
    for p in cut_pieces(gamma):
        if p.closed_off:
            return (1 - p.euler) // 2
    return None


def chain_inside(gamma: CurveClass, *, budget: int = 4000) -> list[CurveClass]:
    """A 2h-chain whose neighbourhood boundary is the separating curve ``gamma``."""
    h = closed_off_genus(gamma)
    if not h:
        raise ValueError(f"{gamma!r} does not cut off a closed subsurface of positive genus")
    cands = standard_separating(gamma.surface, h)
    found = carry(gamma, [c for c, _ in cands], budget=budget)
    if found is None:
        raise ValueError(f"no chain found inside {gamma!r} within budget")
    f, t = found
    return [act_on(f, c) for c in cands[t][1]]


# ---------------------------------------------------------------------------
# positive and negative forms


def _one_boundary(s: Surface):
    if s.boundary_count != 1 or s.genus < 1:
        raise ValueError("needs a page with one boundary component and genus >= 1")


def _boundary_curve(s: Surface) -> CurveClass:
    return standard_curves(s).boundary_parallel[0]


def _chain_expansion(s: Surface, x: CurveClass, sign: int, budget: int) -> list[Letter]:
    """Rewrite ``D_x^sign`` (``x`` non-separating) with letters of sign ``-sign``.

    With ``P = D_a1 ... D_a2g`` we have ``P^(4g+2) = D_d``; cutting one copy
    of ``D_aj`` out of that power and conjugating ``a_j`` onto ``x`` gives
    the expansion.  The boundary twist ``D_d^sign`` comes first.
    """
    chain = list(standard_curves(s).chain)
    found = carry(x, chain, budget=budget)
    if found is None:
        raise ValueError(f"could not carry {x!r} onto the standard chain")
    f, j = found
    P = [Letter(c) for c in chain] * (4 * s.genus + 2)
    A, B = P[:j], P[j + 1:]
    rest = TwistWord(s, tuple(B + A))
    if sign > 0:
        rest = inverse(rest)
    d = _boundary_curve(s)
    return [Letter(d, sign)] + list(conjugate_push(rest, f).letters)


def _separating_expansion(x: CurveClass, power: int, budget: int) -> list[Letter]:
    chain = chain_inside(x, budget=budget)
    Q = TwistWord(x.surface, tuple(Letter(c) for c in chain)) ** (2 * len(chain) + 2)
    return list((Q if power > 0 else inverse(Q)).letters)


def _normal_form(w: TwistWord, keep: int, budget: int) -> TwistWord:
    s = w.surface
    _one_boundary(s)
    d = _boundary_curve(s)
    boundary_power = 0
    out: list[Letter] = []
    todo = list(w.letters)
    while todo:
        L = todo.pop(0)
        c = L.curve
        if c.same_unoriented(d):
            boundary_power += L.power
        elif is_separating(c):
            todo = _separating_expansion(c, L.power, budget) + todo
        elif L.power == keep:
            out.append(L)
        else:
            exp = _chain_expansion(s, c, L.power, budget)
            boundary_power += exp[0].power
            out.extend(exp[1:])
    head = twist(d, boundary_power)
    return TwistWord(s, head.letters + tuple(out))


def positify(w: TwistWord, *, budget: int = 4000) -> TwistWord:
    """Equal word whose only negative letters are boundary twists, placed first."""
    return _normal_form(w, 1, budget)


def negative_normal_form(w: TwistWord, *, budget: int = 4000) -> TwistWord:
    """Equal word ``D_d^m`` followed by negative twists about non-separating curves."""
    return _normal_form(w, -1, budget)


def interior_letters_ok(w: TwistWord, sign: int) -> bool:
    d = _boundary_curve(w.surface)
    for i, L in enumerate(w.letters):
        if L.curve.same_unoriented(d):
            continue
        if L.power != sign or is_separating(L.curve):
            return False
    return True
