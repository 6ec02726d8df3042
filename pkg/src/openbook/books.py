"""Abstract open books and the moves between them."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .curves import ArcClass, CurveClass, is_simple
from .mcg import (Letter, TwistWord, act_on, apply_twist, generator_curves, homology_action,
                  identity, inverse as tw_inverse, twist)
from .snf import abelian_invariants
from .surface import FatGraph, Surface, make_surface
from .words import Word, abelianize, free_reduce, inverse as word_inverse


@dataclass(frozen=True)
class OpenBook:
    page: Surface
    monodromy: TwistWord
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.monodromy.surface != self.page:
            raise ValueError("monodromy lives on another surface")
        if self.page.boundary_count < 1:
            raise ValueError("pages need binding")

    def logged(self, entry: str) -> "OpenBook":
        return OpenBook(self.page, self.monodromy, self.provenance + (entry,))

    def __repr__(self):
        return (f"OpenBook(g={self.page.genus}, n={self.page.boundary_count}, "
                f"monodromy={self.monodromy!r})")


@dataclass(frozen=True)
class HomologyPresentation:
    """Presentation of first homology of the closed 3-manifold.

    Generators are the page's edge loops followed by the circle class ``t``;
    each row of ``relations`` is one relation.
    """

    relations: tuple[tuple[int, ...], ...]
    deltas: tuple[tuple[int, ...], ...]
    rank: int
    torsion: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        return group_string(self.rank, self.torsion)


def group_string(rank: int, torsion: Sequence[int]) -> str:
    parts = (["Z"] if rank == 1 else [f"Z^{rank}"] if rank else []) + [f"Z/{d}" for d in torsion]
    return " + ".join(parts) or "0"


def make_open_book(page: Surface, w: TwistWord | None = None, note: str = "") -> OpenBook:
    w = identity(page) if w is None else w
    return OpenBook(page, w, (note,) if note else ())


def hopf_band(handedness: int) -> OpenBook:
    """Annulus page with one core twist; +1 gives the positive Hopf band."""
    if handedness not in (1, -1):
        raise ValueError("handedness is +1 or -1")
    A = make_surface(0, 2)
    core = CurveClass(A, (1,))
    return OpenBook(A, twist(core, handedness), (f"hopf band {'+' if handedness > 0 else '-'}",))


def first_homology(ob: OpenBook) -> HomologyPresentation:
    """First homology of the manifold carried by ``ob``.

    Relations: ``(phi_* - 1) x = 0`` for every page class, and
    ``t + delta_j = 0`` for every binding component, where ``delta_j`` is
    the class of ``a_j . phi(a_j)^-1`` for the chord ``a_j`` from the base
    corner to the marked corner of component ``j``.
    """
    s = ob.page
    r = s.rank
    M = homology_action(ob.monodromy)
    rels = []
    for k in range(r):
        col = [int(M[i][k]) - (1 if i == k else 0) for i in range(r)]
        rels.append(tuple(col) + (0,))
    deltas = []
    for kj in s.spine.marked_corners:
        a = ArcClass(s, 0, (), kj)
        image = act_on(ob.monodromy, a)
        loop = free_reduce(a.word + word_inverse(image.word))
        delta = tuple(abelianize(loop, r))
        deltas.append(delta)
        rels.append(delta + (1,))
    rank, torsion = abelian_invariants(r + 1, rels)
    return HomologyPresentation(tuple(rels), tuple(deltas), rank, tuple(torsion))


def is_homology_sphere(ob: OpenBook) -> bool:
    return first_homology(ob).is_trivial


# ---------------------------------------------------------------------------
# moving words between pages


def rehome(w: TwistWord, target: Surface, lift: Callable[[Word], Word] | None = None) -> TwistWord:
    """Carry a word to ``target``; curve words pass through ``lift``."""
    lift = lift or (lambda v: v)
    return TwistWord(target, tuple(Letter(CurveClass(target, lift(L.curve.word)), L.power)
                                   for L in w.letters))


def _insert_at_corners(rotation: Sequence[int], inserts: dict[int, list]) -> tuple[int, ...]:
    if not rotation:
        return tuple(x for c in sorted(inserts) for x in inserts[c])
    out: list[int] = []
    for p, x in enumerate(rotation):
        out.append(x)
        out.extend(inserts.get(p, ()))
    return tuple(out)


def _fresh_name(taken: Sequence[str], stem: str) -> str:
    for k in itertools.count(len(taken) + 1):
        if f"{stem}{k}" not in taken:
            return f"{stem}{k}"
    raise AssertionError


def stabilize(ob: OpenBook, arc: ArcClass, handedness: int) -> OpenBook:
    """Attach a 1-handle at the ends of ``arc`` and twist along arc + core.

    The new edge ``h`` leaves from the end corner of ``arc`` and arrives at
    its start corner; the stabilizing curve is ``c = arc . h``.  Feet on one
    boundary component raise the genus, feet on two components merge them.
    """
    if handedness not in (1, -1):
        raise ValueError("handedness is +1 or -1")
    s = ob.page
    if arc.surface != s:
        raise ValueError("arc lives on another page")
    if not is_simple(arc):
        raise ValueError("stabilization arc must be properly embedded")
    h = s.rank + 1
    inserts: dict[int, list] = {}
    inserts.setdefault(arc.start, []).append(-h)
    inserts.setdefault(arc.end, []).append(h)
    rot = _insert_at_corners(s.spine.rotation, inserts)
    names = s.edge_names + (_fresh_name(s.edge_names, "h"),)
    new = Surface(FatGraph(rot), names)
    c = CurveClass(new, arc.word + (h,))
    w = rehome(ob.monodromy, new) * twist(c, handedness)
    sign = "+" if handedness > 0 else "-"
    entry = f"stabilize {sign} along {' '.join(arc.names()) or 'chord'} [{arc.start}->{arc.end}]"
    return OpenBook(new, w, ob.provenance + (entry,))


def destabilize(ob: OpenBook, edge: int) -> OpenBook:
    """Remove a spine edge no monodromy letter runs over except one.

    Expects the monodromy to be ``w * D_c^-1`` or ``w * D_c`` with ``c``
    running once over ``edge`` and ``w`` avoiding it, up to cyclic rotation of
    the word; the rotation is an equivalence of open books.
    """
    s = ob.page
    letters = list(ob.monodromy.letters)
    hits = [i for i, L in enumerate(letters) if edge in map(abs, L.curve.word)]
    if len(hits) != 1:
        raise ValueError("edge is not a stabilization handle of this monodromy")
    i = hits[0]
    if [abs(x) for x in letters[i].curve.word].count(edge) != 1:
        raise ValueError("stabilizing curve must run once over the handle")
    rest = letters[i + 1:] + letters[:i]
    rot = tuple(x for x in s.spine.rotation if abs(x) != edge)

    def relabel(x):
        return x if abs(x) < edge else (x - 1 if x > 0 else x + 1)

    names = tuple(nm for k, nm in enumerate(s.edge_names, 1) if k != edge)
    new = Surface(FatGraph(tuple(relabel(x) for x in rot)), names)
    w = TwistWord(new, tuple(Letter(CurveClass(new, tuple(map(relabel, L.curve.word))), L.power)
                             for L in rest))
    return OpenBook(new, w, ob.provenance + (f"destabilize edge {s.edge_names[edge - 1]}",))


# ---------------------------------------------------------------------------
# Murasugi sums


def _slide_to_chord(arc: ArcClass) -> tuple[int, int] | None:
    """Corners of an empty chord isotopic to ``arc`` with ends free on the boundary."""
    sp = arc.surface.spine
    if not sp.rotation:
        return None

    def options(corner, at_start):
        cyc = sp.boundary_cycles[sp.corner_component[corner]]
        for lam in cyc:
            fwd = sp.walk(corner, lam)
            back = sp.walk(lam, corner)
            if at_start:
                yield lam, word_inverse(fwd)
                yield lam, back
            else:
                yield lam, fwd
                yield lam, word_inverse(back)

    for la, pre in options(arc.start, True):
        for lb, post in options(arc.end, False):
            if la != lb and not free_reduce(pre + arc.word + post):
                return la, lb
    return None


def _carry_arc_to_chord(ob: OpenBook, arc: ArcClass, budget: int = 2000):
    """Find ``f`` so that ``f^-1(arc)`` slides to a chord; returns (f, chord corners)."""
    s = ob.page
    gens = generator_curves(s)
    moves = [(g, e) for g in gens for e in (1, -1)]
    tie = itertools.count()
    seen = {(arc.start, arc.word, arc.end)}
    heap = [(len(arc.word), next(tie), arc, ())]
    while heap and budget > 0:
        _, _, a, path = heapq.heappop(heap)
        chord = _slide_to_chord(a)
        if chord is not None:
            # a = T_s ... T_1 (arc), so arc = f(a) with f = T_1^-1 ... T_s^-1
            f = TwistWord(s, tuple(Letter(g, -e) for g, e in path))
            return f, chord
        budget -= 1
        for g, e in moves:
            b = apply_twist(a, g, e)
            key = (b.start, b.word, b.end)
            if key not in seen:
                seen.add(key)
                heapq.heappush(heap, (len(b.word), next(tie), b, path + ((g, e),)))
    return None


def murasugi_sum(ob0: OpenBook, r1: ArcClass, ob1: OpenBook, r2: ArcClass) -> OpenBook:
    """Plumb ``ob1`` onto ``ob0`` along rectangles around ``r1`` and ``r2``.

    ``r2`` is first slid to a chord of the second vertex disk, splitting it
    into two halves; the halves are glued into the corners at the ends of
    ``r1``.  A path of the second page that crossed ``r2`` now runs along
    ``r1`` instead.  The monodromy is ``phi_0`` composed after ``phi_1``.
    """
    if r1.surface != ob0.page or r2.surface != ob1.page:
        raise ValueError("arcs must live on their pages")
    for a in (r1, r2):
        if not is_simple(a):
            raise ValueError("summing arcs must be properly embedded")
    if not ob1.page.spine.rotation:
        return ob0.logged("sum with the trivial disk book")
    if not ob0.page.spine.rotation:
        return ob1.logged("sum with the trivial disk book")
    chord = _slide_to_chord(r2)
    note = ""
    if chord is None:
        found = _carry_arc_to_chord(ob1, r2)
        if found is None:
            raise ValueError("second summing arc could not be brought to a chord")
        f, chord = found
        # arc r2 = f(chord), so conjugating by f^-1 makes the chord the summing arc
        ob1 = OpenBook(ob1.page, tw_inverse(f) * ob1.monodromy * f, ob1.provenance)
        note = f" (second page conjugated by a {len(f)}-letter word)"
    la, lb = chord
    s0, s1 = ob0.page, ob1.page
    r0 = s0.rank
    rot1 = s1.spine.rotation
    m1 = len(rot1)
    shift = lambda x: x + r0 if x > 0 else x - r0  # noqa: E731
    halfA = [(la + 1 + t) % m1 for t in range((lb - la) % m1)]
    halfB = [(lb + 1 + t) % m1 for t in range((la - lb) % m1)]
    in_A = set(halfA)
    A = [shift(rot1[p]) for p in halfA]
    B = [shift(rot1[p]) for p in halfB]
    inserts: dict[int, list] = {}
    inserts.setdefault(r1.start, []).extend(A)
    inserts.setdefault(r1.end, []).extend(B)
    rot = _insert_at_corners(s0.spine.rotation, inserts)
    names0 = list(s0.edge_names)
    names1 = []
    for nm in s1.edge_names:
        while nm in names0 or nm in names1:
            nm = nm + "'"
        names1.append(nm)
    new = Surface(FatGraph(rot), tuple(names0 + names1))
    W = r1.word
    pos1 = s1.spine.position

    def lift(v: Word) -> Word:
        out: list[int] = []
        n = len(v)
        for k in range(n):
            a_in = pos1[-v[k - 1]] in in_A
            a_out = pos1[v[k]] in in_A
            if a_in and not a_out:
                out.extend(W)
            elif a_out and not a_in:
                out.extend(word_inverse(W))
            out.append(shift(v[k]))
        return tuple(out)

    w = rehome(ob0.monodromy, new) * rehome(ob1.monodromy, new, lift)
    entry = f"murasugi sum along {' '.join(r1.names()) or 'chord'} / chord {la}->{lb}{note}"
    return OpenBook(new, w, ob0.provenance + ob1.provenance + (entry,))


def page_surgery(ob: OpenBook, L: CurveClass, coefficient: int) -> OpenBook:
    """Contact (+-1)-surgery on a page curve composes with ``D_L^-+1``."""
    if coefficient not in (1, -1):
        raise ValueError("surgery coefficient is +1 or -1")
    if L.surface != ob.page or not is_simple(L):
        raise ValueError("surgery curve must be a simple curve on the page")
    w = ob.monodromy * twist(L, -coefficient)
    return OpenBook(ob.page, w, ob.provenance + (f"surgery {coefficient:+d} on {L!r}",))


def connect_binding(ob: OpenBook) -> OpenBook:
    """Positively stabilize along chords joining boundary components until one remains."""
    while ob.page.boundary_count > 1:
        mk = ob.page.spine.marked_corners
        ob = stabilize(ob, ArcClass(ob.page, mk[0], (), mk[1]), 1)
    return ob


def disk_book() -> OpenBook:
    return make_open_book(make_surface(0, 1), note="disk")


def homology_matrix(ob: OpenBook) -> np.ndarray:
    return homology_action(ob.monodromy)
