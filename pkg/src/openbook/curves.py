"""Curves and arcs on a page, their intersections, and single Dehn twists.

Closed curves are cyclically reduced words in the edge loops, arcs are
reduced words running between two corners.  For a one-vertex spine the
reduced word is a complete isotopy invariant (rel endpoints for arcs), so all
the geometry below is read off from words plus the ribbon structure.

Geometric picture.  Every traversal of a word passes through the vertex disk
along a chord from the slot it arrived through to the slot it leaves through;
call the chord at index ``k`` *passage* ``k``.  An arc has one more passage
than letters, with its first and last chord ending at corner points.  Two
paths in minimal position cross either transversely inside one passage, or
once along a maximal run of passages the two share, the run counting as a
crossing exactly when the two paths leave it on opposite sides of each other.

Integer keys encode every point on the boundary circle of the vertex disk:
slot ``label`` sits at ``4 * position`` and corner ``p`` carries two arc
endpoint sites at ``4p + 2`` (where arcs start) and ``4p + 3`` (where arcs
end).  Arcs therefore never share a start with an end.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import NamedTuple, Sequence, Union

from .surface import FatGraph, NamedCurveSystem, Surface
from .words import (Word, canonical_cyclic, cyclic_reduce, free_reduce, inverse,
                    letter_order, primitive_root)


class IsotopicArcs(ValueError):
    """Raised when sign data is requested for two isotopic arcs."""


@dataclass(frozen=True)
class CurveClass:
    """Oriented simple closed curve, stored as its canonical cyclic word.

    The orientation is that of the word; :meth:`reversed` flips it.
    """

    surface: Surface
    word: Word

    def __post_init__(self):
        w = canonical_cyclic(self.word)
        if not w:
            raise ValueError("the trivial word does not define an essential curve")
        object.__setattr__(self, "word", w)

    def reversed(self) -> "CurveClass":
        return CurveClass(self.surface, inverse(self.word))

    @property
    def unoriented(self) -> Word:
        return min(self.word, canonical_cyclic(inverse(self.word)), key=letter_order)

    def same_unoriented(self, other: "CurveClass") -> bool:
        return self.surface == other.surface and self.unoriented == other.unoriented

    def names(self) -> list[str]:
        return self.surface.names_from_word(self.word)

    def __repr__(self):
        return f"Curve[{' '.join(self.names())}]"


@dataclass(frozen=True)
class ArcClass:
    """Arc from corner ``start`` to corner ``end`` with a reduced word.

    When both ends sit in the same corner the start point is the earlier one
    in counterclockwise order.
    """

    surface: Surface
    start: int
    word: Word
    end: int

    def __post_init__(self):
        nc = self.surface.spine.n_corners
        if not (0 <= self.start < nc and 0 <= self.end < nc):
            raise ValueError(f"corners must lie in 0..{nc - 1}")
        object.__setattr__(self, "word", free_reduce(self.word))

    @property
    def start_component(self) -> int:
        return self.surface.spine.corner_component[self.start]

    @property
    def end_component(self) -> int:
        return self.surface.spine.corner_component[self.end]

    def names(self) -> list[str]:
        return self.surface.names_from_word(self.word)

    def __repr__(self):
        return f"Arc[{self.start}: {' '.join(self.names())} :{self.end}]"


Path = Union[CurveClass, ArcClass]


@dataclass(frozen=True)
class SignData:
    interior: tuple[int, ...]
    endpoints: tuple[int, int]

    @property
    def i_value(self) -> float:
        return (self.endpoints[0] + self.endpoints[1]) / 2


# ---------------------------------------------------------------------------
# passages and the crossing routine


def _slot(spine: FatGraph, label: int) -> int:
    return 4 * spine.position[label]


def _corner_point(corner: int, tag: int) -> int:
    return 4 * corner + 2 + tag


def _is_corner(key: int) -> bool:
    return key % 4 >= 2


class _Walk:
    """Passage data for one traversal direction of a path."""

    __slots__ = ("spine", "word", "closed", "n", "ins", "outs", "M", "_rev", "_start", "_end")

    def __init__(self, spine: FatGraph, word: Word, closed: bool,
                 start: int | None = None, end: int | None = None):
        self.spine = spine
        self.word = tuple(word)
        self.closed = closed
        self.M = 2 * spine.modulus
        m = len(self.word)
        if closed:
            if m == 0:
                raise ValueError("empty closed walk")
            self.n = m
            self.ins = [_slot(spine, -self.word[k - 1]) for k in range(m)]
            self.outs = [_slot(spine, self.word[k]) for k in range(m)]
        else:
            self.n = m + 1
            self.ins = [start] + [_slot(spine, -x) for x in self.word]
            self.outs = [_slot(spine, x) for x in self.word] + [end]
        self._start, self._end = start, end
        self._rev = None

    def reversed(self) -> "_Walk":
        if self._rev is None:
            if self.closed:
                r = _Walk(self.spine, inverse(self.word), True)
            else:
                r = _Walk(self.spine, inverse(self.word), False, self._end, self._start)
            r._rev = self
            self._rev = r
        return self._rev

    def rev_index(self, k: int) -> int:
        """Index in the reversed walk of passage ``k``."""
        return (self.n - k) % self.n if self.closed else self.n - 1 - k

    def left(self, key: int, k: int) -> bool:
        """Is boundary point ``key`` on the left of passage ``k``?"""
        p, q = self.ins[k], self.outs[k]
        return (key - p) % self.M > (q - p) % self.M


def _walk(x: Path) -> _Walk:
    sp = x.surface.spine
    if isinstance(x, CurveClass):
        return _Walk(sp, x.word, True)
    return _Walk(sp, x.word, False, _corner_point(x.start, 0), _corner_point(x.end, 1))


class _Crossing(NamedTuple):
    i: int          # passage of X
    j: int          # passage of Y
    kind: str       # "T" transverse, "S" shared run, "O" shared run traversed oppositely
    sign: int       # +1 when Y crosses X from its right to its left
    end_left: bool  # for runs: Y lies on X's left inside the run


@dataclass
class _Meeting:
    crossings: list
    start_left: bool | None = None   # side of Y near X's start, if shared
    end_left: bool | None = None     # side of Y near X's end, if shared
    isotopic: bool = False


def _meet(X: _Walk, Y: _Walk) -> _Meeting:
    """All crossings of ``Y`` with ``X`` in minimal position."""
    res = _Meeting([])
    nX, nY = X.n, Y.n
    limit = nX + nY + 1
    for i in range(nX):
        pX, qX = X.ins[i], X.outs[i]
        for j in range(nY):
            pY, qY = Y.ins[j], Y.outs[j]
            if qX == qY:
                if pX == pY and not _is_corner(pX):
                    continue
                shared_start = pX == pY
                s_start = None if shared_start else X.left(pY, i)
                k, s_end, shared_end = 0, None, False
                while True:
                    if _is_corner(X.outs[(i + k) % nX]):
                        shared_end = True
                        break
                    k += 1
                    if k > limit:
                        break
                    a, b = (i + k) % nX, (j + k) % nY
                    if X.outs[a] != Y.outs[b]:
                        s_end = X.left(Y.outs[b], a)
                        break
                if k > limit:
                    continue
                if shared_start and shared_end:
                    res.isotopic = True
                elif shared_start:
                    res.start_left = s_end
                elif shared_end:
                    res.end_left = s_start
                elif s_start != s_end:
                    sign = 1 if (not s_start and s_end) else -1
                    res.crossings.append(_Crossing(i, j, "S", sign, s_end))
            elif qX == pY:
                if pX == qY and not _is_corner(pX):
                    continue
                shared_start = pX == qY
                s_start = None if shared_start else X.left(qY, i)
                k, s_end, shared_end = 0, None, False
                while True:
                    if _is_corner(X.outs[(i + k) % nX]):
                        shared_end = True
                        break
                    k += 1
                    if k > limit:
                        break
                    a, b = (i + k) % nX, (j - k) % nY
                    if X.outs[a] != Y.ins[b]:
                        s_end = X.left(Y.ins[b], a)
                        break
                if k > limit:
                    continue
                if shared_start and shared_end:
                    res.isotopic = True
                elif shared_start:
                    res.start_left = s_end
                elif shared_end:
                    res.end_left = s_start
                elif s_start != s_end:
                    sign = 1 if (not s_end and s_start) else -1
                    res.crossings.append(_Crossing(i, j, "O", sign, s_end))
            elif pX == pY or pX == qY:
                if _is_corner(pX):
                    # shared start point, immediate divergence
                    other = qY if pX == pY else pY
                    res.start_left = X.left(other, i)
            else:
                lp, lq = X.left(pY, i), X.left(qY, i)
                if lp != lq:
                    res.crossings.append(_Crossing(i, j, "T", 1 if lq else -1, lq))
    return res


def _ray_cmp(A: _Walk, a: int, B: _Walk, b: int) -> int:
    """Counterclockwise order of two strands leaving through the same slot.

    Strand ``(A, a)`` leaves the vertex through ``A.outs[a]`` and continues
    along ``A``.  Returns -1 when it comes first counterclockwise, that is
    when ``B`` runs on its left.
    """
    if A is B and a == b:
        return 0
    limit = A.n + B.n + 1
    for t in range(1, limit):
        ia, ib = a + t, b + t
        if A.closed:
            ia %= A.n
        if B.closed:
            ib %= B.n
        if ia >= A.n or ib >= B.n:
            break
        oa, ob = A.outs[ia], B.outs[ib]
        if oa != ob:
            return -1 if A.left(ob, ia) else 1
        if _is_corner(oa):
            break
    raise ValueError("strands run parallel forever; curves are not simple or not distinct")


class _Point(NamedTuple):
    """A point where a walk meets the vertex boundary, seen as a strand."""

    walk: _Walk
    passage: int
    outgoing: bool

    @property
    def key(self) -> int:
        return self.walk.outs[self.passage] if self.outgoing else self.walk.ins[self.passage]

    def ray(self) -> tuple[_Walk, int]:
        if self.outgoing:
            return self.walk, self.passage
        return self.walk.reversed(), self.walk.rev_index(self.passage)


def _point_cmp(u: _Point, v: _Point) -> int:
    (A, a), (B, b) = u.ray(), v.ray()
    return _ray_cmp(A, a, B, b)


def _order_rungs(X: _Walk, rungs: list) -> dict[int, list]:
    """Sort rungs ``(passage, right_point, payload)`` along each chord of X.

    Rungs crossing the same chord are disjoint, so their order from the
    chord's entry point equals the counterclockwise order of their right-hand
    endpoints.
    """
    groups: dict[int, list] = {}
    for i, pt, payload in rungs:
        groups.setdefault(i, []).append((pt, payload))

    out = {}
    for i, items in groups.items():
        p = X.ins[i]

        def cmp(u, v, p=p):
            du, dv = (u[0].key - p) % X.M, (v[0].key - p) % X.M
            if du != dv:
                return -1 if du < dv else 1
            return _point_cmp(u[0], v[0])

        items.sort(key=cmp_to_key(cmp))
        out[i] = [payload for _, payload in items]
    return out


def _right_point(X: _Walk, Y: _Walk, c: _Crossing) -> _Point:
    """Endpoint of Y's rung on X's right-hand side."""
    if c.kind == "T":
        return _Point(Y, c.j, not c.end_left)  # end_left says where Y.outs lies
    if c.kind == "S":
        return _Point(Y, c.j, not c.end_left)
    return _Point(Y, c.j, bool(c.end_left))


# ---------------------------------------------------------------------------
# public intersection API


def _check_same(x: Path, y: Path):
    if x.surface != y.surface:
        raise ValueError("objects live on different surfaces")


def _self_meeting(x: Path) -> int:
    W = _walk(x)
    return len(_meet(W, W).crossings) // 2


def self_intersection(x: Path) -> int:
    """Minimal number of interior self-crossings of ``x``."""
    if isinstance(x, CurveClass) and primitive_root(x.word)[1] > 1:
        raise ValueError("proper powers are not simple curves")
    return _self_meeting(x)


def is_simple(x: Path) -> bool:
    if isinstance(x, CurveClass) and primitive_root(x.word)[1] > 1:
        return False
    return _self_meeting(x) == 0


def geometric_intersection(x: Path, y: Path) -> int:
    """Minimal number of interior intersection points of ``x`` and ``y``."""
    _check_same(x, y)
    return len(_meet(_walk(x), _walk(y)).crossings)


def algebraic_intersection(x: CurveClass, y: CurveClass) -> int:
    """Signed count, +1 where ``y`` crosses ``x`` from right to left."""
    _check_same(x, y)
    return sum(c.sign for c in _meet(_walk(x), _walk(y)).crossings)


def minimal_position_signs(a: ArcClass, b: ArcClass) -> SignData:
    """Signs of ``b`` against ``a`` for arcs with common endpoints.

    Endpoint sign at the start is +1 when ``b`` leaves on the left of ``a``,
    at the end +1 when ``b`` arrives from the right of ``a``; interior signs
    are +1 where ``b`` crosses ``a`` from right to left.  In each case the
    tangent of ``a`` followed by the tangent of ``b`` is an oriented basis.
    """
    _check_same(a, b)
    if (a.start, a.end) != (b.start, b.end):
        raise ValueError("arcs must share their endpoints")
    if a.word == b.word:
        raise IsotopicArcs("arcs are isotopic rel endpoints")
    return _signs(_walk(a), _walk(b))


def minimal_position_signs_reversed(a: ArcClass, b: ArcClass) -> SignData:
    """Sign data after reversing the orientation of both arcs."""
    _check_same(a, b)
    if (a.start, a.end) != (b.start, b.end):
        raise ValueError("arcs must share their endpoints")
    if a.word == b.word:
        raise IsotopicArcs("arcs are isotopic rel endpoints")
    return _signs(_walk(a).reversed(), _walk(b).reversed())


def _signs(A: _Walk, B: _Walk) -> SignData:
    m = _meet(A, B)
    if m.isotopic or m.start_left is None or m.end_left is None:
        raise IsotopicArcs("arcs are isotopic rel endpoints")
    e1 = 1 if m.start_left else -1
    e2 = -1 if m.end_left else 1
    return SignData(tuple(c.sign for c in sorted(m.crossings)), (e1, e2))


def i_boundary(a: ArcClass, b: ArcClass) -> float:
    return minimal_position_signs(a, b).i_value


# ---------------------------------------------------------------------------
# reduction and construction


def reduce(surface: Surface, word: Sequence[int], *, closed: bool = True,
           start: int | None = None, end: int | None = None,
           require_simple: bool = False) -> Path:
    """Reduced representative of a raw edge path.

    Closed paths are cyclically reduced; arcs need ``start`` and ``end``
    corners and are freely reduced.
    """
    r = surface.spine.n_edges
    if any(not (1 <= abs(x) <= r) for x in word):
        raise ValueError("letter outside the spine")
    if closed:
        obj: Path = CurveClass(surface, cyclic_reduce(word))
    else:
        if start is None or end is None:
            raise ValueError("arcs need start and end corners")
        obj = ArcClass(surface, start, free_reduce(word), end)
    if require_simple and not is_simple(obj):
        raise ValueError(f"{obj!r} is not simple")
    return obj


# ---------------------------------------------------------------------------
# twisting


def _twist_word(X: _Walk, G: _Walk, h: int) -> list[int]:
    meeting = _meet(X, G)
    if not meeting.crossings:
        return list(X.word)
    rungs = []
    for c in meeting.crossings:
        rungs.append((c.i, _right_point(X, G, c), (c.j, -h * c.sign)))
    ordered = _order_rungs(X, rungs)
    out: list[int] = []
    gw = G.word
    for i in range(X.n):
        for j, e in ordered.get(i, ()):
            loop = gw[j:] + gw[:j]
            out.extend(loop if e > 0 else inverse(loop))
        if i < len(X.word):
            out.append(X.word[i])
    return out


def apply_twist(x: Path, gamma: CurveClass, handedness: int = 1) -> Path:
    """Image of ``x`` under a Dehn twist about ``gamma``.

    ``handedness=+1`` is the right-handed twist: a path meeting ``gamma``
    turns right onto it, goes once around and carries on.  Negative or
    larger exponents are applied as powers.
    """
    _check_same(x, gamma)
    if handedness == 0:
        return x
    if primitive_root(gamma.word)[1] > 1:
        raise ValueError("twist curve must be simple")
    G = _walk(gamma)
    X = _walk(x)
    for _ in range(abs(handedness)):
        word = _twist_word(X, G, 1 if handedness > 0 else -1)
        if isinstance(x, CurveClass):
            x = CurveClass(x.surface, word)
        else:
            x = ArcClass(x.surface, x.start, word, x.end)
        X = _walk(x)
    return x


def twist_word_raw(surface: Surface, word: Sequence[int], closed: bool, gamma: CurveClass,
                   h: int, start: int | None = None, end: int | None = None) -> list[int]:
    """Unreduced surgery word; exposed for the reduction oracle in tests."""
    sp = surface.spine
    if closed:
        X = _Walk(sp, tuple(word), True)
    else:
        X = _Walk(sp, tuple(word), False, _corner_point(start, 0), _corner_point(end, 1))
    return _twist_word(X, _walk(gamma), h)


# ---------------------------------------------------------------------------
# cutting along a curve


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass(frozen=True)
class CutPiece:
    euler: int
    components: frozenset   # boundary components of the page met by the piece

    @property
    def closed_off(self) -> bool:
        return not self.components


def _circle_points(walks: Sequence[_Walk]) -> list[_Point]:
    pts = [_Point(W, k, out) for W in walks for k in range(W.n) for out in (False, True)]
    pts.sort(key=cmp_to_key(lambda u, v: (u.key > v.key) - (u.key < v.key) or _point_cmp(u, v)))
    return pts


def cut_pieces(gamma: CurveClass) -> list[CutPiece]:
    """Pieces of the page cut along ``gamma``, with their Euler characteristics."""
    import bisect

    sp = gamma.surface.spine
    G = _walk(gamma)
    pts = _circle_points([G])
    N = len(pts)
    index = {(p.passage, p.outgoing): t for t, p in enumerate(pts)}
    keys = [p.key for p in pts]
    uf = _UnionFind(N)

    def before(t):
        return (t - 1) % N

    for k in range(G.n):
        u, v = index[(k, False)], index[(k, True)]
        uf.union(u, before(v))
        uf.union(before(u), v)
    regions = {uf.find(t) for t in range(N)}

    def gaps_at(label: int) -> list[int]:
        key = _slot(sp, label)
        lo, hi = bisect.bisect_left(keys, key), bisect.bisect_right(keys, key)
        if lo == hi:
            return [before(lo)]
        return [before(lo)] + list(range(lo, hi))

    bands = []
    for e in range(1, sp.n_edges + 1):
        g1, g2 = gaps_at(e), gaps_at(-e)
        k = len(g1) - 1
        for t in range(k + 1):
            bands.append((g1[t], g2[k - t]))
    region_of_band = [uf.find(a) for a, _ in bands]
    for a, b in bands:
        uf.union(a, b)
    comp_of = {}
    for c in range(sp.n_corners):
        key = _corner_point(c, 0)
        t = before(bisect.bisect_right(keys, key))
        comp_of.setdefault(uf.find(t), set()).add(sp.corner_component[c])
    pieces = []
    roots = sorted({uf.find(t) for t in range(N)})
    for root in roots:
        nv = sum(1 for reg in regions if uf.find(reg) == root)
        ne = sum(1 for reg in region_of_band if uf.find(reg) == root)
        pieces.append(CutPiece(nv - ne, frozenset(comp_of.get(root, ()))))
    return pieces


def is_separating(gamma: CurveClass) -> bool:
    """Does cutting the page along ``gamma`` disconnect it?"""
    return len(cut_pieces(gamma)) > 1


def is_boundary_parallel(gamma: CurveClass) -> bool:
    sp = gamma.surface.spine
    target = gamma.unoriented
    return any(CurveClass(gamma.surface, sp.boundary_word(j)).unoriented == target
               for j in range(sp.n_boundary))


# ---------------------------------------------------------------------------
# regular neighbourhoods of curve configurations


def neighborhood_boundary(curves: Sequence[CurveClass]) -> list[CurveClass]:
    """Boundary curves of a regular neighbourhood of a connected union of curves.

    The union is drawn in minimal position; curves crossing a common chord
    of a third one must be disjoint from each other (true for chains).
    Inessential boundary circles are dropped.
    """
    if not curves:
        return []
    surface = curves[0].surface
    walks = [_walk(c) for c in curves]
    if len(curves) == 1:
        return [curves[0], curves[0].reversed()]
    crossings = []                       # (a, b, sign)
    rungs: list[list] = [[] for _ in curves]
    for a in range(len(curves)):
        for b in range(a + 1, len(curves)):
            A, B = walks[a], walks[b]
            for c in _meet(A, B).crossings:
                x = len(crossings)
                crossings.append((a, b, c.sign))
                rungs[a].append((c.i, _right_point(A, B, c), (c.i, x)))
                if c.kind == "T":
                    pt = _Point(A, c.i, B.left(A.ins[c.i], c.j))
                elif c.kind == "S":
                    pt = _Point(A, c.i, bool(c.end_left))
                else:
                    pt = _Point(A, c.i, not c.end_left)
                rungs[b].append((c.j, pt, (c.j, x)))
    seqs = []
    where: dict[tuple[int, int], int] = {}
    for a, W in enumerate(walks):
        ordered = _order_rungs(W, rungs[a])
        seq = [item for i in sorted(ordered) for item in ordered[i]]
        for u, (_, x) in enumerate(seq):
            where[(a, x)] = u
        seqs.append(seq)
    if any(not s for s in seqs):
        raise ValueError("curve configuration is not connected")

    def rotation_at(x):
        a, b, s = crossings[x]
        if s > 0:
            return [(a, 1), (b, 1), (a, -1), (b, -1)]
        return [(a, 1), (b, -1), (a, -1), (b, 1)]

    def forward_word(a, u, v):
        seq, word = seqs[a], walks[a].word
        iu, iv = seq[u][0], seq[v][0]
        m = len(word)
        length = (iv - iu) % m
        if iv == iu and v <= u:
            length = m
        return [word[(iu + t) % m] for t in range(length)]

    seen = set()
    faces = []
    for x in range(len(crossings)):
        for he in rotation_at(x):
            if (x, he) in seen:
                continue
            face: list[int] = []
            cur = (x, he)
            while cur not in seen:
                seen.add(cur)
                y, (a, d) = cur
                u = where[(a, y)]
                seq = seqs[a]
                v = (u + d) % len(seq)
                z = seq[v][1]
                if d > 0:
                    face += forward_word(a, u, v)
                else:
                    face += inverse(forward_word(a, v, u))
                rot = rotation_at(z)
                back = rot.index((a, -d))
                cur = (z, rot[(back + 1) % 4])
            faces.append(face)
    out = []
    for f in faces:
        w = cyclic_reduce(f)
        if w:
            out.append(CurveClass(surface, w))
    return out


# ---------------------------------------------------------------------------
# standard curve systems


def _chain_words(g: int) -> list[Word]:
    """Chain a_1..a_2g on the canonical spine.

    ``a_1 = x_1``, ``a_{2k} = y_k`` and the link
    ``a_{2k-1} = y_{k-1}^-1 x_{k-1}^-1 y_{k-1} x_k`` runs through two
    consecutive handles.
    """
    words: list[Word] = []
    for k in range(1, g + 1):
        x, y = 2 * k - 1, 2 * k
        if k == 1:
            words.append((x,))
        else:
            px, py = x - 2, y - 2
            words.append((-py, -px, py, x))
        words.append((y,))
    return words


def standard_curve_system(s: Surface) -> NamedCurveSystem:
    sp = s.spine
    chain = tuple(CurveClass(s, w) for w in _chain_words(s.genus))
    bp = tuple(CurveClass(s, sp.boundary_word(j)) for j in range(sp.n_boundary)
               if sp.n_edges)
    k0 = sp.marked_corners[0]
    m = len(sp.rotation)
    # co-cores crossing each ribbon once, then chords to the other marked corners
    duals = [ArcClass(s, (sp.position[e] - 1) % m, (), sp.position[e])
             for e in range(1, sp.n_edges + 1)]
    duals += [ArcClass(s, k0, (), kj) for kj in sp.marked_corners[1:]]
    return NamedCurveSystem(chain, bp, tuple(duals))
