"""Certificates for the contact structure carried by an open book.

A positive factorization of the monodromy certifies Stein fillability; a
sobering arc certifies overtwistedness.  Searches are bounded, so a missing
certificate never proves anything.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .books import OpenBook, destabilize
from .curves import (ArcClass, IsotopicArcs, SignData, cut_pieces, is_simple,
                     minimal_position_signs, minimal_position_signs_reversed)
from .mcg import (Letter, TwistWord, act_on, apply_twist, chain_inside, equal, groupoid_map,
                  is_identity, positify)


class ConventionError(RuntimeError):
    """Both certificates were found for one open book."""


@dataclass(frozen=True)
class Rejection:
    reason: str
    detail: str = ""

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"kind": "rejection", "reason": self.reason, "detail": self.detail}


@dataclass(frozen=True)
class SteinCertificate:
    witness: TwistWord
    transcript: tuple[str, ...]

    def to_json(self) -> dict:
        return {"kind": "positive_factorization", "word": [repr(L) for L in self.witness],
                "transcript": list(self.transcript)}


@dataclass(frozen=True)
class OvertwistedCertificate:
    arc: ArcClass
    sign_data: SignData
    i_value: float
    image: ArcClass | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {"kind": "sobering", "arc": arc_json(self.arc),
                "signs": {"endpoints": list(self.sign_data.endpoints),
                          "interior": list(self.sign_data.interior)},
                "i": self.i_value}


def arc_json(a: ArcClass) -> list:
    return [f"corner {a.start}"] + a.names() + [f"corner {a.end}"]


# ---------------------------------------------------------------------------
# positive factorizations


def _letter_needs_chain(L: Letter) -> bool:
    return any(p.closed_off for p in cut_pieces(L.curve))


def check_positive_factorization(ob: OpenBook, candidate: TwistWord, *,
                                 budget: int = 4000) -> SteinCertificate | Rejection:
    if candidate.surface != ob.page:
        return Rejection("surface-mismatch", "candidate lives on another page")
    transcript = []
    for k, L in enumerate(candidate.letters):
        if L.power < 0:
            return Rejection("negative-letter", f"letter {k + 1} is {L!r}")
    letters: list[Letter] = []
    for k, L in enumerate(candidate.letters):
        if not _letter_needs_chain(L):
            letters.append(L)
            continue
        try:
            chain = chain_inside(L.curve, budget=budget)
        except ValueError as exc:
            return Rejection("separating-not-substitutable", f"letter {k + 1}: {exc}")
        power = 2 * len(chain) + 2
        letters.extend([Letter(c) for c in chain] * power)
        transcript.append(f"letter {k + 1} {L!r} cuts off a closed piece; replaced by the "
                          f"{len(chain)}-chain relation ({len(chain) * power} positive letters)")
    witness = TwistWord(ob.page, tuple(letters))
    if not equal(witness, ob.monodromy):
        return Rejection("inequality", "candidate differs from the monodromy on a filling arc")
    m = groupoid_map(witness)
    transcript.append(f"all {len(witness)} letters positive")
    transcript.append(f"equal on {len(m.loops)} filling loops and {len(m.chords)} corner chords")
    return SteinCertificate(witness, tuple(transcript))


def _rewrites(word: tuple[Letter, ...], max_length: int):
    """Words equal to ``word`` one elementary move away.

    Moves creating a letter curve longer than ``max_length`` are skipped.
    """
    n = len(word)
    for k in range(n - 1):
        a, b = word[k], word[k + 1]
        if a.curve == b.curve:
            if a.power != b.power:
                yield word[:k] + word[k + 2:], f"cancel letters {k + 1},{k + 2}"
            continue
        # a b = (a b a^-1) a  and  a b = b (b^-1 a b)
        c = apply_twist(b.curve, a.curve, a.power)
        if len(c.word) <= max_length:
            yield word[:k] + (Letter(c, b.power), a) + word[k + 2:], \
                f"push {a!r} right past letter {k + 2}"
        c = apply_twist(a.curve, b.curve, -b.power)
        if len(c.word) <= max_length:
            yield word[:k] + (b, Letter(c, a.power)) + word[k + 2:], \
                f"push {b!r} left past letter {k + 1}"


def search_stein_certificate(ob: OpenBook, budget: int = 3, *, max_nodes: int = 2000,
                             max_curve_length: int | None = None) -> SteinCertificate | Rejection:
    """Breadth-first rewriting towards an all-positive word.

    Moves are cancellation of inverse letters and the conjugation relation
    applied to neighbouring letters; on one-boundary pages the chain-relation
    normal form is tried as well.  ``budget`` bounds the number of moves,
    ``max_nodes`` the words visited and ``max_curve_length`` the length of
    any letter curve (default: twice the longest one in the monodromy, at
    least 12).
    """
    s = ob.page
    start = ob.monodromy.letters
    if is_identity(ob.monodromy):
        return check_positive_factorization(ob, TwistWord(s, ()))
    if max_curve_length is None:
        max_curve_length = max([12] + [2 * len(L.curve.word) for L in start])
    seen = {start}
    queue = deque([(start, ())])
    nodes = 0
    reason = f"no positive word within {budget} moves"
    while queue and nodes <= max_nodes:
        word, log = queue.popleft()
        if all(L.power > 0 for L in word):
            cert = check_positive_factorization(ob, TwistWord(s, word))
            if cert:
                return SteinCertificate(cert.witness, log + cert.transcript)
        if len(log) >= budget:
            continue
        for new, note in _rewrites(word, max_curve_length):
            if new not in seen:
                seen.add(new)
                nodes += 1
                if nodes > max_nodes:
                    reason = f"node limit {max_nodes} reached"
                    break
                queue.append((new, log + (note,)))
    if s.boundary_count == 1 and s.genus >= 1 and not ob.monodromy.is_positive:
        try:
            pos = positify(ob.monodromy)
        except ValueError:
            pos = None
        if pos is not None and pos.is_positive:
            cert = check_positive_factorization(ob, pos)
            if cert:
                return SteinCertificate(cert.witness,
                                        ("chain-relation normal form",) + cert.transcript)
    return Rejection("not-found", reason)


# ---------------------------------------------------------------------------
# sobering arcs


def check_sobering(ob: OpenBook, b: ArcClass) -> OvertwistedCertificate | Rejection:
    if b.surface != ob.page:
        return Rejection("surface-mismatch", "arc lives on another page")
    if not is_simple(b):
        return Rejection("not-embedded", "arc is not properly embedded")
    image = act_on(ob.monodromy, b)
    try:
        sd = minimal_position_signs(b, image)
        rev = minimal_position_signs_reversed(b, image)
    except IsotopicArcs:
        return Rejection("inconclusive", "arc and its image are isotopic")
    if rev.endpoints != sd.endpoints[::-1] or sorted(rev.interior) != sorted(sd.interior):
        raise ConventionError(f"sign data of {b!r} depends on its orientation")
    i = sd.i_value
    if i < 0:
        return Rejection("negative-i", f"i(b, phi(b)) = {i}")
    if 1 in sd.interior:
        return Rejection("positive-intersection", f"interior signs {list(sd.interior)}")
    return OvertwistedCertificate(b, sd, i, image)


def cocore_arcs(ob: OpenBook) -> list[ArcClass]:
    """Co-cores of the spine ribbons, as chords around each departure slot."""
    sp = ob.page.spine
    out = []
    for e in range(sp.n_edges, 0, -1):
        p = sp.position[e]
        before, after = (p - 1) % len(sp.rotation), p
        out.append(ArcClass(ob.page, before, (), after))
        out.append(ArcClass(ob.page, after, (), before))
    return out


def _letters_in_order(r: int):
    return [x for k in range(1, r + 1) for x in (k, -k)]


def _reduced_words(alphabet, length: int):
    """Freely reduced words of one length, in lexicographic order of ``alphabet``."""
    if length == 0:
        yield ()
        return
    word: list[int] = []

    def grow():
        if len(word) == length:
            yield tuple(word)
            return
        for x in alphabet:
            if word and word[-1] == -x:
                continue
            word.append(x)
            yield from grow()
            word.pop()

    yield from grow()


def enumerate_arcs(ob: OpenBook, max_length: int, *, stats: dict | None = None):
    """Simple arcs between marked corners, by length then edge indices.

    ``stats["candidates"]`` counts every reduced word examined.
    """
    s = ob.page
    marks = s.spine.marked_corners
    alphabet = _letters_in_order(s.rank)
    stats = stats if stats is not None else {}
    stats.setdefault("candidates", 0)
    for length in range(max_length + 1):
        for ka in marks:
            for kb in marks:
                for word in _reduced_words(alphabet, length):
                    if ka == kb and not word:
                        continue
                    stats["candidates"] += 1
                    a = ArcClass(s, ka, word, kb)
                    if is_simple(a):
                        yield a


def search_sobering_arc(ob: OpenBook, complexity_budget: int = 4, *,
                        max_candidates: int = 100000) -> OvertwistedCertificate | Rejection:
    """Look for a sobering arc: ribbon co-cores first, then all arcs by length.

    The enumeration stops after ``max_candidates`` edge words.
    """
    for a in cocore_arcs(ob):
        cert = check_sobering(ob, a)
        if cert:
            return cert
    stats: dict = {}
    for a in enumerate_arcs(ob, complexity_budget, stats=stats):
        cert = check_sobering(ob, a)
        if cert:
            return cert
        if stats["candidates"] >= max_candidates:
            return Rejection("not-found", f"candidate limit {max_candidates} reached before "
                                          f"length {complexity_budget} was exhausted")
    return Rejection("not-found", f"no sobering arc of length <= {complexity_budget}")


def _cancel(letters: tuple, rounds: int) -> tuple:
    for _ in range(rounds):
        for k in range(len(letters) - 1):
            a, b = letters[k], letters[k + 1]
            if a.curve == b.curve and a.power != b.power:
                letters = letters[:k] + letters[k + 2:]
                break
        else:
            break
    return letters


@dataclass(frozen=True)
class NegativeStabilization:
    arc: ArcClass          # co-core of the stabilizing handle
    edge: int
    destabilized: OpenBook


def detect_negative_stabilization(ob: OpenBook, budget: int = 1) -> NegativeStabilization | Rejection:
    """Find a handle whose only crossing letter is a negative twist running over it once.

    Handles are tried newest first.  With ``budget > 0`` the word is also
    scanned after up to ``budget`` rounds of cancelling inverse letters.
    """
    s = ob.page
    letters = _cancel(ob.monodromy.letters, budget)
    if letters != ob.monodromy.letters:
        ob = OpenBook(s, TwistWord(s, letters), ob.provenance)
    for e in range(s.rank, 0, -1):
        users = [L for L in letters if e in map(abs, L.curve.word)]
        if len(users) != 1:
            continue
        L = users[0]
        if L.power != -1 or [abs(x) for x in L.curve.word].count(e) != 1:
            continue
        p = s.spine.position[e]
        arc = ArcClass(s, (p - 1) % len(s.spine.rotation), (), p)
        down = destabilize(ob, e)
        if down.page.boundary_count < 1:
            continue
        return NegativeStabilization(arc, e, down)
    return Rejection("not-found", "no negatively stabilized handle in the word")


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class FillabilityReport:
    stein: SteinCertificate | None
    overtwisted: OvertwistedCertificate | None
    note: str

    @property
    def stein_certified(self) -> bool:
        return self.stein is not None

    @property
    def overtwisted_certified(self) -> bool:
        return self.overtwisted is not None

    @property
    def inconclusive(self) -> bool:
        return not (self.stein_certified or self.overtwisted_certified)

    @property
    def verdict(self) -> str:
        if self.stein_certified:
            return "stein fillable"
        if self.overtwisted_certified:
            return "overtwisted"
        return "inconclusive"

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "stein_certified": self.stein_certified,
                "overtwisted_certified": self.overtwisted_certified,
                "inconclusive": self.inconclusive,
                "certificate": (self.stein or self.overtwisted).to_json()
                if not self.inconclusive else None,
                "note": self.note}


_NOTE = ("Stein fillable implies strongly, then weakly fillable, then tight; a sobering arc "
         "implies overtwisted. Missing certificates decide nothing.")


def fillability_report(ob: OpenBook, stein_budget: int = 3, arc_budget: int = 4) -> FillabilityReport:
    stein = search_stein_certificate(ob, stein_budget)
    ot = search_sobering_arc(ob, arc_budget)
    stein = stein if isinstance(stein, SteinCertificate) else None
    ot = ot if isinstance(ot, OvertwistedCertificate) else None
    if stein and ot:
        raise ConventionError("open book received both a Stein and an overtwisted certificate")
    return FillabilityReport(stein, ot, _NOTE)
