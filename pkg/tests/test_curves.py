import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from _gen import random_arc, random_curve
from openbook import (ArcClass, CurveClass, IsotopicArcs, algebraic_intersection, apply_twist,
                      cut_pieces, geometric_intersection, i_boundary, is_boundary_parallel,
                      is_separating, is_simple, make_surface, minimal_position_signs,
                      neighborhood_boundary, reduce, self_intersection, standard_curves)
from openbook.curves import twist_word_raw
from openbook.mcg import homology_class, intersection_form
from openbook.words import canonical_cyclic, free_reduce

seeds = st.integers(0, 10 ** 9)


def chain(g, n=1):
    s = make_surface(g, n)
    return s, standard_curves(s).chain


# --- intersection numbers ---------------------------------------------------

def test_chain_examples():
    s, a = chain(2)
    assert geometric_intersection(a[0], a[1]) == 1
    assert geometric_intersection(a[0], a[2]) == 0
    assert geometric_intersection(a[0], a[0]) == 0
    assert algebraic_intersection(a[0], a[1]) == 1
    assert algebraic_intersection(a[1], a[0]) == -1
    assert algebraic_intersection(a[0], a[2]) == 0


@pytest.mark.parametrize("g", [1, 2, 3])
def test_chain_pattern(g):
    _, a = chain(g)
    for i, j in itertools.combinations(range(2 * g), 2):
        assert geometric_intersection(a[i], a[j]) == (1 if j - i == 1 else 0)


def test_twisted_chain_curve():
    _, (a1, a2) = chain(1)
    assert geometric_intersection(apply_twist(a1, a2, 1), a1) == 1
    assert apply_twist(a1, a2, 1).word == canonical_cyclic((-2, 1))
    # i(D^n x, x) = |n| i(x, a)^2
    assert geometric_intersection(apply_twist(a1, a2, 1), apply_twist(a1, a2, -1)) == 2


def _torus_class(c):
    v = homology_class(c)
    return int(v[0]), int(v[1])


@given(seeds)
def test_torus_intersection_is_determinant(seed):
    # on the one-holed torus simple curves meet |det| times
    rng = random.Random(seed)
    s = make_surface(1, 1)
    x, y = random_curve(rng, s, 4), random_curve(rng, s, 4)
    (p, q), (r, t) = _torus_class(x), _torus_class(y)
    if is_boundary_parallel(x) or is_boundary_parallel(y):
        return
    assert geometric_intersection(x, y) == abs(p * t - q * r)
    assert algebraic_intersection(x, y) == p * t - q * r


@given(seeds, st.integers(-3, 3))
def test_twist_power_formula(seed, n):
    rng = random.Random(seed)
    s = make_surface(*rng.choice([(1, 1), (1, 2), (2, 1)]))
    x, gamma = random_curve(rng, s), random_curve(rng, s)
    k = geometric_intersection(x, gamma)
    assert geometric_intersection(apply_twist(x, gamma, n), x) == abs(n) * k * k


@given(seeds)
def test_symmetry_invariance_inverse(seed):
    rng = random.Random(seed)
    s = make_surface(*rng.choice([(1, 1), (1, 2), (2, 1), (0, 3)]))
    x, y, g = (random_curve(rng, s) for _ in range(3))
    e = rng.choice((1, -1))
    i = geometric_intersection(x, y)
    assert i == geometric_intersection(y, x)
    assert abs(algebraic_intersection(x, y)) <= i
    assert algebraic_intersection(x, y) == -algebraic_intersection(y, x)
    assert geometric_intersection(apply_twist(x, g, e), apply_twist(y, g, e)) == i
    assert apply_twist(apply_twist(x, g, e), g, -e) == x
    # the twist does not see the orientation of its curve
    assert apply_twist(x, g, e) == apply_twist(x, g.reversed(), e)


@given(seeds)
def test_algebraic_matches_intersection_form(seed):
    rng = random.Random(seed)
    s = make_surface(*rng.choice([(1, 2), (2, 1), (2, 2)]))
    x, y = random_curve(rng, s), random_curve(rng, s)
    J = intersection_form(s)
    assert algebraic_intersection(x, y) == int(homology_class(x) @ J @ homology_class(y))


@given(seeds)
def test_twisting_preserves_simplicity(seed):
    rng = random.Random(seed)
    s = make_surface(*rng.choice([(1, 1), (2, 1), (1, 3)]))
    x = random_curve(rng, s, 5)
    a = random_arc(rng, s, 3)
    assert is_simple(x) and self_intersection(x) == 0
    assert is_simple(a)


def test_nonsimple_curves_detected():
    s = make_surface(1, 1)
    # x x y is the simple (2, 1) curve; x x y y carries a non-primitive class
    assert is_simple(CurveClass(s, (1, 1, 2)))
    assert self_intersection(CurveClass(s, (1, 1, 2, 2))) > 0
    with pytest.raises(ValueError):
        apply_twist(CurveClass(s, (1,)), CurveClass(s, (1, 1)))


def test_fixed_by_own_twist_and_disjoint_twists():
    _, a = chain(2)
    assert apply_twist(a[0], a[0], 1) == a[0]
    assert apply_twist(a[0], a[2], -1) == a[0]


# --- reduction --------------------------------------------------------------

def _all_reductions(word, closed):
    """Every terminal word reachable by removing cancelling pairs in any order."""
    seen, out = set(), set()
    stack = [tuple(word)]
    while stack:
        w = stack.pop()
        if w in seen:
            continue
        seen.add(w)
        n = len(w)
        pairs = [(i, i + 1) for i in range(n - 1) if w[i] == -w[i + 1]]
        if closed and n > 1 and w[0] == -w[-1]:
            pairs.append((n - 1, 0))
        if not pairs:
            out.add(canonical_cyclic(w) if closed else w)
        for i, j in pairs:
            if j == 0:
                stack.append(w[1:-1])
            else:
                stack.append(w[:i] + w[j + 1:])
    return out


def test_reduce_examples():
    s = make_surface(1, 2)
    assert reduce(s, (1, -1, 3)).word == (3,)
    a1 = standard_curves(s).chain[0]
    assert reduce(s, a1.word) == a1
    arc = reduce(s, (2, 1, -1), closed=False, start=0, end=4)
    assert isinstance(arc, ArcClass) and arc.word == (2,)
    with pytest.raises(ValueError):
        reduce(s, (1, 1, 2, 2), require_simple=True)
    with pytest.raises(ValueError):
        reduce(s, (9,))


@given(seeds)
def test_twist_words_reduce_confluently(seed):
    rng = random.Random(seed)
    s = make_surface(*rng.choice([(1, 1), (1, 2), (0, 3)]))
    x, g = random_curve(rng, s, 1), random_curve(rng, s, 1)
    raw = twist_word_raw(s, x.word, True, g, rng.choice((1, -1)))
    if len(raw) > 12:
        return
    finals = _all_reductions(raw, True)
    assert len(finals) == 1
    img = apply_twist(x, g, 1 if raw == twist_word_raw(s, x.word, True, g, 1) else -1)
    assert finals == {img.word}
    assert reduce(s, raw).word == img.word


@given(seeds)
def test_arc_twist_words_reduce_confluently(seed):
    rng = random.Random(seed)
    s = make_surface(*rng.choice([(1, 1), (1, 2), (0, 3)]))
    a, g = random_arc(rng, s, 0), random_curve(rng, s, 1)
    h = rng.choice((1, -1))
    raw = twist_word_raw(s, a.word, False, g, h, a.start, a.end)
    if len(raw) > 12:
        return
    assert _all_reductions(raw, False) == {free_reduce(raw)}
    assert apply_twist(a, g, h).word == free_reduce(raw)


# --- arcs and signs ---------------------------------------------------------

def test_annulus_signs():
    A = make_surface(0, 2)
    core = CurveClass(A, (1,))
    b = ArcClass(A, 0, (), 1)
    neg = minimal_position_signs(b, apply_twist(b, core, -1))
    pos = minimal_position_signs(b, apply_twist(b, core, 1))
    assert neg.endpoints == (1, 1) and neg.interior == ()
    assert pos.endpoints == (-1, -1)
    assert i_boundary(b, apply_twist(b, core, -1)) == 1
    assert i_boundary(b, apply_twist(b, core, 1)) == -1


def test_isotopic_arcs_have_no_signs():
    A = make_surface(0, 2)
    b = ArcClass(A, 0, (), 1)
    with pytest.raises(IsotopicArcs):
        minimal_position_signs(b, b)
    with pytest.raises(ValueError):
        minimal_position_signs(b, ArcClass(A, 1, (), 0))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_power_twist_signs_all_agree(k):
    # in the universal cover b and D^-k(b) are straight segments: every sign is the same
    A = make_surface(0, 2)
    core = CurveClass(A, (1,))
    b = ArcClass(A, 0, (), 1)
    neg = minimal_position_signs(b, apply_twist(b, core, -k))
    assert neg.endpoints == (1, 1) and neg.interior == (1,) * (k - 1)
    pos = minimal_position_signs(b, apply_twist(b, core, k))
    assert pos.endpoints == (-1, -1) and pos.interior == (-1,) * (k - 1)


@given(seeds)
def test_reversal_swaps_endpoint_signs(seed):
    from openbook.curves import minimal_position_signs_reversed
    rng = random.Random(seed)
    s = make_surface(*rng.choice([(0, 2), (1, 1), (1, 2)]))
    b = random_arc(rng, s, 1)
    c = apply_twist(b, random_curve(rng, s, 1), rng.choice((1, -1)))
    if c == b:
        return
    sd, rev = minimal_position_signs(b, c), minimal_position_signs_reversed(b, c)
    assert rev.endpoints == sd.endpoints[::-1]
    assert sorted(rev.interior) == sorted(sd.interior)
    assert len(sd.interior) == geometric_intersection(b, c)


# --- cutting ----------------------------------------------------------------

def test_separating_examples():
    s, a = chain(1)
    assert not is_separating(a[0])
    d = standard_curves(s).boundary_parallel[0]
    assert is_separating(d) and is_boundary_parallel(d)
    s2, b = chain(2)
    (sep,) = neighborhood_boundary(list(b[:2]))
    assert is_separating(sep) and not is_boundary_parallel(sep)
    assert any(p.closed_off and p.euler == -1 for p in cut_pieces(sep))
    (d2,) = neighborhood_boundary(list(b))
    assert is_boundary_parallel(d2)


def test_chain_boundaries_on_two_holed_torus():
    s = make_surface(1, 2)
    a1, a2 = standard_curves(s).chain
    a3 = CurveClass(s, (1, 3))
    bd = neighborhood_boundary([a1, a2, a3])
    assert len(bd) == 2 and all(is_boundary_parallel(c) for c in bd)


@given(seeds)
def test_cut_pieces_euler_sum(seed):
    rng = random.Random(seed)
    s = make_surface(*rng.choice([(1, 1), (1, 2), (2, 1), (0, 3), (2, 2)]))
    c = random_curve(rng, s, 3)
    pieces = cut_pieces(c)
    assert sum(p.euler for p in pieces) == s.euler_characteristic()
    assert len(pieces) in (1, 2)
    comps = [set(p.components) for p in pieces]
    assert set().union(*comps) == set(range(s.boundary_count))
    # homologically nontrivial curves never separate
    if np.any(homology_class(c)) and not any(len(p.components) == 0 for p in pieces):
        assert len(pieces) == 1 or s.boundary_count > 1


def test_mismatched_surfaces():
    a = standard_curves(make_surface(1, 1)).chain[0]
    b = standard_curves(make_surface(1, 2)).chain[0]
    with pytest.raises(ValueError):
        geometric_intersection(a, b)
