import random

import pytest
from hypothesis import given, strategies as st

from _gen import PAGES, random_arc, random_book, random_curve
from openbook import (ArcClass, CurveClass, Letter, OpenBook, TwistWord, connect_binding,
                      destabilize, disk_book, equal, first_homology, hopf_band, identity,
                      is_homology_sphere, make_open_book, make_surface, murasugi_sum,
                      page_surgery, stabilize, standard_curves, twist)
from openbook.books import group_string
from openbook.snf import abelian_invariants

seeds = st.integers(0, 10 ** 9)


def group(ob):
    h = first_homology(ob)
    return h.rank, h.torsion


def direct_sum(g1, g2):
    tor = list(g1[1]) + list(g2[1])
    rels = [[d if i == j else 0 for j in range(len(tor))] for i, d in enumerate(tor)]
    rank, torsion = abelian_invariants(len(tor), rels)
    return g1[0] + g2[0] + rank, tuple(torsion)


def lens(m):
    A = make_surface(0, 2)
    return make_open_book(A, twist(CurveClass(A, (1,)), m))


def trefoil():
    s = make_surface(1, 1)
    a1, a2 = standard_curves(s).chain
    return make_open_book(s, twist(a1) * twist(a2))


def test_basic_books():
    assert group(disk_book()) == (0, ())
    assert group(make_open_book(make_surface(0, 2))) == (1, ())
    assert is_homology_sphere(trefoil())
    assert group(hopf_band(1)) == group(hopf_band(-1)) == (0, ())


@pytest.mark.parametrize("m, expected", [(0, (1, ())), (1, (0, ())), (-1, (0, ())),
                                         (2, (0, (2,))), (-3, (0, (3,))), (5, (0, (5,)))])
def test_lens_family(m, expected):
    assert group(lens(m)) == expected


def test_lens_presentation_has_two_binding_relations():
    h = first_homology(lens(3))
    assert len(h.deltas) == 2
    assert not is_homology_sphere(lens(3))
    assert str(h) == "Z/3"
    assert group_string(2, (2, 4)) == "Z^2 + Z/2 + Z/4"


def test_book_invariants():
    s = make_surface(1, 1)
    with pytest.raises(ValueError):
        OpenBook(s, identity(make_surface(1, 2)))
    with pytest.raises(ValueError):
        hopf_band(2)


def test_stabilize_disk_gives_hopf_bands():
    D = disk_book()
    for e in (1, -1):
        S = stabilize(D, ArcClass(D.page, 0, (), 0), e)
        H = hopf_band(e)
        # the new handle runs backwards relative to the annulus edge
        assert tuple(-x for x in S.page.spine.rotation) == H.page.spine.rotation
        flipped = TwistWord(H.page, tuple(Letter(CurveClass(H.page, tuple(-x for x in L.curve.word)),
                                                 L.power) for L in S.monodromy.letters))
        assert equal(flipped, H.monodromy)


def test_stabilize_hopf_band():
    H = hopf_band(-1)
    chord = ArcClass(H.page, 0, (), 1)
    merged = stabilize(H, chord, -1)
    assert (merged.page.genus, merged.page.boundary_count) == (1, 1)
    around = ArcClass(H.page, 0, (1,), 0)
    split = stabilize(H, around, -1)
    assert (split.page.genus, split.page.boundary_count) == (0, 3)
    for S in (merged, split):
        assert S.page.euler_characteristic() == H.page.euler_characteristic() - 1
        assert group(S) == group(H)
        assert "stabilize -" in S.provenance[-1]


def test_two_stabilizations_give_trefoil_page():
    D = disk_book()
    H = stabilize(D, ArcClass(D.page, 0, (), 0), 1)
    S = stabilize(H, ArcClass(H.page, 0, (), 1), 1)
    assert (S.page.genus, S.page.boundary_count) == (1, 1)
    assert S.monodromy.is_positive and len(S.monodromy) == 2
    assert is_homology_sphere(S)


def test_stabilization_errors():
    H = hopf_band(1)
    with pytest.raises(ValueError):
        stabilize(H, ArcClass(H.page, 0, (), 1), 0)
    with pytest.raises(ValueError):
        stabilize(H, ArcClass(make_surface(1, 1), 0, (1,), 0), 1)


def test_destabilize_roundtrip():
    T = trefoil()
    b = standard_curves(T.page).duals[0]
    S = stabilize(T, b, -1)
    back = destabilize(S, S.page.rank)
    assert back.page == T.page
    assert equal(TwistWord(T.page, back.monodromy.letters), T.monodromy)
    twice = make_open_book(T.page, T.monodromy * T.monodromy)
    with pytest.raises(ValueError):
        destabilize(twice, 1)


def test_hopf_plumbing_is_trefoil():
    H = hopf_band(1)
    r = ArcClass(H.page, 0, (), 1)
    T = murasugi_sum(H, r, H, r)
    assert (T.page.genus, T.page.boundary_count) == (1, 1)
    assert is_homology_sphere(T)
    assert T.monodromy.is_positive and len(T.monodromy) == 2


def test_sum_with_disk_is_trivial():
    T = trefoil()
    D = disk_book()
    r = standard_curves(T.page).duals[0]
    out = murasugi_sum(T, r, D, ArcClass(D.page, 0, (), 0))
    assert out.page == T.page and out.monodromy == T.monodromy


def test_page_surgery():
    A = make_open_book(make_surface(0, 2))
    core = CurveClass(A.page, (1,))
    plus = page_surgery(A, core, 1)
    assert plus.monodromy == twist(core, -1) and is_homology_sphere(plus)
    minus = page_surgery(A, core, -1)
    assert minus.monodromy == twist(core, 1) and is_homology_sphere(minus)
    with pytest.raises(ValueError):
        page_surgery(A, core, 2)


@pytest.mark.parametrize("g, n", [(0, 2), (0, 3), (1, 2), (2, 3)])
def test_connect_binding(g, n):
    ob = make_open_book(make_surface(g, n))
    out = connect_binding(ob)
    assert out.page.boundary_count == 1
    assert len(out.monodromy) == n - 1 and out.monodromy.is_positive
    assert group(out) == group(ob)
    assert len(out.provenance) == n - 1


def test_connect_binding_already_connected():
    T = trefoil()
    assert connect_binding(T) == T


@given(seeds)
def test_stabilization_invariance(seed):
    rng = random.Random(seed)
    ob = random_book(rng)
    a = random_arc(rng, ob.page, 2)
    for e in (1, -1):
        S = stabilize(ob, a, e)
        assert group(S) == group(ob)
        assert S.page.euler_characteristic() == ob.page.euler_characteristic() - 1


@given(seeds)
def test_murasugi_additivity(seed):
    rng = random.Random(seed)
    o1, o2 = random_book(rng, PAGES[:5], 3), random_book(rng, PAGES[:5], 3)
    r1, r2 = random_arc(rng, o1.page, 2), random_arc(rng, o2.page, 2)
    S = murasugi_sum(o1, r1, o2, r2)
    assert S.page.euler_characteristic() == (o1.page.euler_characteristic()
                                             + o2.page.euler_characteristic() - 1)
    assert group(S) == direct_sum(group(o1), group(o2))


@given(seeds)
def test_rewriting_keeps_homology(seed):
    rng = random.Random(seed)
    ob = random_book(rng, [(1, 1), (1, 2), (2, 1)], 4)
    c = random_curve(rng, ob.page)
    w2 = ob.monodromy * twist(c) * twist(c, -1)
    assert group(make_open_book(ob.page, w2)) == group(ob)


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("m", [0, 1, 2])
def test_chain_with_boundary_twists(g, m):
    s = make_surface(g, 1)
    ncs = standard_curves(s)
    w = TwistWord(s, tuple(Letter(c) for c in ncs.chain)) * twist(ncs.boundary_parallel[0], m)
    assert is_homology_sphere(make_open_book(s, w))
