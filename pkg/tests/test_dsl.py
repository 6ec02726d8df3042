from importlib.resources import files

import pytest
from hypothesis import given, strategies as st

from openbook.dsl import DslError, parse, parse_syntax

CORPUS = sorted(p for p in files("openbook").joinpath("corpus").iterdir() if p.name.endswith(".ob"))


def test_small_script():
    sc = parse("surface S=(1,1)\nword w=R(a1)*R(a2)\nbook B=(S,w)\ncmd h1 B")
    assert len(sc.declarations) == 3 and len(sc.commands) == 1
    assert len(sc.nodes) == 4
    assert sc.nodes[1].span.line == 2


def test_sum_node():
    sc = parse_syntax("cmd sum B1 B2 along b1 b2")
    (node,) = sc.commands
    assert node.form == "sum" and len(node.args) == 4


def _error(text):
    with pytest.raises(DslError) as info:
        parse(text)
    return info.value


def test_undefined_curve():
    err = _error("surface S = (1, 1)\nword w = R(a9)")
    assert err.kind == "undefined" and err.line == 2


def test_syntax_error_has_position():
    err = _error("surface S = (1, 1)\nword w = R(a1) *")
    assert err.kind == "syntax" and (err.line, err.col) == (2, 17)
    assert err.to_json()["error"] == "syntax"
    assert _error("surface S = (1 1)").col == 16
    assert _error("frobnicate").kind == "syntax"
    assert _error("surface S = (1, 1) $").kind == "syntax"


def test_surface_mismatch():
    err = _error("surface S = (1,1)\nsurface T = (2,1)\nword w = R(a1) on T\nbook B = (S, w)")
    assert err.kind == "mismatch" and err.line == 4
    err = _error("surface S = (1,1)\ncurve x = [x1]\nsurface T = (2,1)\nword w = R(x)")
    assert err.kind == "mismatch"


def test_value_errors():
    assert _error("surface S = (1, 0)").kind == "value"
    assert _error("surface S = (1, 1)\ncurve x = [x1, x1, y1, y1]").kind == "value"
    assert _error("surface S = (1, 1)\ncurve x = chain(S, 5)").kind == "value"
    assert _error("surface S = (1, 1)\nsurface S = (2, 1)").kind == "value"
    assert _error("book H = hopf(+)\ncmd surgery H on c1 coeff 2").kind == "value"


def test_undefined_names_in_commands():
    assert _error("cmd h1 B").kind == "undefined"
    assert _error("surface S = (1,1)\nword w = v").kind == "undefined"
    assert _error("surface S = (1,1)\narc b = [q1]").kind == "undefined"
    assert _error("book H = hopf(-)\ncmd stabilize H - at(k)").kind == "undefined"


def test_arc_on_wrong_page():
    err = _error("book H = hopf(-)\nsurface S = (1,1)\narc b = [x1] from 1 to 1\n"
                 "cmd stabilize H - at(b)")
    assert err.kind == "mismatch"


def test_declarations_resolve():
    sc = parse("surface S = (2, 1)\ncurve d = boundary(S, 1)\ncurve a = chain(S, 3)\n"
               "curve x = [x1, y1^-1]\nword w = R(a1) * L(x)^2 * R(d)^-1\n"
               "word v = (w)^2 * id\ncurve y = act(w, a2)\n")
    env = sc.env
    assert len(env.words["w"]) == 4 and len(env.words["v"]) == 8
    assert env.curves["a"].surface == env.surfaces["S"]


def test_comments_and_blank_lines():
    sc = parse("# header\n\nbook H = hopf(+)   # inline\n")
    assert len(sc.nodes) == 1


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_print_parse_idempotent(path):
    text = path.read_text()
    first = parse(text)
    printed = first.to_text()
    second = parse(printed)
    assert second == first
    assert second.to_text() == printed


def test_corpus_is_bundled():
    assert len(CORPUS) >= 6


names = st.sampled_from(["a1", "a2", "c1", "x"])
factors = st.tuples(st.sampled_from(["R", "L"]), names, st.integers(-3, 3).filter(bool))


@given(st.lists(factors, min_size=1, max_size=5))
def test_word_printing_roundtrip(fs):
    body = " * ".join(f"{h}({n})^{p}" for h, n, p in fs)
    text = f"surface S = (1, 2)\ncurve x = [x1, z1]\nword w = {body}\n"
    sc = parse(text)
    assert parse(sc.to_text()) == sc
    assert len(sc.env.words["w"]) == sum(abs(p) for _, _, p in fs)
