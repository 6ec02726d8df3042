"""Line-oriented input language for open books.

Example script::

    surface S = (1, 1)
    word w = R(a1) * R(a2)
    book B = (S, w)
    cmd h1 B

Each line is a declaration (``surface``, ``curve``, ``arc``, ``word``,
``book``) or a command (``cmd ...``).  Parsing checks syntax and then
elaborates every declaration, so undefined names and objects living on the
wrong surface are reported before anything runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from .books import (OpenBook, connect_binding, disk_book, hopf_band, make_open_book,
                    murasugi_sum, page_surgery, stabilize)
from .curves import ArcClass, CurveClass, is_simple
from .mcg import Letter, TwistWord, act_on, identity
from .surface import Surface, make_surface, standard_curves


class DslError(Exception):
    """Parse-time failure; ``kind`` is syntax, undefined, mismatch or value."""

    def __init__(self, kind: str, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {kind} error: {message}")
        self.kind, self.message, self.line, self.col = kind, message, line, col

    def to_json(self) -> dict:
        return {"error": self.kind, "message": self.message, "line": self.line, "col": self.col}


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Span:
    line: int
    col: int


@dataclass(frozen=True)
class Node:
    kind: str                      # surface, curve, arc, word, book, cmd
    name: str | None
    form: str                      # sub-form, e.g. "chain", "edges", "pair", "h1"
    args: tuple
    span: Span = field(default=Span(0, 0), compare=False)


@dataclass(frozen=True)
class Script:
    nodes: tuple[Node, ...]
    env: Any = field(default=None, compare=False, repr=False)

    @property
    def declarations(self) -> list[Node]:
        return [n for n in self.nodes if n.kind != "cmd"]

    @property
    def commands(self) -> list[Node]:
        return [n for n in self.nodes if n.kind == "cmd"]

    def to_text(self) -> str:
        return "".join(format_node(n) + "\n" for n in self.nodes)


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*(?:-[A-Za-z][A-Za-z0-9_']*)*)
  | (?P<sym>[()\[\],*^=+\-])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


class _Cursor:
    def __init__(self, text: str, line: int):
        self.line = line
        self.toks: list[_Tok] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise DslError("syntax", f"unexpected character {text[pos]!r}", line, pos + 1)
            if m.lastgroup != "ws":
                self.toks.append(_Tok(m.lastgroup, m.group(), pos + 1))
            pos = m.end()
        self.i = 0
        self.end_col = len(text) + 1

    def peek(self, k: int = 0) -> _Tok | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def col(self) -> int:
        t = self.peek()
        return t.col if t else self.end_col

    def fail(self, what: str):
        t = self.peek()
        found = repr(t.text) if t else "end of line"
        raise DslError("syntax", f"expected {what}, found {found}", self.line, self.col())

    def take(self, kind: str | None = None, text: str | None = None) -> _Tok:
        t = self.peek()
        if t is None or (kind and t.kind != kind) or (text and t.text != text):
            self.fail(text or kind or "token")
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        t = self.peek()
        if t is not None and t.text == text:
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        return self.take("ident").text

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        if sign > 0:
            self.accept("+")
        return sign * int(self.take("int").text)

    def sign(self) -> int:
        if self.accept("+"):
            return 1
        if self.accept("-"):
            return -1
        self.fail("'+' or '-'")

    def done(self):
        if self.peek() is not None:
            self.fail("end of line")


def _edge_list(c: _Cursor) -> tuple:
    c.take(text="[")
    items = []
    if not c.accept("]"):
        while True:
            name = c.ident()
            power = 1
            if c.accept("^"):
                power = c.integer()
            items.append((name, power))
            if c.accept("]"):
                break
            c.take(text=",")
    return tuple(items)


def _name_list(c: _Cursor) -> tuple:
    c.take(text="[")
    names = [c.ident()]
    while c.accept(","):
        names.append(c.ident())
    c.take(text="]")
    return tuple(names)


def _on(c: _Cursor) -> str | None:
    if c.accept("on"):
        return c.ident()
    return None


def _parse_line(c: _Cursor) -> Node:
    head = c.ident()
    span = Span(c.line, 1)
    if head == "surface":
        name = c.ident()
        c.take(text="=")
        c.take(text="(")
        g = c.integer()
        c.take(text=",")
        n = c.integer()
        c.take(text=")")
        c.done()
        return Node("surface", name, "pair", (g, n), span)
    if head == "curve":
        name = c.ident()
        c.take(text="=")
        t = c.peek()
        if t and t.text == "[":
            edges = _edge_list(c)
            on = _on(c)
            c.done()
            return Node("curve", name, "edges", (edges, on), span)
        form = c.ident()
        c.take(text="(")
        if form in ("chain", "boundary"):
            surf = c.ident()
            c.take(text=",")
            k = c.integer()
            c.take(text=")")
            c.done()
            return Node("curve", name, form, (surf, k), span)
        if form == "act":
            w = c.ident()
            c.take(text=",")
            x = c.ident()
            c.take(text=")")
            c.done()
            return Node("curve", name, "act", (w, x), span)
        raise DslError("syntax", f"unknown curve form {form!r}", c.line, t.col)
    if head == "arc":
        name = c.ident()
        c.take(text="=")
        edges = _edge_list(c)
        start = end = 1
        if c.accept("from"):
            start = c.integer()
            c.take(text="to")
            end = c.integer()
        on = _on(c)
        c.done()
        return Node("arc", name, "edges", (edges, start, end, on), span)
    if head == "word":
        name = c.ident()
        c.take(text="=")
        factors = []
        while True:
            factors.append(_factor(c))
            if not c.accept("*"):
                break
        on = _on(c)
        c.done()
        return Node("word", name, "product", (tuple(factors), on), span)
    if head == "book":
        name = c.ident()
        c.take(text="=")
        if c.accept("("):
            s = c.ident()
            c.take(text=",")
            w = c.ident()
            c.take(text=")")
            c.done()
            return Node("book", name, "pair", (s, w), span)
        form = c.ident()
        c.take(text="(")
        if form == "hopf":
            args: tuple = (c.sign(),)
        elif form == "disk":
            args = ()
        elif form == "stabilize":
            b = c.ident()
            c.take(text=",")
            sg = c.sign()
            c.take(text=",")
            args = (b, sg, c.ident())
        elif form == "sum":
            b1 = c.ident()
            c.take(text=",")
            b2 = c.ident()
            c.take(text=",")
            r1 = c.ident()
            c.take(text=",")
            args = (b1, b2, r1, c.ident())
        elif form == "surgery":
            b = c.ident()
            c.take(text=",")
            x = c.ident()
            c.take(text=",")
            args = (b, x, c.integer())
        elif form == "connect":
            args = (c.ident(),)
        else:
            raise DslError("syntax", f"unknown book form {form!r}", c.line, 1)
        c.take(text=")")
        c.done()
        return Node("book", name, form, args, span)
    if head == "cmd":
        return _parse_cmd(c, span)
    raise DslError("syntax", f"unknown statement {head!r}", c.line, 1)


def _factor(c: _Cursor) -> tuple:
    t = c.peek()
    if t and t.text in ("R", "L") and c.peek(1) and c.peek(1).text == "(":
        hand = c.ident()
        c.take(text="(")
        target = c.ident()
        c.take(text=")")
    elif t and t.text == "(":
        c.take(text="(")
        hand, target = "W", c.ident()
        c.take(text=")")
    else:
        hand, target = "W", c.ident()
    power = 1
    if c.accept("^"):
        power = c.integer()
    return (hand, target, power)


_COMMANDS = ("h1", "stabilize", "sum", "surgery", "certify", "check-relation", "show",
             "positify", "normal-form", "connect", "sobering", "destabilize")


def _parse_cmd(c: _Cursor, span: Span) -> Node:
    verb = c.ident()
    if verb not in _COMMANDS:
        raise DslError("syntax", f"unknown command {verb!r}", c.line, 5)
    if verb in ("h1", "show", "positify", "normal-form", "connect", "destabilize"):
        args: tuple = (c.ident(),)
    elif verb == "stabilize":
        b = c.ident()
        sg = c.sign()
        c.take(text="at")
        c.take(text="(")
        a = c.ident()
        c.take(text=")")
        args = (b, sg, a)
    elif verb == "sum":
        b1, b2 = c.ident(), c.ident()
        c.take(text="along")
        args = (b1, b2, c.ident(), c.ident())
    elif verb == "surgery":
        b = c.ident()
        c.take(text="on")
        x = c.ident()
        c.take(text="coeff")
        args = (b, x, c.integer())
    elif verb in ("certify", "sobering"):
        b = c.ident()
        budget = None
        if c.accept("budget"):
            budget = c.integer()
        args = (b, budget)
    else:  # check-relation
        kind = c.ident()
        args = (kind, _name_list(c))
    c.done()
    return Node("cmd", None, verb, args, span)


def parse_syntax(text: str) -> Script:
    nodes = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        c = _Cursor(line, lineno)
        nodes.append(_parse_line(c))
    return Script(tuple(nodes))


def parse(text: str) -> Script:
    """Parse and elaborate a script; raises :class:`DslError`."""
    script = parse_syntax(text)
    env = Env()
    for node in script.nodes:
        env.elaborate(node)
    return Script(script.nodes, env)


# ---------------------------------------------------------------------------
# printing


def _fmt_edges(edges) -> str:
    return "[" + ", ".join(n if p == 1 else f"{n}^{p}" for n, p in edges) + "]"


def _sg(x: int) -> str:
    return "+" if x > 0 else "-"


def format_node(n: Node) -> str:
    a = n.args
    if n.kind == "surface":
        return f"surface {n.name} = ({a[0]}, {a[1]})"
    if n.kind == "curve":
        if n.form == "edges":
            return f"curve {n.name} = {_fmt_edges(a[0])}" + (f" on {a[1]}" if a[1] else "")
        if n.form == "act":
            return f"curve {n.name} = act({a[0]}, {a[1]})"
        return f"curve {n.name} = {n.form}({a[0]}, {a[1]})"
    if n.kind == "arc":
        s = f"arc {n.name} = {_fmt_edges(a[0])} from {a[1]} to {a[2]}"
        return s + (f" on {a[3]}" if a[3] else "")
    if n.kind == "word":
        parts = []
        for hand, target, power in a[0]:
            base = f"{hand}({target})" if hand in "RL" else target
            parts.append(base if power == 1 else f"{base}^{power}")
        return f"word {n.name} = " + " * ".join(parts) + (f" on {a[1]}" if a[1] else "")
    if n.kind == "book":
        if n.form == "pair":
            return f"book {n.name} = ({a[0]}, {a[1]})"
        if n.form == "hopf":
            return f"book {n.name} = hopf({_sg(a[0])})"
        if n.form == "disk":
            return f"book {n.name} = disk()"
        if n.form == "stabilize":
            return f"book {n.name} = stabilize({a[0]}, {_sg(a[1])}, {a[2]})"
        if n.form == "surgery":
            return f"book {n.name} = surgery({a[0]}, {a[1]}, {a[2]:+d})"
        return f"book {n.name} = {n.form}({', '.join(map(str, a))})"
    v = n.form
    if v == "stabilize":
        return f"cmd stabilize {a[0]} {_sg(a[1])} at({a[2]})"
    if v == "sum":
        return f"cmd sum {a[0]} {a[1]} along {a[2]} {a[3]}"
    if v == "surgery":
        return f"cmd surgery {a[0]} on {a[1]} coeff {a[2]:+d}"
    if v in ("certify", "sobering"):
        return f"cmd {v} {a[0]}" + (f" budget {a[1]}" if a[1] is not None else "")
    if v == "check-relation":
        return f"cmd check-relation {a[0]} [{', '.join(a[1])}]"
    return f"cmd {v} {a[0]}"


# ---------------------------------------------------------------------------
# elaboration


_STANDARD = re.compile(r"^(a|c)(\d*)$")


class Env:
    """Named objects of a script, built declaration by declaration."""

    def __init__(self):
        self.surfaces: dict[str, Surface] = {}
        self.curves: dict[str, CurveClass] = {}
        self.arcs: dict[str, ArcClass] = {}
        self.words: dict[str, TwistWord] = {}
        self.books: dict[str, OpenBook] = {}
        self.current: Surface | None = None
        self._node: Node | None = None

    # errors carry the line of the node being elaborated
    def _err(self, kind: str, msg: str):
        line = self._node.span.line if self._node else 0
        return DslError(kind, msg, line, 1)

    def page_of(self, name: str) -> Surface:
        if name in self.surfaces:
            return self.surfaces[name]
        if name in self.books:
            return self.books[name].page
        raise self._err("undefined", f"no surface or book named {name!r}")

    def book(self, name: str) -> OpenBook:
        if name not in self.books:
            raise self._err("undefined", f"no book named {name!r}")
        return self.books[name]

    def arc(self, name: str) -> ArcClass:
        if name not in self.arcs:
            raise self._err("undefined", f"no arc named {name!r}")
        return self.arcs[name]

    def word(self, name: str) -> TwistWord:
        if name not in self.words:
            raise self._err("undefined", f"no word named {name!r}")
        return self.words[name]

    def curve(self, name: str, surface: Surface | None) -> CurveClass:
        if name in self.curves:
            c = self.curves[name]
            if surface is not None and c.surface != surface:
                raise self._err("mismatch", f"curve {name!r} lives on another surface")
            return c
        m = _STANDARD.match(name)
        if m and surface is not None:
            ncs = standard_curves(surface)
            k = int(m.group(2) or 1)
            pool = ncs.chain if m.group(1) == "a" else ncs.boundary_parallel
            if 1 <= k <= len(pool):
                return pool[k - 1]
        raise self._err("undefined", f"no curve named {name!r}"
                        + (f" on a genus {surface.genus} page" if surface else ""))

    def _surface_ctx(self, on: str | None) -> Surface:
        if on is not None:
            return self.page_of(on)
        if self.current is None:
            raise self._err("undefined", "no surface declared yet")
        return self.current

    def _taken(self, name: str):
        for table in (self.surfaces, self.curves, self.arcs, self.words, self.books):
            if name in table:
                raise self._err("value", f"name {name!r} is already defined")

    def elaborate(self, node: Node):
        self._node = node
        try:
            if node.kind != "cmd":
                self._taken(node.name)
            getattr(self, f"_do_{node.kind}")(node)
        except DslError:
            raise
        except (ValueError, KeyError) as exc:
            raise self._err("value", str(exc).strip("'\"")) from None

    def _do_surface(self, node: Node):
        g, n = node.args
        s = make_surface(g, n)
        self.surfaces[node.name] = s
        self.current = s

    def _do_curve(self, node: Node):
        if node.form == "edges":
            edges, on = node.args
            s = self._surface_ctx(on)
            word = self._edges_word(s, edges)
            c = CurveClass(s, word)
            if not is_simple(c):
                raise self._err("value", f"curve {node.name!r} is not simple")
        elif node.form == "act":
            w = self.word(node.args[0])
            x = self.curve(node.args[1], w.surface)
            c = act_on(w, x)
        else:
            surf, k = node.args
            s = self.page_of(surf)
            ncs = standard_curves(s)
            pool = ncs.chain if node.form == "chain" else ncs.boundary_parallel
            if not 1 <= k <= len(pool):
                raise self._err("value", f"{node.form} index {k} out of range 1..{len(pool)}")
            c = pool[k - 1]
        self.curves[node.name] = c

    def _edges_word(self, s: Surface, edges) -> tuple:
        out = []
        for name, power in edges:
            try:
                x = s.letter(name)
            except KeyError:
                raise self._err("undefined", f"no edge named {name!r} on this page") from None
            out.extend([x if power > 0 else -x] * abs(power))
        return tuple(out)

    def _do_arc(self, node: Node):
        edges, start, end, on = node.args
        s = self._surface_ctx(on)
        marks = s.spine.marked_corners
        for k in (start, end):
            if not 1 <= k <= len(marks):
                raise self._err("value", f"boundary component {k} out of range 1..{len(marks)}")
        a = ArcClass(s, marks[start - 1], self._edges_word(s, edges), marks[end - 1])
        if not is_simple(a):
            raise self._err("value", f"arc {node.name!r} is not properly embedded")
        self.arcs[node.name] = a

    def _do_word(self, node: Node):
        factors, on = node.args
        s = self._surface_ctx(on)
        w = identity(s)
        for hand, target, power in factors:
            if hand == "W":
                if target in ("id", "1"):
                    part = identity(s)
                else:
                    part = self.word(target)
                    if part.surface != s:
                        raise self._err("mismatch", f"word {target!r} lives on another surface")
            else:
                c = self.curve(target, s)
                part = TwistWord(s, (Letter(c, 1 if hand == "R" else -1),))
            w = w * (part ** power)
        self.words[node.name] = w

    def _do_book(self, node: Node):
        a = node.args
        if node.form == "pair":
            s = self.page_of(a[0])
            w = self.word(a[1])
            if w.surface != s:
                raise self._err("mismatch", f"word {a[1]!r} does not live on {a[0]!r}")
            ob = make_open_book(s, w, f"declared as ({a[0]}, {a[1]})")
        elif node.form == "hopf":
            ob = hopf_band(a[0])
        elif node.form == "disk":
            ob = disk_book()
        elif node.form == "stabilize":
            ob = self.stabilize(*a)
        elif node.form == "sum":
            ob = self.sum(*a)
        elif node.form == "surgery":
            ob = self.surgery(*a)
        else:
            ob = connect_binding(self.book(a[0]))
        self.books[node.name] = ob

    def _do_cmd(self, node: Node):
        """Resolve names only; commands run later."""
        v, a = node.form, node.args
        if v == "check-relation":
            if a[0] not in ("chain", "braid", "commute", "isotopy"):
                raise self._err("value", f"unknown relation {a[0]!r}")
            for x in a[1]:
                self.curve(x, self.current)
            return
        self.book(a[0])
        if v == "stabilize":
            self._on_page(self.arc(a[2]), self.book(a[0]))
        elif v == "sum":
            self.book(a[1])
            self._on_page(self.arc(a[2]), self.book(a[0]))
            self._on_page(self.arc(a[3]), self.book(a[1]))
        elif v == "surgery":
            self.curve(a[1], self.book(a[0]).page)
            if a[2] not in (1, -1):
                raise self._err("value", "surgery coefficient is +1 or -1")

    def _on_page(self, arc: ArcClass, ob: OpenBook):
        if arc.surface != ob.page:
            raise self._err("mismatch", "arc does not live on the book's page")

    # shared with the runner
    def stabilize(self, b, sign, arc):
        ob = self.book(b)
        a = self.arc(arc)
        self._on_page(a, ob)
        return stabilize(ob, a, sign)

    def sum(self, b1, b2, r1, r2):
        o1, o2 = self.book(b1), self.book(b2)
        a1, a2 = self.arc(r1), self.arc(r2)
        self._on_page(a1, o1)
        self._on_page(a2, o2)
        return murasugi_sum(o1, a1, o2, a2)

    def surgery(self, b, x, coeff):
        ob = self.book(b)
        return page_surgery(ob, self.curve(x, ob.page), coeff)
