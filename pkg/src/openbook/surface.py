"""Pages as one-vertex ribbon graphs.

A page is a thickened one-vertex graph.  Its ribbon structure is the
counterclockwise cyclic order of half-edges at the vertex, stored as a tuple
of signed edge labels: ``+k`` is the slot where edge ``k`` leaves the vertex
and ``-k`` the slot where it comes back.  Traversing the letter ``x``
therefore departs through slot ``x`` and arrives through slot ``-x``.

Between consecutive slots sit *corners*; corner ``p`` is the gap right after
rotation position ``p``.  Each corner is a boundary interval of the page, and
corners link up into boundary cycles.  Every corner is an admissible arc
endpoint, and the first corner of each cycle is its *marked* corner, used as
the default endpoint site.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Sequence

from .words import Word

if TYPE_CHECKING:  # pragma: no cover
    from .curves import ArcClass, CurveClass


@dataclass(frozen=True)
class FatGraph:
    """Ribbon structure at the single vertex of the spine."""

    rotation: tuple[int, ...]

    def __post_init__(self):
        rot = tuple(int(x) for x in self.rotation)
        object.__setattr__(self, "rotation", rot)
        r = len(rot) // 2
        if len(rot) % 2 or sorted(rot) != sorted(list(range(1, r + 1)) + list(range(-r, 0))):
            raise ValueError(f"rotation {rot} must contain each of ±1..±{r} once")

    @property
    def n_edges(self) -> int:
        return len(self.rotation) // 2

    @cached_property
    def position(self) -> dict[int, int]:
        return {x: p for p, x in enumerate(self.rotation)}

    @property
    def n_corners(self) -> int:
        return max(len(self.rotation), 1)

    @property
    def modulus(self) -> int:
        """Length of the cyclic order once corners are interleaved with slots."""
        return 2 * self.n_corners

    def slot_key(self, label: int) -> int:
        return 2 * self.position[label]

    @staticmethod
    def corner_key(corner: int) -> int:
        return 2 * corner + 1

    def boundary_letter(self, corner: int) -> int:
        """Letter traversed when walking the boundary forward out of ``corner``.

        The boundary runs with the page on its left; leaving a corner it
        follows the next slot counterclockwise.
        """
        return self.rotation[(corner + 1) % len(self.rotation)]

    def next_corner(self, corner: int) -> int:
        if not self.rotation:
            return 0
        return self.position[-self.boundary_letter(corner)]

    @cached_property
    def boundary_cycles(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        cycles = []
        for c in range(self.n_corners):
            if c in seen:
                continue
            cyc = []
            x = c
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.next_corner(x)
            cycles.append(tuple(cyc))
        return tuple(cycles)

    @cached_property
    def corner_component(self) -> dict[int, int]:
        return {c: j for j, cyc in enumerate(self.boundary_cycles) for c in cyc}

    @property
    def marked_corners(self) -> tuple[int, ...]:
        return tuple(cyc[0] for cyc in self.boundary_cycles)

    @property
    def n_boundary(self) -> int:
        return len(self.boundary_cycles)

    @property
    def genus(self) -> int:
        return (self.n_edges + 1 - self.n_boundary) // 2

    def boundary_word(self, component: int) -> Word:
        """Closed boundary walk of a component, starting at its marked corner."""
        if not self.rotation:
            return ()
        return tuple(self.boundary_letter(c) for c in self.boundary_cycles[component])

    def walk(self, start: int, stop: int) -> Word:
        """Boundary walk forward from corner ``start`` to corner ``stop``."""
        out = []
        c = start
        while c != stop:
            out.append(self.boundary_letter(c))
            c = self.next_corner(c)
            if c == start:
                raise ValueError(f"corners {start} and {stop} lie on different boundary cycles")
        return tuple(out)


@dataclass(frozen=True)
class Surface:
    """A compact oriented page, carried by its spine."""

    spine: FatGraph
    edge_names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.edge_names:
            object.__setattr__(self, "edge_names",
                               tuple(f"e{k}" for k in range(1, self.spine.n_edges + 1)))
        if len(self.edge_names) != self.spine.n_edges:
            raise ValueError("one name per edge is required")
        if len(set(self.edge_names)) != len(self.edge_names):
            raise ValueError("edge names must be distinct")

    @property
    def genus(self) -> int:
        return self.spine.genus

    @property
    def boundary_count(self) -> int:
        return self.spine.n_boundary

    @property
    def rank(self) -> int:
        """First Betti number, which is the number of spine edges."""
        return self.spine.n_edges

    def euler_characteristic(self) -> int:
        return 1 - self.spine.n_edges

    def letter(self, token: str) -> int:
        """Parse ``x1`` or ``x1^-1`` into a signed edge label."""
        token = token.strip()
        sign = 1
        if token.endswith("^-1"):
            token, sign = token[:-3].strip(), -1
        try:
            return sign * (self.edge_names.index(token) + 1)
        except ValueError:
            raise KeyError(f"no edge named {token!r}") from None

    def word_from_names(self, names: Sequence[str]) -> Word:
        return tuple(self.letter(t) for t in names)

    def names_from_word(self, word: Sequence[int]) -> list[str]:
        return [self.edge_names[abs(x) - 1] + ("" if x > 0 else "^-1") for x in word]

    def __repr__(self):
        return f"Surface(g={self.genus}, n={self.boundary_count}, rotation={self.spine.rotation})"


def canonical_rotation(g: int, n: int) -> tuple[int, ...]:
    rot: list[int] = []
    for k in range(g):
        a, b = 2 * k + 1, 2 * k + 2
        rot += [a, b, -a, -b]
    for j in range(n - 1):
        z = 2 * g + j + 1
        rot += [z, -z]
    return tuple(rot)


def make_surface(g: int, n: int) -> Surface:
    """Canonical page of genus ``g`` with ``n`` boundary components.

    Edges ``x_k, y_k`` span handle ``k`` and each ``z_j`` is a loop around
    an extra boundary component.

    >>> make_surface(1, 1).euler_characteristic()
    -1
    """
    if n < 1:
        raise ValueError("a page needs at least one boundary component")
    if g < 0:
        raise ValueError("genus must be non-negative")
    names = [s for k in range(1, g + 1) for s in (f"x{k}", f"y{k}")]
    names += [f"z{j}" for j in range(1, n)]
    s = Surface(FatGraph(canonical_rotation(g, n)), tuple(names))
    assert s.genus == g and s.boundary_count == n
    return s


def euler_characteristic(s: Surface) -> int:
    return s.euler_characteristic()


@dataclass(frozen=True)
class NamedCurveSystem:
    chain: tuple["CurveClass", ...]
    boundary_parallel: tuple["CurveClass", ...]
    duals: tuple["ArcClass", ...]


def standard_curves(s: Surface) -> NamedCurveSystem:
    from .curves import standard_curve_system

    return standard_curve_system(s)
