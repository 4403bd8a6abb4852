"""Triangular lattice coordinates, the honeycomb dual, and point symmetries.

Two coordinate systems are used throughout the package.

Triangle representation: a cell is ``(x, y, orient)`` where ``orient`` is
``LEFT`` (apex pointing one way) or ``RIGHT`` (the other).  Row ``y`` reads
``... L(x) R(x) L(x+1) R(x+1) ...`` from left to right.  A left triangle
shares edges with the right triangles at ``(x, y)``, ``(x-1, y)`` and
``(x, y-1)``.

Hexagonal (dual) representation: each triangle corresponds to a vertex of
the honeycomb lattice, and edge-adjacency of triangles corresponds to
honeycomb edges.  Vertices are stored in a brick-wall integer embedding
``(x, y)``: a vertex is Down when ``x + y`` is even (neighbors West, East,
South) and Up when ``x + y`` is odd (neighbors West, East, North).  This
keeps adjacency exact, integer and hashable.

Point symmetries are taken about a fixed hexagon face center and composed
with honeycomb translations.  Internally a vertex is converted to axial
coordinates ``(a, b)`` in which the face center sits at the origin,
rotation by 60 degrees is ``(a, b) -> (-b, a + b)`` and the reference
mirror is ``(a, b) -> (a + b, -b)``; the residue ``(a - b) mod 3``
distinguishes face centers (0), Down vertices (1) and Up vertices (2).
"""

from __future__ import annotations

from dataclasses import dataclass

Vertex = tuple[int, int]
Triangle = tuple[int, int, int]

DOWN = "down"
UP = "up"

LEFT = 0
RIGHT = 1


def vertex_class(v: Vertex) -> str:
    """Class of a honeycomb vertex: DOWN iff x + y is even."""
    return DOWN if (v[0] + v[1]) % 2 == 0 else UP


def neighbors(v: Vertex) -> list[Vertex]:
    """The 3 honeycomb neighbors of v: West, East, then South or North."""
    x, y = v
    if (x + y) % 2 == 0:
        return [(x - 1, y), (x + 1, y), (x, y - 1)]
    return [(x - 1, y), (x + 1, y), (x, y + 1)]


def triangle_neighbors(t: Triangle) -> list[Triangle]:
    """The 3 edge-adjacent triangles of t."""
    x, y, o = t
    if o == LEFT:
        return [(x, y, RIGHT), (x - 1, y, RIGHT), (x, y - 1, RIGHT)]
    return [(x, y, LEFT), (x + 1, y, LEFT), (x, y + 1, LEFT)]


def triangle_to_vertex(t: Triangle) -> Vertex:
    """Bijection onto honeycomb vertices; LEFT -> Down, RIGHT -> Up.

    Edge-adjacency of triangles maps exactly onto vertex adjacency.
    """
    x, y, o = t
    return (2 * x + y + o, y)


def vertex_to_triangle(v: Vertex) -> Triangle:
    """Inverse of triangle_to_vertex."""
    x, y = v
    if (x + y) % 2 == 0:
        return ((x - y) // 2, y, LEFT)
    return ((x - y - 1) // 2, y, RIGHT)


def translate(v: Vertex, d: Vertex) -> Vertex:
    return (v[0] + d[0], v[1] + d[1])


def _vertex_to_axial(v: Vertex) -> tuple[int, int]:
    x, y = v
    if (x + y) % 2 == 0:
        return ((x + 3 * y) // 2 + 1, (x - 3 * y) // 2)
    return ((x + 3 * y + 3) // 2, (x - 3 * y - 1) // 2)


def _axial_to_vertex(a: int, b: int) -> Vertex:
    m = (a - b) % 3
    if m == 1:
        y = (a - b - 1) // 3
        return (2 * (a - 1) - 3 * y, y)
    if m == 2:
        y = (a - b - 2) // 3
        return (2 * a - 3 * y - 3, y)
    raise ValueError("axial point %r is a face center, not a vertex" % ((a, b),))


def _point_image(rotations: int, mirrored: bool, a: int, b: int) -> tuple[int, int]:
    if mirrored:
        a, b = a + b, -b
    for _ in range(rotations % 6):
        a, b = -b, a + b
    return a, b


@dataclass(frozen=True)
class LatticeSymmetry:
    """An adjacency-preserving map: point action about the reference face
    center (``rotations`` times 60 degrees, after an optional mirror),
    followed by a honeycomb translation ``shift``.

    ``shift`` must have even coordinate sum: those are exactly the
    translations of the honeycomb structure.
    """

    rotations: int
    mirrored: bool = False
    shift: Vertex = (0, 0)

    def __post_init__(self) -> None:
        if not 0 <= self.rotations < 6:
            object.__setattr__(self, "rotations", self.rotations % 6)
        if (self.shift[0] + self.shift[1]) % 2 != 0:
            raise ValueError("shift %r is not a honeycomb translation" % (self.shift,))

    @property
    def swaps_class(self) -> bool:
        return self.rotations % 2 == 1


IDENTITY = LatticeSymmetry(0)

# Point reflection through the midpoint of the edge {(0,0), (1,0)}:
# v -> (1 - x, -y).  Swaps the Down and Up classes.
EDGE_FLIP = LatticeSymmetry(3, False, (3, 1))


def apply_symmetry(s: LatticeSymmetry, v: Vertex) -> Vertex:
    a, b = _point_image(s.rotations, s.mirrored, *_vertex_to_axial(v))
    x, y = _axial_to_vertex(a, b)
    return (x + s.shift[0], y + s.shift[1])


def _point_image_offset(s: LatticeSymmetry, d: Vertex) -> Vertex:
    # Point action on a translation vector.  Even-sum offsets map to axial
    # displacements (da, db) with da - db divisible by 3, and back.
    dx, dy = d
    da, db = (dx + 3 * dy) // 2, (dx - 3 * dy) // 2
    da, db = _point_image(s.rotations, s.mirrored, da, db)
    return (da + db, (da - db) // 3)


def compose(s: LatticeSymmetry, t: LatticeSymmetry) -> LatticeSymmetry:
    """The map applying t first, then s."""
    if s.mirrored:
        rot = (s.rotations - t.rotations) % 6
    else:
        rot = (s.rotations + t.rotations) % 6
    sx, sy = _point_image_offset(s, t.shift)
    return LatticeSymmetry(rot, s.mirrored != t.mirrored,
                           (sx + s.shift[0], sy + s.shift[1]))


def inverse(s: LatticeSymmetry) -> LatticeSymmetry:
    if s.mirrored:
        p = LatticeSymmetry(s.rotations, True)
    else:
        p = LatticeSymmetry((-s.rotations) % 6)
    dx, dy = _point_image_offset(p, s.shift)
    return LatticeSymmetry(p.rotations, p.mirrored, (-dx, -dy))


def point_group() -> list[LatticeSymmetry]:
    """The 12 point symmetries about the reference face center."""
    return [LatticeSymmetry(k, m) for m in (False, True) for k in range(6)]
