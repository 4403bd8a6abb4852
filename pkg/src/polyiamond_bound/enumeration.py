"""Exact enumeration of fixed polyiamonds and marked configurations.

T(n) is the number of polyiamonds with n triangles, counted up to
translation ("fixed" animals: rotations and reflections distinguish).  The
counts are identical in the triangle representation and in its honeycomb
dual, except that the dual cannot distinguish the two one-triangle shapes,
so T(1) = 2 for triangles and 1 for vertices.

Counting is done by a rooted, non-duplicating expansion in the style of
Redelmeier's algorithm: every animal, translated so that the right-most of
its bottom-most cells sits at a fixed anchor, contains that anchor; growing
outward from the anchor with an untried-list discipline visits each animal
exactly once, with no global dedup set.  A deliberately naive
generate-canonicalize-dedup oracle is provided for independent
verification.

Marked configurations generalize this: count pairs (P, c) where c in P is a
vertex of prescribed class and a configured set of positions around c
("forbidden positions") must stay outside P.  Pinning c at the class anchor
makes this a rooted count over a restricted region.  The per-type
geometries (which positions are forbidden, which neighbors the counting
recursion expands through) are data, loaded from a JSON config, so that
alternative geometries can be tested without code changes.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .lattice import (DOWN, LEFT, RIGHT, UP, Triangle, Vertex, neighbors,
                      translate, triangle_neighbors)

TRIANGLE = "triangle"
HEX = "hex"

_DEFAULT_CAPS = {"fixed": 20, "marked": 14, "oracle": 12}

# Depth of the expansion tree at which parallel continuation jobs are cut.
_SPLIT_DEPTH = 4


class SizeLimitError(RuntimeError):
    """Requested size exceeds the configured hard cap."""


class GeometryError(ValueError):
    """A marked-class geometry violates its invariants."""


def _cap(kind: str) -> int:
    env = os.environ.get("POLYIAMOND_MAX_CELLS")
    if env is not None:
        return int(env)
    return _DEFAULT_CAPS[kind]


def _check_cap(kind: str, n_max: int) -> None:
    cap = _cap(kind)
    if n_max > cap:
        raise SizeLimitError(
            "n_max=%d exceeds the %s cap of %d (set POLYIAMOND_MAX_CELLS to override)"
            % (n_max, kind, cap))


@dataclass(frozen=True)
class CountTable:
    """A sequence of exact counts indexed by cell count n."""

    representation: str
    values: tuple[int, ...]
    provenance: str

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def is_connected(cells, representation: str) -> bool:
    cells = set(cells)
    if not cells:
        return False
    nbrs = neighbors if representation == HEX else triangle_neighbors
    seen = {next(iter(cells))}
    queue = list(seen)
    while queue:
        for u in nbrs(queue.pop()):
            if u in cells and u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(cells)


def _anchor_cell(cells, representation: str):
    # bottom-most row, then right-most cell within it
    if representation == HEX:
        return min(cells, key=lambda c: (c[1], -c[0]))
    return min(cells, key=lambda c: (c[1], -c[0], -c[2]))


def canonical_cells(cells, representation: str) -> frozenset:
    """Translate so the bottom-most-then-right-most cell sits at its class
    anchor: (0,0)/(1,0) for Down/Up vertices, (0,0,orient) for triangles.

    The translation is class-preserving, so canonical forms of distinct
    translation classes are distinct.
    """
    if representation == HEX:
        cx, cy = _anchor_cell(cells, HEX)
        dx = (0 if (cx + cy) % 2 == 0 else 1) - cx
        return frozenset((x + dx, y - cy) for x, y in cells)
    cx, cy, _ = _anchor_cell(cells, TRIANGLE)
    return frozenset((x - cx, y - cy, o) for x, y, o in cells)


@dataclass(frozen=True)
class Polyiamond:
    """A canonically translated, connected, nonempty cell set."""

    representation: str
    cells: frozenset

    @classmethod
    def from_cells(cls, cells, representation: str) -> "Polyiamond":
        cells = frozenset(cells)
        if not is_connected(cells, representation):
            raise ValueError("cells are empty or not edge-connected")
        return cls(representation, canonical_cells(cells, representation))

    def __len__(self) -> int:
        return len(self.cells)


# ---------------------------------------------------------------------------
# Rooted expansion

def _grow(counts, untried, size, visited, nbrs, allowed, n_max):
    # Invariant: every cell ever placed on an untried list is in `visited`
    # until the invocation that placed it backtracks; popped cells stay in
    # `visited` for the rest of the current invocation, so later branches
    # never rebuild an animal that contains them.
    while untried:
        cell = untried.pop()
        counts[size + 1] += 1
        if size + 1 < n_max:
            fresh = [u for u in nbrs(cell) if u not in visited and allowed(u)]
            visited.update(fresh)
            _grow(counts, untried + fresh, size + 1, visited, nbrs, allowed, n_max)
            visited.difference_update(fresh)


def _grow_split(counts, untried, size, visited, nbrs, allowed, depth, jobs):
    # Same traversal, but cut at `depth`: sizes <= depth are counted here,
    # the subtree below each size-depth animal becomes a continuation job.
    while untried:
        cell = untried.pop()
        counts[size + 1] += 1
        fresh = [u for u in nbrs(cell) if u not in visited and allowed(u)]
        visited.update(fresh)
        if size + 1 < depth:
            _grow_split(counts, untried + fresh, size + 1, visited, nbrs,
                        allowed, depth, jobs)
        else:
            jobs.append((tuple(untried + fresh), frozenset(visited), size + 1))
        visited.difference_update(fresh)


def _fixed_allowed(root, representation):
    # Region of cells permitted around the canonical anchor: anything on a
    # higher row, or strictly left of the anchor on the anchor row.
    if representation == HEX:
        rx, ry = root
        return lambda v: v[1] > ry or (v[1] == ry and v[0] < rx)
    rx, ry, ro = root
    return lambda t: t[1] > ry or (t[1] == ry and (t[0], t[2]) < (rx, ro))


def _rebuild(kind, payload):
    if kind == "fixed":
        representation, root = payload
        nbrs = neighbors if representation == HEX else triangle_neighbors
        return nbrs, _fixed_allowed(root, representation)
    forbidden = payload
    return neighbors, lambda v: v not in forbidden


def _job_worker(task):
    kind, payload, untried, visited, size, n_max = task
    nbrs, allowed = _rebuild(kind, payload)
    counts = [0] * (n_max + 1)
    _grow(counts, list(untried), size, set(visited), nbrs, allowed, n_max)
    return counts


def _count_rooted(kind, payload, root, n_max, workers):
    nbrs, allowed = _rebuild(kind, payload)
    counts = [0] * (n_max + 1)
    if workers <= 1 or n_max <= _SPLIT_DEPTH:
        _grow(counts, [root], 0, {root}, nbrs, allowed, n_max)
        return counts
    jobs: list = []
    _grow_split(counts, [root], 0, {root}, nbrs, allowed, _SPLIT_DEPTH, jobs)
    tasks = [(kind, payload, u, vis, s, n_max) for u, vis, s in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(tasks) // (4 * workers))
        for part in pool.map(_job_worker, tasks, chunksize=chunk):
            for i, c in enumerate(part):
                counts[i] += c
    return counts


def count_fixed(n_max: int, representation: str = TRIANGLE,
                workers: int = 1) -> CountTable:
    """T(n) for 1 <= n <= n_max, exactly, by rooted expansion.

    One rooted run per anchor class (Down/Up vertices, Left/Right
    triangles); translation classes partition across the two runs, so the
    totals add.  Partial counts from parallel workers are combined by
    integer addition, so results are identical for any worker count.
    """
    if representation not in (TRIANGLE, HEX):
        raise ValueError("representation must be %r or %r" % (TRIANGLE, HEX))
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    _check_cap("fixed", n_max)
    roots = [(0, 0), (1, 0)] if representation == HEX else \
            [(0, 0, LEFT), (0, 0, RIGHT)]
    values = [0] * (n_max + 1)
    for root in roots:
        part = _count_rooted("fixed", (representation, root), root, n_max, workers)
        for i, c in enumerate(part):
            values[i] += c
    if representation == HEX:
        # A single vertex cannot distinguish the two triangle orientations;
        # the two one-cell translation classes merge, giving T(1) = 1.
        values[1] = 1
    return CountTable(representation, tuple(values), "redelmeier")


def count_fixed_oracle(n_max: int, representation: str = TRIANGLE) -> CountTable:
    """Same counts as count_fixed by the naive method: breadth-first
    generation of all connected sets, canonicalization by translation,
    dedup via a set of canonical forms.  Deliberately slow and independent.
    """
    if representation not in (TRIANGLE, HEX):
        raise ValueError("representation must be %r or %r" % (TRIANGLE, HEX))
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    _check_cap("oracle", n_max)
    if representation == HEX:
        level = {frozenset({(0, 0)}), frozenset({(1, 0)})}
        nbrs = neighbors
    else:
        level = {frozenset({(0, 0, LEFT)}), frozenset({(0, 0, RIGHT)})}
        nbrs = triangle_neighbors
    values = [0] * (n_max + 1)
    values[1] = 1 if representation == HEX else 2
    for size in range(2, n_max + 1):
        grown = set()
        for animal in level:
            for cell in animal:
                for u in nbrs(cell):
                    if u not in animal:
                        grown.add(canonical_cells(animal | {u}, representation))
        level = grown
        values[size] = len(level)
    return CountTable(representation, tuple(values), "naive_oracle")


# ---------------------------------------------------------------------------
# Marked configurations

_SPEC_KEYS = {"id", "marked_class", "white_bullets", "forbidden"}
_SPEC_IDS = ("g", "h", "k", "g'")
_BULLET_COUNT = {"g": 2, "h": 2, "k": 1, "g'": 2}


@dataclass(frozen=True)
class MarkedClassSpec:
    """Geometry of one marked-configuration type.

    Offsets are relative to the marked vertex.  ``white_bullets`` are the
    neighbor offsets the defining construction expands through; every other
    neighbor of the mark must be forbidden.
    """

    id: str
    marked_class: str
    white_bullets: tuple[Vertex, ...]
    forbidden: frozenset


def validate_spec(spec: MarkedClassSpec) -> None:
    """Raise GeometryError naming the first violated invariant."""
    if spec.id not in _SPEC_IDS:
        raise GeometryError("id %r not one of %r" % (spec.id, list(_SPEC_IDS)))
    if spec.marked_class not in (DOWN, UP):
        raise GeometryError("marked_class %r not %r or %r" % (spec.marked_class, DOWN, UP))
    bullets = set(spec.white_bullets)
    anchor = (0, 0) if spec.marked_class == DOWN else (1, 0)
    nbr_offsets = {(u[0] - anchor[0], u[1] - anchor[1]) for u in neighbors(anchor)}
    overlap = bullets & spec.forbidden
    if overlap:
        raise GeometryError("white bullets %r are also forbidden" % sorted(overlap))
    if not bullets <= nbr_offsets:
        raise GeometryError("white bullets %r are not neighbor offsets of a %s vertex"
                            % (sorted(bullets - nbr_offsets), spec.marked_class))
    if len(bullets) != _BULLET_COUNT[spec.id]:
        raise GeometryError("type %s needs %d white bullets, got %d"
                            % (spec.id, _BULLET_COUNT[spec.id], len(bullets)))
    uncovered = nbr_offsets - bullets - spec.forbidden
    if uncovered:
        raise GeometryError("neighbor offsets %r are neither white bullets nor forbidden"
                            % sorted(uncovered))
    if spec.id == "k" and len(nbr_offsets - spec.forbidden) != 1:
        raise GeometryError("type k must leave exactly one neighbor non-forbidden")


def parse_geometry(raw) -> dict:
    """Validate a decoded geometry config: an array of four objects with
    ids g, h, k, g'.  Unknown keys are rejected.
    """
    if not isinstance(raw, list):
        raise GeometryError("geometry config must be a JSON array")
    specs: dict = {}
    for entry in raw:
        if not isinstance(entry, dict):
            raise GeometryError("geometry entries must be JSON objects")
        unknown = set(entry) - _SPEC_KEYS
        if unknown:
            raise GeometryError("unknown keys %r" % sorted(unknown))
        missing = _SPEC_KEYS - set(entry)
        if missing:
            raise GeometryError("missing keys %r" % sorted(missing))
        spec = MarkedClassSpec(
            id=entry["id"],
            marked_class=entry["marked_class"],
            white_bullets=tuple((int(x), int(y)) for x, y in entry["white_bullets"]),
            forbidden=frozenset((int(x), int(y)) for x, y in entry["forbidden"]),
        )
        validate_spec(spec)
        if spec.id in specs:
            raise GeometryError("duplicate id %r" % spec.id)
        specs[spec.id] = spec
    if set(specs) != set(_SPEC_IDS):
        raise GeometryError("geometry must define exactly the types %r, got %r"
                            % (list(_SPEC_IDS), sorted(specs)))
    return specs


def load_geometry(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_geometry(json.load(fh))


def default_geometry() -> dict:
    text = resources.files("polyiamond_bound").joinpath(
        "data/default_geometry.json").read_text("utf-8")
    return parse_geometry(json.loads(text))


def _marked_root_forbidden(spec: MarkedClassSpec):
    anchor = (0, 0) if spec.marked_class == DOWN else (1, 0)
    return anchor, frozenset(translate(anchor, d) for d in spec.forbidden)


def count_marked(spec: MarkedClassSpec, n_max: int, workers: int = 1) -> CountTable:
    """Number of pairs (P, c) up to translation: P a connected n-vertex
    set, c in P of the spec's class, all forbidden offsets around c outside
    P.  Pinning c at the class anchor reduces this to a rooted count; the
    empty extension gives value 1 at n = 0 by convention.
    """
    validate_spec(spec)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    _check_cap("marked", n_max)
    anchor, forbidden = _marked_root_forbidden(spec)
    counts = _count_rooted("marked", forbidden, anchor, max(n_max, 0), workers)
    counts[0] = 1
    return CountTable(HEX, tuple(counts), "redelmeier")


def enumerate_marked(spec: MarkedClassSpec, n_max: int):
    """Yield every marked configuration with 1..n_max vertices exactly
    once, as a frozenset of vertices containing the pinned anchor.
    """
    validate_spec(spec)
    _check_cap("marked", n_max)
    anchor, forbidden = _marked_root_forbidden(spec)

    def gen(untried, size, visited, chosen):
        while untried:
            cell = untried.pop()
            chosen.append(cell)
            yield frozenset(chosen)
            if size + 1 < n_max:
                fresh = [u for u in neighbors(cell)
                         if u not in visited and u not in forbidden]
                visited.update(fresh)
                yield from gen(untried + fresh, size + 1, visited, chosen)
                visited.difference_update(fresh)
            chosen.pop()

    if n_max >= 1:
        yield from gen([anchor], 0, {anchor}, [])


# ---------------------------------------------------------------------------
# Inequality verification

def _require_same_length(*tables) -> int:
    lengths = {len(t) for t in tables}
    if len(lengths) != 1:
        raise ValueError("tables have mismatched lengths %r" % sorted(lengths))
    return lengths.pop() - 1


def verify_proposition1(g: CountTable, h: CountTable, k: CountTable,
                        n_max: int | None = None) -> list:
    """Per-n report of the three counting inequalities:

        G_n <= sum_{i+j=n-1} G_i H_j
        H_n <= sum_{i+j=n-1} G_i K_j
        K_n <= G_{n-1}

    Each row carries both exact sides, so failures are inspectable.
    """
    top = _require_same_length(g, h, k)
    if n_max is None:
        n_max = top
    if n_max > top:
        raise ValueError("n_max=%d beyond table length %d" % (n_max, top))
    rows = []
    for n in range(1, n_max + 1):
        g_rhs = sum(g[i] * h[n - 1 - i] for i in range(n))
        h_rhs = sum(g[i] * k[n - 1 - i] for i in range(n))
        k_rhs = g[n - 1]
        rows.append({
            "n": n,
            "g_lhs": g[n], "g_rhs": g_rhs, "g_ok": g[n] <= g_rhs,
            "h_lhs": h[n], "h_rhs": h_rhs, "h_ok": h[n] <= h_rhs,
            "k_lhs": k[n], "k_rhs": k_rhs, "k_ok": k[n] <= k_rhs,
        })
    return rows


def verify_observation(t: CountTable, g: CountTable, g_hat=None) -> list:
    """Per-n report of T(n) <= 2 G_n (vertex representation); when the
    majorizing sequence is supplied, also the geometry-free chain
    T(n) <= 2 Ghat_n.
    """
    if t.representation != HEX:
        raise ValueError("observation check needs the hex-representation table")
    n_max = _require_same_length(t, g)
    rows = []
    for n in range(1, n_max + 1):
        row = {"n": n, "t": t[n], "bound": 2 * g[n], "ok": t[n] <= 2 * g[n]}
        if g_hat is not None:
            row["hat_bound"] = 2 * g_hat[n]
            row["hat_ok"] = t[n] <= 2 * g_hat[n]
        rows.append(row)
    return rows


def verify_supermultiplicative(t: CountTable, n_max: int | None = None) -> dict:
    """Check T(l+m) >= T(l) T(m) for all l+m <= n_max except (l, m) = (1, 1).

    The excluded pair genuinely fails in the triangle representation
    (T(2) = 3 < T(1)^2 = 4), which is why it is excluded.
    """
    if t.representation != TRIANGLE:
        raise ValueError("supermultiplicativity is stated for the triangle table")
    if n_max is None:
        n_max = t.n_max
    checked = 0
    violations = []
    for total in range(2, n_max + 1):
        for l in range(1, total // 2 + 1):
            m = total - l
            if (l, m) == (1, 1):
                continue
            checked += 1
            if t[total] < t[l] * t[m]:
                violations.append({"l": l, "m": m,
                                   "lhs": t[total], "rhs": t[l] * t[m]})
    return {"checked": checked, "violations": violations}
