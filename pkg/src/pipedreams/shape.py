"""
Alternating shapes.

A shape is pinned at the origin and described by four boundary paths: the
starting path (``n`` steps S/E from ``(0, 0)``), the NW stair ``(NE)^t``, the
ending path (``n`` steps S/E from ``(t, t)``) and the SE stair ``(EN)^b``
joining the two path ends. Cells are indexed by their lower left corner.

Edges carry a *position*: the vertical edge from ``(x, y)`` to ``(x, y+1)``
has position ``x - y`` and the horizontal edge from ``(x, y)`` to
``(x+1, y)`` has position ``x - y + 1``. Step ``p`` of the starting path and
step ``i`` of the ending path have positions ``p`` and ``i``, so a cell on
diagonal ``d = x - y`` receives the pipes at positions ``d`` (west) and
``d + 1`` (south). Only cells with ``1 <= d <= n-1`` can hold two pipes;
the others are traversed by a single pipe and are always contacts.

>>> F = AlternatingShape(2, "SS", 0, "EE")
>>> sorted(F.cells)
[(0, -2), (0, -1), (1, -1)]
>>> F.word
(1,)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator

from .errors import InvalidShape
from .permutation import Permutation, bruhat_leq, demazure_product, longest

__all__ = [
    "BoundaryPath",
    "AlternatingShape",
    "validate",
    "cells",
    "word",
    "is_sortable",
    "is_complete",
    "enumerate_shapes",
    "recognize",
    "triangular",
    "is_alternating_word",
]

Cell = tuple[int, int]

_STEP = {"N": (0, 1), "S": (0, -1), "E": (1, 0), "W": (-1, 0)}


@dataclass(frozen=True)
class BoundaryPath:
    steps: str
    start: tuple[int, int] = (0, 0)

    def __post_init__(self):
        bad = set(self.steps) - set(_STEP)
        if bad:
            raise InvalidShape(f"unknown step(s) {sorted(bad)} in path {self.steps!r}")

    def __len__(self) -> int:
        return len(self.steps)

    def count(self, direction: str) -> int:
        return self.steps.count(direction)

    def points(self) -> list[tuple[int, int]]:
        x, y = self.start
        pts = [(x, y)]
        for s in self.steps:
            dx, dy = _STEP[s]
            x, y = x + dx, y + dy
            pts.append((x, y))
        return pts

    @property
    def end(self) -> tuple[int, int]:
        return self.points()[-1]


@dataclass(frozen=True)
class AlternatingShape:
    """
    An alternating shape given by ``(n, start, t, end)``.

    Construction does not validate; call :meth:`validate` or :meth:`check`.
    Equality is structural on the four fields.
    """

    n: int
    start: str
    t: int
    end: str

    # -- boundary ---------------------------------------------------------

    @property
    def start_path(self) -> BoundaryPath:
        return BoundaryPath(self.start, (0, 0))

    @property
    def end_path(self) -> BoundaryPath:
        return BoundaryPath(self.end, (self.t, self.t))

    @property
    def b(self) -> int:
        """Length of the SE stair, i.e. its number of EN pairs."""
        return self.t + self.end.count("E") - self.start.count("E")

    def boundary(self) -> list[tuple[int, int]]:
        """Closed boundary, counterclockwise from ``(0, 0)``; last point omitted."""
        pts = self.start_path.points()
        x, y = pts[-1]
        for _ in range(max(self.b, 0)):
            x += 1
            pts.append((x, y))
            y += 1
            pts.append((x, y))
        pts.pop()
        pts.extend(reversed(self.end_path.points()))
        x, y = self.t, self.t
        for _ in range(self.t):
            x -= 1
            pts.append((x, y))
            y -= 1
            pts.append((x, y))
        pts.pop()
        return pts

    # -- validation -------------------------------------------------------

    def validate(self) -> tuple[bool, list[str]]:
        """Check every defining clause; diagnostics start with the first violation."""
        ok, diag = self._validation
        return ok, list(diag)

    @cached_property
    def _validation(self) -> tuple[bool, tuple[str, ...]]:
        ok, diag = self._validate()
        return ok, tuple(diag)

    def _validate(self) -> tuple[bool, list[str]]:
        problems: list[str] = []
        if not isinstance(self.n, int) or self.n < 1:
            return False, [f"n must be a positive integer, got {self.n!r}"]
        if not isinstance(self.t, int) or self.t < 0:
            return False, [f"NW stair length t must be >= 0, got {self.t!r}"]
        for name, path in (("starting path", self.start), ("ending path", self.end)):
            if len(path) != self.n:
                problems.append(f"{name} has {len(path)} steps, expected n={self.n}")
            if set(path) - {"S", "E"}:
                problems.append(f"{name} {path!r} has steps other than S and E")
        if problems:
            return False, problems
        sx, sy = self.start_path.end
        ex, ey = self.end_path.end
        if sx - sy != self.n or ex - ey != self.n:
            return False, ["path endpoints are not on the diagonal x - y = n"]
        if self.b < 0:
            return False, [f"SE stair would need {self.b} < 0 EN steps"]
        pts = self.boundary()
        seen: dict[tuple[int, int], int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                return False, [
                    f"connectivity: boundary touches itself at {p}; the ending path "
                    "must stay strictly north and east of the starting path"
                ]
            seen[p] = i
        area2 = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]))
        if area2 <= 0:
            return False, ["connectivity: ending path is not north-east of the starting path"]
        region = _enclosed_cells(pts)
        if 2 * len(region) != area2:
            raise AssertionError("rasterized area disagrees with polygon area")
        notes = []
        odd = sorted(c for c in region if c[0] - c[1] in (0, self.n))
        if odd:
            notes.append(f"note: {len(odd)} single-pipe cell(s) on diagonals 0 or n (forced contacts)")
        return True, notes

    def is_valid(self) -> bool:
        return self.validate()[0]

    def check(self) -> "AlternatingShape":
        ok, diag = self.validate()
        if not ok:
            raise InvalidShape(diag[0])
        return self

    # -- derived geometry -------------------------------------------------

    @cached_property
    def cells(self) -> frozenset:
        self.check()
        return frozenset(_enclosed_cells(self.boundary()))

    @cached_property
    def sweep(self) -> tuple[Cell, ...]:
        """Cells in canonical SW to NE order: columns left to right, each bottom to top."""
        return tuple(sorted(self.cells))

    @cached_property
    def crossable(self) -> tuple[Cell, ...]:
        """Cells that can hold two pipes, in sweep order."""
        return tuple(c for c in self.sweep if 1 <= c[0] - c[1] <= self.n - 1)

    @cached_property
    def word(self) -> tuple[int, ...]:
        return tuple(x - y for x, y in self.crossable)

    @cached_property
    def demazure(self) -> Permutation:
        return demazure_product(self.word, self.n)

    @cached_property
    def suffix_demazure(self) -> tuple[Permutation, ...]:
        """``suffix_demazure[k]`` is the Demazure product of ``word[k:]``."""
        out = []
        for k in range(len(self.word) + 1):
            out.append(demazure_product(self.word[k:], self.n))
        return tuple(out)

    @cached_property
    def entries(self) -> dict:
        """Where each pipe enters: ``{p: (cell, 'W' | 'S')}``."""
        out = {}
        for p, ((x, y), s) in enumerate(zip(self.start_path.points(), self.start), start=1):
            out[p] = ((x, y - 1), "W") if s == "S" else ((x, y), "S")
        return out

    @cached_property
    def exits(self) -> dict:
        """Where each ending step is reached: ``{(cell, 'E' | 'N'): i}``."""
        out = {}
        for i, ((x, y), s) in enumerate(zip(self.end_path.points(), self.end), start=1):
            out[((x - 1, y - 1), "E") if s == "S" else ((x, y - 1), "N")] = i
        return out

    def start_point(self, p: int) -> tuple[int, int]:
        """SW corner of the first cell of pipe ``p``."""
        return self.entries[p][0]

    def end_point(self, i: int) -> tuple[int, int]:
        """NE corner of the cell through which ending step ``i`` is reached."""
        for (cell, d), j in self.exits.items():
            if j == i:
                return (cell[0] + 1, cell[1] + 1)
        raise KeyError(i)

    # -- predicates ------------------------------------------------------

    def is_sortable(self, w: Permutation) -> bool:
        if len(w) != self.n:
            return False
        return bruhat_leq(w, self.demazure)

    def is_complete(self) -> bool:
        return self.is_sortable(longest(self.n))

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "start": self.start, "t": self.t, "end": self.end}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "AlternatingShape":
        try:
            return cls(int(d["n"]), str(d["start"]), int(d["t"]), str(d["end"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidShape(f"malformed shape record: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "AlternatingShape":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidShape(f"malformed JSON: {exc}") from None
        if not isinstance(d, dict):
            raise InvalidShape("shape JSON must be an object")
        return cls.from_dict(d)

    def label(self) -> str:
        return f"n={self.n},start={self.start},t={self.t},end={self.end}"


def _enclosed_cells(pts: list[tuple[int, int]]) -> set[Cell]:
    # cells whose centre lies inside the lattice polygon (even-odd rule)
    verticals = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        if x0 == x1:
            verticals.append((x0, min(y0, y1)))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    out = set()
    for x in range(min(xs), max(xs)):
        for y in range(min(ys), max(ys)):
            crossings = sum(1 for vx, vy in verticals if vy == y and vx > x)
            if crossings % 2:
                out.add((x, y))
    return out


def validate(F: AlternatingShape) -> tuple[bool, list[str]]:
    return F.validate()


def cells(F: AlternatingShape) -> frozenset:
    return F.cells


def word(F: AlternatingShape) -> tuple[int, ...]:
    return F.word


def is_sortable(F: AlternatingShape, w: Permutation) -> bool:
    return F.is_sortable(w)


def is_complete(F: AlternatingShape) -> bool:
    return F.is_complete()


def triangular(n: int) -> AlternatingShape:
    """The classical staircase shape."""
    return AlternatingShape(n, "S" * n, 0, "E" * n)


def enumerate_shapes(n: int, max_t: int | None = None) -> Iterator[AlternatingShape]:
    """Every valid shape with ``n`` pipes and NW stair length at most ``max_t``."""
    if max_t is None:
        max_t = n
    for t in range(max_t + 1):
        for start in product("SE", repeat=n):
            for end in product("SE", repeat=n):
                F = AlternatingShape(n, "".join(start), t, "".join(end))
                if F.is_valid():
                    yield F


def _path_summary(steps: str) -> tuple[int, int, int]:
    """Twice the signed area swept from the origin along ``steps``, and the end point."""
    x = y = twice = 0
    for s in steps:
        dx, dy = _STEP[s]
        twice += x * dy - y * dx
        x, y = x + dx, y + dy
    return twice, x, y


def small_shapes(n: int, max_cells: int) -> Iterator[AlternatingShape]:
    """Every valid shape with ``n`` pipes and at most ``max_cells`` cells."""
    paths = ["".join(p) for p in product("SE", repeat=n)]
    summary = {p: _path_summary(p) for p in paths}
    # the NW stair borders t distinct cells, so t <= max_cells
    for t in range(max_cells + 1):
        for start in paths:
            s2, ax, ay = summary[start]
            for end in paths:
                b = t + end.count("E") - start.count("E")
                if b < 0:
                    continue
                e2, ex, ey = summary[end]
                # shoelace over start path, SE stair, reversed end path, NW stair
                area2 = s2 + b * (ax - ay + 1) - (e2 + t * (ey - ex)) + t
                if 0 < area2 <= 2 * max_cells:
                    F = AlternatingShape(n, start, t, end)
                    if F.is_valid():
                        yield F


def is_alternating_word(word: Iterable[int]) -> bool:
    """Between two equal letters ``i``, both ``i-1`` and ``i+1`` occur (when they exist)."""
    word = list(word)
    if not word:
        return True
    top = max(word) + 1
    last: dict[int, int] = {}
    for k, i in enumerate(word):
        if i in last:
            between = set(word[last[i] + 1 : k])
            for j in (i - 1, i + 1):
                if 1 <= j < top and j in set(word) and j not in between:
                    return False
        last[i] = k
    return True


def _boundary_word(region: set[Cell]) -> str | None:
    # directed CCW boundary edges of the region; None unless a single simple loop through (0, 0)
    edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
    directed = set()
    for x, y in region:
        loop = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        for a, b in zip(loop, loop[1:] + loop[:1]):
            if (b, a) in directed:
                directed.remove((b, a))
            else:
                directed.add((a, b))
    for a, b in directed:
        edges.setdefault(a, []).append(b)
    if any(len(v) != 1 for v in edges.values()) or (0, 0) not in edges:
        return None
    steps = []
    cur = (0, 0)
    while True:
        nxt = edges[cur][0]
        d = (nxt[0] - cur[0], nxt[1] - cur[1])
        steps.append({v: k for k, v in _STEP.items()}[d])
        cur = nxt
        if cur == (0, 0):
            break
    if len(steps) != len(directed):
        return None
    return "".join(steps)


def recognize(region: Iterable[Cell]) -> tuple[AlternatingShape | None, list[str]]:
    """
    Decide whether a set of cells, pinned at the origin, is an alternating shape.

    Returns the shape and an empty list, or ``None`` and the reasons the
    boundary does not split into starting path, SE stair, ending path and NW
    stair.
    """
    region = set(region)
    if not region:
        return None, ["empty cell set"]
    bw = _boundary_word(region)
    if bw is None:
        return None, ["boundary is not a single simple loop through (0, 0)"]
    # bw = start . (EN)^b . reversed(end as N/W) . (WS)^t
    t = 0
    rest = bw
    while rest.endswith("WS"):
        rest = rest[:-2]
        t += 1
    reasons = []
    if rest and rest[-1] not in "NW":
        reasons.append("NW boundary is not a stair path (NE)^t")
    for b in range(len(rest) // 2 + 1):
        m = len(rest) - 2 * b
        if m % 2:
            continue
        n = m // 2
        head, stair, tail = rest[:n], rest[n : n + 2 * b], rest[n + 2 * b :]
        if set(head) <= {"S", "E"} and stair == "EN" * b and set(tail) <= {"N", "W"} and n > 0:
            end = "".join({"N": "S", "W": "E"}[c] for c in reversed(tail))
            F = AlternatingShape(n, head, t, end)
            if F.is_valid() and F.cells == frozenset(region):
                return F, []
    if not reasons:
        reasons.append(
            "boundary does not split into an S/E starting path, an (EN)^b stair "
            "and an S/E ending path"
        )
    return None, reasons
