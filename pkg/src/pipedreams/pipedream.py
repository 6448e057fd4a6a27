"""
Pipe dreams on alternating shapes.

A pipe dream is a shape together with the set of its cells holding a cross;
every other cell holds a contact. Pipes move north and east only. In a cross
the pipe coming from the west leaves east and the pipe coming from the south
leaves north; in a contact the western pipe turns north (the NW elbow) and the
southern pipe turns east (the SE elbow).

Two views of a filling are used:

* :func:`trace` walks the pipes cell by cell on the grid, and is the
  reference semantics (it detects pipes leaving the shape);
* :func:`_sweep` works with positions only: a crossable cell on diagonal
  ``d`` sees the pipes at positions ``d`` and ``d+1``, and a cross swaps them.

The test-suite checks the two against each other.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import CyclicGraph, InvalidFilling, InvalidShape, NotFlippable, NotReduced
from .permutation import Permutation, bruhat_leq, identity
from .shape import AlternatingShape, Cell

__all__ = [
    "PipeDream",
    "Zone",
    "ContactGraph",
    "trace",
    "is_reduced",
    "reduce",
    "zones",
    "start_end_coords",
    "contact_graph",
    "is_acyclic",
    "is_strongly_acyclic",
    "linear_extensions",
    "is_linear_extension",
    "flippable_contacts",
    "flip",
    "is_increasing",
    "enumerate_pipe_dreams",
    "strongly_acyclic_subset",
    "enumerate_by_flips",
    "flip_graph",
    "FlipGraph",
]

CROSS, CONTACT = "X", "C"


@dataclass(frozen=True)
class Zone:
    pipe: int
    rect: tuple[int, int, int, int]  # (x_start, y_start, x_end, y_end)

    def __contains__(self, cell: Cell) -> bool:
        xs, ys, xe, ye = self.rect
        return xs <= cell[0] < xe and ys <= cell[1] < ye


@dataclass(frozen=True)
class PipeDream:
    """A filling of ``shape``: ``crosses`` is the set of cells holding a cross."""

    shape: AlternatingShape
    crosses: frozenset

    def __post_init__(self):
        object.__setattr__(self, "crosses", frozenset(self.crosses))
        extra = self.crosses - self.shape.cells
        if extra:
            raise InvalidFilling(f"crosses outside the shape: {sorted(extra)}")

    @classmethod
    def all_contacts(cls, shape: AlternatingShape) -> "PipeDream":
        return cls(shape, frozenset())

    def tile(self, cell: Cell) -> str:
        return CROSS if cell in self.crosses else CONTACT

    @cached_property
    def _traced(self):
        return _trace(self.shape, self.crosses)

    @property
    def traces(self) -> dict[int, list[tuple[Cell, str, str]]]:
        return self._traced[0]

    @property
    def exit(self) -> Permutation:
        return self._traced[1]

    @property
    def tiles(self) -> dict[Cell, tuple[int | None, int | None]]:
        """Incoming ``(west, south)`` pipes of every cell."""
        return self._traced[2]

    @cached_property
    def sort_key(self) -> tuple[int, ...]:
        return tuple(1 if c in self.crosses else 0 for c in self.shape.sweep)

    def __lt__(self, other: "PipeDream") -> bool:
        return (self.shape.label(), self.sort_key) < (other.shape.label(), other.sort_key)

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "shape": self.shape.to_dict(),
            "cells": [
                {"x": x, "y": y, "t": self.tile((x, y))} for x, y in self.shape.sweep
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "PipeDream":
        if not isinstance(d, dict) or "shape" not in d or "cells" not in d:
            raise InvalidFilling("pipe dream record needs 'shape' and 'cells'")
        shape = AlternatingShape.from_dict(d["shape"]).check()
        seen = {}
        for rec in d["cells"]:
            try:
                cell, t = (int(rec["x"]), int(rec["y"])), rec["t"]
            except (KeyError, TypeError, ValueError):
                raise InvalidFilling(f"malformed cell record {rec!r}") from None
            if t not in (CROSS, CONTACT):
                raise InvalidFilling(f"unknown tile {t!r} at {cell}")
            if cell in seen:
                raise InvalidFilling(f"cell {cell} listed twice")
            seen[cell] = t
        if set(seen) != set(shape.cells):
            raise InvalidFilling("cell list does not match the shape's cells")
        return cls(shape, frozenset(c for c, t in seen.items() if t == CROSS))

    @classmethod
    def from_json(cls, text: str) -> "PipeDream":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidFilling(f"malformed JSON: {exc}") from None
        return cls.from_dict(d)


def _trace(shape: AlternatingShape, crosses: frozenset):
    cells = shape.cells
    west_in: dict[Cell, int] = {}
    south_in: dict[Cell, int] = {}
    for p, (cell, side) in shape.entries.items():
        (west_in if side == "W" else south_in)[cell] = p
    exits = shape.exits
    traces: dict[int, list] = {p: [] for p in range(1, shape.n + 1)}
    tiles = {}
    ending = [0] * (shape.n + 1)
    for cell in shape.sweep:
        x, y = cell
        w, s = west_in.get(cell), south_in.get(cell)
        tiles[cell] = (w, s)
        if cell in crosses:
            east, north = w, s
        else:
            east, north = s, w
        if w is not None:
            traces[w].append((cell, "W", "E" if east == w else "N"))
        if s is not None:
            traces[s].append((cell, "S", "N" if north == s else "E"))
        for pipe, side, nxt, table in (
            (east, "E", (x + 1, y), west_in),
            (north, "N", (x, y + 1), south_in),
        ):
            if pipe is None:
                continue
            if nxt in cells:
                table[nxt] = pipe
            elif (cell, side) in exits:
                ending[exits[cell, side]] = pipe
            else:
                raise InvalidFilling(
                    f"pipe {pipe} leaves cell {cell} through its {side} side, off the ending path"
                )
    if sorted(ending[1:]) != list(range(1, shape.n + 1)):
        raise InvalidFilling("not every ending step is reached by a pipe")
    return traces, Permutation(ending[1:]), tiles


def trace(P: PipeDream) -> tuple[dict[int, list], Permutation]:
    """Per-pipe ``(cell, entry side, exit side)`` sequences and the exit permutation."""
    return P.traces, P.exit


# -- position-level sweep ------------------------------------------------


def _sweep(shape: AlternatingShape, crosses: frozenset):
    """Exit word, contact arcs and the (west, south) pipes of every crossable cell."""
    n = shape.n
    w = list(range(n + 1))
    arcs = set()
    pipes = {}
    for cell, d in zip(shape.crossable, shape.word):
        a, b = w[d], w[d + 1]
        pipes[cell] = (a, b)
        if cell in crosses:
            w[d], w[d + 1] = b, a
        else:
            arcs.add((a, b))
    return tuple(w[1:]), arcs, pipes


@dataclass(frozen=True)
class _Analysis:
    exit: Permutation
    arcs: frozenset
    pipes: dict
    crossing_pairs: Counter


def _analysis(P: PipeDream) -> _Analysis:
    cached = P.__dict__.get("_analysis")
    if cached is None:
        if not P.crosses <= set(P.shape.crossable):
            P.exit  # raises InvalidFilling through the grid trace
        word, arcs, pipes = _sweep(P.shape, P.crosses)
        pairs = Counter(tuple(sorted(pipes[c])) for c in P.crosses)
        cached = _Analysis(Permutation._trusted(word), frozenset(arcs), pipes, pairs)
        P.__dict__["_analysis"] = cached
    return cached


def is_reduced(P: PipeDream) -> bool:
    """No two pipes cross twice."""
    return all(k <= 1 for k in _analysis(P).crossing_pairs.values())


def _require_reduced(P: PipeDream) -> None:
    if not is_reduced(P):
        raise NotReduced("pipe dream is not reduced")


def reduce(P: PipeDream) -> PipeDream:
    """Replace pairs of crosses between the same two pipes by contacts until reduced."""
    order = {c: k for k, c in enumerate(P.shape.sweep)}
    while True:
        an = _analysis(P)
        doubled = sorted(pair for pair, k in an.crossing_pairs.items() if k > 1)
        if not doubled:
            return P
        pair = doubled[0]
        cells = sorted((c for c in P.crosses if tuple(sorted(an.pipes[c])) == pair), key=order.get)
        P = PipeDream(P.shape, P.crosses - set(cells[:2]))


# -- zones ----------------------------------------------------------------


def start_end_coords(P: PipeDream, p: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """SW corner of the first cell and NE corner of the last cell of pipe ``p``."""
    path = P.traces[p]
    first, last = path[0][0], path[-1][0]
    return first, (last[0] + 1, last[1] + 1)


def zones(P: PipeDream) -> list[Zone]:
    out = []
    for p in range(1, P.shape.n + 1):
        (xs, ys), (xe, ye) = start_end_coords(P, p)
        out.append(Zone(p, (xs, ys, xe, ye)))
    return out


def elbows(P: PipeDream) -> dict[int, list[tuple[Cell, str]]]:
    """Turns of each pipe: ``(cell, 'NW')`` for west-to-north, ``(cell, 'SE')`` for south-to-east."""
    out: dict[int, list] = {}
    for p, path in P.traces.items():
        out[p] = [
            (cell, "NW" if i == "W" else "SE")
            for cell, i, o in path
            if (i, o) in (("W", "N"), ("S", "E"))
        ]
    return out


# -- contact graphs ------------------------------------------------------


@dataclass(frozen=True)
class ContactGraph:
    n: int
    arcs: frozenset
    extended: bool = False
    plain_arcs: frozenset | None = None

    def successors(self, a: int) -> list[int]:
        return sorted(b for x, b in self.arcs if x == a)

    @cached_property
    def reach(self) -> list[int]:
        """``reach[a]`` is a bitmask of the vertices reachable from ``a`` (not reflexive)."""
        n = self.n
        out = [0] * (n + 1)
        adj = [0] * (n + 1)
        for a, b in self.arcs:
            adj[a] |= 1 << b
        for a in range(1, n + 1):
            seen, frontier = 0, adj[a]
            while frontier:
                seen |= frontier
                nxt = 0
                for v in range(1, n + 1):
                    if frontier >> v & 1:
                        nxt |= adj[v]
                frontier = nxt & ~seen
            out[a] = seen
        return out

    def has_path(self, a: int, b: int) -> bool:
        return bool(self.reach[a] >> b & 1)

    def is_acyclic(self) -> bool:
        return not any(self.reach[a] >> a & 1 for a in range(1, self.n + 1))

    def leq(self, a: int, b: int) -> bool:
        """Reflexive-transitive closure."""
        return a == b or self.has_path(a, b)

    def topological_orders(self) -> list[Permutation]:
        if not self.is_acyclic():
            raise CyclicGraph("graph has a directed cycle")
        n = self.n
        preds = [0] * (n + 1)
        for a, b in self.arcs:
            preds[b] |= 1 << a
        out = []
        word = []

        def rec(placed: int):
            if len(word) == n:
                out.append(Permutation._trusted(word))
                return
            for v in range(1, n + 1):
                if not placed >> v & 1 and preds[v] & ~placed == 0:
                    word.append(v)
                    rec(placed | 1 << v)
                    word.pop()

        rec(0)
        return out

    def to_dot(self, name: str = "contact") -> str:
        lines = [f"digraph {name} {{"]
        for v in range(1, self.n + 1):
            lines.append(f"  {v};")
        plain = self.plain_arcs if self.plain_arcs is not None else self.arcs
        for a, b in sorted(self.arcs):
            style = "" if (a, b) in plain else " [style=dashed]"
            lines.append(f"  {a} -> {b}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def contact_graph(P: PipeDream, extended: bool = False) -> ContactGraph:
    _require_reduced(P)
    an = _analysis(P)
    n = P.shape.n
    if not extended:
        return ContactGraph(n, an.arcs, False, an.arcs)
    return ContactGraph(n, an.arcs | an.exit.noninversions(), True, an.arcs)


def is_acyclic(P: PipeDream) -> bool:
    return contact_graph(P).is_acyclic()


def is_strongly_acyclic(P: PipeDream) -> bool:
    return contact_graph(P, extended=True).is_acyclic()


def linear_extensions(P: PipeDream) -> list[Permutation]:
    """
    Topological orders of the extended contact graph.

    Also computed as the topological orders of the plain graph lying below
    the exit permutation; the two must agree.
    """
    cached = P.__dict__.get("_lin")
    if cached is not None:
        return list(cached)
    ext = contact_graph(P, extended=True)
    if not ext.is_acyclic():
        raise CyclicGraph("pipe dream is not strongly acyclic")
    lin = ext.topological_orders()
    inv = P.exit.inversions()
    below = [s for s in contact_graph(P).topological_orders() if s.inversions() <= inv]
    if below != lin:
        raise AssertionError("the two descriptions of the linear extensions disagree")
    P.__dict__["_lin"] = tuple(lin)
    return lin


def is_linear_extension(P: PipeDream, pi: Permutation) -> bool:
    """Whether ``pi`` lists every arc of the extended contact graph forwards."""
    pos = pi.positions()
    return all(pos[a] < pos[b] for a, b in contact_graph(P, extended=True).arcs)


# -- flips -------------------------------------------------------------


def _crossing_of(P: PipeDream, pair: tuple[int, int]) -> Cell | None:
    an = _analysis(P)
    for c in P.crosses:
        if tuple(sorted(an.pipes[c])) == pair:
            return c
    return None


def flippable_contacts(P: PipeDream) -> list[Cell]:
    _require_reduced(P)
    an = _analysis(P)
    out = []
    for cell in P.shape.crossable:
        if cell in P.crosses:
            continue
        if an.crossing_pairs.get(tuple(sorted(an.pipes[cell])), 0):
            out.append(cell)
    return out


def flip(P: PipeDream, cell: Cell) -> PipeDream:
    """Exchange the contact at ``cell`` with the crossing of its two pipes."""
    _require_reduced(P)
    an = _analysis(P)
    if cell in P.crosses or cell not in an.pipes:
        raise NotFlippable(f"{cell} is not a two-pipe contact")
    x = _crossing_of(P, tuple(sorted(an.pipes[cell])))
    if x is None:
        raise NotFlippable(f"the pipes {an.pipes[cell]} through {cell} never cross")
    return PipeDream(P.shape, (P.crosses - {x}) | {cell})


def flip_partner(P: PipeDream, cell: Cell) -> Cell:
    """The crossing exchanged with the contact at ``cell`` by :func:`flip`."""
    an = _analysis(P)
    if cell in P.crosses or cell not in an.pipes:
        raise NotFlippable(f"{cell} is not a two-pipe contact")
    x = _crossing_of(P, tuple(sorted(an.pipes[cell])))
    if x is None:
        raise NotFlippable(f"the pipes {an.pipes[cell]} through {cell} never cross")
    return x


def is_increasing(P: PipeDream, cell: Cell) -> bool:
    """Whether flipping ``cell`` is increasing: the contact lies south-west of the crossing."""
    x = flip_partner(P, cell)
    return cell[0] <= x[0] and cell[1] <= x[1]


# -- enumeration ---------------------------------------------------------


def _dfs_fillings(
    shape: AlternatingShape, omega: Permutation, strongly: bool, acyclic: bool = False
) -> Iterator[tuple[int, ...]]:
    """
    Crossed indices into ``shape.crossable`` of every reduced filling with exit ``omega``.

    ``strongly`` (resp. ``acyclic``) prunes fillings whose extended (resp.
    plain) contact graph has a cycle.
    """
    strongly = strongly or acyclic
    n = shape.n
    word = shape.word
    m = len(word)
    sufdem = shape.suffix_demazure
    target = tuple(omega)
    inv_omega = omega.inversions()
    w = list(range(n + 1))
    winv = list(range(n + 1))
    chosen: list[int] = []

    reach0 = [0] * (n + 1)
    if strongly and not acyclic:
        for a, b in omega.noninversions():
            reach0[a] |= 1 << b
        reach0 = _close(reach0, n)

    def feasible(k: int) -> bool:
        u = [winv[v] for v in target]
        return bruhat_leq(u, sufdem[k])

    def rec(k: int, reach: list[int]):
        if k == m:
            if tuple(w[1:]) == target:
                yield tuple(chosen)
            return
        d = word[k]
        a, b = w[d], w[d + 1]
        # contact
        if strongly:
            if reach[b] >> a & 1:
                nreach = None
            else:
                nreach = _add_arc(reach, a, b, n)
        else:
            nreach = reach
        if nreach is not None and feasible(k + 1):
            yield from rec(k + 1, nreach)
        # cross
        if a < b and (a, b) in inv_omega:
            w[d], w[d + 1] = b, a
            winv[a], winv[b] = d + 1, d
            chosen.append(k)
            if feasible(k + 1):
                yield from rec(k + 1, reach)
            chosen.pop()
            w[d], w[d + 1] = a, b
            winv[a], winv[b] = d, d + 1

    if len(omega) != n or not shape.is_sortable(omega):
        return
    yield from rec(0, reach0)


def _close(reach: list[int], n: int) -> list[int]:
    reach = list(reach)
    changed = True
    while changed:
        changed = False
        for a in range(1, n + 1):
            r = reach[a]
            acc = r
            for v in range(1, n + 1):
                if r >> v & 1:
                    acc |= reach[v]
            if acc != r:
                reach[a] = acc
                changed = True
    return reach


def _add_arc(reach: list[int], a: int, b: int, n: int) -> list[int]:
    gain = reach[b] | 1 << b
    out = list(reach)
    for x in range(1, n + 1):
        if x == a or reach[x] >> a & 1:
            out[x] |= gain
    return out


def _from_indices(shape: AlternatingShape, idx: Iterable[int]) -> PipeDream:
    cr = shape.crossable
    return PipeDream(shape, frozenset(cr[k] for k in idx))


def enumerate_pipe_dreams(shape: AlternatingShape, omega: Permutation) -> list[PipeDream]:
    """All reduced pipe dreams on ``shape`` with exit permutation ``omega``, in canonical order."""
    shape.check()
    return [_from_indices(shape, idx) for idx in _dfs_fillings(shape, omega, False)]


def strongly_acyclic_subset(shape: AlternatingShape, omega: Permutation) -> list[PipeDream]:
    """The reduced, strongly acyclic pipe dreams with exit ``omega``, in canonical order."""
    shape.check()
    return [_from_indices(shape, idx) for idx in _dfs_fillings(shape, omega, True)]


def enumerate_by_flips(seed: PipeDream) -> list[PipeDream]:
    """Closure of ``seed`` under flips, in canonical order."""
    _require_reduced(seed)
    seen = {seed}
    queue = deque([seed])
    while queue:
        P = queue.popleft()
        for c in flippable_contacts(P):
            Q = flip(P, c)
            if Q not in seen:
                seen.add(Q)
                queue.append(Q)
    return sorted(seen, key=lambda P: P.sort_key)


@dataclass
class FlipGraph:
    nodes: list[PipeDream]
    arcs: list[tuple[int, int]]  # indices into nodes, increasing flips

    @property
    def sources(self) -> list[int]:
        targets = {j for _, j in self.arcs}
        return [i for i in range(len(self.nodes)) if i not in targets]

    @property
    def sinks(self) -> list[int]:
        origins = {i for i, _ in self.arcs}
        return [i for i in range(len(self.nodes)) if i not in origins]

    def is_acyclic(self) -> bool:
        indeg = Counter(j for _, j in self.arcs)
        succ: dict[int, list[int]] = {}
        for i, j in self.arcs:
            succ.setdefault(i, []).append(j)
        ready = [i for i in range(len(self.nodes)) if not indeg[i]]
        count = 0
        while ready:
            i = ready.pop()
            count += 1
            for j in succ.get(i, []):
                indeg[j] -= 1
                if not indeg[j]:
                    ready.append(j)
        return count == len(self.nodes)

    def reachable(self, i: int, j: int) -> bool:
        succ: dict[int, list[int]] = {}
        for a, b in self.arcs:
            succ.setdefault(a, []).append(b)
        seen, stack = {i}, [i]
        while stack:
            a = stack.pop()
            if a == j:
                return True
            for b in succ.get(a, []):
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return False

    def to_dot(self) -> str:
        lines = ["digraph flips {"]
        for i, P in enumerate(self.nodes):
            label = "".join(map(str, P.sort_key))
            lines.append(f'  {i} [label="{label}"];')
        for i, j in self.arcs:
            lines.append(f"  {i} -> {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def flip_graph(shape: AlternatingShape, omega: Permutation) -> FlipGraph:
    nodes = enumerate_pipe_dreams(shape, omega)
    index = {P: i for i, P in enumerate(nodes)}
    arcs = []
    for i, P in enumerate(nodes):
        for c in flippable_contacts(P):
            if is_increasing(P, c):
                arcs.append((i, index[flip(P, c)]))
    return FlipGraph(nodes, sorted(arcs))
