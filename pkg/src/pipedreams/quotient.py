"""
The insertion map from a weak order interval ``[id, omega]`` to strongly
acyclic pipe dreams, the congruence it defines, the acyclic order on its
image, and exhaustive verifiers for the statements about them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Iterable, Iterator

from .errors import (
    DifferentContext,
    InternalInconsistency,
    NotBelow,
    NotComplete,
    NotSortable,
)
from .permutation import (
    Permutation,
    bruhat_leq,
    from_inversions,
    from_noninversions,
    identity,
    interval,
    longest,
    weak_covers_up,
    weak_join,
    weak_leq,
    weak_meet,
)
from .pipedream import (
    PipeDream,
    _analysis,
    _dfs_fillings,
    _from_indices,
    contact_graph,
    elbows,
    enumerate_by_flips,
    enumerate_pipe_dreams,
    flip,
    flip_graph,
    is_acyclic,
    is_linear_extension,
    is_strongly_acyclic,
    linear_extensions,
    start_end_coords,
    strongly_acyclic_subset,
    zones,
)
from .shape import AlternatingShape, Cell, enumerate_shapes

__all__ = [
    "Decision",
    "sweep_insert",
    "sweep_trace",
    "pipe_insert",
    "ins",
    "CongruenceClass",
    "congruence_classes",
    "Check",
    "VerificationReport",
    "check_partition",
    "check_congruence",
    "AcyclicOrder",
    "acyclic_leq",
    "acyclic_covers",
    "acyclic_meet",
    "acyclic_join",
    "cover_flips",
    "check_acyclic_order",
    "extremal_extensions",
    "verify_complete_shape",
    "verify_lemmas",
    "find_acyclic_not_strongly",
]


def _check_inputs(shape: AlternatingShape, omega: Permutation, pi: Permutation) -> None:
    shape.check()
    if len(omega) != shape.n or len(pi) != shape.n:
        raise NotBelow(f"permutations must have size n={shape.n}")
    if not shape.is_sortable(omega):
        raise NotSortable(f"{omega} is not sortable on {shape.label()}")
    if not weak_leq(pi, omega):
        raise NotBelow(f"{pi} is not below {omega} in the weak order")


# -- sweeping algorithm --------------------------------------------------


@dataclass(frozen=True)
class Decision:
    cell: Cell
    west: int
    south: int
    cross: bool
    reason: str  # "noninversion", "order", "last", "later"

    def __str__(self) -> str:
        kind = "cross" if self.cross else "contact"
        a, b = sorted((self.west, self.south))
        return f"{kind}({a},{b})"


def sweep_trace(shape: AlternatingShape, omega: Permutation, pi: Permutation) -> tuple[PipeDream, list[Decision]]:
    """
    Sweep the crossable cells south-west to north-east and decide each tile.

    The pipes ``p`` (west) and ``q`` (south) cross iff ``(p, q)`` is an
    inversion of ``omega`` and either ``pi`` has ``q`` before ``p`` or the
    cell is their last possible crossing point, i.e. what is left of
    ``omega`` is not Bruhat-below the Demazure product of the cells after it.
    """
    _check_inputs(shape, omega, pi)
    n = shape.n
    pos_pi = pi.positions()
    inv_omega = omega.inversions()
    sufdem = shape.suffix_demazure
    w = list(range(n + 1))
    winv = list(range(n + 1))
    crossed = []
    decisions = []
    for k, (cell, d) in enumerate(zip(shape.crossable, shape.word)):
        a, b = w[d], w[d + 1]
        if a < b and (a, b) in inv_omega:
            if pos_pi[a] > pos_pi[b]:
                cross, reason = True, "order"
            else:
                rest = [winv[v] for v in omega]
                if bruhat_leq(rest, sufdem[k + 1]):
                    cross, reason = False, "later"
                else:
                    cross, reason = True, "last"
        else:
            cross, reason = False, "noninversion"
        decisions.append(Decision(cell, a, b, cross, reason))
        if cross:
            crossed.append(k)
            w[d], w[d + 1] = b, a
            winv[a], winv[b] = d + 1, d
    if tuple(w[1:]) != tuple(omega):
        raise InternalInconsistency(f"sweep produced exit {w[1:]} instead of {omega}")
    return _from_indices(shape, crossed), decisions


def sweep_insert(shape: AlternatingShape, omega: Permutation, pi: Permutation) -> PipeDream:
    return sweep_trace(shape, omega, pi)[0]


# -- pipe by pipe insertion ----------------------------------------------


class _Board:
    """Partial filling: the strands ``(pipe, in, out)`` placed in each cell."""

    def __init__(self, shape: AlternatingShape, omega: Permutation):
        self.shape = shape
        self.inv = omega.inversions()
        self.strands: dict[Cell, list[tuple[int, str, str]]] = {}
        self.crossed: set[tuple[int, int]] = set()

    def single(self, cell: Cell) -> bool:
        return not 1 <= cell[0] - cell[1] <= self.shape.n - 1

    def pending(self, cell: Cell) -> bool:
        """Only the west-to-north elbow of a contact is there, waiting for its partner."""
        have = self.strands.get(cell, [])
        return len(have) == 1 and have[0][1:] == ("W", "N") and not self.single(cell)

    def allowed(self, pipe: int, cell: Cell, i: str, o: str) -> bool:
        have = self.strands.get(cell, [])
        if len(have) >= 2:
            return False
        if self.single(cell):
            # one pipe only: a forced contact, so the pipe turns
            return not have and (i, o) in (("W", "N"), ("S", "E"))
        if not have:
            return (i, o) != ("S", "E")
        other, hi, ho = have[0]
        if (hi, ho) == ("W", "N"):
            return (i, o) == ("S", "E")
        if {(hi, ho), (i, o)} != {("W", "E"), ("S", "N")}:
            return False
        pair = (min(pipe, other), max(pipe, other))
        return pair in self.inv and pair not in self.crossed

    def place(self, pipe: int, path: list[tuple[Cell, str, str]]) -> None:
        for cell, i, o in path:
            have = self.strands.setdefault(cell, [])
            if have and (i, o) in (("W", "E"), ("S", "N")):
                self.crossed.add((min(pipe, have[0][0]), max(pipe, have[0][0])))
            have.append((pipe, i, o))

    def remove(self, pipe: int, path: list[tuple[Cell, str, str]]) -> None:
        for cell, i, o in path:
            have = self.strands[cell]
            have.pop()
            if have and (i, o) in (("W", "E"), ("S", "N")):
                self.crossed.discard((min(pipe, have[0][0]), max(pipe, have[0][0])))
            if not have:
                del self.strands[cell]


def _paths(board: _Board, pipe: int, start: tuple[Cell, str], goal: tuple[Cell, str]) -> Iterator[list]:
    shape = board.shape
    cells = shape.cells
    exits = shape.exits
    path: list[tuple[Cell, str, str]] = []

    def rec(cell: Cell, side: str):
        if cell not in cells:
            return
        for out in ("E", "N"):
            if not board.allowed(pipe, cell, side, out):
                continue
            have = board.strands.get(cell)
            pair = None
            if have and (side, out) in (("W", "E"), ("S", "N")):
                pair = (min(pipe, have[0][0]), max(pipe, have[0][0]))
                board.crossed.add(pair)
            path.append((cell, side, out))
            if (cell, out) == goal:
                yield list(path)
            elif (cell, out) not in exits:
                nxt = (cell[0] + 1, cell[1]) if out == "E" else (cell[0], cell[1] + 1)
                yield from rec(nxt, "W" if out == "E" else "S")
            path.pop()
            if pair:
                board.crossed.discard(pair)

    yield from rec(*start)


def pipe_insert(shape: AlternatingShape, omega: Permutation, pi: Permutation) -> PipeDream:
    """
    Insert the pipes one at a time in the order of ``pi``.

    Pipe ``pi(i)`` runs from its starting step to step ``omega^-1(pi(i))`` of
    the ending path, and its south-to-east elbows complete exactly the
    west-to-north elbows left open inside its zone by earlier pipes.

    Where the elbow rule leaves a pipe more than one route, the routes are
    tried in turn and a route is dropped as soon as it leaves a half-filled
    cell that no later pipe can reach, or forces two pipes to cross twice.
    Exactly one complete filling must survive.
    """
    _check_inputs(shape, omega, pi)
    board = _Board(shape, omega)
    pos_omega = omega.positions()
    end_side = {i: key for key, i in shape.exits.items()}
    rects = {}
    for p in pi:
        (xs, ys), _ = shape.entries[p]
        (xe, ye), _ = end_side[pos_omega[p]]
        rects[p] = (xs, ys, xe + 1, ye + 1)

    def inside(c: Cell, p: int) -> bool:
        xs, ys, xe, ye = rects[p]
        return xs <= c[0] < xe and ys <= c[1] < ye

    solutions: list[PipeDream] = []
    rejected = []

    def finish() -> None:
        crosses = set()
        for cell in shape.cells:
            here = board.strands.get(cell, [])
            if not board.single(cell) and len(here) != 2:
                raise InternalInconsistency(f"cell {cell} is left with a dangling half-elbow")
            if {(i, o) for _, i, o in here} == {("W", "E"), ("S", "N")}:
                crosses.add(cell)
        P = PipeDream(shape, frozenset(crosses))
        if P.exit != omega:
            raise InternalInconsistency("insertion produced the wrong exit permutation")
        if is_linear_extension(P, pi):
            solutions.append(P)
        else:
            rejected.append(P)

    def rec(k: int):
        if k == len(pi):
            finish()
            return
        p = pi[k]
        later = pi[k + 1:]
        open_here = {c for c in board.strands if board.pending(c) and inside(c, p)}
        for path in list(_paths(board, p, shape.entries[p], end_side[pos_omega[p]])):
            completed = {c for c, i, o in path if (i, o) == ("S", "E") and c in open_here}
            if completed != open_here:
                continue
            board.place(p, path)
            stranded = any(
                len(v) == 1 and not board.single(c) and not any(inside(c, q) for q in later)
                for c, v in board.strands.items()
            )
            if not stranded:
                rec(k + 1)
            board.remove(p, path)
            if len(solutions) > 1:
                return

    rec(0)
    if len(solutions) != 1:
        raise InternalInconsistency(f"pipe insertion found {len(solutions)} fillings instead of one")
    return solutions[0]


def ins(
    shape: AlternatingShape, omega: Permutation, pi: Permutation, cross_check: bool = False
) -> PipeDream:
    """The strongly acyclic pipe dream with exit ``omega`` having ``pi`` as a linear extension."""
    P = sweep_insert(shape, omega, pi)
    if cross_check:
        Q = pipe_insert(shape, omega, pi)
        if P != Q:
            raise InternalInconsistency(f"sweep and pipe insertion disagree on pi={pi}")
    return P


# -- classes -------------------------------------------------------------


@dataclass
class CongruenceClass:
    pipe_dream: PipeDream
    members: list[Permutation]
    min: Permutation
    max: Permutation

    @classmethod
    def of(cls, P: PipeDream) -> "CongruenceClass":
        members = linear_extensions(P)
        lo, hi = extremal_extensions(P)
        return cls(P, members, lo, hi)


def extremal_extensions(P: PipeDream) -> tuple[Permutation, Permutation]:
    """Min and max linear extensions read off the closure of the extended contact graph."""
    g = contact_graph(P, extended=True)
    n = P.shape.n
    pairs = [(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]
    lo = from_inversions(n, [(p, q) for p, q in pairs if g.has_path(q, p)])
    hi = from_noninversions(n, [(p, q) for p, q in pairs if g.has_path(p, q)])
    return lo, hi


def congruence_classes(shape: AlternatingShape, omega: Permutation) -> list[CongruenceClass]:
    if not shape.is_sortable(omega):
        raise NotSortable(f"{omega} is not sortable on {shape.label()}")
    return [CongruenceClass.of(P) for P in strongly_acyclic_subset(shape, omega)]


# -- reports -------------------------------------------------------------


@dataclass
class Check:
    label: str
    passed: bool
    witness: Any = None

    def to_dict(self) -> dict:
        out = {"claim": self.label, "status": "pass" if self.passed else "fail"}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(x):
    if isinstance(x, PipeDream):
        return x.to_dict()
    if isinstance(x, Permutation):
        return list(x)
    if isinstance(x, AlternatingShape):
        return x.to_dict()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class VerificationReport:
    shape: str
    omega: str | None
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label: str, passed: bool, witness=None) -> bool:
        self.checks.append(Check(label, bool(passed), None if passed else witness))
        return passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "shape": self.shape,
            "omega": self.omega,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _class_index(classes: list[CongruenceClass]) -> dict[Permutation, int]:
    out = {}
    for k, C in enumerate(classes):
        for s in C.members:
            out.setdefault(s, k)
    return out


def check_partition(
    shape: AlternatingShape, omega: Permutation, classes: list[CongruenceClass] | None = None
) -> VerificationReport:
    """The linear extension sets of the strongly acyclic pipe dreams partition ``[id, omega]``."""
    if classes is None:
        classes = congruence_classes(shape, omega)
    rep = VerificationReport(shape.label(), str(omega))
    seen: dict[Permutation, int] = {}
    clash = None
    for k, C in enumerate(classes):
        for s in C.members:
            if s in seen and clash is None:
                clash = {"permutation": s, "classes": [seen[s], k]}
            seen.setdefault(s, k)
    rep.add("partition: classes pairwise disjoint", clash is None, clash)
    whole = set(interval(omega))
    rep.add(
        "partition: union equals [id, omega]",
        set(seen) == whole,
        {"missing": sorted(whole - set(seen)), "extra": sorted(set(seen) - whole)},
    )
    return rep


def check_congruence(
    shape: AlternatingShape, omega: Permutation, classes: list[CongruenceClass] | None = None
) -> VerificationReport:
    """Classes are intervals with the predicted ends; projections and lattice ops are compatible."""
    if classes is None:
        classes = congruence_classes(shape, omega)
    rep = VerificationReport(shape.label(), str(omega))
    elems = interval(omega)
    where = _class_index(classes)
    bad = None
    for C in classes:
        lo, hi = extremal_extensions(C.pipe_dream)
        if (lo, hi) != (C.min, C.max) or set(interval(C.max, C.min)) != set(C.members):
            bad = {"pipe_dream": C.pipe_dream, "members": C.members, "min": lo, "max": hi}
            break
    rep.add("congruence: every class is the interval between its predicted min and max", bad is None, bad)
    if len(where) != len(elems):
        rep.add("congruence: classes cover [id, omega]", False, sorted(set(elems) - set(where)))
        return rep
    lo_of = {s: classes[where[s]].min for s in elems}
    hi_of = {s: classes[where[s]].max for s in elems}
    inv = {s: s.inversions() for s in elems}
    bad_up = bad_down = None
    for s in elems:
        for t in elems:
            if s != t and inv[s] <= inv[t]:
                if bad_up is None and not hi_of[s].inversions() <= hi_of[t].inversions():
                    bad_up = [s, t]
                if bad_down is None and not lo_of[s].inversions() <= lo_of[t].inversions():
                    bad_down = [s, t]
    rep.add("congruence: max projection is order preserving", bad_up is None, bad_up)
    rep.add("congruence: min projection is order preserving", bad_down is None, bad_down)
    meet_of: dict[tuple[int, int], int] = {}
    join_of: dict[tuple[int, int], int] = {}
    bad_meet = bad_join = None
    for s in elems:
        for t in elems:
            key = (where[s], where[t])
            m, j = where[weak_meet(s, t)], where[weak_join(s, t)]
            if meet_of.setdefault(key, m) != m and bad_meet is None:
                bad_meet = [s, t]
            if join_of.setdefault(key, j) != j and bad_join is None:
                bad_join = [s, t]
    rep.add("congruence: compatible with meets", bad_meet is None, bad_meet)
    rep.add("congruence: compatible with joins", bad_join is None, bad_join)
    return rep


# -- acyclic order -------------------------------------------------------


def _same_context(P: PipeDream, Q: PipeDream) -> None:
    if P.shape != Q.shape or P.exit != Q.exit:
        raise DifferentContext("pipe dreams must share shape and exit permutation")


def acyclic_leq(P: PipeDream, Q: PipeDream) -> bool:
    """``P <= Q`` iff every pair ``p < q`` with ``q`` before ``p`` in ``P`` is also so in ``Q``."""
    _same_context(P, Q)
    gp = contact_graph(P, extended=True)
    gq = contact_graph(Q, extended=True)
    n = P.shape.n
    return all(
        gq.has_path(q, p)
        for p in range(1, n + 1)
        for q in range(p + 1, n + 1)
        if gp.has_path(q, p)
    )


class AcyclicOrder:
    """The acyclic order on the strongly acyclic pipe dreams of ``(shape, omega)``."""

    def __init__(self, shape: AlternatingShape, omega: Permutation, elements: list[PipeDream] | None = None):
        self.shape = shape
        self.omega = omega
        if elements is None:
            elements = strongly_acyclic_subset(shape, omega)
        self.elements = elements
        self.index = {P: k for k, P in enumerate(elements)}
        self.classes = [CongruenceClass.of(P) for P in elements]
        self._ext = [contact_graph(P, extended=True) for P in elements]
        n = shape.n
        pairs = [(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]
        self._below = [
            frozenset((p, q) for p, q in pairs if g.has_path(q, p)) for g in self._ext
        ]
        self._above = [
            frozenset((p, q) for p, q in pairs if g.has_path(p, q)) for g in self._ext
        ]

    def __len__(self) -> int:
        return len(self.elements)

    def _k(self, P: PipeDream) -> int:
        try:
            return self.index[P]
        except KeyError:
            raise DifferentContext("pipe dream is not in this acyclic order") from None

    def leq(self, P: PipeDream, Q: PipeDream) -> bool:
        return self._below[self._k(P)] <= self._below[self._k(Q)]

    def leq_by(self, which: int, P: PipeDream, Q: PipeDream) -> bool:
        """The order through one of its five equivalent descriptions (1..5)."""
        i, j = self._k(P), self._k(Q)
        if which == 1:
            inv_q = [s.inversions() for s in self.classes[j].members]
            return any(
                any(s.inversions() <= t for t in inv_q) for s in self.classes[i].members
            )
        if which == 2:
            lo = weak_leq(self.classes[i].min, self.classes[j].min)
            hi = weak_leq(self.classes[i].max, self.classes[j].max)
            if lo != hi:
                raise InternalInconsistency("min and max versions of the comparison disagree")
            return lo
        if which == 3:
            return not (self._below[i] & self._above[j])
        if which == 4:
            return self._below[i] <= self._below[j]
        if which == 5:
            return self._above[j] <= self._above[i]
        raise ValueError(which)

    @cached_property
    def relation(self) -> set[tuple[int, int]]:
        m = len(self.elements)
        return {(i, j) for i in range(m) for j in range(m) if self._below[i] <= self._below[j]}

    @cached_property
    def hasse(self) -> set[tuple[int, int]]:
        rel = self.relation
        m = len(self.elements)
        out = set()
        for i, j in rel:
            if i == j:
                continue
            if not any(k not in (i, j) and (i, k) in rel and (k, j) in rel for k in range(m)):
                out.add((i, j))
        return out

    def covers(self, P: PipeDream) -> list[PipeDream]:
        i = self._k(P)
        return [self.elements[j] for a, j in sorted(self.hasse) if a == i]

    @cached_property
    def _where(self) -> dict[Permutation, int]:
        return _class_index(self.classes)

    def ins(self, pi: Permutation) -> PipeDream:
        """The element whose class contains ``pi``, by lookup rather than by sweeping."""
        try:
            return self.elements[self._where[pi]]
        except KeyError:
            raise NotBelow(f"{pi} is not below {self.omega}") from None

    def meet(self, P: PipeDream, Q: PipeDream) -> PipeDream:
        i, j = self._k(P), self._k(Q)
        return self.ins(weak_meet(self.classes[i].max, self.classes[j].max))

    def join(self, P: PipeDream, Q: PipeDream) -> PipeDream:
        i, j = self._k(P), self._k(Q)
        return self.ins(weak_join(self.classes[i].min, self.classes[j].min))

    def weak_cover_image(self) -> tuple[set[tuple[int, int]], list]:
        """Images of weak order covers in ``[id, omega]`` joining distinct classes, and intra-class covers."""
        where = self._where
        across, inside = set(), []
        inv_omega = self.omega.inversions()
        for s in where:
            for t in weak_covers_up(s):
                if t.inversions() <= inv_omega:
                    a, b = where[s], where[t]
                    if a != b:
                        across.add((a, b))
                    else:
                        inside.append((s, t))
        return across, inside

    def to_dot(self) -> str:
        lines = ["digraph acyclic_order {"]
        for k, C in enumerate(self.classes):
            lines.append(f'  {k} [label="{C.min}..{C.max}"];')
        for i, j in sorted(self.hasse):
            lines.append(f"  {i} -> {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def acyclic_covers(P: PipeDream) -> list[PipeDream]:
    """Pipe dreams covering ``P`` in its acyclic order."""
    return AcyclicOrder(P.shape, P.exit).covers(P)


def acyclic_meet(P: PipeDream, Q: PipeDream) -> PipeDream:
    _same_context(P, Q)
    lp, lq = extremal_extensions(P)[1], extremal_extensions(Q)[1]
    return ins(P.shape, P.exit, weak_meet(lp, lq))


def acyclic_join(P: PipeDream, Q: PipeDream) -> PipeDream:
    _same_context(P, Q)
    lp, lq = extremal_extensions(P)[0], extremal_extensions(Q)[0]
    return ins(P.shape, P.exit, weak_join(lp, lq))


def _no_other_path(g, a: int, b: int) -> bool:
    for c in g.successors(a):
        if c != b and g.leq(c, b):
            return False
    return True


def cover_flips(P: PipeDream) -> tuple[set[PipeDream], set[PipeDream]]:
    """
    Flips of ``P`` along arcs ``a -> b`` of its contact graph with no other
    ``a -> b`` path, split into upward (``a < b``) and downward ones.

    Every contact between ``a`` and ``b`` is reversed, so the contact
    farthest from their crossing is the one flipped.
    """
    g = contact_graph(P)
    an = _analysis(P)
    order = {c: k for k, c in enumerate(P.shape.sweep)}
    up, down = set(), set()
    for a, b in g.arcs:
        pair = tuple(sorted((a, b)))
        if not an.crossing_pairs.get(pair) or not _no_other_path(g, a, b):
            continue
        contacts = sorted(
            (c for c, pp in an.pipes.items() if pp == (a, b) and c not in P.crosses),
            key=order.get,
        )
        if a < b:
            up.add(flip(P, contacts[0]))
        else:
            down.add(flip(P, contacts[-1]))
    return up, down


def check_acyclic_order(shape: AlternatingShape, omega: Permutation, order: AcyclicOrder | None = None) -> VerificationReport:
    if order is None:
        order = AcyclicOrder(shape, omega)
    rep = VerificationReport(shape.label(), str(omega))
    els = order.elements
    bad = None
    for P in els:
        for Q in els:
            vals = [order.leq_by(k, P, Q) for k in (1, 2, 3, 4, 5)]
            if len(set(vals)) != 1:
                bad = {"P": P, "Q": Q, "values": vals}
                break
        if bad:
            break
    rep.add("acyclic order: the five characterizations agree", bad is None, bad)
    across, _inside = order.weak_cover_image()
    rep.add(
        "acyclic order: covers are the images of weak order covers",
        across == order.hasse,
        {"hasse_only": sorted(order.hasse - across), "image_only": sorted(across - order.hasse)},
    )
    bad = None
    for i, P in enumerate(els):
        up, down = cover_flips(P)
        want_up = {els[j] for a, j in order.hasse if a == i}
        want_down = {els[a] for a, j in order.hasse if j == i}
        if up != want_up or down != want_down:
            bad = {"pipe_dream": P}
            break
    rep.add("acyclic order: cover flips are the arcs with no other path", bad is None, bad)
    bad = None
    rel = order.relation
    m = len(els)
    meet = [[order.index[order.meet(els[i], els[j])] for j in range(m)] for i in range(m)]
    join = [[order.index[order.join(els[i], els[j])] for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(m):
            lower = [k for k in range(m) if (k, i) in rel and (k, j) in rel]
            upper = [k for k in range(m) if (i, k) in rel and (j, k) in rel]
            glb = [k for k in lower if all((l, k) in rel for l in lower)]
            lub = [k for k in upper if all((k, l) in rel for l in upper)]
            if glb != [meet[i][j]] or lub != [join[i][j]]:
                bad = {"P": els[i], "Q": els[j]}
                break
            if meet[i][j] != meet[j][i] or join[i][j] != join[j][i]:
                bad = {"P": els[i], "Q": els[j], "law": "commutativity"}
                break
            if meet[i][join[i][j]] != i or join[i][meet[i][j]] != i:
                bad = {"P": els[i], "Q": els[j], "law": "absorption"}
                break
            for k in range(m):
                if meet[meet[i][j]][k] != meet[i][meet[j][k]] or join[join[i][j]][k] != join[i][join[j][k]]:
                    bad = {"P": els[i], "Q": els[j], "law": "associativity"}
                    break
            if bad:
                break
        if bad:
            break
    rep.add("acyclic order: meet and join are lattice operations", bad is None, bad)
    return rep


# -- complete shapes ---------------------------------------------------


def _complete_coordinate_checks(P: PipeDream) -> list[str]:
    shape = P.shape
    n = shape.n
    w = P.exit
    s = {p: start_end_coords(P, p)[0] for p in range(1, n + 1)}
    e = {p: start_end_coords(P, p)[1] for p in range(1, n + 1)}
    first, last = w[0], w[-1]
    start_e = shape.start.count("E")
    failed = []
    for p in range(1, n + 1):
        if not s[p][0] <= s[n][0] < e[first][0] <= e[p][0]:
            failed.append(f"x-coordinates of pipe {p}")
        if not s[p][1] <= s[1][1] < e[last][1] <= e[p][1]:
            failed.append(f"y-coordinates of pipe {p}")
    if not s[n][0] <= start_e <= e[first][0]:
        failed.append("starting path east steps against pipe coordinates")
    if not s[1][1] <= 0 <= e[last][1]:
        failed.append("pipe 1 starts at or below 0, last exit at or above 0")
    if not start_e <= shape.t + 1:
        failed.append("|start|_E <= t + 1")
    return failed


def verify_complete_shape(shape: AlternatingShape, perms: Iterable[Permutation] | None = None) -> VerificationReport:
    """Every noninversion is a contact graph path, so acyclic implies strongly acyclic."""
    if not shape.is_complete():
        raise NotComplete(f"{shape.label()} is not complete")
    from .permutation import all_permutations

    rep = VerificationReport(shape.label(), None)
    bad_path = bad_acyclic = bad_coord = None
    count = 0
    for omega in perms if perms is not None else all_permutations(shape.n):
        if not shape.is_sortable(omega):
            continue
        ninv = omega.noninversions()
        for P in enumerate_pipe_dreams(shape, omega):
            count += 1
            g = contact_graph(P)
            if bad_path is None:
                missing = [pq for pq in ninv if not g.has_path(*pq)]
                if missing:
                    bad_path = {"pipe_dream": P, "pairs": sorted(missing)}
            if bad_acyclic is None and g.is_acyclic() and not is_strongly_acyclic(P):
                bad_acyclic = {"pipe_dream": P}
            if bad_coord is None:
                failed = _complete_coordinate_checks(P)
                if failed:
                    bad_coord = {"pipe_dream": P, "failed": failed}
    rep.add("complete shape: every noninversion is a path in the contact graph", bad_path is None, bad_path)
    rep.add("complete shape: acyclic implies strongly acyclic", bad_acyclic is None, bad_acyclic)
    rep.add("complete shape: pipe coordinate inequalities", bad_coord is None, bad_coord)
    return rep


def find_acyclic_not_strongly(nmax: int, max_t: int | None = None):
    """First ``(shape, omega, P)`` with ``P`` acyclic but not strongly acyclic, or ``None``."""
    from .permutation import all_permutations

    for n in range(2, nmax + 1):
        for shape in enumerate_shapes(n, n if max_t is None else max_t):
            for omega in all_permutations(n):
                if not shape.is_sortable(omega) or omega == longest(n):
                    continue
                for idx in _dfs_fillings(shape, omega, False, acyclic=True):
                    P = _from_indices(shape, idx)
                    if not is_strongly_acyclic(P):
                        return shape, omega, P
    return None


# -- lemma suites -------------------------------------------------------


def _elbow_point(cell: Cell, kind: str) -> tuple[float, float]:
    x, y = cell
    return (x + 0.25, y + 0.75) if kind == "NW" else (x + 0.75, y + 0.25)


ELBOW_CASES = (
    "elbow rectangles, both far corners in the shape, give contact graph paths",
    "elbow rectangles, shape cells beyond both corners, give contact graph paths",
    "elbow rectangles, elbow of p inside the zone of q, give contact graph paths",
)


def _elbow_cases(p: int, q: int, el: dict, cells, zone_q, reach_sw, reach_ne) -> list[tuple[int, tuple]]:
    """
    Hypotheses (0, 1, 2) met by elbow pairs of ``p`` weakly north-west of ``q``, with the elbows.

    ``reach_sw[x]`` is the lowest row of a cell in columns ``<= x`` and
    ``reach_ne[x]`` the highest row of a cell in columns ``>= x``.
    """
    out = []
    for cp, kp in el[p]:
        px, py = _elbow_point(cp, kp)
        xp, yp = cp
        for cq, kq in el[q]:
            qx, qy = _elbow_point(cq, kq)
            if not (px <= qx and py >= qy):
                continue
            xq, yq = cq
            if (xp, yq) in cells and (xq, yp) in cells:
                out.append((0, (cp, cq)))
            if reach_sw[xp] <= yq and reach_ne[xq] >= yp:
                out.append((1, (cp, cq)))
            if cp in zone_q:
                out.append((2, (cp, cq)))
    return out


@lru_cache(maxsize=4096)
def _column_reach(cells: frozenset) -> tuple[dict[int, int], dict[int, int]]:
    xs = sorted({x for x, _ in cells})
    low = {x: min(y for cx, y in cells if cx == x) for x in xs}
    high = {x: max(y for cx, y in cells if cx == x) for x in xs}
    sw, ne = {}, {}
    best = None
    for x in xs:
        best = low[x] if best is None else min(best, low[x])
        sw[x] = best
    best = None
    for x in reversed(xs):
        best = high[x] if best is None else max(best, high[x])
        ne[x] = best
    return sw, ne


def verify_lemmas(P: PipeDream) -> VerificationReport:
    """Coordinate, zone, elbow rectangle and three-pipe statements for one reduced pipe dream."""
    shape = P.shape
    n = shape.n
    w = P.exit
    pos = w.positions()
    rep = VerificationReport(shape.label(), str(w))
    cells = shape.cells
    zs = {z.pipe: z for z in zones(P)}

    bad = None
    for p in range(1, n + 1):
        path = P.traces[p]
        (xs, ys), (xe, ye) = start_end_coords(P, p)
        horiz = path[0][1] == "W"
        vert = path[-1][2] == "N"
        if xs - ys != (p if horiz else p - 1) or xe - ye != (pos[p] if vert else pos[p] - 1):
            bad = {"pipe": p}
            break
    rep.add("start and end coordinates lie on the predicted diagonals", bad is None, bad)

    bad = None
    for p in range(1, n + 1):
        z = zs[p]
        xs, ys, xe, ye = z.rect
        if not (xs < xe and ys < ye) or any(c not in z for c, _, _ in P.traces[p]):
            bad = {"pipe": p, "zone": z.rect}
            break
    start = {p: zs[p].rect[:2] for p in zs}
    end = {p: zs[p].rect[2:] for p in zs}
    if bad is None:
        for a in range(1, n):
            b = a + 1
            if not (0 <= start[a][0] <= start[b][0] and 0 >= start[a][1] >= start[b][1]):
                bad = {"pipes": [a, b], "side": "start"}
            wa, wb = w[a - 1], w[a]
            if not (end[wa][0] <= end[wb][0] and end[wb][1] <= end[wa][1]):
                bad = {"pipes": [wa, wb], "side": "end"}
    rep.add("zones contain trajectories and are ordered along the boundary", bad is None, bad)

    g = contact_graph(P)
    el = elbows(P)
    reach_sw, reach_ne = _column_reach(cells)
    # a case label is only reported when some elbow pair meets that hypothesis
    seen: dict[int, dict | None] = {}
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if p == q:
                continue
            path = g.has_path(p, q)
            for case, pair in _elbow_cases(p, q, el, cells, zs[q], reach_sw, reach_ne):
                if not path and seen.get(case) is None:
                    seen[case] = {"p": p, "q": q, "elbows": list(pair)}
                else:
                    seen.setdefault(case, None)
    for case in sorted(seen):
        rep.add(ELBOW_CASES[case], seen[case] is None, seen[case])

    bad = None
    an = _analysis(P)
    touching = {tuple(sorted(pp)) for c, pp in an.pipes.items() if c not in P.crosses}
    examined = False
    for p in range(1, n + 1):
        for q in range(p + 1, n + 1):
            for r in range(q + 1, n + 1):
                if not (pos[r] < pos[q] < pos[p]) or (p, r) not in touching:
                    continue
                examined = True
                below = g.has_path(q, p) and g.has_path(q, r)
                above = g.has_path(p, q) and g.has_path(r, q)
                if not (below or above):
                    bad = {"pipes": [p, q, r]}
    if examined:
        rep.add("three reversed pipes with a contact between the outer two", bad is None, bad)
    return rep
