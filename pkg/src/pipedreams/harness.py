"""
Exhaustive verification over every small shape and exit permutation.

Each suite runs one family of checks on every ``(shape, omega)`` with
``omega`` sortable, and tallies pass/fail counts per claim, keeping the
first few failing reports as witnesses.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

from .permutation import all_permutations, interval
from .pipedream import PipeDream, enumerate_by_flips, is_reduced, enumerate_pipe_dreams, flip_graph, linear_extensions
from .quotient import (
    AcyclicOrder,
    VerificationReport,
    check_acyclic_order,
    check_congruence,
    check_partition,
    pipe_insert,
    sweep_insert,
    verify_complete_shape,
    verify_lemmas,
)
from .shape import AlternatingShape, enumerate_shapes, small_shapes

SUITES = ("partition", "congruence", "lattice", "algorithms", "enumeration", "complete", "lemmas")
MAX_WITNESSES = 5


@dataclass
class Summary:
    suites: tuple[str, ...]
    instances: int = 0
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failed

    def absorb(self, rep: VerificationReport) -> None:
        for c in rep.checks:
            (self.passed if c.passed else self.failed)[c.label] += 1
        if not rep.ok and len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(
                {"shape": rep.shape, "omega": rep.omega, "failures": [c.to_dict() for c in rep.failures()]}
            )

    def failures_matching(self, prefix: str) -> int:
        return sum(k for label, k in self.failed.items() if label.startswith(prefix))

    def checks_matching(self, prefix: str) -> int:
        return self.failures_matching(prefix) + sum(
            k for label, k in self.passed.items() if label.startswith(prefix)
        )

    def to_dict(self) -> dict:
        labels = sorted(set(self.passed) | set(self.failed))
        return {
            "suites": list(self.suites),
            "ok": self.ok,
            "instances": self.instances,
            "seconds": round(self.seconds, 3),
            "claims": [
                {"claim": k, "passed": self.passed[k], "failed": self.failed[k]} for k in labels
            ],
            "witnesses": self.witnesses,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _algorithms(shape: AlternatingShape, omega) -> VerificationReport:
    rep = VerificationReport(shape.label(), str(omega))
    bad_agree = bad_lin = None
    lin: dict = {}
    for pi in interval(omega):
        P = sweep_insert(shape, omega, pi)
        try:
            Q = pipe_insert(shape, omega, pi)
        except Exception as exc:  # recorded as a disagreement with its message
            Q = repr(exc)
        if P != Q and bad_agree is None:
            bad_agree = {"pi": pi, "sweep": P, "pipes": Q}
        if P not in lin:
            lin[P] = set(linear_extensions(P))
        if pi not in lin[P] and bad_lin is None:
            bad_lin = {"pi": pi, "pipe_dream": P}
    rep.add("algorithms: sweep and pipe insertion agree", bad_agree is None, bad_agree)
    rep.add("algorithms: pi is a linear extension of its insertion", bad_lin is None, bad_lin)
    return rep


def _enumeration(shape: AlternatingShape, omega) -> VerificationReport:
    rep = VerificationReport(shape.label(), str(omega))
    by_fillings = enumerate_pipe_dreams(shape, omega)
    seed = sweep_insert(shape, omega, omega)
    by_flips = enumerate_by_flips(seed)
    rep.add(
        "enumeration: filling search and flip closure agree",
        set(by_fillings) == set(by_flips) and len(by_fillings) == len(set(by_fillings)),
        {"fillings": len(by_fillings), "flips": len(by_flips)},
    )
    g = flip_graph(shape, omega)
    rep.add(
        "enumeration: flip graph is acyclic with one source and one sink",
        g.is_acyclic() and len(g.sources) == 1 and len(g.sinks) == 1,
        {"sources": g.sources, "sinks": g.sinks},
    )
    return rep


def _lemmas(shape: AlternatingShape, omega) -> VerificationReport:
    rep = VerificationReport(shape.label(), str(omega))
    failing: dict[str, object] = {}
    labels: dict[str, None] = {}
    for P in enumerate_pipe_dreams(shape, omega):
        r = verify_lemmas(P)
        labels.update((c.label, None) for c in r.checks)
        for c in r.failures():
            failing.setdefault(c.label, {"pipe_dream": P, "detail": c.witness})
    for label in labels:
        rep.add(label, label not in failing, failing.get(label))
    return rep


def run_instance(shape: AlternatingShape, omega, suites: Iterable[str]) -> list[VerificationReport]:
    """Run the per-instance suites on one sortable ``(shape, omega)``."""
    suites = set(suites)
    reports = []
    order = None
    if suites & {"partition", "congruence", "lattice"}:
        order = AcyclicOrder(shape, omega)
    if "partition" in suites:
        reports.append(check_partition(shape, omega, order.classes))
    if "congruence" in suites:
        reports.append(check_congruence(shape, omega, order.classes))
    if "lattice" in suites:
        reports.append(check_acyclic_order(shape, omega, order))
    if "algorithms" in suites:
        reports.append(_algorithms(shape, omega))
    if "enumeration" in suites:
        reports.append(_enumeration(shape, omega))
    if "lemmas" in suites:
        reports.append(_lemmas(shape, omega))
    return reports


def all_fillings(shape: AlternatingShape) -> Iterator[PipeDream]:
    """Every filling of the crossable cells (cells on diagonals 0 and n stay contacts)."""
    cr = shape.crossable
    for bits in product((False, True), repeat=len(cr)):
        yield PipeDream(shape, frozenset(c for c, b in zip(cr, bits) if b))


def run_fillings(max_cells: int, summary: Summary | None = None) -> Summary:
    """
    Lemma checks on every reduced filling of every shape with at most
    ``max_cells`` cells, for all ``n`` at once.

    Also checks that a filling is reduced exactly when its number of crosses
    is the length of its exit permutation.
    """
    if summary is None:
        summary = Summary(("lemmas",))
    start = time.perf_counter()
    n = 1
    while True:
        shapes = list(small_shapes(n, max_cells))
        if not shapes:
            break
        for shape in shapes:
            rep = VerificationReport(shape.label(), None)
            bad = None
            for P in all_fillings(shape):
                reduced = is_reduced(P)
                if reduced != (len(P.crosses) == P.exit.length()) and bad is None:
                    bad = {"pipe_dream": P}
                if reduced:
                    summary.instances += 1
                    summary.absorb(verify_lemmas(P))
            rep.add("reduced iff crossing count equals the exit length", bad is None, bad)
            summary.absorb(rep)
        n += 1
    summary.notes.append(f"fillings: shapes with at most {max_cells} cells exist for n <= {n - 1}")
    summary.seconds += time.perf_counter() - start
    return summary


def expand(suite: str) -> tuple[str, ...]:
    if suite == "all":
        return SUITES
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    return (suite,)


def run(
    shapes: Iterable[AlternatingShape],
    suites: Iterable[str],
    summary: Summary | None = None,
) -> Summary:
    suites = tuple(suites)
    if summary is None:
        summary = Summary(suites)
    start = time.perf_counter()
    per_instance = [s for s in suites if s != "complete"]
    skipped = 0
    for shape in shapes:
        perms = all_permutations(shape.n)
        if "complete" in suites:
            if shape.is_complete():
                summary.absorb(verify_complete_shape(shape, perms))
            else:
                skipped += 1
        if not per_instance:
            continue
        for omega in perms:
            if not shape.is_sortable(omega):
                continue
            summary.instances += 1
            for rep in run_instance(shape, omega, per_instance):
                summary.absorb(rep)
    if skipped:
        summary.notes.append(f"complete suite: {skipped} shape(s) skipped as not complete")
    summary.seconds += time.perf_counter() - start
    return summary


def harness_shapes(n: int, max_t: int | None = None, max_cells: int | None = None) -> list[AlternatingShape]:
    """Shapes with ``n`` pipes: NW stair length at most ``max_t`` (default ``n``), or at most ``max_cells`` cells."""
    if max_cells is not None and max_t is None:
        return list(small_shapes(n, max_cells))
    shapes = list(enumerate_shapes(n, n if max_t is None else max_t))
    if max_cells is not None:
        shapes = [F for F in shapes if len(F.cells) <= max_cells]
    return shapes
