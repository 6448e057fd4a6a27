"""Pipe dreams on alternating shapes and the lattice quotient of the weak order they define."""

from .errors import (
    CyclicGraph,
    DifferentContext,
    InternalInconsistency,
    InvalidFilling,
    InvalidShape,
    NotBelow,
    NotComplete,
    NotFlippable,
    NotReduced,
    NotSortable,
    PipeDreamError,
)
from .permutation import (
    Permutation,
    bruhat_leq,
    demazure_product,
    interval,
    weak_covers_up,
    weak_join,
    weak_leq,
    weak_meet,
)
from .pipedream import (
    ContactGraph,
    PipeDream,
    contact_graph,
    enumerate_by_flips,
    enumerate_pipe_dreams,
    flip,
    flip_graph,
    flippable_contacts,
    is_acyclic,
    is_increasing,
    is_reduced,
    is_strongly_acyclic,
    linear_extensions,
    reduce,
    strongly_acyclic_subset,
    trace,
    zones,
)
from .quotient import (
    AcyclicOrder,
    CongruenceClass,
    acyclic_join,
    acyclic_leq,
    acyclic_meet,
    check_congruence,
    check_partition,
    congruence_classes,
    find_acyclic_not_strongly,
    ins,
    pipe_insert,
    sweep_insert,
    verify_complete_shape,
)
from .shape import AlternatingShape, enumerate_shapes, triangular

__version__ = "0.1.0"
