"""Randomised invariants; exhaustive versions live in the harness."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from pipedreams.permutation import (
    Permutation,
    bruhat_leq,
    demazure_product,
    from_inversions,
    interval,
    iter_subword_products,
    weak_join,
    weak_leq,
    weak_meet,
)
from pipedreams.pipedream import (
    PipeDream,
    flip,
    flip_partner,
    flippable_contacts,
    is_increasing,
    is_reduced,
    is_strongly_acyclic,
    linear_extensions,
    reduce,
)
from pipedreams.quotient import AcyclicOrder, pipe_insert, sweep_insert, verify_lemmas
from pipedreams.shape import AlternatingShape, enumerate_shapes, recognize

SHAPES = [F for n in (2, 3, 4) for F in enumerate_shapes(n, 2) if len(F.crossable) <= 10]
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def perms(n):
    return st.permutations(range(1, n + 1)).map(Permutation)


shapes = st.sampled_from(SHAPES)


@st.composite
def fillings(draw):
    F = draw(shapes)
    bits = draw(st.lists(st.booleans(), min_size=len(F.crossable), max_size=len(F.crossable)))
    return PipeDream(F, {c for c, b in zip(F.crossable, bits) if b})


@st.composite
def instances(draw):
    F = draw(shapes)
    bits = draw(st.lists(st.booleans(), min_size=len(F.crossable), max_size=len(F.crossable)))
    Q = reduce(PipeDream(F, {c for c, b in zip(F.crossable, bits) if b}))
    omega = Q.exit
    pi = draw(st.sampled_from(interval(omega)))
    return F, omega, pi


@given(perms(5), perms(5))
def test_weak_join_meet_bounds(a, b):
    j, m = weak_join(a, b), weak_meet(a, b)
    assert weak_leq(a, j) and weak_leq(b, j)
    assert weak_leq(m, a) and weak_leq(m, b)
    assert weak_leq(a, b) == (j == b) == (m == a)


@given(perms(5))
def test_inversion_sets_round_trip(w):
    assert from_inversions(5, w.inversions()) == w
    assert w.inverse().inverse() == w


@given(perms(4), perms(4))
def test_weak_implies_bruhat(a, b):
    if weak_leq(a, b):
        assert bruhat_leq(a, b)
    if bruhat_leq(a, b) and bruhat_leq(b, a):
        assert a == b


@given(st.lists(st.integers(1, 3), max_size=7))
def test_demazure_is_top_subword_product(word):
    top = demazure_product(word, 4)
    prods = set(iter_subword_products(word, 4))
    assert top in prods
    assert all(bruhat_leq(q, top) for q in prods)


@SETTINGS
@given(fillings())
def test_reduced_iff_length(Q):
    assert is_reduced(Q) == (len(Q.crosses) == Q.exit.length())
    R = reduce(Q)
    assert is_reduced(R) and R.exit == Q.exit and R.crosses <= Q.crosses


@SETTINGS
@given(fillings())
def test_recognize_recovers_shape(Q):
    F, reasons = recognize(Q.shape.cells)
    assert reasons == [] and F.cells == Q.shape.cells


@SETTINGS
@given(fillings(), st.data())
def test_flip_is_an_involution(Q, data):
    R = reduce(Q)
    cands = flippable_contacts(R)
    if not cands:
        return
    c = data.draw(st.sampled_from(cands))
    x = flip_partner(R, c)
    S = flip(R, c)
    assert S.exit == R.exit and is_reduced(S)
    assert flip(S, x) == R
    assert is_increasing(R, c) != is_increasing(S, x)


@SETTINGS
@given(fillings())
def test_lemmas_on_random_reduced(Q):
    rep = verify_lemmas(reduce(Q))
    assert rep.ok, rep.to_json()


@SETTINGS
@given(instances())
def test_insertions_agree(inst):
    F, omega, pi = inst
    P = sweep_insert(F, omega, pi)
    assert P == pipe_insert(F, omega, pi)
    assert is_strongly_acyclic(P)
    assert pi in linear_extensions(P)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(instances(), st.data())
def test_characterizations_agree_on_random_pairs(inst, data):
    F, omega, _ = inst
    order = AcyclicOrder(F, omega)
    a = data.draw(st.sampled_from(order.elements))
    b = data.draw(st.sampled_from(order.elements))
    assert len({order.leq_by(k, a, b) for k in range(1, 6)}) == 1
    m, j = order.meet(a, b), order.join(a, b)
    assert order.leq(m, a) and order.leq(m, b)
    assert order.leq(a, j) and order.leq(b, j)


def test_shape_pool_is_nonempty():
    assert len(SHAPES) > 100
    assert all(isinstance(F, AlternatingShape) for F in SHAPES)
