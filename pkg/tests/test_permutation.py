from itertools import permutations, product

import pytest

from pipedreams.permutation import (
    Permutation,
    all_permutations,
    bruhat_leq,
    demazure_product,
    from_inversions,
    from_noninversions,
    identity,
    interval,
    iter_subword_products,
    longest,
    weak_covers_down,
    weak_covers_up,
    weak_join,
    weak_leq,
    weak_meet,
)

P = Permutation.parse


def brute_inversions(w):
    n = len(w)
    return {(w[j], w[i]) for i in range(n) for j in range(i + 1, n) if w[i] > w[j]}


def test_parse_forms():
    assert P("23145") == P("2,3,1,4,5") == P("[2, 3, 1, 4, 5]") == Permutation([2, 3, 1, 4, 5])
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])
    with pytest.raises(ValueError):
        P("124")


def test_inversions_examples():
    assert identity(5).inversions() == frozenset()
    assert P("23145").inversions() == {(1, 2), (1, 3)}
    assert P("51324").inversions() == {(1, 5), (2, 5), (3, 5), (4, 5), (2, 3)}
    assert P("51324").length() == 5


def test_inversions_partition_pairs():
    for w in all_permutations(4):
        pairs = {(a, b) for a in range(1, 5) for b in range(a + 1, 5)}
        assert w.inversions() | w.noninversions() == pairs
        assert not w.inversions() & w.noninversions()
        assert w.inversions() == brute_inversions(w)
        assert w.length() == len(w.inversions())


def test_inverse_and_compose():
    w = P("23145")
    assert w.compose(w.inverse()) == identity(5)
    assert w(1) == 2
    assert w.times_simple(1) == P("32145")


def test_weak_leq_examples():
    assert all(weak_leq(identity(3), s) for s in all_permutations(3))
    assert weak_leq(P("21345"), P("23145"))
    assert not weak_leq(P("132"), P("231"))
    with pytest.raises(ValueError):
        weak_leq(P("12"), P("123"))


def test_covers_examples():
    assert weak_covers_up(P("321")) == set()
    assert weak_covers_up(P("213")) == {P("231")}
    assert weak_covers_up(P("123")) == {P("213"), P("132")}
    assert weak_covers_down(P("123")) == set()


def test_covers_add_one_inversion():
    for w in all_permutations(4):
        for s in weak_covers_up(w):
            assert s.length() == w.length() + 1
            assert len(s.inversions() - w.inversions()) == 1
            assert w.inversions() < s.inversions()


def _scan_join(p, s, universe):
    upper = [u for u in universe if weak_leq(p, u) and weak_leq(s, u)]
    least = [u for u in upper if all(weak_leq(u, v) for v in upper)]
    assert len(least) == 1
    return least[0]


def _scan_meet(p, s, universe):
    lower = [u for u in universe if weak_leq(u, p) and weak_leq(u, s)]
    greatest = [u for u in lower if all(weak_leq(v, u) for v in lower)]
    assert len(greatest) == 1
    return greatest[0]


def test_join_meet_examples():
    assert weak_join(P("213"), identity(3)) == P("213")
    assert weak_join(P("213"), P("132")) == P("321")
    assert weak_meet(P("231"), P("312")) == P("123")


@pytest.mark.parametrize("n", [3, 4])
def test_join_meet_match_exhaustive_scan(n):
    universe = all_permutations(n)
    for p, s in product(universe, repeat=2):
        assert weak_join(p, s) == _scan_join(p, s, universe)
        assert weak_meet(p, s) == _scan_meet(p, s, universe)


def test_lattice_laws_on_s4():
    universe = all_permutations(4)
    for a, b in product(universe, repeat=2):
        assert weak_join(a, b) == weak_join(b, a)
        assert weak_meet(a, weak_join(a, b)) == a
        assert weak_join(a, weak_meet(a, b)) == a
    sample = universe[::5]
    for a, b, c in product(sample, repeat=3):
        assert weak_join(weak_join(a, b), c) == weak_join(a, weak_join(b, c))
        assert weak_meet(weak_meet(a, b), c) == weak_meet(a, weak_meet(b, c))


def test_from_inversion_sets():
    for w in all_permutations(4):
        assert from_inversions(4, w.inversions()) == w
        assert from_noninversions(4, w.noninversions()) == w
    with pytest.raises(ValueError):
        from_inversions(3, {(1, 3)})  # not transitively closed


def test_interval_examples():
    assert interval(identity(4)) == [identity(4)]
    assert set(interval(longest(3))) == set(all_permutations(3))
    # computed by filtering S_5 on inversion set inclusion
    assert interval(P("23145")) == [P("12345"), P("21345"), P("23145")]


def test_interval_matches_filter():
    for w in all_permutations(4):
        want = {s for s in all_permutations(4) if s.inversions() <= w.inversions()}
        assert set(interval(w)) == want


def _subword_bruhat(p, s):
    # p <= s iff some reduced word of s contains a word of p as a subword
    n = len(p)
    word = _reduced_word(s)
    return any(
        tuple(q) == tuple(p)
        for q in iter_subword_products(word, n)
    )


def _reduced_word(w):
    w = list(w)
    word = []
    # bubble sort from the right records a reduced word read backwards
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                changed = True
    return word[::-1]


def test_bruhat_examples():
    assert all(bruhat_leq(identity(3), s) for s in all_permutations(3))
    assert bruhat_leq(P("213"), P("231"))
    assert not bruhat_leq(P("321"), P("312"))


def test_bruhat_matches_subword_criterion():
    perms = all_permutations(4)
    for p, s in product(perms, repeat=2):
        assert bruhat_leq(p, s) == _subword_bruhat(p, s)


def test_demazure_examples():
    assert demazure_product([1, 1], 2) == P("21")
    assert demazure_product([1, 2, 1], 3) == P("321")
    assert demazure_product([], 4) == identity(4)
    with pytest.raises(ValueError):
        demazure_product([3], 3)


def test_demazure_dominates_subwords():
    for length in range(7):
        for word in product([1, 2], repeat=length):
            top = demazure_product(word, 3)
            assert all(bruhat_leq(q, top) for q in iter_subword_products(word, 3))


def test_all_permutations_order():
    perms = all_permutations(3)
    assert perms[0] == identity(3) and perms[-1] == longest(3)
    assert len(set(perms)) == 6 == len(list(permutations(range(3))))
