import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nsovi import numerics as nm
from nsovi.orders import (
    ConeOrder,
    FinitePoset,
    chains,
    is_chain_complete,
    is_inductive,
    is_universally_inductive,
    least_upper_bound,
    leq,
    maximal_chains,
    maximal_elements,
    minimal_elements,
    smallest_element,
)


def V(*xs):
    return nm.vector(xs)


def P(points, order=None):
    pts = tuple(nm.vector(p) for p in points)
    dim = len(pts[0]) if pts else 1
    return FinitePoset(pts, order or ConeOrder.componentwise(dim))


def brute_chains(p):
    """All nonempty chains as frozensets, by testing every subset."""
    out = set()
    for r in range(1, len(p.points) + 1):
        for sub in itertools.combinations(p.points, r):
            if all(p.leq(a, b) or p.leq(b, a) for a, b in itertools.combinations(sub, 2)):
                out.add(frozenset(sub))
    return out


def brute_universally_inductive(subset, ambient):
    candidates = [frozenset()] + list(brute_chains(ambient))
    for chain in candidates:
        if all(any(ambient.leq(x, s) for s in subset.points) for x in chain):
            if not any(all(ambient.leq(x, s) for x in chain) for s in subset.points):
                return False
    return True


def random_poset(rng, max_points=6):
    dim = rng.randint(1, 3)
    order = ConeOrder.componentwise(dim) if rng.random() < 0.5 else random_cone(rng, dim)
    n = rng.randint(1, max_points)
    pts = {tuple(Fraction(rng.randint(-2, 2)) for _ in range(dim)) for _ in range(n)}
    return FinitePoset(tuple(sorted(pts)), order)


def random_cone(rng, dim):
    while True:
        g = nm.matrix([[rng.randint(-1, 2) for _ in range(dim)] for _ in range(dim + rng.randint(0, 1))])
        if nm.kernel_is_trivial(g):
            return ConeOrder(dim, g)


# -- leq -------------------------------------------------------------------

def test_leq_examples():
    cw = ConeOrder.componentwise(2)
    assert leq(cw, V(1, 2), V(1, 3))
    assert not leq(cw, V(1, 2), V(2, 1)) and not leq(cw, V(2, 1), V(1, 2))
    cone = ConeOrder.cone([[1, 1], [1, -1]])
    # G (2, 1) = (3, 1) >= 0
    assert nm.mat_apply(cone.generators, V(2, 1)) == (3, 1)
    assert leq(cone, V(0, 0), V(2, 1))
    assert not leq(cone, V(0, 0), V(1, 2))


def test_leq_dimension_mismatch():
    with pytest.raises(ValueError):
        leq(ConeOrder.componentwise(2), V(1), V(1, 2))


def test_non_pointed_cone_rejected():
    with pytest.raises(ValueError):
        ConeOrder.cone([[1, 1]])
    with pytest.raises(ValueError):
        ConeOrder(3, nm.identity(2))


def test_order_json_round_trip():
    for o in (ConeOrder.componentwise(3), ConeOrder.cone([[1, "1/2"], [0, 1]])):
        assert ConeOrder.from_json(o.to_json(), o.dim) == o
    assert ConeOrder.cone([[1, "1/2"], [0, 1]]).to_json() == {
        "type": "cone", "generators": [[1, "1/2"], [0, 1]]}


orders = st.sampled_from([
    ConeOrder.componentwise(2),
    ConeOrder.cone([[1, 1], [1, -1]]),
    ConeOrder.cone([[1, 0], [1, 1], [0, 1]]),
    ConeOrder.cone([[2, -1], [-1, 2]]),
])
vec2 = st.tuples(*[st.fractions(-5, 5, max_denominator=4)] * 2)


@given(orders, vec2, vec2, vec2, st.fractions(0, 5, max_denominator=4))
def test_order_axioms(o, u, v, w, alpha):
    assert leq(o, u, u)
    if leq(o, u, v) and leq(o, v, u):
        assert u == v
    if leq(o, u, v) and leq(o, v, w):
        assert leq(o, u, w)
    assert leq(o, u, v) == leq(o, nm.add(u, w), nm.add(v, w))
    if leq(o, u, v):
        assert leq(o, nm.scale(alpha, u), nm.scale(alpha, v))


# -- smallest / maximal ------------------------------------------------------

def test_smallest_element_examples():
    cw1, cw2 = ConeOrder.componentwise(1), ConeOrder.componentwise(2)
    assert smallest_element([V(0), V(1), V(2)], cw1) == V(0)
    assert smallest_element([V(1, 0), V(0, 1)], cw2) is None
    assert smallest_element([V(0, 0), V(1, 0), V(0, 1)], cw2) == V(0, 0)
    assert smallest_element([V(3), V(3), V(5)], cw1) == V(3)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_smallest_element_presence_and_absence(seed):
    p = random_poset(random.Random(seed))
    pts = list(p.points)
    w = smallest_element(pts, p.order)
    if w is not None:
        assert all(p.leq(w, v) for v in pts)
        assert [x for x in pts if all(p.leq(x, v) for v in pts)] == [w]
    else:
        mins = minimal_elements(pts, p.order)
        assert len(mins) >= 2
        assert not p.leq(mins[0], mins[1]) and not p.leq(mins[1], mins[0])


def test_maximal_elements_examples():
    assert maximal_elements(P([[0], [1], [2]])) == [V(2)]
    assert maximal_elements(P([[1, 0], [0, 1]])) == [V(1, 0), V(0, 1)]
    assert maximal_elements(P([[0, 0], [1, 0], [0, 1], [1, 1]])) == [V(1, 1)]
    assert maximal_elements(P([])) == []


# -- chain predicates ----------------------------------------------------------

def test_chain_complete_examples():
    assert not is_chain_complete(P([]))
    assert is_chain_complete(P([[0, 0]]))
    assert is_chain_complete(P([[0, 0], [1, 0], [0, 1], [1, 1]]))


def test_universally_inductive_examples():
    amb = P([[0, 0], [1, 0], [0, 1], [1, 1]])
    assert is_universally_inductive(amb, amb)
    assert is_universally_inductive(amb.subposet([V(1, 0)]), amb)
    assert not is_universally_inductive(amb.subposet([]), amb)
    with pytest.raises(ValueError):
        is_universally_inductive(P([[5, 5]]), amb)


def test_inductive_examples():
    assert not is_inductive(P([]))
    assert is_inductive(P([[1, 0], [0, 1]]))
    assert is_inductive(P([[0], [1], [2]]))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_chain_enumeration_matches_subset_search(seed):
    p = random_poset(random.Random(seed))
    listed = [frozenset(c) for c in chains(p)]
    assert len(listed) == len(set(listed))
    assert set(listed) == brute_chains(p)
    every = brute_chains(p)
    maxi = {frozenset(c) for c in maximal_chains(p)}
    assert maxi == {c for c in every if not any(c < d for d in every)}


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_universally_inductive_matches_definition(seed):
    rng = random.Random(seed)
    amb = random_poset(rng)
    sub = amb.subposet([p for p in amb.points if rng.random() < 0.5])
    assert is_universally_inductive(sub, amb) == brute_universally_inductive(sub, amb)
    assert is_universally_inductive(sub, amb) == bool(sub.points)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_finite_posets_are_chain_complete_and_inductive(seed):
    p = random_poset(random.Random(seed))
    assert is_chain_complete(p)
    assert is_inductive(p)
    for c in brute_chains(p):
        top = [x for x in c if all(p.leq(y, x) for y in c)]
        assert len(top) == 1
        assert least_upper_bound(list(c), p) == top[0]


def test_poset_rejects_duplicates_and_respects_cap(monkeypatch):
    with pytest.raises(ValueError):
        P([[0], [0]])
    monkeypatch.setenv("OVI_MAX_POINTS", "3")
    with pytest.raises(ValueError):
        P([[0], [1], [2], [3]])
    monkeypatch.setenv("OVI_MAX_POINTS", "5")
    assert len(P([[0], [1], [2], [3]])) == 4
