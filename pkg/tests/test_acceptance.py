"""Acceptance runs over fixed-seed corpora.

Each test carries a ``criterion`` mark; ``conftest.py`` prints one PASS or
FAIL line per criterion at the end of the session.
"""

import itertools
import random
from fractions import Fraction

import pytest

from nsovi import generators as G
from nsovi import numerics as nm
from nsovi.hypotheses import find_V3_witness, full_report
from nsovi.model import load_instance, save_instance
from nsovi.oracle import (
    HOLDS,
    verify_argmin_collapse,
    verify_existence,
    verify_fixed_points,
    verify_ovi_reduction,
)
from nsovi.orders import (
    ConeOrder,
    FinitePoset,
    is_chain_complete,
    is_universally_inductive,
    leq,
)
from nsovi.solver import ascend, pi_map, pi_table

criterion = pytest.mark.criterion


@pytest.fixture(scope="module")
def unconstrained():
    return [G.gen_unconstrained(s) for s in range(200)]


@pytest.fixture(scope="module")
def satisfying():
    return [G.gen_satisfying(s) for s in range(100)]


@pytest.fixture(scope="module")
def argmin_corpus():
    return [G.gen_argmin(s) for s in range(50)]


@pytest.fixture(scope="module")
def ovi_corpus():
    return [G.gen_ovi(s) for s in range(50)]


def _bad(instances, check):
    return [(i.meta or {}).get("seed", k) for k, i in enumerate(instances) if not check(i)]


@criterion(1, "fixed points equal solutions on fixtures and 200 random instances")
def test_fixed_points_equal_solutions(unconstrained):
    corpus = [G.fixture(n) for n in G.FIXTURES] + unconstrained
    assert all(max(i.n_c, i.n_d) <= 12 for i in unconstrained)
    assert all(max(i.X.dim, i.Y.dim, i.U.dim, i.V.dim) <= 3 for i in unconstrained)
    assert _bad(corpus, lambda i: verify_fixed_points(i).status == HOLDS) == []


@criterion(2, "existence conclusions hold on 100 hypothesis-satisfying instances")
def test_existence_conclusions(satisfying):
    assert _bad(satisfying, lambda i: verify_existence(i).status == HOLDS) == []


def _inclusion_holds(i):
    table = pi_table(i)
    return all(
        set(table[a]) <= set(table[b])
        for a, b in itertools.permutations(range(i.n_c), 2)
        if leq(i.X.order, i.C[a], i.C[b])
    )


@criterion(3, "pi images grow along the order on the same 100 instances")
def test_inclusion(satisfying):
    assert _bad(satisfying, _inclusion_holds) == []


def _absorbs(i):
    x, u = find_V3_witness(i)
    if x != i.x_prime or u not in pi_map(i, u):
        return False
    result = ascend(i, x)
    return result is not None and len(result[1]) <= 2 and result[0] in pi_map(i, result[0])


@criterion(4, "one selection from x' reaches a fixed point on the same 100 instances")
def test_one_step_absorption(satisfying):
    assert _bad(satisfying, _absorbs) == []


@criterion(5, "m equals the plain f-argmin on 50 linear scalar instances")
def test_argmin_collapse(argmin_corpus):
    for i in argmin_corpus:
        r = full_report(i)
        assert r["V5"].holds and r["V6"].holds
    assert _bad(argmin_corpus, lambda i: verify_argmin_collapse(i).status == HOLDS) == []


@criterion(6, "split problem reduces to the plain one on 50 reduction-shaped instances")
def test_ovi_reduction(ovi_corpus):
    assert _bad(ovi_corpus, lambda i: verify_ovi_reduction(i).status == HOLDS) == []


def _random_cone(rng, dim):
    while True:
        rows = [[rng.randint(-1, 2) for _ in range(dim)] for _ in range(dim + rng.randint(0, 2))]
        g = nm.matrix(rows)
        if nm.kernel_is_trivial(g):
            return ConeOrder(dim, g)


def _random_order(rng, dim):
    return ConeOrder.componentwise(dim) if rng.random() < 0.5 else _random_cone(rng, dim)


def _brute_chain_complete(p):
    for r in range(1, len(p.points) + 1):
        for sub in itertools.combinations(p.points, r):
            if not all(p.leq(a, b) or p.leq(b, a) for a, b in itertools.combinations(sub, 2)):
                continue
            uppers = [u for u in p.points if all(p.leq(x, u) for x in sub)]
            if not any(all(p.leq(u, w) for w in uppers) for u in uppers):
                return False
    return True


@criterion(7, "500 nonempty finite subsets are chain-complete and universally inductive")
def test_finite_posets():
    rng = random.Random(2024)
    failures = []
    for case in range(500):
        dim = rng.randint(1, 3)
        order = _random_order(rng, dim)
        # Dense integer grid so comparable pairs and longer chains are common.
        pts = {tuple(Fraction(rng.randint(0, 2)) for _ in range(dim)) for _ in range(rng.randint(1, 6))}
        ambient = FinitePoset(tuple(sorted(pts)), order)
        chosen = [p for p in ambient.points if rng.random() < 0.6] or [rng.choice(ambient.points)]
        sub = ambient.subposet(chosen)
        if not (is_chain_complete(sub) and _brute_chain_complete(sub)
                and is_universally_inductive(sub, ambient)):
            failures.append(case)
    assert failures == []


def _cone_vector(rng, order, dim):
    for _ in range(50):
        k = nm.vector([rng.randint(0, 3) if order.kind == "componentwise" else rng.randint(-3, 3)
                       for _ in range(dim)])
        if order.in_cone(k):
            return k
    return nm.zeros(dim)


@pytest.mark.parametrize("kind", ["componentwise", "cone"])
@criterion(8, "order axioms on 1000 random cases per order kind")
def test_order_axioms(kind):
    rng = random.Random({"componentwise": 8, "cone": 88}[kind])
    comparable = 0
    for _ in range(1000):
        dim = rng.randint(1, 3)
        o = ConeOrder.componentwise(dim) if kind == "componentwise" else _random_cone(rng, dim)
        rand = lambda: nm.vector([Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(dim)])
        u = rand()
        v = nm.add(u, _cone_vector(rng, o, dim))
        w = nm.add(v, _cone_vector(rng, o, dim))
        t, alpha = rand(), Fraction(rng.randint(0, 6), rng.randint(1, 3))
        comparable += u != v
        assert leq(o, u, u)
        assert leq(o, u, v) and leq(o, v, w) and leq(o, u, w)
        assert not leq(o, v, u) or u == v
        assert leq(o, nm.add(u, t), nm.add(v, t))
        assert leq(o, nm.scale(alpha, u), nm.scale(alpha, v))
        # Unconstrained pairs too.
        a, b = rand(), rand()
        if leq(o, a, b) and leq(o, b, a):
            assert a == b
        assert leq(o, a, b) == leq(o, nm.add(a, t), nm.add(b, t))
    assert comparable > 500


@criterion(9, "positive rescaling of f or g leaves every pi image unchanged on 50 instances")
def test_scaling_invariance(unconstrained):
    rng = random.Random(9)
    factors = [Fraction(1, 2), Fraction(2), Fraction(3)]
    for i in unconstrained[:50]:
        before = pi_table(i)
        lam = [rng.choice(factors) for _ in range(i.n_c)]
        mu = [rng.choice(factors) for _ in range(i.n_d)]
        assert pi_table(G.scale_f(i, lam)) == before
        assert pi_table(G.scale_g(i, mu)) == before


@criterion(10, "save then load is the identity on the full corpus")
def test_round_trip(unconstrained, satisfying, argmin_corpus, ovi_corpus):
    corpus = [G.fixture(n) for n in G.FIXTURES] + unconstrained + satisfying + argmin_corpus + ovi_corpus
    for i in corpus:
        data = save_instance(i)
        back = load_instance(data)
        assert back == i and back.meta == i.meta
        assert save_instance(back) == data
