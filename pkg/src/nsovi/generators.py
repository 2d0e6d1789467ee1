"""Named fixtures and seeded random instance generators.

Every generator is a pure function of ``(seed, size_params)``.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Optional

from . import numerics as nm
from .hypotheses import check_V6, find_V3_witness, full_report
from .model import CouplingMap, Instance, SpaceSpec
from .numerics import Matrix, Vector
from .orders import ConeOrder, leq
from .solver import pi_map

MAX_POINTS = 12
MAX_DIM = 3
DEFAULT_BUDGET = 400


class GenerationError(RuntimeError):
    """No valid instance was found within the attempt budget."""

    def __init__(self, message: str, next_seed: int):
        super().__init__(message)
        self.next_seed = next_seed


@dataclass(frozen=True)
class SizeParams:
    n_c: int = 6
    dim_x: int = 2
    dim_y: int = 2
    dim_u: int = 1
    dim_v: int = 1
    coupling: str = "any"  # "linear", "table" or "any"

    def __post_init__(self) -> None:
        if not 1 <= self.n_c <= MAX_POINTS:
            raise ValueError(f"n_c must be in 1..{MAX_POINTS}")
        for name in ("dim_x", "dim_y", "dim_u", "dim_v"):
            if not 1 <= getattr(self, name) <= MAX_DIM:
                raise ValueError(f"{name} must be in 1..{MAX_DIM}")
        if self.coupling not in ("linear", "table", "any"):
            raise ValueError(f"unknown coupling {self.coupling!r}")


# -- fixtures ----------------------------------------------------------------

def _scalar_space() -> SpaceSpec:
    return SpaceSpec.componentwise(1)


def _points(rows) -> tuple[Vector, ...]:
    return tuple(nm.vector(r) for r in rows)


def _const(m, n: int) -> tuple[Matrix, ...]:
    return (nm.matrix(m),) * n


def _e1(a: int = 2, d=(0, 2, 4)) -> Instance:
    q1 = _scalar_space()
    return Instance(
        X=q1, Y=q1, U=q1, V=q1,
        C=_points([[0], [1], [2]]),
        D=_points([[v] for v in d]),
        f=_const([[1]], 3), g=_const([[1]], len(d)),
        A=CouplingMap.linear([[a]]),
        x_prime=0,
    )


_SQUARE = [[0, 0], [1, 0], [0, 1], [1, 1]]


def _e2() -> Instance:
    q2, q1 = SpaceSpec.componentwise(2), _scalar_space()
    return Instance(
        X=q2, Y=q2, U=q1, V=q1,
        C=_points(_SQUARE), D=_points(_SQUARE),
        f=_const([[1, 1]], 4), g=_const([[1, 1]], 4),
        A=CouplingMap.linear(nm.identity(2)),
        x_prime=0,
    )


def _e3() -> Instance:
    q1 = _scalar_space()
    # f(c)(z) = (z, -z): the three values are pairwise incomparable in Q^2.
    return Instance(
        X=q1, Y=q1, U=SpaceSpec.componentwise(2), V=q1,
        C=_points([[0], [1], [2]]), D=_points([[0], [1], [2]]),
        f=_const([[1], [-1]], 3), g=_const([[1]], 3),
        A=CouplingMap.linear([[1]]),
    )


def _e4() -> Instance:
    q2, q1 = SpaceSpec.componentwise(2), _scalar_space()
    # A(a, b) = (max(a, b), max(a, b)): order-increasing and not linear.
    return Instance(
        X=q2, Y=q2, U=q1, V=q1,
        C=_points(_SQUARE), D=_points([[0, 0], [1, 1]]),
        f=_const([[1, 1]], 4), g=_const([[1, 1]], 2),
        A=CouplingMap.table([[0, 0], [1, 1], [1, 1], [1, 1]]),
        x_prime=0,
    )


FIXTURES = {
    "E1": _e1,
    "E2": _e2,
    "E3_antichain": _e3,
    "E4_nonlinearA": _e4,
    "E1_negA": lambda: _e1(a=-1, d=(0, -1, -2)),
}


def fixture(name: str) -> Instance:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None


# -- random building blocks ---------------------------------------------------

_COORDS = [Fraction(k, 2) for k in range(-6, 7)]


def _rand_points(rng: random.Random, n: int, dim: int, coords=_COORDS) -> list[Vector]:
    n = min(n, len(coords) ** dim)
    seen: dict = {}
    while len(seen) < n:
        p = tuple(rng.choice(coords) for _ in range(dim))
        seen.setdefault(p, None)
    return list(seen)


def _rand_matrix(rng: random.Random, rows: int, cols: int, entries) -> Matrix:
    return tuple(tuple(Fraction(rng.choice(entries)) for _ in range(cols)) for _ in range(rows))


def _rand_cone(rng: random.Random, dim: int) -> ConeOrder:
    while True:
        g = _rand_matrix(rng, dim + rng.randint(0, 1), dim, [-1, 0, 1, 1, 2])
        if nm.kernel_is_trivial(g):
            return ConeOrder(dim, g)


def _rand_order(rng: random.Random, dim: int) -> ConeOrder:
    return ConeOrder.componentwise(dim) if rng.random() < 0.6 else _rand_cone(rng, dim)


def _monotone_weight(rng: random.Random, points: list[Vector]):
    """A positive function that increases under the componentwise order."""
    dim = len(points[0])
    low = [min(p[k] for p in points) for k in range(dim)]
    w = [Fraction(rng.choice([0, 1, 2]), 2) for _ in range(dim)]
    return lambda p: 1 + sum((wk * (pk - lk) for wk, pk, lk in zip(w, p, low)), Fraction(0))


def _monotone_table(rng: random.Random, points: list[Vector], dim_y: int) -> list[Vector]:
    weights = _rand_matrix(rng, dim_y, len(points[0]), [0, 0, 1, 2])
    bumps = [Fraction(rng.choice([0, 1])) for _ in range(dim_y)]
    return [
        tuple(nm.dot(row, p) + b * max(p) for row, b in zip(weights, bumps))
        for p in points
    ]


def _draw_params(rng: random.Random, scalar: bool = False) -> SizeParams:
    return SizeParams(
        n_c=rng.randint(2, MAX_POINTS),
        dim_x=rng.randint(1, MAX_DIM),
        dim_y=rng.randint(1, MAX_DIM),
        dim_u=1 if scalar or rng.random() < 0.6 else rng.randint(2, MAX_DIM),
        dim_v=1 if scalar or rng.random() < 0.6 else rng.randint(2, MAX_DIM),
    )


def _coupling_kind(rng: random.Random, params: SizeParams) -> str:
    if params.coupling != "any":
        return params.coupling
    return rng.choice(["linear", "table"])


def _meta(kind: str, seed: int, params: SizeParams, attempt: int) -> dict:
    return {"generator": kind, "seed": seed, "size_params": asdict(params), "attempts": attempt}


# -- generators ----------------------------------------------------------------

def gen_satisfying(seed: int, size_params: Optional[SizeParams] = None,
                   budget: int = DEFAULT_BUDGET) -> Instance:
    """An instance on which every applicable hypothesis check holds.

    f(c) is a positive, increasing multiple of one base matrix (so f is
    order-positive for any probe set), likewise g, and A is order-increasing
    with D = A(C).  Candidates whose solution maps come out empty somewhere,
    or that break nonnegative preservation, are redrawn.  The emitted x' is
    the first point with an ascending witness.
    """
    rng = random.Random(seed)
    for attempt in range(1, budget + 1):
        params = size_params or _draw_params(rng)
        anchored = rng.random() < 0.5 or attempt > budget // 2
        C = _rand_points(rng, params.n_c, params.dim_x)
        if anchored:
            bottom = tuple(min(p[k] for p in C) for k in range(params.dim_x))
            if bottom not in C:
                C[rng.randrange(len(C))] = bottom
            entries = [0, 1, 1, 2]
        else:
            entries = [-2, -1, 0, 1, 2]
        if _coupling_kind(rng, params) == "linear":
            a = _rand_matrix(rng, params.dim_y, params.dim_x, [0, 0, 1, 2])
            A = CouplingMap("linear", matrix=a)
            image = [nm.mat_apply(a, c) for c in C]
        else:
            image = _monotone_table(rng, C, params.dim_y)
            A = CouplingMap("table", values=tuple(image))
        D = list(dict.fromkeys(image))
        base_f = _rand_matrix(rng, params.dim_u, params.dim_x, entries)
        base_g = _rand_matrix(rng, params.dim_v, params.dim_y, entries)
        lam, mu = _monotone_weight(rng, C), _monotone_weight(rng, D)
        inst = Instance(
            X=SpaceSpec.componentwise(params.dim_x), Y=SpaceSpec.componentwise(params.dim_y),
            U=SpaceSpec.componentwise(params.dim_u), V=SpaceSpec.componentwise(params.dim_v),
            C=tuple(C), D=tuple(D),
            f=tuple(nm.mat_scale(lam(c), base_f) for c in C),
            g=tuple(nm.mat_scale(mu(d), base_g) for d in D),
            A=A,
        )
        witness = _strict_witness(inst) or find_V3_witness(inst)
        if witness is None:
            continue
        inst = replace(inst, x_prime=witness[0], meta=_meta("satisfying", seed, params, attempt))
        if full_report(inst).all_hold:
            return inst
    raise GenerationError(f"no hypothesis-satisfying instance for seed {seed} in {budget} attempts",
                          next_seed=seed + 1)


def _strict_witness(i: Instance) -> Optional[tuple[int, int]]:
    """First (x', u') in index order with u' in F(x') and x' strictly below u'."""
    for x in range(i.n_c):
        for u in pi_map(i, x):
            if u != x and leq(i.X.order, i.C[x], i.C[u]):
                return x, u
    return None


def gen_unconstrained(seed: int, size_params: Optional[SizeParams] = None) -> Instance:
    """A random valid instance; only A(C) within D is enforced."""
    rng = random.Random(seed)
    params = size_params or _draw_params(rng)
    C = _rand_points(rng, params.n_c, params.dim_x, [Fraction(k, 2) for k in range(-2, 5)])
    if _coupling_kind(rng, params) == "linear":
        a = _rand_matrix(rng, params.dim_y, params.dim_x, [-1, 0, 0, 1, 2])
        A = CouplingMap("linear", matrix=a)
        image = [nm.mat_apply(a, c) for c in C]
    else:
        pool = _rand_points(rng, max(1, params.n_c // 2), params.dim_y)
        image = [rng.choice(pool) for _ in C]
        A = CouplingMap("table", values=tuple(image))
    D = list(dict.fromkeys(image))
    room = MAX_POINTS - len(D)
    if room > 0:
        extras = _rand_points(rng, rng.randint(0, min(3, room)), params.dim_y)
        D = list(dict.fromkeys(D + extras))[:MAX_POINTS]
    rng.shuffle(D)
    entries = [-1, 0, 1, 1, 2]
    constant_f = rng.random() < 0.3
    f0 = _rand_matrix(rng, params.dim_u, params.dim_x, entries)
    f = tuple(f0 if constant_f else _rand_matrix(rng, params.dim_u, params.dim_x, entries) for _ in C)
    g0 = _rand_matrix(rng, params.dim_v, params.dim_y, entries)
    g = tuple(g0 if constant_f else _rand_matrix(rng, params.dim_v, params.dim_y, entries) for _ in D)
    x_prime = rng.randrange(len(C)) if rng.random() < 0.5 else None
    return Instance(
        X=SpaceSpec(params.dim_x, _rand_order(rng, params.dim_x)),
        Y=SpaceSpec(params.dim_y, _rand_order(rng, params.dim_y)),
        U=SpaceSpec(params.dim_u, _rand_order(rng, params.dim_u)),
        V=SpaceSpec(params.dim_v, _rand_order(rng, params.dim_v)),
        C=tuple(C), D=tuple(D), f=f, g=g, A=A, x_prime=x_prime,
        meta=_meta("unconstrained", seed, params, 1),
    )


def _v6_on_differences(i: Instance) -> bool:
    diffs = list(dict.fromkeys(nm.sub(t, z) for t in i.C for z in i.C))
    return bool(check_V6(i, diffs).holds)


def gen_argmin(seed: int, size_params: Optional[SizeParams] = None,
                budget: int = DEFAULT_BUDGET) -> Instance:
    """Scalar instance with linear A, D = A(C), and nonnegative preservation.

    Preservation is required both on C and on the differences C - C.  Half
    the draws tie f to g through A (f(c) = k(c) * g(Ac) A with k(c) > 0); the
    rest are unrestricted draws that happen to pass both checks.
    """
    rng = random.Random(seed)
    for attempt in range(1, budget + 1):
        params = size_params or _draw_params(rng, scalar=True)
        params = replace(params, dim_u=1, dim_v=1, coupling="linear")
        C = _rand_points(rng, params.n_c, params.dim_x)
        a = _rand_matrix(rng, params.dim_y, params.dim_x, [-1, 0, 1, 2])
        image = [nm.mat_apply(a, c) for c in C]
        D = list(dict.fromkeys(image))
        g = {d: _rand_matrix(rng, 1, params.dim_y, [-2, -1, 0, 1, 2]) for d in D}
        if rng.random() < 0.5:
            f = []
            for y in image:
                row = tuple(nm.dot(g[y][0], col) for col in zip(*a))
                f.append((nm.scale(Fraction(rng.randint(1, 4), rng.randint(1, 2)), row),))
        else:
            f = [_rand_matrix(rng, 1, params.dim_x, [-2, -1, 0, 1, 2]) for _ in C]
        q1 = SpaceSpec.componentwise(1)
        inst = Instance(
            X=SpaceSpec.componentwise(params.dim_x), Y=SpaceSpec.componentwise(params.dim_y),
            U=q1, V=q1, C=tuple(C), D=tuple(D), f=tuple(f), g=tuple(g[d] for d in D),
            A=CouplingMap("linear", matrix=a),
            meta=_meta("argmin", seed, params, attempt),
        )
        if check_V6(inst).holds and _v6_on_differences(inst):
            return inst
    raise GenerationError(f"no argmin instance for seed {seed} in {budget} attempts", next_seed=seed + 1)


def gen_ovi(seed: int, size_params: Optional[SizeParams] = None) -> Instance:
    """X = Y, U = V, C = D, f = g and A the identity."""
    rng = random.Random(seed)
    params = size_params or _draw_params(rng)
    X = SpaceSpec(params.dim_x, _rand_order(rng, params.dim_x))
    U = SpaceSpec(params.dim_u, _rand_order(rng, params.dim_u))
    C = tuple(_rand_points(rng, params.n_c, params.dim_x, [Fraction(k, 2) for k in range(-2, 5)]))
    entries = [-1, 0, 1, 1, 2]
    f = tuple(_rand_matrix(rng, params.dim_u, params.dim_x, entries) for _ in C)
    if rng.random() < 0.5:
        A = CouplingMap("linear", matrix=nm.identity(params.dim_x))
    else:
        A = CouplingMap("table", values=C)
    return Instance(X=X, Y=X, U=U, V=U, C=C, D=C, f=f, g=f, A=A,
                    meta=_meta("ovi", seed, params, 1))


def scale_f(i: Instance, factors) -> Instance:
    """Replace f(c) by factors[c] * f(c)."""
    return replace(i, f=tuple(nm.mat_scale(k, m) for k, m in zip(factors, i.f)))


def scale_g(i: Instance, factors) -> Instance:
    return replace(i, g=tuple(nm.mat_scale(k, m) for k, m in zip(factors, i.g)))
