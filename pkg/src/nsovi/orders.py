"""Cone orders on Q^n and predicates on finite posets.

A :class:`ConeOrder` realises ``u <= v`` as membership of ``v - u`` in a
pointed polyhedral cone, either the nonnegative orthant (``componentwise``)
or ``{w : G w >= 0}`` for a matrix ``G`` of full column rank.  Such orders
are translation invariant and preserved by nonnegative scaling by
construction.

The chain predicates enumerate chains exhaustively and are exponential in
the number of points.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import numerics as nm
from .numerics import Matrix, Vector

DEFAULT_MAX_POINTS = 64


def max_points() -> int:
    """Hard cap on finite poset size; ``OVI_MAX_POINTS`` overrides it."""
    raw = os.environ.get("OVI_MAX_POINTS")
    if raw is None:
        return DEFAULT_MAX_POINTS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"OVI_MAX_POINTS must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("OVI_MAX_POINTS must be positive")
    return value


@dataclass(frozen=True)
class ConeOrder:
    dim: int
    generators: Optional[Matrix] = None

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise ValueError("order dimension must be positive")
        if self.generators is not None:
            rows, cols = nm.shape(self.generators)
            if cols != self.dim:
                raise ValueError(
                    f"cone matrix has {cols} columns, order dimension is {self.dim}"
                )
            if not nm.kernel_is_trivial(self.generators):
                raise ValueError("cone is not pointed: generator matrix has a nontrivial kernel")

    @classmethod
    def componentwise(cls, dim: int) -> "ConeOrder":
        return cls(dim)

    @classmethod
    def cone(cls, rows) -> "ConeOrder":
        g = nm.matrix(rows)
        return cls(len(g[0]), g)

    @property
    def kind(self) -> str:
        return "componentwise" if self.generators is None else "cone"

    def in_cone(self, w: Vector) -> bool:
        if len(w) != self.dim:
            raise ValueError(f"dimension mismatch: order on Q^{self.dim}, vector in Q^{len(w)}")
        if self.generators is None:
            return nm.is_nonnegative(w)
        return nm.is_nonnegative(nm.mat_apply(self.generators, w))

    def to_json(self) -> dict:
        if self.generators is None:
            return {"type": "componentwise"}
        return {
            "type": "cone",
            "generators": [[nm.format_rational(a) for a in row] for row in self.generators],
        }

    @classmethod
    def from_json(cls, doc: dict, dim: Optional[int] = None) -> "ConeOrder":
        kind = doc.get("type")
        if kind == "componentwise":
            if dim is None:
                raise ValueError("componentwise order needs a dimension")
            return cls(dim)
        if kind == "cone":
            order = cls.cone(doc["generators"])
            if dim is not None and order.dim != dim:
                raise ValueError(f"cone order has dimension {order.dim}, expected {dim}")
            return order
        raise ValueError(f"unknown order type {kind!r}")


def leq(o: ConeOrder, u: Vector, v: Vector) -> bool:
    """``u <= v`` under ``o``: ``v - u`` lies in the order cone."""
    if len(u) != o.dim or len(v) != o.dim:
        raise ValueError(
            f"dimension mismatch: order on Q^{o.dim}, got Q^{len(u)} and Q^{len(v)}"
        )
    return o.in_cone(nm.sub(v, u))


def lt(o: ConeOrder, u: Vector, v: Vector) -> bool:
    return u != v and leq(o, u, v)


def comparable(o: ConeOrder, u: Vector, v: Vector) -> bool:
    return leq(o, u, v) or leq(o, v, u)


@dataclass(frozen=True)
class FinitePoset:
    points: tuple[Vector, ...]
    order: ConeOrder

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        cap = max_points()
        if len(pts) > cap:
            raise ValueError(f"{len(pts)} points exceeds the cap of {cap} (see OVI_MAX_POINTS)")
        for p in pts:
            if len(p) != self.order.dim:
                raise ValueError(
                    f"point of dimension {len(p)} in a poset over Q^{self.order.dim}"
                )
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.points)

    def leq(self, u: Vector, v: Vector) -> bool:
        return leq(self.order, u, v)

    def upper_interval(self, u: Vector) -> list[Vector]:
        """The points ``x`` with ``x >= u``."""
        return [x for x in self.points if leq(self.order, u, x)]

    def lower_interval(self, u: Vector) -> list[Vector]:
        """The points ``x`` with ``x <= u``."""
        return [x for x in self.points if leq(self.order, x, u)]

    def subposet(self, points: Sequence[Vector]) -> "FinitePoset":
        return FinitePoset(tuple(points), self.order)


def smallest_element(values: Sequence[Vector], o: ConeOrder) -> Optional[Vector]:
    """The element below every other value, or None if there is none.

    Repeated values are allowed; antisymmetry makes the answer unique.
    """
    if not values:
        raise ValueError("smallest_element of an empty collection")
    distinct = list(dict.fromkeys(values))
    for w in distinct:
        if all(leq(o, w, v) for v in distinct):
            return w
    return None


def minimal_elements(values: Sequence[Vector], o: ConeOrder) -> list[Vector]:
    distinct = list(dict.fromkeys(values))
    return [w for w in distinct if not any(v != w and leq(o, v, w) for v in distinct)]


def maximal_elements(p: FinitePoset) -> list[Vector]:
    """Points with nothing strictly above them, in poset order."""
    return [
        w for w in p.points
        if not any(v != w and p.leq(w, v) for v in p.points)
    ]


def linear_extension(p: FinitePoset) -> list[Vector]:
    """Points ordered so that ``u < v`` puts u before v."""
    remaining = list(p.points)
    out = []
    while remaining:
        for i, w in enumerate(remaining):
            if not any(v != w and p.leq(v, w) for v in remaining):
                out.append(remaining.pop(i))
                break
    return out


def chains(p: FinitePoset) -> Iterator[tuple[Vector, ...]]:
    """Every nonempty chain of ``p``, listed bottom to top."""
    ext = linear_extension(p)

    def extend(chain: tuple[Vector, ...], start: int) -> Iterator[tuple[Vector, ...]]:
        for k in range(start, len(ext)):
            if p.leq(chain[-1], ext[k]):
                longer = chain + (ext[k],)
                yield longer
                yield from extend(longer, k + 1)

    for k, x in enumerate(ext):
        yield (x,)
        yield from extend((x,), k + 1)


def maximal_chains(p: FinitePoset) -> Iterator[tuple[Vector, ...]]:
    """Saturated chains from a minimal to a maximal point.

    Every chain of a finite poset sits inside one of these.
    """
    pts = p.points
    strictly_above = {
        x: [y for y in pts if y != x and p.leq(x, y)] for x in pts
    }
    covers = {
        x: [
            y for y in above
            if not any(z != y and p.leq(z, y) for z in above)
        ]
        for x, above in strictly_above.items()
    }
    bottoms = [x for x in pts if not any(y != x and p.leq(y, x) for y in pts)]

    def walk(chain: tuple[Vector, ...]) -> Iterator[tuple[Vector, ...]]:
        nxt = covers[chain[-1]]
        if not nxt:
            yield chain
            return
        for y in nxt:
            yield from walk(chain + (y,))

    for b in bottoms:
        yield from walk((b,))


def upper_bounds(chain: Sequence[Vector], candidates: Sequence[Vector], o: ConeOrder) -> list[Vector]:
    return [s for s in candidates if all(leq(o, x, s) for x in chain)]


def least_upper_bound(chain: Sequence[Vector], p: FinitePoset) -> Optional[Vector]:
    ub = upper_bounds(chain, p.points, p.order)
    if not ub:
        return None
    return smallest_element(ub, p.order)


def is_chain_complete(p: FinitePoset) -> bool:
    """Every nonempty chain has a least upper bound inside ``p``.

    The empty poset is rejected by convention.
    """
    if not p.points:
        return False
    return all(least_upper_bound(c, p) is not None for c in chains(p))


def is_inductive(p: FinitePoset) -> bool:
    """Every chain of ``p`` has an upper bound in ``p``; empty ``p`` fails."""
    if not p.points:
        return False
    # Boundedness passes to subchains, so maximal chains suffice.
    return all(upper_bounds(c, p.points, p.order) for c in maximal_chains(p))


def is_universally_inductive(subset: FinitePoset, ambient: FinitePoset) -> bool:
    """Chains of ``ambient`` covered pointwise by ``subset`` are bounded in it.

    A chain qualifies when each of its elements lies below some point of
    ``subset``; it must then have a single upper bound in ``subset``.  The
    empty chain always qualifies, so an empty subset fails.
    """
    if subset.order != ambient.order:
        raise ValueError("subset and ambient carry different orders")
    members = set(ambient.points)
    if any(s not in members for s in subset.points):
        raise ValueError("subset is not contained in ambient")
    if not subset.points:
        return False
    covered = [
        x for x in ambient.points if any(ambient.leq(x, s) for s in subset.points)
    ]
    if not covered:
        return True
    region = ambient.subposet(covered)
    return all(
        upper_bounds(c, subset.points, subset.order) for c in maximal_chains(region)
    )
