"""Solution maps, order-ascending iteration and solution enumeration.

For a point x of C the set-valued map

    F(x) = { z in C : f(x)(z) is the smallest of {f(x)(t) : t in C}
                      and g(Ax)(Az) is the smallest of {g(Ax)(s) : s in D} }

has exactly the problem's solutions as fixed points.  Everything here works
on indices into C and D.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import numerics as nm
from .model import Instance, UnsupportedRegime, apply_A, apply_f, apply_g, point_json, A_index
from .orders import FinitePoset, is_inductive, leq, maximal_elements, smallest_element


def pi_map(i: Instance, c_index: int) -> list[int]:
    """Indices z whose f- and g-values are the order-smallest at C[c_index]."""
    f_vals = [apply_f(i, c_index, t) for t in i.C]
    f_low = smallest_element(f_vals, i.U.order)
    if f_low is None:
        return []
    d = A_index(i, c_index)
    g_vals = [apply_g(i, d, s) for s in i.D]
    g_low = smallest_element(g_vals, i.V.order)
    if g_low is None:
        return []
    return [
        z for z in range(i.n_c)
        if f_vals[z] == f_low and g_vals[A_index(i, z)] == g_low
    ]


def pi_table(i: Instance) -> list[list[int]]:
    return [pi_map(i, c) for c in range(i.n_c)]


def m_map(i: Instance, c_index: int) -> list[int]:
    """Scalar-pairing version of :func:`pi_map` using plain minima."""
    if not i.scalar:
        raise UnsupportedRegime(
            f"m_map needs scalar U and V, got dim U = {i.U.dim}, dim V = {i.V.dim}"
        )
    f_row = i.f[c_index][0]
    g_row = i.g[A_index(i, c_index)][0]
    f_vals = [nm.dot(f_row, t) for t in i.C]
    g_vals = [nm.dot(g_row, s) for s in i.D]
    f_min, g_min = min(f_vals), min(g_vals)
    return [
        z for z in range(i.n_c)
        if f_vals[z] == f_min and g_vals[A_index(i, z)] == g_min
    ]


def ascend(i: Instance, start: int, table: Optional[list[list[int]]] = None
           ) -> Optional[tuple[int, list[int]]]:
    """Climb from ``start`` through F until a fixed point is reached.

    At each step the successor is taken from F(x) restricted to points above
    x, preferring maximal candidates and then the smallest index.  Returns
    ``(fixed_point, trace)`` or None if some step has no successor above it.
    """
    if not 0 <= start < i.n_c:
        raise IndexError(f"C index {start} out of range")
    order = i.X.order
    x = start
    trace = [x]
    for _ in range(i.n_c):
        image = table[x] if table is not None else pi_map(i, x)
        if x in image:
            return x, trace
        above = [u for u in image if leq(order, i.C[x], i.C[u])]
        if not above:
            return None
        pts = {i.C[u]: u for u in above}
        tops = maximal_elements(FinitePoset(tuple(pts), order))
        x = min(pts[p] for p in tops)
        trace.append(x)
    raise AssertionError("ascent exceeded |C| steps; order is not antisymmetric")


def is_solution(i: Instance, c_index: int) -> bool:
    """Both ordered inequalities hold at C[c_index]."""
    x = i.C[c_index]
    if not all(i.U.order.in_cone(apply_f(i, c_index, nm.sub(t, x))) for t in i.C):
        return False
    y = apply_A(i, c_index)
    d = A_index(i, c_index)
    return all(i.V.order.in_cone(apply_g(i, d, nm.sub(s, y))) for s in i.D)


@dataclass
class SolveReport:
    solutions: list[int]
    fixed_points: list[int]
    maximal_solutions: list[int]
    solutions_above_x_prime: Optional[list[int]]
    solutions_inductive: bool
    above_inductive: Optional[bool]
    ascent_start: Optional[int] = None
    ascent_trace: Optional[list[int]] = None
    ascent_result: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    def to_json(self, i: Instance) -> dict:
        def pts(idx):
            if idx is None:
                return None
            return [
                {"index": k, "point": point_json(i.C[k]), "image": point_json(apply_A(i, k))}
                for k in idx
            ]

        return {
            "solutions": pts(self.solutions),
            "fixed_points": pts(self.fixed_points),
            "maximal_solutions": pts(self.maximal_solutions),
            "solutions_above_x_prime": pts(self.solutions_above_x_prime),
            "structure": {
                "solutions_inductive": self.solutions_inductive,
                "above_inductive": self.above_inductive,
            },
            "ascent": {
                "start": self.ascent_start,
                "trace": pts(self.ascent_trace),
                "fixed_point": self.ascent_result,
            },
            "notes": self.notes,
        }


def enumerate_solutions(i: Instance, x_prime: Optional[int] = None) -> SolveReport:
    """Direct enumeration of the solution set and of the fixed points of F."""
    if x_prime is None:
        x_prime = i.x_prime
    solutions = [c for c in range(i.n_c) if is_solution(i, c)]
    fixed = [c for c in range(i.n_c) if c in pi_map(i, c)]
    order = i.X.order
    sol_poset = FinitePoset(tuple(i.C[c] for c in solutions), order)
    index_of = {p: k for k, p in enumerate(i.C)}
    maximal = sorted(index_of[p] for p in maximal_elements(sol_poset))
    above = above_ind = None
    if x_prime is not None:
        above = [c for c in solutions if leq(order, i.C[x_prime], i.C[c])]
        above_ind = is_inductive(FinitePoset(tuple(i.C[c] for c in above), order))
    return SolveReport(
        solutions=solutions,
        fixed_points=fixed,
        maximal_solutions=maximal,
        solutions_above_x_prime=above,
        solutions_inductive=is_inductive(sol_poset),
        above_inductive=above_ind,
    )
