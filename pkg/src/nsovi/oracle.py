"""Brute-force verifiers for the theorem-level claims on finite instances.

The fixed-point and solution-set computations in :func:`verify_fixed_points` are
written here from the primitives in :mod:`numerics` and :mod:`orders` only,
so they do not share a code path with :mod:`solver`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from . import numerics as nm
from .hypotheses import check_V5, check_V6, find_V3_witness, full_report
from .model import Instance, UnsupportedRegime
from .numerics import Vector
from .orders import FinitePoset, is_inductive, leq, maximal_elements
from . import solver

HOLDS, FAILS, NOT_APPLICABLE = "holds", "fails", "not-applicable"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[Any] = None
    detail: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status != FAILS

    def to_json(self) -> dict:
        out: dict[str, Any] = {"verdict": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


def _a_of(i: Instance, c: int) -> Vector:
    if i.A.kind == "linear":
        return nm.mat_apply(i.A.matrix, i.C[c])
    return i.A.values[c]


def _g_at(i: Instance, y: Vector):
    return i.g[i.D.index(y)]


def _fixed_points(i: Instance) -> list[int]:
    """c with c in F(c), comparing values pairwise under the U and V orders."""
    out = []
    for c in range(i.n_c):
        fc = i.f[c]
        own = nm.mat_apply(fc, i.C[c])
        if not all(leq(i.U.order, own, nm.mat_apply(fc, t)) for t in i.C):
            continue
        y = _a_of(i, c)
        gy = _g_at(i, y)
        own_g = nm.mat_apply(gy, y)
        if all(leq(i.V.order, own_g, nm.mat_apply(gy, s)) for s in i.D):
            out.append(c)
    return out


def _solutions(i: Instance) -> list[int]:
    """c satisfying both ordered inequalities, tested on difference vectors."""
    zero_u, zero_v = nm.zeros(i.U.dim), nm.zeros(i.V.dim)
    out = []
    for c in range(i.n_c):
        x = i.C[c]
        if not all(leq(i.U.order, zero_u, nm.mat_apply(i.f[c], nm.sub(t, x))) for t in i.C):
            continue
        y = _a_of(i, c)
        gy = _g_at(i, y)
        if all(leq(i.V.order, zero_v, nm.mat_apply(gy, nm.sub(s, y))) for s in i.D):
            out.append(c)
    return out


def verify_fixed_points(i: Instance) -> Verdict:
    """Fixed points of F and solutions coincide, and the solver agrees."""
    fix, sol = _fixed_points(i), _solutions(i)
    if fix != sol:
        diff = sorted(set(fix) ^ set(sol))
        return Verdict(FAILS, {"index": diff[0], "fixed_points": fix, "solutions": sol},
                       "fixed points and solutions differ")
    report = solver.enumerate_solutions(i)
    if report.solutions != sol or report.fixed_points != fix:
        return Verdict(FAILS, {
            "oracle": sol,
            "solver_solutions": report.solutions,
            "solver_fixed_points": report.fixed_points,
        }, "solver disagrees with the brute-force oracle")
    return Verdict(HOLDS, {"fixed_points": fix, "solutions": sol})


def verify_existence(i: Instance, report=None) -> Verdict:
    """Conclusions of the existence theorem on an instance meeting its hypotheses."""
    report = report or full_report(i)
    if not report.theorem_hypotheses_hold():
        failed = [k for k in ("V1_f", "V1_g", "V2", "V3", "V4") if not report[k].holds]
        return Verdict(NOT_APPLICABLE, {"failed_hypotheses": failed})
    x_prime, u_prime = find_V3_witness(i)
    order = i.X.order
    sol = _solutions(i)
    if not sol:
        return Verdict(FAILS, {"x_prime": x_prime}, "no solution")
    sol_poset = FinitePoset(tuple(i.C[c] for c in sol), order)
    if not is_inductive(sol_poset):
        return Verdict(FAILS, {"solutions": sol}, "solution set is not inductive")
    tops = maximal_elements(sol_poset)
    if not tops:
        return Verdict(FAILS, {"solutions": sol}, "no maximal solution")
    above = [c for c in sol if leq(order, i.C[x_prime], i.C[c])]
    above_poset = FinitePoset(tuple(i.C[c] for c in above), order)
    if not above or not is_inductive(above_poset):
        return Verdict(FAILS, {"x_prime": x_prime, "above": above},
                       "no inductive set of solutions above x'")
    index_of = {p: k for k, p in enumerate(i.C)}
    top_idx = sorted(index_of[p] for p in tops)
    high = [c for c in top_idx if leq(order, i.C[x_prime], i.C[c])]
    if not high:
        return Verdict(FAILS, {"x_prime": x_prime, "maximal": top_idx},
                       "no maximal solution above x'")
    return Verdict(HOLDS, {"x_prime": x_prime, "u_prime": u_prime, "solutions": sol,
                           "maximal_solutions": top_idx, "maximal_above_x_prime": high})


def _argmin_f(i: Instance, c: int) -> list[int]:
    vals = [nm.dot(i.f[c][0], t) for t in i.C]
    low = min(vals)
    return [z for z, v in enumerate(vals) if v == low]


def verify_argmin_collapse(i: Instance) -> Verdict:
    """Under AC = D and nonnegative preservation, m(c) is the plain f-argmin.

    Requires linear A and scalar U, V.
    """
    if i.A.kind != "linear" or not i.scalar:
        raise UnsupportedRegime("needs linear A and scalar U, V")
    v5, v6 = check_V5(i), check_V6(i)
    if not (v5.holds and v6.holds):
        return Verdict(NOT_APPLICABLE, {"V5": v5.holds, "V6": v6.holds})
    for c in range(i.n_c):
        m = solver.m_map(i, c)
        argmin = _argmin_f(i, c)
        if not m or m != argmin:
            return Verdict(FAILS, {"c": c, "m": m, "argmin_f": argmin},
                           "m(c) differs from the argmin of <f(c), .>")
    return Verdict(HOLDS)


def is_reduction_shaped(i: Instance) -> bool:
    if i.X != i.Y or i.U != i.V or i.C != i.D or i.f != i.g:
        return False
    return all(i.a_image[k] == c for k, c in enumerate(i.C))


def verify_ovi_reduction(i: Instance) -> Verdict:
    """With X = Y, U = V, C = D, f = g and A = I, the split problem is the plain one."""
    if not is_reduction_shaped(i):
        return Verdict(NOT_APPLICABLE, detail="instance is not of the X = Y, C = D, f = g, A = I shape")
    zero = nm.zeros(i.U.dim)
    plain = [
        c for c in range(i.n_c)
        if all(leq(i.U.order, zero, nm.mat_apply(i.f[c], nm.sub(t, i.C[c]))) for t in i.C)
    ]
    split = solver.enumerate_solutions(i).solutions
    if plain != split:
        return Verdict(FAILS, {"plain": plain, "split": split})
    return Verdict(HOLDS, {"solutions": split})


SUITES = {
    "fixed-points": verify_fixed_points,
    "existence": verify_existence,
    "argmin": verify_argmin_collapse,
    "ovi": verify_ovi_reduction,
}


def run_suite(i: Instance, names) -> dict[str, Verdict]:
    out = {}
    for name in names:
        try:
            out[name] = SUITES[name](i)
        except UnsupportedRegime as exc:
            out[name] = Verdict(NOT_APPLICABLE, detail=str(exc))
    return out
