"""Decision procedures for the existence theorem's hypotheses.

Each check returns a :class:`Check`; a failing check carries a witness that
names the offending indices and points so it can be replayed.

Order-positivity quantifies over probe vectors.  The default probes are the
differences the monotonicity argument actually uses: ``t - z`` for t, z in C
(for f) and ``s - A(z)`` for s in D, z in C (for g).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from . import numerics as nm
from .model import A_index, Instance, UnsupportedRegime, apply_A, apply_f, apply_g, point_json
from .numerics import Vector
from .orders import FinitePoset, is_universally_inductive, leq
from .solver import pi_map, pi_table


@dataclass(frozen=True)
class Check:
    holds: Optional[bool]
    witness: Optional[dict] = None
    note: Optional[str] = None

    @property
    def applicable(self) -> bool:
        return self.holds is not None

    @property
    def fails(self) -> bool:
        return self.holds is False

    def to_json(self) -> dict:
        out: dict[str, Any] = {"holds": self.holds}
        if self.holds is None:
            out["applicable"] = False
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


HOLDS = Check(True)


@dataclass(frozen=True)
class ProbeSet:
    vectors: tuple[Vector, ...]

    def __post_init__(self) -> None:
        vecs = tuple(dict.fromkeys(self.vectors))
        if not vecs:
            raise ValueError("probe set must be nonempty")
        if len({len(v) for v in vecs}) != 1:
            raise ValueError("probe vectors must share one dimension")
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return len(self.vectors[0])


def default_f_probes(i: Instance) -> ProbeSet:
    return ProbeSet(tuple(nm.sub(t, z) for z in i.C for t in i.C))


def default_g_probes(i: Instance) -> ProbeSet:
    return ProbeSet(tuple(nm.sub(s, y) for y in dict.fromkeys(i.a_image) for s in i.D))


def _order_positive(points, order, value_order, apply, probes: ProbeSet, label: str) -> Check:
    # For each point, the probes on which its operator is nonnegative.
    positive = [
        [value_order.in_cone(apply(k, z)) for z in probes.vectors]
        for k in range(len(points))
    ]
    for a, pa in enumerate(points):
        for b, pb in enumerate(points):
            if a == b or not leq(order, pa, pb):
                continue
            for j, z in enumerate(probes.vectors):
                if positive[a][j] and not positive[b][j]:
                    return Check(False, {
                        f"{label}1": a, f"{label}2": b,
                        f"{label}1_point": point_json(pa),
                        f"{label}2_point": point_json(pb),
                        "z": point_json(z),
                    })
    return HOLDS


def check_order_positive_f(i: Instance, probes: Optional[ProbeSet] = None) -> Check:
    """f(c1)(z) >= 0 forces f(c2)(z) >= 0 whenever c1 <= c2 in C."""
    probes = probes or default_f_probes(i)
    if probes.dim != i.X.dim:
        raise ValueError(f"f probes must lie in Q^{i.X.dim}")
    return _order_positive(i.C, i.X.order, i.U.order,
                           lambda k, z: apply_f(i, k, z), probes, "c")


def check_order_positive_g(i: Instance, probes: Optional[ProbeSet] = None) -> Check:
    probes = probes or default_g_probes(i)
    if probes.dim != i.Y.dim:
        raise ValueError(f"g probes must lie in Q^{i.Y.dim}")
    return _order_positive(i.D, i.Y.order, i.V.order,
                           lambda k, z: apply_g(i, k, z), probes, "d")


def check_A_increasing(i: Instance) -> Check:
    for a in range(i.n_c):
        for b in range(i.n_c):
            if a != b and leq(i.X.order, i.C[a], i.C[b]) \
                    and not leq(i.Y.order, apply_A(i, a), apply_A(i, b)):
                return Check(False, {
                    "c1": a, "c2": b,
                    "c1_point": point_json(i.C[a]), "c2_point": point_json(i.C[b]),
                    "A_c1": point_json(apply_A(i, a)), "A_c2": point_json(apply_A(i, b)),
                })
    return HOLDS


def check_V2(i: Instance, table: Optional[list[list[int]]] = None) -> Check:
    """Every F(c) is nonempty and universally inductive in C."""
    table = table if table is not None else pi_table(i)
    for c, image in enumerate(table):
        sub = FinitePoset(tuple(i.C[z] for z in image), i.X.order)
        if not image:
            return Check(False, {"c": c, "c_point": point_json(i.C[c]), "pi": []},
                         note="empty image")
        if not is_universally_inductive(sub, i.c_poset):
            return Check(False, {"c": c, "c_point": point_json(i.C[c]), "pi": image},
                         note="not universally inductive")
    return HOLDS


def find_V3_witness(i: Instance, table: Optional[list[list[int]]] = None
                    ) -> Optional[tuple[int, int]]:
    """A pair (x', u') with u' in F(x') and x' <= u'.

    Uses the instance's ``x_prime`` when set; otherwise scans C in index
    order and takes the smallest admissible u' for the first x' that has one.
    """
    starts = [i.x_prime] if i.x_prime is not None else range(i.n_c)
    for x in starts:
        image = table[x] if table is not None else pi_map(i, x)
        for u in image:
            if leq(i.X.order, i.C[x], i.C[u]):
                return x, u
    return None


def check_V3(i: Instance, table=None) -> Check:
    w = find_V3_witness(i, table)
    if w is None:
        witness = {"x_prime": i.x_prime} if i.x_prime is not None else None
        return Check(False, witness, note="no x' <= u' with u' in F(x')")
    x, u = w
    return Check(True, {"x_prime": x, "u_prime": u,
                        "x_prime_point": point_json(i.C[x]), "u_prime_point": point_json(i.C[u])})


def check_V5(i: Instance) -> Check:
    """A maps C onto D."""
    image = set(i.a_image)
    uncovered = [k for k, d in enumerate(i.D) if d not in image]
    if uncovered:
        return Check(False, {"uncovered": uncovered,
                             "uncovered_points": [point_json(i.D[k]) for k in uncovered]})
    return HOLDS


def check_V6(i: Instance, vectors: Optional[Sequence[Vector]] = None) -> Check:
    """<f(x), t> >= 0 implies <g(Ax), At> >= 0 for x, t in C.

    ``vectors`` replaces the t range with arbitrary X-vectors; that form
    needs a linear A, since At is then computed from the matrix.
    """
    if not i.scalar:
        raise UnsupportedRegime(
            f"nonnegative preservation needs scalar U and V, got dim U = {i.U.dim}, dim V = {i.V.dim}"
        )
    if vectors is None:
        ts = [(k, t, apply_A(i, k)) for k, t in enumerate(i.C)]
    else:
        if i.A.kind != "linear":
            raise UnsupportedRegime("probing off C needs a linear A")
        ts = [(None, t, nm.mat_apply(i.A.matrix, t)) for t in vectors]
    for x in range(i.n_c):
        f_row = i.f[x][0]
        g_row = i.g[A_index(i, x)][0]
        for k, t, at in ts:
            if nm.dot(f_row, t) >= 0 and nm.dot(g_row, at) < 0:
                return Check(False, {
                    "x": x, "t": k,
                    "x_point": point_json(i.C[x]), "t_point": point_json(t),
                    "f_pairing": nm.format_rational(nm.dot(f_row, t)),
                    "g_pairing": nm.format_rational(nm.dot(g_row, at)),
                })
    return HOLDS


def check_increasing_upward(i: Instance, table: Optional[list[list[int]]] = None) -> Check:
    """c1 <= c2 and z in F(c1) give some w in F(c2) with z <= w."""
    table = table if table is not None else pi_table(i)
    order = i.X.order
    for a in range(i.n_c):
        for b in range(i.n_c):
            if a == b or not leq(order, i.C[a], i.C[b]):
                continue
            for z in table[a]:
                if not any(leq(order, i.C[z], i.C[w]) for w in table[b]):
                    return Check(False, {"c1": a, "c2": b, "z": z,
                                         "F_c1": table[a], "F_c2": table[b]})
    return HOLDS


def pi_inclusion_violation(i: Instance, table: Optional[list[list[int]]] = None
                           ) -> Optional[tuple[int, int, int]]:
    """First (c1, c2, z) with c1 <= c2 and z in F(c1) but not in F(c2)."""
    table = table if table is not None else pi_table(i)
    for a in range(i.n_c):
        for b in range(i.n_c):
            if a != b and leq(i.X.order, i.C[a], i.C[b]):
                missing = set(table[a]) - set(table[b])
                if missing:
                    return a, b, min(missing)
    return None


CONDITIONS = ("V1_f", "V1_g", "V2", "V3", "V4", "V5", "V6", "A1", "A2", "A3")


@dataclass
class HypothesisReport:
    checks: dict[str, Check] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Check:
        return self.checks[key]

    @property
    def all_hold(self) -> bool:
        return not any(c.fails for c in self.checks.values())

    def theorem_hypotheses_hold(self) -> bool:
        return all(self.checks[k].holds for k in ("V1_f", "V1_g", "V2", "V3", "V4"))

    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if c.fails]

    def to_json(self) -> dict:
        return {k: self.checks[k].to_json() for k in CONDITIONS if k in self.checks}


def full_report(i: Instance, probes: Optional[tuple[Optional[ProbeSet], Optional[ProbeSet]]] = None
                ) -> HypothesisReport:
    """Run every applicable check.

    ``probes`` is an optional ``(f_probes, g_probes)`` pair; None entries fall
    back to the defaults.
    """
    f_probes, g_probes = probes if probes is not None else (None, None)
    table = pi_table(i)
    r = HypothesisReport()
    r.checks["V1_f"] = check_order_positive_f(i, f_probes)
    r.checks["V1_g"] = check_order_positive_g(i, g_probes)
    r.checks["V2"] = check_V2(i, table)
    r.checks["V3"] = check_V3(i, table)
    r.checks["V4"] = check_A_increasing(i)
    r.checks["V5"] = check_V5(i)
    if i.scalar:
        r.checks["V6"] = check_V6(i)
    else:
        r.checks["V6"] = Check(None, note="defined only for scalar U and V")
    r.checks["A1"] = check_increasing_upward(i, table)
    r.checks["A2"] = r.checks["V2"]
    r.checks["A3"] = r.checks["V3"]
    return r
