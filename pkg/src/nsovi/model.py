"""Problem instances and their JSON form.

An :class:`Instance` bundles four ordered spaces X, Y, U, V, finite sets
C in X and D in Y, tabulated operators f (one U-by-X matrix per point of C)
and g (one V-by-Y matrix per point of D), and a coupling map A from C into D.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from . import numerics as nm
from .numerics import Matrix, Vector
from .orders import ConeOrder, FinitePoset


class InstanceError(ValueError):
    """A document that does not denote a valid instance."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class SchemaError(InstanceError):
    pass


class DomainError(InstanceError):
    pass


class DuplicatePointError(InstanceError):
    pass


class UnsupportedRegime(ValueError):
    """An operation that is only defined for scalar pairings or linear A."""


@dataclass(frozen=True)
class SpaceSpec:
    dim: int
    order: ConeOrder

    def __post_init__(self) -> None:
        if self.order.dim != self.dim:
            raise ValueError(f"order dimension {self.order.dim} differs from space dimension {self.dim}")

    @classmethod
    def componentwise(cls, dim: int) -> "SpaceSpec":
        return cls(dim, ConeOrder.componentwise(dim))


@dataclass(frozen=True)
class CouplingMap:
    kind: str
    matrix: Optional[Matrix] = None
    values: Optional[tuple[Vector, ...]] = None

    @classmethod
    def linear(cls, rows) -> "CouplingMap":
        return cls("linear", matrix=nm.matrix(rows))

    @classmethod
    def table(cls, values) -> "CouplingMap":
        return cls("table", values=tuple(nm.vector(v) for v in values))


@dataclass(frozen=True)
class Instance:
    X: SpaceSpec
    Y: SpaceSpec
    U: SpaceSpec
    V: SpaceSpec
    C: tuple[Vector, ...]
    D: tuple[Vector, ...]
    f: tuple[Matrix, ...]
    g: tuple[Matrix, ...]
    A: CouplingMap
    x_prime: Optional[int] = None
    meta: Optional[dict] = field(default=None, compare=False)
    # Derived in __post_init__.
    c_poset: FinitePoset = field(init=False, repr=False, compare=False)
    d_poset: FinitePoset = field(init=False, repr=False, compare=False)
    a_image: tuple[Vector, ...] = field(init=False, repr=False, compare=False)
    a_index: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _validate(self)

    @property
    def n_c(self) -> int:
        return len(self.C)

    @property
    def n_d(self) -> int:
        return len(self.D)

    @property
    def scalar(self) -> bool:
        return self.U.dim == 1 and self.V.dim == 1


def _validate(i: Instance) -> None:
    set_ = lambda k, v: object.__setattr__(i, k, v)  # noqa: E731
    if not i.C:
        raise SchemaError("C must be nonempty", "$.C")
    if not i.D:
        raise SchemaError("D must be nonempty", "$.D")
    for name, pts, space in (("C", i.C, i.X), ("D", i.D, i.Y)):
        for k, p in enumerate(pts):
            if len(p) != space.dim:
                raise SchemaError(f"expected dimension {space.dim}, got {len(p)}", f"$.{name}[{k}]")
        seen: dict = {}
        for k, p in enumerate(pts):
            if p in seen:
                raise DuplicatePointError(f"duplicate of {name}[{seen[p]}]", f"$.{name}[{k}]")
            seen[p] = k
    try:
        set_("c_poset", FinitePoset(i.C, i.X.order))
        set_("d_poset", FinitePoset(i.D, i.Y.order))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None

    for name, table, n, rows, cols in (
        ("f", i.f, i.n_c, i.U.dim, i.X.dim),
        ("g", i.g, i.n_d, i.V.dim, i.Y.dim),
    ):
        if len(table) != n:
            raise SchemaError(f"expected {n} matrices, got {len(table)}", f"$.{name}")
        for k, m in enumerate(table):
            if nm.shape(m) != (rows, cols):
                raise SchemaError(
                    f"expected a {rows}x{cols} matrix, got {nm.shape(m)[0]}x{nm.shape(m)[1]}",
                    f"$.{name}[{k}]",
                )

    a = i.A
    if a.kind == "linear":
        if a.matrix is None or nm.shape(a.matrix) != (i.Y.dim, i.X.dim):
            raise SchemaError(f"linear A must be {i.Y.dim}x{i.X.dim}", "$.A.matrix")
        image = tuple(nm.mat_apply(a.matrix, c) for c in i.C)
    elif a.kind == "table":
        if a.values is None or len(a.values) != i.n_c:
            raise SchemaError(f"table A needs one value per point of C ({i.n_c})", "$.A.values")
        for k, v in enumerate(a.values):
            if len(v) != i.Y.dim:
                raise SchemaError(f"expected dimension {i.Y.dim}", f"$.A.values[{k}]")
        image = tuple(a.values)
    else:
        raise SchemaError(f"unknown coupling kind {a.kind!r}", "$.A.kind")

    d_index = {d: k for k, d in enumerate(i.D)}
    for k, y in enumerate(image):
        if y not in d_index:
            raise DomainError(
                f"A(C[{k}]) = {_fmt(y)} is not a point of D (C[{k}] = {_fmt(i.C[k])})",
                f"$.A",
            )
    set_("a_image", image)
    set_("a_index", tuple(d_index[y] for y in image))

    if i.x_prime is not None:
        if isinstance(i.x_prime, bool) or not isinstance(i.x_prime, int) or not 0 <= i.x_prime < i.n_c:
            raise SchemaError(f"x_prime must be an index into C (0..{i.n_c - 1})", "$.x_prime")


def _fmt(v: Vector) -> str:
    return "(" + ", ".join(str(nm.format_rational(a)) for a in v) + ")"


def apply_f(i: Instance, c_index: int, z: Vector) -> Vector:
    """Evaluate the linear map f(C[c_index]) at z."""
    if not 0 <= c_index < i.n_c:
        raise IndexError(f"C index {c_index} out of range")
    return nm.mat_apply(i.f[c_index], z)


def apply_g(i: Instance, d_index: int, w: Vector) -> Vector:
    if not 0 <= d_index < i.n_d:
        raise IndexError(f"D index {d_index} out of range")
    return nm.mat_apply(i.g[d_index], w)


def apply_A(i: Instance, c_index: int) -> Vector:
    if not 0 <= c_index < i.n_c:
        raise IndexError(f"C index {c_index} out of range")
    return i.a_image[c_index]


def A_index(i: Instance, c_index: int) -> int:
    """Index in D of A(C[c_index])."""
    return i.a_index[c_index]


# -- JSON ------------------------------------------------------------------

def _vec_json(v: Vector) -> list:
    return [nm.format_rational(a) for a in v]


def _mat_json(m: Matrix) -> list:
    return [_vec_json(r) for r in m]


def instance_to_json(i: Instance) -> dict:
    doc: dict[str, Any] = {
        "spaces": {
            name: {"dim": s.dim, "order": s.order.to_json()}
            for name, s in (("X", i.X), ("Y", i.Y), ("U", i.U), ("V", i.V))
        },
        "C": [_vec_json(c) for c in i.C],
        "D": [_vec_json(d) for d in i.D],
        "f": [_mat_json(m) for m in i.f],
        "g": [_mat_json(m) for m in i.g],
    }
    if i.A.kind == "linear":
        doc["A"] = {"kind": "linear", "matrix": _mat_json(i.A.matrix)}
    else:
        doc["A"] = {"kind": "table", "values": [_vec_json(v) for v in i.A.values]}
    if i.x_prime is not None:
        doc["x_prime"] = i.x_prime
    if i.meta is not None:
        doc["meta"] = i.meta
    return doc


def save_instance(i: Instance) -> bytes:
    return (json.dumps(instance_to_json(i), indent=1) + "\n").encode("utf-8")


def _need(doc: Any, key: str, path: str) -> Any:
    if not isinstance(doc, dict):
        raise SchemaError("expected an object", path)
    if key not in doc:
        raise SchemaError(f"missing field {key!r}", path)
    return doc[key]


def _parse_scalar(x: Any, path: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError(f"expected an integer or 'p/q' string, got {x!r}", path)
    try:
        return nm.to_rational(x)
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc), path) from None


def parse_vector(x: Any, path: str, dim: Optional[int] = None) -> Vector:
    if not isinstance(x, list) or not x:
        raise SchemaError("expected a nonempty array", path)
    v = tuple(_parse_scalar(a, f"{path}[{k}]") for k, a in enumerate(x))
    if dim is not None and len(v) != dim:
        raise SchemaError(f"expected dimension {dim}, got {len(v)}", path)
    return v


def _parse_matrix(x: Any, path: str, rows: Optional[int] = None, cols: Optional[int] = None) -> Matrix:
    if not isinstance(x, list) or not x:
        raise SchemaError("expected a nonempty array of rows", path)
    m = tuple(parse_vector(r, f"{path}[{k}]", cols) for k, r in enumerate(x))
    if len({len(r) for r in m}) != 1:
        raise SchemaError("ragged matrix", path)
    if rows is not None and len(m) != rows:
        raise SchemaError(f"expected {rows} rows, got {len(m)}", path)
    return m


def _parse_space(doc: Any, path: str) -> SpaceSpec:
    dim = _need(doc, "dim", path)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim <= 0:
        raise SchemaError("dim must be a positive integer", f"{path}.dim")
    order_doc = _need(doc, "order", path)
    if not isinstance(order_doc, dict):
        raise SchemaError("expected an object", f"{path}.order")
    kind = order_doc.get("type")
    if kind == "componentwise":
        order = ConeOrder.componentwise(dim)
    elif kind == "cone":
        gens = _parse_matrix(_need(order_doc, "generators", f"{path}.order"), f"{path}.order.generators", cols=dim)
        try:
            order = ConeOrder(dim, gens)
        except ValueError as exc:
            raise SchemaError(str(exc), f"{path}.order") from None
    else:
        raise SchemaError(f"unknown order type {kind!r}", f"{path}.order.type")
    return SpaceSpec(dim, order)


def instance_from_json(doc: Any) -> Instance:
    spaces = _need(doc, "spaces", "$")
    X, Y, U, V = (_parse_space(_need(spaces, k, "$.spaces"), f"$.spaces.{k}") for k in "XYUV")

    def points(key: str, dim: int) -> tuple[Vector, ...]:
        raw = _need(doc, key, "$")
        if not isinstance(raw, list):
            raise SchemaError("expected an array", f"$.{key}")
        return tuple(parse_vector(p, f"$.{key}[{k}]", dim) for k, p in enumerate(raw))

    C = points("C", X.dim)
    D = points("D", Y.dim)

    def table(key: str, rows: int, cols: int) -> tuple[Matrix, ...]:
        raw = _need(doc, key, "$")
        if not isinstance(raw, list):
            raise SchemaError("expected an array", f"$.{key}")
        return tuple(_parse_matrix(m, f"$.{key}[{k}]", rows, cols) for k, m in enumerate(raw))

    f = table("f", U.dim, X.dim)
    g = table("g", V.dim, Y.dim)

    a_doc = _need(doc, "A", "$")
    kind = _need(a_doc, "kind", "$.A")
    if kind == "linear":
        A = CouplingMap("linear", matrix=_parse_matrix(_need(a_doc, "matrix", "$.A"), "$.A.matrix", Y.dim, X.dim))
    elif kind == "table":
        raw = _need(a_doc, "values", "$.A")
        if not isinstance(raw, list):
            raise SchemaError("expected an array", "$.A.values")
        A = CouplingMap("table", values=tuple(
            parse_vector(v, f"$.A.values[{k}]", Y.dim) for k, v in enumerate(raw)
        ))
    else:
        raise SchemaError(f"unknown coupling kind {kind!r}", "$.A.kind")

    x_prime = doc.get("x_prime")
    meta = doc.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise SchemaError("meta must be an object", "$.meta")
    return Instance(X, Y, U, V, C, D, f, g, A, x_prime=x_prime, meta=meta)


def load_instance(document: bytes | str) -> Instance:
    """Parse and validate an instance document.

    Raises a :class:`SchemaError`, :class:`DomainError` or
    :class:`DuplicatePointError`, each carrying a JSON path.
    """
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return instance_from_json(doc)


def point_json(v: Vector) -> list:
    return _vec_json(v)

