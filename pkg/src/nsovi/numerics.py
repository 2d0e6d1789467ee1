"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` values, which are kept in lowest
terms with a positive denominator by the standard library.  Vectors are
tuples of fractions and matrices are tuples of row tuples, so equality is
structural and every value is hashable and immutable.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Tuple, Union

Rational = Fraction
Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]

RationalLike = Union[int, str, Fraction]


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact Fraction.

    Floats and bools are refused: they either lose exactness or are almost
    always a caller mistake.
    """
    if isinstance(value, bool):
        raise TypeError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not a rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` with integer p, q; q must be nonzero."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> Union[int, str]:
    """JSON form of a rational: a bare int when integral, else ``"p/q"``."""
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def vector(entries: Iterable[RationalLike]) -> Vector:
    v = tuple(to_rational(e) for e in entries)
    if not v:
        raise ValueError("vectors must have positive dimension")
    return v


def matrix(rows: Iterable[Iterable[RationalLike]]) -> Matrix:
    m = tuple(vector(r) for r in rows)
    if not m:
        raise ValueError("matrices must have at least one row")
    width = len(m[0])
    if any(len(r) != width for r in m):
        raise ValueError("ragged matrix rows")
    return m


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    )


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), len(m[0])


def _check_dims(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")


def add(u: Vector, v: Vector) -> Vector:
    _check_dims(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    _check_dims(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(alpha: RationalLike, v: Vector) -> Vector:
    alpha = to_rational(alpha)
    return tuple(alpha * a for a in v)


def dot(u: Vector, v: Vector) -> Fraction:
    _check_dims(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_nonnegative(v: Vector) -> bool:
    return all(a >= 0 for a in v)


def mat_apply(m: Matrix, v: Vector) -> Vector:
    """Exact matrix-vector product ``m @ v``."""
    if len(m[0]) != len(v):
        raise ValueError(
            f"dimension mismatch: matrix has {len(m[0])} columns, vector has {len(v)} entries"
        )
    return tuple(dot(row, v) for row in m)


def mat_scale(alpha: RationalLike, m: Matrix) -> Matrix:
    return tuple(scale(alpha, row) for row in m)


def rank(m: Matrix) -> int:
    """Rank by fraction-exact Gaussian elimination."""
    rows = [list(r) for r in m]
    n_rows, n_cols = len(rows), len(rows[0])
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        for i in range(r + 1, n_rows):
            if rows[i][col] != 0:
                factor = rows[i][col] / p
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == n_rows:
            break
    return r


def kernel_is_trivial(m: Matrix) -> bool:
    """True iff ``m @ v == 0`` forces ``v == 0``, i.e. full column rank."""
    return rank(m) == len(m[0])
