"""Finite-dimensional Lie algebras given by exact rational structure constants.

A Lie algebra with basis X_1..X_N is stored as the sparse tensor c[i,j,k] with
[X_i, X_j] = sum_k c[i,j,k] X_k (1-based indices, exact rationals).  From it we
build the matrices of ad(X_j) acting on basis-coefficient row vectors, and the
one-parameter adjoint-action matrices

    A(j, eps) = exp(-eps * ad_j),   ad_j[i][p] = c[j,i,p],

fixed so that row i of A(j, eps) holds the coefficients of X_i conjugated by
the flow of X_j.  For the standard two-dimensional non-abelian algebra
([X_1, X_2] = X_1) this gives A(1) = [[1,0],[-eps,1]] and
A(2) = [[e^eps,0],[0,1]].
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

__all__ = [
    "LieAlgebraError",
    "StructureConstants",
    "AdjointActionMatrix",
    "Violation",
    "validate_algebra",
    "ad_matrix",
    "adjoint_exp",
    "apply_reduction",
    "load_algebra",
    "dump_algebra",
]


class LieAlgebraError(ValueError):
    """Bad indices, malformed input files, or singular reduction matrices."""


def _check_index(name: str, value: int, dim: int) -> None:
    if not 1 <= value <= dim:
        raise LieAlgebraError(f"index {name}={value} out of range 1..{dim}")


@dataclass(frozen=True)
class StructureConstants:
    """Sparse tensor of structure constants for an N-dimensional algebra."""

    dim: int
    entries: dict[tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise LieAlgebraError(f"dim must be >= 1, got {self.dim}")
        clean: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, k), c in self.entries.items():
            _check_index("i", i, self.dim)
            _check_index("j", j, self.dim)
            _check_index("k", k, self.dim)
            c = Fraction(c)
            if c != 0:
                clean[(i, j, k)] = c
        object.__setattr__(self, "entries", clean)

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.entries.get((i, j, k), Fraction(0))

    def bracket_coeffs(self, i: int, j: int) -> dict[int, Fraction]:
        """Coefficients of [X_i, X_j] in the basis, as {k: c_ijk}."""
        return {k: c for (a, b, k), c in self.entries.items() if a == i and b == j}

    @classmethod
    def from_brackets(cls, dim: int,
                      brackets: Mapping[tuple[int, int], Mapping[int, Fraction | int | str]]
                      ) -> "StructureConstants":
        """Build from {(i, j): {k: c_ijk}} for i < j; antisymmetric partners implied."""
        entries: dict[tuple[int, int, int], Fraction] = {}
        for (i, j), coeffs in brackets.items():
            if i == j:
                raise LieAlgebraError(f"bracket ({i},{i}) must vanish")
            for k, c in coeffs.items():
                c = Fraction(c)
                if c == 0:
                    continue
                entries[(i, j, int(k))] = c
                entries[(j, i, int(k))] = -c
        return cls(dim, entries)


@dataclass(frozen=True)
class Violation:
    """One violated identity found by validate_algebra."""

    kind: str                     # "antisymmetry" or "jacobi"
    indices: tuple[int, ...]
    value: Fraction

    def __str__(self) -> str:
        return f"{self.kind} violation at {self.indices}: {self.value}"


def validate_algebra(sc: StructureConstants) -> list[Violation]:
    """Check antisymmetry and the Jacobi identity exactly.

    Returns an empty list iff both hold for every index combination.
    """
    out: list[Violation] = []
    n = sc.dim
    seen = set()
    for (i, j, k) in sc.entries:
        if (i, j, k) in seen or (j, i, k) in seen:
            continue
        seen.add((i, j, k))
        s = sc.c(i, j, k) + sc.c(j, i, k)
        if s != 0:
            out.append(Violation("antisymmetry", (i, j, k), s))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(1, n + 1):
                    s = Fraction(0)
                    for m in range(1, n + 1):
                        s += (sc.c(i, j, m) * sc.c(m, k, l)
                              + sc.c(j, k, m) * sc.c(m, i, l)
                              + sc.c(k, i, m) * sc.c(m, j, l))
                    if s != 0:
                        out.append(Violation("jacobi", (i, j, k, l), s))
    return out


def ad_matrix(sc: StructureConstants, j: int) -> list[list[Fraction]]:
    """Matrix of ad(X_j) on basis-coefficient row vectors: M[i][p] = c_jip.

    A row vector v representing Y = sum_i v_i X_i maps to v @ M, the
    coefficients of [X_j, Y].
    """
    _check_index("j", j, sc.dim)
    n = sc.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for (a, i, p), c in sc.entries.items():
        if a == j:
            m[i - 1][p - 1] = c
    return m


@dataclass(frozen=True)
class AdjointActionMatrix:
    """A(j, eps): the adjoint action of the one-parameter group of X_j."""

    generator_index: int
    parameter: float | Fraction
    matrix: tuple[tuple[Fraction | float, ...], ...]
    exact: bool

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.matrix])

    def __str__(self) -> str:
        rows = [" ".join(str(x) for x in row) for row in self.matrix]
        return f"A({self.generator_index}, {self.parameter}) = [" + "; ".join(rows) + "]"


def _mat_mul_frac(a: Sequence[Sequence[Fraction]],
                  b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0))
             for j in range(n)] for i in range(n)]


def _nilpotency_index(m: list[list[Fraction]]) -> int | None:
    """Smallest q with m^q = 0, or None if m^dim != 0."""
    n = len(m)
    power = m
    for q in range(1, n + 1):
        if all(x == 0 for row in power for x in row):
            return q
        power = _mat_mul_frac(power, m)
    if all(x == 0 for row in power for x in row):
        return n + 1
    return None


def adjoint_exp(sc: StructureConstants, j: int, eps: float | Fraction) -> AdjointActionMatrix:
    """Compute A(j, eps) = exp(-eps * ad_j).

    Uses the exact finite series when ad(X_j) is nilpotent (exact rationals for
    rational eps), an entrywise exponential when ad(X_j) is diagonal, and a
    scaling-and-squaring matrix exponential otherwise.
    """
    if isinstance(eps, float) and not math.isfinite(eps):
        raise LieAlgebraError(f"parameter must be finite, got {eps}")
    m = ad_matrix(sc, j)
    n = sc.dim
    q = _nilpotency_index(m)
    if q is not None:
        # finite series sum_{r<q} (-eps)^r ad^r / r!
        e = Fraction(eps) if isinstance(eps, (Fraction, int)) else eps
        acc: list[list[Fraction | float]] = [
            [Fraction(1) if i == p else Fraction(0) for p in range(n)] for i in range(n)]
        power = [[Fraction(1) if i == p else Fraction(0) for p in range(n)] for i in range(n)]
        coeff: Fraction | float = 1
        for r in range(1, q):
            power = _mat_mul_frac(power, m)  # ad^r, exact
            coeff = coeff * (-e) / r
            acc = [[acc[i][p] + coeff * power[i][p] for p in range(n)] for i in range(n)]
        exact = isinstance(e, Fraction)
        return AdjointActionMatrix(j, eps, tuple(tuple(row) for row in acc), exact)
    if all(m[i][p] == 0 for i in range(n) for p in range(n) if i != p):
        diag = tuple(tuple(math.exp(-float(eps) * float(m[i][i])) if i == p else 0.0
                           for p in range(n)) for i in range(n))
        return AdjointActionMatrix(j, eps, diag, exact=False)
    from scipy.linalg import expm

    a = expm(-float(eps) * np.array([[float(x) for x in row] for row in m]))
    return AdjointActionMatrix(j, eps, tuple(tuple(float(x) for x in row) for row in a),
                               exact=False)


def apply_reduction(b, a: AdjointActionMatrix):
    """Left-multiply a candidate automorphism matrix by A(j, eps).

    `b` is an N x N matrix (nested lists of Fractions/floats or ndarray); it
    must be nonsingular, since only nonsingular matrices represent
    automorphisms.  Exact arithmetic is preserved when both factors are exact.
    """
    n = len(a.matrix)
    rows = [list(row) for row in (b.tolist() if isinstance(b, np.ndarray) else b)]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise LieAlgebraError(f"matrix must be {n}x{n}")
    det = np.linalg.det(np.array([[float(x) for x in r] for r in rows]))
    if abs(det) < 1e-12:
        raise LieAlgebraError("reduction requires a nonsingular matrix")
    out = [[sum((a.matrix[i][k] * rows[k][p] for k in range(n)), 0)
            for p in range(n)] for i in range(n)]
    return out


def load_algebra(source) -> StructureConstants:
    """Read an algebra definition from a JSON file path, file object or dict.

    Format: {"dim": N, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": "1"}}, ...]}
    where coeffs maps the basis index k to a rational string "p/q"; the
    antisymmetric partner of each bracket is implied.
    """
    if isinstance(source, dict):
        doc = source
    elif isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = json.load(source)
    try:
        dim = int(doc["dim"])
        brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
        for item in doc.get("brackets", []):
            i, j = int(item["i"]), int(item["j"])
            coeffs = {int(k): Fraction(str(v)) for k, v in item["coeffs"].items()}
            key = (i, j)
            if key in brackets:
                raise LieAlgebraError(f"duplicate bracket ({i},{j})")
            brackets[key] = coeffs
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LieAlgebraError):
            raise
        raise LieAlgebraError(f"malformed algebra definition: {exc}") from exc
    return StructureConstants.from_brackets(dim, brackets)


def dump_algebra(sc: StructureConstants) -> dict:
    """Inverse of load_algebra (brackets listed for i < j only)."""
    brackets = []
    pairs = sorted({(i, j) for (i, j, _k) in sc.entries if i < j})
    for i, j in pairs:
        coeffs = {str(k): str(c) for k, c in sorted(sc.bracket_coeffs(i, j).items())}
        brackets.append({"i": i, "j": j, "coeffs": coeffs})
    return {"dim": sc.dim, "brackets": brackets}
