"""Exact multivariate Laurent polynomials over the rationals.

This is the arithmetic layer of the automorphism-constraint solver: constraint
equations are `Poly` objects in the matrix-entry unknowns, and solved matrix
entries are single-term `Mono` objects (rational coefficient times a product of
named parameters with integer exponents).  Negative exponents are permitted
only for variables that the caller has constrained to be nonzero; the classes
themselves do not enforce that.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

# A term key is a sorted tuple of (variable, exponent) pairs with exponent != 0.
TermKey = tuple[tuple[str, int], ...]


def _merge_powers(a: Mapping[str, int], b: Mapping[str, int], sign: int = 1) -> dict[str, int]:
    out = dict(a)
    for v, e in b.items():
        out[v] = out.get(v, 0) + sign * e
        if out[v] == 0:
            del out[v]
    return out


class Mono:
    """A single term: rational coefficient times a power product of parameters."""

    __slots__ = ("coeff", "powers")

    def __init__(self, coeff: Fraction | int, powers: Mapping[str, int] | None = None):
        self.coeff = Fraction(coeff)
        if self.coeff == 0:
            self.powers: TermKey = ()
        else:
            items = tuple(sorted((v, e) for v, e in (powers or {}).items() if e != 0))
            self.powers = items

    @classmethod
    def var(cls, name: str) -> "Mono":
        return cls(1, {name: 1})

    @classmethod
    def const(cls, value: Fraction | int) -> "Mono":
        return cls(value)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_constant(self) -> bool:
        return not self.powers

    def variables(self) -> set[str]:
        return {v for v, _ in self.powers}

    def degree_of(self, var: str) -> int:
        for v, e in self.powers:
            if v == var:
                return e
        return 0

    def __mul__(self, other: "Mono") -> "Mono":
        return Mono(self.coeff * other.coeff,
                    _merge_powers(dict(self.powers), dict(other.powers)))

    def __truediv__(self, other: "Mono") -> "Mono":
        if other.coeff == 0:
            raise ZeroDivisionError("division by zero monomial")
        if self.coeff == 0:
            return Mono(0)
        return Mono(self.coeff / other.coeff,
                    _merge_powers(dict(self.powers), dict(other.powers), sign=-1))

    def __neg__(self) -> "Mono":
        return Mono(-self.coeff, dict(self.powers))

    def scaled(self, factor: Fraction) -> "Mono":
        return Mono(self.coeff * Fraction(factor), dict(self.powers))

    def evaluate(self, values: Mapping[str, object]) -> object:
        """Evaluate with parameter values (Fraction, float or complex)."""
        acc: object = self.coeff
        for v, e in self.powers:
            x = values[v]
            if e >= 0:
                acc = acc * x ** e
            else:
                acc = acc / (x ** (-e))
        return acc

    def same_powers(self, other: "Mono") -> bool:
        return self.powers == other.powers

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Mono)
                and self.coeff == other.coeff and self.powers == other.powers)

    def __hash__(self) -> int:
        return hash((self.coeff, self.powers))

    def __repr__(self) -> str:
        return f"Mono({self!s})"

    def __str__(self) -> str:
        if self.is_constant:
            return str(self.coeff)
        parts = []
        for v, e in self.powers:
            parts.append(v if e == 1 else f"{v}^{e}")
        body = "*".join(parts)
        if self.coeff == 1:
            return body
        if self.coeff == -1:
            return f"-{body}"
        return f"{self.coeff}*{body}"


class Poly:
    """Sum of `Mono` terms with distinct power products."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[TermKey, Fraction] | None = None):
        self.terms: dict[TermKey, Fraction] = {}
        if terms:
            for k, c in terms.items():
                if c != 0:
                    self.terms[k] = Fraction(c)

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def const(cls, value: Fraction | int) -> "Poly":
        value = Fraction(value)
        return cls({(): value}) if value else cls()

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def from_mono(cls, m: Mono) -> "Poly":
        return cls({m.powers: m.coeff}) if not m.is_zero else cls()

    def monomials(self) -> list[Mono]:
        return [Mono(c, dict(k)) for k, c in sorted(self.terms.items())]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(k == () for k in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def as_mono(self) -> Mono | None:
        """Return the single term if this is a monomial (or zero), else None."""
        if not self.terms:
            return Mono(0)
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            return Mono(c, dict(k))
        return None

    def variables(self) -> set[str]:
        out: set[str] = set()
        for k in self.terms:
            out.update(v for v, _ in k)
        return out

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
            if out[k] == 0:
                del out[k]
        p = Poly()
        p.terms = out
        return p

    def __neg__(self) -> "Poly":
        p = Poly()
        p.terms = {k: -c for k, c in self.terms.items()}
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[TermKey, Fraction] = {}
        for k1, c1 in self.terms.items():
            d1 = dict(k1)
            for k2, c2 in other.terms.items():
                powers = _merge_powers(d1, dict(k2))
                key = tuple(sorted(powers.items()))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
                if out[key] == 0:
                    del out[key]
        p = Poly()
        p.terms = out
        return p

    def mul_mono(self, m: Mono) -> "Poly":
        return self * Poly.from_mono(m)

    def degree_in(self, var: str) -> int:
        deg = 0
        for k in self.terms:
            for v, e in k:
                if v == var:
                    deg = max(deg, e)
        return deg

    def substitute(self, var: str, value: Mono) -> "Poly":
        """Replace `var` by a monomial.  Exponents of `var` must be >= 0."""
        out = Poly()
        for k, c in self.terms.items():
            rest = {v: e for v, e in k if v != var}
            e = dict(k).get(var, 0)
            if e < 0:
                raise ValueError(f"cannot substitute into negative power of {var}")
            term = Mono(c, rest)
            if e:
                if value.is_zero:
                    continue
                factor = Mono(value.coeff ** e,
                              {v: p * e for v, p in value.powers})
                term = term * factor
            out = out + Poly.from_mono(term)
        return out

    def evaluate(self, values: Mapping[str, object]) -> object:
        acc: object = Fraction(0)
        for k, c in self.terms.items():
            acc = acc + Mono(c, dict(k)).evaluate(values)
        return acc

    def linear_in(self, var: str) -> tuple["Poly", "Poly"] | None:
        """Decompose as A*var + C when the degree in `var` is exactly 1."""
        if self.degree_in(var) != 1:
            return None
        a = Poly()
        c = Poly()
        for k, coeff in self.terms.items():
            d = dict(k)
            e = d.pop(var, 0)
            if e == 0:
                c = c + Poly({k: coeff})
            elif e == 1:
                a = a + Poly({tuple(sorted(d.items())): coeff})
            else:
                return None
        return a, c

    def strip_nonzero_factors(self, nonzero: Iterable[str]) -> "Poly":
        """Divide out common var^k factors for variables known to be nonzero."""
        if self.is_zero:
            return self
        nz = set(nonzero)
        common: dict[str, int] = {}
        first = True
        for k in self.terms:
            d = dict(k)
            if first:
                common = {v: e for v, e in d.items() if v in nz}
                first = False
            else:
                for v in list(common):
                    common[v] = min(common[v], d.get(v, 0))
                    if common[v] == 0:
                        del common[v]
                # variables absent from this term cap the minimum at <= 0
                for v, e in d.items():
                    if v in nz and v not in common and e < 0:
                        common[v] = e
        common = {v: e for v, e in common.items() if e != 0}
        if not common:
            return self
        out = Poly()
        for k, c in self.terms.items():
            powers = _merge_powers(dict(k), common, sign=-1)
            out.terms[tuple(sorted(powers.items()))] = c
        return out

    def canonical_key(self) -> tuple:
        """Key identifying the polynomial up to a nonzero rational factor."""
        if self.is_zero:
            return ()
        items = sorted(self.terms.items())
        lead = items[0][1]
        return tuple((k, c / lead) for k, c in items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self!s})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [str(m) for m in self.monomials()]
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s


def det_poly(entries: list[list[Poly]]) -> Poly:
    """Determinant of a matrix of polynomials, by expansion along rows.

    Intended for small (n <= 8) sparse matrices; zero entries short-circuit.
    """
    n = len(entries)

    def minor_det(rows: tuple[int, ...], cols: tuple[int, ...]) -> Poly:
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        total = Poly.zero()
        r = rows[0]
        for idx, c in enumerate(cols):
            e = entries[r][c]
            if e.is_zero:
                continue
            sub = minor_det(rows[1:], cols[:idx] + cols[idx + 1:])
            if sub.is_zero:
                continue
            term = e * sub
            total = total + (term if idx % 2 == 0 else -term)
        return total

    if n == 0:
        return Poly.const(1)
    return minor_det(tuple(range(n)), tuple(range(n)))
