"""Sparse multivariate polynomials in the power basis, exact coefficients.

The zero polynomial has degree 0 by convention; for every other polynomial
the stored degree is tight (recomputed from the nonzero terms, never trusted
from input).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import DimensionMismatch
from .rationals import Rational, format_rational, parse_rational

Exponents = Tuple[int, ...]
TermMap = Dict[Exponents, Fraction]


def _term_sort_key(item: Tuple[Exponents, Fraction]):
    exps, _ = item
    return (sum(exps), exps)


class PowerPoly:
    """Polynomial sum of ``coeff * x^exponents`` terms over n variables."""

    __slots__ = ("dimension", "_terms", "degree")

    def __init__(self, dimension: int, terms: Mapping[Sequence[int], Rational]):
        if dimension < 1:
            raise ValueError(f"dimension must be at least 1, got {dimension}")
        cleaned: TermMap = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != dimension:
                raise DimensionMismatch(
                    f"exponent tuple {exps} does not have {dimension} entries"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            value = parse_rational(coeff) if not isinstance(coeff, Fraction) else coeff
            if value:
                cleaned[exps] = cleaned.get(exps, Fraction(0)) + value
        cleaned = {e: c for e, c in cleaned.items() if c}
        self.dimension = dimension
        self._terms = tuple(sorted(cleaned.items(), key=_term_sort_key))
        self.degree = max((sum(e) for e in cleaned), default=0)

    @classmethod
    def zero(cls, dimension: int) -> "PowerPoly":
        return cls(dimension, {})

    @classmethod
    def constant(cls, dimension: int, value: Rational) -> "PowerPoly":
        return cls(dimension, {(0,) * dimension: parse_rational(value)})

    @classmethod
    def univariate(cls, coeffs: Sequence[Rational]) -> "PowerPoly":
        """Build from ascending coefficients [a0, a1, ...] of a0 + a1*x + ..."""
        return cls(1, {(i,): parse_rational(c) for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> TermMap:
        return dict(self._terms)

    def iter_terms(self) -> Iterable[Tuple[Exponents, Fraction]]:
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def eval(self, point: Sequence[Rational]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.dimension:
            raise DimensionMismatch(
                f"point has {len(point)} coordinates, polynomial has {self.dimension}"
            )
        coords = [parse_rational(c) for c in point]
        total = Fraction(0)
        for exps, coeff in self._terms:
            value = coeff
            for x, e in zip(coords, exps):
                if e:
                    value *= x ** e
            total += value
        return total

    __call__ = eval

    def negate(self) -> "PowerPoly":
        return PowerPoly(self.dimension, {e: -c for e, c in self._terms})

    def substitute_affine(
        self,
        origin: Sequence[Rational],
        directions: Sequence[Sequence[Rational]],
    ) -> "PowerPoly":
        """Compose with the affine map t -> origin + sum_j t_j * directions[j].

        Returns the polynomial in the new variables t, with exact
        coefficients.  The total degree never increases.
        """
        if len(origin) != self.dimension:
            raise DimensionMismatch("origin has wrong dimension")
        m = len(directions)
        origin = [parse_rational(c) for c in origin]
        zero_exp = (0,) * m
        forms: list[TermMap] = []
        for i in range(self.dimension):
            form: TermMap = {}
            if origin[i]:
                form[zero_exp] = origin[i]
            for j, direction in enumerate(directions):
                c = parse_rational(direction[i])
                if c:
                    exp = tuple(1 if jj == j else 0 for jj in range(m))
                    form[exp] = form.get(exp, Fraction(0)) + c
            forms.append(form)
        out: TermMap = {}
        for exps, coeff in self._terms:
            prod: TermMap = {zero_exp: coeff}
            for i, e in enumerate(exps):
                for _ in range(e):
                    prod = _mul_terms(prod, forms[i], m)
            for exp, c in prod.items():
                out[exp] = out.get(exp, Fraction(0)) + c
        return PowerPoly(m, out)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "terms": [
                {"exponents": list(exps), "coeff": format_rational(coeff)}
                for exps, coeff in self._terms
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PowerPoly":
        dimension = int(data["dimension"])
        terms: TermMap = {}
        for term in data.get("terms", []):
            exps = tuple(int(e) for e in term["exponents"])
            terms[exps] = terms.get(exps, Fraction(0)) + parse_rational(term["coeff"])
        return cls(dimension, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerPoly):
            return NotImplemented
        return self.dimension == other.dimension and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dimension, self._terms))

    def __repr__(self) -> str:
        if not self._terms:
            return f"PowerPoly.zero({self.dimension})"
        parts = []
        for exps, coeff in self._terms:
            mono = "*".join(
                f"x{i}^{e}" if e > 1 else f"x{i}"
                for i, e in enumerate(exps)
                if e
            )
            text = format_rational(coeff)
            parts.append(f"{text}*{mono}" if mono else text)
        return " + ".join(parts)


def _mul_terms(a: TermMap, b: TermMap, m: int) -> TermMap:
    out: TermMap = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = tuple(x + y for x, y in zip(ea, eb))
            out[exp] = out.get(exp, Fraction(0)) + ca * cb
    return out
