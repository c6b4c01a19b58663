"""Sparse multivariate polynomials over exact rationals.

An MPoly is an immutable polynomial in variables t1..tn with Fraction
coefficients, stored as a map from exponent tuples to nonzero coefficients:

    t1*t2 + t2^2/2   (nvars=2)  ->  {(1, 1): Fraction(1), (0, 2): Fraction(1, 2)}

Exponent tuples have one entry per variable (leftmost entry for t1).  The
canonical term order is ascending lexicographic on exponent tuples with the
leftmost entry most significant; all iteration and serialization uses it, so
equal polynomials always print and serialize identically.

An MPoly doubles as a constant-coefficient differential operator: apply_diff
substitutes d/dt_i for t_i in the operator and applies it term by term.

Variables are 1-indexed in the public API (variable(n, 1) is t1), matching
the usual t_1..t_n notation; exponent tuples are positional.

All values are immutable after construction and every operation is a pure
function, so instances can be shared freely across threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Exponent = tuple[int, ...]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class MPoly:
    """Sparse polynomial over Fraction coefficients; also a differential operator."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length for nvars={nvars}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = _as_fraction(coeff)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
            clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "MPoly":
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MPoly":
        """The variable t_index (1-indexed)."""
        if not 1 <= index <= nvars:
            raise ValueError(f"variable index {index} out of range 1..{nvars}")
        exp = [0] * nvars
        exp[index - 1] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Iterable[int], coeff=1) -> "MPoly":
        exp = tuple(int(e) for e in exp)
        return cls(len(exp), {exp: _as_fraction(coeff)})

    @classmethod
    def linear_form(cls, coeffs: Iterable[object]) -> "MPoly":
        """The linear form sum_i coeffs[i] * t_{i+1}."""
        coeffs = list(coeffs)
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = _as_fraction(c)
            if c:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = c
        return cls(n, terms)

    # ------------------------------------------------------------------
    # inspection

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in canonical order (ascending lexicographic exponents)."""
        for exp in sorted(self._terms):
            yield exp, self._terms[exp]

    def support(self) -> frozenset[Exponent]:
        """The set of exponents with nonzero coefficient."""
        return frozenset(self._terms)

    def coeff(self, exp: Iterable[int]) -> Fraction:
        """Raw coefficient of t^exp (zero if the term is absent)."""
        return self._terms.get(tuple(int(e) for e in exp), Fraction(0))

    def num_terms(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree 0 by convention."""
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self._terms}
        return len(degrees) <= 1

    def homogeneous_component(self, d: int) -> "MPoly":
        return MPoly(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    # ------------------------------------------------------------------
    # arithmetic

    def _check_compatible(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "MPoly") -> "MPoly":
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return MPoly(self.nvars, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        if not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check_compatible(other)
            out: dict[Exponent, Fraction] = {}
            for ea, ca in self._terms.items():
                for eb, cb in other._terms.items():
                    exp = tuple(x + y for x, y in zip(ea, eb))
                    out[exp] = out.get(exp, Fraction(0)) + ca * cb
            return MPoly(self.nvars, out)
        c = _as_fraction(other)
        return MPoly(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __rmul__(self, other) -> "MPoly":
        return self.__mul__(other)

    # ------------------------------------------------------------------
    # evaluation and differentiation

    def eval(self, point: Iterable[object]) -> Fraction:
        """Exact evaluation at a rational point."""
        pt = [_as_fraction(x) for x in point]
        if len(pt) != self.nvars:
            raise ValueError(f"point length {len(pt)} != nvars {self.nvars}")
        total = Fraction(0)
        for exp, c in self._terms.items():
            val = c
            for x, e in zip(pt, exp):
                if e:
                    val *= x ** e
            total += val
        return total

    def apply_diff(self, target: "MPoly") -> "MPoly":
        """Apply self as a differential operator to target.

        Each variable t_i of the operator acts as d/dt_i; a term c * t^a
        applied to d * t^b yields c*d * (falling factorials) * t^(b-a), or 0
        when any b_i < a_i.  Linear in both arguments, and composition of
        operators corresponds to polynomial multiplication.
        """
        self._check_compatible(target)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in target._terms.items():
                if any(b < a for a, b in zip(ea, eb)):
                    continue
                factor = 1
                for a, b in zip(ea, eb):
                    if a:
                        # falling factorial b * (b-1) * ... * (b-a+1)
                        for k in range(b, b - a, -1):
                            factor *= k
                exp = tuple(b - a for a, b in zip(ea, eb))
                out[exp] = out.get(exp, Fraction(0)) + ca * cb * factor
        return MPoly(self.nvars, out)

    # ------------------------------------------------------------------
    # serialization

    def to_json_dict(self) -> dict:
        """JSON form: terms in canonical order, coefficients as decimal strings."""
        return {
            "nvars": self.nvars,
            "terms": [
                {"exp": list(exp), "num": str(c.numerator), "den": str(c.denominator)}
                for exp, c in self.items()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MPoly":
        terms = {}
        for t in data["terms"]:
            terms[tuple(t["exp"])] = Fraction(int(t["num"]), int(t["den"]))
        return cls(int(data["nvars"]), terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items():
            factors = []
            if c != 1 or not any(exp):
                factors.append(str(c))
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(f"t{i + 1}")
                elif e > 1:
                    factors.append(f"t{i + 1}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)


def normalized_monomial(exp: Iterable[int]) -> MPoly:
    """The monomial t^exp divided by the product of the factorials of exp."""
    exp = tuple(int(e) for e in exp)
    den = 1
    for e in exp:
        den *= math.factorial(e)
    return MPoly(len(exp), {exp: Fraction(1, den)})


def coeff_vector(p: MPoly, monomial_order: list[Exponent]) -> list[Fraction]:
    """Coefficients of p with respect to an explicit monomial list."""
    return [p.coeff(e) for e in monomial_order]


def from_coeff_vector(nvars: int, vec, monomial_order: list[Exponent]) -> MPoly:
    return MPoly(nvars, {e: c for e, c in zip(monomial_order, vec) if c})


def monomials_of_degree(nvars: int, degree: int) -> list[Exponent]:
    """All exponent tuples of the given total degree, ascending lexicographic."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out: list[Exponent] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    out.sort()
    return out
