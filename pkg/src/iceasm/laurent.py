"""Sparse multivariate Laurent polynomials with exact coefficients.

A polynomial is a map from integer exponent vectors (entries may be
negative) to nonzero CycloRational coefficients:

    LaurentPoly.terms : dict[tuple[int, ...], CycloRational]

The arity is fixed at creation.  By library-wide convention slot 0 is
the global spectral parameter `a`; the remaining slots are line
parameters (x1, ..., xk, x, y).  Purely rational polynomials are the
special case where every coefficient has zero w-part.

Zero coefficients are never stored, and all textual dumps order terms
lexicographically by exponent vector, so output is byte-stable.
All values are immutable after construction; every operation returns a
new polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .cyclo import CycloRational, OMEGA, ONE, omega_power

Exponents = Tuple[int, ...]
Coeff = CycloRational


def _coeff(value: CycloRational | Fraction | int) -> CycloRational:
    return CycloRational.coerce(value)


def default_names(arity: int) -> Tuple[str, ...]:
    return ("a",) + tuple(f"x{i}" for i in range(1, arity))


class LaurentPoly:
    """Immutable sparse Laurent polynomial of fixed arity."""

    __slots__ = ("arity", "terms", "names")

    def __init__(
        self,
        arity: int,
        terms: Mapping[Exponents, CycloRational | Fraction | int] | None = None,
        names: Sequence[str] | None = None,
    ) -> None:
        self.arity = arity
        clean: Dict[Exponents, Coeff] = {}
        if terms:
            for exps, c in terms.items():
                cc = _coeff(c)
                if not cc:
                    continue
                if len(exps) != arity:
                    raise ValueError(f"exponent vector {exps} has wrong arity (want {arity})")
                clean[tuple(exps)] = cc
        self.terms = clean
        self.names = tuple(names) if names is not None else default_names(arity)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, arity: int, names: Sequence[str] | None = None) -> LaurentPoly:
        return cls(arity, {}, names)

    @classmethod
    def const(cls, arity: int, c: CycloRational | Fraction | int,
              names: Sequence[str] | None = None) -> LaurentPoly:
        return cls(arity, {(0,) * arity: _coeff(c)}, names)

    @classmethod
    def monomial(cls, arity: int, exps: Sequence[int],
                 c: CycloRational | Fraction | int = 1,
                 names: Sequence[str] | None = None) -> LaurentPoly:
        return cls(arity, {tuple(exps): _coeff(c)}, names)

    @classmethod
    def var(cls, arity: int, slot: int, power: int = 1,
            names: Sequence[str] | None = None) -> LaurentPoly:
        exps = [0] * arity
        exps[slot] = power
        return cls.monomial(arity, exps, 1, names)

    # -- predicates --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic ---------------------------------------------------------------

    def _check(self, other: LaurentPoly) -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            acc = out.get(exps)
            s = c if acc is None else acc + c
            if s:
                out[exps] = s
            elif acc is not None:
                del out[exps]
        return LaurentPoly(self.arity, out, self.names)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.arity, {e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | CycloRational | Fraction | int) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            c = _coeff(other)
            if not c:
                return LaurentPoly.zero(self.arity, self.names)
            return LaurentPoly(self.arity, {e: v * c for e, v in self.terms.items()}, self.names)
        self._check(other)
        out: Dict[Exponents, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(e)
                s = c1 * c2 if acc is None else acc + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.arity, out, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            return self.monomial_inverse() ** (-k)
        out = LaurentPoly.const(self.arity, 1, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monomial_inverse(self) -> LaurentPoly:
        """Inverse of a one-term polynomial (coefficient inverted exactly)."""
        if not self.is_monomial():
            raise ValueError("inverse exists only for monomials")
        ((exps, c),) = self.terms.items()
        return LaurentPoly(self.arity, {tuple(-e for e in exps): c.inverse()}, self.names)

    # -- structural queries ----------------------------------------------------------

    def exponent_range(self, slot: int) -> Tuple[int, int]:
        """(min, max) exponent of the given variable; requires nonzero poly."""
        if not self.terms:
            raise ValueError("zero polynomial has no exponent range")
        exps = [e[slot] for e in self.terms]
        return min(exps), max(exps)

    def coefficient_of(self, slot: int, power: int) -> LaurentPoly:
        """Sub-polynomial of terms whose slot-exponent equals `power`."""
        out = {e: c for e, c in self.terms.items() if e[slot] == power}
        return LaurentPoly(self.arity, out, self.names)

    def sorted_terms(self) -> Iterable[Tuple[Exponents, Coeff]]:
        return sorted(self.terms.items(), key=lambda t: t[0])

    # -- the operations used throughout the library ------------------------------------

    def parity_split(self, slot: int) -> Tuple[LaurentPoly, LaurentPoly]:
        """(even, odd) parts with respect to the exponent of one variable."""
        even: Dict[Exponents, Coeff] = {}
        odd: Dict[Exponents, Coeff] = {}
        for e, c in self.terms.items():
            (even if e[slot] % 2 == 0 else odd)[e] = c
        return (LaurentPoly(self.arity, even, self.names),
                LaurentPoly(self.arity, odd, self.names))

    def half_width(self, slot: int) -> Tuple[int, bool]:
        """(max exponent of slot, centered?) where centered means min == -max."""
        lo, hi = self.exponent_range(slot)
        return hi, lo == -hi

    def substitute(self, slot: int, replacement: LaurentPoly) -> LaurentPoly:
        """Replace one variable by an invertible monomial, exactly.

        The replacement must be a single term so that negative powers stay
        Laurent.  Exponents of `slot` in the result come only from the
        replacement monomial.
        """
        if not replacement.is_monomial():
            raise ValueError("substitution requires a monomial replacement")
        ((rexp, rc),) = replacement.terms.items()
        out: Dict[Exponents, Coeff] = {}
        for e, c in self.terms.items():
            k = e[slot]
            coeff = c * (rc ** k if k >= 0 else rc.inverse() ** (-k))
            new = list(a + k * b for a, b in zip(e, rexp))
            new[slot] = k * rexp[slot]
            key = tuple(new)
            acc = out.get(key)
            s = coeff if acc is None else acc + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly(self.arity, out, self.names)

    def swap_vars(self, i: int, j: int) -> LaurentPoly:
        out: Dict[Exponents, Coeff] = {}
        for e, c in self.terms.items():
            le = list(e)
            le[i], le[j] = le[j], le[i]
            out[tuple(le)] = c
        return LaurentPoly(self.arity, out, self.names)

    def embed(self, arity: int, slot_map: Sequence[int],
              names: Sequence[str] | None = None) -> LaurentPoly:
        """Reinterpret in a larger variable space: old slot i -> slot_map[i]."""
        out: Dict[Exponents, Coeff] = {}
        for e, c in self.terms.items():
            new = [0] * arity
            for i, k in enumerate(e):
                if k:
                    new[slot_map[i]] += k
            key = tuple(new)
            acc = out.get(key)
            s = c if acc is None else acc + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly(arity, out, names)

    def reduce_at_omega(self) -> LaurentPoly:
        """Specialize the global parameter slot 0 to w = exp(i*pi/3).

        Every power a**k is folded into the coefficient as w**k (negative k
        via 1/w = 1 - w).  The a-slot stays in the exponent tuples but is
        identically zero afterwards.
        """
        out: Dict[Exponents, Coeff] = {}
        for e, c in self.terms.items():
            coeff = c * omega_power(e[0])
            key = (0,) + e[1:]
            acc = out.get(key)
            s = coeff if acc is None else acc + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly(self.arity, out, self.names)

    def eval(self, assignment: Mapping[int, CycloRational | Fraction | int]) -> CycloRational:
        """Exact evaluation; every variable occurring must be assigned nonzero."""
        values: Dict[int, CycloRational] = {}
        inverses: Dict[int, CycloRational] = {}
        for slot, v in assignment.items():
            cv = _coeff(v)
            values[slot] = cv
        total = CycloRational(0)
        for e, c in self.terms.items():
            acc = c
            for slot, k in enumerate(e):
                if k == 0:
                    continue
                if slot not in values:
                    raise ValueError(f"unassigned variable slot {slot}")
                if not values[slot]:
                    raise ValueError(f"variable slot {slot} assigned zero")
                if k > 0:
                    acc = acc * values[slot] ** k
                else:
                    if slot not in inverses:
                        inverses[slot] = values[slot].inverse()
                    acc = acc * inverses[slot] ** (-k)
            total = total + acc
        return total

    # -- printing ------------------------------------------------------------------

    def dump(self) -> str:
        """Canonical ASCII form: terms in lex order, `coeff * a^e0 x1^e1 ...`."""
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = " ".join(
                f"{self.names[i]}^{k}" for i, k in enumerate(exps) if k != 0
            )
            cs = str(c)
            if "+" in cs[1:] or (cs.startswith("-") and "+" in cs) or "*" in cs:
                cs = f"({cs})"
            parts.append(f"{cs} * {factors}" if factors else cs)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<LaurentPoly {self.dump()}>"


def sigma(x: LaurentPoly | CycloRational) -> LaurentPoly | CycloRational:
    """The weight building block sigma(x) = x - 1/x.

    Defined for invertible monomials (single-term Laurent polynomials) and
    for nonzero field elements; anything else has no Laurent inverse.
    """
    if isinstance(x, CycloRational):
        if not x:
            raise ZeroDivisionError("sigma of zero field element")
        return x - x.inverse()
    if not x.is_monomial():
        raise ValueError("sigma needs a monomial (inverse must stay Laurent)")
    return x - x.monomial_inverse()


def poly_parity_split(p: LaurentPoly, slot: int) -> Tuple[LaurentPoly, LaurentPoly]:
    return p.parity_split(slot)


def poly_half_width(p: LaurentPoly, slot: int) -> Tuple[int, bool]:
    return p.half_width(slot)


def reduce_generic_a(p: LaurentPoly) -> LaurentPoly:
    return p.reduce_at_omega()


def poly_eval(p: LaurentPoly, assignment: Mapping[int, CycloRational | Fraction | int]) -> CycloRational:
    return p.eval(assignment)
