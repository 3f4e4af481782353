"""Exact division by a single Laurent polynomial and coset normal forms.

Laurent inputs are shifted by a monomial (a unit of R_d) into ordinary
polynomials, divided with respect to graded lexicographic order over Q,
and shifted back. Integrality of the quotient is checked afterwards, which
is what separates divisibility in R_d from divisibility over Q.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .lattice import IntLaurentPoly, Point, format_poly

INTEGER = "integer"
RATIONAL_ONLY = "rational-only"
NOT_DIVISIBLE = "not-divisible"


class ZeroDivisor(ZeroDivisionError):
    pass


def grlex_key(e: Sequence[int]):
    """Sort key for graded lex order with x_1 > x_2 > ... > x_d."""
    return (sum(e), tuple(e))


class RatLaurentPoly:
    """Laurent polynomial with rational coefficients (division output)."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        self.terms: Dict[Point, Fraction] = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(e)] = c

    @classmethod
    def from_int(cls, p: IntLaurentPoly) -> "RatLaurentPoly":
        return cls(p.dim, p.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def to_int(self) -> IntLaurentPoly:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return IntLaurentPoly(self.dim, {e: int(c) for e, c in self.terms.items()})

    def translate(self, n: Sequence[int]) -> "RatLaurentPoly":
        return RatLaurentPoly(self.dim, {tuple(a + b for a, b in zip(e, n)): c for e, c in self.terms.items()})

    def __add__(self, other: "RatLaurentPoly") -> "RatLaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return RatLaurentPoly(self.dim, out)

    def __neg__(self):
        return RatLaurentPoly(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "RatLaurentPoly":
        out: Dict[Point, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(e1, e2))
                out[k] = out.get(k, 0) + c1 * c2
        return RatLaurentPoly(self.dim, out)

    def evaluate(self, point):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v = v * (x ** k)
            total = total + v
        return total

    def __eq__(self, other):
        if isinstance(other, IntLaurentPoly):
            other = RatLaurentPoly.from_int(other)
        if not isinstance(other, RatLaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __repr__(self):
        return f"RatLaurentPoly({self})"

    def __str__(self):
        if self.is_integral():
            return format_poly(self.to_int())
        parts = [f"({c})*x^{list(e)}" for e, c in sorted(self.terms.items())]
        return " + ".join(parts) if parts else "0"

    def to_json_obj(self) -> dict:
        return {"d": self.dim,
                "terms": [{"exp": list(e), "coef": str(c)} for e, c in sorted(self.terms.items())]}


# ---------------------------------------------------------------------------
# normalization and the division kernel


def min_shift(p) -> Point:
    """Exponent n with x^n * p ordinary and touching every coordinate hyperplane."""
    if p.is_zero():
        raise ZeroDivisor("zero polynomial cannot be normalized")
    mins = [min(e[i] for e in p.terms) for i in range(p.dim)]
    return tuple(-m for m in mins)


def normalize(p: IntLaurentPoly) -> Tuple[IntLaurentPoly, Point]:
    """Return (x^shift * p, shift) with the minimal monomial shift.

    The returned polynomial has nonnegative exponents and meets every
    coordinate hyperplane, so no variable divides it.
    """
    shift = min_shift(p)
    return p.translate(shift), shift


def _reduce(p_terms: Dict[Point, object], f_terms: Dict[Point, int], modulus: int | None = None):
    """Divide ordinary ``p`` by ordinary ``f``; return (quotient, remainder) dicts.

    Coefficients are exact: ints while the leading coefficient of f is +-1,
    Fractions otherwise, or residues when ``modulus`` is a prime.
    """
    lt = max(f_terms, key=grlex_key)
    lc = f_terms[lt]
    rest = [(e, c) for e, c in f_terms.items() if e != lt]
    if modulus is not None:
        inv = pow(lc % modulus, -1, modulus)

        def div_lc(c):
            return (c * inv) % modulus
        work = {e: c % modulus for e, c in p_terms.items() if c % modulus}
    elif abs(lc) == 1:
        def div_lc(c):
            return c * lc
        work = {e: c for e, c in p_terms.items() if c}
    else:
        lcf = Fraction(lc)

        def div_lc(c):
            q = Fraction(c) / lcf
            return int(q) if q.denominator == 1 else q
        work = {e: c for e, c in p_terms.items() if c}

    heap = [(-sum(e), tuple(-x for x in e)) for e in work]
    heapq.heapify(heap)
    quotient: Dict[Point, object] = {}
    remainder: Dict[Point, object] = {}
    while heap:
        _, neg = heapq.heappop(heap)
        e = tuple(-x for x in neg)
        c = work.pop(e, None)
        if c is None:
            continue
        if all(a >= b for a, b in zip(e, lt)):
            m = tuple(a - b for a, b in zip(e, lt))
            qc = div_lc(c)
            quotient[m] = qc
            for fe, fc in rest:
                k = tuple(a + b for a, b in zip(m, fe))
                old = work.get(k)
                v = (0 if old is None else old) - qc * fc
                if modulus is not None:
                    v %= modulus
                if v:
                    work[k] = v
                    if old is None:
                        heapq.heappush(heap, (-sum(k), tuple(-x for x in k)))
                elif old is not None:
                    del work[k]
        else:
            remainder[e] = c
    return quotient, remainder


@dataclass(frozen=True)
class DivisionResult:
    quotient: RatLaurentPoly
    remainder: RatLaurentPoly


def divide(f: IntLaurentPoly, p: IntLaurentPoly) -> DivisionResult:
    """Single-divisor division in Q[x^+-1]: p = quotient*f + remainder.

    With f_n = x^a f and p_n = x^b p the ordinary division p_n = q f_n + r
    gives quotient x^(a-b) q and remainder x^(-b) r.
    """
    if f.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if f.dim != p.dim:
        raise ValueError("dimension mismatch")
    if p.is_zero():
        z = RatLaurentPoly(p.dim)
        return DivisionResult(z, z)
    fn, a = normalize(f)
    pn, b = normalize(p)
    q, r = _reduce(pn.terms, fn.terms)
    back = tuple(x - y for x, y in zip(a, b))
    nb = tuple(-y for y in b)
    quotient = RatLaurentPoly(p.dim, {tuple(x + y for x, y in zip(e, back)): c for e, c in q.items()})
    remainder = RatLaurentPoly(p.dim, {tuple(x + y for x, y in zip(e, nb)): c for e, c in r.items()})
    return DivisionResult(quotient, remainder)


def _specialize(p: IntLaurentPoly, keep: int, values: Sequence[int]) -> IntLaurentPoly:
    """Substitute integer values for every variable except ``keep``.

    Negative exponents are cleared by a common power of the values' product
    so the result stays integral; this multiplies by a nonzero constant.
    """
    others = [i for i in range(p.dim) if i != keep]
    lows = {i: min(0, min(e[i] for e in p.terms)) for i in others}
    out: Dict[Point, int] = {}
    for e, c in p.terms.items():
        v = c
        for i, x in zip(others, values):
            v *= x ** (e[i] - lows[i])
        k = (e[keep],)
        out[k] = out.get(k, 0) + v
    return IntLaurentPoly(1, out)


def _refuted_by_specialization(f: IntLaurentPoly, p: IntLaurentPoly, trials: int = 3) -> bool:
    """Cheap exact certificate that f does not divide p over Q.

    If p = q f then every specialization of the other variables to nonzero
    integers keeps the relation; a nonzero univariate remainder refutes it.
    """
    rng = random.Random(len(f) * 1000003 + len(p))
    for t in range(trials):
        keep = t % f.dim
        values = [rng.choice([-3, -2, 2, 3, 5, 7]) for _ in range(f.dim - 1)]
        fs = _specialize(f, keep, values)
        if fs.is_zero():
            continue
        ps = _specialize(p, keep, values)
        if ps.is_zero():
            continue
        _, r = _reduce(normalize(ps)[0].terms, normalize(fs)[0].terms)
        if r:
            return True
    return False


@dataclass(frozen=True)
class DivisibilityCheck:
    status: str
    quotient: Optional[RatLaurentPoly]

    @property
    def over_z(self) -> bool:
        return self.status == INTEGER

    @property
    def over_q(self) -> bool:
        return self.status in (INTEGER, RATIONAL_ONLY)


def check_divisibility(f: IntLaurentPoly, p: IntLaurentPoly) -> DivisibilityCheck:
    """Classify p as divisible by f in R_d, only over Q, or not at all.

    The quotient in Q[x^+-1] is unique when it exists, so an integral
    quotient is exactly divisibility in R_d.
    """
    if f.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if f.dim != p.dim:
        raise ValueError("dimension mismatch")
    if p.is_zero():
        return DivisibilityCheck(INTEGER, RatLaurentPoly(p.dim))
    if f.dim > 1 and len(f) > 1 and _refuted_by_specialization(f, p):
        return DivisibilityCheck(NOT_DIVISIBLE, None)
    res = divide(f, p)
    if not res.remainder.is_zero():
        return DivisibilityCheck(NOT_DIVISIBLE, None)
    if res.quotient.is_integral():
        return DivisibilityCheck(INTEGER, res.quotient)
    return DivisibilityCheck(RATIONAL_ONLY, res.quotient)


def divides(f: IntLaurentPoly, p: IntLaurentPoly) -> Optional[IntLaurentPoly]:
    """Quotient k with p = k*f in R_d, or None."""
    chk = check_divisibility(f, p)
    return chk.quotient.to_int() if chk.status == INTEGER else None


def divide_mod(f: IntLaurentPoly, p: IntLaurentPoly, prime: int) -> Tuple[IntLaurentPoly, IntLaurentPoly]:
    """Division in F_p[x^+-1]; returns (quotient, remainder) with residues in [0, p)."""
    fr = f.reduce_mod(prime)
    pr = p.reduce_mod(prime)
    if fr.is_zero():
        raise ZeroDivisor("divisor vanishes modulo the prime")
    if pr.is_zero():
        z = IntLaurentPoly.zero(p.dim)
        return z, z
    fn, a = normalize(fr)
    pn, b = normalize(pr)
    q, r = _reduce(pn.terms, fn.terms, modulus=prime)
    back = tuple(x - y for x, y in zip(a, b))
    nb = tuple(-y for y in b)
    quotient = IntLaurentPoly(p.dim, {tuple(x + y for x, y in zip(e, back)): c for e, c in q.items()})
    remainder = IntLaurentPoly(p.dim, {tuple(x + y for x, y in zip(e, nb)): c for e, c in r.items()})
    return quotient, remainder


# ---------------------------------------------------------------------------
# coset normal forms


@dataclass(frozen=True)
class CosetRep:
    """Label of the coset p + <f>.

    ``rep`` is the remainder of x^shift * p modulo the normalized f, in
    ordinary coordinates. Two labels with the same shift are equal iff the
    cosets agree over Q. In one variable the shift is always 0, because x is
    invertible modulo the normalized f.
    """

    rep: RatLaurentPoly
    modulus: IntLaurentPoly
    shift: Point

    @property
    def integral(self) -> bool:
        return self.rep.is_integral()

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def at_shift(self, shift: Sequence[int]) -> "CosetRep":
        shift = tuple(shift)
        if shift == self.shift:
            return self
        delta = tuple(a - b for a, b in zip(shift, self.shift))
        if any(v < 0 for v in delta):
            raise ValueError("can only move a label to a componentwise larger shift")
        fn, _ = normalize(self.modulus)
        _, r = _reduce(self.rep.translate(delta).terms, fn.terms)
        return CosetRep(RatLaurentPoly(self.rep.dim, r), self.modulus, shift)

    def key(self):
        return (self.shift, frozenset(self.rep.terms.items()))

    def to_json_obj(self) -> dict:
        return {"rep": self.rep.to_json_obj(), "shift": list(self.shift), "integral": self.integral}


def _needed_shift(p: IntLaurentPoly) -> Point:
    if p.is_zero():
        return (0,) * p.dim
    return tuple(max(0, v) for v in min_shift(p))


def _x_inverse_power(fn: IntLaurentPoly, k: int) -> Dict[Point, object]:
    """x^(-k) modulo a normalized univariate f with f(0) != 0, as a remainder dict."""
    f0 = Fraction(fn.coeff((0,)))
    # f = f0 + x*g  =>  x * (-g/f0) = 1 mod f
    inv = {(e[0] - 1,): -Fraction(c) / f0 for e, c in fn.terms.items() if e[0] > 0}
    result: Dict[Point, object] = {(0,): Fraction(1)}
    for _ in range(k):
        prod: Dict[Point, object] = {}
        for e1, c1 in result.items():
            for e2, c2 in inv.items():
                key = (e1[0] + e2[0],)
                prod[key] = prod.get(key, 0) + c1 * c2
        _, result = _reduce(prod, fn.terms)
    return result


def normal_form(p: IntLaurentPoly, f: IntLaurentPoly, shift: Sequence[int] | None = None) -> CosetRep:
    """Coset label of p modulo f (see ``CosetRep``)."""
    if f.is_zero():
        raise ZeroDivisor("zero modulus")
    if p.dim != f.dim:
        raise ValueError("dimension mismatch")
    fn, _ = normalize(f)
    need = _needed_shift(p)
    if f.dim == 1:
        k = need[0]
        _, r = _reduce(p.translate(need).terms, fn.terms)
        if k and r and len(fn) > 1:
            inv = _x_inverse_power(fn, k)
            prod: Dict[Point, object] = {}
            for e1, c1 in r.items():
                for e2, c2 in inv.items():
                    key = (e1[0] + e2[0],)
                    prod[key] = prod.get(key, 0) + c1 * c2
            _, r = _reduce(prod, fn.terms)
        return CosetRep(RatLaurentPoly(1, r), f, (0,))
    if shift is None:
        shift = need
    shift = tuple(shift)
    if any(s < n for s, n in zip(shift, need)):
        raise ValueError(f"shift {shift} does not clear the negative exponents of p")
    _, r = _reduce(p.translate(shift).terms, fn.terms)
    return CosetRep(RatLaurentPoly(p.dim, r), f, shift)


def common_shift(polys) -> Point:
    polys = list(polys)
    dim = polys[0].dim
    out = [0] * dim
    for p in polys:
        for i, v in enumerate(_needed_shift(p)):
            out[i] = max(out[i], v)
    return tuple(out)


def normal_forms(polys, f: IntLaurentPoly):
    """Labels for a batch of polynomials at one shared shift, so keys compare."""
    polys = list(polys)
    if not polys:
        return []
    s = common_shift(polys)
    return [normal_form(p, f, s) for p in polys]


def same_coset(a: CosetRep, b: CosetRep) -> bool:
    """Equality of cosets over Q, aligning shifts first."""
    s = tuple(max(x, y) for x, y in zip(a.shift, b.shift))
    return a.at_shift(s).rep == b.at_shift(s).rep
