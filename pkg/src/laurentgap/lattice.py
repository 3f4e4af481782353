"""Sparse integer Laurent polynomials and truncated l1 arrays on Z^d.

An ``IntLaurentPoly`` is a finitely supported map Z^d -> Z; a
``RealSummableArray`` is a dense real box of coefficients together with a
certified upper bound on the l1 mass that was discarded outside the box.
Both multiply by convolution, so the integer ring embeds in the real one.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np
from scipy import signal

Point = Tuple[int, ...]

ROUNDING_TOL = 1e-6
_FFT_MIN_WORK = 4096
_UNIT_ROUNDOFF = 2.0 ** -53


class DimensionMismatch(ValueError):
    pass


class AmbiguousRounding(ValueError):
    pass


def sup_norm(n: Sequence[int]) -> int:
    return max((abs(c) for c in n), default=0)


def _add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def _neg(a: Point) -> Point:
    return tuple(-x for x in a)


class IntLaurentPoly:
    """Element of R_d: integer Laurent polynomial in d variables.

    Coefficients are Python ints, so nothing overflows. Instances are
    treated as immutable; every operation returns a new polynomial.
    """

    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Sequence[int], int] | None = None):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = dim
        clean: Dict[Point, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim:
                raise DimensionMismatch(f"exponent {exp} does not have length {dim}")
            c = int(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, dim: int) -> "IntLaurentPoly":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, c: int) -> "IntLaurentPoly":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: int = 1) -> "IntLaurentPoly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], start: int = 0) -> "IntLaurentPoly":
        """Univariate polynomial from a coefficient list, lowest degree first."""
        return cls(1, {(start + i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def _raw(cls, dim: int, terms: Dict[Point, int]) -> "IntLaurentPoly":
        # caller guarantees: tuple keys of length dim, no zero values
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        obj._hash = None
        return obj

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> "SupportSet":
        return SupportSet(self.dim, frozenset(self.terms))

    def norm_inf(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def norm_1(self) -> int:
        return sum(abs(c) for c in self.terms.values())

    def coeff(self, exp: Sequence[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    def __len__(self) -> int:
        return len(self.terms)

    def bounding_box(self) -> Tuple[Point, Point]:
        if not self.terms:
            raise ValueError("zero polynomial has no bounding box")
        pts = np.array(list(self.terms), dtype=np.int64)
        return tuple(int(v) for v in pts.min(axis=0)), tuple(int(v) for v in pts.max(axis=0))

    def is_unit(self) -> bool:
        """Units of R_d are exactly the signed monomials."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
        return g

    # arithmetic

    def _check(self, other: "IntLaurentPoly") -> None:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other):
        if isinstance(other, int):
            other = IntLaurentPoly.constant(self.dim, other)
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return IntLaurentPoly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return IntLaurentPoly._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntLaurentPoly.constant(self.dim, other)
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            other = int(other)
            if other == 0:
                return IntLaurentPoly.zero(self.dim)
            return IntLaurentPoly._raw(self.dim, {e: c * other for e, c in self.terms.items()})
        if isinstance(other, IntLaurentPoly):
            return mul(self, other)
        if isinstance(other, RealSummableArray):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "IntLaurentPoly":
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative powers are only defined for units")
            (e, c), = self.terms.items()
            return IntLaurentPoly._raw(self.dim, {tuple(k * n for k in e): c ** -n})
        result = IntLaurentPoly.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntLaurentPoly.constant(self.dim, other)
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.terms.items())))
        return self._hash

    # structural maps

    def adjoint(self) -> "IntLaurentPoly":
        return adjoint(self)

    def translate(self, n: Sequence[int]) -> "IntLaurentPoly":
        n = tuple(n)
        if len(n) != self.dim:
            raise DimensionMismatch("shift has wrong length")
        return IntLaurentPoly._raw(self.dim, {_add(e, n): c for e, c in self.terms.items()})

    def restrict(self, s: "SupportSet | Iterable[Point]") -> "IntLaurentPoly":
        pts = s.points if isinstance(s, SupportSet) else set(map(tuple, s))
        return IntLaurentPoly._raw(self.dim, {e: c for e, c in self.terms.items() if e in pts})

    def reduce_mod(self, m: int) -> "IntLaurentPoly":
        """Coefficients reduced into [0, m), zeros dropped."""
        return IntLaurentPoly(self.dim, {e: c % m for e, c in self.terms.items()})

    def evaluate(self, point: Sequence) -> object:
        """Evaluate at a point of (nonzero) values; works for ints, Fractions, complex."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v = v * (x ** k)
            total = total + v
        return total

    def to_real(self) -> "RealSummableArray":
        return RealSummableArray.from_terms(self.dim, {e: float(c) for e, c in self.terms.items()})

    # display / serialization

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"IntLaurentPoly({format_poly(self)!r}, dim={self.dim})"

    def __str__(self):
        return format_poly(self)

    def to_json_obj(self) -> dict:
        return {
            "d": self.dim,
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "IntLaurentPoly":
        try:
            d = int(obj["d"])
            terms = {}
            for t in obj["terms"]:
                exp = tuple(int(v) for v in t["exp"])
                coef = t["coef"]
                if isinstance(coef, float):
                    raise ValueError("coefficients must be integers or decimal strings")
                terms[exp] = terms.get(exp, 0) + int(coef)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc
        return cls(d, terms)

    @classmethod
    def from_json(cls, text: str) -> "IntLaurentPoly":
        return cls.from_json_obj(json.loads(text))


VARNAMES = "xyzw"


def format_poly(p: IntLaurentPoly) -> str:
    if p.is_zero():
        return "0"
    names = VARNAMES if p.dim <= len(VARNAMES) else None
    chunks = []
    for e, c in sorted(p.terms.items(), key=lambda t: (sum(t[0]), t[0])):
        mono = []
        for i, k in enumerate(e):
            if k == 0:
                continue
            v = names[i] if names else f"x{i + 1}"
            mono.append(v if k == 1 else f"{v}^{k}")
        body = "*".join(mono)
        if not body:
            chunks.append(str(c))
        elif c == 1:
            chunks.append(body)
        elif c == -1:
            chunks.append("-" + body)
        else:
            chunks.append(f"{c}*{body}")
    out = " + ".join(chunks)
    return out.replace("+ -", "- ")


@dataclass(frozen=True)
class SupportSet:
    dim: int
    points: frozenset

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, n):
        return tuple(n) in self.points

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], dim: int | None = None) -> "SupportSet":
        pts = frozenset(tuple(int(v) for v in p) for p in points)
        if dim is None:
            if not pts:
                raise ValueError("cannot infer dimension of an empty set")
            dim = len(next(iter(pts)))
        return cls(dim, pts)


def support_geometry(p: IntLaurentPoly) -> Tuple[SupportSet, int, int]:
    return p.support(), p.norm_inf(), p.norm_1()


def dist(s: SupportSet | Iterable, t: SupportSet | Iterable) -> int:
    """Sup-norm distance between two finite nonempty subsets of Z^d."""
    a = np.array(sorted(s.points if isinstance(s, SupportSet) else s), dtype=np.int64)
    b = np.array(sorted(t.points if isinstance(t, SupportSet) else t), dtype=np.int64)
    if a.size == 0 or b.size == 0:
        raise ValueError("dist is undefined for an empty set")
    best = None
    # chunk to keep the pairwise table small
    step = max(1, 200000 // max(1, len(b)))
    for i in range(0, len(a), step):
        diff = np.abs(a[i:i + step, None, :] - b[None, :, :]).max(axis=2)
        m = int(diff.min())
        best = m if best is None else min(best, m)
    return best


def ball(dim: int, radius: int) -> SupportSet:
    rng = range(-radius, radius + 1)
    return SupportSet(dim, frozenset(itertools.product(rng, repeat=dim)))


def ball_neighborhood(s: SupportSet, radius: int) -> SupportSet:
    """B_R(S): all lattice points within sup-distance R of S."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    offsets = list(itertools.product(range(-radius, radius + 1), repeat=s.dim))
    pts = {_add(n, o) for n in s.points for o in offsets}
    return SupportSet(s.dim, frozenset(pts))


def adjoint(f: IntLaurentPoly) -> IntLaurentPoly:
    return IntLaurentPoly._raw(f.dim, {_neg(e): c for e, c in f.terms.items()})


def translate(p, n: Sequence[int]):
    return p.translate(n)


def restrict(v, s):
    return v.restrict(s)


# ---------------------------------------------------------------------------
# real summable arrays


class RealSummableArray:
    """Truncation of an element of l1(Z^d, R).

    ``data`` is a dense ndarray whose index 0 along each axis sits at lattice
    point ``offset``. ``tail_bound`` bounds the l1 mass of the true element
    that is not represented in ``data`` (truncation, aliasing, dropped terms).
    """

    __slots__ = ("data", "offset", "tail_bound")

    def __init__(self, data: np.ndarray, offset: Sequence[int], tail_bound: float = 0.0):
        data = np.asarray(data, dtype=float)
        if data.ndim != len(offset):
            raise DimensionMismatch("offset length must match array rank")
        if tail_bound < 0 or not math.isfinite(tail_bound):
            raise ValueError("tail_bound must be a finite nonnegative number")
        self.data = data
        self.offset = tuple(int(o) for o in offset)
        self.tail_bound = float(tail_bound)

    @property
    def dim(self) -> int:
        return len(self.offset)

    @classmethod
    def zero(cls, dim: int) -> "RealSummableArray":
        return cls(np.zeros((1,) * dim), (0,) * dim)

    @classmethod
    def from_terms(cls, dim: int, terms: Mapping[Sequence[int], float], tail_bound: float = 0.0):
        if not terms:
            return cls(np.zeros((1,) * dim), (0,) * dim, tail_bound)
        pts = np.array([tuple(k) for k in terms], dtype=np.int64).reshape(len(terms), dim)
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        data = np.zeros(tuple(int(v) for v in hi - lo + 1))
        for k, v in terms.items():
            data[tuple(np.asarray(k) - lo)] += float(v)
        return cls(data, tuple(int(v) for v in lo), tail_bound)

    @property
    def terms(self) -> Dict[Point, float]:
        idx = np.argwhere(self.data != 0)
        return {tuple(int(i + o) for i, o in zip(ix, self.offset)): float(self.data[tuple(ix)]) for ix in idx}

    def coeff(self, n: Sequence[int]) -> float:
        ix = tuple(int(a - o) for a, o in zip(n, self.offset))
        if all(0 <= i < s for i, s in zip(ix, self.data.shape)):
            return float(self.data[ix])
        return 0.0

    def stored_norm_1(self) -> float:
        return float(np.abs(self.data).sum())

    def norm_1(self) -> float:
        return self.stored_norm_1() + self.tail_bound

    def norm_inf(self) -> float:
        return float(np.abs(self.data).max(initial=0.0))

    def upper(self) -> Point:
        return tuple(o + s - 1 for o, s in zip(self.offset, self.data.shape))

    def translate(self, n: Sequence[int]) -> "RealSummableArray":
        return RealSummableArray(self.data, _add(self.offset, tuple(n)), self.tail_bound)

    def restrict(self, s: "SupportSet | Iterable[Point]") -> "RealSummableArray":
        pts = s.points if isinstance(s, SupportSet) else set(map(tuple, s))
        return RealSummableArray.from_terms(self.dim, {k: v for k, v in self.terms.items() if k in pts}, 0.0)

    def restrict_mask(self, mask: np.ndarray) -> "RealSummableArray":
        return RealSummableArray(np.where(mask, self.data, 0.0), self.offset, 0.0)

    def sup_radius_mass(self, radius: int) -> float:
        """Sum of |v_n| over stored n with ||n|| >= radius."""
        grids = np.meshgrid(*[np.arange(o, o + s) for o, s in zip(self.offset, self.data.shape)], indexing="ij")
        norms = np.max(np.abs(np.stack(grids)), axis=0) if grids else np.zeros(())
        return float(np.abs(self.data[norms >= radius]).sum())

    def max_stored_radius(self) -> int:
        return max(max(abs(self.offset[i]), abs(self.upper()[i])) for i in range(self.dim))

    def crop(self, threshold: float) -> "RealSummableArray":
        """Shrink to the bounding box of entries with |v| >= threshold.

        Mass outside the new box moves into the tail bound.
        """
        keep = np.abs(self.data) >= threshold
        if not keep.any():
            return RealSummableArray(np.zeros((1,) * self.dim), (0,) * self.dim, self.norm_1())
        idx = np.argwhere(keep)
        lo = idx.min(axis=0)
        hi = idx.max(axis=0) + 1
        sl = tuple(slice(a, b) for a, b in zip(lo, hi))
        inner = self.data[sl]
        dropped = self.stored_norm_1() - float(np.abs(inner).sum())
        return RealSummableArray(inner.copy(), _add(self.offset, tuple(int(v) for v in lo)),
                                 self.tail_bound + max(dropped, 0.0))

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return RealSummableArray(self.data * other, self.offset, self.tail_bound * abs(other))
        if isinstance(other, (IntLaurentPoly, RealSummableArray)):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * other
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, IntLaurentPoly):
            other = other.to_real()
        if not isinstance(other, RealSummableArray):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatch("dimension mismatch")
        lo = tuple(min(a, b) for a, b in zip(self.offset, other.offset))
        hi = tuple(max(a, b) for a, b in zip(self.upper(), other.upper()))
        out = np.zeros(tuple(h - l + 1 for l, h in zip(lo, hi)))
        for arr in (self, other):
            sl = tuple(slice(o - l, o - l + s) for o, l, s in zip(arr.offset, lo, arr.data.shape))
            out[sl] += arr.data
        return RealSummableArray(out, lo, self.tail_bound + other.tail_bound)

    __radd__ = __add__

    def __neg__(self):
        return RealSummableArray(-self.data, self.offset, self.tail_bound)

    def __sub__(self, other):
        if isinstance(other, IntLaurentPoly):
            other = other.to_real()
        return self + (-other)

    def __repr__(self):
        return (f"RealSummableArray(shape={self.data.shape}, offset={self.offset}, "
                f"tail_bound={self.tail_bound:.3g})")

    def to_json_obj(self, digits: int = 17) -> dict:
        return {
            "d": self.dim,
            "tail_bound": f"{self.tail_bound:.{digits}g}",
            "terms": [{"exp": list(k), "coef": f"{v:.{digits}g}"} for k, v in sorted(self.terms.items())],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RealSummableArray":
        d = int(obj["d"])
        terms = {tuple(int(v) for v in t["exp"]): float(t["coef"]) for t in obj["terms"]}
        return cls.from_terms(d, terms, float(obj.get("tail_bound", 0.0)))


def round_to_int(v: RealSummableArray, tol: float = ROUNDING_TOL, strict: bool = False) -> IntLaurentPoly:
    """Round every stored coefficient to the nearest integer.

    Raises AmbiguousRounding when a coefficient sits within ``tol`` of a
    half-integer. With ``strict=True`` every coefficient must already be
    within ``tol`` of an integer.
    """
    data = v.data
    nearest = np.rint(data)
    gap = np.abs(data - nearest)
    limit = tol if strict else 0.5 - tol
    if gap.size and float(gap.max()) > limit:
        ix = np.unravel_index(int(np.argmax(gap)), gap.shape)
        where = tuple(int(i + o) for i, o in zip(ix, v.offset))
        raise AmbiguousRounding(f"coefficient {data[ix]!r} at {where} is {gap[ix]:.3g} from an integer")
    idx = np.argwhere(nearest != 0)
    terms = {tuple(int(i + o) for i, o in zip(ix, v.offset)): int(nearest[tuple(ix)]) for ix in idx}
    return IntLaurentPoly(v.dim, terms)


# ---------------------------------------------------------------------------
# convolution


def mul(a, b):
    """Convolution product of two lattice arrays of equal dimension.

    int x int stays exact; anything involving a RealSummableArray returns a
    RealSummableArray whose tail bound follows ||a||_1 tail(b) + tail(a) ||b||_1.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")
    if isinstance(a, IntLaurentPoly) and isinstance(b, IntLaurentPoly):
        return _mul_int(a, b)
    if isinstance(a, IntLaurentPoly):
        return _mul_sparse_dense(a, b)
    if isinstance(b, IntLaurentPoly):
        return _mul_sparse_dense(b, a)
    data = signal.convolve(a.data, b.data, mode="full")
    tail = a.norm_1() * b.tail_bound + a.tail_bound * b.norm_1()
    return RealSummableArray(data, _add(a.offset, b.offset), tail)


def _mul_sparse_dense(p: IntLaurentPoly, v: RealSummableArray) -> RealSummableArray:
    if p.is_zero():
        return RealSummableArray.zero(v.dim)
    lo, hi = p.bounding_box()
    shape = tuple(h - l + s for l, h, s in zip(lo, hi, v.data.shape))
    if len(p) * v.data.size > 8 * int(np.prod(shape)) and len(p) > 64:
        dense = np.zeros(tuple(h - l + 1 for l, h in zip(lo, hi)))
        for e, c in p.terms.items():
            dense[_sub(e, lo)] = c
        data = signal.fftconvolve(dense, v.data, mode="full")
    else:
        data = np.zeros(shape)
        for e, c in p.terms.items():
            sl = tuple(slice(k - l, k - l + s) for k, l, s in zip(e, lo, v.data.shape))
            data[sl] += c * v.data
    tail = p.norm_1() * v.tail_bound
    return RealSummableArray(data, _add(lo, v.offset), tail)


def _mul_int(a: IntLaurentPoly, b: IntLaurentPoly) -> IntLaurentPoly:
    if a.is_zero() or b.is_zero():
        return IntLaurentPoly.zero(a.dim)
    if len(a) * len(b) >= _FFT_MIN_WORK:
        out = _mul_int_fft(a, b)
        if out is not None:
            return out
    return _mul_schoolbook(a, b)


def _mul_schoolbook(a: IntLaurentPoly, b: IntLaurentPoly) -> IntLaurentPoly:
    if len(a) > len(b):
        a, b = b, a
    out: Dict[Point, int] = {}
    get = out.get
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            k = tuple(x + y for x, y in zip(ea, eb))
            out[k] = get(k, 0) + ca * cb
    return IntLaurentPoly._raw(a.dim, {k: v for k, v in out.items() if v})


def fft_error_bound(a2: float, b2: float, length: int) -> float:
    """Worst-case max-norm error of a float64 FFT convolution.

    Follows the classical forward analysis of radix-2 FFT convolution: the
    error is at most ||a||_2 ||b||_2 times a factor linear in log2(length).
    The factor below is padded by 2x over the textbook constant.
    """
    n = max(1, math.ceil(math.log2(max(length, 2))))
    u = _UNIT_ROUNDOFF
    factor = (1 + u) ** (3 * n) * (1 + u * math.sqrt(5)) ** (3 * n + 1) * (1 + 2 * u) ** (3 * n) - 1
    return 2.0 * a2 * b2 * factor


def _mul_int_fft(a: IntLaurentPoly, b: IntLaurentPoly) -> IntLaurentPoly | None:
    """Dense FFT product, or None when rounding cannot be certified below 1/2."""
    lo_a, hi_a = a.bounding_box()
    lo_b, hi_b = b.bounding_box()
    shape_a = tuple(h - l + 1 for l, h in zip(lo_a, hi_a))
    shape_b = tuple(h - l + 1 for l, h in zip(lo_b, hi_b))
    out_shape = tuple(x + y - 1 for x, y in zip(shape_a, shape_b))
    size = int(np.prod(out_shape))
    if size > 2 ** 24 or size > 64 * (len(a) + len(b)) ** 2:
        return None
    if a.norm_inf() > 2 ** 50 or b.norm_inf() > 2 ** 50:
        return None
    a2 = math.sqrt(sum(float(c) ** 2 for c in a.terms.values()))
    b2 = math.sqrt(sum(float(c) ** 2 for c in b.terms.values()))
    if fft_error_bound(a2, b2, size) >= 0.5 or a.norm_1() * b.norm_1() >= 2 ** 52:
        return None
    da = np.zeros(shape_a)
    for e, c in a.terms.items():
        da[_sub(e, lo_a)] = c
    db = np.zeros(shape_b)
    for e, c in b.terms.items():
        db[_sub(e, lo_b)] = c
    prod = np.rint(signal.fftconvolve(da, db, mode="full")).astype(np.int64)
    lo = _add(lo_a, lo_b)
    idx = np.argwhere(prod != 0)
    terms = {tuple(int(i + o) for i, o in zip(ix, lo)): int(prod[tuple(ix)]) for ix in idx}
    return IntLaurentPoly._raw(a.dim, terms)
