"""Truncated quasi-inverses f# with f# * f = h an integer polynomial outside <f>.

When U(f) is empty, 1/f is smooth on the torus and f# is its Fourier
series (h = 1). Coefficients come from an FFT of 1/f on a grid, the grid
being doubled until two consecutive tables agree. The difference between
the last two tables is carried as the l1 tail bound, and acceptance rests
on the residual of the defining identity, which is computed directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import fft as sfft

from . import torus

from .division import check_divisibility
from .lattice import IntLaurentPoly, RealSummableArray, mul, round_to_int
from .torus import empty_variety_certificate, eval_grid

DEFAULT_EPS = 1e-9
CROP_RELATIVE = 1e-15
MAX_GRID = {1: 2 ** 14, 2: 2 ** 12, 3: 2 ** 8}
GRID_ZERO_FRACTION = 0.01


class QuasiInverseError(ValueError):
    pass


class NoCertificate(QuasiInverseError):
    pass


class NoConvergence(QuasiInverseError):
    pass


class DividesH(QuasiInverseError):
    pass


class GridZero(QuasiInverseError):
    pass


@dataclass
class QuasiInverse:
    f: IntLaurentPoly
    fsharp: RealSummableArray
    h: IntLaurentPoly
    residual: float
    tail_table: List[float]
    grid_size: int
    experimental: bool = False
    notes: dict = field(default_factory=dict)

    def tail_mass(self, radius: int) -> float:
        """Upper bound on sum_{||n|| >= radius} |f#_n|."""
        if radius < 0:
            raise ValueError("radius must be >= 0")
        if radius < len(self.tail_table):
            return self.tail_table[radius]
        return self.fsharp.tail_bound

    def check_identity(self) -> bool:
        """trunc(f#)*f rounds to h on supp(h) and is below the residual elsewhere."""
        prod = mul(self.f, self.fsharp)
        supp = self.h.support()
        on = prod.restrict(supp)
        if round_to_int(on) != self.h:
            return False
        terms = prod.terms
        off = max((abs(v) for k, v in terms.items() if k not in supp.points), default=0.0)
        return off <= self.residual

    def to_json_obj(self, digits: int = 17) -> dict:
        return {
            "f": self.f.to_json_obj(),
            "h": self.h.to_json_obj(),
            "fsharp": self.fsharp.to_json_obj(digits),
            "residual": f"{self.residual:.{digits}g}",
            "tail_table": [f"{v:.{digits}g}" for v in self.tail_table],
            "grid_size": self.grid_size,
            "experimental": self.experimental,
            "notes": self.notes,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QuasiInverse":
        return cls(
            f=IntLaurentPoly.from_json_obj(obj["f"]),
            fsharp=RealSummableArray.from_json_obj(obj["fsharp"]),
            h=IntLaurentPoly.from_json_obj(obj["h"]),
            residual=float(obj["residual"]),
            tail_table=[float(v) for v in obj["tail_table"]],
            grid_size=int(obj["grid_size"]),
            experimental=bool(obj.get("experimental", False)),
            notes=dict(obj.get("notes", {})),
        )


def tail_mass(q: QuasiInverse, radius: int) -> float:
    return q.tail_mass(radius)


def build_tail_table(v: RealSummableArray) -> List[float]:
    """Entry R is sum_{||n|| >= R} |v_n| over stored terms plus v.tail_bound."""
    grids = np.meshgrid(*[np.arange(o, o + s) for o, s in zip(v.offset, v.data.shape)], indexing="ij")
    radius = np.max(np.abs(np.stack(grids)), axis=0).ravel()
    mass = np.bincount(radius, weights=np.abs(v.data).ravel())
    table = np.cumsum(mass[::-1])[::-1] + v.tail_bound
    out = [float(x) for x in table]
    out.append(v.tail_bound)
    # enforce monotonicity against float summation noise
    for i in range(len(out) - 2, -1, -1):
        out[i] = max(out[i], out[i + 1])
    return out


def _coefficient_table(values: np.ndarray) -> np.ndarray:
    """Fourier coefficients of grid samples, centred: index i <-> n = i - N/2."""
    n = values.shape[0]
    coeffs = sfft.fftn(values, workers=torus.FFT_WORKERS) / (n ** values.ndim)
    return np.fft.fftshift(coeffs)


def _embed(small: np.ndarray, big_n: int) -> np.ndarray:
    n = small.shape[0]
    out = np.zeros((big_n,) * small.ndim, dtype=small.dtype)
    lo = (big_n - n) // 2
    out[tuple(slice(lo, lo + n) for _ in range(small.ndim))] = small
    return out


def _residual(f: IntLaurentPoly, v: RealSummableArray, h: IntLaurentPoly) -> float:
    prod = mul(f, v) - h.to_real()
    return float(np.abs(prod.data).max(initial=0.0)) + v.tail_bound * f.norm_inf()


def _start_grid(f: IntLaurentPoly) -> int:
    lo, hi = f.bounding_box()
    spread = max(h - l for l, h in zip(lo, hi))
    n = 16
    while n < 4 * (spread + 1):
        n *= 2
    return n


def _certify(f: IntLaurentPoly, max_n: int):
    n = 64
    while True:
        cert = empty_variety_certificate(f, n)
        if cert.empty or n >= min(max_n, 1024 if f.dim == 1 else 512 if f.dim == 2 else 64):
            return cert
        n *= 2


def compute_empty_variety(f: IntLaurentPoly, n: int | None = None, eps: float = DEFAULT_EPS,
                          max_n: int | None = None) -> QuasiInverse:
    """Quasi-inverse with h = 1 for f whose unitary variety is certified empty."""
    if f.is_zero():
        raise QuasiInverseError("zero polynomial")
    if f.is_unit():
        raise QuasiInverseError("units have no quasi-inverse outside the ideal they generate")
    if check_divisibility(f, IntLaurentPoly.constant(f.dim, 1)).over_z:
        raise QuasiInverseError("1 lies in <f>")
    max_n = max_n or MAX_GRID.get(f.dim, 2 ** 6)
    cert = _certify(f, max_n)
    if not cert.empty:
        raise NoCertificate(f"could not certify U(f) empty (grid {cert.grid_size}, "
                            f"grid_min {cert.grid_min:.3g}, slack {cert.grid_min - cert.certified_min:.3g})")
    h = IntLaurentPoly.constant(f.dim, 1)
    n = n or _start_grid(f)
    prev = _coefficient_table(1.0 / eval_grid(f, n)).real
    while 2 * n <= max_n:
        big = 2 * n
        cur = _coefficient_table(1.0 / eval_grid(f, big)).real
        diff = cur - _embed(prev, big)
        max_diff = float(np.abs(diff).max())
        alias = float(np.abs(diff).sum())
        if max_diff < eps / 2:
            v = RealSummableArray(cur, (-big // 2,) * f.dim, alias)
            v = v.crop(CROP_RELATIVE * float(np.abs(cur).max()))
            res = _residual(f, v, h)
            if res < eps:
                return QuasiInverse(
                    f=f, fsharp=v, h=h, residual=res, tail_table=build_tail_table(v),
                    grid_size=big,
                    notes={"method": "fft of 1/f with grid doubling",
                           "aliasing_bound": f"{alias:.17g}",
                           "certificate_grid": cert.grid_size,
                           "certified_min": f"{cert.certified_min:.17g}"},
                )
        prev, n = cur, big
    raise NoConvergence(f"coefficients did not settle below eps={eps} by grid {n}")


def attach_user_h(f: IntLaurentPoly, h: IntLaurentPoly, n: int = 256, eps: float = DEFAULT_EPS,
                  smooth: Optional[bool] = None) -> QuasiInverse:
    """Experimental quasi-inverse for a user-supplied h, assumed to make h/f summable.

    Samples h/f on the grid away from |f| <= eps. Fejer smoothing is applied
    when any sample had to be masked (or when ``smooth`` is True). No tail
    certification is attempted.
    """
    if f.dim != h.dim:
        raise ValueError("dimension mismatch")
    if check_divisibility(f, h).over_z:
        raise DividesH("h lies in <f>, so it cannot be the target of a quasi-inverse")
    fv = eval_grid(f, n)
    hv = eval_grid(h, n)
    mask = np.abs(fv) > eps
    masked = int(mask.size - mask.sum())
    if masked > GRID_ZERO_FRACTION * mask.size:
        raise GridZero(f"{masked} of {mask.size} grid points have |f| <= {eps}")
    ratio = np.where(mask, hv / np.where(mask, fv, 1.0), 0.0)
    coeffs = _coefficient_table(ratio).real
    if smooth is None:
        smooth = masked > 0
    if smooth:
        k = np.abs(np.arange(n) - n // 2)
        w1 = np.clip(1.0 - k / (n // 2), 0.0, None)
        w = w1
        for _ in range(f.dim - 1):
            w = np.multiply.outer(w, w1)
        coeffs = coeffs * w
    v = RealSummableArray(coeffs, (-n // 2,) * f.dim, 0.0)
    v = v.crop(CROP_RELATIVE * float(np.abs(coeffs).max(initial=0.0)))
    res = _residual(f, v, h)
    return QuasiInverse(
        f=f, fsharp=v, h=h, residual=res, tail_table=build_tail_table(v), grid_size=n,
        experimental=True,
        notes={"method": "fft of h/f (user-supplied h)", "masked_points": masked,
               "fejer": bool(smooth), "tail": "not certified"},
    )


def is_integer_array(q: QuasiInverse, gap: float = 1e-3) -> bool:
    """True when every stored coefficient is within ``gap`` of an integer."""
    d = q.fsharp.data
    return bool(np.all(np.abs(d - np.rint(d)) <= gap))
