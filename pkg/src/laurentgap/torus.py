"""Evaluation on the torus and diagnostics for the unitary variety U(f).

For one variable the atoral/toral decision is exact (gcd with the
reciprocal polynomial plus Sturm counting). For d >= 2 the module only
certifies emptiness of U(f) on a grid or samples it; nothing here proves
the dimension of a nonempty U(f).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from scipy import fft as sfft

from . import sturm
from .division import normalize
from .lattice import IntLaurentPoly

ATORAL = "atoral"
TORAL = "toral"
ATORAL_IF_IRREDUCIBLE = "atoral-if-irreducible"
INCONCLUSIVE = "inconclusive"

TorusPoint = Tuple[float, ...]

FFT_WORKERS = 1


def set_threads(n: int) -> None:
    global FFT_WORKERS
    FFT_WORKERS = max(1, int(n))


def _exps_coeffs(f: IntLaurentPoly):
    items = f.sorted_terms()
    exps = np.array([e for e, _ in items], dtype=float).reshape(len(items), f.dim)
    coeffs = np.array([float(c) for _, c in items])
    return exps, coeffs


def eval_on_torus(f: IntLaurentPoly, t) -> complex | np.ndarray:
    """f(e^{2 pi i t_1}, ..., e^{2 pi i t_d}) at one point or a stack of points.

    ``t`` is a length-d sequence or an (m, d) array. Rounding error is at
    most a few units of 1e-16 * ||f||_1 * (1 + max |n| * |t|).
    """
    t = np.asarray(t, dtype=float)
    single = t.ndim == 1
    pts = np.atleast_2d(t)
    if pts.shape[1] != f.dim:
        raise ValueError("torus point has the wrong dimension")
    if f.is_zero():
        out = np.zeros(len(pts), dtype=complex)
    else:
        exps, coeffs = _exps_coeffs(f)
        # reduce phases mod 1 before exponentiating to keep them small
        phase = np.mod(pts @ exps.T, 1.0)
        out = np.exp(2j * np.pi * phase) @ coeffs
    return complex(out[0]) if single else out


def eval_grid(f: IntLaurentPoly, n: int) -> np.ndarray:
    """Values of f at all points j/n of the torus grid, shape (n,)*d, via inverse FFT."""
    a = np.zeros((n,) * f.dim, dtype=complex)
    for e, c in f.terms.items():
        a[tuple(k % n for k in e)] += c
    return sfft.ifftn(a, workers=FFT_WORKERS) * (n ** f.dim)


def grid_points(dim: int, n: int) -> np.ndarray:
    axes = [np.arange(n) / n] * dim
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)


def lipschitz_constant(f: IntLaurentPoly) -> float:
    """L = 2 pi sum ||n||_1 |f_n|, a Euclidean Lipschitz bound for t -> f(e^{2 pi i t})."""
    return 2 * math.pi * sum(sum(abs(k) for k in e) * abs(c) for e, c in f.terms.items())


@dataclass
class TorusCertificate:
    grid_size: int
    grid_min: float
    lipschitz: float
    certified_min: float
    candidate_cells: np.ndarray = field(repr=False)

    @property
    def empty(self) -> bool:
        """True when U(f) is proven empty."""
        return self.certified_min > 0

    def to_json_obj(self, max_cells: int = 200) -> dict:
        cells = self.candidate_cells
        return {
            "grid_size": self.grid_size,
            "grid_min": f"{self.grid_min:.17g}",
            "lipschitz": f"{self.lipschitz:.17g}",
            "lipschitz_rule": "2*pi*sum_n ||n||_1 |f_n|",
            "certified_min": f"{self.certified_min:.17g}",
            "verdict": "U(f) empty (certified)" if self.empty else "inconclusive",
            "candidate_cell_count": int(len(cells)),
            "candidate_cells": [[f"{v:.17g}" for v in row] for row in cells[:max_cells]],
        }


def empty_variety_certificate(f: IntLaurentPoly, n: int = 64) -> TorusCertificate:
    """Grid bound proving min |f| > 0 on the torus, when it can.

    Every point of T^d is within sqrt(d)/(2n) (Euclidean) of a grid point, so
    min |f| >= grid_min - L sqrt(d)/(2n). Grid points whose value does not
    beat that slack are reported as candidate zero cells.
    """
    if n < 2:
        raise ValueError("grid size must be at least 2")
    if f.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    vals = np.abs(eval_grid(f, n))
    lip = lipschitz_constant(f)
    slack = lip * math.sqrt(f.dim) / (2 * n)
    grid_min = float(vals.min())
    certified = max(0.0, grid_min - slack)
    idx = np.argwhere(vals <= slack)
    cells = idx / n
    return TorusCertificate(n, grid_min, lip, certified, cells)


def _refine(f: IntLaurentPoly, pts: np.ndarray, iters: int = 60) -> np.ndarray:
    """Batched Gauss-Newton on (Re f, Im f); minimum-norm steps handle d > 2."""
    exps, coeffs = _exps_coeffs(f)
    t = pts.copy()
    for _ in range(iters):
        phase = np.exp(2j * np.pi * np.mod(t @ exps.T, 1.0)) * coeffs
        val = phase.sum(axis=1)
        jac = 2j * np.pi * (phase @ exps)
        jr = np.stack([jac.real, jac.imag], axis=1)
        res = np.stack([val.real, val.imag], axis=1)[..., None]
        step = (np.linalg.pinv(jr) @ res)[..., 0]
        step = np.clip(step, -0.05, 0.05)
        t = t - step
        if np.abs(step).max(initial=0.0) < 1e-15:
            break
    return np.mod(t, 1.0)


def unitary_variety_sample(f: IntLaurentPoly, n: int = 64, tol: float = 1e-9) -> List[TorusPoint]:
    """Approximate points of U(f), refined from candidate grid cells.

    Points satisfy |f(t)| < tol; they are numerical samples, not certified zeros.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if f.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    cert = empty_variety_certificate(f, n)
    if cert.empty or len(cert.candidate_cells) == 0:
        return []
    refined = _refine(f, cert.candidate_cells.astype(float))
    vals = np.abs(eval_on_torus(f, refined))
    good = refined[vals < tol]
    # canonical representative for coordinates that round to 1.0
    good = np.where(good >= 1.0 - 1e-15, 0.0, good)
    return [tuple(float(v) for v in row) for row in good]


def torus_distance(a, b) -> float:
    """Sup-norm distance on R^d / Z^d."""
    d = np.abs(np.asarray(a, float) - np.asarray(b, float)) % 1.0
    return float(np.minimum(d, 1.0 - d).max())


def cluster_points(points: Sequence[TorusPoint], radius: float) -> List[List[TorusPoint]]:
    """Single-linkage clusters of torus points at the given sup-norm radius."""
    pts = np.asarray(points, dtype=float)
    m = len(pts)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        d = np.abs(pts[i + 1:] - pts[i]) % 1.0
        close = np.nonzero(np.minimum(d, 1.0 - d).max(axis=1) <= radius)[0] + i + 1
        for j in close:
            ri, rj = find(i), find(int(j))
            if ri != rj:
                parent[rj] = ri
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(tuple(float(v) for v in pts[i]))
    return list(groups.values())


# ---------------------------------------------------------------------------
# one variable: exact classification


@dataclass
class D1Classification:
    verdict: str
    gcd: List[Fraction]
    trace_poly: List[Fraction]
    unit_root_count: int
    witness: str

    def to_json_obj(self) -> dict:
        return {
            "verdict": self.verdict,
            "self_inversive_gcd": [str(c) for c in self.gcd],
            "trace_poly": [str(c) for c in self.trace_poly],
            "unit_circle_root_pairs": self.unit_root_count,
            "witness": self.witness,
        }


def classify_d1(f: IntLaurentPoly) -> D1Classification:
    """Exact atoral/toral decision for a nonzero f in one variable.

    Unit-circle roots of a real polynomial are shared with its reciprocal,
    so they lie in g = gcd(f, rev f). Roots at +-1 are checked directly;
    what remains of g is palindromic, g = z^m P(z + 1/z), and its unit-circle
    roots correspond to real roots of P in (-2, 2), counted by Sturm.
    """
    if f.dim != 1:
        raise ValueError("classify_d1 needs a polynomial in one variable")
    if f.is_zero():
        raise ValueError("the zero polynomial is not classified")
    fn, _ = normalize(f)
    deg = max(e[0] for e in fn.terms)
    coeffs = [Fraction(fn.coeff((k,))) for k in range(deg + 1)]
    for z in (1, -1):
        if sturm.evaluate(coeffs, z) == 0:
            return D1Classification(TORAL, [], [], 1, f"f({z}) = 0")
    g = sturm.gcd(coeffs, coeffs[::-1])
    if sturm.degree(g) <= 0:
        return D1Classification(ATORAL, g, [], 0, "gcd(f, reverse f) is constant")
    if not sturm.is_palindromic(g):
        # an anti-palindromic factor would vanish at z = 1, excluded above
        g = sturm.monic(g)
        if not sturm.is_palindromic(g):
            raise ArithmeticError("self-inversive gcd is not palindromic")
    p = sturm.palindromic_to_trace_poly(g)
    count = sturm.count_real_roots(p, -2, 2)
    if count > 0:
        return D1Classification(TORAL, g, p, count, f"P(u) has {count} real root(s) in (-2, 2)")
    return D1Classification(ATORAL, g, p, 0, "P(u) has no real roots in [-2, 2]")


def adjoint_atorality_hint(f: IntLaurentPoly) -> str:
    """atoral-if-irreducible when f* is not +- a monomial times f.

    f* = +-x^n f forces the normalized forms to agree up to sign, so the
    comparison is exact. The conclusion needs f irreducible, which is never
    checked here.
    """
    if f.is_zero():
        return INCONCLUSIVE
    a, _ = normalize(f)
    b, _ = normalize(f.adjoint())
    if a == b or a == -b:
        return INCONCLUSIVE
    return ATORAL_IF_IRREDUCIBLE
