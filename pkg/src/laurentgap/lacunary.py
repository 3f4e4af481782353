"""Brute-force checks of lacunary independence in R_d/<f>.

Everything here is exhaustive over finite data: selections of translated
polynomials, sums of finite coset families, ball counts. Results can refute
lacunary independence for given inputs, or support it empirically; they
never prove the property for all finite subsets and all spacings.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .division import (INTEGER, check_divisibility, common_shift, divide_mod, normal_form)
from .gap import gap_radius
from .lattice import IntLaurentPoly, Point, SupportSet, ball, sup_norm
from .quasi_inverse import QuasiInverse

MAX_CASES = 10 ** 6
REPORT_SCOPE = ("finite verification only: refutes or empirically supports lacunary independence "
                "for the given sets and configurations; the property itself quantifies over all "
                "finite subsets and spacings")


class BlowUp(ValueError):
    pass


def _guard(count: int) -> None:
    if count > MAX_CASES:
        raise BlowUp(f"{count} cases exceed the brute-force limit of {MAX_CASES}")


@dataclass(frozen=True)
class SpacedConfiguration:
    points: Tuple[Point, ...]
    M: int

    def __post_init__(self):
        if not self.points:
            raise ValueError("configuration must be nonempty")
        for a, b in itertools.combinations(self.points, 2):
            if sup_norm(tuple(x - y for x, y in zip(a, b))) < self.M:
                raise ValueError(f"points {a} and {b} are closer than M={self.M}")

    @property
    def dim(self) -> int:
        return len(self.points[0])


# ---------------------------------------------------------------------------
# linear coset labels shared across a batch


class _Labeler:
    """Normal forms at one common shift; labels add linearly."""

    def __init__(self, f: IntLaurentPoly, polys: Sequence[IntLaurentPoly]):
        self.f = f
        self.shift = common_shift(list(polys) + [IntLaurentPoly.constant(f.dim, 0)])

    def label(self, p: IntLaurentPoly) -> Dict[Point, Fraction]:
        return dict(normal_form(p, self.f, self.shift).rep.terms)


def _add_labels(labels) -> frozenset:
    acc: Dict[Point, Fraction] = {}
    for lab in labels:
        for e, c in lab.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
    return frozenset(acc.items())


def _in_ideal(f: IntLaurentPoly, p: IntLaurentPoly) -> bool:
    return check_divisibility(f, p).status == INTEGER


# ---------------------------------------------------------------------------
# corollary on spaced translates


@dataclass
class CorollaryReport:
    f: IntLaurentPoly
    family: List[IntLaurentPoly]
    config: SpacedConfiguration
    selections: int
    divisible_sums: int
    violations: List[Tuple[int, ...]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict:
        return {
            "scope": REPORT_SCOPE,
            "f": self.f.to_json_obj(),
            "family": [p.to_json_obj() for p in self.family],
            "points": [list(p) for p in self.config.points],
            "M": self.config.M,
            "selections": self.selections,
            "divisible_sums": self.divisible_sums,
            "violations": [list(v) for v in self.violations[:50]],
            "violation_count": len(self.violations),
            "ok": self.ok,
        }


def verify_corollary_1_7(f: IntLaurentPoly, family: Sequence[IntLaurentPoly],
                         cfg: SpacedConfiguration) -> CorollaryReport:
    """Enumerate every selection n -> p^(n) from the family over the configuration.

    A violation is a selection whose translated sum is divisible by f while
    some selected p^(n) is not. Selections are reported as index tuples.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    family = list(family)
    _guard(len(family) ** len(cfg.points))
    part_ok = [_in_ideal(f, p) for p in family]
    translated = [[p.translate(n) for p in family] for n in cfg.points]
    lab = _Labeler(f, [t for row in translated for t in row])
    labels = [[lab.label(t) for t in row] for row in translated]
    divisible = 0
    violations = []
    for sel in itertools.product(range(len(family)), repeat=len(cfg.points)):
        key = _add_labels(labels[i][j] for i, j in enumerate(sel))
        if key:
            continue
        total = IntLaurentPoly.zero(f.dim)
        for i, j in enumerate(sel):
            total = total + translated[i][j]
        if not _in_ideal(f, total):
            continue  # divisible over Q only
        divisible += 1
        if not all(part_ok[j] for j in sel):
            violations.append(sel)
    return CorollaryReport(f, family, cfg, len(family) ** len(cfg.points), divisible, violations)


def _random_configuration(rng: random.Random, dim: int, size: int, M: int) -> SpacedConfiguration:
    if dim == 1:
        pts = [0]
        for _ in range(size - 1):
            pts.append(pts[-1] + M + rng.randrange(0, 3))
        return SpacedConfiguration(tuple((p,) for p in pts), M)
    span = (M + 2) * size
    while True:
        pts = [tuple(rng.randrange(0, span) for _ in range(dim)) for _ in range(size)]
        pts[0] = (0,) * dim
        try:
            return SpacedConfiguration(tuple(pts), M)
        except ValueError:
            continue


@dataclass
class MSearchReport:
    M_empirical: int
    M_max: int
    trials: int
    violations: Dict[int, List[dict]] = field(default_factory=dict)
    gap_M: Optional[int] = None

    def to_json_obj(self) -> dict:
        return {
            "scope": REPORT_SCOPE,
            "M_empirical": self.M_empirical,
            "M_max": self.M_max,
            "trials_per_M": self.trials,
            "gap_engine_M": self.gap_M,
            "violations": {str(k): v[:10] for k, v in sorted(self.violations.items())},
        }


def empirical_M_search(f: IntLaurentPoly, family: Sequence[IntLaurentPoly], M_max: int, trials: int = 20,
                       seed: int = 0, size: int = 2, q: QuasiInverse | None = None) -> MSearchReport:
    """Smallest M <= M_max past which no violation was found on sampled configurations."""
    if M_max < 1:
        raise ValueError("M_max must be >= 1")
    family = list(family)
    _guard(len(family) ** size)
    rng = random.Random(seed)
    violations: Dict[int, List[dict]] = {}
    for M in range(1, M_max + 1):
        for _ in range(trials):
            cfg = _random_configuration(rng, f.dim, size, M)
            rep = verify_corollary_1_7(f, family, cfg)
            for sel in rep.violations:
                violations.setdefault(M, []).append(
                    {"points": [list(p) for p in cfg.points], "selection": list(sel)})
    worst = max(violations, default=0)
    gap_M = None
    if q is not None:
        gap_M = corollary_gap_constant(q, family, size)
    return MSearchReport(worst + 1, M_max, trials, violations, gap_M)


def support_diameter(family: Sequence[IntLaurentPoly]) -> int:
    pts = [e for p in family for e in p.terms]
    if len(pts) < 2:
        return 0
    s = SupportSet.of(pts)
    arr = sorted(s.points)
    return max(sup_norm(tuple(a - b for a, b in zip(u, v))) for u in arr for v in arr)


def corollary_gap_constant(q: QuasiInverse, family: Sequence[IntLaurentPoly], size: int) -> int:
    """Spacing that makes spaced translates of the family satisfy the gap theorem.

    H is taken as size * max ||p||_inf and the spread of the family's supports
    is added to 3R, so translated supports stay 3R apart.
    """
    h_adj = max(1, size * max((p.norm_inf() for p in family), default=1))
    return 3 * gap_radius(q, h_adj) + support_diameter(family)


# ---------------------------------------------------------------------------
# independence of finite families


@dataclass
class IndependenceReport:
    expected: int
    distinct_sum_count: int
    witness: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]
    rational_only_collisions: int = 0

    @property
    def independent(self) -> bool:
        return self.distinct_sum_count == self.expected

    def to_json_obj(self) -> dict:
        return {
            "scope": REPORT_SCOPE,
            "expected": self.expected,
            "distinct_sum_count": self.distinct_sum_count,
            "independent": self.independent,
            "witness": None if self.witness is None else [list(self.witness[0]), list(self.witness[1])],
            "rational_only_collisions": self.rational_only_collisions,
        }


def independence_check(f: IntLaurentPoly, families: Sequence[Sequence[IntLaurentPoly]]) -> IndependenceReport:
    """Count distinct sums e_1 + ... + e_n (e_j in E_j) in R_d/<f>.

    Sums are grouped by Q-coset label; a group is split further when two
    members differ by something divisible over Q but not over Z.
    """
    families = [list(E) for E in families]
    expected = math.prod(len(E) for E in families)
    _guard(expected)
    lab = _Labeler(f, [p for E in families for p in E])
    labels = [[lab.label(p) for p in E] for E in families]
    groups: Dict[frozenset, List[Tuple[int, ...]]] = {}
    for sel in itertools.product(*[range(len(E)) for E in families]):
        key = _add_labels(labels[j][i] for j, i in enumerate(sel))
        groups.setdefault(key, []).append(sel)

    def total(sel):
        acc = IntLaurentPoly.zero(f.dim)
        for j, i in enumerate(sel):
            acc = acc + families[j][i]
        return acc

    count = 0
    witness = None
    rational_only = 0
    for sels in groups.values():
        if len(sels) == 1:
            count += 1
            continue
        classes: List[Tuple[Tuple[int, ...], IntLaurentPoly]] = []
        for sel in sels:
            s = total(sel)
            for rep_sel, rep_sum in classes:
                if _in_ideal(f, s - rep_sum):
                    if witness is None:
                        witness = (rep_sel, sel)
                    break
            else:
                if classes:
                    rational_only += 1
                classes.append((sel, s))
        count += len(classes)
    return IndependenceReport(expected, count, witness, rational_only)


def pairwise_collision_scan(f: IntLaurentPoly, families) -> int:
    """Distinct-sum count by direct pairwise divisibility tests (slow oracle)."""
    families = [list(E) for E in families]
    sums = []
    for sel in itertools.product(*families):
        acc = IntLaurentPoly.zero(f.dim)
        for p in sel:
            acc = acc + p
        sums.append(acc)
    reps: List[IntLaurentPoly] = []
    for s in sums:
        if not any(_in_ideal(f, s - r) for r in reps):
            reps.append(s)
    return len(reps)


# ---------------------------------------------------------------------------
# counting


def sublattice_ball(dim: int, R: int, M: int) -> SupportSet:
    """B_{R,M} = B_R intersected with M Z^d."""
    k = R // M
    rng = [M * i for i in range(-k, k + 1)]
    return SupportSet(dim, frozenset(itertools.product(rng, repeat=dim)))


def verify_ball_cover(dim: int, R: int, M: int) -> bool:
    """Check B_R is contained in B_{R,M} + B_M by enumeration."""
    sub = sublattice_ball(dim, R, M)
    bm = ball(dim, M)
    cover = {tuple(a + b for a, b in zip(s, t)) for s in sub for t in bm}
    return ball(dim, R).points <= cover


def ball_counts(dim: int, R: int, M: int) -> Tuple[int, int, int]:
    """(|B_R|, |B_{R,M}|, |B_M|)."""
    return (2 * R + 1) ** dim, len(sublattice_ball(dim, R, M)), (2 * M + 1) ** dim


@dataclass
class SumsetReport:
    R: int
    M: int
    ball_size: int
    sub_size: int
    cell_size: int
    sumset_size: int
    independent: bool

    @property
    def gamma_lower(self) -> float:
        return 1.0 / self.cell_size

    @property
    def gamma_realized(self) -> float:
        return math.log2(self.sumset_size) / self.ball_size

    @property
    def bound(self) -> float:
        return 2.0 ** (self.gamma_lower * self.ball_size)

    def to_json_obj(self) -> dict:
        return {
            "scope": REPORT_SCOPE,
            "R": self.R, "M": self.M,
            "B_R": self.ball_size, "B_RM": self.sub_size, "B_M": self.cell_size,
            "sumset_size": self.sumset_size,
            "independent": self.independent,
            "gamma_realized": f"{self.gamma_realized:.17g}",
            "gamma_lower": f"{self.gamma_lower:.17g}",
            "bound_c1": f"{self.bound:.17g}",
        }


def sumset_growth(f: IntLaurentPoly, F: Sequence[IntLaurentPoly], R: int, M: int) -> SumsetReport:
    """Size of sum over n in B_{R,M} of x^n F, compared with 2^{|B_R|/|B_M|}."""
    F = list(F)
    if len(F) != 2:
        raise ValueError("F must have exactly two elements")
    sub = sorted(sublattice_ball(f.dim, R, M).points)
    _guard(2 ** len(sub))
    families = [[p.translate(n) for p in F] for n in sub]
    rep = independence_check(f, families)
    b_r, b_rm, b_m = ball_counts(f.dim, R, M)
    return SumsetReport(R, M, b_r, b_rm, b_m, rep.distinct_sum_count, rep.independent)


# ---------------------------------------------------------------------------
# characters


def haar_pairing(f: IntLaurentPoly, p: IntLaurentPoly) -> int:
    """Integral of chi_p against Haar measure: 1 if chi_p is trivial (p in <f>), else 0."""
    if f.is_zero():
        raise ValueError("f must be nonzero")
    return 1 if _in_ideal(f, p) else 0


def product_factorization(f: IntLaurentPoly, families: Sequence[Sequence[IntLaurentPoly]],
                          weights: Sequence[Sequence] | None = None) -> Tuple[Fraction, Fraction]:
    """(integral of the product, product of integrals) for psi_j = sum_e w_e chi_e.

    The two agree whenever the families are independent with 0 in each.
    """
    families = [list(E) for E in families]
    if weights is None:
        weights = [[Fraction(1)] * len(E) for E in families]
    weights = [[Fraction(w) for w in W] for W in weights]
    _guard(math.prod(len(E) for E in families))
    lhs = Fraction(0)
    for sel in itertools.product(*[range(len(E)) for E in families]):
        coef = Fraction(1)
        acc = IntLaurentPoly.zero(f.dim)
        for j, i in enumerate(sel):
            coef *= weights[j][i]
            acc = acc + families[j][i]
        if coef:
            lhs += coef * haar_pairing(f, acc)
    rhs = Fraction(1)
    for E, W in zip(families, weights):
        rhs *= sum((w * haar_pairing(f, e) for e, w in zip(E, W)), Fraction(0))
    return lhs, rhs


# ---------------------------------------------------------------------------
# characteristic 2


@dataclass
class FrobeniusWitness:
    n: int
    gap: int
    identity_holds: bool
    sum_divisible_mod2: bool
    parts_divisible_mod2: Tuple[bool, bool, bool]
    divisible_over_z: bool

    def to_json_obj(self) -> dict:
        gap = self.gap
        return {
            "n": self.n,
            "gap": gap,
            "identity": f"(1+x+y)^{gap} = 1 + x^{gap} + y^{gap} mod 2",
            "identity_holds": self.identity_holds,
            "sum": IntLaurentPoly(2, {(0, 0): 1, (gap, 0): 1, (0, gap): 1}).to_json_obj(),
            "sum_divisible_mod2": self.sum_divisible_mod2,
            "parts_divisible_mod2": list(self.parts_divisible_mod2),
            "divisible_over_Z": self.divisible_over_z,
            "family_F": [0, 1],
            "collision": "1 + x^g + y^g = 0 + 0 + 0 in R_2/<2, 1+x+y>",
        }


def power_mod(p: IntLaurentPoly, exponent: int, prime: int) -> IntLaurentPoly:
    result = IntLaurentPoly.constant(p.dim, 1)
    base = p.reduce_mod(prime)
    while exponent:
        if exponent & 1:
            result = (result * base).reduce_mod(prime)
        exponent >>= 1
        if exponent:
            base = (base * base).reduce_mod(prime)
    return result


def _divisible_mod2(f: IntLaurentPoly, p: IntLaurentPoly) -> bool:
    pr = p.reduce_mod(2)
    if pr.is_zero():
        return True
    if len(pr) == 1:
        # p is a unit mod 2; f divides it only if f is a unit mod 2 too
        return len(f.reduce_mod(2)) == 1
    _, r = divide_mod(f, p, 2)
    return r.is_zero()


def frobenius_counterexample(n_max: int) -> List[FrobeniusWitness]:
    """For n = 1..n_max: (1+x+y)^(2^n) = 1 + x^(2^n) + y^(2^n) in F_2[x, y], and what it implies."""
    if not 1 <= n_max <= 12:
        raise ValueError("n_max must lie in 1..12")
    one = IntLaurentPoly.constant(2, 1)
    x = IntLaurentPoly.monomial((1, 0))
    y = IntLaurentPoly.monomial((0, 1))
    f = one + x + y
    out = []
    power = f
    for n in range(1, n_max + 1):
        power = (power * power).reduce_mod(2)
        g = 2 ** n
        parts = (one, x ** g, y ** g)
        target = parts[0] + parts[1] + parts[2]
        identity = power == target.reduce_mod(2)
        # the identity exhibits the quotient (1+x+y)^(2^n - 1) mod 2
        parts_div = tuple(_divisible_mod2(f, p) for p in parts)
        over_z = check_divisibility(f, target).status == INTEGER
        out.append(FrobeniusWitness(n, g, identity, identity, parts_div, over_z))
    return out
