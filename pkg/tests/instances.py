"""Random gapped multiples of f for the gap-engine round trips."""

import random

from laurentgap.gap import gap_constant
from laurentgap.lattice import IntLaurentPoly, dist


def small_multiplier(rng: random.Random, dim: int, terms=3, coef=2, span=2):
    while True:
        k = IntLaurentPoly(dim, {tuple(rng.randint(-span, span) for _ in range(dim)): rng.choice([-1, 1]) *
                                 rng.randint(1, coef) for _ in range(rng.randint(1, terms))})
        if not k.is_zero():
            return k


def gapped_instance(rng: random.Random, f: IntLaurentPoly, q, pieces=2):
    """r = sum of translates of k_i f placed at distance >= M(H) apart, with H = ||r||_inf."""
    while True:
        parts = [small_multiplier(rng, f.dim) * f for _ in range(pieces)]
        H = max(p.norm_inf() for p in parts)
        M = gap_constant(q, H)
        placed = []
        for p in parts:
            while True:
                step = tuple(rng.randint(-4 * M, 4 * M) for _ in range(f.dim))
                cand = p.translate(step)
                if all(dist(cand.support(), o.support()) >= M for o in placed):
                    placed.append(cand)
                    break
        r = IntLaurentPoly.zero(f.dim)
        for p in placed:
            r = r + p
        # overlapping supports never happen at distance >= M >= 3, so no cancellation
        if r.norm_inf() == H:
            return r, placed, H, M
