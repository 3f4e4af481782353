import random
from fractions import Fraction

import pytest

from laurentgap.division import divides
from laurentgap.lacunary import (BlowUp, SpacedConfiguration, ball_counts, corollary_gap_constant,
                                 empirical_M_search, frobenius_counterexample, haar_pairing,
                                 independence_check, pairwise_collision_scan, power_mod, product_factorization,
                                 sumset_growth, verify_ball_cover, verify_corollary_1_7)
from laurentgap.lattice import IntLaurentPoly
from laurentgap.parse import parse_poly
from laurentgap.quasi_inverse import compute_empty_variety

from conftest import random_poly

P = parse_poly
ZERO1 = IntLaurentPoly.zero(1)


def test_configuration_spacing():
    SpacedConfiguration(((0, 0), (10, 0)), 10)
    with pytest.raises(ValueError):
        SpacedConfiguration(((0, 0), (3, 1)), 4)


def test_corollary_examples():
    f = P("3+x+y")
    cfg = SpacedConfiguration(((0, 0), (10, 0)), 10)
    rep = verify_corollary_1_7(f, [P("1", dim=2), P("x", dim=2)], cfg)
    assert rep.selections == 4 and rep.divisible_sums == 0 and rep.ok
    rep = verify_corollary_1_7(f, [f, P("x", dim=2) * f], cfg)
    assert rep.divisible_sums == 4 and rep.ok
    rep = verify_corollary_1_7(f, [IntLaurentPoly.zero(2)], cfg)
    assert rep.divisible_sums == 1 and rep.ok


def test_corollary_violation_when_too_close():
    # 2 + x * (-1) = -(x - 2) while neither part is divisible
    f = P("x-2")
    cfg = SpacedConfiguration(((0,), (1,)), 1)
    rep = verify_corollary_1_7(f, [P("2"), P("-1", dim=1)], cfg)
    assert (0, 1) in rep.violations


def test_blowup_guard():
    cfg = SpacedConfiguration(tuple((20 * i,) for i in range(21)), 20)
    with pytest.raises(BlowUp):
        verify_corollary_1_7(P("x-2"), [ZERO1, P("1", dim=1), P("x")], cfg)


def test_msearch_below_gap_constant():
    f = P("x-2")
    fam = [P("1", dim=1), P("x"), P("x^2")]
    q = compute_empty_variety(f)
    rep = empirical_M_search(f, fam, 8, trials=10, seed=1, q=q)
    assert rep.gap_M == corollary_gap_constant(q, fam, 2)
    assert rep.M_empirical <= rep.gap_M
    with pytest.raises(ValueError):
        empirical_M_search(f, fam, 0)


def test_msearch_vacuous():
    f = P("x-2")
    rep = empirical_M_search(f, [f, P("x") * f], 5, trials=5)
    assert rep.M_empirical == 1 and not rep.violations


def test_independence_examples():
    f = P("x-2")
    one, x = P("1", dim=1), P("x")
    rep = independence_check(f, [[ZERO1, one], [ZERO1, x]])
    assert rep.independent and rep.distinct_sum_count == 4
    rep = independence_check(f, [[ZERO1], [ZERO1]])
    assert rep.independent and rep.expected == 1
    rep = independence_check(f, [[ZERO1, one], [ZERO1, one]])
    assert not rep.independent and rep.distinct_sum_count == 3
    assert rep.witness == ((0, 1), (1, 0))


def test_rational_only_collision_split():
    # 2x - 4 divides x - 2 over Q but not over Z
    f = P("2x-4")
    rep = independence_check(f, [[ZERO1, P("x")], [ZERO1, P("2", dim=1)]])
    assert rep.rational_only_collisions == 1 and rep.independent


def test_independence_against_pairwise_scan():
    rng = random.Random(4)
    for _ in range(60):
        d = rng.randint(1, 2)
        f = random_poly(rng, d, max_terms=3, coef=3, span=1)
        fams = [[random_poly(rng, d, max_terms=2, coef=3, span=2, nonzero=False) for _ in range(rng.randint(1, 3))]
                for _ in range(rng.randint(1, 3))]
        # append to each family a member congruent to its first, so collisions occur
        fams = [E + [E[0] + f * random_poly(rng, d, 2, 2, 1)] for E in fams]
        assert independence_check(f, fams).distinct_sum_count == pairwise_collision_scan(f, fams)


@pytest.mark.parametrize("d", [1, 2])
def test_ball_cover(d):
    for R in range(1, 9):
        for M in range(1, R + 1):
            assert verify_ball_cover(d, R, M)
            b_r, b_rm, b_m = ball_counts(d, R, M)
            assert b_rm * b_m >= b_r


def test_sumset_examples():
    f = P("x-2")
    F = [ZERO1, P("1", dim=1)]
    rep = sumset_growth(f, F, 4, 2)
    assert rep.sub_size == 5 and rep.sumset_size == 32 and rep.independent
    assert rep.ball_size / rep.cell_size <= rep.sub_size
    rep = sumset_growth(f, F, 4, 9)
    assert rep.sub_size == 1 and rep.sumset_size == 2


def test_haar_pairing():
    f = P("3+x+y")
    assert haar_pairing(f, f) == 1
    assert haar_pairing(f, IntLaurentPoly.constant(2, 1)) == 0
    rng = random.Random(8)
    for _ in range(100):
        g = random_poly(rng, 2, max_terms=3, coef=3, span=1)
        p = random_poly(rng, 2, max_terms=3, coef=3, span=1) * (g if rng.random() < 0.5 else 1)
        assert haar_pairing(g, p) == (1 if divides(g, p) is not None else 0)


def test_product_factorization():
    f = P("x-2")
    one = P("1", dim=1)
    spaced = [[ZERO1, one], [ZERO1, P("x^10")]]
    lhs, rhs = product_factorization(f, spaced)
    assert lhs == rhs == 1
    lhs, rhs = product_factorization(f, spaced, weights=[[Fraction(1, 2), 3], [2, Fraction(-1, 5)]])
    assert lhs == rhs
    # a dependent pair breaks it: 2 + (-x) is in <x-2>
    lhs, rhs = product_factorization(f, [[ZERO1, P("2", dim=1)], [ZERO1, -P("x")]])
    assert lhs == 2 and rhs == 1


def test_frobenius():
    ws = frobenius_counterexample(10)
    for w in ws:
        assert w.identity_holds and w.sum_divisible_mod2
        assert not any(w.parts_divisible_mod2)
        assert not w.divisible_over_z
    with pytest.raises(ValueError):
        frobenius_counterexample(13)


def test_frobenius_small_cases_by_lucas():
    # coefficient of x^i y^j in (1+x+y)^N is N!/(i! j! (N-i-j)!), odd iff the binary digits don't collide
    f = P("1+x+y")
    for n in (1, 2, 3):
        N = 2 ** n
        want = {}
        for i in range(N + 1):
            for j in range(N + 1 - i):
                k = N - i - j
                if (i & j) == 0 and (i & k) == 0 and (j & k) == 0:
                    want[(i, j)] = 1
        assert power_mod(f, N, 2).terms == want
    assert (f ** 2).reduce_mod(2) == P("1+x^2+y^2")
