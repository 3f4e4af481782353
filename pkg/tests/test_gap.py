import random

import pytest

from laurentgap.gap import (GapError, HTooSmall, NotDivisible, QuasiInverseRejected, cluster_support,
                            gap_constant, gap_radius, proof_trace, split_and_verify)
from laurentgap.lattice import IntLaurentPoly, RealSummableArray
from laurentgap.parse import parse_poly
from laurentgap.quasi_inverse import QuasiInverse, attach_user_h, compute_empty_variety

from instances import gapped_instance

P = parse_poly


@pytest.fixture(scope="module")
def q_xm2():
    return compute_empty_variety(P("x-2"))


@pytest.fixture(scope="module")
def q_3xy():
    return compute_empty_variety(P("3+x+y"))


@pytest.mark.parametrize("H,R", [(1, 3), (2, 4), (8, 6), (100, 10)])
def test_gap_radius_closed_form(q_xm2, H, R):
    # tail of 1/(x-2) beyond R is 2^-R; need 2^-R < 1/(6H)
    want = next(r for r in range(64) if 2.0 ** -r < 1 / (6 * H))
    assert gap_radius(q_xm2, H) == want == R
    assert gap_constant(q_xm2, H) == 3 * R


def test_gap_radius_monotone(q_3xy):
    rs = [gap_radius(q_3xy, H) for H in (1, 2, 4, 8, 16, 32)]
    assert rs == sorted(rs)


def test_clusters():
    pts = lambda *xs: IntLaurentPoly(1, {(x,): 1 for x in xs})
    cl = cluster_support(pts(0, 1, 20, 21), 9)
    assert sorted(sorted(c.points) for c in cl) == [[(0,), (1,)], [(20,), (21,)]]
    assert len(cluster_support(pts(0, 5, 10), 6)) == 1
    assert [c.points for c in cluster_support(pts(0), 4)] == [frozenset({(0,)})]


def test_split_x_minus_2(q_xm2):
    f = P("x-2")
    r = f + P("x^20") * f
    cert = split_and_verify(f, q_xm2, r, H=2)
    assert cert.M == 12 and len(cert.clusters) == 2
    got = sorted((sorted(c.points), qt) for c, qt in zip(cert.clusters, cert.quotients))
    assert got[0][1] == IntLaurentPoly.constant(1, 1) and got[1][1] == P("x^20")
    assert cert.traces_passed and cert.audit() and not cert.anomalies


def test_single_cluster(q_3xy):
    f = P("3+x+y")
    k = P("1-x y+2y^2")
    cert = split_and_verify(f, q_3xy, k * f)
    assert len(cert.clusters) == 1 and cert.quotients == [k]


def test_proof_trace_example(q_xm2):
    f = P("x-2")
    t = proof_trace(f, q_xm2, f, P("x^20") * f, 2)
    assert t.passed and t.identity_exact
    assert all(v > 0 for v in t.margins.values())
    assert t.u == IntLaurentPoly.constant(1, 1)


def test_proof_trace_zero_piece(q_xm2):
    f = P("x-2")
    t = proof_trace(f, q_xm2, IntLaurentPoly.zero(1), P("x^20") * f, 2)
    assert t.u.is_zero() and t.identity_exact


def test_randomized_round_trips(q_3xy):
    rng = random.Random(17)
    f = q_3xy.f
    for _ in range(25):
        r, placed, H, M = gapped_instance(rng, f, q_3xy, pieces=rng.choice([2, 3]))
        cert = split_and_verify(f, q_3xy, r, H=H)
        assert cert.all_divisible and cert.traces_passed and cert.audit()
        assert len(cert.clusters) == len(placed)


def test_errors(q_xm2):
    f = P("x-2")
    with pytest.raises(NotDivisible):
        split_and_verify(f, q_xm2, P("x-3"))
    with pytest.raises(HTooSmall):
        split_and_verify(f, q_xm2, 5 * f, H=2)
    with pytest.raises(GapError):
        split_and_verify(f, q_xm2, f, M=2)
    with pytest.raises(GapError):
        proof_trace(f, q_xm2, f, P("x^3") * f, 2)


def test_reducible_atoral_f():
    # h = 1 keeps the argument intact even though f = (x-2)(x-3) is reducible
    f = P("(x-2)*(x-3)")
    q = compute_empty_variety(f)
    M = gap_constant(q, 6)
    r = f + f.translate((M + 10,))
    cert = split_and_verify(f, q, r, H=6, irreducible=False)
    assert cert.all_divisible and cert.traces_passed
    assert not cert.irreducible_asserted


def fake_quasi_inverse(f):
    """A QuasiInverse with h = f, which breaks the h-outside-the-ideal hypothesis."""
    return QuasiInverse(f=f, fsharp=RealSummableArray.from_terms(f.dim, {(0,) * f.dim: 1.0}), h=f,
                        residual=0.0, tail_table=[1.0, 0.0], grid_size=0, experimental=True)


def test_anomaly_is_reported_not_raised():
    f = P("1-x")
    r = f * IntLaurentPoly(1, {(k,): 1 for k in range(30)})  # 1 - x^30
    cert = split_and_verify(f, fake_quasi_inverse(f), r)
    assert len(cert.clusters) == 2 and cert.anomalies == [0, 1]
    assert cert.to_json_obj()["anomalies"] == [0, 1]


def test_rejects_bad_quasi_inverse():
    f = P("1+x+y")
    q = attach_user_h(f, P("1 - x^-1 y"), n=16)
    if q.residual >= 0.5:
        with pytest.raises(QuasiInverseRejected):
            gap_radius(q, 1)
    else:
        assert gap_radius(q, 1) >= 0
