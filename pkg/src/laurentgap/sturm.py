"""Exact univariate polynomial algebra over Q and Sturm root counting.

Polynomials are lists of Fractions, lowest degree first. Only what the
unit-circle test needs is here: remainder, gcd, derivative, Sturm chains
and the reduction of a palindromic polynomial to a polynomial in z + 1/z.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

QPoly = List[Fraction]


def trim(p: Sequence) -> QPoly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def evaluate(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> QPoly:
    return trim([k * p[k] for k in range(1, len(p))])


def divmod_poly(a: Sequence, b: Sequence):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / lb
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] -= c * bc
        r = trim(r)
    return trim(q), r


def rem(a: Sequence, b: Sequence) -> QPoly:
    return divmod_poly(a, b)[1]


def monic(p: Sequence) -> QPoly:
    p = trim(p)
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def gcd(a: Sequence, b: Sequence) -> QPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def sturm_chain(p: Sequence) -> List[QPoly]:
    chain = [trim(p), derivative(p)]
    while chain[-1]:
        r = rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def sign_changes(chain: Sequence[QPoly], x) -> int:
    signs = []
    for q in chain:
        v = evaluate(q, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_real_roots(p: Sequence, a, b) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    p = trim(p)
    if len(p) <= 1:
        return 0
    chain = sturm_chain(p)
    return sign_changes(chain, Fraction(a)) - sign_changes(chain, Fraction(b))


def is_palindromic(p: Sequence) -> bool:
    p = trim(p)
    return p == p[::-1]


def palindromic_to_trace_poly(p: Sequence) -> QPoly:
    """Write a palindromic p of degree 2m as z^m * P(z + 1/z) and return P.

    Uses z^k + z^-k = V_k(u) with V_0 = 2, V_1 = u, V_{k+1} = u V_k - V_{k-1}.
    """
    p = trim(p)
    if len(p) % 2 != 1 or not is_palindromic(p):
        raise ValueError("expected a palindromic polynomial of even degree")
    m = (len(p) - 1) // 2
    result: QPoly = [p[m]]
    v_prev: QPoly = [Fraction(2)]
    v_cur: QPoly = [Fraction(0), Fraction(1)]
    for k in range(1, m + 1):
        c = p[m + k]
        result = _add(result, [c * t for t in v_cur])
        v_next = _add([Fraction(0)] + v_cur, [-t for t in v_prev])
        v_prev, v_cur = v_cur, v_next
    return trim(result)


def _add(a: Sequence, b: Sequence) -> QPoly:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
