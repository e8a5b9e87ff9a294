import random
from fractions import Fraction

import pytest
import sympy as sp

from pretzel_surgery.poly import (IntPoly, alexander_minus2_pretzel, bracket, compact_form,
                                  count_real_roots, count_unit_circle_roots, cyclotomic,
                                  hyperbolicity_condition, is_reciprocal, poly_gcd, pretzel_q,
                                  salem_profile, simple_roots, strip_cyclotomic)

X = sp.Symbol("x")


def sympy_q(plist):
    """Expand the product formula symbolically, clearing the 1/[p_i] terms."""
    br = [sum(X ** i for i in range(p)) for p in plist]
    k = len(plist)
    prod = sp.prod(br)
    expr = prod * (X - k + 1) + sum(sp.prod(br[:j] + br[j + 1:]) for j in range(k))
    return [int(c) for c in reversed(sp.Poly(sp.expand(expr), X).all_coeffs())]


def P(*coeffs):
    return IntPoly(coeffs)


def test_bracket_small():
    assert bracket(1) == P(1)
    assert bracket(2) == P(1, 1)
    assert bracket(4) == P(1, 1, 1, 1)


def test_bracket_at_one():
    for n in range(1, 101):
        assert bracket(n)(1) == n


@pytest.mark.parametrize("n", [0, -3])
def test_bracket_rejects(n):
    with pytest.raises(ValueError):
        bracket(n)


def test_q_111():
    assert pretzel_q([1, 1, 1]) == P(1, 1)


def test_q_237_literal():
    # x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1
    assert pretzel_q([2, 3, 7]) == P(1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)


@pytest.mark.parametrize("plist", [[2, 3, 7], [2, 3, 9], [3, 5, 7], [2, 2, 2], [2, 3, 5, 7, 9],
                                   [1, 4, 6], [5]])
def test_q_matches_symbolic_expansion(plist):
    assert list(pretzel_q(plist).coeffs) == sympy_q(plist)


@pytest.mark.parametrize("s", range(3, 13))
def test_q_degree(s):
    assert pretzel_q([2, 3, 2 * s + 1]).degree == 2 * s + 4


@pytest.mark.parametrize("bad", [[2, 3], [2, 0, 3], [], [2, -3, 5]])
def test_q_rejects(bad):
    with pytest.raises(ValueError):
        pretzel_q(bad)


def test_alexander_237():
    assert alexander_minus2_pretzel([2, 3, 7]) == P(1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1)


@pytest.mark.parametrize("s", range(3, 13))
def test_alexander_degree_and_value_at_one(s):
    d = alexander_minus2_pretzel([2, 3, 2 * s + 1])
    assert d.degree == 2 * s + 4
    assert abs(d(1)) == 1
    assert d.coeffs[0] > 0
    # oracle: substitute -t into the symbolic Q
    q = sympy_q([2, 3, 2 * s + 1])
    sub = [c * (-1) ** i for i, c in enumerate(q)]
    if sub[0] < 0:
        sub = [-c for c in sub]
    assert list(d.coeffs) == sub


def test_reciprocal():
    assert is_reciprocal(pretzel_q([2, 3, 7]))
    assert not is_reciprocal(P(0, 1, 1))
    assert is_reciprocal(P(1))


def test_simple_roots():
    assert not simple_roots(P(1, -2, 1))
    assert simple_roots(pretzel_q([2, 3, 7]))
    assert simple_roots(P(-1, 0, 1))


def test_gcd_against_sympy():
    f = P(1, -2, 1) * P(2, 0, 1)
    g = P(-1, 1) * P(3, 1)
    ours = poly_gcd(f, g)
    theirs = sp.gcd(sp.Poly(list(reversed(f.coeffs)), X), sp.Poly(list(reversed(g.coeffs)), X))
    assert ours.degree == theirs.degree() == 1
    assert ours(1) == 0


def test_unit_circle_examples():
    assert count_unit_circle_roots(pretzel_q([2, 3, 7])) == 8
    assert count_unit_circle_roots(P(1, 0, 1)) == 2
    assert count_unit_circle_roots(P(-4, 0, 1)) == 0


def test_unit_circle_handles_plus_minus_one():
    # (x+1)(x-1)(x^2+1): odd factors at +-1 plus a pair
    f = P(1, 1) * P(-1, 1) * P(1, 0, 1)
    assert count_unit_circle_roots(f) == 4
    assert count_unit_circle_roots(P(1, 1)) == 1


def test_unit_circle_nonreciprocal_input():
    assert count_unit_circle_roots(P(1, 2, 3)) == 0
    # (x - 3)(x^2 + x + 1): only the cyclotomic pair lies on the circle
    assert count_unit_circle_roots(P(-3, 1) * P(1, 1, 1)) == 2
    assert count_unit_circle_roots(P(0, 1) * P(1, 0, 1)) == 2
    with pytest.raises(ValueError):
        count_unit_circle_roots(IntPoly())


def test_compact_form_roundtrip():
    f = pretzel_q([2, 3, 7])
    g = compact_form(f)
    assert g.degree == f.degree // 2
    # x^5 g(x + 1/x) == f(x), checked at a few rationals
    for x in (Fraction(2), Fraction(1, 3), Fraction(-5, 7)):
        y = x + 1 / x
        gv = sum(Fraction(c) * y ** i for i, c in enumerate(g.coeffs))
        assert x ** 5 * gv == f(x)


def test_unit_circle_against_numeric_roots():
    for s in range(3, 9):
        f = pretzel_q([2, 3, 2 * s + 1])
        roots = sp.Poly(list(reversed(f.coeffs)), X).nroots(n=30)
        on_circle = sum(1 for r in roots if abs(abs(complex(r)) - 1) < 1e-12)
        assert count_unit_circle_roots(f) == on_circle == 2 * s + 2


def test_cyclotomic_table():
    assert cyclotomic(1) == P(-1, 1)
    assert cyclotomic(6) == P(1, -1, 1)
    for n in range(1, 40):
        assert cyclotomic(n) == IntPoly(
            int(c) for c in reversed(sp.Poly(sp.cyclotomic_poly(n, X), X).all_coeffs()))


def test_strip_examples():
    assert strip_cyclotomic(P(1, -1, 1)) == ([(6, 1)], P(1))
    assert strip_cyclotomic(P(-1, 1)) == ([(1, 1)], P(1))
    q = pretzel_q([2, 3, 7])
    assert strip_cyclotomic(P(1, -1, 1) * q) == ([(6, 1)], q)


def test_strip_multiplicity_and_roundtrip():
    f = cyclotomic(3) ** 2 * cyclotomic(12) * P(1, -3, 1)
    factors, rem = strip_cyclotomic(f)
    assert factors == [(3, 2), (12, 1)]
    back = rem
    for n, m in factors:
        back = back * cyclotomic(n) ** m
    assert back == f


@pytest.mark.parametrize("s", range(3, 13))
def test_pretzel_family_structure(s):
    q = pretzel_q([2, 3, 2 * s + 1])
    assert is_reciprocal(q) and simple_roots(q)
    assert count_unit_circle_roots(q) == 2 * s + 2
    factors, rem = strip_cyclotomic(q)
    back = rem
    for n, m in factors:
        back = back * cyclotomic(n) ** m
    assert back == q
    prof = salem_profile(rem)
    assert prof.is_salem
    assert prof.n_real_gt1 == 1 and prof.n_real_in_01 == 1


def test_salem_examples():
    prof = salem_profile(pretzel_q([2, 3, 7]))
    assert (prof.n_unit_circle, prof.n_real_gt1, prof.n_real_in_01) == (8, 1, 1)
    prof = salem_profile(P(1, -3, 1))
    assert (prof.n_unit_circle, prof.n_real_gt1, prof.n_real_in_01) == (0, 1, 1)
    assert not prof.is_salem


def test_salem_rejects_cyclotomic_input():
    with pytest.raises(ValueError):
        salem_profile(P(1, 0, 1))


def test_hyperbolicity():
    assert hyperbolicity_condition([2, 3, 7])
    assert not hyperbolicity_condition([2, 3, 5])
    assert all(hyperbolicity_condition([2, 3, 2 * s + 1]) for s in range(3, 51))


def bisection_count(coeffs, tol=1e-9):
    """Real roots by scanning for sign changes, each refined by bisection."""
    f = lambda x: sum(c * x ** i for i, c in enumerate(coeffs))
    bound = 1 + max(abs(c) for c in coeffs[:-1]) / abs(coeffs[-1])
    n = 200_000
    xs = [-bound + 2 * bound * i / n for i in range(n + 1)]
    found = []
    prev = f(xs[0])
    for a, b in zip(xs, xs[1:]):
        fb = f(b)
        if prev == 0:
            found.append(a)
        elif prev * fb < 0:
            lo, hi = a, b
            while hi - lo > tol:
                mid = (lo + hi) / 2
                if f(lo) * f(mid) <= 0:
                    hi = mid
                else:
                    lo = mid
            found.append((lo + hi) / 2)
        prev = fb
    return len(found)


def test_sturm_matches_bisection_oracle():
    rng = random.Random(7)
    done = 0
    while done < 20:
        deg = rng.randint(1, 12)
        coeffs = [rng.randint(-6, 6) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        f = IntPoly(coeffs)
        if f.degree < 1 or not simple_roots(f) or f(0) == 0:
            continue
        done += 1
        assert count_real_roots(f) == bisection_count(list(f.coeffs))


def test_count_real_roots_intervals():
    f = P(-1, 0, 1) * P(-4, 1)   # roots -1, 1, 4
    assert count_real_roots(f) == 3
    assert count_real_roots(f, 0, None) == 2
    assert count_real_roots(f, -2, 2) == 2
    assert count_real_roots(f, 1, 4) == 0   # open interval


def test_json_roundtrip():
    f = pretzel_q([2, 3, 13])
    assert IntPoly.from_json(f.to_json()) == f
    assert f.to_json().startswith('["1"')
