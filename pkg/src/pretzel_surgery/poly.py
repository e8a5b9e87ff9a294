"""Exact integer polynomials and the root bookkeeping for pretzel polynomials.

Everything here is exact: coefficients are Python ints, and root counts
come from Sturm sequences evaluated at rational points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients lowest degree first.

    The zero polynomial has ``coeffs == ()`` and degree -1.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _trim(int(c) for c in coeffs)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> IntPoly:
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: IntPoly | int) -> IntPoly:
        return _coerce(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = _coerce(other)
        if not self or not other:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly:
        if n < 0:
            raise ValueError("negative power")
        result, base = IntPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod_exact(self, divisor: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division by a divisor whose leading coefficient is +-1."""
        if abs(divisor.lead) != 1:
            raise ValueError("divisor must be monic up to sign")
        rem = list(self.coeffs)
        dq = divisor.degree
        if len(rem) - 1 < dq:
            return IntPoly(), self
        quot = [0] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * divisor.lead  # lead is +-1, so this divides exactly
            if c:
                quot[i - dq] = c
                for j, d in enumerate(divisor.coeffs):
                    rem[i - dq + j] -= c * d
        return IntPoly(quot), IntPoly(rem)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def reversed(self) -> IntPoly:
        """x^deg * f(1/x)."""
        return IntPoly(reversed(self.coeffs))

    def substitute_neg(self) -> IntPoly:
        """f(-x)."""
        return IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        g = self.content()
        if g == 0:
            return self
        if self.lead < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def to_json_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def to_json(self) -> str:
        return json.dumps(self.to_json_list())

    @classmethod
    def from_json(cls, text: str) -> IntPoly:
        return cls(int(c) for c in json.loads(text))

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(v: IntPoly | int) -> IntPoly:
    return v if isinstance(v, IntPoly) else IntPoly.const(v)


# --- rational helpers (internal; Sturm and gcd run over Q) -----------------

QPoly = list  # list[Fraction], lowest degree first, trimmed


def _q(f: IntPoly) -> QPoly:
    return [Fraction(c) for c in f.coeffs]


def _qtrim(a: QPoly) -> QPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    if len(rem) < len(b):
        return [], _qtrim(rem)
    quot = [Fraction(0)] * (len(rem) - len(b) + 1)
    lb = b[-1]
    for i in range(len(rem) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lb
        quot[i] = c
        if c:
            for j, d in enumerate(b):
                rem[i + j] -= c * d
    return _qtrim(quot), _qtrim(rem[: len(b) - 1])


def _qgcd(a: QPoly, b: QPoly) -> QPoly:
    a, b = _qtrim(list(a)), _qtrim(list(b))
    while b:
        a, b = b, _qdivmod(a, b)[1]
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _qeval(a: QPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _to_int(a: QPoly) -> IntPoly:
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPoly(int(c * den) for c in a).primitive()


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient."""
    if not f and not g:
        return IntPoly()
    return _to_int(_qgcd(_q(f), _q(g)))


def squarefree_part(f: IntPoly) -> IntPoly:
    g = poly_gcd(f, f.derivative())
    if g.degree <= 0:
        return f.primitive()
    q, r = _qdivmod(_q(f), _q(g))
    assert not r
    return _to_int(q)


# --- the bracket and the pretzel polynomial --------------------------------


def bracket(n: int) -> IntPoly:
    """[n] = 1 + x + ... + x^(n-1)."""
    if n < 1:
        raise ValueError(f"bracket needs n >= 1, got {n}")
    return IntPoly([1] * n)


def _check_plist(p_list: Sequence[int]) -> list[int]:
    ps = [int(p) for p in p_list]
    if len(ps) % 2 == 0:
        raise ValueError(f"need an odd number of entries, got {len(ps)}")
    if any(p < 1 for p in ps):
        raise ValueError(f"entries must be positive: {ps}")
    return ps


def pretzel_q(p_list: Sequence[int]) -> IntPoly:
    """[p1]...[pk](x - k + 1) + sum_j prod_{i != j} [p_i], expanded."""
    ps = _check_plist(p_list)
    k = len(ps)
    brackets = [bracket(p) for p in ps]
    full = IntPoly.const(1)
    for b in brackets:
        full = full * b
    total = full * IntPoly((1 - k, 1))
    for j in range(k):
        term = IntPoly.const(1)
        for i, b in enumerate(brackets):
            if i != j:
                term = term * b
        total = total + term
    return total


def alexander_minus2_pretzel(p_list: Sequence[int]) -> IntPoly:
    """Alexander polynomial of the (-2, p2, ..., pk) pretzel knot.

    ``p_list`` is the full tuple ``(2, p2, ..., pk)``. The result is
    Q(-t) with its lowest coefficient made positive.
    """
    ps = _check_plist(p_list)
    if ps[0] != 2:
        raise ValueError(f"leading entry must be 2, got {ps[0]}")
    f = pretzel_q(ps).substitute_neg()
    low = next(c for c in f.coeffs if c)
    return -f if low < 0 else f


def hyperbolicity_condition(p_list: Sequence[int]) -> bool:
    """sum 1/p_i < k - 2, compared exactly."""
    ps = _check_plist(p_list)
    return sum(Fraction(1, p) for p in ps) < len(ps) - 2


# --- structural predicates -------------------------------------------------


def is_reciprocal(f: IntPoly) -> bool:
    return f.reversed() == f


def simple_roots(f: IntPoly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


# --- Sturm sequences --------------------------------------------------------


def sturm_sequence(f: IntPoly) -> list[QPoly]:
    seq = [_q(f), _q(f.derivative())]
    while seq[-1]:
        r = _qdivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _variations(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at(seq: list[QPoly], x) -> int:
    if x == "inf":
        return _variations(p[-1] for p in seq)
    if x == "-inf":
        return _variations(p[-1] * (-1) ** (len(p) - 1) for p in seq)
    return _variations(_qeval(p, x) for p in seq)


def count_real_roots(f: IntPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots in the open interval (lo, hi).

    ``None`` stands for -inf / +inf. Endpoints may be rational.
    """
    if not f:
        raise ValueError("zero polynomial has infinitely many roots")
    g = squarefree_part(f)
    qg = _q(g)
    for end in (lo, hi):
        if end is not None and _qeval(qg, Fraction(end)) == 0:
            qg = _qdivmod(qg, [-Fraction(end), Fraction(1)])[0]
    if len(qg) <= 1:
        return 0
    seq = sturm_sequence(_to_int(qg))
    a = "-inf" if lo is None else Fraction(lo)
    b = "inf" if hi is None else Fraction(hi)
    return _sign_at(seq, a) - _sign_at(seq, b)


# --- unit circle -------------------------------------------------------------


def compact_form(f: IntPoly) -> IntPoly:
    """g with f(x) = x^(d/2) g(x + 1/x), for even-degree reciprocal f."""
    if f.degree % 2 or not is_reciprocal(f):
        raise ValueError("compact form needs an even-degree reciprocal polynomial")
    rest = f
    h = f.degree // 2
    g = [0] * (h + 1)
    x2p1 = IntPoly((1, 0, 1))
    # peel the top coefficient: c x^h (x + 1/x)^j  ~  c x^(h-j) (x^2+1)^j
    while rest:
        j = rest.degree - h
        c = rest.lead
        g[j] = c
        rest = rest - IntPoly.monomial(h - j, c) * x2p1**j
    return IntPoly(g)


def count_unit_circle_roots(f: IntPoly) -> int:
    """Distinct roots of f on |x| = 1.

    A root on the circle satisfies 1/z = conj(z), so it is also a root of
    the reversed polynomial; for input that is not (anti-)reciprocal the
    count is taken on gcd(f, reversed f), which is.
    """
    if not f:
        raise ValueError("zero polynomial")
    rest = f
    if not is_reciprocal(f) and not is_reciprocal(-f):
        rest = poly_gcd(f, f.reversed())
    count = 0
    for root, lin in ((1, IntPoly((-1, 1))), (-1, IntPoly((1, 1)))):
        if rest(root) == 0:
            count += 1
            while rest(root) == 0:
                rest = rest.divmod_exact(lin)[0]
    # removing every +-1 factor leaves a reciprocal polynomial of even degree
    if rest.reversed() != rest:
        rest = -rest
    assert is_reciprocal(rest) and rest.degree % 2 == 0
    if rest.degree == 0:
        return count
    g = compact_form(rest)
    return count + 2 * count_real_roots(g, -2, 2)


# --- cyclotomic factors ------------------------------------------------------


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


_CYCLO: dict[int, IntPoly] = {}


def cyclotomic(n: int) -> IntPoly:
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    if n not in _CYCLO:
        f = IntPoly.monomial(n) - 1
        for d in range(1, n):
            if n % d == 0:
                f = f.divmod_exact(cyclotomic(d))[0]
        _CYCLO[n] = f
    return _CYCLO[n]


def strip_cyclotomic(f: IntPoly) -> tuple[list[tuple[int, int]], IntPoly]:
    """Divide out every cyclotomic factor; return ``([(n, mult)], remainder)``."""
    if not f:
        raise ValueError("zero polynomial")
    deg = f.degree
    factors = []
    rest = f
    for n in range(1, 2 * deg * deg + 7):
        if euler_phi(n) > rest.degree:
            continue
        phi = cyclotomic(n)
        mult = 0
        while rest.degree >= phi.degree:
            q, r = rest.divmod_exact(phi)
            if r:
                break
            rest, mult = q, mult + 1
        if mult:
            factors.append((n, mult))
    return factors, rest


# --- Salem profile -----------------------------------------------------------


@dataclass(frozen=True)
class RootProfile:
    n_unit_circle: int
    n_real_gt1: int
    n_real_in_01: int
    n_other: int
    all_simple: bool

    @property
    def is_salem(self) -> bool:
        return (
            self.all_simple
            and self.n_real_gt1 == 1
            and self.n_real_in_01 == 1
            and self.n_other == 0
            and self.n_unit_circle > 0
        )

    def as_dict(self) -> dict:
        return {
            "n_unit_circle": self.n_unit_circle,
            "n_real_gt1": self.n_real_gt1,
            "n_real_in_01": self.n_real_in_01,
            "n_other": self.n_other,
            "all_simple": self.all_simple,
            "is_salem": self.is_salem,
        }


def salem_profile(f: IntPoly) -> RootProfile:
    if f.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    factors, _ = strip_cyclotomic(f)
    if factors:
        raise ValueError(f"input still has cyclotomic factors {factors}")
    simple = simple_roots(f)
    gt1 = count_real_roots(f, 1, None)
    in01 = count_real_roots(f, 0, 1)
    if is_reciprocal(f) or is_reciprocal(-f):
        circle = count_unit_circle_roots(f)
    else:
        circle = 0
    other = f.degree - circle - gt1 - in01
    return RootProfile(circle, gt1, in01, other, simple)
