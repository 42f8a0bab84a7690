"""Exact polynomials over Q in x, y, z and arithmetic in T = Q[x,y,z]/(z^2 - f).

Monomials are exponent triples ``(ex, ey, ez)``; terms print in lex order with
z > y > x. The text grammar accepts integers, rationals written ``a/b``,
``+ - * ^`` and parentheses, e.g. ``(x-1)^2*(x-2)^4``; ``str`` output parses
back to the same polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Union

VARS = ("x", "y", "z")
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}

Scalar = Union[int, Fraction]


class PolynomialError(ValueError):
    pass


class NotDivisibleError(PolynomialError):
    pass


_PACK = 1 << 20  # exponent bound for packed multiplication


def _order_key(mono):
    ex, ey, ez = mono
    return (ez, ey, ex)


class Poly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int, int], Scalar] | None = None):
        # integral coefficients are kept as int, which is much faster than Fraction
        clean = {}
        for mono, c in (terms or {}).items():
            if type(c) is not int:
                c = Fraction(c)
                if c.denominator == 1:
                    c = c.numerator
            if c:
                clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # terms already normalized except for zero entries
        out = cls.__new__(cls)
        out._terms = {m: c for m, c in terms.items() if c}
        out._hash = None
        return out

    # construction
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        e = [0, 0, 0]
        e[_VAR_INDEX[name]] = 1
        return cls({tuple(e): 1})

    @classmethod
    def coerce(cls, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.const(other)
        if isinstance(other, str):
            return parse(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to Poly")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == (0, 0, 0) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolynomialError(f"{self} is not constant")
        return Fraction(self._terms.get((0, 0, 0), 0))

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if None); -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(m) for m in self._terms)
        i = _VAR_INDEX[var]
        return max(m[i] for m in self._terms)

    def variables(self) -> set[str]:
        return {VARS[i] for m in self._terms for i in range(3) if m[i]}

    def leading(self) -> tuple[tuple[int, int, int], Fraction]:
        if not self._terms:
            raise PolynomialError("zero polynomial has no leading term")
        mono = max(self._terms, key=_order_key)
        return mono, Fraction(self._terms[mono])

    # arithmetic
    def __add__(self, other):
        other = Poly.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly._finish(out)

    __radd__ = __add__

    @classmethod
    def _finish(cls, out: dict) -> "Poly":
        for m, c in out.items():
            if type(c) is not int and c.denominator == 1:
                out[m] = c.numerator
        return cls._raw(out)

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        other = Poly.coerce(other)
        # pack exponents into one int so the inner loop adds ints, not tuples
        b = _PACK
        left = [(m[0] + b * (m[1] + b * m[2]), c) for m, c in self._terms.items()]
        right = [(m[0] + b * (m[1] + b * m[2]), c) for m, c in other._terms.items()]
        acc: dict = {}
        get = acc.get
        for k1, c1 in left:
            for k2, c2 in right:
                k = k1 + k2
                acc[k] = get(k, 0) + c1 * c2
        out = {}
        for k, c in acc.items():
            ex, rest = k % b, k // b
            out[(ex, rest % b, rest // b)] = c
        return Poly._finish(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolynomialError("negative power")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        return Poly({m: c * v for m, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for k, (mono, c) in enumerate(self.items()):
            factors = []
            for name, e in zip(VARS, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{_fmt(mag)}*{body}"
            else:
                body = _fmt(mag)
            if k == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    # substitution and evaluation
    def substitute(self, values: Mapping[str, "Poly | Scalar"]) -> "Poly":
        """Replace variables by polynomials (or scalars) simultaneously."""
        subs = [Poly.coerce(values[v]) if v in values else Poly.var(v) for v in VARS]
        powers: dict = {}

        def pw(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = subs[i] ** e
            return powers[key]

        result = Poly()
        for mono, c in self._terms.items():
            term = Poly.const(c)
            for i, e in enumerate(mono):
                if e:
                    term = term * pw(i, e)
            result = result + term
        return result

    def evaluate(self, **values: Scalar) -> "Poly":
        return self.substitute(values)

    def coefficients_in(self, var: str) -> list["Poly"]:
        """Coefficients of ``var^0, var^1, ...`` as polynomials in the other variables."""
        i = _VAR_INDEX[var]
        deg = self.degree(var)
        coeffs = [dict() for _ in range(deg + 1)]
        for mono, c in self._terms.items():
            rest = list(mono)
            rest[i] = 0
            coeffs[mono[i]][tuple(rest)] = c
        return [Poly(c) for c in coeffs]

    def derivative(self, var: str) -> "Poly":
        i = _VAR_INDEX[var]
        out = {}
        for mono, c in self._terms.items():
            if mono[i]:
                m = list(mono)
                m[i] -= 1
                out[tuple(m)] = c * mono[i]
        return Poly(out)

    def content_normalized(self) -> "Poly":
        """Scale so the leading coefficient is 1."""
        if self.is_zero():
            return self
        return self.scale(1 / self.leading()[1])  # leading() is a Fraction


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


X = Poly.var("x")
Y = Poly.var("y")
Z = Poly.var("z")


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, var, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif var is not None:
            tokens.append(("var", var))
        elif op and not op.isspace():
            if op not in "+-*^()/":
                raise PolynomialError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise PolynomialError(f"parse error near token {self.i} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self):
        node = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            node = node * self.factor()
        return node

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        if self.peek() == ("op", "+"):
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exp = int(self.take("num")[1])
            base = base ** exp
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            q = Fraction(int(val))
            if self.peek() == ("op", "/"):
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise PolynomialError("zero denominator")
                q = q / den
            return Poly.const(q)
        if kind == "var":
            self.take()
            return Poly.var(val)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise PolynomialError(f"parse error near token {self.i} in {self.text!r}")


def parse(text: str) -> Poly:
    p = _Parser(text)
    if not p.toks:
        raise PolynomialError("empty polynomial")
    node = p.expr()
    if p.i != len(p.toks):
        raise PolynomialError(f"trailing input in {text!r}")
    return node


# ---------------------------------------------------------------- division

def divrem(p: Poly, q: Poly, var: str = "x") -> tuple[Poly, Poly]:
    """Univariate division with remainder in ``var``."""
    p, q = Poly.coerce(p), Poly.coerce(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    for poly in (p, q):
        if poly.variables() - {var}:
            raise PolynomialError("divrem needs univariate inputs")
    i = _VAR_INDEX[var]
    dq = q.degree(var)
    lc = q.coefficients_in(var)[dq].constant_value()
    quot = Poly()
    rem = p
    while not rem.is_zero() and rem.degree(var) >= dq:
        dr = rem.degree(var)
        c = rem.coefficients_in(var)[dr].constant_value() / lc
        e = [0, 0, 0]
        e[i] = dr - dq
        t = Poly({tuple(e): c})
        quot = quot + t
        rem = rem - t * q
    return quot, rem


def exact_divide(p: Poly, q: Poly) -> Poly:
    """``p / q`` when ``q`` divides ``p`` in Q[x,y,z]; raises NotDivisibleError otherwise."""
    p, q = Poly.coerce(p), Poly.coerce(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = q.leading()
    quot = Poly()
    rem = p
    while not rem.is_zero():
        m, c = rem.leading()
        if any(a < b for a, b in zip(m, lm)):
            raise NotDivisibleError(f"{q} does not divide {p}")
        t = Poly({tuple(a - b for a, b in zip(m, lm)): c / lc})
        quot = quot + t
        rem = rem - t * q
    return quot


def divides(q: Poly, p: Poly) -> bool:
    try:
        exact_divide(p, q)
    except NotDivisibleError:
        return False
    return True


def gcd_univariate(p: Poly, q: Poly, var: str = "x") -> Poly:
    p, q = Poly.coerce(p), Poly.coerce(q)
    while not q.is_zero():
        p, q = q, divrem(p, q, var)[1]
    return p.content_normalized()


def is_squarefree(p: Poly, var: str = "x") -> bool:
    return gcd_univariate(p, p.derivative(var), var).is_constant()


# ---------------------------------------------------------------- resultants

def _det_poly(M: list[list[Poly]]) -> Poly:
    """Determinant over Q[x,y,z] by Bareiss elimination with exact division."""
    n = len(M)
    if n == 0:
        return Poly.const(1)
    A = [list(row) for row in M]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return Poly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = exact_divide(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    return A[n - 1][n - 1].scale(sign)


def sylvester_matrix(g: Poly, h: Poly, var: str) -> list[list[Poly]]:
    a = g.coefficients_in(var)[::-1]
    b = h.coefficients_in(var)[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Poly()] * i + a + [Poly()] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Poly()] * i + b + [Poly()] * (size - n - 1 - i))
    return rows


def resultant(g: Poly, h: Poly, var: str) -> Poly:
    """Classical (Sylvester) resultant of ``g`` and ``h`` eliminating ``var``."""
    g, h = Poly.coerce(g), Poly.coerce(h)
    if g.is_zero() or h.is_zero():
        return Poly()
    if g.degree(var) <= 0 and h.degree(var) <= 0:
        raise PolynomialError(f"both inputs are constant in {var}")
    if g.degree(var) == 0:
        return g ** h.degree(var)
    if h.degree(var) == 0:
        return h ** g.degree(var)
    return _det_poly(sylvester_matrix(g, h, var))


# ---------------------------------------------------------------- roots

def root_multiplicity(p: Poly, lam: Scalar, var: str = "x") -> int:
    """Largest m with (var - lam)^m dividing the univariate polynomial p."""
    p = Poly.coerce(p)
    if p.is_zero():
        raise PolynomialError("multiplicity of a root of the zero polynomial")
    lin = Poly.var(var) - Fraction(lam)
    m = 0
    while True:
        q, r = divrem(p, lin, var)
        if not r.is_zero():
            return m
        p = q
        m += 1


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly, var: str = "x") -> dict[Fraction, int]:
    """Rational roots of a univariate polynomial with their multiplicities."""
    p = Poly.coerce(p)
    if p.is_zero():
        raise PolynomialError("roots of the zero polynomial")
    coeffs = [c.constant_value() for c in p.coefficients_in(var)]
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in coeffs), 1)
    ints = [int(c * den) for c in coeffs]
    roots: dict[Fraction, int] = {}
    low = next(k for k, c in enumerate(ints) if c)
    if low:
        roots[Fraction(0)] = low
    ints = ints[low:]
    if len(ints) > 1:
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                for s in (1, -1):
                    r = Fraction(s * a, b)
                    if r not in roots and sum(c * r ** k for k, c in enumerate(ints)) == 0:
                        roots[r] = root_multiplicity(p, r, var)
    return dict(sorted(roots.items()))


# ---------------------------------------------------------------- the ring T

def _check_base(f: Poly) -> None:
    if f.degree("z") > 0:
        raise PolynomialError(f"defining polynomial {f} must not involve z")


def t_reduce(p: Poly, f: Poly) -> Poly:
    """Normal form in T = Q[x,y,z]/(z^2 - f): z-degree at most 1."""
    p, f = Poly.coerce(p), Poly.coerce(f)
    _check_base(f)
    if p.degree("z") <= 1:
        return p
    out = Poly()
    fpow = {0: Poly.const(1)}
    for k, c in enumerate(p.coefficients_in("z")):
        if c.is_zero():
            continue
        h = k // 2
        if h not in fpow:
            fpow[h] = f ** h
        out = out + c * fpow[h] * (Z if k % 2 else 1)
    return out


def t_mul(a: Poly, b: Poly, f: Poly) -> Poly:
    return t_reduce(Poly.coerce(a) * Poly.coerce(b), f)


def sigma(p: Poly) -> Poly:
    """The Galois involution z -> -z."""
    return Poly({(ex, ey, ez): c * (-1) ** ez for (ex, ey, ez), c in p.terms.items()})


def t_split(p: Poly, f: Poly) -> tuple[Poly, Poly]:
    """``(p0, p1)`` with ``p = p0 + z*p1`` in normal form."""
    c = t_reduce(p, f).coefficients_in("z")
    c += [Poly()] * (2 - len(c))
    return c[0], c[1]


def proportional(p: Poly, q: Poly) -> Fraction | None:
    """The scalar c with p == c*q, or None."""
    if q.is_zero():
        return Fraction(0) if p.is_zero() else None
    m, lc = q.leading()
    c = Fraction(p.terms.get(m, 0)) / lc
    return c if p == q.scale(c) else None


# ---------------------------------------------------------------- hyperelliptic data

@dataclass(frozen=True)
class HyperellipticSpec:
    """p(x) = prod (x - roots[i])^mults[i] with distinct rational roots."""

    roots: tuple[Fraction, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(Fraction(r) for r in self.roots))
        object.__setattr__(self, "mults", tuple(int(e) for e in self.mults))
        if len(self.roots) != len(self.mults):
            raise ValueError("roots and multiplicities differ in length")
        if not self.roots:
            raise ValueError("need at least one root")
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("roots must be pairwise distinct")
        if any(e < 1 for e in self.mults):
            raise ValueError("multiplicities must be positive")

    @classmethod
    def from_poly(cls, p: Poly | str) -> "HyperellipticSpec":
        p = Poly.coerce(p)
        if p.variables() - {"x"}:
            raise ValueError(f"p(x) must be univariate in x, got {p}")
        lc = p.coefficients_in("x")[-1].constant_value() if not p.is_zero() else 0
        if lc != 1:
            raise ValueError(f"p(x) must be monic, got leading coefficient {lc}")
        roots = rational_roots(p)
        if sum(roots.values()) != p.degree("x"):
            raise ValueError(f"{p} does not split into rational linear factors")
        return cls(tuple(roots), tuple(roots.values()))

    @classmethod
    def from_mults(cls, mults: Iterable[int], roots: Iterable[Scalar] | None = None):
        mults = tuple(mults)
        roots = tuple(roots) if roots is not None else tuple(range(1, len(mults) + 1))
        return cls(roots, mults)

    @property
    def v(self) -> int:
        return len(self.roots)

    @property
    def D(self) -> int:
        return reduce(gcd, self.mults)

    @property
    def degree(self) -> int:
        return sum(self.mults)

    def ell(self, i: int) -> Poly:
        """The linear factor x - alpha_i (0-based index)."""
        if not 0 <= i < self.v:
            raise IndexError(f"branch index {i} out of range 0..{self.v - 1}")
        return X - self.roots[i]

    @property
    def p(self) -> Poly:
        out = Poly.const(1)
        for i, e in enumerate(self.mults):
            out = out * self.ell(i) ** e
        return out

    @property
    def q(self) -> Poly:
        """Square root of p, defined when D is even."""
        if self.D % 2:
            raise ValueError("p is not a square when D is odd")
        out = Poly.const(1)
        for i, e in enumerate(self.mults):
            out = out * self.ell(i) ** (e // 2)
        return out

    @property
    def f(self) -> Poly:
        return Y ** 2 - self.p

    def shifted(self, c: Scalar) -> "HyperellipticSpec":
        return HyperellipticSpec(tuple(r + c for r in self.roots), self.mults)

    def permuted(self, order: Iterable[int]) -> "HyperellipticSpec":
        order = list(order)
        return HyperellipticSpec(tuple(self.roots[i] for i in order),
                                 tuple(self.mults[i] for i in order))

    def to_json(self) -> dict:
        return {"p": str(self.p), "roots": [str(r) for r in self.roots],
                "mults": list(self.mults), "v": self.v, "D": self.D}


def linear_form(a: Scalar, b: Scalar) -> Poly:
    return X.scale(Fraction(a)) + Y.scale(Fraction(b))


def grading_check(n: int, f: Poly) -> tuple[int, int, int, int]:
    """Weights ``(w_x, w_y, w_z, total)`` making z^2 - f weighted homogeneous.

    n even uses (1, 1, n/2; n), n odd uses (2, 2, n; 2n). Raises if f is not a
    form of degree n in x, y.
    """
    f = Poly.coerce(f)
    if f.degree("z") > 0 or f.is_zero():
        raise PolynomialError("f must be a nonzero polynomial in x, y")
    if any(m[0] + m[1] != n for m in f.terms):
        raise PolynomialError(f"f is not homogeneous of degree {n} in x, y")
    weights = (1, 1, n // 2, n) if n % 2 == 0 else (2, 2, n, 2 * n)
    wx, wy, wz, total = weights
    h = Z ** 2 - f
    for (ex, ey, ez) in h.terms:
        if ex * wx + ey * wy + ez * wz != total:
            raise PolynomialError("z^2 - f is not weighted homogeneous")
    return weights
