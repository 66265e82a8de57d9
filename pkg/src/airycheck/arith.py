"""Exact scalar arithmetic: F_p, F_{p^e}, cyclotomic integers, polynomials.

Prime-field elements are `FpElement`, extension fields are built from a
deterministic (lexicographically smallest) irreducible modulus, and values of
the additive character live in Z[zeta_p] with exact integer coordinates.
Floats appear only in `CyclotomicValue.embed`, which is used for analytic
bound checks, never for equality.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


class FpElement:
    """Element of the prime field F_p."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return FpElement(self.p, other)
        if isinstance(other, Fraction):
            num = FpElement(self.p, other.numerator)
            return num / FpElement(self.p, other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else FpElement(self.p, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else FpElement(self.p, self.v - o.v)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else FpElement(self.p, o.v - self.v)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else FpElement(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.p, self.v * pow(o.v, self.p - 2, self.p))

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else o / self

    def __neg__(self):
        return FpElement(self.p, -self.v)

    def __pow__(self, k: int):
        return FpElement(self.p, pow(self.v, k, self.p))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.v == other % self.p
        return isinstance(other, FpElement) and other.p == self.p and other.v == self.v

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class GF:
    """Field context for F_p; calling it coerces integers/Fractions."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, v) -> FpElement:
        if isinstance(v, FpElement):
            return v
        if isinstance(v, Fraction):
            return FpElement(self.p, 0)._lift(v)
        return FpElement(self.p, v)

    def elements(self):
        return [FpElement(self.p, v) for v in range(self.p)]

    def __repr__(self):
        return f"GF({self.p})"


def QQ(v) -> Fraction:
    return Fraction(v)


# ---------------------------------------------------------------------------
# Polynomials over F_p (coefficient lists, low degree first) and F_{p^e}.

def _poly_mod(a, m, p):
    a = [x % p for x in a]
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return a + [0] * (dm - len(a))


def _poly_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else [0]
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_mod(out, m, p)


def _poly_powmod(a, k, m, p):
    res = _poly_mod([1], m, p)
    base = _poly_mod(list(a), m, p)
    while k:
        if k & 1:
            res = _poly_mulmod(res, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        k >>= 1
    return res


def _poly_gcd(a, b, p):
    a, b = [x % p for x in a], [x % p for x in b]

    def deg(c):
        d = len(c) - 1
        while d >= 0 and c[d] == 0:
            d -= 1
        return d

    while deg(b) >= 0:
        da, db = deg(a), deg(b)
        if da < db:
            a, b = b, a
            continue
        inv = pow(b[db], p - 2, p)
        c = (a[da] * inv) % p
        for i in range(db + 1):
            a[da - db + i] = (a[da - db + i] - c * b[i]) % p
        a, b = b, a[: deg(a) + 1] or [0]
        a, b = b, a  # undo the swap; keep reducing a by b
        a, b = b, a
    return a[: deg(a) + 1] or [0]


def _is_irreducible(m, p):
    """Rabin test for a monic modulus over F_p."""
    e = len(m) - 1
    x = [0, 1]
    xq = _poly_powmod(x, p ** e, m, p)
    diff = [(a - b) % p for a, b in zip(xq + [0] * 2, x + [0] * len(m))][: len(m) - 1]
    if any(diff):
        return False
    for r in {d for d in range(2, e + 1) if is_prime(d) and e % d == 0}:
        xr = _poly_powmod(x, p ** (e // r), m, p)
        diff = [(a - b) % p for a, b in zip(xr + [0] * 2, x + [0] * len(m))][: len(m) - 1]
        g = _poly_gcd(m, diff + [0], p)
        if len(g) - 1 != 0:
            return False
    return True


@lru_cache(maxsize=None)
def lex_least_irreducible(p: int, e: int):
    """Lexicographically smallest monic irreducible of degree e over F_p."""
    if e == 1:
        return (0, 1)
    # lex order on (c_0, c_1, ..., c_{e-1}) of x^e + c_{e-1}x^{e-1} + ... + c_0
    total = p ** e
    for idx in range(total):
        coeffs = []
        k = idx
        for _ in range(e):
            coeffs.append(k % p)
            k //= p
        m = coeffs + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


class FqField:
    """The field F_{p^e} with a deterministic modulus."""

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = lex_least_irreducible(p, e)
        self._log = None  # lazy discrete-log tables for fast multiplication

    def _log_tables(self):
        if self._log is None:
            m, p = list(self.modulus), self.p
            one = (1,) + (0,) * (self.e - 1)
            for gidx in range(2, self.q):
                g = list(self.from_index(gidx).coeffs)
                exp = [one]
                cur = one
                while True:
                    nxt = _poly_mulmod(list(cur), g, m, p)
                    cur = tuple(nxt + [0] * (self.e - len(nxt)))
                    if cur == one:
                        break
                    exp.append(cur)
                if len(exp) == self.q - 1:
                    self._log = ({c: i for i, c in enumerate(exp)}, exp)
                    break
        return self._log

    def __call__(self, v) -> "FqElement":
        if isinstance(v, FqElement):
            if v.field is not self and (v.field.p, v.field.e) != (self.p, self.e):
                raise ValueError("element from a different field")
            return FqElement(self, v.coeffs)
        if isinstance(v, FpElement):
            if v.p != self.p:
                raise ValueError("mixed characteristics")
            return FqElement(self, (v.v,) + (0,) * (self.e - 1))
        if isinstance(v, Fraction):
            return self(v.numerator) / self(v.denominator)
        return FqElement(self, (v % self.p,) + (0,) * (self.e - 1))

    def from_coeffs(self, coeffs) -> "FqElement":
        c = [x % self.p for x in coeffs]
        if len(c) > self.e:
            c = _poly_mod(c, list(self.modulus), self.p)
        return FqElement(self, tuple(c + [0] * (self.e - len(c))))

    def from_index(self, idx: int) -> "FqElement":
        coeffs = []
        for _ in range(self.e):
            coeffs.append(idx % self.p)
            idx //= self.p
        return FqElement(self, tuple(coeffs))

    def elements(self):
        return [self.from_index(i) for i in range(self.q)]

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"FqField({self.p}, {self.e})"


class FqElement:
    """Element of F_{p^e}, a length-e coefficient vector mod the modulus."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs):
        self.field = field
        self.coeffs = tuple(c % field.p for c in coeffs)

    @classmethod
    def _raw(cls, field, coeffs):
        # fast path for coefficient tuples already reduced mod p
        el = object.__new__(cls)
        el.field = field
        el.coeffs = coeffs
        return el

    def _lift(self, other):
        if isinstance(other, FqElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, (int, FpElement, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FqElement._raw(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FqElement._raw(
            self.field, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        if not (self and o):
            return FqElement._raw(f, (0,) * f.e)
        log, exp = f._log_tables()
        return FqElement._raw(f, exp[(log[self.coeffs] + log[o.coeffs]) % (f.q - 1)])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        f = self.field
        if not self:
            if k < 0:
                raise ZeroDivisionError("division by zero in F_q")
            return f(1) if k == 0 else self
        log, exp = f._log_tables()
        return FqElement._raw(f, exp[(log[self.coeffs] * k) % (f.q - 1)])

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in F_q")
        f = self.field
        log, exp = f._log_tables()
        return FqElement._raw(f, exp[-log[self.coeffs] % (f.q - 1)])

    def __truediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else o * self.inverse()

    def __neg__(self):
        return FqElement(self.field, [-c for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field(other)
        return (
            isinstance(other, FqElement)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def frobenius(self) -> "FqElement":
        return self ** self.field.p

    def trace(self) -> int:
        """Field trace down to F_p, returned as an integer in [0, p)."""
        acc = self
        x = self
        for _ in range(self.field.e - 1):
            x = x.frobenius()
            acc = acc + x
        assert all(c == 0 for c in acc.coeffs[1:]), "trace not in the prime field"
        return acc.coeffs[0]

    def __repr__(self):
        return f"Fq({self.field.p}^{self.field.e}){list(self.coeffs)}"


def field_trace(x: FqElement) -> int:
    return x.trace()


# ---------------------------------------------------------------------------
# Cyclotomic integers Z[zeta_p].

class CyclotomicValue:
    """Exact element of Z[zeta_p] in the basis 1, zeta, ..., zeta^(p-2)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=None):
        self.p = p
        if coeffs is None:
            coeffs = (0,) * (p - 1)
        c = list(coeffs)
        if len(c) != p - 1:
            raise ValueError("coefficient vector must have length p-1")
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, p: int):
        return cls(p)

    @classmethod
    def one(cls, p: int):
        return cls(p, (1,) + (0,) * (p - 2))

    @classmethod
    def zeta_pow(cls, p: int, k: int):
        k %= p
        if k < p - 1:
            c = [0] * (p - 1)
            c[k] = 1
            return cls(p, c)
        # zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
        return cls(p, [-1] * (p - 1))

    def _check(self, other):
        if not isinstance(other, CyclotomicValue):
            raise TypeError("expected a CyclotomicValue")
        if other.p != self.p:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other):
        self._check(other)
        return CyclotomicValue(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return CyclotomicValue(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CyclotomicValue(self.p, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicValue(self.p, [a * other for a in self.coeffs])
        self._check(other)
        p = self.p
        raw = [0] * (2 * p - 3)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    raw[i + j] += a * b
        out = [0] * (p - 1)
        for k, c in enumerate(raw):
            if not c:
                continue
            k %= p
            if k < p - 1:
                out[k] += c
            else:
                for i in range(p - 1):
                    out[i] -= c
        return CyclotomicValue(p, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, CyclotomicValue)
            and other.p == self.p
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def galois(self, k: int) -> "CyclotomicValue":
        """Apply the automorphism zeta -> zeta^k, gcd(k, p) = 1."""
        out = CyclotomicValue.zero(self.p)
        for i, a in enumerate(self.coeffs):
            if a:
                out = out + CyclotomicValue.zeta_pow(self.p, i * k) * a
        return out

    def embed(self) -> complex:
        """Complex embedding zeta -> exp(2*pi*i/p), double precision."""
        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(a * z ** i for i, a in enumerate(self.coeffs) if a) + 0j

    def __repr__(self):
        return f"Cyc({self.p}){list(self.coeffs)}"


def psi(p: int, x) -> CyclotomicValue:
    """Additive character of F_p valued in Z[zeta_p]: x -> zeta_p^x."""
    if isinstance(x, FpElement):
        x = x.v
    if isinstance(x, FqElement):
        x = x.trace()
    return CyclotomicValue.zeta_pow(p, x)


def psi_trace(p: int, x) -> CyclotomicValue:
    """psi composed with the field trace, for extension-field arguments."""
    return psi(p, x)


def complex_embed(v: CyclotomicValue) -> complex:
    return v.embed()


# ---------------------------------------------------------------------------
# Multivariate polynomials with exact coefficients.

class MultiPoly:
    """Sparse multivariate polynomial over an exact scalar ring.

    Terms map exponent tuples (aligned with `variables`) to nonzero
    coefficients. Coefficients are whatever the caller supplies (Fraction,
    FpElement, FqElement); mixing works as long as the scalars interoperate.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        self.terms = {}
        if terms:
            for expo, c in terms.items():
                if c:
                    self.terms[tuple(expo)] = c

    @classmethod
    def const(cls, variables, c):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables, name, one=Fraction(1)):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): one})

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable lists differ")
            return other
        return MultiPoly.const(self.variables, other)

    def __add__(self, other):
        o = self._coerce(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            s = t.get(e)
            t[e] = c if s is None else s + c
        return MultiPoly(self.variables, t)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = t.get(e)
                t[e] = c if s is None else s + c
        return MultiPoly(self.variables, t)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return MultiPoly(self.variables, {e: c / scalar for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.variables, other)
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), 0)

    def coefficient(self, name):
        """Coefficient of the degree-1 monomial in `name` (other vars absent)."""
        i = self.variables.index(name)
        e = [0] * len(self.variables)
        e[i] = 1
        return self.terms.get(tuple(e), 0)

    def evaluate(self, values: dict):
        """Full evaluation; every variable must be assigned a scalar."""
        acc = None
        for e, c in self.terms.items():
            term = c
            for name, k in zip(self.variables, e):
                for _ in range(k):
                    term = term * values[name]
            acc = term if acc is None else acc + term
        return 0 if acc is None else acc

    def substitute(self, mapping: dict) -> "MultiPoly":
        """Substitute MultiPolys (or scalars) for some of the variables."""
        out = MultiPoly(self.variables)
        for e, c in self.terms.items():
            term = MultiPoly.const(self.variables, c)
            for name, k in zip(self.variables, e):
                if k == 0:
                    continue
                rep = mapping.get(name)
                if rep is None:
                    rep = MultiPoly.var(self.variables, name, Fraction(1))
                elif not isinstance(rep, MultiPoly):
                    rep = MultiPoly.const(self.variables, rep)
                for _ in range(k):
                    term = term * rep
            out = out + term
        return out

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.variables, e)
                if k
            )
            parts.append(f"({c})" + ("*" + mono if mono else ""))
        return " + ".join(parts)


def invert_triangular(polys, in_vars, out_vars):
    """Invert a triangular polynomial system y_i = c_i x_i + g_i(x_1..x_{i-1}).

    `polys[i]` expresses out_vars[i] in terms of in_vars (over the combined
    variable list), with an invertible linear pivot in in_vars[i] and lower
    terms only in in_vars[:i]. Returns polynomials giving each in_var in the
    out_vars. Raises ValueError on a non-unit pivot.
    """
    allvars = tuple(in_vars) + tuple(out_vars)
    inv = {}
    for i, (xv, yv) in enumerate(zip(in_vars, out_vars)):
        poly = polys[i]
        if poly.variables != allvars:
            poly = MultiPoly(allvars, {
                tuple(e[list(poly.variables).index(v)] if v in poly.variables else 0
                      for v in allvars): c
                for e, c in poly.terms.items()
            })
        c = poly.coefficient(xv)
        if not c:
            raise ValueError(f"non-unit pivot for {xv}")
        rest = poly - MultiPoly.var(allvars, xv, Fraction(1)) * c
        # x_i = (y_i - rest(x_1..x_{i-1})) / c, then push through known inverses
        expr = (MultiPoly.var(allvars, yv, Fraction(1)) - rest.substitute(inv)) / c
        inv[xv] = expr
    return [inv[xv] for xv in in_vars]
