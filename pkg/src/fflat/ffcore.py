"""Exact arithmetic over F_q, F_q[x], F_q(x), and truncated F_q((1/x)).

Conventions used throughout the package:

* Field elements are plain ints in [0, q).  For q = p^k the int encodes
  the coefficient vector of the residue class in t, lowest digit first:
  n = a_0 + a_1*p + ... + a_{k-1}*p^(k-1).  Arithmetic is computed
  directly in F_p[t] modulo the defining polynomial; no tables.
* Polynomials store coefficient tuples lowest degree first with no
  trailing zeros.  The zero polynomial has an empty tuple and degree -1.
* Rational functions are kept canonical: gcd(num, den) = 1, den monic.
* Laurent series in 1/x are truncated expansions: a coefficient tuple
  for exponents `top` down to `floor`, highest first, plus an `exact`
  flag meaning every omitted lower coefficient is zero.  Arithmetic
  never fabricates knowledge below the soundly derivable floor.
* Absolute values, norms and volumes live in the value group
  q^Z union {0}; QExp carries the integer exponent, None for the 0.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InsufficientPrecision, ParseError


# --- prime fields and their extensions ---------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for m in range(2, int(n**0.5) + 1):
        if n % m == 0:
            return False
    return True


def _fp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by b over F_p; b nonzero, coefficients lowest first."""
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _fp_trim(a)
    return a


class GF:
    """The finite field F_q, q = p^k, with int-encoded elements.

    `modulus` is the defining polynomial over F_p (lowest first, monic,
    length k+1); it is required exactly when k > 1 and is checked for
    irreducibility by trial division.
    """

    __slots__ = ("p", "k", "q", "modulus")

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not _is_prime(p) or p > 17:
            raise ParseError(f"field characteristic must be a prime <= 17, got {p}")
        if k < 1:
            raise ParseError(f"extension degree must be >= 1, got {k}")
        q = p**k
        if q > 2**16:
            raise ParseError(f"field size {q} exceeds the 2^16 ceiling")
        if k == 1:
            if modulus is not None and list(modulus) != [0, 1]:
                raise ParseError("modulus is only meaningful for k > 1")
            modulus = (0, 1)
        else:
            if modulus is None:
                raise ParseError(f"extension field F_{p}^{k} needs a modulus")
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] == 0:
                raise ParseError(f"modulus must have degree {k}")
            if modulus[-1] != 1:
                inv = pow(modulus[-1], p - 2, p)
                modulus = tuple(c * inv % p for c in modulus)
            if not self._irreducible(list(modulus), p):
                raise ParseError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus

    @staticmethod
    def _irreducible(m: list[int], p: int) -> bool:
        deg = len(m) - 1
        for d in range(1, deg // 2 + 1):
            # all monic divisor candidates of degree d
            for n in range(p**d):
                cand = []
                v = n
                for _ in range(d):
                    cand.append(v % p)
                    v //= p
                cand.append(1)
                if not _fp_mod(m, cand, p):
                    return False
        return True

    # -- encoding --

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def undigits(self, ds) -> int:
        n = 0
        for d in reversed(list(ds)):
            n = n * self.p + d % self.p
        return n

    def from_int(self, c: int) -> int:
        """Embed an ordinary integer via its residue mod p."""
        return c % self.p

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic on encoded elements --

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self.digits(a), self.digits(b)
        return self.undigits((x + y) % self.p for x, y in zip(da, db))

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        da, db = self.digits(a), self.digits(b)
        return self.undigits((x - y) % self.p for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.undigits(-x % self.p for x in self.digits(a))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        prod = _fp_mod(prod, list(self.modulus), self.p)
        return self.undigits(prod + [0] * (self.k - len(prod)))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.q})" if self.k == 1 else f"GF({self.p}^{self.k})"


# --- exponents in the value group q^Z union {0} ------------------------


class QExp:
    """An element of q^Z union {0}: the exponent, or None for the value 0.

    Ordered with 0 below every power; multiplication adds exponents.
    The comparison and arithmetic never need to know q itself.
    """

    __slots__ = ("exp",)

    def __init__(self, exp):
        self.exp = exp if exp is None else int(exp)

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    def __mul__(self, other: "QExp") -> "QExp":
        if self.exp is None or other.exp is None:
            return QExp(None)
        return QExp(self.exp + other.exp)

    def __truediv__(self, other: "QExp") -> "QExp":
        if other.exp is None:
            raise ZeroDivisionError("division by the zero value")
        if self.exp is None:
            return QExp(None)
        return QExp(self.exp - other.exp)

    def _key(self, other):
        if not isinstance(other, QExp):
            return NotImplemented
        return other

    def __eq__(self, other):
        if not isinstance(other, QExp):
            return NotImplemented
        return self.exp == other.exp

    def __lt__(self, other: "QExp") -> bool:
        if other.exp is None:
            return False
        if self.exp is None:
            return True
        return self.exp < other.exp

    def __le__(self, other: "QExp") -> bool:
        return self == other or self < other

    def __gt__(self, other: "QExp") -> bool:
        return not self <= other

    def __ge__(self, other: "QExp") -> bool:
        return not self < other

    def __hash__(self):
        return hash(("QExp", self.exp))

    def as_fraction(self, q: int) -> Fraction:
        if self.exp is None:
            return Fraction(0)
        return qpow_fraction(q, self.exp)

    def __repr__(self):
        return "0" if self.exp is None else f"q^{self.exp}"


QEXP_ZERO = QExp(None)


def qpow_fraction(q: int, e: int) -> Fraction:
    """q**e as an exact Fraction, e any integer."""
    if e >= 0:
        return Fraction(q**e)
    return Fraction(1, q**-e)


# --- polynomials over F_q ----------------------------------------------


class Poly:
    """Dense polynomial over a GF, coefficients lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: GF) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: GF) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def const(cls, field: GF, c: int) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def x(cls, field: GF) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: GF, c: int, k: int) -> "Poly":
        if k < 0:
            raise ValueError("monomial exponent must be >= 0")
        return cls(field, (0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial (callers must guard)."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def lc(self) -> int:
        if not self.coeffs:
            raise ValueError("leading coefficient of 0")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        f = self.field
        inv = f.inv(self.lc())
        return Poly(f, [f.mul(c, inv) for c in self.coeffs])

    def scale(self, c: int) -> "Poly":
        f = self.field
        if c == 0:
            return Poly.zero(f)
        if c == 1:
            return self
        return Poly(f, [f.mul(a, c) for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k, k >= 0."""
        if self.is_zero or k == 0:
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Poly(f, out)

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, [f.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(f)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = f.add(out[i + j], f.mul(x, y))
        return Poly(f, out)

    def __divmod__(self, other: "Poly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = f.inv(other.lc())
        quo = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            c = f.mul(c, inv_lead)
            quo[i - db] = c
            for j, bc in enumerate(other.coeffs):
                rem[i - db + j] = f.sub(rem[i - db + j], f.mul(c, bc))
        return Poly(f, quo), Poly(f, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return format_poly(self)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero(a.field)
    g = poly_gcd(a, b)
    return ((a * b) // g).monic()


# --- rational functions -------------------------------------------------


class Rat:
    """Element of F_q(x) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _canonical=False):
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = Poly.one(num.field)
        elif not _canonical:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            if not den.is_monic:
                f = num.field
                inv = f.inv(den.lc())
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "Rat":
        return cls(p, Poly.one(p.field), _canonical=True)

    @classmethod
    def x_power(cls, field: GF, k: int) -> "Rat":
        """x^k for any integer k."""
        if k >= 0:
            return cls.from_poly(Poly.monomial(field, 1, k))
        return cls(Poly.one(field), Poly.monomial(field, 1, -k), _canonical=True)

    @property
    def field(self) -> GF:
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: "Rat") -> "Rat":
        return Rat(self.num * other.den + other.num * self.den, self.den * other.den)

    def add_poly(self, p: Poly) -> "Rat":
        # gcd(num + p*den, den) = gcd(num, den) = 1, so no reduction needed
        return Rat(self.num + p * self.den, self.den, _canonical=True)

    def __neg__(self) -> "Rat":
        return Rat(-self.num, self.den, _canonical=True)

    def __sub__(self, other: "Rat") -> "Rat":
        return self + (-other)

    def __mul__(self, other: "Rat") -> "Rat":
        return Rat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Rat") -> "Rat":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return Rat(self.num * other.den, self.den * other.num)

    def mul_poly(self, p: Poly) -> "Rat":
        return Rat(self.num * p, self.den)

    def divmod_parts(self):
        """(polynomial part, fractional part); num = quo*den + rem."""
        quo, rem = divmod(self.num, self.den)
        return quo, Rat(rem, self.den)

    def poly_part(self) -> Poly:
        return self.divmod_parts()[0]

    def frac_part(self) -> "Rat":
        return self.divmod_parts()[1]

    def val(self) -> QExp:
        """Absolute value exponent: deg num - deg den, or 0 for the zero."""
        if self.is_zero:
            return QEXP_ZERO
        return QExp(self.num.degree - self.den.degree)

    def __eq__(self, other):
        return (
            isinstance(other, Rat)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return format_rat(self)


def abs_value(f) -> QExp:
    """|f| as a QExp for a Poly or Rat."""
    if isinstance(f, Poly):
        return QEXP_ZERO if f.is_zero else QExp(f.degree)
    return f.val()


# --- truncated Laurent series in 1/x ------------------------------------


class LaurentSeries:
    """Truncated element of F_q((1/x)).

    `coeffs` holds the coefficients for exponents top down to floor,
    highest first, with top = floor + len(coeffs) - 1.  Leading zeros
    are stripped (they are known), so coeffs[0] != 0 when nonempty.
    `exact` means every coefficient below floor is zero.  The canonical
    exact zero has empty coeffs and floor 1.
    """

    __slots__ = ("field", "coeffs", "floor", "exact")

    def __init__(self, field: GF, coeffs, floor: int, exact: bool = False):
        cs = list(coeffs)
        top = floor + len(cs) - 1
        while cs and cs[0] == 0:
            cs.pop(0)
            top -= 1
        if exact:
            while cs and cs[-1] == 0:
                cs.pop()
                floor += 1
            if not cs:
                floor = 1
            else:
                floor = top - len(cs) + 1
        self.field = field
        self.coeffs = tuple(cs)
        self.floor = floor
        self.exact = exact

    # -- constructors --

    @classmethod
    def exact_zero(cls, field: GF) -> "LaurentSeries":
        return cls(field, (), 1, exact=True)

    @classmethod
    def unknown_below(cls, field: GF, floor: int) -> "LaurentSeries":
        """All-zero knowledge down to floor, not exact."""
        return cls(field, (), floor, exact=False)

    @classmethod
    def from_poly(cls, p: Poly) -> "LaurentSeries":
        return cls(p.field, tuple(reversed(p.coeffs)), 0, exact=True)

    @classmethod
    def from_pairs(cls, field: GF, pairs, floor: int, exact: bool = False):
        """Build from {exponent: coefficient}; unlisted exponents are 0."""
        if not isinstance(pairs, dict):
            pairs = dict(pairs)
        if pairs:
            top = max(pairs)
            top = max(top, floor - 1)
        else:
            top = floor - 1
        cs = [pairs.get(n, 0) for n in range(top, floor - 1, -1)]
        return cls(field, cs, floor, exact)

    # -- basic queries --

    @property
    def top(self) -> int:
        """Highest possibly nonzero exponent (exact bound when nonempty)."""
        return self.floor + len(self.coeffs) - 1

    @property
    def is_known_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact_zero(self) -> bool:
        return self.exact and not self.coeffs

    def val(self) -> QExp:
        if self.coeffs:
            return QExp(self.top)
        if self.exact:
            return QEXP_ZERO
        raise InsufficientPrecision(
            f"leading term unknown: all coefficients above x^{self.floor} vanish "
            f"and the series is truncated there",
            needed_floor=self.floor - 1,
        )

    def val_le(self, bound: int) -> bool:
        """Decide |self| <= q^bound, or raise InsufficientPrecision."""
        if self.coeffs:
            return self.top <= bound
        if self.exact:
            return True
        if self.floor - 1 <= bound:
            return True
        raise InsufficientPrecision(
            f"cannot certify |s| <= q^{bound}: series truncated at x^{self.floor}",
            needed_floor=bound,
        )

    def coeff_exp(self, n: int) -> int:
        """Coefficient of x^n; raises when the truncation hides it."""
        if n > self.top:
            return 0
        if n >= self.floor:
            return self.coeffs[self.top - n]
        if self.exact:
            return 0
        raise InsufficientPrecision(
            f"coefficient of x^{n} lies below the precision floor x^{self.floor}",
            needed_floor=n,
        )

    def coeff_depth(self, j: int) -> int:
        """Coefficient of x^(-j), j >= 1."""
        return self.coeff_exp(-j)

    def eff_floor(self):
        return None if self.exact else self.floor

    # -- arithmetic --

    def _binary_floor(self, other: "LaurentSeries"):
        fa, fb = self.eff_floor(), other.eff_floor()
        if fa is None and fb is None:
            return None
        if fa is None:
            return fb
        if fb is None:
            return fa
        return max(fa, fb)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        f = self.field
        floor = self._binary_floor(other)
        exact = floor is None
        if exact:
            if self.is_exact_zero:
                return other
            if other.is_exact_zero:
                return self
            floor = min(self.floor, other.floor)
        top = max(self.top, other.top, floor - 1)
        cs = [
            f.add(self.coeff_exp(n), other.coeff_exp(n))
            for n in range(top, floor - 1, -1)
        ]
        return LaurentSeries(f, cs, floor, exact)

    def __neg__(self) -> "LaurentSeries":
        f = self.field
        return LaurentSeries(
            f, [f.neg(c) for c in self.coeffs], self.floor, self.exact
        )

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, c: int) -> "LaurentSeries":
        f = self.field
        if c == 0:
            return LaurentSeries.exact_zero(f)
        return LaurentSeries(
            f, [f.mul(a, c) for a in self.coeffs], self.floor, self.exact
        )

    def mul_xpow(self, k: int) -> "LaurentSeries":
        if self.is_exact_zero:
            return self
        return LaurentSeries(self.field, self.coeffs, self.floor + k, self.exact)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        f = self.field
        if self.is_exact_zero or other.is_exact_zero:
            return LaurentSeries.exact_zero(f)
        fa, fb = self.eff_floor(), other.eff_floor()
        if fa is None and fb is None:
            floor = self.floor + other.floor
            exact = True
        else:
            exact = False
            cands = []
            if fa is not None:
                cands.append(fa + other.top)
            if fb is not None:
                cands.append(fb + self.top)
            floor = max(cands)
        top = self.top + other.top
        if top < floor:
            return LaurentSeries(f, (), floor, exact)
        # convolution over the known window
        out = [0] * (top - floor + 1)
        sa_top, sb_top = self.top, other.top
        for i, ca in enumerate(self.coeffs):
            if ca == 0:
                continue
            ea = sa_top - i
            for j, cb in enumerate(other.coeffs):
                if cb == 0:
                    continue
                n = ea + (sb_top - j)
                if n >= floor:
                    out[top - n] = f.add(out[top - n], f.mul(ca, cb))
        return LaurentSeries(f, out, floor, exact)

    def mul_poly(self, p: Poly) -> "LaurentSeries":
        return self * LaurentSeries.from_poly(p)

    def mul_rat(self, r: Rat) -> "LaurentSeries":
        """Multiply by an exact rational function.

        Requires an inexact series (exact operands should go through
        Rat arithmetic instead, where no floor choice is needed).
        """
        if r.is_zero:
            return LaurentSeries.exact_zero(self.field)
        s = self.mul_poly(r.num)
        den = r.den
        if den.degree == 0:
            return s
        if s.exact:
            raise ValueError(
                "dividing an exact series by a polynomial: convert to Rat instead"
            )
        if s.is_known_zero:
            return LaurentSeries(self.field, (), s.floor - den.degree, False)
        recip_floor = s.floor - den.degree - s.top
        recip = expand_rational(Rat(Poly.one(self.field), den), recip_floor)
        return s * recip

    # -- decomposition --

    def frac_part(self) -> "LaurentSeries":
        """The part with exponents <= -1; keeps the floor."""
        if self.top <= -1:
            return self
        start = self.top - (-1)
        return LaurentSeries(self.field, self.coeffs[start:], self.floor, self.exact)

    def poly_part(self) -> Poly:
        """The part with exponents >= 0 as a Poly."""
        if not self.exact and self.floor > 0:
            raise InsufficientPrecision(
                f"polynomial part unknown: truncated at x^{self.floor} > x^0",
                needed_floor=0,
            )
        if self.top < 0:
            return Poly.zero(self.field)
        cs = [self.coeff_exp(n) for n in range(0, self.top + 1)]
        return Poly(self.field, cs)

    def truncated(self, new_floor: int) -> "LaurentSeries":
        """Forget everything below new_floor; result is never exact."""
        if new_floor <= self.floor and not self.exact:
            return LaurentSeries(self.field, self.coeffs, self.floor, False)
        cs = [self.coeff_exp(n) for n in range(self.top, new_floor - 1, -1)]
        return LaurentSeries(self.field, cs, new_floor, False)

    def to_rat(self) -> Rat:
        """Exact series (a Laurent polynomial) as a rational function."""
        if not self.exact:
            raise ValueError("only exact series convert to rational functions")
        if not self.coeffs:
            return Rat.from_poly(Poly.zero(self.field))
        lo = self.floor
        p = Poly(self.field, tuple(reversed(self.coeffs)))
        if lo >= 0:
            return Rat.from_poly(p.shift(lo))
        return Rat(p, Poly.monomial(self.field, 1, -lo))

    def __eq__(self, other):
        # normalization makes (coeffs, floor, exact) canonical per value/knowledge
        return (
            isinstance(other, LaurentSeries)
            and self.field == other.field
            and self.exact == other.exact
            and self.coeffs == other.coeffs
            and self.floor == other.floor
        )

    def __hash__(self):
        return hash((self.field, self.coeffs, self.exact, self.floor))

    def __repr__(self):
        body = format_series(self)
        tail = "" if self.exact else f" + O(x^{self.floor - 1})"
        return body + tail


def expand_rational(f: Rat, floor: int) -> LaurentSeries:
    """Laurent expansion of f at infinity down to `floor` by long division."""
    field = f.field
    if f.is_zero:
        return LaurentSeries.exact_zero(field)
    num, den = f.num, f.den  # den is monic
    top = num.degree - den.degree
    if top < floor:
        # every coefficient in the window is known zero, value hides below
        return LaurentSeries(field, (), floor, False)
    # work with num * x^s so each subtraction stays polynomial
    s = max(0, -floor)
    cur = num.shift(s)
    dd = den.degree
    coeffs = []
    for n in range(top, floor - 1, -1):
        c = cur.coeff(dd + n + s)
        coeffs.append(c)
        if c:
            cur = cur - den.scale(c).shift(n + s)
        if cur.is_zero:
            return LaurentSeries(field, coeffs, n, True)
    return LaurentSeries(field, coeffs, floor, False)


def frac_part(s):
    """Fractional part (exponents <= -1) of a Rat or LaurentSeries."""
    return s.frac_part()


# --- element grammar -----------------------------------------------------
#
# element  := side [ '/' side ]      (split at a top-level '/')
# side     := sum, optionally wrapped in one pair of parentheses
# sum      := ['+'|'-'] term (('+'|'-') term)*
# term     := coef ['*' xpart] | xpart
# coef     := integer | '(' tsum ')'
# xpart    := 'x' ['^' integer]     (the exponent may be negative)
# tsum     := like sum but in the variable t with integer coefficients
#
# Polynomial-in-t coefficients are only meaningful for extension fields.


def _split_toplevel_slash(s: str):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced ')' in element {s!r}")
        elif ch == "/" and depth == 0:
            return s[:i], s[i + 1 :]
    if depth != 0:
        raise ParseError(f"unbalanced '(' in element {s!r}")
    return s, None


def _strip_outer_parens(s: str) -> str:
    s = s.strip()
    while s.startswith("(") and s.endswith(")"):
        depth = 0
        wraps = True
        for i, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and i != len(s) - 1:
                    wraps = False
                    break
        if not wraps:
            break
        s = s[1:-1].strip()
    return s


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self) -> str:
        c = self.peek()
        self.i += 1
        return c

    def expect(self, ch: str):
        c = self.take()
        if c != ch:
            raise ParseError(f"expected {ch!r} at position {self.i} in {self.text!r}")

    def integer(self) -> int:
        self.skip_ws()
        j = self.i
        if j < len(self.text) and self.text[j] in "+-":
            j += 1
        k = j
        while k < len(self.text) and self.text[k].isdigit():
            k += 1
        if k == j:
            raise ParseError(
                f"expected an integer at position {self.i} in {self.text!r}"
            )
        val = int(self.text[self.i : k])
        self.i = k
        return val

    def done(self) -> bool:
        self.skip_ws()
        return self.i >= len(self.text)


def _parse_tsum(field: GF, sc: _Scanner) -> int:
    """Polynomial in t with integer coefficients, reduced into the field."""
    digits = [0] * (field.k + 1)

    def put(c: int, e: int):
        nonlocal digits
        if e >= len(digits):
            digits.extend([0] * (e - len(digits) + 1))
        digits[e] = (digits[e] + c) % field.p

    sign = 1
    if sc.peek() in ("+", "-"):
        sign = -1 if sc.take() == "-" else 1
    while True:
        c = sc.peek()
        if c.isdigit():
            coef = sc.integer() * sign
            if sc.peek() == "*":
                sc.take()
                if sc.peek() != "t":
                    raise ParseError(f"expected 't' in coefficient of {sc.text!r}")
            if sc.peek() == "t":
                if field.k == 1:
                    raise ParseError("'t' is only valid for extension fields")
                sc.take()
                e = 1
                if sc.peek() == "^":
                    sc.take()
                    e = sc.integer()
                    if e < 0:
                        raise ParseError("negative exponent of t")
                put(coef, e)
            else:
                put(coef, 0)
        elif c == "t":
            if field.k == 1:
                raise ParseError("'t' is only valid for extension fields")
            sc.take()
            e = 1
            if sc.peek() == "^":
                sc.take()
                e = sc.integer()
                if e < 0:
                    raise ParseError("negative exponent of t")
            put(sign, e)
        else:
            raise ParseError(f"bad coefficient term near position {sc.i} in {sc.text!r}")
        nxt = sc.peek()
        if nxt in ("+", "-"):
            sign = -1 if sc.take() == "-" else 1
            continue
        break
    # reduce modulo the defining polynomial
    while len(digits) > field.k:
        top = digits.pop()
        if top:
            d = len(digits) - field.k
            for i, mc in enumerate(field.modulus[:-1]):
                digits[d + i] = (digits[d + i] - top * mc) % field.p
    digits += [0] * (field.k - len(digits))
    return field.undigits(digits)


def _parse_laurent_side(field: GF, text: str) -> dict:
    """Parse a Laurent polynomial side into {exponent: field element}."""
    text = _strip_outer_parens(text)
    if not text:
        raise ParseError("empty element string")
    sc = _Scanner(text)
    terms: dict[int, int] = {}

    def put(c: int, e: int):
        terms[e] = field.add(terms.get(e, 0), c)

    sign = 1
    if sc.peek() in ("+", "-"):
        sign = -1 if sc.take() == "-" else 1
    while True:
        c = sc.peek()
        coef = None
        if c.isdigit():
            coef = field.from_int(sc.integer())
        elif c == "(":
            sc.take()
            coef = _parse_tsum(field, sc)
            sc.expect(")")
        if coef is not None:
            if sign == -1:
                coef = field.neg(coef)
            if sc.peek() == "*":
                sc.take()
                if sc.peek() != "x":
                    raise ParseError(f"expected 'x' after '*' in {text!r}")
            if sc.peek() == "x":
                sc.take()
                e = 1
                if sc.peek() == "^":
                    sc.take()
                    e = sc.integer()
                put(coef, e)
            else:
                put(coef, 0)
        elif c == "x":
            sc.take()
            e = 1
            if sc.peek() == "^":
                sc.take()
                e = sc.integer()
            put(1 if sign == 1 else field.neg(1), e)
        else:
            raise ParseError(f"bad term near position {sc.i} in {text!r}")
        nxt = sc.peek()
        if nxt in ("+", "-"):
            sign = -1 if sc.take() == "-" else 1
            continue
        if sc.done():
            break
        raise ParseError(f"unexpected {nxt!r} at position {sc.i} in {text!r}")
    return terms


def _laurent_terms_to_rat(field: GF, terms: dict) -> Rat:
    terms = {e: c for e, c in terms.items() if c != 0}
    if not terms:
        return Rat.from_poly(Poly.zero(field))
    lo = min(min(terms), 0)
    cs = [0] * (max(terms) - lo + 1)
    for e, c in terms.items():
        cs[e - lo] = c
    p = Poly(field, cs)
    if lo == 0:
        return Rat.from_poly(p)
    return Rat(p, Poly.monomial(field, 1, -lo))


def parse_element(field: GF, text: str) -> Rat:
    """Parse an element string (Laurent polynomial or quotient) into a Rat."""
    if not isinstance(text, str):
        raise ParseError(f"element must be a string, got {type(text).__name__}")
    left, right = _split_toplevel_slash(text.strip())
    num = _laurent_terms_to_rat(field, _parse_laurent_side(field, left))
    if right is None:
        return num
    den = _laurent_terms_to_rat(field, _parse_laurent_side(field, right))
    if den.is_zero:
        raise ParseError(f"zero denominator in element {text!r}")
    return num / den


def series_from_json(field: GF, obj) -> LaurentSeries:
    """Build a series from {"floor": f, "top": t, "coeffs": [...], "exact"?}."""
    if not isinstance(obj, dict):
        raise ParseError("series literal must be an object")
    for key in ("floor", "top", "coeffs"):
        if key not in obj:
            raise ParseError(f"series literal missing {key!r}")
    floor, top, coeffs = obj["floor"], obj["top"], obj["coeffs"]
    if not isinstance(floor, int) or not isinstance(top, int):
        raise ParseError("series floor and top must be integers")
    if not isinstance(coeffs, list) or len(coeffs) != top - floor + 1:
        raise ParseError(
            f"series coeffs must list top..floor: expected {top - floor + 1} entries"
        )
    out = []
    for c in coeffs:
        if isinstance(c, bool):
            raise ParseError(f"bad series coefficient {c!r}")
        if isinstance(c, int):
            if field.k == 1:
                out.append(c % field.p)
            elif 0 <= c < field.q:
                out.append(c)
            else:
                raise ParseError(f"series coefficient {c} outside [0, {field.q})")
        elif isinstance(c, list):
            if len(c) > field.k:
                raise ParseError(f"coefficient digit vector {c} longer than k")
            out.append(field.undigits(c + [0] * (field.k - len(c))))
        else:
            raise ParseError(f"bad series coefficient {c!r}")
    exact = bool(obj.get("exact", False))
    return LaurentSeries(field, out, floor, exact)


# --- formatting ----------------------------------------------------------


def format_coeff(field: GF, c: int) -> str:
    if field.k == 1 or c < field.p:
        return str(c)
    ds = field.digits(c)
    parts = []
    for e in range(field.k - 1, -1, -1):
        d = ds[e]
        if d == 0:
            continue
        if e == 0:
            parts.append(str(d))
        elif e == 1:
            parts.append("t" if d == 1 else f"{d}*t")
        else:
            parts.append(f"t^{e}" if d == 1 else f"{d}*t^{e}")
    return "(" + " + ".join(parts) + ")"


def _format_terms(field: GF, terms) -> str:
    # terms: list of (exponent, coefficient), highest exponent first
    parts = []
    for e, c in terms:
        if c == 0:
            continue
        cs = format_coeff(field, c)
        if e == 0:
            parts.append(cs)
        else:
            xs = "x" if e == 1 else f"x^{e}"
            parts.append(xs if cs == "1" else f"{cs}*{xs}")
    return " + ".join(parts) if parts else "0"


def format_poly(p: Poly) -> str:
    terms = [(e, c) for e, c in enumerate(p.coeffs)][::-1]
    return _format_terms(p.field, terms)


def format_rat(r: Rat) -> str:
    field = r.field
    den = r.den
    # pure power of x in the denominator: print as a Laurent polynomial
    if den.degree == 0 or (den.coeffs.count(0) == den.degree and den.is_monic):
        shift = den.degree
        terms = [(e - shift, c) for e, c in enumerate(r.num.coeffs)][::-1]
        return _format_terms(field, terms)
    num_s = format_poly(r.num)
    den_s = format_poly(den)
    return f"({num_s}) / ({den_s})"


def format_series(s: LaurentSeries) -> str:
    terms = [(s.top - i, c) for i, c in enumerate(s.coeffs)]
    return _format_terms(s.field, terms)
