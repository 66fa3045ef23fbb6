"""Exact scalars: Q[q,h] localized at the powers of q and of (q-1).

Every scalar that shows up in the deformation computations is a polynomial
in q and h divided by a monomial q^m (q-1)^k, so the full rational-function
field is never needed.  Keeping denominators in this restricted shape makes
canonical forms cheap: divisibility by q is visible on exponents,
divisibility by (q-1) is a substitution check, and no multivariate gcd is
ever computed.  Fraction-free linear algebra elsewhere only needs
``exact_div``.

All values are immutable after construction and every operation returns a
canonical form, so equality is plain structural comparison.
"""

from __future__ import annotations

from fractions import Fraction


class NotAUnit(ArithmeticError):
    """Inversion was attempted on a non-unit of the localized ring."""


class PoleAtQ1(ArithmeticError):
    """The q -> 1 limit does not exist for this scalar."""


class NotDivisible(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational number")


def _grlex(mono):
    a, b = mono
    return (a + b, a, b)


class QHPoly:
    """Polynomial in q and h over Q, keyed by (q-degree, h-degree).

    Terms are stored in descending graded-lexicographic order with no zero
    coefficients, so two equal polynomials are structurally identical.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for mono, c in terms.items():
                c = _frac(c)
                if c:
                    data[mono] = c
        self.terms = {m: data[m] for m in sorted(data, key=_grlex, reverse=True)}

    @classmethod
    def zero(cls) -> "QHPoly":
        return cls()

    @classmethod
    def one(cls) -> "QHPoly":
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def const(cls, r) -> "QHPoly":
        return cls({(0, 0): _frac(r)})

    @classmethod
    def monomial(cls, qdeg: int, hdeg: int, coeff=1) -> "QHPoly":
        return cls({(qdeg, hdeg): _frac(coeff)})

    @classmethod
    def q(cls) -> "QHPoly":
        return cls.monomial(1, 0)

    @classmethod
    def h(cls) -> "QHPoly":
        return cls.monomial(0, 1)

    @classmethod
    def q_minus_1(cls) -> "QHPoly":
        return cls({(1, 0): Fraction(1), (0, 0): Fraction(-1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, QHPoly) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "QHPoly") -> "QHPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return QHPoly(out)

    def __neg__(self) -> "QHPoly":
        return QHPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "QHPoly") -> "QHPoly":
        return self + (-other)

    def __mul__(self, other: "QHPoly") -> "QHPoly":
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                m = (a1 + a2, b1 + b2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return QHPoly(out)

    def scaled(self, r) -> "QHPoly":
        r = _frac(r)
        if not r:
            return QHPoly.zero()
        return QHPoly({m: c * r for m, c in self.terms.items()})

    def leading(self):
        """Largest (monomial, coefficient) in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = next(iter(self.terms))
        return m, self.terms[m]

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def constant(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[(0, 0)]

    def q_valuation(self) -> int:
        """Largest s with q^s dividing the polynomial (0 for the zero poly)."""
        if not self.terms:
            return 0
        return min(a for (a, _b) in self.terms)

    def divide_q(self, s: int) -> "QHPoly":
        if s == 0:
            return self
        if any(a < s for (a, _b) in self.terms):
            raise NotDivisible(f"q^{s} does not divide {self}")
        return QHPoly({(a - s, b): c for (a, b), c in self.terms.items()})

    def h_valuation(self) -> int:
        """Largest s with h^s dividing the polynomial (0 for the zero poly)."""
        if not self.terms:
            return 0
        return min(b for (_a, b) in self.terms)

    def divide_h(self, s: int) -> "QHPoly":
        if s == 0:
            return self
        if any(b < s for (_a, b) in self.terms):
            raise NotDivisible(f"h^{s} does not divide {self}")
        return QHPoly({(a, b - s): c for (a, b), c in self.terms.items()})

    def mul_qpow(self, s: int) -> "QHPoly":
        if s == 0:
            return self
        return QHPoly({(a + s, b): c for (a, b), c in self.terms.items()})

    def mul_q1pow(self, s: int) -> "QHPoly":
        out = self
        g = QHPoly.q_minus_1()
        for _ in range(s):
            out = out * g
        return out

    def at_q1(self) -> "QHPoly":
        """Substitute q = 1; the result only involves h."""
        out = {}
        for (_a, b), c in self.terms.items():
            m = (0, b)
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return QHPoly(out)

    def div_q1(self):
        """Quotient by (q-1) when the division is exact, else None."""
        if self.is_zero():
            return QHPoly.zero()
        cols = {}
        for (a, b), c in self.terms.items():
            cols.setdefault(b, {})[a] = c
        out = {}
        for b, col in cols.items():
            d = max(col)
            acc = Fraction(0)
            for a in range(d, 0, -1):
                acc += col.get(a, Fraction(0))
                if acc:
                    out[(a - 1, b)] = acc
            if col.get(0, Fraction(0)) + acc:
                return None
        return QHPoly(out)

    def q1_valuation(self) -> int:
        """Largest s with (q-1)^s dividing the polynomial (0 for zero)."""
        if self.is_zero():
            return 0
        v, p = 0, self
        while True:
            d = p.div_q1()
            if d is None:
                return v
            v, p = v + 1, d

    def exact_div(self, divisor: "QHPoly") -> "QHPoly":
        """Exact quotient self / divisor; raises NotDivisible otherwise."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        quo = {}
        (da, db), dc = divisor.leading()
        while rem:
            rm = max(rem, key=_grlex)
            rc = rem[rm]
            qa, qb = rm[0] - da, rm[1] - db
            if qa < 0 or qb < 0:
                raise NotDivisible(f"{divisor} does not divide {self}")
            qc = rc / dc
            quo[(qa, qb)] = quo.get((qa, qb), Fraction(0)) + qc
            for (a2, b2), c2 in divisor.terms.items():
                m = (a2 + qa, b2 + qb)
                s = rem.get(m, Fraction(0)) - qc * c2
                if s:
                    rem[m] = s
                else:
                    rem.pop(m, None)
        return QHPoly(quo)

    def content(self) -> Fraction:
        """gcd of the coefficients (positive; 0 for the zero polynomial)."""
        num = 0
        den = 1
        for c in self.terms.values():
            num = _gcd_int(num, abs(c.numerator))
            den = _lcm_int(den, c.denominator)
        if num == 0:
            return Fraction(0)
        return Fraction(num, den)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for (a, b), c in self.terms.items():
            parts = []
            if a:
                parts.append("q" if a == 1 else f"q^{a}")
            if b:
                parts.append("h" if b == 1 else f"h^{b}")
            mag = abs(c)
            if mag != 1 or not parts:
                parts.insert(0, str(mag))
            body = "*".join(parts)
            chunks.append(("-" if c < 0 else "+", body))
        sign, body = chunks[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            text += (" - " if sign == "-" else " + ") + body
        return text

    def __repr__(self) -> str:
        return f"QHPoly({self})"


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _lcm_int(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return a * b // _gcd_int(a, b)


def exact_div(a: QHPoly, b: QHPoly) -> QHPoly:
    """Module-level alias for :meth:`QHPoly.exact_div`."""
    return a.exact_div(b)


class Coeff:
    """num / (q^qpow (q-1)^q1pow) in fully cancelled form.

    Canonical form: the numerator is not divisible by q while qpow > 0 and
    not divisible by (q-1) while q1pow > 0; zero is 0/1.  The units of this
    ring are exactly r * q^a * (q-1)^b with r a nonzero rational.
    """

    __slots__ = ("num", "qpow", "q1pow")

    def __init__(self, num: QHPoly, qpow: int = 0, q1pow: int = 0):
        if qpow < 0 or q1pow < 0:
            raise ValueError("denominator exponents must be nonnegative")
        if num.is_zero():
            num, qpow, q1pow = QHPoly.zero(), 0, 0
        else:
            if qpow:
                s = min(num.q_valuation(), qpow)
                if s:
                    num = num.divide_q(s)
                    qpow -= s
            while q1pow:
                d = num.div_q1()
                if d is None:
                    break
                num = d
                q1pow -= 1
        self.num = num
        self.qpow = qpow
        self.q1pow = q1pow

    @classmethod
    def zero(cls) -> "Coeff":
        return cls(QHPoly.zero())

    @classmethod
    def one(cls) -> "Coeff":
        return cls(QHPoly.one())

    @classmethod
    def q(cls) -> "Coeff":
        return cls(QHPoly.q())

    @classmethod
    def h(cls) -> "Coeff":
        return cls(QHPoly.h())

    @classmethod
    def rational(cls, r) -> "Coeff":
        return cls(QHPoly.const(_frac(r)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Coeff.rational(other)
        if not isinstance(other, Coeff):
            return NotImplemented
        return (
            self.num == other.num
            and self.qpow == other.qpow
            and self.q1pow == other.q1pow
        )

    __hash__ = None

    def _lift(self, m: int, k: int) -> QHPoly:
        # numerator after rescaling to the common denominator q^m (q-1)^k
        return self.num.mul_qpow(m - self.qpow).mul_q1pow(k - self.q1pow)

    def __add__(self, other) -> "Coeff":
        other = coeff(other)
        m = max(self.qpow, other.qpow)
        k = max(self.q1pow, other.q1pow)
        return Coeff(self._lift(m, k) + other._lift(m, k), m, k)

    __radd__ = __add__

    def __neg__(self) -> "Coeff":
        return Coeff(-self.num, self.qpow, self.q1pow)

    def __sub__(self, other) -> "Coeff":
        return self + (-coeff(other))

    def __rsub__(self, other) -> "Coeff":
        return coeff(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coeff.rational(other)
        if not isinstance(other, Coeff):
            return NotImplemented
        return Coeff(self.num * other.num, self.qpow + other.qpow, self.q1pow + other.q1pow)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Coeff":
        return self * coeff(other).try_inv()

    def __pow__(self, n: int) -> "Coeff":
        if n < 0:
            return self.try_inv() ** (-n)
        out = Coeff.one()
        for _ in range(n):
            out = out * self
        return out

    def try_inv(self) -> "Coeff":
        """Inverse when self is a unit r*q^a*(q-1)^b; raises NotAUnit otherwise."""
        if self.is_zero():
            raise NotAUnit("0 is not a unit")
        p = self.num
        a = p.q_valuation()
        if a:
            p = p.divide_q(a)
        b = 0
        while True:
            d = p.div_q1()
            if d is None:
                break
            p, b = d, b + 1
        if not p.is_constant():
            raise NotAUnit(f"{self} is not a unit of the localized ring")
        r = p.constant()
        e1 = self.qpow - a
        e2 = self.q1pow - b
        num = QHPoly.const(1 / r).mul_qpow(max(e1, 0)).mul_q1pow(max(e2, 0))
        return Coeff(num, max(-e1, 0), max(-e2, 0))

    def is_unit(self) -> bool:
        try:
            self.try_inv()
            return True
        except NotAUnit:
            return False

    def limit_q1(self) -> "Coeff":
        """Exact q -> 1 limit as a polynomial in h; raises PoleAtQ1 on a pole."""
        if self.is_zero():
            return Coeff.zero()
        p = self.num
        for _ in range(self.q1pow):
            d = p.div_q1()
            if d is None:
                raise PoleAtQ1(f"{self} has a pole at q = 1")
            p = d
        return Coeff(p.at_q1())

    def is_rational(self) -> bool:
        return self.qpow == 0 and self.q1pow == 0 and self.num.is_constant()

    def as_fraction(self) -> Fraction:
        if self.qpow or self.q1pow or not self.num.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self.num.constant()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        text = str(self.num)
        if (self.qpow or self.q1pow) and len(self.num.terms) > 1:
            text = f"({text})"
        if self.qpow:
            text += "/q" if self.qpow == 1 else f"/q^{self.qpow}"
        if self.q1pow:
            text += "/(q-1)" if self.q1pow == 1 else f"/(q-1)^{self.q1pow}"
        return text

    def __repr__(self) -> str:
        return f"Coeff({self})"


def coeff(x) -> Coeff:
    """Coerce an int, Fraction or Coeff to a Coeff."""
    if isinstance(x, Coeff):
        return x
    if isinstance(x, (int, Fraction)):
        return Coeff.rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as a scalar")


def add(a: Coeff, b: Coeff) -> Coeff:
    return a + b


def mul(a: Coeff, b: Coeff) -> Coeff:
    return a * b


def neg(a: Coeff) -> Coeff:
    return -a


def try_inv(a: Coeff) -> Coeff:
    return a.try_inv()


def limit_q1(a: Coeff) -> Coeff:
    return a.limit_q1()
