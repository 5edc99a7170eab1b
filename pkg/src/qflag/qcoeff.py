"""Exact rational functions in one quantum parameter q.

Every coefficient in this package lives in the field Q(q).  A value is kept
in the canonical form

    q^shift * N(q) / D(q)

where N and D are polynomials with Fraction coefficients, both with nonzero
constant term, D monic, and gcd(N, D) = 1.  The shift captures the full
q-power content, so equal values always have equal components and QRat can
be hashed and compared structurally.

Quantum integers use the balanced convention [k] = (q^k - q^-k)/(q - q^-1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


Coeffs = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(cs: list[Fraction]) -> list[Fraction]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _pmul(a: Coeffs, b: Coeffs) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _trim(out)


def _padd(a: Coeffs, b: Coeffs) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [_ZERO] * n
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] += bi
    return _trim(out)


def _pdivmod(a: list[Fraction], b: Coeffs) -> tuple[list[Fraction], list[Fraction]]:
    # b must be nonempty with b[-1] != 0.
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    r = _trim(list(a))
    lead = b[-1]
    while len(r) >= len(b):
        k = len(r) - len(b)
        c = r[-1] / lead
        if c:
            q[k] = c
            for i, bi in enumerate(b):
                r[k + i] -= c * bi
        r.pop()
        _trim(r)
    return _trim(q), r


def _pgcd(a: Coeffs, b: Coeffs) -> tuple[Fraction, ...]:
    x, y = list(a), list(b)
    while y:
        _, r = _pdivmod(x, tuple(y))
        x, y = y, r
    if not x:
        return ()
    lead = x[-1]
    return tuple(c / lead for c in x)


class QRat:
    """A rational function in q over the rationals, in canonical form."""

    __slots__ = ("shift", "num", "den")

    def __init__(self, shift: int = 0, num=(Fraction(1),), den=(Fraction(1),)):
        n = _trim([Fraction(c) for c in num])
        d = _trim([Fraction(c) for c in den])
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not n:
            self.shift = 0
            self.num = ()
            self.den = (_ONE,)
            return
        vn = next(i for i, c in enumerate(n) if c)
        vd = next(i for i, c in enumerate(d) if c)
        shift += vn - vd
        n = n[vn:]
        d = d[vd:]
        if len(d) == 1:
            if d[0] != 1:
                n = [c / d[0] for c in n]
            d = [_ONE]
        elif len(n) == 1:
            lead = d[-1]
            if lead != 1:
                d = [c / lead for c in d]
                n = [n[0] / lead]
        else:
            g = _pgcd(tuple(n), tuple(d))
            if len(g) > 1:
                n, _ = _pdivmod(n, g)
                d, _ = _pdivmod(d, g)
            lead = d[-1]
            if lead != 1:
                d = [c / lead for c in d]
                n = [c / lead for c in n]
        self.shift = shift
        self.num = tuple(n)
        self.den = tuple(d)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "QRat":
        return _Q_ZERO

    @staticmethod
    def one() -> "QRat":
        return _Q_ONE

    @staticmethod
    def q(power: int = 1) -> "QRat":
        return QRat(shift=power)

    @staticmethod
    def const(c) -> "QRat":
        return QRat(0, (Fraction(c),))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.shift == 0 and self.num == (_ONE,) and self.den == (_ONE,)

    def is_polynomial(self) -> bool:
        """True when the value is a Laurent polynomial in q (trivial denominator)."""
        return self.den == (_ONE,) or not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, QRat):
            return x
        if isinstance(x, (int, Fraction)):
            return QRat(0, (Fraction(x),))
        return None

    def __add__(self, other):
        o = QRat._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num:
            return o
        if not o.num:
            return self
        s = min(self.shift, o.shift)
        a = [_ZERO] * (self.shift - s) + list(self.num)
        b = [_ZERO] * (o.shift - s) + list(o.num)
        if self.den == o.den:
            return QRat(s, _padd(tuple(a), tuple(b)), self.den)
        n = _padd(tuple(_pmul(tuple(a), o.den)), tuple(_pmul(tuple(b), self.den)))
        return QRat(s, n, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        r = QRat.__new__(QRat)
        r.shift = self.shift
        r.num = tuple(-c for c in self.num)
        r.den = self.den
        return r

    def __sub__(self, other):
        o = QRat._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = QRat._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = QRat._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return _Q_ZERO
        if self.den == (_ONE,) and o.den == (_ONE,):
            r = QRat.__new__(QRat)
            r.shift = self.shift + o.shift
            r.num = tuple(_pmul(self.num, o.num))
            r.den = (_ONE,)
            return r
        return QRat(self.shift + o.shift, _pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "QRat":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return QRat(-self.shift, self.den, self.num)

    def __truediv__(self, other):
        o = QRat._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = QRat._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return _Q_ONE
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    # -- structure ---------------------------------------------------------

    def __eq__(self, other):
        o = QRat._coerce(other)
        if o is None:
            return NotImplemented
        return self.shift == o.shift and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.shift, self.num, self.den))

    def substitute_inverse(self) -> "QRat":
        """The image under q -> q^-1 (the bar involution on coefficients)."""
        n = tuple(reversed(self.num))
        d = tuple(reversed(self.den))
        s = -(self.shift + (len(self.num) - 1) - (len(self.den) - 1)) if self.num else 0
        return QRat(s, n, d)

    # -- evaluation and text -----------------------------------------------

    def eval(self, t) -> Fraction:
        t = Fraction(t)
        if t == 0:
            raise ValueError("q = 0 lies outside the Laurent domain")
        if not self.num:
            return _ZERO
        dv = _ZERO
        for c in reversed(self.den):
            dv = dv * t + c
        if dv == 0:
            raise PoleError(f"denominator factor (q - {t}) vanishes at q = {t}")
        nv = _ZERO
        for c in reversed(self.num):
            nv = nv * t + c
        return t**self.shift * nv / dv

    @staticmethod
    def _poly_text(coeffs: Coeffs, shift: int) -> str:
        parts: list[str] = []
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if not c:
                continue
            e = shift + i
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                p = "q" if e == 1 else f"q^{e}"
                body = p if mag == 1 else f"{mag}*{p}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts) if parts else "0"

    def __str__(self) -> str:
        if not self.num:
            return "0"
        if self.den == (_ONE,):
            return self._poly_text(self.num, self.shift)
        return f"({self._poly_text(self.num, self.shift)})/({self._poly_text(self.den, 0)})"

    def __repr__(self) -> str:
        return f"QRat({str(self)!r})"


def _parse_poly(text: str) -> QRat:
    text = text.strip()
    if text == "0":
        return _Q_ZERO
    chunks = text.replace(" - ", " + -").split(" + ")
    total = _Q_ZERO
    for chunk in chunks:
        chunk = chunk.strip()
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:]
        if "q" not in chunk:
            total = total + QRat.const(sign * Fraction(chunk))
            continue
        coef_part, _, _ = chunk.partition("q")
        coef = Fraction(coef_part[:-1]) if coef_part.endswith("*") else _ONE
        _, _, exp_part = chunk.partition("^")
        e = int(exp_part) if exp_part else 1
        total = total + QRat(e, (sign * coef,))
    return total


def parse_qrat(text: str) -> QRat:
    """Inverse of str(): accepts "poly" or "(poly)/(poly)"."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")") and ")/(" in text:
        num_part, _, den_part = text.partition(")/(")
        return _parse_poly(num_part[1:]) / _parse_poly(den_part[:-1])
    return _parse_poly(text)


_Q_ZERO = QRat.__new__(QRat)
_Q_ZERO.shift = 0
_Q_ZERO.num = ()
_Q_ZERO.den = (_ONE,)

_Q_ONE = QRat.__new__(QRat)
_Q_ONE.shift = 0
_Q_ONE.num = (_ONE,)
_Q_ONE.den = (_ONE,)

Q = QRat.q()


@lru_cache(maxsize=None)
def qint(k: int) -> QRat:
    """Balanced quantum integer [k] = (q^k - q^-k)/(q - q^-1)."""
    if k < 0:
        return -qint(-k)
    if k == 0:
        return _Q_ZERO
    # [k] = q^-(k-1) + q^-(k-3) + ... + q^(k-1)
    coeffs = [_ONE if i % 2 == 0 else _ZERO for i in range(2 * k - 1)]
    return QRat(-(k - 1), coeffs)


@lru_cache(maxsize=None)
def qfact(k: int) -> QRat:
    """[k]! = [1][2]...[k]."""
    if k < 0:
        raise ValueError("factorial of a negative integer")
    if k == 0:
        return _Q_ONE
    return qfact(k - 1) * qint(k)


@lru_cache(maxsize=None)
def gauss_p(a: int, b: int) -> QRat:
    """Shifted Gaussian binomial q^(a*b) [a+b]! / ([a]! [b]!), a polynomial in q^2."""
    if a < 0 or b < 0:
        raise ValueError("Gaussian binomial needs nonnegative arguments")
    return QRat.q(a * b) * qfact(a + b) / (qfact(a) * qfact(b))


def eval_q(r: QRat, t) -> Fraction:
    """Evaluate r at the rational point q = t (t nonzero, not a pole)."""
    return r.eval(t)


def is_root_of_unity(t, bound: int = 64) -> bool:
    """True when the rational number t satisfies t^m = 1 for some 1 <= m <= bound.

    Over the rationals only 1 and -1 qualify, but the check is kept generic:
    it walks cyclotomic values by removing proper-divisor contributions from
    t^m - 1, which stays exact and costs nothing at this scale.
    """
    t = Fraction(t)
    if t == 0:
        return False
    vals: dict[int, Fraction] = {}
    for m in range(1, bound + 1):
        v = t**m - 1
        for dv, val in vals.items():
            if m % dv == 0:
                v /= val
        if v == 0:
            return True
        vals[m] = v
    return False
