"""Laurent polynomials in x_1..x_d over Q(q), and fractions with tracked binomial denominators.

Variable positions are 0-indexed everywhere in code; rendered text uses
x1..xd.  Exponent vectors are plain int tuples of length d.  A denominator
is never stored as a polynomial: it is a multiset of binomial factors
x_u - c*x_v (u < v, c a nonzero scalar), the only shape that arises from
the ratio form of theta and from convolution kernels.  Monomial denominators
are units and are folded into the numerator immediately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qcoeff import QRat, parse_qrat

Mono = tuple[int, ...]


class NotPolynomialError(ArithmeticError):
    """Raised when a structured fraction is forced into polynomial form but a factor survives."""


def _zero_mono(d: int) -> Mono:
    return (0,) * d


class LaurentPoly:
    """A finite QRat-linear combination of Laurent monomials in d variables."""

    __slots__ = ("d", "terms", "_hash")

    def __init__(self, d: int, terms=None):
        self.d = d
        clean: dict[Mono, QRat] = {}
        if terms:
            for mono, coef in dict(terms).items():
                if len(mono) != d:
                    raise ValueError(f"monomial {mono} does not have {d} exponents")
                if not isinstance(coef, QRat):
                    coef = QRat.const(coef)
                if coef:
                    clean[tuple(mono)] = coef
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, d: int, terms: dict[Mono, QRat]) -> "LaurentPoly":
        out = cls.__new__(cls)
        out.d = d
        out.terms = terms
        out._hash = None
        return out

    @classmethod
    def zero(cls, d: int) -> "LaurentPoly":
        return cls._wrap(d, {})

    @classmethod
    def one(cls, d: int) -> "LaurentPoly":
        return cls.const(d, QRat.one())

    @classmethod
    def const(cls, d: int, coef) -> "LaurentPoly":
        coef = coef if isinstance(coef, QRat) else QRat.const(coef)
        return cls._wrap(d, {_zero_mono(d): coef} if coef else {})

    @classmethod
    def variable(cls, d: int, pos: int, power: int = 1) -> "LaurentPoly":
        """The monomial x_{pos+1}^power (positions are 0-indexed)."""
        if not 0 <= pos < d:
            raise ValueError(f"variable position {pos} outside 0..{d - 1}")
        mono = tuple(power if i == pos else 0 for i in range(d))
        return cls._wrap(d, {mono: QRat.one()})

    @classmethod
    def monomial(cls, d: int, mono: Mono, coef=None) -> "LaurentPoly":
        coef = QRat.one() if coef is None else (coef if isinstance(coef, QRat) else QRat.const(coef))
        if len(mono) != d:
            raise ValueError(f"monomial {mono} does not have {d} exponents")
        return cls._wrap(d, {tuple(mono): coef} if coef else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.d, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (QRat, int, Fraction)):
            other = LaurentPoly.const(self.d, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.d != other.d:
            raise ValueError("mixed variable counts")
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            s = out.get(mono)
            if s is None:
                out[mono] = coef
            else:
                s = s + coef
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return LaurentPoly._wrap(self.d, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap(self.d, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (QRat, int, Fraction)):
            other = LaurentPoly.const(self.d, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (QRat, int, Fraction)):
            coef = other if isinstance(other, QRat) else QRat.const(other)
            if not coef:
                return LaurentPoly.zero(self.d)
            return LaurentPoly._wrap(self.d, {m: c * coef for m, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.d != other.d:
            raise ValueError("mixed variable counts")
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Mono, QRat] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                c = ca * cb
                s = out.get(mono)
                if s is None:
                    out[mono] = c
                else:
                    s = s + c
                    if s:
                        out[mono] = s
                    else:
                        del out[mono]
        return LaurentPoly._wrap(self.d, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = LaurentPoly.one(self.d)
        for _ in range(k):
            out = out * self
        return out

    def mono_shift(self, mono: Mono, coef=None) -> "LaurentPoly":
        """Multiply by a single monomial (fast path, no dict merging)."""
        coef = QRat.one() if coef is None else coef
        if not coef:
            return LaurentPoly.zero(self.d)
        return LaurentPoly._wrap(
            self.d,
            {tuple(x + y for x, y in zip(m, mono)): c * coef for m, c in self.terms.items()},
        )

    def permuted(self, sigma: tuple[int, ...]) -> "LaurentPoly":
        """Substitute x_s -> x_{sigma(s)}: the data at position s moves to position sigma[s]."""
        if len(sigma) != self.d:
            raise ValueError("permutation length mismatch")
        out: dict[Mono, QRat] = {}
        for mono, coef in self.terms.items():
            new = [0] * self.d
            for s, e in enumerate(mono):
                new[sigma[s]] = e
            out[tuple(new)] = coef
        return LaurentPoly._wrap(self.d, out)

    def eval(self, xs, t) -> Fraction:
        xs = [Fraction(x) for x in xs]
        if len(xs) != self.d:
            raise ValueError("point has wrong length")
        total = Fraction(0)
        for mono, coef in self.terms.items():
            v = coef.eval(t)
            for x, e in zip(xs, mono):
                v *= x**e
            total += v
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            coef = self.terms[mono]
            factors = "".join(
                f"*x{i + 1}" + (f"^{e}" if e != 1 else "")
                for i, e in enumerate(mono)
                if e
            )
            parts.append(f"({coef}){factors}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.d}, '{self}')"


def _split_top_level(text: str, sep: str) -> list[str]:
    parts, depth, start = [], 0, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            start = i + len(sep)
            i += len(sep)
            continue
        i += 1
    parts.append(text[start:])
    return parts


def parse_poly(text: str, d: int) -> LaurentPoly:
    """Inverse of str() for LaurentPoly; also accepts bare QRat text as a constant."""
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(d)
    total = LaurentPoly.zero(d)
    for term in _split_top_level(text, " + "):
        term = term.strip()
        if not term.startswith("("):
            total = total + LaurentPoly.const(d, parse_qrat(term))
            continue
        depth = 0
        close = -1
        for i, ch in enumerate(term):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    close = i
                    break
        coef = parse_qrat(term[1:close])
        mono = [0] * d
        rest = term[close + 1 :]
        for piece in rest.split("*"):
            piece = piece.strip()
            if not piece:
                continue
            if not piece.startswith("x"):
                raise ValueError(f"bad monomial piece {piece!r}")
            var_part, _, exp_part = piece[1:].partition("^")
            pos = int(var_part) - 1
            if not 0 <= pos < d:
                raise ValueError(f"variable x{var_part} outside x1..x{d}")
            mono[pos] += int(exp_part) if exp_part else 1
        total = total + LaurentPoly.monomial(d, tuple(mono), coef)
    return total


# -- binomial-denominator fractions -----------------------------------------

BinomKey = tuple[int, int, QRat]  # (u, v, c) standing for x_u - c*x_v with u < v


def _canon_binom(u: int, v: int, c: QRat) -> tuple[BinomKey, QRat]:
    """Canonical key and the unit scalar peeled off: x_u - c*x_v = unit * key."""
    if u == v:
        raise ValueError("binomial needs two distinct variables")
    if not c:
        raise ValueError("binomial scalar must be nonzero")
    if u < v:
        return (u, v, c), QRat.one()
    return (v, u, c.inverse()), -c


def binom_poly(d: int, key: BinomKey) -> LaurentPoly:
    u, v, c = key
    return LaurentPoly.variable(d, u) - LaurentPoly.variable(d, v) * c


def _binom_text(key: BinomKey) -> str:
    u, v, c = key
    return f"x{u + 1} - ({c})*x{v + 1}"


def divide_binomial(p: LaurentPoly, key: BinomKey) -> LaurentPoly | None:
    """Exact quotient p / (x_u - c*x_v), or None when the division has a remainder."""
    if not p:
        return p
    u, v, c = key
    shift = min(m[u] for m in p.terms)
    # Peel x_u^shift so the numerator is polynomial in x_u, then divide
    # synthetically from the top coefficient down.
    layers: dict[int, dict[Mono, QRat]] = {}
    for mono, coef in p.terms.items():
        k = mono[u] - shift
        flat = list(mono)
        flat[u] = 0
        layers.setdefault(k, {})[tuple(flat)] = coef
    top = max(layers)
    if top == 0:
        return None
    quot_layers: dict[int, dict[Mono, QRat]] = {}
    carry: dict[Mono, QRat] = {}
    for k in range(top, 0, -1):
        cur = dict(carry)
        for mono, coef in layers.get(k, {}).items():
            s = cur.get(mono)
            cur[mono] = coef if s is None else s + coef
        cur = {m: cf for m, cf in cur.items() if cf}
        quot_layers[k - 1] = cur
        # next carry = c * x_v * cur
        carry = {}
        for mono, coef in cur.items():
            bumped = list(mono)
            bumped[v] += 1
            carry[tuple(bumped)] = coef * c
    rem = dict(carry)
    for mono, coef in layers.get(0, {}).items():
        s = rem.get(mono)
        rem[mono] = coef if s is None else s + coef
    if any(cf for cf in rem.values()):
        return None
    out: dict[Mono, QRat] = {}
    for k, layer in quot_layers.items():
        for mono, coef in layer.items():
            if coef:
                full = list(mono)
                full[u] = k + shift
                out[tuple(full)] = coef
    return LaurentPoly._wrap(p.d, out)


class StructuredFraction:
    """numerator / product of binomial factors, combined lazily and reduced on demand."""

    __slots__ = ("num", "binoms")

    def __init__(self, num: LaurentPoly, binoms=None, denom_monomial: Mono | None = None):
        if denom_monomial is not None:
            num = num.mono_shift(tuple(-e for e in denom_monomial))
        folded: dict[BinomKey, int] = {}
        unit = QRat.one()
        if binoms:
            items = binoms.items() if isinstance(binoms, dict) else binoms
            for key, mult in items:
                if mult < 0:
                    raise ValueError("negative denominator multiplicity")
                if mult == 0:
                    continue
                ckey, scalar = _canon_binom(*key)
                folded[ckey] = folded.get(ckey, 0) + mult
                if not scalar.is_one():
                    unit = unit * scalar**mult
        if not unit.is_one():
            num = num * unit.inverse()
        self.num = num
        self.binoms = folded

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "StructuredFraction":
        return cls(p)

    @property
    def d(self) -> int:
        return self.num.d

    def __mul__(self, other):
        if isinstance(other, (QRat, int, Fraction, LaurentPoly)):
            return StructuredFraction._make(self.num * other, dict(self.binoms))
        if not isinstance(other, StructuredFraction):
            return NotImplemented
        binoms = dict(self.binoms)
        for key, mult in other.binoms.items():
            binoms[key] = binoms.get(key, 0) + mult
        return StructuredFraction._make(self.num * other.num, binoms)

    __rmul__ = __mul__

    @classmethod
    def _make(cls, num: LaurentPoly, binoms: dict[BinomKey, int]) -> "StructuredFraction":
        out = cls.__new__(cls)
        out.num = num
        out.binoms = binoms
        return out

    def __neg__(self):
        return StructuredFraction._make(-self.num, dict(self.binoms))

    def __add__(self, other):
        if isinstance(other, (QRat, int, Fraction, LaurentPoly)):
            other = StructuredFraction(
                other if isinstance(other, LaurentPoly) else LaurentPoly.const(self.d, other)
            )
        if not isinstance(other, StructuredFraction):
            return NotImplemented
        common: dict[BinomKey, int] = dict(self.binoms)
        for key, mult in other.binoms.items():
            common[key] = max(common.get(key, 0), mult)
        a = self.num
        for key, mult in common.items():
            extra = mult - self.binoms.get(key, 0)
            for _ in range(extra):
                a = a * binom_poly(self.d, key)
        b = other.num
        for key, mult in common.items():
            extra = mult - other.binoms.get(key, 0)
            for _ in range(extra):
                b = b * binom_poly(self.d, key)
        return StructuredFraction._make(a + b, common)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, StructuredFraction) else -1 * other)

    def equals(self, other) -> bool:
        diff = self - other
        return diff.num.is_zero()

    def permuted(self, sigma: tuple[int, ...]) -> "StructuredFraction":
        num = self.num.permuted(sigma)
        binoms: list[tuple[tuple[int, int, QRat], int]] = []
        for (u, v, c), mult in self.binoms.items():
            binoms.append(((sigma[u], sigma[v], c), mult))
        return StructuredFraction(num, binoms)

    def reduce(self) -> "StructuredFraction":
        num = self.num
        binoms = dict(self.binoms)
        progress = True
        while progress:
            progress = False
            for key in sorted(binoms, key=lambda k: (k[0], k[1])):
                while binoms.get(key, 0) > 0:
                    q = divide_binomial(num, key)
                    if q is None:
                        break
                    num = q
                    binoms[key] -= 1
                    if binoms[key] == 0:
                        del binoms[key]
                    progress = True
        return StructuredFraction._make(num, binoms)

    def to_poly(self) -> LaurentPoly:
        red = self.reduce()
        if red.binoms:
            key = min(red.binoms)
            raise NotPolynomialError(
                f"denominator factor ({_binom_text(key)}) does not divide the numerator"
            )
        return red.num

    def eval(self, xs, t) -> Fraction:
        xs = [Fraction(x) for x in xs]
        total = self.num.eval(xs, t)
        for (u, v, c), mult in self.binoms.items():
            dv = xs[u] - c.eval(t) * xs[v]
            if dv == 0:
                raise ZeroDivisionError(f"denominator factor ({_binom_text((u, v, c))}) vanishes")
            total /= dv**mult
        return total

    def __str__(self) -> str:
        if not self.binoms:
            return str(self.num)
        dens = []
        for key in sorted(self.binoms, key=lambda k: (k[0], k[1])):
            mult = self.binoms[key]
            piece = f"({_binom_text(key)})"
            dens.append(piece + (f"^{mult}" if mult > 1 else ""))
        return f"({self.num}) / {'*'.join(dens)}"

    def __repr__(self) -> str:
        return f"StructuredFraction('{self}')"


def theta_ratio(d: int, m: int, num, den, invert: bool = False) -> StructuredFraction:
    """The multiplicative ratio (q^m*A - B)/(A - q^m*B) at A = a*x_p, B = b*x_s.

    num and den are the scaled variables (a, p) and (b, s).  With invert=True
    the reciprocal is returned, which equals the same form with m negated.
    """
    if invert:
        m = -m
    (a, p), (b, s) = num, den
    a = a if isinstance(a, QRat) else QRat.const(a)
    b = b if isinstance(b, QRat) else QRat.const(b)
    qm = QRat.q(m)
    top = LaurentPoly.variable(d, p) * (qm * a) - LaurentPoly.variable(d, s) * b
    # Denominator a*x_p - q^m*b*x_s, with the leading scalar divided out.
    return StructuredFraction(top * a.inverse(), [((p, s, qm * b * a.inverse()), 1)])


# -- theta factors as series in the spectral variable ------------------------


@dataclass(frozen=True)
class ThetaFactor:
    """theta_m evaluated at coef * x^exps * z, to be expanded in z or z^-1."""

    m: int
    coef: QRat
    exps: Mono


def series_mul(a: list[LaurentPoly], b: list[LaurentPoly], order: int, d: int) -> list[LaurentPoly]:
    out = [LaurentPoly.zero(d) for _ in range(order + 1)]
    for i, ai in enumerate(a[: order + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[: order + 1 - i]):
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def series_log(series: list[LaurentPoly], order: int, d: int) -> list[LaurentPoly]:
    """log of a series with constant term 1, truncated at the given order."""
    if not series or series[0] != LaurentPoly.one(d):
        raise ValueError("series_log needs constant term 1")
    eps = [LaurentPoly.zero(d)] + [t for t in series[1 : order + 1]]
    while len(eps) < order + 1:
        eps.append(LaurentPoly.zero(d))
    out = [LaurentPoly.zero(d) for _ in range(order + 1)]
    power = [LaurentPoly.one(d)] + [LaurentPoly.zero(d)] * order
    sign = 1
    for j in range(1, order + 1):
        power = series_mul(power, eps, order, d)
        inv_j = QRat.const(Fraction(sign, j))
        for k in range(order + 1):
            if power[k]:
                out[k] = out[k] + power[k] * inv_j
        sign = -sign
    return out


def _theta_factor_series(f: ThetaFactor, at: str, order: int, d: int) -> list[LaurentPoly]:
    qm = QRat.q(f.m)
    gap = qm - QRat.q(-f.m)
    out = []
    if at == "inf":
        out.append(LaurentPoly.const(d, qm))
        inv = f.coef.inverse() if f.m else None
        for l in range(1, order + 1):
            if f.m == 0:
                out.append(LaurentPoly.zero(d))
            else:
                mono = tuple(-l * e for e in f.exps)
                out.append(LaurentPoly.monomial(d, mono, QRat.q(f.m * l) * gap * inv**l))
    elif at == "zero":
        out.append(LaurentPoly.const(d, QRat.q(-f.m)))
        for l in range(1, order + 1):
            if f.m == 0:
                out.append(LaurentPoly.zero(d))
            else:
                mono = tuple(l * e for e in f.exps)
                out.append(LaurentPoly.monomial(d, mono, -QRat.q(-f.m * l) * gap * f.coef**l))
    else:
        raise ValueError("expansion point must be 'inf' or 'zero'")
    return out


def expand_theta_series(d: int, factors, at: str, order: int) -> list[LaurentPoly]:
    """Coefficient list of a product of theta factors, expanded at z = inf or z = 0.

    At inf the list is in powers of z^-1, at zero in powers of z.  Entries of
    factors may also be scalars or LaurentPoly multipliers free of z.
    """
    series = [LaurentPoly.one(d)] + [LaurentPoly.zero(d)] * order
    for f in factors:
        if isinstance(f, ThetaFactor):
            series = series_mul(series, _theta_factor_series(f, at, order, d), order, d)
        else:
            scalar = f if isinstance(f, LaurentPoly) else LaurentPoly.const(d, f)
            series = [t * scalar for t in series]
    return series
