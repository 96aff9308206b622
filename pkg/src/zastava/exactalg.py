"""Exact Laurent polynomials in q, z_1..z_n and characters with factored denominators.

A monomial ``q^k z^mu`` is keyed by ``(k, mu)`` where ``mu`` is a tuple of
integers (z-exponents in fundamental-weight coordinates).  Coefficients are
:class:`fractions.Fraction`.  A :class:`RationalCharacter` is a numerator
together with a multiset of denominator factors ``(1 - q^k z^mu)``; the
denominator is never multiplied out.
"""
from __future__ import annotations

import re
from collections import Counter, defaultdict
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Tuple

from .errors import NonExpandable

Exponent = Tuple[int, ...]
Key = Tuple[int, Exponent]
Factor = Tuple[int, Exponent]


def _vadd(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    """Finite sum of ``c * q^k * z^mu`` with nonzero rational ``c``."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Dict[Key, Fraction] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for key, c in terms.items():
                if c:
                    if len(key[1]) != nvars:
                        raise ValueError(f"exponent {key[1]} does not have {nvars} entries")
                    clean[key] = Fraction(c)
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0, (0,) * nvars): Fraction(1)})

    @classmethod
    def monomial(cls, k: int, mu: Iterable[int], coeff=1) -> "LaurentPoly":
        mu = tuple(mu)
        return cls(len(mu), {(k, mu): Fraction(coeff)})

    @classmethod
    def constant(cls, nvars: int, c) -> "LaurentPoly":
        return cls(nvars, {(0, (0,) * nvars): Fraction(c)})

    @classmethod
    def q_poly(cls, nvars: int, coeffs: Dict[int, object]) -> "LaurentPoly":
        """Polynomial in q alone, from ``{q_exponent: coefficient}``."""
        zero = (0,) * nvars
        return cls(nvars, {(k, zero): Fraction(c) for k, c in coeffs.items()})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        """Terms in canonical order: q-degree ascending, then z-exponent lex."""
        for key in sorted(self._terms):
            yield key, self._terms[key]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, k: int, mu: Exponent) -> Fraction:
        return self._terms.get((k, tuple(mu)), Fraction(0))

    def q_range(self) -> Tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no q-range")
        ks = [k for k, _ in self._terms]
        return min(ks), max(ks)

    def z_support(self) -> set:
        return {mu for _, mu in self._terms}

    def z_coefficient(self, mu: Exponent) -> "LaurentPoly":
        """The q-polynomial multiplying ``z^mu`` (returned with mu stripped to 0)."""
        mu = tuple(mu)
        zero = (0,) * self.nvars
        return LaurentPoly(self.nvars, {(k, zero): c for (k, m), c in self._terms.items() if m == mu})

    def q_part(self, k: int) -> "LaurentPoly":
        """The z-Laurent polynomial at q-degree ``k`` (q-exponent kept)."""
        return LaurentPoly(self.nvars, {key: c for key, c in self._terms.items() if key[0] == k})

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("mismatched number of z-variables")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Key, Fraction] = defaultdict(Fraction)
        for (k1, m1), c1 in self._terms.items():
            for (k2, m2), c2 in other._terms.items():
                out[(k1 + k2, _vadd(m1, m2))] += c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentPoly.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int, mu: Exponent) -> "LaurentPoly":
        """Multiply by the monomial ``q^k z^mu``."""
        mu = tuple(mu)
        return LaurentPoly(self.nvars, {(kk + k, _vadd(m, mu)): c for (kk, m), c in self._terms.items()})

    def map_z(self, fn) -> "LaurentPoly":
        """Apply ``fn`` to every z-exponent, summing collisions."""
        out: Dict[Key, Fraction] = defaultdict(Fraction)
        for (k, m), c in self._terms.items():
            out[(k, tuple(fn(m)))] += c
        return LaurentPoly(self.nvars, out)

    def truncate(self, n: int) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {key: c for key, c in self._terms.items() if key[0] <= n})

    def at_q_zero(self) -> "LaurentPoly":
        """Specialize q = 0; fails if negative q-powers are present."""
        if any(k < 0 for k, _ in self._terms):
            raise ValueError("negative q-power present, cannot set q = 0")
        return LaurentPoly(self.nvars, {key: c for key, c in self._terms.items() if key[0] == 0})

    def at_q_one(self) -> "LaurentPoly":
        out: Dict[Key, Fraction] = defaultdict(Fraction)
        for (_, m), c in self._terms.items():
            out[(0, m)] += c
        return LaurentPoly(self.nvars, out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def factor_poly(factor: Factor) -> LaurentPoly:
    """The Laurent polynomial ``1 - q^k z^mu``."""
    k, mu = factor
    return LaurentPoly.one(len(mu)) - LaurentPoly.monomial(k, mu)


def _check_factor(factor: Factor) -> Factor:
    k, mu = factor
    mu = tuple(int(x) for x in mu)
    if k == 0 and not any(mu):
        raise ValueError("(1 - q^0 z^0) = 0 is not a valid denominator factor")
    if k < 0:
        raise ValueError("denominator factors must have nonnegative q-exponent")
    return (int(k), mu)


def try_divide(num: LaurentPoly, factor: Factor) -> LaurentPoly | None:
    """Exact quotient ``num / (1 - q^k z^mu)`` for ``k >= 1``, or None if inexact."""
    k, mu = factor
    if k < 1:
        return None
    if num.is_zero():
        return num
    levels: Dict[int, Dict[Exponent, Fraction]] = defaultdict(dict)
    for (d, m), c in num._terms.items():
        levels[d][m] = c
    lo, hi = min(levels), max(levels)
    quotient: Dict[int, Dict[Exponent, Fraction]] = {}
    # N_d = Q_d - m * Q_{d-k}; Q vanishes above hi - k
    for d in range(lo, hi + 1):
        row = dict(levels.get(d, {}))
        for m, c in quotient.get(d - k, {}).items():
            key = _vadd(m, mu)
            row[key] = row.get(key, 0) + c
        row = {m: c for m, c in row.items() if c}
        if d > hi - k:
            if row:
                return None
        elif row:
            quotient[d] = row
    out = {(d, m): c for d, row in quotient.items() for m, c in row.items()}
    return LaurentPoly(num.nvars, out)


class RationalCharacter:
    """``num / prod (1 - q^k z^mu)`` with the denominator kept as a sorted multiset."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Iterable[Factor] = ()):
        self.num = num
        self.den = tuple(sorted(_check_factor(f) for f in den))
        for _, mu in self.den:
            if len(mu) != num.nvars:
                raise ValueError("denominator factor has the wrong number of z-variables")

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalCharacter":
        return cls(p, ())

    @classmethod
    def one(cls, nvars: int) -> "RationalCharacter":
        return cls(LaurentPoly.one(nvars))

    @classmethod
    def zero(cls, nvars: int) -> "RationalCharacter":
        return cls(LaurentPoly.zero(nvars))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def denominator_poly(self) -> LaurentPoly:
        out = LaurentPoly.one(self.nvars)
        for f in self.den:
            out = out * factor_poly(f)
        return out

    def __add__(self, other):
        return rc_add(self, _as_rc(other, self.nvars))

    __radd__ = __add__

    def __neg__(self):
        return RationalCharacter(-self.num, self.den)

    def __sub__(self, other):
        return rc_add(self, -_as_rc(other, self.nvars))

    def __rsub__(self, other):
        return rc_add(_as_rc(other, self.nvars), -self)

    def __mul__(self, other):
        if isinstance(other, RationalCharacter):
            return RationalCharacter(self.num * other.num, self.den + other.den)
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return RationalCharacter(self.num * other, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def divide_by_factor(self, factor: Factor) -> "RationalCharacter":
        """Append ``(1 - q^k z^mu)`` to the denominator."""
        return RationalCharacter(self.num, self.den + (factor,))

    def shift(self, k: int, mu: Exponent) -> "RationalCharacter":
        return RationalCharacter(self.num.shift(k, mu), self.den)

    def map_z(self, fn) -> "RationalCharacter":
        return RationalCharacter(self.num.map_z(fn), [(k, tuple(fn(mu))) for k, mu in self.den])

    def reduced(self) -> "RationalCharacter":
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.num
        kept = []
        for f in sorted(self.den, key=lambda f: (-f[0], f[1])):
            q = try_divide(num, f) if not num.is_zero() else None
            if q is not None:
                num = q
            else:
                kept.append(f)
        if num.is_zero():
            return RationalCharacter(num, ())
        return RationalCharacter(num, kept)

    def __eq__(self, other):
        if isinstance(other, (LaurentPoly, int, Fraction)):
            other = _as_rc(other, self.nvars)
        if not isinstance(other, RationalCharacter):
            return NotImplemented
        return rc_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"RationalCharacter({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def _as_rc(x, nvars: int) -> RationalCharacter:
    if isinstance(x, RationalCharacter):
        return x
    if isinstance(x, LaurentPoly):
        return RationalCharacter(x)
    return RationalCharacter(LaurentPoly.constant(nvars, x))


def _den_poly(factors: Iterable[Factor], nvars: int) -> LaurentPoly:
    out = LaurentPoly.one(nvars)
    for f in factors:
        out = out * factor_poly(f)
    return out


def rc_add(a: RationalCharacter, b: RationalCharacter) -> RationalCharacter:
    """Sum over the multiset-lcm of the two denominators."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    ca, cb = Counter(a.den), Counter(b.den)
    common = ca | cb
    extra_a = common - ca
    extra_b = common - cb
    num = a.num * _den_poly(extra_a.elements(), a.nvars) + b.num * _den_poly(extra_b.elements(), b.nvars)
    return RationalCharacter(num, common.elements())


def rc_sum(items: Iterable[RationalCharacter], nvars: int) -> RationalCharacter:
    """Sum of many characters over one common denominator."""
    items = [x for x in items if not x.is_zero()]
    if not items:
        return RationalCharacter.zero(nvars)
    common: Counter = Counter()
    for x in items:
        common |= Counter(x.den)
    num = LaurentPoly.zero(nvars)
    for x in items:
        num = num + x.num * _den_poly((common - Counter(x.den)).elements(), nvars)
    return RationalCharacter(num, common.elements())


def rc_equal(a: RationalCharacter, b: RationalCharacter) -> bool:
    """True iff ``a.num * prod(b.den) == b.num * prod(a.den)``."""
    ca, cb = Counter(a.den), Counter(b.den)
    shared = ca & cb
    left = a.num * _den_poly((cb - shared).elements(), a.nvars)
    right = b.num * _den_poly((ca - shared).elements(), b.nvars)
    return left == right


def series_expand(a: RationalCharacter, n: int) -> LaurentPoly:
    """q-adic expansion of ``a`` truncated to q-degree <= n."""
    for k, mu in a.den:
        if k == 0:
            raise NonExpandable(f"factor (1 - z^{mu}) has q-degree 0")
    out = a.num.truncate(n)
    if out.is_zero():
        return out
    for k, mu in a.den:
        out = _geometric_mul(out, k, mu, n)
    return out


def _geometric_mul(p: LaurentPoly, k: int, mu: Exponent, n: int) -> LaurentPoly:
    # p / (1 - m) truncated at q^n, via R_d = P_d + m * R_{d-k}
    if p.is_zero():
        return p
    levels: Dict[int, Dict[Exponent, Fraction]] = defaultdict(dict)
    for (d, m), c in p._terms.items():
        levels[d][m] = c
    lo = min(levels)
    result: Dict[int, Dict[Exponent, Fraction]] = {}
    for d in range(lo, n + 1):
        row = dict(levels.get(d, {}))
        for m, c in result.get(d - k, {}).items():
            key = _vadd(m, mu)
            row[key] = row.get(key, 0) + c
        row = {m: c for m, c in row.items() if c}
        if row:
            result[d] = row
    return LaurentPoly(p.nvars, {(d, m): c for d, row in result.items() for m, c in row.items()})


# -- canonical text form ---------------------------------------------------

def _monomial_text(k: int, mu: Exponent) -> str:
    parts = []
    if k:
        parts.append("q" if k == 1 else f"q^{k}")
    for i, e in enumerate(mu, start=1):
        if e:
            parts.append(f"z{i}" if e == 1 else f"z{i}^{e}")
    return "*".join(parts)


def poly_text(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for idx, ((k, mu), c) in enumerate(p.items()):
        mono = _monomial_text(k, mu)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


def factor_text(f: Factor) -> str:
    k, mu = f
    return f"(1 - {_monomial_text(k, mu)})"


def to_text(x) -> str:
    """Canonical, byte-stable text for a LaurentPoly or RationalCharacter."""
    if isinstance(x, LaurentPoly):
        return poly_text(x)
    if isinstance(x, RationalCharacter):
        num = poly_text(x.num)
        if len(x.num) > 1:
            num = f"({num})"
        if not x.den:
            return num
        return f"{num} / [{' '.join(factor_text(f) for f in x.den)}]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


_FACTOR_RE = re.compile(r"\(1 - ([^)]*)\)")


def _parse_monomial(text: str, nvars: int) -> Tuple[Fraction, int, Exponent]:
    coeff = Fraction(1)
    k = 0
    mu = [0] * nvars
    for piece in text.split("*"):
        if piece.startswith("q"):
            k += int(piece[2:]) if piece.startswith("q^") else 1
        elif piece.startswith("z"):
            name, _, exp = piece.partition("^")
            mu[int(name[1:]) - 1] += int(exp) if exp else 1
        else:
            coeff *= Fraction(piece)
    return coeff, k, tuple(mu)


def parse_poly(text: str, nvars: int) -> LaurentPoly:
    """Inverse of :func:`poly_text`."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if text == "0":
        return LaurentPoly.zero(nvars)
    # split into signed terms on " + " / " - " separators
    tokens = re.split(r" ([+-]) ", text)
    signs = ["+"] + tokens[1::2]
    bodies = tokens[0::2]
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for sign, body in zip(signs, bodies):
        neg = sign == "-"
        if body.startswith("-"):
            neg = not neg
            body = body[1:]
        c, k, mu = _parse_monomial(body, nvars)
        out[(k, mu)] += -c if neg else c
    return LaurentPoly(nvars, out)


def parse_text(text: str, nvars: int):
    """Parse the canonical text of a LaurentPoly or RationalCharacter."""
    text = text.strip()
    if " / [" in text:
        num_text, _, den_text = text.partition(" / [")
        den_text = den_text.rstrip("]")
        den = []
        for mono in _FACTOR_RE.findall(den_text):
            c, k, mu = _parse_monomial(mono, nvars)
            den.append((k, mu))
        return RationalCharacter(parse_poly(num_text, nvars), den)
    return parse_poly(text, nvars)


# -- JSON form ---------------------------------------------------------------

def poly_to_json(p: LaurentPoly) -> list:
    return [[k, list(mu), str(c)] for (k, mu), c in p.items()]


def poly_from_json(data: list, nvars: int) -> LaurentPoly:
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for k, mu, c in data:
        out[(int(k), tuple(int(m) for m in mu))] += Fraction(c)
    return LaurentPoly(nvars, out)


def rc_to_json(x: RationalCharacter) -> dict:
    return {"num": poly_to_json(x.num), "den": [[k, list(mu)] for k, mu in x.den]}


def rc_from_json(data: dict, nvars: int) -> RationalCharacter:
    return RationalCharacter(
        poly_from_json(data["num"], nvars),
        [(int(k), tuple(int(m) for m in mu)) for k, mu in data["den"]],
    )
