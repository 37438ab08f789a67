"""Exact multivariate polynomials with Gaussian-rational coefficients.

Every tensor component in the package is a :class:`Poly` on a fixed
:class:`Chart`.  Coefficients are pairs of ``gmpy2.mpq`` rationals, stored
without zeros, so equality of polynomials is plain structural equality.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from operator import add
from typing import Iterable, Iterator, Mapping, Sequence, Union

from gmpy2 import mpq

Rational = mpq
Monomial = tuple  # tuple[int, ...], one exponent per chart coordinate

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_ZERO = mpq(0)
_ONE = mpq(1)


def as_rational(value) -> mpq:
    """Convert an int, Fraction, mpq or ``"a/b"`` string to a canonical rational."""
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    return mpq(value)


def format_rational(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @classmethod
    def coerce(cls, value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating-point coefficients are not supported")
        return cls(value, 0)

    def __add__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re * other.re - self.im * other.im,
                             self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * GaussRational.coerce(other).inverse()

    def inverse(self) -> "GaussRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussRational(self.re / norm, -self.im / norm)

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        try:
            other = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{format_rational(self.im)}*i"
        if self.re == 0:
            return im
        sign = "-" if self.im < 0 else "+"
        mag = format_rational(abs(self.im))
        im_part = "i" if abs(self.im) == 1 else f"{mag}*i"
        return f"({format_rational(self.re)} {sign} {im_part})"


I = GaussRational(0, 1)


@dataclass(frozen=True, eq=False)
class Chart:
    """An ordered list of distinct coordinate names."""

    names: tuple

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names in {names}")
        for name in names:
            if not isinstance(name, str) or not _IDENT.match(name):
                raise ValueError(f"invalid coordinate name {name!r}")
            if name == "i":
                raise ValueError("'i' is reserved for the imaginary unit")
        object.__setattr__(self, "names", names)

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r} on chart {self.names}") from None

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __eq__(self, other):
        return self is other or (isinstance(other, Chart) and self.names == other.names)

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Chart({list(self.names)})"


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


Scalar = Union[int, Fraction, mpq, GaussRational]


class Poly:
    """A polynomial on a chart; immutable once built.

    ``_terms`` maps exponent tuples to ``(re, im)`` pairs of ``mpq`` and never
    holds a zero pair.
    """

    __slots__ = ("chart", "_terms", "_hash")

    def __init__(self, chart: Chart, terms: Mapping | None = None):
        self.chart = chart
        clean = {}
        if terms:
            n = chart.dim
            for mono, coeff in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != n or any(e < 0 for e in mono):
                    raise ValueError(f"bad monomial {mono} for chart of dim {n}")
                c = GaussRational.coerce(coeff)
                if not c.is_zero():
                    clean[mono] = (c.re, c.im)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, chart: Chart, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.chart = chart
        p._terms = terms
        p._hash = None
        return p

    # construction helpers
    @classmethod
    def zero(cls, chart: Chart) -> "Poly":
        return cls._raw(chart, {})

    @classmethod
    def const(cls, chart: Chart, value: Scalar) -> "Poly":
        c = GaussRational.coerce(value)
        if c.is_zero():
            return cls.zero(chart)
        return cls._raw(chart, {(0,) * chart.dim: (c.re, c.im)})

    @classmethod
    def var(cls, chart: Chart, which: Union[int, str]) -> "Poly":
        k = chart.index(which) if isinstance(which, str) else which
        if not 0 <= k < chart.dim:
            raise IndexError(f"coordinate index {k} out of range")
        mono = tuple(1 if j == k else 0 for j in range(chart.dim))
        return cls._raw(chart, {mono: (_ONE, _ZERO)})

    @classmethod
    def monomial(cls, chart: Chart, exponents: Sequence[int], coeff: Scalar = 1) -> "Poly":
        return cls(chart, {tuple(exponents): coeff})

    # inspection
    @property
    def terms(self) -> list:
        """``(exponents, GaussRational)`` pairs in descending graded-lex order."""
        return [(m, GaussRational(*self._terms[m]))
                for m in sorted(self._terms, key=_grlex_key, reverse=True)]

    def coeff(self, mono: Sequence[int]) -> GaussRational:
        re_im = self._terms.get(tuple(mono))
        return GaussRational(*re_im) if re_im else GaussRational(0)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> GaussRational:
        return self.coeff((0,) * self.chart.dim)

    def is_real(self) -> bool:
        return all(im == 0 for _, im in self._terms.values())

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.chart != self.chart:
                raise ValueError(f"chart mismatch: {self.chart} vs {other.chart}")
            return other
        return Poly.const(self.chart, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, (br, bi) in other._terms.items():
            cur = out.get(m)
            if cur is None:
                out[m] = (br, bi)
            else:
                r, i = cur[0] + br, cur[1] + bi
                if r == 0 and i == 0:
                    del out[m]
                else:
                    out[m] = (r, i)
        return Poly._raw(self.chart, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.chart, {m: (-r, -i) for m, (r, i) in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        if other.chart != self.chart:
            raise ValueError(f"chart mismatch: {self.chart} vs {other.chart}")
        if not self._terms or not other._terms:
            return Poly.zero(self.chart)
        out: dict = {}
        get = out.get
        for ma, (ar, ai) in self._terms.items():
            for mb, (br, bi) in other._terms.items():
                m = tuple(map(add, ma, mb))
                if ai == 0 and bi == 0:
                    r, i = ar * br, _ZERO
                else:
                    r, i = ar * br - ai * bi, ar * bi + ai * br
                cur = get(m)
                if cur is not None:
                    r, i = cur[0] + r, cur[1] + i
                out[m] = (r, i)
        return Poly._raw(self.chart, {m: c for m, c in out.items() if c[0] != 0 or c[1] != 0})

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def scale(self, value: Scalar) -> "Poly":
        c = GaussRational.coerce(value)
        if c.is_zero():
            return Poly.zero(self.chart)
        cr, ci = c.re, c.im
        if ci == 0:
            return Poly._raw(self.chart, {m: (r * cr, i * cr) for m, (r, i) in self._terms.items()})
        return Poly._raw(self.chart, {m: (r * cr - i * ci, r * ci + i * cr)
                                      for m, (r, i) in self._terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Poly.const(self.chart, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def partial(self, index: int) -> "Poly":
        """Exact partial derivative with respect to coordinate ``index``."""
        if not 0 <= index < self.chart.dim:
            raise IndexError(f"coordinate index {index} out of range for dim {self.chart.dim}")
        out = {}
        for m, (r, i) in self._terms.items():
            e = m[index]
            if e:
                nm = m[:index] + (e - 1,) + m[index + 1:]
                out[nm] = (r * e, i * e)
        return Poly._raw(self.chart, out)

    def conj(self) -> "Poly":
        return Poly._raw(self.chart, {m: (r, -i) for m, (r, i) in self._terms.items() if r != 0 or i != 0})

    def real_part(self) -> "Poly":
        """Real part, treating every coordinate as a real variable."""
        return Poly._raw(self.chart, {m: (r, _ZERO) for m, (r, i) in self._terms.items() if r != 0})

    def imag_part(self) -> "Poly":
        return Poly._raw(self.chart, {m: (i, _ZERO) for m, (r, i) in self._terms.items() if i != 0})

    def eval(self, point: Sequence) -> GaussRational:
        if len(point) != self.chart.dim:
            raise ValueError(f"point has length {len(point)}, chart dim is {self.chart.dim}")
        pt = [GaussRational.coerce(v) for v in point]
        total = GaussRational(0)
        for m, (r, i) in self._terms.items():
            term = GaussRational(r, i)
            for v, e in zip(pt, m):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace coordinate k by ``images[k]`` (all on a common target chart)."""
        if len(images) != self.chart.dim:
            raise ValueError("need one image per coordinate")
        target = images[0].chart
        result = Poly.zero(target)
        powers: dict = {}
        for m, (r, i) in self._terms.items():
            term = Poly.const(target, GaussRational(r, i))
            for k, e in enumerate(m):
                if e:
                    key = (k, e)
                    if key not in powers:
                        powers[key] = images[k] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def embed(self, target: Chart, positions: Sequence[int] | None = None) -> "Poly":
        """Re-express on ``target``; coordinate k goes to ``positions[k]``.

        Without ``positions`` coordinates are matched by name.
        """
        if positions is None:
            positions = [target.index(name) for name in self.chart.names]
        n = target.dim
        out = {}
        for m, c in self._terms.items():
            nm = [0] * n
            for k, e in enumerate(m):
                nm[positions[k]] += e
            out[tuple(nm)] = c
        return Poly._raw(target, out)

    def restrict(self, target: Chart, kept: Sequence[int]) -> "Poly":
        """Set every coordinate not in ``kept`` to zero; ``target`` lists the kept ones."""
        keep = tuple(kept)
        dropped = [k for k in range(self.chart.dim) if k not in keep]
        out: dict = {}
        for m, (r, i) in self._terms.items():
            if any(m[k] for k in dropped):
                continue
            nm = tuple(m[k] for k in keep)
            cur = out.get(nm)
            if cur is not None:
                r, i = cur[0] + r, cur[1] + i
            out[nm] = (r, i)
        return Poly._raw(target, {m: c for m, c in out.items() if c[0] != 0 or c[1] != 0})

    # equality / printing
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.chart == other.chart and self._terms == other._terms
        try:
            return self == Poly.const(self.chart, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = self.chart.names
        pieces = []
        for mono, c in self.terms:
            factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, mono) if e]
            negative = c.re < 0 if c.im == 0 else (c.re == 0 and c.im < 0)
            mag = -c if negative else c
            if factors:
                body = "*".join(factors)
                text = body if mag == 1 else f"{mag}*{body}"
            else:
                text = str(mag)
            if not pieces:
                pieces.append(f"-{text}" if negative else text)
            else:
                pieces.append(f" - {text}" if negative else f" + {text}")
        return "".join(pieces)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_partial(p: Poly, index: int) -> Poly:
    return p.partial(index)


def poly_eval(p: Poly, point: Sequence) -> GaussRational:
    return p.eval(point)


def poly_conj(p: Poly) -> Poly:
    return p.conj()
