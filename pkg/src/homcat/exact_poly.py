"""Exact sparse multivariate polynomials over the rationals.

Polynomials model the coordinate ring of Q^n.  A :class:`PolySubstitution`
is a polynomial map ``phi: Q^n -> Q^n`` acting on functions by pullback,
``phi*(f) = f o phi``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import DimensionError

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def grlex_key(exps: Exponents):
    # highest total degree first, then lexicographic with x1 largest
    return (-sum(exps), tuple(-e for e in exps))


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Scalar] | None = None):
        if nvars < 0:
            raise ValueError("number of variables must be non-negative")
        clean: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionError(f"exponent {exps} does not have length {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = to_rational(coeff)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponents, Fraction]) -> "Polynomial":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Polynomial":
        """The coordinate function x_{i+1} (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff})

    # inspection

    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponents, Fraction]]:
        """Terms in canonical (graded-lexicographic) order."""
        for exps in sorted(self._terms, key=grlex_key):
            yield exps, self._terms[exps]

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DimensionError(
                    f"polynomials in {self.nvars} and {other.nvars} variables cannot be combined"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exps, c in other._terms.items():
            v = out.get(exps, 0) + c
            if v:
                out[exps] = v
            else:
                out.pop(exps, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, q: Scalar) -> "Polynomial":
        q = to_rational(q)
        if not q:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * q for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def partial(self, i: int) -> "Polynomial":
        return poly_partial(self, i)

    def __call__(self, phi: "PolySubstitution") -> "Polynomial":
        return poly_substitute(self, phi)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError("point has the wrong number of coordinates")
        pt = [to_rational(v) for v in point]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(pt, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    # equality / hashing

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(self.nvars, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # display

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exps, c in self.items():
            mono = monomial_str(exps)
            mag = abs(c)
            if mono == "1":
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self.nvars}, {str(self)!r})"


def monomial_str(exps: Exponents, prefix: str = "x") -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"{prefix}{i + 1}")
        elif e > 1:
            parts.append(f"{prefix}{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def _check_same(f: Polynomial, g: Polynomial) -> None:
    if f.nvars != g.nvars:
        raise DimensionError(f"polynomials in {f.nvars} and {g.nvars} variables")


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_same(f, g)
    out: Dict[Exponents, Fraction] = {}
    for e1, c1 in f._terms.items():
        for e2, c2 in g._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return Polynomial._raw(f.nvars, out)


def poly_partial(f: Polynomial, i: int) -> Polynomial:
    """Partial derivative with respect to x_{i+1}."""
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    out: Dict[Exponents, Fraction] = {}
    for exps, c in f._terms.items():
        e = exps[i]
        if e:
            new = exps[:i] + (e - 1,) + exps[i + 1:]
            out[new] = c * e
    return Polynomial._raw(f.nvars, out)


def gradient(f: Polynomial) -> Tuple[Polynomial, ...]:
    return tuple(poly_partial(f, i) for i in range(f.nvars))


class PolySubstitution:
    """A polynomial map phi: Q^n -> Q^n given by the images of the coordinates.

    ``phi(f)`` (or :func:`poly_substitute`) returns the pullback ``f o phi``.
    """

    __slots__ = ("nvars", "images", "_power_cache")

    def __init__(self, images: Sequence[Polynomial], nvars: int | None = None):
        images = tuple(images)
        if nvars is None:
            if not images:
                raise ValueError("nvars is required for an empty substitution")
            nvars = images[0].nvars
        if len(images) != nvars:
            raise DimensionError(f"need {nvars} coordinate images, got {len(images)}")
        for img in images:
            if img.nvars != nvars:
                raise DimensionError("coordinate image lives in the wrong ring")
        self.nvars = nvars
        self.images = images
        self._power_cache: Dict[Tuple[int, int], Polynomial] = {}

    @classmethod
    def identity(cls, nvars: int) -> "PolySubstitution":
        return cls([Polynomial.var(nvars, i) for i in range(nvars)], nvars)

    @classmethod
    def linear(cls, matrix: Sequence[Sequence[Scalar]]) -> "PolySubstitution":
        """x_i -> sum_j matrix[i][j] x_j."""
        n = len(matrix)
        images = []
        for row in matrix:
            if len(row) != n:
                raise DimensionError("linear substitution needs a square matrix")
            images.append(Polynomial(n, {
                tuple(1 if k == j else 0 for k in range(n)): c
                for j, c in enumerate(row)
            }))
        return cls(images, n)

    def is_identity(self) -> bool:
        return self.images == PolySubstitution.identity(self.nvars).images

    def _power(self, i: int, e: int) -> Polynomial:
        key = (i, e)
        cached = self._power_cache.get(key)
        if cached is None:
            if e == 0:
                cached = Polynomial.one(self.nvars)
            elif e == 1:
                cached = self.images[i]
            else:
                cached = self._power(i, e - 1) * self.images[i]
            self._power_cache[key] = cached
        return cached

    def __call__(self, f: Polynomial) -> Polynomial:
        return poly_substitute(f, self)

    def __eq__(self, other):
        if not isinstance(other, PolySubstitution):
            return NotImplemented
        return self.nvars == other.nvars and self.images == other.images

    def __hash__(self):
        return hash((self.nvars, self.images))

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.images) + ")"

    def __repr__(self):
        return f"PolySubstitution{self}"


def poly_substitute(f: Polynomial, phi: PolySubstitution) -> Polynomial:
    """Return f o phi."""
    if f.nvars != phi.nvars:
        raise DimensionError(
            f"cannot substitute a map on Q^{phi.nvars} into a polynomial in {f.nvars} variables"
        )
    n = f.nvars
    out = Polynomial.zero(n)
    for exps, c in f._terms.items():
        term = Polynomial.constant(n, c)
        for i, e in enumerate(exps):
            if e:
                term = term * phi._power(i, e)
        out = out + term
    return out


def substitution_compose(phi: PolySubstitution, psi: PolySubstitution) -> PolySubstitution:
    """The map phi o psi, so that f(compose(phi, psi)) == f(phi)(psi)."""
    if phi.nvars != psi.nvars:
        raise DimensionError("substitutions act on spaces of different dimension")
    return PolySubstitution([poly_substitute(img, psi) for img in phi.images], phi.nvars)


def substitution_power(phi: PolySubstitution, k: int) -> PolySubstitution:
    result = PolySubstitution.identity(phi.nvars)
    for _ in range(k):
        result = substitution_compose(result, phi)
    return result


def monomials_up_to(nvars: int, degree: int, min_degree: int = 0) -> list:
    """Exponent tuples of total degree in [min_degree, degree], canonical order."""
    out = []
    for d in range(min_degree, degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
    if nvars == 0:
        out = [()] if min_degree <= 0 <= degree else []
    return sorted(set(out), key=lambda e: (sum(e), tuple(-x for x in e)))


def poly_from_items(nvars: int, items: Iterable[Tuple[Sequence[int], Scalar]]) -> Polynomial:
    return Polynomial(nvars, {tuple(e): c for e, c in items})
