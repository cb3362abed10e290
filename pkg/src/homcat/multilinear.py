"""Finite-dimensional linear algebra over Q and exterior-algebra bookkeeping.

Conventions used throughout the package:

* indices are 0-based; human-readable labels are 1-based (``e1`` is index 0);
* a matrix acts on column vectors, so the image of the basis vector ``e_a``
  is column ``a``;
* a basis multivector ``e_I`` is indexed by a strictly increasing tuple ``I``.

Bilinear identities only need to be checked on basis tuples: both sides are
multilinear in their arguments, so agreement on a basis gives agreement
everywhere.  Every checker below relies on that.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import DimensionError
from .exact_poly import Polynomial, PolySubstitution, Scalar, format_rational, to_rational
from .report import CheckReport

ExtIndex = Tuple[int, ...]


# ---------------------------------------------------------------- vectors


class QVec:
    """A vector in Q^n, written in the basis e1..en."""

    __slots__ = ("coeffs",)
    prefix = "e"

    def __init__(self, coeffs: Iterable[Scalar]):
        self.coeffs = tuple(to_rational(c) for c in coeffs)

    @classmethod
    def zero(cls, n: int) -> "QVec":
        return cls((0,) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> "QVec":
        return cls(1 if k == i else 0 for k in range(n))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "QVec"):
        if len(other.coeffs) != len(self.coeffs):
            raise DimensionError(f"vectors of dimension {self.dim} and {other.dim}")

    def __add__(self, other: "QVec") -> "QVec":
        self._check(other)
        return QVec(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "QVec") -> "QVec":
        self._check(other)
        return QVec(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "QVec":
        return QVec(-a for a in self.coeffs)

    def __mul__(self, q: Scalar) -> "QVec":
        q = to_rational(q)
        return QVec(a * q for a in self.coeffs)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QVec):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append((c, f"{self.prefix}{i + 1}"))
        return _signed_sum(parts)

    __repr__ = __str__


def _signed_sum(parts: List[Tuple[Fraction, str]]) -> str:
    if not parts:
        return "0"
    out = ""
    for k, (c, label) in enumerate(parts):
        mag = abs(c)
        if label == "1":
            body = format_rational(mag)
        else:
            body = label if mag == 1 else f"{format_rational(mag)}*{label}"
        if k == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


# ---------------------------------------------------------------- matrices


class QMatrix:
    """A rectangular matrix with rational entries (immutable)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[Scalar]], ncols: Optional[int] = None):
        self.rows = tuple(tuple(to_rational(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise DimensionError("matrix rows have different lengths")
        self.ncols = widths.pop() if widths else (ncols or 0)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zero(cls, m: int, n: Optional[int] = None) -> "QMatrix":
        n = m if n is None else n
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "QMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[QVec], nrows: Optional[int] = None) -> "QMatrix":
        if not columns:
            return cls.zero(nrows or 0, 0)
        m = columns[0].dim
        return cls([[col[i] for col in columns] for i in range(m)], len(columns))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> QVec:
        return QVec(row[j] for row in self.rows)

    def transpose(self) -> "QMatrix":
        return QMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    @property
    def T(self) -> "QMatrix":
        return self.transpose()

    def apply(self, v: QVec) -> QVec:
        if v.dim != self.ncols:
            raise DimensionError(f"{self.nrows}x{self.ncols} matrix applied to a vector of dimension {v.dim}")
        return QVec(sum((a * b for a, b in zip(row, v.coeffs)), Fraction(0)) for row in self.rows)

    def __matmul__(self, other):
        if isinstance(other, QVec):
            return self.apply(other)
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return QMatrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self.rows],
            other.ncols,
        )

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise DimensionError("matrix shapes differ")
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise DimensionError("matrix shapes differ")
        return QMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "QMatrix":
        return QMatrix([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, q: Scalar) -> "QMatrix":
        q = to_rational(q)
        return QMatrix([[a * q for a in r] for r in self.rows], self.ncols)

    def __pow__(self, k: int) -> "QMatrix":
        if not self.is_square():
            raise DimensionError("only square matrices have powers")
        result = QMatrix.identity(self.nrows)
        for _ in range(k):
            result = result @ self
        return result

    def rref(self) -> Tuple["QMatrix", List[int]]:
        """Reduced row echelon form and pivot columns (exact Gauss-Jordan)."""
        m = [list(r) for r in self.rows]
        pivots: List[int] = []
        row = 0
        for col in range(self.ncols):
            pivot = next((r for r in range(row, self.nrows) if m[r][col]), None)
            if pivot is None:
                continue
            m[row], m[pivot] = m[pivot], m[row]
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for r in range(self.nrows):
                if r != row and m[r][col]:
                    f = m[r][col]
                    m[r] = [a - f * b for a, b in zip(m[r], m[row])]
            pivots.append(col)
            row += 1
            if row == self.nrows:
                break
        return QMatrix(m, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def column_space(self) -> List[QVec]:
        """A basis of the image, taken from the pivot columns."""
        _, pivots = self.rref()
        return [self.column(j) for j in pivots]

    def __eq__(self, other):
        if isinstance(other, QMatrix):
            return self.shape == other.shape and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "[" + "; ".join(" ".join(format_rational(x) for x in r) for r in self.rows) + "]"

    __repr__ = __str__


# ---------------------------------------------------------------- structure constants


class StructureConstants:
    """Bilinear map on Q^n: ``[e_i, e_j] = sum_k c[(i, j, k)] e_k``.

    Skew-symmetry is not enforced, so non-examples can be represented.
    """

    __slots__ = ("dim", "entries", "_table")

    def __init__(self, dim: int, entries: Mapping[Tuple[int, int, int], Scalar] | None = None):
        self.dim = dim
        clean: Dict[Tuple[int, int, int], Fraction] = {}
        for (i, j, k), c in (entries or {}).items():
            if not all(0 <= t < dim for t in (i, j, k)):
                raise DimensionError(f"structure constant index {(i, j, k)} out of range for dim {dim}")
            c = to_rational(c)
            if c:
                clean[(i, j, k)] = clean.get((i, j, k), Fraction(0)) + c
        self.entries = {key: v for key, v in clean.items() if v}
        self._table: Dict[Tuple[int, int], QVec] = {}

    @classmethod
    def skew(cls, dim: int, brackets: Mapping[Tuple[int, int], Mapping[int, Scalar]]) -> "StructureConstants":
        """Build from [e_i, e_j] for some pairs i < j, filling in [e_j, e_i] = -[e_i, e_j]."""
        entries: Dict[Tuple[int, int, int], Fraction] = {}
        for (i, j), vals in brackets.items():
            if i == j:
                raise ValueError("a skew bracket has [e_i, e_i] = 0")
            for k, c in vals.items():
                c = to_rational(c)
                entries[(i, j, k)] = entries.get((i, j, k), 0) + c
                entries[(j, i, k)] = entries.get((j, i, k), 0) - c
        return cls(dim, entries)

    @classmethod
    def from_function(cls, dim: int, fn: Callable[[int, int], QVec]) -> "StructureConstants":
        entries = {}
        for i in range(dim):
            for j in range(dim):
                v = fn(i, j)
                for k, c in enumerate(v.coeffs):
                    if c:
                        entries[(i, j, k)] = c
        return cls(dim, entries)

    def value(self, i: int, j: int) -> QVec:
        v = self._table.get((i, j))
        if v is None:
            v = QVec(self.entries.get((i, j, k), 0) for k in range(self.dim))
            self._table[(i, j)] = v
        return v

    def apply(self, x: QVec, y: QVec) -> QVec:
        return bracket_apply(self, x, y)

    def is_skew(self) -> bool:
        return all(self.entries.get((j, i, k), 0) == -c for (i, j, k), c in self.entries.items())

    def composed(self, alpha: QMatrix) -> "StructureConstants":
        """Structure constants of alpha o [ , ]."""
        return StructureConstants.from_function(self.dim, lambda i, j: alpha.apply(self.value(i, j)))

    def __eq__(self, other):
        if isinstance(other, StructureConstants):
            return self.dim == other.dim and self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self.entries.items())))

    def __str__(self):
        parts = []
        for i in range(self.dim):
            for j in range(self.dim):
                v = self.value(i, j)
                if not v.is_zero():
                    parts.append(f"[e{i + 1},e{j + 1}]={v}")
        return "{" + ", ".join(parts) + "}"

    __repr__ = __str__


def bracket_apply(c: StructureConstants, x: QVec, y: QVec) -> QVec:
    if x.dim != c.dim or y.dim != c.dim:
        raise DimensionError(f"bracket on dimension {c.dim} applied to vectors of dimension {x.dim}, {y.dim}")
    out = [Fraction(0)] * c.dim
    for (i, j, k), v in c.entries.items():
        xi = x.coeffs[i]
        if xi:
            yj = y.coeffs[j]
            if yj:
                out[k] += xi * yj * v
    return QVec(out)


def is_bracket_automorphism(c: StructureConstants, alpha: QMatrix, identity: str = "alpha_automorphism") -> CheckReport:
    """Check alpha([x, y]) == [alpha(x), alpha(y)] on all basis pairs."""
    if alpha.shape != (c.dim, c.dim):
        raise DimensionError(f"alpha has shape {alpha.shape}, bracket has dimension {c.dim}")
    report = CheckReport(name="bracket automorphism")
    images = [alpha.column(i) for i in range(c.dim)]
    report.touch(identity)
    for i, j in product(range(c.dim), repeat=2):
        lhs = alpha.apply(c.value(i, j))
        rhs = bracket_apply(c, images[i], images[j])
        report.record(identity, (QVec.basis(c.dim, i), QVec.basis(c.dim, j)), lhs, rhs)
    report.notes["alpha_invertible"] = alpha.is_invertible()
    return report


# ---------------------------------------------------------------- exterior indices


@lru_cache(maxsize=None)
def wedge_sign(I: ExtIndex, J: ExtIndex) -> Optional[Tuple[int, ExtIndex]]:
    """e_I ^ e_J = sign * e_K with K sorted, or None when I and J overlap."""
    if set(I) & set(J):
        return None
    inversions = sum(1 for i in I for j in J if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(I + J))


def exterior_basis(rank: int, max_degree: Optional[int] = None, min_degree: int = 0) -> List[ExtIndex]:
    top = rank if max_degree is None else min(rank, max_degree)
    return [I for d in range(min_degree, top + 1) for I in combinations(range(rank), d)]


def ext_label(I: ExtIndex, prefix: str = "e") -> str:
    if not I:
        return "1"
    return "∧".join(f"{prefix}{i + 1}" for i in I)


def _validate_index(I, rank: int) -> ExtIndex:
    I = tuple(int(i) for i in I)
    if any(b <= a for a, b in zip(I, I[1:])):
        raise ValueError(f"exterior index {I} is not strictly increasing")
    if I and not (0 <= I[0] and I[-1] < rank):
        raise DimensionError(f"exterior index {I} out of range for rank {rank}")
    return I


class Multivector:
    """Sparse element of the exterior algebra on ``rank`` generators with
    polynomial coefficients in ``nvars`` variables.

    With ``nvars == 0`` the coefficients are rationals and this is an element
    of the exterior algebra of a vector space.  Mixed degrees are allowed.
    """

    __slots__ = ("rank", "nvars", "_terms", "_hash")
    prefix = "e"

    def __init__(self, rank: int, nvars: int, terms: Mapping[ExtIndex, object] | None = None):
        self.rank = rank
        self.nvars = nvars
        clean: Dict[ExtIndex, Polynomial] = {}
        for I, c in (terms or {}).items():
            I = _validate_index(I, rank)
            if isinstance(c, Polynomial):
                if c.nvars != nvars:
                    raise DimensionError(f"coefficient in {c.nvars} variables, expected {nvars}")
                p = c
            else:
                p = Polynomial.constant(nvars, to_rational(c))
            if I in clean:
                p = clean[I] + p
            if p:
                clean[I] = p
            else:
                clean.pop(I, None)
        self._terms = clean
        self._hash = None

    def _new(self, terms: Dict[ExtIndex, Polynomial]) -> "Multivector":
        out = type(self).__new__(type(self))
        out.rank = self.rank
        out.nvars = self.nvars
        out._terms = terms
        out._hash = None
        return out

    @classmethod
    def zero(cls, rank: int, nvars: int = 0) -> "Multivector":
        return cls(rank, nvars)

    @classmethod
    def basis(cls, rank: int, I: Sequence[int], nvars: int = 0, coeff=1) -> "Multivector":
        return cls(rank, nvars, {tuple(I): coeff})

    @classmethod
    def scalar(cls, rank: int, value, nvars: int = 0) -> "Multivector":
        return cls(rank, nvars, {(): value})

    @classmethod
    def from_vector(cls, v: QVec, nvars: int = 0) -> "Multivector":
        return cls(v.dim, nvars, {(i,): c for i, c in enumerate(v.coeffs) if c})

    # inspection

    @property
    def terms(self) -> Dict[ExtIndex, Polynomial]:
        return dict(self._terms)

    def items(self):
        for I in sorted(self._terms, key=lambda I: (len(I), I)):
            yield I, self._terms[I]

    def coeff(self, I: Sequence[int]) -> Polynomial:
        return self._terms.get(tuple(I), Polynomial.zero(self.nvars))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> set:
        return {len(I) for I in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Exterior degree of a homogeneous element (0 for zero)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return degs.pop() if degs else 0

    def homogeneous_part(self, d: int) -> "Multivector":
        return self._new({I: c for I, c in self._terms.items() if len(I) == d})

    def to_vector(self) -> QVec:
        """Degree-1 part with constant coefficients as a QVec."""
        return QVec(self.coeff((i,)).constant_value() if (i,) in self._terms else 0 for i in range(self.rank))

    # arithmetic

    def _check(self, other: "Multivector"):
        if (self.rank, self.nvars) != (other.rank, other.nvars):
            raise DimensionError(
                f"multivectors over (rank {self.rank}, {self.nvars} vars) and (rank {other.rank}, {other.nvars} vars)"
            )

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for I, c in other._terms.items():
            v = out[I] + c if I in out else c
            if v:
                out[I] = v
            else:
                out.pop(I, None)
        return self._new(out)

    def __neg__(self):
        return self._new({I: -c for I, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Multiplication by a rational or a degree-0 polynomial coefficient."""
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DimensionError("coefficient lives in the wrong ring")
            if not other:
                return self._new({})
            out = {}
            for I, c in self._terms.items():
                v = c * other
                if v:
                    out[I] = v
            return self._new(out)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            q = to_rational(other)
            if not q:
                return self._new({})
            return self._new({I: c.scale(q) for I, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def wedge(self, other: "Multivector") -> "Multivector":
        self._check(other)
        out: Dict[ExtIndex, Polynomial] = {}
        for I, a in self._terms.items():
            for J, b in other._terms.items():
                sk = wedge_sign(I, J)
                if sk is None:
                    continue
                sign, K = sk
                v = a * b
                if sign < 0:
                    v = -v
                if K in out:
                    v = out[K] + v
                if v:
                    out[K] = v
                else:
                    out.pop(K, None)
        return self._new(out)

    __xor__ = wedge

    def map_coeffs(self, fn: Callable[[Polynomial], Polynomial]) -> "Multivector":
        out = {}
        for I, c in self._terms.items():
            v = fn(c)
            if v:
                out[I] = v
        return self._new(out)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return (self.rank, self.nvars) == (other.rank, other.nvars) and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for I, c in self.items():
            label = ext_label(I, self.prefix)
            if c.is_constant():
                q = c.constant_value()
                pieces.append((q, label))
            else:
                pieces.append((Fraction(1), f"({c})" if label == "1" else f"({c})*{label}"))
        return _signed_sum(pieces)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


def graded_element(rank: int, terms: Mapping[Sequence[int], Scalar]) -> Multivector:
    """Element of the exterior algebra of Q^rank with rational coefficients."""
    return Multivector(rank, 0, {tuple(I): c for I, c in terms.items()})


class ExteriorEndomorphism:
    """Degree-0 algebra endomorphism of the exterior algebra.

    Determined by the images of the generators ``e_a`` (degree-1 multivectors)
    and a ring endomorphism of the coefficients (a substitution, or the
    identity when ``coeff_map`` is None):

        F e_{a1} ^ ... ^ e_{ap}  ->  coeff_map(F) alpha(e_{a1}) ^ ... ^ alpha(e_{ap})
    """

    def __init__(self, generator_images: Sequence[Multivector], coeff_map: Optional[PolySubstitution] = None,
                 rank: Optional[int] = None, nvars: Optional[int] = None):
        self.generator_images = tuple(generator_images)
        self.rank = len(self.generator_images) if rank is None else rank
        if nvars is None:
            nvars = self.generator_images[0].nvars if self.generator_images else (coeff_map.nvars if coeff_map else 0)
        self.nvars = nvars
        for img in self.generator_images:
            if (img.rank, img.nvars) != (self.rank, self.nvars) or img.degrees() - {1}:
                raise DimensionError("generator images must be degree-1 multivectors of the same algebra")
        if coeff_map is not None and coeff_map.nvars != self.nvars:
            raise DimensionError("coefficient map acts on the wrong ring")
        self.coeff_map = coeff_map
        self._cache: Dict[ExtIndex, Multivector] = {}

    def basis_image(self, I: ExtIndex) -> Multivector:
        img = self._cache.get(I)
        if img is None:
            img = Multivector.scalar(self.rank, 1, self.nvars)
            for a in I:
                img = img.wedge(self.generator_images[a])
            self._cache[I] = img
        return img

    def coeff(self, F: Polynomial) -> Polynomial:
        return F if self.coeff_map is None else self.coeff_map(F)

    def __call__(self, X: Multivector) -> Multivector:
        if (X.rank, X.nvars) != (self.rank, self.nvars):
            raise DimensionError("endomorphism applied to an element of another algebra")
        out = X._new({})
        for I, c in X._terms.items():
            out = out + self.basis_image(I) * self.coeff(c)
        return out


def extend_endo_exterior(alpha: QMatrix) -> ExteriorEndomorphism:
    """Extend a linear map of Q^n to the exterior algebra (identity on scalars)."""
    if not alpha.is_square():
        raise DimensionError(f"alpha must be square, got shape {alpha.shape}")
    n = alpha.nrows
    images = [Multivector.from_vector(alpha.column(a)) for a in range(n)]
    return ExteriorEndomorphism(images, None, rank=n, nvars=0)
