"""Exact scalars over Q and Q[q], plus dense vectors, matrices and tensors.

Everything in the package bottoms out here.  A scalar is either a rational
number or a univariate polynomial in the deformation parameter q with
rational coefficients.  Zero tests are structural (zero fraction, empty
coefficient tuple); there is no floating point and no tolerance anywhere.

Polynomials are stored as ascending coefficient tuples with no trailing
zeros, so the zero polynomial is the empty tuple and degree is len-1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence, Union

RATIONAL = "Q"
POLY = "Q[q]"


class RingMismatchError(TypeError):
    """Raised when two exact values from different base rings are combined."""


class ZeroPolynomialError(ValueError):
    """Raised when an operation requires a nonzero polynomial."""


class ShapeError(ValueError):
    """Raised when tensor or matrix dimensions do not line up."""


RationalLike = Union[int, Fraction]


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an integer or Fraction, got {type(x).__name__}")


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    # canonical form: no trailing zeros, zero polynomial is ()
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Scalar:
    """An exact ring element: a Fraction (ring Q) or coefficient tuple (ring Q[q])."""

    __slots__ = ("ring", "val")

    def __init__(self, ring: str, val):
        if ring == RATIONAL:
            if not isinstance(val, Fraction):
                raise TypeError("rational scalar payload must be a Fraction")
        elif ring == POLY:
            if not isinstance(val, tuple):
                raise TypeError("polynomial scalar payload must be a tuple")
        else:
            raise ValueError(f"unknown ring tag {ring!r}")
        self.ring = ring
        self.val = val

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(ring: str, x: RationalLike) -> "Scalar":
        f = _as_fraction(x)
        if ring == RATIONAL:
            return Scalar(RATIONAL, f)
        return Scalar(POLY, _trim((f,)))

    @staticmethod
    def zero(ring: str) -> "Scalar":
        return Scalar.of(ring, 0)

    @staticmethod
    def one(ring: str) -> "Scalar":
        return Scalar.of(ring, 1)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        if self.ring == RATIONAL:
            return self.val == 0
        return self.val == ()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def degree(self) -> int:
        """Degree in q; rationals count as degree 0 (or -1 for zero)."""
        if self.is_zero():
            return -1
        if self.ring == RATIONAL:
            return 0
        return len(self.val) - 1

    def coeffs(self) -> tuple[Fraction, ...]:
        """Ascending coefficient tuple, also for rationals."""
        if self.ring == RATIONAL:
            return () if self.val == 0 else (self.val,)
        return self.val

    def constant_value(self) -> Fraction:
        """The value as a Fraction, failing if q actually occurs."""
        if self.ring == RATIONAL:
            return self.val
        if len(self.val) > 1:
            raise ZeroPolynomialError("polynomial has positive degree, not a constant")
        return self.val[0] if self.val else Fraction(0)

    # -- ring maps ----------------------------------------------------------

    def lift(self) -> "Scalar":
        """Embed into Q[q] (identity if already there)."""
        if self.ring == POLY:
            return self
        return Scalar(POLY, _trim((self.val,)))

    def eval_q(self, point: RationalLike) -> "Scalar":
        """Substitute a rational value for q, landing in Q."""
        p = _as_fraction(point)
        if self.ring == RATIONAL:
            return self
        acc = Fraction(0)
        for c in reversed(self.val):
            acc = acc * p + c
        return Scalar(RATIONAL, acc)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot mix {self.ring} with {other.ring}")
            return other
        return Scalar.of(self.ring, other)

    def __add__(self, other) -> "Scalar":
        o = self._coerce(other)
        if self.ring == RATIONAL:
            return Scalar(RATIONAL, self.val + o.val)
        a, b = self.val, o.val
        n = max(len(a), len(b))
        return Scalar(POLY, _trim(tuple(
            (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
            for i in range(n))))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        if self.ring == RATIONAL:
            return Scalar(RATIONAL, -self.val)
        return Scalar(POLY, tuple(-c for c in self.val))

    def __sub__(self, other) -> "Scalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Scalar":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Scalar":
        o = self._coerce(other)
        if self.ring == RATIONAL:
            return Scalar(RATIONAL, self.val * o.val)
        a, b = self.val, o.val
        if not a or not b:
            return Scalar(POLY, ())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Scalar(POLY, _trim(out))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(self.ring, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.ring == other.ring and self.val == other.val

    def __hash__(self) -> int:
        return hash((self.ring, self.val))

    def __repr__(self) -> str:
        return f"Scalar({self.ring!r}, {self})"

    def __str__(self) -> str:
        """Canonical text form; parses back through the fixture-file grammar."""
        if self.ring == RATIONAL:
            return str(self.val)
        if not self.val:
            return "0"
        parts = []
        for k, c in enumerate(self.val):
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                base = "q" if k == 1 else f"q^{k}"
                if c == 1:
                    term = base
                elif c == -1:
                    term = f"-{base}"
                else:
                    term = f"{c}*{base}"
            parts.append(term)
        text = parts[0]
        for term in parts[1:]:
            text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return text


def rational(x: RationalLike = 0) -> Scalar:
    return Scalar.of(RATIONAL, x)


def polynomial(coeffs: Iterable[RationalLike]) -> Scalar:
    """Build a Q[q] scalar from ascending coefficients."""
    return Scalar(POLY, _trim(tuple(_as_fraction(c) for c in coeffs)))


def qvar() -> Scalar:
    """The deformation variable q itself."""
    return polynomial((0, 1))


# -- polynomial root finding -------------------------------------------------


class RootReport(NamedTuple):
    roots: frozenset[Fraction]
    has_nonrational_factor: bool


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def _deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction] | None:
    # synthetic division by (q - root); None when root is not actually a root
    acc = Fraction(0)
    quotient = []
    for c in reversed(coeffs):
        acc = acc * root + c
        quotient.append(acc)
    if acc != 0:
        return None
    quotient.pop()
    quotient.reverse()
    return quotient


def rational_roots(p: Scalar) -> RootReport:
    """All rational roots of a nonzero Q[q] scalar, ignoring multiplicity.

    ``has_nonrational_factor`` is True exactly when deflating every rational
    root still leaves a factor of positive degree.
    """
    p = p.lift()
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial vanishes identically")
    coeffs = list(p.val)

    roots: set[Fraction] = set()
    # factor out q^k first so the trailing coefficient is nonzero
    shift = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    if shift:
        roots.add(Fraction(0))
    if len(coeffs) == 1:
        return RootReport(frozenset(roots), False)

    # clear denominators to a primitive integer polynomial
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]

    candidates: set[Fraction] = set()
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))

    work = coeffs
    for cand in sorted(candidates):
        while True:
            reduced = _deflate(work, cand)
            if reduced is None:
                break
            roots.add(cand)
            work = reduced
            if len(work) == 1:
                return RootReport(frozenset(roots), False)
    return RootReport(frozenset(roots), len(work) > 1)


def _poly_divmod(a: Scalar, b: Scalar) -> tuple[Scalar, Scalar]:
    # long division in Q[q]; used by exact determinant/solve routines
    a, b = a.lift(), b.lift()
    if b.is_zero():
        raise ZeroPolynomialError("division by the zero polynomial")
    rem = list(a.val)
    div = b.val
    if len(rem) < len(div):
        return Scalar(POLY, ()), a
    quot = [Fraction(0)] * (len(rem) - len(div) + 1)
    lead = div[-1]
    for k in range(len(quot) - 1, -1, -1):
        factor = rem[k + len(div) - 1] / lead
        quot[k] = factor
        if factor:
            for i, d in enumerate(div):
                rem[k + i] -= factor * d
    return Scalar(POLY, _trim(quot)), Scalar(POLY, _trim(rem[: len(div) - 1]))


def exact_div(a: Scalar, b: Scalar) -> Scalar:
    """Divide a by b when the division is exact; error otherwise."""
    if a.ring == RATIONAL and b.ring == RATIONAL:
        if b.is_zero():
            raise ZeroPolynomialError("division by zero")
        return Scalar(RATIONAL, a.val / b.val)
    q, r = _poly_divmod(a, b)
    if not r.is_zero():
        raise ZeroPolynomialError("division is not exact in Q[q]")
    return q


# -- dense linear algebra -----------------------------------------------------


def _freeze_scalars(ring: str, row: Sequence[Scalar]) -> tuple[Scalar, ...]:
    for s in row:
        if not isinstance(s, Scalar):
            raise TypeError("entries must be Scalar values")
        if s.ring != ring:
            raise RingMismatchError(f"entry from {s.ring} in a {ring} container")
    return tuple(row)


class Vector:
    """A dense coordinate vector over one ring."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: str, coords: Sequence[Scalar]):
        self.ring = ring
        self.coords = _freeze_scalars(ring, coords)

    @staticmethod
    def zero(ring: str, dim: int) -> "Vector":
        return Vector(ring, [Scalar.zero(ring)] * dim)

    @staticmethod
    def basis(ring: str, dim: int, i: int) -> "Vector":
        coords = [Scalar.zero(ring)] * dim
        coords[i] = Scalar.one(ring)
        return Vector(ring, coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.ring, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.ring, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Vector":
        return Vector(self.ring, [-a for a in self.coords])

    def scale(self, s: Scalar) -> "Vector":
        return Vector(self.ring, [s * a for a in self.coords])

    def _check(self, other: "Vector"):
        if self.ring != other.ring:
            raise RingMismatchError(f"cannot mix {self.ring} with {other.ring}")
        if self.dim != other.dim:
            raise ShapeError(f"vector dims {self.dim} and {other.dim} differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.ring == other.ring and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.ring, self.coords))

    def map_scalars(self, fn: Callable[[Scalar], Scalar], ring: str) -> "Vector":
        return Vector(ring, [fn(c) for c in self.coords])

    def __repr__(self) -> str:
        return f"Vector[{', '.join(str(c) for c in self.coords)}]"


class LinMap:
    """A linear map stored as rows[codomain][domain]; column j is the image of basis j."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: str, rows: Sequence[Sequence[Scalar]]):
        self.ring = ring
        frozen = tuple(_freeze_scalars(ring, r) for r in rows)
        if frozen and any(len(r) != len(frozen[0]) for r in frozen):
            raise ShapeError("ragged matrix rows")
        self.rows = frozen

    @staticmethod
    def identity(ring: str, dim: int) -> "LinMap":
        one, zero = Scalar.one(ring), Scalar.zero(ring)
        return LinMap(ring, [[one if i == j else zero for j in range(dim)] for i in range(dim)])

    @staticmethod
    def zero(ring: str, cod: int, dom: int) -> "LinMap":
        z = Scalar.zero(ring)
        return LinMap(ring, [[z] * dom for _ in range(cod)])

    @staticmethod
    def block_diag(a: "LinMap", b: "LinMap") -> "LinMap":
        if a.ring != b.ring:
            raise RingMismatchError(f"cannot mix {a.ring} with {b.ring}")
        z = Scalar.zero(a.ring)
        rows = [list(r) + [z] * b.dom for r in a.rows]
        rows += [[z] * a.dom + list(r) for r in b.rows]
        return LinMap(a.ring, rows)

    @property
    def cod(self) -> int:
        return len(self.rows)

    @property
    def dom(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return Vector(self.ring, [r[j] for r in self.rows])

    def apply(self, v: Vector) -> Vector:
        if v.dim != self.dom:
            raise ShapeError(f"map domain {self.dom} vs vector dim {v.dim}")
        out = [Scalar.zero(self.ring)] * self.cod
        for j, c in enumerate(v.coords):
            if c.is_zero():
                continue
            for i in range(self.cod):
                e = self.rows[i][j]
                if not e.is_zero():
                    out[i] = out[i] + e * c
        return Vector(self.ring, out)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        if self.ring != other.ring:
            raise RingMismatchError(f"cannot mix {self.ring} with {other.ring}")
        if self.dom != other.cod:
            raise ShapeError(f"inner dims {self.dom} and {other.cod} differ")
        z = Scalar.zero(self.ring)
        out = [[z] * other.dom for _ in range(self.cod)]
        for k in range(other.cod):
            for j in range(other.dom):
                b = other.rows[k][j]
                if b.is_zero():
                    continue
                for i in range(self.cod):
                    a = self.rows[i][k]
                    if not a.is_zero():
                        out[i][j] = out[i][j] + a * b
        return LinMap(self.ring, out)

    def __add__(self, other: "LinMap") -> "LinMap":
        self._check_same_shape(other)
        return LinMap(self.ring, [[a + b for a, b in zip(ra, rb)]
                                  for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "LinMap") -> "LinMap":
        self._check_same_shape(other)
        return LinMap(self.ring, [[a - b for a, b in zip(ra, rb)]
                                  for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "LinMap":
        return LinMap(self.ring, [[-a for a in r] for r in self.rows])

    def scale(self, s: Scalar) -> "LinMap":
        return LinMap(self.ring, [[s * a for a in r] for r in self.rows])

    def transpose(self) -> "LinMap":
        return LinMap(self.ring, [[self.rows[i][j] for i in range(self.cod)]
                                  for j in range(self.dom)])

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def _check_same_shape(self, other: "LinMap"):
        if self.ring != other.ring:
            raise RingMismatchError(f"cannot mix {self.ring} with {other.ring}")
        if self.cod != other.cod or self.dom != other.dom:
            raise ShapeError("matrix shapes differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ring, self.rows))

    def map_scalars(self, fn: Callable[[Scalar], Scalar], ring: str) -> "LinMap":
        return LinMap(ring, [[fn(a) for a in r] for r in self.rows])

    def __repr__(self) -> str:
        return f"LinMap({self.cod}x{self.dom})"


class Tensor2:
    """An order-2 tensor (element of W (x) W) with entries t[i][j]."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: str, rows: Sequence[Sequence[Scalar]]):
        self.ring = ring
        frozen = tuple(_freeze_scalars(ring, r) for r in rows)
        if any(len(r) != len(frozen) for r in frozen):
            raise ShapeError("order-2 tensor must be square")
        self.rows = frozen

    @staticmethod
    def zero(ring: str, dim: int) -> "Tensor2":
        z = Scalar.zero(ring)
        return Tensor2(ring, [[z] * dim for _ in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def nonzero(self) -> Iterator[tuple[int, int, Scalar]]:
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if not a.is_zero():
                    yield i, j, a

    def flip(self) -> "Tensor2":
        """Swap the two tensor legs."""
        n = self.dim
        return Tensor2(self.ring, [[self.rows[j][i] for j in range(n)] for i in range(n)])

    def apply_maps(self, f: LinMap | None, g: LinMap | None) -> "Tensor2":
        """Apply f to the first leg and g to the second (None means identity)."""
        n = self.dim
        for m in (f, g):
            if m is not None and (m.dom != n or m.cod != n):
                raise ShapeError("leg map shape does not match tensor dimension")
        z = Scalar.zero(self.ring)
        out = [[z] * n for _ in range(n)]
        for a, b, coeff in self.nonzero():
            if f is None:
                fi = ((a, Scalar.one(self.ring)),)
            else:
                fi = tuple((i, f.rows[i][a]) for i in range(n) if not f.rows[i][a].is_zero())
            if g is None:
                gj = ((b, Scalar.one(self.ring)),)
            else:
                gj = tuple((j, g.rows[j][b]) for j in range(n) if not g.rows[j][b].is_zero())
            for i, fa in fi:
                for j, gb in gj:
                    out[i][j] = out[i][j] + coeff * fa * gb
        return Tensor2(self.ring, out)

    def __add__(self, other: "Tensor2") -> "Tensor2":
        self._check(other)
        return Tensor2(self.ring, [[a + b for a, b in zip(ra, rb)]
                                   for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Tensor2") -> "Tensor2":
        self._check(other)
        return Tensor2(self.ring, [[a - b for a, b in zip(ra, rb)]
                                   for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "Tensor2":
        return Tensor2(self.ring, [[-a for a in r] for r in self.rows])

    def scale(self, s: Scalar) -> "Tensor2":
        return Tensor2(self.ring, [[s * a for a in r] for r in self.rows])

    def _check(self, other: "Tensor2"):
        if self.ring != other.ring:
            raise RingMismatchError(f"cannot mix {self.ring} with {other.ring}")
        if self.dim != other.dim:
            raise ShapeError("tensor dims differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor2):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ring, self.rows))

    def map_scalars(self, fn: Callable[[Scalar], Scalar], ring: str) -> "Tensor2":
        return Tensor2(ring, [[fn(a) for a in r] for r in self.rows])

    def __repr__(self) -> str:
        return f"Tensor2({self.dim})"


class Tensor3:
    """An order-3 tensor with entries t[i][j][k], all three legs the same dimension."""

    __slots__ = ("ring", "data")

    def __init__(self, ring: str, data: Sequence[Sequence[Sequence[Scalar]]]):
        self.ring = ring
        frozen = tuple(tuple(_freeze_scalars(ring, r) for r in plane) for plane in data)
        n = len(frozen)
        for plane in frozen:
            if len(plane) != n or any(len(r) != n for r in plane):
                raise ShapeError("order-3 tensor must be cubical")
        self.data = frozen

    @staticmethod
    def zero(ring: str, dim: int) -> "Tensor3":
        z = Scalar.zero(ring)
        return Tensor3(ring, [[[z] * dim for _ in range(dim)] for _ in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.data)

    def entry(self, i: int, j: int, k: int) -> Scalar:
        return self.data[i][j][k]

    def is_zero(self) -> bool:
        return all(a.is_zero() for plane in self.data for r in plane for a in r)

    def nonzero(self) -> Iterator[tuple[int, int, int, Scalar]]:
        for i, plane in enumerate(self.data):
            for j, row in enumerate(plane):
                for k, a in enumerate(row):
                    if not a.is_zero():
                        yield i, j, k, a

    def permute(self, p: tuple[int, int, int]) -> "Tensor3":
        """Reorder legs: result[idx] = self[idx[p[0]], idx[p[1]], idx[p[2]]].

        With this convention (t.permute(p)).permute(r) == t.permute(c) where
        c[k] = r[p[k]].  The leg swap tau(x)id is permute((1, 0, 2)) and
        id(x)tau is permute((0, 2, 1)).
        """
        if sorted(p) != [0, 1, 2]:
            raise ShapeError(f"not a permutation of (0,1,2): {p}")
        n = self.dim
        return Tensor3(self.ring, [
            [[self.data[(i, j, k)[p[0]]][(i, j, k)[p[1]]][(i, j, k)[p[2]]]
              for k in range(n)] for j in range(n)] for i in range(n)])

    def apply_maps(self, f: "LinMap | None", g: "LinMap | None", h: "LinMap | None") -> "Tensor3":
        """Apply one linear map per leg; None leaves that leg alone."""
        n = self.dim
        z = Scalar.zero(self.ring)
        out = [[[z] * n for _ in range(n)] for _ in range(n)]

        def expand(m, i):
            if m is None:
                return ((i, None),)  # None weight: keep the entry as is
            return tuple((t, s) for t, s in enumerate(m.column(i)) if not s.is_zero())

        for i, j, k, a in self.nonzero():
            for ii, si in expand(f, i):
                ai = a if si is None else a * si
                for jj, sj in expand(g, j):
                    aj = ai if sj is None else ai * sj
                    for kk, sk in expand(h, k):
                        ak = aj if sk is None else aj * sk
                        out[ii][jj][kk] = out[ii][jj][kk] + ak
        return Tensor3(self.ring, out)

    def __add__(self, other: "Tensor3") -> "Tensor3":
        self._check(other)
        return Tensor3(self.ring, [
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(pa, pb)]
            for pa, pb in zip(self.data, other.data)])

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        self._check(other)
        return Tensor3(self.ring, [
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(pa, pb)]
            for pa, pb in zip(self.data, other.data)])

    def __neg__(self) -> "Tensor3":
        return Tensor3(self.ring, [[[-a for a in r] for r in plane] for plane in self.data])

    def scale(self, s: Scalar) -> "Tensor3":
        return Tensor3(self.ring, [[[s * a for a in r] for r in plane] for plane in self.data])

    def _check(self, other: "Tensor3"):
        if self.ring != other.ring:
            raise RingMismatchError(f"cannot mix {self.ring} with {other.ring}")
        if self.dim != other.dim:
            raise ShapeError("tensor dims differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.ring == other.ring and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.ring, self.data))

    def map_scalars(self, fn: Callable[[Scalar], Scalar], ring: str) -> "Tensor3":
        return Tensor3(ring, [[[fn(a) for a in r] for r in plane] for plane in self.data])

    def __repr__(self) -> str:
        return f"Tensor3({self.dim})"


def bareiss_det(rows: list[list[Scalar]], ring: str) -> Scalar:
    """Fraction-free determinant; exact over Q and over Q[q]."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("determinant needs a square matrix")
    if n == 0:
        return Scalar.one(ring)
    m = [list(r) for r in rows]
    sign = 1
    prev = Scalar.one(ring)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for swap in range(k + 1, n):
                if not m[swap][k].is_zero():
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return Scalar.zero(ring)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def contract(t, perm=None, maps=None):
    """Permute tensor legs, then apply one linear map per leg.

    perm is a leg permutation ((1, 0) swaps the legs of an order-2 tensor);
    maps is a sequence with one LinMap per leg, None meaning the identity.
    """
    if perm is not None:
        p = tuple(perm)
        if isinstance(t, Tensor2):
            if p == (1, 0):
                t = t.flip()
            elif p != (0, 1):
                raise ShapeError(f"not a permutation of (0,1): {perm}")
        else:
            t = t.permute(p)
    if maps is not None:
        t = t.apply_maps(*maps)
    return t
