"""Finite-dimensional algebraic structures given by structure constants.

A presentation bundles one basis with any number of binary products,
coproducts, linear maps, bilinear forms and order-2 tensors, all over a
single ring (Q or Q[q]).  Axioms are data: each catalog entry is a syntax
tree for a multilinear residual, and one evaluator checks any of them on
any presentation by running over basis tuples in row-major order.

Over Q[q] a residual entry is a polynomial, so a check can also succeed on
a finite set of rational q values; that set is computed exactly by
intersecting rational root sets entry by entry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .exactcore import (
    POLY,
    RATIONAL,
    LinMap,
    RingMismatchError,
    Scalar,
    Tensor2,
    Tensor3,
    Vector,
    bareiss_det,
    polynomial,
    rational_roots,
)


class PresentationError(ValueError):
    """Raised when a presentation is malformed or missing a requested part."""


@dataclass(frozen=True)
class Space:
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise PresentationError("a space needs at least one basis element")
        if len(set(self.names)) != len(self.names):
            raise PresentationError("duplicate basis names")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PresentationError(f"unknown basis element {name!r}") from None


class BinOpTensor:
    """A bilinear product: c[i][j][k] is the e_k coefficient of e_i * e_j."""

    __slots__ = ("ring", "c")

    def __init__(self, ring: str, c: Sequence[Sequence[Sequence[Scalar]]]):
        t3 = Tensor3(ring, c)  # reuse shape and ring validation
        self.ring = ring
        self.c = t3.data

    @staticmethod
    def zero(ring: str, dim: int) -> "BinOpTensor":
        z = Scalar.zero(ring)
        return BinOpTensor(ring, [[[z] * dim for _ in range(dim)] for _ in range(dim)])

    @staticmethod
    def from_vectors(ring: str, grid: Sequence[Sequence[Vector]]) -> "BinOpTensor":
        return BinOpTensor(ring, [[list(v.coords) for v in row] for row in grid])

    @property
    def dim(self) -> int:
        return len(self.c)

    def entry(self, i: int, j: int, k: int) -> Scalar:
        return self.c[i][j][k]

    def product(self, i: int, j: int) -> Vector:
        return Vector(self.ring, self.c[i][j])

    def apply(self, x: Vector, y: Vector) -> Vector:
        out = [Scalar.zero(self.ring)] * self.dim
        for i, xi in enumerate(x.coords):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y.coords):
                if yj.is_zero():
                    continue
                s = xi * yj
                for k, cc in enumerate(self.c[i][j]):
                    if not cc.is_zero():
                        out[k] = out[k] + s * cc
        return Vector(self.ring, out)

    def left_mult(self, a: Vector) -> LinMap:
        """The map x -> a * x."""
        n = self.dim
        rows = [[Scalar.zero(self.ring)] * n for _ in range(n)]
        for i, ai in enumerate(a.coords):
            if ai.is_zero():
                continue
            for j in range(n):
                for k, cc in enumerate(self.c[i][j]):
                    if not cc.is_zero():
                        rows[k][j] = rows[k][j] + ai * cc
        return LinMap(self.ring, rows)

    def right_mult(self, b: Vector) -> LinMap:
        """The map x -> x * b."""
        n = self.dim
        rows = [[Scalar.zero(self.ring)] * n for _ in range(n)]
        for j, bj in enumerate(b.coords):
            if bj.is_zero():
                continue
            for i in range(n):
                for k, cc in enumerate(self.c[i][j]):
                    if not cc.is_zero():
                        rows[k][i] = rows[k][i] + bj * cc
        return LinMap(self.ring, rows)

    def opposite(self) -> "BinOpTensor":
        n = self.dim
        return BinOpTensor(self.ring, [[self.c[j][i] for j in range(n)] for i in range(n)])

    def plus(self, other: "BinOpTensor") -> "BinOpTensor":
        if self.ring != other.ring:
            raise RingMismatchError("cannot add products over different rings")
        if self.dim != other.dim:
            raise PresentationError("cannot add products of different dimensions")
        return BinOpTensor(self.ring, [
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(pa, pb)]
            for pa, pb in zip(self.c, other.c)])

    def map_scalars(self, fn: Callable[[Scalar], Scalar], ring: str) -> "BinOpTensor":
        return BinOpTensor(ring, [[[fn(a) for a in r] for r in plane] for plane in self.c])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinOpTensor):
            return NotImplemented
        return self.ring == other.ring and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.ring, self.c))

    def __repr__(self) -> str:
        return f"BinOpTensor({self.dim})"


class CoOpTensor:
    """A linear coproduct: d[i][j][k] is the e_j (x) e_k coefficient of delta(e_i)."""

    __slots__ = ("ring", "d")

    def __init__(self, ring: str, d: Sequence[Sequence[Sequence[Scalar]]]):
        t3 = Tensor3(ring, d)
        self.ring = ring
        self.d = t3.data

    @staticmethod
    def zero(ring: str, dim: int) -> "CoOpTensor":
        z = Scalar.zero(ring)
        return CoOpTensor(ring, [[[z] * dim for _ in range(dim)] for _ in range(dim)])

    @staticmethod
    def from_tensors(ring: str, images: Sequence[Tensor2]) -> "CoOpTensor":
        return CoOpTensor(ring, [[list(row) for row in t.rows] for t in images])

    @property
    def dim(self) -> int:
        return len(self.d)

    def entry(self, i: int, j: int, k: int) -> Scalar:
        return self.d[i][j][k]

    def image(self, i: int) -> Tensor2:
        return Tensor2(self.ring, self.d[i])

    def apply(self, x: Vector) -> Tensor2:
        n = self.dim
        out = [[Scalar.zero(self.ring)] * n for _ in range(n)]
        for i, xi in enumerate(x.coords):
            if xi.is_zero():
                continue
            for j in range(n):
                for k, dd in enumerate(self.d[i][j]):
                    if not dd.is_zero():
                        out[j][k] = out[j][k] + xi * dd
        return Tensor2(self.ring, out)

    def expand_leg(self, t: Tensor2, leg: int) -> Tensor3:
        """Apply the coproduct to one leg of an order-2 tensor.

        leg 1: out[i][j][k] = sum_m t[m][k] d[m][i][j]
        leg 2: out[i][j][k] = sum_m t[i][m] d[m][j][k]
        """
        n = self.dim
        if t.dim != n:
            raise PresentationError("tensor dimension does not match coproduct")
        z = Scalar.zero(self.ring)
        out = [[[z] * n for _ in range(n)] for _ in range(n)]
        if leg == 1:
            for m, k, coeff in t.nonzero():
                for i in range(n):
                    for j, dd in enumerate(self.d[m][i]):
                        if not dd.is_zero():
                            out[i][j][k] = out[i][j][k] + coeff * dd
        elif leg == 2:
            for i, m, coeff in t.nonzero():
                for j in range(n):
                    for k, dd in enumerate(self.d[m][j]):
                        if not dd.is_zero():
                            out[i][j][k] = out[i][j][k] + coeff * dd
        else:
            raise ValueError("leg must be 1 or 2")
        return Tensor3(self.ring, out)

    def map_scalars(self, fn: Callable[[Scalar], Scalar], ring: str) -> "CoOpTensor":
        return CoOpTensor(ring, [[[fn(a) for a in r] for r in plane] for plane in self.d])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoOpTensor):
            return NotImplemented
        return self.ring == other.ring and self.d == other.d

    def __hash__(self) -> int:
        return hash((self.ring, self.d))

    def __repr__(self) -> str:
        return f"CoOpTensor({self.dim})"


def apply_binop_into_leg(t: Tensor3, op: BinOpTensor, legs: tuple[int, int], out_leg: int) -> Tensor2:
    """Multiply two legs of an order-3 tensor through a product.

    legs gives the (left factor, right factor) positions in t; the product
    lands at position out_leg (0 or 1) of the order-2 result and the
    untouched leg at the other position.
    """
    a_leg, b_leg = legs
    if {a_leg, b_leg} not in ({0, 1}, {0, 2}, {1, 2}):
        raise ValueError(f"legs must be two distinct positions in 0..2: {legs}")
    if out_leg not in (0, 1):
        raise ValueError("out_leg must be 0 or 1")
    if t.dim != op.dim:
        raise PresentationError("tensor dimension does not match the product")
    rest = 3 - a_leg - b_leg
    n = t.dim
    z = Scalar.zero(t.ring)
    out = [[z] * n for _ in range(n)]
    for idx0, idx1, idx2, coeff in t.nonzero():
        idx = (idx0, idx1, idx2)
        u, v, w = idx[a_leg], idx[b_leg], idx[rest]
        for m, cc in enumerate(op.c[u][v]):
            if cc.is_zero():
                continue
            if out_leg == 0:
                out[m][w] = out[m][w] + coeff * cc
            else:
                out[w][m] = out[w][m] + coeff * cc
    return Tensor2(t.ring, out)


@dataclass
class RepNov:
    """A module over a Novikov-type product: left and right operator families."""

    names: tuple[str, ...]
    l: tuple[LinMap, ...]
    r: tuple[LinMap, ...]

    def __post_init__(self):
        self.names = tuple(self.names)
        self.l = tuple(self.l)
        self.r = tuple(self.r)
        if not self.l or len(self.l) != len(self.r):
            raise PresentationError("need matching left and right operator families")
        dim = len(self.names)
        for m in (*self.l, *self.r):
            if m.cod != dim or m.dom != dim:
                raise PresentationError("operator shape does not match module dimension")
            if m.ring != self.ring:
                raise RingMismatchError("mixed rings inside a representation")

    @property
    def ring(self) -> str:
        return self.l[0].ring

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def alg_dim(self) -> int:
        return len(self.l)

    def lift(self) -> "RepNov":
        if self.ring == POLY:
            return self
        lifted = lambda m: m.map_scalars(lambda s: s.lift(), POLY)
        return RepNov(self.names, tuple(lifted(m) for m in self.l),
                      tuple(lifted(m) for m in self.r))


@dataclass
class RepAdmDiff:
    """A module over a commutative differential product, with both endomorphisms."""

    names: tuple[str, ...]
    l: tuple[LinMap, ...]
    alpha: LinMap
    beta: LinMap

    def __post_init__(self):
        self.names = tuple(self.names)
        self.l = tuple(self.l)
        if not self.l:
            raise PresentationError("need a nonempty operator family")
        dim = len(self.names)
        for m in (*self.l, self.alpha, self.beta):
            if m.cod != dim or m.dom != dim:
                raise PresentationError("operator shape does not match module dimension")
            if m.ring != self.ring:
                raise RingMismatchError("mixed rings inside a representation")

    @property
    def ring(self) -> str:
        return self.alpha.ring

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def alg_dim(self) -> int:
        return len(self.l)

    def lift(self) -> "RepAdmDiff":
        if self.ring == POLY:
            return self
        lifted = lambda m: m.map_scalars(lambda s: s.lift(), POLY)
        return RepAdmDiff(self.names, tuple(lifted(m) for m in self.l),
                          lifted(self.alpha), lifted(self.beta))


@dataclass
class Presentation:
    """One basis, one ring, and a bag of named operations on it."""

    ring: str
    space: Space
    binops: dict[str, BinOpTensor] = field(default_factory=dict)
    coops: dict[str, CoOpTensor] = field(default_factory=dict)
    maps: dict[str, LinMap] = field(default_factory=dict)
    forms: dict[str, Tensor2] = field(default_factory=dict)
    relements: dict[str, Tensor2] = field(default_factory=dict)

    def __post_init__(self):
        n = self.space.dim
        for name, op in self.binops.items():
            if op.ring != self.ring or op.dim != n:
                raise PresentationError(f"product {name!r} has wrong ring or dimension")
        for name, op in self.coops.items():
            if op.ring != self.ring or op.dim != n:
                raise PresentationError(f"coproduct {name!r} has wrong ring or dimension")
        for name, m in self.maps.items():
            if m.ring != self.ring or m.cod != n or m.dom != n:
                raise PresentationError(f"map {name!r} has wrong ring or shape")
        for kind, bag in (("form", self.forms), ("tensor", self.relements)):
            for name, t in bag.items():
                if t.ring != self.ring or t.dim != n:
                    raise PresentationError(f"{kind} {name!r} has wrong ring or dimension")

    @property
    def dim(self) -> int:
        return self.space.dim

    def binop(self, name: str) -> BinOpTensor:
        try:
            return self.binops[name]
        except KeyError:
            raise PresentationError(f"no product named {name!r}") from None

    def coop(self, name: str) -> CoOpTensor:
        try:
            return self.coops[name]
        except KeyError:
            raise PresentationError(f"no coproduct named {name!r}") from None

    def linmap(self, name: str) -> LinMap:
        try:
            return self.maps[name]
        except KeyError:
            raise PresentationError(f"no map named {name!r}") from None

    def form(self, name: str) -> Tensor2:
        try:
            return self.forms[name]
        except KeyError:
            raise PresentationError(f"no bilinear form named {name!r}") from None

    def relement(self, name: str) -> Tensor2:
        try:
            return self.relements[name]
        except KeyError:
            raise PresentationError(f"no order-2 tensor named {name!r}") from None

    def basis_vector(self, i: int) -> Vector:
        return Vector.basis(self.ring, self.dim, i)

    def lift(self) -> "Presentation":
        """Embed a rational presentation into Q[q]."""
        if self.ring == POLY:
            return self
        return self._mapped(lambda s: s.lift(), POLY)

    def specialize(self, q) -> "Presentation":
        """Evaluate every entry at a rational value of q."""
        point = Fraction(q)
        return self._mapped(lambda s: s.eval_q(point), RATIONAL)

    def _mapped(self, fn: Callable[[Scalar], Scalar], ring: str) -> "Presentation":
        return Presentation(
            ring=ring,
            space=self.space,
            binops={k: v.map_scalars(fn, ring) for k, v in self.binops.items()},
            coops={k: v.map_scalars(fn, ring) for k, v in self.coops.items()},
            maps={k: v.map_scalars(fn, ring) for k, v in self.maps.items()},
            forms={k: v.map_scalars(fn, ring) for k, v in self.forms.items()},
            relements={k: v.map_scalars(fn, ring) for k, v in self.relements.items()},
        )


# -- verdicts ------------------------------------------------------------------

HOLDS = "holds"
FAILS = "fails"
HOLDS_ON_LOCUS = "holds_on_locus"

ALL_Q = "all_q"
FINITE = "finite"
EMPTY = "empty"


@dataclass(frozen=True)
class QLocus:
    """Rational q values where a family of polynomial conditions vanishes.

    kind is all_q (identically zero), finite (exactly the listed rational
    points) or empty.  has_nonrational_factor is True when a common zero
    outside Q cannot be ruled out.
    """

    kind: str
    points: frozenset = frozenset()
    has_nonrational_factor: bool = False

    def is_empty(self) -> bool:
        return self.kind == EMPTY

    def contains(self, x) -> bool:
        if self.kind == ALL_Q:
            return True
        return Fraction(x) in self.points

    def __str__(self) -> str:
        if self.kind == ALL_Q:
            return "all q"
        body = ", ".join(str(p) for p in sorted(self.points, reverse=True))
        text = "{" + body + "}"
        if self.has_nonrational_factor:
            text += " (possible non-rational zeros)"
        return text


@dataclass(frozen=True)
class AxiomReport:
    axiom_id: str
    verdict: str
    witness: tuple[str, ...] | None = None
    residual: object = None
    residual_degree: int = -1
    locus: QLocus | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def __str__(self) -> str:
        if self.verdict == HOLDS:
            return f"{self.axiom_id}: holds"
        if self.verdict == HOLDS_ON_LOCUS:
            return f"{self.axiom_id}: holds_on_locus {self.locus}"
        where = f" at ({', '.join(self.witness)})" if self.witness else ""
        return f"{self.axiom_id}: fails{where}"


# -- axiom catalog ---------------------------------------------------------------
#
# Expressions are nested tuples.  Element-valued nodes:
#   ("var", name)                   bound basis vector
#   ("op", key, x, y)               product applied bilinearly
#   ("map", key, x)                 named linear map
#   ("rep", "l"|"r", aexpr, vexpr)  operator family applied to a module vector
#   ("rmap", "alpha"|"beta", v)     module endomorphism
#   ("pair", key, x, y)             bilinear form value, as a 1-dim vector
# Tensor-valued nodes:
#   ("cop", key, x)                 coproduct of an element (order 2)
#   ("tau", t)                      swap the legs of an order-2 tensor
#   ("tmap2", (m1, m2), t)          maps on the legs of an order-2 tensor
#   ("coleg", key, leg, t)          coproduct applied to one leg (order 3)
#   ("perm", p, t)                  leg permutation of an order-3 tensor
# Any-valued:
#   ("lin", ((coeffs, expr), ...))  sum of q-polynomial multiples
# Map expressions (used in tmap2 slots; None stands for the identity):
#   ("m", key) | ("ml", opkey, elem) | ("mr", opkey, elem)
#   ("mlin", ((coeffs, mexpr), ...)) | ("mcomp", outer, inner)
#
# Operation slots are symbolic keys ("dot", "circ", "zin", "lpre", "rpre",
# "f", "delta", "Delta", "D", "Q", "B"); callers rebind them per check.


@dataclass(frozen=True)
class AxiomDef:
    axiom_id: str
    variables: tuple[tuple[str, str], ...]  # (name, "A" | "V")
    expr: tuple | None
    uses_q: bool = False
    description: str = ""


def _v(n):
    return ("var", n)


_a, _b, _c = _v("a"), _v("b"), _v("c")
_w = _v("v")


def _op(k, x, y):
    return ("op", k, x, y)


def _m(k, x):
    return ("map", k, x)


def _sum(*terms):
    return ("lin", tuple(terms))


def _t(coeffs, e):
    return (tuple(coeffs), e)


def _p(e):
    return ((1,), e)


def _n(e):
    return ((-1,), e)


def _cop(k, x):
    return ("cop", k, x)


def _tau(t):
    return ("tau", t)


def _tm(m1, m2, t):
    return ("tmap2", (m1, m2), t)


def _coleg(k, leg, t):
    return ("coleg", k, leg, t)


def _perm(p, t):
    return ("perm", p, t)


def _ml(k, e):
    return ("ml", k, e)


def _mr(k, e):
    return ("mr", k, e)


def _mm(k):
    return ("m", k)


def _mlin(*terms):
    return ("mlin", tuple(terms))


def _mcomp(outer, inner):
    return ("mcomp", outer, inner)


def _rep(which, ae, ve):
    return ("rep", which, ae, ve)


def _rmap(which, ve):
    return ("rmap", which, ve)


def _pair(k, x, y):
    return ("pair", k, x, y)


def _mstar(k, e):
    # left multiplication by e for the symmetrized product x*y + y*x
    return _mlin(_p(_ml(k, e)), _p(_mr(k, e)))


_A1 = (("a", "A"),)
_AA = (("a", "A"), ("b", "A"))
_AAA = (("a", "A"), ("b", "A"), ("c", "A"))
_AV = (("a", "A"), ("v", "V"))
_AAV = (("a", "A"), ("b", "A"), ("v", "V"))

_QplusD = _mlin(_p(_mm("Q")), _p(_mm("D")))
_DplusQ = _mlin(_p(_mm("D")), _p(_mm("Q")))
_QplusqD = _mlin(_p(_mm("Q")), _t((0, 1), _mm("D")))


def _catalog() -> dict[str, AxiomDef]:
    defs: list[AxiomDef] = []

    def add(axiom_id, variables, expr, uses_q=False, description=""):
        defs.append(AxiomDef(axiom_id, tuple(variables), expr, uses_q, description))

    add("COMM", _AA,
        _sum(_p(_op("dot", _a, _b)), _n(_op("dot", _b, _a))),
        description="the product is commutative")

    add("ASSOC", _AAA,
        _sum(_p(_op("dot", _op("dot", _a, _b), _c)),
             _n(_op("dot", _a, _op("dot", _b, _c)))),
        description="the product is associative")

    add("NOV_LSYM", _AAA,
        _sum(_p(_op("circ", _op("circ", _a, _b), _c)),
             _n(_op("circ", _a, _op("circ", _b, _c))),
             _n(_op("circ", _op("circ", _b, _a), _c)),
             _p(_op("circ", _b, _op("circ", _a, _c)))),
        description="the associator is symmetric in its first two arguments")

    add("NOV_RCOMM", _AAA,
        _sum(_p(_op("circ", _op("circ", _a, _b), _c)),
             _n(_op("circ", _op("circ", _a, _c), _b))),
        description="right multiplications commute")

    add("DERIV", _AA,
        _sum(_p(_m("D", _op("dot", _a, _b))),
             _n(_op("dot", _a, _m("D", _b))),
             _n(_op("dot", _m("D", _a), _b))),
        description="D is a derivation of the product")

    add("ADMISS", _AA,
        _sum(_p(_m("Q", _op("dot", _a, _b))),
             _n(_op("dot", _m("Q", _a), _b)),
             _p(_op("dot", _a, _m("D", _b)))),
        description="Q twists the product against the derivation D")

    add("ZINBIEL", _AAA,
        _sum(_p(_op("zin", _a, _op("zin", _b, _c))),
             _n(_op("zin", _op("zin", _b, _a), _c)),
             _n(_op("zin", _op("zin", _a, _b), _c))),
        description="the product obeys the left Zinbiel identity")

    add("ZINB_ADMISS", _AA,
        _sum(_p(_m("Q", _op("zin", _a, _b))),
             _n(_op("zin", _m("Q", _a), _b)),
             _p(_op("zin", _a, _m("D", _b)))),
        description="first twisting identity of Q against D for a Zinbiel product")

    add("ZINB_ADMISS_ALT", _AA,
        _sum(_p(_m("Q", _op("zin", _a, _b))),
             _n(_op("zin", _a, _m("Q", _b))),
             _p(_op("zin", _m("D", _a), _b))),
        description="second twisting identity of Q against D for a Zinbiel product")

    _lp = lambda x, y: _op("lpre", x, y)
    _rp = lambda x, y: _op("rpre", x, y)

    add("PRE_NOV_1", _AAA,
        _sum(_p(_rp(_a, _rp(_b, _c))),
             _n(_rp(_sum(_p(_rp(_a, _b)), _p(_lp(_a, _b))), _c)),
             _n(_rp(_b, _rp(_a, _c))),
             _p(_rp(_sum(_p(_rp(_b, _a)), _p(_lp(_b, _a))), _c))),
        description="splitting identity for the two pre-products, part 1")

    add("PRE_NOV_2", _AAA,
        _sum(_p(_rp(_a, _lp(_b, _c))),
             _n(_lp(_rp(_a, _b), _c)),
             _n(_lp(_b, _sum(_p(_lp(_a, _c)), _p(_rp(_a, _c))))),
             _p(_lp(_lp(_b, _a), _c))),
        description="splitting identity for the two pre-products, part 2")

    add("PRE_NOV_3", _AAA,
        _sum(_p(_rp(_sum(_p(_lp(_a, _b)), _p(_rp(_a, _b))), _c)),
             _n(_lp(_rp(_a, _c), _b))),
        description="splitting identity for the two pre-products, part 3")

    add("PRE_NOV_4", _AAA,
        _sum(_p(_lp(_lp(_a, _b), _c)),
             _n(_lp(_lp(_a, _c), _b))),
        description="splitting identity for the two pre-products, part 4")

    add("COASSOC", _A1,
        _sum(_p(_coleg("delta", 1, _cop("delta", _a))),
             _n(_coleg("delta", 2, _cop("delta", _a)))),
        description="the coproduct is coassociative")

    add("COCOMM", _A1,
        _sum(_p(_cop("delta", _a)), _n(_tau(_cop("delta", _a)))),
        description="the coproduct is cocommutative")

    add("CODERIV", _A1,
        _sum(_p(_cop("delta", _m("Q", _a))),
             _n(_tm(_mm("Q"), None, _cop("delta", _a))),
             _n(_tm(None, _mm("Q"), _cop("delta", _a)))),
        description="Q is a coderivation of the coproduct")

    add("CO_ADMISS", _A1,
        _sum(_p(_tm(_mm("D"), None, _cop("delta", _a))),
             _n(_tm(None, _mm("Q"), _cop("delta", _a))),
             _n(_cop("delta", _m("D", _a)))),
        description="the coproduct intertwines D on one leg with Q on the other")

    add("NOV_COALG_1", _A1,
        _sum(_p(_coleg("Delta", 2, _cop("Delta", _a))),
             _n(_perm((1, 0, 2), _coleg("Delta", 2, _cop("Delta", _a)))),
             _n(_coleg("Delta", 1, _cop("Delta", _a))),
             _p(_perm((1, 0, 2), _coleg("Delta", 1, _cop("Delta", _a))))),
        description="co-version of the left symmetry identity")

    add("NOV_COALG_2", _A1,
        _sum(_p(_perm((1, 0, 2), _coleg("Delta", 2, _tau(_cop("Delta", _a))))),
             _n(_coleg("Delta", 1, _cop("Delta", _a)))),
        description="co-version of right multiplication commutativity")

    add("ASI_1", _AA,
        _sum(_p(_cop("delta", _op("dot", _a, _b))),
             _n(_tm(None, _ml("dot", _a), _cop("delta", _b))),
             _n(_tm(_mr("dot", _b), None, _cop("delta", _a)))),
        description="the coproduct is a derivation-like map for the product")

    add("ASI_2", _AA,
        _sum(_p(_tm(_ml("dot", _b), None, _cop("delta", _a))),
             _n(_tm(None, _mr("dot", _b), _cop("delta", _a))),
             _p(_tau(_sum(_p(_tm(_ml("dot", _a), None, _cop("delta", _b))),
                          _n(_tm(None, _mr("dot", _a), _cop("delta", _b))))))),
        description="balance identity between product and coproduct")

    _symd = lambda x: _sum(_p(_cop("Delta", x)), _p(_tau(_cop("Delta", x))))

    add("NOV_BIALG_1", _AA,
        _sum(_p(_cop("Delta", _op("circ", _a, _b))),
             _n(_tm(_mr("circ", _b), None, _cop("Delta", _a))),
             _n(_tm(None, _mstar("circ", _a), _symd(_b)))),
        description="compatibility of the coproduct with the product, part 1")

    add("NOV_BIALG_2", _AA,
        _sum(_p(_tm(_mstar("circ", _a), None, _cop("Delta", _b))),
             _n(_tm(None, _mstar("circ", _a), _tau(_cop("Delta", _b)))),
             _n(_tm(_mstar("circ", _b), None, _cop("Delta", _a))),
             _p(_tm(None, _mstar("circ", _b), _tau(_cop("Delta", _a))))),
        description="compatibility of the coproduct with the product, part 2")

    add("NOV_BIALG_3", _AA,
        _sum(_p(_tm(None, _mr("circ", _a), _symd(_b))),
             _n(_tm(_mr("circ", _a), None, _symd(_b))),
             _n(_tm(None, _mr("circ", _b), _symd(_a))),
             _p(_tm(_mr("circ", _b), None, _symd(_a)))),
        description="compatibility of the coproduct with the product, part 3")

    add("REP_NOV_1", _AAV,
        _sum(_p(_rep("l", _sum(_p(_op("circ", _a, _b)), _n(_op("circ", _b, _a))), _w)),
             _n(_rep("l", _a, _rep("l", _b, _w))),
             _p(_rep("l", _b, _rep("l", _a, _w)))),
        description="left operators represent the commutator")

    add("REP_NOV_2", _AAV,
        _sum(_p(_rep("l", _a, _rep("r", _b, _w))),
             _n(_rep("r", _b, _rep("l", _a, _w))),
             _n(_rep("r", _op("circ", _a, _b), _w)),
             _p(_rep("r", _b, _rep("r", _a, _w)))),
        description="mixed commutator of left and right operators")

    add("REP_NOV_3", _AAV,
        _sum(_p(_rep("l", _op("circ", _a, _b), _w)),
             _n(_rep("r", _b, _rep("l", _a, _w)))),
        description="left operator of a product factors through the right operator")

    add("REP_NOV_4", _AAV,
        _sum(_p(_rep("r", _a, _rep("r", _b, _w))),
             _n(_rep("r", _b, _rep("r", _a, _w)))),
        description="right operators commute")

    add("REP_MOD", _AAV,
        _sum(_p(_rep("l", _op("dot", _a, _b), _w)),
             _n(_rep("l", _a, _rep("l", _b, _w)))),
        description="left operators give a module over the commutative product")

    add("REP_DIFF", _AV,
        _sum(_p(_rmap("alpha", _rep("l", _a, _w))),
             _n(_rep("l", _m("D", _a), _w)),
             _n(_rep("l", _a, _rmap("alpha", _w)))),
        description="alpha is a derivation over D for the action")

    add("REP_ADM", _AV,
        _sum(_p(_rmap("beta", _rep("l", _a, _w))),
             _n(_rep("l", _a, _rmap("beta", _w))),
             _p(_rep("l", _m("D", _a), _w))),
        description="beta twists the action against D")

    add("REP_ADM_ALT", _AV,
        _sum(_p(_rmap("beta", _rep("l", _a, _w))),
             _n(_rep("l", _m("Q", _a), _w)),
             _p(_rep("l", _a, _rmap("alpha", _w)))),
        description="beta twists the action against Q and alpha")

    _f = lambda x, y: _op("f", x, y)
    _cr = lambda x, y: _op("circ", x, y)

    add("DEFORM_1", _AAA,
        _sum(_p(_f(_f(_a, _b), _c)),
             _n(_f(_a, _f(_b, _c))),
             _n(_f(_f(_b, _a), _c)),
             _p(_f(_b, _f(_a, _c)))),
        description="the deforming product satisfies the left symmetry identity")

    add("DEFORM_2", _AAA,
        _sum(_p(_f(_a, _cr(_b, _c))),
             _n(_f(_cr(_a, _b), _c)),
             _p(_f(_cr(_b, _a), _c)),
             _n(_f(_b, _cr(_a, _c))),
             _p(_cr(_a, _f(_b, _c))),
             _n(_cr(_f(_a, _b), _c)),
             _p(_cr(_f(_b, _a), _c)),
             _n(_cr(_b, _f(_a, _c)))),
        description="mixed left symmetry between the product and its deformation")

    add("DEFORM_3", _AAA,
        _sum(_p(_f(_f(_a, _b), _c)),
             _n(_f(_f(_a, _c), _b))),
        description="the deforming product has commuting right multiplications")

    add("DEFORM_4", _AAA,
        _sum(_p(_cr(_f(_a, _b), _c)),
             _n(_cr(_f(_a, _c), _b)),
             _p(_f(_cr(_a, _b), _c)),
             _n(_f(_cr(_a, _c), _b))),
        description="mixed right multiplication commutativity")

    add("SPEC_DEF_5", _AAA,
        _sum(_p(_op("dot", _op("dot", _a, _m("Q", _b)), _m("Q", _c))),
             _n(_op("dot", _a, _m("Q", _op("dot", _b, _m("Q", _c))))),
             _n(_op("dot", _op("dot", _b, _m("Q", _a)), _m("Q", _c))),
             _p(_op("dot", _b, _m("Q", _op("dot", _a, _m("Q", _c)))))),
        description="left symmetry of the Q-twisted product")

    add("SPEC_DEF_6", _AAA,
        _sum(_p(_op("dot", _op("dot", _a, _m("Q", _b)), _m("D", _c))),
             _n(_op("dot", _a, _m("Q", _op("dot", _b, _m("D", _c))))),
             _n(_op("dot", _op("dot", _b, _m("Q", _a)), _m("D", _c))),
             _p(_op("dot", _b, _m("Q", _op("dot", _a, _m("D", _c)))))),
        description="mixed twisting identity of the Q- and D-twisted products")

    _x = _cop("delta", _a)
    _db = _m("D", _b)
    _qb = _m("Q", _b)
    _dplusq_b = _sum(_p(_db), _p(_qb))

    add("BIALG_Q_1", _AA,
        _sum(_t((-1, -1, 1), _tm(None, _mcomp(_ml("dot", _db), _QplusD), _x)),
             _t((-1,), _tm(None, _mcomp(_ml("dot", _dplusq_b), _mm("Q")), _x)),
             _t((0, 0, 1), _tm(None, _mcomp(_ml("dot", _db), _mm("Q")), _x)),
             _t((0, 0, -1), _tm(None, _mcomp(_mr("dot", _qb), _mm("D")), _x)),
             _t((-1, -2, 1), _tm(None, _mcomp(_ml("dot", _b), _mcomp(_mm("D"), _DplusQ)), _x)),
             _t((0, -1, 1), _tm(None, _mcomp(_ml("dot", _b),
                                             _mlin(_p(_mcomp(_mm("D"), _mm("Q"))),
                                                   _n(_mcomp(_mm("Q"), _mm("D"))))), _x)),
             _t((0, -2), _tm(None, _mcomp(_ml("dot", _b), _mcomp(_mm("Q"), _QplusD)), _x)),
             _t((1, 1, -2), _tm(_mm("D"), _mcomp(_ml("dot", _b), _QplusD), _x))),
        uses_q=True,
        description="closure of the induced coproduct under the induced product")

    def _bq2_half(x, y):
        lmul = _ml("dot", _sum(_p(_m("D", x)), _p(_m("Q", x))))
        return (_tm(lmul, _QplusqD, _cop("delta", y)),
                _tm(_QplusqD, lmul, _cop("delta", y)))

    _ab1, _ab2 = _bq2_half(_a, _b)
    _ba1, _ba2 = _bq2_half(_b, _a)

    add("BIALG_Q_2", _AA,
        _sum(_t((1, 2), _ab1), _t((-1, -2), _ab2),
             _t((-1, -2), _ba1), _t((1, 2), _ba2)),
        uses_q=True,
        description="first symmetry of the induced pair in both arguments")

    def _bq3_half(x, y):
        lmul = _ml("dot", _sum(_p(_m("D", x)), _t((0, 1), _m("Q", x))))
        inner = _tm(None, _DplusQ, _cop("delta", y))
        return (_tm(None, lmul, inner), _tm(lmul, None, inner))

    _cb1, _cb2 = _bq3_half(_a, _b)
    _cb3, _cb4 = _bq3_half(_b, _a)

    add("BIALG_Q_3", _AA,
        _sum(_t((1, 2), _cb1), _t((-1, -2), _cb2),
             _t((-1, -2), _cb3), _t((1, 2), _cb4)),
        uses_q=True,
        description="second symmetry of the induced pair in both arguments")

    add("COND_A", _AA,
        _sum(_p(_op("dot", _a, _m("Q", _b))),
             _p(_op("dot", _a, _m("D", _b)))),
        description="Q acts as minus D under multiplication")

    add("COND_B", _A1,
        _sum(_p(_tm(None, _mm("Q"), _cop("delta", _a))),
             _p(_tm(None, _mm("D"), _cop("delta", _a)))),
        description="Q acts as minus D under the coproduct")

    add("BILIN_INV_NOV", _AAA,
        _sum(_p(_pair("B", _op("circ", _a, _b), _c)),
             _p(_pair("B", _b, _sum(_p(_op("circ", _a, _c)), _p(_op("circ", _c, _a)))))),
        description="the form is invariant for the product and its symmetrization")

    add("BILIN_INV_ASSOC", _AAA,
        _sum(_p(_pair("B", _op("dot", _a, _b), _c)),
             _n(_pair("B", _a, _op("dot", _b, _c)))),
        description="the form is invariant for the commutative product")

    add("FORM_SYM", _AA,
        _sum(_p(_pair("B", _a, _b)), _n(_pair("B", _b, _a))),
        description="the form is symmetric")

    add("FORM_NONDEG", (), None,
        description="the form has nonzero determinant (as a polynomial over Q[q])")

    return {d.axiom_id: d for d in defs}


CATALOG: dict[str, AxiomDef] = _catalog()


# -- evaluator ---------------------------------------------------------------


class _Ctx:
    __slots__ = ("pres", "binds", "vals", "rep", "qpoint")

    def __init__(self, pres, binds, vals, rep, qpoint):
        self.pres = pres
        self.binds = binds
        self.vals = vals
        self.rep = rep
        self.qpoint = qpoint

    def key(self, k: str) -> str:
        return self.binds.get(k, k)


def _qc(coeffs, ctx: _Ctx) -> Scalar:
    p = polynomial(coeffs)
    if ctx.qpoint is not None:
        return p.eval_q(ctx.qpoint)
    if ctx.pres.ring == POLY:
        return p
    if p.degree() <= 0:
        return Scalar.of(RATIONAL, p.constant_value())
    raise ValueError("checking a q-dependent identity over Q needs an explicit q value")


def _eval_map(me, ctx: _Ctx) -> LinMap | None:
    if me is None:
        return None
    kind = me[0]
    if kind == "m":
        return ctx.pres.linmap(ctx.key(me[1]))
    if kind == "ml":
        return ctx.pres.binop(ctx.key(me[1])).left_mult(_eval(me[2], ctx))
    if kind == "mr":
        return ctx.pres.binop(ctx.key(me[1])).right_mult(_eval(me[2], ctx))
    if kind == "mlin":
        acc = None
        for coeffs, sub in me[1]:
            part = _eval_map(sub, ctx)
            if part is None:
                part = LinMap.identity(ctx.pres.ring, ctx.pres.dim)
            part = part.scale(_qc(coeffs, ctx))
            acc = part if acc is None else acc + part
        return acc
    if kind == "mcomp":
        outer = _eval_map(me[1], ctx)
        inner = _eval_map(me[2], ctx)
        if outer is None:
            return inner
        if inner is None:
            return outer
        return outer @ inner
    raise ValueError(f"unknown map expression {kind!r}")


def _eval(e, ctx: _Ctx):
    kind = e[0]
    if kind == "var":
        return ctx.vals[e[1]]
    if kind == "op":
        return ctx.pres.binop(ctx.key(e[1])).apply(_eval(e[2], ctx), _eval(e[3], ctx))
    if kind == "map":
        return ctx.pres.linmap(ctx.key(e[1])).apply(_eval(e[2], ctx))
    if kind == "lin":
        acc = None
        for coeffs, sub in e[1]:
            part = _eval(sub, ctx).scale(_qc(coeffs, ctx))
            acc = part if acc is None else acc + part
        return acc
    if kind == "cop":
        return ctx.pres.coop(ctx.key(e[1])).apply(_eval(e[2], ctx))
    if kind == "tau":
        return _eval(e[1], ctx).flip()
    if kind == "tmap2":
        m1, m2 = e[1]
        return _eval(e[2], ctx).apply_maps(_eval_map(m1, ctx), _eval_map(m2, ctx))
    if kind == "coleg":
        return ctx.pres.coop(ctx.key(e[1])).expand_leg(_eval(e[3], ctx), e[2])
    if kind == "perm":
        return _eval(e[2], ctx).permute(e[1])
    if kind == "pair":
        form = ctx.pres.form(ctx.key(e[1]))
        x, y = _eval(e[2], ctx), _eval(e[3], ctx)
        acc = Scalar.zero(ctx.pres.ring)
        for i, xi in enumerate(x.coords):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y.coords):
                if not yj.is_zero():
                    acc = acc + xi * form.entry(i, j) * yj
        return Vector(ctx.pres.ring, [acc])
    if kind == "rep":
        if ctx.rep is None:
            raise PresentationError("this axiom needs a representation")
        which = e[1]
        if which == "r" and not hasattr(ctx.rep, "r"):
            raise PresentationError("this representation has no right operator family")
        fam = ctx.rep.r if which == "r" else ctx.rep.l
        avec = _eval(e[2], ctx)
        vvec = _eval(e[3], ctx)
        out = Vector.zero(ctx.rep.ring, ctx.rep.dim)
        for i, ai in enumerate(avec.coords):
            if not ai.is_zero():
                out = out + fam[i].apply(vvec).scale(ai)
        return out
    if kind == "rmap":
        if ctx.rep is None:
            raise PresentationError("this axiom needs a representation")
        if not hasattr(ctx.rep, e[1]):
            raise PresentationError(f"this representation has no map {e[1]!r}")
        return getattr(ctx.rep, e[1]).apply(_eval(e[2], ctx))
    raise ValueError(f"unknown expression {kind!r}")


def _value_entries(val) -> Iterator[Scalar]:
    if isinstance(val, Scalar):
        yield val
    elif isinstance(val, Vector):
        yield from val.coords
    elif isinstance(val, (LinMap, Tensor2)):
        for row in val.rows:
            yield from row
    elif isinstance(val, Tensor3):
        for plane in val.data:
            for row in plane:
                yield from row
    else:
        raise TypeError(f"unexpected residual value {type(val).__name__}")


def check_axiom(
    axiom_id: str,
    pres: Presentation,
    binds: dict[str, str] | None = None,
    *,
    rep: RepNov | RepAdmDiff | None = None,
    q=None,
    tuple_filter: Callable[[tuple[int, ...]], bool] | None = None,
) -> AxiomReport:
    """Check one catalog identity on a presentation.

    ``binds`` maps the catalog's symbolic operation slots to the names used
    by the presentation.  Module-variable axioms also need ``rep``.  Passing
    a rational ``q`` fixes the deformation parameter in q-dependent axioms
    (only meaningful over Q; over Q[q] the check is symbolic and a finite
    solution set comes back as a locus).
    """
    try:
        axdef = CATALOG[axiom_id]
    except KeyError:
        raise KeyError(f"unknown axiom {axiom_id!r}") from None
    binds = dict(binds or {})

    if axiom_id == "FORM_NONDEG":
        form = pres.form(binds.get("B", "B"))
        det = bareiss_det([list(r) for r in form.rows], pres.ring)
        verdict = HOLDS if not det.is_zero() else FAILS
        return AxiomReport(axiom_id, verdict, None, det, det.degree(), None)

    qpoint = None
    if q is not None:
        if pres.ring == POLY:
            raise ValueError("specialize the presentation before fixing q")
        qpoint = Fraction(q)
    elif axdef.uses_q and pres.ring == RATIONAL:
        raise ValueError(f"{axiom_id} uses q; pass q= or work over Q[q]")

    dims = []
    for _, sp in axdef.variables:
        if sp == "A":
            dims.append(pres.dim)
        else:
            if rep is None:
                raise PresentationError(f"{axiom_id} needs a representation")
            if rep.ring != pres.ring:
                raise RingMismatchError("representation ring differs from presentation ring")
            if rep.alg_dim != pres.dim:
                raise PresentationError("representation is over a different algebra dimension")
            dims.append(rep.dim)

    def items():
        for idx in itertools.product(*(range(d) for d in dims)):
            if tuple_filter is not None and not tuple_filter(idx):
                continue
            vals = {}
            names = []
            for (name, sp), i in zip(axdef.variables, idx):
                dim = pres.dim if sp == "A" else rep.dim
                vals[name] = Vector.basis(pres.ring, dim, i)
                names.append(pres.space.names[i] if sp == "A" else rep.names[i])
            ctx = _Ctx(pres, binds, vals, rep, qpoint)
            yield tuple(names), _eval(axdef.expr, ctx)

    return scan_residuals(axiom_id, pres.ring, items())


def scan_residuals(axiom_id: str, ring: str, items) -> AxiomReport:
    """Fold (witness, residual value) pairs into an AxiomReport.

    ``items`` yields pairs of a witness name tuple and a residual (Scalar,
    Vector or tensor).  Over Q the first nonzero residual settles the verdict;
    over Q[q] the rational vanishing sets of all nonzero entries are
    intersected, stopping early once the intersection is empty and no
    non-rational common zero is possible.
    """
    witness = None
    wres = None
    maxdeg = -1
    roots_running: set[Fraction] | None = None
    may_be_nonrational = True
    found = False

    for names, val in items:
        nonzero = [s for s in _value_entries(val) if not s.is_zero()]
        if not nonzero:
            continue
        if not found:
            found = True
            witness = tuple(names)
            wres = val
        for s in nonzero:
            maxdeg = max(maxdeg, s.degree())
        if ring == RATIONAL:
            break  # first witness settles a rational check
        for s in nonzero:
            rr = rational_roots(s)
            roots_running = set(rr.roots) if roots_running is None else roots_running & rr.roots
            may_be_nonrational = may_be_nonrational and rr.has_nonrational_factor
        if roots_running is not None and not roots_running and not may_be_nonrational:
            break

    if not found:
        locus = QLocus(ALL_Q) if ring == POLY else None
        return AxiomReport(axiom_id, HOLDS, None, None, -1, locus)
    if ring == RATIONAL:
        return AxiomReport(axiom_id, FAILS, witness, wres, maxdeg, None)
    if roots_running:
        locus = QLocus(FINITE, frozenset(roots_running), may_be_nonrational)
        return AxiomReport(axiom_id, HOLDS_ON_LOCUS, witness, wres, maxdeg, locus)
    locus = QLocus(EMPTY, frozenset(), may_be_nonrational)
    return AxiomReport(axiom_id, FAILS, witness, wres, maxdeg, locus)


def vanishing_locus(entries) -> QLocus:
    """Common rational vanishing set of a family of Q[q] scalars.

    Identically zero entries impose no constraint; the result is all_q when
    every entry is zero.
    """
    roots_running: set[Fraction] | None = None
    may_be_nonrational = True
    for s in entries:
        if s.is_zero():
            continue
        rr = rational_roots(s)
        roots_running = set(rr.roots) if roots_running is None else roots_running & rr.roots
        may_be_nonrational = may_be_nonrational and rr.has_nonrational_factor
    if roots_running is None:
        return QLocus(ALL_Q)
    if roots_running:
        return QLocus(FINITE, frozenset(roots_running), may_be_nonrational)
    return QLocus(EMPTY, frozenset(), may_be_nonrational)


def combine_loci(loci) -> QLocus:
    """Intersection of q-loci; with no constraints the result is all_q."""
    points: set[Fraction] | None = None
    flag = True
    for lc in loci:
        if lc is None or lc.kind == ALL_Q:
            continue
        points = set(lc.points) if points is None else points & lc.points
        flag = flag and lc.has_nonrational_factor
    if points is None:
        return QLocus(ALL_Q)
    if points:
        return QLocus(FINITE, frozenset(points), flag)
    return QLocus(EMPTY, frozenset(), flag)


def all_hold(reports: Iterable[AxiomReport]) -> bool:
    return all(r.holds for r in reports)


def is_admissible_quadruple(
    pres: Presentation,
    dot: str = "dot",
    D: str = "D",
    Q: str = "Q",
) -> dict[str, AxiomReport]:
    """Commutativity, associativity, D a derivation, Q twisted against D."""
    binds = {"dot": dot, "D": D, "Q": Q}
    return {aid: check_axiom(aid, pres, binds)
            for aid in ("COMM", "ASSOC", "DERIV", "ADMISS")}


def _toggle_prime(name: str) -> str:
    return name[:-1] if name.endswith("'") else name + "'"


def dualize(pres: Presentation) -> Presentation:
    """The dual presentation on the dual basis.

    Products and coproducts trade places (keeping their names), linear maps
    transpose, and bilinear forms trade places with order-2 tensors.  The
    operation is an exact involution.
    """
    n = pres.dim
    dual_binops = {}
    for name, coop in pres.coops.items():
        c = [[[coop.d[k][i][j] for k in range(n)] for j in range(n)] for i in range(n)]
        dual_binops[name] = BinOpTensor(pres.ring, c)
    dual_coops = {}
    for name, binop in pres.binops.items():
        d = [[[binop.c[j][k][i] for k in range(n)] for j in range(n)] for i in range(n)]
        dual_coops[name] = CoOpTensor(pres.ring, d)
    return Presentation(
        ring=pres.ring,
        space=Space(tuple(_toggle_prime(nm) for nm in pres.space.names)),
        binops=dual_binops,
        coops=dual_coops,
        maps={k: m.transpose() for k, m in pres.maps.items()},
        forms=dict(pres.relements),
        relements=dict(pres.forms),
    )
