"""Plain-text presentation files.

The format is line oriented.  A file opens with the space and the ring, then
any number of named blocks; inside a block each line gives one nonzero piece
of structure, and everything unstated is zero.

    # comment
    space 2 e1 e2
    ring Q[q]

    product dot
    e1 e1 -> e1
    e1 e2 -> -1/2*e1 + e2

    coproduct delta
    e2 -> (1 + 2*q)*e2 (x) e2

    map D
    e2 -> e2

    form B
    e1 e2 -> 1

    relement r
    e1 e2 -> 1
    e2 e1 -> -1

Scalars are rationals and polynomials in q, built from integers, /, *, ^,
parentheses and the literal q; multi-term coefficients of a basis vector must
be parenthesized.  The tensor marker (x) separates the two legs of a
coproduct or r-element term.  The name q is reserved.

parse and emit are inverse on canonical files: emit writes entries in basis
order with normalized scalars, and parse(emit(p)) reproduces p exactly.
"""

from fractions import Fraction

from .exactcore import POLY, RATIONAL, Scalar, Tensor2, qvar
from .structures import BinOpTensor, CoOpTensor, LinMap, Presentation, Space


class PresFileError(Exception):
    """A syntax or consistency error in a presentation file, with line info."""

    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


_PUNCT = ("(x)", "->", "+", "-", "*", "/", "^", "(", ")")


def _tokenize(line: str, lineno: int) -> list[str]:
    toks = []
    i = 0
    while i < len(line):
        ch = line[i]
        if ch.isspace():
            i += 1
            continue
        for p in _PUNCT:
            if line.startswith(p, i):
                toks.append(p)
                i += len(p)
                break
        else:
            j = i
            while j < len(line) and (line[j].isalnum() or line[j] in "_'"):
                j += 1
            if j == i:
                raise PresFileError(lineno, f"unexpected character {ch!r}")
            toks.append(line[i:j])
            i = j
    return toks


class _TermParser:
    """Recursive-descent parser for one entry line's token list."""

    def __init__(self, toks, lineno, ring, index):
        self.toks = toks
        self.pos = 0
        self.lineno = lineno
        self.ring = ring
        self.index = index  # basis name -> position, or None before the space line

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise PresFileError(self.lineno, "unexpected end of line")
        self.pos += 1
        return t

    def expect(self, t):
        got = self.take()
        if got != t:
            raise PresFileError(self.lineno, f"expected {t!r}, found {got!r}")

    def done(self):
        if self.pos != len(self.toks):
            raise PresFileError(self.lineno, f"trailing tokens from {self.peek()!r}")

    def _int(self):
        t = self.take()
        if not t.isdigit():
            raise PresFileError(self.lineno, f"expected a number, found {t!r}")
        return int(t)

    def _is_scalar_start(self, t):
        return t is not None and (t.isdigit() or t == "q" or t == "(")

    def scalar_atom(self) -> Scalar:
        t = self.peek()
        if t == "(":
            self.take()
            s = self.scalar_expr()
            self.expect(")")
        elif t == "q":
            self.take()
            if self.ring != POLY:
                raise PresFileError(self.lineno, "q is only available over ring Q[q]")
            s = qvar()
        elif t is not None and t.isdigit():
            num = self._int()
            if self.peek() == "/":
                self.take()
                den = self._int()
                if den == 0:
                    raise PresFileError(self.lineno, "zero denominator")
                s = Scalar.of(self.ring, Fraction(num, den))
            else:
                s = Scalar.of(self.ring, num)
        else:
            raise PresFileError(self.lineno, f"expected a scalar, found {t!r}")
        if self.peek() == "^":
            self.take()
            e = self._int()
            out = Scalar.one(self.ring)
            for _ in range(e):
                out = out * s
            s = out
        return s

    def scalar_term(self) -> Scalar:
        s = self.scalar_atom()
        while self.peek() == "*":
            self.take()
            s = s * self.scalar_atom()
        return s

    def scalar_expr(self) -> Scalar:
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.take() == "-"
        s = self.scalar_term()
        if neg:
            s = -s
        while self.peek() in ("+", "-"):
            sub = self.take() == "-"
            t = self.scalar_term()
            s = s - t if sub else s + t
        return s

    def basis(self) -> int:
        t = self.take()
        if t not in self.index:
            raise PresFileError(self.lineno, f"unknown basis vector {t!r}")
        return self.index[t]

    def _one_term(self, tensor: bool):
        """coeff, basis index, and second index when tensor terms are expected."""
        coeff = Scalar.one(self.ring)
        base = None
        while True:
            t = self.peek()
            if self._is_scalar_start(t):
                coeff = coeff * self.scalar_atom()
            elif t in self.index:
                if base is not None:
                    raise PresFileError(self.lineno, "two basis vectors in one term")
                self.take()
                base = self.index[t]
            else:
                raise PresFileError(self.lineno, f"expected a term, found {t!r}")
            if self.peek() == "*":
                self.take()
                continue
            break
        second = None
        if tensor:
            self.expect("(x)")
            second = self.basis()
        elif base is None:
            raise PresFileError(self.lineno, "term has no basis vector")
        if tensor and base is None:
            raise PresFileError(self.lineno, "term has no basis vector")
        return coeff, base, second

    def linear_rhs(self, tensor: bool):
        """Sum of terms; yields (coeff, i) or (coeff, i, j) triples."""
        if self.toks[self.pos:] == ["0"]:
            self.take()
            return []
        out = []
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.take() == "-"
        while True:
            coeff, base, second = self._one_term(tensor)
            if neg:
                coeff = -coeff
            out.append((coeff, base, second))
            t = self.peek()
            if t in ("+", "-"):
                self.take()
                neg = t == "-"
                continue
            break
        return out


def parse(text: str) -> Presentation:
    """Read a presentation from file text."""
    space = None
    index = {}
    ring = None
    binops = {}
    coops = {}
    maps = {}
    forms = {}
    relements = {}
    block = None  # (kind, name, accumulator)

    def close_block():
        nonlocal block
        if block is None:
            return
        kind, name, acc, _ = block
        if kind == "product":
            binops[name] = BinOpTensor(ring, acc)
        elif kind == "coproduct":
            coops[name] = CoOpTensor(ring, acc)
        elif kind == "map":
            maps[name] = LinMap(ring, acc)
        elif kind == "form":
            forms[name] = Tensor2(ring, acc)
        else:
            relements[name] = Tensor2(ring, acc)
        block = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]

        if head == "space":
            if space is not None:
                raise PresFileError(lineno, "duplicate space line")
            parts = line.split()
            if len(parts) < 3 or not parts[1].isdigit():
                raise PresFileError(lineno, "space line needs a dimension and basis names")
            names = tuple(parts[2:])
            if len(names) != int(parts[1]):
                raise PresFileError(lineno, f"expected {parts[1]} basis names, got {len(names)}")
            if len(set(names)) != len(names):
                raise PresFileError(lineno, "repeated basis name")
            if "q" in names:
                raise PresFileError(lineno, "the name q is reserved for the parameter")
            space = Space(names)
            index = {nm: i for i, nm in enumerate(names)}
            continue

        if head == "ring":
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("Q", "Q[q]"):
                raise PresFileError(lineno, "ring must be Q or Q[q]")
            if ring is not None:
                raise PresFileError(lineno, "duplicate ring line")
            ring = RATIONAL if parts[1] == "Q" else POLY
            continue

        if head in ("product", "coproduct", "map", "form", "relement"):
            if space is None or ring is None:
                raise PresFileError(lineno, "space and ring must come before any block")
            parts = line.split()
            if len(parts) != 2:
                raise PresFileError(lineno, f"{head} line needs exactly one name")
            name = parts[1]
            if name == "q":
                raise PresFileError(lineno, "the name q is reserved for the parameter")
            for table in (binops, coops, maps, forms, relements):
                if name in table:
                    raise PresFileError(lineno, f"duplicate name {name!r}")
            close_block()
            n = len(space.names)
            z = Scalar.zero(ring)
            if head in ("product", "coproduct"):
                acc = [[[z] * n for _ in range(n)] for _ in range(n)]
            else:
                acc = [[z] * n for _ in range(n)]
            block = (head, name, acc, lineno)
            continue

        if "->" not in line:
            raise PresFileError(lineno, f"unrecognized line {line!r}")
        if block is None:
            raise PresFileError(lineno, "entry line outside any block")

        kind, name, acc, _ = block
        toks = _tokenize(line, lineno)
        arrow = toks.index("->")
        lhs, rhs = toks[:arrow], toks[arrow + 1:]
        p = _TermParser(rhs, lineno, ring, index)

        if kind in ("product", "form", "relement"):
            if len(lhs) != 2 or lhs[0] not in index or lhs[1] not in index:
                raise PresFileError(lineno, "left side must be two basis vectors")
            i, j = index[lhs[0]], index[lhs[1]]
            if kind == "product":
                terms = p.linear_rhs(tensor=False)
                p.done()
                row = acc[i][j]
                if any(not s.is_zero() for s in row):
                    raise PresFileError(lineno, f"duplicate entry for {lhs[0]} {lhs[1]}")
                for coeff, k, _ in terms:
                    row[k] = row[k] + coeff
            else:
                val = p.scalar_expr()
                p.done()
                if not acc[i][j].is_zero():
                    raise PresFileError(lineno, f"duplicate entry for {lhs[0]} {lhs[1]}")
                acc[i][j] = val
        else:
            if len(lhs) != 1 or lhs[0] not in index:
                raise PresFileError(lineno, "left side must be one basis vector")
            i = index[lhs[0]]
            if kind == "coproduct":
                terms = p.linear_rhs(tensor=True)
                p.done()
                plane = acc[i]
                if any(not s.is_zero() for row in plane for s in row):
                    raise PresFileError(lineno, f"duplicate entry for {lhs[0]}")
                for coeff, j, k in terms:
                    plane[j][k] = plane[j][k] + coeff
            else:
                terms = p.linear_rhs(tensor=False)
                p.done()
                if any(not acc[k][i].is_zero() for k in range(len(acc))):
                    raise PresFileError(lineno, f"duplicate entry for {lhs[0]}")
                for coeff, k, _ in terms:
                    acc[k][i] = acc[k][i] + coeff

    close_block()
    if space is None or ring is None:
        raise PresFileError(0, "file must declare a space and a ring")
    return Presentation(ring=ring, space=space, binops=binops, coops=coops,
                        maps=maps, forms=forms, relements=relements)


def _coeff_str(s: Scalar) -> str:
    """Render a coefficient for term position; parenthesize sums."""
    txt = str(s)
    if " + " in txt or " - " in txt:
        return f"({txt})"
    return txt


def _vector_terms(pairs, names) -> str:
    parts = []
    for k, s in pairs:
        txt = _coeff_str(s)
        if txt == "1":
            term = names[k]
        elif txt == "-1":
            term = f"-{names[k]}"
        else:
            term = f"{txt}*{names[k]}"
        if parts and not term.startswith("-"):
            parts.append(f"+ {term}")
        elif parts:
            parts.append(f"- {term[1:]}")
        else:
            parts.append(term)
    return " ".join(parts)


def _tensor_terms(triples, names) -> str:
    parts = []
    for j, k, s in triples:
        txt = _coeff_str(s)
        if txt == "1":
            term = f"{names[j]} (x) {names[k]}"
        elif txt == "-1":
            term = f"-{names[j]} (x) {names[k]}"
        else:
            term = f"{txt}*{names[j]} (x) {names[k]}"
        if parts and not term.startswith("-"):
            parts.append(f"+ {term}")
        elif parts:
            parts.append(f"- {term[1:]}")
        else:
            parts.append(term)
    return " ".join(parts)


def emit(pres: Presentation) -> str:
    """Write a presentation as canonical file text."""
    names = pres.space.names
    n = len(names)
    out = [f"space {n} {' '.join(names)}",
           "ring " + ("Q" if pres.ring == RATIONAL else "Q[q]")]

    for name in sorted(pres.binops):
        op = pres.binops[name]
        out.append("")
        out.append(f"product {name}")
        for i in range(n):
            for j in range(n):
                pairs = [(k, s) for k, s in enumerate(op.c[i][j]) if not s.is_zero()]
                if pairs:
                    out.append(f"{names[i]} {names[j]} -> {_vector_terms(pairs, names)}")

    for name in sorted(pres.coops):
        cop = pres.coops[name]
        out.append("")
        out.append(f"coproduct {name}")
        for i in range(n):
            triples = [(j, k, s) for j in range(n) for k, s in enumerate(cop.d[i][j])
                       if not s.is_zero()]
            if triples:
                out.append(f"{names[i]} -> {_tensor_terms(triples, names)}")

    for name in sorted(pres.maps):
        m = pres.maps[name]
        out.append("")
        out.append(f"map {name}")
        for j in range(n):
            pairs = [(k, m.rows[k][j]) for k in range(n) if not m.rows[k][j].is_zero()]
            if pairs:
                out.append(f"{names[j]} -> {_vector_terms(pairs, names)}")

    for label, table in (("form", pres.forms), ("relement", pres.relements)):
        for name in sorted(table):
            t = table[name]
            out.append("")
            out.append(f"{label} {name}")
            for i in range(n):
                for j in range(n):
                    if not t.rows[i][j].is_zero():
                        out.append(f"{names[i]} {names[j]} -> {t.rows[i][j]}")

    return "\n".join(out) + "\n"


def load(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(path, pres: Presentation) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(pres))
