"""Weighted-graded polynomial rings k[x_1..x_n] and their strand data.

A ring fixes a coefficient field, variable names, and positive integer
weights.  Monomial bases of each graded piece R_d are enumerated in
graded-lexicographic order (variables in declaration order, exponents
descending), and that enumeration is the basis contract used by every matrix
in the engine.  Rings cache their strand bases and multiplication matrices;
everything is immutable after construction.
"""

from __future__ import annotations

from .errors import (
    NonHomogeneousError,
    ParseError,
    UnknownVariableError,
)
from .exact import ExactMatrix, FieldSpec

__all__ = ["GradedRing", "Poly", "monomial_basis", "mult_matrix", "parse_poly"]


class GradedRing:
    __slots__ = ("field", "var_names", "weights", "_basis_cache", "_index_cache", "_mult_cache")

    def __init__(self, field: FieldSpec, var_names, weights):
        var_names = tuple(str(v) for v in var_names)
        weights = tuple(int(w) for w in weights)
        if not var_names:
            raise ValueError("a graded ring needs at least one variable")
        if len(set(var_names)) != len(var_names):
            raise ValueError("variable names must be distinct")
        if any(not v for v in var_names):
            raise ValueError("variable names must be nonempty")
        if len(weights) != len(var_names):
            raise ValueError("one weight per variable")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "var_names", var_names)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_basis_cache", {})
        object.__setattr__(self, "_index_cache", {})
        object.__setattr__(self, "_mult_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("GradedRing is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, GradedRing)
            and self.field == other.field
            and self.var_names == other.var_names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.field, self.var_names, self.weights))

    def __repr__(self):
        ws = ",".join(str(w) for w in self.weights)
        return f"{self.field}[{','.join(self.var_names)}; weights {ws}]"

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def exponent_degree(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    # -- canonical element constructors -----------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: 1})

    def constant(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c})

    def variable(self, i: int) -> "Poly":
        exp = [0] * self.nvars
        exp[i] = 1
        return Poly(self, {tuple(exp): 1})

    def variables(self):
        return tuple(self.variable(i) for i in range(self.nvars))


def monomial_basis(ring: GradedRing, d: int):
    """Exponent vectors of all monomials of weighted degree d, graded-lex order."""
    cached = ring._basis_cache.get(d)
    if cached is not None:
        return cached
    if d < 0:
        basis: tuple = ()
    else:
        out = []
        exps = [0] * ring.nvars

        def fill(pos: int, remaining: int):
            w = ring.weights[pos]
            if pos == ring.nvars - 1:
                if remaining % w == 0:
                    exps[pos] = remaining // w
                    out.append(tuple(exps))
                return
            for e in range(remaining // w, -1, -1):
                exps[pos] = e
                fill(pos + 1, remaining - e * w)
            exps[pos] = 0

        fill(0, d)
        basis = tuple(out)
    ring._basis_cache[d] = basis
    ring._index_cache[d] = {e: i for i, e in enumerate(basis)}
    return basis


def _basis_index(ring: GradedRing, d: int):
    monomial_basis(ring, d)
    return ring._index_cache[d]


class Poly:
    """Polynomial as a map exponent-vector -> nonzero canonical scalar."""

    __slots__ = ("ring", "terms", "_key")

    def __init__(self, ring: GradedRing, terms):
        clean = {}
        n = ring.nvars
        for exp, coeff in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp}")
            c = ring.field.normalize(coeff)
            if c != 0:
                c0 = clean.get(exp)
                if c0 is None:
                    clean[exp] = c
                else:
                    c = ring.field.add(c0, c)
                    if c == 0:
                        del clean[exp]
                    else:
                        clean[exp] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        degs = {self.ring.exponent_degree(e) for e in self.terms}
        return len(degs) <= 1

    def degree(self):
        """Weighted degree of a homogeneous polynomial; None for the zero poly."""
        if not self.terms:
            return None
        degs = {self.ring.exponent_degree(e) for e in self.terms}
        if len(degs) > 1:
            raise NonHomogeneousError(f"{self} is not homogeneous")
        return degs.pop()

    def key(self):
        if self._key is None:
            object.__setattr__(self, "_key", tuple(sorted(self.terms.items())))
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.key()))

    # -- arithmetic -----------------------------------------------------------
    def _check_ring(self, other: "Poly"):
        if self.ring != other.ring:
            raise ValueError("polynomials over different rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_ring(other)
        out = dict(self.terms)
        fld = self.ring.field
        for exp, c in other.terms.items():
            s = fld.add(out.get(exp, fld.zero()), c)
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        fld = self.ring.field
        return Poly(self.ring, {e: fld.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_ring(other)
        fld = self.ring.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = fld.add(out.get(exp, fld.zero()), fld.mul(c1, c2))
                if s == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return Poly(self.ring, out)

    def scale(self, c) -> "Poly":
        fld = self.ring.field
        c = fld.normalize(c)
        return Poly(self.ring, {e: fld.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- text -------------------------------------------------------------------
    def __repr__(self):
        return format_poly(self)


def format_poly(p: Poly) -> str:
    """Canonical text form: terms in descending graded-lex order."""
    if not p.terms:
        return "0"
    ring = p.ring
    items = sorted(
        p.terms.items(),
        key=lambda item: (ring.exponent_degree(item[0]), item[0]),
        reverse=True,
    )
    pieces = []
    for idx, (exp, coeff) in enumerate(items):
        factors = []
        for name, e in zip(ring.var_names, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        sign = ""
        c = coeff
        if ring.field.is_rational and c < 0:
            sign = "-"
            c = -c
        body = "*".join(factors)
        if not factors:
            body = str(c)
        elif c != 1:
            body = f"{c}*{body}"
        if idx == 0:
            pieces.append(sign + body)
        else:
            pieces.append(("- " if sign else "+ ") + body)
    return " ".join(pieces)


def mult_matrix(f: Poly, d: int) -> ExactMatrix:
    """Matrix of multiplication by homogeneous f from R_d to R_{d+deg f}."""
    ring = f.ring
    deg = f.degree()
    if deg is None:
        deg = 0
    cache_key = (f.key(), d)
    cached = ring._mult_cache.get(cache_key)
    if cached is not None:
        return cached
    src = monomial_basis(ring, d)
    dst_index = _basis_index(ring, d + deg)
    out = ExactMatrix.zeros(ring.field, len(dst_index), len(src))._mutable_copy()
    fld = ring.field
    for j, mono in enumerate(src):
        for exp, coeff in f.terms.items():
            target = tuple(a + b for a, b in zip(exp, mono))
            i = dst_index[target]
            out[i, j] = fld.add(fld.normalize(out[i, j]), coeff)
    result = ExactMatrix(ring.field, out)
    ring._mult_cache[cache_key] = result
    return result


# -- parsing ---------------------------------------------------------------

_TOKEN_SYMBOLS = {"+", "-", "*", "^"}


def _tokenize(src: str):
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(("int", src[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("name", src[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


def parse_poly(ring: GradedRing, src: str) -> Poly:
    """Parse ``x^2*y - 3*y^3`` style text into a canonical Poly."""
    tokens = _tokenize(src)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    var_index = {name: i for i, name in enumerate(ring.var_names)}

    def parse_factor():
        kind, text, at = advance()
        if kind == "int":
            return int(text), None
        if kind == "name":
            if text not in var_index:
                raise UnknownVariableError(f"unknown variable {text!r} at position {at}")
            exp = 1
            if peek()[0] == "^":
                advance()
                k2, t2, a2 = advance()
                if k2 != "int":
                    raise ParseError("expected an integer exponent", a2)
                exp = int(t2)
            return None, (var_index[text], exp)
        raise ParseError("expected a coefficient or variable", at)

    def parse_term():
        coeff = 1
        exps = [0] * ring.nvars
        while True:
            c, var = parse_factor()
            if c is not None:
                coeff *= c
            else:
                i, e = var
                exps[i] += e
            if peek()[0] == "*":
                advance()
                continue
            break
        return coeff, tuple(exps)

    terms: dict = {}

    def accumulate(sign: int):
        coeff, exp = parse_term()
        terms[exp] = terms.get(exp, 0) + sign * coeff

    sign = 1
    if peek()[0] in {"+", "-"}:
        sign = -1 if advance()[0] == "-" else 1
    accumulate(sign)
    while peek()[0] != "end":
        kind, _, at = advance()
        if kind not in {"+", "-"}:
            raise ParseError("expected '+' or '-' between terms", at)
        accumulate(-1 if kind == "-" else 1)
    return Poly(ring, terms)
