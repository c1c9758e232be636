"""Sparse multivariate polynomials over a pluggable exact field.

Monomials are exponent tuples (one slot per ring variable).  A polynomial
stores its ring (an ordered tuple of variable names), its coefficient
field, and a term map from exponent tuple to nonzero coefficient.  All
operations are pure; polynomials are treated as immutable values.

The module also provides the expression parser used by the CLI, builders
for elementary symmetric polynomials, exact (Bareiss) determinants of
polynomial matrices, formal derivatives, and substitution.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalar import QQ, PrimeField, RationalField

Monomial = tuple[int, ...]

Field = RationalField | PrimeField


# ---------------------------------------------------------------------------
# monomial helpers


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


class MonomialOrder:
    """A total monomial order compatible with multiplication.

    ``kind`` is "degrevlex" or "lex"; ``precedence`` lists variable indices
    from most significant to least (default: the ring's declared order).
    """

    def __init__(self, kind: str = "degrevlex", precedence: Sequence[int] | None = None):
        if kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order kind {kind!r}")
        self.kind = kind
        self.precedence = tuple(precedence) if precedence is not None else None

    def _permuted(self, m: Monomial) -> Monomial:
        if self.precedence is None:
            return m
        return tuple(m[i] for i in self.precedence)

    def key(self, m: Monomial):
        e = self._permuted(m)
        if self.kind == "lex":
            return e
        return (sum(e), tuple(-e[i] for i in range(len(e) - 1, -1, -1)))

    def max(self, monomials: Iterable[Monomial]) -> Monomial:
        return max(monomials, key=self.key)

    def sorted(self, monomials: Iterable[Monomial], reverse: bool = False) -> list[Monomial]:
        return sorted(monomials, key=self.key, reverse=reverse)

    def __repr__(self) -> str:
        if self.precedence is None:
            return f"MonomialOrder({self.kind!r})"
        return f"MonomialOrder({self.kind!r}, precedence={self.precedence})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.precedence == other.precedence
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.precedence))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class Polynomial:
    """An exact multivariate polynomial over ``field`` in ``ring`` variables."""

    __slots__ = ("ring", "field", "terms")

    def __init__(self, ring: Sequence[str], field: Field, terms: Mapping[Monomial, object]):
        self.ring = tuple(ring)
        self.field = field
        n = len(self.ring)
        clean: dict[Monomial, object] = {}
        for mono, coeff in terms.items():
            if len(mono) != n:
                raise ValueError("monomial length does not match ring")
            if coeff:
                clean[mono] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring: Sequence[str], field: Field = QQ) -> "Polynomial":
        return cls(ring, field, {})

    @classmethod
    def constant(cls, value, ring: Sequence[str], field: Field = QQ) -> "Polynomial":
        c = value if not isinstance(value, (int, Fraction)) else _coerce(field, value)
        return cls(ring, field, {(0,) * len(ring): c})

    @classmethod
    def variable(cls, name: str, ring: Sequence[str], field: Field = QQ) -> "Polynomial":
        ring = tuple(ring)
        if name not in ring:
            raise ValueError(f"unknown variable {name!r}")
        mono = tuple(1 if v == name else 0 for v in ring)
        return cls(ring, field, {mono: field.one})

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring or self.field != other.field:
            raise ValueError("polynomials from different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            if mono in terms:
                s = terms[mono] + coeff
                if s:
                    terms[mono] = s
                else:
                    del terms[mono]
            else:
                terms[mono] = coeff
        return _raw(self.ring, self.field, terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return _raw(self.ring, self.field, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                if m in terms:
                    s = terms[m] + c
                    if s:
                        terms[m] = s
                    else:
                        del terms[m]
                else:
                    terms[m] = c
        return _raw(self.ring, self.field, terms)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(1, self.ring, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, value) -> "Polynomial":
        c0 = _coerce(self.field, value)
        if not c0:
            return Polynomial.zero(self.ring, self.field)
        return _raw(self.ring, self.field, {m: c * c0 for m, c in self.terms.items()})

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_degree(m) == 0 for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.ring), self.field.zero)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(mono_degree(m) for m in self.terms)

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return order.max(self.terms)

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX):
        return self.terms[self.leading_monomial(order)]

    def coefficient(self, mono: Monomial):
        return self.terms.get(mono, self.field.zero)

    def variables(self) -> tuple[str, ...]:
        used = [False] * len(self.ring)
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.ring, used) if u)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.field, frozenset(self.terms.items())))

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"<poly {format_poly(self)}>"


def _raw(ring, field, terms) -> Polynomial:
    p = Polynomial.__new__(Polynomial)
    p.ring = ring
    p.field = field
    p.terms = terms
    return p


def _coerce(field: Field, value):
    if isinstance(value, int):
        return field.from_int(value)
    if isinstance(value, Fraction):
        if field.characteristic == 0:
            return value
        return field.from_int(value.numerator) / field.from_int(value.denominator)
    return value


# ---------------------------------------------------------------------------
# canonical printing

def _format_monomial(mono: Monomial, ring: Sequence[str]) -> str:
    parts = []
    for name, e in zip(ring, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    """Canonical rendering: decreasing monomial order, '^' powers, no implicit products.

    The output re-parses to the same polynomial.  A leading coefficient of
    minus one is printed as ``-1*`` because a bare leading minus would bind
    to the whole first factor under the expression grammar.
    """
    if not p.terms:
        return "0"
    monos = order.sorted(p.terms, reverse=True)
    chunks: list[str] = []
    for i, mono in enumerate(monos):
        coeff = p.terms[mono]
        mstr = _format_monomial(mono, p.ring)
        negative = _is_negative(coeff)
        mag = -coeff if negative else coeff
        mag_str = str(mag)
        if not mstr:
            body = mag_str
        elif mag_str == "1":
            body = mstr
        else:
            body = f"{mag_str}*{mstr}"
        if i == 0:
            if negative:
                # "-x^2" would parse as (-x)^2; force an explicit coefficient
                chunks.append(f"-{mag_str}*{mstr}" if mstr else f"-{mag_str}")
            else:
                chunks.append(body)
        else:
            chunks.append(f" - {body}" if negative else f" + {body}")
    return "".join(chunks)


def _is_negative(coeff) -> bool:
    if isinstance(coeff, (int, Fraction)):
        return coeff < 0
    return False  # prime field residues print as [0, p)


# ---------------------------------------------------------------------------
# expression parsing

class ParseError(ValueError):
    """Syntax or name error in a polynomial expression; carries a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_OPS = set("+-*^()/")


def _tokenize(text: str):
    tokens: list[tuple[str, str, int]] = []  # (kind, value, position)
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_OPS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("nat", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive descent for:

    expr   := term (('+'|'-') term)* ;
    term   := factor ('*' factor)* ;
    factor := base ('^' nat)? ;
    base   := rational | ident | '-' base | '(' expr ')' ;
    rational := nat ('/' nat)? ;
    """

    def __init__(self, text: str, ring: Sequence[str], field: Field):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = tuple(ring)
        self.field = field

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, position = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", position)
        return self.advance()

    def parse(self) -> Polynomial:
        result = self.expr()
        kind, value, position = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", position)
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                result = result + rhs if value == "+" else result - rhs
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        result = self.base()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            k, v, position = self.peek()
            if k != "nat":
                raise ParseError("expected a natural number exponent", position)
            self.advance()
            result = result ** int(v)
        return result

    def base(self) -> Polynomial:
        kind, value, position = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return -self.base()
        if kind == "op" and value == "(":
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "nat":
            self.advance()
            num = int(value)
            k, v, _ = self.peek()
            if k == "op" and v == "/":
                self.advance()
                k2, v2, pos2 = self.peek()
                if k2 == "ident":
                    raise ParseError("division by a non-constant", pos2)
                if k2 != "nat":
                    raise ParseError("expected a natural number denominator", pos2)
                self.advance()
                den = int(v2)
                if den == 0:
                    raise ParseError("zero denominator", pos2)
                return Polynomial.constant(
                    _coerce(self.field, Fraction(num, den)), self.ring, self.field
                )
            return Polynomial.constant(num, self.ring, self.field)
        if kind == "ident":
            if value not in self.ring:
                raise ParseError(f"unknown variable {value!r}", position)
            self.advance()
            return Polynomial.variable(value, self.ring, self.field)
        raise ParseError(f"unexpected {value!r}" if value else "unexpected end of input", position)


def parse_poly(text: str, ring: Sequence[str], field: Field = QQ) -> Polynomial:
    """Parse an expression over the given ring; raises ParseError with a position."""
    return _Parser(text, ring, field).parse()


# ---------------------------------------------------------------------------
# builders and calculus

def elementary_symmetric(
    k: int, variables: Sequence[str], ring: Sequence[str], field: Field = QQ
) -> Polynomial:
    """e_k of the chosen variables inside ``ring``; e_0 = 1."""
    if k < 0 or k > len(variables):
        raise ValueError(f"e_{k} undefined for {len(variables)} variables")
    layers = [Polynomial.constant(1, ring, field)] + [
        Polynomial.zero(ring, field) for _ in range(k)
    ]
    for name in variables:
        v = Polynomial.variable(name, ring, field)
        for j in range(min(k, len(layers) - 1), 0, -1):
            layers[j] = layers[j] + layers[j - 1] * v
    return layers[k]


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    if var not in f.ring:
        raise ValueError(f"unknown variable {var!r}")
    i = f.ring.index(var)
    terms: dict[Monomial, object] = {}
    for mono, coeff in f.terms.items():
        e = mono[i]
        if e == 0:
            continue
        new = mono[:i] + (e - 1,) + mono[i + 1 :]
        c = coeff * _coerce(f.field, e)
        if c:
            terms[new] = terms.get(new, f.field.zero) + c
            if not terms[new]:
                del terms[new]
    return _raw(f.ring, f.field, terms)


def substitute(
    f: Polynomial,
    assignment: Mapping[str, Polynomial],
    ring: Sequence[str] | None = None,
) -> Polynomial:
    """Full composition: replace each variable of f by its image, expanded.

    Every variable occurring in f must have an image; all images must share
    one target ring and f's field.
    """
    needed = f.variables()
    for name in needed:
        if name not in assignment:
            raise ValueError(f"no assignment for variable {name!r}")
    images = [assignment[name] for name in needed]
    if images:
        target_ring = images[0].ring
        for img in images:
            if img.ring != target_ring or img.field != f.field:
                raise ValueError("assignment images must share one ring and field")
    else:
        target_ring = tuple(ring) if ring is not None else f.ring
    idx = {name: f.ring.index(name) for name in needed}
    powers: dict[str, list[Polynomial]] = {
        name: [Polynomial.constant(1, target_ring, f.field)] for name in needed
    }
    result = Polynomial.zero(target_ring, f.field)
    for mono, coeff in f.terms.items():
        piece = Polynomial.constant(coeff, target_ring, f.field)
        for name in needed:
            e = mono[idx[name]]
            if e == 0:
                continue
            cache = powers[name]
            while len(cache) <= e:
                cache.append(cache[-1] * assignment[name])
            piece = piece * cache[e]
        result = result + piece
    return result


def poly_det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square polynomial matrix (fraction-free Bareiss)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix is not square")
    first = matrix[0][0]
    ring, field = first.ring, first.field
    for row in matrix:
        for entry in row:
            if entry.ring != ring or entry.field != field:
                raise ValueError("matrix entries from different rings")
    m = [[entry for entry in row] for row in matrix]
    sign = 1
    prev = Polynomial.constant(1, ring, field)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(ring, field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = _exact_div(num, prev)
            m[i][k] = Polynomial.zero(ring, field)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def _exact_div(num: Polynomial, den: Polynomial) -> Polynomial:
    """Divide num by den, which must divide exactly (Bareiss guarantees it)."""
    if den.is_constant():
        c = den.constant_term()
        if not c:
            raise ZeroDivisionError("division by zero polynomial")
        one = num.field.one
        return _raw(num.ring, num.field, {m: coeff * (one / c) for m, coeff in num.terms.items()})
    order = DEGREVLEX
    lm = den.leading_monomial(order)
    lc = den.terms[lm]
    rem = dict(num.terms)
    out: dict[Monomial, object] = {}
    while rem:
        m = order.max(rem)
        c = rem[m]
        if not mono_divides(lm, m):
            raise ArithmeticError("inexact polynomial division")
        q_mono = mono_div(m, lm)
        q_coeff = c / lc
        out[q_mono] = q_coeff
        for dm, dc in den.terms.items():
            t = mono_mul(q_mono, dm)
            new = rem.get(t, num.field.zero) - q_coeff * dc
            if new:
                rem[t] = new
            elif t in rem:
                del rem[t]
    return _raw(num.ring, num.field, out)
