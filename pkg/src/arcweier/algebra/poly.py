"""Sparse multivariate polynomials with exact coefficients.

A :class:`PolyRing` fixes the ordered variable names, the coefficient field
and, optionally, a set of *nilpotent* variables together with a total-degree
bound ``bound``: every monomial whose degree in the nilpotent variables is at
least ``bound`` is zero.  This is how the infinitesimal test rings
``F[a_1..a_k]/(a_1..a_k)^M`` are realised; extra non-nilpotent variables may
sit alongside them (symbolic coordinates of a presentation, say).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from ..errors import ContextError, NotAUnitError, ParseError
from .field import QQ, Field

Exponent = tuple


@dataclass(frozen=True)
class PolyRing:
    variables: tuple[str, ...]
    field: Field = QQ
    nilpotent: tuple[str, ...] = ()
    bound: int | None = None
    _index: dict = dc_field(init=False, repr=False, compare=False, hash=False)
    _nil_idx: tuple = dc_field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "nilpotent", tuple(self.nilpotent))
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        index = {v: i for i, v in enumerate(variables)}
        for v in self.nilpotent:
            if v not in index:
                raise ValueError(f"nilpotent variable {v!r} is not a ring variable")
        if self.nilpotent and (self.bound is None or self.bound < 1):
            raise ValueError("nilpotent variables need a bound M >= 1")
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_nil_idx", tuple(index[v] for v in self.nilpotent))

    # -- construction ------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = self.field(c)
        if c == 0 or (self.bound is not None and self.bound <= 0):
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: c})

    def gen(self, name: str) -> "Poly":
        exp = [0] * self.nvars
        exp[self.index(name)] = 1
        return Poly(self, {tuple(exp): 1}).normalized()

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(v) for v in self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ContextError(f"{name!r} is not a variable of {self}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __call__(self, x) -> "Poly":
        """Coerce a scalar or a polynomial (matched by variable names) into this ring."""
        if isinstance(x, Poly):
            if x.ring is self or x.ring == self:
                return x
            return x.to_ring(self)
        if isinstance(x, (int, Rational)):
            return self.constant(x)
        if isinstance(x, str):
            return parse_poly(x, self)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def extend(self, names: Iterable[str]) -> "PolyRing":
        """Same ring with extra (non-nilpotent) variables appended."""
        extra = tuple(v for v in names if v not in self._index)
        return PolyRing(self.variables + extra, self.field, self.nilpotent, self.bound)

    def nil_degree(self, exp: Exponent) -> int:
        return sum(exp[i] for i in self._nil_idx)

    def killed(self, exp: Exponent) -> bool:
        return self.bound is not None and bool(self._nil_idx) and self.nil_degree(exp) >= self.bound

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def __str__(self) -> str:
        s = f"{self.field}[{', '.join(self.variables)}]"
        if self.nilpotent:
            s += f"/({', '.join(self.nilpotent)})^{self.bound}"
        return s


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def normalized(self) -> "Poly":
        ring = self.ring
        F = ring.field
        out = {}
        for e, c in self.terms.items():
            c = F.norm(c)
            if c != 0 and not ring.killed(e):
                out[e] = c
        return Poly(ring, out)

    # -- coercion ----------------------------------------------------------
    def _other(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ContextError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.constant(other)
        return None

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Re-embed into ``ring`` by variable name; unknown variables with nonzero exponent raise."""
        if ring is self.ring:
            return self
        if ring.field != self.ring.field and self.ring.field.p != 0:
            raise ContextError(f"cannot map {self.ring.field} coefficients into {ring.field}")
        positions = []
        for i, v in enumerate(self.ring.variables):
            positions.append(ring._index.get(v))
        out = {}
        F = ring.field
        for e, c in self.terms.items():
            new = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    j = positions[i]
                    if j is None:
                        raise ContextError(f"variable {self.ring.variables[i]!r} missing from {ring}")
                    new[j] = k
            new = tuple(new)
            if ring.killed(new):
                continue
            c = F(c)
            if c:
                out[new] = F.norm(out.get(new, 0) + c)
        return Poly(ring, {e: c for e, c in out.items() if c != 0})

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.norm(out.get(e, 0) + c)
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F.norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Poly":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return Poly(self.ring, {})
        if c == 1:
            return self
        return Poly(self.ring, {e: F.norm(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        other = self._other(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly(self.ring, {})
        ring = self.ring
        F = ring.field
        nil = ring._nil_idx
        bound = ring.bound if nil else None
        out: dict = {}
        if bound is None:
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
        else:
            right = [(e2, c2, sum(e2[i] for i in nil)) for e2, c2 in other.terms.items()]
            for e1, c1 in self.terms.items():
                d1 = sum(e1[i] for i in nil)
                for e2, c2, d2 in right:
                    if d1 + d2 >= bound:
                        continue
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
        res = {}
        for e, c in out.items():
            c = F.norm(c)
            if c != 0:
                res[e] = c
        return Poly(ring, res)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(self.ring.field.inv(self.ring.field(other)))
        other = self._other(other)
        if other is not None and other.is_constant():
            return self.scale(self.ring.field.inv(other.constant_coeff()))
        return NotImplemented

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return (self.ring is other.ring or self.ring == other.ring) and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            try:
                return self == self.ring.constant(other)
            except ContextError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def coefficient(self, monomial: Mapping[str, int]):
        exp = [0] * self.ring.nvars
        for v, k in monomial.items():
            exp[self.ring.index(v)] = k
        return self.terms.get(tuple(exp), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables_used(self) -> tuple[str, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(self.ring.variables[i] for i in sorted(used))

    def residue(self) -> "Poly":
        """Drop every term involving a nilpotent variable (reduction modulo the parameter ideal)."""
        nil = self.ring._nil_idx
        if not nil:
            return self
        return Poly(self.ring, {e: c for e, c in self.terms.items() if not any(e[i] for i in nil)})

    def in_nil_ideal(self) -> bool:
        return not self.residue().terms

    def inverse(self) -> "Poly":
        """Inverse in the ring; exists iff the residue is a nonzero constant."""
        res = self.residue()
        if not res.terms or not res.is_constant():
            raise NotAUnitError(f"{self} is not a unit")
        F = self.ring.field
        c_inv = F.inv(res.constant_coeff())
        n = (self - res).scale(c_inv)  # self = c * (1 + n), n nilpotent
        out = self.ring.one
        power = self.ring.one
        sign = 1
        while True:
            power = power * n
            if not power.terms:
                break
            sign = -sign
            out = out + power.scale(sign)
        return out.scale(c_inv)

    def diff(self, name: str) -> "Poly":
        i = self.ring.index(name)
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                c2 = F.norm(c * k)
                if c2:
                    new = e[:i] + (k - 1,) + e[i + 1:]
                    out[new] = c2
        return Poly(self.ring, out)

    def evaluate(self, values, one=None):
        """Substitute values for variables and sum up.

        ``values`` maps variable names (or is a sequence aligned with the ring
        variables) to objects supporting ``+``, ``*`` and multiplication by field
        scalars: field elements, Polys of another ring, Tps, ...  ``one`` is the
        multiplicative unit of the target; it defaults to ``1``.
        """
        names = self.ring.variables
        if isinstance(values, Mapping):
            vals = [values.get(v) for v in names]
        else:
            vals = list(values)
            if len(vals) != len(names):
                raise ContextError("value vector length does not match ring")
        if one is None:
            one = 1
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                if vals[i] is None:
                    raise ContextError(f"no value supplied for {names[i]!r}")
                if k == 1:
                    cache[key] = vals[i]
                else:
                    half = power(i, k // 2)
                    sq = half * half
                    cache[key] = sq * vals[i] if k % 2 else sq
            return cache[key]

        total = one * 0
        for e, c in sorted(self.terms.items()):
            term = None
            for i, k in enumerate(e):
                if k:
                    pk = power(i, k)
                    term = pk if term is None else term * pk
            if term is None:
                term = one * c
            elif c != 1:
                term = term * c
            total = total + term
        return total

    def subs(self, mapping: Mapping[str, "Poly"], ring: PolyRing | None = None) -> "Poly":
        """Substitute polynomials for some variables; the rest map to same-named variables of ``ring``."""
        target = ring or self.ring
        values = {}
        for v in self.ring.variables:
            if v in mapping:
                values[v] = target(mapping[v])
            elif v in target:
                values[v] = target.gen(v)
            else:
                values[v] = None
        return self.evaluate(values, target.one)

    # -- printing ----------------------------------------------------------
    def sorted_terms(self):
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            neg = False
            if self.ring.field.p == 0 and c < 0:
                neg, c = True, -c
            if mono:
                text = mono if c == 1 else f"{_fmt_coeff(c)}*{mono}"
            else:
                text = _fmt_coeff(c)
            parts.append(("-" if neg else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str, line: int | None):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1
            while col <= len(text) and text[col - 1].isspace():
                col += 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        start = m.start(m.lastindex) + 1
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("id", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing, line: int | None):
        self.ring = ring
        self.line = line
        self.tokens = _tokenize(text, line)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            q = self.unary()
            if tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.error("division only by a nonzero constant", tok)
                p = p / q
        return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if tok[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a nonnegative integer", tok)
            base = base ** tok[1]
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return self.ring.constant(val)
        if kind == "id":
            if val not in self.ring:
                self.error(f"unknown variable {val!r}", tok)
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return p
        self.error(f"unexpected token {val!r}" if val else "unexpected end of input", tok)


def parse_poly(text: str, ring: PolyRing, line: int | None = None) -> Poly:
    """Parse ``text`` (``+ - * / ^``, integer literals, parentheses) into ``ring``."""
    return _Parser(text, ring, line).parse()


def poly_matrix_str(rows: Sequence[Sequence[Poly]]) -> str:
    return "[" + ", ".join("[" + ", ".join(str(p) for p in row) + "]" for row in rows) + "]"
