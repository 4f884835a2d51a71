"""Multivariate polynomials over Z_(l) or F_l with named variables and a monomial order."""

from __future__ import annotations

import re
from collections import namedtuple

from . import kernels as K
from .scalar import DefringError, DvrScalar, FpRing, ZlRing, mpq

ORDERS = ("lex", "grevlex", "block:<k>")

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*'*$")


class ParseError(DefringError, ValueError):
    def __init__(self, message, text="", pos=None):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


def _grevlex_key(m):
    return (sum(m), tuple([-e for e in reversed(m)]))


def _block_key(k):
    """Grevlex on the first ``k`` variables, ties broken by grevlex on the rest (an elimination order)."""

    def key(m):
        return (_grevlex_key(m[:k]), _grevlex_key(m[k:]))

    return key


def _order_key(order, nvars):
    if order == "lex":
        return None
    if order == "grevlex":
        return _grevlex_key
    if order.startswith("block:"):
        try:
            k = int(order[6:])
        except ValueError:
            k = -1
        if 0 < k <= nvars:
            return _block_key(k)
    raise ValueError(f"unknown order {order!r}; expected lex, grevlex or block:<k>")


class VarContext:
    """Ordered variable names, a monomial order and a coefficient ring.

    The first listed variable is the greatest. ``ring`` is either a prime
    (meaning Z_(l)) or a ring object from :mod:`defring.scalar`.
    """

    def __init__(self, variables, ring, order="lex"):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for v in variables:
            if not _NAME_RE.match(v):
                raise ValueError(f"bad variable name {v!r}")
        key = _order_key(order, len(variables))
        if isinstance(ring, int):
            ring = ZlRing(ring)
        self.variables = variables
        self.order = order
        self.ring = ring
        self.nvars = len(variables)
        self.index = {v: i for i, v in enumerate(variables)}
        self.key = key

    @property
    def l(self):
        return self.ring.l

    def __eq__(self, other):
        return (
            isinstance(other, VarContext)
            and self.variables == other.variables
            and self.order == other.order
            and self.ring == other.ring
        )

    def __hash__(self):
        return hash((self.variables, self.order, self.ring))

    def __repr__(self):
        return f"VarContext({','.join(self.variables)}; {self.order}; {self.ring!r})"

    def with_order(self, order):
        return VarContext(self.variables, self.ring, order)

    def with_variables(self, variables, order=None):
        return VarContext(variables, self.ring, order or self.order)

    def residue(self):
        """Same variables and order over the residue field."""
        return VarContext(self.variables, FpRing(self.ring.l), self.order)

    def gens(self):
        return [self.var(v) for v in self.variables]

    def var(self, name):
        m = [0] * self.nvars
        m[self.index[name]] = 1
        return Poly({tuple(m): self.ring.convert(1)}, self)

    def const(self, c):
        c = self.ring.convert(c)
        if not c:
            return Poly({}, self)
        return Poly({(0,) * self.nvars: c}, self)

    def zero(self):
        return Poly({}, self)

    def one(self):
        return self.const(1)

    def parse(self, text):
        return parse(text, self)

    def monomial_key(self, m):
        return m if self.key is None else self.key(m)


LeadingData = namedtuple("LeadingData", "hm ht hc")


class Poly:
    """Immutable polynomial: a dict ``{exponent tuple: raw coefficient}`` plus its context."""

    __slots__ = ("_t", "ctx", "_lead")

    def __init__(self, terms, ctx):
        self._t = terms
        self.ctx = ctx
        self._lead = None

    # -- construction helpers -------------------------------------------------
    def _new(self, terms):
        return Poly(terms, self.ctx)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, DvrScalar):
            other = other.value
        try:
            return self.ctx.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self._t)
        K.sub_mul(t, o._t, self.ctx.ring.convert(-1), (0,) * self.ctx.nvars, self.ctx.ring.modulus)
        return self._new(t)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self._t)
        K.sub_mul(t, o._t, self.ctx.ring.convert(1), (0,) * self.ctx.nvars, self.ctx.ring.modulus)
        return self._new(t)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else o - self

    def __neg__(self):
        mod = self.ctx.ring.modulus
        if mod:
            return self._new({m: (-c) % mod for m, c in self._t.items()})
        return self._new({m: -c for m, c in self._t.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        mod = self.ctx.ring.modulus
        # accumulate with sub_mul against the negated multiplier
        t = {}
        small, big = (self, o) if len(self._t) <= len(o._t) else (o, self)
        for m, c in small._t.items():
            K.sub_mul(t, big._t, (-c) % mod if mod else -c, m, mod)
        return self._new(t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        """Multiply by a raw coefficient."""
        mod = self.ctx.ring.modulus
        if not c:
            return self._new({})
        if mod:
            return self._new({m: v * c % mod for m, v in self._t.items()})
        return self._new({m: v * c for m, v in self._t.items()})

    def mul_term(self, c, m):
        """Multiply by the term ``c * x**m``."""
        t = {}
        mod = self.ctx.ring.modulus
        K.sub_mul(t, self._t, (-c) % mod if mod else -c, m, mod)
        return self._new(t)

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self._t == other._t
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._t == o._t

    def __hash__(self):
        return hash((frozenset(self._t.items()), self.ctx))

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    # -- structure ------------------------------------------------------------
    @property
    def terms(self):
        """Mapping of exponent tuples to :class:`DvrScalar` (or ints mod l over F_l)."""
        if self.ctx.ring.is_field:
            return dict(self._t)
        l = self.ctx.l
        return {m: DvrScalar(c, l) for m, c in self._t.items()}

    def raw_terms(self):
        return self._t

    def sorted_monomials(self):
        return sorted(self._t, key=self.ctx.key, reverse=True)

    def lead_monomial(self):
        """Exponent tuple of the highest term."""
        if self._lead is None:
            if not self._t:
                raise ValueError("zero polynomial has no highest term")
            self._lead = max(self._t, key=self.ctx.key)
        return self._lead

    def lead_coeff_raw(self):
        return self._t[self.lead_monomial()]

    def leading_data(self):
        """(HM, HT, HC): highest monomial ``c*x^a``, highest term ``x^a``, highest coefficient ``c``."""
        m = self.lead_monomial()
        c = self._t[m]
        hc = c if self.ctx.ring.is_field else DvrScalar(c, self.ctx.l)
        return LeadingData(self._new({m: c}), self._new({m: self.ctx.ring.convert(1)}), hc)

    def total_degree(self):
        return max((sum(m) for m in self._t), default=-1)

    def is_homogeneous(self):
        return len({sum(m) for m in self._t}) <= 1

    def variables_used(self):
        used = set()
        for m in self._t:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ctx.variables[i])
        return used

    def coefficients_integral(self):
        return True

    # -- conversions ----------------------------------------------------------
    def to_context(self, ctx):
        """Re-express in ``ctx``, matching variables by name."""
        if ctx == self.ctx:
            return self
        if ctx.ring != self.ctx.ring:
            raise ValueError("to_context cannot change the coefficient ring")
        pos = []
        for i, v in enumerate(self.ctx.variables):
            pos.append(ctx.index.get(v, -1))
        t = {}
        for m, c in self._t.items():
            e = [0] * ctx.nvars
            for i, x in enumerate(m):
                if x:
                    j = pos[i]
                    if j < 0:
                        raise ValueError(f"variable {self.ctx.variables[i]} not in {ctx}")
                    e[j] = x
            t[tuple(e)] = c
        return Poly(t, ctx)

    def reduce_mod_l(self, ctx=None):
        """Coefficient-wise residue in F_l (context defaults to ``self.ctx.residue()``)."""
        ctx = ctx or self.ctx.residue()
        p = ctx.ring.l
        t = {}
        for m, c in self._t.items():
            r = int(c.numerator) * pow(int(c.denominator), -1, p) % p
            if r:
                t[m] = r
        return Poly(t, ctx)

    def subs(self, mapping):
        """Substitute Polys (same context as the result) for variables by name."""
        if not mapping:
            return self
        target = next(iter(mapping.values())).ctx
        images = []
        for v in self.ctx.variables:
            if v in mapping:
                images.append(mapping[v])
            else:
                images.append(target.var(v) if v in target.index else None)
        powers = [dict() for _ in images]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                if images[i] is None:
                    raise ValueError(f"no image for variable {self.ctx.variables[i]}")
                cache[e] = images[i] ** e
            return cache[e]

        out = target.zero()
        for m, c in self._t.items():
            term = target.const(c if not target.ring.is_field else self.ctx.ring.text(c))
            for i, e in enumerate(m):
                if e:
                    term = term * pw(i, e)
            out = out + term
        return out

    def evaluate(self, values):
        """Evaluate at a point given as {name: number}; returns a rational (mpq) or int mod l."""
        ring = self.ctx.ring
        pt = [ring.convert(values[v]) if v in values else None for v in self.ctx.variables]
        total = ring.convert(0)
        for m, c in self._t.items():
            acc = c
            for i, e in enumerate(m):
                if e:
                    if pt[i] is None:
                        raise ValueError(f"missing value for {self.ctx.variables[i]}")
                    acc = acc * pt[i] ** e
            total = total + acc
        if ring.modulus:
            total %= ring.modulus
        return total

    # -- printing -------------------------------------------------------------
    def __str__(self):
        if not self._t:
            return "0"
        ring = self.ctx.ring
        names = self.ctx.variables
        parts = []
        for m in self.sorted_monomials():
            c = self._t[m]
            neg = (not ring.modulus) and c < 0
            a = -c if neg else c
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e:
                    factors.append(f"{names[i]}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = ring.text(a)
            elif a == 1:
                body = mono
            else:
                body = f"{ring.text(a)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Poly('{self}')"


# ---------------------------------------------------------------------------
# parsing


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", text, pos)
        start = m.start(m.lastgroup)
        toks.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*``.

    ``term := factor ('*' factor)*``, ``factor := atom ('^' int)?``,
    ``atom := int ('/' int)? | name | '(' expr ')' | '-' factor``.
    """

    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", self.text, 0)
        p = self.expr()
        self.take("end")
        return p

    def expr(self):
        tok = self.peek()
        if tok[1] in "+-" and tok[0] == "op":
            self.i += 1
            p = self.term()
            if tok[1] == "-":
                p = -p
        else:
            p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op, pos = self.take()[1:]
            q = self.factor()
            if op == "*":
                p = p * q
                continue
            # division only by a constant that is a unit of the coefficient ring
            raw = q.raw_terms()
            if len(raw) != 1 or sum(next(iter(raw))) != 0:
                raise ParseError("division only by a constant", self.text, pos)
            c = next(iter(raw.values()))
            if self.ctx.ring.valuation(c) != 0:
                raise ParseError(f"divisor is not a unit at {self.ctx.l}", self.text, pos)
            p = p.scale(self.ctx.ring.quo(self.ctx.ring.convert(1), c))
        return p

    def factor(self):
        p = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take("num")
            p = p ** int(tok[1])
        return p

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.take("num")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", self.text, den[2])
                val = f"{val}/{den[1]}"
            try:
                return self.ctx.const(val)
            except ValueError as exc:
                raise ParseError(str(exc), self.text, pos) from None
        if kind == "name":
            self.take()
            if val not in self.ctx.index:
                raise ParseError(f"unknown variable {val!r}", self.text, pos)
            return self.ctx.var(val)
        if kind == "op" and val == "(":
            self.take()
            p = self.expr()
            self.take("op", ")")
            return p
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        raise ParseError(f"unexpected token {val or 'end of input'!r}", self.text, pos)


def parse(text, ctx):
    """Parse ``text`` into a :class:`Poly` of ``ctx``; raises :class:`ParseError` with a position."""
    return _Parser(text, ctx).parse()


def parse_list(text, ctx):
    """Parse comma-, semicolon- or newline-separated generators; ``#`` starts a comment."""
    items = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for chunk in re.split(r"[,;]", line):
            if chunk.strip():
                items.append(parse(chunk, ctx))
    return items


def leading_data(p):
    return p.leading_data()


def term_divide(t, s):
    """``t / s`` for single terms when ``HT(s) | HT(t)`` and ``v(HC(s)) <= v(HC(t))``, else None."""
    if len(t._t) != 1 or len(s._t) != 1:
        raise ValueError("term_divide expects single-term polynomials")
    (mt, ct), = t._t.items()
    (ms, cs), = s._t.items()
    ring = t.ctx.ring
    if not K.mono_divides(ms, mt):
        return None
    if ring.valuation(cs) > ring.valuation(ct):
        return None
    return Poly({K.mono_div(mt, ms): ring.quo(ct, cs)}, t.ctx)


__all__ = [
    "VarContext",
    "Poly",
    "ParseError",
    "LeadingData",
    "parse",
    "parse_list",
    "leading_data",
    "term_divide",
    "mpq",
]
