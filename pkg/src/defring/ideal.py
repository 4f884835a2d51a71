"""Ideal-level operations: membership, elimination, intersection, saturation, flatness over Z_(l)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .groebner import GroebnerBasis, buchberger
from .poly import Poly, VarContext
from .scalar import DefringError


class EliminationOrderError(DefringError, ValueError):
    pass


class Ideal:
    """A finitely generated ideal; equality is semantic (mutual membership)."""

    def __init__(self, generators, ctx: Optional[VarContext] = None):
        gens = list(generators)
        if ctx is None:
            if not gens:
                raise ValueError("an empty ideal needs an explicit context")
            ctx = gens[0].ctx
        for g in gens:
            if g.ctx != ctx:
                raise ValueError(f"generator {g} is not in {ctx}")
        self.generators = tuple(g for g in gens if g)
        self.ctx = ctx
        self._gb = None

    @classmethod
    def parse(cls, texts, ctx):
        return cls([ctx.parse(t) for t in texts], ctx)

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.generators, self.ctx)
        return self._gb

    def _set_gb(self, gb):
        if gb.ctx == self.ctx:
            self._gb = gb
        return self

    def __contains__(self, f):
        return member(f, self)

    def __eq__(self, other):
        return isinstance(other, Ideal) and equal(self, other)

    def __hash__(self):
        return hash(self.gb.generators)

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))})"

    def to_context(self, ctx):
        return Ideal([g.to_context(ctx) for g in self.generators], ctx)

    def with_order(self, order):
        return self.to_context(self.ctx.with_order(order))

    def is_unit(self):
        return self.gb.is_unit_ideal()

    def is_zero(self):
        return not self.generators

    def __add__(self, other):
        return Ideal(self.generators + tuple(other.generators), self.ctx)


def member(f, I):
    """True iff ``f`` lies in ``I``."""
    if f.ctx != I.ctx:
        f = f.to_context(I.ctx)
    return I.gb.contains(f)


def non_members(J, I):
    """Generators of ``J`` that are not in ``I``."""
    return [g for g in J.generators if not member(g.to_context(I.ctx), I)]


def equal(I, J):
    """Mutual membership of generators (J is re-expressed in I's context)."""
    if J.ctx.variables != I.ctx.variables or J.ctx.ring != I.ctx.ring:
        raise ValueError("ideals live in different rings")
    return not non_members(J, I) and not non_members(I, J)


def contains_ideal(I, J):
    """True iff ``J ⊆ I``."""
    return not non_members(J, I)


def eliminate(I, drop):
    """Generators of ``I ∩ R'``, ``R'`` the subring without the ``drop`` variables.

    ``I.ctx`` must list the dropped variables first and order monomials by an
    elimination order for them: lex, or ``block:k`` with ``k`` the number dropped.
    """
    drop = list(drop)
    ctx = I.ctx
    k = len(drop)
    if ctx.order not in ("lex", f"block:{k}") or set(ctx.variables[:k]) != set(drop) or len(set(drop)) != k:
        raise EliminationOrderError("elimination requires lex with dropped variables first")
    keep = ctx.variables[k:]
    sub = VarContext(keep, ctx.ring, "lex" if ctx.order == "lex" else "grevlex")
    gens = []
    for g in I.gb.generators:
        m = g.lead_monomial()
        # under an elimination order, a head free of the dropped variables means the whole polynomial is
        if not any(m[:k]):
            gens.append(g.to_context(sub))
    out = Ideal(gens, sub)
    out._gb = GroebnerBasis(tuple(gens), sub)
    return out


def _aux_names(ctx, n):
    names = []
    i = 0
    while len(names) < n:
        cand = f"_t{i}"
        if cand not in ctx.index:
            names.append(cand)
        i += 1
    return names


def _extended(ctx, n):
    # lex contexts stay lex; otherwise a block order, far cheaper than lex in many variables
    aux = _aux_names(ctx, n)
    order = "lex" if ctx.order == "lex" else f"block:{n}"
    return aux, VarContext(tuple(aux) + ctx.variables, ctx.ring, order)


def _back(J, ctx):
    """Move an eliminated ideal back to ``ctx``, keeping its basis when the orders agree."""
    out = Ideal([g.to_context(ctx) for g in J.generators], ctx)
    if J.ctx.order == ctx.order:
        out._gb = GroebnerBasis(tuple(out.generators), ctx)
    return out


def intersect(I, J):
    """``I ∩ J`` via ``t*I + (1-t)*J`` and elimination of ``t``."""
    if I.ctx != J.ctx:
        J = J.to_context(I.ctx)
    ctx = I.ctx
    if I.is_zero() or J.is_zero():
        return Ideal([], ctx)
    (t,), ext = _extended(ctx, 1)
    tv = ext.var(t)
    gens = [tv * g.to_context(ext) for g in I.generators]
    gens += [(1 - tv) * g.to_context(ext) for g in J.generators]
    return _back(eliminate(Ideal(gens, ext), [t]), ctx)


def saturate_by(I, f):
    """``I : f^∞`` by adjoining ``1 - t*f`` and eliminating ``t``.

    ``f`` may be a Poly, a DvrScalar or an int (``l`` itself for λ-saturation).
    """
    ctx = I.ctx
    if not isinstance(f, Poly):
        f = ctx.const(f.value if hasattr(f, "value") else f)
    elif f.ctx != ctx:
        f = f.to_context(ctx)
    if not f:
        raise ValueError("cannot saturate by zero")
    if I.is_zero():
        return Ideal([], ctx)
    if len(f.raw_terms()) == 1 and sum(f.lead_monomial()) == 0 and ctx.ring.valuation(f.lead_coeff_raw()) == 0:
        return I
    (t,), ext = _extended(ctx, 1)
    tv = ext.var(t)
    gens = [g.to_context(ext) for g in I.generators]
    gens.append(1 - tv * f.to_context(ext))
    return _back(eliminate(Ideal(gens, ext), [t]), ctx)


def saturate_by_l(I):
    return saturate_by(I, I.ctx.l)


class Verdict(str, enum.Enum):
    FLAT_BY_UNITS = "FlatByUnits"
    FLAT_BY_SATURATION = "FlatBySaturation"
    NOT_FLAT = "NotFlat"


@dataclass(frozen=True)
class FlatnessCertificate:
    verdict: Verdict
    witness: Optional[Poly] = None

    @property
    def flat(self):
        return self.verdict != Verdict.NOT_FLAT


def is_flat(I):
    """Flatness of ``R/I`` over Z_(l): unit head coefficients, else λ-saturation stability.

    A NotFlat witness ``g`` satisfies ``l*g ∈ I`` and ``g ∉ I``.
    """
    if I.gb.all_hc_units:
        return FlatnessCertificate(Verdict.FLAT_BY_UNITS)
    S = saturate_by_l(I)
    missing = non_members(S, I)
    if not missing:
        return FlatnessCertificate(Verdict.FLAT_BY_SATURATION)
    g = missing[0]
    l = I.ctx.l
    while member(g * l, I) is False:
        g = g * l
    return FlatnessCertificate(Verdict.NOT_FLAT, g)
