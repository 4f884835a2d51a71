"""D-Groebner bases over Z_(l) (and ordinary Groebner bases over F_l).

Reduction is *strong*: a term ``c*x^a`` is reducible by ``g`` only when
``HT(g) | x^a`` and ``v(HC(g)) <= v(c)``. Because divisibility in a DVR is
totally ordered by valuation, the G-polynomial of any pair is a monomial
multiple of one of the pair and never contributes; only S-polynomials are
processed.

Reduced bases are canonical: every head coefficient is a power of ``l`` and
each tail coefficient that sits under a head term but is not divisible by
its coefficient is replaced by its least nonnegative residue.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from . import kernels as K
from .poly import Poly


class _Elt:
    __slots__ = ("t", "lm", "lc", "val", "sugar")

    def __init__(self, t, ctx, sugar=None):
        self.t = t
        self.lm = max(t, key=ctx.key)
        self.lc = t[self.lm]
        self.val = ctx.ring.valuation(self.lc)
        self.sugar = max(sum(m) for m in t) if sugar is None else sugar


def _normalized(t, ctx):
    """Scale ``t`` by a unit so its head coefficient is a power of ``l``."""
    ring = ctx.ring
    lm = max(t, key=ctx.key)
    u = ring.normalizer(t[lm])
    if u == 1:
        return dict(t)
    if ring.modulus:
        return {m: c * u % ring.modulus for m, c in t.items()}
    return {m: c * u for m, c in t.items()}


def _reduce(t, basis, ctx, canonical=True, full=True, cofactors=None):
    """Strong normal form of the term dict ``t`` modulo ``basis`` (a list of ``_Elt``).

    Reducers are tried in listed order on the highest remaining term. With
    ``cofactors`` (a list of dicts, one per basis element) the quotients are
    accumulated so that ``t = sum(cofactors[i] * basis[i]) + result``.
    """
    ring = ctx.ring
    mod = ring.modulus
    key = ctx.key
    leads = [g.lm for g in basis]
    vals = [g.val for g in basis]
    p = dict(t)
    r = {}
    while p:
        m = max(p) if key is None else max(p, key=key)
        c = p[m]
        i = K.find_reducer(m, ring.valuation(c), leads, vals)
        if i >= 0:
            g = basis[i]
            q = ring.quo(c, g.lc)
            shift = K.mono_div(m, g.lm)
            K.sub_mul(p, g.t, q, shift, mod)
            if cofactors is not None:
                cf = cofactors[i]
                v = cf.get(shift, 0) + q
                if mod:
                    v %= mod
                if v:
                    cf[shift] = v
                else:
                    cf.pop(shift, None)
            continue
        if canonical and not ring.is_field:
            best = -1
            for j in range(len(basis)):
                if K.mono_divides(leads[j], m) and (best < 0 or vals[j] < vals[best]):
                    best = j
            if best >= 0:
                g = basis[best]
                rc = ring.remainder(c, g.val)
                if rc != c:
                    q = ring.quo(c - rc, g.lc)
                    shift = K.mono_div(m, g.lm)
                    K.sub_mul(p, g.t, q, shift, mod)
                    if cofactors is not None:
                        cf = cofactors[best]
                        v = cf.get(shift, 0) + q
                        if v:
                            cf[shift] = v
                        else:
                            cf.pop(shift, None)
                    c = rc
        r[m] = c
        del p[m]
        if not full:
            r.update(p)
            break
    return r


def _elements(polys, ctx):
    out = []
    for f in polys:
        if f.ctx != ctx:
            raise ValueError(f"context mismatch: {f.ctx} vs {ctx}")
        if f.raw_terms():
            out.append(_Elt(_normalized(f.raw_terms(), ctx), ctx))
    return out


def _context_of(polys, ctx=None):
    if ctx is not None:
        return ctx
    polys = list(polys)
    if not polys:
        raise ValueError("cannot infer a context from an empty generator list")
    return polys[0].ctx


def normal_form(f, G, canonical=True):
    """Remainder of ``f`` on strong division by ``G``; zero iff ``f`` reduces to 0."""
    G = [g for g in G if g]
    if not G:
        return f
    ctx = f.ctx
    basis = _elements(G, ctx)
    return Poly(_reduce(f.raw_terms(), basis, ctx, canonical), ctx)


def normal_form_with_cofactors(f, G, canonical=True):
    """``(r, [h_1, ...])`` with ``f == sum(h_i * G[i]) + r`` exactly, ``r = normal_form(f, G)``."""
    ctx = f.ctx
    nz = [i for i, g in enumerate(G) if g]
    basis = []
    units = []
    for i in nz:
        raw = G[i].raw_terms()
        u = ctx.ring.normalizer(raw[G[i].lead_monomial()])
        units.append(u)
        basis.append(_Elt(_normalized(raw, ctx), ctx))
    cof = [dict() for _ in basis]
    r = _reduce(f.raw_terms(), basis, ctx, canonical, cofactors=cof)
    hs = [ctx.zero() for _ in G]
    for k, i in enumerate(nz):
        hs[i] = Poly(cof[k], ctx).scale(units[k])
    return Poly(r, ctx), hs


def _s_terms(a, b, ctx):
    ring = ctx.ring
    L = K.mono_lcm(a.lm, b.lm)
    if ring.is_field:
        ca, cb = ring.quo(1, a.lc), ring.quo(1, b.lc)
    else:
        top = ring.convert(ctx.l ** max(a.val, b.val))
        ca, cb = ring.quo(top, a.lc), ring.quo(top, b.lc)
    t = {}
    mod = ring.modulus
    K.sub_mul(t, a.t, (-ca) % mod if mod else -ca, K.mono_div(L, a.lm), mod)
    K.sub_mul(t, b.t, cb, K.mono_div(L, b.lm), mod)
    return t, L


def s_polynomial(f, g):
    """S-polynomial of ``f`` and ``g`` with coefficient lcm ``l**max(v(HC f), v(HC g))``."""
    if not f or not g:
        raise ValueError("s_polynomial of a zero polynomial")
    ctx = f.ctx
    # scaling f to head l**v leaves (l**max / HC(f)) * f unchanged
    a = _Elt(_normalized(f.raw_terms(), ctx), ctx)
    b = _Elt(_normalized(g.raw_terms(), ctx), ctx)
    t, _ = _s_terms(a, b, ctx)
    return Poly(t, ctx)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced D-Groebner basis in canonical form (heads ``l**v``, sorted by head, descending)."""

    generators: tuple
    ctx: object

    @property
    def all_hc_units(self):
        ring = self.ctx.ring
        return all(ring.valuation(g.lead_coeff_raw()) == 0 for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_unit_ideal(self):
        return len(self.generators) == 1 and self.generators[0] == self.ctx.one()

    def reduce(self, f, canonical=True):
        return normal_form(f, self.generators, canonical)

    def contains(self, f):
        if not self.generators:
            return not f
        return not normal_form(f, self.generators)

    def leading_monomials(self):
        return [g.lead_monomial() for g in self.generators]

    def to_strings(self):
        return [str(g) for g in self.generators]


def _pair_key(a, b, ctx, strategy):
    L = K.mono_lcm(a.lm, b.lm)
    dl = sum(L)
    if strategy == "sugar":
        s = max(a.sugar + dl - sum(a.lm), b.sugar + dl - sum(b.lm))
        return (s, _neg_key(L, ctx))
    return (_neg_key(L, ctx),)


def _neg_key(m, ctx):
    # heapq is a min-heap and "smallest lcm first" wants the order itself
    return m if ctx.key is None else ctx.key(m)


def buchberger(gens, ctx=None, chain=True, strategy="sugar"):
    """Canonical reduced D-Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    ctx = _context_of(gens, ctx)
    elts = _elements(gens, ctx)
    ring = ctx.ring
    basis = []
    heap = []
    counter = 0
    active = []

    def add(h):
        nonlocal counter
        k = len(basis)
        basis.append(h)
        active.append(True)
        # chain criterion: drop queued pairs (i, j) whose lcm is a strict multiple via h
        if chain:
            kept = []
            for entry in heap:
                _, _, i, j = entry
                a, b = basis[i], basis[j]
                L = K.mono_lcm(a.lm, b.lm)
                if (
                    K.mono_divides(h.lm, L)
                    and h.val <= max(a.val, b.val)
                    and K.mono_lcm(a.lm, h.lm) != L
                    and K.mono_lcm(b.lm, h.lm) != L
                ):
                    continue
                kept.append(entry)
            if len(kept) != len(heap):
                heap[:] = kept
                heapq.heapify(heap)
        for i in range(k):
            if not active[i]:
                continue
            g = basis[i]
            if K.mono_coprime(g.lm, h.lm) and min(g.val, h.val) == 0:
                continue
            counter += 1
            heapq.heappush(heap, (_pair_key(g, h, ctx, strategy), counter, i, k))
        # an element whose head is strongly divisible by h's head becomes redundant
        for i in range(k):
            if active[i] and K.mono_divides(h.lm, basis[i].lm) and h.val <= basis[i].val:
                active[i] = False

    def current():
        return [basis[i] for i in range(len(basis)) if active[i]]

    # seed with interreduced inputs, smallest first
    elts.sort(key=lambda e: (sum(e.lm), _neg_key(e.lm, ctx)))
    for e in elts:
        r = _reduce(e.t, current(), ctx)
        if r:
            add(_Elt(_normalized(r, ctx), ctx, sugar=e.sugar))

    while heap:
        (key, _, i, j) = heapq.heappop(heap)
        a, b = basis[i], basis[j]
        t, L = _s_terms(a, b, ctx)
        if not t:
            continue
        r = _reduce(t, current(), ctx)
        if r:
            sugar = key[0] if strategy == "sugar" else None
            add(_Elt(_normalized(r, ctx), ctx, sugar=sugar))

    return _reduced_basis(current(), ctx)


def _reduced_basis(elts, ctx):
    # minimalize: drop elements whose head is strongly divisible by another head
    minimal = []
    for e in sorted(elts, key=lambda e: (_neg_key(e.lm, ctx), e.val)):
        if any(K.mono_divides(g.lm, e.lm) and g.val <= e.val for g in minimal):
            continue
        minimal = [g for g in minimal if not (K.mono_divides(e.lm, g.lm) and e.val <= g.val)]
        minimal.append(e)
    out = []
    for k, e in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        tail = dict(e.t)
        del tail[e.lm]
        r = _reduce(tail, others, ctx) if tail else {}
        r[e.lm] = e.lc
        out.append(Poly(r, ctx))
    out.sort(key=lambda p: ctx.monomial_key(p.lead_monomial()), reverse=True)
    return GroebnerBasis(tuple(out), ctx)


def is_dgroebner(gens):
    """True iff every pairwise S-polynomial strongly reduces to 0 modulo ``gens``."""
    gens = [g for g in gens if g]
    if not gens:
        return True
    ctx = gens[0].ctx
    elts = _elements(gens, ctx)
    for i in range(len(elts)):
        for j in range(i + 1, len(elts)):
            # G-polynomial is a multiple of one of the pair in a DVR
            assert min(elts[i].val, elts[j].val) in (elts[i].val, elts[j].val)
            t, _ = _s_terms(elts[i], elts[j], ctx)
            if t and _reduce(t, elts, ctx, full=False):
                return False
    return True
