"""Hilbert functions, Hilbert polynomials, dimension and degree of homogeneous quotients over F_l."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import kernels as K
from .ideal import Ideal
from .scalar import DefringError


class HilbertError(DefringError, ValueError):
    pass


def reduce_mod_l(I):
    """Coefficient-wise residue of ``I`` over F_l; generators that vanish are dropped."""
    ctx = I.ctx.residue()
    gens = [g.reduce_mod_l(ctx) for g in I.generators]
    return Ideal([g for g in gens if g], ctx)


def _residue_ideal(I):
    if not I.ctx.ring.is_field:
        I = reduce_mod_l(I)
    for g in I.generators:
        if not g.is_homogeneous():
            raise HilbertError("Hilbert requires homogeneous ideal")
    return I


def leading_exponents(I):
    """Minimal generators of the leading-term ideal of a homogeneous ideal (any order will do)."""
    I = _residue_ideal(I)
    if I.ctx.order != "grevlex":
        I = I.with_order("grevlex")
    return _minimalize([g.lead_monomial() for g in I.gb.generators])


def _minimalize(monos):
    out = []
    for m in sorted(set(monos), key=sum):
        if not any(K.mono_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def series_numerator(monos):
    """Numerator ``N(t)`` with ``HS(S/M) = N(t) / (1-t)^n`` for the monomial ideal ``M``.

    Coefficient list, constant term first. Uses ``N(M + (m)) = N(M) - t^deg(m) N(M : m)``.
    """
    monos = _minimalize(monos)
    if not monos:
        return [1]
    if any(sum(m) == 0 for m in monos):
        return [0]
    # pairwise coprime generators form a regular sequence
    support = [set(i for i, e in enumerate(m) if e) for m in monos]
    seen = set()
    coprime = True
    for s in support:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for m in monos:
            f = [0] * (sum(m) + 1)
            f[0], f[-1] = 1, -1
            out = _poly_mul(out, f)
        return out
    m = max(monos, key=sum)
    rest = [g for g in monos if g is not m]
    colon = [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest]
    shifted = [0] * sum(m) + series_numerator(colon)
    return _poly_sub(series_numerator(rest), shifted)


def _h_from_numerator(num, n, d):
    if n == 0:
        return num[d] if d < len(num) else 0
    return sum(c * comb(d - k + n - 1, n - 1) for k, c in enumerate(num) if k <= d)


def hilbert_function(I, d, method="series"):
    """Dimension over F_l of the degree-``d`` part of ``S/I``.

    ``I`` may be over Z_(l) (it is reduced mod l first). ``method="enumerate"``
    counts standard monomials one by one instead of using the series numerator.
    """
    if d < 0:
        return 0
    I = _residue_ideal(I)
    leads = leading_exponents(I)
    n = I.ctx.nvars
    if method == "enumerate":
        return K.count_standard(leads, n, d)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    return _h_from_numerator(series_numerator(leads), n, d)


@dataclass(frozen=True)
class HilbertData:
    values: tuple
    fitted_polynomial: tuple  # coefficients, highest degree first; () for the zero polynomial
    dimension: int
    degree: int
    stable_from: int

    def polynomial_str(self, var="d"):
        coeffs = self.fitted_polynomial
        if not coeffs:
            return "0"
        k = len(coeffs) - 1
        parts = []
        for i, c in enumerate(coeffs):
            e = k - i
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def evaluate(self, d):
        out = Fraction(0)
        for c in self.fitted_polynomial:
            out = out * d + c
        return out


def _fit(points):
    """Coefficients (highest first) of the interpolating polynomial through ``points``."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = _poly_mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += b * yi / denom
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(reversed(coeffs))


def hilbert_polynomial(I, horizon=12, window=4):
    """Fit the eventual Hilbert polynomial from ``h(0..horizon)``.

    The polynomial must reproduce at least ``window`` consecutive values past the
    points used to fit it; otherwise the horizon is too small.
    """
    I = _residue_ideal(I)
    leads = leading_exponents(I)
    n = I.ctx.nvars
    num = series_numerator(leads)
    values = tuple(_h_from_numerator(num, n, d) for d in range(horizon + 1))
    # the Hilbert polynomial has degree below the number of variables
    for k in range(0, n + 1):
        lo = horizon - k - window
        if lo < 0:
            break
        fitted = _fit([(d, values[d]) for d in range(horizon - k, horizon + 1)])
        if all(_eval(fitted, d) == values[d] for d in range(lo, horizon + 1)):
            start = lo
            while start > 0 and _eval(fitted, start - 1) == values[start - 1]:
                start -= 1
            if not fitted:
                return HilbertData(values, (), 0, sum(values), start)
            deg = len(fitted) - 1
            lead = fitted[0] * factorial(deg)
            if lead.denominator != 1:
                raise HilbertError(f"non-integral multiplicity {lead}; the fit is not stable")
            coeffs = tuple(int(c) if c.denominator == 1 else c for c in fitted)
            return HilbertData(values, coeffs, deg + 1, int(lead), start)
    raise HilbertError(
        f"Hilbert function not yet polynomial by degree {horizon}; increase the horizon (e.g. horizon={2 * horizon})"
    )


def _eval(coeffs, d):
    out = Fraction(0)
    for c in coeffs:
        out = out * d + c
    return out
