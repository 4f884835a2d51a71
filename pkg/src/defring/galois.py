"""Deformation-ring equation ideals from 2x2 matrix relations, and their verification.

For each catalogued case the raw ideal is generated from scratch: the
entries of ``Phi*Sigma - Sigma^q*Phi`` (``Sigma^q`` via Cayley-Hamilton
square-and-multiply), the determinant relations and the trace (type)
constraint. The case recipe then localizes at elements that are units at the
origin, removes λ-torsion, and the result is compared by mutual membership
with the target presentation recorded in the catalogue.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional

from .ideal import Ideal, equal, intersect, is_flat, non_members, saturate_by
from .poly import Poly, VarContext
from .scalar import DefringError, DvrScalar, _val_int, mpq

CASE_IDS = (
    "no_ext_tau1",
    "no_ext_tauzeta",
    "banal_unram",
    "banal_ram",
    "qplus1_tau1",
    "qplus1_tauxi",
    "qminus1_tauzeta",
    "qminus1_tau1",
)


class CaseError(DefringError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Cayley-Hamilton power reduction


@dataclass(frozen=True)
class LinearInT:
    """``c1*t + c0``: the class of ``t**q`` modulo ``t**2 - trace*t + det``."""

    c1: object
    c0: object

    def __str__(self):
        def atom(c):
            text = str(c)
            return f"({text})" if isinstance(c, Poly) and (len(c.raw_terms()) > 1 or text.startswith("-")) else text

        c1, c0 = self.c1, self.c0
        if c1 == 0:
            return str(c0)
        head = {1: "t", -1: "-t"}.get(c1) if not isinstance(c1, Poly) else None
        out = head or f"{atom(c1)}t"
        if c0 == 0:
            return out
        if not isinstance(c0, Poly) and getattr(c0, "value", c0) < 0:
            return f"{out} - {-c0}"
        return f"{out} + {atom(c0)}"

    def apply(self, M):
        """``c1*M + c0*I`` for a :class:`MatrixPoly`."""
        return M.scale(self.c1) + MatrixPoly.identity(M.ctx).scale(self.c0)


def charpoly_power(q, trace, det):
    """Reduce ``t**q`` modulo ``t**2 - trace*t + det`` by square-and-multiply.

    ``trace`` and ``det`` may be ints, rationals, DvrScalars or Polys; the
    coefficients of the result live in the same ring.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    zero = trace * 0
    one = zero + 1

    def mul(a, b):
        a1, a0 = a
        b1, b0 = b
        top = a1 * b1
        return (top * trace + a1 * b0 + a0 * b1, a0 * b0 - top * det)

    result = (zero, one)
    base = (one, zero)
    n = q
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return LinearInT(*result)


class MatrixPoly:
    """2x2 matrix with Poly entries in one context."""

    __slots__ = ("a", "b", "c", "d", "ctx")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d
        self.ctx = a.ctx

    @classmethod
    def identity(cls, ctx):
        return cls(ctx.one(), ctx.zero(), ctx.zero(), ctx.one())

    @classmethod
    def parse(cls, entries, ctx):
        return cls(*[ctx.parse(e) for e in entries])

    def entries(self):
        return [self.a, self.b, self.c, self.d]

    def __add__(self, o):
        return MatrixPoly(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o):
        return MatrixPoly(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __mul__(self, o):
        return MatrixPoly(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __eq__(self, o):
        return isinstance(o, MatrixPoly) and self.entries() == o.entries()

    def scale(self, s):
        return MatrixPoly(self.a * s, self.b * s, self.c * s, self.d * s)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def power(self, n):
        out = MatrixPoly.identity(self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


# ---------------------------------------------------------------------------
# case parameters


def _vl(n, l):
    return _val_int(n, l) if n else math.inf


def _half_trace_of_root(order):
    """``r + 1/r`` for a primitive ``order``-th root of unity when rational, else None."""
    return {1: mpq(2), 2: mpq(-2), 3: mpq(-1), 4: mpq(0), 6: mpq(1)}.get(order)


@dataclass
class CaseSpec:
    """Parameters of one verification instance and the constants they determine."""

    case_id: str
    q: int
    l: int
    xbar_zero: bool = True
    ybar_zero: bool = True
    extra: dict = field(default_factory=dict)
    a: int = field(init=False)
    b: int = field(init=False)
    constants: dict = field(init=False)

    def __post_init__(self):
        if self.case_id not in CASE_IDS:
            raise CaseError(f"unknown case {self.case_id!r}")
        q, l = self.q, self.l
        if l % 2 == 0 or l < 3:
            raise CaseError("l must be an odd prime")
        if q % l == 0:
            raise CaseError(f"l={l} divides q={q}")
        self.a = int(_vl(q - 1, l))
        self.b = int(_vl(q + 1, l))
        family = self.case_id.split("_")[0]
        need = {"qplus1": "b", "qminus1": "a", "banal": "none"}.get(family)
        if need == "b" and not self.b:
            raise CaseError(f"{self.case_id} requires l | q+1")
        if need == "a" and not self.a:
            raise CaseError(f"{self.case_id} requires l | q-1")
        if need == "none" and (self.a or self.b):
            raise CaseError(f"{self.case_id} requires l ∤ q^2-1")
        if self.case_id == "no_ext_tauzeta" and not self.a:
            raise CaseError("no_ext_tauzeta requires l | q-1")
        self.constants = self._constants()

    def _constants(self):
        q, l = self.q, self.l
        c = {"q": mpq(q), "l": mpq(l), "x": mpq(0 if self.xbar_zero else 1), "y": mpq(0 if self.ybar_zero else 1)}
        c["la"] = mpq(l**self.a)
        c["lb"] = mpq(l**self.b)
        s = _half_trace_of_root(l**self.a) if self.a else None
        if s is not None:
            c["eta"] = s - 2
        s = _half_trace_of_root(l**self.b) if self.b else None
        if s is not None:
            c["kappa"] = s - 2
        r = math.isqrt(q)
        if r * r == q:
            root = r if (r - 1) % l == 0 else -r
            if (root - 1) % l == 0:
                c["sqrtq"] = mpq(root)
                c["alpha"] = mpq(q - 1, root)
                c["qp1_sqrtq"] = mpq(q + 1, root)
        for k, v in self.extra.items():
            c[k] = mpq(v) if not isinstance(v, str) else mpq(*map(int, v.split("/")))
        missing = [n for n in _NEEDS.get(self.case_id, ()) if n not in c]
        if missing:
            raise CaseError(f"{', '.join(missing)} not rational for l={l}, q={q}")
        return c

    def scalar(self, name):
        return DvrScalar(self.constants[name], self.l)


# constants each case cannot do without
_NEEDS = {
    "no_ext_tauzeta": ("eta",),
    "qplus1_tauxi": ("kappa",),
    "qminus1_tauzeta": ("eta",),
    "qminus1_tau1": ("sqrtq",),
}


# ---------------------------------------------------------------------------
# catalogue


@lru_cache(maxsize=None)
def _load_catalogue_text():
    return resources.files("defring").joinpath("data/catalogue.json").read_text(encoding="utf-8")


def load_catalogue(path=None):
    """Return the parsed case catalogue (the packaged one by default)."""
    if path is None:
        return json.loads(_load_catalogue_text())
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def catalogue_entries(case_id=None, l=None, q=None, catalogue=None):
    """Catalogue entries filtered by case and instance, in file order."""
    cat = catalogue or load_catalogue()
    out = []
    for e in cat["cases"]:
        if case_id not in (None, "all") and e["case_id"] != case_id:
            continue
        for inst in e["instances"]:
            if (l is None or inst["l"] == l) and (q is None or inst["q"] == q):
                out.append((e, inst))
    return out


def _fmt_const(v):
    return f"({v.numerator}/{v.denominator})" if v.denominator != 1 else f"({v.numerator})"


def spec_for(entry, inst):
    flags = entry.get("flags", {})
    return CaseSpec(
        entry["case_id"],
        inst["q"],
        inst["l"],
        xbar_zero=flags.get("xbar_zero", True),
        ybar_zero=flags.get("ybar_zero", True),
        extra=inst.get("constants", {}),
    )


def _entry_for(spec, variant=None):
    for entry in load_catalogue()["cases"]:
        flags = entry.get("flags", {})
        if entry["case_id"] != spec.case_id:
            continue
        if flags.get("xbar_zero", True) != spec.xbar_zero or flags.get("ybar_zero", True) != spec.ybar_zero:
            continue
        if variant is None or entry.get("variant") == variant:
            return entry
    raise CaseError(f"no catalogue entry for {spec.case_id} with these residual parameters")


def _substitute(text, consts):
    out = text
    for k in sorted(consts, key=len, reverse=True):
        out = out.replace("{" + k + "}", _fmt_const(consts[k]))
    if "{" in out:
        raise CaseError(f"unresolved constant in {text!r}")
    return out


def _parse_all(texts, ctx, consts):
    return [ctx.parse(_substitute(t, consts)) for t in texts]


def relation_ideal(spec, entry=None, ctx=None):
    """Raw equation ideal for ``spec``, in the variables of its catalogue entry."""
    entry = entry or _entry_for(spec)
    ctx = ctx or VarContext(entry["variables"], spec.l, entry.get("order", "grevlex"))
    consts = spec.constants
    gens = []
    if entry["kind"] == "matrix":
        Sigma = MatrixPoly(*_parse_all(entry["sigma"], ctx, consts))
        Phi = MatrixPoly(*_parse_all(entry["phi"], ctx, consts))
        det_s = ctx.parse(_substitute(entry["det_sigma"], consts))
        det_p = ctx.parse(_substitute(entry["det_phi"], consts))
        if "trace_sigma" in entry:
            tr = ctx.parse(_substitute(entry["trace_sigma"], consts))
            gens.append(Sigma.trace() - tr)
        else:
            tr = Sigma.trace()
        Sq = charpoly_power(spec.q, tr, det_s).apply(Sigma)
        gens += (Phi * Sigma - Sq * Phi).entries()
        gens.append(Sigma.det() - det_s)
        gens.append(Phi.det() - det_p)
    gens += _parse_all(entry.get("equations", []), ctx, consts)
    return Ideal(gens, ctx)


def _target_ideal(spec_block, ctx, consts):
    if isinstance(spec_block, dict) and "intersect" in spec_block:
        parts = [Ideal(_parse_all(p, ctx, consts), ctx) for p in spec_block["intersect"]]
        I = parts[0]
        for J in parts[1:]:
            I = intersect(I, J)
        return I
    return Ideal(_parse_all(spec_block, ctx, consts), ctx)


def character_deformation_ideal(l, a, variable="X"):
    """``((1+X)^(l^a) - 1)`` in Z_(l)[X]: the universal deformation of a character of l-power order."""
    ctx = VarContext([variable], l, "lex")
    X = ctx.var(variable)
    return Ideal([(X + 1) ** (l**a) - 1], ctx)


def _is_local_unit(f):
    """Unit of the completed local ring: constant term of valuation 0."""
    zero = (0,) * f.ctx.nvars
    c = f.raw_terms().get(zero)
    return c is not None and f.ctx.ring.valuation(c) == 0


@dataclass
class VerificationReport:
    case_id: str
    variant: str
    l: int
    q: int
    label: str
    raw: list
    steps: list
    target: list
    equal: bool
    checks: list
    diagnostics: dict

    @property
    def passed(self):
        return self.equal and all(c["pass"] for c in self.checks)

    def to_json(self):
        return {
            "case_id": self.case_id,
            "variant": self.variant,
            "l": self.l,
            "q": self.q,
            "label": self.label,
            "raw_ideal": self.raw,
            "steps": self.steps,
            "target": self.target,
            "equal": self.equal,
            "checks": self.checks,
            "diagnostics": self.diagnostics,
            "pass": self.passed,
        }


def _gb_strings(I):
    return [str(g) for g in I.gb.generators]


def localize(I, units):
    """Saturate ``I`` by each element (all must be units at the origin)."""
    for u in units:
        if not _is_local_unit(u):
            raise CaseError(f"{u} is not a unit of the local ring")
        I = saturate_by(I, u)
    return I


def verify_entry(entry, inst):
    """Run one catalogue entry at one instance; failures are report outcomes."""
    spec = spec_for(entry, inst)
    consts = spec.constants
    ctx = VarContext(entry["variables"], spec.l, entry.get("order", "grevlex"))
    raw = relation_ideal(spec, entry, ctx)
    steps = []
    checks = []
    units = _parse_all(entry.get("localize", []), ctx, consts)
    cur = localize(raw, units)
    if units:
        steps.append({"step": "localize", "by": [str(u) for u in units], "basis": _gb_strings(cur)})
    if "raw_target" in entry:
        rt = _target_ideal(entry["raw_target"], ctx, consts)
        rt = localize(rt, _parse_all(entry.get("target_localize", []), ctx, consts))
        ok = equal(cur, rt)
        checks.append({"check": "unsaturated ring matches its presentation", "pass": ok})
    before = cur
    if entry.get("torsion", True):
        cur = saturate_by(cur, spec.l)
        missing = non_members(cur, before)
        steps.append(
            {
                "step": "saturate",
                "by": str(spec.l),
                "basis": _gb_strings(cur),
                "torsion_witnesses": [str(g) for g in missing],
            }
        )
    target = _target_ideal(entry["target"], ctx, consts)
    target = localize(target, _parse_all(entry.get("target_localize", []), ctx, consts))
    a_not_b = [str(g) for g in non_members(cur, target)]
    b_not_a = [str(g) for g in non_members(target, cur)]
    eq = not a_not_b and not b_not_a
    for chk in entry.get("checks", []):
        checks.append(_run_check(chk, cur, before, ctx, consts, spec))
    return VerificationReport(
        case_id=entry["case_id"],
        variant=entry.get("variant", ""),
        l=spec.l,
        q=spec.q,
        label=entry.get("label", ""),
        raw=[str(g) for g in raw.generators],
        steps=steps,
        target=_gb_strings(target),
        equal=eq,
        checks=checks,
        diagnostics={"computed_not_in_target": a_not_b, "target_not_in_computed": b_not_a},
    )


def _run_check(chk, cur, before, ctx, consts, spec):
    kind = chk["kind"]
    if kind == "flat_by_units":
        cert = is_flat(cur)
        return {"check": "flat by unit head coefficients", "pass": cert.verdict.value == "FlatByUnits"}
    if kind == "torsion_free":
        return {"check": "no λ-torsion before saturation", "pass": not non_members(cur, before)}
    if kind == "has_torsion":
        witness = ctx.parse(_substitute(chk["witness"], consts))
        ok = witness in cur and witness not in before
        return {"check": f"λ-torsion witness {witness}", "pass": ok}
    if kind == "equal_after_rename":
        mapping = chk["rename"]
        other_vars = [mapping.get(v, v) for v in ctx.variables]
        octx = VarContext(other_vars, spec.l, ctx.order)
        J = Ideal(_parse_all(chk["target"], octx, consts), octx)
        J = Ideal([g.subs({w: ctx.var(v) for v, w in zip(ctx.variables, other_vars)}) for g in J.generators], ctx)
        return {"check": chk.get("label", "presentation equal after renaming"), "pass": equal(cur, J)}
    if kind == "not_equal":
        block = {"intersect": chk["target_intersect"]} if "target_intersect" in chk else chk["target"]
        J = _target_ideal(block, ctx, consts)
        J = localize(J, _parse_all(chk.get("target_localize", []), ctx, consts))
        return {"check": chk.get("label", "differs from"), "pass": not equal(cur, J)}
    raise CaseError(f"unknown check kind {kind!r}")


def verify_presentation(spec: CaseSpec, variant: Optional[str] = None):
    """Verify every catalogue entry matching ``spec`` (case, flags, instance)."""
    reports = []
    for entry, inst in catalogue_entries(spec.case_id, spec.l, spec.q):
        flags = entry.get("flags", {})
        if flags.get("xbar_zero", True) != spec.xbar_zero or flags.get("ybar_zero", True) != spec.ybar_zero:
            continue
        if variant is not None and entry.get("variant") != variant:
            continue
        reports.append(verify_entry(entry, inst))
    if not reports:
        raise CaseError(f"no catalogue entry for {spec.case_id} at l={spec.l}, q={spec.q}")
    return reports[0] if len(reports) == 1 else reports
