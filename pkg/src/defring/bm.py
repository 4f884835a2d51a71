"""Tame inertial types, mod-l reduction of their K-types, and Breuil–Mézard cycle solving.

Characters of the tame inertia quotient are stored as exponents modulo
``q^2 - 1`` (a character of ``k_F^x`` with exponent ``e`` mod ``q - 1`` becomes
``(q+1)*e``). Reduction mod l keeps only the prime-to-l part: exponents are
taken modulo the l-regular part of ``q^2 - 1``.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .scalar import DefringError, _val_int

POINTS = ("a_m", "a_N", "a_N'", "a_r")

TYPE_KINDS = (
    "tau1",
    "tau_zeta",
    "tau_xi",
    "principal_pair",
    "induced_unramified",
    "induced_ramified",
    "irreducible_wild",
)
WILD_KINDS = ("induced_ramified", "irreducible_wild")

REP_KINDS = ("steinberg", "one_dim", "principal_series", "cuspidal", "pi1", "typical")


class BMError(DefringError, ValueError):
    pass


def _check_params(q, l):
    if l < 3 or l % 2 == 0 or any(l % p == 0 for p in range(3, int(l**0.5) + 1, 2)):
        raise BMError(f"l={l} is not an odd prime")
    if q < 2 or q % l == 0:
        raise BMError(f"q={q} must be a prime power prime to l")
    p = next(p for p in range(2, q + 1) if q % p == 0)
    n = q
    while n % p == 0:
        n //= p
    if n != 1:
        raise BMError(f"q={q} is not a prime power")


def _l_regular(n, l):
    while n % l == 0:
        n //= l
    return n


def congruence_class(q, l):
    """``"q=1"``, ``"q=-1"`` or ``"neither"`` according to q mod l."""
    if (q - 1) % l == 0:
        return "q=1"
    if (q + 1) % l == 0:
        return "q=-1"
    return "neither"


# ---------------------------------------------------------------------------
# inertial types


@dataclass(frozen=True)
class TypeLabel:
    """A two-dimensional inertial type, up to the twist recorded separately.

    ``chars`` are the two inertial characters as exponents mod ``q^2 - 1``;
    wild kinds carry an opaque ``tag`` instead.
    """

    kind: str
    q: int
    l: int
    chars: tuple = ()
    twist: int = 0
    tag: str = ""

    def __post_init__(self):
        if self.kind not in TYPE_KINDS:
            raise BMError(f"unknown type kind {self.kind!r}")
        cls = congruence_class(self.q, self.l)
        if self.kind == "tau_zeta" and cls != "q=1":
            raise BMError("tau_zeta requires l | q-1")
        if self.kind == "tau_xi" and cls != "q=-1":
            raise BMError("tau_xi requires l | q+1")

    @property
    def is_wild(self):
        return self.kind in WILD_KINDS

    def characters(self):
        """Sorted exponents of the two characters, twist included."""
        if self.is_wild:
            raise BMError("wild types out of scope")
        m = self.q * self.q - 1
        t = (self.q + 1) * self.twist
        return tuple(sorted((e + t) % m for e in self.chars))

    def residual_characters(self):
        n = _l_regular(self.q * self.q - 1, self.l)
        return tuple(sorted(e % n for e in self.characters()))

    def twisted(self, e):
        return TypeLabel(self.kind, self.q, self.l, self.chars, (self.twist + e) % (self.q - 1), self.tag)

    def __str__(self):
        if self.is_wild:
            return f"{self.kind}[{self.tag}]"
        base = {"tau1": "τ1", "tau_zeta": "τζ", "tau_xi": "τξ"}.get(self.kind, self.kind)
        inner = ",".join(map(str, self.chars)) if self.kind != "tau1" else ""
        out = f"{base}({inner})" if inner else base
        return out + (f"⊗χ^{self.twist}" if self.twist else "")


def tau1(q, l, twist=0):
    return TypeLabel("tau1", q, l, (0, 0), twist)


def tau_zeta(q, l, k=1):
    """``ζ ⊕ ζ^-1`` with ``ζ`` the ``k``-th power of a primitive ``l^a``-th root of unity."""
    a = _val_int(q - 1, l) if (q - 1) % l == 0 else 0
    if not a:
        raise BMError("tau_zeta requires l | q-1")
    la = l**a
    if k % la == 0:
        raise BMError("zeta must be non-trivial")
    step = (q * q - 1) // la
    return TypeLabel("tau_zeta", q, l, tuple(sorted(((k * step) % (q * q - 1), (-k * step) % (q * q - 1)))))


def tau_xi(q, l, k=1):
    """The type induced from ``ξ``, the ``k``-th power of a primitive ``l^b``-th root of unity in k_E."""
    b = _val_int(q + 1, l) if (q + 1) % l == 0 else 0
    if not b:
        raise BMError("tau_xi requires l | q+1")
    lb = l**b
    if k % lb == 0:
        raise BMError("xi must be non-trivial")
    step = (q * q - 1) // lb
    e = (k * step) % (q * q - 1)
    return TypeLabel("tau_xi", q, l, tuple(sorted((e, (q * e) % (q * q - 1)))))


def enumerate_types(q, l):
    """Tame types with trivial determinant on inertia, up to twist: τ1, each τζ class, each τξ class."""
    _check_params(q, l)
    out = [tau1(q, l)]
    seen = set()
    for kind, maker, modulus in (("tau_zeta", tau_zeta, q - 1), ("tau_xi", tau_xi, q + 1)):
        if modulus % l:
            continue
        v = l ** _val_int(modulus, l)
        for k in range(1, v):
            t = maker(q, l, k)
            if t.chars not in seen:
                seen.add(t.chars)
                out.append(t)
    return out


def types_congruent(t1, t2):
    """Congruence mod l of the semisimplified inertial characters."""
    if t1.is_wild or t2.is_wild:
        raise BMError("wild types out of scope")
    if (t1.q, t1.l) != (t2.q, t2.l):
        raise BMError("types for different (q, l)")
    return t1.residual_characters() == t2.residual_characters()


# ---------------------------------------------------------------------------
# K-types and their reductions


@dataclass(frozen=True)
class RepLabel:
    """An irreducible representation of GL2(k_F), in characteristic 0 or (``residual``) mod l.

    ``chars`` hold exponents mod ``q^2 - 1`` (reduced mod its l-regular part when residual).
    """

    kind: str
    q: int
    chars: tuple = ()
    residual: bool = False
    tag: str = ""
    dim: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.kind not in REP_KINDS:
            raise BMError(f"unknown representation kind {self.kind!r}")
        q = self.q
        expected = {"steinberg": q, "one_dim": 1, "principal_series": q + 1, "cuspidal": q - 1, "pi1": q - 1}
        if self.kind in expected:
            object.__setattr__(self, "dim", expected[self.kind])
        elif self.dim <= 0:
            raise BMError("a typical representation needs its dimension")

    def __str__(self):
        name = {
            "steinberg": "St",
            "one_dim": "1",
            "principal_series": "μ",
            "cuspidal": "π",
            "pi1": "π1",
            "typical": "σ",
        }[self.kind]
        if self.residual and self.kind in ("steinberg", "principal_series", "cuspidal", "typical"):
            name += "̄"
        if self.tag:
            name += f"[{self.tag}]"
        nontrivial = [c for c in self.chars if c]
        if nontrivial or (self.kind == "principal_series"):
            name += "(" + ",".join(map(str, self.chars)) + ")"
        return name

    def key(self):
        return (REP_KINDS.index(self.kind), self.chars, self.tag)


def sigma_of_tau(t):
    """The characteristic-zero K-type attached to a tame type."""
    if t.is_wild:
        raise BMError("wild types out of scope")
    q = t.q
    c1, c2 = t.characters()
    if t.kind == "tau1":
        return RepLabel("steinberg", q, (c1,))
    if c1 % (q + 1) == 0 and c2 % (q + 1) == 0:
        if c1 == c2:
            return RepLabel("steinberg", q, (c1,))
        return RepLabel("principal_series", q, (c1, c2))
    # conjugate pair {θ, θ^q} of characters of k_E not factoring through the norm
    return RepLabel("cuspidal", q, (c1, c2))


def _residual(r, l, kind=None, chars=None):
    n = _l_regular(r.q * r.q - 1, l)
    chars = r.chars if chars is None else chars
    red = tuple(sorted(c % n for c in chars))
    return RepLabel(kind or r.kind, r.q, red, residual=True, tag=r.tag, dim=r.dim)


def reduce_mod_l_rep(r, q, l):
    """Jordan–Hölder multiset of the mod-l reduction, as ``{RepLabel: multiplicity}``."""
    if r.q != q:
        raise BMError("representation and q disagree")
    if r.residual:
        return {r: 1}
    cls = congruence_class(q, l)
    n = _l_regular(q * q - 1, l)
    if r.kind == "principal_series" and cls == "q=1":
        a, b = (c % n for c in r.chars)
        if a == b:
            return {_residual(r, l, "one_dim", (a,)): 1, _residual(r, l, "steinberg", (a,)): 1}
    if r.kind == "steinberg" and cls == "q=-1":
        (c,) = r.chars
        return {_residual(r, l, "one_dim", (c,)): 1, _residual(r, l, "pi1", (c,)): 1}
    if r.kind == "cuspidal" and cls == "q=-1":
        a, b = (c % n for c in r.chars)
        if a == b:
            # θ̄ = θ̄^s factors through the norm: θ̄ = χ̄(x^(q+1)), and the reduction is π1 ⊗ χ̄
            return {_residual(r, l, "pi1", (a,)): 1}
    return {_residual(r, l): 1}


# ---------------------------------------------------------------------------
# cycles


class Cycle:
    """Formal integer combination of special-fibre points."""

    __slots__ = ("_m",)

    def __init__(self, mults=None):
        mults = dict(mults or {})
        for p in mults:
            if p not in POINTS:
                raise BMError(f"unknown point {p!r}")
        self._m = {p: int(v) for p, v in mults.items() if v}

    @classmethod
    def parse(cls, text):
        """``"2[a_m] + [a_r]"`` or ``"0"``."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        out = Counter()
        for part in text.replace(" ", "").split("+"):
            coeff, _, rest = part.partition("[")
            if not rest.endswith("]"):
                raise BMError(f"bad cycle term {part!r}")
            out[rest[:-1]] += int(coeff) if coeff else 1
        return cls(out)

    def __getitem__(self, p):
        return self._m.get(p, 0)

    def items(self):
        return sorted(self._m.items(), key=lambda kv: POINTS.index(kv[0]))

    def __add__(self, other):
        out = Counter(self._m)
        out.update(other._m)
        return Cycle(out)

    def __rmul__(self, k):
        return Cycle({p: k * v for p, v in self._m.items()})

    def __eq__(self, other):
        return isinstance(other, Cycle) and self._m == other._m

    def __hash__(self):
        return hash(tuple(self.items()))

    def is_effective(self):
        return all(v >= 0 for v in self._m.values())

    def to_dict(self):
        return dict(self.items())

    def __str__(self):
        if not self._m:
            return "0"
        return " + ".join((f"{v}" if v != 1 else "") + f"[{p}]" for p, v in self.items())

    __repr__ = __str__


# ---------------------------------------------------------------------------
# residual cases and their cycles


@lru_cache(maxsize=None)
def _cases_text():
    return resources.files("defring").joinpath("data/bm_cases.json").read_text(encoding="utf-8")


def bm_cases():
    return json.loads(_cases_text())["cases"]


def _case(case_id):
    for c in bm_cases():
        if c["id"] == str(case_id):
            return c
    raise BMError(f"unknown case {case_id!r}; known: {', '.join(c['id'] for c in bm_cases())}")


def case_ids():
    return [c["id"] for c in bm_cases()]


def cases_for(q, l):
    """Case ids whose congruence condition holds for ``(q, l)``."""
    cls = congruence_class(q, l)
    return [c["id"] for c in bm_cases() if c["congruence"] in ("any", cls)]


def _wild_types(case, q, l):
    return [TypeLabel("irreducible_wild", q, l, tag=tag) for tag in case.get("wild_types", [])]


def cycle_table(case_id, q, l):
    """``{TypeLabel: Cycle}`` for every type compatible with the case (unmentioned types get 0)."""
    _check_params(q, l)
    case = _case(case_id)
    cls = congruence_class(q, l)
    if case["congruence"] not in ("any", cls):
        raise BMError(f"case {case_id} needs {case['congruence']} but (q={q}, l={l}) has {cls}")
    cycles = case["cycles"]
    table = {}
    if case.get("wild_types"):
        for t in _wild_types(case, q, l):
            table[t] = Cycle.parse(cycles["wild"])
        return table
    for t in enumerate_types(q, l):
        table[t] = Cycle.parse(cycles.get(t.kind, "0"))
    return table


def _reduction(t, case):
    if t.is_wild:
        # the reduction of σ(τ) is irreducible and the same for all compatible τ (taken as given)
        return {RepLabel("typical", t.q, residual=True, tag=case["id"], dim=case.get("typical_dim", 1)): 1}
    return reduce_mod_l_rep(sigma_of_tau(t), t.q, t.l)


@dataclass
class BMSolution:
    case_id: str
    q: int
    l: int
    feasible: bool
    cycles: dict  # RepLabel -> Cycle
    unique: bool
    table: dict  # TypeLabel -> Cycle
    multiplicities: dict  # TypeLabel -> {RepLabel: int}
    violation: str = ""

    def round_trip(self):
        """True iff ``sum_θ m(θ, τ) C_θ`` reproduces every ``Z(τ)``."""
        if not self.feasible:
            return False
        for t, z in self.table.items():
            total = Cycle()
            for r, m in self.multiplicities[t].items():
                total = total + m * self.cycles.get(r, Cycle())
            if total != z:
                return False
        return True

    def to_json(self):
        return {
            "case": self.case_id,
            "q": self.q,
            "l": self.l,
            "feasible": self.feasible,
            "unique": self.unique,
            "types": {
                str(t): {
                    "Z": str(z),
                    "reduction": {str(r): m for r, m in sorted(self.multiplicities[t].items(), key=lambda x: x[0].key())},
                }
                for t, z in self.table.items()
            },
            "C": {str(r): str(c) for r, c in sorted(self.cycles.items(), key=lambda x: x[0].key())},
            "violation": self.violation,
            "round_trip": self.round_trip(),
        }


def _solve_exact(M, z):
    """Row-reduce ``M x = z`` over Q. Returns (solution or None, pivot columns, inconsistent row combination)."""
    rows, cols = len(M), len(M[0]) if M else 0
    A = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(M, z)]
    # track which input rows build each reduced row, to report a violated combination
    comb = [[Fraction(int(i == j)) for j in range(rows)] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        comb[r], comb[p] = comb[p], comb[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        comb[r] = [v * inv for v in comb[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
                comb[i] = [a - f * b for a, b in zip(comb[i], comb[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if A[i][cols] != 0:
            return None, pivots, comb[i]
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = A[i][cols]
    return x, pivots, None


def bm_solve(case_id, q, l):
    """Solve ``Z(τ) = Σ_θ m(θ, τ) C_θ`` for effective cycles ``C_θ``, one point coordinate at a time."""
    table = cycle_table(case_id, q, l)
    case = _case(case_id)
    types = list(table)
    mults = {t: _reduction(t, case) for t in types}
    thetas = sorted({r for t in types for r in mults[t]}, key=RepLabel.key)
    M = [[mults[t].get(r, 0) for r in thetas] for t in types]
    points = sorted({p for z in table.values() for p, _ in z.items()}, key=POINTS.index)
    cycles = {r: Cycle() for r in thetas}
    unique = True
    for p in points:
        z = [table[t][p] for t in types]
        x, pivots, bad = _solve_exact(M, z)
        if x is None:
            terms = " + ".join(f"({c})·Z({t})" for c, t in zip(bad, types) if c)
            return BMSolution(case_id, q, l, False, {}, False, table, mults, f"at [{p}]: {terms} must vanish but does not")
        if len(pivots) < len(thetas):
            unique = False
            x = _search_nonneg(M, z, max(z) if z else 0)
            if x is None:
                return BMSolution(case_id, q, l, False, {}, False, table, mults, f"at [{p}]: no effective solution")
        if any(v < 0 or v.denominator != 1 for v in map(Fraction, x)):
            return BMSolution(
                case_id, q, l, False, {}, unique, table, mults, f"at [{p}]: the solution {list(map(str, x))} is not effective"
            )
        for r, v in zip(thetas, x):
            cycles[r] = cycles[r] + Cycle({p: int(v)})
    return BMSolution(case_id, q, l, True, cycles, unique, table, mults)


def _search_nonneg(M, z, bound):
    """Smallest (lexicographic) nonnegative integer solution with entries at most ``bound``."""
    cols = len(M[0]) if M else 0
    for x in itertools.product(range(bound + 1), repeat=cols):
        if all(sum(a * b for a, b in zip(row, x)) == zi for row, zi in zip(M, z)):
            return [Fraction(v) for v in x]
    return None


def shares_factor(r1, r2, q, l):
    """True iff the mod-l reductions of ``r1`` and ``r2`` have a Jordan–Hölder factor in common."""
    return bool(set(reduce_mod_l_rep(r1, q, l)) & set(reduce_mod_l_rep(r2, q, l)))


__all__ = [
    "BMError",
    "BMSolution",
    "Cycle",
    "POINTS",
    "RepLabel",
    "TypeLabel",
    "bm_cases",
    "bm_solve",
    "case_ids",
    "cases_for",
    "congruence_class",
    "cycle_table",
    "enumerate_types",
    "reduce_mod_l_rep",
    "shares_factor",
    "sigma_of_tau",
    "tau1",
    "tau_xi",
    "tau_zeta",
    "types_congruent",
]
