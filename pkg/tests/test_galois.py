import pytest
from gmpy2 import mpq

from defring import CaseError, CaseSpec, DvrScalar, Ideal, MatrixPoly, VarContext, charpoly_power, equal
from defring import relation_ideal, verify_presentation
from defring.galois import catalogue_entries, character_deformation_ideal, localize, spec_for, verify_entry
from defring.ideal import is_flat, saturate_by_l


@pytest.mark.parametrize(
    "q, trace, det, text",
    [(4, 2, 1, "4t - 3"), (2, -1, 1, "-t - 1"), (1, 5, 7, "t"), (3, 0, 1, "-t")],
)
def test_charpoly_power_examples(q, trace, det, text):
    assert str(charpoly_power(q, trace, det)) == text


def test_charpoly_power_rejects_zero():
    with pytest.raises(ValueError):
        charpoly_power(0, 2, 1)


def test_charpoly_power_dvr_scalars():
    r = charpoly_power(4, DvrScalar(2, 3), DvrScalar(1, 3))
    assert (r.c1, r.c0) == (DvrScalar(4, 3), DvrScalar(-3, 3))


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 8, 9])
def test_charpoly_power_generic_matrix(q):
    # symbolic trace and determinant: Cayley-Hamilton holds identically
    ctx = VarContext("a,b,c,d", 3, "grevlex")
    M = MatrixPoly(*ctx.gens())
    red = charpoly_power(q, M.trace(), M.det())
    assert M.power(q) == red.apply(M)


@pytest.mark.parametrize("q", [2, 3, 4, 7])
def test_charpoly_power_with_rational_trace(q):
    # trace 2 + eta and det 1 with eta = -3: compare against the actual power of a companion matrix
    ctx = VarContext("z", 3)
    tr = mpq(-1)
    M = MatrixPoly(ctx.const(0), ctx.const(-1), ctx.const(1), ctx.const(tr))
    red = charpoly_power(q, tr, mpq(1))
    assert M.power(q) == red.apply(M)


def test_linear_in_t_with_polys():
    ctx = VarContext("T,D", 3, "grevlex")
    r = charpoly_power(3, ctx.var("T"), ctx.var("D"))
    assert str(r) == "(T^2 - D)t + (-T*D)"


def test_case_spec_constants():
    s = CaseSpec("qminus1_tau1", 4, 3)
    assert (s.a, s.b) == (1, 0)
    assert s.constants["sqrtq"] == -2 and s.constants["alpha"] == mpq(-3, 2)
    assert CaseSpec("qplus1_tauxi", 2, 3).constants["kappa"] == -3
    assert CaseSpec("qminus1_tauzeta", 4, 3).constants["eta"] == -3


@pytest.mark.parametrize(
    "case, q, l, msg",
    [
        ("qplus1_tau1", 4, 3, "l | q\\+1"),
        ("qminus1_tau1", 2, 3, "l | q-1"),
        ("banal_ram", 4, 3, "q\\^2-1"),
        ("qplus1_tauxi", 8, 3, "kappa"),
        ("nonsense", 2, 3, "unknown case"),
        ("banal_ram", 5, 5, "divides"),
    ],
)
def test_case_spec_refusals(case, q, l, msg):
    with pytest.raises(CaseError, match=msg):
        CaseSpec(case, q, l)


def test_localize_rejects_non_unit():
    ctx = VarContext("x", 3)
    with pytest.raises(CaseError, match="not a unit"):
        localize(Ideal([ctx.var("x")], ctx), [ctx.parse("3 + x")])


def test_no_extension_trivial_type():
    reps = verify_presentation(CaseSpec("no_ext_tau1", 4, 3))
    assert reps.passed
    # (P^2, 3P) before saturation, (P) after
    assert reps.checks[0] == {"check": "unsaturated ring matches its presentation", "pass": True}
    assert "P" in reps.steps[-1]["torsion_witnesses"]


def test_qplus1_tauxi_torsion_witness():
    rep = verify_presentation(CaseSpec("qplus1_tauxi", 2, 3), variant="frobenius_q_1")
    assert rep.passed
    assert {"check": "λ-torsion witness V^2 + 2*V + 3", "pass": True} in rep.checks


def test_qminus1_tau1_intersection():
    rep = verify_presentation(CaseSpec("qminus1_tau1", 4, 3))
    assert rep.equal and rep.passed


def test_qminus1_tauzeta_flat_by_units():
    rep = verify_presentation(CaseSpec("qminus1_tauzeta", 4, 3))
    assert rep.passed
    assert {"check": "flat by unit head coefficients", "pass": True} in rep.checks


def test_banal_ram_two_components():
    rep = verify_presentation(CaseSpec("banal_ram", 2, 5))
    assert rep.passed
    ctx = VarContext("A,B,C,D,W,Z", 5, "grevlex")
    target = Ideal.parse(rep.target, ctx)
    assert ctx.parse("B*W") in target


def test_all_catalogue_entries_verify():
    failures = []
    for entry, inst in catalogue_entries():
        rep = verify_entry(entry, inst)
        if not rep.passed:
            failures.append((rep.case_id, rep.variant, rep.diagnostics, rep.checks))
    assert not failures


def test_trivial_type_origin_is_a_lift():
    # with xbar = 0 every trivial-type relation ideal vanishes at the origin (Sigma = I lifts);
    # non-trivial types never do, since their trace is not 2
    for entry, inst in catalogue_entries():
        spec = spec_for(entry, inst)
        R = relation_ideal(spec, entry)
        zero = {v: 0 for v in R.ctx.variables}
        vanishes = all(g.evaluate(zero) == 0 for g in R.generators)
        if entry["case_id"].endswith("tau1") and spec.xbar_zero or entry["case_id"].startswith("banal"):
            assert vanishes, entry["case_id"]
        elif not entry["case_id"].endswith("tau1"):
            assert not vanishes, entry["case_id"]


def test_character_deformation_is_flat():
    for l, a in [(3, 1), (3, 2), (5, 1)]:
        I = character_deformation_ideal(l, a)
        assert equal(saturate_by_l(I), I)
        assert is_flat(I).flat


def test_matrix_poly_algebra():
    ctx = VarContext("a,b,c,d", 3, "grevlex")
    M = MatrixPoly(*ctx.gens())
    I2 = MatrixPoly.identity(ctx)
    assert M * I2 == M and (M - M).entries() == [ctx.zero()] * 4
    assert (M * M).det() == M.det() * M.det()
    assert M.power(0) == I2
