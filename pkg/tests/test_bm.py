import pytest

from defring import bm
from defring.bm import BMError, Cycle, RepLabel, TypeLabel


def kinds(types):
    return sorted(t.kind for t in types)


def test_enumerate_types():
    assert kinds(bm.enumerate_types(4, 3)) == ["tau1", "tau_zeta"]
    assert kinds(bm.enumerate_types(2, 3)) == ["tau1", "tau_xi"]
    assert kinds(bm.enumerate_types(2, 5)) == ["tau1"]
    # l^2 | q+1 gives four classes of xi up to xi -> xi^q
    assert kinds(bm.enumerate_types(8, 3)).count("tau_xi") == 4


@pytest.mark.parametrize("q, l", [(6, 3), (4, 2), (9, 3), (2, 9)])
def test_enumerate_types_invalid(q, l):
    with pytest.raises(BMError):
        bm.enumerate_types(q, l)


def test_type_kind_consistency():
    with pytest.raises(BMError, match="l \\| q-1"):
        TypeLabel("tau_zeta", 2, 3, (1, 2))
    with pytest.raises(BMError):
        bm.tau_xi(4, 3)


def test_sigma_of_tau():
    st = bm.sigma_of_tau(bm.tau1(4, 3))
    assert st.kind == "steinberg" and st.dim == 4
    ps = bm.sigma_of_tau(bm.tau_zeta(4, 3))
    assert ps.kind == "principal_series" and ps.dim == 5
    cu = bm.sigma_of_tau(bm.tau_xi(2, 3))
    assert cu.kind == "cuspidal" and cu.dim == 1


def test_sigma_of_wild_type():
    with pytest.raises(BMError, match="wild types out of scope"):
        bm.sigma_of_tau(TypeLabel("irreducible_wild", 2, 3, tag="w"))


def _red(r, q, l):
    return {(s.kind, s.chars): m for s, m in bm.reduce_mod_l_rep(r, q, l).items()}


def test_steinberg_reductions():
    assert _red(RepLabel("steinberg", 2, (0,)), 2, 3) == {("one_dim", (0,)): 1, ("pi1", (0,)): 1}
    assert _red(RepLabel("steinberg", 2, (0,)), 2, 5) == {("steinberg", (0,)): 1}
    assert _red(RepLabel("steinberg", 4, (0,)), 4, 3) == {("steinberg", (0,)): 1}


def test_principal_series_with_congruent_characters():
    r = bm.sigma_of_tau(bm.tau_zeta(4, 3))
    assert _red(r, 4, 3) == {("one_dim", (0,)): 1, ("steinberg", (0,)): 1}


def test_generic_principal_series_stays_irreducible():
    # characters of order 5 at q=11, l=3: no congruence
    r = RepLabel("principal_series", 11, (0, 12 * 2))
    red = bm.reduce_mod_l_rep(r, 11, 3)
    assert [(s.kind, m) for s, m in red.items()] == [("principal_series", 1)]


def test_cuspidal_reductions():
    assert _red(bm.sigma_of_tau(bm.tau_xi(2, 3)), 2, 3) == {("pi1", (0,)): 1}
    # q = 4, l = 3: cuspidal types stay irreducible
    r = RepLabel("cuspidal", 4, (1, 4))
    assert [s.kind for s in bm.reduce_mod_l_rep(r, 4, 3)] == ["cuspidal"]


def test_shared_factors_follow_congruence():
    for q, l in [(2, 3), (5, 3), (8, 3), (4, 5)]:
        st = bm.sigma_of_tau(bm.tau1(q, l))
        cu = bm.sigma_of_tau(bm.tau_xi(q, l))
        assert bm.shares_factor(st, cu, q, l)
    for q, l in [(4, 3), (7, 3), (11, 5)]:
        st = bm.sigma_of_tau(bm.tau1(q, l))
        ps = bm.sigma_of_tau(bm.tau_zeta(q, l))
        assert bm.shares_factor(st, ps, q, l)
    # St and a generic cuspidal type at q = 2, l = 5 share nothing
    assert not bm.shares_factor(RepLabel("steinberg", 2, (0,)), RepLabel("cuspidal", 2, (1, 2)), 2, 5)


def test_types_congruent_examples():
    assert bm.types_congruent(bm.tau1(2, 3), bm.tau_xi(2, 3))
    assert bm.types_congruent(bm.tau1(4, 3), bm.tau_zeta(4, 3))
    # twist by a character of order 3 at q = 4, l = 5: non-trivial mod 5
    assert not bm.types_congruent(bm.tau1(4, 5), bm.tau1(4, 5, twist=1))
    # twist by a character of order 3 at q = 4, l = 3 becomes trivial mod 3
    assert bm.types_congruent(bm.tau1(4, 3), bm.tau1(4, 3, twist=1))
    with pytest.raises(BMError, match="wild"):
        bm.types_congruent(bm.tau1(2, 3), TypeLabel("irreducible_wild", 2, 3, tag="w"))


@pytest.mark.parametrize("q, l", [(2, 3), (4, 3), (8, 3), (7, 3), (2, 5), (4, 5)])
def test_types_congruent_is_an_equivalence(q, l):
    ts = bm.enumerate_types(q, l)
    ts += [t.twisted(e) for t in ts for e in range(1, min(q - 1, 3))]
    for a in ts:
        assert bm.types_congruent(a, a)
        for b in ts:
            assert bm.types_congruent(a, b) == bm.types_congruent(b, a)
            for c in ts:
                if bm.types_congruent(a, b) and bm.types_congruent(b, c):
                    assert bm.types_congruent(a, c)


def test_cycle_arithmetic():
    a = Cycle.parse("2[a_m] + [a_r]")
    b = Cycle.parse("[a_m]")
    assert str(a + b) == "3[a_m] + [a_r]"
    assert a + Cycle.parse("0") == a
    assert (2 * b).to_dict() == {"a_m": 2}
    assert not Cycle({"a_m": -1}).is_effective()
    with pytest.raises(BMError):
        Cycle({"a_z": 1})


def _z(case, q, l):
    return {t.kind: str(z) for t, z in bm.cycle_table(case, q, l).items()}


def test_cycle_table_examples():
    assert _z("5", 2, 3) == {"tau1": "[a_m]", "tau_xi": "0"}
    assert _z("8_split", 4, 3) == {"tau1": "[a_m] + [a_r]", "tau_zeta": "2[a_m] + [a_r]"}
    assert _z("2", 4, 3) == {"tau1": "[a_m]", "tau_zeta": "2[a_m]"}
    assert _z("7", 2, 3) == {"tau1": "[a_m] + [a_N] + [a_N']", "tau_xi": "[a_N] + [a_N']"}


def test_cycle_table_inconsistent_case():
    with pytest.raises(BMError, match="needs q=-1"):
        bm.cycle_table("7", 4, 3)
    with pytest.raises(BMError, match="unknown case"):
        bm.cycle_table("9", 2, 3)


def _c(sol):
    return {(r.kind, str(c)) for r, c in sol.cycles.items()}


def test_bm_solve_examples():
    s7 = bm.bm_solve("7", 2, 3)
    assert _c(s7) == {("one_dim", "[a_m]"), ("pi1", "[a_N] + [a_N']")}
    s5 = bm.bm_solve("5", 2, 3)
    assert _c(s5) == {("one_dim", "[a_m]"), ("pi1", "0")}
    s8 = bm.bm_solve("8_split", 4, 3)
    assert _c(s8) == {("steinberg", "[a_m] + [a_r]"), ("one_dim", "[a_m]")}
    for s in (s7, s5, s8):
        assert s.feasible and s.unique and s.round_trip()


@pytest.mark.parametrize("q, l", [(2, 3), (4, 3), (2, 5), (8, 3), (7, 3)])
def test_every_applicable_case_solves(q, l):
    for case in bm.cases_for(q, l):
        sol = bm.bm_solve(case, q, l)
        assert sol.feasible and sol.round_trip(), case
        assert all(c.is_effective() for c in sol.cycles.values())


def test_infeasible_table_is_reported(monkeypatch):
    # make Z(tau_xi) exceed Z(tau_1) in case 5: no effective solution exists
    real = bm.cycle_table

    def fake(case, q, l):
        table = real(case, q, l)
        return {t: (Cycle.parse("2[a_m]") if t.kind == "tau_xi" else z) for t, z in table.items()}

    monkeypatch.setattr(bm, "cycle_table", fake)
    sol = bm.bm_solve("5", 2, 3)
    assert not sol.feasible and "not effective" in sol.violation
    assert not sol.round_trip()


def test_inconsistent_system_names_combination():
    x, pivots, bad = bm._solve_exact([[1, 0], [1, 0]], [1, 2])
    assert x is None and bad == [-1, 1]


def test_solution_json_is_stable():
    a = bm.bm_solve("8_split", 4, 3).to_json()
    b = bm.bm_solve("8_split", 4, 3).to_json()
    assert a == b and a["round_trip"]
