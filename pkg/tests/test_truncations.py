"""Tests for the truncated quantum group, its Heisenberg counterpart,
the q-Weyl algebra, and the alternating z/del chains."""

from __future__ import annotations

import pytest

from hopfbench.results import invert_expected_failure
from hopfbench.sparse import veq
from hopfbench.taft import (basis_change, chain_heisenberg_checks, cqzd,
                            cqzd_center_check, h2_matches_cqzd_check,
                            heis_elements, hq_action_table_check,
                            hq_coaction_table_check, hq_elements,
                            hq_factorization_check, hqsl2, taft_system,
                            truly_heisenberg_chain, uq_elements,
                            uq_presentation_check, uqsl2)
from hopfbench.ydcat import (check_braided_commutative, check_comodule,
                             check_comodule_algebra, check_module,
                             check_module_algebra, check_yd)


def all_pass(checks):
    bad = [c.line() for c in checks if c.status != "pass"]
    assert not bad, "\n".join(bad)


# ---------------------------------------------------------------- Uq


@pytest.mark.parametrize("p,dim,gen_cases,closure_cases",
                         [(2, 16, 2720, 273), (3, 54, 14364, 2971)])
def test_uq_dimension_and_certificates(p, dim, gen_cases, closure_cases):
    uq = uqsl2(p)
    assert uq.hopf.dim == 2 * p ** 3
    assert uq.hopf.dim == dim
    assert uq.dbar.dim == 4 * p ** 3
    by_name = {c.name: c for c in uq.checks}
    assert by_name["uq-ideal-hopf"].status == "pass"
    assert by_name["uq-ideal-hopf"].cases_checked == gen_cases
    assert by_name[f"Uq(p={p})-closure"].cases_checked == closure_cases


@pytest.mark.parametrize("p,gen_cases", [(2, 16), (3, 54)])
def test_uq_presentation(p, gen_cases):
    uq = uqsl2(p)
    checks = uq_presentation_check(uq)
    all_pass(checks)
    by_name = {c.name: c for c in checks}
    assert by_name["uq-presentation-relations"].cases_checked == 7
    assert by_name["uq-presentation-generation"].cases_checked == gen_cases
    assert by_name["uq-presentation-coalgebra"].cases_checked == 9


def test_uq_commutation_relation():
    """K E K^{-1} = q^2 E inside the quotient."""
    uq = uqsl2(3)
    U = uq.hopf
    els = uq_elements(uq)
    lhs = U.product(U.product(els["K"], els["E"]), els["Kinv"])
    rhs = {i: uq.ctx.q_pow(2) * c for i, c in els["E"].items()}
    assert veq(lhs, rhs)


# ------------------------------------------------- PBW basis of H(B*)


@pytest.mark.parametrize("p", [2, 3])
def test_heisenberg_pbw_basis(p):
    sys = taft_system(p)
    bc = basis_change(sys)
    by_name = {c.name: c for c in bc.checks}
    assert by_name["heis-basis-relations"].status == "pass"
    assert by_name["heis-basis-relations"].cases_checked == 11
    assert by_name["heis-basis-lambda-order"].status == "pass"
    assert by_name["heis-basis-bijective"].cases_checked == sys.heis.algebra.dim


def test_lambda_eighth_power_is_minus_one():
    """lam^(4p) = -1 in H(B*), so lam has multiplicative order 8p."""
    sys = taft_system(2)
    A = sys.heis.algebra
    lam = heis_elements(sys)["lam"]
    v = dict(A.unit)
    for _ in range(8):
        v = A.product(v, lam)
    assert veq(v, {k: -c for k, c in dict(A.unit).items()})


# ---------------------------------------------------------------- Hq


@pytest.mark.parametrize("p,sub_cases,act_cases,ideal_cases,descent_cases",
                         [(2, 1056, 128, 64, 32),
                          (3, 11772, 432, 216, 108)])
def test_hq_transport_certificates(p, sub_cases, act_cases, ideal_cases,
                                   descent_cases):
    hq = hqsl2(p)
    assert hq.algebra.dim == 2 * p ** 3
    all_pass(hq.checks)
    by_name = {c.name: c for c in hq.checks}
    assert set(by_name) == {
        "hq-transport-sub-closure", "hq-transport-action-stable",
        "hq-transport-ideal-stable", "hq-transport-coaction-corestricts",
        "hq-transport-descent-0", "hq-lambda-power"}
    assert by_name["hq-transport-sub-closure"].cases_checked == sub_cases
    assert by_name["hq-transport-action-stable"].cases_checked == act_cases
    assert by_name["hq-transport-ideal-stable"].cases_checked == ideal_cases
    assert by_name["hq-transport-descent-0"].cases_checked == descent_cases


@pytest.mark.parametrize("p,act_rows,coact_rows", [(2, 24, 8), (3, 36, 12)])
def test_hq_structure_tables(p, act_rows, coact_rows):
    hq = hqsl2(p)
    act = hq_action_table_check(hq)
    assert act.status == "pass"
    assert act.cases_checked == act_rows
    coact = hq_coaction_table_check(hq)
    assert coact.status == "pass"
    assert coact.cases_checked == coact_rows


@pytest.mark.parametrize("p,cases", [(2, 256), (3, 2916)])
def test_hq_factorization(p, cases):
    res = hq_factorization_check(hqsl2(p))
    assert res.status == "pass"
    assert res.cases_checked == cases


def test_hq_is_yd_module_algebra():
    hq = hqsl2(2)
    results = [
        check_module(hq.yd, mode="exhaustive"),
        check_module_algebra(hq.yd, mode="exhaustive"),
        check_comodule(hq.yd),
        check_comodule_algebra(hq.yd, mode="exhaustive"),
        check_yd(hq.yd, mode="exhaustive"),
        check_braided_commutative(hq.yd, mode="exhaustive"),
    ]
    all_pass(results)
    assert [r.cases_checked for r in results] == [
        4112, 4112, 32, 257, 256, 256]


def test_hq_relations():
    """del z - q^{-2} z del = q - q^{-1}, and lam is central."""
    hq = hqsl2(3)
    ctx = hq.ctx
    A = hq.algebra
    els = hq_elements(hq)
    z, dl, lam = els["z"], els["del"], els["lam"]
    lhs = A.product(dl, z)
    qm2 = ctx.q_pow(-2)
    rhs = {k: qm2 * c for k, c in A.product(z, dl).items()}
    delta = {}
    for k, c in lhs.items():
        delta[k] = delta.get(k, ctx.zero) + c
    for k, c in rhs.items():
        delta[k] = delta.get(k, ctx.zero) - c
    delta = {k: c for k, c in delta.items() if c}
    scale = ctx.q - ctx.q_inv
    assert veq(delta, {k: scale * c for k, c in dict(A.unit).items()})
    # lam commutes with both z and del (it is central in the truncation)
    assert veq(A.product(lam, z), A.product(z, lam))
    assert veq(A.product(lam, dl), A.product(dl, lam))


# ------------------------------------------------------------- chains


def test_cqzd_relation_p2():
    w = cqzd(2)
    labels = list(w.algebra.space.labels)
    i_del, i_z = labels.index((0, 1)), labels.index((1, 0))
    row = dict(w.algebra.mult.get(i_del, i_z))
    ctx = w.ctx
    two_q = ctx.rational(2) * ctx.q
    assert veq(row, {labels.index((0, 0)): two_q,
                     labels.index((1, 1)): -ctx.one})


def test_cqzd_relation_p3():
    w = cqzd(3)
    labels = list(w.algebra.space.labels)
    i_del, i_z = labels.index((0, 1)), labels.index((1, 0))
    row = dict(w.algebra.mult.get(i_del, i_z))
    ctx = w.ctx
    const = ctx.q - ctx.q_inv                 # = -1 + 2q at p = 3
    assert veq(row, {labels.index((0, 0)): const,
                     labels.index((1, 1)): -ctx.q})


@pytest.mark.parametrize("p,cases", [(2, 4), (3, 9)])
def test_cqzd_center_is_trivial(p, cases):
    res = cqzd_center_check(cqzd(p))
    assert res.status == "pass"
    assert res.cases_checked == cases


@pytest.mark.parametrize("p", [2, 3])
def test_chain_dimensions(p):
    for n in range(1, 5):
        ch = truly_heisenberg_chain(p, n)
        assert ch.algebra.dim == p ** n


def test_chain_relation_families():
    ch = truly_heisenberg_chain(2, 4)
    checks = chain_heisenberg_checks(ch, prefix="zdel-chain4")
    all_pass(checks)
    assert {c.name for c in checks} == {
        "zdel-chain4-mixed", "zdel-chain4-z-straighten",
        "zdel-chain4-del-straighten", "zdel-chain4-nilpotent"}


@pytest.mark.parametrize("p,cases", [(2, 20), (3, 90)])
def test_h2_is_weyl_algebra(p, cases):
    """The two-step chain is isomorphic to the q-deformed polynomial
    Weyl algebra on one variable."""
    res = h2_matches_cqzd_check(truly_heisenberg_chain(p, 2))
    assert res.status == "pass"
    assert res.cases_checked == cases


def test_chain3_braided_commutativity_is_nilpotency_artifact():
    """At p=2 the three-step chain is braided-commutative only because
    squares vanish; at p=3 the like-type factors two positions apart
    give a genuine counterexample."""
    ch2 = truly_heisenberg_chain(2, 3)
    res2 = check_braided_commutative(ch2.yd, mode="exhaustive")
    assert res2.status == "pass"
    assert res2.cases_checked == 64

    ch3 = truly_heisenberg_chain(3, 3)
    res3 = check_braided_commutative(ch3.yd, mode="generators", seed=0,
                                     samples=200)
    inv = invert_expected_failure(res3, "chain3-fails-p3")
    assert inv.status == "pass"
    assert res3.witness is not None
    assert "del" in res3.witness
