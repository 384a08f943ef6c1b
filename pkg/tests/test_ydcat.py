"""Tests for the module/comodule compatibility layer and the braiding."""

from __future__ import annotations

import pytest

from hopfbench.doubles import factor_structures, heisenberg_chain
from hopfbench.sparse import veq
from hopfbench.taft import taft_system
from hopfbench.ydcat import (
    braiding_row, check_braided_commutative, check_braided_symmetric,
    check_comodule, check_comodule_algebra, check_factor_embeddings,
    check_locked_identity, check_module, check_module_algebra,
    check_rebracketing, check_yd, flip_isomorphism, yang_baxter_check,
)


@pytest.fixture(scope="module")
def sys2():
    return taft_system(2)


@pytest.fixture(scope="module")
def factors(sys2):
    return factor_structures(sys2.double)


def test_module_laws(sys2):
    res = check_module(sys2.yd, mode="generators")
    assert res.status == "pass"
    assert res.cases_checked == 14_352


def test_module_algebra_laws(sys2):
    res = check_module_algebra(sys2.yd, mode="generators")
    assert res.status == "pass"
    assert res.cases_checked == 10_320


def test_comodule_laws(sys2):
    res = check_comodule(sys2.yd)
    assert res.status == "pass"
    assert res.cases_checked == 2 * sys2.yd.algebra.dim


def test_comodule_algebra_laws(sys2):
    res = check_comodule_algebra(sys2.yd, mode="exhaustive")
    assert res.status == "pass"
    assert res.cases_checked == 256 * 256 + 1


def test_yd_compatibility(sys2):
    res = check_yd(sys2.yd, mode="generators")
    assert res.status == "pass"
    assert res.cases_checked == 11_024


def test_factor_braided_commutativity(factors):
    for mod in factors:
        res = check_braided_commutative(mod, mode="exhaustive")
        assert res.status == "pass"
        assert res.cases_checked == mod.algebra.dim ** 2


def test_pair_braided_symmetric(factors):
    dual_yd, base_yd = factors
    assert check_braided_symmetric(dual_yd, base_yd,
                                   mode="exhaustive").status == "pass"
    assert check_locked_identity(dual_yd, base_yd,
                                 mode="exhaustive").status == "pass"


def test_flip_is_isomorphism(factors):
    dual_yd, base_yd = factors
    _, checks = flip_isomorphism(dual_yd, base_yd, mode="exhaustive")
    names = {c.name for c in checks}
    assert names == {"flip-bijective", "flip-algebra-morphism",
                     "flip-module-morphism", "flip-comodule-morphism"}
    assert all(c.status == "pass" for c in checks)


def test_rebracketing(factors):
    dual_yd, base_yd = factors
    res = check_rebracketing(dual_yd, base_yd, dual_yd, mode="sample",
                             samples=200)
    assert res.status == "pass"


def test_yang_baxter(sys2):
    res = yang_baxter_check(sys2.yd, mode="sample", samples=50)
    assert res.status == "pass"


def test_braiding_row_against_product(sys2, factors):
    """On a braided-commutative algebra, multiplying the braiding legs of
    y (x) x back together gives y x."""
    dual_yd, _ = factors
    A = dual_yd.algebra
    for iy in range(A.dim):
        for ix in range(A.dim):
            flat = braiding_row(dual_yd, dual_yd, iy, ix)
            prod = {}
            for key, c in flat.items():
                xp, y0 = divmod(key, A.dim)
                for k, ck in A.mult.get(xp, y0):
                    val = c * ck
                    if val:
                        prod[k] = prod.get(k, A.ctx.zero) + val
            prod = {k: v for k, v in prod.items() if v}
            assert veq(prod, dict(A.mult.get(iy, ix)))


def test_chain_embeddings(sys2):
    ch2 = heisenberg_chain(sys2.pair.primal, 2, leftmost="dual",
                           D=sys2.double)
    res = check_factor_embeddings(ch2)
    assert res.status == "pass"
