"""Every deliberately corrupted fixture must be caught with a witness."""

from __future__ import annotations

import pytest

from hopfbench.mutations import MUTATIONS, mutation_suite, run_mutation

EXPECTED_WITNESS = {
    "taft-antipode-sign":
        "[antipode-convolution] m(S(x)id)comult != unit*counit on E",
    "double-antipode-conjugate":
        "[antipode-convolution] m(S(x)id)comult != unit*counit on F(x)1",
    "action-conjugation-dropped":
        "[module-algebra] M=1(x)k: M|>1 != counit(M) 1",
    "factor-coaction-swapped":
        "[comodule-coaction] coaction not coassociative at x=F",
    "hdouble-coaction-swapped":
        "[comodule-coaction] coaction not coassociative at x=1#E",
    "eta-arguments-swapped":
        "[eta-twist-swapped] M=1(x)k, N=kap(x)1: twisted product with "
        "swapped arguments disagrees with the smash product",
    "trivial-coaction":
        "[yd-condition] M=1(x)E, A=1#k: YD compatibility fails",
}


def test_registry_is_complete():
    assert len(MUTATIONS) >= 6
    assert set(MUTATIONS) == set(EXPECTED_WITNESS)


@pytest.mark.parametrize("tag", sorted(MUTATIONS))
def test_mutation_is_detected(tag):
    res = run_mutation(tag, p=2)
    assert res.status == "fail"
    assert res.name == f"mutation-{tag}"
    assert res.witness == EXPECTED_WITNESS[tag]


def test_suite_runs_in_registry_order():
    suite = mutation_suite(2)
    assert [r.name for r in suite] == [f"mutation-{t}" for t in MUTATIONS]
    assert all(r.status == "fail" and r.witness for r in suite)


def test_unknown_tag_raises():
    with pytest.raises(KeyError):
        run_mutation("no-such-fixture", p=2)
