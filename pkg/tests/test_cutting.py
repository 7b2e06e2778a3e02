import random

import pytest
from hypothesis import given, settings, strategies as st

from abduce.cutting import (Cutting, build_lcr, build_lnr, last_index, model_relation, oplus,
                            random_cutting, restrict)
from abduce.errors import CuttingError, DegenerateRestrictionError, InconsistentError
from abduce.explain import crosscheck_min_models
from abduce.morphology import hamming_ball
from abduce.pl import ModelSet, Signature, parse
from abduce.retraction import erosion_retraction

CUBE_T = [parse("a | b | c")]
CUBE_PHI = parse("a & ~b & ~c | a & ~b & c | a & b & ~c")


def ms(sig, *bs):
    return ModelSet.from_bitstrings(sig, bs)


@pytest.fixture
def hamming(abc):
    return erosion_retraction(hamming_ball(abc))


def test_cube_lcr_members(abc, hamming):
    c = build_lcr(CUBE_T, CUBE_PHI, hamming, abc)
    assert [m.bitstrings() for m in c.members] == [["100", "110", "101"], ["110", "101"]]
    assert c.provenance == (0, 1)
    assert last_index(c) == 1
    assert c.validate() and c.is_chain()


def test_cube_lnr_members(abc, hamming):
    c = build_lnr(CUBE_T, CUBE_PHI, hamming, abc)
    assert [m.bitstrings() for m in c.members] == [["100", "110", "101"]]
    assert last_index(c) == 0


def test_inconsistent_observation(abc, hamming):
    with pytest.raises(InconsistentError, match="inconsistent"):
        build_lcr(CUBE_T, parse("~a & ~b & ~c"), hamming, abc)
    with pytest.raises(InconsistentError):
        build_lnr(CUBE_T, parse("~a & ~b & ~c"), hamming, abc)


def test_validation_reports_each_problem(abc):
    base = ms(abc, "100", "110")
    bad = Cutting.of(base, [ms(abc, "100"), ms(abc, "110")])
    problems = bad.problems()
    assert any("base set is not a member" in p for p in problems)
    assert any("union" in p for p in problems)
    with pytest.raises(CuttingError):
        bad.check()
    outside = Cutting.of(base, [base, ms(abc, "111")])
    assert any("not below the base" in p for p in outside.problems())


def test_model_relation_on_chain(abc, hamming):
    rel = model_relation(build_lcr(CUBE_T, CUBE_PHI, hamming, abc))
    assert rel.is_reflexive() and rel.is_total() and rel.is_transitive()
    assert rel.minimal().bitstrings() == ["110", "101"]
    assert rel.strictly_below(abc.valuation("110"), abc.valuation("100"))


def test_model_relation_on_diamond_has_no_strict_order(abc):
    a, b = ms(abc, "100"), ms(abc, "010")
    c = Cutting.of(a | b, [a, b, a | b]).check()
    rel = model_relation(c)
    x, y = abc.valuation("100"), abc.valuation("010")
    # each model sits deeper on one of the two chains
    assert rel.leq(x, y) and rel.leq(y, x)
    assert not rel.strictly_below(x, y) and not rel.strictly_below(y, x)
    assert len(c.maximal_chains()) == 2
    assert rel.minimal() == a | b


def test_restrict_and_degenerate(abc, hamming):
    c = build_lcr(CUBE_T, CUBE_PHI, hamming, abc)
    r = restrict(c, parse("b"))
    assert [m.bitstrings() for m in r.members] == [["110"]]
    assert r.validate()
    with pytest.raises(DegenerateRestrictionError):
        restrict(c, parse("b & c"))


def test_restrict_keep_triv_keeps_empty_members(abc):
    a, b = ms(abc, "100"), ms(abc, "010")
    c = Cutting.of(a | b, [a, a | b])
    lit = restrict(c, b, keep_triv=True)
    assert ModelSet.empty(abc) in lit
    assert not lit.validate()


def test_oplus_is_cutting_for_disjunction(abc, hamming):
    c1 = build_lcr(CUBE_T, CUBE_PHI, hamming, abc)
    c2 = build_lcr(CUBE_T, parse("b & c"), hamming, abc)
    both = oplus(c1, c2)
    assert both.validate()
    assert both.base == c1.base | c2.base


def test_json_round_trip(abc, hamming):
    c = build_lcr(CUBE_T, CUBE_PHI, hamming, abc)
    data = c.to_json()
    assert data["members"][1] == ["110", "101"]
    assert Cutting.from_json(data) == c


@settings(max_examples=60)
@given(st.integers(1, 255), st.integers(0, 10 ** 6))
def test_random_cuttings_are_valid(bits, seed):
    sig = Signature.of("a,b,c")
    c = random_cutting(random.Random(seed), ModelSet(sig, bits))
    assert c.validate()


@settings(max_examples=60)
@given(st.integers(1, 255), st.integers(0, 10 ** 6))
def test_single_chain_cuttings_satisfy_min_characterization(bits, seed):
    sig = Signature.of("a,b,c")
    c = random_cutting(random.Random(seed), ModelSet(sig, bits), generators=1)
    assert c.is_chain()
    assert crosscheck_min_models([], None, c)
