import pytest

from abduce.cutting import Cutting
from abduce.errors import InconsistentError, UnsupportedError
from abduce.explain import (ExplanationQuery, Generic, Lcr, Lnr, Reason, Tableau, characterize,
                            characterize_models, cutting_for, explains, in_expla,
                            maximal_accepted_classes, min_model_mismatches)
from abduce.morphology import hamming_ball, restricted_ball, restricted_ring
from abduce.pl import ModelSet, models, parse, theory_models
from abduce.retraction import erosion_retraction

CUBE_T = (parse("a | b | c"),)
CUBE_PHI = parse("a & ~b & ~c | a & ~b & c | a & b & ~c")
TRIPTYCH = (parse("a -> c"), parse("b -> c"), parse("a | b"))


def query(theory, phi, psi, relation, sig):
    return explains(ExplanationQuery(tuple(theory), phi, parse(psi), relation, sig))


def test_cube_characterizing_sets(abc):
    k = erosion_retraction(hamming_ball(abc))
    assert characterize_models(CUBE_T, CUBE_PHI, Lcr(k), abc).bitstrings() == ["110", "101"]
    assert characterize_models(CUBE_T, CUBE_PHI, Lnr(k), abc).bitstrings() == ["100", "110", "101"]


def test_cube_single_minterm_candidate(abc):
    k = erosion_retraction(hamming_ball(abc))
    lnr = query(CUBE_T, CUBE_PHI, "a & ~b & ~c", Lnr(k), abc)
    lcr = query(CUBE_T, CUBE_PHI, "a & ~b & ~c", Lcr(k), abc)
    assert lnr.accepted and lnr.reason is Reason.ACCEPTED
    assert not lcr.accepted and lcr.reason is Reason.NOT_CONTAINED_IN_ANY_MINIMAL


def test_characterize_formula_is_full_dnf(abc):
    k = erosion_retraction(hamming_ball(abc))
    psi = characterize(CUBE_T, CUBE_PHI, Lcr(k), abc)
    assert models(psi, abc).bitstrings() == ["110", "101"]


def test_triptych_hamming(abc):
    k = erosion_retraction(hamming_ball(abc))
    assert query(TRIPTYCH, parse("c"), "a | b", Lcr(k), abc).accepted


def test_triptych_restricted_ball(abc):
    k = erosion_retraction(restricted_ball(abc, ["a", "b"]))
    assert query(TRIPTYCH, parse("c"), "a & b", Lcr(k), abc).accepted
    assert not query(TRIPTYCH, parse("c"), "a | b", Lcr(k), abc).accepted


def test_triptych_ring(abc):
    k = erosion_retraction(restricted_ring(abc, ["a", "b"]))
    assert characterize_models(TRIPTYCH, parse("c"), Lcr(k), abc).bitstrings() == ["101", "011"]
    assert not query(TRIPTYCH, parse("c"), "a & b", Lcr(k), abc).accepted


def test_inconsistent_candidate(abc):
    k = erosion_retraction(hamming_ball(abc))
    v = query(CUBE_T, CUBE_PHI, "~a & ~b & ~c", Lcr(k), abc)
    assert not v.accepted and v.reason is Reason.NOT_CONSISTENT_WITH_T
    assert v.to_json()["reason"] == "NotConsistentWithT"


def test_inconsistent_observation_raises(abc):
    k = erosion_retraction(hamming_ball(abc))
    with pytest.raises(InconsistentError):
        query(CUBE_T, parse("~a & ~b & ~c"), "a", Lcr(k), abc)


def test_verdict_json(abc):
    k = erosion_retraction(hamming_ball(abc))
    v = query(CUBE_T, CUBE_PHI, "a & b & ~c", Lcr(k), abc)
    assert v.to_json(parse("a")) == {"accepted": True, "reason": "Accepted",
                                     "witness_models": ["110", "101"], "characterizing_formula": "a"}


def test_generic_relation_with_two_minima(abc):
    a, b = ModelSet.from_bitstrings(abc, ["100"]), ModelSet.from_bitstrings(abc, ["010"])
    c = Cutting.of(a | b, [a, b, a | b]).check()
    rel = Generic(c)
    assert query((), parse("a & ~b & ~c | ~a & b & ~c"), "a & ~b & ~c", rel, abc).accepted
    assert not query((), parse("a & ~b & ~c | ~a & b & ~c"), "a & ~b & ~c | ~a & b & ~c", rel, abc).accepted
    with pytest.raises(UnsupportedError):
        characterize_models((), parse("a"), rel, abc)
    assert [m.bitstrings()[:1] for m in maximal_accepted_classes((), parse("a"), rel, abc)] == [["100"], ["010"]]


def test_two_minima_break_min_model_characterization(abc):
    a, b = ModelSet.from_bitstrings(abc, ["100"]), ModelSet.from_bitstrings(abc, ["010"])
    c = Cutting.of(a | b, [a, b, a | b]).check()
    # Mod(ψ) = {100, 010}: inside the ⪯-minimal models but in no single minimal member
    assert ModelSet.from_bitstrings(abc, ["100", "010"]) in min_model_mismatches([], c)


def test_maximal_accepted_classes_include_outside_models(abc):
    k = erosion_retraction(hamming_ball(abc))
    (cls,) = maximal_accepted_classes(CUBE_T, CUBE_PHI, Lcr(k), abc)
    assert cls == ModelSet.from_bitstrings(abc, ["110", "101", "000"])


def test_in_expla(abc):
    assert in_expla(list(TRIPTYCH), parse("c"), parse("a"), abc)
    assert not in_expla(list(TRIPTYCH), parse("c"), parse("~c"), abc)


def test_tableau_relation_dispatch(abc):
    c = cutting_for(list(TRIPTYCH), parse("c"), Tableau(), abc)
    assert c.validate()
    assert c.base == theory_models(TRIPTYCH, abc) & models(parse("c"), abc)
