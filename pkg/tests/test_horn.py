import pytest
from hypothesis import given, strategies as st

from abduce.errors import HornDefinabilityError, InconsistentError, ParseError
from abduce.cutting import build_lcr
from abduce.horn import (HornClause, cl_intersection, from_formula, horn_classes, horn_retraction,
                         horn_synthesize, horn_triv, is_horn, is_horn_definable,
                         is_intersection_closed, parse_clause, parse_horn)
from abduce.morphology import hamming_ball
from abduce.pl import ModelSet, Signature, models, parse
from abduce.retraction import verify_retraction

SIG = Signature.of("a,b,c")


def closure_oracle(ms):
    """Least ∩-closed superset by brute force over all supersets."""
    best = None
    for bits in range(256):
        cand = ModelSet(SIG, bits)
        if ms <= cand and is_intersection_closed(cand) and (best is None or len(cand) < len(best)):
            best = cand
    return best


def test_parse_clauses():
    assert parse_clause("a & b -> c") == HornClause(("a", "b"), "c")
    assert parse_clause("-> c") == HornClause((), "c")
    assert parse_clause("c") == HornClause((), "c")
    assert str(parse_clause("a & b -> c")) == "a & b -> c"
    with pytest.raises(ParseError):
        parse_clause("a & b")
    with pytest.raises(ParseError):
        parse_clause("a -> z", SIG)


def test_parse_horn_file_format():
    h = parse_horn("# rules\na -> b\n\n-> c\n")
    assert models(h.to_formula(), SIG).bitstrings() == ["001", "011", "111"]


def test_from_formula():
    assert is_horn(parse("(a & b -> c) & a"))
    assert not is_horn(parse("a | b"))
    with pytest.raises(HornDefinabilityError):
        from_formula(parse("a -> b | c"))


def test_closure_laws_exhaustive():
    for bits in range(256):
        ms = ModelSet(SIG, bits)
        cl = cl_intersection(ms)
        assert ms <= cl                       # extensive
        assert cl_intersection(cl) == cl      # idempotent
        assert is_intersection_closed(cl)
        assert cl == closure_oracle(ms)       # least


@given(st.integers(0, 255), st.integers(0, 255))
def test_closure_monotone(x, y):
    a, b = ModelSet(SIG, x), ModelSet(SIG, x | y)
    assert cl_intersection(a) <= cl_intersection(b)


def test_horn_class_count():
    assert sum(1 for _ in horn_classes(SIG)) == 61


def test_synthesize_round_trips_every_horn_class():
    for ms in horn_classes(SIG):
        assert horn_synthesize(ms).models(SIG) == ms


def test_synthesize_rejects_non_horn_sets():
    with pytest.raises(HornDefinabilityError):
        horn_synthesize(ModelSet.from_bitstrings(SIG, ["100", "010", "111"]))
    with pytest.raises(HornDefinabilityError):
        horn_synthesize(ModelSet.from_bitstrings(SIG, ["000"]))


def test_horn_retraction_laws():
    rep = verify_retraction(horn_retraction(hamming_ball(SIG)), SIG, horn_classes(SIG))
    assert rep.ok
    assert rep.max_steps <= 3


def test_horn_triv_makes_all_true_only_theory_inconsistent():
    k = horn_retraction(hamming_ball(SIG))
    theory = [parse("a"), parse("b"), parse("c")]
    assert horn_triv(SIG).bitstrings() == ["111"]
    with pytest.raises(InconsistentError):
        build_lcr(theory, parse("a"), k, SIG)


def test_horn_lcr_members_are_horn_definable():
    k = horn_retraction(hamming_ball(SIG))
    c = build_lcr([parse("a -> b")], parse("b"), k, SIG)
    assert c.validate()
    assert all(is_horn_definable(m) for m in c.members)
