import pytest

from abduce.errors import InconsistentError, ParseError
from abduce.fol import (ANTILOGY, OBSERVATION, TRANSITIVITY, Atom, Exists, FiniteInterpretation, Forall,
                        eval_fol, fol_chain, fol_explain, free_variables, ground, interpretations,
                        kappa_fol, parse, predicates, prenex_conjunction, prenex_split, to_str,
                        verify_fol_retraction)
from abduce.pl import BOT, Signature, models

SYM = "exists x. exists y. p(x,y) & p(y,x)"


def test_parse_and_print():
    f = parse("forall x, y. p(x,y) -> p(y,x)")
    assert f == Forall("x", Forall("y", parse("p(x,y) -> p(y,x)")))
    assert parse(to_str(f)) == f
    assert parse("exists w. p(w,w)") == Exists("w", Atom("p", ("w", "w")))


@pytest.mark.parametrize("text", ["forall . p(x)", "p(x,", "exists x p(x)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_structure_helpers():
    assert predicates(parse(TRANSITIVITY)) == {"p": 2}
    assert free_variables(parse("forall x. p(x,y)")) == {"y"}
    assert prenex_split(parse("forall x. exists y. p(x,y)")) == ([("A", "x"), ("E", "y")], Atom("p", ("x", "y")))


def test_prenex_conjunction_merges_prefixes():
    merged = prenex_conjunction(parse(TRANSITIVITY), parse(OBSERVATION))
    assert to_str(merged) == "forall x. forall y. forall z. exists w. (p(x,y) & p(y,z) -> p(x,z)) & p(w,w)"


def test_prenex_conjunction_renames_clashing_variables():
    merged = prenex_conjunction(parse("forall x. p(x,x)"), parse("exists x. ~p(x,x)"))
    assert to_str(merged) == "forall x. exists x1. p(x,x) & ~p(x1,x1)"


def test_kappa_flips_one_existential_at_a_time():
    assert [to_str(f) for f in fol_chain(parse(SYM))] == [
        SYM,
        "(forall x. exists y. p(x,y) & p(y,x)) | (exists x. forall y. p(x,y) & p(y,x))",
        "forall x. forall y. p(x,y) & p(y,x)",
        "bot",
    ]


def test_kappa_universal_and_quantifier_free_give_antilogy():
    assert ANTILOGY == BOT
    assert kappa_fol(parse("forall x. p(x,x)")) == BOT
    assert kappa_fol(parse("p(a,a)")) == BOT


def test_kappa_on_conjunction_is_componentwise():
    out = kappa_fol(parse("(exists x. p(x,x)) & (exists y. p(y,y))"))
    assert to_str(out) == "(forall x. p(x,x)) & (forall y. p(y,y))"


def test_interpretation_count_matches_formula():
    # one binary predicate: 2^(n^2) relations per domain size n
    assert sum(1 for _ in interpretations({"p": 2}, 3)) == 2 ** 1 + 2 ** 4 + 2 ** 9


def test_eval_and_json():
    i = FiniteInterpretation.from_json({"domain_size": 2, "p": [[0, 1]]})
    assert eval_fol(parse("exists x. exists y. p(x,y)"), i)
    assert not eval_fol(parse("forall x. p(x,x)"), i)
    assert i.to_json() == {"domain_size": 2, "p": [[0, 1]]}


def test_grounding_agrees_with_evaluation():
    f = parse(TRANSITIVITY)
    g = ground(f, 2)
    sig = Signature.from_formulas(g)
    for i in interpretations({"p": 2}, 2, min_size=2):
        v = sum(1 << sig.index(f"p_{x}_{y}") for (x, y) in i.relations["p"] if f"p_{x}_{y}" in sig)
        assert (v in models(g, sig)) == eval_fol(f, i)


def test_retraction_verification():
    reps = verify_fol_retraction([parse(SYM), parse(TRANSITIVITY), parse("exists x. forall y. p(x,y)")])
    assert all(r.ok for r in reps)
    assert [r.steps_to_antilogy for r in reps] == [3, 1, 2]


def test_transitivity_example_lnr():
    t = [parse(TRANSITIVITY)]
    phi = parse(OBSERVATION)
    refl = fol_explain(t, phi, parse("forall w. p(w,w)"), "lnr")
    assert refl.accepted and refl.n == 1
    for cand in ("exists w. p(w,w)", SYM):
        v = fol_explain(t, phi, parse(cand), "lnr")
        assert not v.accepted
        assert v.counterexample is not None and v.counterexample.domain_size <= 3
        assert eval_fol(parse(cand), v.counterexample)


def test_transitivity_example_lcr():
    v = fol_explain([parse(TRANSITIVITY)], parse(OBSERVATION), parse(SYM), "lcr")
    assert v.accepted and v.n == 0


def test_inconsistent_fol_observation():
    with pytest.raises(InconsistentError):
        fol_explain([parse("forall x. p(x,x)")], parse("exists x. ~p(x,x)"),
                    parse("forall x. p(x,x)"), "lnr", 2)
