"""Relational first-order sentences, the ∃→∀ retraction and finite-domain semantics.

Sentences reuse the propositional connectives and add :class:`Atom`,
:class:`Forall` and :class:`Exists`.  Terms are variable names or numerals;
a numeral ``i`` denotes domain element ``i``.  The antilogy is ``bot``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from ._lex import TokenStream
from .errors import InconsistentError, ParseError, UnknownSymbolError, UnsupportedError
from .pl import (BOT, TOP, And, Bot, Formula, Implies, Not, Or, Top, Var, conj, disj)
from . import pl

MAX_DOMAIN = 4


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    pred: str
    args: tuple[str, ...] = ()

    def __repr__(self):
        return f"Atom({self.pred!r}, {self.args!r})"


@dataclass(frozen=True, repr=False)
class Forall(Formula):
    var: str
    body: Formula

    def __repr__(self):
        return f"Forall({self.var!r}, {self.body!r})"


@dataclass(frozen=True, repr=False)
class Exists(Formula):
    var: str
    body: Formula

    def __repr__(self):
        return f"Exists({self.var!r}, {self.body!r})"


ANTILOGY = BOT
_QUANT = (Forall, Exists)


# ---------------------------------------------------------------------------
# Printing and parsing


def to_str(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.pred + (f"({','.join(f.args)})" if f.args else "")
    if isinstance(f, _QUANT):
        word = "forall" if isinstance(f, Forall) else "exists"
        return f"{word} {f.var}. {to_str(f.body)}"
    if isinstance(f, (Top, Bot, Var)):
        return pl.to_str(f)
    if isinstance(f, Not):
        inner = to_str(f.arg)
        return "~" + (f"({inner})" if _prec(f.arg) < 4 else inner)
    if isinstance(f, (And, Or, Implies)):
        p = _prec(f)
        sym = {And: "&", Or: "|", Implies: "->"}[type(f)]
        left, right = to_str(f.left), to_str(f.right)
        if _prec(f.left) <= p:
            left = f"({left})"
        if _prec(f.right) < p:
            right = f"({right})"
        return f"{left} {sym} {right}"
    raise TypeError(f"not a first-order sentence: {f!r}")


def _prec(f: Formula) -> int:
    # quantifiers extend as far right as possible, so they bind loosest of all
    if isinstance(f, _QUANT):
        return 0
    return {Implies: 1, Or: 2, And: 3, Not: 4}.get(type(f), 5)


def parse(text: str) -> Formula:
    """``forall x. exists y. p(x,y) & q(y)``; quantifier scope extends rightwards."""
    s = TokenStream(text)
    f = _implies(s)
    s.finish()
    return f


def _implies(s: TokenStream) -> Formula:
    left = _or(s)
    if s.accept("->"):
        return Implies(left, _implies(s))
    return left


def _or(s: TokenStream) -> Formula:
    items = [_and(s)]
    while s.accept("|"):
        items.append(_and(s))
    return disj(*items)


def _and(s: TokenStream) -> Formula:
    items = [_unary(s)]
    while s.accept("&"):
        items.append(_unary(s))
    return conj(*items)


def _unary(s: TokenStream) -> Formula:
    if s.accept("~") or s.accept("!"):
        return Not(_unary(s))
    if s.accept("("):
        f = _implies(s)
        s.expect(")")
        return f
    for word, node in (("forall", Forall), ("exists", Exists)):
        if s.accept(word):
            names = [s.expect_ident("bound variable").value]
            while s.accept(","):
                names.append(s.expect_ident("bound variable").value)
            s.expect(".")
            body = _implies(s)
            for name in reversed(names):
                body = node(name, body)
            return body
    tok = s.expect_ident("formula")
    if tok.value == "top":
        return TOP
    if tok.value == "bot":
        return BOT
    args: list[str] = []
    if s.accept("("):
        while True:
            t = s.peek
            if t.kind not in ("ident", "num"):
                s.error("expected a term")
            s.next()
            args.append(t.value)
            if not s.accept(","):
                break
        s.expect(")")
    return Atom(tok.value, tuple(args))


def parse_theory(text: str) -> list[Formula]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        if line.strip():
            out.append(parse(line))
    return out


# ---------------------------------------------------------------------------
# Structure


def predicates(*formulas: Formula) -> dict[str, int]:
    """Predicate names with their arities; inconsistent arities are rejected."""
    out: dict[str, int] = {}

    def walk(f: Formula):
        if isinstance(f, Atom):
            if out.setdefault(f.pred, len(f.args)) != len(f.args):
                raise ParseError(f"predicate {f.pred!r} used with two arities", 0)
        elif isinstance(f, Not):
            walk(f.arg)
        elif isinstance(f, (And, Or, Implies)):
            walk(f.left)
            walk(f.right)
        elif isinstance(f, _QUANT):
            walk(f.body)
        elif isinstance(f, Var):
            out.setdefault(f.name, 0)

    for f in formulas:
        walk(f)
    return out


def free_variables(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {a for a in f.args if not a.isdigit()}
    if isinstance(f, Not):
        return free_variables(f.arg)
    if isinstance(f, (And, Or, Implies)):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, _QUANT):
        return free_variables(f.body) - {f.var}
    return set()


def prenex_split(f: Formula) -> tuple[list[tuple[str, str]], Formula]:
    """Leading quantifier prefix as ``[("A"|"E", var), ...]`` and the remaining matrix."""
    prefix = []
    while isinstance(f, _QUANT):
        prefix.append(("A" if isinstance(f, Forall) else "E", f.var))
        f = f.body
    return prefix, f


def prenex_join(prefix: Sequence[tuple[str, str]], matrix: Formula) -> Formula:
    for q, v in reversed(prefix):
        matrix = (Forall if q == "A" else Exists)(v, matrix)
    return matrix


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, _QUANT):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.arg)
    if isinstance(f, (And, Or, Implies)):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return True


def rename(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename variables in a quantifier-free formula."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(mapping.get(a, a) for a in f.args))
    if isinstance(f, Not):
        return Not(rename(f.arg, mapping))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(rename(f.left, mapping), rename(f.right, mapping))
    return f


def prenex_conjunction(*sentences: Formula) -> Formula:
    """Merge prenex sentences into one prenex sentence.

    ``(∀x.A) ∧ (∃w.B)`` becomes ``∀x.∃w.(A ∧ B)``: sound because no bound variable
    occurs free in another conjunct.  Clashing bound variables are renamed apart.
    """
    prefix: list[tuple[str, str]] = []
    matrices = []
    used: set[str] = set()
    for s in sentences:
        p, m = prenex_split(s)
        if not is_quantifier_free(m):
            raise ValueError(f"not in prenex form: {to_str(s)}")
        mapping: dict[str, str] = {}
        for q, v in p:
            fresh, i = v, 1
            while fresh in used:
                fresh, i = f"{v}{i}", i + 1
            used.add(fresh)
            mapping[v] = fresh
            prefix.append((q, fresh))
        matrices.append(rename(m, mapping))
    return prenex_join(prefix, conj(*matrices))


# ---------------------------------------------------------------------------
# The retraction


def _kappa_block(f: Formula) -> Formula:
    prefix, matrix = prenex_split(f)
    if not is_quantifier_free(matrix):
        raise ValueError(f"not in prenex form: {to_str(f)}")
    flips = [i for i, (q, _) in enumerate(prefix) if q == "E"]
    if not flips:
        # all-universal (including quantifier-free): retract to the antilogy
        return ANTILOGY
    options = []
    for i in flips:
        p = list(prefix)
        p[i] = ("A", p[i][1])
        options.append(prenex_join(p, matrix))
    return disj(*options)


def _disjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, Or):
        return _disjuncts(f.left) + _disjuncts(f.right)
    return [f]


def kappa_fol(f: Formula) -> Formula:
    """One ∃→∀ retraction step on a conjunction/disjunction of prenex sentences.

    Conjunctions map conjunct-wise and disjunctions disjunct-wise; antilogy
    components absorb a conjunction and vanish from a disjunction.
    """
    if isinstance(f, Bot):
        return ANTILOGY
    if isinstance(f, And):
        left, right = kappa_fol(f.left), kappa_fol(f.right)
        if isinstance(left, Bot) or isinstance(right, Bot):
            return ANTILOGY
        return And(left, right)
    if isinstance(f, Or):
        parts = [p for p in (kappa_fol(f.left), kappa_fol(f.right)) if not isinstance(p, Bot)]
        return disj(*dict.fromkeys(d for p in parts for d in _disjuncts(p))) if parts else ANTILOGY
    return _kappa_block(f)


def fol_chain(f: Formula, max_k: int = 64) -> list[Formula]:
    """``[f, κ(f), κ²(f), ...]`` up to and including the antilogy."""
    chain = [f]
    while not isinstance(chain[-1], Bot):
        if len(chain) > max_k:
            raise ValueError(f"no antilogy within {max_k} steps")
        chain.append(kappa_fol(chain[-1]))
    return chain


def quantifier_count(f: Formula) -> int:
    if isinstance(f, _QUANT):
        return 1 + quantifier_count(f.body)
    if isinstance(f, Not):
        return quantifier_count(f.arg)
    if isinstance(f, (And, Or, Implies)):
        return quantifier_count(f.left) + quantifier_count(f.right)
    return 0


def existential_count(f: Formula) -> int:
    if isinstance(f, Exists):
        return 1 + existential_count(f.body)
    if isinstance(f, Forall):
        return existential_count(f.body)
    if isinstance(f, Not):
        return existential_count(f.arg)
    if isinstance(f, (And, Or, Implies)):
        return existential_count(f.left) + existential_count(f.right)
    return 0


# ---------------------------------------------------------------------------
# Finite interpretations


@dataclass(frozen=True)
class FiniteInterpretation:
    domain_size: int
    relations: Mapping[str, frozenset[tuple[int, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= self.domain_size:
            raise ValueError("domain must be nonempty")
        object.__setattr__(self, "relations",
                           {k: frozenset(tuple(t) for t in v) for k, v in self.relations.items()})

    def __hash__(self):
        return hash((self.domain_size, tuple(sorted((k, tuple(sorted(v))) for k, v in self.relations.items()))))

    def to_json(self) -> dict:
        out: dict = {"domain_size": self.domain_size}
        for name in sorted(self.relations):
            out[name] = [list(t) for t in sorted(self.relations[name])]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FiniteInterpretation":
        rel = {k: frozenset(tuple(t) for t in v) for k, v in data.items() if k != "domain_size"}
        return cls(int(data["domain_size"]), rel)

    def __str__(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def load_interpretation(path: str | Path) -> FiniteInterpretation:
    return FiniteInterpretation.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def _term(t: str, env: Mapping[str, int], size: int) -> int:
    if t.isdigit():
        v = int(t)
        if v >= size:
            raise UnknownSymbolError(f"constant {t} outside domain of size {size}")
        return v
    try:
        return env[t]
    except KeyError:
        raise UnknownSymbolError(f"free variable {t!r}") from None


def eval_fol(f: Formula, interp: FiniteInterpretation, env: Mapping[str, int] | None = None) -> bool:
    """Classical satisfaction by expanding quantifiers over the finite domain."""
    env = env or {}
    n = interp.domain_size
    if isinstance(f, Atom):
        if f.pred not in interp.relations:
            raise UnknownSymbolError(f"predicate {f.pred!r} not interpreted")
        return tuple(_term(a, env, n) for a in f.args) in interp.relations[f.pred]
    if isinstance(f, Var):
        if f.name not in interp.relations:
            raise UnknownSymbolError(f"predicate {f.name!r} not interpreted")
        return () in interp.relations[f.name]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not eval_fol(f.arg, interp, env)
    if isinstance(f, And):
        return eval_fol(f.left, interp, env) and eval_fol(f.right, interp, env)
    if isinstance(f, Or):
        return eval_fol(f.left, interp, env) or eval_fol(f.right, interp, env)
    if isinstance(f, Implies):
        return (not eval_fol(f.left, interp, env)) or eval_fol(f.right, interp, env)
    if isinstance(f, Forall):
        return all(eval_fol(f.body, interp, {**env, f.var: d}) for d in range(n))
    if isinstance(f, Exists):
        return any(eval_fol(f.body, interp, {**env, f.var: d}) for d in range(n))
    raise TypeError(f"not a first-order sentence: {f!r}")


def interpretations(preds: Mapping[str, int], max_size: int, min_size: int = 1) -> Iterator[FiniteInterpretation]:
    """Every interpretation of ``preds`` over domains ``{0..n-1}``, ``min_size ≤ n ≤ max_size``."""
    if max_size > MAX_DOMAIN:
        raise ValueError(f"domain size capped at {MAX_DOMAIN}")
    names = sorted(preds)
    for n in range(min_size, max_size + 1):
        tuples = {name: list(product(range(n), repeat=preds[name])) for name in names}
        total = sum(len(t) for t in tuples.values())
        if total > 20:
            raise ValueError(f"{total} ground atoms at domain size {n}: too many to enumerate")
        for bits in range(1 << total):
            rel, shift = {}, 0
            for name in names:
                ts = tuples[name]
                rel[name] = frozenset(t for j, t in enumerate(ts) if bits >> (shift + j) & 1)
                shift += len(ts)
            yield FiniteInterpretation(n, rel)


def ground(f: Formula, size: int, env: Mapping[str, int] | None = None) -> Formula:
    """Propositional grounding over ``{0..size-1}``; atom ``p(0,1)`` becomes variable ``p_0_1``."""
    env = env or {}
    if isinstance(f, Atom):
        return Var("_".join([f.pred, *(str(_term(a, env, size)) for a in f.args)]))
    if isinstance(f, (Top, Bot, Var)):
        return f
    if isinstance(f, Not):
        return Not(ground(f.arg, size, env))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(ground(f.left, size, env), ground(f.right, size, env))
    if isinstance(f, Forall):
        return conj(*(ground(f.body, size, {**env, f.var: d}) for d in range(size)))
    if isinstance(f, Exists):
        return disj(*(ground(f.body, size, {**env, f.var: d}) for d in range(size)))
    raise TypeError(f"not a first-order sentence: {f!r}")


# ---------------------------------------------------------------------------
# Verification and the explanation pipeline


@dataclass
class FolRetractionReport:
    sentence: str
    max_domain: int
    interpretations: int = 0
    anti_extensivity_violations: list[FiniteInterpretation] = field(default_factory=list)
    steps_to_antilogy: int = 0
    step_bound: int = 0

    @property
    def ok(self) -> bool:
        return not self.anti_extensivity_violations and self.steps_to_antilogy <= self.step_bound


def verify_fol_retraction(sentences: Iterable[Formula], max_domain: int = 3) -> list[FolRetractionReport]:
    """Semantic anti-extensivity of one κ step and syntactic vacuum, per sentence."""
    if max_domain > 3:
        raise ValueError("verification is capped at domain size 3")
    reports = []
    for s in sentences:
        k = kappa_fol(s)
        rep = FolRetractionReport(to_str(s), max_domain)
        for interp in interpretations(predicates(s), max_domain):
            rep.interpretations += 1
            if eval_fol(k, interp) and not eval_fol(s, interp):
                rep.anti_extensivity_violations.append(interp)
        rep.steps_to_antilogy = len(fol_chain(s)) - 1
        rep.step_bound = quantifier_count(s) + 1
        reports.append(rep)
    return reports


@dataclass
class FolVerdict:
    relation: str
    candidate: str
    accepted: bool
    n: int
    bound: str
    counterexample: FiniteInterpretation | None
    max_domain: int
    note: str = ("bounded check: inclusion verified over every interpretation up to the "
                 "domain cap; rejections are exact, acceptances hold at the checked sizes")

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "candidate": self.candidate,
            "accepted": self.accepted,
            "n": self.n,
            "bound": self.bound,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
            "max_domain": self.max_domain,
            "note": self.note,
        }


def _has_model(f: Formula, universe: list[FiniteInterpretation]) -> bool:
    return any(eval_fol(f, i) for i in universe)


def fol_explain(theory: Sequence[Formula], phi: Formula, candidate: Formula, relation: str = "lnr",
                max_domain: int = 3, prenex: bool = True) -> FolVerdict:
    """Accept ``ψ`` iff ``T ∧ ψ`` has a finite model and each of its finite models satisfies the bound.

    The bound is ``κ^n(⋀T) ∧ φ`` for lcr and ``κ^n(⋀T ∧ φ)`` for lnr, where ``n``
    is the last step that still has a finite model.  For lnr with ``prenex``
    the sentence ``⋀T ∧ φ`` is first merged into a single prenex block.
    """
    preds = predicates(*theory, phi, candidate)
    universe = list(interpretations(preds, max_domain))
    t = conj(*theory)
    if relation == "lcr":
        chain = [conj(k, phi) if not isinstance(k, Bot) else ANTILOGY for k in fol_chain(t)]
    elif relation == "lnr":
        start = prenex_conjunction(*theory, phi) if prenex else conj(t, phi)
        chain = fol_chain(start)
    else:
        raise UnsupportedError(f"relation {relation!r} is not available for first-order logic")
    alive = [k for k, f in enumerate(chain) if not isinstance(f, Bot) and _has_model(f, universe)]
    if not alive:
        raise InconsistentError()
    n = alive[-1]
    bound = chain[n]
    cand = conj(t, candidate)
    cand_models = [i for i in universe if eval_fol(cand, i)]
    counter = next((i for i in cand_models if not eval_fol(bound, i)), None)
    accepted = bool(cand_models) and counter is None
    return FolVerdict(relation, to_str(candidate), accepted, n, to_str(bound), counter, max_domain)


TRANSITIVITY = "forall x. forall y. forall z. (p(x,y) & p(y,z) -> p(x,z))"
OBSERVATION = "exists w. p(w,w)"


def fol_lnr_example(max_domain: int = 3) -> list[FolVerdict]:
    """The transitivity example: three lnr verdicts and the lcr verdict."""
    theory = [parse(TRANSITIVITY)]
    phi = parse(OBSERVATION)
    out = [fol_explain(theory, phi, parse(c), "lnr", max_domain)
           for c in ("forall w. p(w,w)", "exists w. p(w,w)", "exists x. exists y. p(x,y) & p(y,x)")]
    out.append(fol_explain(theory, phi, parse("exists x. exists y. p(x,y) & p(y,x)"), "lcr", max_domain))
    return out
