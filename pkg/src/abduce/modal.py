"""Modal propositional sentences, the modality retraction and finite Kripke semantics.

Satisfaction is global: a Kripke model satisfies a sentence when every world
does.  ``[]`` is box and ``<>`` is diamond; both bind like negation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from ._lex import TokenStream
from .errors import UnknownSymbolError
from .pl import (BOT, TOP, And, Bot, Formula, Implies, Not, Or, Top, Var, conj, disj)
from . import fol


@dataclass(frozen=True, repr=False)
class Box(Formula):
    arg: Formula

    def __repr__(self):
        return f"Box({self.arg!r})"


@dataclass(frozen=True, repr=False)
class Dia(Formula):
    arg: Formula

    def __repr__(self):
        return f"Dia({self.arg!r})"


ANTILOGY = BOT
_PREC = {Implies: 1, Or: 2, And: 3, Not: 4, Box: 4, Dia: 4}


def to_str(f: Formula) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, (Not, Box, Dia)):
        op = {Not: "~", Box: "[]", Dia: "<>"}[type(f)]
        inner = to_str(f.arg)
        return op + (f"({inner})" if _PREC.get(type(f.arg), 5) < 4 else inner)
    if isinstance(f, (And, Or, Implies)):
        p = _PREC[type(f)]
        sym = {And: "&", Or: "|", Implies: "->"}[type(f)]
        left, right = to_str(f.left), to_str(f.right)
        if _PREC.get(type(f.left), 5) <= p:
            left = f"({left})"
        if _PREC.get(type(f.right), 5) < p:
            right = f"({right})"
        return f"{left} {sym} {right}"
    raise TypeError(f"not a modal sentence: {f!r}")


def parse(text: str) -> Formula:
    s = TokenStream(text)
    f = _implies(s)
    s.finish()
    return f


def _implies(s):
    left = _or(s)
    if s.accept("->"):
        return Implies(left, _implies(s))
    return left


def _or(s):
    items = [_and(s)]
    while s.accept("|"):
        items.append(_and(s))
    return disj(*items)


def _and(s):
    items = [_unary(s)]
    while s.accept("&"):
        items.append(_unary(s))
    return conj(*items)


def _unary(s):
    if s.accept("~") or s.accept("!"):
        return Not(_unary(s))
    if s.accept("[]"):
        return Box(_unary(s))
    if s.accept("<>"):
        return Dia(_unary(s))
    if s.accept("("):
        f = _implies(s)
        s.expect(")")
        return f
    tok = s.expect_ident("formula")
    if tok.value == "top":
        return TOP
    if tok.value == "bot":
        return BOT
    return Var(tok.value)


def is_modality_free(f: Formula) -> bool:
    if isinstance(f, (Box, Dia)):
        return False
    if isinstance(f, Not):
        return is_modality_free(f.arg)
    if isinstance(f, (And, Or, Implies)):
        return is_modality_free(f.left) and is_modality_free(f.right)
    return True


def split_prefix(f: Formula) -> tuple[list[str], Formula]:
    """Leading modalities (``"B"`` or ``"D"``) and the core below them."""
    prefix = []
    while isinstance(f, (Box, Dia)):
        prefix.append("B" if isinstance(f, Box) else "D")
        f = f.arg
    return prefix, f


def join_prefix(prefix: Sequence[str], core: Formula) -> Formula:
    for m in reversed(prefix):
        core = Box(core) if m == "B" else Dia(core)
    return core


def modal_variables(*formulas: Formula) -> list[str]:
    out: dict[str, None] = {}

    def walk(f):
        if isinstance(f, Var):
            out.setdefault(f.name)
        elif isinstance(f, (Not, Box, Dia)):
            walk(f.arg)
        elif isinstance(f, (And, Or, Implies)):
            walk(f.left)
            walk(f.right)

    for f in formulas:
        walk(f)
    return list(out)


# ---------------------------------------------------------------------------
# The retraction


def _kappa_block(f: Formula) -> Formula:
    prefix, core = split_prefix(f)
    if not is_modality_free(core):
        raise ValueError(f"not in modal normal form: {to_str(f)}")
    if not prefix:
        return ANTILOGY
    flips = [i for i, m in enumerate(prefix) if m == "D"]
    if flips:
        options = []
        for i in flips:
            p = list(prefix)
            p[i] = "B"
            options.append(join_prefix(p, core))
        return disj(*dict.fromkeys(options))
    # all-box prefix: drop the outermost box
    return join_prefix(prefix[1:], core)


def _disjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, Or):
        return _disjuncts(f.left) + _disjuncts(f.right)
    return [f]


def kappa_mpl(f: Formula) -> Formula:
    """One retraction step: flip a single ◇ to □ when any ◇ occurs, else strip the outer □."""
    if isinstance(f, Bot):
        return ANTILOGY
    if isinstance(f, And):
        left, right = kappa_mpl(f.left), kappa_mpl(f.right)
        if isinstance(left, Bot) or isinstance(right, Bot):
            return ANTILOGY
        return And(left, right)
    if isinstance(f, Or):
        parts = [p for p in (kappa_mpl(f.left), kappa_mpl(f.right)) if not isinstance(p, Bot)]
        return disj(*dict.fromkeys(d for p in parts for d in _disjuncts(p))) if parts else ANTILOGY
    return _kappa_block(f)


def mpl_chain(f: Formula, max_k: int = 64) -> list[Formula]:
    chain = [f]
    while not isinstance(chain[-1], Bot):
        if len(chain) > max_k:
            raise ValueError(f"no antilogy within {max_k} steps")
        chain.append(kappa_mpl(chain[-1]))
    return chain


def modality_count(f: Formula) -> int:
    if isinstance(f, (Box, Dia)):
        return 1 + modality_count(f.arg)
    if isinstance(f, Not):
        return modality_count(f.arg)
    if isinstance(f, (And, Or, Implies)):
        return modality_count(f.left) + modality_count(f.right)
    return 0


def diamond_count(f: Formula) -> int:
    if isinstance(f, Dia):
        return 1 + diamond_count(f.arg)
    if isinstance(f, (Box, Not)):
        return diamond_count(f.arg)
    if isinstance(f, (And, Or, Implies)):
        return diamond_count(f.left) + diamond_count(f.right)
    return 0


# ---------------------------------------------------------------------------
# Kripke models


@dataclass(frozen=True)
class KripkeModel:
    worlds: int
    R: frozenset[tuple[int, int]]
    val: tuple[frozenset[str], ...]

    def __post_init__(self):
        if self.worlds < 1 or len(self.val) != self.worlds:
            raise ValueError("need at least one world and one valuation per world")
        object.__setattr__(self, "R", frozenset(tuple(p) for p in self.R))

    def successors(self, w: int) -> list[int]:
        return [j for (i, j) in self.R if i == w]

    def to_json(self) -> dict:
        return {
            "worlds": self.worlds,
            "R": [list(p) for p in sorted(self.R)],
            "val": {str(w): {x: True for x in sorted(self.val[w])} for w in range(self.worlds)},
        }

    @classmethod
    def from_json(cls, data: dict) -> "KripkeModel":
        n = int(data["worlds"])
        val = data.get("val", {})
        worlds = tuple(frozenset(x for x, b in val.get(str(w), {}).items() if b) for w in range(n))
        return cls(n, frozenset(tuple(p) for p in data.get("R", [])), worlds)


def load_kripke(path: str | Path) -> KripkeModel:
    return KripkeModel.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def eval_world(f: Formula, m: KripkeModel, w: int) -> bool:
    if isinstance(f, Var):
        return f.name in m.val[w]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not eval_world(f.arg, m, w)
    if isinstance(f, And):
        return eval_world(f.left, m, w) and eval_world(f.right, m, w)
    if isinstance(f, Or):
        return eval_world(f.left, m, w) or eval_world(f.right, m, w)
    if isinstance(f, Implies):
        return (not eval_world(f.left, m, w)) or eval_world(f.right, m, w)
    if isinstance(f, Box):
        return all(eval_world(f.arg, m, v) for v in m.successors(w))
    if isinstance(f, Dia):
        return any(eval_world(f.arg, m, v) for v in m.successors(w))
    raise TypeError(f"not a modal sentence: {f!r}")


def eval_mpl(f: Formula, m: KripkeModel) -> bool:
    """Global satisfaction: true at every world."""
    return all(eval_world(f, m, w) for w in range(m.worlds))


def kripke_models(variables: Sequence[str], max_worlds: int) -> Iterator[KripkeModel]:
    """All Kripke models with 1..max_worlds worlds over ``variables``."""
    if max_worlds > 3 or len(variables) > 2:
        raise ValueError("enumeration capped at 3 worlds and 2 variables")
    names = list(variables)
    for n in range(1, max_worlds + 1):
        pairs = [(i, j) for i in range(n) for j in range(n)]
        per_world = [frozenset(c for c, b in zip(names, bits) if b)
                     for bits in product((0, 1), repeat=len(names))]
        for rbits in range(1 << len(pairs)):
            rel = frozenset(p for k, p in enumerate(pairs) if rbits >> k & 1)
            for val in product(per_world, repeat=n):
                yield KripkeModel(n, rel, tuple(val))


# ---------------------------------------------------------------------------
# Standard translation into first-order logic

ACCESS = "acc"


def standard_translation(f: Formula, x: str = "x0", depth: int = 0) -> Formula:
    """``ST_x``: variables become unary predicates, modalities quantify over ``acc``."""
    if isinstance(f, Var):
        return fol.Atom(f.name, (x,))
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(standard_translation(f.arg, x, depth))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(standard_translation(f.left, x, depth), standard_translation(f.right, x, depth))
    y = f"x{depth + 1}"
    inner = standard_translation(f.arg, y, depth + 1)
    edge = fol.Atom(ACCESS, (x, y))
    if isinstance(f, Box):
        return fol.Forall(y, Implies(edge, inner))
    if isinstance(f, Dia):
        return fol.Exists(y, And(edge, inner))
    raise TypeError(f"not a modal sentence: {f!r}")


def global_translation(f: Formula) -> Formula:
    return fol.Forall("x0", standard_translation(f))


def to_interpretation(m: KripkeModel, variables: Iterable[str]) -> fol.FiniteInterpretation:
    rel = {ACCESS: frozenset(m.R)}
    for x in variables:
        if x == ACCESS:
            raise UnknownSymbolError(f"variable name {ACCESS!r} is reserved for the translation")
        rel[x] = frozenset((w,) for w in range(m.worlds) if x in m.val[w])
    return fol.FiniteInterpretation(m.worlds, rel)


# ---------------------------------------------------------------------------
# Verification


@dataclass
class MplRetractionReport:
    sentence: str
    models_checked: int = 0
    anti_extensivity_violations: list[KripkeModel] = field(default_factory=list)
    # violations where the offending world has no successor
    violations_at_dead_ends: int = 0
    steps_to_antilogy: int = 0
    step_bound: int = 0

    @property
    def ok(self) -> bool:
        return not self.anti_extensivity_violations and self.steps_to_antilogy <= self.step_bound


def verify_mpl_retraction(sentences: Iterable[Formula], max_worlds: int = 3,
                          keep: int = 5) -> list[MplRetractionReport]:
    """Measure one-step anti-extensivity over all small Kripke models, plus syntactic vacuum.

    At most ``keep`` counterexample models are stored per sentence.
    """
    reports = []
    for s in sentences:
        k = kappa_mpl(s)
        names = modal_variables(s)
        rep = MplRetractionReport(to_str(s))
        for m in kripke_models(names, max_worlds):
            rep.models_checked += 1
            if eval_mpl(k, m) and not eval_mpl(s, m):
                if len(rep.anti_extensivity_violations) < keep:
                    rep.anti_extensivity_violations.append(m)
                bad = [w for w in range(m.worlds) if not eval_world(s, m, w)]
                if any(not m.successors(w) for w in bad):
                    rep.violations_at_dead_ends += 1
        rep.steps_to_antilogy = len(mpl_chain(s)) - 1
        rep.step_bound = modality_count(s) + diamond_count(s) + 1
        reports.append(rep)
    return reports


def count_violations(s: Formula, max_worlds: int = 3) -> tuple[int, int]:
    """``(violations, serial_violations)``: counterexamples overall and among serial models."""
    k = kappa_mpl(s)
    total = serial = 0
    for m in kripke_models(modal_variables(s), max_worlds):
        if eval_mpl(k, m) and not eval_mpl(s, m):
            total += 1
            if all(m.successors(w) for w in range(m.worlds)):
                serial += 1
    return total, serial
