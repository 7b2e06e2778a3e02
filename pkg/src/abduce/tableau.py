"""Propositional semantic tableaux and the explanations read off open branches.

States are sequences of branches; a branch is an ordered, duplicate-free tuple
of formulas.  The schedule is deterministic: take the first branch that still
holds a non-literal, take its first non-literal, and expand that formula in
every branch containing it.  Closed branches are dropped after each step.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .cutting import Cutting
from .errors import AbductionError, InconsistentError
from .pl import (BOT, TOP, And, Bot, Formula, Implies, ModelSet, Not, Or, Signature, Top, Var,
                 conj, disj, models, theory_models, to_str)

Branch = tuple[Formula, ...]


@dataclass(frozen=True)
class TableauState:
    gamma: tuple[Branch, ...]
    step: int = 1

    @property
    def closed(self) -> bool:
        return not self.gamma

    @property
    def saturated(self) -> bool:
        return all(is_atomic(f) for b in self.gamma for f in b)

    def render(self) -> str:
        branches = ", ".join("{" + ", ".join(to_str(f) for f in b) + "}" for b in self.gamma)
        return f"G{self.step} = {{{branches}}}"

    def to_json(self) -> dict:
        return {"step": self.step, "branches": [[to_str(f) for f in b] for b in self.gamma]}


def is_atomic(f: Formula) -> bool:
    """Literals and the constants need no further expansion."""
    return isinstance(f, (Var, Top, Bot)) or (isinstance(f, Not) and isinstance(f.arg, Var))


def _negate_literal(f: Formula) -> Formula:
    return f.arg if isinstance(f, Not) else Not(f)


def is_closed(branch: Branch) -> bool:
    present = set(branch)
    return BOT in present or any(isinstance(f, Var) and Not(f) in present for f in present)


def _expand(f: Formula) -> list[list[Formula]]:
    """Alternatives produced by the rule for ``f`` (one list for α, two for β)."""
    if isinstance(f, And):
        return [[f.left, f.right]]
    if isinstance(f, Or):
        return [[f.left], [f.right]]
    if isinstance(f, Implies):
        return [[Not(f.left)], [f.right]]
    if isinstance(f, Not):
        g = f.arg
        if isinstance(g, Not):
            return [[g.arg]]
        if isinstance(g, Top):
            return [[BOT]]
        if isinstance(g, Bot):
            return [[TOP]]
        if isinstance(g, Or):
            return [[Not(g.left), Not(g.right)]]
        if isinstance(g, Implies):
            return [[g.left, Not(g.right)]]
        if isinstance(g, And):
            return [[Not(g.left)], [Not(g.right)]]
    raise AbductionError(f"no expansion rule for {to_str(f)}")


def _dedup(items) -> Branch:
    return tuple(dict.fromkeys(items))


def _prune(gamma) -> tuple[Branch, ...]:
    return _dedup(b for b in gamma if not is_closed(b))


def initial_state(theory: Sequence[Formula], phi: Formula) -> TableauState:
    return TableauState(_prune([_dedup([*theory, Not(phi)])]), 1)


def expand_step(state: TableauState) -> TableauState:
    target = next((f for b in state.gamma for f in b if not is_atomic(f)), None)
    if target is None:
        raise AbductionError("tableau is saturated: no rule applies")
    alternatives = _expand(target)
    gamma = []
    for b in state.gamma:
        if target not in b:
            gamma.append(b)
            continue
        i = b.index(target)
        for alt in alternatives:
            gamma.append(_dedup([*b[:i], *alt, *b[i + 1:]]))
    return TableauState(_prune(gamma), state.step + 1)


def saturate(theory: Sequence[Formula], phi: Formula) -> tuple[TableauState, list[TableauState]]:
    """Expand ``T ∪ {¬φ}`` until every branch is literal-only or none is left."""
    state = initial_state(theory, phi)
    trace = [state]
    while not state.closed and not state.saturated:
        state = expand_step(state)
        trace.append(state)
    return state, trace


def is_theorem(theory: Sequence[Formula], phi: Formula) -> bool:
    return saturate(theory, phi)[0].closed


def branch_formula(state: TableauState) -> Formula:
    """``ψ_i``: conjunction over branches of the disjoined negated literals.

    Non-literal branch members are ignored.
    """
    clauses = []
    for b in state.gamma:
        lits = [f for f in b if isinstance(f, Var) or (isinstance(f, Not) and isinstance(f.arg, Var))]
        clauses.append(disj(*(_negate_literal(l) for l in lits)))
    return conj(*clauses)


def branch_formulas(trace: Sequence[TableauState]) -> list[Formula]:
    return [branch_formula(s) for s in trace]


def tableau_cutting(theory: Sequence[Formula], phi: Formula, sig: Signature | None = None,
                    mode: str = "relative") -> Cutting:
    """Cutting from the branch formulas of the tableau for ``T ∪ {¬φ}``.

    ``mode="relative"`` uses ``Mod(T ∪ {ψ_i})``; these lie below ``Mod(T ∪ {φ})``,
    grow along the trace and end at it, so they always form a valid cutting.
    ``mode="literal"`` uses the bare ``Mod(ψ_i)`` and raises when that family
    is not a cutting.
    """
    sig = sig or Signature.from_formulas(*theory, phi)
    mod_t = theory_models(theory, sig)
    base = mod_t & models(phi, sig)
    if not base:
        raise InconsistentError()
    _, trace = saturate(theory, phi)
    members = [base]
    for psi in branch_formulas(trace):
        m = models(psi, sig)
        if mode == "relative":
            m = m & mod_t
        elif mode != "literal":
            raise ValueError(f"unknown tableau cutting mode {mode!r}")
        if m:
            members.append(m)
    cutting = Cutting.of(base, members)
    if mode == "literal":
        cutting.check()
    return cutting


def choice_explanations(final: TableauState, theory: Sequence[Formula],
                        sig: Signature | None = None) -> list[Formula]:
    """Conjunctions ``¬g(S_1) ∧ … ∧ ¬g(S_m)`` over choice functions ``g``.

    Only candidates consistent with ``T`` are kept, one per model class, in
    choice order.
    """
    if final.closed:
        return []
    if not final.saturated:
        raise AbductionError("choice explanations need a saturated tableau")
    sig = sig or Signature.from_formulas(*theory, *(f for b in final.gamma for f in b))
    mod_t = theory_models(theory, sig)
    options = [[f for f in b if not isinstance(f, Top)] for b in final.gamma]
    out, seen = [], set()
    for choice in product(*options):
        psi = conj(*_dedup(_negate_literal(l) for l in choice))
        ms = models(psi, sig)
        if not (ms & mod_t) or ms.bits in seen:
            continue
        seen.add(ms.bits)
        out.append(psi)
    return out


def chain_is_increasing(trace: Sequence[TableauState], sig: Signature) -> bool:
    """``Mod(ψ_i) ⊆ Mod(ψ_{i+1})`` along the whole trace."""
    sets = [models(psi, sig) for psi in branch_formulas(trace)]
    return all(a <= b for a, b in zip(sets, sets[1:]))


def literal_members(trace: Sequence[TableauState], sig: Signature) -> list[ModelSet]:
    return [models(psi, sig) for psi in branch_formulas(trace)]
