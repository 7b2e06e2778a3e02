"""Retractions on propositional sentences and their iteration.

A retraction maps a sentence to one with fewer models and, iterated, ends at
the trivial model class.  Two families live here: erosion by a structuring
element, and ``κ_h`` built from the tableau decomposition map ``h``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import BudgetExceededError, UnsupportedError
from .morphology import (StructuringElement, erode, hamming_ball, load_custom,
                         restricted_ball, restricted_ring)
from .pl import (BOT, TOP, And, Bot, Formula, Implies, ModelSet, Not, Or, Signature,
                 Top, Var, models, synthesize)

LOGICS = ("pl", "horn")


def triv(logic: str, sig: Signature) -> ModelSet:
    """Models satisfying every sentence: none in PL, the all-true valuation in Horn logic."""
    if logic == "pl":
        return ModelSet.empty(sig)
    if logic == "horn":
        return ModelSet(sig, 1 << (sig.n_valuations - 1))
    raise UnsupportedError(f"no propositional Triv for logic {logic!r}")


@dataclass(frozen=True)
class Retraction:
    name: str
    transform: Callable[[Formula], Formula] = field(compare=False)
    # semantic retractions depend on their argument only through its models,
    # so an unchanged model set already signals a fixpoint
    semantic: bool = False
    logic: str = "pl"
    signature: Signature | None = None

    def __call__(self, phi: Formula) -> Formula:
        return self.transform(phi)

    def triv(self, sig: Signature) -> ModelSet:
        return triv(self.logic, sig)


@dataclass(frozen=True)
class Step:
    k: int
    formula: Formula
    models: ModelSet


@dataclass(frozen=True)
class VacuumReached:
    k: int


@dataclass(frozen=True)
class Fixpoint:
    k: int


@dataclass(frozen=True)
class RetractionTrace:
    steps: tuple[Step, ...]
    terminal: VacuumReached | Fixpoint

    @property
    def last(self) -> Step:
        return self.steps[-1]

    def model_sets(self) -> list[ModelSet]:
        return [s.models for s in self.steps]


def iterate(kappa: Retraction, phi: Formula, max_k: int | None = None,
            sig: Signature | None = None) -> RetractionTrace:
    """Apply ``kappa`` until the model set is trivial or stops changing.

    A fixpoint at ``k`` means ``κ^{k+1}(φ)`` equals ``κ^k(φ)`` (structurally, or
    by models for semantic retractions); the repeated step is not recorded.
    """
    sig = sig or kappa.signature or Signature.from_formulas(phi)
    if max_k is None:
        max_k = sig.n_valuations + 1
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    trivial = kappa.triv(sig)
    cur, ms = phi, models(phi, sig)
    steps = [Step(0, cur, ms)]
    if ms <= trivial:
        return RetractionTrace(tuple(steps), VacuumReached(0))
    for k in range(1, max_k + 1):
        nxt = kappa(cur)
        nms = models(nxt, sig)
        if nxt == cur or (kappa.semantic and nms == ms):
            return RetractionTrace(tuple(steps), Fixpoint(k - 1))
        steps.append(Step(k, nxt, nms))
        if nms <= trivial:
            return RetractionTrace(tuple(steps), VacuumReached(k))
        cur, ms = nxt, nms
    raise BudgetExceededError(f"{kappa.name}: no vacuum or fixpoint within {max_k} steps")


# ---------------------------------------------------------------------------
# Erosion


def erosion_retraction(se: StructuringElement) -> Retraction:
    sig = se.signature

    def transform(phi: Formula) -> Formula:
        return synthesize(erode(models(phi, sig), se))

    return Retraction(f"erosion:{se.describe()}", transform, semantic=True, signature=sig)


# ---------------------------------------------------------------------------
# Tableau-derived κ_h

H_POLICIES = ("left", "right", "both")


def h_transform(phi: Formula, policy: str = "left") -> Formula:
    """Follow one tableau path through ``phi``, choosing at β-rules per ``policy``."""
    if policy not in H_POLICIES:
        raise ValueError(f"unknown choice policy {policy!r}")

    def h(f: Formula) -> Formula:
        if isinstance(f, (Var, Top, Bot)):
            return f
        if isinstance(f, And):
            return And(h(f.left), h(f.right))
        if isinstance(f, Or):
            return _choose(h(f.left), h(f.right))
        if isinstance(f, Implies):
            return _choose(h(Not(f.left)), h(f.right))
        assert isinstance(f, Not)
        g = f.arg
        if isinstance(g, Var):
            return f
        if isinstance(g, Not):
            return h(g.arg)
        if isinstance(g, Bot):
            return TOP
        if isinstance(g, Top):
            return BOT
        if isinstance(g, Implies):
            return And(h(g.left), h(Not(g.right)))
        if isinstance(g, Or):
            return And(h(Not(g.left)), h(Not(g.right)))
        if isinstance(g, And):
            return _choose(h(Not(g.left)), h(Not(g.right)))
        raise TypeError(f"not a propositional formula: {f!r}")

    def _choose(left: Formula, right: Formula) -> Formula:
        if policy == "left":
            return left
        if policy == "right":
            return right
        return And(left, right)

    return h(phi)


def kappa_h(policy: str = "left", sig: Signature | None = None) -> Retraction:
    """``κ_h(φ) = ⊥`` when ``h(φ)`` is ``φ`` itself, else ``h(φ)``."""
    if policy not in H_POLICIES:
        raise ValueError(f"unknown choice policy {policy!r}")

    def transform(phi: Formula) -> Formula:
        out = h_transform(phi, policy)
        return BOT if out == phi else out

    return Retraction(f"tableau-h:{policy}", transform, semantic=False, signature=sig)


# ---------------------------------------------------------------------------
# Exhaustive verification


@dataclass
class RetractionReport:
    retraction: str
    signature: Signature
    classes_checked: int = 0
    anti_extensivity_violations: list[ModelSet] = field(default_factory=list)
    # classes whose iteration never reaches Triv (nontrivial fixpoint or budget)
    vacuum_violations: list[ModelSet] = field(default_factory=list)
    fixpoints: list[ModelSet] = field(default_factory=list)
    budget_exceeded: list[ModelSet] = field(default_factory=list)
    max_steps: int = 0

    @property
    def ok(self) -> bool:
        return not self.anti_extensivity_violations and not self.vacuum_violations


def verify_retraction(kappa: Retraction, sig: Signature,
                      classes: Iterable[ModelSet] | None = None) -> RetractionReport:
    """Check both retraction laws on every semantic class (via :func:`synthesize`).

    Tautologies and trivial classes are skipped.  ``classes`` overrides the
    default sweep over all ``2^(2^n)`` subsets, e.g. to restrict to Horn classes.
    """
    if classes is None:
        if len(sig) > 4:
            raise ValueError("exhaustive verification is capped at 4 variables")
        classes = (ModelSet(sig, b) for b in range(1 << sig.n_valuations))
    trivial = kappa.triv(sig)
    report = RetractionReport(kappa.name, sig)
    budget = sig.n_valuations + 1
    for ms in classes:
        if ms.bits == sig.full_bits or ms <= trivial:
            continue
        report.classes_checked += 1
        phi = kappa_input(kappa, ms)
        if not models(kappa(phi), sig) <= ms:
            report.anti_extensivity_violations.append(ms)
        try:
            trace = iterate(kappa, phi, budget, sig)
        except BudgetExceededError:
            report.budget_exceeded.append(ms)
            report.vacuum_violations.append(ms)
            continue
        report.max_steps = max(report.max_steps, trace.terminal.k)
        if isinstance(trace.terminal, Fixpoint) and not trace.last.models <= trivial:
            report.fixpoints.append(ms)
            report.vacuum_violations.append(ms)
    return report


def kappa_input(kappa: Retraction, ms: ModelSet) -> Formula:
    """Representative sentence of a class, in the syntax ``kappa`` expects."""
    if kappa.logic == "horn":
        from .horn import horn_synthesize
        return horn_synthesize(ms).to_formula()
    return synthesize(ms)


# ---------------------------------------------------------------------------
# CLI-style keys

_KEY = re.compile(r"(?P<family>erosion|tableau-h):(?P<kind>[a-z0-9]+)(?:\((?P<args>[^)]*)\))?\Z")


def from_key(key: str, sig: Signature, logic: str = "pl") -> Retraction:
    """Build a retraction from keys such as ``erosion:restricted(a,b)`` or ``tableau-h:left``."""
    m = _KEY.match(key.strip())
    if m is None:
        raise UnsupportedError(f"unknown retraction key {key!r}")
    family, kind, args = m["family"], m["kind"], m["args"]
    if family == "tableau-h":
        if logic != "pl":
            raise UnsupportedError("tableau-h retractions are propositional only")
        if kind not in H_POLICIES or args is not None:
            raise UnsupportedError(f"unknown retraction key {key!r}")
        return kappa_h(kind, sig)
    se = structuring_element_from_key(kind, args, sig)
    if logic == "horn":
        from .horn import horn_retraction
        return horn_retraction(se)
    if logic != "pl":
        raise UnsupportedError(f"erosion retractions need logic pl or horn, not {logic!r}")
    return erosion_retraction(se)


def structuring_element_from_key(kind: str, args: str | None, sig: Signature) -> StructuringElement:
    names = [a.strip() for a in args.split(",") if a.strip()] if args else []
    try:
        if kind == "hamming" and args is None:
            return hamming_ball(sig)
        if kind == "restricted" and names:
            return restricted_ball(sig, names)
        if kind == "ring2" and names:
            return restricted_ring(sig, names, 2)
        if kind == "custom" and args:
            return load_custom(args.strip(), sig)
    except ValueError as exc:
        raise UnsupportedError(str(exc)) from None
    raise UnsupportedError(f"unknown structuring element {kind!r}")
