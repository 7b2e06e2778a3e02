"""Horn clause logic: syntax, intersection closure and the erosion-plus-closure retraction.

Every Horn sentence is satisfied by the all-true valuation, so that valuation
is the trivial model class here, and a model set is Horn-definable exactly
when it contains it and is closed under bitwise AND of valuations.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from ._lex import TokenStream
from .errors import HornDefinabilityError, ParseError
from .morphology import StructuringElement, erode
from .pl import (And, Formula, Implies, ModelSet, Signature, Top, Var, conj, models)
from .retraction import Retraction, triv


@dataclass(frozen=True)
class HornClause:
    body: tuple[str, ...]
    head: str

    def to_formula(self) -> Formula:
        if not self.body:
            return Var(self.head)
        return Implies(conj(*(Var(x) for x in self.body)), Var(self.head))

    def __str__(self) -> str:
        return " & ".join(self.body) + " -> " + self.head if self.body else "-> " + self.head


@dataclass(frozen=True)
class HornFormula:
    clauses: tuple[HornClause, ...]

    def to_formula(self) -> Formula:
        """The clause conjunction; the empty clause list is ``top``."""
        return conj(*(c.to_formula() for c in self.clauses))

    def models(self, sig: Signature) -> ModelSet:
        return models(self.to_formula(), sig)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.clauses)


def horn_triv(sig: Signature) -> ModelSet:
    return triv("horn", sig)


# ---------------------------------------------------------------------------
# Syntax


def parse_clause(text: str, sig: Signature | None = None) -> HornClause:
    """``p & q -> r``; an empty body is written ``-> r`` (or just ``r``)."""
    s = TokenStream(text)
    body: list[str] = []
    if s.accept("->"):
        head = s.expect_ident("head variable").value
    else:
        first = s.expect_ident("variable")
        names = [first.value]
        while s.accept("&"):
            names.append(s.expect_ident("variable").value)
        if s.accept("->"):
            body = names
            head = s.expect_ident("head variable").value
        elif len(names) == 1:
            head = names[0]
        else:
            s.error("expected '->'")
    s.finish()
    for name in (*body, head):
        if sig is not None and name not in sig:
            raise ParseError(f"unknown variable {name!r}", text.find(name), text)
    return HornClause(tuple(dict.fromkeys(body)), head)


def parse_horn(text: str, sig: Signature | None = None) -> HornFormula:
    clauses = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        if line.strip():
            clauses.append(parse_clause(line, sig))
    return HornFormula(tuple(clauses))


def load_horn(path: str | Path, sig: Signature | None = None) -> HornFormula:
    return parse_horn(Path(path).read_text(encoding="utf-8"), sig)


def from_formula(phi: Formula) -> HornFormula:
    """Recognize a conjunction of definite Horn clauses; raise otherwise."""
    clauses: list[HornClause] = []

    def conjuncts(f: Formula) -> Iterator[Formula]:
        if isinstance(f, And):
            yield from conjuncts(f.left)
            yield from conjuncts(f.right)
        elif not isinstance(f, Top):
            yield f

    def atoms(f: Formula) -> list[str]:
        out = []
        for g in conjuncts(f):
            if not isinstance(g, Var):
                raise HornDefinabilityError(f"not a Horn clause body: {g}")
            out.append(g.name)
        return out

    for c in conjuncts(phi):
        if isinstance(c, Var):
            clauses.append(HornClause((), c.name))
        elif isinstance(c, Implies) and isinstance(c.right, Var):
            clauses.append(HornClause(tuple(dict.fromkeys(atoms(c.left))), c.right.name))
        else:
            raise HornDefinabilityError(f"not a Horn clause: {c}")
    return HornFormula(tuple(clauses))


def is_horn(phi: Formula) -> bool:
    try:
        from_formula(phi)
    except HornDefinabilityError:
        return False
    return True


# ---------------------------------------------------------------------------
# Intersection closure


def intersect_valuations(v1: int, v2: int) -> int:
    return v1 & v2


def cl_intersection(ms: ModelSet) -> ModelSet:
    """Least superset of ``ms`` closed under pairwise intersection."""
    closed: set[int] = set()
    pending = list(ms)
    while pending:
        v = pending.pop()
        if v in closed:
            continue
        fresh = {v & w for w in closed} - closed - {v}
        closed.add(v)
        pending.extend(fresh)
    return ModelSet.from_indices(ms.signature, closed)


def is_intersection_closed(ms: ModelSet) -> bool:
    elems = list(ms)
    return all((a & b) in ms for i, a in enumerate(elems) for b in elems[i + 1:])


def is_horn_definable(ms: ModelSet) -> bool:
    return ms.signature.n_valuations - 1 in ms and is_intersection_closed(ms)


def horn_classes(sig: Signature) -> Iterator[ModelSet]:
    """Every Horn-definable model set (exhaustive; meant for at most 4 variables)."""
    top = 1 << (sig.n_valuations - 1)
    for bits in range(1 << (sig.n_valuations - 1)):
        ms = ModelSet(sig, bits | top)
        if is_intersection_closed(ms):
            yield ms


def horn_synthesize(ms: ModelSet) -> HornFormula:
    """Horn clauses defining ``ms``.

    For each non-model ``w``, let ``w*`` be the intersection of the models above
    ``w``; emit ``(atoms true in w) -> α`` for every atom ``α`` true in ``w*`` but
    not in ``w``.  Clauses are ordered by ``w`` and then by head position.
    """
    if not is_horn_definable(ms):
        raise HornDefinabilityError("model set must contain the all-true valuation and be closed under intersection")
    sig = ms.signature
    names = sig.variables
    elems = list(ms)
    clauses: dict[HornClause, None] = {}
    for w in range(sig.n_valuations):
        if w in ms:
            continue
        star = sig.n_valuations - 1
        for m in elems:
            if w & ~m == 0:
                star &= m
        body = tuple(x for i, x in enumerate(names) if w >> i & 1)
        for i, x in enumerate(names):
            if star >> i & 1 and not w >> i & 1:
                clauses.setdefault(HornClause(body, x))
    return HornFormula(tuple(clauses))


# ---------------------------------------------------------------------------
# Retraction


def horn_retraction(se: StructuringElement) -> Retraction:
    """``κ(h)`` defines ``cl_∩(E_B(Mod(h))) ∪ {all-true}``.

    The all-true valuation is adjoined so every output is Horn-definable.
    """
    sig = se.signature
    trivial = horn_triv(sig)

    def transform(phi: Formula) -> Formula:
        eroded = cl_intersection(erode(models(phi, sig), se)) | trivial
        return horn_synthesize(eroded).to_formula()

    return Retraction(f"horn-erosion:{se.describe()}", transform, semantic=True,
                      logic="horn", signature=sig)


def theory_from_clauses(clauses: Iterable[HornClause]) -> list[Formula]:
    return [c.to_formula() for c in clauses]
