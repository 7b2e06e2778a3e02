"""Cuttings: union-closed families of model sets below ``Mod(T ∪ {φ})``.

Their minimal members decide which explanations are preferred.  Besides the
generic structure this module builds the two retraction-based cuttings
(last consistent retraction, last non-trivial retraction) and the restriction
and ⊕ constructions used to relate cuttings for different observations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CuttingError, DegenerateRestrictionError, InconsistentError
from .pl import Formula, ModelSet, Signature, conj, conjoin, models, theory_models
from .retraction import Retraction, RetractionTrace, iterate

MAX_MEMBERS = 1 << 12


def _order(members: Iterable[ModelSet]) -> tuple[ModelSet, ...]:
    unique = {m.bits: m for m in members}
    # largest first, ties broken by bit pattern for a deterministic layout
    return tuple(sorted(unique.values(), key=lambda m: (-len(m), m.bits)))


@dataclass(frozen=True)
class Cutting:
    base: ModelSet
    members: tuple[ModelSet, ...]
    triv: ModelSet
    # retraction index k that first produced each member (lcr/lnr only)
    provenance: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def of(cls, base: ModelSet, members: Iterable[ModelSet], triv: ModelSet | None = None) -> "Cutting":
        triv = triv if triv is not None else ModelSet.empty(base.signature)
        return cls(base, _order(members), triv)

    @classmethod
    def trivial(cls, base: ModelSet, triv: ModelSet | None = None) -> "Cutting":
        return cls.of(base, [base], triv)

    @property
    def signature(self) -> Signature:
        return self.base.signature

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, ms: ModelSet) -> bool:
        return any(m == ms for m in self.members)

    # -- validation ---------------------------------------------------------

    def problems(self) -> list[str]:
        out = []
        if self.base not in self:
            out.append("base set is not a member")
        if not self.triv < self.base:
            out.append("base does not strictly contain Triv")
        for m in self.members:
            if not (self.triv <= m and m != self.triv):
                out.append(f"member {m!r} does not strictly contain Triv")
            if not m <= self.base:
                out.append(f"member {m!r} is not below the base")
        index = {m.bits for m in self.members}
        for i, m1 in enumerate(self.members):
            for m2 in self.members[i + 1:]:
                if (m1.bits | m2.bits) not in index:
                    out.append(f"union of {m1!r} and {m2!r} is missing")
        return out

    def validate(self) -> bool:
        return not self.problems()

    def check(self) -> "Cutting":
        problems = self.problems()
        if problems:
            raise CuttingError("; ".join(problems))
        return self

    # -- order structure ----------------------------------------------------

    def min_elements(self) -> list[ModelSet]:
        return [m for m in self.members if not any(o < m for o in self.members)]

    def is_chain(self) -> bool:
        return all(a <= b or b <= a for a in self.members for b in self.members)

    def _covers(self) -> dict[int, list[ModelSet]]:
        below: dict[int, list[ModelSet]] = {}
        for m in self.members:
            lower = [o for o in self.members if o < m]
            below[m.bits] = [o for o in lower if not any(o < x for x in lower)]
        return below

    def maximal_chains(self) -> list[tuple[ModelSet, ...]]:
        """Maximal chains of ``(members, ⊆)``, each listed from the top member down."""
        if len(self.members) > MAX_MEMBERS:
            raise CuttingError(f"chain enumeration capped at {MAX_MEMBERS} members")
        covers = self._covers()
        tops = [m for m in self.members if not any(m < o for o in self.members)]
        chains: list[tuple[ModelSet, ...]] = []

        def walk(path: tuple[ModelSet, ...]):
            nxt = covers[path[-1].bits]
            if not nxt:
                chains.append(path)
            for child in nxt:
                walk(path + (child,))

        for top in tops:
            walk((top,))
        return chains

    # -- (de)serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "signature": list(self.signature.variables),
            "triv": self.triv.bitstrings(),
            "base": self.base.bitstrings(),
            "members": [m.bitstrings() for m in self.members],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cutting":
        sig = Signature(data["signature"])
        base = ModelSet.from_bitstrings(sig, data["base"])
        triv = ModelSet.from_bitstrings(sig, data.get("triv", []))
        return cls.of(base, (ModelSet.from_bitstrings(sig, m) for m in data["members"]), triv)


# ---------------------------------------------------------------------------
# The model relation induced by a cutting


@dataclass(frozen=True)
class ModelRelation:
    """``M ⪯ M'`` over the base models, from the maximal chains of a cutting."""

    base: ModelSet
    triv: ModelSet
    pairs: frozenset[tuple[int, int]]

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs

    def strictly_below(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs and (b, a) not in self.pairs

    def minimal(self) -> ModelSet:
        """``Min(base \\ Triv, ⪯)``: models with nothing strictly below them."""
        domain = list(self.base - self.triv)
        keep = [m for m in domain if not any(self.strictly_below(o, m) for o in domain)]
        return ModelSet.from_indices(self.base.signature, keep)

    def is_reflexive(self) -> bool:
        return all((m, m) in self.pairs for m in self.base)

    def is_total(self) -> bool:
        elems = list(self.base)
        return all((a, b) in self.pairs or (b, a) in self.pairs for a in elems for b in elems)

    def is_transitive(self) -> bool:
        succ: dict[int, set[int]] = {}
        for a, b in self.pairs:
            succ.setdefault(a, set()).add(b)
        return all(c in succ.get(a, ()) for a, bs in succ.items() for b in bs for c in succ.get(b, ()))


def model_relation(c: Cutting) -> ModelRelation:
    pairs: set[tuple[int, int]] = set()
    elems = list(c.base)
    for chain in c.maximal_chains():
        # along a chain the members containing a model form a prefix from the top,
        # so the condition reduces to comparing prefix lengths
        depth = {m: sum(1 for layer in chain if m in layer) for m in elems}
        for a in elems:
            for b in elems:
                if depth[a] >= depth[b]:
                    pairs.add((a, b))
    return ModelRelation(c.base, c.triv, frozenset(pairs))


# ---------------------------------------------------------------------------
# Retraction-based cuttings


def _setup(theory: Sequence[Formula], phi: Formula, kappa: Retraction, sig: Signature | None):
    sig = sig or kappa.signature or Signature.from_formulas(*theory, phi)
    triv = kappa.triv(sig)
    base = theory_models(theory, sig) & models(phi, sig)
    if base <= triv:
        raise InconsistentError()
    return sig, triv, base


def _collect(trace: RetractionTrace, extra: ModelSet | None, triv: ModelSet, base: ModelSet) -> Cutting:
    seen: dict[int, ModelSet] = {}
    ks: dict[int, int] = {}
    for step in trace.steps:
        m = step.models & extra if extra is not None else step.models
        if m <= triv:
            continue
        if m.bits not in seen:
            seen[m.bits] = m
            ks[m.bits] = step.k
    ordered = _order(seen.values())
    return Cutting(base, ordered, triv, tuple(ks[m.bits] for m in ordered))


def build_lcr(theory: Sequence[Formula], phi: Formula, kappa: Retraction,
              sig: Signature | None = None) -> Cutting:
    """Members ``Mod(κ^k(⋀T) ∧ φ)`` that are not trivial (last consistent retraction)."""
    sig, triv, base = _setup(theory, phi, kappa, sig)
    trace = iterate(kappa, conjoin(theory), sig=sig)
    return _collect(trace, models(phi, sig), triv, base)


def build_lnr(theory: Sequence[Formula], phi: Formula, kappa: Retraction,
              sig: Signature | None = None) -> Cutting:
    """Members ``Mod(κ^k(⋀T ∧ φ))`` that are not trivial (last non-trivial retraction)."""
    sig, triv, base = _setup(theory, phi, kappa, sig)
    trace = iterate(kappa, conj(conjoin(theory), phi), sig=sig)
    return _collect(trace, None, triv, base)


def last_index(c: Cutting) -> int:
    """The retraction depth ``n`` of the minimal member of an lcr/lnr cutting."""
    if not c.provenance:
        raise CuttingError("cutting was not built from a retraction")
    return max(c.provenance)


# ---------------------------------------------------------------------------
# Restriction and ⊕


def restrict(c: Cutting, phi_prime: Formula | ModelSet, keep_triv: bool = False) -> Cutting:
    """Intersect every member with ``Mod(φ')``.

    By default members that collapse to Triv are dropped.  With ``keep_triv``
    they are kept, giving the plain member-wise family, which need not be a
    valid cutting.
    """
    sig = c.signature
    mask = phi_prime if isinstance(phi_prime, ModelSet) else models(phi_prime, sig)
    base = c.base & mask
    if base <= c.triv:
        raise DegenerateRestrictionError("restriction leaves only trivial models")
    members = [m & mask for m in c.members]
    if not keep_triv:
        members = [m for m in members if not m <= c.triv]
    return Cutting.of(base, members, c.triv)


def oplus(c1: Cutting, c2: Cutting) -> Cutting:
    """Pairwise unions ``{A ∪ B}``: a cutting for the disjunction of the observations."""
    if c1.triv != c2.triv:
        raise CuttingError("cuttings use different Triv sets")
    return Cutting.of(c1.base | c2.base, (a | b for a in c1.members for b in c2.members), c1.triv)


def random_cutting(rng: random.Random, base: ModelSet, triv: ModelSet | None = None,
                   generators: int | None = None) -> Cutting:
    """A valid cutting: ``base`` plus the union closure of a few random nontrivial subsets."""
    sig = base.signature
    triv = triv if triv is not None else ModelSet.empty(sig)
    free = list(base - triv)
    if not free:
        raise CuttingError("base has no nontrivial models")
    count = generators if generators is not None else rng.randint(1, 4)
    family = {base.bits}
    for _ in range(count):
        picked = [v for v in free if rng.random() < 0.5] or [rng.choice(free)]
        g = ModelSet.from_indices(sig, picked) | triv
        family |= {g.bits | m for m in family} | {g.bits}
    return Cutting.of(base, (ModelSet(sig, b) for b in family), triv)
