"""Explanatory relations derived from cuttings.

``φ ▷_C ψ`` holds when ``T ∪ {ψ}`` is consistent and its models fit inside a
minimal member of the cutting ``C`` built for ``T`` and ``φ``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

from .cutting import Cutting, build_lcr, build_lnr, model_relation
from .errors import UnsupportedError
from .pl import Formula, ModelSet, Signature, models, synthesize, theory_models, to_str
from .retraction import Retraction


@dataclass(frozen=True)
class Lcr:
    kappa: Retraction


@dataclass(frozen=True)
class Lnr:
    kappa: Retraction


@dataclass(frozen=True)
class Generic:
    cutting: Cutting


@dataclass(frozen=True)
class Tableau:
    pass


Relation = Union[Lcr, Lnr, Generic, Tableau]


class Reason(enum.Enum):
    NOT_CONSISTENT_WITH_T = "NotConsistentWithT"
    NOT_CONTAINED_IN_ANY_MINIMAL = "NotContainedInAnyMinimal"
    ACCEPTED = "Accepted"


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    witness: ModelSet | None
    reason: Reason

    def to_json(self, characterizing: Formula | None = None) -> dict:
        out = {
            "accepted": self.accepted,
            "reason": self.reason.value,
            "witness_models": self.witness.bitstrings() if self.witness is not None else [],
        }
        if characterizing is not None:
            out["characterizing_formula"] = to_str(characterizing)
        return out


@dataclass(frozen=True)
class ExplanationQuery:
    theory: tuple[Formula, ...]
    observation: Formula
    candidate: Formula
    relation: Relation
    signature: Signature | None = None

    def resolved_signature(self) -> Signature:
        return _signature(self.theory, self.observation, self.relation, self.signature, self.candidate)


def _signature(theory, phi, relation, sig, *extra) -> Signature:
    if sig is not None:
        return sig
    if isinstance(relation, (Lcr, Lnr)) and relation.kappa.signature is not None:
        return relation.kappa.signature
    if isinstance(relation, Generic):
        return relation.cutting.signature
    return Signature.from_formulas(*theory, phi, *extra)


def cutting_for(theory: Sequence[Formula], phi: Formula, relation: Relation,
                sig: Signature | None = None) -> Cutting:
    sig = _signature(theory, phi, relation, sig)
    if isinstance(relation, Lcr):
        return build_lcr(theory, phi, relation.kappa, sig)
    if isinstance(relation, Lnr):
        return build_lnr(theory, phi, relation.kappa, sig)
    if isinstance(relation, Generic):
        return relation.cutting
    if isinstance(relation, Tableau):
        from .tableau import tableau_cutting
        return tableau_cutting(theory, phi, sig)
    raise UnsupportedError(f"unknown relation {relation!r}")


def in_expla(theory: Sequence[Formula], phi: Formula, psi: Formula,
             sig: Signature | None = None, triv: ModelSet | None = None) -> bool:
    """``ψ`` is consistent with ``T`` and ``T ∪ {ψ} ⊨ φ``."""
    sig = sig or Signature.from_formulas(*theory, phi, psi)
    triv = triv if triv is not None else ModelSet.empty(sig)
    cand = theory_models(theory, sig) & models(psi, sig)
    return bool(cand - triv) and cand <= models(phi, sig)


def accepts(cutting: Cutting, candidate: ModelSet) -> Verdict:
    """Decide acceptance of a candidate given ``Mod(T ∪ {ψ})``."""
    if not candidate - cutting.triv:
        return Verdict(False, None, Reason.NOT_CONSISTENT_WITH_T)
    for m in cutting.min_elements():
        if candidate <= m:
            return Verdict(True, m, Reason.ACCEPTED)
    return Verdict(False, None, Reason.NOT_CONTAINED_IN_ANY_MINIMAL)


def explains(q: ExplanationQuery) -> Verdict:
    sig = q.resolved_signature()
    cutting = cutting_for(q.theory, q.observation, q.relation, sig)
    return accepts(cutting, theory_models(q.theory, sig) & models(q.candidate, sig))


def characterize_models(theory: Sequence[Formula], phi: Formula, relation: Relation,
                        sig: Signature | None = None) -> ModelSet:
    cutting = cutting_for(theory, phi, relation, sig)
    mins = cutting.min_elements()
    if len(mins) != 1:
        raise UnsupportedError(f"cutting has {len(mins)} minimal members; no single characterizing formula")
    return mins[0]


def characterize(theory: Sequence[Formula], phi: Formula, relation: Relation,
                 sig: Signature | None = None) -> Formula:
    """``ψ*`` with: ``ψ`` accepted iff consistent with ``T`` and ``Mod(T ∪ {ψ}) ⊆ Mod(ψ*)``."""
    return synthesize(characterize_models(theory, phi, relation, sig))


def maximal_accepted_classes(theory: Sequence[Formula], phi: Formula, relation: Relation,
                             sig: Signature | None = None) -> list[ModelSet]:
    """The ⊆-maximal model classes ``Mod(ψ)`` of accepted candidates.

    ``ψ`` is accepted through minimal member ``M`` iff ``Mod(ψ) ⊆ M ∪ ¬Mod(T)``,
    so there is one maximal class per minimal member.
    """
    sig = _signature(theory, phi, relation, sig)
    if len(sig) > 4:
        raise UnsupportedError("class enumeration is capped at 4 variables")
    cutting = cutting_for(theory, phi, relation, sig)
    outside = theory_models(theory, sig).complement()
    classes = {(m | outside).bits: m | outside for m in cutting.min_elements()}
    return sorted(classes.values(), key=lambda s: s.bits)


def min_model_mismatches(theory: Sequence[Formula], cutting: Cutting) -> list[ModelSet]:
    """Candidate classes where minimal-member acceptance and minimal-model acceptance differ.

    The second criterion accepts ``ψ`` iff ``Mod(T ∪ {ψ}) \\ Triv`` is nonempty
    and contained in the ``⪯_C``-minimal models of the base.
    """
    sig = cutting.signature
    if len(sig) > 4:
        raise UnsupportedError("exhaustive candidate sweep is capped at 4 variables")
    mod_t = theory_models(theory, sig)
    best = model_relation(cutting).minimal()
    out = []
    for bits in range(1 << sig.n_valuations):
        cand = mod_t & ModelSet(sig, bits)
        by_members = accepts(cutting, cand).accepted
        core = cand - cutting.triv
        by_models = bool(core) and core <= best
        if by_members != by_models:
            out.append(ModelSet(sig, bits))
    return out


def crosscheck_min_models(theory: Sequence[Formula], phi: Formula, cutting: Cutting) -> bool:
    """True iff both acceptance criteria agree on every candidate class."""
    return not min_model_mismatches(theory, cutting)
