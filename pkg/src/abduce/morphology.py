"""Structuring elements over valuation space and morphological erosion."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping

from .pl import ModelSet, Signature


@dataclass(frozen=True)
class StructuringElement:
    """A reflexive neighbourhood map ``ν ↦ B_ν`` over the valuations of a signature.

    The shipped kinds (Hamming ball, restricted ball, restricted ring) are
    translation invariant: ``B_ν = {ν ⊕ o | o ∈ offsets}``.  Those are stored as
    XOR offsets so erosion is a handful of bit shuffles on the whole model set.
    Custom elements keep an explicit neighbour bitmask per valuation.
    """

    signature: Signature
    kind: str
    offsets: tuple[int, ...] | None = None
    table: tuple[int, ...] | None = None
    restricted_to: tuple[str, ...] = ()

    def __post_init__(self):
        if (self.offsets is None) == (self.table is None):
            raise ValueError("exactly one of offsets / table must be given")
        if self.offsets is not None and 0 not in self.offsets:
            raise ValueError("structuring element must be reflexive (offset 0 missing)")
        if self.table is not None:
            if len(self.table) != self.signature.n_valuations:
                raise ValueError("neighbour table must cover every valuation")
            for v, mask in enumerate(self.table):
                if not mask >> v & 1:
                    raise ValueError(f"not reflexive at {self.signature.bitstring(v)}")

    def neighbors(self, valuation: int) -> ModelSet:
        """``B_ν`` as a model set."""
        if self.offsets is not None:
            return ModelSet.from_indices(self.signature, sorted({valuation ^ o for o in self.offsets}))
        return ModelSet(self.signature, self.table[valuation])

    def describe(self) -> str:
        if self.restricted_to:
            return f"{self.kind}({','.join(self.restricted_to)})"
        return self.kind


def _var_offset(sig: Signature, names: Iterable[str]) -> list[int]:
    names = list(names)
    if not names:
        raise ValueError("restricted structuring element needs at least one variable")
    for name in names:
        if name not in sig:
            raise ValueError(f"variable {name!r} not in signature {sig}")
    return [1 << sig.index(name) for name in dict.fromkeys(names)]


def hamming_ball(sig: Signature) -> StructuringElement:
    """Valuations at Hamming distance at most 1."""
    return StructuringElement(sig, "hamming", offsets=(0, *(1 << i for i in range(len(sig)))))


def restricted_ball(sig: Signature, names: Iterable[str]) -> StructuringElement:
    """Hamming-1 neighbours that agree with ``ν`` outside ``names``."""
    bits = _var_offset(sig, names)
    return StructuringElement(sig, "restricted", offsets=(0, *bits),
                              restricted_to=tuple(dict.fromkeys(names)))


def restricted_ring(sig: Signature, names: Iterable[str], distance: int = 2) -> StructuringElement:
    """``ν`` itself plus valuations at exactly ``distance`` flips inside ``names``."""
    bits = _var_offset(sig, names)
    if not 1 <= distance <= len(bits):
        raise ValueError(f"ring distance {distance} outside 1..{len(bits)}")
    offsets = [0] + [sum(c) for c in combinations(bits, distance)]
    kind = "ring2" if distance == 2 else f"ring{distance}"
    return StructuringElement(sig, kind, offsets=tuple(offsets),
                              restricted_to=tuple(dict.fromkeys(names)))


def custom(sig: Signature, mapping: Mapping[str, Iterable[str]]) -> StructuringElement:
    """Explicit map from valuation bitstrings to neighbour bitstrings (must be total)."""
    table = [None] * sig.n_valuations
    for key, neigh in mapping.items():
        v = sig.valuation(key)
        table[v] = ModelSet.from_bitstrings(sig, neigh).bits
    missing = [sig.bitstring(v) for v, m in enumerate(table) if m is None]
    if missing:
        raise ValueError(f"custom structuring element misses valuations {missing}")
    return StructuringElement(sig, "custom", table=tuple(table))


def load_custom(path: str | Path, sig: Signature) -> StructuringElement:
    """Read ``[[valuation, [neighbours...]], ...]`` from JSON."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return custom(sig, {key: neigh for key, neigh in data})


def _flip(bits: int, sig: Signature, i: int) -> int:
    # permute bit v to v ^ (1 << i)
    mask = sig.var_bits(sig.variables[i])
    step = 1 << i
    return ((bits & mask) >> step) | ((bits & ~mask & sig.full_bits) << step)


def _translate(bits: int, sig: Signature, offset: int) -> int:
    i = 0
    while offset:
        if offset & 1:
            bits = _flip(bits, sig, i)
        offset >>= 1
        i += 1
    return bits


def erode(ms: ModelSet, se: StructuringElement) -> ModelSet:
    """``E_B(S) = {ν | B_ν ⊆ S}``."""
    if ms.signature != se.signature:
        raise ValueError("model set and structuring element use different signatures")
    sig = ms.signature
    if se.offsets is not None:
        out = sig.full_bits
        for o in se.offsets:
            out &= _translate(ms.bits, sig, o)
            if not out:
                break
        return ModelSet(sig, out)
    out = 0
    for v, neigh in enumerate(se.table):
        if neigh & ~ms.bits == 0:
            out |= 1 << v
    return ModelSet(sig, out)


def has_differentiation(se: StructuringElement) -> bool:
    """True iff ``ν ↦ B_ν`` is injective."""
    if se.offsets is not None:
        # B_v = B_w iff the offset set is invariant under translation by v ^ w;
        # such a translation must itself be an offset because 0 is one.
        offs = frozenset(se.offsets)
        return not any(frozenset(o ^ d for o in offs) == offs for d in offs if d)
    return len(set(se.table)) == len(se.table)
