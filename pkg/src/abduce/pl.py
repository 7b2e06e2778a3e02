"""Propositional syntax and exact finite-signature semantics.

Model sets are Python integers used as bitsets over the ``2**n`` valuations of
a signature: bit ``v`` is set when valuation ``v`` is a model, and bit ``i`` of
``v`` is the truth value of the ``i``-th signature variable.  Every connective
then reduces to one bitwise operation on (potentially large) integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from ._lex import TokenStream
from .errors import ParseError, UnknownVariableError

MAX_VARIABLES = 24

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_KEYWORDS = frozenset({"top", "bot"})


# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class Signature:
    """Ordered, duplicate-free list of propositional variables."""

    variables: tuple[str, ...]

    def __init__(self, variables: Iterable[str]):
        names = tuple(variables)
        if len(names) > MAX_VARIABLES:
            raise ValueError(f"signature has {len(names)} variables, cap is {MAX_VARIABLES}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME.match(name) or name in _KEYWORDS:
                raise ValueError(f"invalid variable name {name!r}")
        object.__setattr__(self, "variables", names)

    @classmethod
    def of(cls, *names: str) -> "Signature":
        if len(names) == 1 and "," in names[0]:
            names = tuple(n.strip() for n in names[0].split(",") if n.strip())
        return cls(names)

    @classmethod
    def from_formulas(cls, *formulas: "Formula") -> "Signature":
        """Variables in order of first occurrence."""
        seen: dict[str, None] = {}
        for phi in formulas:
            for name in variables(phi):
                seen.setdefault(name)
        return cls(seen)

    def __len__(self) -> int:
        return len(self.variables)

    def __iter__(self) -> Iterator[str]:
        return iter(self.variables)

    def __contains__(self, name: object) -> bool:
        return name in self.variables

    def index(self, name: str) -> int:
        return self.variables.index(name)

    @property
    def n_valuations(self) -> int:
        return 1 << len(self.variables)

    @property
    def full_bits(self) -> int:
        return (1 << self.n_valuations) - 1

    def var_bits(self, name: str) -> int:
        return _var_mask(len(self.variables), self.index(name))

    def bitstring(self, valuation: int) -> str:
        """Truth values in variable order, e.g. ``"101"`` for a=1, b=0, c=1."""
        return "".join("1" if valuation >> i & 1 else "0" for i in range(len(self.variables)))

    def valuation(self, bitstring: str) -> int:
        if len(bitstring) != len(self.variables) or set(bitstring) - {"0", "1"}:
            raise ValueError(f"bad valuation bitstring {bitstring!r} for {len(self)} variables")
        return sum(1 << i for i, ch in enumerate(bitstring) if ch == "1")

    def __str__(self) -> str:
        return "{" + ",".join(self.variables) + "}"


@lru_cache(maxsize=None)
def _var_mask(n: int, i: int) -> int:
    # blocks of 2**i zeros followed by 2**i ones, repeated over 2**n bits
    half = 1 << i
    full = (1 << (1 << n)) - 1
    block = ((1 << half) - 1) << half
    return block * (full // ((1 << (2 * half)) - 1))


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    """Base class of the propositional AST.  Operators build new formulas."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __str__(self) -> str:
        return to_str(self)


@dataclass(frozen=True, repr=False)
class Var(Formula):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self):
        return "Bot()"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    arg: Formula

    def __repr__(self):
        return f"Not({self.arg!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


TOP = Top()
BOT = Bot()


def conj(*formulas: Formula) -> Formula:
    """Right-nested conjunction; the empty conjunction is ``top``."""
    if not formulas:
        return TOP
    result = formulas[-1]
    for phi in reversed(formulas[:-1]):
        result = And(phi, result)
    return result


def disj(*formulas: Formula) -> Formula:
    """Right-nested disjunction; the empty disjunction is ``bot``."""
    if not formulas:
        return BOT
    result = formulas[-1]
    for phi in reversed(formulas[:-1]):
        result = Or(phi, result)
    return result


def conjoin(theory: Iterable[Formula]) -> Formula:
    """The conjunction of a knowledge base, in file order."""
    return conj(*theory)


def variables(phi: Formula) -> list[str]:
    """Variable names of ``phi`` in order of first occurrence."""
    out: dict[str, None] = {}
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.setdefault(node.name)
        elif isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, (And, Or, Implies)):
            stack.append(node.right)
            stack.append(node.left)
    return list(out)


def is_literal(phi: Formula) -> bool:
    return isinstance(phi, Var) or (isinstance(phi, Not) and isinstance(phi.arg, Var))


# ---------------------------------------------------------------------------
# Printing and parsing

_PREC = {Implies: 1, Or: 2, And: 3, Not: 4}
_SYMBOL = {Implies: "->", Or: "|", And: "&"}


def _prec(phi: Formula) -> int:
    return _PREC.get(type(phi), 5)


def to_str(phi: Formula) -> str:
    """ASCII rendering that :func:`parse` reads back to the same tree."""
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Top):
        return "top"
    if isinstance(phi, Bot):
        return "bot"
    if isinstance(phi, Not):
        inner = to_str(phi.arg)
        return "~" + (f"({inner})" if _prec(phi.arg) < 4 else inner)
    if isinstance(phi, (And, Or, Implies)):
        p = _PREC[type(phi)]
        left, right = to_str(phi.left), to_str(phi.right)
        # And/Or/Implies are all read right-nested, so a same-level left child needs parens
        if _prec(phi.left) <= p:
            left = f"({left})"
        if _prec(phi.right) < p:
            right = f"({right})"
        return f"{left} {_SYMBOL[type(phi)]} {right}"
    raise TypeError(f"not a propositional formula: {phi!r}")


def parse(text: str, sig: Signature | None = None) -> Formula:
    """Parse ``text``; with ``sig`` given every variable must belong to it.

    Precedence is ``~`` > ``&`` > ``|`` > ``->``; ``->`` is right-associative.
    """
    stream = TokenStream(text)
    phi = _parse_implies(stream, sig)
    stream.finish()
    return phi


def _parse_implies(s: TokenStream, sig) -> Formula:
    left = _parse_or(s, sig)
    if s.accept("->"):
        return Implies(left, _parse_implies(s, sig))
    return left


def _parse_or(s: TokenStream, sig) -> Formula:
    items = [_parse_and(s, sig)]
    while s.accept("|"):
        items.append(_parse_and(s, sig))
    return disj(*items)


def _parse_and(s: TokenStream, sig) -> Formula:
    items = [_parse_unary(s, sig)]
    while s.accept("&"):
        items.append(_parse_unary(s, sig))
    return conj(*items)


def _parse_unary(s: TokenStream, sig) -> Formula:
    if s.accept("~") or s.accept("!"):
        return Not(_parse_unary(s, sig))
    if s.accept("("):
        phi = _parse_implies(s, sig)
        s.expect(")")
        return phi
    tok = s.peek
    if tok.kind != "ident":
        s.error("expected a formula")
    s.next()
    if tok.value == "top":
        return TOP
    if tok.value == "bot":
        return BOT
    if sig is not None and tok.value not in sig:
        raise UnknownVariableError(tok.value, tok.pos, s.text)
    return Var(tok.value)


def parse_theory(text: str, sig: Signature | None = None) -> list[Formula]:
    """One formula per line; ``#`` starts a comment; blank lines are skipped."""
    theory = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0]
        if body.strip():
            try:
                theory.append(parse(body, sig))
            except ParseError as exc:
                raise ParseError(str(exc).rsplit(" at offset", 1)[0],
                                 offset + exc.position, text) from None
        offset += len(line)
    return theory


def load_theory(path: str | Path, sig: Signature | None = None) -> list[Formula]:
    return parse_theory(Path(path).read_text(encoding="utf-8"), sig)


# ---------------------------------------------------------------------------
# Semantics


def evaluate(phi: Formula, valuation: int, sig: Signature) -> bool:
    """Truth value of ``phi`` under one valuation (direct recursive evaluation)."""
    if isinstance(phi, Var):
        return bool(valuation >> sig.index(phi.name) & 1)
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, Not):
        return not evaluate(phi.arg, valuation, sig)
    if isinstance(phi, And):
        return evaluate(phi.left, valuation, sig) and evaluate(phi.right, valuation, sig)
    if isinstance(phi, Or):
        return evaluate(phi.left, valuation, sig) or evaluate(phi.right, valuation, sig)
    if isinstance(phi, Implies):
        return (not evaluate(phi.left, valuation, sig)) or evaluate(phi.right, valuation, sig)
    raise TypeError(f"not a propositional formula: {phi!r}")


@dataclass(frozen=True)
class ModelSet:
    """Exact set of valuations over a finite signature, stored as an int bitset."""

    signature: Signature
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits > self.signature.full_bits:
            raise ValueError("model bits out of range for signature")

    @classmethod
    def empty(cls, sig: Signature) -> "ModelSet":
        return cls(sig, 0)

    @classmethod
    def full(cls, sig: Signature) -> "ModelSet":
        return cls(sig, sig.full_bits)

    @classmethod
    def from_indices(cls, sig: Signature, indices: Iterable[int]) -> "ModelSet":
        bits = 0
        for v in indices:
            if not 0 <= v < sig.n_valuations:
                raise ValueError(f"valuation {v} out of range")
            bits |= 1 << v
        return cls(sig, bits)

    @classmethod
    def from_bitstrings(cls, sig: Signature, strings: Iterable[str]) -> "ModelSet":
        return cls.from_indices(sig, (sig.valuation(s) for s in strings))

    def __contains__(self, valuation: int) -> bool:
        return bool(self.bits >> valuation & 1)

    def __iter__(self) -> Iterator[int]:
        bits, v = self.bits, 0
        while bits:
            if bits & 1:
                yield v
            bits >>= 1
            v += 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: "ModelSet"):
        if other.signature != self.signature:
            raise ValueError(f"signature mismatch: {self.signature} vs {other.signature}")

    def __and__(self, other: "ModelSet") -> "ModelSet":
        self._check(other)
        return ModelSet(self.signature, self.bits & other.bits)

    def __or__(self, other: "ModelSet") -> "ModelSet":
        self._check(other)
        return ModelSet(self.signature, self.bits | other.bits)

    def __sub__(self, other: "ModelSet") -> "ModelSet":
        self._check(other)
        return ModelSet(self.signature, self.bits & ~other.bits)

    def __le__(self, other: "ModelSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ModelSet") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "ModelSet") -> bool:
        return other <= self

    def __gt__(self, other: "ModelSet") -> bool:
        return other < self

    def complement(self) -> "ModelSet":
        return ModelSet(self.signature, self.signature.full_bits ^ self.bits)

    def bitstrings(self) -> list[str]:
        return [self.signature.bitstring(v) for v in self]

    def __repr__(self) -> str:
        return "ModelSet({" + ",".join(self.bitstrings()) + "})"


def _bits(phi: Formula, sig: Signature) -> int:
    if isinstance(phi, Var):
        if phi.name not in sig:
            raise UnknownVariableError(phi.name, 0)
        return sig.var_bits(phi.name)
    if isinstance(phi, Top):
        return sig.full_bits
    if isinstance(phi, Bot):
        return 0
    if isinstance(phi, Not):
        return sig.full_bits ^ _bits(phi.arg, sig)
    if isinstance(phi, And):
        return _bits(phi.left, sig) & _bits(phi.right, sig)
    if isinstance(phi, Or):
        return _bits(phi.left, sig) | _bits(phi.right, sig)
    if isinstance(phi, Implies):
        return (sig.full_bits ^ _bits(phi.left, sig)) | _bits(phi.right, sig)
    raise TypeError(f"not a propositional formula: {phi!r}")


def models(phi: Formula, sig: Signature) -> ModelSet:
    return ModelSet(sig, _bits(phi, sig))


def theory_models(theory: Iterable[Formula], sig: Signature) -> ModelSet:
    bits = sig.full_bits
    for phi in theory:
        bits &= _bits(phi, sig)
    return ModelSet(sig, bits)


def _common_signature(sig, *formulas) -> Signature:
    return sig if sig is not None else Signature.from_formulas(*formulas)


def entails(theory: Sequence[Formula], phi: Formula, sig: Signature | None = None) -> bool:
    """``T ⊨ φ``: every model of the theory is a model of ``phi``."""
    sig = _common_signature(sig, *theory, phi)
    return theory_models(theory, sig) <= models(phi, sig)


def equivalent_mod(theory: Sequence[Formula], phi: Formula, psi: Formula,
                   sig: Signature | None = None) -> bool:
    """``φ ≡_T ψ``: same models once conjoined with the theory."""
    sig = _common_signature(sig, *theory, phi, psi)
    base = theory_models(theory, sig)
    return base & models(phi, sig) == base & models(psi, sig)


def is_consistent(theory: Sequence[Formula], sig: Signature | None = None,
                  triv: ModelSet | None = None) -> bool:
    """Consistency as ``Mod(T) \\ Triv ≠ ∅`` (``Triv`` empty unless given)."""
    sig = _common_signature(sig, *theory)
    mods = theory_models(theory, sig)
    if triv is not None:
        mods = mods - triv
    return bool(mods)


def minterm(valuation: int, sig: Signature) -> Formula:
    return conj(*(Var(x) if valuation >> i & 1 else Not(Var(x))
                  for i, x in enumerate(sig.variables)))


def synthesize(ms: ModelSet) -> Formula:
    """Canonical full DNF over the minterms of ``ms`` in valuation order."""
    if ms.bits == ms.signature.full_bits:
        return TOP
    return disj(*(minterm(v, ms.signature) for v in ms))
