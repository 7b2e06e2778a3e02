"""ALC concepts: NNF, TBox internalization, the concept retraction κ_f and finite semantics.

Subsumption and satisfiability are decided by counterexample search over
finite interpretations.  Small searches are exhaustive; larger ones fall back
to seeded random sampling, and every result says which of the two it used.
The search is vectorized with numpy: a batch of interpretations is a set of
bitmask arrays, one per concept name and one per (role, element) pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from ._lex import TokenStream
from .errors import InconsistentError, UnknownSymbolError, UnsupportedError

# ---------------------------------------------------------------------------
# Syntax


class Concept:
    __slots__ = ()

    def __str__(self) -> str:
        return to_str(self)


@dataclass(frozen=True, repr=False)
class Atomic(Concept):
    name: str

    def __repr__(self):
        return f"Atomic({self.name!r})"


@dataclass(frozen=True, repr=False)
class CTop(Concept):
    def __repr__(self):
        return "CTop()"


@dataclass(frozen=True, repr=False)
class CBot(Concept):
    def __repr__(self):
        return "CBot()"


@dataclass(frozen=True, repr=False)
class Neg(Concept):
    arg: Concept

    def __repr__(self):
        return f"Neg({self.arg!r})"


@dataclass(frozen=True, repr=False)
class Conj(Concept):
    args: tuple[Concept, ...]

    def __repr__(self):
        return f"Conj({self.args!r})"


@dataclass(frozen=True, repr=False)
class Disj(Concept):
    args: tuple[Concept, ...]

    def __repr__(self):
        return f"Disj({self.args!r})"


@dataclass(frozen=True, repr=False)
class All(Concept):
    role: str
    arg: Concept

    def __repr__(self):
        return f"All({self.role!r}, {self.arg!r})"


@dataclass(frozen=True, repr=False)
class Some(Concept):
    role: str
    arg: Concept

    def __repr__(self):
        return f"Some({self.role!r}, {self.arg!r})"


TOP = CTop()
BOT = CBot()


def conj(*cs: Concept) -> Concept:
    if not cs:
        return TOP
    return cs[0] if len(cs) == 1 else Conj(tuple(cs))


def disj(*cs: Concept) -> Concept:
    if not cs:
        return BOT
    return cs[0] if len(cs) == 1 else Disj(tuple(cs))


@dataclass(frozen=True)
class Axiom:
    sub: Concept
    sup: Concept

    def __str__(self) -> str:
        return f"{to_str(self.sub)} [= {to_str(self.sup)}"


_KEYWORDS = {"and", "or", "not", "forall", "exists", "top", "bot"}


def to_str(c: Concept) -> str:
    if isinstance(c, Atomic):
        return c.name
    if isinstance(c, CTop):
        return "top"
    if isinstance(c, CBot):
        return "bot"
    if isinstance(c, Neg):
        return "not " + _wrap(c.arg)
    if isinstance(c, (All, Some)):
        word = "forall" if isinstance(c, All) else "exists"
        return f"{word} {c.role}. {_wrap(c.arg)}"
    if isinstance(c, Conj):
        return " and ".join(_wrap(a) for a in c.args)
    if isinstance(c, Disj):
        return " or ".join(_wrap(a, allow=Conj) for a in c.args)
    raise TypeError(f"not a concept: {c!r}")


def _wrap(c: Concept, allow: type | None = None) -> str:
    s = to_str(c)
    if isinstance(c, (Conj, Disj)) and not (allow is not None and isinstance(c, allow)):
        return f"({s})"
    return s


def parse(text: str) -> Concept:
    """``A and (exists r. B)``, ``forall r. C``, ``not A``, ``top``, ``bot``.

    ``not``, ``forall r.`` and ``exists r.`` bind tighter than ``and``, which
    binds tighter than ``or``.
    """
    s = TokenStream(text)
    c = _or(s)
    s.finish()
    return c


def _or(s: TokenStream) -> Concept:
    items = [_and(s)]
    while s.accept("or"):
        items.append(_and(s))
    return disj(*items)


def _and(s: TokenStream) -> Concept:
    items = [_unary(s)]
    while s.accept("and"):
        items.append(_unary(s))
    return conj(*items)


def _unary(s: TokenStream) -> Concept:
    if s.accept("not"):
        return Neg(_unary(s))
    for word, node in (("forall", All), ("exists", Some)):
        if s.accept(word):
            role = s.expect_ident("role name")
            if role.value in _KEYWORDS:
                s.error("expected role name")
            s.expect(".")
            return node(role.value, _unary(s))
    if s.accept("("):
        c = _or(s)
        s.expect(")")
        return c
    tok = s.expect_ident("concept")
    if tok.value == "top":
        return TOP
    if tok.value == "bot":
        return BOT
    if tok.value in _KEYWORDS:
        s.error("unexpected keyword")
    return Atomic(tok.value)


def parse_axiom(text: str) -> Axiom:
    if "[=" not in text:
        raise ValueError(f"axiom needs '[=': {text!r}")
    left, right = text.split("[=", 1)
    return Axiom(parse(left), parse(right))


def parse_tbox(text: str) -> list[Axiom]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        if line.strip():
            out.append(parse_axiom(line))
    return out


def load_tbox(path: str | Path) -> list[Axiom]:
    return parse_tbox(Path(path).read_text(encoding="utf-8"))


def names(*cs: Concept) -> tuple[list[str], list[str]]:
    """Concept names and role names, in order of first occurrence."""
    concepts: dict[str, None] = {}
    roles: dict[str, None] = {}

    def walk(c):
        if isinstance(c, Atomic):
            concepts.setdefault(c.name)
        elif isinstance(c, Neg):
            walk(c.arg)
        elif isinstance(c, (Conj, Disj)):
            for a in c.args:
                walk(a)
        elif isinstance(c, (All, Some)):
            roles.setdefault(c.role)
            walk(c.arg)

    for c in cs:
        walk(c)
    return list(concepts), list(roles)


def size(c: Concept) -> int:
    if isinstance(c, (Neg, All, Some)):
        return 1 + size(c.arg)
    if isinstance(c, (Conj, Disj)):
        return 1 + sum(size(a) for a in c.args)
    return 1


# ---------------------------------------------------------------------------
# Normal forms


def nnf(c: Concept) -> Concept:
    """Push negation down to concept names."""
    if isinstance(c, (Atomic, CTop, CBot)):
        return c
    if isinstance(c, Conj):
        return Conj(tuple(nnf(a) for a in c.args))
    if isinstance(c, Disj):
        return Disj(tuple(nnf(a) for a in c.args))
    if isinstance(c, All):
        return All(c.role, nnf(c.arg))
    if isinstance(c, Some):
        return Some(c.role, nnf(c.arg))
    g = c.arg
    if isinstance(g, Atomic):
        return c
    if isinstance(g, CTop):
        return BOT
    if isinstance(g, CBot):
        return TOP
    if isinstance(g, Neg):
        return nnf(g.arg)
    if isinstance(g, Conj):
        return Disj(tuple(nnf(Neg(a)) for a in g.args))
    if isinstance(g, Disj):
        return Conj(tuple(nnf(Neg(a)) for a in g.args))
    if isinstance(g, All):
        return Some(g.role, nnf(Neg(g.arg)))
    if isinstance(g, Some):
        return All(g.role, nnf(Neg(g.arg)))
    raise TypeError(f"not a concept: {c!r}")


def is_nnf(c: Concept) -> bool:
    if isinstance(c, Neg):
        return isinstance(c.arg, Atomic)
    if isinstance(c, (Conj, Disj)):
        return all(is_nnf(a) for a in c.args)
    if isinstance(c, (All, Some)):
        return is_nnf(c.arg)
    return True


def internalize(tbox: Sequence[Axiom]) -> Concept:
    """``⊓ (¬C ⊔ D)`` over the axioms, in NNF; the empty TBox gives ``top``."""
    return conj(*(nnf(Disj((Neg(ax.sub), ax.sup))) for ax in tbox))


def simplify(c: Concept, forall_bot: bool = True) -> Concept:
    """Bottom-up ⊤/⊥ rewriting, flattening and duplicate removal.

    With ``forall_bot`` the non-equivalence ``∀r.⊥ → ⊥`` is applied as well;
    every other rule preserves extensions.
    """
    if isinstance(c, (Atomic, CTop, CBot)):
        return c
    if isinstance(c, Neg):
        a = simplify(c.arg, forall_bot)
        if isinstance(a, CTop):
            return BOT
        if isinstance(a, CBot):
            return TOP
        return Neg(a)
    if isinstance(c, (All, Some)):
        a = simplify(c.arg, forall_bot)
        if isinstance(c, Some):
            return BOT if isinstance(a, CBot) else Some(c.role, a)
        if isinstance(a, CTop):
            return TOP
        if isinstance(a, CBot) and forall_bot:
            return BOT
        return All(c.role, a)
    is_and = isinstance(c, Conj)
    unit, zero = (CTop, CBot) if is_and else (CBot, CTop)
    parts: dict[Concept, None] = {}
    for a in c.args:
        a = simplify(a, forall_bot)
        for b in (a.args if isinstance(a, type(c)) else (a,)):
            if isinstance(b, zero):
                return b
            if not isinstance(b, unit):
                parts.setdefault(b)
    return (conj if is_and else disj)(*parts)


def _key(c: Concept) -> str:
    return to_str(c)


def canonical(c: Concept, forall_bot: bool = True) -> Concept:
    """:func:`simplify`, then sort ⊓/⊔ operands and apply absorption.

    Absorption drops ``X ⊔ Y`` from a conjunction already containing every
    conjunct of ``X``, and dually for disjunctions.
    """
    c = simplify(c, forall_bot)
    if isinstance(c, Neg):
        return Neg(canonical(c.arg, forall_bot))
    if isinstance(c, (All, Some)):
        return simplify(type(c)(c.role, canonical(c.arg, forall_bot)), forall_bot)
    if isinstance(c, (Conj, Disj)):
        args = [canonical(a, forall_bot) for a in c.args]
        flat: dict[Concept, None] = {}
        for a in args:
            for b in (a.args if isinstance(a, type(c)) else (a,)):
                flat.setdefault(b)
        items = list(flat)
        inner = Disj if isinstance(c, Conj) else Conj
        present = set(items)

        def parts(x):
            return set(x.args) if isinstance(x, type(c)) else {x}

        kept = []
        for a in items:
            if isinstance(a, inner) and any(parts(d) <= present - {a} for d in a.args):
                continue
            kept.append(a)
        kept.sort(key=_key)
        out = (conj if isinstance(c, Conj) else disj)(*kept)
        return simplify(out, forall_bot)
    return c


# ---------------------------------------------------------------------------
# The concept retraction

VARIANTS = ("literal", "corrected")


def kappa_f_raw(c: Concept, variant: str = "literal") -> Concept:
    """The recursive κ_f on an NNF concept, without simplification."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown κ_f variant {variant!r}")
    if not is_nnf(c):
        raise ValueError(f"κ_f needs a concept in negation normal form: {to_str(c)}")

    def k(x: Concept) -> Concept:
        if isinstance(x, (Atomic, Neg, CBot)):
            return BOT
        if isinstance(x, CTop):
            return TOP
        if isinstance(x, Conj):
            return Conj(tuple(k(a) for a in x.args))
        if isinstance(x, Disj):
            # n-ary form of (κC1 ⊔ C2) ⊓ (C1 ⊔ κC2)
            return Conj(tuple(Disj(x.args[:i] + (k(a),) + x.args[i + 1:])
                              for i, a in enumerate(x.args)))
        if isinstance(x, All):
            return All(x.role, k(x.arg))
        if isinstance(x, Some):
            if variant == "literal":
                keep = All(x.role, x.arg)
            else:
                keep = Conj((Some(x.role, TOP), All(x.role, x.arg)))
            return Disj((keep, Some(x.role, k(x.arg))))
        raise TypeError(f"not a concept: {x!r}")

    return k(c)


def kappa_f(c: Concept, variant: str = "literal", forall_bot: bool = True) -> Concept:
    """One retraction step followed by :func:`canonical`."""
    return canonical(kappa_f_raw(c, variant), forall_bot)


def dl_chain(c: Concept, variant: str = "literal", forall_bot: bool = True,
             max_k: int = 64) -> list[Concept]:
    """``[c, κ(c), κ²(c), ...]`` in canonical form, up to ⊥ or a structural fixpoint."""
    chain = [canonical(c, forall_bot)]
    while not isinstance(chain[-1], CBot):
        if len(chain) > max_k:
            raise ValueError(f"no ⊥ within {max_k} steps")
        nxt = kappa_f(chain[-1], variant, forall_bot)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


# ---------------------------------------------------------------------------
# Finite interpretations


@dataclass(frozen=True)
class DLInterpretation:
    domain_size: int
    concepts: Mapping[str, frozenset[int]] = field(default_factory=dict)
    roles: Mapping[str, frozenset[tuple[int, int]]] = field(default_factory=dict)

    def __post_init__(self):
        if self.domain_size < 1:
            raise ValueError("domain must be nonempty")

    def __hash__(self):
        return hash((self.domain_size,
                     tuple(sorted((k, tuple(sorted(v))) for k, v in self.concepts.items())),
                     tuple(sorted((k, tuple(sorted(v))) for k, v in self.roles.items()))))

    def to_json(self) -> dict:
        return {
            "domain_size": self.domain_size,
            "concepts": {k: sorted(v) for k, v in sorted(self.concepts.items())},
            "roles": {k: [list(p) for p in sorted(v)] for k, v in sorted(self.roles.items())},
        }


def eval_concept(c: Concept, interp: DLInterpretation) -> frozenset[int]:
    """The extension ``C^I`` (direct recursive definition)."""
    dom = frozenset(range(interp.domain_size))
    if isinstance(c, Atomic):
        if c.name not in interp.concepts:
            raise UnknownSymbolError(f"concept {c.name!r} not interpreted")
        return frozenset(interp.concepts[c.name])
    if isinstance(c, CTop):
        return dom
    if isinstance(c, CBot):
        return frozenset()
    if isinstance(c, Neg):
        return dom - eval_concept(c.arg, interp)
    if isinstance(c, Conj):
        out = dom
        for a in c.args:
            out &= eval_concept(a, interp)
        return out
    if isinstance(c, Disj):
        out = frozenset()
        for a in c.args:
            out |= eval_concept(a, interp)
        return out
    if isinstance(c, (All, Some)):
        if c.role not in interp.roles:
            raise UnknownSymbolError(f"role {c.role!r} not interpreted")
        ext = eval_concept(c.arg, interp)
        rel = interp.roles[c.role]
        succ = {x: {y for (a, y) in rel if a == x} for x in dom}
        if isinstance(c, Some):
            return frozenset(x for x in dom if succ[x] & ext)
        return frozenset(x for x in dom if succ[x] <= ext)
    raise TypeError(f"not a concept: {c!r}")


class _Batch:
    """Many interpretations over one domain size, as uint8 bitmask arrays."""

    def __init__(self, n: int, concepts: dict[str, np.ndarray], succ: dict[str, list[np.ndarray]]):
        self.n = n
        self.full = np.uint8((1 << n) - 1)
        self.concepts = concepts
        self.succ = succ
        self.count = len(next(iter(concepts.values()))) if concepts else (
            len(next(iter(succ.values()))[0]) if succ else 1)

    def eval(self, c: Concept) -> np.ndarray:
        if isinstance(c, Atomic):
            if c.name not in self.concepts:
                raise UnknownSymbolError(f"concept {c.name!r} not interpreted")
            return self.concepts[c.name]
        if isinstance(c, CTop):
            return np.full(self.count, self.full, dtype=np.uint8)
        if isinstance(c, CBot):
            return np.zeros(self.count, dtype=np.uint8)
        if isinstance(c, Neg):
            return self.full ^ self.eval(c.arg)
        if isinstance(c, Conj):
            out = np.full(self.count, self.full, dtype=np.uint8)
            for a in c.args:
                out = out & self.eval(a)
            return out
        if isinstance(c, Disj):
            out = np.zeros(self.count, dtype=np.uint8)
            for a in c.args:
                out = out | self.eval(a)
            return out
        if isinstance(c, (All, Some)):
            if c.role not in self.succ:
                raise UnknownSymbolError(f"role {c.role!r} not interpreted")
            ext = self.eval(c.arg)
            out = np.zeros(self.count, dtype=np.uint8)
            for x, succ in enumerate(self.succ[c.role]):
                if isinstance(c, Some):
                    hit = (succ & ext) != 0
                else:
                    hit = (succ & (self.full ^ ext)) == 0
                out |= hit.astype(np.uint8) << np.uint8(x)
            return out
        raise TypeError(f"not a concept: {c!r}")

    def row(self, i: int) -> DLInterpretation:
        concepts = {k: frozenset(x for x in range(self.n) if int(v[i]) >> x & 1)
                    for k, v in self.concepts.items()}
        roles = {r: frozenset((x, y) for x, s in enumerate(arrs) for y in range(self.n) if int(s[i]) >> y & 1)
                 for r, arrs in self.succ.items()}
        return DLInterpretation(self.n, concepts, roles)


def _field_count(n: int, cnames: Sequence[str], rnames: Sequence[str]) -> int:
    return len(cnames) + len(rnames) * n


def _exhaustive(n: int, cnames, rnames, chunk: int = 1 << 18) -> Iterator[_Batch]:
    nfields = _field_count(n, cnames, rnames)
    total = 1 << (n * nfields)
    mask = np.uint64((1 << n) - 1)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.uint64)
        fields = [((idx >> np.uint64(n * j)) & mask).astype(np.uint8) for j in range(nfields)]
        concepts = {c: fields[i] for i, c in enumerate(cnames)}
        succ = {r: fields[len(cnames) + i * n: len(cnames) + (i + 1) * n] for i, r in enumerate(rnames)}
        yield _Batch(n, concepts, succ)


def _sampled(n: int, cnames, rnames, samples: int, rng: np.random.Generator,
             chunk: int = 1 << 16) -> Iterator[_Batch]:
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        concepts = {c: rng.integers(0, 1 << n, size=m, dtype=np.uint8) for c in cnames}
        succ = {r: [rng.integers(0, 1 << n, size=m, dtype=np.uint8) for _ in range(n)] for r in rnames}
        done += m
        yield _Batch(n, concepts, succ)


EXHAUSTIVE_BITS = 22


@dataclass
class SearchResult:
    """Outcome of a bounded search; ``witness`` is the interpretation found, if any."""

    witness: DLInterpretation | None
    exhaustive_sizes: list[int] = field(default_factory=list)
    sampled_sizes: list[int] = field(default_factory=list)
    checked: int = 0

    @property
    def found(self) -> bool:
        return self.witness is not None

    def describe(self) -> str:
        parts = []
        if self.exhaustive_sizes:
            parts.append("exhaustive at |Δ| in " + ",".join(map(str, self.exhaustive_sizes)))
        if self.sampled_sizes:
            parts.append("sampled at |Δ| in " + ",".join(map(str, self.sampled_sizes)))
        return "; ".join(parts) + f" ({self.checked} interpretations)"


def search(condition, concepts: Sequence[Concept], max_domain: int = 3, samples: int = 200_000,
           seed: int = 0) -> SearchResult:
    """Find an interpretation where ``condition(batch)`` holds.

    ``condition`` maps a batch to a boolean array.  Domain sizes are tried in
    increasing order; sizes whose interpretation space has more than
    ``2**EXHAUSTIVE_BITS`` points are sampled.
    """
    cnames, rnames = names(*concepts)
    rng = np.random.default_rng(seed)
    result = SearchResult(None)
    for n in range(1, max_domain + 1):
        bits = n * _field_count(n, cnames, rnames)
        if bits <= EXHAUSTIVE_BITS:
            result.exhaustive_sizes.append(n)
            batches = _exhaustive(n, cnames, rnames)
        else:
            result.sampled_sizes.append(n)
            batches = _sampled(n, cnames, rnames, samples, rng)
        for batch in batches:
            hits = np.flatnonzero(condition(batch))
            if hits.size:
                result.checked += int(hits[0]) + 1
                result.witness = batch.row(int(hits[0]))
                return result
            result.checked += batch.count
    return result


def find_counterexample(sub: Concept, sup: Concept, tbox: Concept | None = None,
                        max_domain: int = 3, samples: int = 200_000, seed: int = 0) -> SearchResult:
    """Search for ``I`` satisfying the TBox concept everywhere with ``sub^I ⊄ sup^I``."""
    tbox = tbox if tbox is not None else TOP

    def cond(b: _Batch) -> np.ndarray:
        ok = b.eval(tbox) == b.full
        return ok & ((b.eval(sub) & (b.full ^ b.eval(sup))) != 0)

    return search(cond, [sub, sup, tbox], max_domain, samples, seed)


def find_model(c: Concept, tbox: Concept | None = None, max_domain: int = 3,
               samples: int = 200_000, seed: int = 0) -> SearchResult:
    """Search for ``I`` satisfying the TBox concept everywhere with ``c^I`` nonempty."""
    tbox = tbox if tbox is not None else TOP

    def cond(b: _Batch) -> np.ndarray:
        return (b.eval(tbox) == b.full) & (b.eval(c) != 0)

    return search(cond, [c, tbox], max_domain, samples, seed)


# ---------------------------------------------------------------------------
# Checks and the explanation pipeline


@dataclass
class AntiExtensivityReport:
    concept: str
    variant: str
    retracted: str
    counterexample: DLInterpretation | None
    search: str


def check_anti_extensive(c: Concept, max_domain: int = 3, variant: str = "literal",
                         forall_bot: bool = True, seed: int = 0) -> AntiExtensivityReport:
    """Look for an interpretation where ``κ_f(c)^I ⊄ c^I``."""
    k = kappa_f(c, variant, forall_bot)
    res = find_counterexample(k, c, None, max_domain, seed=seed)
    return AntiExtensivityReport(to_str(c), variant, to_str(k), res.witness, res.describe())


@dataclass
class DLVerdict:
    relation: str
    variant: str
    chain: list[str]
    n: int
    bound: Concept
    candidate: str | None = None
    accepted: bool | None = None
    counterexample: DLInterpretation | None = None
    search: str = ""
    note: str = ("bounded check: subsumption tested by counterexample search over finite "
                 "interpretations; a found counterexample is definitive, its absence is not a proof")

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "variant": self.variant,
            "chain": self.chain,
            "n": self.n,
            "bound": to_str(self.bound),
            "candidate": self.candidate,
            "accepted": self.accepted,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
            "search": self.search,
            "note": self.note,
        }


def dl_explain(tbox: Sequence[Axiom], obs: Concept, candidate: Concept | None = None,
               relation: str = "lcr", variant: str = "literal", forall_bot: bool = True,
               max_domain: int = 3, samples: int = 200_000, seed: int = 0) -> DLVerdict:
    """Concept-level abduction with ``κ_f``.

    lcr retracts the internalized TBox and keeps the observation: the bound is
    ``κ^n(C_T)`` with ``n`` the last step where ``κ^n(C_T) ⊓ φ`` has a model.
    lnr retracts ``C_T ⊓ φ`` itself.  A candidate is accepted when it has a
    model under the TBox and no counterexample to ``ψ ⊑ bound`` (w.r.t. the
    TBox) is found.
    """
    obs = nnf(obs)
    ct = internalize(tbox)
    if relation == "lcr":
        chain = dl_chain(ct, variant, forall_bot)
        tested = [canonical(conj(c, obs), forall_bot) for c in chain]
    elif relation == "lnr":
        chain = dl_chain(conj(ct, obs), variant, forall_bot)
        tested = chain
    else:
        raise UnsupportedError(f"relation {relation!r} is not available for ALC")
    alive = [k for k, c in enumerate(tested)
             if not isinstance(c, CBot) and find_model(c, None, max_domain, samples, seed).found]
    if not alive:
        raise InconsistentError()
    n = alive[-1]
    verdict = DLVerdict(relation, variant, [to_str(c) for c in chain], n, chain[n])
    if candidate is not None:
        candidate = nnf(candidate)
        verdict.candidate = to_str(candidate)
        sat = find_model(candidate, ct, max_domain, samples, seed)
        res = find_counterexample(candidate, tested[n], ct, max_domain, samples, seed)
        verdict.accepted = sat.found and not res.found
        verdict.counterexample = res.witness
        verdict.search = res.describe()
    return verdict


SMURF_TBOX = "S [= exists p. B and exists t. (H and exists c. R)"
SMURF_OBS = "exists p. B and exists t. (H and exists c. R)"


def smurf_example(relation: str = "lnr", variant: str = "literal", max_domain: int = 3,
                  seed: int = 0) -> DLVerdict:
    """The smurf-leader example with candidate ``S``."""
    return dl_explain(parse_tbox(SMURF_TBOX), parse(SMURF_OBS), Atomic("S"), relation, variant,
                      max_domain=max_domain, seed=seed)
