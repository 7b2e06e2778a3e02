"""Randomized checks of the rationality postulates for cutting-based explanation.

Each postulate is a rule "premises ⟹ conclusion" over ``T``, ``φ``, ``φ'``,
``ψ``, ``ψ'``.  A trial draws an instance, steers some of its formulas so the
premises hold reasonably often, evaluates the premises and, when they hold,
the conclusion.  Every trial has its own seed, so a violation can be replayed
with ``check(postulate, config, trials=1, seed=violation["seed"], base_trial=...)``.

Postulates that talk about the cutting for a modified observation (``φ ∧ φ'``,
``φ ∨ φ'``, ...) take it from :func:`restrict` or :func:`oplus`, as the
stability equations prescribe.  By default the restriction keeps members that
collapse to Triv, which is what those equations state; the variant that drops
them is measured in ``lemma_violations``.  ``raw_mismatches`` counts trials
where the freshly built lcr/lnr cutting differs from the derived one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .cutting import Cutting, build_lcr, build_lnr, model_relation, oplus, restrict
from .errors import DegenerateRestrictionError, InconsistentError, UnsupportedError
from .pl import (BOT, And, Formula, Implies, ModelSet, Not, Or, Signature, Var, conj,
                 models, synthesize, theory_models, to_str)
from .retraction import Retraction, from_key

POSTULATES = ("LLE", "RLE", "E-CM", "E-C-Cut", "E-R-Cut", "LOR", "E-DR", "ROR", "RS",
              "E-Reflexivity", "E-Con", "P5-conj-strengthen", "P7", "P8", "P10", "P11", "P13")

# what each rule says, as "premises ⟹ conclusion"
DESCRIPTIONS = {
    "LLE": "φ ▷ ψ and φ ≡_T φ' ⟹ φ' ▷ ψ",
    "RLE": "φ ▷ ψ and ψ ≡_T ψ' ⟹ φ ▷ ψ'",
    "E-CM": "φ ▷ ψ and T ∪ {ψ} ⊨ φ' ⟹ ψ accepted for φ ∧ φ' (restricted cutting)",
    "E-C-Cut": "ψ accepted for φ ∧ φ' and every ψ' with φ ▷ ψ' entails φ' ⟹ φ ▷ ψ",
    "E-R-Cut": "ψ accepted for φ ∧ φ' and some ψ' with φ ▷ ψ' entails φ' ⟹ φ ▷ ψ",
    "LOR": "ψ accepted for φ (restriction of the φ ∨ φ' cutting) ⟹ ψ accepted for φ ∨ φ'",
    "E-DR": "φ ▷ ψ and φ' ▷ ψ' ⟹ ψ or ψ' accepted for φ ∨ φ' (combined cutting)",
    "ROR": "φ ▷ ψ and φ ▷ ψ' with a total model relation ⟹ φ ▷ ψ ∨ ψ'",
    "RS": "φ ▷ ψ and ψ' ⊨_T ψ with ψ' nontrivial ⟹ φ ▷ ψ'",
    "E-Reflexivity": "φ ▷ ψ ⟹ ψ accepted for ψ (cutting restricted to ψ)",
    "E-Con": "consistent φ has an accepted candidate; inconsistent φ accepts nothing",
    "P5-conj-strengthen": "φ ▷ ψ and ψ ∧ ψ' nontrivial ⟹ φ ▷ ψ ∧ ψ'",
    "P7": "φ ▷ ψ ∧ ψ' and ψ ⊨_T ψ' ⟹ φ ▷ ψ",
    "P8": "ψ accepted for the cutting restricted to φ' ⟹ φ ▷ ψ",
    "P10": "ψ accepted for φ ∨ φ' and ψ ⊨_T φ ⟹ ψ accepted for φ (restricted)",
    "P11": "φ ▷ ψ ∨ ψ' and ψ nontrivial ⟹ φ ▷ ψ",
    "P13": "ψ accepted for φ ⇒ φ' and ψ ⊨_T φ ⟹ ψ accepted for φ' (restricted)",
}

NAMES = ("a", "b", "c", "d")
MAX_ATTEMPTS = 1000


class Instance(NamedTuple):
    theory: tuple[Formula, ...]
    phi: Formula
    phi_prime: Formula
    psi: Formula
    psi_prime: Formula


def random_formula(rng: random.Random, sig: Signature, depth: int = 4) -> Formula:
    names = sig.variables
    if depth <= 0 or rng.random() < 0.3:
        v = Var(rng.choice(names))
        return Not(v) if rng.random() < 0.4 else v
    op = rng.random()
    if op < 0.15:
        return Not(random_formula(rng, sig, depth - 1))
    node = And if op < 0.55 else Or if op < 0.85 else Implies
    return node(random_formula(rng, sig, depth - 1), random_formula(rng, sig, depth - 1))


def random_instance(seed: int, sig: Signature) -> Instance:
    """Seeded instance with ``T ∪ {φ}`` consistent; formulas have depth at most 4."""
    if len(sig) > 4:
        raise ValueError("instances are generated for at most 4 variables")
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        theory = tuple(random_formula(rng, sig) for _ in range(rng.randint(1, 3)))
        phi = random_formula(rng, sig)
        if theory_models(theory, sig) & models(phi, sig):
            return Instance(theory, phi, random_formula(rng, sig), random_formula(rng, sig),
                            random_formula(rng, sig))
    raise RuntimeError(f"no consistent instance after {MAX_ATTEMPTS} attempts")


@dataclass
class PostulateReport:
    postulate: str
    config: str
    trials: int
    premises_held: int = 0
    violations: list[dict] = field(default_factory=list)
    lemma_violations: int = 0
    raw_mismatches: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "postulate": self.postulate,
            "config": self.config,
            "trials": self.trials,
            "premises_held": self.premises_held,
            "violations": self.violations,
            "lemma_violations": self.lemma_violations,
            "raw_mismatches": self.raw_mismatches,
        }


# ---------------------------------------------------------------------------
# Relation under test


class _Relation:
    """``φ ▷ ψ`` for one theory, with fresh lcr/lnr cuttings cached by ``Mod(T ∪ {φ})``."""

    def __init__(self, kind: str, kappa: Retraction, theory, sig: Signature, broken: bool):
        self.kind, self.kappa, self.theory, self.sig = kind, kappa, theory, sig
        self.broken = broken
        self.mod_t = theory_models(theory, sig)
        self.triv = kappa.triv(sig)
        self._cache: dict[int, Cutting | None] = {}

    def cutting(self, phi: Formula) -> Cutting | None:
        key = (self.mod_t & models(phi, self.sig)).bits
        if key not in self._cache:
            build = build_lcr if self.kind == "lcr" else build_lnr
            try:
                self._cache[key] = build(self.theory, phi, self.kappa, self.sig)
            except InconsistentError:
                # the mutated relation skips the consistency test and keeps going
                empty = ModelSet.empty(self.sig)
                self._cache[key] = Cutting.of(empty, [empty], self.triv) if self.broken else None
        return self._cache[key]

    def cand(self, psi: Formula | ModelSet) -> ModelSet:
        ms = psi if isinstance(psi, ModelSet) else models(psi, self.sig)
        return self.mod_t & ms

    def acc(self, c: Cutting | None, psi: Formula | ModelSet) -> bool:
        if c is None:
            return False
        cand = self.cand(psi)
        if not self.broken and not cand - c.triv:
            return False
        return any(cand <= m for m in c.min_elements())

    def holds(self, phi: Formula, psi: Formula | ModelSet) -> bool:
        return self.acc(self.cutting(phi), psi)

    def entails(self, psi: Formula, target: Formula) -> bool:
        return self.cand(psi) <= models(target, self.sig)

    def nontrivial(self, psi: Formula) -> bool:
        return bool(self.cand(psi) - self.triv)


def _parse_config(config: str) -> tuple[str, str]:
    kind, _, key = config.partition(":")
    if kind not in ("lcr", "lnr") or not key:
        raise UnsupportedError(f"postulate config must be 'lcr:<retraction>' or 'lnr:<retraction>', not {config!r}")
    return kind, key


# ---------------------------------------------------------------------------
# Steering helpers


def _subset(rng: random.Random, ms: ModelSet, p: float = 0.5) -> ModelSet:
    return ModelSet.from_indices(ms.signature, [v for v in ms if rng.random() < p])


def _equivalent(rng, rel: _Relation, f: Formula) -> Formula:
    """A formula with the same models inside ``Mod(T)`` and random ones outside."""
    return synthesize(rel.cand(f) | _subset(rng, rel.mod_t.complement()))


def _accepted_for(rng, rel: _Relation, c: Cutting | None, fallback: Formula) -> Formula:
    """Usually a candidate inside a minimal member of ``c``, otherwise ``fallback``."""
    if c is None or rng.random() < 0.35:
        return fallback
    m = rng.choice(c.min_elements()) - c.triv
    if not m:
        return fallback
    core = _subset(rng, m) or ModelSet.from_indices(m.signature, [rng.choice(list(m))])
    return synthesize(core | c.triv | _subset(rng, rel.mod_t.complement()))


def _above(rng, rel: _Relation, ms: ModelSet) -> Formula:
    """A formula whose models include ``ms``."""
    return synthesize(ms | _subset(rng, ms.complement()))


# ---------------------------------------------------------------------------
# Checkers: each returns (premises held, conclusion held), or None when the
# trial had no usable setup.  ``extra`` collects side measurements.


@dataclass
class _Trial:
    rng: random.Random
    rel: _Relation
    inst: Instance
    extra: dict = field(default_factory=dict)

    @property
    def sig(self) -> Signature:
        return self.rel.sig


def _restrict(c: Cutting | None, phi_prime: Formula, keep_triv: bool = True) -> Cutting | None:
    if c is None:
        return None
    try:
        return restrict(c, phi_prime, keep_triv=keep_triv)
    except DegenerateRestrictionError:
        return None


def _lle(t: _Trial):
    r, phi = t.rel, t.inst.phi
    psi = _accepted_for(t.rng, r, r.cutting(phi), t.inst.psi)
    phi2 = _equivalent(t.rng, r, phi)
    return r.holds(phi, psi), r.holds(phi2, psi)


def _rle(t: _Trial):
    r, phi = t.rel, t.inst.phi
    psi = _accepted_for(t.rng, r, r.cutting(phi), t.inst.psi)
    psi2 = _equivalent(t.rng, r, psi)
    return r.holds(phi, psi), r.holds(phi, psi2)


def _rs(t: _Trial):
    r, phi = t.rel, t.inst.phi
    psi = _accepted_for(t.rng, r, r.cutting(phi), t.inst.psi)
    psi2 = And(psi, t.inst.psi_prime) if t.rng.random() < 0.5 else synthesize(_subset(t.rng, r.cand(psi)))
    premise = r.holds(phi, psi) and r.entails(psi2, psi) and r.nontrivial(psi2)
    return premise, r.holds(phi, psi2)


def _econ(t: _Trial):
    """Both directions: a consistent observation has an accepted candidate, an inconsistent one has none."""
    r, phi = t.rel, t.inst.phi
    c = r.cutting(phi)
    ok = c is not None and any(r.acc(c, synthesize(m)) for m in c.min_elements())
    bad_phi = synthesize(_subset(t.rng, r.mod_t.complement()))
    for psi in (BOT, t.inst.psi, bad_phi):
        if r.holds(bad_phi, psi):
            ok = False
    return True, ok


def _p5(t: _Trial):
    r, phi = t.rel, t.inst.phi
    psi = _accepted_for(t.rng, r, r.cutting(phi), t.inst.psi)
    both = And(psi, t.inst.psi_prime)
    return r.holds(phi, psi) and r.nontrivial(both), r.holds(phi, both)


def _ecm(t: _Trial):
    r, phi = t.rel, t.inst.phi
    c = r.cutting(phi)
    psi = _accepted_for(t.rng, r, c, t.inst.psi)
    phi2 = _above(t.rng, r, r.cand(psi)) if t.rng.random() < 0.7 else t.inst.phi_prime
    if not (r.acc(c, psi) and r.entails(psi, phi2)):
        return False, True
    restricted = _restrict(c, phi2)
    lemma = _restrict(c, phi2, keep_triv=False)
    t.extra["lemma"] = not r.acc(lemma, psi)
    fresh = r.cutting(And(phi, phi2))
    t.extra["raw"] = fresh is None or lemma is None or set(fresh.members) != set(lemma.members)
    return True, r.acc(restricted, psi)


def _p7(t: _Trial):
    r, phi = t.rel, t.inst.phi
    psi = _accepted_for(t.rng, r, r.cutting(phi), t.inst.psi)
    psi2 = _above(t.rng, r, r.cand(psi)) if t.rng.random() < 0.7 else t.inst.psi_prime
    premise = r.holds(phi, And(psi, psi2)) and r.entails(psi, psi2)
    return premise, r.holds(phi, psi)


def _cut_setup(t: _Trial):
    """``φ'`` covering some minimal members, the restricted cutting and a candidate for it."""
    r, phi = t.rel, t.inst.phi
    c = r.cutting(phi)
    if c is None:
        return None
    if t.rng.random() < 0.6:
        cover = ModelSet.empty(t.sig)
        for m in c.min_elements():
            if t.rng.random() < 0.7:
                cover = cover | m
        phi2 = _above(t.rng, r, cover)
    else:
        phi2 = t.inst.phi_prime
    restricted = _restrict(c, phi2)
    psi = _accepted_for(t.rng, r, restricted, t.inst.psi)
    return c, phi2, restricted, psi


def _ec_cut(t: _Trial):
    r = t.rel
    setup = _cut_setup(t)
    if setup is None:
        return False, True
    c, phi2, restricted, psi = setup
    if restricted is None or not r.acc(restricted, psi):
        return False, True
    target = models(phi2, t.sig)
    # ∀ψ' ranges over every semantic class of the signature
    for bits in range(1 << t.sig.n_valuations):
        cls = ModelSet(t.sig, bits)
        if r.acc(c, cls) and not r.cand(cls) <= target:
            return False, True
    return True, r.acc(c, psi)


def _er_cut(t: _Trial):
    r = t.rel
    setup = _cut_setup(t)
    if setup is None:
        return False, True
    c, phi2, restricted, psi = setup
    if restricted is None or not r.acc(restricted, psi):
        return False, True
    target = models(phi2, t.sig)
    # a witness ψ' exists iff a single model of some minimal member inside φ' works
    witness = any(r.acc(c, ModelSet.from_indices(t.sig, [v]))
                  for m in c.min_elements() for v in (m & target) - c.triv)
    return witness, r.acc(c, psi)


def _p8(t: _Trial):
    r = t.rel
    setup = _cut_setup(t)
    if setup is None:
        return False, True
    c, phi2, restricted, psi = setup
    if restricted is None or not (c.base & models(phi2, t.sig)) - c.triv:
        return False, True
    premise = r.acc(restricted, psi)
    if premise:
        lemma = _restrict(c, phi2, keep_triv=False)
        t.extra["lemma"] = r.acc(lemma, psi) and not r.acc(c, psi)
    return premise, r.acc(c, psi)


def _disjunction_setup(t: _Trial):
    r, phi = t.rel, t.inst.phi
    whole = r.cutting(Or(phi, t.inst.phi_prime))
    part = _restrict(whole, phi)
    return whole, part


def _lor(t: _Trial):
    r = t.rel
    whole, part = _disjunction_setup(t)
    psi = _accepted_for(t.rng, r, part, t.inst.psi)
    premise = r.acc(part, psi)
    if premise:
        lemma = _restrict(whole, t.inst.phi, keep_triv=False)
        t.extra["lemma"] = r.acc(lemma, psi) and not r.acc(whole, psi)
        fresh = r.cutting(t.inst.phi)
        t.extra["raw"] = fresh is None or lemma is None or set(fresh.members) != set(lemma.members)
    return premise, r.acc(whole, psi)


def _p10(t: _Trial):
    r = t.rel
    whole, part = _disjunction_setup(t)
    psi = _accepted_for(t.rng, r, whole, t.inst.psi)
    premise = r.acc(whole, psi) and r.entails(psi, t.inst.phi)
    return premise, r.acc(part, psi)


def _p11(t: _Trial):
    r, phi = t.rel, t.inst.phi
    either = _accepted_for(t.rng, r, r.cutting(phi), t.inst.psi)
    psi, psi2 = (either, t.inst.psi_prime) if t.rng.random() < 0.5 else (t.inst.psi_prime, either)
    premise = r.holds(phi, Or(psi, psi2)) and r.nontrivial(psi)
    return premise, r.holds(phi, psi)


def _ror(t: _Trial):
    r, phi = t.rel, t.inst.phi
    c = r.cutting(phi)
    psi = _accepted_for(t.rng, r, c, t.inst.psi)
    psi2 = _accepted_for(t.rng, r, c, t.inst.psi_prime)
    premise = c is not None and r.acc(c, psi) and r.acc(c, psi2) and model_relation(c).is_total()
    return premise, r.acc(c, Or(psi, psi2))


def _p13(t: _Trial):
    r, phi, phi2 = t.rel, t.inst.phi, t.inst.phi_prime
    whole = r.cutting(Implies(phi, phi2))
    psi = _accepted_for(t.rng, r, whole, t.inst.psi)
    if t.rng.random() < 0.5:
        psi = And(psi, phi)
    premise = r.acc(whole, psi) and r.entails(psi, phi)
    return premise, r.acc(_restrict(whole, phi2), psi)


def _reflexivity(t: _Trial):
    r, phi = t.rel, t.inst.phi
    c = r.cutting(phi)
    psi = _accepted_for(t.rng, r, c, t.inst.psi)
    if not r.acc(c, psi):
        return False, True
    return True, r.acc(_restrict(c, psi), psi)


def _edr(t: _Trial):
    r, phi = t.rel, t.inst.phi
    phi2 = t.inst.phi_prime if r.nontrivial(t.inst.phi_prime) else synthesize(r.mod_t)
    c1, c2 = r.cutting(phi), r.cutting(phi2)
    if c1 is None or c2 is None:
        return False, True
    psi = _accepted_for(t.rng, r, c1, t.inst.psi)
    psi2 = _accepted_for(t.rng, r, c2, t.inst.psi_prime)
    combined = oplus(c1, c2)
    fresh = r.cutting(Or(phi, phi2))
    t.extra["raw"] = fresh is None or set(fresh.members) != set(combined.members)
    premise = r.acc(c1, psi) and r.acc(c2, psi2)
    return premise, r.acc(combined, psi) or r.acc(combined, psi2)


_CHECKERS: dict[str, Callable[[_Trial], tuple[bool, bool]]] = {
    "LLE": _lle, "RLE": _rle, "E-CM": _ecm, "E-C-Cut": _ec_cut, "E-R-Cut": _er_cut,
    "LOR": _lor, "E-DR": _edr, "ROR": _ror, "RS": _rs, "E-Reflexivity": _reflexivity,
    "E-Con": _econ, "P5-conj-strengthen": _p5, "P7": _p7, "P8": _p8, "P10": _p10,
    "P11": _p11, "P13": _p13,
}

assert set(_CHECKERS) == set(POSTULATES) == set(DESCRIPTIONS)


def trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def trial_signature(postulate: str, trial: int) -> Signature:
    """2, 3 or 4 variables in rotation; E-C-Cut stays at 3 so its ∀ψ' premise is exhaustive."""
    n = 2 + trial % (2 if postulate == "E-C-Cut" else 3)
    return Signature(NAMES[:n])


def check(postulate: str, config: str = "lcr:erosion:hamming", trials: int = 1000, seed: int = 0,
          broken: bool = False, base_trial: int = 0) -> PostulateReport:
    """Run ``trials`` seeded trials of one postulate.

    ``broken`` swaps in a mutated relation that skips the consistency test,
    to show that the harness can report violations.
    """
    if postulate not in _CHECKERS:
        raise UnsupportedError(f"unknown postulate {postulate!r}")
    kind, key = _parse_config(config)
    report = PostulateReport(postulate, config, trials)
    for i in range(base_trial, base_trial + trials):
        s = trial_seed(seed, i)
        sig = trial_signature(postulate, i)
        inst = random_instance(s, sig)
        rel = _Relation(kind, from_key(key, sig), inst.theory, sig, broken)
        t = _Trial(random.Random(s + 1), rel, inst)
        premise, conclusion = _CHECKERS[postulate](t)
        report.lemma_violations += bool(t.extra.get("lemma"))
        report.raw_mismatches += bool(t.extra.get("raw"))
        if not premise:
            continue
        report.premises_held += 1
        if not conclusion:
            report.violations.append({
                "seed": seed,
                "trial": i,
                "signature": list(sig.variables),
                "theory": [to_str(f) for f in inst.theory],
                "phi": to_str(inst.phi),
                "phi_prime": to_str(inst.phi_prime),
                "psi": to_str(inst.psi),
                "psi_prime": to_str(inst.psi_prime),
                "config": config,
            })
    return report


def check_all(config: str = "lcr:erosion:hamming", trials: int = 1000, seed: int = 0,
              broken: bool = False) -> list[PostulateReport]:
    return [check(p, config, trials, seed, broken) for p in POSTULATES]


def summary_table(reports: list[PostulateReport]) -> str:
    rows = [f"{'postulate':<20} {'trials':>6} {'premise':>7} {'viol':>5} {'lemma':>5} {'raw':>5}"]
    for r in reports:
        rows.append(f"{r.postulate:<20} {r.trials:>6} {r.premises_held:>7} {len(r.violations):>5} "
                    f"{r.lemma_violations:>5} {r.raw_mismatches:>5}")
    return "\n".join(rows)
