"""Command-line interface.

Exit codes: 0 on success, 1 on domain errors (inconsistent input, unsupported
combination, ...), 2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import dl, fol, horn, modal, pl
from .cutting import Cutting
from .errors import AbductionError, ParseError, UnsupportedError
from .explain import Generic, Lcr, Lnr, Tableau, accepts, characterize_models, cutting_for
from .postulates import POSTULATES, check, summary_table
from .retraction import Fixpoint, VacuumReached, from_key, iterate, verify_retraction
from .tableau import branch_formulas, choice_explanations, saturate

LOGICS = ("pl", "horn", "fol", "mpl", "alc")
RANDOMIZED = ("postulates", "dl-smurf")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Input helpers


def _inline_or_file(value: str, parse: Callable[[str], object]):
    """Parse ``value`` as a formula; fall back to reading it as a file path."""
    try:
        return parse(value)
    except ParseError:
        path = Path(value)
        if path.is_file():
            return parse(path.read_text(encoding="utf-8").strip())
        raise


def _signature(args, *formulas) -> pl.Signature:
    if args.vars:
        return pl.Signature.of(args.vars)
    return pl.Signature.from_formulas(*formulas)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for {args.command}")


def _propositional(args):
    """Theory, observation and signature for the pl and horn logics."""
    sig = pl.Signature.of(args.vars) if args.vars else None
    theory = []
    if args.theory:
        text = _read(args.theory)
        theory = horn.theory_from_clauses(horn.parse_horn(text, sig).clauses) if args.logic == "horn" \
            else pl.parse_theory(text, sig)
    phi = _inline_or_file(args.obs, lambda s: pl.parse(s, sig)) if args.obs is not None else None
    return theory, phi, sig or pl.Signature.from_formulas(*theory, *([phi] if phi is not None else []))


def _relation(args, sig: pl.Signature):
    logic = "horn" if args.logic == "horn" else "pl"
    if args.relation in ("lcr", "lnr"):
        kappa = from_key(args.retraction, sig, logic)
        return Lcr(kappa) if args.relation == "lcr" else Lnr(kappa)
    if args.relation == "generic":
        _require(args, "cutting")
        return Generic(Cutting.from_json(json.loads(_read(args.cutting))))
    if args.relation == "tableau":
        if logic != "pl":
            raise UnsupportedError("tableau relation is propositional only")
        return Tableau()
    raise UnsupportedError(f"unknown relation {args.relation!r}")


def _triv(args, sig):
    return horn.horn_triv(sig) if args.logic == "horn" else pl.ModelSet.empty(sig)


# ---------------------------------------------------------------------------
# Commands: each returns (json payload, text lines)


def cmd_retract(args):
    if args.logic in ("pl", "horn"):
        theory, phi, sig = _propositional(args)
        start = phi if phi is not None else pl.conjoin(theory)
        kappa = from_key(args.retraction, sig, "horn" if args.logic == "horn" else "pl")
        trace = iterate(kappa, start, sig=sig)
        steps = [{"k": s.k, "formula": pl.to_str(s.formula), "models": s.models.bitstrings()}
                 for s in trace.steps]
        kind = "vacuum" if isinstance(trace.terminal, VacuumReached) else "fixpoint"
        payload = {"retraction": kappa.name, "signature": list(sig.variables), "steps": steps,
                   "terminal": {"kind": kind, "k": trace.terminal.k}}
        lines = [f"k={s['k']}: {s['formula']}  {{{','.join(s['models'])}}}" for s in steps]
        lines.append(f"{kind} at k={trace.terminal.k}")
        return payload, lines
    _require(args, "obs")
    if args.logic == "fol":
        chain = [fol.to_str(f) for f in fol.fol_chain(_inline_or_file(args.obs, fol.parse))]
    elif args.logic == "mpl":
        chain = [modal.to_str(f) for f in modal.mpl_chain(_inline_or_file(args.obs, modal.parse))]
    else:
        c = dl.nnf(_inline_or_file(args.obs, dl.parse))
        chain = [dl.to_str(x) for x in dl.dl_chain(c, args.variant)]
    payload = {"logic": args.logic, "chain": chain}
    if args.logic == "alc":
        payload["variant"] = args.variant
    return payload, [f"k={k}: {f}" for k, f in enumerate(chain)]


def cmd_cut(args):
    if args.logic not in ("pl", "horn"):
        raise UnsupportedError(f"cuttings are built for pl and horn, not {args.logic}")
    _require(args, "obs")
    theory, phi, sig = _propositional(args)
    c = cutting_for(theory, phi, _relation(args, sig), sig)
    payload = c.to_json()
    if c.provenance:
        payload["provenance"] = list(c.provenance)
    lines = [f"base: {{{','.join(c.base.bitstrings())}}}"]
    for i, m in enumerate(c.members):
        origin = f"  (k={c.provenance[i]})" if c.provenance else ""
        lines.append(f"member: {{{','.join(m.bitstrings())}}}{origin}")
    lines.append("minimal: " + " ".join("{" + ",".join(m.bitstrings()) + "}" for m in c.min_elements()))
    return payload, lines


def cmd_explain(args):
    _require(args, "obs", "candidate")
    if args.logic == "fol":
        theory = fol.parse_theory(_read(args.theory)) if args.theory else []
        v = fol.fol_explain(theory, _inline_or_file(args.obs, fol.parse),
                            _inline_or_file(args.candidate, fol.parse), args.relation)
        return v.to_json(), _verdict_lines(v.to_json())
    if args.logic == "alc":
        tbox = dl.parse_tbox(_read(args.theory)) if args.theory else []
        v = dl.dl_explain(tbox, _inline_or_file(args.obs, dl.parse),
                          _inline_or_file(args.candidate, dl.parse), args.relation, args.variant,
                          seed=args.seed or 0)
        return v.to_json(), _verdict_lines(v.to_json())
    if args.logic == "mpl":
        raise UnsupportedError("explanations are not implemented for modal logic")
    theory, phi, sig = _propositional(args)
    psi = _inline_or_file(args.candidate, lambda s: pl.parse(s, sig))
    relation = _relation(args, sig)
    c = cutting_for(theory, phi, relation, sig)
    verdict = accepts(c, pl.theory_models(theory, sig) & pl.models(psi, sig))
    mins = c.min_elements()
    payload = verdict.to_json()
    payload["characterizing_formula"] = pl.to_str(pl.synthesize(mins[0])) if len(mins) == 1 else None
    return payload, _verdict_lines(payload)


def _verdict_lines(payload: dict) -> list[str]:
    out = []
    for key, value in payload.items():
        if isinstance(value, list):
            value = " ".join(json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v)
                             for v in value)
        elif isinstance(value, dict):
            value = json.dumps(value, sort_keys=True)
        elif isinstance(value, bool):
            value = str(value).lower()
        out.append(f"{key}: {value}")
    return out


def cmd_characterize(args):
    if args.logic not in ("pl", "horn"):
        raise UnsupportedError(f"characterize supports pl and horn, not {args.logic}")
    _require(args, "obs")
    theory, phi, sig = _propositional(args)
    ms = characterize_models(theory, phi, _relation(args, sig), sig)
    if args.logic == "horn":
        formula = horn.horn_synthesize(ms).to_formula()
    else:
        formula = pl.synthesize(ms)
    payload = {"models": ms.bitstrings(), "characterizing_formula": pl.to_str(formula)}
    return payload, [pl.to_str(formula), f"models: {{{','.join(ms.bitstrings())}}}"]


def cmd_tableau(args):
    if args.logic != "pl":
        raise UnsupportedError("tableaux are propositional only")
    _require(args, "obs")
    theory, phi, sig = _propositional(args)
    final, trace = saturate(theory, phi)
    psis = [pl.to_str(p) for p in branch_formulas(trace)]
    expl = [pl.to_str(p) for p in choice_explanations(final, theory, sig)]
    payload = {"theorem": final.closed, "psi": psis, "choice_explanations": expl}
    if args.trace:
        payload["trace"] = [s.to_json() for s in trace]
    lines = [s.render() for s in (trace if args.trace else [final])]
    lines.append(f"theorem: {str(final.closed).lower()}")
    lines += [f"psi{i}: {p}" for i, p in enumerate(psis, 1)]
    lines += [f"explanation: {e}" for e in expl]
    return payload, lines


def cmd_postulates(args):
    config = args.relation if ":" in args.relation else f"{args.relation}:{args.retraction}"
    names = args.postulate or list(POSTULATES)
    reports = [check(p, config, args.trials, args.seed or 0, broken=args.broken) for p in names]
    payload = {"config": config, "trials": args.trials, "seed": args.seed or 0,
               "reports": [r.to_json() for r in reports]}
    return payload, [f"config: {config}", summary_table(reports)]


def cmd_dl_smurf(args):
    rel = args.relation if args.relation in ("lcr", "lnr") else "lnr"
    v = dl.smurf_example(rel, args.variant, seed=args.seed or 0)
    return v.to_json(), _verdict_lines(v.to_json())


def cmd_fol_example(args):
    verdicts = fol.fol_lnr_example()
    payload = {"verdicts": [v.to_json() for v in verdicts]}
    lines = [f"{v.relation} n={v.n} {'accepted' if v.accepted else 'rejected'}: {v.candidate}"
             + (f"  counterexample {json.dumps(v.counterexample.to_json(), sort_keys=True)}"
                if v.counterexample else "")
             for v in verdicts]
    return payload, lines


def cmd_verify(args):
    if args.logic in ("pl", "horn"):
        sig = pl.Signature.of(args.vars) if args.vars else pl.Signature.of("a,b,c")
        logic = "horn" if args.logic == "horn" else "pl"
        kappa = from_key(args.retraction, sig, logic)
        classes = horn.horn_classes(sig) if logic == "horn" else None
        rep = verify_retraction(kappa, sig, classes)
        payload = {"retraction": kappa.name, "signature": list(sig.variables), "ok": rep.ok,
                   "classes_checked": rep.classes_checked, "max_steps": rep.max_steps,
                   "anti_extensivity_violations": [m.bitstrings() for m in rep.anti_extensivity_violations],
                   "fixpoints": [m.bitstrings() for m in rep.fixpoints],
                   "budget_exceeded": [m.bitstrings() for m in rep.budget_exceeded]}
        return payload, _verdict_lines(payload)
    _require(args, "obs")
    if args.logic == "alc":
        r = dl.check_anti_extensive(dl.nnf(_inline_or_file(args.obs, dl.parse)), 3, args.variant,
                                    seed=args.seed or 0)
        payload = {"concept": r.concept, "variant": r.variant, "retracted": r.retracted,
                   "counterexample": r.counterexample.to_json() if r.counterexample else None,
                   "search": r.search}
        return payload, _verdict_lines(payload)
    if args.logic == "fol":
        rep = fol.verify_fol_retraction([_inline_or_file(args.obs, fol.parse)])[0]
        extra = {"interpretations": rep.interpretations}
    else:
        rep = modal.verify_mpl_retraction([_inline_or_file(args.obs, modal.parse)])[0]
        extra = {"models_checked": rep.models_checked, "violations_at_dead_ends": rep.violations_at_dead_ends}
    payload = {"sentence": rep.sentence, "ok": rep.ok, **extra,
               "anti_extensivity_violations": [m.to_json() for m in rep.anti_extensivity_violations],
               "steps_to_antilogy": rep.steps_to_antilogy, "step_bound": rep.step_bound}
    return payload, _verdict_lines(payload)


COMMANDS = {
    "retract": cmd_retract, "cut": cmd_cut, "explain": cmd_explain, "characterize": cmd_characterize,
    "tableau": cmd_tableau, "postulates": cmd_postulates, "dl-smurf": cmd_dl_smurf,
    "fol-example": cmd_fol_example, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abduce", description="Abductive explanations from cuttings and retractions.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--logic", choices=LOGICS, default="pl")
        s.add_argument("--relation", default="lcr",
                       help="lcr | lnr | generic | tableau; for postulates also lcr:<retraction>")
        s.add_argument("--retraction", default="erosion:hamming",
                       help="erosion:hamming | erosion:restricted(a,b) | erosion:ring2(a,b) | "
                            "erosion:custom(path) | tableau-h:left|right|both")
        s.add_argument("--theory", help="theory file (formulas, Horn clauses or TBox axioms per line)")
        s.add_argument("--obs", help="observation: inline formula or file path")
        s.add_argument("--candidate", help="candidate explanation: inline formula or file path")
        s.add_argument("--vars", help="signature, e.g. a,b,c")
        s.add_argument("--cutting", help="cutting JSON file for --relation generic")
        s.add_argument("--variant", choices=dl.VARIANTS, default="literal", help="concept retraction variant")
        s.add_argument("--json", action="store_true")
        s.add_argument("--seed", type=int)
        s.add_argument("--trials", type=int, default=1000)
        if name == "tableau":
            s.add_argument("--trace", action="store_true")
        if name == "postulates":
            s.add_argument("--postulate", action="append", choices=POSTULATES)
            s.add_argument("--broken", action="store_true", help="mutated relation without consistency test")
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    randomized = args.command in RANDOMIZED or (args.logic == "alc" and args.command in ("explain", "verify"))
    try:
        if args.json and randomized and args.seed is None:
            raise UsageError(f"{args.command} needs an explicit --seed with --json")
        payload, lines = COMMANDS[args.command](args)
    except (UsageError, ParseError) as exc:
        return _fail(args, 2, exc, out, err)
    except ValueError as exc:
        # malformed argument values, e.g. a bad --vars list
        return _fail(args, 2, UsageError(str(exc)), out, err)
    except AbductionError as exc:
        return _fail(args, 1, exc, out, err)
    if args.json:
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return 0


def _fail(args, code: int, exc: Exception, out, err) -> int:
    err.write(f"abduce: error: {exc}\n")
    if args.json:
        out.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}, ensure_ascii=False) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
