"""Command line entry point: ``combassoc <subcommand> ...``.

Data goes to stdout, progress and warnings to stderr. Exit codes: 0 success,
1 a check failed, 2 usage or configuration error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from . import avoiders, completion, congruence
from .rewriting import DuplicateLhs, NonTerminating, RuleSet, check_termination_order
from .trees import MalformedEncoding, arity, left_comb, right_comb

log = logging.getLogger("combassoc")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SCHEMA = 1


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    d: Optional[int] = None
    max_arity: Optional[int] = None
    max_degree: Optional[int] = None
    verify_degree: Optional[int] = None
    fine: Optional[int] = None
    coarse: Optional[int] = None
    check_closed_form: bool = False
    rules: Optional[Path] = None
    out: Optional[Path] = None
    cache_dir: Optional[str] = None
    json: bool = False
    workers: int = 1
    cap: int = congruence.DEFAULT_CAP

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        fields = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__}
        cfg = cls(**fields)
        for name in ("d", "max_arity", "max_degree", "verify_degree", "fine", "coarse"):
            v = getattr(cfg, name)
            if v is not None and v < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if cfg.workers < 1:
            raise UsageError("--workers must be positive")
        return cfg

    def load_rules(self) -> RuleSet:
        try:
            return RuleSet.load(self.rules, oriented=False)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read rules from {self.rules}: {exc}") from exc


def _emit(cfg: RunConfig, doc: dict, text: str) -> None:
    if cfg.json:
        print(json.dumps({"schema": SCHEMA, **doc}))
    else:
        print(text)


def _csv(xs) -> str:
    return ",".join(map(str, xs))


def _partition_kw(cfg: RunConfig) -> dict:
    return {"cap": cfg.cap, "workers": cfg.workers, "cache_dir": cfg.cache_dir}


def cmd_dims(cfg: RunConfig) -> int:
    dims = []
    for n in range(1, cfg.max_arity + 1):
        dims.append(congruence.dimension(cfg.d, n, **_partition_kw(cfg)))
        log.info("d=%d arity %d: %d classes", cfg.d, n, dims[-1])
    _emit(cfg, {"d": cfg.d, "dims": dims}, _csv(dims))
    return EXIT_OK


def cmd_complete(cfg: RunConfig) -> int:
    conf = completion.CompletionConfig(
        cfg.d, cfg.max_degree, verify_degree=cfg.verify_degree,
        workers=cfg.workers, cap=cfg.cap,
    )
    try:
        report = completion.complete(conf)
    except completion.CompletionError as exc:
        log.error("completion failed: %s", exc)
        return EXIT_FAIL
    if cfg.out is not None:
        report.rules.dump(cfg.out)
    census = report.per_arity_counts.tolist()
    text = f"{len(report.rules)} rules\ncensus: {_csv(census)}"
    if report.partial:
        text += "\n(partial: not verified up to the 2l-1 bound)"
    _emit(cfg, report.to_dict(), text)
    if not check_termination_order(report.rules):
        return EXIT_FAIL
    if report.confluence is not None and not report.confluence.ok:
        return EXIT_FAIL
    return EXIT_OK


def infer_d(rules: RuleSet) -> Optional[int]:
    """Comb degree of the seed rule left_comb(d) -> right_comb(d), if any."""
    for r in rules:
        k = arity(r.lhs) - 1
        if r.lhs == left_comb(k) and r.rhs == right_comb(k):
            return k
    return None


def cmd_verify(cfg: RunConfig) -> int:
    rules = cfg.load_rules()
    if not rules.rules:
        log.warning("rule set is empty: every tree is a normal form")
    failures: List[str] = []
    doc: dict = {"rules": len(rules), "max_degree": cfg.max_degree}

    oriented = check_termination_order(rules)
    doc["terminating"] = oriented
    if not oriented:
        bad = [str(r) for r in rules if not r.decreasing]
        failures.append("not decreasing: " + "; ".join(bad))
        _emit(cfg, {**doc, "ok": False, "failures": failures}, "\n".join(["FAIL"] + failures))
        return EXIT_FAIL

    rep = completion.verify_confluence(rules, cfg.max_degree, workers=cfg.workers, cap=cfg.cap)
    doc["confluence"] = rep.to_dict()
    for t, nfs in rep.violations:
        failures.append(f"{t} has {len(nfs)} normal forms: {' '.join(nfs)}")

    d = cfg.d if cfg.d is not None else infer_d(rules)
    if d is None:
        if rules.rules:
            log.warning("no comb seed rule and no --d: skipping dimension comparison")
    else:
        dims = congruence.dims_sequence(d, cfg.max_degree + 1, **_partition_kw(cfg)).tolist()
        doc["d"] = d
        doc["dims"] = dims
        doc["normal_form_counts"] = rep.normal_form_counts
        if dims != rep.normal_form_counts:
            failures.append(f"normal forms {_csv(rep.normal_form_counts)} != dimensions {_csv(dims)}")

    ok = not failures
    doc["ok"] = ok
    lines = ["PASS" if ok else "FAIL", f"normal forms per arity: {_csv(rep.normal_form_counts)}"]
    _emit(cfg, {**doc, "failures": failures}, "\n".join(lines + failures))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_census(cfg: RunConfig) -> int:
    rules = cfg.load_rules()
    census = rules.census(cfg.max_arity)
    _emit(cfg, {"rules": len(rules), "census": census}, _csv(census))
    return EXIT_OK


def cmd_hilbert(cfg: RunConfig) -> int:
    rules = cfg.load_rules()
    counts = avoiders.count_avoiders(avoiders.build_avoider_automaton(rules.lhs), cfg.max_arity)
    doc = {"counts": counts.tolist()}
    rows = [f"{n}\t{c}" for n, c in enumerate(counts, 1)]
    ok = True
    if cfg.check_closed_form:
        # the closed form is known only for d = 3
        closed = avoiders.hilbert_closed_form(cfg.max_arity).tolist()
        ok = closed == counts.tolist()
        doc["closed_form_d3"] = closed
        doc["matches_closed_form"] = ok
        rows = [f"{n}\t{c}\t{e}\t{'ok' if c == e else 'MISMATCH'}"
                for n, (c, e) in enumerate(zip(counts, closed), 1)]
        rows.insert(0, "arity\tcount\tclosed form (d=3)\t")
    _emit(cfg, doc, "\n".join(rows))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_refine_check(cfg: RunConfig) -> int:
    fine, coarse = cfg.fine, cfg.coarse
    results = []
    for n in range(1, cfg.max_arity + 1):
        f = congruence.build_partition(fine, n, **_partition_kw(cfg))
        c = congruence.build_partition(coarse, n, **_partition_kw(cfg))
        results.append(congruence.refines(f, c))
    ok = all(results)
    text = "\n".join(f"arity {n}: {'ok' if r else 'FAIL'}" for n, r in enumerate(results, 1))
    _emit(cfg, {"fine": fine, "coarse": coarse, "refines": results, "ok": ok},
          text + f"\n{'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_show_rules(cfg: RunConfig) -> int:
    rules = cfg.load_rules()
    if cfg.json:
        print(json.dumps(rules.to_dict()))
    else:
        for r in rules:
            print(f"{arity(r.lhs)}\t{r.lhs} -> {r.rhs}")
    return EXIT_OK


COMMANDS = {
    "dims": cmd_dims,
    "complete": cmd_complete,
    "verify": cmd_verify,
    "census": cmd_census,
    "hilbert": cmd_hilbert,
    "refine-check": cmd_refine_check,
    "show-rules": cmd_show_rules,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="combassoc", description="Rewriting and completion for comb-associative operads.")
    p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--cap", type=int, default=congruence.DEFAULT_CAP,
                        help="maximum number of trees per arity")
        sp.add_argument("--cache-dir", default=None,
                        help=f"partition cache (default: ${congruence.CACHE_ENV})")

    sp = sub.add_parser("dims", help="dimensions of CAs(d) arity by arity")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--max-arity", type=int, required=True)
    common(sp)

    sp = sub.add_parser("complete", help="complete the comb relation into a rule set")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--verify-degree", type=int, default=None)
    sp.add_argument("--out", type=Path, default=None)
    common(sp)

    sp = sub.add_parser("verify", help="termination, confluence and dimension checks")
    sp.add_argument("--rules", type=Path, required=True)
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--d", type=int, default=None, help="comb degree (inferred from the seed rule)")
    common(sp)

    sp = sub.add_parser("census", help="number of rules per left-member arity")
    sp.add_argument("--rules", type=Path, required=True)
    sp.add_argument("--max-arity", type=int, default=None)
    common(sp)

    sp = sub.add_parser("hilbert", help="count normal forms with the avoider automaton")
    sp.add_argument("--rules", type=Path, required=True)
    sp.add_argument("--max-arity", type=int, required=True)
    sp.add_argument("--check-closed-form", action="store_true",
                    help="compare with the known closed form (d = 3 only)")
    common(sp)

    sp = sub.add_parser("refine-check", help="does CAs(fine) refine CAs(coarse) arity-wise")
    sp.add_argument("--fine", type=int, required=True)
    sp.add_argument("--coarse", type=int, required=True)
    sp.add_argument("--max-arity", type=int, required=True)
    common(sp)

    sp = sub.add_parser("show-rules", help="print a rules file")
    sp.add_argument("--rules", type=Path, required=True)
    common(sp)
    return p


def _setup_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    _setup_logging(ns.verbose)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[ns.subcommand](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MalformedEncoding, NonTerminating, DuplicateLhs, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except congruence.ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
