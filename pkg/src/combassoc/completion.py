"""Degree-staged completion of the comb relation into a convergent system.

The loop is driven by the congruence oracle: at each degree every class
of the partition must have a single normal form. When a class has several,
each non-minimal one is oriented towards the lex-least, then the system is
interreduced and the degree is re-examined.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .congruence import DEFAULT_CAP, ResourceCapExceeded, are_congruent, build_partition
from .rewriting import RewriteRule, RuleSet, apply_at, check_termination_order
from .series import CoefficientSeries
from .trees import LEAF, Tree, catalan, children, enumerate_trees, left_comb, node, right_comb, subtree_end

log = logging.getLogger(__name__)


class CompletionError(RuntimeError):
    pass


@dataclass
class CompletionConfig:
    d: int
    max_degree: int
    verify_degree: Optional[int] = None
    shuffle_seed: Optional[int] = None
    workers: int = 1
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("completion needs d >= 2")
        if self.max_degree < self.d:
            raise ValueError("max_degree must be at least d")

    @classmethod
    def default(cls, d: int, **kw) -> "CompletionConfig":
        bounds = {2: (4, 7), 3: (7, 13), 4: (11, None), 5: (10, None), 6: (10, None)}
        max_degree, verify = bounds.get(d, (2 * d - 2, None))
        kw.setdefault("max_degree", max_degree)
        kw.setdefault("verify_degree", verify)
        return cls(d, **kw)


@dataclass(frozen=True)
class Stage:
    degree: int
    classes_inspected: int
    rules_added: int


@dataclass(frozen=True)
class BranchingPair:
    source: Tree
    reduct_a: Tree
    reduct_b: Tree


@dataclass
class ConfluenceReport:
    up_to_degree: int
    violations: List[Tuple[Tree, Tuple[Tree, ...]]] = field(default_factory=list)
    normal_form_counts: List[int] = field(default_factory=list)
    trees_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "up_to_degree": self.up_to_degree,
            "trees_checked": self.trees_checked,
            "normal_form_counts": self.normal_form_counts,
            "violations": [{"tree": t, "normal_forms": list(nfs)} for t, nfs in self.violations],
        }


@dataclass
class CompletionReport:
    d: int
    rules: RuleSet
    per_arity_counts: CoefficientSeries
    stages: List[Stage]
    confluence: Optional[ConfluenceReport] = None

    @property
    def lemma_bound(self) -> int:
        """Degree up to which branching pairs must be joinable: 2*l - 1."""
        return 2 * self.rules.max_degree - 1

    @property
    def partial(self) -> bool:
        c = self.confluence
        return c is None or not c.ok or c.up_to_degree < self.lemma_bound

    def to_dict(self) -> dict:
        out = {
            "schema": 1,
            "d": self.d,
            "partial": self.partial,
            "per_arity_counts": self.per_arity_counts.tolist(),
            "stages": [vars(s) for s in self.stages],
            "rules": self.rules.to_dict()["rules"],
        }
        if self.confluence is not None:
            out["confluence"] = self.confluence.to_dict()
        return out


def interreduce(rules: RuleSet) -> RuleSet:
    """Reduced form of ``rules`` generating the same equivalence.

    Rules whose left member is reducible by another rule are dropped; if
    their two sides do not join under the remaining rules, the joined
    equation is re-oriented and added back. Right members are normalized.
    """
    if not check_termination_order(rules):
        raise CompletionError("interreduction needs a decreasing rule set")
    current = list(rules)
    while True:
        keep, dropped = [], []
        for k, r in enumerate(current):
            others = RuleSet([s for j, s in enumerate(current) if j != k])
            (keep if others.is_normal(r.lhs) else dropped).append(r)
        base = RuleSet(keep)
        extra = set()
        for r in dropped:
            a, b = base.normal_form(r.lhs), base.normal_form(r.rhs)
            if a != b:
                extra.add(RewriteRule(max(a, b), min(a, b)))
        if extra:
            current = keep + sorted(extra)
            continue
        normalized = [RewriteRule(r.lhs, base.normal_form(r.rhs)) for r in keep]
        result = RuleSet(normalized)
        if result == RuleSet(current) and not dropped:
            return result
        current = list(result)


def _class_normal_forms(rules: RuleSet, classes) -> List[List[Tree]]:
    out = []
    for cls in classes:
        nfs = {rules.normal_form(t) for t in cls}
        if len(nfs) > 1:
            out.append(sorted(nfs))
    return out


def complete(config: CompletionConfig) -> CompletionReport:
    d = config.d
    seed = RewriteRule(left_comb(d), right_comb(d))
    rules = RuleSet([seed])
    stages: List[Stage] = []
    rng = random.Random(config.shuffle_seed) if config.shuffle_seed is not None else None

    for g in range(d, config.max_degree + 1):
        part = build_partition(d, g + 1, cap=config.cap, workers=config.workers)
        classes = [c for c in part.classes() if len(c) > 1]
        while True:
            if rng is not None:
                rng.shuffle(classes)
            split = _class_normal_forms(rules, classes)
            new = []
            for nfs in split:
                target = nfs[0]
                for src in nfs[1:]:
                    if not src > target:
                        raise CompletionError(f"cannot orient {src} above {target}")
                    new.append(RewriteRule(src, target))
            stages.append(Stage(g, len(classes), len(new)))
            log.info("degree %d: %d classes, %d rules added", g, len(classes), len(new))
            if not new:
                break
            rules = interreduce(rules.add(new))

    if not check_termination_order(rules):
        raise CompletionError("completed system is not decreasing")
    counts = CoefficientSeries(rules.census(config.max_degree + 1))
    report = CompletionReport(d, rules, counts, stages)
    if config.verify_degree is not None:
        report.confluence = verify_confluence(rules, config.verify_degree,
                                              workers=config.workers, cap=config.cap)
    return report


def _unify(a: Tree, b: Tree) -> Tree:
    """Least common instance of two patterns whose leaves are wildcards."""
    if a == LEAF:
        return b
    if b == LEAF:
        return a
    al, ar = children(a)
    bl, br = children(b)
    return node(_unify(al, bl), _unify(ar, br))


def critical_pairs(r1: RewriteRule, r2: RewriteRule) -> List[BranchingPair]:
    """Minimal superpositions of ``r2.lhs`` onto an internal node of ``r1.lhs``."""
    pairs = []
    for q, ch in enumerate(r1.lhs):
        if ch != "2" or (q == 0 and r1 == r2):
            continue
        end = subtree_end(r1.lhs, q)
        source = r1.lhs[:q] + _unify(r1.lhs[q:end], r2.lhs) + r1.lhs[end:]
        ra = apply_at(source, r1, 0)
        rb = apply_at(source, r2, q)
        if ra != rb:
            pairs.append(BranchingPair(source, ra, rb))
    return pairs


def all_critical_pairs(rules: RuleSet) -> List[BranchingPair]:
    return [bp for r1 in rules for r2 in rules for bp in critical_pairs(r1, r2)]


def _confluence_at_arity(rules: RuleSet, n: int, limit: int = 1000):
    """Reachable normal forms of every tree of arity ``n``.

    Each reduct is lex-smaller than its source, so a single pass in lex
    order sees every reduct before the trees rewriting into it.
    """
    reach: Dict[Tree, object] = {}
    bad = []
    n_bad = 0
    normal = 0
    for t in enumerate_trees(n - 1):
        reds = rules.reducts(t)
        if not reds:
            reach[t] = t
            normal += 1
            continue
        seen = set()
        for s in reds:
            r = reach[s]
            if isinstance(r, str):
                seen.add(r)
            else:
                seen.update(r)
        if len(seen) == 1:
            reach[t] = seen.pop()
        else:
            reach[t] = frozenset(seen)
            n_bad += 1
            if len(bad) < limit:
                bad.append((t, tuple(sorted(seen))))
    return normal, bad, n_bad


def _confluence_job(args):
    pairs, n = args
    return _confluence_at_arity(RuleSet.from_pairs(pairs), n)


def verify_confluence(rules: RuleSet, up_to_degree: int, *, workers: int = 1,
                      cap: int = DEFAULT_CAP) -> ConfluenceReport:
    """Check that every tree of degree <= ``up_to_degree`` has one normal form."""
    if not check_termination_order(rules):
        raise CompletionError("confluence check needs a decreasing rule set")
    if catalan(up_to_degree) > cap:
        raise ResourceCapExceeded(f"degree {up_to_degree} has {catalan(up_to_degree)} trees")
    arities = range(1, up_to_degree + 2)
    if workers > 1:
        pairs = [(r.lhs, r.rhs) for r in rules]
        # largest arity first so it does not start last
        jobs = sorted(arities, reverse=True)
        with ProcessPoolExecutor(workers) as pool:
            results = dict(zip(jobs, pool.map(_confluence_job, [(pairs, n) for n in jobs])))
        results = [results[n] for n in arities]
    else:
        results = [_confluence_at_arity(rules, n) for n in arities]
    report = ConfluenceReport(up_to_degree)
    for n, (normal, bad, _n_bad) in zip(arities, results):
        report.normal_form_counts.append(normal)
        report.violations.extend(bad)
        report.trees_checked += catalan(n - 1)
    return report


def count_normal_forms(rules: RuleSet, n_max: int, *, cap: int = DEFAULT_CAP) -> CoefficientSeries:
    """Trees of each arity 1..n_max containing no left member."""
    if catalan(n_max - 1) > cap:
        raise ResourceCapExceeded(f"arity {n_max} has {catalan(n_max - 1)} trees")
    return CoefficientSeries(
        [sum(1 for t in enumerate_trees(n - 1) if rules.is_normal(t)) for n in range(1, n_max + 1)]
    )


def check_rule_soundness(rules: RuleSet, d: int) -> List[RewriteRule]:
    """Rules whose two members are not congruent (should be empty)."""
    return [r for r in rules if not are_congruent(d, r.lhs, r.rhs)]
