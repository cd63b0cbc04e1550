"""Rewrite rules on binary trees and the relation they induce.

A rule ``lhs -> rhs`` rewrites any occurrence of the internal-node shape of
``lhs`` inside a host tree. Leaves of ``lhs`` bind arbitrary subtrees of the
host; those subtrees are carried over, left to right, onto the leaves of
``rhs``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .trees import Tree, arity, degree, parse_prefix_word, subtree_ends

SCHEMA = 1


class NoMatch(ValueError):
    pass


class NonTerminating(ValueError):
    """A rule is not strictly decreasing for the prefix-word order."""


class DuplicateLhs(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RewriteRule:
    lhs: Tree
    rhs: Tree

    def __post_init__(self):
        parse_prefix_word(self.lhs)
        parse_prefix_word(self.rhs)
        if degree(self.lhs) < 1:
            raise ValueError("a rule's left member must have an internal node")
        if arity(self.lhs) != arity(self.rhs):
            raise ValueError(
                f"arity mismatch: {self.lhs} has {arity(self.lhs)} leaves, "
                f"{self.rhs} has {arity(self.rhs)}"
            )

    @property
    def decreasing(self) -> bool:
        return self.lhs > self.rhs

    def reversed(self) -> "RewriteRule":
        return RewriteRule(self.rhs, self.lhs)

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class Match:
    rule_index: int
    position: int


def _match(w: str, ends: Sequence[int], p: int, pattern: str) -> Optional[List[Tuple[int, int]]]:
    """Spans of ``w`` bound to the leaves of ``pattern`` rooted at ``p``."""
    spans = []
    i = p
    for ch in pattern:
        if ch == "2":
            if w[i] != "2":
                return None
            i += 1
        else:
            j = ends[i]
            spans.append((i, j))
            i = j
    return spans


def _offsets(w: str, lead: str) -> Iterator[int]:
    # candidate roots: the pattern's literal run of 2s must appear there
    p = w.find(lead)
    while p != -1:
        yield p
        p = w.find(lead, p + 1)


def _lead(pattern: str) -> str:
    return pattern[: pattern.index("0")]


def find_matches(t: Tree, pattern: Tree, ends: Optional[Sequence[int]] = None) -> List[int]:
    """Offsets (preorder) of the nodes of ``t`` where ``pattern`` occurs."""
    if degree(pattern) < 1:
        raise ValueError("pattern must have at least one internal node")
    if ends is None:
        ends = subtree_ends(t)
    return [p for p in _offsets(t, _lead(pattern)) if _match(t, ends, p, pattern) is not None]


def contains(t: Tree, pattern: Tree) -> bool:
    ends = subtree_ends(t)
    return any(_match(t, ends, p, pattern) is not None for p in _offsets(t, _lead(pattern)))


def _rewrite(w: str, ends: Sequence[int], p: int, spans, rhs: str) -> str:
    it = iter(spans)
    parts = [w[:p]]
    for ch in rhs:
        if ch == "0":
            i, j = next(it)
            parts.append(w[i:j])
        else:
            parts.append("2")
    parts.append(w[ends[p]:])
    return "".join(parts)


def apply_at(t: Tree, rule: RewriteRule, p: int) -> Tree:
    ends = subtree_ends(t)
    spans = _match(t, ends, p, rule.lhs) if 0 <= p < len(t) else None
    if spans is None:
        raise NoMatch(f"{rule.lhs} does not occur in {t} at offset {p}")
    return _rewrite(t, ends, p, spans, rule.rhs)


class RuleSet:
    """An ordered, duplicate-free collection of rewrite rules.

    Rules are kept sorted by ``(degree(lhs), lhs)``. Unless ``oriented`` is
    False, every rule must be strictly decreasing for the prefix-word order,
    which guarantees termination of the induced relation.
    """

    def __init__(self, rules: Iterable[RewriteRule] = (), *, oriented: bool = True):
        rules = sorted(set(rules), key=lambda r: (degree(r.lhs), r.lhs, r.rhs))
        seen: Set[str] = set()
        for r in rules:
            if r.lhs in seen:
                raise DuplicateLhs(f"two rules rewrite {r.lhs}")
            seen.add(r.lhs)
            if oriented and not r.decreasing:
                raise NonTerminating(f"rule {r} does not decrease the prefix word")
        self.rules: Tuple[RewriteRule, ...] = tuple(rules)
        self.oriented = all(r.decreasing for r in self.rules)
        self._leads = [(_lead(r.lhs), r.lhs, r.rhs) for r in self.rules]
        self._nf_cache: Dict[str, str] = {}

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, str]], **kw) -> "RuleSet":
        return cls((RewriteRule(a, b) for a, b in pairs), **kw)

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __getitem__(self, i):
        return self.rules[i]

    def __eq__(self, other):
        return isinstance(other, RuleSet) and self.rules == other.rules

    def __hash__(self):
        return hash(self.rules)

    def __repr__(self):
        return f"RuleSet({[str(r) for r in self.rules]})"

    @property
    def lhs(self) -> List[Tree]:
        return [r.lhs for r in self.rules]

    @property
    def max_degree(self) -> int:
        return max((max(degree(r.lhs), degree(r.rhs)) for r in self.rules), default=0)

    def census(self, max_arity: Optional[int] = None) -> List[int]:
        """Number of rules per left-member arity, for arities 1..max_arity."""
        if max_arity is None:
            max_arity = max((arity(r.lhs) for r in self.rules), default=0)
        counts = [0] * max_arity
        for r in self.rules:
            a = arity(r.lhs)
            if a <= max_arity:
                counts[a - 1] += 1
        return counts

    def add(self, new: Iterable[RewriteRule]) -> "RuleSet":
        return RuleSet(list(self.rules) + list(new), oriented=self.oriented)

    # matching

    def matches(self, t: Tree, ends=None) -> List[Match]:
        if ends is None:
            ends = subtree_ends(t)
        out = []
        for k, (lead, lhs, _) in enumerate(self._leads):
            for p in _offsets(t, lead):
                if _match(t, ends, p, lhs) is not None:
                    out.append(Match(k, p))
        return out

    def is_normal(self, t: Tree) -> bool:
        ends = subtree_ends(t)
        for lead, lhs, _ in self._leads:
            for p in _offsets(t, lead):
                if _match(t, ends, p, lhs) is not None:
                    return False
        return True

    def reducts(self, t: Tree) -> Set[Tree]:
        """All trees obtained from ``t`` by one rewrite step."""
        ends = subtree_ends(t)
        out = set()
        for lead, lhs, rhs in self._leads:
            for p in _offsets(t, lead):
                spans = _match(t, ends, p, lhs)
                if spans is not None:
                    out.add(_rewrite(t, ends, p, spans, rhs))
        return out

    def step(self, t: Tree) -> Optional[Tree]:
        """One deterministic step: lowest rule index, then leftmost position."""
        ends = subtree_ends(t)
        for lead, lhs, rhs in self._leads:
            for p in _offsets(t, lead):
                spans = _match(t, ends, p, lhs)
                if spans is not None:
                    return _rewrite(t, ends, p, spans, rhs)
        return None

    def normal_form(self, t: Tree) -> Tree:
        if not self.oriented:
            raise NonTerminating("normal forms need a decreasing rule set")
        cache = self._nf_cache
        hit = cache.get(t)
        if hit is not None:
            return hit
        trail = []
        cur = t
        while True:
            hit = cache.get(cur)
            if hit is not None:
                cur = hit
                break
            nxt = self.step(cur)
            if nxt is None:
                break
            trail.append(cur)
            cur = nxt
        for u in trail:
            cache[u] = cur
        cache[t] = cur
        return cur

    # serialization

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "rules": [{"lhs": r.lhs, "rhs": r.rhs} for r in self.rules]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, doc: dict, **kw) -> "RuleSet":
        if "rules" not in doc:
            raise ValueError("rules document has no 'rules' list")
        return cls.from_pairs(((r["lhs"], r["rhs"]) for r in doc["rules"]), **kw)

    @classmethod
    def load(cls, path, **kw) -> "RuleSet":
        return cls.from_dict(json.loads(Path(path).read_text()), **kw)

    def dump(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n")


def one_step_reducts(t: Tree, rules: RuleSet) -> Set[Tree]:
    return rules.reducts(t)


def normal_form(t: Tree, rules: RuleSet) -> Tree:
    return rules.normal_form(t)


def check_termination_order(rules: Iterable[RewriteRule]) -> bool:
    """True iff every rule strictly decreases the prefix word."""
    return all(r.decreasing for r in rules)


def is_interreduced(rules: RuleSet) -> bool:
    for k, r in enumerate(rules):
        others = RuleSet([s for j, s in enumerate(rules) if j != k], oriented=False)
        if not others.is_normal(r.lhs) or not others.is_normal(r.rhs):
            return False
        if not RuleSet([r], oriented=False).is_normal(r.rhs):
            return False
    return True
