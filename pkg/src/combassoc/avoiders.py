"""Counting trees that avoid a set of patterns.

A bottom-up deterministic tree automaton tracks, for each tree, which
subpatterns ("fragments") of the forbidden patterns occur at its root.
Counting avoiders of every arity is then a dynamic program over
(arity, state) with no tree ever materialized.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .congruence import DEFAULT_CAP, ResourceCapExceeded
from .rewriting import RuleSet, contains
from .series import CoefficientSeries, series_div
from .trees import LEAF, Tree, catalan, children, degree, enumerate_trees

State = FrozenSet[Tree]

# numerator of the Hilbert series of the 3-comb associative operad,
# coefficients of t^0 .. t^11 (the t^6 term is absent)
CAS3_NUMERATOR = (1, -1, 1, 1, 2, 2, 0, -7, -2, 1, 2, 1)


def fragments(patterns: Iterable[Tree]) -> FrozenSet[Tree]:
    """Every subtree of every pattern, the leaf included."""
    out = {LEAF}
    stack = list(patterns)
    while stack:
        t = stack.pop()
        if t in out:
            continue
        out.add(t)
        if t != LEAF:
            stack.extend(children(t))
    return frozenset(out)


@dataclass
class AvoiderAutomaton:
    patterns: Tuple[Tree, ...]
    closure: FrozenSet[Tree]
    leaf_state: State
    transitions: Dict[Tuple[State, State], State] = field(default_factory=dict)

    def __post_init__(self):
        self._targets = frozenset(self.patterns)
        # node fragments indexed by their pair of children
        self._by_children: Dict[Tuple[Tree, Tree], Tree] = {}
        for f in self.closure:
            if f != LEAF:
                self._by_children[children(f)] = f
        self.states: Dict[State, int] = {self.leaf_state: 0}

    def is_dead(self, state: State) -> bool:
        return not self._targets.isdisjoint(state)

    def step(self, left: State, right: State) -> State:
        key = (left, right)
        hit = self.transitions.get(key)
        if hit is not None:
            return hit
        out = {LEAF}
        for (fl, fr), f in self._by_children.items():
            if fl in left and fr in right:
                out.add(f)
        state = frozenset(out)
        self.transitions[key] = state
        self.states.setdefault(state, len(self.states))
        return state

    def run(self, t: Tree) -> State:
        if t == LEAF:
            return self.leaf_state
        left, right = children(t)
        return self.step(self.run(left), self.run(right))

    def accepts(self, t: Tree) -> bool:
        """True iff no pattern occurs anywhere in ``t``."""
        return self._avoids(t) is not None

    def _avoids(self, t: Tree):
        if t == LEAF:
            return self.leaf_state
        left, right = children(t)
        sl = self._avoids(left)
        if sl is None:
            return None
        sr = self._avoids(right)
        if sr is None:
            return None
        s = self.step(sl, sr)
        return None if self.is_dead(s) else s

    def explore(self) -> int:
        """Discover every state reachable from live states; returns the count."""
        live = [self.leaf_state]
        seen = {self.leaf_state}
        frontier = 0
        while frontier < len(live):
            upto = len(live)
            for i in range(upto):
                for j in range(upto):
                    if i < frontier and j < frontier:
                        continue
                    s = self.step(live[i], live[j])
                    if s not in seen:
                        seen.add(s)
                        if not self.is_dead(s):
                            live.append(s)
            frontier = upto
        return len(self.states)

    def table(self) -> List[Tuple[Tuple[Tree, ...], Tuple[Tree, ...], Tuple[Tree, ...]]]:
        """Transitions discovered so far, as sorted fragment lists."""
        key = lambda s: tuple(sorted(s))
        return sorted((key(a), key(b), key(c)) for (a, b), c in self.transitions.items())


def build_avoider_automaton(patterns: Sequence[Tree]) -> AvoiderAutomaton:
    patterns = tuple(sorted(set(patterns)))
    for p in patterns:
        if degree(p) < 1:
            raise ValueError("patterns must have an internal node")
    return AvoiderAutomaton(patterns, fragments(patterns), frozenset([LEAF]))


def count_avoiders(auto: AvoiderAutomaton, n_max: int) -> CoefficientSeries:
    """Number of pattern-avoiding trees of each arity 1..n_max."""
    # by_arity[n] maps live states to the number of avoiders of arity n
    by_arity: List[Counter] = [Counter(), Counter({auto.leaf_state: 1})]
    for n in range(2, n_max + 1):
        row: Counter = Counter()
        for k in range(1, n):
            for sl, cl in by_arity[k].items():
                for sr, cr in by_arity[n - k].items():
                    s = auto.step(sl, sr)
                    if not auto.is_dead(s):
                        row[s] += cl * cr
        by_arity.append(row)
    return CoefficientSeries(sum(by_arity[n].values()) for n in range(1, n_max + 1))


def brute_count_avoiders(patterns: Sequence[Tree], n_max: int, *, cap: int = DEFAULT_CAP) -> CoefficientSeries:
    """Enumerate every tree and test each pattern directly."""
    if catalan(n_max - 1) > cap:
        raise ResourceCapExceeded(f"arity {n_max} has {catalan(n_max - 1)} trees")
    patterns = list(patterns)
    return CoefficientSeries(
        sum(1 for t in enumerate_trees(n - 1) if not any(contains(t, p) for p in patterns))
        for n in range(1, n_max + 1)
    )


def hilbert_closed_form(n_max: int, numerator: Sequence[int] = CAS3_NUMERATOR) -> CoefficientSeries:
    """Coefficients of t^1..t^n_max in t * numerator(t) / (1 - t)^2."""
    expansion = series_div(numerator, [1, -2, 1], n_max)
    return CoefficientSeries(expansion[:n_max])


def count_rule_normal_forms(rules: RuleSet, n_max: int) -> CoefficientSeries:
    return count_avoiders(build_avoider_automaton(rules.lhs), n_max)
