"""Brute-force ground truth for the comb congruence.

For fixed ``d`` the congruence identifies the left and right combs of
degree ``d`` and is closed under every context. Both combs have the same
arity, so inside one arity the congruence is generated by swapping one
occurrence of a comb for the other. :func:`build_partition` enumerates
every tree of the arity and merges each tree with its single-swap
neighbours in a union-find.
"""

from __future__ import annotations

import json
import logging
import os
from array import array
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from .series import CoefficientSeries
from .trees import Tree, arity, catalan, enumerate_trees

log = logging.getLogger(__name__)

DEFAULT_CAP = 10**6
CACHE_ENV = "COMBASSOC_CACHE_DIR"
MAGIC = b"COMBASSOC-PARTITION\n"
FORMAT_VERSION = 1


class ResourceCapExceeded(RuntimeError):
    pass


class UnionFind:
    """Disjoint sets over ``range(n)``, path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True


@dataclass(frozen=True)
class ArityPartition:
    """Classes of the congruence on the trees of one arity.

    ``labels[i]`` is the index of the lex-least member of the class of
    ``trees[i]``; indices follow the lex order of ``trees``.
    """

    d: int
    arity: int
    trees: Sequence[Tree]
    labels: Sequence[int]

    @property
    def num_classes(self) -> int:
        return sum(1 for i, r in enumerate(self.labels) if i == r)

    def index(self, t: Tree) -> int:
        i = bisect_left(self.trees, t)
        if i == len(self.trees) or self.trees[i] != t:
            raise ValueError(f"{t} is not a tree of arity {self.arity}")
        return i

    def representative(self, t: Tree) -> Tree:
        return self.trees[self.labels[self.index(t)]]

    def same_class(self, a: Tree, b: Tree) -> bool:
        return self.labels[self.index(a)] == self.labels[self.index(b)]

    def classes(self) -> List[List[Tree]]:
        """Classes as lists of trees, ordered by their lex-least member."""
        groups = {}
        for t, r in zip(self.trees, self.labels):
            groups.setdefault(r, []).append(t)
        return [groups[r] for r in sorted(groups)]


def _comb_edges(d: int, trees: Sequence[Tree], lo: int, hi: int) -> array:
    """Pairs (i, j) where trees[j] is trees[i] with one left comb made right."""
    lead = "2" * d
    edges = array("l")
    for i in range(lo, hi):
        w = trees[i]
        p = w.find(lead)
        while p != -1:
            # walk the d subtrees hanging off the comb: first the one
            # below the deepest node, then one per node going up
            cut = [p + d]
            k = p + d
            for _ in range(d + 1):
                need = 1
                while need:
                    need += 1 if w[k] == "2" else -1
                    k += 1
                cut.append(k)
            subs = [w[cut[m]:cut[m + 1]] for m in range(d + 1)]
            v = w[:p] + "".join("2" + s for s in subs[:-1]) + subs[-1] + w[k:]
            edges.append(i)
            edges.append(bisect_left(trees, v))
            p = w.find(lead, p + 1)
    return edges


def _edges_chunk(args):
    d, n, lo, hi = args
    return _comb_edges(d, enumerate_trees(n - 1), lo, hi)


def _cache_file(cache_dir, d: int, n: int) -> Path:
    return Path(cache_dir) / f"partition-d{d}-n{n}.bin"


def _write_cache(path: Path, part: ArityPartition) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    header = json.dumps({"version": FORMAT_VERSION, "d": part.d, "arity": part.arity,
                         "count": len(part.labels)}).encode()
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(header + b"\n")
        array("l", part.labels).tofile(fh)
    os.replace(tmp, path)


def _read_cache(path: Path, d: int, n: int) -> Optional[array]:
    try:
        with open(path, "rb") as fh:
            if fh.read(len(MAGIC)) != MAGIC:
                return None
            header = json.loads(fh.readline())
            if header != {"version": FORMAT_VERSION, "d": d, "arity": n,
                          "count": catalan(n - 1)}:
                return None
            labels = array("l")
            labels.fromfile(fh, header["count"])
            return labels
    except (OSError, ValueError, EOFError):
        return None


def _resolve_cache_dir(cache_dir):
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV) or None
    return cache_dir


_memo: dict = {}


def _build(d: int, n: int, workers: int, cache_dir) -> ArityPartition:
    part = _memo.get((d, n))
    if part is None:
        part = _memo[d, n] = _compute(d, n, workers, cache_dir)
    return part


def _compute(d: int, n: int, workers: int, cache_dir) -> ArityPartition:
    trees = enumerate_trees(n - 1)
    if cache_dir is not None:
        labels = _read_cache(_cache_file(cache_dir, d, n), d, n)
        if labels is not None:
            return ArityPartition(d, n, trees, labels)

    size = len(trees)
    if d > n - 1:
        chunks = []
    elif workers > 1 and size > 20000:
        step = -(-size // (4 * workers))
        jobs = [(d, n, lo, min(lo + step, size)) for lo in range(0, size, step)]
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_edges_chunk, jobs))
    else:
        chunks = [_comb_edges(d, trees, 0, size)]

    uf = UnionFind(size)
    for edges in chunks:
        for k in range(0, len(edges), 2):
            uf.union(edges[k], edges[k + 1])

    rep_of_root = {}
    labels = array("l")
    for i in range(size):
        labels.append(rep_of_root.setdefault(uf.find(i), i))
    part = ArityPartition(d, n, trees, labels)
    log.debug("partition d=%d n=%d: %d trees, %d classes", d, n, size, part.num_classes)
    if cache_dir is not None:
        _write_cache(_cache_file(cache_dir, d, n), part)
    return part


def build_partition(d: int, n: int, *, cap: int = DEFAULT_CAP, workers: int = 1,
                    cache_dir=None) -> ArityPartition:
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    if catalan(n - 1) > cap:
        raise ResourceCapExceeded(f"arity {n} has {catalan(n - 1)} trees, cap is {cap}")
    cache_dir = _resolve_cache_dir(cache_dir)
    return _build(d, n, max(1, workers), None if cache_dir is None else str(cache_dir))


def dimension(d: int, n: int, **kw) -> int:
    return build_partition(d, n, **kw).num_classes


def dims_sequence(d: int, n_max: int, **kw) -> CoefficientSeries:
    return CoefficientSeries([dimension(d, n, **kw) for n in range(1, n_max + 1)])


def are_congruent(d: int, t1: Tree, t2: Tree, **kw) -> bool:
    if arity(t1) != arity(t2):
        raise ValueError("the congruence only relates trees of equal arity")
    if t1 == t2:
        return True
    return build_partition(d, arity(t1), **kw).same_class(t1, t2)


def refines(fine: ArityPartition, coarse: ArityPartition) -> bool:
    """True iff each class of ``fine`` sits inside one class of ``coarse``."""
    if fine.arity != coarse.arity:
        raise ValueError("partitions of different arities")
    target = {}
    for r_fine, r_coarse in zip(fine.labels, coarse.labels):
        if target.setdefault(r_fine, r_coarse) != r_coarse:
            return False
    return True

