"""Planar binary trees stored as their prefix words.

A tree *is* its prefix word: a ``str`` over ``'0'`` (leaf) and ``'2'``
(internal node) read in preorder. Python's native string order already
is the lexicographic order with ``'0' < '2'``, and strings are immutable
and hashable, so one value serves as structure, ordering key, hash key
and wire format.

Positions of internal nodes are offsets into the word (the index of the
node's ``'2'``). Ascending offsets are preorder.
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from typing import Iterator, List, Sequence

Tree = str

LEAF: Tree = "0"
LEFT, RIGHT = "L", "R"


class MalformedEncoding(ValueError):
    """Raised for strings that are not the prefix word of a binary tree."""


def node(left: Tree, right: Tree) -> Tree:
    return "2" + left + right


def is_leaf(t: Tree) -> bool:
    return t == LEAF


def degree(t: Tree) -> int:
    return t.count("2")


def arity(t: Tree) -> int:
    return t.count("0")


def is_valid_word(w: str) -> bool:
    need = 1
    for ch in w:
        if need == 0:
            return False
        if ch == "2":
            need += 1
        elif ch == "0":
            need -= 1
        else:
            return False
    return need == 0


def parse_prefix_word(w: str) -> Tree:
    """Validate ``w`` and return the tree it encodes."""
    if not isinstance(w, str):
        raise TypeError(f"prefix word must be a str, got {type(w).__name__}")
    if not is_valid_word(w):
        raise MalformedEncoding(f"not a prefix word of a binary tree: {w!r}")
    return w


def prefix_word(t: Tree) -> str:
    return t


def compare_lex(a: str, b: str) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return (a > b) - (a < b)


def subtree_end(w: str, i: int) -> int:
    """Index just past the subtree whose root symbol sits at ``w[i]``."""
    need = 1
    n = len(w)
    while need:
        if i >= n:
            raise MalformedEncoding(f"truncated subtree in {w!r}")
        need += 1 if w[i] == "2" else -1
        i += 1
    return i


def subtree_ends(w: str) -> List[int]:
    """``ends[i] == subtree_end(w, i)`` for every offset, in one pass."""
    ends = [0] * len(w)
    stack: List[List[int]] = []  # [offset, children still to close]
    for i, ch in enumerate(w):
        if ch == "2":
            stack.append([i, 2])
            continue
        ends[i] = i + 1
        while stack:
            top = stack[-1]
            top[1] -= 1
            if top[1]:
                break
            stack.pop()
            ends[top[0]] = i + 1
    return ends


def children(t: Tree) -> tuple[Tree, Tree]:
    if t == LEAF:
        raise ValueError("a leaf has no children")
    mid = subtree_end(t, 1)
    return t[1:mid], t[mid:]


def subtree_at(t: Tree, offset: int) -> Tree:
    return t[offset:subtree_end(t, offset)]


def offset_of(t: Tree, path: Sequence[str]) -> int:
    """Offset of the node reached from the root by a LEFT/RIGHT path."""
    i = 0
    for step in path:
        if t[i] != "2":
            raise IndexError(f"path {''.join(path)!r} walks below a leaf")
        i = i + 1 if step == LEFT else subtree_end(t, i + 1)
    return i


def path_of(t: Tree, offset: int) -> str:
    """Inverse of :func:`offset_of`, returned as a string over ``'LR'``."""
    if not 0 <= offset < len(t):
        raise IndexError(offset)
    path = []
    i = 0
    while i != offset:
        mid = subtree_end(t, i + 1)
        if offset < mid:
            path.append(LEFT)
            i += 1
        else:
            path.append(RIGHT)
            i = mid
    return "".join(path)


def compose_at(t: Tree, i: int, s: Tree) -> Tree:
    """Graft ``s`` onto the ``i``-th leaf of ``t`` (leaves numbered from 1)."""
    if not 1 <= i <= arity(t):
        raise IndexError(f"leaf {i} out of range for arity {arity(t)}")
    pos = -1
    for _ in range(i):
        pos = t.index("0", pos + 1)
    return t[:pos] + s + t[pos + 1:]


def compose(t: Tree, subs: Sequence[Tree]) -> Tree:
    """Full composition: graft ``subs[k]`` onto leaf ``k + 1`` of ``t``."""
    if len(subs) != arity(t):
        raise ValueError(f"need {arity(t)} trees, got {len(subs)}")
    it = iter(subs)
    return "".join(next(it) if ch == "0" else ch for ch in t)


def left_comb(d: int) -> Tree:
    if d < 1:
        raise ValueError("a comb has at least one internal node")
    return "2" * d + "0" * (d + 1)


def right_comb(d: int) -> Tree:
    if d < 1:
        raise ValueError("a comb has at least one internal node")
    return "20" * d + "0"


@lru_cache(maxsize=None)
def catalan(d: int) -> int:
    if d == 0:
        return 1
    return sum(catalan(k) * catalan(d - 1 - k) for k in range(d))


@lru_cache(maxsize=None)
def _trees_upto(d: int) -> tuple[Tree, ...]:
    # all trees of degree < d merged in lex order, the candidate left subtrees
    return tuple(heapq.merge(*(enumerate_trees(k) for k in range(d))))


@lru_cache(maxsize=24)
def enumerate_trees(d: int) -> tuple[Tree, ...]:
    """All trees of degree ``d``, each once, in ascending lex order."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d == 0:
        return (LEAF,)
    out = []
    for left in _trees_upto(d):
        rights = enumerate_trees(d - 1 - degree(left))
        head = "2" + left
        out.extend([head + r for r in rights])
    return tuple(out)


def iter_trees(max_degree: int) -> Iterator[Tree]:
    for d in range(max_degree + 1):
        yield from enumerate_trees(d)
