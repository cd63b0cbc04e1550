"""Independent reference implementations on nested tuples.

Trees are ``None`` (leaf) or ``(left, right)``. Nothing here touches the
string machinery of the package, so agreement is a real cross-check.
"""

from functools import lru_cache

LEAF = None


def to_word(t):
    return "0" if t is None else "2" + to_word(t[0]) + to_word(t[1])


def from_word(w):
    def go(i):
        if w[i] == "0":
            return None, i + 1
        left, i = go(i + 1)
        right, i = go(i)
        return (left, right), i

    t, end = go(0)
    assert end == len(w)
    return t


@lru_cache(maxsize=None)
def trees_of_arity(n):
    if n == 1:
        return (None,)
    return tuple((a, b) for k in range(1, n) for a in trees_of_arity(k) for b in trees_of_arity(n - k))


def catalan_closed(d):
    from math import comb
    return comb(2 * d, d) // (d + 1)


def embeds(pattern, t):
    """Pattern internal nodes map onto internal nodes of ``t`` at its root."""
    if pattern is None:
        return True
    if t is None:
        return False
    return embeds(pattern[0], t[0]) and embeds(pattern[1], t[1])


def bind(pattern, t):
    if pattern is None:
        return [t]
    return bind(pattern[0], t[0]) + bind(pattern[1], t[1])


def fill(pattern, subs):
    it = iter(subs)

    def go(p):
        if p is None:
            return next(it)
        return (go(p[0]), go(p[1]))

    return go(pattern)


def positions(t, path=""):
    """Paths of internal nodes in preorder."""
    if t is None:
        return []
    return [path] + positions(t[0], path + "L") + positions(t[1], path + "R")


def at(t, path):
    for step in path:
        t = t[0] if step == "L" else t[1]
    return t


def replace(t, path, s):
    if not path:
        return s
    if path[0] == "L":
        return (replace(t[0], path[1:], s), t[1])
    return (t[0], replace(t[1], path[1:], s))


def match_paths(t, pattern):
    return [p for p in positions(t) if embeds(pattern, at(t, p))]


def rewrites(t, lhs, rhs):
    out = set()
    for p in match_paths(t, lhs):
        out.add(replace(t, p, fill(rhs, bind(lhs, at(t, p)))))
    return out


def comb_classes(d, n):
    """Classes of the comb congruence on arity ``n`` by graph search."""
    lc = from_word("2" * d + "0" * (d + 1))
    rc = from_word("20" * d + "0")
    seen, classes = set(), []
    for t in trees_of_arity(n):
        if t in seen:
            continue
        comp, stack = {t}, [t]
        while stack:
            u = stack.pop()
            for v in rewrites(u, lc, rc) | rewrites(u, rc, lc):
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        classes.append(sorted(to_word(x) for x in comp))
    return classes


def avoids(t, patterns):
    return not any(match_paths(t, p) for p in patterns)
