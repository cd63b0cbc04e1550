"""Exact integer sequences and truncated power-series arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple


@dataclass(frozen=True)
class CoefficientSeries:
    """Integers indexed by arity, starting at arity 1.

    ``s[n]`` is the coefficient for arity ``n``; ``s.coeffs[0]`` is arity 1.
    """

    coeffs: Tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        coeffs = tuple(coeffs)
        if not all(isinstance(c, int) for c in coeffs):
            raise TypeError("coefficients must be exact integers")
        object.__setattr__(self, "coeffs", coeffs)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= len(self.coeffs):
            raise IndexError(f"arity {n} outside 1..{len(self.coeffs)}")
        return self.coeffs[n - 1]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CoefficientSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def tolist(self) -> List[int]:
        return list(self.coeffs)

    def __str__(self):
        return ", ".join(map(str, self.coeffs))


def poly_mul(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    """Product of two series truncated to ``n`` terms (t^0 .. t^{n-1})."""
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def series_div(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    """``a / b`` to ``n`` terms; ``b[0]`` must be +-1 to stay in the integers."""
    if b[0] not in (1, -1):
        raise ValueError("constant term of the divisor must be a unit")
    a = list(a[:n]) + [0] * (n - len(a))
    out = [0] * n
    for k in range(n):
        acc = a[k] - sum(out[i] * b[k - i] for i in range(max(0, k - len(b) + 1), k))
        out[k] = acc * b[0]
    return out
