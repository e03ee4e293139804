"""Permutations in one-line notation.

A permutation of length n is a tuple of the integers 1..n; the empty tuple
is the unique permutation of length 0.  Values and positions are 1-based in
all public semantics, matching the usual combinatorial conventions.

The text format is digits concatenated for n <= 9 ("4132") and
comma-separated values for n >= 10 ("10,3,2,1,...").
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

Perm = tuple[int, ...]

DEFAULT_MAX_N = 10

_MAX_N_ENV = "STACKSORT_MAX_N"


class PermSyntaxError(ValueError):
    """Malformed permutation text."""


class ScanLimitError(ValueError):
    """An exhaustive scan over S_n was requested above the configured ceiling."""


def scan_ceiling(override: int | None = None) -> int:
    """Largest n for which exhaustive S_n scans are allowed.

    The default of 10 keeps full scans at desk scale (10! is about 3.6M);
    it can be raised per call or via the STACKSORT_MAX_N environment variable.
    """
    if override is not None:
        return override
    env = os.environ.get(_MAX_N_ENV)
    return int(env) if env else DEFAULT_MAX_N


def require_scannable(n: int, max_n: int | None = None) -> None:
    limit = scan_ceiling(max_n)
    if n > limit:
        raise ScanLimitError(f"n={n} exceeds the scan ceiling {limit}")


def is_permutation(values: Sequence[int]) -> bool:
    """Whether ``values`` is a rearrangement of 1..n.

    >>> is_permutation((2, 1, 3)), is_permutation((2, 2)), is_permutation(())
    (True, False, True)
    """
    return sorted(values) == list(range(1, len(values) + 1))


def as_perm(values: Sequence[int]) -> Perm:
    """Validate and normalise to a tuple, raising ValueError if not a permutation."""
    p = tuple(values)
    if not is_permutation(p):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p!r}")
    return p


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def descending(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def reverse(p: Perm) -> Perm:
    """Reverse the one-line notation.

    >>> reverse((1, 3, 4, 2))
    (2, 4, 3, 1)
    """
    return p[::-1]


def complement(p: Perm) -> Perm:
    """Replace each value v by n+1-v.

    >>> complement((1, 3, 4, 2))
    (4, 2, 1, 3)
    """
    n = len(p)
    return tuple(n + 1 - v for v in p)


def order_isomorphic(a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether two distinct-entry sequences have the same comparison structure.

    >>> order_isomorphic((5, 1, 4), (3, 1, 2))
    True
    >>> order_isomorphic((1, 2), (2, 1))
    False
    """
    if len(a) != len(b):
        raise ValueError("sequences of different lengths are never order-isomorphic")
    n = len(a)
    for i in range(n):
        ai, bi = a[i], b[i]
        for j in range(i + 1, n):
            if (ai < a[j]) != (bi < b[j]):
                return False
    return True


def standardize(values: Sequence[int]) -> Perm:
    """The unique permutation order-isomorphic to a distinct-entry sequence.

    >>> standardize((5, 1, 4))
    (3, 1, 2)
    >>> standardize((2, 4, 3))
    (1, 3, 2)
    """
    if len(set(values)) != len(values):
        raise ValueError(f"duplicate entries in {values!r}")
    rank = {v: i + 1 for i, v in enumerate(sorted(values))}
    return tuple(rank[v] for v in values)


@dataclass(frozen=True)
class Decomposition:
    """An ordered, labelled split of a permutation into subsequences.

    ``kind`` is "max-split" (prefix, maximum, suffix) or "ltr-min-split"
    (alternating left-to-right minima and the runs that follow them).
    Concatenating the parts in order reconstructs the permutation.
    """

    kind: str
    parts: tuple[tuple[str, tuple[int, ...]], ...]

    def part(self, label: str) -> tuple[int, ...]:
        for name, seq in self.parts:
            if name == label:
                return seq
        raise KeyError(label)

    def reconstruct(self) -> Perm:
        out: list[int] = []
        for _, seq in self.parts:
            out.extend(seq)
        return tuple(out)


def split_at_max(p: Perm) -> Decomposition:
    """Split p as (prefix, n, suffix) around its largest value.

    >>> split_at_max((2, 3, 1, 4)).parts
    (('a', (2, 3, 1)), ('max', (4,)), ('b', ()))
    """
    if not p:
        raise ValueError("cannot split the empty permutation")
    n = len(p)
    i = p.index(n)
    return Decomposition(
        kind="max-split",
        parts=(("a", p[:i]), ("max", (n,)), ("b", p[i + 1 :])),
    )


def left_to_right_minima(p: Perm) -> tuple[int, ...]:
    """0-based positions of the left-to-right minima."""
    out: list[int] = []
    cur = len(p) + 1
    for i, v in enumerate(p):
        if v < cur:
            out.append(i)
            cur = v
    return tuple(out)


def ltr_min_decompose(p: Perm) -> Decomposition:
    """Split p as m_1 a_1 m_2 a_2 ... m_k a_k around its left-to-right minima.

    >>> ltr_min_decompose((3, 1, 4, 2)).parts
    (('m1', (3,)), ('a1', ()), ('m2', (1,)), ('a2', (4, 2)))
    """
    if not p:
        raise ValueError("cannot decompose the empty permutation")
    mins = left_to_right_minima(p)
    parts: list[tuple[str, tuple[int, ...]]] = []
    for idx, pos in enumerate(mins):
        end = mins[idx + 1] if idx + 1 < len(mins) else len(p)
        parts.append((f"m{idx + 1}", (p[pos],)))
        parts.append((f"a{idx + 1}", p[pos + 1 : end]))
    return Decomposition(kind="ltr-min-split", parts=tuple(parts))


def _perm_at_rank(n: int, rank: int) -> Perm:
    # factorial number system: digits of rank select from the remaining pool
    digits: list[int] = []
    r = rank
    for i in range(1, n + 1):
        digits.append(r % i)
        r //= i
    digits.reverse()
    pool = list(range(1, n + 1))
    return tuple(pool.pop(d) for d in digits)


def _advance(a: list[int]) -> None:
    # in-place step to the next permutation in lexicographic order
    j = len(a) - 2
    while a[j] > a[j + 1]:
        j -= 1
    k = len(a) - 1
    while a[j] > a[k]:
        k -= 1
    a[j], a[k] = a[k], a[j]
    a[j + 1 :] = reversed(a[j + 1 :])


def iterate_symmetric_group(
    n: int,
    rank_range: tuple[int, int] | None = None,
    *,
    max_n: int | None = None,
) -> Iterator[Perm]:
    """Yield all of S_n in lexicographic order of one-line notation.

    With ``rank_range=(lo, hi)`` (inclusive), yield exactly the permutations
    of those lexicographic ranks, which lets exhaustive scans be partitioned
    across workers.

    >>> list(iterate_symmetric_group(3))[:3]
    [(1, 2, 3), (1, 3, 2), (2, 1, 3)]
    >>> list(iterate_symmetric_group(0))
    [()]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    require_scannable(n, max_n)
    if rank_range is None:
        yield from itertools.permutations(range(1, n + 1))
        return
    lo, hi = rank_range
    total = math.factorial(n)
    if not (0 <= lo <= hi < total):
        raise ValueError(f"rank range {rank_range} not within [0, {total - 1}]")
    current = list(_perm_at_rank(n, lo))
    yield tuple(current)
    for _ in range(hi - lo):
        _advance(current)
        yield tuple(current)


def perm_to_text(p: Perm) -> str:
    """Render one-line notation: digits when n <= 9, comma-separated otherwise.

    >>> perm_to_text((4, 1, 3, 2))
    '4132'
    """
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return ",".join(str(v) for v in p)


def perm_from_text(text: str) -> Perm:
    """Parse the text format accepted by the CLI; inverse of perm_to_text.

    >>> perm_from_text("4132")
    (4, 1, 3, 2)
    >>> perm_from_text("10,3,2,1,4,5,6,7,8,9")[:2]
    (10, 3)
    """
    s = text.strip()
    if not s:
        return ()
    try:
        if "," in s:
            values = tuple(int(part) for part in s.split(","))
        else:
            values = tuple(int(ch) for ch in s)
    except ValueError as exc:
        raise PermSyntaxError(f"cannot parse permutation {text!r}") from exc
    if not is_permutation(values):
        raise PermSyntaxError(f"{text!r} is not a permutation of 1..{len(values)}")
    return values
