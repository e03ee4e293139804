"""Classical, vincular, and mesh pattern containment and avoidance.

A vincular pattern is a permutation together with a set of adjacency gaps:
gap i (1-based) forces pattern positions i and i+1 to be matched to adjacent
host positions.  An empty gap set gives a classical pattern, the full set a
consecutive one.  Text syntax uses dash-separated blocks, with each block
internally adjacent: "1-2-3" is classical 123, "12-3" underlines the first
two entries, "123" is the consecutive pattern.

A mesh pattern is a classical pattern plus a set of shaded squares in its
plot, identified by their lower-left corners; an occurrence is valid only if
no host entry falls inside a shaded square.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .perms import (
    Perm,
    is_permutation,
    iterate_symmetric_group,
    perm_from_text,
    perm_to_text,
)


class PatternSyntaxError(ValueError):
    """Malformed pattern text."""


@dataclass(frozen=True)
class VincularPattern:
    values: Perm
    adjacencies: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if not is_permutation(self.values) or len(self.values) < 1:
            raise ValueError(f"pattern values must form a permutation: {self.values!r}")
        k = len(self.values)
        if not all(1 <= g <= k - 1 for g in self.adjacencies):
            raise ValueError(f"adjacency gaps must lie in 1..{k - 1}")
        object.__setattr__(self, "adjacencies", frozenset(self.adjacencies))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_classical(self) -> bool:
        return not self.adjacencies

    @property
    def is_consecutive(self) -> bool:
        return len(self.adjacencies) == len(self.values) - 1

    def text(self) -> str:
        blocks: list[str] = []
        cur = [str(self.values[0])]
        for i in range(1, len(self.values)):
            if i in self.adjacencies:
                cur.append(str(self.values[i]))
            else:
                blocks.append("".join(cur))
                cur = [str(self.values[i])]
        blocks.append("".join(cur))
        return "-".join(blocks)

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class MeshPattern:
    base: Perm
    shaded: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        if not is_permutation(self.base) or len(self.base) < 1:
            raise ValueError(f"mesh base must form a permutation: {self.base!r}")
        k = len(self.base)
        shaded = frozenset((int(a), int(b)) for a, b in self.shaded)
        if not all(0 <= a <= k and 0 <= b <= k for a, b in shaded):
            raise ValueError(f"shaded squares must lie in 0..{k} on both axes")
        object.__setattr__(self, "shaded", shaded)

    def __len__(self) -> int:
        return len(self.base)

    def to_json_dict(self) -> dict:
        return {
            "base": perm_to_text(self.base),
            "shaded": [list(sq) for sq in sorted(self.shaded)],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MeshPattern":
        base = perm_from_text(str(data["base"]))
        shaded = frozenset((int(a), int(b)) for a, b in data.get("shaded", []))
        return cls(base, shaded)

    def __str__(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


Pattern = Union[VincularPattern, MeshPattern]
PatternSet = tuple[Pattern, ...]

MU_132 = MeshPattern((1, 3, 2), frozenset({(0, 2), (2, 0), (2, 1)}))
MU_2413 = MeshPattern((2, 4, 1, 3), frozenset({(1, 0), (2, 1), (2, 2)}))

_NAMED_MESH = {"mu132": MU_132, "mu2413": MU_2413}


def classical(values: Sequence[int]) -> VincularPattern:
    return VincularPattern(tuple(values), frozenset())


def consecutive(values: Sequence[int]) -> VincularPattern:
    return VincularPattern(tuple(values), frozenset(range(1, len(values))))


def parse_vincular(text: str) -> VincularPattern:
    """Parse dash-block syntax.

    >>> str(parse_vincular("12-3"))
    '12-3'
    >>> parse_vincular("1-2-3").is_classical
    True
    >>> parse_vincular("123").is_consecutive
    True
    """
    blocks = text.strip().split("-")
    if any(not b or not b.isdigit() for b in blocks):
        raise PatternSyntaxError(f"cannot parse pattern {text!r}")
    values = tuple(int(ch) for b in blocks for ch in b)
    adjacencies: set[int] = set()
    pos = 0
    for b in blocks:
        for i in range(1, len(b)):
            adjacencies.add(pos + i)
        pos += len(b)
    try:
        return VincularPattern(values, frozenset(adjacencies))
    except ValueError as exc:
        raise PatternSyntaxError(str(exc)) from exc


def parse_pattern(text: str) -> Pattern:
    """Parse either a vincular pattern, a builtin mesh name, or mesh JSON."""
    s = text.strip()
    if s in _NAMED_MESH:
        return _NAMED_MESH[s]
    if s.startswith("{"):
        try:
            return MeshPattern.from_json_dict(json.loads(s))
        except (ValueError, KeyError, TypeError) as exc:
            raise PatternSyntaxError(f"bad mesh pattern JSON: {text!r}") from exc
    return parse_vincular(s)


def parse_pattern_set(text: str) -> PatternSet:
    """Parse a comma-separated pattern list, e.g. "1-3-2,3-2-1-4,mu2413"."""
    items = [part for part in text.split(",") if part.strip()]
    if not items:
        raise PatternSyntaxError("empty pattern set")
    return tuple(parse_pattern(part) for part in items)


def reverse_pattern(sigma: VincularPattern) -> VincularPattern:
    """Reverse the values; gap i becomes gap k-i.

    >>> str(reverse_pattern(parse_vincular("1-32")))
    '23-1'
    """
    k = len(sigma.values)
    return VincularPattern(
        sigma.values[::-1], frozenset(k - g for g in sigma.adjacencies)
    )


def complement_pattern(sigma: VincularPattern) -> VincularPattern:
    """Complement the values; adjacencies are unchanged.

    >>> str(complement_pattern(parse_vincular("12-3")))
    '32-1'
    """
    k = len(sigma.values)
    return VincularPattern(
        tuple(k + 1 - v for v in sigma.values), sigma.adjacencies
    )


def _classical3(host: Sequence[int], v1: int, v2: int, v3: int) -> bool:
    # For each middle position j, the best first element is determined by the
    # required comparisons alone, so one sorted prefix plus a suffix scan
    # decides containment in O(n^2).
    n = len(host)
    c12 = v1 < v2
    c13 = v1 < v3
    c23 = v2 < v3
    prefix: list[int] = []
    for j in range(1, n - 1):
        bisect.insort(prefix, host[j - 1])
        y = host[j]
        if c12:
            i = bisect.bisect_left(prefix, y)
            if i == 0:
                continue
            x = prefix[0] if c13 else prefix[i - 1]
        else:
            i = bisect.bisect_right(prefix, y)
            if i == len(prefix):
                continue
            x = prefix[i] if c13 else prefix[-1]
        for t in range(j + 1, n):
            z = host[t]
            if ((y < z) == c23) and ((x < z) == c13):
                return True
    return False


def _search(host: Sequence[int], vals: Perm, forced: Sequence[bool]) -> bool:
    # generic backtracking over occurrence positions with order pruning
    n = len(host)
    k = len(vals)

    def extend(chosen: list[int], j: int) -> bool:
        if j == k:
            return True
        if forced[j]:
            candidates = range(chosen[-1] + 1, chosen[-1] + 2)
        else:
            start = chosen[-1] + 1 if chosen else 0
            candidates = range(start, n - (k - j) + 1)
        vj = vals[j]
        for q in candidates:
            if q >= n:
                break
            hq = host[q]
            ok = True
            for i, qi in enumerate(chosen):
                if (host[qi] < hq) != (vals[i] < vj):
                    ok = False
                    break
            if ok:
                chosen.append(q)
                if extend(chosen, j + 1):
                    return True
                chosen.pop()
        return False

    return extend([], 0)


def contains_vincular(host: Sequence[int], sigma: VincularPattern) -> bool:
    """Whether the distinct-entry sequence ``host`` contains ``sigma``.

    >>> contains_vincular((2, 3, 1, 4), parse_vincular("1-2-3"))
    True
    >>> contains_vincular((1, 2, 3), parse_vincular("13-2"))
    False
    """
    vals = sigma.values
    k = len(vals)
    n = len(host)
    if k > n:
        return False
    if k == 1:
        return True
    adj = sigma.adjacencies
    if k == 2:
        up = vals[0] < vals[1]
        if 1 in adj:
            return any((host[i] < host[i + 1]) == up for i in range(n - 1))
        for i in range(n - 1):
            hi = host[i]
            for j in range(i + 1, n):
                if (hi < host[j]) == up:
                    return True
        return False
    if k == 3:
        v1, v2, v3 = vals
        a1 = 1 in adj
        a2 = 2 in adj
        c12 = v1 < v2
        c13 = v1 < v3
        c23 = v2 < v3
        if a1 and a2:
            return any(
                ((host[i] < host[i + 1]) == c12)
                and ((host[i] < host[i + 2]) == c13)
                and ((host[i + 1] < host[i + 2]) == c23)
                for i in range(n - 2)
            )
        if a1:
            for q in range(n - 2):
                x, y = host[q], host[q + 1]
                if (x < y) != c12:
                    continue
                for t in range(q + 2, n):
                    z = host[t]
                    if ((x < z) == c13) and ((y < z) == c23):
                        return True
            return False
        if a2:
            for r in range(1, n - 1):
                y, z = host[r], host[r + 1]
                if (y < z) != c23:
                    continue
                for q in range(r):
                    x = host[q]
                    if ((x < y) == c12) and ((x < z) == c13):
                        return True
            return False
        return _classical3(host, v1, v2, v3)
    forced = [False] + [(g in adj) for g in range(1, k)]
    return _search(host, vals, forced)


def _occurrences(host: Sequence[int], vals: Perm) -> Iterator[tuple[int, ...]]:
    # all classical occurrences (0-based position tuples), lexicographic
    n = len(host)
    k = len(vals)

    def extend(chosen: list[int], j: int) -> Iterator[tuple[int, ...]]:
        if j == k:
            yield tuple(chosen)
            return
        start = chosen[-1] + 1 if chosen else 0
        vj = vals[j]
        for q in range(start, n - (k - j) + 1):
            hq = host[q]
            if all((host[qi] < hq) == (vals[i] < vj) for i, qi in enumerate(chosen)):
                chosen.append(q)
                yield from extend(chosen, j + 1)
                chosen.pop()

    yield from extend([], 0)


def contains_mesh(p: Perm, mu: MeshPattern) -> bool:
    """Whether ``p`` has an occurrence of the base avoiding all shaded squares.

    Square (a, b) forbids host entries strictly between occurrence positions
    a and a+1 and strictly between occurrence values b and b+1, with
    sentinels 0 and n+1 on both axes.
    """
    k = len(mu.base)
    n = len(p)
    if k > n:
        return False
    shaded = sorted(mu.shaded)
    for occ in _occurrences(p, mu.base):
        positions = (0,) + tuple(q + 1 for q in occ) + (n + 1,)
        values = (0,) + tuple(sorted(p[q] for q in occ)) + (n + 1,)
        ok = True
        for a, b in shaded:
            lo_pos, hi_pos = positions[a], positions[a + 1]
            lo_val, hi_val = values[b], values[b + 1]
            for j in range(lo_pos + 1, hi_pos):
                if lo_val < p[j - 1] < hi_val:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def contains(p: Perm, pattern: Pattern) -> bool:
    if isinstance(pattern, MeshPattern):
        return contains_mesh(p, pattern)
    return contains_vincular(p, pattern)


def avoids_all(p: Perm, patterns: Sequence[Pattern]) -> bool:
    """Whether ``p`` contains none of the given patterns."""
    return not any(contains(p, pattern) for pattern in patterns)


def enumerate_avoiders(
    n: int,
    patterns: Sequence[Pattern],
    want_list: bool = False,
    *,
    max_n: int | None = None,
) -> tuple[int, tuple[Perm, ...] | None]:
    """Count (and optionally list, in lexicographic order) Av_n(patterns)."""
    if not patterns:
        raise ValueError("avoidance-class enumeration needs a non-empty pattern set")
    if want_list:
        members = tuple(
            p
            for p in iterate_symmetric_group(n, max_n=max_n)
            if avoids_all(p, patterns)
        )
        return len(members), members
    count = sum(
        1 for p in iterate_symmetric_group(n, max_n=max_n) if avoids_all(p, patterns)
    )
    return count, None


def is_reverse_layered(p: Perm) -> bool:
    """Whether p is a concatenation of increasing runs of consecutive integers,
    each run starting at a left-to-right minimum.

    >>> is_reverse_layered((3, 4, 1, 2))
    True
    >>> is_reverse_layered((1, 3, 2))
    False
    """
    seen_min = len(p) + 1
    i = 0
    n = len(p)
    while i < n:
        if p[i] > seen_min:
            return False
        seen_min = p[i]
        j = i + 1
        while j < n and p[j] == p[j - 1] + 1:
            j += 1
        i = j
    return True
