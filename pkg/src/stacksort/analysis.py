"""Sorting classes, preimages, movement sequences, and orbit dynamics.

Everything here is exhaustive by design: sorting classes and preimages come
from a single forward pass over S_n through the machine, which doubles as
the independent oracle for every enumeration identity checked in the
registry.  Scans can be sharded by lexicographic rank ranges and merged
associatively, so results are independent of worker count.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import machine, patterns
from .machine import make_sorter, sort_once
from .patterns import VincularPattern, classical, contains_vincular
from .perms import Perm, iterate_symmetric_group, require_scannable

_P231 = classical((2, 3, 1))


def sorted_to_identity(p: Perm) -> bool:
    """Whether the classical stack sort sends p to the identity, i.e. whether
    p avoids 2-3-1."""
    return not contains_vincular(p, _P231)


@dataclass(frozen=True)
class SortingClassResult:
    sigma: VincularPattern
    n: int
    members: tuple[Perm, ...]
    count: int


@dataclass(frozen=True)
class PreimageReport:
    sigma: VincularPattern
    n: int
    target: Perm
    preimages: tuple[Perm, ...]
    movement_multiset: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class DynamicsReport:
    sigma: VincularPattern
    n: int
    periodic_points: tuple[Perm, ...]
    period_of: tuple[tuple[Perm, int], ...]
    max_transient: int

    def period(self, p: Perm) -> int:
        for q, t in self.period_of:
            if q == p:
                return t
        raise KeyError(p)


def _shard_ranges(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total))
    step = total // jobs
    bounds = [i * step for i in range(jobs)] + [total]
    return [(bounds[i], bounds[i + 1] - 1) for i in range(jobs) if bounds[i] <= bounds[i + 1] - 1]


def _members_shard(args: tuple[VincularPattern, int, int, int]) -> list[Perm]:
    sigma, n, lo, hi = args
    run = make_sorter(sigma)
    return [
        tau
        for tau in iterate_symmetric_group(n, (lo, hi))
        if sorted_to_identity(run(tau))
    ]


def sorting_class(
    sigma: VincularPattern, n: int, *, max_n: int | None = None, jobs: int = 1
) -> SortingClassResult:
    """All tau in S_n whose image avoids 2-3-1, i.e. is sorted to the
    identity by a further classical stack pass."""
    require_scannable(n, max_n)
    total = math.factorial(n)
    if jobs > 1 and total > 4 * jobs:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(
                _members_shard,
                [(sigma, n, lo, hi) for lo, hi in _shard_ranges(total, jobs)],
            )
            members: list[Perm] = [p for chunk in chunks for p in chunk]
    else:
        members = _members_shard((sigma, n, 0, total - 1)) if total else []
    if n == 0:
        members = [()]
    return SortingClassResult(sigma, n, tuple(members), len(members))


_COUNTS_CACHE: dict[tuple[VincularPattern, int], Counter] = {}
_TABLE_CACHE: dict[tuple[VincularPattern, int], dict[Perm, tuple[Perm, ...]]] = {}
_CACHE_LIMIT = 6


def _cache_put(cache: dict, key, value) -> None:
    if len(cache) >= _CACHE_LIMIT:
        cache.pop(next(iter(cache)))
    cache[key] = value


def _counts_shard(args: tuple[VincularPattern, int, int, int]) -> Counter:
    sigma, n, lo, hi = args
    run = make_sorter(sigma)
    counts: Counter = Counter()
    for tau in iterate_symmetric_group(n, (lo, hi)):
        counts[run(tau)] += 1
    return counts


def image_counts(
    sigma: VincularPattern, n: int, *, max_n: int | None = None, jobs: int = 1
) -> Counter:
    """Counter mapping each image to its number of preimages under the map.

    One forward pass over S_n, cached per (sigma, n); callers must not
    mutate the result.
    """
    require_scannable(n, max_n)
    key = (sigma, n)
    cached = _COUNTS_CACHE.get(key)
    if cached is not None:
        return cached
    total = math.factorial(n)
    if jobs > 1 and total > 4 * jobs:
        counts: Counter = Counter()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(
                _counts_shard,
                [(sigma, n, lo, hi) for lo, hi in _shard_ranges(total, jobs)],
            ):
                counts.update(part)
    else:
        counts = _counts_shard((sigma, n, 0, total - 1)) if total else Counter({(): 1})
    if n == 0:
        counts = Counter({(): 1})
    _cache_put(_COUNTS_CACHE, key, counts)
    return counts


def _preimage_table(
    sigma: VincularPattern, n: int, *, max_n: int | None = None
) -> dict[Perm, tuple[Perm, ...]]:
    # image -> lexicographically sorted preimages, built once and reused
    # across targets
    require_scannable(n, max_n)
    key = (sigma, n)
    cached = _TABLE_CACHE.get(key)
    if cached is not None:
        return cached
    run = make_sorter(sigma)
    table: dict[Perm, list[Perm]] = {}
    for tau in iterate_symmetric_group(n):
        table.setdefault(run(tau), []).append(tau)
    frozen = {img: tuple(pres) for img, pres in table.items()}
    if n == 0:
        frozen = {(): ((),)}
    _cache_put(_TABLE_CACHE, key, frozen)
    return frozen


def preimages(
    sigma: VincularPattern, target: Perm, *, max_n: int | None = None
) -> PreimageReport:
    """Exact preimage list of a target, with the multiset of movement words
    of the preimages."""
    n = len(target)
    table = _preimage_table(sigma, n, max_n=max_n)
    pres = table.get(target, ())
    moves = Counter(sort_once(sigma, tau).moves for tau in pres)
    return PreimageReport(
        sigma=sigma,
        n=n,
        target=target,
        preimages=pres,
        movement_multiset=tuple(sorted(moves.items())),
    )


def max_preimages(
    sigma: VincularPattern,
    n: int,
    *,
    max_n: int | None = None,
    jobs: int = 1,
) -> tuple[int, tuple[Perm, ...]]:
    """The largest preimage count over S_n and all images achieving it,
    in lexicographic order."""
    counts = image_counts(sigma, n, max_n=max_n, jobs=jobs)
    best = max(counts.values())
    return best, tuple(sorted(p for p, c in counts.items() if c == best))


def valid_movement_sequences(n: int) -> tuple[str, ...]:
    """All words with n N's and n X's whose proper prefixes keep at least one
    more N than X, in lexicographic order (N < X).

    >>> valid_movement_sequences(3)
    ('NNNXXX', 'NNXNXX')
    """
    if n < 1:
        raise ValueError("movement sequences need n >= 1")
    out: list[str] = []
    word: list[str] = []

    def build(pushes: int, pops: int) -> None:
        if pushes == n and pops == n:
            out.append("".join(word))
            return
        final = pushes + pops + 1 == 2 * n
        if pushes < n:
            word.append("N")
            build(pushes + 1, pops)
            word.pop()
        if pops < pushes and (final or pushes - pops >= 2):
            word.append("X")
            build(pushes, pops + 1)
            word.pop()

    build(0, 0)
    return tuple(out)


def dynamics(
    sigma: VincularPattern, n: int, *, max_n: int | None = None
) -> DynamicsReport:
    """Functional-graph analysis of tau -> image over S_n: periodic points,
    least periods, and the longest transient."""
    require_scannable(n, max_n)
    perms = list(iterate_symmetric_group(n))
    index = {p: i for i, p in enumerate(perms)}
    run = make_sorter(sigma)
    nxt = [index[run(p)] for p in perms]
    total = len(perms)

    color = [0] * total  # 0 new, 1 on current path, 2 finished
    on_cycle = [False] * total
    for start in range(total):
        if color[start]:
            continue
        path: list[int] = []
        u = start
        while color[u] == 0:
            color[u] = 1
            path.append(u)
            u = nxt[u]
        if color[u] == 1:
            for v in path[path.index(u) :]:
                on_cycle[v] = True
        for v in path:
            color[v] = 2

    period: dict[int, int] = {}
    for v in range(total):
        if on_cycle[v] and v not in period:
            cycle = [v]
            u = nxt[v]
            while u != v:
                cycle.append(u)
                u = nxt[u]
            for w in cycle:
                period[w] = len(cycle)

    transient = [-1] * total
    for v in range(total):
        if on_cycle[v]:
            transient[v] = 0
    for start in range(total):
        if transient[start] >= 0:
            continue
        path = []
        u = start
        while transient[u] < 0:
            path.append(u)
            u = nxt[u]
        base = transient[u]
        for depth, v in enumerate(reversed(path), start=1):
            transient[v] = base + depth

    periodic = tuple(perms[v] for v in range(total) if on_cycle[v])
    return DynamicsReport(
        sigma=sigma,
        n=n,
        periodic_points=periodic,
        period_of=tuple((perms[v], period[v]) for v in range(total) if on_cycle[v]),
        max_transient=max(transient) if transient else 0,
    )


def smoothing_step(pi: Perm) -> Perm:
    """Swap the values pi_n and pi_n + 1 inside pi.

    >>> smoothing_step((1, 4, 2, 3))
    (1, 3, 2, 4)
    """
    if not pi:
        raise ValueError("empty permutation has no last element")
    v = pi[-1]
    if v == len(pi):
        raise ValueError("last element is already the maximum")
    w = v + 1
    return tuple(w if x == v else v if x == w else x for x in pi)


def sort_subsequence(sigma: VincularPattern, seq: tuple[int, ...]) -> tuple[int, ...]:
    """Run a distinct-entry sequence through the machine by standardising,
    sorting, and mapping values back."""
    from .perms import standardize

    std = standardize(seq)
    out = machine.sort_output(sigma, std)
    ordered = sorted(seq)
    return tuple(ordered[v - 1] for v in out)
