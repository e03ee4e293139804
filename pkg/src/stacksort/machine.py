"""Right-greedy stack sorting through a pattern-avoiding stack.

The machine reads the input left to right and keeps a stack whose content,
written top to bottom, must avoid a vincular pattern sigma.  Before each
push, the incoming element is tested as the topmost letter of that stack
word; while the word would contain sigma, the top of the stack is popped to
the output.  Adjacency in sigma refers to adjacent positions in the stack
word.  When the input is exhausted the whole stack is popped.  Elements
popped while input remained are called premature.

With sigma = 2-1 this is the classical stack-sorting map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from . import patterns
from .perms import Perm, iterate_symmetric_group, perm_to_text
from .patterns import VincularPattern


@dataclass(frozen=True)
class StackTrace:
    """Full record of one sort: moves word over {N, X}, output, premature set,
    and optionally the stack content (top to bottom) after each move."""

    input: Perm
    sigma: VincularPattern
    moves: str
    output: Perm
    premature: frozenset[int]
    snapshots: tuple[tuple[int, ...], ...] | None = None

    def to_json_dict(self) -> dict:
        data = {
            "input": perm_to_text(self.input),
            "sigma": str(self.sigma),
            "moves": self.moves,
            "output": perm_to_text(self.output),
            "premature": sorted(self.premature),
        }
        if self.snapshots is not None:
            data["snapshots"] = [list(s) for s in self.snapshots]
        return data


def _make_trigger(sigma: VincularPattern) -> Callable[[int, list[int]], bool]:
    # Decides whether pushing x would create sigma in the stack word.  The
    # stack list keeps its top at the end; the word is x followed by the
    # stack read top to bottom.  Since the stack itself always avoids sigma,
    # any occurrence must start at x, which the specialised scans exploit.
    vals = sigma.values
    k = len(vals)
    adj = sigma.adjacencies

    if k == 2:
        up = vals[0] < vals[1]
        if 1 in adj:

            def trigger(x: int, stack: list[int]) -> bool:
                return bool(stack) and ((x < stack[-1]) == up)

        else:

            def trigger(x: int, stack: list[int]) -> bool:
                for y in stack:
                    if (x < y) == up:
                        return True
                return False

        return trigger

    if k == 3:
        v1, v2, v3 = vals
        c12 = v1 < v2
        c13 = v1 < v3
        c23 = v2 < v3
        a1 = 1 in adj
        a2 = 2 in adj
        if a1 and a2:

            def trigger(x: int, stack: list[int]) -> bool:
                if len(stack) < 2:
                    return False
                t, s = stack[-1], stack[-2]
                return ((x < t) == c12) and ((x < s) == c13) and ((t < s) == c23)

        elif a1:

            def trigger(x: int, stack: list[int]) -> bool:
                if len(stack) < 2:
                    return False
                t = stack[-1]
                if (x < t) != c12:
                    return False
                for i in range(len(stack) - 1):
                    y = stack[i]
                    if ((x < y) == c13) and ((t < y) == c23):
                        return True
                return False

        elif a2:

            def trigger(x: int, stack: list[int]) -> bool:
                # word-adjacent pairs below the incoming element are
                # (stack[i+1], stack[i]) read top-down
                for i in range(len(stack) - 1):
                    a, b = stack[i + 1], stack[i]
                    if ((a < b) == c23) and ((x < a) == c12) and ((x < b) == c13):
                        return True
                return False

        else:

            def trigger(x: int, stack: list[int]) -> bool:
                m = len(stack)
                for u in range(m - 1, 0, -1):
                    a = stack[u]
                    if (x < a) != c12:
                        continue
                    for v in range(u - 1, -1, -1):
                        b = stack[v]
                        if ((x < b) == c13) and ((a < b) == c23):
                            return True
                return False

        return trigger

    forced = [False] + [(g in adj) for g in range(1, k)]

    def trigger(x: int, stack: list[int]) -> bool:
        if len(stack) + 1 < k:
            return False
        word = (x,) + tuple(reversed(stack))
        return patterns._search(word, vals, forced)

    return trigger


def make_sorter(sigma: VincularPattern) -> Callable[[Perm], Perm]:
    """A reusable output-only sorter; the fast path for exhaustive scans."""
    if len(sigma.values) < 2:
        raise ValueError("the stack pattern must have length at least 2")
    trigger = _make_trigger(sigma)

    def run(tau: Perm) -> Perm:
        stack: list[int] = []
        out: list[int] = []
        for x in tau:
            while stack and trigger(x, stack):
                out.append(stack.pop())
            stack.append(x)
        while stack:
            out.append(stack.pop())
        return tuple(out)

    return run


def sort_output(sigma: VincularPattern, tau: Perm) -> Perm:
    """The image of tau through the sigma-avoiding stack."""
    return make_sorter(sigma)(tau)


def sort_once(
    sigma: VincularPattern, tau: Perm, want_snapshots: bool = False
) -> StackTrace:
    """Run the machine once, recording moves, premature pops, and optionally
    per-move stack snapshots."""
    if len(sigma.values) < 2:
        raise ValueError("the stack pattern must have length at least 2")
    trigger = _make_trigger(sigma)
    stack: list[int] = []
    out: list[int] = []
    moves: list[str] = []
    premature: set[int] = set()
    snapshots: list[tuple[int, ...]] | None = [] if want_snapshots else None

    def snap() -> None:
        if snapshots is not None:
            snapshots.append(tuple(reversed(stack)))

    for x in tau:
        while stack and trigger(x, stack):
            v = stack.pop()
            out.append(v)
            premature.add(v)
            moves.append("X")
            snap()
        stack.append(x)
        moves.append("N")
        snap()
    while stack:
        out.append(stack.pop())
        moves.append("X")
        snap()
    return StackTrace(
        input=tau,
        sigma=sigma,
        moves="".join(moves),
        output=tuple(out),
        premature=frozenset(premature),
        snapshots=tuple(snapshots) if snapshots is not None else None,
    )


def sort_iterate(sigma: VincularPattern, tau: Perm, k: int) -> Perm:
    """The k-fold image of tau; k = 0 is the identity."""
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    run = make_sorter(sigma)
    cur = tau
    for _ in range(k):
        cur = run(cur)
    return cur


@dataclass(frozen=True)
class MapComparison:
    agree: bool
    witness: tuple[Perm, Perm, Perm] | None = None


def maps_agree(
    sigma1: VincularPattern,
    sigma2: VincularPattern,
    n: int,
    *,
    max_n: int | None = None,
) -> MapComparison:
    """Whether two maps coincide on all of S_n; if not, the lexicographically
    first disagreeing input with both images."""
    run1 = make_sorter(sigma1)
    run2 = make_sorter(sigma2)
    for tau in iterate_symmetric_group(n, max_n=max_n):
        a, b = run1(tau), run2(tau)
        if a != b:
            return MapComparison(False, (tau, a, b))
    return MapComparison(True, None)


def _build_catalog() -> tuple[VincularPattern, ...]:
    out: list[VincularPattern] = [
        patterns.classical((1, 2)),
        patterns.classical((2, 1)),
    ]
    for values in itertools.permutations((1, 2, 3)):
        for adj in (frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})):
            out.append(VincularPattern(values, adj))
    return tuple(out)


#: 12 and 21 plus all 24 length-3 vincular patterns (classical, one
#: underlined gap, consecutive), in deterministic order.
CATALOG: tuple[VincularPattern, ...] = _build_catalog()

#: The length-3 members of the catalog.
LENGTH3_CATALOG: tuple[VincularPattern, ...] = tuple(
    s for s in CATALOG if len(s.values) == 3
)

#: The 12 length-3 patterns with exactly one underlined gap.
ONE_GAP_CATALOG: tuple[VincularPattern, ...] = tuple(
    s for s in LENGTH3_CATALOG if len(s.adjacencies) == 1
)
