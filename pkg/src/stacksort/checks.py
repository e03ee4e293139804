"""The named check registry: every structural identity the package verifies,
run exhaustively over a range of symmetric groups.

Each check is a pure function of its n range; theorem checks report
pass/fail, conjecture checks report conjecture-consistent/conjecture-
falsified, and any failure carries a re-verifiable counterexample.  The
registry runner can execute independent checks across worker processes,
while a single check can shard its own scans by rank ranges.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import analysis, sequences
from .analysis import (
    dynamics,
    image_counts,
    max_preimages,
    preimages,
    smoothing_step,
    sort_subsequence,
    sorting_class,
    valid_movement_sequences,
)
from .machine import (
    CATALOG,
    LENGTH3_CATALOG,
    ONE_GAP_CATALOG,
    make_sorter,
    maps_agree,
    sort_once,
    sort_output,
)
from .patterns import (
    MU_132,
    MU_2413,
    VincularPattern,
    avoids_all,
    classical,
    complement_pattern,
    contains_vincular,
    is_reverse_layered,
    parse_vincular,
    reverse_pattern,
)
from .perms import (
    Perm,
    complement,
    descending,
    identity,
    iterate_symmetric_group,
    ltr_min_decompose,
    perm_from_text,
    perm_to_text,
    reverse,
    split_at_max,
    standardize,
)
from .sequences import catalan, eval_named, motzkin, schroder

P = parse_vincular

_C132 = classical((1, 3, 2))
_C213 = classical((2, 1, 3))
_C231 = classical((2, 3, 1))
_C312 = classical((3, 1, 2))

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_CONSISTENT = "conjecture-consistent"
STATUS_FALSIFIED = "conjecture-falsified"


@dataclass(frozen=True)
class Counterexample:
    input: str
    expected: str
    actual: str


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    n_range: tuple[int, int]
    status: str
    counterexample: Counterexample | None
    elapsed_ms: int

    @property
    def ok(self) -> bool:
        return self.status in (STATUS_PASS, STATUS_CONSISTENT)

    def to_json_dict(self) -> dict:
        data: dict = {
            "id": self.check_id,
            "n": [self.n_range[0], self.n_range[1]],
            "status": self.status,
        }
        if self.counterexample is not None:
            data["counterexample"] = {
                "input": self.counterexample.input,
                "expected": self.counterexample.expected,
                "actual": self.counterexample.actual,
            }
        data["elapsed_ms"] = self.elapsed_ms
        return data


def _cx(inp: object, expected: object, actual: object) -> Counterexample:
    return Counterexample(str(inp), str(expected), str(actual))


def _ns(lo: int, hi: int, floor: int) -> Iterator[int]:
    return iter(range(max(lo, floor), hi + 1))


def _sn(n: int) -> Iterator[Perm]:
    return iterate_symmetric_group(n)


def _class_set(sigma: VincularPattern, n: int, jobs: int = 1) -> set[Perm]:
    return set(sorting_class(sigma, n, jobs=jobs).members)


def _av_set(n: int, pats) -> set[Perm]:
    return {p for p in _sn(n) if avoids_all(p, pats)}


def _set_diff_cx(n: int, left: set[Perm], right: set[Perm], what: str) -> Counterexample:
    witness = min(left.symmetric_difference(right))
    side = "left" if witness in left else "right"
    return _cx(
        f"n={n}, tau={perm_to_text(witness)}",
        what,
        f"present only in the {side}-hand set",
    )


# ---------------------------------------------------------------------------
# machine-level laws


def _check_lemma_knuth(lo: int, hi: int, jobs: int) -> Counterexample | None:
    run = make_sorter(P("2-1"))
    for n in _ns(lo, hi, 0):
        ident = identity(n)
        sorted_set = {tau for tau in _sn(n) if run(tau) == ident}
        av = _av_set(n, (_C231,))
        if sorted_set != av:
            return _set_diff_cx(n, sorted_set, av, "sorted-to-identity set = Av(2-3-1)")
    return None


def _check_lemma_comp(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for sigma in CATALOG:
        run = make_sorter(sigma)
        run_c = make_sorter(complement_pattern(sigma))
        for n in _ns(lo, hi, 0):
            for tau in _sn(n):
                left = run_c(tau)
                right = complement(run(complement(tau)))
                if left != right:
                    return _cx(
                        f"sigma={sigma}, tau={perm_to_text(tau)}",
                        perm_to_text(right),
                        perm_to_text(left),
                    )
    return None


_FREE2_PAIRS = (
    (P("13-2"), P("1-3-2")),
    (P("31-2"), P("3-1-2")),
    (P("2-13"), P("2-1-3")),
    (P("2-31"), P("2-3-1")),
)


def _check_free2avoids(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for s1, s2 in _FREE2_PAIRS:
        for n in _ns(lo, hi, 0):
            for p in _sn(n):
                if contains_vincular(p, s1) != contains_vincular(p, s2):
                    return _cx(
                        f"p={perm_to_text(p)}",
                        f"contains {s1} iff contains {s2}",
                        "containments differ",
                    )
    return None


def _check_free2stacks(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for s1, s2 in _FREE2_PAIRS:
        for n in _ns(lo, hi, 0):
            cmp = maps_agree(s1, s2, n)
            if not cmp.agree:
                tau, a, b = cmp.witness
                return _cx(
                    f"sigma1={s1}, sigma2={s2}, tau={perm_to_text(tau)}",
                    "equal images",
                    f"{perm_to_text(a)} vs {perm_to_text(b)}",
                )
    return None


# ---------------------------------------------------------------------------
# sorting-class characterizations


def _check_sort_1un23(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("1-23")
    pats = (_C132, classical((3, 2, 1, 4)), classical((4, 2, 1, 3)))
    inner_a = (_C132, classical((3, 2, 1)))
    inner_b = (_C132, _C213)
    for n in _ns(lo, hi, 0):
        cls = _class_set(sigma, n, jobs)
        av = _av_set(n, pats)
        if cls != av:
            return _set_diff_cx(n, cls, av, "Sort(1-23) = Av(1-3-2, 3-2-1-4, 4-2-1-3)")
        expected = eval_named("two-pow-minus-n", n)
        if len(cls) != expected:
            return _cx(f"n={n}", f"|Sort_n| = {expected}", str(len(cls)))
        if n == 0:
            continue
        for tau in _sn(n):
            d = split_at_max(tau)
            ta, tb = d.part("a"), d.part("b")
            cond = (
                (not ta or not tb or min(ta) > max(tb))
                and avoids_all(standardize(ta), inner_a)
                and avoids_all(standardize(tb), inner_b)
            )
            if cond != (tau in av):
                return _cx(
                    f"n={n}, tau={perm_to_text(tau)}",
                    "max-split conditions iff class membership",
                    f"conditions={cond}, member={tau in av}",
                )
    return None


_CLOSED_CLASSES = {P("1-23"), P("3-21")}


def _deletion_violation(
    sigma: VincularPattern, top: int
) -> tuple[Perm, Perm] | None:
    # closure under containment is equivalent to closure under single
    # deletions, so scanning those decides the question within the range
    members = {n: _class_set(sigma, n) for n in range(1, top + 1)}
    for n in range(2, top + 1):
        for pi in members[n]:
            for i in range(n):
                child = standardize(pi[:i] + pi[i + 1 :])
                if child not in members[n - 1]:
                    return pi, child
    return None


def _check_class_closure(lo: int, hi: int, jobs: int) -> Counterexample | None:
    top = max(hi, 2)
    witnesses = {
        P(texts[0]): (perm_from_text(texts[1]), perm_from_text(texts[3]))
        for texts in _NONCLASS_WITNESSES.values()
    }
    for sigma in ONE_GAP_CATALOG:
        if sigma in _CLOSED_CLASSES:
            violation = _deletion_violation(sigma, top)
            if violation is not None:
                return _cx(
                    f"sigma={sigma}, n<={top}",
                    "closed under containment",
                    f"{perm_to_text(violation[0])} is in the class, deletion "
                    f"{perm_to_text(violation[1])} is not",
                )
        else:
            big, small = witnesses[sigma]
            run = make_sorter(sigma)
            okay = (
                contains_vincular(big, classical(small))
                and not contains_vincular(run(big), _C231)
                and contains_vincular(run(small), _C231)
            )
            if not okay:
                return _cx(
                    f"sigma={sigma}, witness {perm_to_text(big)} > {perm_to_text(small)}",
                    "the larger sorts while its contained pattern does not",
                    "witness failed",
                )
    return None


_NONCLASS_WITNESSES = {
    "nonclass-un32-1": ("32-1", "2314", "4132", "123", "231"),
    "nonclass-un13-2": ("13-2", "2413", "4312", "132", "231"),
    "nonclass-un23-1": ("23-1", "25314", "54132", "2413", "3142"),
    "nonclass-1un32": ("1-32", "2413", "4312", "132", "231"),
    "nonclass-un12-3": ("12-3", "4132", "3214", "132", "231"),
    "nonclass-un21-3": ("21-3", "4132", "1234", "132", "231"),
    "nonclass-un31-2": ("31-2", "3142", "1243", "132", "231"),
    "nonclass-2un13": ("2-13", "3142", "4123", "132", "231"),
    "nonclass-2un31": ("2-31", "361425", "165243", "1324", "3421"),
    "nonclass-3un12": ("3-12", "3142", "1243", "132", "231"),
}


def _make_nonclass_check(key: str) -> Callable[[int, int, int], Counterexample | None]:
    sigma_text, big_text, big_image, small_text, small_image = _NONCLASS_WITNESSES[key]

    def check(lo: int, hi: int, jobs: int) -> Counterexample | None:
        sigma = P(sigma_text)
        big = perm_from_text(big_text)
        small = perm_from_text(small_text)
        if not contains_vincular(big, classical(small)):
            return _cx(big_text, f"contains {small_text}", "does not contain it")
        out_big = sort_output(sigma, big)
        if out_big != perm_from_text(big_image):
            return _cx(
                f"sigma={sigma}, tau={big_text}", big_image, perm_to_text(out_big)
            )
        if contains_vincular(out_big, _C231):
            return _cx(f"sigma={sigma}, tau={big_text}", "image avoids 2-3-1", big_image)
        out_small = sort_output(sigma, small)
        if out_small != perm_from_text(small_image):
            return _cx(
                f"sigma={sigma}, tau={small_text}", small_image, perm_to_text(out_small)
            )
        if not contains_vincular(out_small, _C231):
            return _cx(
                f"sigma={sigma}, tau={small_text}",
                "image contains 2-3-1",
                small_image,
            )
        return None

    return check


def _make_enum_check(
    pattern_texts: tuple[str, ...], sequence_name: str
) -> Callable[[int, int, int], Counterexample | None]:
    pats = tuple(P(t) for t in pattern_texts)

    def check(lo: int, hi: int, jobs: int) -> Counterexample | None:
        for n in _ns(lo, hi, 0):
            count = sum(1 for p in _sn(n) if avoids_all(p, pats))
            expected = eval_named(sequence_name, n)
            if count != expected:
                return _cx(
                    f"n={n}, Av({', '.join(pattern_texts)})", str(expected), str(count)
                )
        return None

    return check


def _check_321_general(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for k in (3, 4):
        base = tuple(range(k, 0, -1))
        for bits in range(2 ** (k - 1)):
            adj = frozenset(g for g in range(1, k) if bits & (1 << (g - 1)))
            sigma = VincularPattern(base, adj)
            rev_sigma = reverse_pattern(sigma)
            for n in _ns(lo, hi, 0):
                cls = _class_set(sigma, n)
                av = _av_set(n, (_C132, rev_sigma))
                if cls != av:
                    return _set_diff_cx(
                        n, cls, av, f"Sort({sigma}) = Av({rev_sigma}, 1-3-2)"
                    )
    return None


def _make_av_eq_check(
    left_texts: tuple[str, ...], right_texts: tuple[str, ...]
) -> Callable[[int, int, int], Counterexample | None]:
    left = tuple(P(t) for t in left_texts)
    right = tuple(P(t) for t in right_texts)

    def check(lo: int, hi: int, jobs: int) -> Counterexample | None:
        for n in _ns(lo, hi, 0):
            for p in _sn(n):
                if avoids_all(p, left) != avoids_all(p, right):
                    return _cx(
                        f"n={n}, p={perm_to_text(p)}",
                        f"Av({','.join(left_texts)}) = Av({','.join(right_texts)})",
                        "memberships differ",
                    )
        return None

    return check


def _check_sort_un32_1(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("32-1")
    cons = P("321")
    for n in _ns(lo, hi, 0):
        cls = _class_set(sigma, n, jobs)
        av = _av_set(n, (_C132, P("123")))
        if cls != av:
            return _set_diff_cx(n, cls, av, "Sort(32-1) = Av(123, 1-3-2)")
        if len(cls) != motzkin(n):
            return _cx(f"n={n}", f"motzkin({n}) = {motzkin(n)}", str(len(cls)))
        other = _class_set(cons, n)
        if other != cls:
            return _set_diff_cx(n, cls, other, "Sort(32-1) = Sort(321)")
        run1 = make_sorter(cons)
        run2 = make_sorter(sigma)
        for tau in cls:
            r = reverse(tau)
            if run1(tau) != r or run2(tau) != r:
                return _cx(
                    f"tau={perm_to_text(tau)} in the class",
                    "both images equal the reverse",
                    f"{perm_to_text(run1(tau))} / {perm_to_text(run2(tau))}",
                )
    if hi >= 4:
        cmp = maps_agree(cons, sigma, 4)
        if cmp.agree or cmp.witness != ((1, 3, 2, 4), (4, 2, 3, 1), (2, 3, 4, 1)):
            return _cx(
                "maps 321 vs 32-1 on S_4",
                "first disagreement at 1324: 4231 vs 2341",
                str(cmp),
            )
    return None


def _check_sort_3un21(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("3-21")
    cons = classical((3, 2, 1))
    for n in _ns(lo, hi, 0):
        cls = _class_set(sigma, n, jobs)
        av = _av_set(n, (classical((1, 2, 3)), _C132))
        if cls != av:
            return _set_diff_cx(n, cls, av, "Sort(3-21) = Av(1-2-3, 1-3-2)")
        if len(cls) != eval_named("two-pow-minus-one", n):
            return _cx(
                f"n={n}",
                f"2^(n-1) = {eval_named('two-pow-minus-one', n)}",
                str(len(cls)),
            )
        other = _class_set(cons, n)
        if other != cls:
            return _set_diff_cx(n, cls, other, "Sort(3-21) = Sort(3-2-1)")
        run1 = make_sorter(cons)
        run2 = make_sorter(sigma)
        for tau in cls:
            r = reverse(tau)
            if run1(tau) != r or run2(tau) != r:
                return _cx(
                    f"tau={perm_to_text(tau)} in the class",
                    "both images equal the reverse",
                    f"{perm_to_text(run1(tau))} / {perm_to_text(run2(tau))}",
                )
    if hi >= 4:
        # the maps are distinct even though they agree on the class
        cmp = maps_agree(cons, sigma, 4)
        if cmp.agree:
            return _cx("maps 3-2-1 vs 3-21 on S_4", "a disagreement", "maps agree")
        tau, a, b = cmp.witness
        if sort_output(cons, tau) != a or sort_output(sigma, tau) != b or a == b:
            return _cx("witness re-verification", "distinct images", str(cmp))
    return None


def _check_sort_un13_2(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("13-2")
    pats = (classical((2, 3, 1, 4)), MU_132)
    for n in _ns(lo, hi, 0):
        cls = _class_set(sigma, n, jobs)
        av = _av_set(n, pats)
        if cls != av:
            return _set_diff_cx(n, cls, av, "Sort(13-2) = Av(2-3-1-4, mu132)")
        expected = eval_named("binom-catalan-sum", n)
        if len(cls) != expected:
            return _cx(f"n={n}", f"|Sort_n| = {expected}", str(len(cls)))
    return None


def _check_sort_un23_1(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("23-1")
    pats = (classical((1, 3, 2, 4)), MU_2413)
    for n in _ns(lo, hi, 0):
        cls = _class_set(sigma, n, jobs)
        av = _av_set(n, pats)
        if cls != av:
            return _set_diff_cx(n, cls, av, "Sort(23-1) = Av(1-3-2-4, mu2413)")
    return None


_SCHRODER_TERMS = (1, 1, 2, 6, 22, 90, 394, 1806, 8558, 41586)


def _check_schroder_conjecture(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("23-1")
    for n in _ns(lo, hi, 0):
        count = sorting_class(sigma, n, jobs=jobs).count
        if n < len(_SCHRODER_TERMS) and count != _SCHRODER_TERMS[n]:
            return _cx(f"n={n}", str(_SCHRODER_TERMS[n]), str(count))
        if n >= 1 and count != schroder(n - 1):
            return _cx(f"n={n}", f"schroder({n - 1}) = {schroder(n - 1)}", str(count))
    return None


def _check_1un32_decreasing(lo: int, hi: int, jobs: int) -> Counterexample | None:
    run = make_sorter(P("1-32"))
    for n in _ns(lo, hi, 1):
        down = descending(n)
        up = identity(n)
        for tau in _sn(n):
            if (run(tau) == down) != (tau == up):
                return _cx(
                    f"n={n}, tau={perm_to_text(tau)}",
                    "image decreasing iff tau increasing",
                    perm_to_text(run(tau)),
                )
    return None


def _check_sort_1un32(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("1-32")
    cons = P("132")
    for n in _ns(lo, hi, 1):
        cls = _class_set(sigma, n, jobs)
        run = make_sorter(sigma)
        for tau in _sn(n):
            d = ltr_min_decompose(tau)
            runs = [seq for label, seq in d.parts if label.startswith("a")]
            minima = [seq[0] for label, seq in d.parts if label.startswith("m")]
            rev_concat = [v for seq in runs for v in reversed(seq)]
            member_pred = all(
                rev_concat[i] > rev_concat[i + 1] for i in range(len(rev_concat) - 1)
            )
            if member_pred != (tau in cls):
                return _cx(
                    f"n={n}, tau={perm_to_text(tau)}",
                    "membership iff reversed runs concatenate decreasingly",
                    f"predicate={member_pred}, member={tau in cls}",
                )
            image = tuple(v for seq in runs for v in sort_subsequence(sigma, seq))
            image += tuple(reversed(minima))
            if run(tau) != image:
                return _cx(
                    f"n={n}, tau={perm_to_text(tau)}",
                    f"image {perm_to_text(image)} from sorted runs then minima",
                    perm_to_text(run(tau)),
                )
        if len(cls) != catalan(n):
            return _cx(f"n={n}", f"catalan({n}) = {catalan(n)}", str(len(cls)))
        other = _class_set(cons, n)
        if other != cls:
            return _set_diff_cx(n, cls, other, "Sort(1-32) = Sort(132)")
        run2 = make_sorter(cons)
        for tau in cls:
            if run(tau) != run2(tau):
                return _cx(
                    f"tau={perm_to_text(tau)} in the class",
                    "maps agree on the class",
                    f"{perm_to_text(run(tau))} vs {perm_to_text(run2(tau))}",
                )
    if hi >= 4:
        tau = (2, 4, 3, 1)
        a = sort_output(sigma, tau)
        b = sort_output(cons, tau)
        if a != (3, 4, 1, 2) or b != (1, 3, 4, 2):
            return _cx("tau=2431", "images 3412 vs 1342", f"{a} vs {b}")
    return None


def _check_s12(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("1-2")
    for n in _ns(lo, hi, 0):
        cls = _class_set(sigma, n, jobs)
        av = _av_set(n, (_C213,))
        if cls != av:
            return _set_diff_cx(n, cls, av, "Sort(1-2) = Av(2-1-3)")
    return None


def _check_sort_un12_3(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("12-3")
    inner_a = (_C132, P("3-21"))
    for n in _ns(lo, hi, 1):
        cls = _class_set(sigma, n, jobs)
        for tau in _sn(n):
            d = split_at_max(tau)
            ta, tb = d.part("a"), d.part("b")
            cond = (
                (not ta or not tb or min(ta) > max(tb))
                and avoids_all(standardize(ta), inner_a)
                and avoids_all(standardize(tb), (_C213,))
            )
            if cond != (tau in cls):
                return _cx(
                    f"n={n}, tau={perm_to_text(tau)}",
                    "max-split conditions iff class membership",
                    f"conditions={cond}, member={tau in cls}",
                )
        expected = eval_named("scs123-sum", n)
        if len(cls) != expected:
            return _cx(f"n={n}", f"|Sort_n| = {expected}", str(len(cls)))
    return None


# ---------------------------------------------------------------------------
# preimages


def _check_max_preimage_bound(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for sigma in LENGTH3_CATALOG:
        for n in _ns(lo, hi, 1):
            counts = image_counts(sigma, n, jobs=jobs)
            worst = max(counts.values())
            if worst > catalan(n - 1):
                pi = min(p for p, c in counts.items() if c == worst)
                return _cx(
                    f"sigma={sigma}, n={n}, pi={perm_to_text(pi)}",
                    f"at most catalan({n - 1}) = {catalan(n - 1)} preimages",
                    str(worst),
                )
    return None


def _check_preimage_structure(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for n in _ns(lo, hi, 2):
        layered = tuple(range(n - 1, 0, -1)) + (n,)

        got = set(preimages(P("12-3"), layered).preimages)
        want = {
            (n,) + w
            for w in iterate_symmetric_group(n - 1)
            if not contains_vincular(w, _C213)
        }
        if got != want or len(got) != catalan(n - 1):
            return _cx(
                f"sigma=12-3, pi={perm_to_text(layered)}",
                f"{catalan(n - 1)} preimages: n first, then a 2-1-3 avoider",
                f"{len(got)} preimages",
            )

        got = set(preimages(P("23-1"), descending(n)).preimages)
        want = {
            (1,) + tuple(v + 1 for v in w)
            for w in iterate_symmetric_group(n - 1)
            if not contains_vincular(w, _C213)
        }
        if got != want or len(got) != catalan(n - 1):
            return _cx(
                f"sigma=23-1, pi={perm_to_text(descending(n))}",
                f"{catalan(n - 1)} preimages: 1 first, then a 2-1-3 avoider",
                f"{len(got)} preimages",
            )

        got = set(preimages(P("1-23"), layered).preimages)
        want = {
            (n,) + w
            for w in iterate_symmetric_group(n - 1)
            if avoids_all(w, (_C132, _C213))
        }
        layered_want = {
            (n,) + w for w in iterate_symmetric_group(n - 1) if is_reverse_layered(w)
        }
        expected_count = eval_named("two-pow-minus-two", n)
        if got != want or want != layered_want or len(got) != expected_count:
            return _cx(
                f"sigma=1-23, pi={perm_to_text(layered)}",
                f"{expected_count} preimages: n first, then a reverse-layered tail",
                f"{len(got)} preimages",
            )
    return None


_UNIQUE_MAX_CASES: tuple[tuple[str, Callable[[int], Perm]], ...] = (
    ("12-3", lambda n: tuple(range(n - 1, 0, -1)) + (n,)),
    ("32-1", lambda n: tuple(range(2, n + 1)) + (1,)),
    ("23-1", descending),
    ("21-3", identity),
    ("2-31", descending),
    ("2-13", identity),
)


def _check_unique_max(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for sigma_text, expected_fn in _UNIQUE_MAX_CASES:
        sigma = P(sigma_text)
        for n in _ns(lo, hi, 3):
            best, argmax = max_preimages(sigma, n, jobs=jobs)
            if best != catalan(n - 1) or argmax != (expected_fn(n),):
                return _cx(
                    f"sigma={sigma}, n={n}",
                    f"maximum catalan({n - 1}) = {catalan(n - 1)} uniquely at "
                    f"{perm_to_text(expected_fn(n))}",
                    f"maximum {best} at {[perm_to_text(p) for p in argmax]}",
                )
    return None


def _check_classical_cap(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for sigma in LENGTH3_CATALOG:
        if sigma.adjacencies:
            continue
        achievable = abs(sigma.values[0] - sigma.values[1]) == 1
        for n in _ns(lo, hi, 3):
            counts = image_counts(sigma, n, jobs=jobs)
            achieved = max(counts.values()) == catalan(n - 1)
            if achieved != achievable:
                return _cx(
                    f"sigma={sigma}, n={n}",
                    f"cap catalan({n - 1}) achieved iff first two pattern values "
                    f"are consecutive ({achievable})",
                    str(achieved),
                )
    return None


def _check_movement_bijection(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for sigma in LENGTH3_CATALOG:
        for n in _ns(lo, hi, 2):
            counts = image_counts(sigma, n, jobs=jobs)
            cap = catalan(n - 1)
            targets = {img for img, c in counts.items() if c == cap}
            if not targets:
                continue
            from collections import Counter

            expected = Counter(valid_movement_sequences(n))
            run = make_sorter(sigma)
            collected: dict[Perm, Counter] = {img: Counter() for img in targets}
            for tau in _sn(n):
                img = run(tau)
                if img in targets:
                    collected[img][sort_once(sigma, tau).moves] += 1
            for img, got in collected.items():
                if got != expected:
                    return _cx(
                        f"sigma={sigma}, n={n}, pi={perm_to_text(img)}",
                        "each valid movement sequence exactly once",
                        f"multiset of size {sum(got.values())} differs",
                    )
    return None


def _check_smoothing(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("1-23")
    for n in _ns(lo, hi, 2):
        counts = image_counts(sigma, n, jobs=jobs)
        for pi in _sn(n):
            if pi[-1] < n and pi[-2] != pi[-1] + 1:
                other = smoothing_step(pi)
                if counts.get(pi, 0) > counts.get(other, 0):
                    return _cx(
                        f"n={n}, pi={perm_to_text(pi)}",
                        f"at most {counts.get(other, 0)} preimages "
                        f"(count of {perm_to_text(other)})",
                        str(counts.get(pi, 0)),
                    )
    return None


def _check_last_adjacent(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("1-23")
    for n in _ns(lo, hi, 3):
        counts = image_counts(sigma, n, jobs=jobs)
        bound = 2 ** (n - 3)
        for pi in _sn(n):
            if pi[-2] == pi[-1] + 1 and counts.get(pi, 0) > bound:
                return _cx(
                    f"n={n}, pi={perm_to_text(pi)}",
                    f"at most 2^(n-3) = {bound} preimages",
                    str(counts.get(pi, 0)),
                )
    return None


def _check_smoothed_maximizer(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("1-23")
    for n in _ns(lo, hi, 2):
        _, argmax = max_preimages(sigma, n, jobs=jobs)
        if not any(pi[-1] == n for pi in argmax):
            return _cx(
                f"n={n}",
                "some maximizer ends with its largest value",
                f"maximizers {[perm_to_text(p) for p in argmax]}",
            )
    return None


def _check_conj_1un23_max(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("1-23")
    for n in _ns(lo, hi, 2):
        best, argmax = max_preimages(sigma, n, jobs=jobs)
        expected = eval_named("two-pow-minus-two", n)
        if best != expected:
            return _cx(
                f"n={n}",
                f"maximum 2^(n-2) = {expected}",
                f"{best} preimages at {[perm_to_text(p) for p in argmax]}",
            )
    return None


def _check_conj_1un23_unique(lo: int, hi: int, jobs: int) -> Counterexample | None:
    sigma = P("1-23")
    for n in _ns(lo, hi, 3):
        _, argmax = max_preimages(sigma, n, jobs=jobs)
        expected = tuple(range(n - 1, 0, -1)) + (n,)
        if argmax != (expected,):
            return _cx(
                f"n={n}",
                f"unique maximizer {perm_to_text(expected)}",
                f"maximizers {[perm_to_text(p) for p in argmax]}",
            )
    return None


# ---------------------------------------------------------------------------
# dynamics

_PERIODIC_GROUPS: tuple[tuple[tuple[str, ...], tuple[VincularPattern, ...]], ...] = (
    (("13-2", "23-1", "1-32", "2-31"), (_C132, _C231)),
    (("31-2", "21-3", "3-12", "2-13"), (_C312, _C213)),
)


def _check_periodic(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for sigma_texts, avoided in _PERIODIC_GROUPS:
        for sigma_text in sigma_texts:
            sigma = P(sigma_text)
            for n in _ns(lo, hi, 2):
                report = dynamics(sigma, n)
                got = set(report.periodic_points)
                want = _av_set(n, avoided)
                if got != want:
                    return _set_diff_cx(
                        n, got, want, f"periodic points of {sigma} = avoiders"
                    )
                bad = [p for p, t in report.period_of if t != 2]
                if bad:
                    return _cx(
                        f"sigma={sigma}, n={n}, point={perm_to_text(min(bad))}",
                        "least period 2",
                        str(report.period(min(bad))),
                    )
    return None


def _check_time_to_sort(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for sigma_texts, avoided in _PERIODIC_GROUPS:
        for sigma_text in sigma_texts:
            sigma = P(sigma_text)
            for n in _ns(lo, hi, 2):
                perms = list(_sn(n))
                index = {p: i for i, p in enumerate(perms)}
                run = make_sorter(sigma)
                nxt = [index[run(p)] for p in perms]
                member = [avoids_all(p, avoided) for p in perms]
                steps = 2 * n - 4
                for i, p in enumerate(perms):
                    cur = i
                    for _ in range(steps):
                        cur = nxt[cur]
                    if not member[cur]:
                        return _cx(
                            f"sigma={sigma}, n={n}, tau={perm_to_text(p)}",
                            f"in the periodic class after {steps} steps",
                            perm_to_text(perms[cur]),
                        )
    return None


def _check_stack_min(lo: int, hi: int, jobs: int) -> Counterexample | None:
    for sigma_text in ("1-23", "23-1", "12-3"):
        sigma = P(sigma_text)
        for n in _ns(lo, hi, 1):
            for tau in _sn(n):
                trace = sort_once(sigma, tau, want_snapshots=True)
                mins = [
                    min(snap)
                    for snap, move in zip(trace.snapshots, trace.moves)
                    if move == "N"
                ]
                if any(mins[i + 1] > mins[i] for i in range(len(mins) - 1)):
                    return _cx(
                        f"sigma={sigma}, tau={perm_to_text(tau)}",
                        "stack minimum never increases across pushes",
                        f"push minima {mins}",
                    )
    return None


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class CheckDef:
    check_id: str
    kind: str  # "theorem" or "conjecture"
    statement: str
    default_range: tuple[int, int]
    fn: Callable[[int, int, int], Counterexample | None]


def _nonclass_defs() -> list[CheckDef]:
    sizes = {"nonclass-un23-1": (5, 5), "nonclass-2un31": (6, 6)}
    out = []
    for key, (sigma_text, big, _, small, _) in _NONCLASS_WITNESSES.items():
        out.append(
            CheckDef(
                key,
                "theorem",
                f"Sort({sigma_text}) is not closed under containment: "
                f"{big} sorts but its pattern {small} does not",
                sizes.get(key, (4, 4)),
                _make_nonclass_check(key),
            )
        )
    return out


REGISTRY: tuple[CheckDef, ...] = tuple(
    [
        CheckDef(
            "lemma-knuth",
            "theorem",
            "the classical stack sorts tau to the identity iff tau avoids 2-3-1",
            (0, 7),
            _check_lemma_knuth,
        ),
        CheckDef(
            "lemma-comp",
            "theorem",
            "complementing the stack pattern conjugates the map by complement",
            (0, 7),
            _check_lemma_comp,
        ),
        CheckDef(
            "lemma-free2avoids",
            "theorem",
            "underlining the first two entries of 132, 312, or the last two of "
            "213, 231 does not change the avoidance class",
            (0, 7),
            _check_free2avoids,
        ),
        CheckDef(
            "cor-free2stacks",
            "theorem",
            "the stacks for 13-2, 31-2, 2-13, 2-31 realise the same maps as "
            "their classical versions",
            (0, 7),
            _check_free2stacks,
        ),
        CheckDef(
            "thm-sort-1un23",
            "theorem",
            "Sort(1-23) = Av(1-3-2, 3-2-1-4, 4-2-1-3), counted by 2^n - n, "
            "with the equivalent max-split conditions",
            (0, 8),
            _check_sort_1un23,
        ),
        CheckDef(
            "class-closure",
            "theorem",
            "among the one-gap stack patterns exactly 1-23 and 3-21 give "
            "containment-closed sorting classes",
            (1, 6),
            _check_class_closure,
        ),
    ]
    + _nonclass_defs()
    + [
        CheckDef(
            "enum-132-321",
            "theorem",
            "|Av_n(1-3-2, 3-2-1)| = C(n,2) + 1",
            (0, 8),
            _make_enum_check(("1-3-2", "3-2-1"), "binom2-plus-one"),
        ),
        CheckDef(
            "enum-132-213",
            "theorem",
            "|Av_n(1-3-2, 2-1-3)| = 2^(n-1)",
            (0, 8),
            _make_enum_check(("1-3-2", "2-1-3"), "two-pow-minus-one"),
        ),
        CheckDef(
            "enum-123-132",
            "theorem",
            "|Av_n(1-2-3, 1-3-2)| = 2^(n-1)",
            (0, 8),
            _make_enum_check(("1-2-3", "1-3-2"), "two-pow-minus-one"),
        ),
        CheckDef(
            "enum-3un21-132",
            "theorem",
            "|Av_n(3-21, 1-3-2)| = 2^(n-1)",
            (0, 8),
            _make_enum_check(("1-3-2", "3-21"), "two-pow-minus-one"),
        ),
        CheckDef(
            "thm-321-general",
            "theorem",
            "for descending pattern values of lengths 3 and 4 under every "
            "adjacency mask, Sort(sigma) = Av(rev(sigma), 1-3-2)",
            (0, 7),
            _check_321_general,
        ),
        CheckDef(
            "lemma-av-eq-1",
            "theorem",
            "Av(1-23, 1-3-2) = Av(123, 1-3-2)",
            (0, 8),
            _make_av_eq_check(("1-23", "1-3-2"), ("123", "1-3-2")),
        ),
        CheckDef(
            "lemma-av-eq-2",
            "theorem",
            "Av(12-3, 1-3-2) = Av(1-2-3, 1-3-2)",
            (0, 8),
            _make_av_eq_check(("12-3", "1-3-2"), ("1-2-3", "1-3-2")),
        ),
        CheckDef(
            "cor-sort-un32-1",
            "theorem",
            "Sort(32-1) = Av(123, 1-3-2), counted by Motzkin numbers, equals "
            "Sort(321) with both maps reversing on the class yet distinct",
            (0, 8),
            _check_sort_un32_1,
        ),
        CheckDef(
            "cor-sort-3un21",
            "theorem",
            "Sort(3-21) = Av(1-2-3, 1-3-2), counted by 2^(n-1), equals "
            "Sort(3-2-1) with both maps reversing on the class yet distinct",
            (0, 8),
            _check_sort_3un21,
        ),
        CheckDef(
            "thm-sort-un13-2",
            "theorem",
            "Sort(13-2) = Av(2-3-1-4, mu132), counted by "
            "sum of C(n-1,i) * catalan(i)",
            (0, 7),
            _check_sort_un13_2,
        ),
        CheckDef(
            "thm-sort-un23-1",
            "theorem",
            "Sort(23-1) = Av(1-3-2-4, mu2413)",
            (0, 7),
            _check_sort_un23_1,
        ),
        CheckDef(
            "conj-sort-un23-1-schroder",
            "conjecture",
            "|Sort_n(23-1)| matches the large Schroeder numbers shifted by one",
            (0, 9),
            _check_schroder_conjecture,
        ),
        CheckDef(
            "lemma-1un32-decreasing",
            "theorem",
            "the 1-32 stack sends exactly the identity to the decreasing "
            "permutation",
            (1, 7),
            _check_1un32_decreasing,
        ),
        CheckDef(
            "thm-sort-1un32",
            "theorem",
            "Sort(1-32) membership via reversed runs between left-to-right "
            "minima, counted by Catalan numbers, equal to Sort(132) with "
            "agreeing images on the class; image = sorted runs then minima "
            "reversed",
            (1, 7),
            _check_sort_1un32,
        ),
        CheckDef(
            "lemma-s12",
            "theorem",
            "Sort(1-2) = Av(2-1-3)",
            (0, 7),
            _check_s12,
        ),
        CheckDef(
            "thm-sort-un12-3",
            "theorem",
            "Sort(12-3) via the max-split conditions, counted by "
            "catalan(n-1) + sum of 2^(n-2-i) * catalan(i)",
            (1, 7),
            _check_sort_un12_3,
        ),
        CheckDef(
            "thm-max-preimage-bound",
            "theorem",
            "every image has at most catalan(n-1) preimages, for all "
            "length-3 stack patterns",
            (1, 7),
            _check_max_preimage_bound,
        ),
        CheckDef(
            "lemma-preimage-structure",
            "theorem",
            "preimage sets of the extremal targets under 12-3, 23-1, and 1-23 "
            "have the predicted first element and tail structure",
            (2, 7),
            _check_preimage_structure,
        ),
        CheckDef(
            "thm-unique-max",
            "theorem",
            "the catalan(n-1) preimage maximum is achieved by a unique target "
            "for 12-3, 32-1, 23-1, 21-3, 2-31, 2-13",
            (3, 7),
            _check_unique_max,
        ),
        CheckDef(
            "thm-classical-cap",
            "theorem",
            "a classical length-3 stack pattern attains the catalan(n-1) "
            "preimage cap iff its first two values are consecutive",
            (4, 6),
            _check_classical_cap,
        ),
        CheckDef(
            "movement-bijection",
            "theorem",
            "whenever a target attains catalan(n-1) preimages, their movement "
            "words are exactly the valid movement sequences, once each",
            (2, 7),
            _check_movement_bijection,
        ),
        CheckDef(
            "lemma-smoothing",
            "theorem",
            "swapping the last value of a target with its successor never "
            "lowers the 1-23 preimage count when they are not adjacent",
            (2, 7),
            _check_smoothing,
        ),
        CheckDef(
            "lemma-lastadjacent",
            "theorem",
            "targets whose last two entries are consecutive descents have at "
            "most 2^(n-3) preimages under the 1-23 stack",
            (3, 7),
            _check_last_adjacent,
        ),
        CheckDef(
            "cor-smoothed",
            "theorem",
            "some 1-23 preimage maximizer ends with its largest value",
            (2, 7),
            _check_smoothed_maximizer,
        ),
        CheckDef(
            "conj-1un23-max",
            "conjecture",
            "the maximal 1-23 preimage count is 2^(n-2)",
            (2, 9),
            _check_conj_1un23_max,
        ),
        CheckDef(
            "conj-1un23-unique",
            "conjecture",
            "the maximal 1-23 preimage count is achieved only by "
            "(n-1)(n-2)...1 n",
            (3, 9),
            _check_conj_1un23_unique,
        ),
        CheckDef(
            "thm-periodic",
            "theorem",
            "the periodic points of the eight one-gap maps are the stated "
            "two-pattern avoidance classes, all of period 2",
            (2, 7),
            _check_periodic,
        ),
        CheckDef(
            "cor-time-to-sort",
            "theorem",
            "after 2n-4 applications every permutation lies in the periodic "
            "class",
            (2, 7),
            _check_time_to_sort,
        ),
        CheckDef(
            "lemma-stack-min",
            "theorem",
            "for the 1-23, 23-1, and 12-3 stacks the stack minimum never "
            "increases across pushes",
            (1, 6),
            _check_stack_min,
        ),
    ]
)

_BY_ID = {d.check_id: d for d in REGISTRY}


class UnknownCheckError(KeyError):
    pass


def registry_listing() -> list[dict]:
    """Machine-readable registry: id, kind, statement, default n range."""
    return [
        {
            "id": d.check_id,
            "kind": d.kind,
            "statement": d.statement,
            "default_n": [d.default_range[0], d.default_range[1]],
        }
        for d in REGISTRY
    ]


def run_check(
    check_id: str, n_range: tuple[int, int] | None = None, jobs: int = 1
) -> CheckReport:
    """Run one registered check over an n range (default: its tuned range)."""
    if check_id not in _BY_ID:
        raise UnknownCheckError(check_id)
    d = _BY_ID[check_id]
    lo, hi = n_range if n_range is not None else d.default_range
    start = time.perf_counter()
    cx = d.fn(lo, hi, jobs)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    if d.kind == "conjecture":
        status = STATUS_FALSIFIED if cx else STATUS_CONSISTENT
    else:
        status = STATUS_FAIL if cx else STATUS_PASS
    return CheckReport(check_id, (lo, hi), status, cx, elapsed_ms)


def _run_one(args: tuple[str, tuple[int, int] | None]) -> CheckReport:
    check_id, n_range = args
    return run_check(check_id, n_range, jobs=1)


def run_many(
    check_ids: Iterable[str] | None = None,
    n_range: tuple[int, int] | None = None,
    jobs: int = 1,
) -> list[CheckReport]:
    """Run several checks (default: the whole registry), optionally across
    worker processes, returning reports in registry order."""
    if check_ids is None:
        ids = [d.check_id for d in REGISTRY]
    else:
        ids = list(check_ids)
        for check_id in ids:
            if check_id not in _BY_ID:
                raise UnknownCheckError(check_id)
    tasks = [(check_id, n_range) for check_id in ids]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, tasks))
    return [_run_one(task) for task in tasks]


def format_report(report: CheckReport) -> str:
    lo, hi = report.n_range
    line = f"{report.check_id:32s} n={lo}..{hi:<2d} {report.status:22s} {report.elapsed_ms:6d}ms"
    if report.counterexample is not None:
        line += (
            f"\n    input:    {report.counterexample.input}"
            f"\n    expected: {report.counterexample.expected}"
            f"\n    actual:   {report.counterexample.actual}"
        )
    return line
