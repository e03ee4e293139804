"""Reference integer sequences and an OEIS b-file client.

Catalan, Motzkin, and large Schroeder numbers are computed by their standard
convolution recurrences in exact integer arithmetic, alongside the named
closed forms that enumerate the sorting classes and preimage counts handled
elsewhere in the package.  Terms are memoised; the tables are guarded by a
lock so concurrent readers are safe.

OEIS access is hermetic by default: b-files are resolved against the shipped
fixture directory first, and the network is consulted only when
OEIS_ENABLE_NET is set to a true value.
"""

from __future__ import annotations

import importlib.resources
import math
import os
import threading
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

OEIS_BASE_URL_ENV = "OEIS_BASE_URL"
OEIS_ENABLE_NET_ENV = "OEIS_ENABLE_NET"
OEIS_TIMEOUT_MS_ENV = "OEIS_TIMEOUT_MS"

DEFAULT_OEIS_BASE_URL = "https://oeis.org"
DEFAULT_OEIS_TIMEOUT_MS = 5000


class OeisError(Exception):
    """Base class for OEIS client failures."""


class OeisIdError(OeisError, ValueError):
    """The sequence id is not 'A' followed by digits."""


class OeisFixtureMissingError(OeisError):
    """No local fixture for the id and network access is disabled."""


class OeisFetchError(OeisError):
    """The HTTP request failed."""


class OeisParseError(OeisError):
    """The b-file content could not be parsed."""


_lock = threading.Lock()
_catalan: list[int] = [1]
_motzkin: list[int] = [1]
_schroder: list[int] = [1]


def _extend_catalan(n: int) -> None:
    while len(_catalan) <= n:
        m = len(_catalan) - 1
        _catalan.append(sum(_catalan[i] * _catalan[m - i] for i in range(m + 1)))


def _extend_motzkin(n: int) -> None:
    while len(_motzkin) <= n:
        m = len(_motzkin) - 1
        nxt = _motzkin[m] + sum(_motzkin[i] * _motzkin[m - 1 - i] for i in range(m))
        _motzkin.append(nxt)


def _extend_schroder(n: int) -> None:
    while len(_schroder) <= n:
        m = len(_schroder) - 1
        nxt = _schroder[m] + sum(_schroder[i] * _schroder[m - i] for i in range(m + 1))
        _schroder.append(nxt)


def catalan(n: int) -> int:
    """C_0, C_1, ... = 1, 1, 2, 5, 14, 42, ...

    >>> [catalan(i) for i in range(6)]
    [1, 1, 2, 5, 14, 42]
    """
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    with _lock:
        _extend_catalan(n)
        return _catalan[n]


def motzkin(n: int) -> int:
    """M_0, M_1, ... = 1, 1, 2, 4, 9, 21, ...

    >>> [motzkin(i) for i in range(6)]
    [1, 1, 2, 4, 9, 21]
    """
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    with _lock:
        _extend_motzkin(n)
        return _motzkin[n]


def schroder(n: int) -> int:
    """Large Schroeder numbers S_0, S_1, ... = 1, 2, 6, 22, 90, ...

    >>> [schroder(i) for i in range(5)]
    [1, 2, 6, 22, 90]
    """
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    with _lock:
        _extend_schroder(n)
        return _schroder[n]


def _two_pow_minus_n(n: int) -> int:
    return 2**n - n


def _binom2_plus_one(n: int) -> int:
    return math.comb(n, 2) + 1


def _two_pow_minus_one(n: int) -> int:
    return 1 if n == 0 else 2 ** (n - 1)


def _two_pow_minus_two(n: int) -> int:
    # preimage-count ceiling for the 1-23 stack; degenerate lengths have a
    # single preimage
    return 1 if n <= 1 else 2 ** (n - 2)


def _binom_catalan_sum(n: int) -> int:
    if n == 0:
        return 1
    return sum(math.comb(n - 1, i) * catalan(i) for i in range(n))


def _scs123_sum(n: int) -> int:
    if n == 0:
        return 1
    return catalan(n - 1) + sum(
        2 ** (n - 2 - i) * catalan(i) for i in range(n - 1)
    )


@dataclass(frozen=True)
class SequenceDef:
    name: str
    terms: Callable[[int], int]
    offset: int = 0
    oeis_id: str | None = None
    description: str = ""


NAMED_SEQUENCES: dict[str, SequenceDef] = {
    s.name: s
    for s in (
        SequenceDef("catalan", catalan, 0, "A000108", "Catalan numbers"),
        SequenceDef("motzkin", motzkin, 0, "A001006", "Motzkin numbers"),
        SequenceDef("schroder", schroder, 0, "A006318", "large Schroeder numbers"),
        SequenceDef(
            "two-pow-minus-n", _two_pow_minus_n, 0, "A000325", "2^n - n"
        ),
        SequenceDef(
            "binom2-plus-one", _binom2_plus_one, 0, "A000124", "C(n,2) + 1"
        ),
        SequenceDef(
            "two-pow-minus-one",
            _two_pow_minus_one,
            0,
            None,
            "2^(n-1) for n >= 1, and 1 at n = 0",
        ),
        SequenceDef(
            "two-pow-minus-two",
            _two_pow_minus_two,
            0,
            None,
            "2^(n-2) for n >= 2, and 1 below",
        ),
        SequenceDef(
            "binom-catalan-sum",
            _binom_catalan_sum,
            0,
            None,
            "sum of C(n-1,i)*catalan(i), with the empty case worth 1",
        ),
        SequenceDef(
            "scs123-sum",
            _scs123_sum,
            0,
            None,
            "catalan(n-1) + sum of 2^(n-2-i)*catalan(i), with the empty case worth 1",
        ),
    )
}


def eval_named(name: str, n: int) -> int:
    """Evaluate a registered sequence.

    >>> eval_named("two-pow-minus-n", 4)
    12
    >>> eval_named("binom-catalan-sum", 3)
    5
    """
    if name not in NAMED_SEQUENCES:
        raise KeyError(f"unknown sequence {name!r}")
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    return NAMED_SEQUENCES[name].terms(n)


def sequence_terms(name: str, count: int) -> list[int]:
    return [eval_named(name, i) for i in range(count)]


def _validate_oeis_id(oeis_id: str) -> str:
    s = oeis_id.strip()
    if len(s) < 2 or s[0] != "A" or not s[1:].isdigit():
        raise OeisIdError(f"malformed OEIS id {oeis_id!r}; expected 'A' + digits")
    return "A" + s[1:].zfill(6)


def parse_b_file(text: str) -> list[tuple[int, int]]:
    """Parse b-file lines of the form "index value"; '#' lines are comments."""
    out: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise OeisParseError(f"line {lineno}: expected 'index value', got {raw!r}")
        try:
            out.append((int(fields[0]), int(fields[1])))
        except ValueError as exc:
            raise OeisParseError(f"line {lineno}: non-integer field in {raw!r}") from exc
    return out


def _fixture_dir() -> Path:
    return Path(str(importlib.resources.files("stacksort"))) / "fixtures" / "oeis"


def _net_enabled(override: bool | None) -> bool:
    if override is not None:
        return override
    return os.environ.get(OEIS_ENABLE_NET_ENV, "").strip().lower() in (
        "1",
        "true",
        "yes",
        "on",
    )


def _http_get(url: str, timeout_s: float) -> str:
    with urllib.request.urlopen(url, timeout=timeout_s) as resp:  # noqa: S310
        return resp.read().decode("utf-8")


def fetch_oeis(
    oeis_id: str,
    *,
    fixture_dir: Path | str | None = None,
    enable_net: bool | None = None,
    base_url: str | None = None,
    timeout_ms: int | None = None,
) -> list[tuple[int, int]]:
    """Return (index, value) pairs for a sequence's b-file.

    Resolution order: the fixture directory shipped with the package (or the
    one given), then the network if enabled via argument or OEIS_ENABLE_NET.
    """
    canonical = _validate_oeis_id(oeis_id)
    directory = Path(fixture_dir) if fixture_dir is not None else _fixture_dir()
    fixture = directory / f"b{canonical[1:]}.txt"
    if fixture.is_file():
        return parse_b_file(fixture.read_text())
    if not _net_enabled(enable_net):
        raise OeisFixtureMissingError(
            f"no fixture {fixture.name} and network access is disabled"
        )
    base = base_url or os.environ.get(OEIS_BASE_URL_ENV) or DEFAULT_OEIS_BASE_URL
    if timeout_ms is None:
        timeout_ms = int(
            os.environ.get(OEIS_TIMEOUT_MS_ENV) or DEFAULT_OEIS_TIMEOUT_MS
        )
    url = f"{base.rstrip('/')}/{canonical}/b{canonical[1:]}.txt"
    try:
        text = _http_get(url, timeout_ms / 1000.0)
    except (urllib.error.URLError, OSError) as exc:
        raise OeisFetchError(f"fetching {url} failed: {exc}") from exc
    return parse_b_file(text)


def compare_with_oeis(
    name: str, oeis_id: str, **fetch_kwargs
) -> tuple[bool, list[tuple[int, int, int]]]:
    """Compare a named sequence against b-file terms index by index.

    Returns (all_match, mismatches) where each mismatch is
    (index, ours, theirs); indices outside our offset are skipped.
    """
    terms = fetch_oeis(oeis_id, **fetch_kwargs)
    seq = NAMED_SEQUENCES.get(name)
    if seq is None:
        raise KeyError(f"unknown sequence {name!r}")
    mismatches = []
    for idx, value in terms:
        if idx < seq.offset:
            continue
        ours = seq.terms(idx)
        if ours != value:
            mismatches.append((idx, ours, value))
    return (not mismatches), mismatches


def _iter_pairs_text(pairs: Iterable[tuple[int, int]]) -> str:
    return "\n".join(f"{i} {v}" for i, v in pairs) + "\n"
