"""Exact counters: Motzkin numbers, partial Motzkin paths, ballot-word DPs and
the classical closed forms for tableaux with at most 2..5 rows.

Everything here is exact integer arithmetic; the DPs are bottom-up over
(state, length).
"""

from __future__ import annotations

import random
from collections import defaultdict
from collections.abc import Iterator
from fractions import Fraction
from math import comb, factorial

from .bijection import MotzkinPath
from .errors import IntegralityError, ResourceLimitError, ValidationError
from .tableaux import Partition, YamanouchiWord, yamanouchi_words

DEFAULT_CAP = 16


class MotzkinTable:
    """``table[j][r]``: U/D/L paths from height ``j`` down to 0 in ``r`` steps."""

    def __init__(self) -> None:
        # rows[r][j] for j <= r
        self._rows: list[list[int]] = [[1]]

    def _extend(self, r_max: int) -> None:
        rows = self._rows
        while len(rows) <= r_max:
            prev = rows[-1]
            r = len(rows)

            def at(j: int) -> int:
                return prev[j] if 0 <= j < len(prev) else 0

            rows.append([at(j) + at(j + 1) + (at(j - 1) if j > 0 else 0) for j in range(r + 1)])

    def get(self, j: int, r: int) -> int:
        if r < 0 or j < 0 or j > r:
            return 0
        self._extend(r)
        return self._rows[r][j]


_TABLE = MotzkinTable()


def motzkin(n: int) -> int:
    if n < 0:
        return 0
    return _TABLE.get(0, n)


def motzkin_numbers(upto: int) -> list[int]:
    return [motzkin(n) for n in range(upto + 1)]


def x_count(i: int, j: int, n: int) -> int:
    """Number of U/D/L paths from ``(i, j)`` to ``(n, 0)`` never below the axis."""
    if i > n:
        return 0
    return _TABLE.get(j, n - i)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def central_binomial(n: int) -> int:
    return comb(n, n // 2)


def _ballot_step(states: dict[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for s, c in states.items():
        for i in range(len(s)):
            if i == 0 or s[i] < s[i - 1]:
                t = list(s)
                t[i] += 1
                out[tuple(t)] += c
    return out


def strip_counts(k: int, n_max: int) -> list[int]:
    """``[|T_k(0)|, ..., |T_k(n_max)|]`` by a single ballot-state sweep."""
    if k < 1:
        raise ValidationError(f"row bound must be positive, got {k}")
    states: dict[tuple[int, ...], int] = {(0,) * k: 1}
    out = [1]
    for _ in range(n_max):
        states = _ballot_step(states)
        out.append(sum(states.values()))
    return out


def count_strip(k: int, n: int) -> int:
    """Standard tableaux with ``n`` cells and at most ``k`` rows."""
    return strip_counts(k, n)[n]


def _skew_start(mu: Partition | tuple[int, ...] | str) -> tuple[int, ...]:
    if isinstance(mu, str):
        mu = Partition.parse(mu)
    elif not isinstance(mu, Partition):
        mu = Partition(mu)
    if len(mu) > 3:
        raise ValidationError(f"partition {mu} has more than 3 parts")
    return mu.padded(3)


def skew_counts(mu: Partition | tuple[int, ...] | str, m_max: int) -> list[int]:
    start = _skew_start(mu)
    states = {start: 1}
    out = [1]
    for _ in range(m_max):
        states = _ballot_step(states)
        out.append(sum(states.values()))
    return out


def count_skew_bruteforce(mu: Partition | tuple[int, ...] | str, m: int) -> int:
    """Fillings of the skew strip ``T_3 / mu`` with ``m`` entries.

    Counted as ballot continuations of length ``m`` from letter counts ``mu``.
    """
    return skew_counts(mu, m)[m]


def count_entry_restricted(i: int, j: int, m: int, n: int) -> int:
    """Tableaux in ``T_3(n)`` whose cell ``(i, j)`` holds ``m``.

    Ballot words of length ``n`` whose ``m``-th letter is ``i``, preceded by
    exactly ``j - 1`` earlier copies of ``i``.
    """
    if not (1 <= i <= 3) or j < 1 or m < 1 or m > n:
        return 0
    states: dict[tuple[int, ...], int] = {(0, 0, 0): 1}
    for _ in range(m - 1):
        states = _ballot_step(states)
    forced: dict[tuple[int, ...], int] = defaultdict(int)
    for s, c in states.items():
        if s[i - 1] == j - 1 and (i == 1 or s[i - 1] < s[i - 2]):
            t = list(s)
            t[i - 1] += 1
            forced[tuple(t)] += c
    states = forced
    for _ in range(n - m):
        states = _ballot_step(states)
    return sum(states.values())


def closed_form(k: int, n: int) -> int:
    """Classical closed forms for ``|T_k(n)|``, ``k`` in 2..5."""
    if k == 2:
        return comb(n, n // 2)
    if k == 3:
        total = sum(Fraction(comb(n, 2 * i) * comb(2 * i, i), i + 1) for i in range(n // 2 + 1))
    elif k == 4:
        return catalan((n + 1) // 2) * catalan((n + 2) // 2)
    elif k == 5:
        total = 6 * sum(
            Fraction(
                comb(n, 2 * i) * catalan(i) * factorial(2 * i + 2),
                factorial(i + 2) * factorial(i + 3),
            )
            for i in range(n // 2 + 1)
        )
    else:
        raise ValidationError(f"no closed form for k={k}; expected 2, 3, 4 or 5")
    if total.denominator != 1:
        raise IntegralityError(f"closed form for k={k}, n={n} is not integral: {total}")
    return int(total)


def count_grounded_level_paths(n: int) -> int:
    """Motzkin paths of length ``n`` whose level steps all lie on the axis."""
    heights = [1]
    for _ in range(n):
        nxt = [0] * (len(heights) + 1)
        for h, c in enumerate(heights):
            if not c:
                continue
            nxt[h + 1] += c
            if h > 0:
                nxt[h - 1] += c
            else:
                nxt[0] += c
        heights = nxt
    return heights[0]


def _check_cap(n: int, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if n > cap:
        raise ResourceLimitError(f"n={n} exceeds the enumeration cap {cap}")


def enumerate_paths(n: int, cap: int | None = None) -> Iterator[MotzkinPath]:
    """Every Motzkin path of length ``n`` in lexicographic order D < L < U."""
    _check_cap(n, cap)
    for steps in _path_strings(n):
        p = MotzkinPath.__new__(MotzkinPath)
        object.__setattr__(p, "steps", steps)
        yield p


def _path_strings(n: int, start_height: int = 0, end_height: int = 0) -> Iterator[str]:
    buf: list[str] = []

    def rec(h: int) -> Iterator[str]:
        left = n - len(buf)
        if left == 0:
            if h == end_height:
                yield "".join(buf)
            return
        if abs(h - end_height) > left:
            return
        if h > 0:
            buf.append("D")
            yield from rec(h - 1)
            buf.pop()
        buf.append("L")
        yield from rec(h)
        buf.pop()
        buf.append("U")
        yield from rec(h + 1)
        buf.pop()

    yield from rec(start_height)


def tails(length: int, start_height: int) -> Iterator[str]:
    """Step strings of ``length`` from ``start_height`` to 0, never below 0."""
    yield from _path_strings(length, start_height, 0)


def enumerate_words3(n: int, cap: int | None = None) -> Iterator[YamanouchiWord]:
    _check_cap(n, cap)
    yield from yamanouchi_words(n, 3)


def random_tail(length: int, start_height: int, rng: random.Random) -> str:
    """Uniform random step string of ``length`` from ``start_height`` down to 0."""
    if x_count(0, start_height, length) == 0:
        raise ValidationError(f"no path of length {length} descends from height {start_height}")
    steps = []
    h = start_height
    for t in range(length):
        r = length - t - 1
        options = [(s, h + d) for s, d in (("U", 1), ("L", 0), ("D", -1)) if h + d >= 0]
        weights = [x_count(0, nh, r) for _, nh in options]
        pick = rng.randrange(sum(weights))
        for (s, nh), w in zip(options, weights):
            if pick < w:
                steps.append(s)
                h = nh
                break
            pick -= w
    return "".join(steps)


def random_path(n: int, rng: random.Random) -> MotzkinPath:
    """Uniformly random Motzkin path of length ``n``."""
    return MotzkinPath(random_tail(n, 0, rng))
