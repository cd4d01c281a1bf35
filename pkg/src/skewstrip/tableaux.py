"""Partitions, standard Young tableaux and Yamanouchi words.

Rows and columns are 1-indexed wherever a cell is named as ``(row, col)``.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from math import factorial

from .errors import ValidationError


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts; trailing zeros are dropped."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for idx, p in enumerate(parts):
            if p < 0:
                raise ValidationError(f"negative part {p} at index {idx + 1}", idx + 1)
            if idx and p > parts[idx - 1]:
                raise ValidationError(
                    f"parts not weakly decreasing at index {idx + 1}: {parts}", idx + 1
                )
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(int(tok) for tok in text.split(","))
        except ValueError as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"cannot parse partition {text!r}") from exc

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, row: int) -> int:
        """Length of 1-based ``row``; rows past the end have length 0."""
        return self.parts[row - 1] if 1 <= row <= len(self.parts) else 0

    def padded(self, k: int) -> tuple[int, ...]:
        if len(self.parts) > k:
            raise ValidationError(f"partition {self} has more than {k} parts")
        return self.parts + (0,) * (k - len(self.parts))

    def cells(self) -> Iterator[tuple[int, int]]:
        for r, length in enumerate(self.parts, 1):
            for c in range(1, length + 1):
                yield r, c

    def conjugate(self) -> Partition:
        if not self.parts:
            return Partition(())
        return Partition(sum(1 for p in self.parts if p >= c) for c in range(1, self.parts[0] + 1))

    def is_corner(self, row: int, col: int) -> bool:
        """True if ``(row, col)`` is a removable cell."""
        return self[row] == col and self[row + 1] < col

    def remove_cell(self, row: int) -> Partition:
        parts = list(self.parts)
        parts[row - 1] -= 1
        return Partition(parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) or "0"


@dataclass(frozen=True)
class YamanouchiWord:
    """Ballot word: every prefix has at least as many ``i`` as ``i+1``."""

    letters: tuple[int, ...]

    def __init__(self, letters: Iterable[int] = ()):
        letters = tuple(int(c) for c in letters)
        pos = first_ballot_violation(letters)
        if pos is not None:
            raise ValidationError(
                f"not a Yamanouchi word: prefix of length {pos} violates the ballot condition",
                pos,
            )
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> YamanouchiWord:
        text = text.strip()
        if not text.isdigit() and text:
            raise ValidationError(f"word must be a string of digits, got {text!r}")
        return cls(int(ch) for ch in text)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __str__(self) -> str:
        return "".join(map(str, self.letters))

    @property
    def max_letter(self) -> int:
        return max(self.letters, default=0)

    def shape(self) -> Partition:
        counts = [0] * self.max_letter
        for c in self.letters:
            counts[c - 1] += 1
        return Partition(counts)


def first_ballot_violation(letters: Sequence[int]) -> int | None:
    """1-based length of the shortest prefix breaking the ballot condition."""
    counts: dict[int, int] = {}
    for pos, c in enumerate(letters, 1):
        if c < 1:
            return pos
        counts[c] = counts.get(c, 0) + 1
        if c > 1 and counts[c] > counts.get(c - 1, 0):
            return pos
    return None


def is_yamanouchi(letters: Sequence[int] | str, k: int | None = None) -> bool:
    if isinstance(letters, str):
        if letters and not letters.isdigit():
            return False
        letters = [int(ch) for ch in letters]
    if k is not None and any(c > k for c in letters):
        return False
    return first_ballot_violation(letters) is None


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Iterable[Iterable[int]] = ()):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        while rows and not rows[-1]:
            rows = rows[:-1]
        _validate_tableau(rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_json(cls, text: str) -> StandardTableau:
        return cls(json.loads(text))

    def to_json(self) -> str:
        return json.dumps([list(r) for r in self.rows])

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def entry(self, row: int, col: int) -> int:
        return self.rows[row - 1][col - 1]

    def __str__(self) -> str:
        width = len(str(self.size)) if self.rows else 1
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in self.rows)


def _validate_tableau(rows: tuple[tuple[int, ...], ...]) -> None:
    for r in range(1, len(rows)):
        if len(rows[r]) > len(rows[r - 1]):
            raise ValidationError(f"row lengths do not form a partition (row {r + 1})", r + 1)
        if not rows[r]:
            raise ValidationError(f"empty row {r + 1} above a nonempty row", r + 1)
    entries = sorted(v for row in rows for v in row)
    if entries != list(range(1, len(entries) + 1)):
        raise ValidationError(f"entries are not exactly 1..{len(entries)}")
    for r, row in enumerate(rows, 1):
        for c in range(1, len(row)):
            if row[c] <= row[c - 1]:
                raise ValidationError(f"row {r} not strictly increasing at column {c + 1}")
        if r > 1:
            above = rows[r - 2]
            for c, v in enumerate(row):
                if v <= above[c]:
                    raise ValidationError(f"column {c + 1} not strictly increasing at row {r}")


def chi(t: StandardTableau) -> YamanouchiWord:
    """Word whose j-th letter is the row holding entry j."""
    letters = [0] * t.size
    for r, row in enumerate(t.rows, 1):
        for v in row:
            letters[v - 1] = r
    return YamanouchiWord(letters)


def chi_inv(w: YamanouchiWord | Sequence[int] | str) -> StandardTableau:
    if isinstance(w, str):
        w = YamanouchiWord.parse(w)
    elif not isinstance(w, YamanouchiWord):
        w = YamanouchiWord(w)
    rows: list[list[int]] = [[] for _ in range(w.max_letter)]
    for pos, c in enumerate(w.letters, 1):
        rows[c - 1].append(pos)
    return StandardTableau(rows)


def hook_count(mu: Partition | Sequence[int]) -> int:
    """Number of standard tableaux of shape ``mu`` (hook-length formula)."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    conj = mu.conjugate()
    hooks = 1
    for r, c in mu.cells():
        hooks *= (mu[r] - c) + (conj[c] - r) + 1
    num = factorial(mu.size)
    assert num % hooks == 0
    return num // hooks


def standard_tableaux(mu: Partition | Sequence[int]) -> Iterator[StandardTableau]:
    """Every standard tableau of shape ``mu``, by placing 1..n one at a time."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    target = mu.parts
    k = len(target)
    letters: list[int] = []
    counts = [0] * k

    def rec() -> Iterator[StandardTableau]:
        if len(letters) == mu.size:
            yield chi_inv(letters)
            return
        for i in range(k):
            if counts[i] < target[i] and (i == 0 or counts[i] < counts[i - 1]):
                counts[i] += 1
                letters.append(i + 1)
                yield from rec()
                letters.pop()
                counts[i] -= 1

    yield from rec()


def partitions(n: int, max_parts: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse lexicographic order."""

    def rec(remaining: int, bound: int, acc: list[int]) -> Iterator[Partition]:
        if remaining == 0:
            yield Partition(acc)
            return
        if max_parts is not None and len(acc) >= max_parts:
            return
        for p in range(min(remaining, bound), 0, -1):
            acc.append(p)
            yield from rec(remaining - p, p, acc)
            acc.pop()

    yield from rec(n, n if max_part is None else max_part, [])


def yamanouchi_words(n: int, k: int) -> Iterator[YamanouchiWord]:
    """All ballot words of length ``n`` on ``{1..k}``, lexicographically."""
    counts = [0] * k
    letters: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(letters) == n:
            yield tuple(letters)
            return
        for i in range(k):
            if i == 0 or counts[i] < counts[i - 1]:
                counts[i] += 1
                letters.append(i + 1)
                yield from rec()
                letters.pop()
                counts[i] -= 1

    for letters_ in rec():
        w = YamanouchiWord.__new__(YamanouchiWord)
        object.__setattr__(w, "letters", letters_)
        yield w
