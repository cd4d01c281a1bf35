"""Bijection between Motzkin paths and Yamanouchi words on {1, 2, 3}.

``phi`` repeatedly strips one group of steps from the front of the path and
labels it: a leading level step gets ``1``; otherwise the last up step of the
initial run of ups is labeled ``1`` together with the following step, which
is either a down step (``2``) or a level step (``2``, and then the next down
step gets ``3``). ``phi_inv`` undoes this by marking letters of the word in
rounds.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .errors import ValidationError
from .tableaux import YamanouchiWord

UP, DOWN, LEVEL = "U", "D", "L"
_DELTA = {UP: 1, DOWN: -1, LEVEL: 0}


@dataclass(frozen=True)
class MotzkinPath:
    steps: str

    def __init__(self, steps: str | Iterable[str] = ""):
        steps = "".join(steps).upper()
        height = 0
        for pos, s in enumerate(steps, 1):
            if s not in _DELTA:
                raise ValidationError(f"unknown step {s!r} at position {pos}", pos)
            height += _DELTA[s]
            if height < 0:
                raise ValidationError(f"path goes below the axis at step {pos}", pos)
        if height != 0:
            raise ValidationError(f"path ends at height {height}, not 0", len(steps))
        object.__setattr__(self, "steps", steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return self.steps

    def heights(self) -> list[int]:
        """Heights after each step, starting with the initial height 0."""
        h = [0]
        for s in self.steps:
            h.append(h[-1] + _DELTA[s])
        return h


@dataclass(frozen=True)
class LabelTrace:
    """Labels per step plus the 1-based step indices removed at each pass."""

    labels: tuple[int, ...]
    stages: tuple[frozenset[int], ...]

    @property
    def word(self) -> YamanouchiWord:
        return YamanouchiWord(self.labels)


def _as_path(p: MotzkinPath | str) -> MotzkinPath:
    return p if isinstance(p, MotzkinPath) else MotzkinPath(p)


def _label(steps: str, record: bool) -> tuple[list[int], list[frozenset[int]]]:
    # Surviving positions form a doubly linked list; everything before `scan`
    # in the surviving path is an up step, so the search for the first non-up
    # step resumes there after each removal.
    n = len(steps)
    nxt = list(range(1, n + 1))
    prv = list(range(-1, n - 1))
    head = 0
    labels = [0] * n
    stages: list[frozenset[int]] = []

    def unlink(i: int) -> None:
        nonlocal head
        if prv[i] >= 0:
            nxt[prv[i]] = nxt[i]
        else:
            head = nxt[i]
        if nxt[i] < n:
            prv[nxt[i]] = prv[i]

    scan = 0
    while head < n:
        while scan < n and steps[scan] == UP:
            scan = nxt[scan]
        j = scan
        if j == head:
            # only a level step can lead the surviving path here
            labels[j] = 1
            group = (j,)
            scan = nxt[j]
            unlink(j)
        else:
            u = prv[j]
            labels[u] = 1
            labels[j] = 2
            if steps[j] == DOWN:
                group = (u, j)
            else:
                k = nxt[j]
                while steps[k] != DOWN:
                    k = nxt[k]
                labels[k] = 3
                group = (u, j, k)
                unlink(k)
            scan = nxt[j]
            unlink(u)
            unlink(j)
        if record:
            stages.append(frozenset(i + 1 for i in group))
    return labels, stages


def phi(p: MotzkinPath | str) -> YamanouchiWord:
    p = _as_path(p)
    labels, _ = _label(p.steps, record=False)
    w = YamanouchiWord.__new__(YamanouchiWord)
    object.__setattr__(w, "letters", tuple(labels))
    return w


def label_trace(p: MotzkinPath | str) -> LabelTrace:
    p = _as_path(p)
    labels, stages = _label(p.steps, record=True)
    return LabelTrace(tuple(labels), tuple(stages))


def phi_inv(w: YamanouchiWord | str | Iterable[int]) -> MotzkinPath:
    """Recover the unique Motzkin path whose ``phi`` image is ``w``.

    Each round works on the still-unassigned letters. Without any 3, the
    first 2 and the letter before it become a peak ``UD``. With 3s, every 3
    (right to left) claims the nearest free 2 on its left; then, for each 3
    in order, the free 2s left of its claimed 2 are matched with the nearest
    free 1 on their left as ``U..D``, and the nearest free 1 left of the
    claimed 2 completes the triple ``U, L, D``. Letters left when only 1s
    remain are level steps.
    """
    if isinstance(w, str):
        w = YamanouchiWord.parse(w)
    elif not isinstance(w, YamanouchiWord):
        w = YamanouchiWord(w)
    letters = w.letters
    for pos, c in enumerate(letters, 1):
        if c > 3:
            raise ValidationError(f"letter {c} at position {pos} exceeds 3", pos)

    out = [""] * len(letters)
    remaining = list(range(len(letters)))
    while remaining:
        cur = [letters[i] for i in remaining]
        if 2 not in cur:
            for i in remaining:
                out[i] = LEVEL
            break
        taken: set[int] = set()
        if 3 not in cur:
            b = cur.index(2)
            out[remaining[b - 1]], out[remaining[b]] = UP, DOWN
            taken = {b - 1, b}
        else:
            threes = [t for t, c in enumerate(cur) if c == 3]
            claimed: dict[int, int] = {}
            for c3 in reversed(threes):
                b = _nearest_left(cur, c3, 2, taken)
                claimed[c3] = b
                taken.update((b, c3))
            for c3 in threes:
                b = claimed[c3]
                for e in [t for t in range(b) if cur[t] == 2 and t not in taken]:
                    d = _nearest_left(cur, e, 1, taken)
                    taken.update((d, e))
                    out[remaining[d]], out[remaining[e]] = UP, DOWN
                a = _nearest_left(cur, b, 1, taken)
                taken.add(a)
                out[remaining[a]], out[remaining[b]], out[remaining[c3]] = UP, LEVEL, DOWN
        remaining = [r for t, r in enumerate(remaining) if t not in taken]
    return MotzkinPath("".join(out))


def _nearest_left(cur: list[int], start: int, letter: int, taken: set[int]) -> int:
    for t in range(start - 1, -1, -1):
        if cur[t] == letter and t not in taken:
            return t
    # unreachable for ballot words
    raise ValidationError(f"no free letter {letter} left of position {start + 1}")


def prefix_labels(steps: str) -> tuple[int, ...]:
    """Labels ``phi`` gives to a path prefix, whatever path it is extended to.

    The prefix is closed with down steps; the labels of its own steps do not
    depend on the chosen extension.
    """
    height = 0
    for s in steps:
        height += _DELTA[s]
        if height < 0:
            raise ValidationError("prefix goes below the axis")
    labels, _ = _label(steps + DOWN * height, record=False)
    return tuple(labels[: len(steps)])
