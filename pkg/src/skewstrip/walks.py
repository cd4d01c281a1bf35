"""Lattice walks in the nonnegative orthant with ``2*ell + 1`` step kinds.

Only the coordinates ``(y_2, ..., y_{ell+1})`` are tracked: every step moves
one unit along ``e_1``, so ``e_1`` itself is the zero delta. The odd family
counts walks from the origin back to the ``e_1`` axis; the even family
additionally allows the pure ``e_1`` step only where ``y_{ell+1} = 0``.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .enumeration import strip_counts
from .errors import ResourceLimitError, ValidationError

log = logging.getLogger(__name__)

# rough footprint of one dict entry holding a small int tuple and a big int
BYTES_PER_STATE = 200


@dataclass(frozen=True)
class StepSet:
    ell: int
    deltas: tuple[tuple[int, ...], ...]
    e1_index: int = 0

    @classmethod
    def build(cls, ell: int) -> StepSet:
        if ell < 1:
            raise ValidationError(f"ell must be positive, got {ell}")
        zero = (0,) * ell
        deltas = [zero]
        for sign in (1, -1):
            v = [0] * ell
            v[0] = sign
            deltas.append(tuple(v))
        for k in range(ell - 1):
            for sign in (1, -1):
                v = [0] * ell
                v[k] = sign
                v[k + 1] = -sign
                deltas.append(tuple(v))
        return cls(ell, tuple(deltas), 0)


def steps_to_origin(y: tuple[int, ...]) -> int:
    """Fewest steps needed to bring state ``y`` back to all zeros.

    With ``x_k = y_k + ... + y_{ell+1}`` each step changes one ``x_k`` by one,
    so the distance is ``sum_k x_k``; draining ``x`` from the last coordinate
    first stays in the orthant.
    """
    total = acc = 0
    for c in reversed(y):
        acc += c
        total += acc
    return total


def walk_counts(ell: int, n_max: int, even: bool = False, max_states: int | None = None) -> list[int]:
    """Walk counts for every length ``0..n_max`` in one sweep.

    States that cannot reach the origin within the ``n_max`` budget are
    dropped; that never affects a count for a shorter length either.
    """
    steps = StepSet.build(ell)
    origin = (0,) * ell
    states: dict[tuple[int, ...], int] = {origin: 1}
    counts = [1]
    for t in range(1, n_max + 1):
        budget = n_max - t
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for y, c in states.items():
            for idx, d in enumerate(steps.deltas):
                if idx == steps.e1_index:
                    if even and y[-1] != 0:
                        continue
                    z = y
                else:
                    z = tuple(a + b for a, b in zip(y, d))
                    if min(z) < 0:
                        continue
                if steps_to_origin(z) <= budget:
                    nxt[z] += c
        states = nxt
        if max_states is not None and len(states) > max_states:
            raise ResourceLimitError(
                f"ell={ell}: {len(states)} live states at step {t} exceed the cap of {max_states}"
            )
        counts.append(states.get(origin, 0))
    return counts


def count_odd_walks(ell: int, n: int, max_states: int | None = None) -> int:
    return walk_counts(ell, n, even=False, max_states=max_states)[n]


def count_even_walks(ell: int, n: int, max_states: int | None = None) -> int:
    return walk_counts(ell, n, even=True, max_states=max_states)[n]


def _check_ell(args: tuple[int, int, int | None]) -> list[dict]:
    ell, n_max, max_states = args
    odd_rhs = strip_counts(2 * ell + 1, n_max)
    even_rhs = strip_counts(2 * ell, n_max)
    cells = []
    try:
        odd = walk_counts(ell, n_max, even=False, max_states=max_states)
        even = walk_counts(ell, n_max, even=True, max_states=max_states)
    except ResourceLimitError as exc:
        log.warning("%s", exc)
        return [
            {"ell": ell, "n": n, "status": "resource-limit", "detail": str(exc)}
            for n in range(n_max + 1)
        ]
    for n in range(n_max + 1):
        if odd[n] != odd_rhs[n]:
            status = "odd-mismatch"
        elif even[n] != even_rhs[n]:
            status = "potential-counterexample"
        else:
            status = "ok"
        cells.append(
            {
                "ell": ell,
                "n": n,
                "odd_lhs": odd[n],
                "odd_rhs": odd_rhs[n],
                "even_lhs": even[n],
                "even_rhs": even_rhs[n],
                "status": status,
            }
        )
    return cells


def check_conjecture(
    ell_max: int,
    n_max: int,
    memory_cap: int | None = None,
    parallel: int | None = None,
) -> dict:
    """Compare walk counts with strip counts for every ``ell <= ell_max``, ``n <= n_max``.

    Odd mismatches contradict a theorem; even mismatches are reported as
    potential counterexamples. ``memory_cap`` is in bytes.
    """
    max_states = None if memory_cap is None else max(1, memory_cap // BYTES_PER_STATE)
    jobs = [(ell, n_max, max_states) for ell in range(1, ell_max + 1)]
    if parallel and parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_check_ell, jobs))
    else:
        results = [_check_ell(job) for job in jobs]
    cells = [cell for chunk in results for cell in chunk]
    by_status: dict[str, int] = defaultdict(int)
    for cell in cells:
        by_status[cell["status"]] += 1
    return {
        "cells": cells,
        "summary": {
            "ell_max": ell_max,
            "n_max": n_max,
            "cells": len(cells),
            "by_status": dict(sorted(by_status.items())),
            "odd_mismatches": [(c["ell"], c["n"]) for c in cells if c["status"] == "odd-mismatch"],
            "even_findings": [
                (c["ell"], c["n"]) for c in cells if c["status"] == "potential-counterexample"
            ],
            "resource_limited": sorted({c["ell"] for c in cells if c["status"] == "resource-limit"}),
        },
    }
