"""Skew-strip and entry-restricted counting formulas as Motzkin combinations.

A tableau of the skew strip ``T_3 / mu`` is completed by a fixed standard
filling of ``mu``; under ``phi`` the completed tableau becomes a Motzkin path
whose first ``|mu|`` steps (the segment ``alpha``) must produce the filling's
word. Grouping the admissible segments by end height ``j`` gives

    count(n) = sum_j  #{alpha ending at height j} * |X(|mu|, j; n)|

and each ``|X|`` is a Motzkin combination. Every formula is checked against
the ballot-word counts before it is returned.
"""

from __future__ import annotations

import random
from collections import defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import MotzkinCombo, eval_combo, x_formula
from .bijection import phi, prefix_labels
from .enumeration import (
    DEFAULT_CAP,
    count_entry_restricted,
    enumerate_paths,
    motzkin,
    random_tail,
    skew_counts,
    tails,
    x_count,
)
from .errors import (
    CalibrationUnstable,
    InconsistentSystem,
    Underdetermined,
    ValidationError,
    VerificationFailed,
)
from .tableaux import Partition, StandardTableau, YamanouchiWord, chi, hook_count, partitions

VERIFY_SPAN = 12
TAIL_BUDGET = 20_000
TAIL_SAMPLES = 200
_CALIBRATION_MARGIN = 6


def _partition(mu: Partition | Sequence[int] | str) -> Partition:
    if isinstance(mu, Partition):
        p = mu
    elif isinstance(mu, str):
        p = Partition.parse(mu)
    else:
        p = Partition(mu)
    if len(p) > 3:
        raise ValidationError(f"partition {p} has more than 3 parts")
    return p


def canonical_filler(mu: Partition | Sequence[int] | str) -> StandardTableau:
    """Column-major standard filling of ``mu``."""
    mu = _partition(mu)
    rows: list[list[int]] = [[] for _ in range(len(mu))]
    v = 0
    conj = mu.conjugate()
    for c in range(1, len(conj) + 1):
        for r in range(1, conj[c] + 1):
            v += 1
            rows[r - 1].append(v)
    return StandardTableau(rows)


def forced_prefix(mu: Partition | Sequence[int] | str, filler: StandardTableau | None = None) -> YamanouchiWord:
    mu = _partition(mu)
    if filler is None:
        filler = canonical_filler(mu)
    elif filler.shape != mu:
        raise ValidationError(f"filler has shape {filler.shape}, expected {mu}")
    return chi(filler)


@dataclass(frozen=True)
class PrefixClassTable:
    mu: Partition
    prefix_word: YamanouchiWord
    classes: dict[int, int]
    calibration_sizes: tuple[int, ...]
    segments: dict[int, tuple[str, ...]] = field(default_factory=dict)
    matching_paths: dict[int, int] = field(default_factory=dict)
    tail_check: str = "exhaustive"

    def predicted(self, n: int) -> int:
        return sum(mult * x_count(self.mu.size, j, n) for j, mult in self.classes.items())


def _candidate_segments(prefix: tuple[int, ...]) -> list[str]:
    """Step segments whose labels match ``prefix``, pruned letter by letter."""
    found: list[str] = []
    stack = [("", 0)]
    while stack:
        seg, h = stack.pop()
        if len(seg) == len(prefix):
            found.append(seg)
            continue
        for s, d in (("D", -1), ("L", 0), ("U", 1)):
            if h + d < 0:
                continue
            nxt = seg + s
            if prefix_labels(nxt)[-1] == prefix[len(seg)]:
                stack.append((nxt, h + d))
    return sorted(found)


def _height(seg: str) -> int:
    return seg.count("U") - seg.count("D")


def calibrate_prefix_classes(
    mu: Partition | Sequence[int] | str,
    filler: StandardTableau | None = None,
    exhaustive: bool = False,
    cap: int | None = None,
    tail_budget: int = TAIL_BUDGET,
    seed: int = 0,
) -> PrefixClassTable:
    """Group the admissible first-``|mu|``-step segments by end height.

    Two calibration lengths ``|mu| + c`` and ``|mu| + c + 1`` are used, with
    ``c = 6`` unless some segment ends higher than that. By default candidate
    segments come from a search pruned on the labels of each prefix, and every
    tail of every candidate is pushed through ``phi`` to confirm the word
    prefix; past ``tail_budget`` tails per length, a seeded uniform sample of
    tails per segment is checked instead. ``exhaustive=True`` runs ``phi`` on
    every Motzkin path of each calibration length, subject to ``cap``.
    """
    mu = _partition(mu)
    prefix = forced_prefix(mu, filler).letters
    size = mu.size
    candidates = _candidate_segments(prefix)
    margin = max([_CALIBRATION_MARGIN] + [_height(seg) for seg in candidates])
    sizes = (size + margin, size + margin + 1)
    rng = random.Random(seed)
    mode = "exhaustive"

    per_size: list[dict[int, set[str]]] = []
    matching: dict[int, int] = {}
    for n0 in sizes:
        groups: dict[int, set[str]] = defaultdict(set)
        hits = 0
        if exhaustive:
            for p in enumerate_paths(n0, cap=DEFAULT_CAP if cap is None else cap):
                if phi(p).letters[:size] == prefix:
                    seg = p.steps[:size]
                    groups[_height(seg)].add(seg)
                    hits += 1
        else:
            length = n0 - size
            total = sum(x_count(0, _height(seg), length) for seg in candidates)
            sampled = total > tail_budget
            if sampled:
                mode = "sampled"
            for seg in candidates:
                h = _height(seg)
                if sampled:
                    tail_iter = (random_tail(length, h, rng) for _ in range(TAIL_SAMPLES))
                else:
                    tail_iter = tails(length, h)
                for tail in tail_iter:
                    if phi(seg + tail).letters[:size] != prefix:
                        raise CalibrationUnstable(
                            f"segment {seg} for mu={mu} has a tail {tail} breaking the prefix"
                        )
                    groups[h].add(seg)
                    hits += 1
            if sampled:
                # every candidate passed, so each class extends by all its tails
                hits = total
        per_size.append(groups)
        matching[n0] = hits

    shapes = [{h: len(v) for h, v in g.items()} for g in per_size]
    if shapes[0] != shapes[1] or per_size[0] != per_size[1]:
        raise CalibrationUnstable(f"prefix classes for mu={mu} differ between sizes {sizes}: {shapes}")
    table = PrefixClassTable(
        mu=mu,
        prefix_word=YamanouchiWord(prefix),
        classes=dict(sorted(shapes[0].items())),
        calibration_sizes=sizes,
        segments={h: tuple(sorted(v)) for h, v in sorted(per_size[0].items())},
        matching_paths=matching,
        tail_check=mode,
    )
    for n0 in sizes:
        if table.predicted(n0) != matching[n0]:
            raise CalibrationUnstable(
                f"class counts predict {table.predicted(n0)} paths at n={n0}, found {matching[n0]}"
            )
    return table


def verify_skew_combo(mu: Partition, combo: MotzkinCombo, span: int = VERIFY_SPAN) -> None:
    expected = skew_counts(mu, span)
    for extra, want in enumerate(expected):
        n = mu.size + extra
        got = eval_combo(combo, n)
        if got != want:
            raise VerificationFailed(
                f"formula {combo.render()} for mu={mu} gives {got} at n={n}, brute force {want}",
                n=n,
                expected=want,
                got=got,
            )


@lru_cache(maxsize=None)
def _derive_skew(mu: Partition, filler: StandardTableau | None) -> MotzkinCombo:
    table = calibrate_prefix_classes(mu, filler)
    combo = MotzkinCombo()
    for j, mult in table.classes.items():
        combo = combo + mult * x_formula(mu.size, j)
    verify_skew_combo(mu, combo)
    return combo


def derive_skew_combo(
    mu: Partition | Sequence[int] | str, filler: StandardTableau | None = None
) -> MotzkinCombo:
    """Verified Motzkin combination for ``|T_3(mu; n - |mu|)|``."""
    return _derive_skew(_partition(mu), filler)


def fit_combo(values: Iterable[tuple[int, int]], shifts: Iterable[int]) -> MotzkinCombo:
    """Exact solve for ``count(n) = sum_s a_s m(n+s)`` from sample values.

    Needs at least two more samples than unknowns; the surplus equations
    serve as a consistency check.
    """
    import sympy

    values = list(values)
    shifts = sorted(set(shifts), reverse=True)
    if len(values) < len(shifts) + 2:
        raise ValidationError(f"need at least {len(shifts) + 2} samples, got {len(values)}")
    A = sympy.Matrix([[motzkin(n + s) for s in shifts] for n, _ in values])
    b = sympy.Matrix([v for _, v in values])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError as exc:
        raise InconsistentSystem(f"no exact combination over shifts {shifts}") from exc
    if params.shape[0]:
        raise Underdetermined(f"{params.shape[0]} free parameter(s) over shifts {shifts}")
    return MotzkinCombo({s: Fraction(int(c.p), int(c.q)) for s, c in zip(shifts, sol)})


def entry_shapes(i: int, j: int, m: int) -> list[Partition]:
    """Shapes of ``m`` cells, at most 3 rows, with ``(i, j)`` as a removable corner."""
    if not (1 <= i <= 3) or j < 1 or m < 1:
        return []
    return [mu for mu in partitions(m, max_parts=3) if mu.is_corner(i, j)]


def verify_entry_combo(i: int, j: int, m: int, combo: MotzkinCombo, span: int = VERIFY_SPAN) -> None:
    for n in range(max(m, 1), m + span + 1):
        want = count_entry_restricted(i, j, m, n)
        got = eval_combo(combo, n)
        if got != want:
            raise VerificationFailed(
                f"entry formula for cell ({i},{j}) = {m} gives {got} at n={n}, brute force {want}",
                n=n,
                expected=want,
                got=got,
            )


def derive_entry_combo(i: int, j: int, m: int) -> MotzkinCombo:
    """Verified combination counting tableaux in ``T_3(n)`` with ``m`` in cell ``(i, j)``.

    The entries ``1..m`` fill a shape ``mu`` with ``m`` in the corner
    ``(i, j)``; the smaller entries fill ``mu`` minus that corner freely.
    """
    combo = MotzkinCombo()
    for mu in entry_shapes(i, j, m):
        combo = combo + hook_count(mu.remove_cell(i)) * derive_skew_combo(mu)
    if 1 <= i <= 3 and j >= 1 and m >= 1:
        verify_entry_combo(i, j, m, combo)
    return combo


def catalog_shapes(mu_max: int) -> list[Partition]:
    out = [Partition((a, b, c)) for a in range(mu_max + 1) for b in range(a + 1) for c in range(b + 1)]
    return sorted(out, key=lambda p: p.padded(3))


def _catalog_entry(mu: Partition) -> dict:
    entry: dict = {"mu": str(mu), "size": mu.size}
    try:
        combo = derive_skew_combo(mu)
    except (VerificationFailed, CalibrationUnstable) as exc:
        entry.update(status="failed", error=f"{type(exc).__name__}: {exc}")
        return entry
    entry.update(
        status="ok",
        combo=combo.to_dict(),
        formula=combo.render(),
        verified_n=[mu.size, mu.size + VERIFY_SPAN],
    )
    return entry


def catalog(mu_max: int, parallel: int | None = None) -> dict:
    """Derive and verify the formula for every ``mu`` with ``mu_1 <= mu_max``."""
    shapes = catalog_shapes(mu_max)
    if parallel and parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            entries = list(pool.map(_catalog_entry, shapes))
    else:
        entries = [_catalog_entry(mu) for mu in shapes]
    failed = [e["mu"] for e in entries if e["status"] != "ok"]
    return {
        "mu_max": mu_max,
        "entries": entries,
        "summary": {"total": len(entries), "verified": len(entries) - len(failed), "failed": failed},
    }


def catalog_markdown(report: dict) -> str:
    lines = [
        f"| mu | formula | n_min | status |",
        "|---|---|---|---|",
    ]
    for e in report["entries"]:
        if e["status"] == "ok":
            lines.append(f"| ({e['mu']}) | {e['formula']} | {e['combo']['n_min']} | ok |")
        else:
            lines.append(f"| ({e['mu']}) | | | {e['error']} |")
    s = report["summary"]
    lines.append("")
    lines.append(f"{s['verified']}/{s['total']} formulas verified.")
    return "\n".join(lines)
