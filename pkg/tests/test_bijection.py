import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_paths, brute_words
from skewstrip.bijection import MotzkinPath, label_trace, phi, phi_inv, prefix_labels
from skewstrip.enumeration import enumerate_paths, enumerate_words3, motzkin, random_path, tails
from skewstrip.errors import ValidationError
from skewstrip.tableaux import chi_inv, is_yamanouchi

WORKED_PATH = "UUDLLUUDDLD"
WORKED_WORD = "11221113223"


@pytest.mark.parametrize(
    "path, word",
    [("L", "1"), ("UD", "12"), ("ULD", "123"), ("UUDD", "1122"), ("", ""), (WORKED_PATH, WORKED_WORD)],
)
def test_phi_examples(path, word):
    assert str(phi(path)) == word
    assert str(phi_inv(word)) == path


def test_worked_tableau():
    t = chi_inv(phi(WORKED_PATH))
    assert [list(r) for r in t.rows] == [[1, 2, 5, 6, 7], [3, 4, 9, 10], [8, 11]]


@pytest.mark.parametrize(
    "path, labels, stages",
    [
        ("UUDD", (1, 1, 2, 2), ({2, 3}, {1, 4})),
        ("L", (1,), ({1},)),
        ("LL", (1, 1), ({1}, {2})),
        ("ULUDD", (1, 2, 1, 3, 2), ({1, 2, 4}, {3, 5})),
    ],
)
def test_label_trace(path, labels, stages):
    trace = label_trace(path)
    assert trace.labels == labels
    assert tuple(set(s) for s in trace.stages) == stages
    assert trace.word == phi(path)


@pytest.mark.parametrize("n", range(0, 12))
def test_label_trace_stages_partition_steps(n):
    for p in enumerate_paths(n):
        trace = label_trace(p)
        covered = sorted(i for s in trace.stages for i in s)
        assert covered == list(range(1, n + 1))
        for stage in trace.stages:
            # each pass removes a single L, a U/D pair or a U/L/D triple
            kinds = "".join(p.steps[i - 1] for i in sorted(stage))
            assert kinds in ("L", "UD", "ULD")


@pytest.mark.parametrize("n", range(0, 15))
def test_roundtrip_paths_exhaustive(n):
    images = set()
    count = 0
    for p in enumerate_paths(n):
        w = phi(p)
        assert is_yamanouchi(w.letters, 3)
        assert phi_inv(w) == p
        images.add(w.letters)
        count += 1
    assert count == len(images) == motzkin(n)


@pytest.mark.parametrize("n", range(0, 15))
def test_roundtrip_words_exhaustive(n):
    count = 0
    for w in enumerate_words3(n):
        p = phi_inv(w)
        assert len(p) == n
        assert phi(p) == w
        count += 1
    assert count == motzkin(n)


@pytest.mark.parametrize("n", range(0, 9))
def test_enumerators_match_brute_force(n):
    assert sorted(p.steps for p in enumerate_paths(n)) == sorted(brute_paths(n))
    assert sorted(w.letters for w in enumerate_words3(n)) == sorted(brute_words(n))


@pytest.mark.parametrize("n", range(3, 13))
def test_prefix_121_forces_four_openings(n):
    openings = set()
    for p in enumerate_paths(n):
        if phi(p).letters[:3] == (1, 2, 1):
            openings.add(p.steps[:3])
    assert openings <= {"UDL", "UDU", "ULL", "ULU"}
    if n >= 5:
        assert openings == {"UDL", "UDU", "ULL", "ULU"}
    # and conversely every such opening yields a word starting 121
    for head in ("UDL", "UDU", "ULL", "ULU"):
        h = head.count("U") - head.count("D")
        for tail in tails(n - 3, h):
            assert phi(head + tail).letters[:3] == (1, 2, 1)


def test_prefix_labels_independent_of_extension():
    for n in range(1, 11):
        for p in enumerate_paths(n):
            labels = phi(p).letters
            for t in range(n + 1):
                assert prefix_labels(p.steps[:t]) == labels[:t]


@pytest.mark.parametrize(
    "path, position",
    [("D", 1), ("UDD", 3), ("UU", 2), ("UXD", 2)],
)
def test_invalid_paths(path, position):
    with pytest.raises(ValidationError) as info:
        phi(path)
    assert info.value.position == position


@pytest.mark.parametrize("word", ["1234", "21", "1132"])
def test_phi_inv_rejects(word):
    with pytest.raises(ValidationError):
        phi_inv(word)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 120), st.integers(0, 2**32 - 1))
def test_roundtrip_random_long_paths(n, seed):
    p = random_path(n, random.Random(seed))
    w = phi(p)
    assert is_yamanouchi(w.letters, 3)
    assert phi_inv(w) == p


def test_path_heights():
    assert MotzkinPath("ULD").heights() == [0, 1, 1, 0]
