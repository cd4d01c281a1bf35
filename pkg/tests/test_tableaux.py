import pytest
from hypothesis import given, strategies as st

from oracles import brute_partitions, brute_syt, brute_words
from skewstrip.enumeration import motzkin
from skewstrip.errors import ValidationError
from skewstrip.tableaux import (
    Partition,
    StandardTableau,
    YamanouchiWord,
    chi,
    chi_inv,
    hook_count,
    is_yamanouchi,
    partitions,
    standard_tableaux,
)


@pytest.mark.parametrize(
    "rows, word",
    [
        ([[1, 3, 6], [2, 5, 7], [4, 8]], "12132123"),
        ([[1]], "1"),
        ([[1, 2, 5, 6, 7], [3, 4, 9, 10], [8, 11]], "11221113223"),
        ([], ""),
    ],
)
def test_chi_examples(rows, word):
    t = StandardTableau(rows)
    assert str(chi(t)) == word
    assert chi_inv(word) == t


@pytest.mark.parametrize(
    "word, rows",
    [("111", ((1, 2, 3),)), ("123", ((1,), (2,), (3,)))],
)
def test_chi_inv_trivial(word, rows):
    assert chi_inv(word).rows == rows


@pytest.mark.parametrize(
    "rows, fragment",
    [
        ([[1, 3], [2, 2]], "entries"),
        ([[2, 1]], "row 1"),
        ([[1, 2], [3, 4], [5, 6, 7]], "partition"),
        ([[1, 2], [4, 3]], "row 2"),
        ([[1, 3], [2]], None),
        ([[2, 3], [1]], "column 1"),
    ],
)
def test_tableau_validation(rows, fragment):
    if fragment is None:
        StandardTableau(rows)
        return
    with pytest.raises(ValidationError, match=fragment):
        StandardTableau(rows)


def test_chi_inv_reports_first_bad_prefix():
    with pytest.raises(ValidationError) as info:
        chi_inv("112221")
    assert info.value.position == 5


@pytest.mark.parametrize(
    "letters, k, expected",
    [("112", 3, True), ("122", 3, False), ("11221113223", 3, True), ("1234", 3, False), ("", 3, True)],
)
def test_is_yamanouchi(letters, k, expected):
    assert is_yamanouchi(letters, k) is expected


@pytest.mark.parametrize("mu, count", [((1,), 1), ((2, 1), 2), ((3, 2), 5)])
def test_hook_count_examples(mu, count):
    assert hook_count(mu) == count == len(brute_syt(mu))


@pytest.mark.parametrize("n", range(0, 8))
def test_hook_count_matches_permutation_oracle(n):
    for mu in brute_partitions(n):
        assert hook_count(mu) == len(brute_syt(mu)), mu


@pytest.mark.parametrize("n", range(0, 9))
def test_hook_count_matches_tableau_generator(n):
    for mu in partitions(n):
        tabs = list(standard_tableaux(mu))
        assert len(set(tabs)) == len(tabs) == hook_count(mu)


@pytest.mark.parametrize("n", range(0, 13))
def test_hook_sum_over_three_row_shapes_is_motzkin(n):
    assert sum(hook_count(mu) for mu in partitions(n, max_parts=3)) == motzkin(n)


def test_partitions_match_oracle():
    for n in range(10):
        assert [p.parts for p in partitions(n)] == brute_partitions(n)


@pytest.mark.parametrize("n", range(0, 10))
def test_chi_roundtrip_all_three_row_tableaux(n):
    seen = 0
    for mu in partitions(n, max_parts=3):
        for t in standard_tableaux(mu):
            w = chi(t)
            assert is_yamanouchi(w.letters, 3)
            assert chi_inv(w) == t
            seen += 1
    assert seen == motzkin(n)


@pytest.mark.parametrize("n", range(0, 10))
def test_every_ballot_word_gives_tableau(n):
    for w in brute_words(n):
        t = chi_inv(w)
        assert len(t.rows) <= 3
        assert chi(t).letters == w


def test_partition_normalization_and_parse():
    assert Partition((2, 1, 0)) == Partition((2, 1)) == Partition.parse("2,1,0")
    assert hash(Partition((2, 1, 0))) == hash(Partition((2, 1)))
    assert Partition.parse("0").parts == ()
    assert str(Partition(())) == "0"
    with pytest.raises(ValidationError):
        Partition((1, 2))
    with pytest.raises(ValidationError):
        Partition.parse("a,b")


def test_partition_corners():
    mu = Partition((3, 1))
    assert mu.is_corner(1, 3) and mu.is_corner(2, 1)
    assert not mu.is_corner(1, 2) and not mu.is_corner(1, 1)
    assert mu.remove_cell(1) == Partition((2, 1))
    assert mu.conjugate() == Partition((2, 1, 1))


def test_tableau_json_roundtrip():
    t = StandardTableau([[1, 3, 6], [2, 5, 7], [4, 8]])
    assert StandardTableau.from_json(t.to_json()) == t
    assert t.shape == Partition((3, 3, 2))


@st.composite
def ballot_words(draw, max_len=40):
    k = draw(st.integers(1, 5))
    counts = [0] * k
    letters = []
    for _ in range(draw(st.integers(0, max_len))):
        allowed = [i for i in range(k) if i == 0 or counts[i] < counts[i - 1]]
        i = draw(st.sampled_from(allowed))
        counts[i] += 1
        letters.append(i + 1)
    return letters


@given(ballot_words())
def test_chi_roundtrip_random_words(letters):
    w = YamanouchiWord(letters)
    t = chi_inv(w)
    assert chi(t) == w
    assert t.shape == w.shape()
