from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ratbase import NotCoprime, OrderViolation, evaluate, new_base, represent, tau
from ratbase.errors import WordSyntaxError
from ratbase.numeration import format_word, parse_rational, parse_word

from conftest import TEST_BASES


def direct_sum(p, q, word):
    # sum a_i / q * (p/q)^i with a_0 the last letter
    return sum(Fraction(a, q) * Fraction(p, q) ** i for i, a in enumerate(reversed(word)))


bases = st.sampled_from(TEST_BASES).map(lambda pq: new_base(*pq))


def test_alphabets_3_2():
    b = new_base(3, 2)
    assert list(b.canonical_alphabet) == [0, 1, 2]
    assert list(b.minimal_alphabet) == [0, 1]
    assert list(b.maximal_alphabet) == [1, 2]
    assert list(b.balanced_alphabet) == [0, 1, 2]


def test_alphabets_4_3_negative_digit():
    assert list(new_base(4, 3).balanced_alphabet) == [-1, 0, 1, 2, 3]


def test_balanced_alphabet_shape(base):
    B = base.balanced_alphabet
    assert len(B) == 2 * base.q - 1
    assert B.stop - 1 == base.p - 1
    assert (B.start + B.stop - 1) // 2 == base.center == base.p - base.q


@pytest.mark.parametrize("p,q,err", [(6, 4, NotCoprime), (2, 3, OrderViolation),
                                     (3, 3, OrderViolation), (5, 1, OrderViolation)])
def test_invalid_bases(p, q, err):
    with pytest.raises(err):
        new_base(p, q)


def test_evaluate_examples():
    b = new_base(3, 2)
    assert evaluate(b, []) == 0
    assert evaluate(b, [2, 1]) == 2
    assert evaluate(b, [1, 0]) == Fraction(3, 4) == direct_sum(3, 2, [1, 0])
    assert evaluate(new_base(4, 3), [-1]) == Fraction(-1, 3)


def test_represent_examples():
    b = new_base(3, 2)
    assert represent(b, 0) == []
    assert represent(b, 2) == [2, 1]
    assert represent(b, 4) == [2, 1, 2]
    assert direct_sum(3, 2, [2, 1, 2]) == 4
    assert represent(new_base(7, 3), 1) == [3]
    assert direct_sum(7, 3, [3]) == 1


def test_represent_negative():
    with pytest.raises(ValueError):
        represent(new_base(3, 2), -1)


def test_tau_examples():
    b = new_base(3, 2)
    assert tau(b, 0, 0) == 0
    assert tau(b, 1, 1) == 2
    assert tau(b, 0, 1) is None
    assert tau(new_base(4, 3), 1, -1) == 1


@given(bases, st.lists(st.integers(-20, 20), max_size=12))
def test_evaluate_matches_direct_sum(b, word):
    assert evaluate(b, word) == direct_sum(b.p, b.q, word)


@given(bases, st.lists(st.integers(-20, 20), max_size=12), st.integers(-20, 20))
def test_evaluate_linearity(b, word, a):
    assert evaluate(b, word + [a]) == evaluate(b, word) * b.ratio + Fraction(a, b.q)


@given(bases, st.integers(0, 10 ** 6))
def test_roundtrip_and_digits(b, n):
    word = represent(b, n)
    assert evaluate(b, word) == n
    assert all(0 <= a < b.p for a in word)
    if n:
        assert word[0] != 0


@given(bases, st.integers(1, 10 ** 6))
def test_prefix_closure(b, n):
    # dropping the last digit gives the representation of (q*n) div p
    assert represent(b, n)[:-1] == represent(b, b.q * n // b.p)


@given(bases, st.integers(0, 10 ** 4), st.integers(-10, 20))
def test_tau_consistency(b, n, a):
    m = tau(b, n, a)
    value = evaluate(b, represent(b, n) + [a])
    if m is None:
        assert value.denominator != 1 or value < 0
    else:
        assert value == m


def test_word_formats():
    b = new_base(3, 2)
    assert format_word([]) == "ε"
    assert format_word([2, 1, 2]) == "2,1,2"
    for text in ("", "eps", "ε", "  "):
        assert parse_word(text) == []
    assert parse_word("2,1,2") == [2, 1, 2]
    assert parse_word("-1,0,3") == [-1, 0, 3]
    assert parse_word("212", b) == [2, 1, 2]
    assert parse_word("212") == [212]
    assert parse_word("12", new_base(13, 2)) == [12]
    assert parse_word("-1", b) == [-1]
    with pytest.raises(WordSyntaxError):
        parse_word("2,x")
    with pytest.raises(WordSyntaxError):
        parse_word("2;1")


@given(st.lists(st.integers(-(10 ** 6), 10 ** 6), max_size=10))
def test_word_text_roundtrip(word):
    assert parse_word(format_word(word)) == word


@given(st.fractions())
def test_rational_text_roundtrip(x):
    assert parse_rational(str(x)) == x
