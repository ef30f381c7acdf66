import pytest
from hypothesis import given, strategies as st

from knotsurgery import (
    SubstitutionCycleError,
    Word,
    apply_mapping,
    commutator,
    cyclic_reduce,
    parse_word,
    substitute,
    word_inverse,
    word_multiply,
    word_power,
)

a = Word.generator(0)
b = Word.generator(1)
c = Word.generator(2)


letters = st.lists(
    st.tuples(st.integers(min_value=0, max_value=3), st.sampled_from((1, -1))),
    max_size=24,
)
words = letters.map(lambda ls: Word(tuple(ls)))


def test_multiply_inverse_cancellation():
    assert word_multiply(a, a.inverse()).is_identity


def test_multiply_single_cascade():
    assert word_multiply(a * b, b.inverse() * c) == a * c


def test_multiply_two_step_cascade():
    w1 = a * b * a * b.inverse()
    w2 = b * a.inverse()
    assert word_multiply(w1, w2) == a * b


def test_inverse_examples():
    assert word_inverse(Word()).is_identity
    assert word_inverse(a * b.inverse()) == b * a.inverse()
    assert word_inverse(word_power(a, 3)) == word_power(a, -3)


def test_cyclic_reduce_examples():
    assert cyclic_reduce(a * b * a.inverse()) == b
    abab = a * b * a * b
    assert cyclic_reduce(abab) == abab
    assert cyclic_reduce(a.inverse() * b * c * b.inverse() * a) == c


def test_substitute_examples():
    assert substitute(a * b, 1, a.inverse()).is_identity
    assert substitute(word_power(b, 2), 1, c * a) == c * a * c * a
    assert substitute(a, 1, c) == a


def test_substitute_cycle_guard():
    with pytest.raises(SubstitutionCycleError):
        substitute(a * b, 1, b * c)
    # the same substitution is fine when not eliminating
    assert substitute(a * b, 1, b * c, eliminating=False) == a * b * c


def test_apply_mapping_is_simultaneous():
    # a -> b, b -> a must swap, not chain
    swapped = apply_mapping(a * b, {0: b, 1: a})
    assert swapped == b * a


def test_commutator():
    assert commutator(a, b) == a * b * a.inverse() * b.inverse()
    assert commutator(a, a).is_identity


def test_parse_word():
    names = ("a", "b")
    assert parse_word("a b^-1", names) == a * b.inverse()
    assert parse_word("a^3", names) == word_power(a, 3)
    assert parse_word("a*b*a^-1", names) == a * b * a.inverse()
    assert parse_word("", names).is_identity


def test_word_rejects_bad_letters():
    with pytest.raises(ValueError):
        Word(((0, 2),))
    with pytest.raises(ValueError):
        Word(((-1, 1),))


@given(letters)
def test_reduction_idempotent(ls):
    w = Word(tuple(ls))
    assert Word(w.letters) == w


@given(words, words, words)
def test_multiplication_associative(w1, w2, w3):
    assert (w1 * w2) * w3 == w1 * (w2 * w3)


@given(words)
def test_inverse_law(w):
    assert (w * w.inverse()).is_identity
    assert (w.inverse() * w).is_identity


@given(words)
def test_cyclic_reduce_conjugation_invariant(w):
    conjugated = a * w * a.inverse()
    reduced = cyclic_reduce(conjugated).letters
    base = cyclic_reduce(w).letters
    rotations = {base[i:] + base[:i] for i in range(max(1, len(base)))}
    assert reduced in rotations


@given(words, st.integers(min_value=-4, max_value=4))
def test_power_matches_repeated_multiplication(w, n):
    expected = Word()
    step = w if n >= 0 else w.inverse()
    for _ in range(abs(n)):
        expected = expected * step
    assert word_power(w, n) == expected
