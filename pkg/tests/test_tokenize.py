from __future__ import annotations

import string

from hypothesis import given
from hypothesis import strategies as st

from lexdrift import tokenize
from lexdrift.corpus import raw_tokens


def test_basic_sentence():
    assert tokenize("Meticulously, the RED fox.") == [
        "meticulously", "the", "red", "fox"
    ]


def test_empty():
    assert tokenize("") == []
    assert tokenize("   \t\n") == []
    assert tokenize("123 456 !!!") == []


def test_digits_terminate_tokens():
    assert tokenize("state-of-the-art GPT-4") == ["state-of-the-art", "gpt"]
    assert tokenize("2fast4you") == ["fast", "you"]


def test_internal_punctuation_preserved():
    assert tokenize("it's a state-of-the-art don't-panic design") == [
        "it's", "a", "state-of-the-art", "don't-panic", "design"
    ]


def test_edge_punctuation_stripped():
    assert tokenize("-leading trailing- 'quoted'") == [
        "leading", "trailing", "quoted"
    ]


def test_curly_apostrophe_normalized():
    assert tokenize("it’s") == ["it's"]


def test_unicode_letters():
    assert tokenize("Naïve café EST-CE") == ["naïve", "café", "est-ce"]


def test_casefold_not_just_lower():
    # ß casefolds to ss, which plain lower() would not do
    assert tokenize("STRASSE Straße") == ["strasse", "strasse"]


def test_raw_tokens_keep_case():
    assert raw_tokens("The GPT Model") == ["The", "GPT", "Model"]


_WORDS = st.lists(
    st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=8),
    min_size=0, max_size=20,
)


@given(_WORDS)
def test_idempotent_on_own_output(words):
    text = " ".join(words)
    once = tokenize(text)
    assert tokenize(" ".join(once)) == once


@given(st.text(max_size=200))
def test_never_raises_and_tokens_are_folded(text):
    tokens = tokenize(text)
    for tok in tokens:
        assert tok == tok.casefold()
        assert not any(ch.isdigit() for ch in tok)


@given(_WORDS)
def test_case_invariance(words):
    text = " ".join(words)
    assert tokenize(text.upper()) == tokenize(text)
