import io

import pytest
from hypothesis import given, strategies as st

from carspeak.corpus import Corpus, ReviewDoc
from carspeak.textproc import (
    ADJ,
    NOUN,
    OTHER,
    LexiconError,
    PosLexicon,
    Token,
    content_words,
    filter_content_words,
    load_lexicon,
    parse_lexicon,
    pos_tag,
    tokenize,
    top_k_frequencies,
)


class TestTokenize:
    def test_punctuation_stripped(self):
        assert tokenize("Fast, reliable car!") == ["fast", "reliable", "car"]

    def test_empty(self):
        assert tokenize("") == []

    def test_digits_split_runs(self):
        # "a" is too short; "v8" splits at the digit leaving a 1-char run
        assert tokenize("A V8 engine") == ["engine"]

    # ASCII only: one-to-many Unicode case mappings ("ß".upper() == "SS")
    # change which alphabetic runs exist at all.
    @given(st.text(alphabet=st.characters(max_codepoint=127)))
    def test_case_invariant(self, text):
        assert tokenize(text) == tokenize(text.upper())
        assert tokenize(text) == tokenize(text.swapcase())

    @given(st.text())
    def test_output_shape(self, text):
        for token in tokenize(text):
            assert token.isalpha() and token == token.lower() and len(token) >= 2


class TestPosTag:
    def test_lexicon_entry(self):
        lex = PosLexicon(entries={"fast": ADJ})
        assert pos_tag(["fast"], lex) == [Token("fast", ADJ)]

    def test_suffix_rule(self):
        lex = PosLexicon(suffix_rules=(("ous", ADJ),))
        assert pos_tag(["luxurious"], lex)[0].tag == ADJ

    def test_unknown_defaults_to_noun(self):
        assert pos_tag(["flibbertigibbet"], PosLexicon())[0].tag == NOUN

    def test_entry_beats_suffix(self):
        lex = PosLexicon(entries={"famous": NOUN}, suffix_rules=(("ous", ADJ),))
        assert pos_tag(["famous"], lex)[0].tag == NOUN

    def test_first_suffix_rule_wins(self):
        lex = PosLexicon(suffix_rules=(("ness", NOUN), ("ess", ADJ)))
        assert pos_tag(["brightness"], lex)[0].tag == NOUN


class TestFilterContentWords:
    def test_review_excerpt_fully_kept(self, lex):
        words = content_words("luxurious cabin comfortable seats", lex)
        assert words == ["luxurious", "cabin", "comfortable", "seats"]

    def test_all_other_gives_empty(self):
        lex = PosLexicon(entries={"the": OTHER, "of": OTHER})
        assert filter_content_words(pos_tag(["the", "of"], lex)) == []

    def test_shipped_lexicon_drops_function_words(self, lex):
        assert content_words("the car is very fast", lex) == ["car", "fast"]

    def test_duplicates_and_order_preserved(self, lex):
        assert content_words("fast car fast car", lex) == ["fast", "car", "fast", "car"]

    def test_deterministic(self, lex):
        text = "making it one of the most efficient cars"
        assert content_words(text, lex) == content_words(text, lex)


def corpus_of(*texts: str) -> Corpus:
    return Corpus(
        tuple(
            ReviewDoc(id=f"d{i}", make="m", model="x", text=t)
            for i, t in enumerate(texts)
        )
    )


class TestTopKFrequencies:
    def test_hand_count(self, lex):
        c = corpus_of("car car car fast", "car car fast fast")
        top = top_k_frequencies(c, lex, 2)
        assert [(t.word, t.count) for t in top] == [("car", 5), ("fast", 3)]

    def test_k_larger_than_vocabulary(self, lex):
        c = corpus_of("car fast")
        top = top_k_frequencies(c, lex, 10)
        assert [(t.word, t.count) for t in top] == [("car", 1), ("fast", 1)]

    def test_tie_breaks_lexicographic(self, lex):
        c = corpus_of("seats cabin")
        top = top_k_frequencies(c, lex, 2)
        assert [t.word for t in top] == ["cabin", "seats"]

    def test_k_must_be_positive(self, lex):
        with pytest.raises(ValueError):
            top_k_frequencies(corpus_of("car"), lex, 0)

    def test_no_other_tagged_word_reported(self, lex):
        c = corpus_of("the the the the car is very fast", "the of and or car")
        words = {t.word for t in top_k_frequencies(c, lex, 50)}
        for reported in words:
            assert lex.tag_word(reported) in (NOUN, ADJ)

    @given(
        st.lists(
            st.lists(st.sampled_from(["car", "fast", "seats", "cabin"]), min_size=1),
            min_size=1,
            max_size=5,
        )
    )
    def test_counts_sum_over_documents(self, lex, docs):
        split = corpus_of(*[" ".join(words) for words in docs])
        joined = corpus_of(" ".join(w for words in docs for w in words))
        assert top_k_frequencies(split, lex, 10) == top_k_frequencies(joined, lex, 10)


class TestLexiconFormat:
    def test_parse_entries_and_suffixes(self):
        lex = parse_lexicon(
            [
                "# comment",
                "fast\tADJ",
                "the\tOTHER",
                "#SUFFIX",
                "-ous\tADJ",
                "-ness\tNOUN",
            ]
        )
        assert lex.entries == {"fast": ADJ, "the": OTHER}
        assert lex.suffix_rules == (("ous", ADJ), ("ness", NOUN))

    def test_bad_tag(self):
        with pytest.raises(LexiconError, match="line 1"):
            parse_lexicon(["fast\tVERB"])

    def test_suffix_requires_dash(self):
        with pytest.raises(LexiconError):
            parse_lexicon(["#SUFFIX", "ous\tADJ"])

    def test_load_from_bytes(self):
        lex = load_lexicon(io.BytesIO(b"fast\tADJ\n"))
        assert lex.entries == {"fast": ADJ}

    def test_shipped_lexicon_suffixes(self, lex):
        assert lex.tag_word("powerful") == ADJ
        assert lex.tag_word("transmission") == NOUN
        assert lex.tag_word("acceleration") == NOUN
