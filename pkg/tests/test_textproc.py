import string

from hypothesis import given
from hypothesis import strategies as st

from expertpivot.taxonomy import normalize_label
from expertpivot.textproc import (
    split_sentences,
    strip_boilerplate,
    strip_wikitext,
    to_clean_text,
    tokenize,
)


class TestTokenize:
    def test_supervised_learning(self):
        assert tokenize("Supervised learning") == ["supervised", "learning"]

    def test_gaussian_processes(self):
        assert tokenize("Gaussian processes") == ["gaussian", "processes"]

    def test_hyphen_separates(self):
        assert tokenize("Real-time systems") == ["real", "time", "systems"]

    def test_trailing_punctuation(self):
        assert tokenize("Supervised Learning,") == ["supervised", "learning"]

    def test_empty(self):
        assert tokenize("") == []

    def test_state_of_the_art(self):
        assert tokenize("state-of-the-art") == ["state", "of", "the", "art"]

    def test_underscore_separates(self):
        assert tokenize("a_b") == ["a", "b"]

    def test_accents_survive(self):
        assert tokenize("Méthodes à noyaux") == ["méthodes", "à", "noyaux"]

    @given(st.text(max_size=200))
    def test_matches_label_normalizer(self, text):
        assert tokenize(text) == normalize_label(text)

    @given(st.text(max_size=200))
    def test_tokens_lowercase_nonempty(self, text):
        for token in tokenize(text):
            assert token
            assert token == token.lower()


class TestSplitSentences:
    def test_two_sentences(self):
        assert split_sentences("Machine learning is fun. It works.") == [
            "Machine learning is fun.",
            "It works.",
        ]

    def test_no_terminator(self):
        assert split_sentences("no terminator") == ["no terminator"]

    def test_abbreviation_splits_too(self):
        # Known limitation of the terminator rule, accepted.
        assert split_sentences("Dr. Smith studies AI.") == ["Dr.", "Smith studies AI."]

    def test_blank_line_splits(self):
        assert split_sentences("first block\n\nsecond block") == [
            "first block",
            "second block",
        ]

    def test_single_newline_does_not_split(self):
        assert split_sentences("one\ntwo") == ["one\ntwo"]

    @given(st.text(max_size=300))
    def test_no_empty_sentences(self, text):
        for sentence in split_sentences(text):
            assert sentence.strip()

    @given(st.text(max_size=300))
    def test_preserves_alnum_characters(self, text):
        wanted = [ch for ch in text if ch.isalnum()]
        got = [ch for ch in "".join(split_sentences(text)) if ch.isalnum()]
        assert got == wanted


class TestStripBoilerplate:
    def test_script_dropped(self):
        html = b"<html><script>x=1</script><p>Gaussian processes.</p></html>"
        assert strip_boilerplate(html) == "Gaussian processes."

    def test_plain_text_unchanged(self):
        assert strip_boilerplate(b"no tags here") == "no tags here"

    def test_entities_decoded(self):
        assert strip_boilerplate(b"<p>fish &amp; chips</p>") == "fish & chips"

    def test_report_page_keeps_body_drops_menu(self, expert_root_path):
        html = (expert_root_path / "aspi" / "uid12.html").read_bytes()
        text = strip_boilerplate(html).replace("\n", " ")
        assert "Gaussian processes" in text
        assert "rare event simulation" in text
        for furniture in ("Institute Home", "All Research Teams", "Contact Webmaster",
                          "tracker", ".menu", "Copyright"):
            assert furniture not in text

    def test_blocks_have_boundaries(self):
        html = b"<ul><li>Supervised</li><li>Learning</li></ul>"
        clean = to_clean_text(strip_boilerplate(html))
        assert clean.sentences == (("supervised",), ("learning",))

    @given(st.text(alphabet=string.ascii_letters + " .\n", max_size=300))
    def test_idempotent_on_own_output(self, text):
        html = f"<html><nav>menu</nav><p>{text}</p></html>"
        once = strip_boilerplate(html)
        assert strip_boilerplate(once) == once


class TestStripWikitext:
    def test_link_keeps_display_surface(self):
        assert (
            strip_wikitext("[[Gaussian process|Gaussian processes]] are used")
            == "Gaussian processes are used"
        )

    def test_plain_link_keeps_target(self):
        assert strip_wikitext("[[Kriging]] works") == "Kriging works"

    def test_template_removed(self):
        assert strip_wikitext("{{Infobox software}}Machine learning is") == "Machine learning is"

    def test_nested_template_removed(self):
        assert strip_wikitext("{{a|{{b}}}}text") == "text"

    def test_emphasis_removed(self):
        assert strip_wikitext("''supervised'' learning") == "supervised learning"

    def test_unbalanced_braces_drop_line_only(self):
        assert strip_wikitext("{{broken template\nnext line stays") == "next line stays"

    def test_ref_contents_removed(self):
        assert strip_wikitext("Fact.<ref>{{cite web}}</ref> More.") == "Fact. More."

    def test_heading_keeps_text(self):
        assert strip_wikitext("== History ==\nOld stuff.") == "History\n\nOld stuff."

    @given(st.text(alphabet=string.ascii_letters + " '[]{}|=\n", max_size=200))
    def test_idempotent_on_own_output(self, text):
        once = strip_wikitext(text)
        assert strip_wikitext(once) == once

    @given(st.text(alphabet=string.ascii_letters + " .\n", max_size=200))
    def test_never_raises_on_plain_text(self, text):
        strip_wikitext(text)
