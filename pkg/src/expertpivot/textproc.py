"""Turn raw page formats into sentence-split, lowercase token sequences.

Every piece of text that can take part in phrase matching goes through
:func:`tokenize`, which is also the normalizer applied to taxonomy labels.
Keeping a single code path is what guarantees that a label and a document
mention of it produce identical token sequences.
"""

from __future__ import annotations

import html as _html
import re
import unicodedata
from dataclasses import dataclass
from html.parser import HTMLParser

__all__ = [
    "CleanText",
    "tokenize",
    "split_sentences",
    "strip_boilerplate",
    "strip_wikitext",
    "to_clean_text",
    "extract_html_title",
]


@dataclass(frozen=True, slots=True)
class CleanText:
    """Sentence-split token text plus the character length of the clean text."""

    sentences: tuple[tuple[str, ...], ...]
    char_len: int


# Tokens are maximal runs of alphanumeric characters. Everything else,
# hyphens and underscores included, separates tokens.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split it into tokens.

    NFC-normalizes first so that composed and decomposed accents compare
    equal. Empty input yields an empty list; no token is ever empty.
    """
    if not text:
        return []
    text = unicodedata.normalize("NFC", text).lower()
    return _TOKEN_RE.findall(text)


_PARA_BREAK_RE = re.compile(r"\n[ \t\r]*\n")
_SENT_BREAK_RE = re.compile(r"(?<=[.!?])\s+")


def split_sentences(text: str) -> list[str]:
    """Split text after ``.`` ``!`` ``?`` followed by whitespace.

    Blank lines also split. Segments are trimmed and empty ones dropped.
    Abbreviations are not special-cased: "Dr. Smith" becomes two sentences.
    """
    out: list[str] = []
    for para in _PARA_BREAK_RE.split(text):
        for seg in _SENT_BREAK_RE.split(para):
            seg = seg.strip()
            if seg:
                out.append(seg)
    return out


def to_clean_text(text: str) -> CleanText:
    """Sentence-split and tokenize already-stripped plain text."""
    sentences = []
    for sent in split_sentences(text):
        tokens = tokenize(sent)
        if tokens:
            sentences.append(tuple(tokens))
    return CleanText(sentences=tuple(sentences), char_len=len(text))


# ---------------------------------------------------------------------------
# HTML

# Subtrees whose text is page furniture or otherwise invisible.
_SKIPPED_SUBTREES = frozenset(
    {"script", "style", "nav", "header", "footer", "aside", "head", "noscript", "template"}
)

# Elements that end a text block; a paragraph break keeps sentences from
# running together across them.
_BLOCK_TAGS = frozenset(
    {
        "p", "div", "li", "ul", "ol", "dl", "dt", "dd", "h1", "h2", "h3", "h4",
        "h5", "h6", "tr", "td", "th", "table", "section", "article", "main",
        "blockquote", "pre", "hr", "figure", "figcaption", "form",
    }
)


class _TextExtractor(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SKIPPED_SUBTREES:
            self._skip_depth += 1
        elif tag in _BLOCK_TAGS or tag == "br":
            self.parts.append("\n\n" if tag in _BLOCK_TAGS else "\n")

    def handle_endtag(self, tag):
        if tag in _SKIPPED_SUBTREES:
            if self._skip_depth:
                self._skip_depth -= 1
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n\n")

    def handle_startendtag(self, tag, attrs):
        if tag == "br" or tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_data(self, data):
        if not self._skip_depth:
            self.parts.append(data)


_TAG_RE = re.compile(r"<[^>]*>")
_HSPACE_RE = re.compile(r"[ \t\r\f\v]+")
_NEWLINE_PAD_RE = re.compile(r" ?\n ?")
_MULTI_NEWLINE_RE = re.compile(r"\n{2,}")


def _squash_whitespace(text: str) -> str:
    text = _HSPACE_RE.sub(" ", text)
    text = _NEWLINE_PAD_RE.sub("\n", text)
    text = _MULTI_NEWLINE_RE.sub("\n\n", text)
    return text.strip()


def strip_boilerplate(html: bytes | str) -> str:
    """Extract the visible text of an HTML page.

    Script/style content and navigation chrome (nav, header, footer, aside)
    are dropped, remaining tags removed, entities decoded, and block
    boundaries turned into paragraph breaks. Malformed markup never raises;
    the worst case is the tag-stripped input.
    """
    if isinstance(html, bytes):
        html = html.decode("utf-8", errors="replace")
    extractor = _TextExtractor()
    try:
        extractor.feed(html)
        extractor.close()
        text = "".join(extractor.parts)
    except Exception:
        text = _html.unescape(_TAG_RE.sub(" ", html))
    return _squash_whitespace(text)


_TITLE_RE = re.compile(r"<title[^>]*>(.*?)</title>", re.IGNORECASE | re.DOTALL)


def extract_html_title(html: bytes | str) -> str | None:
    """Return the contents of the <title> element, if any."""
    if isinstance(html, bytes):
        html = html.decode("utf-8", errors="replace")
    m = _TITLE_RE.search(html)
    if not m:
        return None
    title = _squash_whitespace(_html.unescape(m.group(1)))
    return title or None


# ---------------------------------------------------------------------------
# Wikitext

_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_REF_RE = re.compile(r"<ref[^>/]*>.*?</ref>|<ref[^>]*/>", re.DOTALL | re.IGNORECASE)
_LINK_RE = re.compile(r"\[\[([^\[\]]*)\]\]")
_EXTLINK_LABELED_RE = re.compile(r"\[(?:https?|ftp)://[^\]\s]*\s+([^\]]*)\]")
_EXTLINK_BARE_RE = re.compile(r"\[(?:https?|ftp)://[^\]\s]*\]")
_QUOTES_RE = re.compile(r"''+")
_HEADING_RE = re.compile(r"^=+ *(.*?) *=+ *$", re.MULTILINE)
_HTMLTAG_RE = re.compile(r"</?[A-Za-z][^>]*>")
_MAGIC_RE = re.compile(r"__[A-Z]+__")


def _strip_templates(text: str) -> str:
    """Remove ``{{...}}`` spans, tracking nesting.

    An opener that never closes is removed up to the end of its line and
    scanning continues, so broken markup cannot eat the whole page.
    """
    out: list[str] = []
    i, n = 0, len(text)
    while i < n:
        if text.startswith("{{", i):
            depth, j = 1, i + 2
            while j < n and depth:
                if text.startswith("{{", j):
                    depth += 1
                    j += 2
                elif text.startswith("}}", j):
                    depth -= 1
                    j += 2
                else:
                    j += 1
            if depth:
                eol = text.find("\n", i)
                i = n if eol < 0 else eol
            else:
                i = j
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def _link_surface(m: re.Match) -> str:
    # [[target|display]] keeps the display text; [[target]] keeps the target.
    return m.group(1).rsplit("|", 1)[-1].strip()


def strip_wikitext(wikitext: str) -> str:
    """Reduce wiki markup to plain text.

    Templates and ref tags vanish with their contents, internal links keep
    their display surface, external links keep their label, emphasis quotes
    are dropped, headings keep their text. Tables and parser functions are
    left alone.
    """
    text = _COMMENT_RE.sub("", wikitext)
    text = _REF_RE.sub("", text)
    text = _strip_templates(text)
    prev = None
    while prev != text:  # innermost first, so nested file links resolve
        prev = text
        text = _LINK_RE.sub(_link_surface, text)
    text = _EXTLINK_LABELED_RE.sub(r"\1", text)
    text = _EXTLINK_BARE_RE.sub("", text)
    text = _QUOTES_RE.sub("", text)
    text = _HEADING_RE.sub(r"\1\n", text)
    text = _HTMLTAG_RE.sub(" ", text)
    text = _MAGIC_RE.sub("", text)
    return _squash_whitespace(text)
