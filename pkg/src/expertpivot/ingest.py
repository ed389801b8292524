"""Document streams: a MediaWiki pages-articles dump and a tree of expert
activity-report pages.

Both readers yield fully cleaned Documents (stripped, sentence-split,
tokenized) one at a time; memory stays bounded by a single page regardless
of input size.
"""

from __future__ import annotations

import bz2
import gzip
import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterator
from urllib.parse import quote

from .textproc import (
    CleanText,
    extract_html_title,
    strip_boilerplate,
    strip_wikitext,
    to_clean_text,
)

__all__ = ["Document", "IngestError", "IngestStats", "read_wiki_dump", "read_expert_docs"]

log = logging.getLogger(__name__)

WIKI_URL_BASE = "https://en.wikipedia.org/wiki/"

_EXPERT_EXTENSIONS = {".html", ".htm"}


class IngestError(RuntimeError):
    pass


@dataclass(frozen=True, slots=True)
class Document:
    """One text unit from either corpus."""

    doc_id: str
    source: str  # "wikipedia" | "expert"
    title: str
    url: str
    clean: CleanText
    team: str | None = None

    def __post_init__(self):
        if self.source not in ("wikipedia", "expert"):
            raise ValueError(f"unknown source: {self.source!r}")
        if (self.team is not None) != (self.source == "expert"):
            raise ValueError("team is required for expert documents and only for them")


@dataclass(slots=True)
class IngestStats:
    """Counts kept by a reader; yielded + skipped always equals seen."""

    seen: int = 0
    yielded: int = 0
    skipped: int = 0
    skip_reasons: dict[str, int] = field(default_factory=dict)

    def skip(self, reason: str) -> None:
        self.skipped += 1
        self.skip_reasons[reason] = self.skip_reasons.get(reason, 0) + 1


def _open_maybe_compressed(path: str | Path) -> IO[bytes]:
    p = str(path)
    if p.endswith(".gz"):
        return gzip.open(p, "rb")
    if p.endswith(".bz2"):
        return bz2.open(p, "rb")
    return open(p, "rb")


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def wiki_page_url(title: str, url_base: str = WIKI_URL_BASE) -> str:
    return url_base + quote(title.replace(" ", "_"), safe="/:()_',.-")


def read_wiki_dump(
    path: str | Path,
    *,
    url_base: str = WIKI_URL_BASE,
    stats: IngestStats | None = None,
) -> Iterator[Document]:
    """Stream namespace-0, non-redirect articles out of a pages dump.

    The dump may be plain XML or compressed (.gz / .bz2, chosen by
    extension). Page text runs through the wikitext stripper and the
    sentence pipeline before the Document is yielded.
    """
    stats = stats if stats is not None else IngestStats()
    try:
        stream = _open_maybe_compressed(path)
    except OSError as exc:
        raise IngestError(f"cannot open dump {path}: {exc}") from exc
    with stream:
        try:
            root = None
            for event, elem in ET.iterparse(stream, events=("start", "end")):
                if event == "start":
                    if root is None:
                        root = elem
                    continue
                if _local_name(elem.tag) != "page":
                    continue
                stats.seen += 1
                doc = _page_to_document(elem, url_base, stats)
                if doc is not None:
                    stats.yielded += 1
                    yield doc
                if root is not None:
                    root.clear()
        except ET.ParseError as exc:
            raise IngestError(
                f"malformed dump XML after {stats.seen} page(s): {exc}"
            ) from exc


def _page_to_document(
    page: ET.Element, url_base: str, stats: IngestStats
) -> Document | None:
    title = ""
    ns = "0"
    text = ""
    for child in page.iter():
        name = _local_name(child.tag)
        if name == "title":
            title = (child.text or "").strip()
        elif name == "ns":
            ns = (child.text or "0").strip()
        elif name == "text":
            text = child.text or ""
    if ns != "0":
        stats.skip("namespace")
        return None
    if not title:
        stats.skip("untitled")
        return None
    if text.lstrip().lower().startswith("#redirect"):
        stats.skip("redirect")
        return None
    clean = to_clean_text(strip_wikitext(text))
    return Document(
        doc_id=f"wp:{title}",
        source="wikipedia",
        title=title,
        url=wiki_page_url(title, url_base),
        clean=clean,
    )


def read_expert_docs(
    root_dir: str | Path,
    *,
    team_component: int = 0,
    url_base: str | None = None,
    stats: IngestStats | None = None,
) -> Iterator[Document]:
    """Stream report pages from a ``<root>/<team>/<file>.html`` tree.

    The team name is the path component at ``team_component`` below the
    root. Non-HTML files are skipped, unreadable files are skipped with a
    warning, and an empty tree is an error.
    """
    stats = stats if stats is not None else IngestStats()
    root = Path(root_dir)
    if not root.is_dir():
        raise IngestError(f"expert root {root} is not a directory")
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        stats.seen += 1
        rel = path.relative_to(root)
        if path.suffix.lower() not in _EXPERT_EXTENSIONS:
            stats.skip("extension")
            continue
        if len(rel.parts) <= team_component + 1:
            log.warning("no team directory for %s, skipping", path)
            stats.skip("no-team")
            continue
        team = rel.parts[team_component]
        try:
            raw = path.read_bytes()
        except OSError as exc:
            log.warning("unreadable file %s: %s", path, exc)
            stats.skip("unreadable")
            continue
        clean = to_clean_text(strip_boilerplate(raw))
        stats.yielded += 1
        yield Document(
            doc_id=f"ex:{rel.as_posix()}",
            source="expert",
            title=extract_html_title(raw) or path.stem,
            url=(url_base.rstrip("/") + "/" + rel.as_posix()) if url_base else str(path),
            clean=clean,
            team=team,
        )
    if stats.yielded == 0:
        raise IngestError(f"zero documents under {root}")
