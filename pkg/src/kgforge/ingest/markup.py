"""Segment textbook markup into a unit/lesson/section tree.

Accepted tag subset: h1/h2/h3 map to tree levels (configurable), p delimits
paragraphs; inline tags pass through as text; all other markup is ignored.
Section ordinals are global across the book, 1..N in reading order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser

from kgforge.errors import MalformedMarkup, OrphanSection

DEFAULT_RULES = {"h1": "unit", "h2": "lesson", "h3": "section"}

# Tags we track for nesting; inline markup is transparent.
_TRACKED = ("h1", "h2", "h3", "p")


@dataclass
class Section:
    id: str
    title: str
    ordinal: int
    paragraphs: list[str] = field(default_factory=list)

    def text(self) -> str:
        return " ".join([self.title, *self.paragraphs]).strip()

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "ordinal": self.ordinal,
            "paragraphs": list(self.paragraphs),
        }


@dataclass
class Lesson:
    title: str
    sections: list[Section] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"title": self.title, "sections": [s.to_dict() for s in self.sections]}


@dataclass
class Unit:
    title: str
    lessons: list[Lesson] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"title": self.title, "lessons": [l.to_dict() for l in self.lessons]}


@dataclass
class DocTree:
    book_id: str
    units: list[Unit] = field(default_factory=list)

    def sections(self) -> list[Section]:
        return [s for u in self.units for l in u.lessons for s in l.sections]

    def section_by_ordinal(self, i: int) -> Section:
        return self.sections()[i - 1]

    def to_dict(self) -> dict:
        return {"bookId": self.book_id, "units": [u.to_dict() for u in self.units]}

    @classmethod
    def from_dict(cls, d: dict) -> "DocTree":
        tree = cls(book_id=d["bookId"])
        for ud in d["units"]:
            unit = Unit(title=ud["title"])
            for ld in ud["lessons"]:
                lesson = Lesson(title=ld["title"])
                for sd in ld["sections"]:
                    lesson.sections.append(
                        Section(
                            id=sd["id"],
                            title=sd["title"],
                            ordinal=sd["ordinal"],
                            paragraphs=list(sd["paragraphs"]),
                        )
                    )
                unit.lessons.append(lesson)
            tree.units.append(unit)
        return tree


class _TreeBuilder(HTMLParser):
    def __init__(self, book_id: str, rules: dict[str, str], mode: str):
        super().__init__(convert_charrefs=True)
        self.book_id = book_id
        self.level_of = {tag: level for tag, level in rules.items()}
        self.mode = mode
        self.tree = DocTree(book_id=book_id)
        self.stack: list[str] = []
        self.buffer: list[str] = []
        self.capture: str | None = None
        self.ordinal = 0
        self.saw_content = False

    # -- container management ------------------------------------------

    def _unit(self, implicit_ok: bool) -> Unit:
        if not self.tree.units:
            if self.mode == "strict" and not implicit_ok:
                raise OrphanSection("content before any unit heading")
            self.tree.units.append(Unit(title=""))
        return self.tree.units[-1]

    def _lesson(self) -> Lesson:
        if self.mode == "strict":
            if not self.tree.units or not self.tree.units[-1].lessons:
                raise OrphanSection("section before any lesson heading")
        unit = self._unit(implicit_ok=True)
        if not unit.lessons:
            unit.lessons.append(Lesson(title=""))
        return unit.lessons[-1]

    def _section(self) -> Section:
        lesson = self._lesson()
        if not lesson.sections:
            if self.mode == "strict":
                raise OrphanSection("paragraph before any section heading")
            self.ordinal += 1
            lesson.sections.append(
                Section(id=f"{self.book_id}/s{self.ordinal}", title="", ordinal=self.ordinal)
            )
        return lesson.sections[-1]

    # -- parser hooks ----------------------------------------------------

    def handle_starttag(self, tag, attrs):
        if tag not in _TRACKED:
            return
        if self.capture is not None:
            raise MalformedMarkup(f"<{tag}> opened inside <{self.capture}>")
        self.stack.append(tag)
        self.capture = tag
        self.buffer = []

    def handle_endtag(self, tag):
        if tag not in _TRACKED:
            return
        if not self.stack or self.stack[-1] != tag:
            raise MalformedMarkup(f"unexpected </{tag}>")
        self.stack.pop()
        self.capture = None
        text = " ".join("".join(self.buffer).split())
        self.buffer = []
        self.saw_content = True
        level = self.level_of.get(tag)
        if level == "unit":
            self.tree.units.append(Unit(title=text))
        elif level == "lesson":
            self._unit(implicit_ok=False).lessons.append(Lesson(title=text))
        elif level == "section":
            self.ordinal += 1
            self._lesson().sections.append(
                Section(id=f"{self.book_id}/s{self.ordinal}", title=text, ordinal=self.ordinal)
            )
        elif tag == "p" and text:
            self._section().paragraphs.append(text)

    def handle_data(self, data):
        if self.capture is not None:
            self.buffer.append(data)


def segment_textbook(
    markup: str,
    rules: dict[str, str] | None = None,
    book_id: str = "book",
    mode: str = "lax",
) -> DocTree:
    """Parse markup into a DocTree; strict mode rejects orphaned content."""
    if mode not in ("strict", "lax"):
        raise ValueError(f"unknown mode {mode!r}")
    if not markup or not markup.strip():
        raise MalformedMarkup("empty document")
    builder = _TreeBuilder(book_id, rules or DEFAULT_RULES, mode)
    builder.feed(markup)
    builder.close()
    if builder.stack:
        raise MalformedMarkup(f"unclosed <{builder.stack[-1]}>")
    if not builder.saw_content:
        raise MalformedMarkup("no recognized content tags")
    return builder.tree
