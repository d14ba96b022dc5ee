"""Source text to Document: segmentation, tokens, lemmas, markedness."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from .lexicon import Lexicon, default_lexicon

TITLE_PREFIX = "#TITLE "

_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n\s*")
_TERMINATOR = re.compile(r"[.!?]+[\"')\]”’]*(?=\s)")
_TOKEN = re.compile(r"\w+(?:[-'’.]\w+)*|[^\w\s]")
_VOWELS = set("aeiouy")


@dataclass(frozen=True)
class Markedness:
    location_score: float = 0.0
    cue_score: float = 0.0
    in_title_overlap: bool = False

    def __post_init__(self):
        if not 0.0 <= self.location_score <= 1.0:
            raise ValueError(f"location_score out of [0,1]: {self.location_score}")
        if not -1.0 <= self.cue_score <= 1.0:
            raise ValueError(f"cue_score out of [-1,1]: {self.cue_score}")


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    is_content: bool
    is_pronoun: bool
    span: tuple[int, int]

    @property
    def is_word(self) -> bool:
        return self.surface[0].isalnum() or self.surface[0] == "_"

    @property
    def is_adverb(self) -> bool:
        # -ly forms the lemmatiser actually stripped ("quarterly"), not "family"
        s = self.surface.lower()
        return s.endswith("ly") and self.lemma != s


@dataclass(frozen=True)
class Sentence:
    index: int
    span: tuple[int, int]
    text: str
    tokens: tuple[Token, ...]
    markedness: Markedness = field(default_factory=Markedness)

    @property
    def words(self) -> tuple[Token, ...]:
        return tuple(t for t in self.tokens if t.is_word)

    @property
    def content_lemmas(self) -> list[str]:
        return [t.lemma for t in self.tokens if t.is_content]


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    sentences: tuple[Sentence, ...]
    paragraph_starts: frozenset = frozenset()
    title: str | None = None

    def __len__(self):
        return len(self.sentences)

    @property
    def word_count(self) -> int:
        return sum(len(s.words) for s in self.sentences)


# -- lemmatisation ----------------------------------------------------------

def _has_vowel(s):
    return any(c in _VOWELS for c in s)


def _restore_e(stem, known):
    if stem + "e" in known:
        return stem + "e"
    if stem in known:
        return stem
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[:-1] in known:
        return stem[:-1]
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] in "bgmnprt":
        return stem[:-1]
    if stem[-1] in "vzc":
        return stem + "e"
    if stem[-1] == "s" and stem[-2] in _VOWELS and not stem.endswith("us"):
        return stem + "e"
    if (len(stem) == 3 and stem[0] not in _VOWELS and stem[1] in _VOWELS
            and stem[2] not in _VOWELS and stem[2] not in "wxy"):
        return stem + "e"
    return stem


def _lemma_step(w, exceptions, known):
    if w in exceptions:
        return exceptions[w]
    if w.endswith(("'s", "’s")):
        return w[:-2] or w
    if w.endswith(("s'", "s’")):
        return w[:-1]
    if w in known or len(w) <= 3 or not w.isalpha():
        return w
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith("s") and w[:-1] in known:
        return w[:-1]
    if w.endswith("es") and w[:-2].endswith(("ss", "x", "z", "ch", "sh")) and len(w) > 4:
        return w[:-2]
    if w.endswith("s") and not w.endswith(("ss", "us", "is")):
        return w[:-1]
    if w.endswith("ing"):
        stem = w[:-3]
        if len(stem) >= 3 and _has_vowel(stem):
            return _restore_e(stem, known)
        return w
    if w.endswith("ed") and not w.endswith("eed"):
        stem = w[:-2]
        if len(stem) >= 3 and _has_vowel(stem):
            return _restore_e(stem, known)
        return w
    if w.endswith("ly") and len(w) >= 6:
        return w[:-2]
    return w


def lemmatize(surface: str, exceptions: dict | None = None, known=None) -> str:
    """Lowercase lemma: exception table first, then ordered suffix rules.

    Rules are re-applied until nothing changes, so the result is always a
    fixed point (``lemmatize(lemmatize(x)) == lemmatize(x)``).
    """
    if exceptions is None or known is None:
        lex = default_lexicon()
        exceptions = lex.exceptions if exceptions is None else exceptions
        known = lex.known_lemmas if known is None else known
    word = surface.lower()
    for _ in range(10):
        nxt = _lemma_step(word, exceptions, known)
        if nxt == word or not nxt:
            break
        word = nxt
    return word or surface.lower()


# -- segmentation -----------------------------------------------------------

def _is_abbreviation(text, term_start, abbreviations):
    m = re.search(r"(\S+)$", text[:term_start])
    if not m:
        return False
    word = m.group(1).lstrip("\"'([“")
    if len(word) == 1 and word.isupper():
        return True  # initials: "J. Smith"
    return word.lower() in abbreviations


def _next_is_upper(text, pos):
    while pos < len(text) and (text[pos].isspace() or text[pos] in "\"'([“‘"):
        pos += 1
    return pos < len(text) and text[pos].isupper()


def _sentence_spans(text, start, end, abbreviations):
    """Sentence spans inside text[start:end], trimmed of whitespace."""
    spans = []
    cursor = start
    chunk = text[:end]
    for m in _TERMINATOR.finditer(chunk, start):
        if not _next_is_upper(chunk, m.end()):
            continue
        if m.group(0).startswith(".") and len(m.group(0).rstrip("\"')]”’")) == 1:
            if _is_abbreviation(chunk, m.start(), abbreviations):
                continue
        spans.append((cursor, m.end()))
        cursor = m.end()
    spans.append((cursor, end))
    out = []
    for a, b in spans:
        while a < b and text[a].isspace():
            a += 1
        while b > a and text[b - 1].isspace():
            b -= 1
        if a < b:
            out.append((a, b))
    return out


def tokenize(text: str, offset: int = 0, lexicon: Lexicon | None = None) -> tuple[Token, ...]:
    lex = lexicon or default_lexicon()
    known = lex.known_lemmas
    tokens = []
    for m in _TOKEN.finditer(text):
        surface = m.group(0)
        lower = surface.lower()
        if surface[0].isalnum() or surface[0] == "_":
            lemma = lemmatize(surface, lex.exceptions, known)
            pronoun = lower in lex.pronouns
            content = not pronoun and lower not in lex.stopwords and lemma not in lex.stopwords
        else:
            lemma, pronoun, content = lower, False, False
        tokens.append(Token(surface, lemma, content, pronoun, (offset + m.start(), offset + m.end())))
    return tuple(tokens)


def segment(text: str, title: str | None = None, doc_id: str = "doc",
            lexicon: Lexicon | None = None) -> Document:
    """Split text into paragraphs and sentences and tokenise each sentence.

    A sentence ends at a run of ``.!?`` followed by whitespace and an
    uppercase letter, unless the word before a single period is a known
    abbreviation or an initial. Blank lines separate paragraphs.
    """
    lex = lexicon or default_lexicon()
    sentences = []
    paragraph_starts = set()
    para_start = 0
    bounds = [(m.start(), m.end()) for m in _PARAGRAPH_BREAK.finditer(text)]
    regions = []
    for b_start, b_end in bounds:
        regions.append((para_start, b_start))
        para_start = b_end
    regions.append((para_start, len(text)))

    for r_start, r_end in regions:
        first = True
        for a, b in _sentence_spans(text, r_start, r_end, lex.abbreviations):
            if first:
                paragraph_starts.add(len(sentences))
                first = False
            sent_text = text[a:b]
            sentences.append(Sentence(len(sentences), (a, b), sent_text, tokenize(sent_text, a, lex)))
    return Document(doc_id, text, tuple(sentences), frozenset(paragraph_starts), title)


# -- markedness -------------------------------------------------------------

def _count_phrases(words, phrases):
    hits = 0
    for phrase in phrases:
        parts = phrase.split()
        n = len(parts)
        for i in range(len(words) - n + 1):
            if words[i:i + n] == parts:
                hits += 1
    return hits


def location_score(index: int, n: int, paragraph_starts) -> float:
    if index in paragraph_starts or index == n - 1:
        return 1.0
    return 0.5 * (1.0 - index / max(1, n - 1))


def annotate_markedness(doc: Document, lexicon: Lexicon | None = None,
                        bonus=None, stigma=None) -> Document:
    lex = lexicon or default_lexicon()
    bonus = lex.cue_bonus if bonus is None else bonus
    stigma = lex.cue_stigma if stigma is None else stigma
    title_lemmas = set()
    if doc.title:
        title_lemmas = {t.lemma for t in tokenize(doc.title, 0, lex) if t.is_content}

    n = len(doc.sentences)
    out = []
    for s in doc.sentences:
        words = [t.surface.lower() for t in s.words]
        cue = _count_phrases(words, bonus) - _count_phrases(words, stigma)
        mark = Markedness(
            location_score=location_score(s.index, n, doc.paragraph_starts),
            cue_score=float(max(-1, min(1, cue))),
            in_title_overlap=bool(title_lemmas & set(s.content_lemmas)),
        )
        out.append(replace(s, markedness=mark))
    return replace(doc, sentences=tuple(out))


def split_title(raw: str) -> tuple[str | None, str]:
    if raw.startswith(TITLE_PREFIX):
        first, _, rest = raw.partition("\n")
        return first[len(TITLE_PREFIX):].strip() or None, rest
    return None, raw


def parse_document(raw: str, doc_id: str = "doc", lexicon: Lexicon | None = None) -> Document:
    """Segment and annotate raw file contents (with optional #TITLE line)."""
    title, body = split_title(raw)
    doc = segment(body, title=title, doc_id=doc_id, lexicon=lexicon)
    return annotate_markedness(doc, lexicon)


def read_document(path, lexicon: Lexicon | None = None) -> Document:
    path = Path(path)
    raw = path.read_text(encoding="utf-8")
    return parse_document(raw, doc_id=path.stem, lexicon=lexicon)
