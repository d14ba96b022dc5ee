"""Word lists shipped with the package, overridable per file.

Lookup order for each list: an explicit path argument, then a file of the
same name under ``$COHESIA_DATA``, then the packaged copy.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

DATA_ENV = "COHESIA_DATA"

FILES = {
    "stopwords": "stopwords.txt",
    "pronouns": "pronouns.txt",
    "abbreviations": "abbreviations.txt",
    "verbs": "verbs.txt",
    "exceptions": "lemma_exceptions.txt",
    "cue_bonus": "cue_bonus.txt",
    "cue_stigma": "cue_stigma.txt",
    "synonyms": "synonyms.txt",
}


def _read_lines(path):
    text = Path(path).read_text(encoding="utf-8")
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _packaged_lines(name):
    text = resources.files("cohesia.data").joinpath(name).read_text(encoding="utf-8")
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def data_lines(key: str, path: str | os.PathLike | None = None) -> list[str]:
    """Non-blank, non-comment lines of one lexicon list."""
    name = FILES[key]
    if path is not None:
        return _read_lines(path)
    data_dir = os.environ.get(DATA_ENV)
    if data_dir:
        candidate = Path(data_dir) / name
        if candidate.is_file():
            return _read_lines(candidate)
    return _packaged_lines(name)


def parse_exceptions(lines):
    table = {}
    for line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"exception entry needs 'surface lemma': {line!r}")
        table[parts[0].lower()] = parts[1].lower()
    return table


def parse_synonyms(lines):
    """Map each word to a canonical group key (the group's first word)."""
    table = {}
    for line in lines:
        words = [w.lower() for w in line.replace(",", " ").split()]
        if not words:
            continue
        key = words[0]
        for w in words:
            table.setdefault(w, key)
    return table


@dataclass(frozen=True)
class Lexicon:
    stopwords: frozenset = field(default_factory=frozenset)
    pronouns: frozenset = field(default_factory=frozenset)
    abbreviations: frozenset = field(default_factory=frozenset)
    verbs: frozenset = field(default_factory=frozenset)
    exceptions: dict = field(default_factory=dict, hash=False, compare=False)
    cue_bonus: tuple = ()
    cue_stigma: tuple = ()

    @property
    def known_lemmas(self) -> frozenset:
        return self.verbs | frozenset(self.exceptions.values())

    @classmethod
    def load(cls, **paths) -> "Lexicon":
        """Load every list; keyword arguments override individual files by path."""
        unknown = set(paths) - set(FILES)
        if unknown:
            raise ValueError(f"unknown lexicon lists: {sorted(unknown)}")

        def lines(key):
            return data_lines(key, paths.get(key))

        return cls(
            stopwords=frozenset(w.lower() for w in lines("stopwords")),
            pronouns=frozenset(w.lower() for w in lines("pronouns")),
            abbreviations=frozenset(w.lower().rstrip(".") for w in lines("abbreviations")),
            verbs=frozenset(w.lower() for w in lines("verbs")),
            exceptions=parse_exceptions(lines("exceptions")),
            cue_bonus=tuple(w.lower() for w in lines("cue_bonus")),
            cue_stigma=tuple(w.lower() for w in lines("cue_stigma")),
        )


@lru_cache(maxsize=1)
def _default(data_dir):
    return Lexicon.load()


def default_lexicon() -> Lexicon:
    # keyed on the env var so tests that set COHESIA_DATA see fresh lists
    return _default(os.environ.get(DATA_ENV))


def load_synonyms(path=None) -> dict:
    return parse_synonyms(data_lines("synonyms", path))
