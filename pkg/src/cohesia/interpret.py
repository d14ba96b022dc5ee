"""Shallow predicate-argument extraction, local anaphora, JSONL interchange."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field, replace

from .ingest import Document, Markedness, Sentence, Token
from .lexicon import Lexicon, default_lexicon

MAX_ARGS = 3
ANAPHORA_WINDOW = 2

COORDINATORS = frozenset({"and", "but", "or", "nor", "yet"})
CLAUSE_PUNCT = frozenset({";", ":", "—", "–"})
# a lexicon verb right after one of these is read as a noun ("the plan")
NOMINAL_PRECEDERS = frozenset("""
a an the this that these those its their his our my your her
of in on at by for with from into over under about between among per
some any each every no another several many few
""".split())


@dataclass(frozen=True)
class Argument:
    head: str
    surface: str
    role: int
    resolved_from: str | None = field(default=None, compare=False)

    @property
    def is_placeholder(self) -> bool:
        return not self.head


@dataclass(frozen=True)
class Predication:
    id: int
    predicate: str | None
    args: tuple[Argument, ...]
    sentence_index: int
    complete: bool
    markedness: Markedness = field(default_factory=Markedness, compare=False)
    position: int = field(default=0, compare=False)

    def __post_init__(self):
        if len(self.args) > MAX_ARGS:
            raise ValueError(f"predication {self.id}: more than {MAX_ARGS} arguments")
        if self.predicate is None and not self.args:
            raise ValueError(f"predication {self.id}: needs a predicate or an argument")
        if self.complete != self.derived_complete():
            raise ValueError(f"predication {self.id}: complete={self.complete} contradicts its content")
        for a in self.args:
            if not a.head and not a.surface:
                raise ValueError(f"predication {self.id}: argument with neither head nor surface")

    def derived_complete(self) -> bool:
        return (self.predicate is not None and bool(self.args)
                and not any(a.is_placeholder for a in self.args))

    @property
    def heads(self) -> list[str]:
        return [a.head for a in self.args if a.head]

    def __str__(self):
        inner = ", ".join(a.head or f"<{a.surface}>" for a in self.args)
        return f"{self.predicate or ''}({inner})"


def make_predication(id, predicate, args, sentence_index, markedness=None, position=0):
    args = tuple(args)
    complete = predicate is not None and bool(args) and all(a.head for a in args)
    return Predication(id, predicate, args, sentence_index, complete,
                       markedness or Markedness(), position)


# -- extraction -------------------------------------------------------------

def _clauses(tokens):
    clause = []
    for i, t in enumerate(tokens):
        low = t.surface.lower()
        if low in COORDINATORS or t.surface in CLAUSE_PUNCT:
            if clause:
                yield clause
            clause = []
            continue
        clause.append((i, t))
    if clause:
        yield clause


def _label(clause, lex):
    """Tag each (index, token) as verb, noun, pron, adv or other."""
    labels = []
    morph = []
    prev_word = None
    in_np = False
    for pos, (_, t) in enumerate(clause):
        low = t.surface.lower()
        tag = "other"
        participle = False
        if t.is_pronoun:
            nxt = clause[pos + 1][1] if pos + 1 < len(clause) else None
            # possessive "her budget"
            tag = "other" if (low == "her" and nxt is not None and nxt.is_content) else "pron"
        elif t.is_content and not t.is_adverb:
            participle = low.endswith(("ed", "ing")) and t.lemma != low
            verbal = (t.lemma in lex.verbs or participle) and not low.endswith("ings")
            # bare forms inside a noun phrase are nouns ("a higher pay offer"),
            # except irregulars whose past equals the base ("the river burst")
            bare_in_np = in_np and low == t.lemma and low not in lex.exceptions
            if verbal and prev_word not in NOMINAL_PRECEDERS and not bare_in_np:
                tag = "verb"
            else:
                tag = "noun"
        elif t.is_adverb:
            tag = "adv"
        labels.append(tag)
        morph.append(participle)
        if t.is_word:
            in_np = low in NOMINAL_PRECEDERS or (in_np and tag == "noun")
            prev_word = low

    def verb_positions():
        return [i for i, tag in enumerate(labels) if tag == "verb"]

    # "cut spending": an -ing form straight after a verb is its object
    for pos in range(1, len(labels)):
        if labels[pos] == "verb" and labels[pos - 1] == "verb":
            if clause[pos][1].surface.lower().endswith("ing"):
                labels[pos] = "noun"
    # "halted trains": an -s form straight after a verb is its object
    for pos in range(1, len(labels)):
        if labels[pos] == "verb" and labels[pos - 1] == "verb":
            t = clause[pos][1]
            low = t.surface.lower()
            if low.endswith("s") and t.lemma != low:
                labels[pos] = "noun"
    # "falling demand": a verb right after a participle modifier is its head noun
    for pos in range(1, len(labels)):
        if labels[pos] == "verb" and labels[pos - 1] == "noun" and morph[pos - 1]:
            labels[pos] = "noun"
    # "budget cuts hit": a leading -s form directly before another verb is a noun
    for pos in range(len(labels) - 1):
        if labels[pos] == "verb" and labels[pos + 1] == "verb":
            t = clause[pos][1]
            low = t.surface.lower()
            if low.endswith("s") and t.lemma != low:
                labels[pos] = "noun"
    # "Rescue teams evacuated", "Talks will resume": a clause-initial verb with
    # no subject before it and another verb later is part of the subject
    verbs = verb_positions()
    if len(verbs) >= 2 and not any(tag in ("noun", "pron") for tag in labels[:verbs[0]]):
        labels[verbs[0]] = "noun"
    return labels


def _gap_ok(t):
    """Tokens that may sit inside a verb group ("has been", "decided to")."""
    return t.is_word and not t.is_content and not t.is_pronoun and t.surface.lower() not in NOMINAL_PRECEDERS


def _units(clause, labels):
    """Group a labelled clause into nominal units and verb groups, in order."""
    units = []
    i = 0
    n = len(clause)
    while i < n:
        tag = labels[i]
        if tag == "noun":
            j = i
            while j + 1 < n and labels[j + 1] == "noun":
                j += 1
            units.append(("nom", [clause[k] for k in range(i, j + 1)]))
            i = j + 1
        elif tag == "pron":
            units.append(("pron", [clause[i]]))
            i += 1
        elif tag == "verb":
            group = [clause[i]]
            j = i + 1
            while j < n:
                if labels[j] == "verb":
                    group.append(clause[j])
                    j += 1
                    continue
                k = j
                while k < n and (labels[k] == "adv" or (labels[k] == "other" and _gap_ok(clause[k][1]))):
                    k += 1
                if k < n and k > j and labels[k] == "verb":
                    j = k
                    continue
                break
            units.append(("verb", group))
            i = j
        else:
            i += 1
    return units


def _argument(unit, role, sentence):
    kind, toks = unit
    if kind == "pron":
        return Argument("", toks[0][1].surface, role)
    first, last = toks[0][1], toks[-1][1]
    s0 = sentence.span[0]
    surface = sentence.text[first.span[0] - s0:last.span[1] - s0]
    return Argument(last.lemma, surface, role)


def _sentence_predications(sentence: Sentence, lex: Lexicon):
    """(position, predicate, args) triples for one sentence, unordered."""
    found = []
    for clause in _clauses(sentence.tokens):
        labels = _label(clause, lex)
        units = _units(clause, labels)
        verbs = [i for i, u in enumerate(units) if u[0] == "verb"]
        if not verbs:
            for u in units:
                found.append((u[1][0][0], None, [_argument(u, 0, sentence)]))
            continue
        used = set()
        bounds = [-1] + verbs + [len(units)]
        for vi, v in enumerate(verbs):
            before = [i for i in range(bounds[vi] + 1, v)]
            after = [i for i in range(v + 1, bounds[vi + 2])]
            args = []
            if before:
                args.append(_argument(units[before[-1]], 0, sentence))
                used.add(before[-1])
            for role, ui in enumerate(after[:MAX_ARGS - 1], start=1):
                args.append(_argument(units[ui], role, sentence))
                used.add(ui)
            head_pos, head_tok = units[v][1][-1]
            found.append((head_pos, head_tok.lemma, args))
        # unclaimed nominal units become fragments, contiguous ones grouped up to MAX_ARGS
        for seg in range(len(bounds) - 1):
            leftovers = [i for i in range(bounds[seg] + 1, bounds[seg + 1]) if i not in used]
            for c in range(0, len(leftovers), MAX_ARGS):
                chunk = leftovers[c:c + MAX_ARGS]
                args = [_argument(units[ui], r, sentence) for r, ui in enumerate(chunk)]
                found.append((units[chunk[0]][1][0][0], None, args))
    return found


def extract_predications(doc: Document, lexicon: Lexicon | None = None) -> list[Predication]:
    """Atomic predications for every sentence, ids in reading order."""
    lex = lexicon or default_lexicon()
    raw = []
    for s in doc.sentences:
        for pos, pred, args in _sentence_predications(s, lex):
            raw.append((s.index, pos, pred, args, s.markedness))
    raw.sort(key=lambda r: (r[0], r[1]))
    return [make_predication(i, pred, args, sent, mark, pos)
            for i, (sent, pos, pred, args, mark) in enumerate(raw)]


def resolve_anaphors(preds: list[Predication], doc: Document | None = None) -> list[Predication]:
    """Replace pronoun placeholders by the most recent argument head within the window.

    Candidates are non-pronoun arguments seen earlier in reading order in
    the same sentence or the previous ``ANAPHORA_WINDOW`` sentences.
    """
    history = []  # (sentence_index, head, surface), reading order
    out = []
    for p in sorted(preds, key=lambda q: q.id):
        new_args = []
        for a in p.args:
            if a.is_placeholder and a.resolved_from is None:
                for sent, head, surface in reversed(history):
                    if sent < p.sentence_index - ANAPHORA_WINDOW:
                        break
                    a = Argument(head, surface, a.role, resolved_from=a.surface)
                    break
            elif a.resolved_from is None:
                history.append((p.sentence_index, a.head, a.surface))
            new_args.append(a)
        out.append(replace(p, args=tuple(new_args),
                           complete=p.predicate is not None and bool(new_args)
                           and all(x.head for x in new_args)))
    return out


def interpret(doc: Document, lexicon: Lexicon | None = None) -> list[Predication]:
    return resolve_anaphors(extract_predications(doc, lexicon), doc)


# -- interchange ------------------------------------------------------------

class PredicationFormatError(ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


_FIELDS = ("id", "pred", "args", "sent", "complete")
_ARG_FIELDS = ("head", "surface", "role")


def predication_record(p: Predication) -> dict:
    return {
        "id": p.id,
        "pred": p.predicate,
        "args": [{"head": a.head, "surface": a.surface, "role": a.role} for a in p.args],
        "sent": p.sentence_index,
        "complete": p.complete,
    }


def export_predications(preds) -> str:
    return "".join(json.dumps(predication_record(p), ensure_ascii=False) + "\n" for p in preds)


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _parse_record(lineno, line):
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise PredicationFormatError(lineno, f"invalid JSON ({exc.msg})") from None
    if not isinstance(rec, dict):
        raise PredicationFormatError(lineno, "record is not a JSON object")
    for key in _FIELDS:
        if key not in rec:
            raise PredicationFormatError(lineno, f"missing field '{key}'")
    extra = set(rec) - set(_FIELDS)
    if extra:
        raise PredicationFormatError(lineno, f"unknown fields {sorted(extra)}")
    if not _is_int(rec["id"]) or rec["id"] < 0:
        raise PredicationFormatError(lineno, "'id' must be a non-negative integer")
    if not _is_int(rec["sent"]) or rec["sent"] < 0:
        raise PredicationFormatError(lineno, "'sent' must be a non-negative integer")
    if rec["pred"] is not None and (not isinstance(rec["pred"], str) or not rec["pred"]):
        raise PredicationFormatError(lineno, "'pred' must be a non-empty string or null")
    if not isinstance(rec["complete"], bool):
        raise PredicationFormatError(lineno, "'complete' must be a boolean")
    if not isinstance(rec["args"], list):
        raise PredicationFormatError(lineno, "'args' must be a list")
    args = []
    for a in rec["args"]:
        if not isinstance(a, dict) or set(a) != set(_ARG_FIELDS):
            raise PredicationFormatError(lineno, f"argument must have exactly {list(_ARG_FIELDS)}")
        if not isinstance(a["head"], str) or not isinstance(a["surface"], str) or not _is_int(a["role"]):
            raise PredicationFormatError(lineno, "argument field has the wrong type")
        args.append(Argument(a["head"], a["surface"], a["role"]))
    try:
        return Predication(rec["id"], rec["pred"], tuple(args), rec["sent"], rec["complete"])
    except ValueError as exc:
        raise PredicationFormatError(lineno, str(exc)) from None


def ingest_predications(stream, doc: Document | None = None) -> list[Predication]:
    """Parse line-delimited predication records.

    ``stream`` may be a string, a text file or any iterable of lines. When
    ``doc`` is given, each predication picks up its sentence's markedness.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    seen = set()
    out = []
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        p = _parse_record(lineno, line)
        if p.id in seen:
            raise PredicationFormatError(lineno, f"duplicate id {p.id}")
        seen.add(p.id)
        if doc is not None:
            if p.sentence_index >= len(doc.sentences):
                raise PredicationFormatError(lineno, f"sentence {p.sentence_index} not in document")
            p = replace(p, markedness=doc.sentences[p.sentence_index].markedness)
        out.append(p)
    return out
