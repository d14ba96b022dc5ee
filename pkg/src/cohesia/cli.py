"""cohesia command line.

Exit codes: 0 success, 1 usage, 2 unsupported factor profile,
3 ingest or parse failure (other documents in a corpus still run).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import baseline_eval as be
from .cohesion import EdgeWeights, export_graph, linkage_stats
from .factors import EngineParams, ProfileError, Unsupported, parse_profile, resolve
from .ingest import read_document
from .interpret import PredicationFormatError, export_predications, ingest_predications, interpret
from .lexicon import Lexicon, load_synonyms
from .pipeline import EmptyDocument, run_engine
from .selection import REPRESENTATIVENESS_MODES, ScoreWeights, project_to_sentences

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_INGEST = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _engine_options(p):
    g = p.add_argument_group("engine")
    g.add_argument("--profile", help="context-factor profile (key=value file)")
    g.add_argument("--ratio", type=float, help="compression ratio over graph nodes")
    g.add_argument("--k", type=int, help="explicit node budget (overrides --ratio)")
    g.add_argument("--format", choices=("running", "headed"), dest="output_format")
    g.add_argument("--projection", choices=("predications", "sentences", "keyterms"))
    g.add_argument("--alpha", type=float, help="centrality weight")
    g.add_argument("--beta", type=float, help="representativeness weight")
    g.add_argument("--gamma", type=float, help="coherence weight")
    g.add_argument("--delta", type=float, help="markedness prior weight")
    g.add_argument("--w-pred", type=float)
    g.add_argument("--w-intra", type=float)
    g.add_argument("--w-inter", type=float)
    g.add_argument("--synonym-discount", type=float)
    g.add_argument("--synonyms", nargs="?", const="", metavar="FILE",
                   help="enable synonym links (shipped table unless FILE given)")
    g.add_argument("--pred-cross-only", action="store_true",
                   help="common-predicate links only across sentences")
    g.add_argument("--representativeness", choices=REPRESENTATIVENESS_MODES, default="neighbourhood")
    g.add_argument("--from-predications", action="store_true",
                   help="inputs are predication JSONL files, not text")


def _lexicon_options(p):
    p.add_argument("--stopwords", help="stopword list file")
    p.add_argument("--pronouns", help="pronoun list file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cohesia", description="Indicative summaries from cohesion graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("summarize", help="summarise one or more documents")
    p.add_argument("paths", nargs="+")
    p.add_argument("--explain", action="store_true", help="emit score breakdown JSON")
    p.add_argument("--out-dir", help="write <id>.txt (and <id>.explain.json) here")
    _engine_options(p)
    _lexicon_options(p)

    p = sub.add_parser("interpret", help="extract predications")
    p.add_argument("path")
    p.add_argument("--format", choices=("jsonl",), default="jsonl")
    p.add_argument("-o", "--output")
    _lexicon_options(p)

    p = sub.add_parser("graph", help="export the cohesion graph")
    p.add_argument("path")
    p.add_argument("--out", choices=("json", "dot"), default="json", dest="graph_format")
    p.add_argument("-o", "--output")
    _engine_options(p)
    _lexicon_options(p)

    p = sub.add_parser("baseline", help="sentence-extraction baseline")
    p.add_argument("path")
    p.add_argument("--method", choices=be.METHODS, default="luhn")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--smooth", action="store_true", help="add predecessors of anaphor-initial sentences")
    _lexicon_options(p)

    for name, help_ in (("evaluate", "lexical report for the engine summary"),
                        ("compare", "engine sentence projection vs a baseline at equal m")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("path")
        p.add_argument("--baseline", choices=be.METHODS, default="lead")
        p.add_argument("--m", type=int, default=None if name == "evaluate" else 3)
        _engine_options(p)
        _lexicon_options(p)
    return parser


# -- helpers ----------------------------------------------------------------

def _lexicon(args):
    paths = {k: getattr(args, k) for k in ("stopwords", "pronouns") if getattr(args, k, None)}
    for path in paths.values():
        _require(path)
    return Lexicon.load(**paths)


def _require(path):
    if not Path(path).exists():
        raise UsageError(f"no such file: {path}")


def _params(args) -> EngineParams:
    params = EngineParams()
    if args.profile:
        _require(args.profile)
        with open(args.profile, encoding="utf-8") as fh:
            params = resolve(parse_profile(fh))
    ew = params.edge_weights
    sw = params.score_weights
    try:
        ew = EdgeWeights(
            args.w_pred if args.w_pred is not None else ew.w_pred,
            args.w_intra if args.w_intra is not None else ew.w_intra,
            args.w_inter if args.w_inter is not None else ew.w_inter,
            args.synonym_discount if args.synonym_discount is not None else ew.synonym_discount,
        )
        sw = ScoreWeights(
            args.alpha if args.alpha is not None else sw.alpha,
            args.beta if args.beta is not None else sw.beta,
            args.gamma if args.gamma is not None else sw.gamma,
            args.delta if args.delta is not None else sw.delta,
        )
        return params.with_overrides(
            compression_ratio=args.ratio, output_format=args.output_format,
            projection_mode=args.projection, edge_weights=ew, score_weights=sw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _synonyms(args):
    if args.synonyms is None:
        return None
    if args.synonyms:
        _require(args.synonyms)
    return load_synonyms(args.synonyms or None)


def _load(path, args, lex):
    """(doc or None, predications, doc id) for a text or JSONL input."""
    if getattr(args, "from_predications", False):
        with open(path, encoding="utf-8") as fh:
            return None, ingest_predications(fh), Path(path).stem
    doc = read_document(path, lex)
    return doc, interpret(doc, lex), doc.id


def _engine(path, args, params, lex, synonyms):
    doc, preds, doc_id = _load(path, args, lex)
    result = run_engine(preds, params, doc=doc, doc_id=doc_id, k=args.k, synonyms=synonyms,
                        pred_cross_only=args.pred_cross_only,
                        representativeness=args.representativeness)
    return doc, result


def _write(data, output):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- commands ---------------------------------------------------------------

def cmd_summarize(args) -> int:
    for path in args.paths:
        _require(path)
    lex = _lexicon(args)
    params = _params(args)
    synonyms = _synonyms(args)
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    status = EXIT_OK
    for path in args.paths:
        try:
            _, result = _engine(path, args, params, lex, synonyms)
        except (PredicationFormatError, EmptyDocument, UnicodeDecodeError, OSError) as exc:
            print(f"cohesia: {path}: {exc}", file=sys.stderr)
            status = EXIT_INGEST
            continue
        explain = _dump(result.explain()) if args.explain else None
        if out_dir:
            (out_dir / f"{result.doc_id}.txt").write_bytes(result.text.encode("utf-8"))
            if explain:
                (out_dir / f"{result.doc_id}.explain.json").write_bytes(explain.encode("utf-8"))
            continue
        chunk = result.text
        if len(args.paths) > 1:
            chunk = f"==> {result.doc_id} <==\n{chunk}"
        if explain:
            chunk += explain
        _write(chunk, None)
    return status


def cmd_interpret(args) -> int:
    _require(args.path)
    lex = _lexicon(args)
    doc = read_document(args.path, lex)
    _write(export_predications(interpret(doc, lex)), args.output)
    return EXIT_OK


def cmd_graph(args) -> int:
    _require(args.path)
    _, result = _engine(args.path, args, _params(args), _lexicon(args), _synonyms(args))
    _write(export_graph(result.graph, args.graph_format), args.output)
    return EXIT_OK


def cmd_baseline(args) -> int:
    _require(args.path)
    if args.m < 0:
        raise UsageError("--m must be >= 0")
    doc = read_document(args.path, _lexicon(args))
    sel = be.extract(args.method, doc, args.m)
    if args.smooth:
        sel = be.smooth(sel, doc)
    _write("".join(f"{i}\t{doc.sentences[i].text}\n" for i in sel.indices), None)
    return EXIT_OK


def _report(args, m):
    _require(args.path)
    args.from_predications = False
    lex = _lexicon(args)
    doc, result = _engine(args.path, args, _params(args), lex, _synonyms(args))
    if m is None:
        engine_sents = result.sentences
        m = len(engine_sents)
    else:
        if m < 1:
            raise UsageError("--m must be >= 1")
        engine_sents = project_to_sentences(result.selection, result.graph, m, len(doc))
    base = be.extract(args.baseline, doc, m)
    report = be.evaluate(result.summary, doc, engine_sents, base.indices, linkage_stats(result.graph))
    return doc, m, engine_sents, base, report


def cmd_evaluate(args) -> int:
    _, _, _, _, report = _report(args, args.m)
    _write(_dump(report.as_dict()), None)
    return EXIT_OK


def cmd_compare(args) -> int:
    doc, m, engine_sents, base, report = _report(args, args.m)
    _write(_dump({
        "doc": doc.id,
        "baseline": args.baseline,
        "m": m,
        "engine_sentences": list(engine_sents),
        "baseline_sentences": list(base.indices),
        "report": report.as_dict(),
    }), None)
    return EXIT_OK


COMMANDS = {
    "summarize": cmd_summarize,
    "interpret": cmd_interpret,
    "graph": cmd_graph,
    "baseline": cmd_baseline,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"cohesia: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Unsupported as exc:
        print(f"cohesia: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ProfileError, PredicationFormatError, EmptyDocument, UnicodeDecodeError) as exc:
        print(f"cohesia: {exc}", file=sys.stderr)
        return EXIT_INGEST


if __name__ == "__main__":
    sys.exit(main())
