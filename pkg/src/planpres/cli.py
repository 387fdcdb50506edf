"""Command-line entry point ``ppt``.

Every analysis is a subcommand.  Reports are JSON by default and carry the
input name, the seed and the package version; identical inputs give
byte-identical output.  Decisions (yes/no, unknown, passed/failed) are report
content: the exit code is 0 unless the input could not be read (1), the
presentation does not simulate (2) or a precondition fails (3).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bipartite import (
    BipartiteError,
    SlideSchedule,
    embed_components,
    flatten,
    parse_bg,
    replay,
    to_svg,
)
from .connectivity import build_connectivity_graph, cross_section_oracle, edge_census, fox_decision
from .heegaard import NotATree, ReimbeddingPlan, plan_reimbedding, verify_plan
from .knots import WordError, enumerate_words, parse_word, report, valid_prefixes
from .leveled import (
    AMBIENTS,
    LeveledGraphError,
    check_unknotted,
    complement_structure,
    dump_lg,
    extract_leveled_graph,
    parse_lg,
)
from .sweep import ParseError, SimulationError, parse_presentation, random_presentation, simulate

EXIT_OK, EXIT_PARSE, EXIT_SIMULATION, EXIT_PRECONDITION = 0, 1, 2, 3
CASE_STRIDE = 1_000_003


class Precondition(Exception):
    """A well-formed input that the requested operation does not apply to."""


def case_rng(seed: int, i: int) -> random.Random:
    """The generator for case ``i`` of a seeded run."""
    return random.Random(seed * CASE_STRIDE + i)


# -- input helpers ------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _name(path: str) -> str:
    return "stdin" if path == "-" else Path(path).stem


def _trace(path: str):
    p = parse_presentation(_read(path), _name(path))
    return simulate(p)


def _json_file(path: str) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc


# -- subcommands --------------------------------------------------------------
# each returns (name, result) where result is a dict, or text for dot/csv/svg/lg


def cmd_validate(args):
    trace = _trace(args.file)
    result = {
        "events": len(trace),
        "census": list(trace.census),
        "classes": [c.as_dict() for c in trace.classes],
        "cut_levels": list(trace.cut_ordinals),
    }
    return _name(args.file), result


def cmd_connectivity(args):
    trace = _trace(args.file)
    graph = build_connectivity_graph(trace)
    if args.format == "dot":
        return _name(args.file), graph.to_dot(_name(args.file))
    result = graph.as_dict()
    result["edge_census"] = {str(k): {"found": f, "expected": e} for k, (f, e) in edge_census(trace, graph).items()}
    return _name(args.file), result


def cmd_fox(args):
    return _name(args.file), fox_decision(_trace(args.file)).as_dict()


def _oracle_case(job):
    seed, i, max_events = job
    p = random_presentation(case_rng(seed, i), max_events, name=f"random-{i}")
    trace = simulate(p)
    violations = [v for s in trace.states for v in s.violations()]
    oracle = cross_section_oracle(trace)
    return {"case": p.name, "events": len(p), "state_violations": len(violations), "oracle": oracle.passed}


def cmd_oracle(args):
    cases = []
    for path in args.files:
        trace = _trace(path)
        violations = [v for s in trace.states for v in s.violations()]
        cases.append(
            {"case": _name(path), "events": len(trace), "state_violations": len(violations), "oracle": cross_section_oracle(trace).passed}
        )
    jobs = [(args.seed, i, args.max_events) for i in range(args.random)]
    cases += _map(_oracle_case, jobs, args.jobs)
    failures = [c for c in cases if c["state_violations"] or not c["oracle"]]
    name = "+".join(_name(p) for p in args.files) or "random"
    return name, {"cases": len(cases), "passed": not failures, "failures": failures}


def _map(fn, jobs, workers: int):
    """Ordered map; results do not depend on the number of workers."""
    if workers <= 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def _words(args) -> list:
    if args.word:
        return [parse_word(w) for w in args.word]
    if args.file:
        return [parse_word(line) for line in _read(args.file).splitlines() if line.strip()]
    raise Precondition("give --word or --file")


def _word_reports(args):
    out = []
    for w in _words(args):
        r = report(w)
        if not getattr(args, "check_formula", True):
            r = {k: r[k] for k in ("word", "width", "thick", "thin")}
        out.append(r)
    return out


def cmd_width(args):
    reports = _word_reports(args)
    name = _name(args.file) if args.file else "words"
    if args.format == "csv":
        return name, _csv(reports)
    return name, reports[0] if len(reports) == 1 else {"words": reports}


cmd_thickthin = cmd_width


def _enumerate_prefix(job):
    n, prefix = job
    rows = []
    for w in enumerate_words(n, prefix):
        r = report(w)
        rows.append(r)
    return rows


def cmd_enumerate(args):
    events = range(2, args.events + 1, 2) if args.all_lengths else [args.events]
    rows = []
    for n in events:
        if args.jobs > 1 and n >= 8:
            prefixes = valid_prefixes(n, min(n // 2, 8))
        else:
            prefixes = [""]
        for chunk in _map(_enumerate_prefix, [(n, p) for p in prefixes], args.jobs):
            rows.extend(chunk)
    rows.sort(key=lambda r: (len(r["word"]), r["word"].replace("m", "0").replace("M", "1")))
    if args.format == "csv":
        return "enumerate", _csv(rows)
    counts = {}
    for r in rows:
        counts[str(len(r["word"]))] = counts.get(str(len(r["word"])), 0) + 1
    result = {
        "max_events": args.events,
        "counts": counts,
        "words": len(rows),
        "all_agree": all(r["agree"] for r in rows),
        "disagreements": [r for r in rows if not r["agree"]],
    }
    return "enumerate", result


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["word", "width", "thick", "thin", "formula", "agree"][: len(rows[0]) if rows else 6])
    for r in rows:
        writer.writerow([" ".join(map(str, v)) if isinstance(v, list) else v for v in r.values()])
    return buf.getvalue()


def cmd_extract(args):
    trace = _trace(args.file)
    try:
        g = extract_leveled_graph(trace, (args.lo, args.hi), args.face)
    except LeveledGraphError as exc:
        raise Precondition(str(exc)) from exc
    if args.format == "lg":
        return _name(args.file), dump_lg(g)
    return _name(args.file), {"interval": [args.lo, args.hi], "face": args.face, "graph": g.as_dict()}


def _lg(path: str):
    return parse_lg(_read(path))


def cmd_certify(args):
    g = _lg(args.file)
    cert = check_unknotted(g)
    return _name(args.file), {"verdict": cert.rule, "certified": cert.certified, "certificate": cert.as_dict()}


def cmd_complement(args):
    g = _lg(args.file)
    try:
        return _name(args.file), complement_structure(g, args.ambient).as_dict()
    except LeveledGraphError as exc:
        raise Precondition(str(exc)) from exc


def _embeddings(path: str):
    return embed_components(parse_bg(_read(path)))


def cmd_embed(args):
    embs = _embeddings(args.file)
    if args.format == "svg":
        return _name(args.file), to_svg(embs)
    return _name(args.file), {"components": [e.as_dict() for e in embs]}


def cmd_flatten(args):
    embs = _embeddings(args.file)
    return _name(args.file), {"schedules": [flatten(e).as_dict() for e in embs]}


def cmd_replay(args):
    embs = _embeddings(args.file)
    if args.schedule:
        data = _json_file(args.schedule)
        data = data.get("result", data)
        try:
            schedules = [SlideSchedule.from_dict(d) for d in data["schedules"]]
        except (KeyError, TypeError, ValueError, BipartiteError) as exc:
            raise ParseError(f"{args.schedule}: not a schedule file ({exc})") from exc
    else:
        schedules = [flatten(e) for e in embs]
    if len(schedules) != len(embs):
        raise Precondition(f"{len(schedules)} schedules for {len(embs)} components")
    reports = [replay(e, s).as_dict() for e, s in zip(embs, schedules)]
    return _name(args.file), {"passed": all(r["passed"] for r in reports), "components": reports}


def cmd_plan(args):
    trace = _trace(args.file)
    plan = plan_reimbedding(trace)
    return _name(args.file), plan.as_dict()


def cmd_verify_plan(args):
    trace = _trace(args.file)
    data = _json_file(args.plan)
    data = data.get("result", data)
    try:
        plan = ReimbeddingPlan.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{args.plan}: not a plan file ({exc})") from exc
    return _name(args.file), verify_plan(trace, plan).as_dict()


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "csv", "svg", "lg"), default="json")
    common.add_argument("--out", help="write the report here instead of standard output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs (recorded in the report)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration and oracle runs")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ppt", description="Planar presentations of 3-manifolds.")
    parser.add_argument("--version", action="version", version=f"ppt {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, formats=("json",)):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(fn=fn, formats=formats)
        return p

    add("validate", cmd_validate, "parse and simulate a .pp presentation").add_argument("file")
    add("connectivity", cmd_connectivity, "connectivity graph (JSON or DOT)", ("json", "dot")).add_argument("file")
    add("fox", cmd_fox, "tree criterion with a witness edge").add_argument("file")
    p = add("oracle", cmd_oracle, "cross-section oracle on files and seeded random presentations")
    p.add_argument("files", nargs="*")
    p.add_argument("--random", type=int, default=0, help="number of random presentations")
    p.add_argument("--max-events", type=int, default=30)
    for name in ("width", "thickthin"):
        p = add(name, cmd_width, "knot width of m/M words", ("json", "csv"))
        p.add_argument("--word", action="append")
        p.add_argument("--file")
        if name == "width":
            p.add_argument("--check-formula", action="store_true")
    p = add("enumerate", cmd_enumerate, "all valid words of a length", ("json", "csv"))
    p.add_argument("--events", type=int, required=True)
    p.add_argument("--all-lengths", action="store_true", help="include every shorter even length")
    p = add("extract", cmd_extract, "leveled graph of a face over nested events", ("json", "lg"))
    p.add_argument("file")
    p.add_argument("--interval", nargs=2, type=int, metavar=("LO", "HI"), required=True)
    p.add_argument("--face", required=True)
    add("certify", cmd_certify, "unknottedness certificate for a .lg graph").add_argument("file")
    p = add("complement", cmd_complement, "handlebody structure of a certified graph complement")
    p.add_argument("file")
    p.add_argument("--ambient", choices=AMBIENTS, default="ball")
    add("embed", cmd_embed, "layered embedding of a .bg graph", ("json", "svg")).add_argument("file")
    add("flatten", cmd_flatten, "slide schedule flattening the embedding").add_argument("file")
    p = add("replay", cmd_replay, "replay a slide schedule independently")
    p.add_argument("file")
    p.add_argument("--schedule", help="schedule JSON (default: recompute with flatten)")
    add("plan", cmd_plan, "re-embedding plan over a connectivity tree").add_argument("file")
    p = add("verify-plan", cmd_verify_plan, "audit a plan against its presentation")
    p.add_argument("file")
    p.add_argument("plan")
    return parser


def _render(args, name: str, result) -> str:
    if isinstance(result, str):
        return result
    envelope = {"command": args.command, "name": name, "seed": args.seed, "version": __version__}
    envelope.update(result)
    return json.dumps(envelope, indent=2, default=_default) + "\n"


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format not in args.formats:
        parser.error(f"{args.command} supports --format {', '.join(args.formats)}")
    if getattr(args, "interval", None):
        args.lo, args.hi = args.interval
    try:
        name, result = args.fn(args)
    except NotATree as exc:
        print(f"NotATree: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Precondition as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SimulationError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return EXIT_SIMULATION
    except (ParseError, LeveledGraphError, BipartiteError, WordError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = _render(args, name, result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())
