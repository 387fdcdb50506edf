"""Acceptance criteria 1-9, one reported line each.

Run with pytest (lines are written straight to the terminal) or directly:
``python3 tests/test_acceptance.py``.
"""
import functools
import itertools
import time
from fractions import Fraction

from planpres.bipartite import (
    connected_bipartite_graphs,
    embed_bipartite,
    flatten,
    parse_bg,
    random_bipartite_graph,
    replay,
)
from planpres.cli import case_rng
from planpres.connectivity import build_connectivity_graph, cross_section_oracle, fox_decision
from planpres.heegaard import NotATree, plan_reimbedding, random_tree_presentation, verify_plan
from planpres.knots import catalan, enumerate_words, parse_word, stack, thick_thin, width, width_formula
from planpres.leveled import UnknotCertificate, candidate_heights, certificate_holds, check_unknotted, parse_lg
from planpres.surfaces import SurfaceIndex
from planpres.sweep import random_presentation, simulate

from support import FIXTURES, PP_FIXTURES, embedding_problems, load, random_graph

SEED = 0
RANDOM_PRESENTATIONS = 10_000
RANDOM_GRAPHS = 1_000
TREE_PRESENTATIONS = 1_000


def report(number: int, ok: bool, detail: str, capsys=None) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


@functools.lru_cache(maxsize=1)
def sweep_corpus():
    """Fixtures plus the seeded random presentations, simulated once."""
    traces = [simulate(load(name)) for name in PP_FIXTURES]
    traces += [simulate(random_presentation(case_rng(SEED, i), 30, name=f"random-{i}")) for i in range(RANDOM_PRESENTATIONS)]
    return traces


# -- 1 ------------------------------------------------------------------------


def check_width_formula():
    t0 = time.perf_counter()
    bad, total, at16 = 0, 0, 0
    for n in range(2, 17, 2):
        for w in enumerate_words(n):
            total += 1
            at16 += n == 16
            bad += width(w) != width_formula(thick_thin(w))
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and at16 == 429 == catalan(7) and elapsed < 5
    return ok, f"{total} words (429 at 16 events), {bad} disagreements, {elapsed:.2f}s (limit 5s)"


def test_criterion_1_width_formula(capsys):
    ok, detail = check_width_formula()
    report(1, ok, detail, capsys)
    assert ok


# -- 2 ------------------------------------------------------------------------


def check_eighteen_event_word():
    w = parse_word("mmmmmMMMmmMMmmMMMM")
    d = thick_thin(w)
    got = (len(w.events), width(w), list(d.thick), list(d.thin), width_formula(d))
    ok = got == (18, 98, [5, 4, 4], [2, 2], 98)
    return ok, f"events {got[0]}, width {got[1]}, thick {got[2]}, thin {got[3]}, formula {got[4]}"


def test_criterion_2_eighteen_event_word(capsys):
    ok, detail = check_eighteen_event_word()
    report(2, ok, detail, capsys)
    assert ok


# -- 3 ------------------------------------------------------------------------


def check_stacking():
    t0 = time.perf_counter()
    words = [w for n in range(2, 11, 2) for w in enumerate_words(n)]
    bad = sum(width(stack(a, b)) != width(a) + width(b) - 2 for a, b in itertools.product(words, repeat=2))
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 10
    return ok, f"{len(words) ** 2} pairs, {bad} failures, {elapsed:.2f}s (limit 10s)"


def test_criterion_3_stacking(capsys):
    ok, detail = check_stacking()
    report(3, ok, detail, capsys)
    assert ok


# -- 4 ------------------------------------------------------------------------


def check_sweep_invariants():
    traces = sweep_corpus()
    state_bad = saddle_bad = 0
    for trace in traces:
        state_bad += sum(bool(s.violations()) for s in trace.states)
        for k, _, before, after, cls in trace.steps():
            if cls.is_saddle:
                diff = abs(len(after.in_faces) - len(before.in_faces))
                saddle_bad += diff != (cls.nesting == "unnested")
    ok = state_bad == 0 and saddle_bad == 0
    return ok, f"{len(traces)} presentations, {state_bad} bad states, {saddle_bad} saddle/census mismatches"


def test_criterion_4_sweep_invariants(capsys):
    ok, detail = check_sweep_invariants()
    report(4, ok, detail, capsys)
    assert ok


# -- 5 ------------------------------------------------------------------------


def check_oracle():
    traces = sweep_corpus()
    failed = [t.presentation.name for t in traces if not cross_section_oracle(t).passed]
    ok = not failed
    return ok, f"{len(traces)} presentations, {len(failed)} oracle disagreements"


def test_criterion_5_oracle(capsys):
    ok, detail = check_oracle()
    report(5, ok, detail, capsys)
    assert ok


# -- 6 ------------------------------------------------------------------------


def isomorphic(graph, n, edges) -> bool:
    """Brute-force isomorphism with a target graph on vertices 0..n-1."""
    if len(graph.vertices) != n or len(graph.edges) != len(edges):
        return False
    ids = [v.id for v in graph.vertices]
    want = sorted(tuple(sorted(e)) for e in edges)
    for perm in itertools.permutations(range(n)):
        relabel = dict(zip(ids, perm))
        got = sorted(tuple(sorted((relabel[e.below], relabel[e.above]))) for e in graph.edges)
        if got == want:
            return True
    return False


def check_connectivity_fixtures():
    results = {}
    g = build_connectivity_graph(simulate(load("donut_flat")))
    results["donut_flat"] = isomorphic(g, 1, []) and fox_decision(g).verdict == "yes"
    g = build_connectivity_graph(simulate(load("two_balls")))
    results["two_balls"] = isomorphic(g, 4, [(0, 1), (1, 2), (2, 3)]) and fox_decision(g).verdict == "yes"
    g = build_connectivity_graph(simulate(load("donut_vertical")))
    d = fox_decision(g)
    results["donut_vertical"] = (
        isomorphic(g, 4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        and d.verdict == "no"
        and len(g.components(skip=d.witness["edge"])) == len(g.components())
    )
    ok = all(results.values())
    return ok, ", ".join(f"{k} {'ok' if v else 'WRONG'}" for k, v in results.items())


def test_criterion_6_connectivity_fixtures(capsys):
    ok, detail = check_connectivity_fixtures()
    report(6, ok, detail, capsys)
    assert ok


# -- 7 ------------------------------------------------------------------------


def _embed_and_flatten(g) -> bool:
    emb = embed_bipartite(g)
    if embedding_problems(g, emb):
        return False
    r = replay(emb, flatten(emb))
    return r.passed and r.tiny_circles == len(g.edges) - g.vertex_count + 1


def check_bipartite():
    t0 = time.perf_counter()
    exhaustive = list(connected_bipartite_graphs(12))
    bad = sum(not _embed_and_flatten(g) for g in exhaustive)
    randoms = [random_bipartite_graph(case_rng(SEED, i)) for i in range(RANDOM_GRAPHS)]
    bad += sum(not _embed_and_flatten(g) for g in randoms)
    k33 = parse_bg((FIXTURES / "k33.bg").read_text())
    k33_emb = embed_bipartite(k33)
    k33_tiny = replay(k33_emb, flatten(k33_emb)).tiny_circles
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and k33_tiny == 4 and elapsed < 60
    return ok, (
        f"{len(exhaustive)} exhaustive + {len(randoms)} random graphs, {bad} failures, "
        f"K3,3 tiny circles {k33_tiny}, {elapsed:.1f}s (limit 60s)"
    )


def test_criterion_7_bipartite(capsys):
    ok, detail = check_bipartite()
    report(7, ok, detail, capsys)
    assert ok


# -- 8 ------------------------------------------------------------------------


def _plan_ok(trace) -> tuple[bool, str | None]:
    """Plan exactly when the connectivity graph is a tree, and audit it."""
    tree = fox_decision(trace).verdict == "yes"
    try:
        plan = plan_reimbedding(trace)
    except NotATree:
        return not tree, None if not tree else "refused a tree"
    if not tree:
        return False, "planned a non-tree"
    r = verify_plan(trace, plan)
    saddles = sorted(k for k in trace.cut_ordinals if trace.cls(k).is_saddle)
    covered = sorted(s.saddle for s in plan.steps() if s.saddle is not None)
    if not r.passed or covered != saddles:
        return False, (r.failures or ["saddle coverage"])[0]
    comps, _ = SurfaceIndex(trace).components({(f, g) for g in range(1, len(trace)) for f in trace.states[g].in_faces})
    if len(comps) == 1:
        extrema = sum(not c.is_saddle for c in trace.classes)
        saddle_count = len(trace) - extrema
        if Fraction(2 - (extrema - saddle_count), 2) != plan.terminal.total_genus:
            return False, "terminal genus"
    return True, None


def check_planner():
    failures = []
    genera = {}
    for name in PP_FIXTURES:
        trace = simulate(load(name))
        ok, why = _plan_ok(trace)
        if not ok:
            failures.append(f"{name}: {why}")
        if fox_decision(trace).verdict == "yes":
            genera[name] = plan_reimbedding(trace).terminal.total_genus
    rng_trees = 0
    rejected = 0
    for i in range(TREE_PRESENTATIONS):
        rng = case_rng(SEED, i)
        p = random_tree_presentation(rng, 30, name=f"tree-{i}")
        rng_trees += 1
        ok, why = _plan_ok(simulate(p))
        if not ok:
            failures.append(f"{p.name}: {why}")
    # presentations whose graph has a cycle must be refused
    for i in range(TREE_PRESENTATIONS):
        trace = simulate(random_presentation(case_rng(SEED + 1, i), 30))
        if fox_decision(trace).verdict == "no":
            rejected += 1
            ok, why = _plan_ok(trace)
            if not ok:
                failures.append(f"cycle-{i}: {why}")
    ok = not failures and genera.get("donut_flat") == 1 and genera.get("two_balls") == 0
    detail = (
        f"{len(PP_FIXTURES)} fixtures + {rng_trees} tree presentations planned and audited, "
        f"{rejected} non-trees refused, genus donut_flat {genera.get('donut_flat')} two_balls {genera.get('two_balls')}, "
        f"{len(failures)} failures"
    )
    if failures:
        detail += f" (first: {failures[0]})"
    return ok, detail


def test_criterion_8_planner(capsys):
    ok, detail = check_planner()
    report(8, ok, detail, capsys)
    assert ok


# -- 9 ------------------------------------------------------------------------


def check_certificates():
    verdicts = {}
    for name in ("lambda_only", "lambda_below_y", "y_below_lambda"):
        verdicts[name] = check_unknotted(parse_lg((FIXTURES / f"{name}.lg").read_text())).rule
    expected = {"lambda_only": "Ex3.6", "lambda_below_y": "Ex3.7", "y_below_lambda": "unknown"}
    flat = broken = 0
    for i in range(2_000):
        g = random_graph(case_rng(SEED, i))
        if check_unknotted(g).rule != "Ex3.6":
            continue
        flat += 1
        mids = candidate_heights(g)
        broken += not any(certificate_holds(g, UnknotCertificate("Ex3.7", t)) for t in mids)
    ok = verdicts == expected and broken == 0 and flat > 0
    return ok, f"verdicts {list(verdicts.values())}, subsumption {flat - broken}/{flat} Y-free graphs"


def test_criterion_9_certificates(capsys):
    ok, detail = check_certificates()
    report(9, ok, detail, capsys)
    assert ok


CHECKS = [
    check_width_formula,
    check_eighteen_event_word,
    check_stacking,
    check_sweep_invariants,
    check_oracle,
    check_connectivity_fixtures,
    check_bipartite,
    check_planner,
    check_certificates,
]


if __name__ == "__main__":
    results = []
    for number, check in enumerate(CHECKS, 1):
        ok, detail = check()
        report(number, ok, detail)
        results.append(ok)
    raise SystemExit(0 if all(results) else 1)
