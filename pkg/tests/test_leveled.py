import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planpres.leveled import (
    LeveledGraphError,
    UnknotCertificate,
    candidate_heights,
    canonical_graph,
    certificate_holds,
    certify_stacked,
    check_unknotted,
    complement_structure,
    dump_lg,
    equivalence_invariants,
    extract_leveled_graph,
    parse_lg,
)
from planpres.sweep import simulate

from support import FIXTURES, load, random_graph


def lg(name):
    return parse_lg((FIXTURES / f"{name}.lg").read_text())


@pytest.mark.parametrize(
    "name, rule",
    [("lambda_only", "Ex3.6"), ("lambda_below_y", "Ex3.7"), ("y_below_lambda", "unknown")],
)
def test_example_verdicts(name, rule):
    g = lg(name)
    cert = check_unknotted(g)
    assert cert.rule == rule
    assert certificate_holds(g, cert) == cert.certified


def test_ex37_split_height():
    assert check_unknotted(lg("lambda_below_y")).split_height == Fraction(1, 2)


def test_flat_solid_torus_extracts_to_fork_below_join():
    g = extract_leveled_graph(simulate(load("donut_flat")), (2, 3), "f1")
    assert [v.id for v in g.y_vertices] == ["Y2"]
    assert [v.id for v in g.lambda_vertices] == ["L3"]
    assert g.chi == 0
    assert dump_lg(g) == dump_lg(lg("y_below_lambda"))


def test_extract_refuses_cut_events():
    with pytest.raises(LeveledGraphError):
        extract_leveled_graph(simulate(load("donut_vertical")), (2, 3), "f1")


def test_stacked_certificate():
    g = lg("lambda_below_y")
    t = Fraction(1, 2)
    upper = check_unknotted(g.above(t))
    cert = certify_stacked(g, t, upper)
    assert cert.rule == "Ex3.8"
    assert certificate_holds(g, cert)
    assert UnknotCertificate.from_dict(cert.as_dict()) == cert


def test_stacked_certificate_refuses_y_below():
    g = lg("y_below_lambda")
    t = Fraction(5, 2)
    with pytest.raises(LeveledGraphError):
        certify_stacked(g, t, check_unknotted(g.above(t)))


def test_forged_certificates_fail():
    g = lg("y_below_lambda")
    assert not certificate_holds(g, UnknotCertificate("Ex3.6"))
    assert not certificate_holds(g, UnknotCertificate("Ex3.7", Fraction(5, 2)))
    assert not certificate_holds(g, UnknotCertificate("unknown"))


def test_round_trip_format():
    for name in ("lambda_only", "lambda_below_y", "y_below_lambda"):
        g = lg(name)
        assert dump_lg(parse_lg(dump_lg(g))) == dump_lg(g)


@pytest.mark.parametrize(
    "text, line",
    [
        ("b 0 boundary-bottom\n", 1),
        ("vertices:\nb zero boundary-bottom\n", 2),
        ("vertices:\nb 0 sideways\n", 2),
        ("vertices:\nb 0 boundary-bottom\nedges:\nb\n", 4),
        ("vertices:\nb 0 boundary-bottom\ncircles: b=x\n", 3),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(LeveledGraphError) as err:
        parse_lg(text)
    assert err.value.line == line


def test_complement_of_certified_graph():
    h = complement_structure(lg("lambda_below_y"), "ball")
    assert h.genera == [3]
    assert h.describe() == "H3"


def test_complement_refuses_unknown():
    with pytest.raises(LeveledGraphError):
        complement_structure(lg("y_below_lambda"))


@pytest.mark.parametrize("ambient, genera, punctured", [("ball", [], [2]), ("sphere", [2], [])])
def test_closed_components(ambient, genera, punctured):
    g = canonical_graph([((), -1)])
    h = complement_structure(g, ambient)
    assert (h.genera, h.punctured) == (genera, punctured)


def test_canonical_graph_matches_invariants():
    g = lg("lambda_below_y")
    recs = g.component_records()
    canon = canonical_graph([(r["boundary"], r["chi"]) for r in recs])
    same, _ = equivalence_invariants(g, canon)
    assert same
    assert check_unknotted(canon).rule == "Ex3.6"


def test_invariants_tell_graphs_apart():
    g = lg("lambda_below_y")
    looped = parse_lg(dump_lg(g) + "circles: l=1\n")
    same, _ = equivalence_invariants(g, looped)
    assert not same


def test_invariants_need_matching_boundaries():
    with pytest.raises(LeveledGraphError):
        equivalence_invariants(lg("lambda_only"), lg("lambda_below_y"))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_ex36_implies_ex37_applies(seed):
    g = random_graph(random.Random(seed))
    cert = check_unknotted(g)
    assert cert.certified == certificate_holds(g, cert)
    if cert.rule == "Ex3.6":
        mids = candidate_heights(g)
        assert any(certificate_holds(g, UnknotCertificate("Ex3.7", t)) for t in mids)
