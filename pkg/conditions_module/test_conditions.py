from collections import Counter

import pytest

from bitgraph_module.bitgraph import BitMultigraph, Edge, Part, with_edges
from bitgraph_module.fold import crossword_multigraph
from bitgraph_module.index import EdgeLabel, Index
from conditions_module.conditions import (
    NEEDS_SQUARENESS,
    ConditionId,
    Verdict,
    answer_lengths,
    check_all,
    check_c1_squareness,
    check_c2_word_length,
    check_c3_connectivity,
    check_c4_count,
    check_c5a,
    check_c5b,
    check_c5c_no_doubles,
    check_c5d_blue_above_red,
    check_c5e_purple_between,
    check_c5f_maximal_same_label,
    check_c5g_blue_sweep,
    check_c5h_red_sweep,
    check_c5i_purple_sweep,
    count_target,
    recheck,
    render_report,
    sweep,
    triangular,
)
from conditions_module.registry import CONDITION_REGISTRY, register_condition
from enumeration_module.masks import enumerate_masks, sample_valid_grids
from grid_module.grid import Coord, Grid
from network_module.licn import build_licn, fundamental_graph
from voiding_module.voiding import unvoided_graph, voided_from_grid


I = Index.parse
PLUS, ZERO, MINUS = EdgeLabel.PLUS, EdgeLabel.ZERO, EdgeLabel.MINUS


def graph(a, b, edges):
    return BitMultigraph(
        part_a=tuple(I(v) for v in a),
        part_b=tuple(I(v) for v in b),
        edges=tuple(Edge(I(x), I(y), label) for x, y, label in edges),
    )


def failed(result):
    return result.verdict is Verdict.FAIL


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_template_passes_everything(n):
    report = check_all(unvoided_graph(n))
    assert report.passed, report.failures()
    assert report.n == n


def test_registry_is_complete():
    assert set(CONDITION_REGISTRY) == set(ConditionId)


def test_duplicate_registration_rejected():
    with pytest.raises(ValueError):

        @register_condition(ConditionId.C3_CONNECTIVITY)
        def again(g, n=None):
            return None


@pytest.mark.parametrize("n", range(8))
def test_count_target_is_triangular(n):
    assert count_target(n) == triangular(2 * n + 1) + 1


def test_squareness_failure_makes_floor_checks_not_applicable():
    g = graph(["0", "1"], ["0", "2"], [("0", "0", ZERO)])
    assert failed(check_c1_squareness(g))
    report = check_all(g)
    assert ConditionId.C1_SQUARENESS in report.failures()
    for cid in NEEDS_SQUARENESS:
        assert report.verdicts[cid].verdict is Verdict.NOT_APPLICABLE


def test_answer_lengths_of_grids():
    lengths = answer_lengths(unvoided_graph(1))
    assert sorted(lengths.values()) == [3, 3, 3, 3]

    g = Grid.from_voids(2, [Coord(2, 2)], symmetric=True)
    lengths = answer_lengths(crossword_multigraph(fundamental_graph(build_licn(g))))
    assert sorted(v for (p, _), v in lengths.items() if p is Part.A) == [4, 5, 5]
    assert sorted(v for (p, _), v in lengths.items() if p is Part.B) == [4, 5, 5]


def test_word_length_centre_answer():
    result = check_c2_word_length(unvoided_graph(1))
    assert result.ok
    # the centre answer of the 3x3 grid has degree 2
    assert result.details["literal_degree_passed"] is False


def test_word_length_fails_on_split_centre_row():
    g = voided_from_grid(Grid.from_voids(2, [Coord(0, 0)]))
    result = check_c2_word_length(g)
    assert failed(result)
    assert "length 2" in result.witness
    assert ConditionId.C2_WORD_LENGTH in check_all(g).failures()


def test_connectivity():
    assert check_c3_connectivity(unvoided_graph(2)).ok
    g = graph(["0", "1"], ["0", "1"], [("0", "0", ZERO), ("1", "1", PLUS)])
    result = check_c3_connectivity(g)
    assert failed(result)
    assert result.details["components"] == 2
    assert failed(check_c3_connectivity(graph(["0"], ["0"], [])))


def test_count_condition():
    g = unvoided_graph(2)
    assert check_c4_count(g).details["value"] == 16
    short = with_edges(g, g.edges[1:])
    result = check_c4_count(short)
    assert failed(result)
    assert result.witness == "e + k = 15, expected 16"


def test_zero_floor_edge_count():
    g = unvoided_graph(2)
    short = with_edges(g, (e for e in g.edges if e.cell != Coord(1, 0)))
    assert failed(check_c5a(short))
    assert check_c5a(g).ok


def test_nonzero_floor_edge_count():
    g = unvoided_graph(2)
    short = with_edges(g, (e for e in g.edges if e.cell != Coord(1, 1)))
    result = check_c5b(short)
    assert failed(result)
    assert "expected 2n - l + 2" in result.witness


def test_no_doubles():
    g = graph(["0", "1.0", "1.1"], ["0", "1"], [("1.0", "1", PLUS), ("1.1", "1", PLUS)])
    assert failed(check_c5c_no_doubles(g))
    assert check_c5c_no_doubles(unvoided_graph(3)).ok


def test_blue_above_red():
    g = graph(["0", "1.0", "1.1"], ["0", "1"], [("1.0", "1", PLUS), ("1.1", "1", MINUS)])
    assert failed(check_c5d_blue_above_red(g))
    swapped = graph(["0", "1.0", "1.1"], ["0", "1"], [("1.0", "1", MINUS), ("1.1", "1", PLUS)])
    assert check_c5d_blue_above_red(swapped).ok


def test_purple_in_between():
    g = graph(["0", "1"], ["0", "1"], [("1", "1", PLUS), ("1", "1", MINUS)])
    result = check_c5e_purple_between(g)
    assert failed(result)
    assert "A:1" in result.witness


def test_maximal_same_label():
    g = graph(["0", "1.0", "1.1"], ["0", "1"], [("1.0", "1", PLUS)])
    assert failed(check_c5f_maximal_same_label(g))
    moved = graph(["0", "1.0", "1.1"], ["0", "1"], [("1.1", "1", PLUS)])
    assert check_c5f_maximal_same_label(moved).ok


def test_sweep_on_template():
    outcome = sweep(unvoided_graph(2), Part.A, 2, PLUS, 2, highest_first=True)
    assert outcome.passed
    assert outcome.gaps == [0]


def test_blue_sweep_failure():
    g = graph(["0", "1", "2.0", "2.1"], ["0", "1", "2"], [("2.1", "1", PLUS), ("2.0", "2", PLUS)])
    result = check_c5g_blue_sweep(g)
    assert failed(result)
    assert result.details["interval_passed"] is False
    assert result.details["no_crossing_passed"] is False


def test_red_sweep_failure():
    g = graph(["0", "1.0", "1.1", "2"], ["0", "1", "2"], [("1.0", "1", MINUS), ("1.1", "2", MINUS)])
    assert failed(check_c5h_red_sweep(g))


def test_purple_zero_pair_must_use_minimal_member():
    g = graph(["0.0", "0.1", "1"], ["0", "1"], [("0.1", "0", ZERO)])
    result = check_c5i_purple_sweep(g)
    assert failed(result)
    assert result.details["zero_pair_minimal_passed"] is False


def test_sweep_gaps_reported():
    g = voided_from_grid(Grid.from_voids(2, [Coord(2, 2)], symmetric=True))
    report = check_all(g)
    assert report.passed
    assert all(isinstance(v, list) for v in report.sweep_gaps.values())


def test_summary_and_text():
    report = check_all(unvoided_graph(1))
    summary = report.to_summary()
    assert set(summary) == {cid.value for cid in ConditionId}
    assert summary["C1_Squareness"]["verdict"] == "pass"
    text = render_report(report)
    assert text.splitlines()[0] == "n = 1"
    assert text.endswith("overall: pass")


def test_voided_valid_grids_pass(valid_grids_n2):
    for g in valid_grids_n2:
        report = check_all(voided_from_grid(g), 2)
        assert report.passed, (g.voids(), report.failures())


def test_sampled_valid_grids_pass_n3():
    masks, _ = sample_valid_grids(3, 20, seed=7, density=0.1)
    for mask in masks:
        assert check_all(voided_from_grid(mask.to_grid()), 3).passed, mask.bits


FAILING_GRAPHS = [
    graph(["0", "1"], ["0", "2"], [("0", "0", ZERO)]),
    graph(["0"], ["0"], []),
    graph(["0", "1"], ["0", "1"], [("0", "0", ZERO), ("1", "1", PLUS)]),
    graph(["0", "1.0", "1.1"], ["0", "1"], [("1.0", "1", PLUS), ("1.1", "1", PLUS)]),
    graph(["0", "1.0", "1.1"], ["0", "1"], [("1.0", "1", PLUS), ("1.1", "1", MINUS)]),
    graph(["0", "1"], ["0", "1"], [("1", "1", PLUS), ("1", "1", MINUS)]),
    graph(["0", "1.0", "1.1"], ["0", "1"], [("1.0", "1", PLUS)]),
    graph(["0", "1", "2.0", "2.1"], ["0", "1", "2"], [("2.1", "1", PLUS), ("2.0", "2", PLUS)]),
    graph(["0", "1.0", "1.1", "2"], ["0", "1", "2"], [("1.0", "1", MINUS), ("1.1", "2", MINUS)]),
    graph(["0.0", "0.1", "1"], ["0", "1"], [("0.1", "0", ZERO)]),
]


@pytest.mark.parametrize("g", FAILING_GRAPHS)
def test_failure_sites_recheck_on_small_graphs(g):
    report = check_all(g)
    assert report.failures()
    for cid in report.failures():
        result = report.verdicts[cid]
        assert result.locus is not None, cid
        again = recheck(g, result, report.n)
        assert again.verdict is Verdict.FAIL, cid
        assert again.witness == result.witness


@pytest.mark.parametrize("n", [1, 2])
def test_failure_sites_recheck_on_void_masks(n, masks_n2):
    masks = list(enumerate_masks(1)) if n == 1 else masks_n2[::5]
    rechecked = Counter()
    for mask in masks:
        g = voided_from_grid(mask.to_grid())
        report = check_all(g, n)
        for cid in report.failures():
            result = report.verdicts[cid]
            again = recheck(g, result, n)
            assert again.verdict is Verdict.FAIL, (mask.bits, cid)
            assert again.witness == result.witness, (mask.bits, cid)
            rechecked[cid] += 1
    assert sum(rechecked.values()) > 0


def test_recheck_sees_repaired_graph():
    g = graph(["0", "1"], ["0", "1"], [("1", "1", PLUS), ("1", "1", MINUS)])
    result = check_c5e_purple_between(g)
    assert [str(v) for v in result.locus.vertices] == ["A:1"]
    repaired = with_edges(g, g.edges + (Edge(I("1"), I("0"), ZERO),))
    assert recheck(repaired, result).ok


def test_recheck_needs_a_failure_site():
    with pytest.raises(ValueError):
        recheck(unvoided_graph(1), check_c3_connectivity(unvoided_graph(1)))


def test_summary_carries_failure_site():
    g = graph(["0", "1.0", "1.1"], ["0", "1"], [("1.0", "1", PLUS), ("1.1", "1", PLUS)])
    locus = check_all(g).to_summary()["C5c_NoDoubles"]["locus"]
    assert locus == {"floor": 1, "other_floor": 1, "label": "+"}
