"""Tests for minimal resolutions and Ext charts."""

from __future__ import annotations

import pytest

from oracles import oracle_ext_a1
from steen.catalogue import get_module
from steen.milnor import an, full_a
from steen.module import FiniteModule, trivial_module
from steen.resolution import (
    dump_resolution,
    emit_chart,
    ext_chart,
    minimal_resolution,
    resolution_checks,
)

# dot data of the classical mod-2 Adams E_2 chart for the sphere,
# {(s, stem): rank} complete for s <= 12 and stem <= 20
SPHERE_RANKS = {
    (0, 0): 1,
    (1, 0): 1, (1, 1): 1, (1, 3): 1, (1, 7): 1, (1, 15): 1,
    (2, 0): 1, (2, 2): 1, (2, 3): 1, (2, 6): 1, (2, 7): 1, (2, 8): 1,
    (2, 14): 1, (2, 15): 1, (2, 16): 1, (2, 18): 1,
    (3, 0): 1, (3, 3): 1, (3, 7): 1, (3, 8): 1, (3, 9): 1, (3, 14): 1,
    (3, 15): 1, (3, 17): 1, (3, 18): 1, (3, 19): 1,
    (4, 0): 1, (4, 7): 1, (4, 9): 1, (4, 14): 1, (4, 15): 1, (4, 17): 1,
    (4, 18): 2, (4, 20): 1,
    (5, 0): 1, (5, 9): 1, (5, 11): 1, (5, 14): 1, (5, 15): 2, (5, 17): 1,
    (5, 18): 1, (5, 20): 1,
    (6, 0): 1, (6, 10): 1, (6, 11): 1, (6, 14): 1, (6, 15): 1, (6, 16): 1,
    (6, 17): 1, (6, 20): 1,
    (7, 0): 1, (7, 11): 1, (7, 15): 1, (7, 16): 1, (7, 17): 1,
    (8, 0): 1, (8, 15): 1, (8, 17): 1,
    (9, 0): 1, (9, 17): 1, (9, 19): 1,
    (10, 0): 1, (10, 18): 1, (10, 19): 1,
    (11, 0): 1, (11, 19): 1,
    (12, 0): 1,
}


def sphere(algebra, name="S"):
    return trivial_module(algebra, name=name)


def test_presentation_degrees():
    R = minimal_resolution(an(1), get_module("joker"), 1, 10)
    assert R.degrees[1] == [3]
    R2 = minimal_resolution(an(2), get_module("joker(2)"), 1, 12)
    assert R2.degrees[1] == [1, 3, 6]
    R3 = minimal_resolution(an(3), get_module("joker(3)"), 1, 14)
    assert R3.degrees[1] == [1, 2, 6, 12]


def test_full_algebra_first_relation():
    R = minimal_resolution(full_a(8), sphere(full_a(8)), 1, 1)
    assert R.degrees[0] == [0]
    assert R.degrees[1] == [1]


def test_restriction_route():
    R = minimal_resolution(an(1), get_module("joker0"), 1, 10)
    assert R.degrees[1] == [3]


def test_resource_guards():
    S = sphere(an(1))
    with pytest.raises(ValueError):
        minimal_resolution(an(1), S, 17, 10)
    with pytest.raises(ValueError):
        minimal_resolution(an(1), S, 2, 41)
    with pytest.raises(ValueError):
        minimal_resolution(full_a(10), get_module("joker"), 1, 10)


def test_rejects_invalid_module():
    # Sq^1 Sq^1 = 0 is violated, so validation must fail
    bad = FiniteModule(
        "bad", an(1), ("a", "b", "c"), (0, 1, 2), {1: (2, 4, 0), 2: (4, 0, 0)}
    )
    with pytest.raises(ValueError):
        minimal_resolution(an(1), bad, 1, 6)


def test_differentials_compose_to_zero():
    for R in (
        minimal_resolution(an(1), get_module("joker"), 4, 14),
        minimal_resolution(an(1), sphere(an(1)), 6, 14),
        minimal_resolution(full_a(12), sphere(full_a(12)), 4, 12),
        minimal_resolution(an(2), get_module("joker(2)"), 3, 16),
    ):
        assert resolution_checks(R) == []


def test_rank_stability():
    small = minimal_resolution(an(1), sphere(an(1)), 5, 10)
    large = minimal_resolution(an(1), sphere(an(1)), 5, 14)
    for s in range(6):
        for t in range(11):
            assert small.rank(s, t) == large.rank(s, t)


def test_a1_sphere_matches_bar_oracle():
    R = minimal_resolution(an(1), sphere(an(1)), 6, 14)
    for s in range(7):
        for t in range(s + 9):
            assert R.rank(s, t) == oracle_ext_a1(s, t), (s, t)


def test_a1_sphere_is_the_ko_pattern():
    R = minimal_resolution(an(1), sphere(an(1)), 6, 14)
    expected = {(s, 0) for s in range(7)}
    expected |= {(1, 1), (2, 2)}
    expected |= {(s, 4) for s in range(3, 7)}
    expected |= {(s, 8) for s in range(4, 7)}
    got = {
        (s, t - s)
        for s in range(7)
        for t in range(15)
        if R.rank(s, t) and t - s <= 8
    }
    assert got == expected
    assert all(R.rank(s, s) == 1 for s in range(7))


def test_sphere_chart_matches_golden_dots():
    R = minimal_resolution(full_a(32), sphere(full_a(40)), 12, 32)
    C = ext_chart(R)
    window = {
        (s, t - s): r for (s, t), r in C.ranks.items() if 0 <= t - s <= 20
    }
    assert window == SPHERE_RANKS


def test_h_lines_connect_adjacent_dots():
    R = minimal_resolution(an(1), sphere(an(1)), 6, 14)
    C = ext_chart(R)
    assert (0, (0, 0, 0), (1, 1, 0)) in C.h_lines
    assert (1, (0, 0, 0), (1, 2, 0)) in C.h_lines
    for i, (s1, t1, i1), (s2, t2, i2) in C.h_lines:
        assert s2 == s1 + 1
        assert t2 == t1 + (1 << i)
        assert i1 < C.ranks[(s1, t1)]
        assert i2 < C.ranks[(s2, t2)]


def test_whiskered_dual_detects_two_classes():
    R = minimal_resolution(an(1), get_module("jokerPP1"), 0, 10)
    C = ext_chart(R)
    assert C.ranks == {(0, 0): 1, (0, 1): 1}


def test_chart_text_golden():
    R = minimal_resolution(an(1), get_module("joker"), 2, 10)
    text = emit_chart(ext_chart(R), "text").decode()
    assert text == (
        "      0   1   2   3   4   5   6   7   8\n"
        "  2   .   .   1   .   .   .   1   .   .\n"
        "  1   .   .   1   .   .   .   .   .   .\n"
        "  0   1   .   .   .   .   .   .   .   .\n"
    )


def test_chart_svg_golden():
    R = minimal_resolution(an(1), get_module("joker"), 2, 10)
    C = ext_chart(R)
    svg = emit_chart(C, "svg")
    assert svg == emit_chart(C, "svg")
    assert svg.decode() == (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-10 -50 190 60">\n'
        '<g stroke="black" fill="black">\n'
        '<line x1="40" y1="-20" x2="40" y2="-40"/>\n'
        '<circle cx="0" cy="0" r="3"/>\n'
        '<circle cx="40" cy="-20" r="3"/>\n'
        '<circle cx="40" cy="-40" r="3"/>\n'
        '<circle cx="120" cy="-40" r="3"/>\n'
        "</g>\n"
        "</svg>\n"
    )


def test_sphere_text_row_marks():
    R = minimal_resolution(full_a(22), sphere(full_a(22)), 2, 22)
    text = emit_chart(ext_chart(R), "text").decode()
    row1 = next(line for line in text.splitlines() if line.startswith("  1"))
    cells = row1[3:]
    marks = [
        i // 4 for i in range(0, len(cells), 4) if cells[i : i + 4].strip() == "1"
    ]
    assert marks == [0, 1, 3, 7, 15]


def test_empty_chart_is_header_only():
    empty = FiniteModule("nothing", an(1), (), (), {})
    R = minimal_resolution(an(1), empty, 3, 8)
    out = emit_chart(ext_chart(R), "text").decode()
    assert out.count("\n") == 1
    assert out.startswith(" ")


def test_unknown_format_rejected():
    R = minimal_resolution(an(1), get_module("joker"), 1, 6)
    with pytest.raises(ValueError):
        emit_chart(ext_chart(R), "png")


def test_dump_format():
    R = minimal_resolution(an(1), get_module("joker"), 2, 10)
    assert dump_resolution(R) == (
        "d 0 g0_0 = x0\n"
        "d 1 g1_0 = Sq(3) g0_0\n"
        "d 2 g2_0 = Sq(1) g1_0\n"
        "d 2 g2_1 = Sq(2,1) g1_0\n"
    )


def test_minimality_no_unit_entries():
    R = minimal_resolution(an(2), get_module("joker(2)"), 3, 16)
    for s in range(1, len(R.degrees)):
        for entry in R.diffs[s]:
            for e in entry.values():
                assert () not in e.monomials
