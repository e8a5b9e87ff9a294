import random
from fractions import Fraction as F

import pytest

from pretzel_surgery.edgepaths import (C_10, C_INF0, C_INF1, INF, SIGN_TRIPLES, TYPES, Edge,
                                       EdgePath, Vertex, build_system, count_type23_slope_values,
                                       edge_color, farey_parents, is_monochromatic,
                                       montesinos_fractions, monotone_path, seifert_system,
                                       slope_table, twist, type1_scan)

V = Vertex.of

# published table, rows by sign triple: (type II, type III); None = not admissible
PUBLISHED = {
    "+++": lambda s: (None, 0),
    "++-": lambda s: (4 * s + 4, 4 * s + 2),
    "+-+": lambda s: (8, 6),
    "+--": lambda s: (4 * s + 8, 4 * s + 8),
    "-++": lambda s: (6, 4),
    "-+-": lambda s: (4 * s + 6, 4 * s + 6),
    "--+": lambda s: (10, 10),
    "---": lambda s: (4 * s + 10, 4 * s + 12),
}


def test_montesinos_fractions():
    assert montesinos_fractions(3) == (F(-1, 2), F(1, 3), F(1, 7))
    assert montesinos_fractions(4)[2] == F(1, 9)
    with pytest.raises(ValueError):
        montesinos_fractions(2)


def test_vertex_coordinates():
    assert (V("1/3").u, V("1/3").v) == (F(2, 3), F(1, 3))
    assert V(2).u == 0
    assert INF.u == -1
    with pytest.raises(ValueError):
        Vertex(2, 4)


@pytest.mark.parametrize("x,up,down", [("1/3", "1/2", 0), ("-1/2", 0, -1), ("1/7", "1/6", 0),
                                       ("3/5", "2/3", "1/2")])
def test_farey_parents(x, up, down):
    v = V(x)
    a, b = farey_parents(v)
    assert (a, b) == (V(up), V(down))
    for w in (a, b):
        assert abs(v.p * w.q - v.q * w.p) == 1 and w.q < v.q


@pytest.mark.parametrize("bad", [V(2), INF])
def test_farey_parents_rejects(bad):
    with pytest.raises(ValueError):
        farey_parents(bad)


def test_monotone_paths():
    down = monotone_path(V("1/7"), "-", "II")
    assert [str(e.b) for e in down.edges] == ["0"]
    up = monotone_path(V("1/7"), "+", "II")
    assert [str(up.start)] + [str(e.b) for e in up.edges] == \
        ["1/7", "1/6", "1/5", "1/4", "1/3", "1/2", "1"]
    three = monotone_path(V("1/3"), "+", "III")
    assert [str(e.b) for e in three.edges] == ["1/2", "1", "inf"]


def test_edge_colors():
    assert edge_color(Edge(V(0), V(1))) == C_10
    assert edge_color(Edge(V(0), INF)) == C_INF0
    assert edge_color(Edge(V(1), INF)) == C_INF1
    with pytest.raises(ValueError):
        Edge(V(0), V(2))


def test_monochromatic_examples():
    # 1/3 -> 1/2 is <odd/odd, odd/even>, 1/2 -> 1 is <odd/even, odd/odd>: both C_inf1
    path = monotone_path(V("1/3"), "+", "II")
    assert {edge_color(e) for e in path.edges} == {C_INF1}
    assert is_monochromatic(path)
    # 1/3 -> 0 is C_inf1 but 0 -> inf is C_inf0
    assert not is_monochromatic(monotone_path(V("1/3"), "-", "III"))
    for s in range(3, 13):
        assert is_monochromatic(seifert_system(s))


def test_twist_conventions():
    assert twist(EdgePath(V("1/7"))) == 0
    assert twist(monotone_path(V("1/7"), "-", "II")) == 2
    assert twist(monotone_path(V("1/7"), "+", "II")) == -12
    # the edge to <inf> carries no twist
    assert twist(monotone_path(V("1/3"), "+", "III")) == -4


def test_path_invariants_enforced():
    with pytest.raises(ValueError):
        EdgePath(V("1/2"), (Edge(V(1), V(0)),))
    with pytest.raises(ValueError):
        EdgePath(V(0), (Edge(V(0), V("1/2")),))
    with pytest.raises(ValueError):
        EdgePath(V("1/3"), (Edge(V("1/3"), V("1/2")), Edge(V("1/2"), V(0))), direction=1)


@pytest.mark.parametrize("s", [3, 7])
def test_seifert_system(s):
    sys = seifert_system(s)
    assert sys.admissible and sys.system_type == "III"
    assert all(p.end == INF for p in sys.paths)
    assert slope_table(s).cell("+++", "III") == 0


@pytest.mark.parametrize("s", range(3, 13))
def test_slope_table_matches_published(s):
    table = slope_table(s)
    for signs in SIGN_TRIPLES:
        for typ, want in zip(TYPES, PUBLISHED[signs](s)):
            assert table.cell(signs, typ) == want, (signs, typ)


def test_slope_table_examples():
    t3 = slope_table(3)
    assert t3.cell("++-", "III") == 14
    assert t3.cell("--+", "II") == t3.cell("--+", "III") == 10
    assert t3.cell("---", "III") == 24
    assert slope_table(5).cell("+-+", "II") == 8
    assert not build_system(3, "+++", "II").admissible


def test_type2_systems_end_sum_zero():
    for signs in SIGN_TRIPLES:
        sys = build_system(4, signs, "II")
        if sys.admissible:
            assert sys.end_v_sum() == 0
            assert all(p.end_point()[0] == 0 for p in sys.paths)


def test_slope_value_count():
    assert count_type23_slope_values(3) == 11
    assert set(slope_table(3).values()) == {0, 14, 16, 6, 8, 20, 4, 18, 10, 22, 24}
    for s in range(3, 13):
        vals = slope_table(s).values()
        assert count_type23_slope_values(s) <= 15
        assert all(v % 2 == 0 for v in vals)


def test_order_independence():
    cells = [(a, b) for a in SIGN_TRIPLES for b in TYPES]
    base = slope_table(5).to_json()
    rng = random.Random(11)
    for _ in range(5):
        rng.shuffle(cells)
        assert slope_table(5, cells).to_json() == base


def test_type1_examples():
    res = type1_scan(3, 5)
    assert res and all(r.slope > 0 for r in res)
    assert type1_scan(3, 1) == []
    found = {(r.signs, r.u, r.slope) for r in type1_scan(3, 6)}
    assert ("00+", F(5, 6), 16) in found
    assert ("0+-", F(3, 5), F(89, 5)) in found


@pytest.mark.parametrize("s", [3, 4, 5, 6])
def test_type1_positive_and_consistent(s):
    for r in type1_scan(s, 12):
        assert r.slope > 0
        assert 0 < r.u < 1 and r.u.denominator <= 12
        assert sum(p.end_point()[1] for p in r.paths) == 0
        for p in r.paths:
            assert p.is_constant or p.end_point()[0] == r.u
