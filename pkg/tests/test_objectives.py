import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from smalltri.geometry import triple_area
from smalltri.objectives import (Configuration, averaging_bound, clustered_construction,
                                 clustered_fraction_exact, evaluate, fig13_construction,
                                 format_configuration, min_area, parse_configuration, small_count,
                                 triples_index, vertices_and_centroid)

F = Fraction


def test_fig13_exact():
    conf = fig13_construction()
    assert conf.is_exact
    rep = evaluate(conf)
    assert rep.min_area == F(1, 6)
    for t in ((0, 1, 2), (0, 3, 4), (1, 2, 3), (2, 3, 4)):
        assert rep.area_of(*t) == F(1, 6)
    # independent enumeration of the ten triples
    pts = conf.points
    areas = [triple_area(*(pts[i] for i in t)) for t in itertools.combinations(range(5), 3)]
    assert sorted(areas) == sorted(rep.areas)
    assert sum(a <= F(1, 4) for a in areas) == 7 == rep.count_at_most[F(1, 4)]
    assert rep.count_at_most[F(6, 25)] == 4


def test_evaluate_float_path():
    conf = Configuration.from_array(fig13_construction().as_array())
    rep = evaluate(conf)
    assert rep.min_area == pytest.approx(1 / 6, abs=1e-15)
    assert min_area(conf.as_array()) == pytest.approx(1 / 6)
    assert small_count(conf.as_array(), 0.25 + 1e-12) == 7


def test_configuration_validation():
    with pytest.raises(ValueError):
        Configuration(((1, 0, 0), (0, 1, 0)))
    with pytest.raises(ValueError):
        Configuration(((1, 0, 0), (0, 1, 0), (0.5, 0.6, 0)))


def test_triples_index():
    assert len(triples_index(5)) == 10
    assert len(triples_index(12)) == math.comb(12, 3)


def test_vertices_and_centroid():
    rep = evaluate(vertices_and_centroid())
    assert rep.min_area == F(1, 3)
    assert sorted(rep.areas) == [F(1, 3)] * 3 + [1]


def test_cluster_fraction_k3_brute_force():
    rep = evaluate(clustered_construction(3, 0.0), thresholds=(F(1, 4),))
    assert len(rep.areas) == 220
    assert rep.count_at_most[F(1, 4)] == 112
    assert clustered_fraction_exact(3) == F(112, 220)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_cluster_fraction_with_jitter(seed):
    conf = clustered_construction(3, 0.005, seed)
    rep = evaluate(conf, thresholds=(0.25,))
    assert rep.count_at_most[0.25] == 112


def test_cluster_limit():
    assert abs(clustered_fraction_exact(500) - F(5, 8)) < 7e-4
    seq = [clustered_fraction_exact(k) for k in (2, 10, 100, 1000)]
    assert all(a < b for a, b in zip(seq, seq[1:]))
    assert all(s < F(5, 8) for s in seq)


def test_cluster_validation():
    with pytest.raises(ValueError):
        clustered_construction(0, 0.0)
    with pytest.raises(ValueError):
        clustered_construction(2, 0.02)


def test_averaging_bound():
    assert averaging_bound(5) == 3
    assert averaging_bound(10) == F(3, 10) * 120
    with pytest.raises(ValueError):
        averaging_bound(4)


def test_configuration_text_round_trip():
    conf = fig13_construction()
    text = format_configuration(conf, "fig13")
    back = parse_configuration(text)
    assert back == conf and back.is_exact
    fl = parse_configuration("0.5 0.5 0\n1 0 0  # apex\n\n0 0 1\n")
    assert not fl.is_exact and fl.n == 3
    again = parse_configuration(format_configuration(Configuration.from_array(np.eye(3) * 0.5 + 1 / 6)))
    assert np.allclose(again.as_array(), np.eye(3) * 0.5 + 1 / 6, atol=0)


@pytest.mark.parametrize("text", ["1 0\n", "1 0 0\n0 1 0\n", "a b c\n", "1/0 0 1\n"])
def test_configuration_parse_errors(text):
    with pytest.raises(ValueError):
        parse_configuration(text)
