from pathlib import Path
from xml.etree import ElementTree

from smalltri.objectives import FIG13_LABELS, clustered_construction, fig13_construction, vertices_and_centroid
from smalltri.partition import make_hexagon
from smalltri.render import render_svg

GOLDEN = Path(__file__).parent / "golden" / "fig13.svg"
NS = "{http://www.w3.org/2000/svg}"


def test_fig13_matches_golden():
    assert render_svg(fig13_construction(), grid=10, labels=FIG13_LABELS) == GOLDEN.read_text()


def test_deterministic():
    conf = clustered_construction(3, 0.005, seed=4)
    assert render_svg(conf, grid=10) == render_svg(conf, grid=10)


def test_three_vertices():
    conf = vertices_and_centroid()
    conf = type(conf)(conf.points[:3])
    root = ElementTree.fromstring(render_svg(conf))
    assert root.get("version") == "1.1"
    texts = [t.text for t in root.iter(NS + "text")]
    assert texts == ["p1", "p2", "p3"]
    assert root.find(f".//{NS}g[@id='grid']") is None


def test_regions_and_clusters():
    conf = clustered_construction(3, 0.005)
    svg = render_svg(conf, [make_hexagon((4, 3, 3), name="hex")], grid=10)
    root = ElementTree.fromstring(svg)
    assert len(root.findall(f".//{NS}g[@id='region-hex']/{NS}polygon")) == 24
    assert len(list(root.iter(NS + "circle"))) == 12
    assert root.find(f".//{NS}polygon[@id='min-triple']") is not None
    assert len(root.findall(f".//{NS}g[@id='grid']/{NS}line")) == 27
