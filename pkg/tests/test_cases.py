import pytest

from smalltri import cases
from smalltri.geometry import SIDE
from smalltri.partition import cell_region, coverage_check, whole_triangle


@pytest.fixture(scope="module")
def reports():
    return {r.case: r for r in cases.check_all(samples=8000, seed=1)}


@pytest.mark.parametrize("case", ["I", "II", "III", "cases"])
def test_case_checks_pass(reports, case):
    rep = reports[case]
    failed = [(c.name, c.detail) for c in rep.checks if not c.passed]
    assert not failed


def test_fig8_discrepancy_is_reported(reports):
    note = " ".join(reports["II"].notes)
    assert "(3,9)" in note and "(3,8)" in note
    v39, v38 = cases.fig8_variants(cases.load_case("case2"))
    assert v39["sides"] == (3, 9) and not v39["area_gate"] and v39["confining_placements"]
    assert not v39["closes"]
    assert v38["area_gate"] and v38["closes"]


def test_region_files_load():
    for name, expect in (("case1", 5), ("case2", 8), ("case3", 9)):
        assert len(cases.load_case(name)) == expect


def test_region_files_match_generator(tmp_path):
    import importlib.util
    from pathlib import Path

    script = Path(__file__).resolve().parents[1] / "tools" / "make_case_regions.py"
    spec = importlib.util.spec_from_file_location("make_case_regions", script)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    for name, build in (("case1", mod.case1), ("case2", mod.case2), ("case3", mod.case3)):
        shipped = cases.load_case(name)
        built = {r.name: r.cells for r in build()}
        assert {k: v.cells for k, v in shipped.items()} == built


def test_close_shapes_have_the_right_diameter():
    shapes = cases.close_shapes()
    assert len(shapes) == 49
    assert all(abs(s.diam - 0.4 * SIDE) < 1e-12 for s in shapes)


def test_case_one_corners_are_needed():
    R = cases.load_case("case1")
    rep = coverage_check([R["wide"], R["corner_top"], R["corner_left"]], whole_triangle(), 5000)
    assert not rep.covered


def test_trapezoid_pair_without_a_triangle_is_not_covered():
    R = cases.load_case("case3")
    (pair, pieces), *_ = cases.trapezoid_pair_covers(R)
    target = cell_region("pair", pair[0].cells | pair[1].cells)
    assert coverage_check(pieces, target, 5000).covered
    assert not coverage_check(pieces[:2], target, 5000).covered


def test_parallelogram_enumeration_respects_gate():
    for spec, region in cases.parallelograms():
        assert spec.halving_applies
        assert region.area <= 0.48 + 1e-12
    sides = {tuple(sorted((spec.a, spec.b))) for spec, _ in cases.parallelograms()}
    assert sides == {(2, 10), (3, 8), (4, 6)}
