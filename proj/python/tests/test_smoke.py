import pathlib

import pytest

import basinscope

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"
TOGGLE = "a, !b\nb, !a\n"


@pytest.fixture
def toggle():
    return basinscope.Model(TOGGLE)


def test_model_properties(toggle):
    assert toggle.variables == ["a", "b"]
    assert toggle.update == "async"
    assert toggle.space_size == 4
    assert not toggle.partial


def test_attractors(toggle):
    doc = toggle.attractors()
    assert [a["representative"] for a in doc["attractors"]] == ["01", "10"]
    assert doc["steady"] == 2 and doc["cyclic"] == 0


def test_basins(toggle):
    for a in toggle.basins()["attractors"]:
        assert (a["weak"]["size"], a["strong"]["size"], a["cycle_free"]["size"]) == (3, 1, 1)


def test_commitment(toggle):
    doc = toggle.commitment()
    assert [n["key"] for n in doc["nodes"]] == [[1], [2], [1, 2]]
    assert [n["percent"] for n in doc["nodes"]] == [25.0, 25.0, 50.0]
    assert doc["edges"] == [[[1, 2], [1]], [[1, 2], [2]]]


def test_phenotypes(toggle):
    doc = toggle.phenotypes(["a"])
    assert [p["pattern"] for p in doc["phenotypes"]] == ["0", "1"]
    assert len(doc["diagram"]["nodes"]) == 3


def test_check(toggle):
    doc = toggle.check("AG(EF(a & !b))")
    assert doc["count"] == 1
    assert doc["expression"] == "a & !b"


def test_simulation_is_reproducible(toggle):
    first = toggle.simulate("a", walks=20000, seed=5)
    second = toggle.simulate("a", walks=20000, seed=5, threads=1)
    assert first == second
    for p in first["phenotypes"]:
        assert abs(p["frequency"] - 0.5) < 0.02


def test_renderings(toggle):
    assert toggle.commitment_dot().startswith("digraph")
    assert "peripheries=2" in toggle.stg_dot()
    for svg in (toggle.commitment_pie_svg(), toggle.basin_barplot_svg(), toggle.strong_basin_pie_svg()):
        assert "<svg" in svg


def test_partial_import(toggle):
    toggle.import_attractors(["10"])
    assert toggle.partial
    doc = toggle.commitment()
    assert doc["partial"] and doc["uncommitted"]["size"] == 3


def test_load_and_sync():
    m = basinscope.Model.load(DATA / "repressilator.bnet", update="sync")
    assert m.update == "sync"
    assert all(a["kind"] == "cyclic" for a in m.attractors()["attractors"])


def test_errors():
    with pytest.raises(basinscope.ParseError):
        basinscope.Model("a, !b\n")
    with pytest.raises(basinscope.DomainError):
        basinscope.Model(TOGGLE, update="sideways")
    with pytest.raises(basinscope.Error):
        basinscope.Model(TOGGLE).phenotypes("zz")
    with pytest.raises(basinscope.DomainError):
        basinscope.Model(TOGGLE).attractors(style="espresso")
    assert issubclass(basinscope.ParseError, basinscope.Error)
