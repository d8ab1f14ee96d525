import re

import pytest

from conceptforge import errors
from conceptforge.core import Geometry, Model, VariableNode
from conceptforge.svg import render_svg
from conceptforge.xmlio import parse_model
from modelgen import supply_model


def shape_count(svg: str) -> int:
    return len(re.findall(r"<(?:rect|ellipse) ", svg))


def line_count(svg: str) -> int:
    return len(re.findall(r"<line ", svg))


class TestRenderSvg:
    def test_single_variable_document(self, fixtures):
        svg = render_svg(parse_model((fixtures / "single_var.cmx").read_text()))
        assert '<rect class="variable" x="100" y="100" width="100" height="50"' in svg
        assert ">MyVar</text>" in svg
        assert shape_count(svg) == 1

    def test_empty_model_envelope(self):
        svg = render_svg(Model())
        assert svg.startswith("<svg ")
        assert 'viewBox="0 0 40 40"' in svg
        assert shape_count(svg) == 0

    def test_supply_role_letters(self):
        svg = render_svg(supply_model())
        labels = re.findall(r'class="arc-label"[^>]*>(\w)</text>', svg)
        assert sorted(label for label in labels if label != "t") == ["a", "d", "o"]
        assert labels.count("t") == 3

    def test_counts_match_model(self):
        m = supply_model(with_constants=True)
        svg = render_svg(m)
        assert shape_count(svg) == len(m.nodes())
        assert line_count(svg) == len(m.arcs)

    def test_deterministic(self):
        m = supply_model(with_constants=True)
        assert render_svg(m) == render_svg(m)

    def test_viewbox_has_margin(self):
        m = supply_model()
        match = re.search(r'viewBox="(-?\d+) (-?\d+) (\d+) (\d+)"', render_svg(m))
        x, y, w, h = map(int, match.groups())
        geoms = [m.geometry[n.id] for n in m.nodes()]
        assert x <= min(g.left for g in geoms) - 20
        assert x + w >= max(g.left + g.width for g in geoms) + 20

    def test_shape_vocabulary(self):
        svg = render_svg(supply_model(with_constants=True))
        assert '<ellipse class="concept"' in svg
        assert '<rect class="predicate"' in svg and 'rx="8"' in svg
        assert '<rect class="variable"' in svg
        assert '<rect class="constant"' in svg

    def test_missing_geometry(self):
        m = Model(variables=[VariableNode(1, "x")])
        with pytest.raises(errors.MissingGeometry) as exc:
            render_svg(m)
        assert exc.value.element_id == 1
