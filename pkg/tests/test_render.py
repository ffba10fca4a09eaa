from fractions import Fraction as F
from xml.etree import ElementTree as ET

from visipoly import AntennaMode, render_svg, visibility_expansion

NS = "{http://www.w3.org/2000/svg}"


def test_unit_square_picture(square, tmp_path):
    q = (F(1, 2), F(1, 2))
    out = tmp_path / "sq.svg"
    text = render_svg(square, q, visibility_expansion(square, q), out)
    root = ET.fromstring(text.split("\n", 1)[1])
    assert len(root.findall(f"{NS}path")) == 2
    assert len(root.findall(f"{NS}circle")) == 1
    assert out.read_text() == text


def test_antenna_stroke(antenna):
    inc = visibility_expansion(antenna, (0, 0), AntennaMode.INCLUDE)
    exc = visibility_expansion(antenna, (0, 0), AntennaMode.EXCLUDE)
    assert 'class="antenna"' in render_svg(antenna, (0, 0), inc)
    assert 'class="antenna"' not in render_svg(antenna, (0, 0), exc)
    # holes get their own path
    root = ET.fromstring(render_svg(antenna, (0, 0), inc).split("\n", 1)[1])
    assert {p.get("class") for p in root.findall(f"{NS}path")} == {"polygon", "holes", "visibility"}


def test_byte_identical(holed):
    v = visibility_expansion(holed, (1, 3))
    assert render_svg(holed, (1, 3), v) == render_svg(holed, (1, 3), v)


def test_without_region(lpoly):
    root = ET.fromstring(render_svg(lpoly, (F(1, 2), F(1, 2))).split("\n", 1)[1])
    assert len(root.findall(f"{NS}path")) == 1
