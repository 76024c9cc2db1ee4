from app.services.render import render_element
from app.services.trees import HOPF_POSITIVE, IDENTITY, X0


def test_svg_document(y0):
    svg = render_element(y0, title="y0")
    assert svg.startswith("<?xml")
    assert svg.rstrip().endswith("</svg>")
    assert "<title>root closure</title>" in svg
    assert ">y0</text>" in svg


def test_one_dot_per_crossing():
    svg = render_element(HOPF_POSITIVE)
    assert svg.count('class="crossing"') == 2 * HOPF_POSITIVE.internal_count


def test_degenerate_pairs_render():
    assert 'class="crossing"' not in render_element(IDENTITY)
    assert "</svg>" in render_element(X0)
