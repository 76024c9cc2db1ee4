"""
SVG pictures of tree pairs and their link diagrams.

The domain tree hangs above a horizontal line of leaves and the range tree is
drawn upside down below it, so the picture reads the way Jones' construction
glues the pair. The closure arc joins the two roots around the left side.
Leaf stubs are coloured by the link component running through them.
"""
from typing import Dict, Optional, Tuple
import logging

from app.services.links import jones_diagram
from app.services.trees import Address, Element, Tree, internal_addresses, leaves, subtree_at

logger = logging.getLogger(__name__)

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")

Point = Tuple[float, float]


class SVG:
    def __init__(self):
        self.svg = ""

    def header(self, width: float, height: float):
        self.svg += (
            '<?xml version="1.0" standalone="no"?>\n'
            f'<svg version="1.1" width="{width:.0f}" height="{height:.0f}" '
            f'viewBox="0 0 {width:.0f} {height:.0f}" xmlns="http://www.w3.org/2000/svg">\n'
        )

    def group_start(self, attr: Dict[str, str]):
        g_attr = [f'{key}="{value}"' for key, value in attr.items() if key in ("id", "class")]
        self.svg += f'<g {" ".join(g_attr)}>\n'
        if "title" in attr:
            self.svg += f'<title>{attr["title"]}</title>\n'

    def group_end(self):
        self.svg += "</g>\n"

    def line(self, a: Point, b: Point, stroke: str = "#000", width: float = 1.5, extra: str = ""):
        self.svg += (
            f'<line x1="{a[0]:.1f}" y1="{a[1]:.1f}" x2="{b[0]:.1f}" y2="{b[1]:.1f}" '
            f'stroke="{stroke}" stroke-width="{width}" {extra}/>\n'
        )

    def path(self, d: str, stroke: str = "#000", width: float = 1.5):
        self.svg += f'<path d="{d}" fill="none" stroke="{stroke}" stroke-width="{width}"/>\n'

    def circle(self, c: Point, r: float, fill: str, extra: str = ""):
        self.svg += f'<circle cx="{c[0]:.1f}" cy="{c[1]:.1f}" r="{r}" fill="{fill}" {extra}/>\n'

    def text(self, x: float, y: float, string: str, extra: str = ""):
        self.svg += f'<text x="{x:.1f}" y="{y:.1f}" {extra}>{string}</text>\n'

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"


def _positions(t: Tree, baseline: float, step: float, spacing: float, margin: float,
               downward: bool) -> Dict[Address, Point]:
    """Leaves sit on the baseline; a vertex sits over the middle of its leaves, one step per level."""
    found: Dict[Address, Point] = {}
    for k, leaf in enumerate(leaves(t)):
        found[leaf] = (margin + k * spacing, baseline)
    sign = -1 if downward else 1
    for alpha in sorted(internal_addresses(t), key=len, reverse=True):
        below = leaves(subtree_at(t, alpha))
        first = found[alpha + below[0]][0]
        last = found[alpha + below[-1]][0]
        height = _height(subtree_at(t, alpha))
        found[alpha] = ((first + last) / 2, baseline + sign * height * step)
    return found


def _height(t: Tree) -> int:
    if t is None:
        return 0
    return 1 + max(_height(child) for child in t)


def render_element(f: Element, spacing: float = 28.0, step: float = 34.0,
                   title: Optional[str] = None, show_components: bool = True) -> str:
    """SVG of the tree pair of ``f`` with the closure arc, crossings marked as dots."""
    margin = 60.0
    n = f.leaf_count
    up, down = _height(f.plus), _height(f.minus)
    width = 2 * margin + max(n - 1, 1) * spacing
    baseline = margin + up * step
    height = baseline + down * step + margin

    colours = {}
    if show_components and f.arity == 3:
        diagram = jones_diagram(f)
        colours = {j: PALETTE[diagram.leaf_component(j) % len(PALETTE)] for j in range(n)}

    upper = _positions(f.plus, baseline, step, spacing, margin, downward=True)
    lower = _positions(f.minus, baseline, step, spacing, margin, downward=False)

    svg = SVG()
    svg.header(width, height)
    if title:
        svg.text(margin, margin / 2, title, 'font-family="monospace" font-size="14"')

    for name, tree, pos in (("domain", f.plus, upper), ("range", f.minus, lower)):
        svg.group_start({"class": name})
        for alpha in internal_addresses(tree):
            for i in range(len(subtree_at(tree, alpha))):
                child = alpha.child(i)
                stroke = "#000"
                if subtree_at(tree, child) is None:
                    stroke = colours.get(leaves(tree).index(child), "#000")
                svg.line(pos[alpha], pos[child], stroke=stroke)
        for alpha in internal_addresses(tree):
            svg.circle(pos[alpha], 4, "#000", f'class="crossing" data-address="{alpha}"')
        svg.group_end()

    top, bottom = upper[Address("")], lower[Address("")]
    svg.group_start({"class": "closure", "title": "root closure"})
    svg.path(
        f"M {top[0]:.1f} {top[1]:.1f} L {top[0]:.1f} {top[1] - step / 2:.1f} "
        f"L {margin / 3:.1f} {top[1] - step / 2:.1f} L {margin / 3:.1f} {bottom[1] + step / 2:.1f} "
        f"L {bottom[0]:.1f} {bottom[1] + step / 2:.1f} L {bottom[0]:.1f} {bottom[1]:.1f}",
        stroke=PALETTE[0] if colours else "#000",
    )
    svg.group_end()
    logger.debug(f"Rendered element with {n} leaves per tree")
    return svg.get_svg()
