"""
Seeded property suites.

Every suite draws its random cases from ``np.random.default_rng(seed)``, so a
run is reproducible from ``(suite, seed, cases)``. A suite never stops at the
first failure: each failed check is recorded and the report lists them all.
"""
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Tuple
import logging

import numpy as np

from app.core.config import settings
from app.core.errors import DomainError, ThompsonLinkError
from app.models.models import SuiteReport
from app.services.dsl import resolve_element
from app.services.group import evaluate, invert, multiply, triadic_grid
from app.services.invariants import (
    central_knot_jones,
    component_jones,
    element_fingerprint,
    fingerprint,
    jones_of_union,
    jones_polynomial,
    linking_matrix,
    writhe,
)
from app.services.laurent import LaurentPoly
from app.services.links import jones_diagram, retarget_central_tracked
from app.services.monoid import (
    count_disjoint_reps,
    count_disjoint_reps_closed,
    diamond,
    diamond_i,
    disjoint_union_representatives,
    phi,
    phi_compose,
    sqcup,
    sqcup_n,
)
from app.services.reidemeister import random_move, simplify
from app.services.treelink import LabelledTree, build_tree_link, linking_move, vertex_linking
from app.services.trees import (
    HOPF_NEGATIVE,
    HOPF_POSITIVE,
    IDENTITY,
    Address,
    Element,
    Tree,
    binary_generator,
    caret,
    central_leaf,
    common_carets,
    depth,
    expand,
    generator,
    graft,
    include_F,
    leaves,
    reduce,
    reduce_element,
    replace_at,
)

logger = logging.getLogger(__name__)

RIGHT_TREFOIL = LaurentPoly({2: 1, 6: 1, 8: -1})  # t + t^3 - t^4
LEFT_TREFOIL = RIGHT_TREFOIL.reflect()

CHAIN_EXAMPLE = {
    "vertices": [
        {"name": "v1", "element": "y0"},
        {"name": "v2", "element": "y0"},
        {"name": "v3", "element": "y0"},
    ],
    "edges": [
        {"a": "v2", "b": "v1", "label": 1},
        {"a": "v1", "b": "v3", "label": -1},
    ],
}


# ---------------------------------------------------------------------------
# Random elements
# ---------------------------------------------------------------------------

def random_tree(rng: np.random.Generator, internal: int, arity: int = 3) -> Tree:
    """Grow a tree by hanging carets on uniformly chosen leaves."""
    t: Tree = None
    for _ in range(internal):
        spots = leaves(t)
        t = graft(t, spots[int(rng.integers(0, len(spots)))], caret(arity))
    return t


def random_element(rng: np.random.Generator, max_vertices: Optional[int] = None,
                   arity: int = 3, allow_identity: bool = False) -> Element:
    cap = settings.MAX_RANDOM_VERTICES if max_vertices is None else max_vertices
    while True:
        n = int(rng.integers(1, cap + 1))
        f = reduce(random_tree(rng, n, arity), random_tree(rng, n, arity))
        if allow_identity or not f.is_identity:
            return f


def reduce_in_random_order(f: Element, rng: np.random.Generator) -> Element:
    """Cancel one randomly chosen common caret at a time."""
    plus, minus = f.plus, f.minus
    while True:
        shared = common_carets(plus, minus)
        if not shared:
            return Element(plus, minus)
        _, upper, lower = shared[int(rng.integers(0, len(shared)))]
        plus, minus = replace_at(plus, upper, None), replace_at(minus, lower, None)


def random_address(rng: np.random.Generator, max_length: int = 2, min_length: int = 1) -> Address:
    length = int(rng.integers(min_length, max_length + 1))
    return Address("".join(str(int(d)) for d in rng.integers(0, 3, size=length)))


def random_labelled_tree(rng: np.random.Generator, max_size: int = 5,
                         elements: Tuple[str, ...] = ("y0", "y1")) -> dict:
    size = int(rng.integers(1, max_size + 1))
    vertices = [
        {"name": f"v{k}", "element": elements[int(rng.integers(0, len(elements)))]}
        for k in range(size)
    ]
    edges = [
        {"a": f"v{int(rng.integers(0, k))}", "b": f"v{k}", "label": int(rng.integers(-3, 4))}
        for k in range(1, size)
    ]
    return {"vertices": vertices, "edges": edges}


# ---------------------------------------------------------------------------
# Knot search
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def trees_with(internal: int, arity: int = 3) -> Tuple[Tree, ...]:
    """Every tree with the given number of internal vertices."""
    if internal == 0:
        return (None,)
    found = []

    def split(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
        if parts == 1:
            yield (total,)
            return
        for k in range(total + 1):
            for rest in split(total - k, parts - 1):
                yield (k,) + rest

    def build(sizes: Tuple[int, ...]) -> Iterator[Tuple[Tree, ...]]:
        if not sizes:
            yield ()
            return
        for head in trees_with(sizes[0], arity):
            for tail in build(sizes[1:]):
                yield (head,) + tail

    for sizes in split(internal - 1, arity):
        found.extend(build(sizes))
    return tuple(found)


def enumerate_reduced(max_vertices: int, arity: int = 3) -> Iterator[Element]:
    """Reduced pairs in order of internal vertex count."""
    for n in range(1, max_vertices + 1):
        pool = trees_with(n, arity)
        for plus in pool:
            for minus in pool:
                f = Element(plus, minus)
                if f.is_reduced:
                    yield f


def find_knot(target: LaurentPoly, max_vertices: Optional[int] = None) -> Optional[Element]:
    """First reduced element whose link is a knot with Jones polynomial ``target``."""
    bound = settings.TREFOIL_SEARCH_DEPTH if max_vertices is None else max_vertices
    logger.info(f"Searching elements with up to {bound} vertices for V = {target}")
    examined = 0
    for f in enumerate_reduced(bound):
        examined += 1
        d = jones_diagram(f)
        if d.component_count != 1:
            continue
        if jones_polynomial(d) == target:
            logger.info(f"Found a match after {examined} elements: {f}")
            return f
    logger.info(f"No match among {examined} elements")
    return None


# ---------------------------------------------------------------------------
# Suite machinery
# ---------------------------------------------------------------------------

class SuiteRun:
    def __init__(self, name: str, seed: int, cases: int, max_crossings: Optional[int] = None):
        self.name = name
        self.seed = seed
        self.cases = cases
        self.max_crossings = max_crossings
        self.rng = np.random.default_rng(seed)
        self.checks = 0
        self.failures: List[str] = []
        self.details: Dict[str, object] = {}

    def check(self, ok: bool, message: str):
        self.checks += 1
        if not ok:
            self.failures.append(message)
            logger.debug(f"[{self.name}] failed: {message}")

    def guarded(self, label: str, body: Callable[[], None]):
        """Run one case; a service error counts as a failed check."""
        try:
            body()
        except ThompsonLinkError as e:
            self.checks += 1
            self.failures.append(f"{label}: {e.code}: {e.message}")
            logger.debug(f"[{self.name}] {label} raised {e.code}")

    def report(self) -> SuiteReport:
        return SuiteReport(
            suite=self.name,
            passed=not self.failures,
            seed=self.seed,
            cases=self.cases,
            checks=self.checks,
            failures=self.failures,
            details=self.details,
        )


def _relations(run: SuiteRun):
    for n in range(1, 7):
        for m in range(n):
            left = multiply(generator(n), generator(m))
            right = multiply(generator(m), generator(n + 2))
            run.check(left == right, f"y{n}*y{m} != y{m}*y{n + 2}")
    for n in range(3, 9):
        expected = multiply(multiply(invert(generator(0)), generator(n - 2)), generator(0))
        run.check(generator(n) == expected, f"y{n} is not y0^-1 y{n - 2} y0")


def _group(run: SuiteRun):
    for case in range(run.cases):
        arity = 2 if run.rng.integers(0, 4) == 0 else 3
        f = random_element(run.rng, arity=arity, allow_identity=True)
        g = random_element(run.rng, arity=arity, allow_identity=True)
        grown = f
        for _ in range(int(run.rng.integers(1, 4))):
            grown = expand(grown, int(run.rng.integers(0, grown.leaf_count)), arity)
        order_rng = np.random.default_rng(int(run.rng.integers(0, 2 ** 31)))

        def body():
            product = multiply(f, g)
            level = max(depth(t) for t in (f.plus, f.minus, g.plus, g.minus)) + 1
            grid = triadic_grid(level, arity)
            run.check(
                all(evaluate(product, q) == evaluate(g, evaluate(f, q)) for q in grid),
                f"case {case}: f*g is not g after f on the grid",
            )
            run.check(multiply(f, invert(f)).is_identity, f"case {case}: f*f^-1 is not the identity")
            run.check(reduce_element(grown) == f, f"case {case}: grow-then-reduce does not give f back")
            run.check(
                reduce_in_random_order(grown, order_rng) == f,
                f"case {case}: reducing carets in another order gives a different pair",
            )

        run.guarded(f"case {case}", body)


def _monoid(run: SuiteRun):
    for case in range(run.cases):
        f, g, h = (random_element(run.rng, allow_identity=True) for _ in range(3))
        alpha = random_address(run.rng)
        beta = random_address(run.rng)
        while alpha.comparable(beta):
            beta = random_address(run.rng)

        def body():
            fg = diamond(f, g)
            run.check(diamond(fg, h) == diamond(f, diamond(g, h)), f"case {case}: <> is not associative")
            run.check(diamond(IDENTITY, f) == f == diamond(f, IDENTITY), f"case {case}: identity is not neutral")
            run.check(
                fg == multiply(phi(central_leaf(f), g), f),
                f"case {case}: f<>g != phi_l(f)(g)*f",
            )
            run.check(
                len(central_leaf(fg)) == len(central_leaf(f)) + len(central_leaf(g)),
                f"case {case}: central leaf depths do not add",
            )
            run.check(
                phi(central_leaf(fg), h) == phi_compose(central_leaf(f), central_leaf(g), h),
                f"case {case}: phi_l(f<>g) is not phi_l(f) after phi_l(g)",
            )
            run.check(
                phi(central_leaf(f), diamond(g, h)) == multiply(phi(central_leaf(fg), h), phi(central_leaf(f), g)),
                f"case {case}: phi_l(f)(g<>h) != phi_l(f<>g)(h)*phi_l(f)(g)",
            )
            run.check(
                (diamond(f, g) == diamond(f, h)) == (g == h),
                f"case {case}: f<>g = f<>h does not force g = h",
            )
            run.check(
                fg.is_identity == (f.is_identity and g.is_identity),
                f"case {case}: f<>g is the identity with a non-trivial factor",
            )
            run.check(
                multiply(phi(alpha, f), phi(beta, g)) == multiply(phi(beta, g), phi(alpha, f)),
                f"case {case}: phi at {alpha} and {beta} do not commute",
            )
            if not f.is_identity:
                for i, j in ((0, 1), (0, 2), (1, 2)):
                    run.check(
                        diamond_i(diamond_i(f, i, g), j, h) == diamond_i(diamond_i(f, j, h), i, g),
                        f"case {case}: <{i}> and <{j}> do not commute",
                    )

        run.guarded(f"case {case}", body)


def _calibration(run: SuiteRun):
    d = jones_diagram(IDENTITY)
    run.check(d.crossing_count == 0 and d.component_count == 1, "identity is not a 0-crossing unknot")
    run.check(jones_polynomial(d) == LaurentPoly.one(), "V(identity) != 1")
    run.check(
        jones_polynomial(jones_diagram(include_F(binary_generator(0)))) == LaurentPoly.one(),
        "V(incl(x0)) != 1",
    )
    for name, element, expected in (("H+", HOPF_POSITIVE, 1), ("H-", HOPF_NEGATIVE, -1)):
        hopf = jones_diagram(element)
        run.check(hopf.component_count == 2, f"{name} does not have 2 components")
        if hopf.component_count == 2:
            run.check(int(linking_matrix(hopf)[0, 1]) == expected, f"lk({name}) != {expected}")
    run.check(writhe(jones_diagram(HOPF_POSITIVE)) == 0, "writhe(H+) != 0")


def _linking(run: SuiteRun):
    y0 = generator(0)
    for n in (1, -1, 2, -2, 3, -3, 4, -4):
        def body():
            d = jones_diagram(linking_move(n, y0, y0))
            run.check(d.component_count == 2, f"link({n},y0,y0) does not have 2 components")
            if d.component_count == 2:
                lk = int(linking_matrix(d)[0, 1])
                run.check(lk == n, f"link({n},y0,y0) has linking number {lk}")

        run.guarded(f"n={n}", body)


def _connected_sum(run: SuiteRun):
    for case in range(run.cases):
        f, g = random_element(run.rng), random_element(run.rng)

        def body():
            expected = central_knot_jones(f, run.max_crossings) * central_knot_jones(g, run.max_crossings)
            run.check(
                central_knot_jones(diamond(f, g), run.max_crossings) == expected,
                f"case {case}: V(K(f<>g)) != V(K(f)) V(K(g))",
            )
            left = element_fingerprint(diamond(f, g), run.max_crossings)
            right = element_fingerprint(diamond(g, f), run.max_crossings)
            run.check(left.pointed_key() == right.pointed_key(), f"case {case}: f<>g and g<>f differ")

        run.guarded(f"case {case}", body)

    if settings.TREFOIL_SEARCH_DEPTH > 0:
        witness = find_knot(RIGHT_TREFOIL) or find_knot(LEFT_TREFOIL)
        run.check(witness is not None, "no trefoil among the searched elements")
        if witness is not None:
            run.details["trefoil"] = witness.to_json()
            square = central_knot_jones(diamond(witness, witness), run.max_crossings)
            v = central_knot_jones(witness, run.max_crossings)
            run.check(square == v * v, "V(trefoil # trefoil) != V(trefoil)^2")


def _unknot(run: SuiteRun):
    y0 = generator(0)
    for case in range(run.cases):
        f = random_element(run.rng, allow_identity=True)

        def body():
            absorbed = element_fingerprint(diamond(f, y0), run.max_crossings)
            plain = element_fingerprint(f, run.max_crossings)
            run.check(absorbed.pointed_key() == plain.pointed_key(), f"case {case}: f<>y0 differs from f")

        run.guarded(f"case {case}", body)


def _disjoint(run: SuiteRun):
    for case in range(run.cases):
        f, g = random_element(run.rng), random_element(run.rng)
        side = 2 * int(run.rng.integers(0, 2))

        def body():
            df, dg, du = jones_diagram(f), jones_diagram(g), jones_diagram(sqcup(f, g, side))
            run.check(
                du.component_count == df.component_count + dg.component_count,
                f"case {case}: components do not add",
            )
            expected = jones_of_union([
                jones_polynomial(df, run.max_crossings),
                jones_polynomial(dg, run.max_crossings),
            ])
            found = jones_polynomial(du, run.max_crossings)
            if side == 0:
                run.check(found == expected, f"case {case}: V of the union")
            else:
                # g lands in the right third, where its components may come out reversed
                run.check(found.up_to_unit() == expected.up_to_unit(), f"case {case}: V of the union up to units")

        run.guarded(f"case {case}", body)


def _counting(run: SuiteRun):
    for n in range(1, 9):
        run.check(
            count_disjoint_reps(n) == count_disjoint_reps_closed(n),
            f"c({n}): recursion {count_disjoint_reps(n)} != closed form {count_disjoint_reps_closed(n)}",
        )
    for n, expected in ((1, 1), (2, 4), (3, 48)):
        run.check(count_disjoint_reps(n) == expected, f"c({n}) != {expected}")
    operands = [generator(0), generator(1), generator(2)]
    for n in (1, 2, 3):
        reps = disjoint_union_representatives(operands[:n])
        run.check(len(set(reps)) == count_disjoint_reps(n), f"{len(set(reps))} representatives for n={n}")
        keys = {element_fingerprint(r, run.max_crossings).unoriented_key() for r in reps[:8]}
        run.check(len(keys) == 1, f"representatives for n={n} have different fingerprints")
    run.details["c"] = [count_disjoint_reps(n) for n in range(1, 9)]


def _pointed(run: SuiteRun):
    for case in range(run.cases):
        f = random_element(run.rng)

        def body():
            d = jones_diagram(f)
            base = fingerprint(d, run.max_crossings)
            upper = leaves(f.plus)
            for component in range(d.component_count):
                j = next((k for k in range(f.leaf_count) if d.leaf_component(k) == component), None)
                run.check(j is not None, f"case {case}: component {component} meets no domain leaf")
                if j is None:
                    continue
                moved, mapping = retarget_central_tracked(f, upper[j])
                d2 = jones_diagram(moved)
                run.check(
                    d2.leaf_component(mapping[j]) == d2.marked,
                    f"case {case}: component {component} did not become central",
                )
                after = fingerprint(d2, run.max_crossings)
                # the wrap may reverse the other components, so only the unoriented link is kept
                run.check(after.unoriented_key() == base.unoriented_key(), f"case {case}: link type changed")
                run.check(
                    after.marked_jones == component_jones(d, component, run.max_crossings).format(),
                    f"case {case}: marked component {component} has the wrong knot type",
                )

        run.guarded(f"case {case}", body)


def _treelink(run: SuiteRun):
    chain = LabelledTree.from_payload(CHAIN_EXAMPLE, resolve_element)
    element, plan = build_tree_link(chain)
    run.check(jones_diagram(element).component_count == 3, "chain example does not have 3 components")
    pairs = vertex_linking(chain, plan)
    expected = {("v1", "v2"): 1, ("v1", "v3"): -1, ("v2", "v3"): 0}
    run.check(pairs == expected, f"chain example linking {pairs}")
    run.details["chain_plan"] = plan.to_text()

    for case in range(run.cases):
        payload = random_labelled_tree(run.rng)

        def body():
            tree = LabelledTree.from_payload(payload, resolve_element)
            _, built = build_tree_link(tree)
            found = vertex_linking(tree, built)
            for (a, b), lk in found.items():
                run.check(lk == tree.label(a, b), f"case {case}: lk({a},{b}) = {lk}, label {tree.label(a, b)}")

            split = LabelledTree(tree.names, tree.elements, tuple((a, b, 0) for a, b, _ in tree.edges))
            run.check(
                build_tree_link(split)[0] == sqcup_n(list(tree.elements)),
                f"case {case}: zero labels do not give the disjoint union",
            )

        run.guarded(f"case {case}", body)


def _reidemeister(run: SuiteRun):
    for case in range(run.cases):
        f = random_element(run.rng)

        def body():
            d = jones_diagram(f)
            moved = d
            for _ in range(int(run.rng.integers(1, 4))):
                moved = random_move(moved, run.rng)
            before = jones_polynomial(d, run.max_crossings, simplify_first=False)
            after = jones_polynomial(moved, run.max_crossings, simplify_first=False)
            run.check(before == after, f"case {case}: V changed under Reidemeister moves")
            run.check(moved.component_count == d.component_count, f"case {case}: component count changed")
            run.check(
                np.array_equal(linking_matrix(moved), linking_matrix(d)),
                f"case {case}: linking matrix changed",
            )
            run.check(
                jones_polynomial(d.mirror(), run.max_crossings, simplify_first=False) == before.reflect(),
                f"case {case}: mirror law",
            )
            reduced = simplify(d)
            run.check(
                reduced.crossing_count <= d.crossing_count
                and jones_polynomial(reduced, run.max_crossings, simplify_first=False) == before,
                f"case {case}: simplify changed V",
            )

        run.guarded(f"case {case}", body)


SUITES: Dict[str, Callable[[SuiteRun], None]] = {
    "relations": _relations,
    "group": _group,
    "monoid": _monoid,
    "calibration": _calibration,
    "linking": _linking,
    "connected_sum": _connected_sum,
    "unknot": _unknot,
    "disjoint": _disjoint,
    "counting": _counting,
    "pointed": _pointed,
    "treelink": _treelink,
    "reidemeister": _reidemeister,
}


def run_suite(name: str, seed: Optional[int] = None, cases: Optional[int] = None,
              max_crossings: Optional[int] = None) -> SuiteReport:
    if name not in SUITES:
        raise DomainError(f"Unknown suite '{name}'; choose from {', '.join(SUITES)}")
    seed = settings.DEFAULT_SEED if seed is None else seed
    cases = settings.DEFAULT_CASES if cases is None else cases
    run = SuiteRun(name, seed, cases, max_crossings)
    logger.info(f"Running suite '{name}' with seed={seed} cases={cases}")
    SUITES[name](run)
    report = run.report()
    logger.info(f"Suite '{name}': {report.checks} checks, {len(report.failures)} failures")
    return report
