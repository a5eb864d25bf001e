"""Bundled regression corpus: four worked instances with frozen invariant
values.  The selftest runs each session and compares the structured report
against these values; any drift is an error.

`expect` entries are exact path -> value pairs into the structured report
tree; `expect_min` entries are certified lower bounds (the greedy depth
search may legitimately certify more than the recorded minimum).
"""

from __future__ import annotations

EXAMPLE_1 = """\
# three quadric relations plus the mixed products, three variables
ring R vars x y z;
ideal I = [-x^2 + y^2, -y^2 + z^2, x*y, y*z, z*x];
ideal J = [-x^2 + y^2, -y^2 + z^2, x*y];
report;
"""

EXAMPLE_2 = """\
# dimension-two quotient ring on five variables
ring S vars X Y Z W U mod [
    -X^3*Z + Y^3, X^5 - Z^2, -X^2*Y^3 + Z^3, -X^4*Y^2 + Z*W,
    -X^2*Z^2 + Y*W, -Y^2*Z + X*W, X*Y*Z^3 - W^2, X^3*Y*W - Z^4,
    Z^5 - Y^4*W, -Y^5 + X^4*W];
ideal I = [X, Y, W, U];
ideal J = [X, U];
report;
"""

EXAMPLE_3 = """\
# monomial ideal with a non-Cohen-Macaulay associated graded ring
ring R vars x y z;
ideal I = [x^3, y^3, z^3, x*y*z, x*z^2, y*z^2];
ideal J = [x^3, y^3, z^3];
report;
"""

EXAMPLE_4 = """\
# plane monomial ideal whose fiber cone has depth exactly one
ring R vars x y;
ideal I = [x^5, x^3*y^2, x^2*y^4, y^5];
ideal J = [x^5, y^5];
report;
"""

CORPUS = {
    "example-1": {
        "session": EXAMPLE_1,
        "expect": {
            "instance.dimension": 3,
            "reduction.r": 2,
            "reduction.rm": 1,
            "reduction.minimal": True,
            "sums.FC1.total": 0,
            "sums.FC2.total": 1,
            "sums.FC2.terms.0": 1,
            "sums.VV.terms.2": 3,
            "sums.Delta.total": 3,
            "series.G.numerator": [5, 0, 6, -4, 1],
            "series.G.e0": 8,
            "series.G.e1": 4,
            "series.F.numerator": [1, 2, 3, -3, 1],
            "series.F.e0": 4,
            "cm.F.verdict": "notCM",
            "cm.G.verdict": "notCM",
            "cm.G.vv_failing": [2],
            "depth.G.lowerbound": 0,
        },
        "expect_min": {"depth.F.lowerbound": 1},
    },
    "example-2": {
        "session": EXAMPLE_2,
        "expect": {
            "instance.dimension": 2,
            "reduction.r": 2,
            "reduction.rm": 2,
            "reduction.minimal": True,
            "sums.FC1.total": 1,
            "sums.FC1.terms.1": 1,
            "sums.FC1.terms.2": 0,
            "sums.FC2.terms.0": 2,
            "sums.FC2.terms.1": 1,
            "sums.VV.total": 0,
            "series.G.numerator": [2, 3, 1],
            "series.F.numerator": [1, 2],
            "series.F.e0": 3,
            "cm.G.verdict": "CM",
            "cm.CZ.verdict": "notCM",
            "cm.F.verdict": "notCM",
        },
        "expect_min": {"depth.F.lowerbound": 1, "depth.G.lowerbound": 1},
    },
    "example-3": {
        "session": EXAMPLE_3,
        "expect": {
            "instance.dimension": 3,
            "reduction.r": 2,
            "reduction.rm": 2,
            "sums.FC1.total": 1,
            "sums.FC1.terms.1": 1,
            "sums.VV.terms.2": 5,
            "series.G.numerator": [15, 6, 6],
            "series.G.e0": 27,
            "series.G.e1": 18,
            "series.F.numerator": [1, 3, 5],
            "series.F.e0": 9,
            "cm.G.verdict": "notCM",
            "cm.G.vv_failing": [2],
            "cm.CZ.verdict": "inapplicable",
            "cm.F.verdict": "CM",
        },
        "expect_min": {"depth.G.lowerbound": 2},
    },
    "example-4": {
        "session": EXAMPLE_4,
        "expect": {
            "instance.dimension": 2,
            "reduction.r": 4,
            "reduction.rm": 2,
            "sums.FC1.total": 1,
            "sums.FC1.terms.1": 1,
            "sums.FC2.terms.0": 5,
            "sums.FC2.terms.1": 1,
            "sums.FC2.terms.2": 0,
            "sums.LambdaHM.total": 10,
            "series.G.numerator": [18, 6, 0, 0, 1],
            "series.G.e0": 25,
            "series.G.e1": 10,
            "series.F.numerator": [1, 2, 0, 1, 1],
            "series.F.e0": 5,
            "cm.F.verdict": "notCM",
            "cm.F.witness": 2,
            "cm.F.mu_table.3": [11, 13],
        },
        "expect_min": {"depth.G.lowerbound": 1, "depth.F.lowerbound": 1},
    },
}


def tree_lookup(tree: dict, path: str):
    """Walk a dotted path through the structured report tree."""
    node = tree
    for part in path.split("."):
        if isinstance(node, dict):
            node = node[part]
        else:
            raise KeyError(path)
    return node


def check_example(name: str, tree: dict) -> list[str]:
    """Mismatch descriptions for one corpus entry; empty means pass."""
    entry = CORPUS[name]
    problems = []
    for path, want in entry["expect"].items():
        try:
            got = tree_lookup(tree, path)
        except KeyError:
            problems.append(f"{path}: missing")
            continue
        if got != want:
            problems.append(f"{path}: expected {want!r}, got {got!r}")
    for path, floor in entry.get("expect_min", {}).items():
        try:
            got = tree_lookup(tree, path)
        except KeyError:
            problems.append(f"{path}: missing")
            continue
        if got < floor:
            problems.append(f"{path}: expected at least {floor}, got {got}")
    return problems
