import re
import xml.etree.ElementTree as ET

from ratbase import new_base, represent, span, tree_T, tree_That
from ratbase.export import (SPAN_FIELDS, automaton_dot, fractal_svg, read_spans_csv, spans_csv,
                            transducer_dot)

EDGE = re.compile(r"^\s*(-?\d+) -> (-?\d+) \[label=\"([^\"]*)\"\];$", re.M)


def dot_edges(text):
    return {(int(s), lab, int(t)) for s, t, lab in EDGE.findall(text)}


def test_tree_dot_matches_representations():
    b = new_base(3, 2)
    oracle = {(b.q * n // b.p, str(represent(b, n)[-1]), n) for n in range(1, 41)}
    text = automaton_dot(tree_T(b), 40)
    assert text.startswith('digraph "')
    assert dot_edges(text) == oracle | {(0, "0", 0)}
    assert dot_edges(automaton_dot(tree_T(b), 40, self_loop=False)) == oracle


def test_negative_bound_is_header_only():
    text = automaton_dot(tree_T(new_base(3, 2)), -1)
    assert text.count("\n") == 2 and text.endswith("{\n}\n")
    assert transducer_dot(new_base(3, 2), -5).endswith("{\n}\n")


def test_depth_bound():
    b = new_base(3, 2)
    edges = dot_edges(automaton_dot(tree_T(b), 1000, max_depth=2))
    assert edges == {(0, "0", 0), (0, "2", 1), (1, "1", 2)}


def test_that_4_3_has_negative_labels():
    edges = dot_edges(automaton_dot(tree_That(new_base(4, 3)), 30))
    assert any(lab == "-1" for _s, lab, _t in edges)


def test_transducer_labels():
    text = transducer_dot(new_base(3, 2), 10)
    edges = dot_edges(text)
    assert (1, "0|0, 1|1", 2) in edges
    assert (0, "0|1", 1) in edges and (0, "1|0", 0) in edges
    for _s, lab, _t in edges:
        assert all(re.fullmatch(r"-?\d+\|-?\d+", part) for part in lab.split(", "))


def test_fractal_svg_well_formed():
    root = ET.fromstring(fractal_svg(new_base(3, 2), 30))
    ns = "{http://www.w3.org/2000/svg}"
    assert root.tag == ns + "svg"
    assert len(root.findall(ns + "circle")) == 31
    assert len(root.findall(ns + "line")) == 30


def test_spans_csv_roundtrip():
    b = new_base(7, 3)
    values = [span(b, n, 16) for n in range(5)]
    text = spans_csv(values)
    assert text.splitlines()[0] == ",".join(SPAN_FIELDS)
    rows = read_spans_csv(text)
    assert [int(r["n"]) for r in rows] == list(range(5))
    for r, v in zip(rows, values):
        assert r["span_lo"] == str(v.enclosure.lo) and r["span_hi"] == str(v.enclosure.hi)
