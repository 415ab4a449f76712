"""Graphviz DOT, SVG and CSV writers."""
from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable, Optional
from xml.sax.saxutils import escape

from .automata import LazyAutomaton
from .numeration import RationalBase, format_word, represent
from .spans import SpanValue
from .transducer import DerivedTransducer


def _dot(name: str, nodes: Iterable[int], edges: Iterable[tuple[int, str, int]]) -> str:
    lines = [f'digraph "{name}" {{']
    nodes = sorted(set(nodes))
    if nodes:
        lines.append("  rankdir=LR;")
        lines.append("  node [shape=circle];")
    for n in nodes:
        lines.append(f'  {n} [label="{n}"];')
    for src, label, dst in edges:
        lines.append(f'  {src} -> {dst} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def automaton_dot(aut: LazyAutomaton, max_state: int, max_depth: Optional[int] = None,
                  self_loop: bool = True) -> str:
    """One node per state, one edge per transition, labelled by its digit.

    A negative ``max_state`` gives a header-only graph.
    """
    edges = list(aut.edges(max_state, max_depth, self_loop))
    nodes = {s for s, _a, _t in edges} | {t for _s, _a, t in edges}
    if max_state >= 0:
        nodes.add(0)
    name = f"{aut.name}_{aut.base}" if aut.name else str(aut.base)
    return _dot(name, nodes, ((s, str(a), t) for s, a, t in edges))


def transducer_dot(base: RationalBase, max_state: int) -> str:
    """Edges carry every ``b|c`` pair sharing a source and target."""
    d = DerivedTransducer(base)
    edges = [] if max_state < 0 else list(d.edges(max_state))
    nodes = {s for s, _l, _t in edges} | {t for _s, _l, t in edges}
    if max_state >= 0:
        nodes.add(0)
    return _dot(f"D_{base}", nodes,
                ((s, ", ".join(f"{b}|{c}" for b, c in labels), t) for s, labels, t in edges))


def fractal_svg(base: RationalBase, max_state: int, width: int = 800,
                row: int = 40) -> str:
    """Representation tree drawn as in the fractal picture.

    Node n of depth d (the length of its representation) sits at
    ``x = n * (q/p)**d`` and ``y = d``.  Each node is joined to its parent,
    the state reached by dropping its last digit.
    """
    p, q = base.p, base.q
    pos = {}
    for n in range(max_state + 1):
        d = len(represent(base, n))
        pos[n] = (float(n * Fraction(q, p) ** d), d)
    margin = 20
    depth = max((d for _x, d in pos.values()), default=0)
    span = max((x for x, _d in pos.values()), default=0.0) or 1.0

    def xy(n):
        x, d = pos[n]
        return margin + x / span * (width - 2 * margin), margin + d * row

    height = 2 * margin + depth * row
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f"  <title>{escape(f'Representation tree in base {base}')}</title>"]
    for n in range(1, max_state + 1):
        parent = q * n // p
        (x1, y1), (x2, y2) = xy(parent), xy(n)
        out.append(f'  <line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   f'stroke="black" stroke-width="1"/>')
    for n in range(max_state + 1):
        x, y = xy(n)
        out.append(f'  <circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
        out.append(f'  <text x="{x + 4:.2f}" y="{y - 4:.2f}" font-size="9">{n}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


SPAN_FIELDS = ("n", "k", "span_lo", "span_hi", "spanword_prefix")


def span_rows(values: Iterable[SpanValue]) -> list[dict]:
    return [{"n": v.n, "k": v.k, "span_lo": str(v.enclosure.lo), "span_hi": str(v.enclosure.hi),
             "spanword_prefix": format_word(v.word)} for v in values]


def spans_csv(values: Iterable[SpanValue]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SPAN_FIELDS, lineterminator="\r\n")
    writer.writeheader()
    writer.writerows(span_rows(values))
    return buf.getvalue()


def read_spans_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
