"""Whitespace edge lists, node vectors and two-class group files.

Edge list lines are ``u v [w]``; node vector lines ``node value``; group
lines ``node class``. Blank lines and lines starting with ``#`` or ``%`` are
ignored, except the ``# nodes: N`` header written by :func:`write_graph`,
which declares labels ``0..N-1`` up front.
"""

from __future__ import annotations

import re
from typing import NamedTuple, TextIO

import numpy as np

from .graph import Graph, from_arrays

_NODES_HEADER = re.compile(r"^#\s*nodes:\s*(\d+)\s*$")


class EdgeList(NamedTuple):
    graph: Graph
    labels: list[str]

    @property
    def label_map(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}


class NodeVector(NamedTuple):
    values: np.ndarray
    missing: int


class GroupLabels(NamedTuple):
    """``labels[v]`` is 0 or 1 for the two classes, -1 for unlabeled."""

    labels: np.ndarray
    classes: tuple[str, ...]


def _data_lines(stream: TextIO):
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        yield lineno, line


def read_edge_list(stream: TextIO, unweighted: bool = False) -> EdgeList:
    """Parse an edge list into a simple undirected graph.

    Labels are mapped to ids in order of first appearance. Direction is
    ignored, repeated pairs are merged by summing weights and self-loops are
    dropped. ``unweighted`` sets every resulting weight to 1.
    """
    ids: dict[str, int] = {}
    labels: list[str] = []
    src, dst, wts = [], [], []
    declared = False

    def node(tok: str) -> int:
        i = ids.get(tok)
        if i is None:
            i = ids[tok] = len(labels)
            labels.append(tok)
        return i

    for lineno, line in _data_lines(stream):
        if line[0] in "#%":
            hdr = _NODES_HEADER.match(line)
            if hdr and not labels:
                declared = True
                for i in range(int(hdr.group(1))):
                    node(str(i))
            continue
        tok = line.split()
        if len(tok) not in (2, 3):
            raise ValueError(f"line {lineno}: expected 'u v [w]', got {line!r}")
        w = 1.0
        if len(tok) == 3:
            try:
                w = float(tok[2])
            except ValueError:
                raise ValueError(f"line {lineno}: weight {tok[2]!r} is not a number") from None
            if not (np.isfinite(w) and w > 0):
                raise ValueError(f"line {lineno}: weight must be finite and > 0, got {tok[2]}")
        src.append(node(tok[0]))
        dst.append(node(tok[1]))
        wts.append(w)
    if not labels or (not src and not declared):
        raise ValueError("edge list is empty")
    g = from_arrays(len(labels), src, dst, wts)
    if unweighted:
        ones = np.ones_like(g.weights)
        ones.flags.writeable = False
        g = Graph(g.n, g.offsets, g.neighbors, ones)
    return EdgeList(g, labels)


def read_node_vector(stream: TextIO, label_map: dict[str, int]) -> NodeVector:
    """Read ``node value`` lines; nodes not listed get 0 and are counted in
    ``missing``."""
    values = np.zeros(len(label_map))
    seen = np.zeros(len(label_map), dtype=bool)
    for lineno, line in _data_lines(stream):
        if line[0] in "#%":
            continue
        tok = line.split()
        if len(tok) != 2:
            raise ValueError(f"line {lineno}: expected 'node value', got {line!r}")
        if tok[0] not in label_map:
            raise ValueError(f"line {lineno}: unknown node {tok[0]!r}")
        try:
            x = float(tok[1])
        except ValueError:
            raise ValueError(f"line {lineno}: value {tok[1]!r} is not a number") from None
        i = label_map[tok[0]]
        if seen[i]:
            raise ValueError(f"line {lineno}: node {tok[0]!r} listed twice")
        values[i] = x
        seen[i] = True
    return NodeVector(values, int((~seen).sum()))


def read_groups(stream: TextIO, label_map: dict[str, int]) -> GroupLabels:
    """Read ``node class`` lines into a labeling with at most two classes.

    Classes are numbered in order of first appearance; unlisted nodes are
    unlabeled (-1).
    """
    labels = np.full(len(label_map), -1, dtype=np.int64)
    classes: list[str] = []
    for lineno, line in _data_lines(stream):
        if line[0] in "#%":
            continue
        tok = line.split()
        if len(tok) != 2:
            raise ValueError(f"line {lineno}: expected 'node class', got {line!r}")
        if tok[0] not in label_map:
            raise ValueError(f"line {lineno}: unknown node {tok[0]!r}")
        if tok[1] not in classes:
            classes.append(tok[1])
        labels[label_map[tok[0]]] = classes.index(tok[1])
    if len(classes) > 2:
        raise ValueError(f"expected at most two classes, found {len(classes)}: {', '.join(classes)}")
    return GroupLabels(labels, tuple(classes))


def _needs_header(g: Graph, u: np.ndarray, v: np.ndarray) -> bool:
    # reading assigns ids by first appearance; the header pins them when
    # that would not reproduce 0..n-1 (isolated or out-of-order nodes)
    seq = np.empty(2 * len(u), dtype=np.int64)
    seq[0::2] = u
    seq[1::2] = v
    _, first = np.unique(seq, return_index=True)
    return len(first) != g.n or not np.array_equal(seq[np.sort(first)], np.arange(g.n))


def write_graph(g: Graph, stream: TextIO) -> None:
    """Write the canonical edge list: ``u < v``, sorted, weights only when
    they differ from 1."""
    u, v, w = g.edges()
    if _needs_header(g, u, v):
        stream.write(f"# nodes: {g.n}\n")
    for a, b, x in zip(u.tolist(), v.tolist(), w.tolist()):
        if x == 1.0:
            stream.write(f"{a} {b}\n")
        else:
            stream.write(f"{a} {b} {x!r}\n")
