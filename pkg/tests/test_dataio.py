import io

import numpy as np
import pytest

from nvdlap import build_graph
from nvdlap.dataio import read_edge_list, read_groups, read_node_vector, write_graph
from nvdlap.generators import gen_ba, gen_er, gen_sbm, gen_ws


def parse(text, **kw):
    return read_edge_list(io.StringIO(text), **kw)


def dump(g):
    buf = io.StringIO()
    write_graph(g, buf)
    return buf.getvalue()


def test_path_p3(path3):
    el = parse("0 1\n1 2\n")
    assert el.graph == path3
    assert el.labels == ["0", "1", "2"]


def test_merge_directions():
    el = parse("a b 2\nb a 3\n")
    assert el.graph.m == 1 and el.graph.edges()[2][0] == 5.0
    assert el.label_map == {"a": 0, "b": 1}


def test_loops_dropped():
    assert parse("0 0\n0 1\n").graph.m == 1


def test_comments_blank_lines_and_crlf():
    el = parse("% header\r\n# comment\r\n\r\nx y\r\ny z 0.5\r\n")
    assert el.labels == ["x", "y", "z"]
    assert el.graph.m == 2


def test_unweighted_flag():
    el = parse("a b 2\nb c 7\nc a 1\n", unweighted=True)
    np.testing.assert_array_equal(el.graph.edges()[2], 1.0)


@pytest.mark.parametrize("text,lineno", [("0 1\n0\n", 2), ("0 1 2 3\n", 1),
                                         ("# c\n0 1 x\n", 2), ("0 1\n1 2 -1\n", 2),
                                         ("0 1 nan\n", 1)])
def test_malformed_lines(text, lineno):
    with pytest.raises(ValueError, match=f"line {lineno}"):
        parse(text)


@pytest.mark.parametrize("text", ["", "# only comments\n\n"])
def test_empty_input(text):
    with pytest.raises(ValueError, match="empty"):
        parse(text)


def test_label_order_is_first_appearance():
    assert parse("q p\nr q\np s\n").labels == ["q", "p", "r", "s"]


def test_write_examples(path3):
    assert dump(path3) == "0 1\n1 2\n"
    assert dump(build_graph(2, [(0, 1, 2.5)])) == "0 1 2.5\n"


def test_write_isolated_nodes_uses_header():
    g = build_graph(4, [(1, 2)])
    text = dump(g)
    assert text.startswith("# nodes: 4\n")
    assert parse(text).graph == g


@pytest.mark.parametrize("g", [
    gen_er(200, 700, 1), gen_ba(150, 3, 2), gen_ws(120, 6, 0.3, 3), gen_sbm(90, 3, 0.2, 0.01, 4)[0],
    build_graph(5, [(0, 4, 0.1), (3, 1, 1e-12), (2, 4, 1.0 / 3)]),
])
def test_round_trip(g):
    assert parse(dump(g)).graph == g


def test_node_vector():
    lm = {"a": 0, "b": 1, "c": 2}
    vec = read_node_vector(io.StringIO("c 3\na -1.5\nb 2e-3\n"), lm)
    np.testing.assert_array_equal(vec.values, [-1.5, 0.002, 3.0])
    assert vec.missing == 0
    empty = read_node_vector(io.StringIO(""), lm)
    np.testing.assert_array_equal(empty.values, 0.0)
    assert empty.missing == 3


def test_node_vector_partial():
    vec = read_node_vector(io.StringIO("# x\nb 4\n"), {"a": 0, "b": 1, "c": 2})
    np.testing.assert_array_equal(vec.values, [0, 4, 0])
    assert vec.missing == 2


@pytest.mark.parametrize("text,match", [("zz 1\n", "unknown node 'zz'"),
                                        ("a 1\nb two\n", "line 2"),
                                        ("a 1\na 2\n", "twice"),
                                        ("a\n", "line 1")])
def test_node_vector_errors(text, match):
    with pytest.raises(ValueError, match=match):
        read_node_vector(io.StringIO(text), {"a": 0, "b": 1})


def test_groups():
    lm = {"a": 0, "b": 1, "c": 2, "d": 3}
    gl = read_groups(io.StringIO("a R\nb D\nd R\n"), lm)
    np.testing.assert_array_equal(gl.labels, [0, 1, -1, 0])
    assert gl.classes == ("R", "D")
    one = read_groups(io.StringIO("a R\n"), lm)
    assert one.classes == ("R",)


def test_groups_three_classes_rejected():
    with pytest.raises(ValueError, match="R, D, I"):
        read_groups(io.StringIO("a R\nb D\nc I\n"), {"a": 0, "b": 1, "c": 2})


def test_groups_unknown_node():
    with pytest.raises(ValueError, match="unknown node"):
        read_groups(io.StringIO("x R\n"), {"a": 0})
