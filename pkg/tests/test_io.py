import numpy as np
import pytest

from holomorph.errors import NotAssociative, ParseError
from holomorph.groups import dihedral, symmetric, table_of
from holomorph.io import format_pgrp, parse_pgrp, read_ctab, read_pgrp, write_ctab, write_pgrp


def test_ctab_round_trip(tmp_path):
    G = dihedral(5)
    path = tmp_path / "d5.ctab"
    write_ctab(G, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "10"
    assert lines[1].split() == [str(i) for i in range(1, 11)]
    H = read_ctab(path)
    assert np.array_equal(table_of(H), table_of(G))


def test_ctab_errors(tmp_path):
    p = tmp_path / "x.ctab"
    p.write_text("2\n1 2\n")
    with pytest.raises(ParseError):
        read_ctab(p)
    p.write_text("2\n2 1\n1 2\n")
    with pytest.raises(ParseError):
        read_ctab(p)
    p.write_text("2\n1 a\n2 1\n")
    with pytest.raises(ParseError):
        read_ctab(p)
    # identity first, but (2*2)*3 != 2*(2*3)
    p.write_text("3\n1 2 3\n2 3 2\n3 1 1\n")
    with pytest.raises(ValueError):
        read_ctab(p)


def test_ctab_non_associative(tmp_path):
    # a Latin square with identity 1 that is not a group (order-5 loop)
    rows = ["1 2 3 4 5", "2 1 4 5 3", "3 5 1 2 4", "4 3 5 1 2", "5 4 2 3 1"]
    p = tmp_path / "loop.ctab"
    p.write_text("5\n" + "\n".join(rows) + "\n")
    with pytest.raises(NotAssociative):
        read_ctab(p)


def test_pgrp_round_trip(tmp_path):
    text = "# symmetric group\nname S4\ndegree 4\ngen 2 1 3 4\ngen 2 3 4 1\nend\n"
    name, degree, gens = parse_pgrp(text)
    assert (name, degree) == ("S4", 4)
    assert gens == [[1, 0, 2, 3], [1, 2, 3, 0]]
    assert parse_pgrp(format_pgrp(name, degree, gens)) == (name, degree, gens)
    path = tmp_path / "s4.pgrp"
    write_pgrp(name, degree, gens, path)
    G = read_pgrp(path)
    assert G.order == 24 and G.histogram() == symmetric(4).histogram()


@pytest.mark.parametrize(
    "text",
    [
        "name X\ndegree 3\ngen 1 2 3\n",  # no end
        "name X\ngen 1 2 3\ndegree 3\nend\n",  # gen before degree
        "name X\ndegree 3\ngen 1 1 3\nend\n",  # not a permutation
        "name X\ndegree 3\nend\n",  # no generators
        "name X\ndegree three\ngen 1 2 3\nend\n",
        "name X\ndegree 3\nfoo 1\nend\n",
        "degree 2\ngen 2 1\nend\ngen 1 2\n",
    ],
)
def test_pgrp_errors(text):
    with pytest.raises(ParseError):
        parse_pgrp(text)
