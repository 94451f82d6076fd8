from fractions import Fraction

import pytest

from conftest import algebra, invariants
from liepoisson.algebra import LieAlgebraError
from liepoisson.io import (
    FormatError,
    format_polys,
    format_structure_constants,
    format_vectors,
    parse_polys,
    parse_structure_constants,
    parse_vectors,
)

SL2_TEXT = """
# sl_2 in the basis e, f, h
1 2 3 1
2 1 3 -1
3 1 1 2
1 3 1 -2
3 2 2 -2
2 3 2 2
"""


def test_parse_sl2_structure_constants():
    g = parse_structure_constants(SL2_TEXT)
    assert g.dim == 3
    assert g.basis_labels == ("b1", "b2", "b3")
    assert g.bracket((1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert g.bracket((0, 0, 1), (1, 0, 0)) == (2, 0, 0)
    assert g.is_valid()


def test_directives_and_fractions():
    text = "dim 4\nlabels x y z c\n1 2 3 1/2\n2 1 3 -1/2\n"
    g = parse_structure_constants(text)
    assert g.dim == 4 and g.basis_labels == ("x", "y", "z", "c")
    assert str(g.structure_constant(0, 1, 2)) == "1/2"


@pytest.mark.parametrize("name", ["sl2", "gl3", "sl4"])
def test_structure_constant_roundtrip(name, tmp_path):
    g = algebra(name)
    text = format_structure_constants(g)
    back = parse_structure_constants(text)
    assert back.basis_labels == g.basis_labels
    assert dict(back.table) == dict(g.table)
    path = tmp_path / "g.txt"
    path.write_text(text)
    assert dict(parse_structure_constants(path).table) == dict(g.table)


@pytest.mark.parametrize(
    "text,line",
    [
        ("1 2 3", 1),
        ("1 2 x 1", 1),
        ("0 1 2 1", 1),
        ("1 2 3 1\n1 2 3 2", 2),
        ("1 2 3 0.5", 1),
        ("dim x", 1),
    ],
)
def test_format_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as info:
        parse_structure_constants(text)
    assert info.value.line == line


def test_empty_and_invalid_algebras():
    with pytest.raises(FormatError):
        parse_structure_constants("# nothing here\n")
    with pytest.raises(LieAlgebraError):
        parse_structure_constants("1 2 3 1\n1 3 1 1\n")  # Jacobi fails
    with pytest.raises(LieAlgebraError):
        parse_structure_constants("1 2 3 1\n2 1 3 1\n")  # not antisymmetric
    # antisymmetric partners may be left out
    heis = parse_structure_constants("1 2 3 1\n")
    assert heis.bracket((0, 1, 0), (1, 0, 0)) == (0, 0, -1)


def test_vectors_roundtrip():
    vecs = [(1, 0, -2), (0, 1, 1)]
    assert parse_vectors(format_vectors(vecs)) == vecs
    assert parse_vectors("1, 1/2, 0\n# comment\n0 0 3\n", dim=3) == [(1, Fraction(1, 2), 0), (0, 0, 3)]
    with pytest.raises(FormatError):
        parse_vectors("1 2\n1 2 3\n")
    with pytest.raises(FormatError):
        parse_vectors("1 2\n", dim=3)


def test_polys_roundtrip():
    g = algebra("sl3")
    gens = list(invariants("sl3").gens)
    text = format_polys(gens)
    assert text.splitlines()[0] == "2*x[0]*x[2] + 2*x[1]*x[4] + 2*x[3]*x[5] + 2/3*x[6]^2 + 2/3*x[6]*x[7] + 2/3*x[7]^2"
    assert parse_polys(text, g.ring) == gens
    assert parse_polys("E12*E21 + 1/2*H1^2\n", g.ring)[0].pretty() == "E12*E21 + 1/2*H1^2"
    with pytest.raises(FormatError):
        parse_polys("x[99]\n", g.ring)
