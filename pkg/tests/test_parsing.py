import pytest

from locsing import PrimeField, make_ring, parse_polynomial, parse_vector
from locsing.errors import DivisionByZero, DivisionNotAllowed, PolynomialSyntaxError, UnknownVariable

from .conftest import QT


def test_basic(Rq):
    f = parse_polynomial("x^2*y + 3", Rq)
    assert len(f) == 2


def test_division_by_variable(Rq):
    with pytest.raises(DivisionNotAllowed) as info:
        Rq("x/y")
    assert info.value.position == 1


def test_division_by_constant(Rq):
    assert Rq("x/2 + x/2") == Rq("x")
    with pytest.raises(DivisionByZero):
        Rq("x/(3-3)")


@pytest.mark.parametrize(
    "text,pos",
    [("2x", 1), ("x +", 3), ("x^y", 2), ("(x", 2), ("x $ y", 2), ("", 0), ("x^-1", 2)],
)
def test_syntax_errors(Rq, text, pos):
    with pytest.raises(PolynomialSyntaxError) as info:
        Rq(text)
    assert info.value.position == pos


def test_unknown_variable(Rq):
    with pytest.raises(UnknownVariable):
        Rq("x + z")
    with pytest.raises(UnknownVariable):
        Rq("t*x")


def test_parameter():
    R = make_ring("x", QT)
    f = R("(t^2 - 1)/(t + 1)*x")
    assert str(f) == "(t - 1)*x"


def test_modular_reduction_on_parse():
    R = make_ring("x", PrimeField(5))
    assert R("x - 5") == R("x")
    assert R("x/2") == R("3*x")


def test_unary_and_precedence(Rq):
    assert Rq("-x^2") == -Rq("x^2")
    assert Rq("--x") == Rq("x")
    assert Rq("2*(x+y)^2") == Rq("2*x^2 + 4*x*y + 2*y^2")


def test_vector(Rq):
    v = parse_vector("[x + y, (x, y)^0]".replace("(x, y)^0", "1"), Rq)
    assert v.rank == 2
    with pytest.raises(PolynomialSyntaxError):
        parse_vector("x, y", Rq)
