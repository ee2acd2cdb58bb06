from locsing import UNSTABLE, ModuleVector, PrimeField, make_ring, oracle_dimension, truncated_dimension_oracle


def test_hand_count():
    R = make_ring("x,y")
    assert truncated_dimension_oracle([R("3*x^2"), R("2*y")], 5) == 2


def test_unit():
    R = make_ring("x,y")
    for D in (1, 3, 6):
        assert truncated_dimension_oracle([R.one()], D) == 0


def test_infinite_is_unstable():
    R = make_ring("x,y")
    for D in (2, 5, 8):
        assert truncated_dimension_oracle([R("y")], D) is UNSTABLE
    assert oracle_dimension([R("y")], 10) is UNSTABLE


def test_milnor_algebra_of_e6():
    R = make_ring("x,y")
    assert oracle_dimension([R("3*x^2"), R("5*y^4")]) == 8


def test_modules():
    R = make_ring("x,y")
    v1 = ModuleVector([R("x"), R("y")])
    v2 = ModuleVector([R("y"), R("x")])
    # basis e1, e2 in degree 0 and two classes in degree 1; degree 2 is killed
    assert oracle_dimension([v1, v2, ModuleVector([R("x^2"), R.zero()]), ModuleVector([R.zero(), R("x^2")])]) == 4


def test_finite_field():
    R = make_ring("x,y", PrimeField(2))
    # mu(x^2 + x^3 + y^3) over F_2: j = <x^2, y^2>
    assert oracle_dimension([R("2*x + 3*x^2"), R("3*y^2")]) == 4
