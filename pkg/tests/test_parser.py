import pytest
import sympy

from conftest import EQ22, EQ27, LIE_FAMILY, LIE_FUNCS, poly
from odelin.diffalg import X, Y, DiffPolynomial, DiffRational, jet_symbol
from odelin.errors import ODEParseError
from odelin.parser import declared_name, parse_ode, parse_polynomial


def test_second_order():
    problem = parse_ode("y'' + y'^2/y = 0")
    assert problem.n == 2
    assert problem.f == DiffRational(DiffPolynomial(jet_symbol(1) ** 2), DiffPolynomial(Y))
    assert not problem.has_unknowns


def test_right_hand_side():
    problem = parse_ode("y'' = -y")
    assert problem.f == DiffPolynomial(Y)


def test_d_notation():
    problem = parse_ode("D(y,3) = 0")
    assert problem.n == 3
    assert problem.f.numerator.is_zero


def test_high_order_notation():
    problem = parse_ode("D(y,6) + x*D(y,5) = 0")
    assert problem.n == 6
    assert [j.index[0] for j in problem.lower_jets] == [1, 2, 3, 4, 5]


def test_leading_coefficient_divided_out():
    problem = parse_ode("x*y''' + y = 0")
    assert problem.f == DiffRational(DiffPolynomial(Y), DiffPolynomial(X))


def test_decimals_are_exact():
    problem = parse_ode("y'' + 0.5*y = 0")
    assert problem.f.as_expr() == Y / 2


def test_examples_parse():
    assert parse_ode(EQ22).n == 3
    assert parse_ode(EQ27).n == 3


def test_parameters_and_functions():
    problem = parse_ode("y'' + k*y + h(x,y)*y' = 0", params=['k'], funcs=['h(x,y)'])
    assert problem.params == ('k',)
    assert problem.funcs == ('h',)
    assert problem.has_unknowns


def test_function_derivatives():
    problem = parse_ode("y'' + h_x*y' = 0", funcs=['h'])
    assert problem.f == poly('h_x') * DiffPolynomial(jet_symbol(1))


def test_lie_family():
    problem = parse_ode(LIE_FAMILY, funcs=LIE_FUNCS)
    assert problem.n == 2
    assert problem.funcs == tuple(LIE_FUNCS)


@pytest.mark.parametrize("text, message", [
    ("y' = y", "order < 2"),
    ("y''^2 + y = 0", "not quasi-linear"),
    ("1/y'' + y = 0", "not quasi-linear"),
    ("x + y = 0", "highest derivative missing"),
    ("y'' + z = 0", "unknown name"),
    ("y'' + y_x = 0", "unknown name"),
    ("y'' + y_xy*x = 0", "unknown name"),
    ("y'' + h(x,y) = 0", "not a declared function"),
    ("y'' + 1/0 = 0", "division by zero"),
    ("y'' + y^(1/2) = 0", "exponents"),
])
def test_rejected(text, message):
    with pytest.raises(ODEParseError, match=message):
        parse_ode(text)


def test_syntax_error_position():
    with pytest.raises(ODEParseError) as info:
        parse_ode("y'' + * y = 0")
    assert info.value.position is not None


def test_highest_derivative_on_right_hand_side():
    with pytest.raises(ODEParseError, match="quasi-linear"):
        parse_ode("y'' = y''^2")


@pytest.mark.parametrize("name", ['x', 'D', 'phi', 'xi', 'a0', 'a12', '2k', 'h-1'])
def test_reserved_names(name):
    with pytest.raises(ODEParseError):
        declared_name(name)


def test_duplicate_names():
    with pytest.raises(ODEParseError, match="declared twice: k"):
        parse_ode("y'' + k = 0", params=['k'], funcs=['k'])


@pytest.mark.parametrize("text", ["y'' + y'^2/y = 0", EQ22, EQ27, "D(y,5) + x^2*y = 0"])
def test_render_parses_back(text):
    problem = parse_ode(text)
    again = parse_ode(problem.render())
    assert again.n == problem.n
    assert again.f == problem.f


def random_polynomial(rng, n):
    """Random polynomial text in x, y, y', ..., y^(n-1) with its sympy value"""
    atoms = [('x', X), ('y', Y)] + [("D(y,%d)" % k, jet_symbol(k)) for k in range(1, n)]
    text, value = [], sympy.S.Zero
    for position in range(rng.randint(1, 4)):
        coefficient = rng.randint(1, 9)
        sign = rng.choice([1, -1])
        factors, term = ["%d" % coefficient], sympy.Integer(coefficient)
        for name, symbol in rng.sample(atoms, rng.randint(0, min(3, len(atoms)))):
            power = rng.randint(1, 3)
            factors.append(name if power == 1 else "%s^%d" % (name, power))
            term *= symbol ** power
        if position == 0:
            text.append(("-" if sign < 0 else "") + "*".join(factors))
        else:
            text.append(("- " if sign < 0 else "+ ") + "*".join(factors))
        value += sign * term
    return " ".join(text), value


def test_random_round_trip(rng):
    for _ in range(60):
        n = rng.randint(2, 5)
        numerator, expected = random_polynomial(rng, n)
        text = "D(y,%d) + (%s)" % (n, numerator)
        if rng.random() < 0.5:
            denominator, value = random_polynomial(rng, n)
            if value == 0:
                continue
            text += "/(%s)" % denominator
            expected = expected / value
        problem = parse_ode(text + " = 0")
        assert problem.n == n
        assert sympy.cancel(problem.f.as_expr() - expected) == 0
        again = parse_ode(problem.render())
        assert again.f == problem.f


def test_parse_polynomial():
    p = parse_polynomial("phi_xy*y'' - 2*psi = 0", functions=('phi', 'psi'))
    assert p == poly('phi_xy') * DiffPolynomial(jet_symbol(2)) - 2 * poly('psi')
    assert parse_polynomial(p.render(), functions=('phi', 'psi')) == p


def test_parse_polynomial_rejects_fractions():
    with pytest.raises(ODEParseError):
        parse_polynomial("phi/psi", functions=('phi', 'psi'))


def test_exact_arithmetic():
    problem = parse_ode("y'' + (1/3)*x*y = 0")
    assert problem.f.as_expr() == sympy.Rational(1, 3) * X * Y
