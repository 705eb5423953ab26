import pytest
import sympy
from sympy import exp

from conftest import EQ27, LIE_FAMILY, LIE_FUNCS, poly, square_family
from odelin.diffalg import X, Y, DiffPolynomial, DiffRational, jet, jet_symbol
from odelin.errors import UnsupportedOrderError
from odelin.linearize import (PointTransformation, TargetLinearForm, coefficient_name,
                              lie_conditions, linearizing_system, pushforward_derivatives,
                              pushforward_numerators, transformation_residuals)
from odelin.parser import parse_ode

EQ24 = ("2*x^2*y*y'''' + x^2*y^2 + h(x,y)*y'*y''' + 16*x*y*y''' + 6*x^2*y''^2"
        " + 48*x*y'*y'' + 24*y*y'' + 24*y'^2 = 0")

IDENTITY = {'phi': Y, 'psi': X}


def vanishes(values):
    return all(sympy.simplify(v) == 0 for v in values)


class TestPushforward:

    def test_identity_transformation(self):
        for k, derivative in enumerate(pushforward_derivatives(4), start=1):
            value = (derivative.numerator.evaluate(IDENTITY)
                     / derivative.denominator.evaluate(IDENTITY))
            assert sympy.simplify(value - jet_symbol(k)) == 0

    def test_first_derivative(self):
        first = pushforward_derivatives(1)[0]
        assert first == DiffRational(poly('phi_x') + poly('phi_y') * DiffPolynomial(jet_symbol(1)),
                                     poly('psi_x') + poly('psi_y') * DiffPolynomial(jet_symbol(1)))

    def test_highest_jet_coefficient(self):
        transformation = PointTransformation()
        numerators = pushforward_numerators(4)
        for k in range(2, 5):
            expected = -transformation.jacobian * transformation.dpsi ** (k - 2)
            assert numerators[k - 1].coefficient(jet(k)) == expected

    def test_exponential_time(self):
        # t = e^x, u = y: u'(t) = e^-x y'
        first = pushforward_derivatives(2)[0]
        assignment = {'phi': Y, 'psi': exp(X)}
        value = first.numerator.evaluate(assignment) / first.denominator.evaluate(assignment)
        assert sympy.simplify(value - exp(-X) * jet_symbol(1)) == 0

    def test_order_must_be_positive(self):
        with pytest.raises(ValueError):
            pushforward_numerators(0)


class TestTargetForm:

    def test_coefficients(self):
        assert TargetLinearForm(2).coefficients == ()
        assert TargetLinearForm(3).coefficients == ('a0',)
        assert TargetLinearForm(5).coefficients == ('a0', 'a1', 'a2')
        assert coefficient_name(7) == 'a7'

    def test_render(self):
        assert TargetLinearForm(4).render() == "u^(4) + a1(t)*u^(1) + a0(t)*u = 0"


class TestLinearizingSystem:

    def test_free_particle(self):
        linearizing = linearizing_system(parse_ode("y'' = 0"))
        assert linearizing.ranking.functions == ('phi', 'psi')
        assert linearizing.inequations == (PointTransformation().jacobian,)
        assert 0 < len(linearizing.equations) <= 4
        equations, inequations = transformation_residuals(linearizing, IDENTITY)
        assert vanishes(equations)
        assert inequations == [-1]

    def test_equations_are_free_of_jets(self):
        linearizing = linearizing_system(parse_ode("y''' + y'^2/y = 0"))
        for equation in linearizing.equations:
            assert not equation.jets
            assert equation.functions <= {'phi', 'psi', 'a0'}

    def test_lie_family(self):
        problem = parse_ode(LIE_FAMILY, funcs=LIE_FUNCS)
        linearizing = linearizing_system(problem)
        assert linearizing.target.coefficients == ()
        assert linearizing.ranking.functions == ('phi', 'psi', 'F3', 'F2', 'F1', 'F0')
        assert len(linearizing.equations) == 4
        assert len(linearizing.inequations) == 1

    def test_parameters_are_constant(self):
        linearizing = linearizing_system(parse_ode("y'' + k*y = 0", params=['k']))
        assert poly('k_x') in linearizing.equations
        assert poly('k_y') in linearizing.equations

    def test_fourth_order_with_function(self):
        problem = parse_ode(EQ24, funcs=['h'])
        linearizing = linearizing_system(problem)
        assert linearizing.ranking.functions == ('phi', 'psi', 'a0', 'a1', 'h')
        coefficient_conditions = [
            poly('psi_y') * poly(name + '_x') - poly('psi_x') * poly(name + '_y')
            for name in ('a0', 'a1')]
        for condition in coefficient_conditions:
            assert condition in linearizing.equations
        assignment = {'phi': X ** 2 * Y ** 2, 'psi': X, 'a0': 1, 'a1': 0, 'h': 8 * X ** 2}
        equations, inequations = transformation_residuals(linearizing, assignment)
        assert vanishes(equations)
        assert all(q != 0 for q in inequations)

    def test_wrong_function_value(self):
        problem = parse_ode(EQ24, funcs=['h'])
        assignment = {'phi': X ** 2 * Y ** 2, 'psi': X, 'a0': 1, 'a1': 0, 'h': 0}
        equations, _ = transformation_residuals(linearizing_system(problem), assignment)
        assert not vanishes(equations)

    @pytest.mark.parametrize("text, assignment", [
        ("y'' + y'^2/y = 0", {'phi': Y ** 2, 'psi': X}),
        ("y'' + 2 = 0", {'phi': Y + X ** 2, 'psi': X}),
        (square_family(3), {'phi': Y ** 2, 'psi': X, 'a0': 1}),
        (EQ27, {'phi': Y ** 2, 'psi': exp(X), 'a0': -2 * exp(-3 * X)}),
    ])
    def test_known_transformations(self, text, assignment):
        linearizing = linearizing_system(parse_ode(text))
        equations, inequations = transformation_residuals(linearizing, assignment)
        assert vanishes(equations)
        assert all(q != 0 for q in inequations)


class TestLieConditions:

    @pytest.mark.parametrize("text", [
        "y'' = 0",
        "y'' + y = 0",
        "y'' + y'^2/y = 0",
        "y'' + 3*y*y' + y^3 = 0",
        "y'' + y'^3 = 0",
    ])
    def test_linearizable(self, text):
        criterion = lie_conditions(parse_ode(text))
        assert criterion.cubic
        assert criterion.holds is True
        assert criterion.render() == ['0', '0']

    def test_not_linearizable(self):
        criterion = lie_conditions(parse_ode("y'' + y^2 = 0"))
        assert criterion.holds is False
        assert criterion.conditions[1] == DiffPolynomial(6)

    def test_not_cubic(self):
        criterion = lie_conditions(parse_ode("y'' + y'^4 = 0"))
        assert not criterion.cubic
        assert criterion.holds is False

    def test_slope_in_denominator(self):
        criterion = lie_conditions(parse_ode("y'' + 1/(1 + y'^2) = 0"))
        assert not criterion.cubic

    def test_undetermined_functions(self):
        criterion = lie_conditions(parse_ode(LIE_FAMILY, funcs=LIE_FUNCS))
        assert criterion.holds is None
        first, second = criterion.conditions
        assert first.coefficient(poly('F3_xx').expr) == DiffPolynomial(3)
        assert first.coefficient(poly('F2_xy').expr) == DiffPolynomial(-2)
        assert second.coefficient(poly('F0_yy').expr) == DiffPolynomial(3)

    def test_constant_parameter(self):
        criterion = lie_conditions(parse_ode("y'' + k*y^2 = 0", params=['k']))
        assert criterion.holds is None
        assert criterion.conditions[0].is_zero
        assert criterion.conditions[1] == 6 * poly('k')

    @pytest.mark.parametrize("text", ["y'' + k*y = 0", "y'' + k*y'^2/y = 0"])
    def test_parameter_free_conditions_decide(self, text):
        criterion = lie_conditions(parse_ode(text, params=['k']))
        assert criterion.holds is True

    def test_order_three(self):
        with pytest.raises(UnsupportedOrderError):
            lie_conditions(parse_ode("y''' = 0"))
