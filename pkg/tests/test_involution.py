import itertools

import pytest
import sympy

from conftest import poly
from odelin.diffalg import X, Y, DiffPolynomial, Ranking, function
from odelin.errors import InconsistentSystemError, NonlinearSystemError, SingularPointError
from odelin.involution import (dimension, expansion_points, janet_complete,
                               multiplicative_variables, series_solution)
from odelin.parser import parse_ode
from odelin.symmetry import SYMMETRY_RANKING, determining_system

SYMMETRIES = Ranking(('xi', 'eta'))


def symmetry_basis(text):
    return janet_complete(determining_system(parse_ode(text)))


def test_multiplicative_variables():
    indices = [(1, 0), (0, 1)]
    assert multiplicative_variables((0, 1), indices) == {'x', 'y'}
    assert multiplicative_variables((1, 0), indices) == {'x'}


def test_already_involutive():
    system = janet_complete([poly('eta_x'), poly('eta_y')], Ranking(('eta',)))
    assert set(system.polynomials) == {poly('eta_x'), poly('eta_y')}
    assert dimension(system).value == 1
    assert system.parametric_derivatives() == [function('eta')]


def test_prolongation_reduces_to_zero():
    system = janet_complete([poly('xi_y'), poly('xi_x') - poly('xi')], Ranking(('xi',)))
    assert len(system) == 2
    assert dimension(system).value == 1


def test_integrability_condition():
    # xi_x = y xi, xi_y = 0 forces xi = 0
    system = janet_complete([poly('xi_x') - DiffPolynomial(Y) * poly('xi'), poly('xi_y')],
                            Ranking(('xi',)))
    assert dimension(system).value == 0


def test_zero_dimensional():
    system = janet_complete([poly('xi'), poly('eta')], SYMMETRIES)
    assert dimension(system).value == 0
    assert system.parametric_derivatives() == []


def test_infinite_dimension():
    system = janet_complete([poly('xi_x')], Ranking(('xi',)))
    assert not dimension(system).is_finite
    assert str(dimension(system)) == 'infinite'


def test_inconsistent():
    with pytest.raises(InconsistentSystemError):
        janet_complete([poly('xi'), poly('xi') - 1], Ranking(('xi',)))


def test_nonlinear():
    with pytest.raises(NonlinearSystemError):
        janet_complete([poly('xi_x') ** 2], Ranking(('xi',)))


@pytest.mark.parametrize("text, m", [
    ("y'' = 0", 8),
    ("y'' + y = 0", 8),
    ("y''' = 0", 7),
    ("y'' + y^2 = 0", 2),
])
def test_symmetry_algebra_dimension(text, m):
    assert dimension(symmetry_basis(text)).value == m


def test_idempotent():
    basis = symmetry_basis("y'' = 0")
    again = janet_complete(basis)
    assert dimension(again) == dimension(basis)
    assert all(basis.reduce(p).is_zero for p in again.polynomials)
    assert all(again.reduce(p).is_zero for p in basis.polynomials)


def test_ranking_independent_dimension():
    system = determining_system(parse_ode("y''' = 0"))
    swapped = janet_complete(system, ranking=SYMMETRY_RANKING.swapped())
    reordered = janet_complete(system, ranking=Ranking(('eta', 'xi')), unknowns=('xi', 'eta'))
    assert dimension(swapped).value == dimension(reordered).value == 7


def test_basis_generates_the_input():
    system = determining_system(parse_ode("y'' + y'^2/y = 0"))
    basis = janet_complete(system)
    for equation in system:
        assert basis.reduce(equation).is_zero


def test_expansion_points():
    points = list(itertools.islice(expansion_points(), 6))
    assert points == [(0, 0), (1, 1), (1, 2), (2, 1), (1, 3), (2, 2)]


def test_series_satisfies_the_system():
    problem = parse_ode("y'' = 0")
    system = determining_system(problem)
    basis = janet_complete(system)
    series = series_solution(basis, (0, 0))
    assert series.dimension == 8
    for k in range(series.dimension):
        generator = series.generator(k)
        for equation in system:
            value = equation.evaluate(generator).xreplace({X: 0, Y: 0})
            assert sympy.simplify(value) == 0


def test_series_basis_vectors():
    basis = janet_complete([poly('xi_x') - poly('xi'), poly('xi_y')], Ranking(('xi',)))
    series = series_solution(basis, (0, 0), order=3)
    assert series.taylor('xi', 0) == 1 + X + X ** 2 / 2 + X ** 3 / 6


def test_singular_point():
    basis = janet_complete([DiffPolynomial(X) * poly('xi_x') - poly('xi'), poly('xi_y'),
                            poly('eta')], SYMMETRIES)
    assert not basis.is_regular_point((0, 0))
    assert basis.is_regular_point((1, 1))
    with pytest.raises(SingularPointError):
        series_solution(basis, (0, 0))
    assert series_solution(basis, (1, 1)).taylor('xi', 0) == X


@pytest.mark.parametrize("text", ["y'' = 0", "y'' + y'^2/y = 0"])
def test_series_residuals_vanish_to_order(text):
    system = determining_system(parse_ode(text))
    series = series_solution(janet_complete(system), (1, 1), order=4)
    eps, s, t = sympy.symbols('eps s t')
    for k in range(series.dimension):
        generator = series.generator(k)
        for equation in system:
            exact = series.order - max(d.order for d in equation.derivatives)
            if exact < 0:
                continue
            value = equation.evaluate(generator).xreplace({X: 1 + eps * s, Y: 1 + eps * t})
            expansion = sympy.expand(sympy.series(value, eps, 0, exact + 1).removeO())
            for power in range(exact + 1):
                assert sympy.simplify(expansion.coeff(eps, power)) == 0
