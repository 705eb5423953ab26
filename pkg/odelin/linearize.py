"""
Linearizing differential system and Test II

A point transformation u = phi(x, y), t = psi(x, y) maps the ODE to a linear
one in Laguerre-Forsyth form iff substituting the transformed derivatives
u^(k)(t) into the linear form and eliminating y^(n) against the ODE gives an
identity in y', ..., y^(n-1).  Splitting that identity over the jet monomials
yields a PDE system in phi, psi and the coefficients a_k, which is consistent
iff the ODE is linearizable.  The Thomas decomposition decides consistency.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import sympy

from odelin.diffalg import (DiffPolynomial, DiffRational, Ranking, decode_symbol, function,
                            jet, jet_symbol, partial_derivative_expr)
from odelin.errors import UnsupportedOrderError
from odelin.thomas import DifferentialSystem, SimpleSystem, thomas_decompose

# Logging
logger = logging.getLogger(__name__)

PHI = function('phi')
PSI = function('psi')


def coefficient_name(k):
    """Name of the coefficient function of u^(k) in the target form"""
    return 'a%d' % k


@dataclass(frozen=True)
class PointTransformation:
    """u = phi(x, y), t = psi(x, y) as differential polynomials"""

    @property
    def phi(self):
        return DiffPolynomial.of(PHI)

    @property
    def psi(self):
        return DiffPolynomial.of(PSI)

    @property
    def jacobian(self):
        """J = phi_x psi_y - phi_y psi_x"""
        return (DiffPolynomial.of(PHI.diff('x')) * DiffPolynomial.of(PSI.diff('y'))
                - DiffPolynomial.of(PHI.diff('y')) * DiffPolynomial.of(PSI.diff('x')))

    @property
    def dpsi(self):
        """D_x psi = psi_x + psi_y y'"""
        return self.psi.total_derivative()


@dataclass(frozen=True)
class TargetLinearForm:
    """u^(n) + a_{n-3}(t) u^(n-3) + ... + a_0(t) u = 0, just u'' = 0 for n = 2"""
    n: int

    @property
    def coefficients(self):
        return tuple(coefficient_name(k) for k in range(self.n - 2))

    def render(self):
        terms = ["u^(%d)" % self.n]
        for k in reversed(range(self.n - 2)):
            terms.append("%s(t)*%s" % (coefficient_name(k),
                                       "u" if k == 0 else "u^(%d)" % k))
        return " + ".join(terms) + " = 0"


def pushforward_numerators(n):
    """P_1, ..., P_n with u^(k)(t) = P_k / (D_x psi)^(2k-1)"""
    if n < 1:
        raise ValueError("order must be positive")
    transformation = PointTransformation()
    dpsi = transformation.dpsi
    ddpsi = dpsi.total_derivative(jet_bound=n)
    numerators = [transformation.phi.total_derivative()]
    for k in range(2, n + 1):
        previous = numerators[-1]
        numerators.append(previous.total_derivative(jet_bound=n) * dpsi
                          - (2 * k - 3) * previous * ddpsi)
    return numerators


def pushforward_derivatives(n):
    """u'(t), ..., u^(n)(t) as DiffRationals in the jets of y(x)"""
    dpsi = PointTransformation().dpsi
    return [DiffRational(p, dpsi ** (2 * k - 1))
            for k, p in enumerate(pushforward_numerators(n), start=1)]


@dataclass(frozen=True)
class LinearizingSystem:
    """PDE system whose solutions are the linearizing transformations

    :param problem:         The ODEProblem
    :param system:          DifferentialSystem in phi, psi, a_k, params and funcs
    :param Ranking ranking: phi > psi > a_0 > ... > params > funcs
    :param target:          TargetLinearForm
    """
    problem: object
    system: DifferentialSystem
    ranking: Ranking
    target: TargetLinearForm
    transformation: PointTransformation = PointTransformation()

    @property
    def equations(self):
        return self.system.equations

    @property
    def inequations(self):
        return self.system.inequations


def _target_numerator(n, numerators, transformation):
    """The target form times (D_x psi)^(2n-1)"""
    dpsi = transformation.dpsi
    result = numerators[n - 1]
    for k in range(1, n - 2):
        result += (DiffPolynomial.of(function(coefficient_name(k)))
                   * numerators[k - 1] * dpsi ** (2 * (n - k)))
    if n >= 3:
        result += (DiffPolynomial.of(function(coefficient_name(0)))
                   * transformation.phi * dpsi ** (2 * n - 1))
    return result


def linearizing_system(problem):
    """Linearizing differential system of ``problem``"""
    n = problem.n
    transformation = PointTransformation()
    target = TargetLinearForm(n)
    ranking = Ranking(('phi', 'psi') + target.coefficients + problem.params + problem.funcs)

    # y^(n) coefficient of W is -J (D_x psi)^(n-2); y^(n) -> -M/N
    transformed = _target_numerator(n, pushforward_numerators(n), transformation)
    top = jet(n)
    leading = transformed.coefficient(top)
    rest = transformed.coefficient(top, 0)
    identity = problem.denominator * rest - leading * problem.numerator

    equations = []
    for coefficient in identity.collect_coefficients(problem.lower_jets).values():
        if coefficient.is_zero:
            continue
        equation = coefficient.primitive(ranking)
        if equation not in equations:
            equations.append(equation)
    equations.sort(key=lambda e: (e.rank_key(ranking), e.render()))

    for name in problem.params:
        parameter = function(name)
        equations.append(DiffPolynomial.of(parameter.diff('x')))
        equations.append(DiffPolynomial.of(parameter.diff('y')))
    for name in target.coefficients:
        a = function(name)
        equations.append(DiffPolynomial.of(PSI.diff('y')) * DiffPolynomial.of(a.diff('x'))
                         - DiffPolynomial.of(PSI.diff('x')) * DiffPolynomial.of(a.diff('y')))

    system = DifferentialSystem(tuple(equations), (transformation.jacobian,))
    logger.info("Linearizing system of order %d ODE: %d equations in %s",
                n, len(equations), ", ".join(ranking.functions))
    return LinearizingSystem(problem, system, ranking, target, transformation)


def linearization_test_2(problem, limits=None):
    """Test II: Thomas decomposition of the linearizing system

    The result is empty iff ``problem`` is not linearizable.

    :param limits:  DecompositionLimits
    :raises ResourceLimitError: when the decomposition exceeds ``limits``
    """
    linearizing = linearizing_system(problem)
    result = thomas_decompose(linearizing.system, linearizing.ranking, limits)
    logger.info("Test II: %d simple systems", len(result))
    return result


def transformation_residuals(system, assignment):
    """Equations and inequations of a system at explicit functions

    :param system:      LinearizingSystem, DifferentialSystem or SimpleSystem
    :param assignment:  Function name -> sympy expression in x, y
    :return:            (equation values, inequation values), simplified
    """
    system = getattr(system, 'system', system)
    if isinstance(system, SimpleSystem):
        return system.residuals(assignment)
    equations = [sympy.simplify(p.evaluate(assignment)) for p in system.equations]
    inequations = [sympy.simplify(q.evaluate(assignment)) for q in system.inequations]
    return equations, inequations


@dataclass(frozen=True)
class LieCriterion:
    """Lie's test for y'' + F3 y'^3 + F2 y'^2 + F1 y' + F0 = 0

    :param bool  cubic:         f is a cubic polynomial in y'
    :param tuple coefficients:  F0, ..., F3 as sympy expressions
    :param tuple conditions:    Numerators of the two conditions (DiffPolynomials)
    :param holds:               True or False, None when the conditions still
                                involve undetermined functions
    """
    cubic: bool
    coefficients: tuple = ()
    conditions: tuple = ()
    holds: Optional[bool] = False

    def render(self):
        return [c.render() for c in self.conditions]


def _lie_expressions(f0, f1, f2, f3):
    def d(expr, *variables):
        for variable in variables:
            expr = partial_derivative_expr(expr, variable)
        return expr

    first = (3 * d(f3, 'x', 'x') - 2 * d(f2, 'x', 'y') + d(f1, 'y', 'y')
             - 3 * f1 * d(f3, 'x') + 2 * f2 * d(f2, 'x') - 3 * f3 * d(f1, 'x')
             + 3 * f0 * d(f3, 'y') + 6 * f3 * d(f0, 'y') - f2 * d(f1, 'y'))
    second = (d(f2, 'x', 'x') - 2 * d(f1, 'x', 'y') + 3 * d(f0, 'y', 'y')
              - 6 * f0 * d(f3, 'x') + f1 * d(f2, 'x') - 3 * f3 * d(f0, 'x')
              + 3 * f0 * d(f2, 'y') + 3 * f2 * d(f0, 'y') - 2 * f1 * d(f1, 'y'))
    return first, second


def _constant_parameters(expr, params):
    """Derivatives of parameters mapped to zero"""
    zero = {}
    for symbol in expr.free_symbols:
        derivative = decode_symbol(symbol)
        if derivative is not None and derivative.function in params and derivative.order:
            zero[symbol] = 0
    return zero


def lie_conditions(problem):
    """Lie's linearizability conditions for a second order ODE

    :raises UnsupportedOrderError: when the ODE is not of order 2
    """
    if problem.n != 2:
        raise UnsupportedOrderError("Lie's criterion needs a second order ODE, got order %d"
                                    % problem.n)
    slope = jet_symbol(1)
    numerator, denominator = problem.numerator.expr, problem.denominator.expr
    if slope in denominator.free_symbols or sympy.degree(numerator, slope) > 3:
        logger.info("Right hand side is not a cubic polynomial in y'")
        return LieCriterion(False)

    coefficients = tuple(sympy.cancel(numerator.coeff(slope, k) / denominator) for k in range(4))
    conditions = []
    for expr in _lie_expressions(*coefficients):
        expr = sympy.together(expr.xreplace(_constant_parameters(expr, problem.params)))
        conditions.append(DiffPolynomial(sympy.fraction(sympy.cancel(expr))[0]))

    if all(c.is_zero for c in conditions):
        holds = True
    elif problem.has_unknowns:
        holds = None
    else:
        holds = False
    logger.info("Lie's conditions: %s", "hold" if holds else "do not hold" if holds is False
                else "constrain %s" % ", ".join(problem.params + problem.funcs))
    return LieCriterion(True, coefficients, tuple(conditions), holds)
