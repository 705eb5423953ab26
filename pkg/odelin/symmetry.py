"""
Lie point symmetries of quasi-linear ODEs

The generator ``xi(x, y) d/dx + eta(x, y) d/dy`` is prolonged to the jet
variables by ``eta^(k) = D_x eta^(k-1) - y^(k) D_x xi`` and applied to
``y^(n) + M/N``.  Replacing y^(n) by -M/N, clearing N and splitting by the
monomials in y', ..., y^(n-1) gives the linear determining system for xi, eta.
"""
import logging
from dataclasses import dataclass

import sympy

from odelin.diffalg import DiffPolynomial, Ranking, X, Y, function, jet
from odelin.errors import JetOverflowError, ParametersPresentError

# Logging
logger = logging.getLogger(__name__)

XI = function('xi')
ETA = function('eta')

# xi > eta, d/dx > d/dy
SYMMETRY_RANKING = Ranking(('xi', 'eta'))


@dataclass(frozen=True)
class SymmetryGenerator:
    """Prolonged point symmetry generator

    :param int   n:             Highest prolongation order
    :param tuple coefficients:  eta^(0), ..., eta^(n)
    """
    n: int
    coefficients: tuple

    @property
    def xi(self):
        return DiffPolynomial.of(XI)

    @property
    def eta(self):
        return self.coefficients[0]

    def apply(self, p):
        """Prolonged generator applied to a polynomial in x, y and jets"""
        expr = p.expr
        result = self.xi.expr * sympy.diff(expr, X) + self.eta.expr * sympy.diff(expr, Y)
        for derivative in p.jets:
            k = derivative.index[0]
            if k > self.n:
                raise JetOverflowError("generator prolonged to order %d only" % self.n)
            result += self.coefficients[k].expr * sympy.diff(expr, derivative.symbol)
        return DiffPolynomial(result)


@dataclass(frozen=True)
class DeterminingSystem:
    """Linear homogeneous PDE system for xi, eta

    :param tuple   equations:   DiffPolynomials, ascending by leader
    :param Ranking ranking:     Ranking used for leaders and normalization
    :param int     n:           Order of the ODE it was built from
    """
    equations: tuple
    ranking: Ranking = SYMMETRY_RANKING
    n: int = 2

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)


def prolong(n):
    """Prolongation of the generic generator up to order n"""
    if n < 0:
        raise ValueError("prolongation order must be nonnegative")
    dxi = DiffPolynomial.of(XI).total_derivative()
    coefficients = [DiffPolynomial.of(ETA)]
    for k in range(1, n + 1):
        previous = coefficients[-1].total_derivative(jet_bound=n)
        coefficients.append(previous - DiffPolynomial.of(jet(k)) * dxi)
    return SymmetryGenerator(n, tuple(coefficients))


def determining_system(problem):
    """Determining system of the point symmetries of ``problem``

    :raises ParametersPresentError: when the problem has parameters or
                                    undetermined functions
    """
    if problem.has_unknowns:
        raise ParametersPresentError()

    n = problem.n
    generator = prolong(n)
    top = generator.coefficients[n]
    numerator, denominator = problem.numerator, problem.denominator

    # eta^(n) = A + B y^(n), then y^(n) -> -M/N, times N^2
    a = top.coefficient(jet(n), 0)
    b = top.coefficient(jet(n), 1)
    condition = (denominator * (a * denominator - b * numerator)
                 + denominator * generator.apply(numerator)
                 - numerator * generator.apply(denominator))

    coefficients = condition.collect_coefficients(problem.lower_jets)
    equations = [c.primitive(SYMMETRY_RANKING) for c in coefficients.values() if not c.is_zero]
    equations.sort(key=lambda e: (e.rank_key(SYMMETRY_RANKING), e.render()))
    logger.info("Determining system of order %d ODE: %d equations", n, len(equations))
    return DeterminingSystem(tuple(equations), SYMMETRY_RANKING, n)


def symmetry_residuals(system, xi, eta):
    """Determining equations evaluated at explicit xi(x, y), eta(x, y)"""
    assignment = {'xi': sympy.sympify(xi), 'eta': sympy.sympify(eta)}
    return [sympy.simplify(e.evaluate(assignment)) for e in system.equations]


def check_symmetry(problem, xi, eta):
    """True if xi d/dx + eta d/dy is a point symmetry of ``problem``"""
    return all(r == 0 for r in symmetry_residuals(determining_system(problem), xi, eta))
