"""
Janet involutive bases

Leaders of equations are grouped by function and treated as monomials
x^i y^j in the derivation operators.  Janet division on these monomials decides
which derivatives of an equation may be used for reduction (its multiplicative
variables); prolongations by the remaining variables are reduced until nothing
new appears.  The building blocks here are shared with the Thomas
decomposition, which adds case splitting on top.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import sympy

from odelin.diffalg import VARIABLES, DerivativeSymbol, DiffPolynomial, X, Y
from odelin.errors import (InconsistentSystemError, InfiniteDimensionError,
                           NonlinearSystemError, SingularPointError)

# Logging
logger = logging.getLogger(__name__)

_STEP = {'x': (1, 0), 'y': (0, 1)}


@dataclass(eq=False)
class JanetElement:
    """Equation of a Janet basis

    :param DiffPolynomial   polynomial:     The equation (= 0)
    :param DerivativeSymbol leader:         Its leader under the active ranking
    :param frozenset        multiplicative: Multiplicative variables ('x', 'y')
    :param set              prolonged:      Variables already used for prolongation
    """
    polynomial: DiffPolynomial
    leader: DerivativeSymbol
    multiplicative: frozenset = frozenset()
    prolonged: set = field(default_factory=set)
    derived: dict = field(default_factory=dict, repr=False)

    def derive(self, theta):
        if theta == (0, 0):
            return self.polynomial
        if theta not in self.derived:
            self.derived[theta] = self.polynomial.derive(theta)
        return self.derived[theta]

    def copy(self):
        return JanetElement(self.polynomial, self.leader, self.multiplicative,
                            set(self.prolonged), self.derived)


def multiplicative_variables(index, indices):
    """Janet multiplicative variables of ``index`` within ``indices``"""
    i, j = index
    variables = set()
    if j == max(b for _, b in indices):
        variables.add('y')
    if i == max(a for a, b in indices if b == j):
        variables.add('x')
    return frozenset(variables)


def assign_multiplicative(elements):
    groups = {}
    for element in elements:
        groups.setdefault(element.leader.function, []).append(element)
    for group in groups.values():
        indices = [e.leader.index for e in group]
        for element in group:
            element.multiplicative = multiplicative_variables(element.leader.index, indices)


def janet_divisor(derivative, elements):
    """The element whose leader Janet-divides ``derivative``, with the quotient

    :return: (element, theta) or None
    """
    for element in elements:
        if not derivative.is_derivative_of(element.leader):
            continue
        theta = derivative.quotient(element.leader)
        if ((theta[0] == 0 or 'x' in element.multiplicative)
                and (theta[1] == 0 or 'y' in element.multiplicative)):
            return element, theta
    return None


def _reduction_step(p, elements, ranking):
    for derivative in ranking.sorted(p.unknowns, reverse=True):
        hit = janet_divisor(derivative, elements)
        if hit is None:
            continue
        element, theta = hit
        if theta == (0, 0) and p.degree(derivative) < element.polynomial.degree(derivative):
            continue
        return derivative, element.derive(theta)
    return None


def janet_reduce(p, elements, ranking, guard=None, normalize=None):
    """Janet normal form of p modulo ``elements``

    Pseudo-reduction: the result equals p times a product of initials and
    separants modulo the elements, up to a nonzero factor in Q(x, y).

    :param guard:       Optional callable invoked with every intermediate polynomial
    :param normalize:   Replaces the primitive part after each step; it must keep
                        the leader and its degree
    """
    while not p.is_zero:
        step = _reduction_step(p, elements, ranking)
        if step is None:
            break
        derivative, reducer = step
        p = p.pseudo_remainder(reducer, derivative)
        if not p.is_constant:
            p = p.primitive(ranking) if normalize is None else normalize(p)
        if guard is not None:
            guard(p)
    return p


def prolong_basis(basis, queue):
    """Refresh multiplicative variables and queue new prolongations"""
    assign_multiplicative(basis)
    for element in basis:
        for variable in VARIABLES:
            if variable in element.multiplicative or variable in element.prolonged:
                continue
            element.prolonged.add(variable)
            queue.append(element.derive(_STEP[variable]))


def insert_element(polynomial, basis, queue, ranking):
    """Add an equation whose leader is not Janet-reducible by ``basis``

    Elements whose leaders are proper derivatives of the new leader go back to
    the queue.
    """
    leader = polynomial.leader(ranking)
    for element in [e for e in basis if e.leader != leader and e.leader.is_derivative_of(leader)]:
        basis.remove(element)
        queue.append(element.polynomial)
    element = JanetElement(polynomial, leader)
    basis.append(element)
    prolong_basis(basis, queue)
    logger.debug("Inserted equation with leader %s (%d in basis)", leader, len(basis))
    return element


def autoreduce(basis, ranking, guard=None, normalize=None):
    """Reduce every element by the others, ascending by leader"""
    elements = sorted(basis, key=lambda e: ranking.key(e.leader))
    for position, element in enumerate(elements):
        others = elements[:position] + elements[position + 1:]
        reduced = janet_reduce(element.polynomial, others, ranking, guard, normalize)
        if normalize is not None and not reduced.is_constant:
            reduced = normalize(reduced)
        elements[position] = JanetElement(reduced, element.leader, element.multiplicative,
                                          set(element.prolonged))
    return elements


def pop_least(queue, ranking):
    """Remove and return the queued polynomial with the least leader"""
    index = min(range(len(queue)), key=lambda i: (queue[i].rank_key(ranking), i))
    return queue.pop(index)


@dataclass(frozen=True)
class DimensionPolynomial:
    """Dimension of the solution space; ``value`` None means infinite"""
    value: Optional[int]

    @property
    def is_finite(self):
        return self.value is not None

    def __str__(self):
        return "infinite" if self.value is None else str(self.value)


@dataclass(frozen=True)
class InvolutiveSystem:
    """Janet basis of a linear PDE system

    :param tuple   equations:   JanetElements, ascending by leader
    :param Ranking ranking:     Ranking of the basis
    :param tuple   unknowns:    Unknown function names
    """
    equations: tuple
    ranking: object
    unknowns: tuple

    def __len__(self):
        return len(self.equations)

    @property
    def polynomials(self):
        return [e.polynomial for e in self.equations]

    @property
    def leaders(self):
        return [e.leader for e in self.equations]

    def reduce(self, p):
        return janet_reduce(p, self.equations, self.ranking)

    def parametric_derivatives(self):
        """Derivatives that are not derivatives of any leader, ascending

        :raises InfiniteDimensionError: if there are infinitely many
        """
        result = []
        for name in self.unknowns:
            indices = [e.leader.index for e in self.equations if e.leader.function == name]
            x_bound = [a for a, b in indices if b == 0]
            y_bound = [b for a, b in indices if a == 0]
            if not x_bound or not y_bound:
                raise InfiniteDimensionError("no bound on the derivatives of %s" % name)
            for i in range(min(x_bound)):
                for j in range(min(y_bound)):
                    if not any(i >= a and j >= b for a, b in indices):
                        result.append(DerivativeSymbol(name, (i, j)))
        return self.ranking.sorted(result)

    @property
    def max_parametric_order(self):
        return max((d.order for d in self.parametric_derivatives()), default=0)

    def is_regular_point(self, point):
        """True if no leading coefficient vanishes at ``point``"""
        values = {X: sympy.Rational(point[0]), Y: sympy.Rational(point[1])}
        return all(e.polynomial.coefficient(e.leader).expr.xreplace(values) != 0
                   for e in self.equations)


def janet_complete(system, ranking=None, unknowns=None):
    """Janet involutive form of a linear PDE system over Q(x, y)

    :param system:      DeterminingSystem, InvolutiveSystem or iterable of DiffPolynomials
    :param ranking:     Ranking, defaults to the system's own
    :param unknowns:    Unknown function names, defaults to the ranking's functions
    :raises InconsistentSystemError: when a nonzero constant equation appears
    :raises NonlinearSystemError:    when an equation is not linear
    """
    ranking = ranking or system.ranking
    unknowns = tuple(unknowns or getattr(system, 'unknowns', None) or ranking.functions)
    queue = []
    for equation in getattr(system, 'equations', system):
        queue.append(equation.polynomial if isinstance(equation, JanetElement) else equation)

    basis = []
    while queue:
        p = janet_reduce(pop_least(queue, ranking), basis, ranking)
        if p.is_zero:
            continue
        if p.is_constant:
            raise InconsistentSystemError("completion produced the equation %s = 0" % p)
        if not p.is_linear():
            raise NonlinearSystemError("not a linear equation: %s" % p)
        insert_element(p.primitive(ranking), basis, queue, ranking)

    basis = autoreduce(basis, ranking)
    logger.info("Janet basis with %d equations, leaders %s",
                len(basis), ", ".join(str(e.leader) for e in basis))
    return InvolutiveSystem(tuple(basis), ranking, unknowns)


def dimension(system):
    """Number of parametric derivatives of an involutive system"""
    try:
        return DimensionPolynomial(len(system.parametric_derivatives()))
    except InfiniteDimensionError:
        return DimensionPolynomial(None)


def expansion_points():
    """(0, 0), then (1, 1), (1, 2), (2, 1), (1, 3), ... without end"""
    yield (0, 0)
    total = 2
    while True:
        for i in range(1, total):
            yield (i, total - i)
        total += 1


@dataclass(frozen=True)
class ParametricSeries:
    """Truncated Taylor series of the general solution

    ``values[d]`` is the column vector of the derivative d at ``point`` in
    terms of the parametric derivatives; the k-th unit vector selects the k-th
    basis solution.
    """
    point: tuple
    order: int
    unknowns: tuple
    parametric: tuple
    values: dict

    @property
    def dimension(self):
        return len(self.parametric)

    def value(self, derivative, k):
        return self.values[derivative][k]

    def taylor(self, name, k):
        """Taylor polynomial of the k-th basis solution for function ``name``"""
        x0, y0 = self.point
        result = sympy.S.Zero
        for derivative, vector in self.values.items():
            if derivative.function != name or vector[k] == 0:
                continue
            i, j = derivative.index
            result += (vector[k] / (math.factorial(i) * math.factorial(j))
                       * (X - x0) ** i * (Y - y0) ** j)
        return sympy.expand(result)

    def generator(self, k):
        return {name: self.taylor(name, k) for name in self.unknowns}


def series_solution(system, point=(0, 0), order=None):
    """Taylor coefficients of the solutions of an involutive linear system

    :param point:   Expansion point (x0, y0), rational
    :param order:   Truncation order, default maximal parametric order + 1
    :raises SingularPointError: when a leading coefficient vanishes at the point
    """
    parametric = system.parametric_derivatives()
    if order is None:
        order = system.max_parametric_order + 1
    x0, y0 = sympy.Rational(point[0]), sympy.Rational(point[1])
    at_point = {X: x0, Y: y0}
    size = len(parametric)
    positions = {d: k for k, d in enumerate(parametric)}

    derivatives = [DerivativeSymbol(name, (i, total - i))
                   for name in system.unknowns
                   for total in range(order + 1)
                   for i in range(total + 1)]

    values = {}
    for derivative in system.ranking.sorted(derivatives):
        if derivative in positions:
            vector = sympy.zeros(size, 1)
            vector[positions[derivative]] = 1
            values[derivative] = vector
            continue

        hit = janet_divisor(derivative, system.equations)
        if hit is None:
            raise ValueError("%s is neither parametric nor principal" % derivative)
        element, theta = hit
        reducer = element.derive(theta)

        lead = reducer.coefficient(derivative).expr.xreplace(at_point)
        if lead == 0:
            raise SingularPointError("leading coefficient of %s vanishes at %s"
                                     % (reducer, (x0, y0)))
        vector = sympy.zeros(size, 1)
        for other in reducer.unknowns - {derivative}:
            vector += reducer.coefficient(other).expr.xreplace(at_point) * values[other]
        values[derivative] = -vector / lead

    logger.debug("Series of order %d at %s with %d parameters", order, (x0, y0), size)
    return ParametricSeries((x0, y0), order, tuple(system.unknowns), tuple(parametric), values)
