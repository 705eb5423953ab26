"""
Structure of the Lie symmetry algebra

The Taylor series of the general solution of the involutive determining system
gives one truncated vector field per parametric derivative.  Brackets of these
fields, read off at the expansion point in the parametric coordinates, are the
structure constants.  The derived algebra decides Test I for the cases where
the dimension alone does not.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

import sympy

from odelin.diffalg import DerivativeSymbol, X, Y
from odelin.errors import InfiniteDimensionError, SingularPointError, TruncationError
from odelin.involution import (dimension, expansion_points, janet_complete,
                               series_solution)
from odelin.symmetry import determining_system

# Logging
logger = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = 64


@dataclass(frozen=True)
class LieAlgebraStructure:
    """Lie algebra given by its structure constants

    ``constants[(i, j)][k]`` is C^k_ij for 0 <= i < j < m, i.e.
    [X_i, X_j] = sum_k C^k_ij X_k.

    :param int  dimension:  m
    :param dict constants:  (i, j) -> tuple of m rationals, i < j
    :param tuple point:     Expansion point the constants were read at, if any
    """
    dimension: int
    constants: dict = field(repr=False)
    point: Optional[tuple] = None

    @classmethod
    def from_table(cls, m, table):
        """Build from a sparse table ``{(i, j): {k: value}}`` of 0-based indices"""
        constants = {}
        for (i, j), column in table.items():
            if not (0 <= i < m and 0 <= j < m) or i == j:
                raise ValueError("invalid index pair (%d, %d)" % (i, j))
            vector = [sympy.S.Zero] * m
            for k, value in column.items():
                vector[k] = sympy.Rational(value)
            if i > j:
                i, j = j, i
                vector = [-v for v in vector]
            constants[(i, j)] = tuple(vector)
        return cls(m, constants)

    def structure_vector(self, i, j):
        """Coordinates of [X_i, X_j]"""
        if i == j:
            return (sympy.S.Zero,) * self.dimension
        if i < j:
            return self.constants.get((i, j), (sympy.S.Zero,) * self.dimension)
        return tuple(-v for v in self.structure_vector(j, i))

    def bracket(self, u, v):
        """Bracket of two elements given by coordinate vectors"""
        result = [sympy.S.Zero] * self.dimension
        for i, j in itertools.combinations(range(self.dimension), 2):
            weight = u[i] * v[j] - u[j] * v[i]
            if weight == 0:
                continue
            for k, value in enumerate(self.structure_vector(i, j)):
                result[k] += weight * value
        return tuple(result)

    def check(self):
        """Verify the Jacobi identity on the basis

        Antisymmetry holds by construction.

        :raises ValueError: on a violation
        """
        m = self.dimension
        basis = [tuple(sympy.S.One if a == b else sympy.S.Zero for b in range(m))
                 for a in range(m)]
        for i, j, k in itertools.combinations(range(m), 3):
            e_i, e_j, e_k = basis[i], basis[j], basis[k]
            total = [sum(t) for t in zip(self.bracket(e_i, self.bracket(e_j, e_k)),
                                         self.bracket(e_j, self.bracket(e_k, e_i)),
                                         self.bracket(e_k, self.bracket(e_i, e_j)))]
            if any(t != 0 for t in total):
                raise ValueError("Jacobi identity fails for (%d, %d, %d)" % (i + 1, j + 1, k + 1))
        return True

    @property
    def is_abelian(self):
        return all(v == 0 for vector in self.constants.values() for v in vector)

    def entries(self):
        """Nonzero constants as ``[i, j, k, value]`` rows, 1-based, value a string"""
        rows = []
        for (i, j) in sorted(self.constants):
            for k, value in enumerate(self.constants[(i, j)]):
                if value != 0:
                    rows.append([i + 1, j + 1, k + 1, str(value)])
        return rows

    def derived(self):
        return derived_algebra(self)


@dataclass(frozen=True)
class DerivedAlgebraInfo:
    """Span of all brackets

    :param int   dimension: Rank of the bracket vectors over Q
    :param bool  abelian:   All brackets of basis elements vanish
    :param tuple basis:     Row-reduced basis, coordinates in the generators
    """
    dimension: int
    abelian: bool
    basis: tuple = ()

    def is_ideal(self, algebra):
        """True if brackets with every generator stay in the span"""
        m = algebra.dimension
        span = sympy.Matrix(self.basis) if self.basis else sympy.zeros(0, m)
        for i in range(m):
            generator = tuple(sympy.S.One if a == i else sympy.S.Zero for a in range(m))
            for element in self.basis:
                image = sympy.Matrix([algebra.bracket(generator, element)])
                if span.col_join(image).rank() > len(self.basis):
                    return False
        return True

    def as_dict(self):
        return {'dimension': self.dimension, 'abelian': self.abelian,
                'basis': [[str(v) for v in row] for row in self.basis]}


def derived_algebra(algebra):
    """Derived algebra [L, L] of ``algebra``"""
    m = algebra.dimension
    vectors = [algebra.structure_vector(i, j) for i, j in itertools.combinations(range(m), 2)]
    vectors = [v for v in vectors if any(c != 0 for c in v)]
    if not vectors:
        return DerivedAlgebraInfo(0, True, ())

    reduced, pivots = sympy.Matrix(vectors).rref()
    basis = tuple(tuple(reduced.row(r)) for r in range(len(pivots)))
    abelian = all(all(c == 0 for c in algebra.bracket(u, v))
                  for u, v in itertools.combinations(basis, 2))
    return DerivedAlgebraInfo(len(basis), abelian, basis)


def derived_series(algebra):
    """Dimensions of L, [L, L], [[L, L], [L, L]], ... until they stabilize"""
    dimensions = [algebra.dimension]
    basis = [tuple(sympy.S.One if a == b else sympy.S.Zero for b in range(algebra.dimension))
             for a in range(algebra.dimension)]
    while basis:
        brackets = [algebra.bracket(u, v) for u, v in itertools.combinations(basis, 2)]
        brackets = [b for b in brackets if any(c != 0 for c in b)]
        if not brackets:
            basis = []
        else:
            reduced, pivots = sympy.Matrix(brackets).rref()
            basis = [tuple(reduced.row(r)) for r in range(len(pivots))]
        if len(basis) == dimensions[-1]:
            break
        dimensions.append(len(basis))
    return dimensions


def is_solvable(algebra):
    return derived_series(algebra)[-1] == 0


def _apply_field(generator, expr, components):
    xi, eta = (generator[c] for c in components)
    return xi * sympy.diff(expr, X) + eta * sympy.diff(expr, Y)


def _bracket_fields(first, second, components):
    return {name: sympy.expand(_apply_field(first, second[name], components)
                               - _apply_field(second, first[name], components))
            for name in components}


def _value_at(expr, derivative, point):
    i, j = derivative.index
    if i:
        expr = sympy.diff(expr, X, i)
    if j:
        expr = sympy.diff(expr, Y, j)
    return expr.xreplace({X: point[0], Y: point[1]})


def choose_expansion_point(system, order, max_points=DEFAULT_MAX_POINTS):
    """Series at the first regular point of the deterministic point sequence

    :raises SingularPointError: when none of the first ``max_points`` is regular
    """
    for point in itertools.islice(expansion_points(), max_points):
        if not system.is_regular_point(point):
            logger.debug("Skipping singular point %s", point)
            continue
        try:
            return series_solution(system, point, order)
        except SingularPointError as error:
            logger.debug("Skipping point %s: %s", point, error)
    raise SingularPointError("no regular point among the first %d candidates" % max_points)


def structure_constants(system, point=None, order=None, max_points=DEFAULT_MAX_POINTS):
    """Structure constants of the symmetry algebra of an involutive system

    :param system:      InvolutiveSystem with unknowns (xi, eta)
    :param point:       Expansion point, default the first regular one
    :param order:       Series order, default maximal parametric order + 1
    :raises TruncationError: when a bracket is not a combination of the generators
                             at the working order
    """
    parametric = system.parametric_derivatives()
    m = len(parametric)
    top = max((d.order for d in parametric), default=0)
    order = max(order or 0, top + 1)
    if point is None:
        series = choose_expansion_point(system, order, max_points)
    else:
        series = series_solution(system, point, order)
    point = series.point
    components = tuple(system.unknowns[:2])

    generators = [series.generator(k) for k in range(m)]
    checked = [DerivativeSymbol(name, (i, total - i))
               for name in components
               for total in range(order)
               for i in range(total + 1)]

    constants = {}
    for i, j in itertools.combinations(range(m), 2):
        bracket = _bracket_fields(generators[i], generators[j], components)
        vector = tuple(_value_at(bracket[d.function], d, point) for d in parametric)
        for derivative in checked:
            expected = sum((c * series.values[derivative][k] for k, c in enumerate(vector)),
                           sympy.S.Zero)
            if _value_at(bracket[derivative.function], derivative, point) != expected:
                raise TruncationError("[X%d, X%d] is not re-expressible at order %d (%s)"
                                      % (i + 1, j + 1, order, derivative))
        if any(v != 0 for v in vector):
            constants[(i, j)] = vector

    algebra = LieAlgebraStructure(m, constants, point)
    algebra.check()
    logger.info("Structure constants of a %d-dimensional algebra at %s, %d nonzero brackets",
                m, point, len(constants))
    return algebra


@dataclass(frozen=True)
class LinearizationTestResult:
    """Outcome of Test I

    :param bool verdict:    Linearizable
    :param int  n:          Order of the ODE
    :param int  m:          Dimension of the symmetry algebra
    :param algebra:         LieAlgebraStructure, when it was needed
    :param derived:         DerivedAlgebraInfo, when it was needed
    :param point:           Expansion point of the structure constants
    """
    verdict: bool
    n: int
    m: int
    algebra: Optional[LieAlgebraStructure] = None
    derived: Optional[DerivedAlgebraInfo] = None
    point: Optional[tuple] = None


def linearization_test_1(problem, series_order=None, max_points=DEFAULT_MAX_POINTS):
    """Test I: linearizability from the symmetry algebra

    :raises ParametersPresentError: for problems with parameters or functions
    :raises InfiniteDimensionError: when the determining system is underdetermined
    """
    system = janet_complete(determining_system(problem))
    m = dimension(system)
    if not m.is_finite:
        raise InfiniteDimensionError("symmetry algebra of %s is infinite" % problem)
    n, m = problem.n, m.value
    logger.info("Order %d, symmetry algebra of dimension %d", n, m)

    if n == 2:
        return LinearizationTestResult(m == 8, n, m)
    if m == n + 4:
        return LinearizationTestResult(True, n, m)
    if m not in (n + 1, n + 2):
        return LinearizationTestResult(False, n, m)

    algebra = structure_constants(system, order=series_order, max_points=max_points)
    derived = derived_algebra(algebra)
    verdict = derived.abelian and derived.dimension == n
    logger.info("Derived algebra of dimension %d, abelian: %s", derived.dimension, derived.abelian)
    return LinearizationTestResult(verdict, n, m, algebra, derived, algebra.point)
