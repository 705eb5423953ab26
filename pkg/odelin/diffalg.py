"""
Differential polynomial arithmetic

Polynomials are expanded sympy expressions with exact rational coefficients in
the independent variables ``x``, ``y``, the jet variables ``y', y'', ...`` and
the derivatives of finitely many unknown functions of (x, y).  Every derivative
is a plain :class:`sympy.Symbol` whose name encodes it:

    ======================  ==================
    derivative              symbol name
    ======================  ==================
    phi                     ``phi``
    d^2 phi / dx dy         ``phi_xy``
    y'''                    ``y'''``
    y^(6)                   ``D(y,6)``
    ======================  ==================

so sympy's polynomial machinery (``Poly``, ``prem``, ``gcd``, ``sqf_part``)
works on them unchanged, and the printed form is valid input for
:mod:`odelin.parser`.
"""
import functools
import logging
import re
from dataclasses import dataclass

import sympy

from odelin.errors import JetOverflowError, NoLeaderError, PartialDerivativeError

# Logging
logger = logging.getLogger(__name__)

# Independent variables
X = sympy.Symbol('x')
Y = sympy.Symbol('y')
VARIABLES = ('x', 'y')

# Name of the jet family y, y', y'', ...
JET = 'y'

# Names that can never denote an unknown function
RESERVED_NAMES = frozenset(['x', 'y', 'D'])

_PRIME_NAME = re.compile(r"^y('+)$")
_D_NAME = re.compile(r"^D\(y,(\d+)\)$")
_FUNCTION_NAME = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:_(x*)(y*))?$")


@functools.lru_cache(maxsize=None)
def _symbol_name(function, index):
    if function == JET:
        k = index[0]
        return "y" + "'" * k if k <= 4 else "D(y,%d)" % k
    i, j = index
    if i == j == 0:
        return function
    return "%s_%s%s" % (function, 'x' * i, 'y' * j)


@functools.lru_cache(maxsize=None)
def _make_symbol(name):
    return sympy.Symbol(name)


@functools.lru_cache(maxsize=None)
def _decode(name):
    match = _PRIME_NAME.match(name)
    if match:
        return DerivativeSymbol(JET, (len(match.group(1)),))

    match = _D_NAME.match(name)
    if match:
        k = int(match.group(1))
        return DerivativeSymbol(JET, (k,)) if k > 0 else None

    if name in RESERVED_NAMES:
        return None

    match = _FUNCTION_NAME.match(name)
    if match is None:
        return None
    function, xs, ys = match.groups()
    if function == JET:
        return None
    if '_' in name and not (xs or ys):
        return None
    return DerivativeSymbol(function, (len(xs or ''), len(ys or '')))


@dataclass(frozen=True)
class DerivativeSymbol:
    """A derivative of an unknown function of (x, y), or a jet variable

    :param str   function:  Function name, or ``'y'`` for the jet family
    :param tuple index:     (i, j) meaning d^i/dx^i d^j/dy^j, or (k,) for y^(k)
    """
    function: str
    index: tuple = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, 'index', tuple(self.index))
        if self.function == JET:
            if len(self.index) != 1 or self.index[0] < 1:
                raise ValueError("jet index must be (k,) with k >= 1: %r" % (self.index,))
        elif len(self.index) != 2 or min(self.index) < 0:
            raise ValueError("derivative index must be (i, j) with i, j >= 0: %r" % (self.index,))

    @property
    def is_jet(self):
        return self.function == JET

    @property
    def order(self):
        return sum(self.index)

    @property
    def name(self):
        return _symbol_name(self.function, self.index)

    @property
    def symbol(self):
        return _make_symbol(self.name)

    def diff(self, variable):
        """Derivative symbol one order higher in ``variable`` ('x' or 'y')"""
        if self.is_jet:
            raise PartialDerivativeError("jet variables have no partial derivatives")
        i, j = self.index
        if variable == 'x':
            return DerivativeSymbol(self.function, (i + 1, j))
        if variable == 'y':
            return DerivativeSymbol(self.function, (i, j + 1))
        raise ValueError("unknown variable: %r" % variable)

    def derive(self, theta):
        i, j = self.index
        return DerivativeSymbol(self.function, (i + theta[0], j + theta[1]))

    def is_derivative_of(self, other):
        """True if self = theta(other) for some (possibly trivial) theta"""
        return (not self.is_jet and self.function == other.function
                and self.index[0] >= other.index[0] and self.index[1] >= other.index[1])

    def quotient(self, other):
        """The theta with self = theta(other)"""
        return (self.index[0] - other.index[0], self.index[1] - other.index[1])

    @classmethod
    def from_name(cls, name):
        """Decode a symbol name, None for x, y and foreign names"""
        return _decode(name)

    def __str__(self):
        return self.name


def function(name):
    """The (0, 0) derivative of an unknown function"""
    return DerivativeSymbol(name, (0, 0))


def jet(k):
    return DerivativeSymbol(JET, (k,))


def jet_symbol(k):
    """sympy symbol of y^(k); y itself for k = 0"""
    return Y if k == 0 else jet(k).symbol


def decode_symbol(symbol):
    """DerivativeSymbol for a sympy symbol, None for x and y"""
    if symbol in (X, Y):
        return None
    derivative = _decode(symbol.name)
    if derivative is None:
        raise ValueError("not a differential indeterminate: %s" % symbol.name)
    return derivative


def _symbol_of(item):
    if isinstance(item, DerivativeSymbol):
        return item.symbol
    return item


def _as_expr(value):
    if isinstance(value, DiffPolynomial):
        return value.expr
    if isinstance(value, (int, sympy.Expr)):
        return sympy.sympify(value)
    raise TypeError("cannot use %r as a differential polynomial" % (value,))


def render_expr(expr):
    """Text of a sympy expression in the input grammar"""
    return sympy.sstr(expr).replace('**', '^')


def partial_derivative_expr(expr, variable):
    """Formal d/dx or d/dy of a sympy expression in unknown-function symbols

    Jet symbols are treated as constants.
    """
    if variable not in VARIABLES:
        raise ValueError("unknown variable: %r" % variable)
    result = sympy.diff(expr, X if variable == 'x' else Y)
    for symbol in expr.free_symbols:
        derivative = decode_symbol(symbol)
        if derivative is None or derivative.is_jet:
            continue
        result += sympy.diff(expr, symbol) * derivative.diff(variable).symbol
    return result


@dataclass(frozen=True)
class Ranking:
    """Orderly ranking on the derivatives of unknown functions

    Derivatives compare by total order first, then by the position of their
    function in ``functions`` (earlier is greater), then degree-reverse
    lexicographically with d/dx greater than d/dy (or d/dy greater than d/dx when
    ``x_first`` is False).  Functions missing from ``functions`` rank below all
    listed ones, by name.

    :param tuple functions: Function names, highest precedence first
    :param bool  x_first:   Derivation precedence d/dx > d/dy
    """
    functions: tuple
    x_first: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'functions', tuple(self.functions))

    def _precedence(self, name):
        if name in self.functions:
            return (1, len(self.functions) - self.functions.index(name))
        return (0, name)

    def key(self, derivative):
        i, j = derivative.index
        if not self.x_first:
            i, j = j, i
        return (derivative.order, self._precedence(derivative.function), i)

    def greatest(self, derivatives):
        return max(derivatives, key=self.key)

    def sorted(self, derivatives, reverse=False):
        return sorted(derivatives, key=self.key, reverse=reverse)

    def compare(self, first, second):
        a, b = self.key(first), self.key(second)
        return (a > b) - (a < b)

    def swapped(self):
        """Same function precedence, opposite derivation precedence"""
        return Ranking(self.functions, not self.x_first)


class DiffPolynomial:
    """Immutable differential polynomial backed by an expanded sympy expression

    Equality is structural on the expanded form, which is canonical for
    polynomials with rational coefficients.

    :param expr:            sympy expression, int or DiffPolynomial
    :param bool expanded:   Skip the expansion of an already expanded expression
    """
    __slots__ = ('expr', '_derivatives', '_leaders')

    def __init__(self, expr=0, expanded=False):
        if isinstance(expr, DiffPolynomial):
            expr = expr.expr
            expanded = True
        expr = sympy.sympify(expr)
        self.expr = expr if expanded else sympy.expand(expr)
        self._derivatives = None
        self._leaders = {}

    @classmethod
    def zero(cls):
        return cls(sympy.S.Zero, expanded=True)

    @classmethod
    def one(cls):
        return cls(sympy.S.One, expanded=True)

    @classmethod
    def of(cls, derivative):
        """The polynomial consisting of one derivative symbol"""
        return cls(derivative.symbol, expanded=True)

    # Arithmetic
    def __add__(self, other):
        return DiffPolynomial(self.expr + _as_expr(other), expanded=True)

    __radd__ = __add__

    def __sub__(self, other):
        return DiffPolynomial(self.expr - _as_expr(other), expanded=True)

    def __rsub__(self, other):
        return DiffPolynomial(_as_expr(other) - self.expr, expanded=True)

    def __neg__(self):
        return DiffPolynomial(-self.expr, expanded=True)

    def __mul__(self, other):
        return DiffPolynomial(self.expr * _as_expr(other))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        return DiffPolynomial(self.expr ** exponent)

    def __eq__(self, other):
        if isinstance(other, DiffPolynomial):
            return self.expr == other.expr
        if isinstance(other, (int, sympy.Expr)):
            return self.expr == sympy.sympify(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.expr)

    def __repr__(self):
        return "DiffPolynomial(%s)" % self.render()

    def __str__(self):
        return self.render()

    # Inspection
    @property
    def is_zero(self):
        return self.expr == 0

    @property
    def derivatives(self):
        """All derivative symbols (jets included) occurring in the polynomial"""
        if self._derivatives is None:
            self._derivatives = frozenset(
                decode_symbol(s) for s in self.expr.free_symbols if s not in (X, Y))
        return self._derivatives

    @property
    def jets(self):
        return frozenset(d for d in self.derivatives if d.is_jet)

    @property
    def unknowns(self):
        """Derivatives of unknown functions occurring in the polynomial"""
        return frozenset(d for d in self.derivatives if not d.is_jet)

    @property
    def functions(self):
        return frozenset(d.function for d in self.unknowns)

    @property
    def is_constant(self):
        """True for elements of Q(x, y), i.e. no derivative symbol occurs"""
        return not self.derivatives

    @property
    def term_count(self):
        return 0 if self.is_zero else len(sympy.Add.make_args(self.expr))

    def is_linear(self):
        """Total degree at most one in the derivative symbols"""
        symbols = [d.symbol for d in self.derivatives]
        if not symbols:
            return True
        return sympy.Poly(self.expr, *symbols).total_degree() <= 1

    def degree(self, derivative):
        if self.is_zero:
            return 0
        return sympy.degree(self.expr, _symbol_of(derivative))

    def coefficient(self, derivative, power=1):
        return DiffPolynomial(self.expr.coeff(_symbol_of(derivative), power), expanded=True)

    # Ranking dependent parts
    def leader(self, ranking):
        if ranking not in self._leaders:
            unknowns = self.unknowns
            if not unknowns:
                raise NoLeaderError()
            self._leaders[ranking] = ranking.greatest(unknowns)
        return self._leaders[ranking]

    def initial(self, ranking):
        leader = self.leader(ranking)
        return self.coefficient(leader, self.degree(leader))

    def separant(self, ranking):
        leader = self.leader(ranking)
        return DiffPolynomial(sympy.diff(self.expr, leader.symbol))

    def tail(self, ranking):
        """The polynomial without its leading term in the leader"""
        leader = self.leader(ranking)
        degree = self.degree(leader)
        return self - self.initial(ranking) * DiffPolynomial.of(leader) ** degree

    def rank_key(self, ranking):
        """Sort key: constants first, then by leader and degree"""
        if not self.unknowns:
            return (0,)
        leader = self.leader(ranking)
        return (1, ranking.key(leader), self.degree(leader))

    # Derivations
    def total_derivative(self, jet_bound=None):
        """D_x along y = y(x): functions g(x, y) give g_x + g_y y'"""
        expr = self.expr
        result = sympy.diff(expr, X) + jet_symbol(1) * sympy.diff(expr, Y)
        for derivative in self.derivatives:
            part = sympy.diff(expr, derivative.symbol)
            if derivative.is_jet:
                k = derivative.index[0] + 1
                if jet_bound is not None and k > jet_bound:
                    raise JetOverflowError("y^(%d) exceeds the jet bound %d" % (k, jet_bound))
                result += jet_symbol(k) * part
            else:
                result += (derivative.diff('x').symbol
                           + derivative.diff('y').symbol * jet_symbol(1)) * part
        return DiffPolynomial(result)

    def partial_derivative(self, variable):
        if self.jets:
            raise PartialDerivativeError("partial derivative of a polynomial in jet variables")
        return DiffPolynomial(partial_derivative_expr(self.expr, variable))

    def derive(self, theta):
        """Apply d^i/dx^i d^j/dy^j for theta = (i, j)"""
        result = self
        for _ in range(theta[0]):
            result = result.partial_derivative('x')
        for _ in range(theta[1]):
            result = result.partial_derivative('y')
        return result

    # Algebra
    def collect_coefficients(self, variables):
        """Coefficients of the monomials in ``variables``

        :param variables:   Sequence of (jet) DerivativeSymbols
        :return:            dict exponent tuple -> DiffPolynomial
        """
        if self.is_zero:
            return {}
        symbols = [_symbol_of(v) for v in variables]
        if not symbols:
            return {(): self}
        poly = sympy.Poly(self.expr, *symbols)
        return {monom: DiffPolynomial(coeff) for monom, coeff in poly.terms()}

    def pseudo_remainder(self, other, derivative):
        return DiffPolynomial(sympy.prem(self.expr, other.expr, _symbol_of(derivative)))

    def pseudo_quotient(self, other, derivative):
        return DiffPolynomial(sympy.pquo(self.expr, other.expr, _symbol_of(derivative)))

    def _ordered_symbols(self, ranking):
        if ranking is None:
            return sorted((d.symbol for d in self.derivatives), key=lambda s: s.name)
        jets = sorted(self.jets, key=lambda d: d.index, reverse=True)
        return [d.symbol for d in ranking.sorted(self.unknowns, reverse=True) + jets]

    def primitive(self, ranking=None):
        """Primitive part w.r.t. the derivative symbols

        The content in Q[x, y] and the rational content are removed and the
        sign fixed so that the leading coefficient (leader first when a ranking
        is given) is positive.  Nonzero elements of Q(x, y) normalize to 1.
        """
        if self.is_zero:
            return self
        gens = self._ordered_symbols(ranking)
        if not gens:
            return DiffPolynomial.one()

        expr = self.expr
        coeffs = sympy.Poly(expr, *gens).coeffs()
        if any(c.free_symbols for c in coeffs):
            content = functools.reduce(sympy.gcd, coeffs)
            if content.free_symbols:
                expr = sympy.expand(sympy.cancel(expr / content))

        _, expr = expr.primitive()
        if sympy.Poly(expr, *gens, X, Y).LC() < 0:
            expr = -expr
        return DiffPolynomial(expr)

    def squarefree(self, ranking=None):
        """Primitive square-free part"""
        if self.is_constant:
            return self.primitive(ranking)
        return DiffPolynomial(sympy.sqf_part(self.expr)).primitive(ranking)

    # Evaluation
    def evaluate(self, assignment):
        """Substitute explicit functions of (x, y) for unknown functions

        :param dict assignment: function name -> sympy expression in x, y
        :return:                sympy expression (not simplified)
        """
        replacements = {}
        for derivative in self.unknowns:
            if derivative.function not in assignment:
                continue
            value = sympy.sympify(assignment[derivative.function])
            i, j = derivative.index
            for _ in range(i):
                value = sympy.diff(value, X)
            for _ in range(j):
                value = sympy.diff(value, Y)
            replacements[derivative.symbol] = value
        return self.expr.xreplace(replacements)

    def render(self):
        return render_expr(self.expr)


def _as_poly(value):
    if isinstance(value, DiffPolynomial):
        return value
    return DiffPolynomial(value)


def _sign(expr):
    if expr.is_Number:
        return expr
    symbols = sorted(expr.free_symbols, key=lambda s: s.name)
    return sympy.Poly(expr, *symbols).LC()


class DiffRational:
    """Quotient of two differential polynomials

    The rational content is collected in the numerator and the denominator has
    a positive leading coefficient.  Equality is by cross multiplication.
    """
    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator, denominator=1):
        numerator = _as_poly(numerator)
        denominator = _as_poly(denominator)
        if denominator.is_zero:
            raise ZeroDivisionError("zero denominator")

        den_content, den_expr = denominator.expr.primitive()
        if _sign(den_expr) < 0:
            den_content, den_expr = -den_content, -den_expr
        self.numerator = DiffPolynomial(numerator.expr / den_content)
        self.denominator = DiffPolynomial(den_expr, expanded=True)

    def __eq__(self, other):
        if isinstance(other, DiffPolynomial):
            other = DiffRational(other)
        if not isinstance(other, DiffRational):
            return NotImplemented
        return (self.numerator * other.denominator - other.numerator * self.denominator).is_zero

    def __hash__(self):
        return hash(sympy.cancel(self.as_expr()))

    def __neg__(self):
        return DiffRational(-self.numerator, self.denominator)

    def __repr__(self):
        return "DiffRational(%s)" % self.render()

    def __str__(self):
        return self.render()

    @property
    def derivatives(self):
        return self.numerator.derivatives | self.denominator.derivatives

    def as_expr(self):
        return self.numerator.expr / self.denominator.expr

    def total_derivative(self, jet_bound=None):
        num, den = self.numerator, self.denominator
        return DiffRational(num.total_derivative(jet_bound) * den
                            - num * den.total_derivative(jet_bound),
                            den * den)

    def render(self):
        if self.denominator == 1:
            return self.numerator.render()
        return "(%s)/(%s)" % (self.numerator.render(), self.denominator.render())


@dataclass(frozen=True)
class Reduction:
    """Result of a differential pseudo-reduction

    ``initial^initial_power * separant^separant_power * p - remainder`` lies in
    the differential ideal generated by the reducer.
    """
    remainder: DiffPolynomial
    initial_power: int = 0
    separant_power: int = 0


def prem(p, q, ranking):
    """Differential pseudo-remainder of p modulo q and its derivatives"""
    leader = q.leader(ranking)
    degree = q.degree(leader)
    initial_power = separant_power = 0

    while not p.is_zero:
        target = None
        for derivative in ranking.sorted(p.unknowns, reverse=True):
            if not derivative.is_derivative_of(leader):
                continue
            if derivative == leader:
                if p.degree(leader) >= degree:
                    target = (derivative, q)
            else:
                target = (derivative, q.derive(derivative.quotient(leader)))
            if target is not None:
                break

        if target is None:
            break
        derivative, reducer = target
        exponent = p.degree(derivative) - reducer.degree(derivative) + 1
        p = p.pseudo_remainder(reducer, derivative)
        if derivative == leader:
            initial_power += exponent
        else:
            separant_power += exponent

    return Reduction(p, initial_power, separant_power)


def _subresultant_rows(p, q, v, j):
    a = [p.expr.coeff(v.symbol, i) for i in range(p.degree(v) + 1)]
    b = [q.expr.coeff(v.symbol, i) for i in range(q.degree(v) + 1)]
    d, e = len(a) - 1, len(b) - 1
    if not d >= e >= j >= 0:
        raise ValueError("subresultant index out of range: deg %d, %d, j = %d" % (d, e, j))

    width = d + e - j
    rows = []
    for coeffs, count in ((a, e - j), (b, d - j)):
        for shift in reversed(range(count)):
            row = [sympy.S.Zero] * width
            for power, coeff in enumerate(coeffs):
                row[width - 1 - (power + shift)] = coeff
            rows.append(row)
    return rows, width


def principal_subresultant(p, q, v, j):
    """Principal coefficient s_j of the j-th subresultant of p, q in v"""
    rows, _ = _subresultant_rows(p, q, v, j)
    size = len(rows)
    matrix = sympy.Matrix([row[:size] for row in rows])
    return DiffPolynomial(matrix.det(method='bareiss'))


def subresultant(p, q, v, j):
    """The j-th subresultant polynomial S_j of p, q in v (degree <= j)"""
    rows, width = _subresultant_rows(p, q, v, j)
    size = len(rows)
    result = sympy.S.Zero
    for power in range(j + 1):
        column = width - 1 - power
        matrix = sympy.Matrix([row[:size - 1] + [row[column]] for row in rows])
        result += matrix.det(method='bareiss') * v.symbol ** power
    return DiffPolynomial(result)
