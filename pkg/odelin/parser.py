"""
Parser for the ODE input language

Grammar (whitespace is insignificant)::

    equation := expr ['=' expr]
    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := ['+' | '-'] base (('^' | '**') integer)*
    base     := number | 'x' | 'y' | "y'" ... | 'D(y,' integer ')'
              | name '(x,y)' | name | name '_' x*y* | '(' expr ')'

A missing right hand side means ``= 0``.  Primes denote derivatives of y(x) up
to order 4, ``D(y,k)`` any order.  ``name_xxy`` is a partial derivative of a
declared function of (x, y).
"""
import functools
import logging
import re
from dataclasses import dataclass

import pyparsing as pp
import sympy

from odelin.diffalg import (RESERVED_NAMES, DerivativeSymbol, DiffPolynomial, DiffRational,
                            X, Y, decode_symbol, function, jet, jet_symbol)
from odelin.errors import ODEParseError

# Logging
logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

# Function names used by the engine itself
INTERNAL_NAMES = frozenset(['xi', 'eta', 'phi', 'psi'])

_DECLARED_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")
_COEFFICIENT_NAME = re.compile(r"^a\d+$")


@dataclass(frozen=True)
class ODEProblem:
    """Quasi-linear ODE ``y^(n) + f = 0``

    :param int          n:      Order, at least 2
    :param DiffRational f:      Right hand side in x, y, y', ..., y^(n-1)
    :param tuple        params: Parameter names
    :param tuple        funcs:  Names of undetermined functions of (x, y)
    """
    n: int
    f: DiffRational
    params: tuple = ()
    funcs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'params', tuple(self.params))
        object.__setattr__(self, 'funcs', tuple(self.funcs))
        if self.n < 2:
            raise ODEParseError("order < 2")
        too_high = [d for d in self.f.derivatives if d.is_jet and d.index[0] >= self.n]
        if too_high:
            raise ODEParseError("right hand side contains %s" % too_high[0].name)

    @property
    def numerator(self):
        """M of f = M/N"""
        return self.f.numerator

    @property
    def denominator(self):
        """N of f = M/N"""
        return self.f.denominator

    @property
    def lower_jets(self):
        """y', ..., y^(n-1)"""
        return [jet(k) for k in range(1, self.n)]

    @property
    def has_unknowns(self):
        return bool(self.params or self.funcs)

    def render(self):
        return render_ode(self)

    def __str__(self):
        return self.render()


def render_ode(problem):
    """Text of the problem in the input grammar"""
    top = jet(problem.n).name
    if problem.f.numerator.is_zero:
        return "%s = 0" % top
    return "%s + %s = 0" % (top, problem.f.render())


class _Grammar:
    """pyparsing grammar bound to a set of declared names

    :param dict      names:      Bare identifier -> sympy symbol
    :param frozenset functions:  Names whose calls and derivatives are allowed
    """

    def __init__(self, names, functions):
        self.names = names
        self.functions = functions
        self.equation = self._build()

    def _build(self):
        number = pp.Regex(r"\d+(\.\d+)?")
        number.set_parse_action(lambda t: sympy.Rational(t[0]))

        primes = pp.Regex(r"y'+")
        primes.set_parse_action(lambda t: jet_symbol(len(t[0]) - 1))

        dform = (pp.Keyword('D') + pp.Suppress('(') + pp.Literal('y') + pp.Suppress(',')
                 + pp.Word(pp.nums) + pp.Suppress(')'))
        dform.set_parse_action(lambda t: jet_symbol(int(t[2])))

        name = pp.Regex(r"[A-Za-z][A-Za-z0-9_]*")
        call = (name + pp.Suppress('(') + pp.Literal('x') + pp.Suppress(',')
                + pp.Literal('y') + pp.Suppress(')'))
        call.set_parse_action(self._call)
        identifier = name.copy()
        identifier.set_parse_action(self._identifier)

        operand = number | primes | dform | call | identifier
        expr = pp.infix_notation(operand, [
            (pp.one_of('^ **'), 2, pp.OpAssoc.RIGHT, self._power),
            (pp.one_of('+ -'), 1, pp.OpAssoc.RIGHT, self._sign),
            (pp.one_of('* /'), 2, pp.OpAssoc.LEFT, self._product),
            (pp.one_of('+ -'), 2, pp.OpAssoc.LEFT, self._sum),
        ])
        return expr + pp.Optional(pp.Suppress('=') + expr)

    def _call(self, s, loc, toks):
        if toks[0] not in self.functions:
            raise pp.ParseFatalException(s, loc, "'%s' is not a declared function" % toks[0])
        return function(toks[0]).symbol

    def _identifier(self, s, loc, toks):
        name = toks[0]
        if name == 'x':
            return X
        if name == 'y':
            return Y
        if name in self.names:
            return self.names[name]
        derivative = DerivativeSymbol.from_name(name)
        if derivative is not None and derivative.function in self.functions:
            return derivative.symbol
        raise pp.ParseFatalException(s, loc, "unknown name '%s'" % name)

    @staticmethod
    def _power(s, loc, toks):
        items = list(toks[0])
        result = items[-1]
        for base in reversed(items[:-1:2]):
            if not (result.is_Integer and result >= 0):
                raise pp.ParseFatalException(s, loc, "exponents must be nonnegative integers")
            result = base ** result
        return result

    @staticmethod
    def _sign(s, loc, toks):
        sign, value = toks[0]
        return -value if sign == '-' else value

    @staticmethod
    def _product(s, loc, toks):
        items = list(toks[0])
        result = items[0]
        for operator, value in zip(items[1::2], items[2::2]):
            if operator == '*':
                result = result * value
            elif value == 0:
                raise pp.ParseFatalException(s, loc, "division by zero")
            else:
                result = result / value
        return result

    @staticmethod
    def _sum(s, loc, toks):
        items = list(toks[0])
        result = items[0]
        for operator, value in zip(items[1::2], items[2::2]):
            result = result + value if operator == '+' else result - value
        return result

    def parse(self, text):
        """Parse an equation, returning lhs - rhs"""
        try:
            tokens = self.equation.parse_string(text, parse_all=True)
        except pp.ParseBaseException as error:
            raise ODEParseError(error.msg, error.loc) from None
        if len(tokens) == 2:
            return tokens[0] - tokens[1]
        return tokens[0]


@functools.lru_cache(maxsize=64)
def _grammar(bare_names, functions):
    names = {name: function(name).symbol for name in bare_names}
    return _Grammar(names, functions)


def declared_name(text):
    """Validate a parameter or function declaration, accepting ``h(x,y)``"""
    name = re.sub(r"\s+", "", text)
    if name.endswith('(x,y)'):
        name = name[:-len('(x,y)')]
    if not _DECLARED_NAME.match(name):
        raise ODEParseError("invalid name '%s'" % text)
    if name in RESERVED_NAMES or name in INTERNAL_NAMES or _COEFFICIENT_NAME.match(name):
        raise ODEParseError("reserved name '%s'" % name)
    return name


def _jet_orders(*exprs):
    orders = set()
    for expr in exprs:
        for symbol in expr.free_symbols:
            derivative = decode_symbol(symbol)
            if derivative is not None and derivative.is_jet:
                orders.add(derivative.index[0])
    return orders


def parse_ode(text, params=(), funcs=()):
    """Parse a quasi-linear ODE into an :class:`ODEProblem`

    :param str text:    Equation text
    :param params:      Parameter names
    :param funcs:       Undetermined function names (``h`` or ``h(x,y)``)
    :raises ODEParseError: on syntax errors, order < 2, non quasi-linear input
                           or a missing highest derivative
    """
    params = tuple(declared_name(p) for p in params)
    funcs = tuple(declared_name(h) for h in funcs)
    names = params + funcs
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise ODEParseError("names declared twice: %s" % ", ".join(duplicates))

    expr = _grammar(params + funcs, frozenset(funcs)).parse(text)
    numerator, denominator = sympy.fraction(sympy.together(expr))
    numerator = sympy.expand(numerator)
    denominator = sympy.expand(denominator)

    orders = _jet_orders(numerator, denominator)
    if not orders:
        raise ODEParseError("highest derivative missing")
    n = max(orders)
    if n < 2:
        raise ODEParseError("order < 2")

    top = jet_symbol(n)
    if top in denominator.free_symbols or sympy.degree(numerator, top) != 1:
        raise ODEParseError("not quasi-linear")

    coefficient = numerator.coeff(top, 1)
    rest = numerator.coeff(top, 0)
    problem = ODEProblem(n, DiffRational(rest, coefficient), params, funcs)
    logger.debug("Parsed ODE of order %d: %s", n, problem)
    return problem


def parse_polynomial(text, functions=(), params=()):
    """Parse a differential polynomial (``= 0`` form allowed)

    :param functions:   Function names whose derivatives may occur
    :param params:      Parameter names (bare identifiers only)
    """
    functions = tuple(functions)
    expr = _grammar(tuple(params) + functions, frozenset(functions) | frozenset(params)).parse(text)
    _, denominator = sympy.fraction(sympy.together(expr))
    if not denominator.is_Number:
        raise ODEParseError("not a polynomial: %s" % text)
    return DiffPolynomial(expr)
