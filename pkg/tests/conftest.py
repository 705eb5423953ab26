import functools
import itertools
import random

import pytest
import sympy

from odelin.app import webapp
from odelin.config import SiteConfig
from odelin.db import init_db
from odelin.diffalg import X, Y, DiffPolynomial, Ranking, function
from odelin.thomas import EQUAL, disjointness_witness


def square_family(n):
    """(y^2)^(n) + y^2 = 0 expanded with the Leibniz rule"""
    from math import comb
    terms = ["%d*D(y,%d)*D(y,%d)" % (comb(n, k), k, n - k) for k in range(n + 1)]
    return " + ".join(terms) + " + y^2 = 0"


EQ22 = "y''' - 6*y'/x^2 + 3*y'^2/x - y'^3/2 = 0"
EQ27 = "y''' + 3*y'/y*(y'' - y') - 3*y'' + 2*y' - y = 0"
LIE_FAMILY = "y'' + F3*y'^3 + F2*y'^2 + F1*y' + F0 = 0"
LIE_FUNCS = ['F3', 'F2', 'F1', 'F0']


def poly(name):
    """Polynomial of a single derivative symbol, e.g. ``poly('phi_xy')``"""
    base, _, suffix = name.partition('_')
    derivative = function(base)
    for variable in suffix:
        derivative = derivative.diff(variable)
    return DiffPolynomial.of(derivative)


def check_witnesses(result):
    """Every pair of output systems differs on a condition one of them entails"""
    for first, second in itertools.combinations(result, 2):
        polynomial, mine, theirs = disjointness_witness(first, second)
        assert mine != theirs
        zero, nonzero = (first, second) if mine == EQUAL else (second, first)
        assert zero.reduce(polynomial).is_zero
        assert not nonzero.reduce(polynomial).is_zero


def check_simple(system):
    """Initials and separants do not vanish, equations carry no known nonzero factor"""
    for p in system.initials + system.separants:
        assert not system.reduce(p).is_zero
    nonzero = [sympy.sqf_part(q.expr) for q in system.inequations]
    for p, leader in zip(system.polynomials, system.leaders):
        content = functools.reduce(sympy.gcd, sympy.Poly(p.expr, leader.symbol).coeffs())
        for q in nonzero:
            assert not sympy.gcd(content, q).free_symbols - {X, Y}


@pytest.fixture
def rng():
    return random.Random(20161017)


@pytest.fixture
def ranking():
    return Ranking(('phi', 'psi', 'a0'))


@pytest.fixture
def memory_db():
    init_db(url='sqlite://')
    yield
    init_db(url='sqlite://')


@pytest.fixture
def client(memory_db):
    webapp.config['TESTING'] = True
    webapp.config['ODELIN'] = SiteConfig.defaults()
    with webapp.test_client() as client:
        yield client
