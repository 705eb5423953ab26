"""
Differential Thomas decomposition

A system of polynomial PDEs and inequations is split into simple systems with
disjoint solution sets.  Every branch runs a Janet completion; whenever the
outcome of a step depends on whether some polynomial c vanishes (an initial, a
separant discriminant, a subresultant coefficient), the branch is copied and
continues once with c != 0 and once with c = 0.  Branches are explored depth
first, the c != 0 side first.
"""
import functools
import logging
from dataclasses import dataclass, field

import sympy

from odelin.diffalg import X, Y, DiffPolynomial, principal_subresultant, subresultant
from odelin.errors import ResourceLimitError
from odelin.involution import (autoreduce, insert_element, janet_reduce, pop_least,
                               prolong_basis)

# Logging
logger = logging.getLogger(__name__)

DEFAULT_MAX_BRANCHES = 512
DEFAULT_MAX_TERMS = 200000
DEFAULT_MAX_STEPS = 100000

EQUAL = '='
NOT_EQUAL = '!='


def _polynomials(items):
    return tuple(p if isinstance(p, DiffPolynomial) else DiffPolynomial(p) for p in items)


@dataclass(frozen=True)
class DifferentialSystem:
    """Equations (= 0) and inequations (!= 0), as given"""
    equations: tuple = ()
    inequations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'equations', _polynomials(self.equations))
        object.__setattr__(self, 'inequations', _polynomials(self.inequations))

    @property
    def functions(self):
        names = set()
        for p in self.equations + self.inequations:
            names |= p.functions
        return names


@dataclass(frozen=True)
class DecompositionLimits:
    max_branches: int = DEFAULT_MAX_BRANCHES
    max_terms: int = DEFAULT_MAX_TERMS
    max_steps: int = DEFAULT_MAX_STEPS


@dataclass
class DecompositionStats:
    """Work done by one decomposition

    :param int branches:    Branches opened, the root included
    :param int max_terms:   Largest polynomial met, in terms
    :param int steps:       Main loop iterations over all branches
    """
    branches: int = 1
    max_terms: int = 0
    steps: int = 0


@dataclass(frozen=True)
class SimpleSystem:
    """Output system of a decomposition

    :param tuple   equations:   JanetElements ascending by leader
    :param tuple   inequations: Reduced DiffPolynomials
    :param Ranking ranking:     Ranking of the decomposition
    :param tuple   conditions:  Branch conditions (polynomial, '=' or '!=') in order
    """
    equations: tuple
    inequations: tuple
    ranking: object
    conditions: tuple = ()

    @property
    def polynomials(self):
        return [e.polynomial for e in self.equations]

    @property
    def leaders(self):
        return [e.leader for e in self.equations]

    @property
    def initials(self):
        return [e.polynomial.initial(self.ranking) for e in self.equations]

    @property
    def separants(self):
        return [e.polynomial.separant(self.ranking) for e in self.equations]

    def elements(self):
        return self.equations

    def reduce(self, p):
        """Janet normal form of p; zero iff p vanishes on all solutions"""
        p = janet_reduce(p, self.equations, self.ranking)
        return p if p.is_constant else p.primitive(self.ranking)

    def render(self):
        return {'equations': [p.render() for p in self.polynomials],
                'inequations': [q.render() for q in self.inequations]}

    def text(self):
        rendered = self.render()
        return "; ".join(["%s = 0" % e for e in rendered['equations']]
                         + ["%s <> 0" % q for q in rendered['inequations']])

    def residuals(self, assignment):
        """Equations and inequations at explicit functions of (x, y)

        :param dict assignment: function name -> sympy expression
        :return:                (equation values, inequation values), simplified
        """
        equations = [sympy.simplify(p.evaluate(assignment)) for p in self.polynomials]
        inequations = [sympy.simplify(q.evaluate(assignment)) for q in self.inequations]
        return equations, inequations

    def is_solution(self, assignment):
        equations, inequations = self.residuals(assignment)
        return all(e == 0 for e in equations) and all(q != 0 for q in inequations)


@dataclass(frozen=True)
class DecompositionResult:
    systems: tuple
    stats: DecompositionStats = field(default_factory=DecompositionStats)

    def __len__(self):
        return len(self.systems)

    def __iter__(self):
        return iter(self.systems)

    def __getitem__(self, index):
        return self.systems[index]

    @property
    def is_empty(self):
        return not self.systems

    def generic_system(self):
        """The system whose equations vanish on every other system, if any"""
        for candidate in self.systems:
            others = [s for s in self.systems if s is not candidate]
            if all(other.reduce(p).is_zero for other in others for p in candidate.polynomials):
                return candidate
        return None

    def render(self):
        return [s.render() for s in self.systems]


def disjointness_witness(first, second):
    """First branch condition on which two systems of one decomposition differ

    :return: (polynomial, relation in ``first``, relation in ``second``) or None
    """
    for mine, theirs in zip(first.conditions, second.conditions):
        if mine != theirs:
            return mine[0], mine[1], theirs[1]
    return None


def reduce_modulo(p, system):
    """Normal form of p modulo a simple system"""
    return system.reduce(p)


class _BranchDead(Exception):
    pass


class _BranchSplit(Exception):

    def __init__(self, children):
        super().__init__()
        self.children = children


@dataclass
class _Branch:
    basis: list
    queue: list
    inequations: list
    conditions: list
    dirty: bool = True

    def copy(self):
        return _Branch([e.copy() for e in self.basis], list(self.queue),
                       list(self.inequations), list(self.conditions), self.dirty)

    def split(self, c):
        """Children with c != 0 and c = 0"""
        nonzero, zero = self.copy(), self.copy()
        nonzero.inequations.append(c)
        nonzero.conditions.append((c, NOT_EQUAL))
        zero.queue.append(c)
        zero.conditions.append((c, EQUAL))
        nonzero.dirty = zero.dirty = True
        return nonzero, zero


class ThomasDecomposer:
    """Depth-first Thomas decomposition under one ranking

    :param Ranking             ranking:    Ranking of all unknown functions
    :param DecompositionLimits limits:     Resource ceilings
    """

    def __init__(self, ranking, limits=None):
        self.ranking = ranking
        self.limits = limits or DecompositionLimits()
        self.stats = DecompositionStats()
        self._squarefree = {}
        self._initials = {}

    def decompose(self, system):
        """Decompose a DifferentialSystem

        :raises ResourceLimitError: when a ceiling of ``limits`` is exceeded
        """
        self.stats = DecompositionStats()
        root = _Branch([], [p for p in system.equations if not p.is_zero],
                       list(system.inequations), [])
        stack = [root]
        systems = []
        while stack:
            outcome = self._run(stack.pop())
            if outcome is None:
                continue
            if isinstance(outcome, SimpleSystem):
                systems.append(outcome)
                continue
            self.stats.branches += len(outcome) - 1
            if self.stats.branches > self.limits.max_branches:
                raise ResourceLimitError('branches', self.limits.max_branches)
            stack.extend(reversed(outcome))

        systems.sort(key=lambda s: (len(s.equations), s.text()))
        logger.info("Thomas decomposition: %d simple systems, %d branches, %d steps",
                    len(systems), self.stats.branches, self.stats.steps)
        return DecompositionResult(tuple(systems), self.stats)

    # Resource guards
    def _step(self):
        self.stats.steps += 1
        if self.stats.steps > self.limits.max_steps:
            raise ResourceLimitError('steps', self.limits.max_steps)

    def _guard(self, p):
        terms = p.term_count
        if terms > self.stats.max_terms:
            self.stats.max_terms = terms
            if terms > self.limits.max_terms:
                raise ResourceLimitError('terms', self.limits.max_terms)

    # Branch loop
    def _run(self, branch):
        try:
            while True:
                self._step()
                if branch.queue:
                    self._process(branch, pop_least(branch.queue, self.ranking))
                elif branch.dirty:
                    self._check_inequations(branch)
                else:
                    return self._finish(branch)
        except _BranchDead as reason:
            logger.debug("Branch closed: %s", reason)
            return None
        except _BranchSplit as split:
            return split.children

    def _split(self, branch, c):
        logger.debug("Splitting on %s", c)
        raise _BranchSplit(branch.split(c))

    def _reduce(self, p, branch, cancel=True):
        """Reduction modulo the basis

        With ``cancel`` factors known to be nonzero on the branch are removed
        after every step.  Inequations are reduced without, their factors are
        what makes other polynomials known to be nonzero.
        """
        if not cancel:
            p = janet_reduce(p, branch.basis, self.ranking, self._guard)
            if p.is_constant:
                return p
            self._guard(p)
            return p.primitive(self.ranking)

        nonzero = self._known_nonzero(branch)
        p = janet_reduce(p, branch.basis, self.ranking, self._guard,
                         lambda r: self._cancel_nonzero(r, nonzero))
        if p.is_constant:
            return p
        self._guard(p)
        return self._cancel_nonzero(p, nonzero)

    def _known_nonzero(self, branch):
        """Square-free inequations and initials of the branch"""
        found = []
        for q in branch.inequations:
            if not q.is_constant:
                self._add_squarefree(found, q.expr)
        for element in branch.basis:
            initial = self._initials.get(element.polynomial.expr)
            if initial is None:
                initial = element.polynomial.initial(self.ranking)
                self._initials[element.polynomial.expr] = initial
            if not initial.is_constant:
                self._add_squarefree(found, initial.expr)
        return found

    def _add_squarefree(self, found, expr):
        part = self._squarefree.get(expr)
        if part is None:
            part = self._squarefree[expr] = sympy.sqf_part(expr)
        if part not in found:
            found.append(part)

    def _cancel_nonzero(self, p, nonzero):
        """p without factors free of its leader that divide a known nonzero polynomial"""
        if not p.unknowns:
            return p.primitive(self.ranking)
        leader = p.leader(self.ranking).symbol
        expr = p.expr
        for q in nonzero:
            while q.free_symbols & expr.free_symbols - {X, Y}:
                common = sympy.gcd(expr, q)
                if leader in common.free_symbols:
                    gens = sympy.Poly(common, leader).coeffs()
                    common = functools.reduce(sympy.gcd, gens)
                if not common.free_symbols - {X, Y}:
                    break
                expr = sympy.expand(sympy.cancel(expr / common))
        if expr is not p.expr:
            p = DiffPolynomial(expr)
        return p.primitive(self.ranking)

    def _strip(self, p, branch):
        """Square-free part without factors of inequations"""
        p = p.squarefree(self.ranking)
        for q in branch.inequations:
            if p.is_constant:
                break
            common = sympy.gcd(p.expr, q.expr)
            if common.free_symbols - {X, Y}:
                p = DiffPolynomial(sympy.cancel(p.expr / common))
        return p if p.is_constant else p.primitive(self.ranking)

    def _nonzero(self, c, branch):
        """Status of c on the branch

        :return: False if c vanishes, True if it cannot, otherwise the
                 polynomial to split on
        """
        while True:
            c = self._reduce(c, branch)
            if c.is_zero:
                return False
            if c.is_constant:
                return True
            c = self._strip(c, branch)
            if c.is_constant:
                return True
            status = self._nonzero(c.initial(self.ranking), branch)
            if status is False:
                c = c.tail(self.ranking)
                continue
            return c if status is True else status

    def _element_with_leader(self, branch, leader):
        return next((e for e in branch.basis if e.leader == leader), None)

    def _first_subresultant(self, branch, a, b, v):
        """Index of the gcd of a, b in v on the branch, deg a >= deg b

        :return: (j, status) with status True or a polynomial to split on
        """
        for j in range(b.degree(v)):
            status = self._nonzero(principal_subresultant(a, b, v, j), branch)
            if status is not False:
                return j, status
        return b.degree(v), True

    @staticmethod
    def _gcd(a, b, v, j):
        if j == b.degree(v):
            return b
        return subresultant(a, b, v, j)

    # Equations
    def _process(self, branch, p):
        p = self._reduce(p, branch)
        if p.is_zero:
            return
        if p.is_constant:
            raise _BranchDead("nonzero constant equation")
        p = self._strip(p, branch)
        if p.is_constant:
            raise _BranchDead("equation contradicts an inequation")

        status = self._nonzero(p.initial(self.ranking), branch)
        if status is False:
            branch.queue.append(p.tail(self.ranking))
            return
        if status is not True:
            branch.queue.append(p)
            self._split(branch, status)

        element = self._element_with_leader(branch, p.leader(self.ranking))
        if element is None:
            self._insert(branch, p)
        else:
            self._resolve_equations(branch, element, p)

    def _resolve_equations(self, branch, element, p):
        a, v = element.polynomial, element.leader
        if a.degree(v) < p.degree(v):
            a, p = p, a
        j, status = self._first_subresultant(branch, a, p, v)
        if status is not True:
            branch.queue.append(p if a is element.polynomial else a)
            self._split(branch, status)
        if j == 0:
            raise _BranchDead("equations with leader %s have no common root" % v)

        branch.basis.remove(element)
        prolong_basis(branch.basis, branch.queue)
        branch.queue.append(self._gcd(a, p, v, j).primitive(self.ranking))
        branch.dirty = True

    def _insert(self, branch, p):
        v = p.leader(self.ranking)
        if p.degree(v) > 1:
            separant = p.separant(self.ranking)
            j, status = self._first_subresultant(branch, p, separant, v)
            if status is not True:
                branch.queue.append(p)
                self._split(branch, status)
            if j > 0:
                common = self._gcd(p, separant, v, j)
                branch.queue.append(p.pseudo_quotient(common, v))
                return
        insert_element(p, branch.basis, branch.queue, self.ranking)
        branch.dirty = True

    # Inequations
    def _check_inequations(self, branch):
        branch.dirty = False
        index = 0
        while index < len(branch.inequations):
            q = self._settle_inequation(branch, branch.inequations[index])
            if q is None or q in branch.inequations[:index]:
                del branch.inequations[index]
            else:
                branch.inequations[index] = q
                index += 1
            if branch.queue:
                branch.dirty = True
                return

    def _settle_inequation(self, branch, q):
        """Reduced inequation, or None when it holds on the whole branch"""
        while True:
            q = self._reduce(q, branch, cancel=False)
            if q.is_zero:
                raise _BranchDead("inequation vanishes")
            if q.is_constant:
                return None
            q = q.squarefree(self.ranking)
            status = self._nonzero(q.initial(self.ranking), branch)
            if status is False:
                q = q.tail(self.ranking)
                continue
            if status is not True:
                self._split(branch, status)
            break

        v = q.leader(self.ranking)
        element = self._element_with_leader(branch, v)
        if element is None:
            return q
        a, b = element.polynomial, q
        if a.degree(v) < b.degree(v):
            a, b = b, a
        j, status = self._first_subresultant(branch, a, b, v)
        if status is not True:
            self._split(branch, status)
        if j == 0:
            return None

        # keep only the roots of the equation that q does not share
        common = self._gcd(a, b, v, j)
        branch.basis.remove(element)
        prolong_basis(branch.basis, branch.queue)
        branch.queue.append(element.polynomial.pseudo_quotient(common, v))
        return None

    def _finish(self, branch):
        nonzero = self._known_nonzero(branch)
        basis = autoreduce(branch.basis, self.ranking, self._guard,
                           lambda r: self._cancel_nonzero(r, nonzero))
        inequations = []
        for q in branch.inequations:
            q = janet_reduce(q, basis, self.ranking, self._guard)
            if q.is_zero:
                logger.debug("Branch closed: inequation vanishes after autoreduction")
                return None
            if q.is_constant:
                continue
            q = q.primitive(self.ranking)
            if q not in inequations:
                inequations.append(q)
        inequations = _drop_implied(inequations)
        inequations.sort(key=lambda q: (q.rank_key(self.ranking), q.render()))
        logger.debug("Simple system with %d equations, %d inequations",
                     len(basis), len(inequations))
        return SimpleSystem(tuple(basis), tuple(inequations), self.ranking,
                            tuple(branch.conditions))


def _total_degree(q):
    gens = sorted(q.expr.free_symbols - {X, Y}, key=str)
    return sympy.Poly(q.expr, *gens).total_degree()


def _drop_implied(inequations):
    """Remove inequations whose square-free part is a product of factors of the others"""
    kept = sorted(inequations, key=lambda q: (-_total_degree(q), -q.term_count, q.render()))
    index = 0
    while index < len(kept):
        rest = sympy.sqf_part(kept[index].expr)
        for other in kept[:index] + kept[index + 1:]:
            common = sympy.gcd(rest, other.expr)
            if common.free_symbols - {X, Y}:
                rest = sympy.cancel(rest / common)
        if rest.free_symbols - {X, Y}:
            index += 1
        else:
            logger.debug("Dropped implied inequation %s", kept[index].render())
            del kept[index]
    return kept


def thomas_decompose(system, ranking, limits=None):
    """Thomas decomposition of ``system`` under ``ranking``

    :param system:  DifferentialSystem
    :param ranking: Ranking of the unknown functions
    :param limits:  DecompositionLimits, defaults apply when None
    :raises ResourceLimitError: when a resource ceiling is exceeded
    """
    return ThomasDecomposer(ranking, limits).decompose(system)
