"""
Reports of the linearization tests

A report is the common result shape of the console script, the HTTP service
and the archive.  The JSON form is::

    {
        "mode": "test1" | "test2" | "lie",
        "verdict": "linearizable" | "not linearizable" | "conditional",
        "n": 3,
        "m": 5,                                            (test1)
        "algebra": {"C": [[i, j, k, "value"], ...],         (test1, when computed)
                    "derived": {...}, "point": ["1", "1"]},
        "systems": [{"equations": [...], "inequations": [...]}],   (test2)
        "conditions": ["...", "..."],                      (lie)
        "stats": {"branches": 1, "maxTerms": 0, "elapsedMs": null}
    }

Keys are sorted and ``elapsedMs`` stays null unless timing was requested, so
identical runs give identical text.
"""
import json
from dataclasses import dataclass, field
from typing import Optional

LINEARIZABLE = 'linearizable'
NOT_LINEARIZABLE = 'not linearizable'
CONDITIONAL = 'conditional'

# Exit codes
EXIT_LINEARIZABLE = 0
EXIT_NOT_LINEARIZABLE = 1
EXIT_USAGE = 2
EXIT_RESOURCE_LIMIT = 3


@dataclass
class Report:
    """Outcome of one test run"""
    mode: str
    verdict: str
    n: int
    m: Optional[int] = None
    algebra: Optional[dict] = None
    systems: Optional[list] = None
    conditions: Optional[list] = None
    stats: dict = field(default_factory=lambda: {'branches': 0, 'maxTerms': 0,
                                                 'elapsedMs': None})

    @property
    def linearizable(self):
        return self.verdict == LINEARIZABLE

    @property
    def exit_code(self):
        return EXIT_LINEARIZABLE if self.linearizable else EXIT_NOT_LINEARIZABLE

    def to_dict(self):
        data = {'mode': self.mode, 'verdict': self.verdict, 'n': self.n, 'stats': self.stats}
        for key in ('m', 'algebra', 'systems', 'conditions'):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        return data

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        return cls(data['mode'], data['verdict'], data['n'], data.get('m'),
                   data.get('algebra'), data.get('systems'), data.get('conditions'),
                   data.get('stats', {}))

    def render_text(self):
        """Human readable form"""
        lines = ["mode:    %s" % self.mode,
                 "verdict: %s" % self.verdict,
                 "order:   %d" % self.n]
        if self.m is not None:
            lines.append("symmetry algebra dimension: %d" % self.m)
        if self.algebra is not None:
            derived = self.algebra['derived']
            lines.append("derived algebra: dimension %d, %s"
                         % (derived['dimension'], 'abelian' if derived['abelian'] else 'not abelian'))
            for i, j, k, value in self.algebra['C']:
                lines.append("  C^%d_%d,%d = %s" % (k, i, j, value))
        if self.conditions is not None:
            lines.append("Lie conditions:")
            lines.extend("  %s = 0" % c for c in self.conditions)
        if self.systems is not None:
            lines.append("simple systems: %d" % len(self.systems))
            for number, system in enumerate(self.systems, start=1):
                lines.append("S%d:" % number)
                lines.extend("  %s = 0" % e for e in system['equations'])
                lines.extend("  %s <> 0" % q for q in system['inequations'])
        if self.stats.get('elapsedMs') is not None:
            lines.append("elapsed: %d ms" % self.stats['elapsedMs'])
        return "\n".join(lines)


def _verdict(flag):
    return LINEARIZABLE if flag else NOT_LINEARIZABLE


def report_test1(result, elapsed=None):
    """Report of a :class:`~odelin.liealg.LinearizationTestResult`"""
    algebra = None
    if result.algebra is not None:
        algebra = {'C': result.algebra.entries(),
                   'derived': {'dimension': result.derived.dimension,
                               'abelian': result.derived.abelian},
                   'point': [str(c) for c in result.point]}
    return Report('test1', _verdict(result.verdict), result.n, m=result.m, algebra=algebra,
                  stats={'branches': 0, 'maxTerms': 0, 'elapsedMs': elapsed})


def report_test2(result, n, elapsed=None):
    """Report of a :class:`~odelin.thomas.DecompositionResult`"""
    return Report('test2', _verdict(not result.is_empty), n, systems=result.render(),
                  stats={'branches': result.stats.branches,
                         'maxTerms': result.stats.max_terms,
                         'elapsedMs': elapsed})


def report_lie(criterion, n=2, elapsed=None):
    """Report of a :class:`~odelin.linearize.LieCriterion`"""
    verdict = CONDITIONAL if criterion.holds is None else _verdict(criterion.holds)
    return Report('lie', verdict, n, conditions=criterion.render(),
                  stats={'branches': 0, 'maxTerms': 0, 'elapsedMs': elapsed})
