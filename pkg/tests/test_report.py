import json

from odelin.liealg import linearization_test_1
from odelin.linearize import lie_conditions
from odelin.parser import parse_ode
from odelin.report import (CONDITIONAL, EXIT_NOT_LINEARIZABLE, LINEARIZABLE, Report,
                           report_lie, report_test1, report_test2)
from odelin.thomas import DecompositionResult, DecompositionStats


def test_test1_without_algebra():
    report = report_test1(linearization_test_1(parse_ode("y'' = 0")), elapsed=12)
    assert report.verdict == LINEARIZABLE
    assert report.to_dict() == {'mode': 'test1', 'verdict': 'linearizable', 'n': 2, 'm': 8,
                                'stats': {'branches': 0, 'maxTerms': 0, 'elapsedMs': 12}}


def test_empty_decomposition():
    result = DecompositionResult((), DecompositionStats(branches=4, max_terms=9, steps=30))
    report = report_test2(result, 3)
    assert report.exit_code == EXIT_NOT_LINEARIZABLE
    assert report.systems == []
    assert report.stats == {'branches': 4, 'maxTerms': 9, 'elapsedMs': None}
    assert "simple systems: 0" in report.render_text()


def test_conditional_lie_report():
    problem = parse_ode("y'' + k*y^2 = 0", params=['k'])
    report = report_lie(lie_conditions(problem), problem.n)
    assert report.verdict == CONDITIONAL
    assert report.conditions == ['0', '6*k']
    assert "  6*k = 0" in report.render_text()


def test_json_round_trip():
    report = Report('test1', 'linearizable', 3, m=5,
                    algebra={'C': [[1, 4, 1, '1']], 'derived': {'dimension': 3, 'abelian': True},
                             'point': ['0', '0']})
    text = report.to_json()
    assert Report.from_dict(json.loads(text)) == report
    assert list(json.loads(text)) == sorted(json.loads(text))


def test_text_lists_structure_constants():
    report = Report('test1', 'linearizable', 3, m=5,
                    algebra={'C': [[1, 4, 1, '1']], 'derived': {'dimension': 3, 'abelian': True},
                             'point': ['0', '0']})
    text = report.render_text()
    assert "derived algebra: dimension 3, abelian" in text
    assert "C^1_1,4 = 1" in text
