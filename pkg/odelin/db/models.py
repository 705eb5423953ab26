"""
Archived reports
"""
import datetime
import json

from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy.orm import declarative_base

from odelin import utils
from odelin.report import Report

Base = declarative_base()


class ReportRecord(Base):
    """Report table.

    One row per archived test run.

    :param int      id:         Unique identifier of the report
    :param str      mode:       test1, test2 or lie
    :param str      ode:        ODE text as given
    :param str      params:     Parameter names, comma separated
    :param str      funcs:      Undetermined function names, comma separated
    :param str      verdict:    Verdict of the run
    :param int      n:          Order of the ODE
    :param int      m:          Symmetry algebra dimension (test1)
    :param int      systems:    Number of simple systems (test2)
    :param str      payload:    Full report as JSON
    :param datetime created:    Time the report was stored
    """
    __tablename__ = "reports"

    id = Column(Integer, primary_key=True)
    mode = Column(String, index=True)
    ode = Column(Text)
    params = Column(String, info={'names': True})
    funcs = Column(String, info={'names': True})
    verdict = Column(String)
    n = Column(Integer)
    m = Column(Integer)
    systems = Column(Integer)
    payload = Column(Text)
    created = Column(DateTime)

    def __init__(self, mode, ode, params, funcs, verdict, n, m, systems, payload, created=None):
        self.mode = mode
        self.ode = ode
        self.params = params
        self.funcs = funcs
        self.verdict = verdict
        self.n = n
        self.m = m
        self.systems = systems
        self.payload = payload
        self.created = created or datetime.datetime.now().replace(microsecond=0)

    def __repr__(self):
        return "<ReportRecord[%s]: %s %s %s>" % (self.id, self.mode, self.verdict, self.ode)

    @classmethod
    def from_report(cls, report, ode, params=(), funcs=()):
        systems = None if report.systems is None else len(report.systems)
        return cls(report.mode, ode, utils.join_names(params), utils.join_names(funcs),
                   report.verdict, report.n, report.m, systems, report.to_json())

    def report(self):
        return Report.from_dict(json.loads(self.payload))
