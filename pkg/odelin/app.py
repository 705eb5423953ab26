"""
HTTP application

Linearization tests as a REST service

Returns:
  All data returned by the REST service is encoded into a JSON response object formatted as follows:
        response = {
            "response" : data
        }

  Encapsulating the response inside a Json object ensures that the top level object cannot be a list.
"""
import logging

from flask import Flask, current_app, jsonify
from flask_restful import Api, Resource, reqparse
from sqlalchemy.exc import NoResultFound

# Local imports
from odelin import utils
from odelin.config import SiteConfig
from odelin.db import open_session, to_dict
from odelin.db.models import ReportRecord
from odelin.errors import OdelinError, ResourceLimitError
from odelin.liealg import linearization_test_1
from odelin.linearize import lie_conditions, linearization_test_2
from odelin.parser import parse_ode
from odelin.report import report_lie, report_test1, report_test2

# Logging
logger = logging.getLogger(__name__)

# Webapp
webapp = Flask(__name__)
webapp.config['ODELIN'] = SiteConfig.defaults()


def gen_response(data, status_code=None):
    """Return a JSON encoded response object for flask"""
    resp = jsonify({
                "response": data
            })
    if status_code is not None:
        resp.status_code = status_code
    return resp


def error_response(error):
    """Response for an engine error: 422 for resource limits, 400 otherwise"""
    if isinstance(error, ResourceLimitError):
        logger.warning("Resource limit: %s", error)
        return gen_response(str(error), 422)
    logger.info("Rejected input: %s", error)
    return gen_response(str(error), 400)


def archive(report, ode, params=(), funcs=()):
    """Store a report, returning the record id"""
    with open_session() as session:
        record = ReportRecord.from_report(report, ode, params, funcs)
        session.add(record)
        session.flush()
        return record.id


class Test1API(Resource):
    """API handler for Test I: **/test1**"""

    parser = reqparse.RequestParser()
    parser.add_argument('ode', required=True, location='json')
    parser.add_argument('series_order', type=int, location='json')

    def post(self):
        """Run Test I on an ODE without parameters

        Example JSON Body **POST http://odelin/test1** ::

            {
                "ode": "D(y,3) = 0"
            }

        Example response::

            {
              "response": {
                "id": 1,
                "report": {
                  "mode": "test1",
                  "verdict": "linearizable",
                  "n": 3,
                  "m": 7,
                  "stats": {"branches": 0, "maxTerms": 0, "elapsedMs": null}
                }
              }
            }

        """
        args = self.parser.parse_args()
        config = current_app.config['ODELIN']
        try:
            problem = parse_ode(args.ode)
            result = linearization_test_1(problem, config.series_order(args.series_order),
                                          config.max_points)
        except OdelinError as error:
            return error_response(error)

        report = report_test1(result)
        return gen_response({"id": archive(report, args.ode), "report": report.to_dict()})

    @staticmethod
    def add(api):
        api.add_resource(Test1API, '/test1')


class Test2API(Resource):
    """API handler for Test II: **/test2**"""

    parser = reqparse.RequestParser()
    parser.add_argument('ode', required=True, location='json')
    parser.add_argument('params', action='append', default=[], location='json')
    parser.add_argument('funcs', action='append', default=[], location='json')
    parser.add_argument('max_branches', type=int, location='json')
    parser.add_argument('max_terms', type=int, location='json')

    def post(self):
        """Run Test II, parameters and undetermined functions allowed

        Example JSON Body **POST http://odelin/test2** ::

            {
                "ode": "y'' + F3*y'^3 + F2*y'^2 + F1*y' + F0 = 0",
                "funcs": ["F3", "F2", "F1", "F0"]
            }

        Example response::

            {
              "response": {
                "id": 2,
                "report": {
                  "mode": "test2",
                  "verdict": "linearizable",
                  "n": 2,
                  "systems": [
                    {"equations": ["..."], "inequations": ["..."]},
                    ...
                  ],
                  "stats": {"branches": 7, "maxTerms": 120, "elapsedMs": null}
                }
              }
            }

        """
        args = self.parser.parse_args()
        config = current_app.config['ODELIN']
        try:
            problem = parse_ode(args.ode, args.params, args.funcs)
            result = linearization_test_2(problem, config.limits(args.max_branches,
                                                                 args.max_terms))
        except OdelinError as error:
            return error_response(error)

        report = report_test2(result, problem.n)
        record_id = archive(report, args.ode, problem.params, problem.funcs)
        return gen_response({"id": record_id, "report": report.to_dict()})

    @staticmethod
    def add(api):
        api.add_resource(Test2API, '/test2')


class LieAPI(Resource):
    """API handler for Lie's criterion of second order ODEs: **/lie**"""

    parser = reqparse.RequestParser()
    parser.add_argument('ode', required=True, location='json')
    parser.add_argument('params', action='append', default=[], location='json')
    parser.add_argument('funcs', action='append', default=[], location='json')

    def post(self):
        """Evaluate Lie's two conditions

        Example JSON Body **POST http://odelin/lie** ::

            {
                "ode": "y'' + y'^2/y = 0"
            }

        Example response::

            {
              "response": {
                "mode": "lie",
                "verdict": "linearizable",
                "n": 2,
                "conditions": ["0", "0"],
                "stats": {"branches": 0, "maxTerms": 0, "elapsedMs": null}
              }
            }

        """
        args = self.parser.parse_args()
        try:
            problem = parse_ode(args.ode, args.params, args.funcs)
            criterion = lie_conditions(problem)
        except OdelinError as error:
            return error_response(error)

        return gen_response(report_lie(criterion, problem.n).to_dict())

    @staticmethod
    def add(api):
        api.add_resource(LieAPI, '/lie')


class ReportAPI(Resource):
    """API handler for archived reports: **/report/<id:int>**"""

    def get(self, report_id):
        """Get an archived report by ID

        Example **GET http://odelin/report/1** ::

            {
              "response": {
                "id": 1,
                "mode": "test1",
                "ode": "D(y,3) = 0",
                "params": [],
                "funcs": [],
                "verdict": "linearizable",
                "n": 3,
                "m": 7,
                "systems": null,
                "payload": "{...}",
                "created": "2026/10/17 12:04:59"
              }
            }

        """
        with open_session() as session:
            try:
                record = session.query(ReportRecord) \
                    .filter(ReportRecord.id == report_id).one()
            except NoResultFound:
                logger.info("No report %d", report_id)
                return gen_response("No record found", 404)

            return gen_response(to_dict(record))

    @staticmethod
    def add(api):
        api.add_resource(ReportAPI, '/report/<int:report_id>')


class ReportListAPI(Resource):
    """API handler for lists of archived reports: **/reports**"""

    parser = reqparse.RequestParser()
    parser.add_argument('mode', location='args')
    parser.add_argument('since', location='args')

    def get(self):
        """All archived reports, optionally filtered by mode and creation time

        Example **GET http://odelin/reports?mode=test2&since=2026/10/17 09:00:00**

        .. code-block:: javascript

            {
              "response": [
                {
                  "id": 2,
                  "mode": "test2",
                  ...
                }
              ]
            }

        """
        args = self.parser.parse_args(strict=True)

        with open_session() as session:
            query = session.query(ReportRecord)

            # Optional filter by mode
            if args.mode:
                query = query.filter(ReportRecord.mode == args.mode)

            # Optional filter by creation time
            if args.since:
                since = utils.str2date(args.since)
                if since is None:
                    return gen_response("Invalid date: %s" % args.since, 400)
                query = query.filter(ReportRecord.created >= since)

            records = query.order_by(ReportRecord.id).all()
            return gen_response([to_dict(record) for record in records])

    @staticmethod
    def add(api):
        api.add_resource(ReportListAPI, '/reports')


# Load the api
def load_api(app):
    api = Api(app)
    for resource in Resource.__subclasses__():
        resource.add(api)


# Load the API
load_api(webapp)
