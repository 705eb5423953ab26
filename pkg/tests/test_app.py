import pytest


def post(client, path, body):
    response = client.post(path, json=body)
    return response.status_code, response.get_json()['response']


def test_test1(client):
    status, data = post(client, '/test1', {"ode": "y'' = 0"})
    assert status == 200
    assert data['report']['m'] == 8
    assert data['report']['verdict'] == 'linearizable'
    assert isinstance(data['id'], int)


def test_test1_series_order(client):
    status, data = post(client, '/test1', {"ode": "y''' = 0", "series_order": 4})
    assert status == 200
    assert data['report']['m'] == 7


def test_parse_error(client):
    status, data = post(client, '/test1', {"ode": "y' = y"})
    assert status == 400
    assert "order < 2" in data


def test_parameters_rejected_by_test1(client):
    status, data = post(client, '/test1', {"ode": "y'' + k*y = 0"})
    assert status == 400


def test_missing_ode(client):
    response = client.post('/test1', json={})
    assert response.status_code == 400


def test_lie(client):
    status, data = post(client, '/lie', {"ode": "y'' + y^2 = 0"})
    assert status == 200
    assert data['verdict'] == 'not linearizable'
    assert data['conditions'] == ['0', '6']


def test_lie_with_functions(client):
    status, data = post(client, '/lie', {"ode": "y'' + h*y' = 0", "funcs": ["h"]})
    assert status == 200
    assert data['verdict'] == 'conditional'


def test_lie_wrong_order(client):
    status, _ = post(client, '/lie', {"ode": "y''' = 0"})
    assert status == 400


def test_resource_limit(client):
    status, data = post(client, '/test2', {"ode": "y'' + y'^2/y = 0", "max_branches": 1})
    assert status == 422
    assert "branches" in data


def test_archived_report(client):
    _, data = post(client, '/test1', {"ode": "y'' + y^2 = 0"})
    response = client.get('/report/%d' % data['id'])
    assert response.status_code == 200
    record = response.get_json()['response']
    assert record['mode'] == 'test1'
    assert record['ode'] == "y'' + y^2 = 0"
    assert record['verdict'] == 'not linearizable'
    assert record['m'] == 2


def test_unknown_report(client):
    response = client.get('/report/999')
    assert response.status_code == 404


def test_report_list(client):
    post(client, '/test1', {"ode": "y'' = 0"})
    post(client, '/test1', {"ode": "y''' = 0"})
    response = client.get('/reports?mode=test1')
    records = response.get_json()['response']
    assert [r['n'] for r in records] == [2, 3]
    assert client.get('/reports?mode=test2').get_json()['response'] == []


@pytest.mark.slow
def test_archived_names(client):
    _, data = post(client, '/test2', {"ode": "y'' + k*y = 0", "params": ["k"]})
    record = client.get('/report/%d' % data['id']).get_json()['response']
    assert record['params'] == ['k']
    assert record['funcs'] == []


def test_report_list_since(client):
    post(client, '/test1', {"ode": "y'' = 0"})
    assert len(client.get('/reports?since=2000/01/01 00:00:00').get_json()['response']) == 1
    assert client.get('/reports?since=2999/01/01 00:00:00').get_json()['response'] == []
    response = client.get('/reports?since=yesterday')
    assert response.status_code == 400
