import pytest

from planpres.sweep import simulate

from support import PP_FIXTURES, load


@pytest.fixture(params=PP_FIXTURES)
def fixture_trace(request):
    return simulate(load(request.param))
