import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from app.cli import cli
from app.main import app
from app.services.trees import generator


@pytest.fixture
def y0():
    return generator(0)


@pytest.fixture
def y1():
    return generator(1)


@pytest.fixture
def client():
    with TestClient(app) as c:
        yield c


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner):
    def run(*args):
        return runner.invoke(cli, list(args))
    return run
