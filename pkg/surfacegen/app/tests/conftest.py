import pytest

from app import create_app
from app.core.dialog import AttributeEntry, DialogContext, Novelty
from app.core.fixtures import fixture_model
from app.core.ngram import write_model
from run import cli as surfacegen_cli


@pytest.fixture
def app(tmp_path):
    """Flask application setup, logging into a temporary directory"""
    app = create_app({
        "TESTING": True,
        "LOG_DIR": str(tmp_path / "logs"),
    })
    yield app


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def cli():
    return surfacegen_cli


@pytest.fixture(scope="session")
def summary_model_path(tmp_path_factory):
    """The shipped corpus trained and written as a model file"""
    path = tmp_path_factory.mktemp("models") / "summary.model"
    path.write_text(write_model(fixture_model()), encoding="utf-8")
    return str(path)


@pytest.fixture
def make_context():
    """Build a DialogContext from name -> (value, "new"|"old") mappings"""
    def build(mandatory=None, optional=None):
        def entries(table):
            return [AttributeEntry(name, value, Novelty(mark)) for name, (value, mark) in (table or {}).items()]
        return DialogContext.from_entries(entries(mandatory), entries(optional))
    return build
