from flask import Blueprint

api_blueprint = Blueprint('api', __name__, cli_group=None)

from .train_api import train_api
from .generate_api import generate_api
from .enumerate_api import enumerate_api
from .score_api import score_api
from .repl_api import repl_api

api_blueprint.register_blueprint(train_api)
api_blueprint.register_blueprint(generate_api)
api_blueprint.register_blueprint(enumerate_api)
api_blueprint.register_blueprint(score_api)
api_blueprint.register_blueprint(repl_api)
