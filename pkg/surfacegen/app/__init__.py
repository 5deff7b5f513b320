from flask import Flask

from app.api import api_blueprint
from app.api.helpers.constant import (
    BEAM_WIDTH_DEFAULT,
    MAX_ITERATIONS_DEFAULT,
    K_BEST_DEFAULT,
    LAMBDA_DEFAULT,
    DEDUPLICATE_DEFAULT,
    LENGTH_NORMALIZE_DEFAULT,
    ENUMERATE_MAX_PER_NODE_DEFAULT,
    ENUMERATE_MAX_NODES_DEFAULT,
    REPL_OPTIONAL_ATTRIBUTES_DEFAULT,
    LOG_DIR_DEFAULT,
    LOG_LEVEL_DEFAULT
)


def create_app(test_config=None):
    """Application factory: defaults, then SURFACEGEN_* environment variables, then `test_config`."""
    app = Flask(__name__)
    app.config.from_mapping(
        BEAM_WIDTH=BEAM_WIDTH_DEFAULT,
        MAX_ITERATIONS=MAX_ITERATIONS_DEFAULT,
        K_BEST=K_BEST_DEFAULT,
        LAMBDA=LAMBDA_DEFAULT,
        DEDUPLICATE=DEDUPLICATE_DEFAULT,
        LENGTH_NORMALIZE=LENGTH_NORMALIZE_DEFAULT,
        ENUMERATE_MAX_PER_NODE=ENUMERATE_MAX_PER_NODE_DEFAULT,
        ENUMERATE_MAX_NODES=ENUMERATE_MAX_NODES_DEFAULT,
        REPL_OPTIONAL_ATTRIBUTES=REPL_OPTIONAL_ATTRIBUTES_DEFAULT,
        LOG_DIR=LOG_DIR_DEFAULT,
        LOG_LEVEL=LOG_LEVEL_DEFAULT,
    )
    app.config.from_prefixed_env("SURFACEGEN")
    if test_config is not None:
        app.config.from_mapping(test_config)

    app.register_blueprint(api_blueprint)

    return app
