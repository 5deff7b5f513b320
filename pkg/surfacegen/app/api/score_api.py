"""Command scoring a token sequence under a trained model."""
import click
from flask import Blueprint, current_app

from app.api.helpers.constant import (
    MODEL_ERROR_MSG,
    FILE_ERROR_MSG,
    EMPTY_TEXT_MSG,
    UNEXPECTED_ERROR_MSG,
    LOG_MODEL_ERROR,
    LOG_FILE_ERROR,
    LOG_UNEXPECTED_ERROR,
    SCORE_LOG_FILE,
    EXIT_OK,
    EXIT_USER_ERROR
)
from app.api.helpers.logger import Logger
from app.api.helpers.utils import load_model
from app.core.exceptions import ModelError
from app.core.ngram import read_corpus, sequence_log_prob

score_api = Blueprint('score_api', __name__, cli_group=None)


def _tokens(ctx, param, value):
    tokens = read_corpus(value)
    if len(tokens) != 1:
        raise click.BadParameter(EMPTY_TEXT_MSG if not tokens else "text must be a single line",
                                 ctx=ctx, param=param)
    return tokens[0]


@score_api.cli.command('score')
@click.option('--model', 'model_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--text', 'tokens', required=True, callback=_tokens,
              help='Whitespace separated tokens, tokenized like the corpus.')
def score_command(model_path, tokens):
    """Print the natural-log probability of the text under the model's weights."""
    logger = Logger(SCORE_LOG_FILE, current_app.config["LOG_DIR"], current_app.config["LOG_LEVEL"])
    try:
        model = load_model(model_path)
        score = sequence_log_prob(model, tokens)
        logger.info(f"Scored {' '.join(tokens)!r}: {score!r}")
        click.echo(repr(score))
        return EXIT_OK

    except ModelError as me:
        logger.error(LOG_MODEL_ERROR.format(str(me)))
        click.echo(MODEL_ERROR_MSG.format(str(me)), err=True)
        return EXIT_USER_ERROR
    except OSError as oe:
        logger.error(LOG_FILE_ERROR.format(str(oe)))
        click.echo(FILE_ERROR_MSG.format(str(oe)), err=True)
        return EXIT_USER_ERROR
    except Exception as e:
        logger.error(LOG_UNEXPECTED_ERROR.format(str(e)))
        click.echo(UNEXPECTED_ERROR_MSG.format(str(e)), err=True)
        return EXIT_USER_ERROR
    finally:
        logger.close()
