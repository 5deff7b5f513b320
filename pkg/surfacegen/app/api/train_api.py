"""Command for training the trigram model from a delexicalized corpus."""
import click
from flask import Blueprint, current_app

from app.api.helpers.constant import (
    MODEL_ERROR_MSG,
    FILE_ERROR_MSG,
    UNEXPECTED_ERROR_MSG,
    TRAIN_SUMMARY_MSG,
    LOG_MODEL_ERROR,
    LOG_FILE_ERROR,
    LOG_UNEXPECTED_ERROR,
    TRAIN_LOG_FILE,
    EXIT_OK,
    EXIT_USER_ERROR
)
from app.api.helpers.logger import Logger
from app.api.helpers.utils import configured_weights, load_corpus, parse_weights_option, write_text
from app.core.exceptions import ModelError
from app.core.ngram import train, write_model

train_api = Blueprint('train_api', __name__, cli_group=None)


@train_api.cli.command('train')
@click.option('--corpus', 'corpus_path', required=True, type=click.Path(exists=True, dir_okay=False),
              help='Corpus file: one delexicalized utterance per line.')
@click.option('--out', 'out_path', required=True, type=click.Path(dir_okay=False, writable=True),
              help='Where to write the model file.')
@click.option('--lambda', 'weights', callback=parse_weights_option,
              help='Interpolation weights l1,l2,l3,l4 (trigram, bigram, unigram, uniform).')
def train_command(corpus_path, out_path, weights):
    """Count trigram statistics over a corpus and write the model file."""
    logger = Logger(TRAIN_LOG_FILE, current_app.config["LOG_DIR"], current_app.config["LOG_LEVEL"])
    try:
        weights = weights or configured_weights()
        logger.info(f"Training on {corpus_path} with weights {weights.as_tuple()}")

        corpus = load_corpus(corpus_path)
        model = train(corpus, weights)
        write_text(out_path, write_model(model))

        logger.info(f"Wrote {out_path}: vocabulary {len(model.vocabulary)}, tokens {model.token_total}")
        click.echo(TRAIN_SUMMARY_MSG.format(len(model.vocabulary), model.token_total))
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
