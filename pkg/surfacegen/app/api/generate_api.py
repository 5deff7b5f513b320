"""Command for generating realizations of a dialog state."""
from dataclasses import asdict, fields

import click
import pandas as pd
from flask import Blueprint, current_app

from app.api.helpers.constant import (
    GRAMMAR_ERROR_MSG,
    MODEL_ERROR_MSG,
    CONTEXT_ERROR_MSG,
    INSTANTIATION_ERROR_MSG,
    FILE_ERROR_MSG,
    VALUE_ERROR_MSG,
    GENERATION_FAILED_MSG,
    UNEXPECTED_ERROR_MSG,
    LOG_GRAMMAR_ERROR,
    LOG_MODEL_ERROR,
    LOG_CONTEXT_ERROR,
    LOG_INSTANTIATION_ERROR,
    LOG_FILE_ERROR,
    LOG_VALUE_ERROR,
    LOG_GENERATION_FAILED,
    LOG_UNEXPECTED_ERROR,
    GENERATE_LOG_FILE,
    EXIT_OK,
    EXIT_USER_ERROR,
    EXIT_GENERATION_FAILED
)
from app.api.helpers.logger import Logger
from app.api.helpers.utils import (
    format_diagnostics,
    format_realization,
    load_grammar,
    load_model,
    load_state,
    search_config,
)
from app.core.beam import TraceRecord, generate
from app.core.exceptions import ContextError, GrammarError, InstantiationError, ModelError
from app.core.realizer import realize

generate_api = Blueprint('generate_api', __name__, cli_group=None)

TRACE_COLUMNS = [f.name for f in fields(TraceRecord)]


def write_trace(path, records):
    """One JSON object per line: iteration, tree, score, action, sequence."""
    frame = pd.DataFrame([asdict(r) for r in records], columns=TRACE_COLUMNS)
    frame.to_json(path, orient='records', lines=True)


@generate_api.cli.command('generate')
@click.option('--grammar', 'grammar_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--model', 'model_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--state', 'state_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--beam', 'beam_width', type=click.IntRange(min=1), help='Beam width N.')
@click.option('--k', 'k_best', type=click.IntRange(min=1), help='Number of realizations to print.')
@click.option('--scores', is_flag=True, help='Prefix each line with its log score.')
@click.option('--trace', 'trace_path', type=click.Path(dir_okay=False, writable=True),
              help='Write per-iteration beam records as JSON lines.')
def generate_command(grammar_path, model_path, state_path, beam_width, k_best, scores, trace_path):
    """Print the K best realizations of the dialog state, best first."""
    logger = Logger(GENERATE_LOG_FILE, current_app.config["LOG_DIR"], current_app.config["LOG_LEVEL"])
    try:
        config = search_config(beam_width, k_best, trace=trace_path is not None)
        grammar = load_grammar(grammar_path)
        model = load_model(model_path)
        context = load_state(state_path)
        logger.info(f"Generating for {state_path}: A1={sorted(context.mandatory_names)} "
                    f"A2={sorted(context.optional_names)} beam={config.beam_width} k={config.k_best}")

        result = generate(grammar, model, context, config)
        if trace_path is not None:
            write_trace(trace_path, result.trace)
            logger.info(f"Trace: {len(result.trace)} records written to {trace_path}")

        if result.failed:
            message = format_diagnostics(result.diagnostics)
            logger.error(LOG_GENERATION_FAILED.format(message))
            click.echo(GENERATION_FAILED_MSG.format(message), err=True)
            return EXIT_GENERATION_FAILED

        result = realize(result, grammar, context)
        for realization in result.realizations:
            logger.info(f"#{realization.rank} {realization.score:.6f} {' '.join(realization.tokens)}")
            click.echo(format_realization(realization, with_score=scores))
        return EXIT_OK

    except GrammarError as ge:
        logger.error(LOG_GRAMMAR_ERROR.format(str(ge)))
        click.echo(GRAMMAR_ERROR_MSG.format(str(ge)), err=True)
        return EXIT_USER_ERROR
    except ModelError as me:
        logger.error(LOG_MODEL_ERROR.format(str(me)))
        click.echo(MODEL_ERROR_MSG.format(str(me)), err=True)
        return EXIT_USER_ERROR
    except ContextError as ce:
        logger.error(LOG_CONTEXT_ERROR.format(str(ce)))
        click.echo(CONTEXT_ERROR_MSG.format(str(ce)), err=True)
        return EXIT_USER_ERROR
    except InstantiationError as ie:
        logger.error(LOG_INSTANTIATION_ERROR.format(str(ie)))
        click.echo(INSTANTIATION_ERROR_MSG.format(str(ie)), err=True)
        return EXIT_GENERATION_FAILED
    except OSError as oe:
        logger.error(LOG_FILE_ERROR.format(str(oe)))
        click.echo(FILE_ERROR_MSG.format(str(oe)), err=True)
        return EXIT_USER_ERROR
    except ValueError as ve:
        logger.error(LOG_VALUE_ERROR.format(str(ve)))
        click.echo(VALUE_ERROR_MSG.format(str(ve)), err=True)
        return EXIT_USER_ERROR
    except Exception as e:
        logger.error(LOG_UNEXPECTED_ERROR.format(str(e)))
        click.echo(UNEXPECTED_ERROR_MSG.format(str(e)), err=True)
        return EXIT_USER_ERROR
    finally:
        logger.close()
