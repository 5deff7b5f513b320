"""Command listing every A-complete sequence of a grammar within search bounds."""
import click
from flask import Blueprint, current_app

from app.api.helpers.constant import (
    GRAMMAR_ERROR_MSG,
    CONTEXT_ERROR_MSG,
    FILE_ERROR_MSG,
    UNEXPECTED_ERROR_MSG,
    ENUMERATION_TRUNCATED_MSG,
    LOG_GRAMMAR_ERROR,
    LOG_CONTEXT_ERROR,
    LOG_FILE_ERROR,
    LOG_UNEXPECTED_ERROR,
    ENUMERATE_LOG_FILE,
    ENUMERATE_MAX_PER_NODE_DEFAULT,
    ENUMERATE_MAX_NODES_DEFAULT,
    EXIT_OK,
    EXIT_USER_ERROR
)
from app.api.helpers.logger import Logger
from app.api.helpers.utils import load_grammar, load_state
from app.core.beam import enumerate_all
from app.core.exceptions import ContextError, GrammarError

enumerate_api = Blueprint('enumerate_api', __name__, cli_group=None)


@enumerate_api.cli.command('enumerate')
@click.option('--grammar', 'grammar_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--state', 'state_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--max-per-node', type=click.IntRange(min=0),
              help=f'Rule applications allowed per node, both sides together '
                   f'(default {ENUMERATE_MAX_PER_NODE_DEFAULT}, SURFACEGEN_ENUMERATE_MAX_PER_NODE).')
@click.option('--max-nodes', type=click.IntRange(min=1),
              help=f'Nodes allowed per tree (default {ENUMERATE_MAX_NODES_DEFAULT}, '
                   f'SURFACEGEN_ENUMERATE_MAX_NODES).')
@click.option('--exact', is_flag=True,
              help='Stop at A-complete trees like generate does, instead of growing them further. '
                   'Only then is the best scoring line the best generate can return.')
def enumerate_command(grammar_path, state_path, max_per_node, max_nodes, exact):
    """Print every distinct A-complete token sequence, sorted.

    Trees that need more rules at one node or more nodes than the bounds allow
    are cut, with a warning on standard error.
    """
    logger = Logger(ENUMERATE_LOG_FILE, current_app.config["LOG_DIR"], current_app.config["LOG_LEVEL"])
    try:
        if max_per_node is None:
            max_per_node = current_app.config["ENUMERATE_MAX_PER_NODE"]
        if max_nodes is None:
            max_nodes = current_app.config["ENUMERATE_MAX_NODES"]
        grammar = load_grammar(grammar_path)
        context = load_state(state_path)

        result = enumerate_all(grammar, context, max_per_node=max_per_node, max_nodes=max_nodes,
                               expand_complete=not exact)
        sequences = sorted({" ".join(tree.tokens) for tree in result.trees})
        logger.info(f"Explored {result.explored} trees: {len(result.trees)} A-complete, "
                    f"{len(sequences)} distinct sequences, truncated={result.truncated}")

        for sequence in sequences:
            click.echo(sequence)
        if result.truncated:
            click.echo(ENUMERATION_TRUNCATED_MSG, err=True)
        return EXIT_OK

    except GrammarError as ge:
        logger.error(LOG_GRAMMAR_ERROR.format(str(ge)))
        click.echo(GRAMMAR_ERROR_MSG.format(str(ge)), err=True)
        return EXIT_USER_ERROR
    except ContextError as ce:
        logger.error(LOG_CONTEXT_ERROR.format(str(ce)))
        click.echo(CONTEXT_ERROR_MSG.format(str(ce)), err=True)
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
