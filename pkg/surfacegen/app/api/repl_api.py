"""Interactive demo: build a dialog turn by turn and generate the summary sentence."""
import click
from flask import Blueprint, current_app

from app.api.helpers.constant import (
    GRAMMAR_ERROR_MSG,
    MODEL_ERROR_MSG,
    CONTEXT_ERROR_MSG,
    INSTANTIATION_ERROR_MSG,
    FILE_ERROR_MSG,
    GENERATION_FAILED_MSG,
    UNEXPECTED_ERROR_MSG,
    REPL_UNKNOWN_COMMAND_MSG,
    REPL_USAGE_MSG,
    REPL_NOTHING_TO_SAY_MSG,
    REPL_PROMPT,
    LOG_GRAMMAR_ERROR,
    LOG_MODEL_ERROR,
    LOG_CONTEXT_ERROR,
    LOG_INSTANTIATION_ERROR,
    LOG_FILE_ERROR,
    LOG_GENERATION_FAILED,
    LOG_UNEXPECTED_ERROR,
    REPL_LOG_FILE,
    EXIT_OK,
    EXIT_USER_ERROR
)
from app.api.helpers.logger import Logger
from app.api.helpers.utils import format_diagnostics, load_grammar, load_model, search_config
from app.core.beam import generate
from app.core.dialog import Speaker, Turn, TurnHistory, derive_context
from app.core.exceptions import ContextError, GrammarError, InstantiationError, ModelError
from app.core.realizer import realize

repl_api = Blueprint('repl_api', __name__, cli_group=None)

USAGES = {
    "set": "set <name> <value>",
    "system": "system <name> <value>",
    "turn": "turn",
    "gen": "gen",
    "quit": "quit",
}


class ReplSession:
    """
    Dialog state of one session. `set` and `system` fill the pending user and system
    turns of the current exchange; `turn` commits them to the history.
    """
    def __init__(self, grammar, model, config, optional_names, logger):
        self.grammar = grammar
        self.model = model
        self.config = config
        self.optional_names = frozenset(optional_names)
        self.logger = logger
        self.history = TurnHistory()
        self.user_pairs = []
        self.system_pairs = []

    def pending_history(self):
        history = self.history
        if self.user_pairs:
            history = history.append(Turn(Speaker.USER, tuple(self.user_pairs)))
        if self.system_pairs:
            history = history.append(Turn(Speaker.SYSTEM, tuple(self.system_pairs)))
        return history

    def commit_turn(self):
        self.history = self.history.append(Turn(Speaker.USER, tuple(self.user_pairs)))
        if self.system_pairs:
            self.history = self.history.append(Turn(Speaker.SYSTEM, tuple(self.system_pairs)))
        self.user_pairs, self.system_pairs = [], []
        self.logger.info(f"Committed exchange; history has {len(self.history.turns)} turns")

    def generate_line(self):
        """The best realization, or a failure message."""
        history = self.pending_history()
        names = {name for turn in history.turns for name, _ in turn.pairs}
        if not names:
            return REPL_NOTHING_TO_SAY_MSG
        context = derive_context(history, names - self.optional_names, names & self.optional_names)
        result = generate(self.grammar, self.model, context, self.config)
        if result.failed:
            message = format_diagnostics(result.diagnostics)
            self.logger.warning(LOG_GENERATION_FAILED.format(message))
            return GENERATION_FAILED_MSG.format(message)
        result = realize(result, self.grammar, context)
        self.logger.info(f"Generated {' '.join(result.best.tokens)!r}")
        return result.best.surface

    def execute(self, line):
        """Run one command line. Returns the text to print (or None) and whether to stop."""
        words = line.split()
        if not words or words[0].startswith("#"):
            return None, False
        command, args = words[0], words[1:]
        if command not in USAGES:
            return REPL_UNKNOWN_COMMAND_MSG.format(command), False
        if command in ("set", "system"):
            if len(args) < 2:
                return REPL_USAGE_MSG.format(USAGES[command]), False
            pending = self.user_pairs if command == "set" else self.system_pairs
            pending.append((args[0].lstrip("$"), " ".join(args[1:])))
            return None, False
        if args:
            return REPL_USAGE_MSG.format(USAGES[command]), False
        if command == "turn":
            self.commit_turn()
            return None, False
        if command == "gen":
            try:
                return self.generate_line(), False
            except ContextError as ce:
                self.logger.error(LOG_CONTEXT_ERROR.format(str(ce)))
                return CONTEXT_ERROR_MSG.format(str(ce)), False
            except InstantiationError as ie:
                self.logger.error(LOG_INSTANTIATION_ERROR.format(str(ie)))
                return INSTANTIATION_ERROR_MSG.format(str(ie)), False
        return None, True


@repl_api.cli.command('repl')
@click.option('--grammar', 'grammar_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--model', 'model_path', required=True, type=click.Path(exists=True, dir_okay=False))
def repl_command(grammar_path, model_path):
    """Read set/system/turn/gen/quit commands from standard input."""
    logger = Logger(REPL_LOG_FILE, current_app.config["LOG_DIR"], current_app.config["LOG_LEVEL"])
    try:
        session = ReplSession(
            load_grammar(grammar_path),
            load_model(model_path),
            search_config(),
            current_app.config["REPL_OPTIONAL_ATTRIBUTES"],
            logger,
        )
        stream = click.get_text_stream('stdin')
        interactive = stream.isatty()
        while True:
            if interactive:
                click.echo(REPL_PROMPT, nl=False)
            line = stream.readline()
            if not line:
                break
            logger.debug(f"Command: {line.strip()}")
            output, stop = session.execute(line)
            if output is not None:
                click.echo(output)
            if stop:
                break
        return EXIT_OK

    except GrammarError as ge:
        logger.error(LOG_GRAMMAR_ERROR.format(str(ge)))
        click.echo(GRAMMAR_ERROR_MSG.format(str(ge)), err=True)
        return EXIT_USER_ERROR
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
