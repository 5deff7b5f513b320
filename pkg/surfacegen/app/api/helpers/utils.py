"""File loading and option parsing shared by the commands."""
import click
from flask import current_app

from app.core.beam import SearchConfig
from app.core.dialog import parse_state
from app.core.exceptions import WeightsError
from app.core.grammar import parse_grammar
from app.core.ngram import InterpolationWeights, read_corpus, read_model


def read_text(path):
    with open(path, encoding='utf-8') as handle:
        return handle.read()


def write_text(path, text):
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text)


def load_grammar(path):
    return parse_grammar(read_text(path))


def load_model(path):
    return read_model(read_text(path))


def load_state(path):
    return parse_state(read_text(path))


def load_corpus(path):
    return read_corpus(read_text(path))


def parse_weights_option(ctx, param, value):
    """click callback for --lambda: 'l1,l2,l3,l4' -> InterpolationWeights."""
    if value is None:
        return None
    try:
        return InterpolationWeights.parse(value)
    except WeightsError as exc:
        raise click.BadParameter(str(exc), ctx=ctx, param=param) from exc


def configured_weights():
    return InterpolationWeights(*current_app.config["LAMBDA"])


def search_config(beam_width=None, k_best=None, trace=False):
    """SearchConfig from the app configuration; explicit arguments win."""
    config = current_app.config
    return SearchConfig(
        beam_width=beam_width if beam_width is not None else config["BEAM_WIDTH"],
        max_iterations=config["MAX_ITERATIONS"],
        k_best=k_best if k_best is not None else config["K_BEST"],
        deduplicate=config["DEDUPLICATE"],
        length_normalize=config["LENGTH_NORMALIZE"],
        trace=trace,
    )


def format_realization(realization, with_score=False):
    if with_score:
        return f"{realization.score:.6f}\t{realization.surface}"
    return realization.surface


def format_diagnostics(diagnostics):
    return "; ".join(str(d) for d in diagnostics)
