import sys

import click
from flask.cli import FlaskGroup

from app.api.helpers.constant import EXIT_OK, EXIT_USER_ERROR


class SurfaceGenGroup(FlaskGroup):
    """
    Flask CLI group with the project's exit-status contract: 0 success, 1 user error
    (click usage errors included, which click itself reports as 2), 2 generation failure.
    Commands signal their status by returning it.
    """
    def main(self, args=None, prog_name=None, **extra):
        extra.pop("standalone_mode", None)
        try:
            rv = super().main(args=args, prog_name=prog_name, standalone_mode=False, **extra)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_USER_ERROR)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USER_ERROR)
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)
