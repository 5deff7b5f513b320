from app import create_app
from app.api.helpers.cli import SurfaceGenGroup

cli = SurfaceGenGroup(
    create_app=create_app,
    add_default_commands=False,
    add_version_option=False,
    load_dotenv=False,
    help="Surface realization: train, generate, enumerate, score, repl.",
)

if __name__ == '__main__':
    cli()
