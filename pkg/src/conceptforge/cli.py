"""Command-line entry point: validate, compile, reverse, serve.

Artifacts go to stdout, diagnostics and errors to stderr, so compile and
reverse can be piped into each other. Exit codes: 0 success, 1 validation
diagnostics, 2 I/O or parse failure, 3 usage error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import errors, rdb, svg, uml, xmlio
from .core import Model, validate_model

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_IO = 2
EXIT_USAGE = 3

COMPILE_TARGETS = ("uml", "sql", "svg", "xml")


def _load_model(path: str) -> Model:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.ConceptForgeError(f"cannot read {path}: {exc.strerror}")
    return xmlio.parse_model(text)


def _print_diagnostics(diags, stream) -> None:
    for d in diags:
        print(f"{d.code.value} {d.subject} {d.message}", file=stream)


def compile_model(m: Model, target: str) -> str:
    """Shared compile pipeline used by both the CLI and the HTTP service."""
    if target == "xml":
        return xmlio.serialize_model(m)
    if target == "svg":
        return svg.render_svg(m)
    diags = validate_model(m)
    if diags:
        raise errors.InvalidModel(diags)
    u = uml.to_uml(m)
    if target == "uml":
        return uml.render_uml_text(u)
    if target == "sql":
        return rdb.render_sql(rdb.to_schema(u))
    raise errors.ConceptForgeError(f"unknown target {target!r}")


@click.group()
def cli():
    """Frame model workbench: validation, compilation, and editing service."""


@cli.command("validate")
@click.argument("path")
def cmd_validate(path: str):
    """Validate a .cmx model file; print one line per diagnostic."""
    m = _load_model(path)
    diags = validate_model(m)
    _print_diagnostics(diags, sys.stdout)
    raise click.exceptions.Exit(EXIT_DIAGNOSTICS if diags else EXIT_OK)


@cli.command("compile")
@click.option("--target", type=click.Choice(COMPILE_TARGETS), required=True)
@click.argument("path")
def cmd_compile(path: str, target: str):
    """Compile a model to UML text, SQL DDL, SVG, or canonical XML."""
    m = _load_model(path)
    try:
        artifact = compile_model(m, target)
    except errors.InvalidModel as exc:
        _print_diagnostics(exc.diagnostics, sys.stderr)
        raise click.exceptions.Exit(EXIT_DIAGNOSTICS)
    sys.stdout.write(artifact)


@cli.command("reverse")
@click.option("--from", "source_format", type=click.Choice(["sql"]), required=True)
@click.argument("path")
def cmd_reverse(path: str, source_format: str):
    """Translate a DDL file back into a .cmx model on stdout."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.ConceptForgeError(f"cannot read {path}: {exc.strerror}")
    m = rdb.schema_to_frames(rdb.parse_ddl(text))
    sys.stdout.write(xmlio.serialize_model(m))


@cli.command("serve")
@click.option("--port", type=int, default=8734, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.argument("model_directory")
def cmd_serve(port: int, host: str, model_directory: str):
    """Run the HTTP editing service over a model directory."""
    import uvicorn

    from .service import create_app

    directory = Path(model_directory)
    if not directory.is_dir():
        raise errors.ConceptForgeError(f"{model_directory} is not a directory")
    app = create_app(directory)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except (OSError, SystemExit) as exc:
        if isinstance(exc, SystemExit) and not exc.code:
            return
        reason = exc if not isinstance(exc, SystemExit) else "port may be in use"
        raise errors.ConceptForgeError(f"cannot serve on port {port}: {reason}")


def main(argv: list[str] | None = None) -> int:
    """Run the CLI; returns the process exit code (testable in-process)."""
    try:
        # In non-standalone mode click returns the Exit code instead of
        # terminating the process.
        rv = cli.main(args=argv, standalone_mode=False)
        return rv if isinstance(rv, int) else EXIT_OK
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.Abort:
        return EXIT_IO
    except errors.ConceptForgeError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_IO


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
