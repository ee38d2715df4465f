"""finetune command line: train, serve."""

from __future__ import annotations

import sys

import click
import yaml

from .errors import FinetuneError
from .serve import serve as run_server
from .train import TrainConfig, train


@click.group()
def cli():
    """Train and serve the contrastive embedding encoder."""


@cli.command("train")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
def train_cmd(config_path):
    """Train from a YAML config with TrainConfig fields."""
    raw = yaml.safe_load(open(config_path, encoding="utf-8")) or {}
    if not isinstance(raw, dict):
        raise click.UsageError(f"config {config_path} must be a mapping")
    try:
        config = TrainConfig(**raw)
    except TypeError as exc:
        raise click.UsageError(str(exc)) from exc
    out = train(config)
    click.echo(str(out))


@cli.command("serve")
@click.option("--model", "model_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--port", default=8900, type=int, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve_cmd(model_dir, port, host):
    """Serve /embed from a trained model directory."""
    run_server(model_dir, port=port, host=host)


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 2
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except FinetuneError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
