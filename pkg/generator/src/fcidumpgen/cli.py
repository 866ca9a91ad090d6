"""Command line interface for fixture generation."""

from __future__ import annotations

import os

import click

from .generate import generate_dumps, generate_references, write_manifest
from .systems import SYSTEMS


@click.group()
def main() -> None:
    """Generate FCIDUMP fixtures and reference energies."""


@main.command()
@click.option("--systems", default=",".join(SYSTEMS),
              help="Comma-separated system names.")
@click.option("--out", "out_dir", default="data", show_default=True,
              help="Output directory.")
@click.option("--skip-references", is_flag=True,
              help="Only write the dumps, not the reference energy table.")
def generate(systems: str, out_dir: str, skip_references: bool) -> None:
    """Generate dumps, references.csv, and manifest.json."""
    names = [s.strip() for s in systems.split(",") if s.strip()]
    unknown = [n for n in names if n not in SYSTEMS]
    if unknown:
        raise click.BadParameter(f"unknown systems: {', '.join(unknown)}")
    generate_dumps(names, out_dir, log=click.echo)
    if not skip_references:
        csv_path = os.path.join(out_dir, "references.csv")
        generate_references(names, out_dir, csv_path, log=click.echo)
        write_manifest(names, out_dir, csv_path,
                       os.path.join(out_dir, "manifest.json"))
    click.echo("done")
