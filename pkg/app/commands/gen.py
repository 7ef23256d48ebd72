from pathlib import Path
from typing import Optional

import typer

from app.commands.common import replayable, resolve_params
from mwpar.synth.generator import DEFAULT_SIZES, generate_corpus, make_synth_config


def gen_command(
    ctx: typer.Context,
    out: Path = typer.Option(..., "--out", help="Output directory"),
    seed: int = typer.Option(0, "--seed"),
    tuples: int = typer.Option(1000, "--tuples", help="Planted tuples"),
    languages: int = typer.Option(12, "--languages", help="Language count"),
    sizes: str = typer.Option(DEFAULT_SIZES, "--sizes", help="Tuple size distribution size:weight,..."),
    translation_rate: float = typer.Option(0.25, "--translation-rate", help="Planted share of monolingual data with a translation"),
    near_dup_rate: float = typer.Option(0.05, "--near-dup-rate", help="Chance a sentence gets a near-duplicate variant"),
    redundant_rate: float = typer.Option(0.1, "--redundant-rate", help="Chance a tuple gets a redundant pair"),
    corrupt_rate: float = typer.Option(0.01, "--corrupt-rate", help="Share of malformed lines"),
    random_pairs: int = typer.Option(0, "--random-pairs", help="Also write this many unstructured pairs"),
    reuse_rate: float = typer.Option(0.3, "--reuse-rate", help="Sentence reuse rate of the unstructured pairs"),
    config: Optional[Path] = typer.Option(None, "--config", help="ground_truth.json of a generated corpus to replay"),
) -> None:
    """Generate synthetic scored bitext with planted ground truth."""
    params = resolve_params(ctx, config, "gen")
    generate_corpus(out, make_synth_config(**replayable(params)))
