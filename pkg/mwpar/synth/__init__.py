"""
Synthetic scored bitext with planted ground truth, for tests and smoke runs.
"""

from mwpar.synth.generator import (
    PlantedCorpus,
    SynthConfig,
    generate,
    generate_corpus,
    make_synth_config,
    parse_sizes,
    random_pairs,
    write_planted,
)

__all__ = [
    "PlantedCorpus",
    "SynthConfig",
    "generate",
    "generate_corpus",
    "make_synth_config",
    "parse_sizes",
    "random_pairs",
    "write_planted",
]
