"""
mwpar - multi-way parallel corpus toolkit
Contains ingest, builder, analyze, filter and synth modules
"""

__version__ = "0.1.0"
