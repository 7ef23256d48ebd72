"""mwpar - multi-way parallel corpus toolkit: command line, configuration and errors."""

__version__ = "0.1.0"
