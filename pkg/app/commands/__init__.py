from app.commands import build, filter, gen, stats, stratify

__all__ = ["build", "filter", "gen", "stats", "stratify"]
