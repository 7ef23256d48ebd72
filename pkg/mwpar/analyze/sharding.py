"""
Sharded map/merge over a corpus.

A corpus file is cut into line-aligned byte ranges; a mapper turns the
tuples of one range into a partial aggregate and partials are merged in
range order, so results do not depend on the worker count.
"""

from concurrent.futures import ProcessPoolExecutor
from functools import reduce
from typing import Callable, Iterable, Iterator, TypeVar, Union

from mwpar.builder.corpus import Corpus
from mwpar.builder.tuples import TranslationTuple

T = TypeVar("T")

CorpusLike = Union[Corpus, Iterable[TranslationTuple]]
Mapper = Callable[[Iterator[TranslationTuple]], T]
Merger = Callable[[T, T], T]


def _map_range(root: str, start: int, end: int, mapper: Mapper) -> T:
    return mapper(Corpus(root).iter_range(start, end))


def map_tuples(corpus: CorpusLike, mapper: Mapper, merge: Merger, workers: int = 1) -> T:
    """
    Apply ``mapper`` to shards of the corpus and merge the partials.

    Args:
        corpus: A Corpus (sharded when workers > 1) or any iterable of tuples
        mapper: Top-level (picklable) function from tuples to a partial aggregate
        merge: Associative merge of two partials
        workers: Worker processes

    Returns:
        The merged aggregate
    """
    if isinstance(corpus, Corpus) and workers > 1:
        ranges = corpus.byte_ranges(workers * 4)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(
                _map_range,
                [str(corpus.root)] * len(ranges),
                [a for a, _ in ranges],
                [b for _, b in ranges],
                [mapper] * len(ranges),
            ))
        return reduce(merge, partials)
    return mapper(iter(corpus))
