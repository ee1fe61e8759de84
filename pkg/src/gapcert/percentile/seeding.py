import zlib

import numpy as np

SEED_MASK = (1 << 64) - 1


def _tag_word(tag):
    if isinstance(tag, str):
        return zlib.crc32(tag.encode("utf-8"))
    return int(tag) & 0xFFFFFFFF


def derive_seed(seed, *tags):
    """Derive a 64-bit seed for an independent stream keyed by ``tags``.

    Streams derived from the same seed with different tags do not overlap, so
    solve samples, certification samples and per-instance draws stay
    independent by construction.
    """
    words = [_tag_word(tag) for tag in tags]
    sequence = np.random.SeedSequence(entropy=int(seed) & SEED_MASK, spawn_key=tuple(words))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def rng_for(seed, *tags):
    if tags:
        seed = derive_seed(seed, *tags)
    return np.random.default_rng(int(seed) & SEED_MASK)
