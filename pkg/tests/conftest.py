import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from levispherical import build_root_system, from_word, reduced_word


@pytest.fixture
def rng():
    return random.Random(20240901)


def spec_of(type_str):
    return build_root_system(type_str)


def random_word(spec, rng, max_len=None):
    if max_len is None:
        max_len = 2 * len(spec.positive_roots)
    return [rng.randint(1, spec.rank) for _ in range(rng.randint(0, max_len))]


def random_element(spec, rng, max_len=None):
    return from_word(spec, random_word(spec, rng, max_len))


def random_length_additive_pair(spec, rng):
    """(u, v) with length(uv) = length(u) + length(v), via a word split."""
    word = reduced_word(spec, random_element(spec, rng))
    cut = rng.randint(0, len(word))
    return from_word(spec, word[:cut]), from_word(spec, word[cut:])
