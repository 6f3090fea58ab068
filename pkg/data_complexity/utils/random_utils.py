import hashlib
import json

import numpy as np

# Counter-based 64-bit generator; streams are reproducible for a given numpy build
RNG_ALGORITHM = "numpy.random.Philox"


def make_rng(seed: int) -> np.random.Generator:
    """Seeded Philox generator."""
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise TypeError("seed must be an integer")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return np.random.Generator(np.random.Philox(int(seed)))


def derive_seed(global_seed: int, problem_id) -> int:
    """
    Derive a stable per-problem seed from a global seed and a problem identifier.

    The identifier may be an index or a name; the same pair always yields the
    same 63-bit seed regardless of execution order.
    """
    key = json.dumps([int(global_seed), str(problem_id)])
    digest = hashlib.sha256(key.encode()).hexdigest()
    return int(digest[:16], 16) >> 1
