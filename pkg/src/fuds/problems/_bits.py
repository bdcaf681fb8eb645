import numpy as np


def random_bits(n: int, rng) -> np.ndarray:
    """``n`` fair coin flips from a :class:`random.Random`, as a bool array."""
    nbytes = (n + 7) // 8
    raw = rng.getrandbits(nbytes * 8).to_bytes(nbytes, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)
