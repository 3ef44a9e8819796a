"""Counter-based dither streams.

Each stream is a Philox generator keyed by ``(seed, stream_id)``; the n-th
raw 64-bit word depends only on the key and n, so channel streams are
independent, reproducible, and unaffected by how draws are chunked.
"""

import numpy as np

from .errors import ConfigError

MASK64 = (1 << 64) - 1

# stream-id purpose tags (upper 32 bits); the channel index fills the low bits
SCRAMBLE_STREAM = 1
LSB_DITHER_STREAM = 2


def stream_id(purpose, channel):
    return (purpose << 32) | int(channel)


class DitherSource:
    """K-bit uniform digital dither on ``{0, ..., 2**K - 1}``.

    ``uniform`` maps draws to ``[0, 1)`` by dividing by ``2**K``; ``bits``
    yields the fair Bernoulli bits used for LSB dithering.
    """

    def __init__(self, seed, stream=0, bits=24):
        if not 8 <= bits <= 53:
            raise ConfigError(f"dither width K must be in 8..53 bits, got {bits}")
        if not 0 <= seed <= MASK64:
            raise ConfigError(f"dither seed must be an unsigned 64-bit integer, got {seed}")
        self.bits = bits
        self.seed = seed
        self.stream = stream
        key = np.array([seed, stream & MASK64], dtype=np.uint64)
        self._bitgen = np.random.Philox(key=key)
        self.position = 0

    def raw(self, n):
        words = self._bitgen.random_raw(n)
        self.position += n
        return np.asarray(words, dtype=np.uint64)

    def integers(self, n):
        return self.raw(n) >> np.uint64(64 - self.bits)

    def uniform(self, n=None):
        if n is None:
            return float(self.uniform(1)[0])
        return self.integers(n).astype(np.float64) * (2.0 ** -self.bits)

    def lsb_bits(self, n):
        return (self.raw(n) >> np.uint64(63)).astype(np.uint8)
