"""Deterministic randomness for keys, signatures and scenarios.

Every operation that needs randomness takes a DeterministicRng, so runs
are reproducible from a seed and independent streams can be forked per
entity or purpose.  The stream is SHAKE-256 over (seed, counter).
"""

from __future__ import annotations

import hashlib


class DeterministicRng:
    """Counter-mode SHAKE-256 stream with fixed draw semantics.

    scalar() and scalar_nonzero() reduce a 16-byte-oversampled block mod
    the group order, keeping bias below 2^-128.  fork(label) derives an
    independent stream, so sibling forks never share state.
    """

    def __init__(self, seed: bytes | str, order: int):
        if isinstance(seed, str):
            seed = seed.encode()
        self._seed = bytes(seed)
        self._order = int(order)
        self._width = (self._order.bit_length() + 7) // 8 + 16
        self._counter = 0

    @property
    def order(self) -> int:
        return self._order

    def _block(self, nbytes: int) -> bytes:
        ctr = self._counter.to_bytes(8, "big")
        self._counter += 1
        return hashlib.shake_256(b"rng/v1|" + self._seed + b"|" + ctr).digest(nbytes)

    def randbytes(self, nbytes: int) -> bytes:
        return self._block(nbytes)

    def randbits(self, bits: int) -> int:
        raw = int.from_bytes(self._block((bits + 7) // 8), "big")
        return raw >> ((-bits) % 8)

    def scalar(self) -> int:
        return int.from_bytes(self._block(self._width), "big") % self._order

    def scalar_nonzero(self) -> int:
        while True:
            v = self.scalar()
            if v:
                return v

    def fork(self, label: bytes | str) -> "DeterministicRng":
        if isinstance(label, str):
            label = label.encode()
        child = hashlib.shake_256(b"fork/v1|" + self._seed + b"|" + bytes(label)).digest(32)
        return DeterministicRng(child, self._order)
