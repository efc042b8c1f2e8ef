"""xorshift64* generator, seeded through splitmix64.

Fixed constants so traces reproduce across implementations:
shifts (12, 25, 27), multiplier 0x2545F4914F6CDD1D; splitmix64 increment
0x9E3779B97F4A7C15 with finalizer multipliers 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB.
"""

MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        s = splitmix64(seed & MASK)
        self.state = s or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def uniform_int(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] by rejection sampling."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            r = self.next_u64()
            if r < limit:
                return lo + r % span
