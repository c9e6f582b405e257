"""Seeded bit source shared by the engine and the dense oracle.

State is seeded through splitmix64 and advanced with xorshift64*; a random
bit is the top bit of one output word.
"""

MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.seed = seed & MASK
        s = splitmix64(self.seed)
        self.state = s or 0x9E3779B97F4A7C15
        self.draws = 0

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        self.draws += 1
        return (x * 0x2545F4914F6CDD1D) & MASK

    def bit(self) -> int:
        return self.next_u64() >> 63

    def outcome(self) -> int:
        """+1 or -1 with equal probability."""
        return -1 if self.bit() else 1
