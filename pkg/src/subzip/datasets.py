"""Deterministic test inputs: Fibonacci prefixes and English-like text."""
import numpy as np

# rough English letter frequencies, a..z
_LETTER_FREQ = np.array([
    8.2, 1.5, 2.8, 4.3, 12.7, 2.2, 2.0, 6.1, 7.0, 0.15, 0.77, 4.0, 2.4,
    6.7, 7.5, 1.9, 0.095, 6.0, 6.3, 9.1, 2.8, 0.98, 2.4, 0.15, 2.0, 0.074,
])


def fibonacci(n: int) -> bytes:
    """Length-n prefix of the infinite Fibonacci word over {a, b}."""
    a, b = b"a", b"ab"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def english_like(n: int, seed: int = 0, vocabulary: int = 20000) -> bytes:
    """Zipf-distributed pseudo-words with spaces, punctuation and line breaks."""
    rng = np.random.default_rng(seed)
    p = _LETTER_FREQ / _LETTER_FREQ.sum()
    lengths = np.clip(rng.geometric(0.22, size=vocabulary), 1, 14)
    letters = rng.choice(np.frombuffer(b"abcdefghijklmnopqrstuvwxyz", np.uint8), size=lengths.sum(), p=p)
    bounds = np.r_[0, np.cumsum(lengths)]
    words = [letters[bounds[k]:bounds[k + 1]].tobytes() for k in range(vocabulary)]
    weights = 1.0 / np.arange(1, vocabulary + 1) ** 1.1
    weights /= weights.sum()
    count = n // 4 + 16
    out = bytearray()
    while len(out) < n:
        ids = rng.choice(vocabulary, size=count, p=weights)
        marks = rng.random(count)
        chunk = []
        sentence_start = True
        for w, r in zip(ids.tolist(), marks.tolist()):
            word = words[w]
            if sentence_start:
                word = word[:1].upper() + word[1:]
            chunk.append(word)
            if r < 0.06:
                chunk.append(b".\n" if r < 0.01 else b". ")
                sentence_start = True
            else:
                chunk.append(b", " if r < 0.1 else b" ")
                sentence_start = False
        out += b"".join(chunk)
    return bytes(out[:n])
