import functools
import random
import sys

import pytest

from subzip import CdawgIndex, RlbwtIndex, SaIndex
from subzip.datasets import fibonacci


def _rlbwt(data):
    # a small sample rate so that short texts still exercise LF walks
    return RlbwtIndex.build(data, sample_rate=3)


BUILDERS = {"sa": SaIndex.build, "cdawg": CdawgIndex.build, "rlbwt": _rlbwt}


@functools.lru_cache(maxsize=256)
def build_all(data: bytes):
    return {name: make(data) for name, make in BUILDERS.items()}


def random_text(rng: random.Random, n: int, sigma: int) -> bytes:
    letters = b"abcdefghijklmnopqrstuvwxyz"[:sigma]
    return bytes(rng.choice(letters) for _ in range(n))


SMALL_TEXTS = [
    b"babac", b"a", b"ab", b"aaaa", b"abaabaabc", b"mississippi",
    b"banana", b"abcabcabc", b"zyx", fibonacci(34), b"b" * 17,
]


@pytest.fixture(params=list(BUILDERS))
def backend(request):
    return request.param


@pytest.fixture
def babac(backend):
    return build_all(b"babac")[backend]


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[num])
