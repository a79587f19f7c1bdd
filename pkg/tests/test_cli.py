import csv
import io
import random

import pytest

from subzip.cli import escape, expand_rows, main, unescape
from subzip.datasets import fibonacci

from conftest import random_text


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def text_file(tmp_path):
    def make(data, name="in.txt"):
        p = tmp_path / name
        p.write_bytes(data)
        return p
    return make


def build(text_file, tmp_path, data, backend, *extra):
    idx = tmp_path / f"{backend}.idx"
    code, out = run("build", text_file(data), idx, "--backend", backend, *extra)
    assert code == 0
    return idx, dict(line.split("\t") for line in out.splitlines())


def test_build_reports(text_file, tmp_path):
    _, info = build(text_file, tmp_path, b"babac", "sa")
    assert info["n"] == "5" and info["sigma"] == "3"
    _, info = build(text_file, tmp_path, b"babac", "cdawg")
    assert info["e"] == "5" and info["memory_bits_formula"] == "774"
    _, info = build(text_file, tmp_path, fibonacci(10946), "rlbwt", "--sample-rate", "16")
    assert int(info["r"]) <= 30 and info["sample_rate"] == "16"


def test_compress_babac_text(text_file, tmp_path):
    idx, _ = build(text_file, tmp_path, b"babac", "cdawg")
    code, out = run("compress", idx, "lz78", 1, 5)
    assert code == 0
    assert out.splitlines() == ["1\t1\t0\tb", "2\t2\t0\ta", "3\t3\t1\ta", "4\t5\t0\tc"]


def test_compress_single_literal(text_file, tmp_path):
    idx, _ = build(text_file, tmp_path, b"babac", "sa")
    assert run("compress", idx, "lz78", 3, 3)[1] == "1\t3\t0\tb\n"


def test_compress_lzd_csv(text_file, tmp_path):
    idx, _ = build(text_file, tmp_path, b"abaabaabc", "rlbwt")
    code, out = run("compress", idx, "lzd", 1, 9, "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "start", "ref", "literal"]
    assert rows[1:] == [["1", "1", "|", "a|b"], ["2", "3", "|1", "a|"], ["3", "6", "2|", "|c"]]
    assert expand_rows("lzd", [tuple(r) for r in rows[1:]]) == b"abaabaabc"


@pytest.mark.parametrize("scheme", ["lz78", "lzd", "lzmw"])
@pytest.mark.parametrize("backend", ["sa", "cdawg", "rlbwt"])
def test_compress_output_decodes(text_file, tmp_path, scheme, backend):
    data = bytes(random.Random(5).choice(b'ab,|\\"\n\t x') for _ in range(150))
    idx, _ = build(text_file, tmp_path, data, backend)
    for i, j in [(1, 150), (17, 90), (150, 150)]:
        for fmt in ("text", "csv"):
            code, out = run("compress", idx, scheme, i, j, "--format", fmt)
            assert code == 0
            if fmt == "csv":
                rows = [tuple(r) for r in csv.reader(io.StringIO(out))][1:]
            else:
                rows = [tuple(line.split("\t")) for line in out.splitlines()]
            assert expand_rows(scheme, rows) == data[i - 1:j]


def test_escape_round_trip():
    for b in range(256):
        assert unescape(escape(b)) == bytes([b])
    assert escape(ord(",")) == "\\x2c"


def test_stats(text_file, tmp_path):
    idx, _ = build(text_file, tmp_path, b"babac", "cdawg")
    code, out = run("stats", idx)
    assert code == 0
    assert out.splitlines() == ["edges,suffixes", "1,2", "2,4", "mean,1.666667"]
    csv_path = tmp_path / "s.csv"
    assert run("stats", idx, "--csv", csv_path)[0] == 0
    assert csv_path.read_text().splitlines()[0] == "edges,suffixes"


def test_stats_unary(text_file, tmp_path):
    idx, _ = build(text_file, tmp_path, b"aaaaaa", "cdawg")
    rows = run("stats", idx)[1].splitlines()[1:-1]
    assert sum(int(r.split(",")[1]) for r in rows) == 7


def test_bench(text_file, tmp_path):
    data = random_text(random.Random(2), 300, 4)
    idx, _ = build(text_file, tmp_path, data, "sa")
    target = tmp_path / "b.csv"
    code, out = run("bench", idx, "lzmw", "--min-exp", 2, "--max-exp", 5, "--reps", 3,
                    "--seed", 4, "--csv", target)
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "dataset,backend,scheme,alpha,reps,mean_seconds,z"
    assert [l.split(",")[3] for l in lines[1:]] == ["4", "8", "16", "32"]
    again = run("bench", idx, "lzmw", "--min-exp", 2, "--max-exp", 5, "--reps", 3, "--seed", 4)[1]
    zs = [l.split(",")[6] for l in again.splitlines()[1:]]
    assert zs == [l.split(",")[6] for l in lines[1:]]


def test_exit_codes(text_file, tmp_path, capsys):
    idx, _ = build(text_file, tmp_path, b"babac", "sa")
    assert run("compress", idx, "lz78", 4, 9)[0] == 1
    assert run("compress", idx, "lz78", 0, 2)[0] == 1
    assert run("stats", idx)[0] == 1
    assert run("bench", idx, "lz78", "--max-exp", 5)[0] == 1
    assert run("bench", idx, "lz78", "--max-exp", 2, "--reps", 2)[0] == 1
    assert run("build", text_file(b"babac"), tmp_path / "o", "--backend", "sa", "--sample-rate", 4)[0] == 1
    with pytest.raises(SystemExit) as exc:
        run("compress", idx, "lz99", 1, 2)
    assert exc.value.code == 1
    assert run("compress", tmp_path / "missing.idx", "lz78", 1, 2)[0] == 2
    assert run("build", text_file(b"", "empty"), tmp_path / "e.idx")[0] == 3
    junk = tmp_path / "junk.idx"
    junk.write_bytes(b"garbage" * 20)
    assert run("compress", junk, "lz78", 1, 2)[0] == 3
