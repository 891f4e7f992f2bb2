"""Rewrite the pinned CLI outputs in tests/golden (run after an intended format change)."""

import contextlib
import io
from pathlib import Path

from chevparab.cli import main

GOLDEN = Path(__file__).parent / "golden"
TYPES = ("A2", "A3", "B2", "G2")


def cases():
    for t in TYPES:
        yield f"roots_{t}.json", ["roots", "--type", t]
        yield f"structconsts_{t}.csv", ["structconsts", "--type", t, "--all"]
        yield f"parabolic-info_{t}.json", ["parabolic-info", "--type", t, "--I", "1"]


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


if __name__ == "__main__":
    for name, argv in cases():
        code, out = run(argv)
        assert code == 0, (argv, code)
        (GOLDEN / name).write_text(out)
        print("wrote", name)
