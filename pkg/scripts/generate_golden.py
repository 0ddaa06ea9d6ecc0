"""Regenerate the golden CLI reports under tests/golden/.

Run after an intentional change to report contents:

    python3 scripts/generate_golden.py
"""

import contextlib
import io
import sys
from pathlib import Path

from pmtopo.cli import main
from pmtopo.corpus import STANDARD_FIXTURES

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"
GOLDEN_COMMANDS = ("classify", "homology", "mac", "rz", "golod", "prove-p")


def source_for(key: str) -> str:
    name, params = STANDARD_FIXTURES[key]
    return ":".join(["corpus", name, *map(str, params)])


def run_cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return buf.getvalue(), code


def golden_path(key: str, command: str) -> Path:
    return GOLDEN_DIR / f"{key}.{command}.json"


def main_script() -> int:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for key in sorted(STANDARD_FIXTURES):
        for cmd in GOLDEN_COMMANDS:
            out, code = run_cli([cmd, source_for(key)])
            golden_path(key, cmd).write_text(out, encoding="utf-8")
            print(f"{key:28s} {cmd:10s} exit {code}")
    return 0


if __name__ == "__main__":
    sys.exit(main_script())
