#!/usr/bin/env python3
"""Regenerate the reference evolution images and probability tables.

Writes PGM renders and CSV matrices for the bundled configs into ./out
(override with a single positional argument).
"""

import sys
from pathlib import Path

from qca2.cli import main

HERE = Path(__file__).resolve().parent

RUNS = [
    ("script", HERE / "fig2.qscript", "fig2"),
    ("simulate", HERE / "fig3.conf", "fig3"),
    ("simulate", HERE / "fig4a.conf", "fig4a"),
    ("simulate", HERE / "fig4b.conf", "fig4b"),
]


def run(out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    for command, source, name in RUNS:
        code = main([
            command, str(source),
            "--out-csv", str(out_dir / f"{name}.csv"),
            "--out-pgm", str(out_dir / f"{name}.pgm"),
        ])
        if code != 0:
            return code
        print(f"{name}: wrote {name}.csv and {name}.pgm")
    return 0


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out")
    sys.exit(run(target))
