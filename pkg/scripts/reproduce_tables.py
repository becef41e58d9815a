#!/usr/bin/env python3
"""Regenerate the three benchmark tables as CSV files.

Usage: python scripts/reproduce_tables.py [output_dir]
"""

import pathlib
import sys

from lagmesh.cli import main

out_dir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("tables")
out_dir.mkdir(parents=True, exist_ok=True)

for number in (1, 2, 3):
    target = out_dir / f"table{number}.csv"
    code = main(["--task", "table", "--table", str(number), "--out", str(target)])
    if code != 0:
        sys.exit(code)
print(f"tables written to {out_dir}/")
