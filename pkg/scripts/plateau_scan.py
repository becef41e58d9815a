#!/usr/bin/env python3
"""Scan the eigenvalue against the mesh scale factor for the benchmark
problems, producing the raw data behind the convergence-plateau plots.

Usage: python scripts/plateau_scan.py [output_dir]

Each CSV holds one problem scanned over h at several mesh sizes; plot
energy against h per N to see the plateau grow with the mesh.
"""

import pathlib
import sys

from lagmesh import (
    GaussianPotential,
    NonrelativisticKinetic,
    ProblemSpec,
    SalpeterKinetic,
    YukawaPotential,
    solve,
)
from lagmesh.cli import write_csv, _fmt

out_dir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("scans")
out_dir.mkdir(parents=True, exist_ok=True)

CASES = {
    "gaussian_ground": (NonrelativisticKinetic(1, 1), GaussianPotential(15.0, 1.0), 0, (10, 20, 40), 0),
    "gaussian_p_wave": (NonrelativisticKinetic(1, 1), GaussianPotential(15.0, 1.0), 1, (10, 20, 40), 0),
    "salpeter_gaussian": (SalpeterKinetic(1, 1), GaussianPotential(3.0, 1.0), 0, (10, 20, 40), 0),
    "yukawa_ground": (NonrelativisticKinetic(1, 1), YukawaPotential(10.0, 1.0), 0, (50, 100, 200), 0),
    "salpeter_yukawa": (SalpeterKinetic(16, 16), YukawaPotential(1.0, 5.0), 0, (25, 50, 100), 0),
}

H_GRID = [0.05 * k for k in range(2, 41)]  # 0.1 .. 2.0

for name, (kinetic, potential, l, sizes, n_index) in CASES.items():
    rows = []
    for size in sizes:
        for h in H_GRID:
            states = solve(ProblemSpec(kinetic, potential, l, size, h))
            if len(states) > n_index:
                rows.append([str(size), _fmt(h), str(n_index), str(l), _fmt(states[n_index].energy)])
    target = out_dir / f"{name}.csv"
    write_csv(str(target), ["N", "h", "n", "l", "energy"], rows)
    print(f"wrote {target} ({len(rows)} rows)")
