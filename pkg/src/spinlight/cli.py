"""``spinlight <command> --config scenario.yaml [--out PATH] [--format csv|json]``.

A scenario file is YAML.  The parameters for a command live under a section
named after it (``gem-field`` and ``gyro-signal`` may also be spelled with an
underscore).  Optional top-level sections::

    output:    {format: csv, path: table.csv}
    constants: {c: 1.0, mu0: 1.0}          # overrides, after $SPINLIGHT_CONSTANTS

Every physical quantity carries its unit in the key name.  See README.md for
the keys each command accepts and the columns it writes.

Exit codes: 0 success, 2 configuration or input error, 3 physics-domain
error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np
import yaml

from . import gem, kinematics, solver
from .constants import Constants, load_constants
from .errors import ConfigError, InvalidInputError, SpinlightError
from .grid import GridSpec
from .optics import MediumParams

COMMANDS = ("dispersion", "residual", "doppler", "sagnac", "gem-field", "faraday", "gyro-signal")


# -- config access -----------------------------------------------------------


class Section:
    """Typed access to one mapping of the scenario, with dotted-path diagnostics."""

    def __init__(self, data, path: str):
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a mapping, got {type(data).__name__}")
        self.data = data
        self.path = path

    def _missing(self, key):
        raise ConfigError(f"{self.path}.{key}: required key is missing")

    def raw(self, key, default=...):
        if key in self.data:
            return self.data[key]
        if default is ...:
            self._missing(key)
        return default

    def number(self, key, default=..., positive=False, nonneg=False) -> float:
        v = self.raw(key, default)
        return _as_number(v, f"{self.path}.{key}", positive, nonneg)

    def numbers(self, key, default=..., positive=False) -> list[float]:
        v = self.raw(key, default)
        vals = v if isinstance(v, list) else [v]
        return [_as_number(x, f"{self.path}.{key}", positive) for x in vals]

    def vector(self, key, default=...) -> np.ndarray:
        v = self.raw(key, default)
        return _as_vector(v, f"{self.path}.{key}")

    def vectors(self, key, default=...) -> list[np.ndarray]:
        v = self.raw(key, default)
        if not isinstance(v, list) or not v:
            raise ConfigError(f"{self.path}.{key}: expected a list of 3-vectors")
        if all(isinstance(x, (int, float)) for x in v):
            v = [v]
        return [_as_vector(x, f"{self.path}.{key}[{i}]") for i, x in enumerate(v)]

    def helicities(self, key="helicities") -> list[int]:
        v = self.raw(key, [1, -1])
        vals = v if isinstance(v, list) else [v]
        for h in vals:
            if h not in (1, -1) or isinstance(h, bool):
                raise ConfigError(f"{self.path}.{key}: helicity must be 1 or -1, got {h!r}")
        return [int(h) for h in vals]

    def section(self, key, default=...) -> "Section":
        return Section(self.raw(key, default), f"{self.path}.{key}")


def _as_number(v, where, positive=False, nonneg=False) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        # YAML 1.1 reads "1e14" (no dot) as a string
        try:
            v = float(v) if isinstance(v, str) else None
        except ValueError:
            v = None
        if v is None:
            raise ConfigError(f"{where}: expected a number")
    v = float(v)
    if not math.isfinite(v):
        raise ConfigError(f"{where}: expected a finite number")
    if positive and not v > 0:
        raise ConfigError(f"{where}: must be positive, got {v}")
    if nonneg and v < 0:
        raise ConfigError(f"{where}: must be non-negative, got {v}")
    return v


def _as_vector(v, where) -> np.ndarray:
    if not isinstance(v, list) or len(v) != 3:
        raise ConfigError(f"{where}: expected a list of three numbers")
    return np.array([_as_number(x, where) for x in v])


def _media(sec: Section) -> list[MediumParams]:
    raw = sec.raw("media", [{"eps": 1.0, "mu": 1.0}])
    if not isinstance(raw, list):
        raise ConfigError(f"{sec.path}.media: expected a list of {{eps, mu}} mappings")
    out = []
    for i, item in enumerate(raw):
        m = Section(item, f"{sec.path}.media[{i}]")
        out.append(MediumParams(m.number("eps", 1.0, positive=True),
                                m.number("mu", 1.0, positive=True)))
    return out


def _source(sec: Section) -> gem.GEMSource:
    raw = sec.raw("source", "earth")
    if isinstance(raw, str):
        if raw not in gem.CATALOG:
            raise ConfigError(f"{sec.path}.source: unknown catalog entry {raw!r}; "
                              f"known: {sorted(gem.CATALOG)}")
        return gem.CATALOG[raw]
    s = Section(raw, f"{sec.path}.source")
    return gem.GEMSource(
        s.number("mass_kg", positive=True),
        s.vector("angular_momentum_kg_m2_per_s"),
        s.number("radius_m", positive=True),
    )


# -- commands ----------------------------------------------------------------


def run_dispersion(sec: Section, const: Constants) -> list[dict]:
    omegas = sec.numbers("omega_rad_per_s", positive=True)
    Omegas = sec.numbers("Omega_rad_per_s", [0.0])
    media = _media(sec)
    hs = sec.helicities()
    recover = bool(sec.raw("recover", False))
    gsec = sec.section("grid", {})
    points = int(gsec.number("points", 17, positive=True))
    wavelengths = gsec.number("wavelengths", 10.0, positive=True)
    rows = []
    for w in omegas:
        for Om in Omegas:
            for m in media:
                for h in hs:
                    k = solver.dispersion_axial(w, Om, m, h, const)
                    row = {"helicity": h, "omega": w, "Omega": Om, "n": m.n, "k_closed": k,
                           "k_recovered": None, "rel_diff": None}
                    if recover:
                        grid = solver.default_grid(w, m, const, wavelengths, points)
                        kr = solver.dispersion_recover(w, Om, m, h, grid, const)
                        row["k_recovered"] = kr
                        row["rel_diff"] = abs(kr - k) / k
                    rows.append(row)
    return rows


def run_residual(sec: Section, const: Constants) -> list[dict]:
    w = sec.number("omega_rad_per_s", positive=True)
    Om = sec.number("Omega_rad_per_s", 0.0)
    m = _media(sec)[0]
    h = sec.helicities("helicity")[0]
    mode = solver.HelicityMode.closed_form(h, w, Om, m, const=const)
    if "k_rad_per_m" in sec.data:
        mode = mode.with_k(sec.number("k_rad_per_m", positive=True))
    lam = 2 * math.pi * const.c / (m.n * w)
    side = sec.number("box_wavelengths", 1.0, positive=True) * lam
    medium = solver.RotatingMedium(Om, m, exact=bool(sec.raw("exact_medium", False)), const=const)
    rows = []
    prev = None
    for n in sec.numbers("points", [9, 17, 33], positive=True):
        grid = GridSpec.cube(side, int(n))
        rep = solver.curl_residual(lambda r: solver.ansatz_field(mode, r, const), h, w, medium,
                                   grid, const, estimate_order=False)
        h_n = float(grid.spacing[0])
        order = None
        if prev is not None and rep.max_norm > 0:
            order = math.log(prev[1] / rep.max_norm) / math.log(prev[0] / h_n)
        rows.append({"points": int(n), "h": h_n, "k": mode.k,
                     "max_norm": rep.max_norm, "l2_norm": rep.l2_norm, "order": order})
        prev = (h_n, rep.max_norm)
    return rows


def run_doppler(sec: Section, const: Constants) -> list[dict]:
    w0 = sec.number("omega0_rad_per_s", positive=True)
    direction = sec.vector("k_direction", [0, 0, 1])
    k0 = (w0 / const.c) * direction / np.linalg.norm(direction)
    Omega = sec.vector("Omega_rad_per_s")
    rows = []
    for r in sec.vectors("positions_m", [[0.0, 0.0, 0.0]]):
        for h in sec.helicities():
            s = kinematics.RayState(w0, k0, r, Omega, h)
            rows.append({
                "helicity": h, "x": r[0], "y": r[1], "z": r[2], "omega0": w0,
                "omega_doppler": kinematics.doppler_frequency(s, const),
                "omega_measured": kinematics.energy_total(s, const) / const.hbar,
                "energy": kinematics.energy_total(s, const),
            })
    return rows


def run_sagnac(sec: Section, const: Constants) -> list[dict]:
    Omega = sec.vector("Omega_rad_per_s")
    rows = []
    for w0 in sec.numbers("omega0_rad_per_s", positive=True):
        for A in sec.vectors("area_m2"):
            rows.append({"omega0": w0, "Omega_dot_A": float(Omega @ A),
                         "phase_rad": kinematics.sagnac_phase(w0, Omega, A, const)})
    return rows


def run_gem_field(sec: Section, const: Constants) -> list[dict]:
    src = _source(sec)
    rows = []
    for x in sec.vectors("positions_m"):
        pot = gem.gem_potentials(src, x, const)
        f = gem.gem_fields(src, x, const)
        L = gem.larmor_frequency(f.B_g, const)
        row = {"x": x[0], "y": x[1], "z": x[2], "Phi_g": pot.Phi_g,
               "chi_g": gem.gravitomagnetic_scalar_potential(src, x, const)}
        for name, vec in (("A_g", pot.A_g), ("E_g", f.E_g), ("B_g", f.B_g), ("Omega_L", L)):
            for ax, v in zip("xyz", vec):
                row[f"{name}_{ax}"] = float(v)
        row["B_g_norm"] = float(np.linalg.norm(f.B_g))
        row["spin_gravity_energy_eV"] = const.joules_to_ev(const.hbar * row["B_g_norm"] / const.c)
        rows.append(row)
    return rows


def run_faraday(sec: Section, const: Constants) -> list[dict]:
    src = _source(sec)
    w = sec.number("omega_rad_per_s", 1e15, positive=True)
    paths = sec.raw("paths_m")
    if not isinstance(paths, list) or not paths:
        raise ConfigError(f"{sec.path}.paths_m: expected a list of [z_i, z_f] pairs")
    rows = []
    for i, p in enumerate(paths):
        if not isinstance(p, list) or len(p) != 2:
            raise ConfigError(f"{sec.path}.paths_m[{i}]: expected [z_i, z_f]")
        zi, zf = (_as_number(v, f"{sec.path}.paths_m[{i}]", positive=True) for v in p)
        closed = gem.faraday_rotation_axial(src, zi, zf, const)
        numeric = gem.faraday_rotation_numeric(src, zi, zf, w, const)
        rows.append({"z_i": zi, "z_f": zf, "delta_closed": closed, "delta_numeric": numeric,
                     "rel_diff": abs(numeric - closed) / abs(closed) if closed else 0.0})
    return rows


def run_gyro_signal(sec: Section, const: Constants) -> list[dict]:
    rows = []
    for L in sec.numbers("path_length_m", positive=True):
        for m in _media(sec):
            for Om in sec.numbers("Omega_rad_per_s"):
                dk = solver.helicity_splitting(Om, m, const)
                rows.append({"L": L, "n": m.n, "Omega": Om, "delta_k": dk,
                             "delta_phi": dk * L, "polarization_rotation": -0.5 * dk * L})
    return rows


RUNNERS = {
    "dispersion": run_dispersion,
    "residual": run_residual,
    "doppler": run_doppler,
    "sagnac": run_sagnac,
    "gem-field": run_gem_field,
    "faraday": run_faraday,
    "gyro-signal": run_gyro_signal,
}


# -- output ------------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(rows[0].keys())
        for row in rows:
            w.writerow([_fmt(v) for v in row.values()])
    return buf.getvalue()


def _json_value(v) -> str:
    if v is None or (isinstance(v, float) and not math.isfinite(v)):
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    return _fmt(v)


def to_json(rows: list[dict]) -> str:
    lines = []
    for row in rows:
        body = ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in row.items())
        lines.append("  {" + body + "}")
    return "[\n" + ",\n".join(lines) + "\n]\n" if lines else "[]\n"


# -- entry point -------------------------------------------------------------


def load_scenario(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data


def run(command: str, scenario: dict, const: Constants | None = None) -> list[dict]:
    """Run ``command`` on a parsed scenario and return its table rows."""
    if command not in RUNNERS:
        raise ConfigError(f"unknown command {command!r}")
    if const is None:
        const = load_constants()
    overrides = scenario.get("constants") or {}
    if overrides:
        sec = Section(overrides, "constants")
        known = {"c", "mu0", "G", "hbar", "e_charge"}
        bad = set(overrides) - known
        if bad:
            raise ConfigError(f"constants: unknown key(s) {sorted(bad)}")
        const = const.replace(**{k: sec.number(k, positive=True) for k in overrides})
    key = command if command in scenario else command.replace("-", "_")
    if key not in scenario:
        raise ConfigError(f"config has no {command!r} section")
    sec = Section(scenario[key], key)
    try:
        return RUNNERS[command](sec, const)
    except InvalidInputError as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="spinlight", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="YAML scenario file")
    parser.add_argument("--out", help="output path (default: stdout or output.path)")
    parser.add_argument("--format", choices=("csv", "json"), help="table format")
    args = parser.parse_args(argv)
    try:
        scenario = load_scenario(args.config)
        out_cfg = Section(scenario.get("output") or {}, "output")
        fmt = args.format or out_cfg.raw("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"output.format: expected csv or json, got {fmt!r}")
        out_path = args.out or out_cfg.raw("path", None)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            rows = run(args.command, scenario)
    except SpinlightError as exc:
        print(f"spinlight: error: {exc}", file=sys.stderr)
        return exc.exit_code
    text = to_csv(rows) if fmt == "csv" else to_json(rows)
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
