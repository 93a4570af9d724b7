"""Reproducible named experiments over the library, with manifests.

Each experiment takes a flat JSON config (namespaced keys like "jc.omega"),
a 64-bit seed, and an output directory; it emits CSV artifacts (17
significant digits, locale independent) plus a manifest echoing the fully
resolved config with SHA-256 checksums of every artifact.  Unknown config
keys abort before any computation.  Reruns with identical config and seed
produce byte-identical artifacts; wall-clock duration lives only in the
manifest and is excluded from checksummed content.

Exit-code policy (mapped by the CLI): ConfigError for malformed or unknown
configuration, RegimeError for parameter sets the numerics reject,
InternalCheckError for violated internal invariants.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import density as dn
from . import histories as hist
from . import jc
from . import measurement as ms
from . import two_state as ts
from .fock import FockSpace
from .states import CatState, GaussianState, SmearingParams
from .wigner import GridAliasingError, wigner_function


class GravcatError(Exception):
    """Base class for harness failures."""


class ConfigError(GravcatError):
    """Malformed, unknown, or out-of-range configuration."""


class RegimeError(GravcatError):
    """Parameters outside the numerically valid regime."""


class InternalCheckError(GravcatError):
    """An internal invariant failed while producing results."""


_REQUIRED = object()


@dataclass
class ExperimentConfig:
    experiment: str
    parameters: dict
    seed: int
    output_dir: Path


@dataclass
class ResultManifest:
    experiment: str
    config: dict
    seed: int
    tool_version: str
    artifacts: list
    results: dict
    duration_seconds: float
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "experiment": self.experiment,
            "config": self.config,
            "seed": self.seed,
            "tool_version": self.tool_version,
            "artifacts": self.artifacts,
            "results": self.results,
            "duration_seconds": self.duration_seconds,
        }
        out.update(self.extra)
        return out


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(path: Path, header: list[str], rows) -> Path:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path


def _json_safe(obj):
    """Strict-JSON form: numpy scalars unwrapped, non-finite floats -> None."""
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if np.isfinite(f) else None
    return obj


def write_json(path: Path, obj: dict) -> Path:
    text = json.dumps(_json_safe(obj), indent=2, sort_keys=True, allow_nan=False)
    path.write_text(text + "\n", encoding="ascii")
    return path


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def load_config(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object of flat keys")
    return raw


def resolve_config(experiment: str, raw: dict, seed: int | None = None,
                   output_dir=None) -> ExperimentConfig:
    """Validate flat keys against the experiment schema and fill defaults."""
    if experiment not in SCHEMAS:
        raise ConfigError(
            f"unknown experiment {experiment!r}; choose from {sorted(SCHEMAS)}"
        )
    schema = SCHEMAS[experiment]
    raw = dict(raw)
    raw_experiment = raw.pop("experiment", experiment)
    if raw_experiment != experiment:
        raise ConfigError(
            f"config names experiment {raw_experiment!r} but {experiment!r} was requested"
        )
    cfg_seed = raw.pop("seed", None)
    cfg_out = raw.pop("output_dir", None)
    unknown = set(raw) - set(schema)
    if unknown:
        raise ConfigError(f"unknown config keys for {experiment}: {sorted(unknown)}")
    params = {}
    for key, (typ, default) in schema.items():
        if key in raw:
            try:
                params[key] = typ(raw[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"config key {key} has invalid value {raw[key]!r}") from exc
        elif default is _REQUIRED:
            raise ConfigError(f"config key {key} is required for {experiment}")
        else:
            params[key] = default
    if seed is None:
        seed = int(cfg_seed) if cfg_seed is not None else 0
    out = Path(output_dir if output_dir is not None else (cfg_out or "gravcat_out"))
    return ExperimentConfig(experiment=experiment, parameters=params, seed=int(seed),
                            output_dir=out)


def _worker_count() -> int:
    raw = os.environ.get("GRAVCAT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"GRAVCAT_THREADS must be an integer, got {raw!r}")


def _domain(builder, *args, **kwargs):
    """Build a library value object, mapping its range checks to ConfigError."""
    try:
        return builder(*args, **kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# two-well correlation experiment


def _run_g2s(cfg: ExperimentConfig, outdir: Path):
    p = cfg.parameters
    if p["grid.t_count"] < 1:
        raise ConfigError("time grid is empty (grid.t_count must be >= 1)")
    if p["grid.t_max"] < p["grid.t_min"]:
        raise ConfigError("grid.t_max must be >= grid.t_min")
    c_plus = complex(p["g2s.c_plus_re"], p["g2s.c_plus_im"])
    c_minus = complex(p["g2s.c_minus_re"], p["g2s.c_minus_im"])
    norm = np.hypot(abs(c_plus), abs(c_minus))
    if norm == 0.0:
        raise ConfigError("well amplitudes are both zero")
    state = _domain(ts.QubitState, c_plus / norm, c_minus / norm)
    params = _domain(ts.TunnelingParams, p["g2s.nu"], p["g2s.chi"])
    dens = _domain(ts.SmearedDensityParams, p["g2s.m"], p["g2s.ell"])
    times = np.linspace(p["grid.t_min"], p["grid.t_max"], p["grid.t_count"])

    mean_rows = [
        (a, t, ts.mean_density(state, dens, a, params, t))
        for t in times
        for a in (1, -1)
    ]
    corr_rows = []
    for i, t1 in enumerate(times):
        for t2 in times[i:]:
            for a1 in (1, -1):
                for a2 in (1, -1):
                    q = ts.two_time_quantum_corr(state, dens, a1, a2, params, t1, t2)
                    s = ts.two_time_statistical_corr(state, dens, a1, a2, params, t1, t2)
                    corr_rows.append((a1, a2, t1, t2, q.real, q.imag, s))
    arts = [
        write_csv(outdir / "mean_density.csv", ["a", "t", "mean"], mean_rows),
        write_csv(
            outdir / "correlations.csv",
            ["a1", "a2", "t1", "t2", "quantum_re", "quantum_im", "statistical"],
            corr_rows,
        ),
    ]
    return arts, {"rows_mean": len(mean_rows), "rows_corr": len(corr_rows)}


# ---------------------------------------------------------------------------
# force-trajectory experiment


def _run_force(cfg: ExperimentConfig, outdir: Path):
    p = cfg.parameters
    if p["force.count"] < 100:
        raise RegimeError("statistics mode needs force.count >= 100")
    sched = _domain(ms.MeasurementSchedule, tau=p["force.tau"],
                    n_steps=p["force.steps"], nu=p["force.nu"])
    if np.isnan(p["force.f0"]):
        geo = _domain(ms.ProbeGeometry, G=p["probe.G"], m=p["probe.m"],
                      m0=p["probe.m0"], L=p["probe.L"], y=p["probe.y"])
        f0 = ms.force_amplitude(geo)
    else:
        f0 = p["force.f0"]

    ensemble = ms.sample_trajectories(sched, p["force.count"], cfg.seed,
                                      max_workers=_worker_count())
    max_lag = p["force.max_lag"] if p["force.max_lag"] > 0 else sched.n_steps
    stats = ms.estimate_force_statistics(ensemble, sched, f0, max_lag=max_lag)

    fit_lags = stats.lag_steps >= 1
    gamma_corr, _ = ms.fit_exponential_rate(stats.lag_time[fit_lags], stats.corr[fit_lags])
    mean_window = stats.mean < 0
    gamma_mean, _ = ms.fit_exponential_rate(stats.time[mean_window], stats.mean[mean_window])

    arts = [
        write_csv(
            outdir / "statistics.csv",
            ["lag_steps", "lag_time", "corr", "stderr"],
            zip(stats.lag_steps, stats.lag_time, stats.corr, stats.corr_stderr),
        ),
        write_csv(
            outdir / "mean_series.csv",
            ["step", "time", "mean", "stderr"],
            zip(range(sched.n_steps + 1), stats.time, stats.mean, stats.mean_stderr),
        ),
        write_json(
            outdir / "metadata.json",
            {
                "nu": sched.nu,
                "tau": sched.tau,
                "N": sched.n_steps,
                "Gamma": sched.gamma,
                "f0": f0,
                "seed": cfg.seed,
                "count": p["force.count"],
                "estimator": stats.metadata,
            },
        ),
    ]
    if p["force.dump_trajectories"]:
        rows = (
            (i, step, int(ensemble.readings[i, step]))
            for i in range(len(ensemble))
            for step in range(sched.n_steps + 1)
        )
        arts.append(
            write_csv(outdir / "trajectories.csv",
                      ["trajectory_id", "step", "reading"], rows)
        )
    results = {
        "f0": f0,
        "gamma_theory": sched.gamma,
        "fitted_gamma_corr": gamma_corr,
        "fitted_gamma_mean": gamma_mean,
    }
    return arts, results


# ---------------------------------------------------------------------------
# oscillator-probe experiment


def _run_jc(cfg: ExperimentConfig, outdir: Path):
    p = cfg.parameters
    omega = p["jc.omega"]
    if omega <= 0:
        raise ConfigError("jc.omega must be positive")
    dim = p["jc.dim"]
    if dim < 2:
        raise ConfigError("jc.dim must be at least 2")
    params = _domain(jc.JCParams, nu=p["jc.nu_over_omega"] * omega, omega=omega,
                     g=p["jc.g_over_omega"] * omega)
    # The pointer orbit reaches 2 |zeta_0|; demand headroom in the cutoff.
    max_reach = 2.0 * abs(params.zeta0)
    if max_reach**2 > dim / 4.0:
        raise RegimeError(
            f"Fock cutoff {dim} inadequate for pointer reach |zeta| = {max_reach:.3g} "
            f"(need |zeta|^2 <= dim/4)"
        )
    space = FockSpace(dim)
    if p["jc.samples"] < 2:
        raise ConfigError("jc.samples must be at least 2")
    if p["jc.nu_t_max"] <= 0:
        raise ConfigError("jc.nu_t_max must be positive")
    if params.nu > 0:
        t_max = p["jc.nu_t_max"] / params.nu
    else:
        t_max = p["jc.nu_t_max"] / omega
    times = np.linspace(0.0, t_max, p["jc.samples"])

    initial = jc.pointer_state(params, space, +1)
    target = jc.pointer_state(params, space, -1)
    states = jc.evolve_series(params, space, initial, times)
    tvec = target.as_vector()
    p_exact = np.array([abs(np.vdot(tvec, st.as_vector())) ** 2 for st in states])
    ivec = initial.as_vector()
    import warnings as _warnings

    p_pert = np.empty_like(p_exact)
    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore", jc.RegimeWarning)
        for k, t in enumerate(times):
            u = jc.adiabatic_propagator(params, space, t) @ jc.perturbative_propagator(
                params, space, t
            )
            p_pert[k] = abs(np.vdot(tvec, u @ ivec)) ** 2
    p_rabi = jc.rabi_probability(params, times)
    purities = np.array([jc.purity(jc.reduced_oscillator_state(st)) for st in states])
    zeta = jc.pointer_path(params, times)

    report = jc.distinguishability(params)
    seg = times[1] - times[0]
    h_norm = float(np.linalg.norm(jc.total_hamiltonian(params, space), 2))
    steps_per_segment = max(1, int(np.ceil(h_norm * seg / jc.MAX_STEP_NORM)))
    arts = [
        write_csv(
            outdir / "timeseries.csv",
            ["t", "p_exact", "p_perturbative", "p_rabi", "purity", "zeta_re", "zeta_im"],
            zip(times, p_exact, p_pert, p_rabi, purities, zeta.real, zeta.imag),
        ),
        write_json(
            outdir / "metadata.json",
            {
                "nu": params.nu,
                "omega": params.omega,
                "g": params.g,
                "dim": dim,
                "steps_per_segment": steps_per_segment,
                "samples": int(times.size),
                "deterministic": True,  # no randomness enters this experiment
            },
        ),
        write_json(
            outdir / "distinguishability.json",
            {
                "overlap": report.overlap,
                "probe_ok": report.probe_ok,
                "threshold": report.threshold,
                "omega_cubed": report.omega_cubed,
                "coupling_scale": report.coupling_scale,
                "zeta0": params.zeta0,
            },
        ),
    ]
    results = {
        "max_abs_dev_exact_vs_rabi": float(np.max(np.abs(p_exact - p_rabi))),
        "max_transition_probability": float(np.max(p_exact)),
    }
    return arts, results


# ---------------------------------------------------------------------------
# mass-density experiment


def _density_state(p):
    kind = p["density.state"]
    if kind == "gaussian":
        return _domain(GaussianState, p["density.sigma"])
    if kind == "cat":
        return _domain(CatState, p["density.sigma"], (p["density.L"], 0.0, 0.0))
    raise ConfigError(f"density.state must be 'gaussian' or 'cat', got {kind!r}")


def _run_density(cfg: ExperimentConfig, outdir: Path):
    p = cfg.parameters
    state = _density_state(p)
    smear = _domain(SmearingParams, p["density.s_x"])
    m = p["density.m"]
    axis_state = state.axis_state(0)

    try:
        grid = wigner_function(axis_state, x_axis=None, p_axis=None)
    except GridAliasingError as exc:
        raise RegimeError(str(exc)) from exc

    wig_rows = (
        (x, pp, grid.values[i, j])
        for i, x in enumerate(grid.x)
        for j, pp in enumerate(grid.p)
    )
    arts = [write_csv(outdir / "wigner.csv", ["x", "p", "w"], wig_rows)]
    arts.append(
        write_json(
            outdir / "wigner_meta.json",
            {
                "columns": ["x", "p", "w"],
                "x_min": float(grid.x[0]),
                "x_max": float(grid.x[-1]),
                "x_count": int(grid.x.size),
                "p_min": float(grid.p[0]),
                "p_max": float(grid.p[-1]),
                "p_count": int(grid.p.size),
                "normalization": grid.meta.get("normalization"),
                "units": "natural (hbar = 1); W normalized to dx dp / (2 pi)",
                "state": {
                    "kind": p["density.state"],
                    "sigma": p["density.sigma"],
                    "separation": p["density.L"] if p["density.state"] == "cat" else 0.0,
                },
                "sampling_width": p["density.s_x"],
                "mass": m,
            },
        )
    )

    # Static-limit mean profile along the axis vs m |psi|^2.
    xs = np.linspace(grid.x[0], grid.x[-1], 101)
    mean_rows = []
    for x in xs:
        mean_ps = dn.smeared_mean_phase_space(grid, float(x), 0.0, m)
        exact = m * float(np.abs(axis_state.psi(x)) ** 2)
        mean_rows.append((x, mean_ps, exact))
    arts.append(
        write_csv(outdir / "static_mean.csv", ["x", "smeared_mean", "density_exact"],
                  mean_rows)
    )

    # Relative fluctuation profile (3D states, both exponent conventions).
    prof_rows = []
    for x in xs:
        r = (float(x), 0.0, 0.0)
        try:
            c2 = dn.fluctuation_ratio(state, smear, r, m, density_exponent=2)
            c3 = dn.fluctuation_ratio(state, smear, r, m, density_exponent=3)
        except ValueError:
            continue
        prof_rows.append((x, c2, c3))
    arts.append(
        write_csv(outdir / "fluctuation_profile.csv",
                  ["x", "c_ratio_quadratic", "c_ratio_cubic"], prof_rows)
    )

    # Two-point correlators: delta-limit vs full quadrature at a few offsets.
    corr_rows = []
    t1, t2 = 0.1, 0.35
    for dr in (10.0 * smear.s_x, 20.0 * smear.s_x, 0.5):
        r2 = -0.5 * dr
        r1 = 0.5 * dr
        mean_d, corr_d = dn.smeared_corr_phase_space(grid, smear, r1, t1, r2, t2, m,
                                                     method="delta")
        _, corr_q = dn.smeared_corr_phase_space(grid, smear, r1, t1, r2, t2, m,
                                                method="quadrature")
        corr_rows.append((r1, t1, r2, t2, mean_d, corr_d, corr_q))
    arts.append(
        write_csv(
            outdir / "correlators.csv",
            ["r", "t", "r2", "t2", "mean_delta", "corr_delta", "corr_quadrature"],
            corr_rows,
        )
    )

    # Marginalization defect of two-time sampling records: generic mass vs
    # quasi-commuting heavy mass.
    sam = SmearingParams(max(p["density.s_x"], p["density.sigma"] / 4.0))
    r1_comb = hist.partition_points(0.0, 6.0 * p["density.sigma"], sam.s_x)
    defect_rows = []
    for dt, mass in ((0.4, m), (0.2, m), (0.1, m), (0.2, 1e14)):
        defect = hist.additivity_defect(axis_state, sam, 0.1, 0.1 + dt, r1_comb,
                                        [0.0, p["density.sigma"]], mass)
        defect_rows.append((dt, mass, defect))
    arts.append(
        write_csv(outdir / "kolmogorov_defect.csv", ["delta_t", "mass", "defect"],
                  defect_rows)
    )
    results = {"wigner_normalization": grid.meta.get("normalization")}
    return arts, results


SCHEMAS = {
    "g2s-correlations": {
        "g2s.nu": (float, _REQUIRED),
        "g2s.chi": (float, 0.0),
        "g2s.c_plus_re": (float, 1.0),
        "g2s.c_plus_im": (float, 0.0),
        "g2s.c_minus_re": (float, 0.0),
        "g2s.c_minus_im": (float, 0.0),
        "g2s.m": (float, 1.0),
        "g2s.ell": (float, 1.0),
        "grid.t_min": (float, 0.0),
        "grid.t_max": (float, _REQUIRED),
        "grid.t_count": (int, _REQUIRED),
    },
    "force-trajectories": {
        "force.nu": (float, _REQUIRED),
        "force.tau": (float, _REQUIRED),
        "force.steps": (int, _REQUIRED),
        "force.count": (int, _REQUIRED),
        "force.f0": (float, float("nan")),
        "force.max_lag": (int, 0),
        "force.dump_trajectories": (int, 0),
        "probe.G": (float, 1.0),
        "probe.m": (float, 1.0),
        "probe.m0": (float, 1.0),
        "probe.L": (float, 2.0),
        "probe.y": (float, 0.0),
    },
    "jc-suite": {
        "jc.omega": (float, 1.0),
        "jc.g_over_omega": (float, 2.0),
        "jc.nu_over_omega": (float, 0.01),
        "jc.dim": (int, 64),
        "jc.nu_t_max": (float, float(np.pi)),
        "jc.samples": (int, 61),
    },
    "density-suite": {
        "density.state": (str, "gaussian"),
        "density.sigma": (float, 1.0),
        "density.L": (float, 6.0),
        "density.s_x": (float, 0.05),
        "density.m": (float, 1.0),
    },
}

_RUNNERS = {
    "g2s-correlations": _run_g2s,
    "force-trajectories": _run_force,
    "jc-suite": _run_jc,
    "density-suite": _run_density,
}


def run_experiment(cfg: ExperimentConfig) -> ResultManifest:
    """Run one named experiment, write artifacts and manifest.json."""
    runner = _RUNNERS[cfg.experiment]
    outdir = cfg.output_dir
    outdir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    artifacts, results = runner(cfg, outdir)
    duration = time.perf_counter() - start

    entries = []
    for path in artifacts:
        digest = sha256_file(path)
        entries.append({"name": path.name, "sha256": digest, "bytes": path.stat().st_size})
        if sha256_file(path) != digest:
            raise InternalCheckError(f"checksum of {path} changed during manifest build")

    manifest = ResultManifest(
        experiment=cfg.experiment,
        config=dict(sorted(cfg.parameters.items())),
        seed=cfg.seed,
        tool_version=__version__,
        artifacts=entries,
        results=results,
        duration_seconds=duration,
    )
    write_json(outdir / "manifest.json", manifest.to_dict())
    return manifest
