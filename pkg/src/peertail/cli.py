"""Command-line front end: run sweeps, write CSV/JSON outputs, emit plot scripts.

Output bundle layout (all text files UTF-8 with LF line endings, floats
printed with 17 significant digits so they parse back bit-exactly):

* ``outcomes.csv``   -- alpha, run_index, k_hat, t_hat, iterations, stability
* ``summary.csv``    -- alpha, mean, variance, mu3, skew_normalized,
  kurtosis_normalized, n_runs
* ``histogram.csv``  -- alpha, bin_lo, bin_hi, count, fraction
* ``manifest.json``  -- config echo, seed, package version, timestamps; feed
  it back through ``--config`` to regenerate the CSVs byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .experiment import (
    DEFAULT_AGENTS,
    DEFAULT_ALPHA_GRID,
    DEFAULT_RUNS,
    PAPER_SCALE_AGENTS,
    PAPER_SCALE_RUNS,
    ExperimentConfig,
    SweepResult,
    make_alpha_grid,
    sweep_alpha,
)

__all__ = [
    "OutputBundle",
    "parse_config",
    "write_outputs",
    "emit_plot_script",
    "main",
    "ENV_OUT_DIR",
    "PLOT_STYLES",
]

ENV_OUT_DIR = "PEERTAIL_OUT_DIR"
DEFAULT_OUT_DIR = "peertail-out"
PLOT_STYLES = ("slices", "surface", "kurtosis", "skew")

_CONFIG_FIELDS = (
    "master_seed",
    "epsilon",
    "n_agents",
    "alpha_grid",
    "runs_per_alpha",
    "bin_count",
    "thread_hint",
    "retain_populations",
)


@dataclass(frozen=True)
class OutputBundle:
    """Paths of one sweep's output files."""

    out_dir: Path
    outcomes_path: Path
    summary_path: Path
    histogram_path: Path
    manifest_path: Path


def _fmt(x: float) -> str:
    """17-significant-digit float formatting; round-trips any double exactly."""
    return format(float(x), ".17g")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="peertail",
        description=(
            "Monte Carlo sweep over the emulation weight alpha: each run draws a "
            "population of Normal private tastes, solves the cutoff equilibrium by "
            "best-response iteration, and the equilibrium fractions are aggregated "
            "into per-alpha moments and histograms."
        ),
    )
    p.add_argument("--agents", type=int, metavar="N",
                   help=f"agents per run (default {DEFAULT_AGENTS})")
    p.add_argument("--runs", type=int, metavar="R",
                   help=f"runs per grid point (default {DEFAULT_RUNS})")
    p.add_argument("--epsilon", type=float, metavar="E",
                   help="mean of the private-taste distribution (default 0)")
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--alpha", metavar="LO:HI:STEP",
                      help="inclusive alpha grid (default 0.5:2.0:0.05)")
    grid.add_argument("--alpha-list", metavar="V1,V2,...",
                      help="explicit comma-separated alpha values, increasing")
    p.add_argument("--bins", type=int, metavar="B",
                   help="histogram bins over [0, 1] (default 100)")
    p.add_argument("--seed", type=int, metavar="S",
                   help="64-bit master seed (auto-generated and printed if omitted)")
    p.add_argument("--threads", type=int, metavar="T",
                   help="worker processes, 0 = all cores (default 0); never affects results")
    p.add_argument("--out-dir", metavar="DIR",
                   help=f"output directory (default ${ENV_OUT_DIR} or ./{DEFAULT_OUT_DIR})")
    p.add_argument("--paper-scale", action="store_true",
                   help=f"full-size profile: {PAPER_SCALE_AGENTS} agents, "
                        f"{PAPER_SCALE_RUNS} runs per grid point")
    p.add_argument("--plot", action="append", choices=PLOT_STYLES, metavar="STYLE",
                   help="also emit a standalone matplotlib script "
                        f"({', '.join(PLOT_STYLES)}); repeatable")
    p.add_argument("--retain-populations", action="store_true",
                   help="keep every run's taste vector in memory (debugging sizes only)")
    p.add_argument("--config", metavar="FILE",
                   help="JSON config or manifest from a previous run; "
                        "explicit flags override its values")
    return p


def _parse_alpha_spec(parser: argparse.ArgumentParser, spec: str) -> tuple[float, ...]:
    parts = spec.split(":")
    if len(parts) != 3:
        parser.error(f"--alpha expects LO:HI:STEP, got {spec!r}")
    try:
        lo, hi, step = (float(v) for v in parts)
    except ValueError:
        parser.error(f"--alpha has a malformed number in {spec!r}")
    try:
        return make_alpha_grid(lo, hi, step)
    except ValueError as exc:
        parser.error(f"--alpha: {exc}")


def _parse_alpha_list(parser: argparse.ArgumentParser, spec: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in spec.split(","))
    except ValueError:
        parser.error(f"--alpha-list has a malformed number in {spec!r}")
    return values


def _load_config_file(parser: argparse.ArgumentParser, path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"--config {path}: {exc}")
    if not isinstance(data, dict):
        parser.error(f"--config {path}: expected a JSON object")
    # a manifest nests the config; a bare config file is the object itself
    config = data.get("config", data)
    unknown = set(config) - set(_CONFIG_FIELDS)
    if unknown:
        parser.error(f"--config {path}: unknown fields {sorted(unknown)}")
    return config


def _config_from_args(parser: argparse.ArgumentParser, ns: argparse.Namespace,
                      config_file: str | None) -> ExperimentConfig:
    values: dict = {
        "epsilon": 0.0,
        "n_agents": DEFAULT_AGENTS,
        "alpha_grid": DEFAULT_ALPHA_GRID,
        "runs_per_alpha": DEFAULT_RUNS,
        "bin_count": 100,
        "thread_hint": 0,
        "retain_populations": False,
        "master_seed": None,
    }
    path = config_file or ns.config
    if path:
        values.update(_load_config_file(parser, path))
    if ns.paper_scale:
        values["n_agents"] = PAPER_SCALE_AGENTS
        values["runs_per_alpha"] = PAPER_SCALE_RUNS
    if ns.agents is not None:
        values["n_agents"] = ns.agents
    if ns.runs is not None:
        values["runs_per_alpha"] = ns.runs
    if ns.epsilon is not None:
        values["epsilon"] = ns.epsilon
    if ns.alpha is not None:
        values["alpha_grid"] = _parse_alpha_spec(parser, ns.alpha)
    if ns.alpha_list is not None:
        values["alpha_grid"] = _parse_alpha_list(parser, ns.alpha_list)
    if ns.bins is not None:
        values["bin_count"] = ns.bins
    if ns.threads is not None:
        values["thread_hint"] = ns.threads
    if ns.retain_populations:
        values["retain_populations"] = True
    if ns.seed is not None:
        values["master_seed"] = ns.seed
    if values["master_seed"] is None:
        values["master_seed"] = secrets.randbits(64)
        print(f"peertail: generated master seed {values['master_seed']}", file=sys.stderr)
    try:
        return ExperimentConfig(**values)
    except (TypeError, ValueError) as exc:
        parser.error(str(exc))


def parse_config(argv: list[str] | None = None, config_file: str | None = None) -> ExperimentConfig:
    """Resolve an :class:`ExperimentConfig` from CLI flags and an optional file.

    Precedence: explicit flags beat file values beat built-in defaults (the
    ``--paper-scale`` profile sits between file values and the specific
    ``--agents``/``--runs`` flags). Usage problems exit with status 2, as the
    CLI would.
    """
    parser = _build_parser()
    ns = parser.parse_args(argv)
    return _config_from_args(parser, ns, config_file)


def _write_text(path: Path, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_outputs(result: SweepResult, out_dir) -> OutputBundle:
    """Write the three CSVs and the manifest for one sweep into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    outcome_lines = ["alpha,run_index,k_hat,t_hat,iterations,stability"]
    for entry in result.per_alpha:
        a = _fmt(entry.alpha)
        for run_index, o in enumerate(entry.distribution.outcomes):
            outcome_lines.append(
                f"{a},{run_index},{_fmt(o.k_hat)},{_fmt(o.t_hat)},{o.iterations},{o.stability}"
            )

    summary_lines = ["alpha,mean,variance,mu3,skew_normalized,kurtosis_normalized,n_runs"]
    for entry in result.per_alpha:
        m = entry.moments
        summary_lines.append(
            f"{_fmt(entry.alpha)},{_fmt(m.mean)},{_fmt(m.variance)},{_fmt(m.mu3)},"
            f"{_fmt(m.skew_normalized)},{_fmt(m.kurtosis_normalized)},{m.n_samples}"
        )

    histogram_lines = ["alpha,bin_lo,bin_hi,count,fraction"]
    for entry in result.per_alpha:
        a = _fmt(entry.alpha)
        h = entry.histogram
        edges = h.edges
        for i in range(h.bin_count):
            histogram_lines.append(
                f"{a},{_fmt(edges[i])},{_fmt(edges[i + 1])},{int(h.counts[i])},{_fmt(h.fractions[i])}"
            )

    bundle = OutputBundle(
        out_dir=out,
        outcomes_path=out / "outcomes.csv",
        summary_path=out / "summary.csv",
        histogram_path=out / "histogram.csv",
        manifest_path=out / "manifest.json",
    )
    try:
        _write_text(bundle.outcomes_path, outcome_lines)
        _write_text(bundle.summary_path, summary_lines)
        _write_text(bundle.histogram_path, histogram_lines)
        manifest = {
            "version": __version__,
            "created_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "wall_time_seconds": result.wall_time_seconds,
            "master_seed": result.config.master_seed,
            "config": {
                "master_seed": result.config.master_seed,
                "epsilon": result.config.epsilon,
                "n_agents": result.config.n_agents,
                "alpha_grid": list(result.config.alpha_grid),
                "runs_per_alpha": result.config.runs_per_alpha,
                "bin_count": result.config.bin_count,
                "thread_hint": result.config.thread_hint,
                "retain_populations": result.config.retain_populations,
            },
        }
        with open(bundle.manifest_path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"writing outputs under {out}: {exc}") from exc
    return bundle


_PLOT_PREAMBLE = '''\
#!/usr/bin/env python3
"""Standalone plot script generated by peertail; needs only matplotlib."""
import csv
import os.path

HERE = os.path.dirname(os.path.abspath(__file__))


def read_csv(name):
    with open(os.path.join(HERE, name), encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
'''

_PLOT_BODIES = {
    "kurtosis": '''
import matplotlib.pyplot as plt

rows = read_csv("summary.csv")
alpha = [float(r["alpha"]) for r in rows]
kurt = [float(r["kurtosis_normalized"]) for r in rows]

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(alpha, kurt, marker="o", ms=3)
ax.axhline(3.0, color="gray", lw=0.8, ls="--", label="Normal (3)")
ax.axhline(1.0, color="gray", lw=0.8, ls=":", label="symmetric two-point (1)")
ax.set_xlabel("emulation weight alpha")
ax.set_ylabel("normalized kurtosis of equilibrium fraction acting")
ax.legend(frameon=False)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "kurtosis.png"), dpi=150)
print("wrote kurtosis.png")
''',
    "skew": '''
import matplotlib.pyplot as plt

rows = read_csv("summary.csv")
alpha = [float(r["alpha"]) for r in rows]
skew = [float(r["skew_normalized"]) for r in rows]

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(alpha, skew, marker="o", ms=3)
ax.axhline(0.0, color="gray", lw=0.8, ls="--")
ax.set_xlabel("emulation weight alpha")
ax.set_ylabel("normalized skew of equilibrium fraction acting")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "skew.png"), dpi=150)
print("wrote skew.png")
''',
    "slices": '''
import matplotlib.pyplot as plt

rows = read_csv("histogram.csv")
alphas = sorted({float(r["alpha"]) for r in rows})
picks = sorted({alphas[0], alphas[len(alphas) // 2], alphas[-1]})

fig, ax = plt.subplots(figsize=(7, 4.5))
for a in picks:
    mine = [r for r in rows if float(r["alpha"]) == a]
    centers = [(float(r["bin_lo"]) + float(r["bin_hi"])) / 2 for r in mine]
    frac = [float(r["fraction"]) for r in mine]
    ax.step(centers, frac, where="mid", label=f"alpha = {a:g}")
ax.set_xlabel("equilibrium fraction acting")
ax.set_ylabel("fraction of runs per bin")
ax.legend(frameon=False)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "slices.png"), dpi=150)
print("wrote slices.png")
''',
    "surface": '''
import matplotlib.pyplot as plt

rows = read_csv("histogram.csv")
alphas = sorted({float(r["alpha"]) for r in rows})

fig = plt.figure(figsize=(8, 6))
ax = fig.add_subplot(projection="3d")
for a in alphas:
    mine = [r for r in rows if float(r["alpha"]) == a]
    centers = [(float(r["bin_lo"]) + float(r["bin_hi"])) / 2 for r in mine]
    frac = [float(r["fraction"]) for r in mine]
    ax.plot(centers, [a] * len(centers), frac, lw=0.9)
ax.set_xlabel("equilibrium fraction acting")
ax.set_ylabel("emulation weight alpha")
ax.set_zlabel("fraction of runs per bin")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "surface.png"), dpi=150)
print("wrote surface.png")
''',
}


def emit_plot_script(bundle: OutputBundle, style: str) -> Path:
    """Write ``plot_<style>.py`` next to the CSVs; the script only needs matplotlib."""
    if style not in PLOT_STYLES:
        raise ValueError(f"style must be one of {PLOT_STYLES}, got {style!r}")
    for path in (bundle.summary_path, bundle.histogram_path):
        if not path.exists():
            raise FileNotFoundError(f"bundle file missing: {path}")
    script = bundle.out_dir / f"plot_{style}.py"
    with open(script, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_PLOT_PREAMBLE + _PLOT_BODIES[style])
    return script


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    config = _config_from_args(parser, ns, None)
    out_dir = ns.out_dir or os.environ.get(ENV_OUT_DIR) or DEFAULT_OUT_DIR

    result = sweep_alpha(config)
    bundle = write_outputs(result, out_dir)
    for style in ns.plot or []:
        emit_plot_script(bundle, style)

    print(
        f"peertail: {len(result.per_alpha)} grid point(s) x {config.runs_per_alpha} runs "
        f"({config.n_agents} agents) in {result.wall_time_seconds:.1f}s -> {bundle.out_dir}"
    )
    return 0
