"""Run a validated experiment and write its data files.

Each run writes ``<kind>.csv`` and ``summary.json`` into the output
directory. CSV floats carry 17 significant digits; the summary keeps a fixed
key order, so rerunning a config reproduces both files byte for byte apart
from ``duration_s``.

CSV columns per kind:

=========  ====================================================
mz         outcome, probability
trials     outcome, count, frequency, expected
strategy   photon, p_sent, p_detect_cumulative, p_explode_cumulative
trigger    q, min_error, false_trigger, miss
scatter    mode_index, k, probability, cumulative
well       n, probability
optimize   R, objective, efficiency, expected_photons
=========  ====================================================
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import chisquare

from . import __version__, interferometer as mz, shadow, trigger as trig, well
from .config import ExperimentConfig

_STRATEGY_ROW_LIMIT = 10_000


@dataclass
class RunSummary:
    config: dict
    results: dict
    files: list
    duration_s: float
    version: str = __version__
    csv_text: str = field(default="", repr=False)

    def to_json(self) -> str:
        doc = {
            "version": self.version,
            "config": self.config,
            "results": self.results,
            "files": self.files,
            "duration_s": self.duration_s,
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def format_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _mz(p, seed, workers):
    cfg = mz.MzConfig(p["R"], p["bomb"], p["calibration_phase"])
    d = mz.outcome_distribution(cfg)
    results = {"p_bright": d.p_bright, "p_dark": d.p_dark, "p_absorbed": d.p_absorbed}
    if cfg.bomb_present:
        results["efficiency"] = mz.efficiency(cfg.R)
    rows = zip(mz.OUTCOMES, d.as_array())
    return results, ("outcome", "probability"), rows


def _trials(p, seed, workers):
    cfg = mz.MzConfig(p["R"], p["bomb"])
    tally = mz.run_trials(cfg, p["n"], seed, workers)
    expected = mz.outcome_distribution(cfg).as_array()
    counts = tally.as_array()
    live = expected > 1e-14
    pvalue = None
    if live.sum() > 1:
        exp_counts = expected[live] / expected[live].sum() * tally.n_trials
        pvalue = float(chisquare(counts[live], exp_counts).pvalue)
    results = {"counts": tally.counts, "n_trials": tally.n_trials, "chi2_pvalue": pvalue}
    rows = [
        (name, int(c), c / tally.n_trials, e)
        for name, c, e in zip(mz.OUTCOMES, counts, expected)
    ]
    return results, ("outcome", "count", "frequency", "expected"), rows


def _strategy(p, seed, workers):
    cfg = mz.MzConfig(p["R"], True)
    report = mz.sequential_strategy(cfg, p["max_photons"])
    results = asdict(report)
    if p["mc_runs"]:
        results["monte_carlo"] = mz.simulate_strategy(
            cfg, p["max_photons"], p["mc_runs"], seed, workers
        )
    detect, explode, cont = mz._per_shot(cfg.R)
    limit = p["max_photons"] or _STRATEGY_ROW_LIMIT
    rows = []
    reach = 1.0
    cum_d = cum_e = 0.0
    for k in range(1, min(limit, _STRATEGY_ROW_LIMIT) + 1):
        cum_d += reach * detect
        cum_e += reach * explode
        rows.append((k, reach, cum_d, cum_e))
        reach *= cont
        if p["max_photons"] is None and reach < 1e-17:
            break
    header = ("photon", "p_sent", "p_detect_cumulative", "p_explode_cumulative")
    return results, header, rows


def _trigger(p, seed, workers):
    probe = trig.BombTrigger(p["delta_x"])
    p_th = probe.p_coarse if p["p_th"] is None else p["p_th"]
    t = trig.BombTrigger(p["delta_x"], p_th)
    q_min = trig.minimum_detectable_kick(t, p["error_budget"])
    results = {
        "sigma_p": t.sigma_p,
        "p_coarse": t.p_coarse,
        "p_th": p_th,
        "false_trigger_probability": trig.false_trigger_probability(t),
        "error_budget": p["error_budget"],
        "minimum_detectable_kick": q_min,
        "minimum_detectable_kick_times_delta_x": q_min * t.delta_x,
        "min_error_at_p_coarse": trig.min_error(t, t.p_coarse),
    }
    qs = np.linspace(0.0, p["q_max_sigma"] * t.sigma_p, p["q_points"])
    rows = []
    for q in qs:
        r = trig.kick_discrimination(t, q)
        rows.append((q, r.min_error, r.false_trigger, r.miss))
    return results, ("q", "min_error", "false_trigger", "miss"), rows


def _scatter(p, seed, workers):
    a = p["a"]
    k_in = p["k_in"] if p["k_in"] is not None else 200.0 * math.pi / a
    grid = shadow.ApertureGrid(p["W"], p["n_points"], a, k_in)
    shadow.check_far_field_resolution(grid)
    spec = shadow.angular_spectrum(grid)
    stats = shadow.momentum_transfer_stats(spec)
    # default threshold: bomb localised to its own size, delta_x = a
    p_th = 1.0 / grid.a_eff if p["p_th"] is None else p["p_th"]
    out = shadow.classify_outcomes(spec, trig.BombTrigger(grid.a_eff, p_th))
    results = {
        "a_eff": grid.a_eff,
        "k_in": k_in,
        "p_absorbed": spec.p_absorbed,
        "p_forward": spec.p_forward,
        "p_scattered": spec.p_scattered,
        "scattered_over_absorbed": spec.p_scattered / spec.p_absorbed,
        **stats,
        "p_th": p_th,
        "p_inconclusive": out.p_inconclusive,
        "p_detect_safe": out.p_detect_safe,
        "p_boom": out.p_boom,
    }
    order = np.argsort(spec.k, kind="stable")
    j = np.rint(spec.k * grid.W / (2 * math.pi)).astype(int)
    cum = np.cumsum(spec.weights[order])
    rows = zip(j[order], spec.k[order], spec.weights[order], cum)
    return results, ("mode_index", "k", "probability", "cumulative"), rows


def _well(p, seed, workers):
    w = well.WellBomb(p["M"], p["omega"])
    spec = well.excitation_spectrum(w, p["q"], p["n_max"])
    bound = well.well_trigger_bound(w)
    results = {
        "delta_x": w.delta_x,
        "delta_p": w.delta_p,
        "lambda": spec.lam,
        "stay_probability": well.stay_probability(w, p["q"]),
        "p_excite": spec.p_excite(),
        "absorbed_energy": w.omega * spec.mean_quanta(),
        "kick_energy": p["q"] ** 2 / (2 * w.M),
        "trigger_bound": bound,
        "trigger_bound_over_delta_p": bound / w.delta_p,
        "trigger_bound_times_delta_x": bound * w.delta_x,
    }
    rows = zip(spec.levels, spec.probabilities)
    return results, ("n", "probability"), rows


def _optimize(p, seed, workers):
    weight = p["weight"]
    R_opt, value = mz.optimize_reflectivity(weight)
    results = {
        "weight": weight,
        "R_opt": R_opt,
        "objective": value,
        "efficiency": mz.efficiency(R_opt),
        "expected_photons": mz.expected_photons(R_opt),
    }
    grid = np.linspace(mz.R_EPS, 1 - mz.R_EPS, p["grid_points"])
    rows = [
        (R, mz.reflectivity_objective(R, weight), mz.efficiency(R), mz.expected_photons(R))
        for R in grid
    ]
    return results, ("R", "objective", "efficiency", "expected_photons"), rows


_DISPATCH = {
    "mz": _mz,
    "trials": _trials,
    "strategy": _strategy,
    "trigger": _trigger,
    "scatter": _scatter,
    "well": _well,
    "optimize": _optimize,
}


def run(config: ExperimentConfig, out_dir=None, workers: int = 1) -> RunSummary:
    """Dispatch ``config`` to its module; write files when ``out_dir`` is set."""
    t0 = time.perf_counter()
    results, header, rows = _DISPATCH[config.kind](config.params, config.seed, workers)
    csv_text = format_csv(header, rows)
    files = []
    out_dir = out_dir if out_dir is not None else config.out
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{config.kind}.csv").write_text(csv_text, encoding="utf-8")
        files = [f"{config.kind}.csv", "summary.json"]
    summary = RunSummary(
        config.echo(), results, files, time.perf_counter() - t0, csv_text=csv_text
    )
    if out_dir is not None:
        (Path(out_dir) / "summary.json").write_text(summary.to_json(), encoding="utf-8")
    return summary
