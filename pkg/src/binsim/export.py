"""Writers for run outputs: level and ledger CSVs, the summary and the manifest.

Every writer emits ``\\n`` line endings and a deterministic byte stream, so
two runs of the same config and seed produce identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from . import __version__
from .config import dump_config
from .engine import SimResult

LEVELS_HEADER = ("tick", "bin_id", "level", "state")
LEDGER_HEADER = ("tick", "bin_id", "citizen_id", "units", "amount")

SUMMARY_KEYS = (
    "bins",
    "ticks",
    "full_bins_final",
    "total_units_collected",
    "total_units_dumped",
    "total_revenue",
    "total_trip_cost",
    "net_revenue",
    "total_distance",
    "mean_collection_delay",
    "max_collection_delay",
    "trips",
    "units_generated",
)


def export_levels_csv(result: SimResult, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(LEVELS_HEADER)
        for rec in result.records:
            for bin_id, (level, state) in enumerate(zip(rec.levels, rec.states)):
                w.writerow((rec.tick, bin_id, level, state.value))
    return path


def export_ledger_csv(result: SimResult, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(LEDGER_HEADER)
        w.writerows(result.ledger)
    return path


def summarize(result: SimResult) -> dict:
    m = result.metrics
    final = result.records[-1]
    out = {
        "bins": len(final.levels),
        "ticks": final.tick,
        "full_bins_final": final.full_bins_uncollected,
    }
    out.update({k: m[k] for k in SUMMARY_KEYS if k in m})
    return out


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_summary(result: SimResult, path) -> Path:
    path = Path(path)
    summary = summarize(result)
    path.write_text("".join(f"{k} = {_fmt(summary[k])}\n" for k in SUMMARY_KEYS))
    return path


def read_summary(path) -> dict:
    out = {}
    for line in Path(path).read_text().splitlines():
        key, _, value = line.partition("=")
        value = value.strip()
        out[key.strip()] = float(value) if "." in value else int(value)
    return out


def write_manifest(result: SimResult, path, outputs: dict[str, str]) -> Path:
    path = Path(path)
    manifest = {
        "version": __version__,
        "seed": result.config.seed,
        "config": dump_config(result.config),
        "outputs": outputs,
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def read_manifest(path) -> dict:
    return json.loads(Path(path).read_text())
