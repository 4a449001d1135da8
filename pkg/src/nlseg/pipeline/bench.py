"""Local vs nonlocal comparison over a batch of synthetic sequences."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Sequence

import numpy as np

from nlseg.evaluation import EvalReport, best_f_over_cuts
from nlseg.pipeline.core import PipelineConfig, run_pipeline
from nlseg.pipeline.synth import SyntheticSpec, generate_piecewise


@dataclass(frozen=True)
class BenchmarkRow:
    sequence_id: str
    local: EvalReport
    nonlocal_: EvalReport

    @property
    def diff(self) -> float:
        return self.nonlocal_.f_measure - self.local.f_measure


@dataclass(frozen=True)
class BenchmarkReport:
    rows: List[BenchmarkRow]

    @property
    def f_local(self) -> np.ndarray:
        return np.array([r.local.f_measure for r in self.rows])

    @property
    def f_nonlocal(self) -> np.ndarray:
        return np.array([r.nonlocal_.f_measure for r in self.rows])

    @property
    def mean_local(self) -> float:
        return float(np.mean(self.f_local))

    @property
    def mean_nonlocal(self) -> float:
        return float(np.mean(self.f_nonlocal))

    @property
    def mean_diff(self) -> float:
        return self.mean_nonlocal - self.mean_local

    @property
    def nonlocal_wins(self) -> int:
        """Sequences where nonlocal scores at least as well as local."""
        return int(np.sum(self.f_nonlocal >= self.f_local))

    def table(self) -> List[List[str]]:
        lines = [["sequence_id", "L", "NL", "Diff"]]
        for row in self.rows:
            lines.append([row.sequence_id, f"{row.local.f_measure:.4f}", f"{row.nonlocal_.f_measure:.4f}", f"{row.diff:+.4f}"])
        lines.append(["mean", f"{self.mean_local:.4f}", f"{self.mean_nonlocal:.4f}", f"{self.mean_diff:+.4f}"])
        return lines

    def to_text(self) -> str:
        return "".join("\t".join(line) + "\n" for line in self.table())

    def records(self) -> List[dict]:
        out = []
        for row in self.rows:
            out.append(row.local.as_record(row.sequence_id, "local"))
            out.append(row.nonlocal_.as_record(row.sequence_id, "nonlocal"))
        return out


def run_benchmark(specs: Sequence[SyntheticSpec], local: PipelineConfig = None, nonlocal_: PipelineConfig = None) -> BenchmarkReport:
    """Best F over cuts for every synthetic sequence under both modes.

    Report rows keep the input order of ``specs``.
    """
    if not specs:
        raise ValueError("benchmark needs at least one sequence spec")
    local = replace(local or PipelineConfig(), mode="local", n_segments="sweep")
    nonlocal_ = replace(nonlocal_ or PipelineConfig(), mode="nonlocal", n_segments="sweep")
    rows = []
    for i, spec in enumerate(specs):
        seq, truth = generate_piecewise(spec)
        reports = []
        for config in (local, nonlocal_):
            tree = run_pipeline(seq, config).tree
            reports.append(best_f_over_cuts(tree, truth, config.tolerance, config.max_segments))
        rows.append(BenchmarkRow(f"seq{i:03d}", *reports))
    return BenchmarkReport(rows)
