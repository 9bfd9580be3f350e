"""Pipeline orchestration: stages, persistence and the heavy oracle.

Stage artifacts are written as deterministic JSON (sorted keys, no
timestamps); re-running any stage from the same inputs is byte-identical.
A crashed run restarts from the last persisted artifact simply by
re-invoking run_pipeline with the same configuration and output directory.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field

from .. import comodule
from ..ext.resolution import minimal_resolution
from . import homotopy as homotopy_mod
from . import stages as stages_mod
from .stages import StageError

ALL_STAGES = ("ext_a1", "ext_gamma", "algebraic", "adams_d2", "higher", "homotopy")


@dataclass(frozen=True)
class PipelineConfig:
    t_max: int = 180
    s_max: int = 48
    stages: tuple = ALL_STAGES
    enable_over_a_oracle: bool = False
    oracle_stem_max: int = 48
    oracle_s_max: int = 16
    # cross-check windows (stage budgets)
    a1_stem_check: int = 60
    a1_s_max: int = 32
    may_window: tuple = (12, 40)
    gamma_crosscheck_stem: int = 80
    gamma_crosscheck_s: int = 40
    output_dir: str | None = None

    def __post_init__(self):
        if self.t_max < 24:
            raise ValueError("t_max below 24 leaves no meaningful stage")

    @property
    def stem_report(self) -> int:
        # filtration headroom: towers at stem n live at t = n + s
        return min(144, self.t_max - 36)

    @property
    def ledger_s_max(self) -> int:
        return self.s_max + 12  # page-turn and scan margins

    def config_hash(self) -> str:
        doc = json.dumps(asdict(self), sort_keys=True)
        return hashlib.sha256(doc.encode()).hexdigest()[:16]


@dataclass
class PipelineResult:
    config: PipelineConfig
    stage1: object = None
    stage2: object = None
    stage3: object = None
    stage4: object = None
    stage5: object = None
    stage6: object = None
    oracle_cells_checked: int = 0
    artifacts: dict = field(default_factory=dict)


def _write(cfg: PipelineConfig, name: str, text: str, artifacts: dict) -> None:
    if cfg.output_dir is None:
        return
    os.makedirs(cfg.output_dir, exist_ok=True)
    path = os.path.join(cfg.output_dir, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    artifacts[name] = path


def over_a_oracle(adams_e2, stem_max: int, s_max: int) -> int:
    """Direct minimal resolution of the dualized H*tmf over truncated A*.

    Returns the number of bidegrees compared; any dimension mismatch with
    the pattern-assembled E2 is a hard error.
    """
    t_max = stem_max + s_max
    h = comodule.homology_of_tmf(t_max)
    mod = comodule.dualize(h)
    res = minimal_resolution(mod, s_max, t_max)
    dims = res.dims()
    assembled: dict = {}
    for c in adams_e2:
        if c.stem <= stem_max and c.s <= s_max:
            assembled[(c.s, c.t)] = assembled.get((c.s, c.t), 0) + 1
    checked = 0
    for s in range(s_max + 1):
        for t in range(t_max + 1):
            if t - s > stem_max:
                continue
            got = dims.get((s, t), 0)
            want = assembled.get((s, t), 0)
            if got != want:
                raise StageError(
                    f"over-A* oracle mismatch at (s,t)={(s, t)}: resolution {got}, "
                    f"assembled E2 {want}"
                )
            checked += 1
    return checked


def run_pipeline(cfg: PipelineConfig) -> PipelineResult:
    result = PipelineResult(cfg)
    arts = result.artifacts
    stem = cfg.stem_report

    if "ext_a1" in cfg.stages:
        result.stage1 = stages_mod.stage1_ext_a1(
            stem_max=min(cfg.a1_stem_check, cfg.t_max - cfg.a1_s_max),
            s_max=cfg.a1_s_max, may_window=cfg.may_window)
        _write(cfg, "ext_a1.json", result.stage1.chart.dump_json(
            products=[("v0", "alpha1"), ("alpha1", "alpha2"), ("v0", "v0")]), arts)

    if "ext_gamma" in cfg.stages:
        result.stage2 = stages_mod.stage2_ext_gamma(
            stem_max=min(80, cfg.t_max - cfg.s_max), s_max=cfg.s_max,
            crosscheck_stem=cfg.gamma_crosscheck_stem, crosscheck_s=cfg.gamma_crosscheck_s)
        if result.stage2.gamma_resolution is not None:
            from ..ext.chart import ext_chart

            gchart = ext_chart(result.stage2.gamma_resolution, "gamma", with_v2=True)
            _write(cfg, "ext_gamma.json", gchart.dump_json(), arts)

    if "algebraic" in cfg.stages:
        result.stage3 = stages_mod.stage3_algebraic_ss(
            stem_max=stem + 6, s_max=cfg.ledger_s_max)
        _write(cfg, "algebraic_audit.jsonl", result.stage3.ledger.audit_log_json(), arts)
        if cfg.enable_over_a_oracle:
            result.oracle_cells_checked = over_a_oracle(
                result.stage3.adams_e2, cfg.oracle_stem_max, cfg.oracle_s_max)

    if "adams_d2" in cfg.stages:
        if result.stage3 is None:
            raise StageError("adams_d2 requires the algebraic stage")
        result.stage4 = stages_mod.stage4_adams_d2(
            result.stage3, stem_max=stem, s_max=cfg.ledger_s_max,
            check_stems=min(80, stem), m_check_stems=stem,
            s_check=min(40, cfg.s_max))

    if "higher" in cfg.stages:
        if result.stage4 is None:
            raise StageError("higher requires the adams_d2 stage")
        result.stage5 = stages_mod.stage5_higher_differentials(
            result.stage4, stem_max=stem, s_max=cfg.ledger_s_max)
        _write(cfg, "adams_audit.jsonl", result.stage5.ledger.audit_log_json(), arts)

    if "homotopy" in cfg.stages:
        if result.stage5 is None:
            raise StageError("homotopy requires the higher stage")
        result.stage6 = homotopy_mod.stage6_homotopy(
            result.stage5, stem_max=stem, rational_stems=min(80, stem))
        _write(cfg, "homotopy.json", result.stage6.table.to_json(), arts)
        _write(cfg, "homotopy.txt", result.stage6.table.to_text() + "\n", arts)
    return result
