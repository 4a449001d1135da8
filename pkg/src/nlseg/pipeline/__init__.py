from nlseg.pipeline.core import PipelineConfig, PipelineResult, resume_from_stage, run_pipeline
from nlseg.pipeline.synth import SyntheticSpec, generate_piecewise, spawn_specs

__all__ = [
    "PipelineConfig",
    "PipelineResult",
    "run_pipeline",
    "resume_from_stage",
    "SyntheticSpec",
    "generate_piecewise",
    "spawn_specs",
]
