from .core import *
from .Pipeline import JobConfig, PipelineOutput, emit_samples, run_pipeline, write_outputs
