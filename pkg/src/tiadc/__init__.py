"""Behavioral simulator for timing-skew conditioning in time-interleaved ADCs."""

from ._core import BACKEND
from .analysis import SpectrumReport, measure_sfdr, predicted_residual_tone, predicted_sfdr, psd
from .config import RunConfig, load_config
from .ddsm import DdsmSpec, DdsmState, check_no_overload, ddsm_step, generate_shaping_sequence
from .dither import DitherSource
from .engine import (
    InterleavedCapture,
    NoConditioning,
    ScrambleConditioning,
    ShapeConditioning,
    SimulationSpec,
    error_sequence,
    simulate,
    taylor_sample,
)
from .errors import (
    AnalysisError,
    ConfigError,
    InfeasibleConditioningError,
    InfeasibleProbabilitiesError,
    InvalidEdgeError,
    NyquistError,
    OverloadError,
    TiadcError,
    UnsupportedOrderError,
)
from .scenarios import SCENARIOS, run_scenario
from .scramble import (
    ScrambleProbabilities,
    draw_edge,
    feasible_g_range,
    generate_scramble_sequence,
    solve_probabilities,
)
from .signal import TestSignal, Tone, eval_derivative, eval_signal
from .subadc import SubAdcSpec, quantize_stream
from .timing import ChannelTiming, InterleaveClock, actual_instant, ideal_instant

__version__ = "0.1.0"
