"""Parameter models and shared constants for the cluster editing pipeline."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

DEFAULT_W_MAX = 1e15

# Length ranges used when scoring predictions against simulated events
LENGTH_RANGES: list[tuple[int, int]] = [
    (20, 49),
    (50, 99),
    (100, 249),
    (250, 999),
    (1000, 50000),
]


class InputValidationError(ValueError):
    """Raised when user supplied data violates an operation's preconditions."""


class CliqueLimitExceeded(RuntimeError):
    """Raised when the sweep holds more active cliques than allowed."""


class SignConvention(str, Enum):
    CORRECTED = "corrected"
    PUBLISHED = "paper"


class PointWeightKind(str, Enum):
    F_L = "f_l"
    UNIT = "unit"


class PValueMode(str, Enum):
    EXTERNAL = "external"
    PLACEHOLDER = "placeholder"


class AlignParams(BaseModel):
    """Insert-size model used to weight pairs of aligned reads."""

    model_config = ConfigDict(frozen=True)

    mu: float = Field(112.0, description="Mean insert size")
    sigma: float = Field(15.0, gt=0, description="Insert size standard deviation")
    threshold: float = Field(0.4, gt=0, le=1, description="Tail probability T")
    sign_convention: SignConvention = SignConvention.CORRECTED
    w_max: float = Field(DEFAULT_W_MAX, gt=0, description="Finite stand-in for +inf")


class PointGraphParams(BaseModel):
    """Synthetic 1D point graph: n uniform points on [0, 1] and distance l."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    l: float = Field(..., gt=0)
    seed: int = 0
    kind: PointWeightKind = PointWeightKind.F_L
    neighbour_floor: float = Field(
        0.0, le=0, description="Pairs weighing at least this much are neighbours"
    )
    w_max: float = Field(DEFAULT_W_MAX, gt=0)


class PipelineConfig(BaseModel):
    """Settings for the batch prediction pipeline and benchmark harness."""

    model_config = ConfigDict(frozen=True)

    align: AlignParams = AlignParams()
    fdr_rate: float = Field(0.1, gt=0, le=1)
    pvalue_mode: PValueMode = PValueMode.PLACEHOLDER
    start_vertex: int = Field(0, ge=0)
    lookahead: int = Field(1, ge=1)
    max_active_cliques: int = Field(10_000, ge=1)
    bench_runs: int = Field(100, ge=1)
    bench_workers: int = Field(1, ge=1)
