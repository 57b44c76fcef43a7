"""
Configuration system for gwvirasoro.
"""

from dataclasses import dataclass, field

from ..models.constants import (
    BUILTIN_NAMES,
    BUILTIN_PREFIX,
    DEFAULT_D_MAX,
    DEFAULT_T_MAX,
    MAX_D_MAX,
    MAX_T_MAX,
    MIN_T_MAX,
    REPORT_FORMATS,
)
from ..models.series import Window

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class TruncationConfig:
    """Truncation depth of every computed series."""

    t_max: int = DEFAULT_T_MAX
    d_max: int = DEFAULT_D_MAX

    def __post_init__(self) -> None:
        """Parameter validation after initialization."""
        if not MIN_T_MAX <= self.t_max <= MAX_T_MAX:
            raise ValueError(f"t-degree bound must be between {MIN_T_MAX} and {MAX_T_MAX}")

        if not 0 <= self.d_max <= MAX_D_MAX:
            raise ValueError(f"Novikov degree bound must be between 0 and {MAX_D_MAX}")

    @property
    def table_degree(self) -> int:
        """Highest curve degree a built-in table needs inside the t-degree bound."""
        # a degree-d point invariant needs 3d - 1 insertions
        return min(self.d_max, (self.t_max + 1) // 3)

    def window(self, curve_rank: int) -> Window:
        """
        Window for a potential over a curve lattice of the given rank.

        Without curve classes the potentials are polynomials, so the window is unbounded.
        """
        if curve_rank == 0:
            return Window()
        return Window(self.t_max, (self.d_max,) * curve_rank)


@dataclass
class RunConfig:
    """Settings for one CLI invocation."""

    model: str = f"{BUILTIN_PREFIX}p2"
    tables: list[str] = field(default_factory=list)
    truncation: TruncationConfig = field(default_factory=TruncationConfig)

    checks: list[str] = field(default_factory=list)
    output_format: str = "json"
    output_path: str | None = None

    log_level: str = "WARNING"
    log_file: str | None = None
    timings: bool = False

    def __post_init__(self) -> None:
        """Validation and normalization after initialization."""
        self.log_level = self.log_level.upper()
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"Log level must be one of {', '.join(LOG_LEVELS)}")

        if self.output_format not in REPORT_FORMATS:
            raise ValueError(f"Output format must be one of {', '.join(REPORT_FORMATS)}")

        if self.model.startswith(BUILTIN_PREFIX):
            name = self.model[len(BUILTIN_PREFIX) :]
            if name not in BUILTIN_NAMES:
                raise ValueError(f"Unknown built-in model {name!r}; choose from {', '.join(BUILTIN_NAMES)}")

        self.checks = list(dict.fromkeys(c.strip() for c in self.checks if c.strip()))

    @property
    def builtin_name(self) -> str | None:
        if self.model.startswith(BUILTIN_PREFIX):
            return self.model[len(BUILTIN_PREFIX) :]
        return None

    def to_dict(self) -> dict:
        """Converts configuration to dictionary."""
        return {
            "model": self.model,
            "tables": self.tables,
            "truncation": {"t_max": self.truncation.t_max, "d_max": self.truncation.d_max},
            "checks": self.checks,
            "output_format": self.output_format,
            "output_path": self.output_path,
            "log_level": self.log_level,
            "log_file": self.log_file,
            "timings": self.timings,
        }
