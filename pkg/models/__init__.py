from models.parameters import FodaQuanoParams, GParams, KernelKind, RegionVerdict
from models.reports import IdentityReport, RunSummary
from models.run_config import Command, IntRange, OutputFormat, RunConfig

__all__ = [
    "Command",
    "FodaQuanoParams",
    "GParams",
    "IdentityReport",
    "IntRange",
    "KernelKind",
    "OutputFormat",
    "RegionVerdict",
    "RunConfig",
    "RunSummary",
]
