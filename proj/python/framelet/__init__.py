"""Frame analysis for families of translates.

Thin wrapper over the compiled `_framelet` module: run JSON configs, read
frame bounds, and evaluate piecewise-linear spectra.
"""

from ._framelet import (
    __version__,
    bounds_from_config_text,
    eval_spectrum,
    norm_squared,
    run_config_file,
    run_config_text,
)

__all__ = [
    "__version__",
    "bounds_from_config_text",
    "eval_spectrum",
    "norm_squared",
    "run_config_file",
    "run_config_text",
]
