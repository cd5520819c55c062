from .config import RunConfig, ConfigError, load_config
from .commands import (
    cmd_overlaps,
    cmd_added_noise,
    cmd_curve,
    cmd_epr,
    cmd_benchmark,
    cmd_calibrate,
    COMMANDS,
)
from .main import main
