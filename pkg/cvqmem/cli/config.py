from __future__ import annotations
import configparser
import dataclasses
import logging
from typing import Any, Dict, Optional, Tuple

from ..memory import MemoryParams, DEFAULT_PRESET, DEFAULT_SQUEEZING, get_preset
from ..fidelity import EXPERIMENT_PHASES

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


_MEMORY_FLOATS = ("Z2", "kappa", "g", "var_xA_init", "var_pA_init", "var_Sx", "var_Sp")
_LOSS_FLOATS = ("eta_loss", "eta_ent", "eta_det")

_KEYS = {
    "memory": {"preset", "calibration_mean", *_MEMORY_FLOATS, *_LOSS_FLOATS},
    "alphabet": {"d_max", "s", "phases"},
    "benchmark": {
        "phases", "seesaw", "gain_mode", "restarts", "maxfev",
        "nodes", "n_phases", "cutoff", "max_iter",
    },
    "output": {"dir", "format", "seed", "tolerance"},
}

FORMATS = ("csv", "json")
GAIN_MODES = ("attenuate", "fixed")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    Everything a command needs. ``memory_overrides`` replaces single fields of
    the preset; loss transmissions are given by their LossBudget names.
    ``phases = None`` stands for a continuous phase set; the benchmark
    commands use ``benchmark_phases``, continuous unless set. ``format = None``
    lets every command write its own default format.
    """

    preset: str = DEFAULT_PRESET
    memory_overrides: Tuple[Tuple[str, float], ...] = ()
    calibration_mean: float = 5.0
    d_max: Tuple[float, ...] = (0.0, 3.8, 7.6)
    s: float = DEFAULT_SQUEEZING
    phases: Optional[Tuple[float, ...]] = EXPERIMENT_PHASES
    benchmark_phases: Optional[Tuple[float, ...]] = None
    seesaw: bool = False
    gain_mode: str = "attenuate"
    restarts: int = 5
    maxfev: int = 2000
    nodes: int = 32
    n_phases: int = 64
    cutoff: Optional[int] = None
    max_iter: int = 200
    out_dir: str = "results"
    format: Optional[str] = None
    seed: int = 0
    tolerance: float = 0.015

    def __post_init__(self):
        if len(self.d_max) == 0:
            raise ConfigError("'d_max' should not be empty")
        if any(d < 0 for d in self.d_max):
            raise ConfigError(f"'d_max' should be non-negative, got {self.d_max}")
        if list(self.d_max) != sorted(self.d_max):
            raise ConfigError(f"'d_max' should be sorted, got {self.d_max}")
        if not self.s > 0:
            raise ConfigError(f"'s' should be positive, got {self.s}")
        if self.format is not None and self.format not in FORMATS:
            raise ConfigError(f"'format' should be one of {FORMATS}, got '{self.format}'")
        if self.gain_mode not in GAIN_MODES:
            raise ConfigError(
                f"'gain_mode' should be one of {GAIN_MODES}, got '{self.gain_mode}'"
            )
        if self.seesaw and self.gain_mode != "attenuate":
            raise ConfigError("the seesaw estimate supports gain_mode = attenuate only")
        if self.seed < 0:
            raise ConfigError(f"'seed' should be non-negative, got {self.seed}")
        try:
            self.memory_params()
        except ValueError as e:
            raise ConfigError(str(e)) from e

    @property
    def attenuate_input(self) -> bool:
        return self.gain_mode == "attenuate"

    def memory_params(self) -> MemoryParams:
        params = get_preset(self.preset)
        overrides = dict(self.memory_overrides)
        losses = {k: overrides.pop(k) for k in _LOSS_FLOATS if k in overrides}
        if losses:
            params = params.replace(losses=dataclasses.replace(params.losses, **losses))
        return params.replace(**overrides) if overrides else params

    def replace(self, **kwargs) -> RunConfig:
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return dataclasses.replace(self, **kwargs)


def _floats(text: str) -> Tuple[float, ...]:
    return tuple(float(x) for x in text.replace(",", " ").split())


def _parse(parser: configparser.ConfigParser) -> Dict[str, Any]:
    for section in parser.sections():
        if section not in _KEYS:
            raise ConfigError(f"Unknown section [{section}]")
        unknown = set(parser[section]) - _KEYS[section]
        if unknown:
            raise ConfigError(f"Unknown keys in [{section}]: {', '.join(sorted(unknown))}")

    kwargs: Dict[str, Any] = {}
    get = lambda sec, key: parser.get(sec, key, fallback=None)
    try:
        if parser.has_section("memory"):
            mem = parser["memory"]
            if "preset" in mem:
                kwargs["preset"] = mem["preset"].strip()
            if "calibration_mean" in mem:
                kwargs["calibration_mean"] = mem.getfloat("calibration_mean")
            overrides = [
                (k, mem.getfloat(k)) for k in (*_MEMORY_FLOATS, *_LOSS_FLOATS) if k in mem
            ]
            kwargs["memory_overrides"] = tuple(overrides)

        if get("alphabet", "d_max") is not None:
            kwargs["d_max"] = _floats(get("alphabet", "d_max"))
        if get("alphabet", "s") is not None:
            kwargs["s"] = parser.getfloat("alphabet", "s")
        phases = get("alphabet", "phases")
        if phases is not None:
            phases = phases.strip()
            kwargs["phases"] = None if phases == "continuous" else _floats(phases)
        phases = get("benchmark", "phases")
        if phases is not None:
            phases = phases.strip()
            kwargs["benchmark_phases"] = None if phases == "continuous" else _floats(phases)

        if parser.has_section("benchmark"):
            bench = parser["benchmark"]
            if "seesaw" in bench:
                kwargs["seesaw"] = bench.getboolean("seesaw")
            if "gain_mode" in bench:
                kwargs["gain_mode"] = bench["gain_mode"].strip()
            for key in ("restarts", "maxfev", "nodes", "n_phases", "cutoff", "max_iter"):
                if key in bench:
                    kwargs[key] = bench.getint(key)

        if parser.has_section("output"):
            out = parser["output"]
            if "dir" in out:
                kwargs["out_dir"] = out["dir"].strip()
            if "format" in out:
                kwargs["format"] = out["format"].strip()
            if "seed" in out:
                kwargs["seed"] = out.getint("seed")
            if "tolerance" in out:
                kwargs["tolerance"] = out.getfloat("tolerance")
    except ValueError as e:
        raise ConfigError(f"Malformed value: {e}") from e
    return kwargs


def load_config(
    path: Optional[str] = None,
    out_dir: Optional[str] = None,
    format: Optional[str] = None,
    seed: Optional[int] = None,
) -> RunConfig:
    """
    Reads an INI file with sections [memory], [alphabet], [benchmark] and
    [output]. Unknown sections or keys are errors. The keyword arguments
    override the file.

    Raises:
        ConfigError: invalid content.
        OSError: the file cannot be read.
    """
    kwargs: Dict[str, Any] = {}
    if path is not None:
        parser = configparser.ConfigParser()
        parser.optionxform = str
        with open(path) as f:
            try:
                parser.read_file(f)
            except configparser.Error as e:
                raise ConfigError(f"Cannot parse {path}: {e}") from e
        kwargs = _parse(parser)
        logger.info("loaded config %s", path)
    config = RunConfig(**kwargs)
    return config.replace(out_dir=out_dir, format=format, seed=seed)
