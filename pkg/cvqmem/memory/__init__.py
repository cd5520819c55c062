from .params import MemoryParams, PRESETS, DEFAULT_PRESET, DEFAULT_SQUEEZING, get_preset
from .interaction import (
    interaction_map,
    feedback_map,
    storage_map,
    optimal_gain,
    store_ideal,
)
from .basis import ModeBasis, basis_map, basis_transform
from .noise import (
    to_light_frame,
    to_atomic_frame,
    added_noise_variances,
    store_noisy,
    storage_in_local_picture,
    AddedNoise,
    infer_added_noise,
    ExcessNoise,
    excess_noise,
)
from .calibration import (
    simulate_kappa_readout,
    calibrate_kappa,
    simulate_gain_readout,
    calibrate_feedback_gain,
)
