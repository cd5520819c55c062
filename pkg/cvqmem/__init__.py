from .global_defs import (
    set_random_seed,
    set_default_dtype,
    get_default_dtype,
    get_complex_dtype,
    get_seed,
    get_subkeys,
)

from . import (
    utils,
    gaussian,
    memory,
    fock,
    fidelity,
    epr,
    benchmark,
    cli,
)
