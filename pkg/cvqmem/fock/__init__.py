from .fock import (
    FockArray,
    default_cutoff,
    tms_fock,
    displaced_squeezed_fock,
    coherent_fock,
    photon_statistics,
)
from .channels import loss_kraus, attenuate_pure_states, apply_loss_fock
from .wigner import (
    WignerGrid,
    wigner_overlap,
    wigner_normalization_error,
    thermal_photon_number,
)
