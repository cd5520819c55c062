from .state import (
    GaussianState,
    symplectic_form,
    symplectic_eigenvalues,
    squeezed_cov,
    vacuum,
    squeezed_state,
    two_mode_squeezed,
    tensor_product,
    reduce_state,
    displace,
    rotated_variances,
)
from .symplectic import SymplecticMap, identity_map, phase_rotation, apply_symplectic
from .channels import (
    LossBudget,
    LossEstimate,
    apply_loss,
    add_noise,
    infer_total_loss,
    memory_input_variances,
)
