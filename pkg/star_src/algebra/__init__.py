from star_src.algebra.eset import (AlgebraVector, ESETStructure, cosh_matrix,
                                   load_structure, omega_pair, pairing_matrix,
                                   require_valid, rho_apply, rho_matrix,
                                   save_structure, sinh_matrix, validate)
from star_src.algebra.twist import (cosh_ll, sinh_identity_residual,
                                    structure_diagnostics, twist,
                                    twist_derivative, twist_inverse,
                                    twist_jacobian_det, z_map)
