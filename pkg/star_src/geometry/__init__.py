from star_src.geometry.barycenter import (barycenter, barycenter_function,
                                         kernel_identity_residual)
from star_src.geometry.hamiltonian import (chart_poisson, hamiltonian,
                                          hamiltonian_gradient)
from star_src.geometry.phase import (admissibility_residuals, chart_form,
                                     flat_phase_S0, phase_S, standard_form,
                                     two_point_u, weyl_triple_residuals)
from star_src.geometry.points import GroupElement, Point
from star_src.geometry.symmetric import (group_act, group_inv, group_mul,
                                         midpoint, origin, project_pi,
                                         section_gamma, symmetry,
                                         transvection_shift)
