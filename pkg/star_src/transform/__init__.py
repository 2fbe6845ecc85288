from star_src.transform.fourier import (partial_fourier, partial_fourier_inv,
                                        plancherel_constant)
from star_src.transform.grid import PhaseSpaceGrid, relative_error
from star_src.transform.intertwiner import T_hbar, dilate, pullback_phi, tau_hbar
from star_src.transform.transport import act_on_grid, symmetry_pullback
