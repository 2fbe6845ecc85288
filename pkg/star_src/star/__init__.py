from star_src.star.deformed import star_hbar, star_hbar_kernel
from star_src.star.hilbert import (inner_product_E, inner_product_L2,
                                   operator_norm_estimate, trace)
from star_src.star.moyal import moyal_series, poisson_bracket
from star_src.star.weyl import weyl_product_fft, weyl_product_quad
