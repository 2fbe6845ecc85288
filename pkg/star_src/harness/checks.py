"""
Registry of verification checks.

Every check receives a CheckContext and returns (residual, details); the
suite compares the residual with the check's tolerance (config override or the
default registered here). Groups drive the dependency gating:
structure -> geometry/transform -> product.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np

from star_src.algebra.eset import ESETStructure, pairing_matrix, rho_matrix, validate
from star_src.algebra.matfuncs import sinh_cosh
from star_src.algebra.twist import (sinh_identity_residual, structure_diagnostics, twist,
                                    twist_inverse, twist_jacobian_det)
from star_src.constants import BOUNDARY_TOLERANCE, TWIST_BOX
from star_src.entity.config_entity import GridSpec, SuiteConfig
from star_src.geometry.barycenter import barycenter, kernel_identity_residual
from star_src.geometry.hamiltonian import chart_poisson, hamiltonian, hamiltonian_gradient
from star_src.geometry.phase import (admissibility_residuals, chart_form, flat_phase_S0,
                                     phase_S, weyl_triple_residuals)
from star_src.geometry.points import GroupElement, Point
from star_src.geometry.symmetric import (group_act, group_inv, group_mul, midpoint, origin,
                                         project_pi, section_gamma, symmetry)
from star_src.exception import BoundaryError
from star_src.harness import fixtures
from star_src.star.deformed import star_hbar, star_hbar_kernel
from star_src.star.hilbert import (inner_product_E, inner_product_L2,
                                   operator_norm_estimate, trace)
from star_src.star.moyal import moyal_series, poisson_bracket
from star_src.star.weyl import weyl_product_fft, weyl_product_quad
from star_src.transform.fourier import partial_fourier, partial_fourier_inv, plancherel_constant
from star_src.transform.grid import PhaseSpaceGrid, relative_error
from star_src.transform.intertwiner import T_hbar, dilate, pullback_phi, tau_hbar
from star_src.transform.transport import act_on_grid, symmetry_pullback

Outcome = Tuple[float, str]


@dataclass
class CheckContext:
    e: ESETStructure
    config: SuiteConfig
    rng: np.random.Generator
    cache: Dict[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class CheckSpec:
    name: str
    group: str
    tolerance: float
    func: Callable[[CheckContext], Outcome]


GROUPS = ("structure", "geometry", "transform", "product")
REGISTRY: Dict[str, CheckSpec] = {}


def register(name: str, group: str, tolerance: float):
    def wrap(func: Callable[[CheckContext], Outcome]) -> Callable[[CheckContext], Outcome]:
        REGISTRY[name] = CheckSpec(name, group, tolerance, func)
        return func
    return wrap


def available_checks() -> List[str]:
    return list(REGISTRY)


# -- sampling helpers -------------------------------------------------------

def _points(ctx: CheckContext, count: int, scale: float = 1.0) -> Point:
    box = ctx.config.box
    a = ctx.rng.uniform(-box.a_box, box.a_box, size=(count, ctx.e.n_a)) * scale
    l = ctx.rng.uniform(-box.l_box, box.l_box, size=(count, ctx.e.n_l)) * scale
    return Point(a, l)


def _group_elements(ctx: CheckContext, count: int) -> GroupElement:
    box = ctx.config.box
    e = ctx.e
    return GroupElement(ctx.rng.uniform(-box.a_box, box.a_box, size=(count, e.n_a)),
                        ctx.rng.uniform(-box.l_box, box.l_box, size=(count, e.n_k)),
                        ctx.rng.uniform(-box.l_box, box.l_box, size=(count, e.n_l)))


def _scaled(diff: np.ndarray, reference: np.ndarray) -> float:
    """max |diff| / (1 + |reference|), reduced over the trailing coordinate axis."""
    diff = np.atleast_2d(diff)
    reference = np.atleast_2d(reference)
    return float(np.max(np.max(np.abs(diff), axis=-1) / (1.0 + np.max(np.abs(reference), axis=-1))))


def _point_residual(x: Point, y: Point) -> float:
    return _scaled(x.as_array() - y.as_array(), y.as_array())


def _fd_gradient(f: Callable[[np.ndarray], float], x0: np.ndarray, h: float) -> np.ndarray:
    grad = np.empty_like(x0)
    for i in range(x0.size):
        step = np.zeros_like(x0)
        step[i] = h
        grad[i] = (f(x0 + step) - f(x0 - step)) / (2.0 * h)
    return grad


def _fd_jacobian(f: Callable[[np.ndarray], np.ndarray], x0: np.ndarray, h: float) -> np.ndarray:
    columns = []
    for i in range(x0.size):
        step = np.zeros_like(x0)
        step[i] = h
        columns.append((f(x0 + step) - f(x0 - step)) / (2.0 * h))
    return np.stack(columns, axis=-1)


def _fd_hessian(f: Callable[[np.ndarray], float], x0: np.ndarray, h: float) -> np.ndarray:
    return _fd_jacobian(lambda x: _fd_gradient(f, x, h), x0, h)


def _slope(hbars, values) -> float:
    return float(np.polyfit(np.log(hbars), np.log(values), 1)[0])


def _transform_grid(ctx: CheckContext, func, hbar: float) -> PhaseSpaceGrid:
    """Sample on the suite grid and pad the l-axes for transform work."""
    grid = fixtures.sample(func, ctx.e.n_a, ctx.config.grid, hbar)
    return grid.pad_l(ctx.config.oversample)


def _n_vector(n: int, value: float) -> Tuple[float, ...]:
    return (value,) * n


# -- structure --------------------------------------------------------------

@register("validate", "structure", 0.0)
def check_validate(ctx: CheckContext) -> Outcome:
    violations = validate(ctx.e)
    if violations:
        return float(len(violations)), "; ".join(violations)
    diagnostics = structure_diagnostics(ctx.e, box=TWIST_BOX)
    details = (f"orientation {diagnostics['orientation']:+d}, "
               f"min twist Jacobian {diagnostics['min_jacobian']:.4g} on [-{TWIST_BOX:g}, {TWIST_BOX:g}], "
               f"hyperbolic {diagnostics['hyperbolic']}")
    return 0.0, details


# -- geometry ---------------------------------------------------------------

@register("symmetric_space_axioms", "geometry", 1e-10)
def check_symmetric_space_axioms(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = ctx.config.samples
    x, y, z = _points(ctx, n), _points(ctx, n), _points(ctx, n)
    involutive = _point_residual(symmetry(e, x, symmetry(e, x, y)), y)
    fixed = _point_residual(symmetry(e, x, x), x)
    lhs = symmetry(e, x, symmetry(e, y, symmetry(e, x, z)))
    rhs = symmetry(e, symmetry(e, x, y), z)
    conjugation = _point_residual(lhs, rhs)
    details = f"involution {involutive:.2e}, fixed point {fixed:.2e}, s_x s_y s_x {conjugation:.2e}"
    return max(involutive, fixed, conjugation), details


@register("symmetry_liouville", "geometry", 1e-6)
def check_symmetry_liouville(ctx: CheckContext) -> Outcome:
    e = ctx.e
    x, y = _points(ctx, 50), _points(ctx, 50)
    worst = 0.0
    for i in range(50):
        base = Point(x.a[i], x.l[i])
        s = lambda v: symmetry(e, base, Point.from_array(v, e.n_a)).as_array()
        jac = _fd_jacobian(s, y.as_array()[i], 1e-5)
        worst = max(worst, abs(abs(np.linalg.det(jac)) - 1.0))
    return worst, "finite-difference Jacobian determinant of y -> s_x(y)"


@register("midpoint_consistency", "geometry", 1e-10)
def check_midpoint_consistency(ctx: CheckContext) -> Outcome:
    e = ctx.e
    x = _points(ctx, ctx.config.samples)
    return _point_residual(symmetry(e, midpoint(e, x), origin(e)), x), "s_{midpoint(x)}(o) = x"


@register("group_axioms", "geometry", 1e-10)
def check_group_axioms(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = ctx.config.samples
    g, h, k = _group_elements(ctx, n), _group_elements(ctx, n), _group_elements(ctx, n)
    left = group_mul(e, group_mul(e, g, h), k).as_array()
    right = group_mul(e, g, group_mul(e, h, k)).as_array()
    associativity = _scaled(left - right, right)
    inverse = _scaled(group_mul(e, g, group_inv(e, g)).as_array(), np.zeros((n, 1)))
    x = _points(ctx, n)
    action = _point_residual(group_act(e, group_mul(e, g, h), x), group_act(e, g, group_act(e, h, x)))
    section = _point_residual(project_pi(e, section_gamma(e, x)), x)
    details = (f"associativity {associativity:.2e}, inverse {inverse:.2e}, "
               f"action {action:.2e}, pi o gamma {section:.2e}")
    return max(associativity, inverse, action, section), details


@register("twist_roundtrip", "geometry", 1e-9)
def check_twist_roundtrip(ctx: CheckContext) -> Outcome:
    a = ctx.rng.uniform(-TWIST_BOX, TWIST_BOX, size=(100, ctx.e.n_a))
    back = twist_inverse(ctx.e, twist(ctx.e, a))
    return _scaled(back - a, a), "twist_inverse(twist(a)) = a on 100 samples"


@register("sinh_identity", "geometry", 1e-8)
def check_sinh_identity(ctx: CheckContext) -> Outcome:
    a = ctx.rng.uniform(-TWIST_BOX, TWIST_BOX, size=(100, ctx.e.n_a))
    return sinh_identity_residual(ctx.e, a), "xi(sinh(phi^{-1}(a)) f_j) = xi(rho(a) f_j)"


@register("twist_jacobian", "geometry", 1e-6)
def check_twist_jacobian(ctx: CheckContext) -> Outcome:
    e = ctx.e
    a = ctx.rng.uniform(-TWIST_BOX, TWIST_BOX, size=(20, e.n_a))
    worst = 0.0
    for sample in a:
        jac = _fd_jacobian(lambda v: twist(e, v), sample, 1e-5)
        expected = twist_jacobian_det(e, sample)
        worst = max(worst, abs(abs(np.linalg.det(jac)) - abs(expected)) / abs(expected))
    return worst, "central differences, step 1e-5"


@register("twist_properties", "geometry", 1e-9)
def check_twist_properties(ctx: CheckContext) -> Outcome:
    e = ctx.e
    a = ctx.rng.uniform(-TWIST_BOX, TWIST_BOX, size=(100, e.n_a))
    oddness = _scaled(twist(e, -a) + twist(e, a), twist(e, a))
    evenness = float(np.max(np.abs(twist_jacobian_det(e, -a) - twist_jacobian_det(e, a))
                            / np.abs(twist_jacobian_det(e, a))))
    eps = 1e-6
    limit = float(np.max(np.linalg.norm(twist(e, eps * a) / eps - a, axis=-1) / np.linalg.norm(a, axis=-1)))
    sinh, cosh = sinh_cosh(rho_matrix(e, a))
    commute = float(np.max(np.abs(sinh @ cosh - cosh @ sinh)))
    identity = np.eye(e.n_b)
    hyperbolic = float(np.max(np.abs(sinh @ sinh - (cosh @ cosh - identity))) / (1.0 + np.max(np.abs(cosh @ cosh))))
    details = (f"odd {oddness:.2e}, even Jacobian {evenness:.2e}, flat limit {limit:.2e}, "
               f"sinh/cosh commute {commute:.2e}, sinh^2 - cosh^2 + 1 {hyperbolic:.2e}")
    return max(oddness, evenness, limit, commute, hyperbolic), details


@register("phase_admissibility", "geometry", 1e-10)
def check_phase_admissibility(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = ctx.config.samples
    curved = admissibility_residuals(e, _points(ctx, n), _points(ctx, n), _points(ctx, n), _points(ctx, n))
    dim = e.n_a + e.n_l
    box = ctx.config.box.l_box
    flat_points = [ctx.rng.uniform(-box, box, size=(n, dim)) for _ in range(4)]
    flat = weyl_triple_residuals(*flat_points, J=chart_form(e))
    worst = max(max(curved.values()), max(flat.values()))
    details = ", ".join(f"{k} {v:.2e}" for k, v in curved.items())
    details += "; flat " + ", ".join(f"{k} {v:.2e}" for k, v in flat.items())
    return worst, details


@register("phase_invariance", "geometry", 1e-9)
def check_phase_invariance(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = ctx.config.samples
    x1, x2, x3 = _points(ctx, n), _points(ctx, n), _points(ctx, n)
    g = _group_elements(ctx, n)
    s = phase_S(e, x1, x2, x3)
    moved = phase_S(e, group_act(e, g, x1), group_act(e, g, x2), group_act(e, g, x3))
    phase = float(np.max(np.abs(moved - s) / (1.0 + np.abs(s))))
    y1, y2 = group_act(e, g, x1), group_act(e, g, x2)
    amp = twist_jacobian_det(e, x2.a - x1.a)
    amplitude = float(np.max(np.abs(twist_jacobian_det(e, y2.a - y1.a) - amp) / amp))
    return max(phase, amplitude), f"phase {phase:.2e}, amplitude {amplitude:.2e}"


def _sigma(e: ESETStructure, x: Point):
    n = e.n_a + e.n_l

    def f(X: np.ndarray) -> float:
        return 2.0 * phase_S(e, x, Point.from_array(X[:n], e.n_a), Point.from_array(X[n:], e.n_a))
    return f


@register("phase_critical_point", "geometry", 1e-8)
def check_phase_critical_point(ctx: CheckContext) -> Outcome:
    e = ctx.e
    x = _points(ctx, 10, scale=0.5)
    worst = 0.0
    for i in range(10):
        base = Point(x.a[i], x.l[i])
        X0 = np.concatenate([base.as_array(), base.as_array()])
        worst = max(worst, float(np.max(np.abs(_fd_gradient(_sigma(e, base), X0, 1e-5)))))
    return worst, "gradient of 2 S(x, X1, X2) at X1 = X2 = x"


@register("phase_hessian_blocks", "geometry", 1e-6)
def check_phase_hessian_blocks(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = e.n_a + e.n_l
    x = _points(ctx, 10, scale=0.5)
    worst = 0.0
    for i in range(10):
        base = Point(x.a[i], x.l[i])
        X0 = np.concatenate([base.as_array(), base.as_array()])
        hess = _fd_hessian(_sigma(e, base), X0, 1e-3)
        off = hess[:n, n:]
        if np.linalg.cond(off) > 1e12:
            return float("inf"), "off-diagonal Hessian block is singular"
        diagonal = max(np.max(np.abs(hess[:n, :n])), np.max(np.abs(hess[n:, n:])))
        worst = max(worst, float(diagonal / np.max(np.abs(off))))
    return worst, "max |diagonal block| / max |off-diagonal block|"


@register("flat_barycenter", "geometry", 1e-10)
def check_flat_barycenter(ctx: CheckContext) -> Outcome:
    e = ctx.e
    J = chart_form(e)
    S = lambda x, y, z: flat_phase_S0(x, y, z, J)
    dim = e.n_a + e.n_l
    box = ctx.config.box.a_box
    worst = 0.0
    for _ in range(ctx.config.quadruples):
        a, b, c, d = (ctx.rng.uniform(-box, box, size=dim) for _ in range(4))
        g = barycenter(S, a, b, c, d)
        t = ctx.rng.uniform(-box, box, size=(100, dim))
        worst = max(worst, kernel_identity_residual(S, a, b, c, d, g, t))
    return worst, f"kernel identity at the S-barycenter, {ctx.config.quadruples} quadruples"


@register("hamiltonian_poisson", "geometry", 1e-6)
def check_hamiltonian_poisson(ctx: CheckContext) -> Outcome:
    e = ctx.e
    dim = e.n_a + e.n_l

    def p_vector() -> np.ndarray:
        X = ctx.rng.uniform(-1.0, 1.0, size=e.dim("G"))
        X[e.n_a:e.n_a + e.n_k] = 0.0
        return X

    X, Y = p_vector(), p_vector()
    origin_value = abs(hamiltonian(e, X, origin(e)))
    x = _points(ctx, 20, scale=0.5)
    worst = 0.0
    for i in range(20):
        base = Point(x.a[i], x.l[i])
        closed = chart_poisson(e, hamiltonian_gradient(e, X, base), hamiltonian_gradient(e, Y, base))
        grads = []
        for Z in (X, Y):
            grad = _fd_gradient(lambda v: hamiltonian(e, Z, Point.from_array(v, e.n_a)), base.as_array(), 1e-6)
            grads.append((grad[:e.n_a], grad[e.n_a:dim]))
        numeric = chart_poisson(e, grads[0], grads[1])
        worst = max(worst, abs(closed - numeric) / (1.0 + abs(closed)))
    return max(worst, origin_value), f"bracket {worst:.2e}, lambda_X(o) {origin_value:.2e}"


# -- transform --------------------------------------------------------------

@register("fourier_roundtrip", "transform", 1e-12)
def check_fourier_roundtrip(ctx: CheckContext) -> Outcome:
    n = ctx.e.n_a
    spec = ctx.config.grid
    grid = PhaseSpaceGrid.uniform(n, n, spec.points_per_axis, spec.extent, ctx.config.transform_hbar,
                                  a_extent=spec.a_extent)
    noise = ctx.rng.standard_normal(grid.counts) + 1j * ctx.rng.standard_normal(grid.counts)
    u = grid.with_data(noise)
    roundtrip = relative_error(partial_fourier_inv(partial_fourier(u)), u)
    plancherel = abs(partial_fourier(u).norm() / u.norm() - plancherel_constant(n)) / plancherel_constant(n)
    return max(roundtrip, plancherel), f"round trip {roundtrip:.2e}, Plancherel {plancherel:.2e}"


@register("fourier_gaussian_pair", "transform", 1e-8)
def check_fourier_gaussian_pair(ctx: CheckContext) -> Outcome:
    n = ctx.e.n_a
    spec = ctx.config.grid
    width = 1.0
    g = fixtures.sample(fixtures.gaussian(_n_vector(n, 0.0), _n_vector(n, 0.0), 1.0, width), n, spec,
                        ctx.config.transform_hbar)
    a, kappa = partial_fourier(g).coordinates()
    exact = ((width * np.sqrt(2.0 * np.pi)) ** n * np.exp(-0.5 * np.sum(a ** 2, axis=-1))
             * np.exp(-0.5 * width ** 2 * np.sum(kappa ** 2, axis=-1)))
    pair = float(np.linalg.norm(partial_fourier(g).data - exact) / np.linalg.norm(exact))
    return pair, "F of a centred Gaussian against its analytic transform"


@register("intertwiner_roundtrip", "transform", 1e-6)
def check_intertwiner_roundtrip(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = e.n_a
    hbar = ctx.config.transform_hbar
    interp = ctx.config.interpolation
    u = _transform_grid(ctx, fixtures.gaussian(_n_vector(n, 0.2), _n_vector(n, 0.3), 0.5, 1.5), hbar)
    tau_T = relative_error(tau_hbar(e, T_hbar(e, u, hbar, interpolation=interp), hbar, interpolation=interp), u)
    T_tau = relative_error(T_hbar(e, tau_hbar(e, u, hbar, interpolation=interp), hbar, interpolation=interp), u)
    spectrum = partial_fourier(u)
    there = pullback_phi(e, spectrum, hbar, interpolation=interp)
    back = pullback_phi(e, there, hbar, inverse=True, interpolation=interp)
    pullback = relative_error(back, spectrum)
    details = f"tau o T {tau_T:.2e}, T o tau {T_tau:.2e}, pullback {pullback:.2e}"
    return max(tau_T, T_tau, pullback), details


@register("dilation_identity", "transform", 1e-5)
def check_dilation_identity(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = e.n_a
    hbar = ctx.config.dilation_hbar
    interp = ctx.config.interpolation
    u = _transform_grid(ctx, fixtures.gaussian(_n_vector(n, 0.1), _n_vector(n, -0.2), 0.5, 1.0), hbar)
    direct = T_hbar(e, u, hbar, interpolation=interp)
    scaled = dilate(T_hbar(e, dilate(u, hbar / 2.0, interp), 2.0, interpolation=interp), 2.0 / hbar, interp)
    identity = relative_error(scaled, direct)

    lam = 2.0
    inverse = relative_error(dilate(dilate(u, 1.0 / lam, interp), lam, interp), u)
    lhs = partial_fourier(dilate(u, lam, interp))
    rhs = dilate(partial_fourier(u), 1.0 / lam, interp)
    rhs = rhs.with_data(rhs.data / lam ** n)
    commutation = relative_error(lhs, rhs)
    details = (f"T_hbar = d_(2/hbar) T_2 d_(hbar/2): {identity:.2e}, d_2 d_(1/2): {inverse:.2e}, "
               f"F d_lam = lam^-n d_(1/lam) F: {commutation:.2e}")
    return max(identity, inverse, commutation), details


@register("conjugation_compat", "transform", 1e-10)
def check_conjugation_compat(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = e.n_a
    hbar = ctx.config.transform_hbar
    interp = ctx.config.interpolation
    envelope = fixtures.gaussian(_n_vector(n, 0.1), _n_vector(n, 0.2), 0.5, 1.5)
    wave = lambda a, l: envelope(a, l) * np.exp(1j * (0.4 * np.sum(a, axis=-1) - 0.7 * np.sum(l, axis=-1)))
    u = _transform_grid(ctx, wave, hbar)
    lhs = T_hbar(e, u.with_data(np.conj(u.data)), hbar, interpolation=interp)
    Tu = T_hbar(e, u, hbar, interpolation=interp)
    rhs = Tu.with_data(np.conj(Tu.data))
    linear = relative_error(T_hbar(e, u.with_data(2.0 * u.data - 1j * np.conj(u.data)), hbar, interpolation=interp),
                            Tu.with_data(2.0 * Tu.data - 1j * rhs.data))
    conj = relative_error(lhs, rhs)
    return max(conj, linear), f"conjugation {conj:.2e}, linearity {linear:.2e}"


@register("decay_preservation", "transform", 1e-6)
def check_decay_preservation(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = e.n_a
    hbar = ctx.config.decay_hbar
    u = fixtures.sample(fixtures.gaussian(_n_vector(n, 0.0), _n_vector(n, 0.0), 0.5, 0.5), n,
                        ctx.config.grid, hbar)
    Tu = T_hbar(e, u.pad_l(ctx.config.oversample), hbar,
                interpolation=ctx.config.interpolation).crop_l(u.l_shape)
    a, l = Tu.coordinates()
    limits = 0.5 * np.asarray([-m for m in Tu.mins])
    outside = np.any(np.abs(np.concatenate([a, l], axis=-1)) > limits, axis=-1)
    ratio = float(np.max(np.abs(Tu.data[outside])) / np.max(np.abs(Tu.data)))
    return ratio, f"max |T u| outside the central half box / peak at hbar={hbar:g}"


# -- product ----------------------------------------------------------------

def _interior(*grids: PhaseSpaceGrid) -> None:
    """Product operands must vanish on the outermost samples before a residual is meaningful."""
    for g in grids:
        ratio = g.boundary_peak()
        if ratio > BOUNDARY_TOLERANCE:
            raise BoundaryError(ratio, BOUNDARY_TOLERANCE)


def _oracle_pair(ctx: CheckContext, hbar: float):
    n = ctx.e.n_a
    spec = ctx.config.oracle_grid
    u = fixtures.sample(fixtures.gaussian(_n_vector(n, 0.2), _n_vector(n, 0.5), 1.0, 1.0), n, spec, hbar)
    v = fixtures.sample(fixtures.gaussian(_n_vector(n, -0.15), _n_vector(n, -0.5), 1.0, 1.0), n, spec, hbar)
    _interior(u, v)
    return u, v


@register("weyl_paths", "product", 1e-3)
def check_weyl_paths(ctx: CheckContext) -> Outcome:
    hbar = ctx.config.product_hbar
    u, v = _oracle_pair(ctx, hbar)
    B = pairing_matrix(ctx.e)
    error = relative_error(weyl_product_fft(u, v, hbar, B), weyl_product_quad(u, v, hbar, B))
    return error, f"FFT vs quadrature on {ctx.config.oracle_grid.points_per_axis}^2n points"


@register("weyl_idempotent", "product", 1e-4)
def check_weyl_idempotent(ctx: CheckContext) -> Outcome:
    n = ctx.e.n_a
    hbar = ctx.config.product_hbar
    B = pairing_matrix(ctx.e)
    u0 = fixtures.ground_state(hbar)
    fine = fixtures.sample(u0, n, GridSpec(ctx.config.idempotent_points, ctx.config.grid.extent), hbar)
    _interior(fine)
    fft_error = relative_error(weyl_product_fft(fine, fine, hbar, B), fine)
    coarse = fixtures.sample(u0, n, GridSpec(ctx.config.oracle_grid.points_per_axis, ctx.config.grid.extent), hbar)
    _interior(coarse)
    quad_error = relative_error(weyl_product_quad(coarse, coarse, hbar, B), coarse)
    return max(fft_error, quad_error), f"FFT {fft_error:.2e}, quadrature {quad_error:.2e}"


@register("path_equivalence", "product", 1e-3)
def check_path_equivalence(ctx: CheckContext) -> Outcome:
    hbar = ctx.config.product_hbar
    u, v = _oracle_pair(ctx, hbar)
    params = ctx.config.star_params(hbar)
    conj = star_hbar(ctx.e, u, v, params)
    kernel = star_hbar_kernel(ctx.e, u, v, params)
    return relative_error(conj, kernel), "conjugation vs kernel quadrature"


def _suite_bumps(ctx: CheckContext, hbar: float, spec: GridSpec, width_a: float, width_l: float):
    n = ctx.e.n_a
    centers = [((0.3,), (0.4,)), ((-0.2,), (-0.3,)), ((0.1,), (-0.6,))]
    bumps = [fixtures.sample(fixtures.gaussian(_n_vector(n, ca[0]), _n_vector(n, cl[0]), width_a, width_l),
                             n, spec, hbar) for ca, cl in centers]
    _interior(*bumps)
    return bumps


@register("associativity", "product", 1e-3)
def check_associativity(ctx: CheckContext) -> Outcome:
    hbar = ctx.config.product_hbar
    params = ctx.config.star_params(hbar)
    u, v, w = _suite_bumps(ctx, hbar, ctx.config.grid, 1.0, 1.0)
    left = star_hbar(ctx.e, star_hbar(ctx.e, u, v, params), w, params)
    right = star_hbar(ctx.e, u, star_hbar(ctx.e, v, w, params), params)
    return relative_error(left, right), "(u*v)*w vs u*(v*w), conjugation path"


@register("invariance", "product", 1e-6)
def check_invariance(ctx: CheckContext) -> Outcome:
    e = ctx.e
    hbar = ctx.config.product_hbar
    params = ctx.config.star_params(hbar)
    u, v, _ = _suite_bumps(ctx, hbar, ctx.config.oracle_grid, 0.9, 1.05)
    product = star_hbar(e, u, v, params)
    worst = 0.0
    for _ in range(ctx.config.transvections):
        g = GroupElement(ctx.rng.uniform(-0.3, 0.3, size=e.n_a),
                         ctx.rng.uniform(-0.02, 0.02, size=e.n_k),
                         ctx.rng.uniform(-0.02, 0.02, size=e.n_l))
        moved = star_hbar(e, act_on_grid(e, g, u), act_on_grid(e, g, v), params)
        worst = max(worst, relative_error(moved, act_on_grid(e, g, product)))
    return worst, f"g(u*v) vs (gu)*(gv) over {ctx.config.transvections} transvections"


def _sweep(ctx: CheckContext):
    """Commutators and products over the configured hbar list, shared by the asymptotic checks."""
    if "sweep" in ctx.cache:
        return ctx.cache["sweep"]
    e = ctx.e
    B = pairing_matrix(e)
    rows = []
    for hbar in ctx.config.hbar_list:
        u, v, _ = _suite_bumps(ctx, hbar, ctx.config.grid, 0.6, 1.0)
        params = ctx.config.star_params(hbar)
        uv = star_hbar(e, u, v, params)
        vu = star_hbar(e, v, u, params)
        rows.append((hbar, u, v, uv, vu, poisson_bracket(u, v, B)))
    ctx.cache["sweep"] = rows
    return rows


@register("dirac_condition", "product", 0.3)
def check_dirac_condition(ctx: CheckContext) -> Outcome:
    rows = _sweep(ctx)
    hbars, defects = [], []
    for hbar, u, v, uv, vu, bracket in rows:
        nu = hbar / 2j
        commutator = (uv.data - vu.data) / (2.0 * nu)
        defect = np.linalg.norm(commutator - bracket.data) / np.linalg.norm(bracket.data)
        flipped = np.linalg.norm(commutator + bracket.data) / np.linalg.norm(bracket.data)
        if flipped < defect:
            return float("nan"), ("the commutator reproduces the negated Poisson bracket; "
                                  "the structure's orientation is inconsistent with the chart")
        hbars.append(hbar)
        defects.append(defect)
    slope = _slope(hbars, defects)
    details = "D(hbar) = " + ", ".join(f"{d:.3e}" for d in defects) + f"; slope {slope:.3f}"
    return abs(slope - 2.0), details


@register("classical_limit", "product", 0.3)
def check_classical_limit(ctx: CheckContext) -> Outcome:
    rows = _sweep(ctx)
    hbars = [row[0] for row in rows]
    errors = [float(np.linalg.norm(uv.data - u.data * v.data)) for _, u, v, uv, _, _ in rows]
    slope = _slope(hbars, errors)
    details = "||u*v - uv|| = " + ", ".join(f"{d:.3e}" for d in errors) + f"; slope {slope:.3f}"
    return abs(slope - 1.0), details


@register("trace_identity", "product", 1e-4)
def check_trace_identity(ctx: CheckContext) -> Outcome:
    hbar = ctx.config.product_hbar
    B = pairing_matrix(ctx.e)
    u, v, _ = _suite_bumps(ctx, hbar, ctx.config.grid, 0.6, 1.0)
    product = weyl_product_fft(u, v.with_data(np.conj(v.data)), hbar, B)
    lhs = trace(product, B)
    rhs = inner_product_L2(u, v, B)
    return abs(lhs - rhs) / abs(rhs), f"tr(u *0 conj v) = {lhs:.10g}, (u, v) = {rhs:.10g}"


@register("unitarity", "product", 1e-5)
def check_unitarity(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = e.n_a
    hbar = ctx.config.product_hbar
    spec = ctx.config.grid
    u = fixtures.sample(fixtures.gaussian(_n_vector(n, 0.2), _n_vector(n, 0.3), 0.5, 1.0), n, spec, hbar)
    v = fixtures.sample(fixtures.gaussian(_n_vector(n, -0.1), _n_vector(n, -0.2), 0.5, 1.0), n, spec, hbar)
    _interior(u, v)
    kwargs = dict(oversample=ctx.config.oversample, interpolation=ctx.config.interpolation)
    reference = inner_product_E(e, u, v, hbar, **kwargs)
    worst = 0.0
    for _ in range(3):
        x = Point(ctx.rng.uniform(-0.3, 0.3, size=n), ctx.rng.uniform(-0.5, 0.5, size=n))
        moved = inner_product_E(e, symmetry_pullback(e, x, u), symmetry_pullback(e, x, v), hbar, **kwargs)
        worst = max(worst, abs(moved - reference) / abs(reference))
    return worst, "(s_x* u, s_x* v)_E vs (u, v)_E"


@register("involution", "product", 1e-8)
def check_involution(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = e.n_a
    hbar = ctx.config.product_hbar
    params = ctx.config.star_params(hbar)
    spec = ctx.config.oracle_grid

    def wave(center_a, center_l, k):
        envelope = fixtures.gaussian(_n_vector(n, center_a), _n_vector(n, center_l), 0.5, 1.0)
        return lambda a, l: envelope(a, l) * np.exp(1j * k * np.sum(l, axis=-1))

    u = fixtures.sample(wave(0.2, 0.3, 0.5), n, spec, hbar)
    v = fixtures.sample(wave(-0.1, -0.4, -0.8), n, spec, hbar)
    _interior(u, v)
    uv = star_hbar(e, u, v, params)
    lhs = uv.with_data(np.conj(uv.data))
    rhs = star_hbar(e, v.with_data(np.conj(v.data)), u.with_data(np.conj(u.data)), params)
    return relative_error(rhs, lhs), "conj(u*v) vs conj(v)*conj(u)"


@register("covariance_truncation", "product", 1e-8)
def check_covariance_truncation(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = e.n_a
    hbar = ctx.config.product_hbar
    B = pairing_matrix(e)
    spec = GridSpec(64, 4.0)
    grid = PhaseSpaceGrid.uniform(n, n, spec.points_per_axis, spec.extent, hbar)
    a, l = grid.coordinates()
    worst = 0.0
    for _ in range(3):
        X = ctx.rng.uniform(-1.0, 1.0, size=e.dim("G"))
        Y = ctx.rng.uniform(-1.0, 1.0, size=e.dim("G"))
        X[n:n + e.n_k] = 0.0
        Y[n:n + e.n_k] = 0.0
        u = grid.with_data(hamiltonian(e, X, Point(a, l)))
        v = grid.with_data(hamiltonian(e, Y, Point(a, l)))
        terms = moyal_series(u, v, hbar / 2j, 4, B, differentiation="finite", terms=True)
        first = np.linalg.norm(terms[1].data)
        worst = max(worst, max(float(np.linalg.norm(t.data) / first) for t in terms[2:]))
    return worst, "max ||order k>=2 term|| / ||order 1 term|| for Hamiltonians"


@register("operator_norm", "product", 0.05)
def check_operator_norm(ctx: CheckContext) -> Outcome:
    e = ctx.e
    n = e.n_a
    hbar = ctx.config.product_hbar
    spec = GridSpec(ctx.config.oracle_grid.points_per_axis, ctx.config.grid.extent)
    u0 = fixtures.sample(fixtures.ground_state(hbar), n, spec, hbar)
    _interior(u0)
    params = ctx.config.star_params(hbar, method="flat")
    estimate = operator_norm_estimate(e, u0, params)
    doubled = operator_norm_estimate(e, u0.with_data(2.0 * u0.data), params)
    homogeneity = abs(doubled - 2.0 * estimate) / (2.0 * estimate) if estimate else float("nan")
    return abs(estimate - 1.0), f"||L_u0|| ~ {estimate:.6f}, homogeneity {homogeneity:.2e}"
