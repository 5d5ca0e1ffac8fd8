"""Registry of verification checks.

Every check id is a stable string.  A check belongs to one suite, carries a
short statement of what it certifies, the formula tested and a default
tolerance.  Residuals are compared with ``<=``; a tolerance of 0 demands
bitwise equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

SUITES = ("theta", "lax", "rmatrix", "solver", "yang_baxter", "reduction", "dynamics")


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    suite: str
    anchor: str
    formula: str
    tolerance: float


@dataclass
class CheckResult:
    suite: str
    check_id: str
    anchor: str
    max_residual: float
    tolerance: float
    passed: bool
    detail: dict = field(default_factory=dict)

    def record(self) -> dict:
        return {
            "suite": self.suite,
            "check_id": self.check_id,
            "anchor": self.anchor,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "detail": self.detail,
        }


_SPECS = [
    # theta
    CheckSpec("theta_shift_one", "theta", "theta is anti-periodic under z -> z + 1",
              "theta(z+1) = -theta(z)", 1e-12),
    CheckSpec("theta_shift_tau", "theta", "theta picks up an exponential factor under z -> z + tau",
              "theta(z+tau) = -exp(-pi i tau - 2 pi i z) theta(z)", 1e-12),
    CheckSpec("theta_odd", "theta", "theta is an odd function",
              "theta(-z) = -theta(z)", 1e-12),
    CheckSpec("e_shift", "theta", "the logarithmic derivative E is periodic up to a constant",
              "E(z+1) = E(z), E(z+tau) = E(z) - 2 pi i", 1e-12),
    # lax
    CheckSpec("lax_residue", "lax", "the residue of L at each marked point is the rank-one matrix beta_a (x) alpha_a",
              "Res_{q_a} L_ij = beta_a^i alpha_a^j", 1e-8),
    CheckSpec("lax_left_eigenvector", "lax", "alpha_a is a left eigenvector of the constant Laurent term with eigenvalue p_a",
              "sum_i alpha_a^i L^{a,0}_ij = p_a alpha_a^j", 1e-8),
    CheckSpec("lax_residue_sum", "lax", "residues of the elliptic differential L sum to zero; the residue at the origin is minus the moment map",
              "sum_a Res_{q_a} L + Res_0 L = 0, Res_0 L = -T", 1e-9),
    CheckSpec("lax_double_periodicity", "lax", "L is a well-defined differential on the torus",
              "L(z+1) = L(z+tau) = L(z)", 1e-10),
    CheckSpec("lax_rescale_invariance", "lax", "L is invariant under alpha_a -> lambda alpha_a, beta_a -> beta_a / lambda",
              "L(rescale(x, a, lambda), z) = L(x, z)", 1e-12),
    CheckSpec("lax_gauge_covariance", "lax", "the gauge action conjugates L",
              "L(g.x, z) = g L(x, z) g^{-1}", 1e-9),
    CheckSpec("lax_regular_at_origin", "lax", "on the moment surface T = 0 the differential L has no pole at the origin",
              "Res_0 L = 0 when T = 0", 1e-9),
    CheckSpec("lax_quadrature_consistency", "lax", "contour-extracted Laurent data do not depend on the radius",
              "LaurentData(r) = LaurentData(r/2)", 1e-9),
    # rmatrix
    CheckSpec("r_null_vectors", "rmatrix", "alpha_a is a right null vector of r(z, q_a)",
              "sum_k r_jk(z, q_a) alpha_a^k = 0", 1e-7),
    CheckSpec("r_vanishes_at_origin", "rmatrix", "r(z, w) vanishes identically at z = 0",
              "r_jk(0, w) = 0", 1e-7),
    CheckSpec("r_w_residues", "rmatrix", "as a differential in w, r has simple poles +delta at w = 0 and -delta at w = z",
              "Res_{w=0} r = I, Res_{w=z} r = -I", 1e-7),
    CheckSpec("r_z_residue", "rmatrix", "in z, r has at q_a a simple pole with rank-one residue",
              "Res_{z=q_a} r_jk(z, w) = -alpha_a^j pi_k^a", 1e-7),
    CheckSpec("r_laurent_null_vectors", "rmatrix", "the z-Laurent coefficients r^{a,0}, r^{a,1} at q_a annihilate alpha_b at w = q_b",
              "sum_k r^{a,s}_jk(q_b) alpha_b^k = 0 (b != a, s = 0, 1); regular part of r^{a,0}(w) alpha_a at w = q_a is 0", 1e-7),
    CheckSpec("r_laurent_w_poles", "rmatrix", "r^{a,0}(w) has residue -delta at w = q_a and r^{a,1}(w) a double pole with coefficient -delta",
              "r^{a,0} ~ -I/(w-q_a), r^{a,1} ~ -I/(w-q_a)^2", 1e-7),
    CheckSpec("r_depends_on_q_alpha_only", "rmatrix", "r does not depend on p or beta",
              "r(x) == r(x with p, beta replaced)", 0.0),
    CheckSpec("holo_basis_duality", "rmatrix", "the constant differentials u_a are dual to the Tyurin vectors",
              "sum_i u_ai alpha_b^i = delta_ab", 1e-10),
    # solver
    CheckSpec("solver_lax_columns", "solver", "each column of L is the unique differential with its poles, residues and eigenvector conditions",
              "solve_krichever(column data) = L(z)[:, j]", 1e-9),
    CheckSpec("solver_r_rows", "solver", "each row of r(z0, .) is the unique differential with poles +-delta and the null-vector conditions",
              "solve_krichever(row data) = r(z0, w)[j, :]", 1e-9),
    CheckSpec("solver_periodicity", "solver", "solver outputs are doubly periodic",
              "v(z+1) = v(z+tau) = v(z)", 1e-10),
    # yang_baxter
    CheckSpec("yb_residual", "yang_baxter", "Lax brackets satisfy the Yang-Baxter relation {L_1(z), L_2(w)} = [r_12(z,w), L_1(z)] - [r_21(w,z), L_2(w)]",
              "max|D - R| / max(1, max|D|)", 1e-6),
    CheckSpec("yb_cross_chart", "yang_baxter", "brackets of Lax entries do not depend on the affine chart",
              "max|D_chart1 - D_chart2| / max(1, max|D|)", 1e-7),
    CheckSpec("yb_antisymmetry", "yang_baxter", "the bracket tensor is antisymmetric under exchange of the tensor factors",
              "D_ijkl(z,w) = -D_klij(w,z)", 1e-9),
    CheckSpec("deriv_momentum", "yang_baxter", "the p_a-derivative of L is the constant rank-one matrix pi^a (x) alpha_a",
              "d L_ij / d p_a = pi_i^a alpha_a^j", 1e-9),
    CheckSpec("deriv_position_double_pole", "yang_baxter", "the q_a-derivative of L has a double pole at q_a with coefficient beta_a (x) alpha_a",
              "d L / d q_a ~ beta_a (x) alpha_a / (z-q_a)^2", 1e-7),
    CheckSpec("deriv_beta_residue", "yang_baxter", "residue of the beta-derivative of L at q_a",
              "Res_{q_a} dL_ij/d beta_a^mu = delta_i,mu alpha_a^j - delta_i,pivot alpha_a^mu alpha_a^j", 1e-7),
    CheckSpec("deriv_alpha_residue", "yang_baxter", "residue of the alpha-derivative of L at q_a",
              "Res_{q_a} dL_ij/d alpha_a^mu = beta_a^i delta_j,mu - delta_i,pivot beta_a^mu alpha_a^j", 1e-7),
    CheckSpec("deriv_regular_parts", "yang_baxter", "alpha-contractions of the regular parts of the derivatives of L at the marked points",
              "alpha_b . dL(q_b) = 0 (b != a); alpha_a . dL/d beta|reg = 0; alpha_a . dL/d alpha^mu|reg = p_a e_mu - L^{a,0}_mu; alpha_a . dL/d q_a|reg = -alpha_a . L^{a,1}", 1e-7),
    CheckSpec("ad_fd_agreement", "yang_baxter", "dual-number derivatives agree with Richardson-extrapolated central differences",
              "max|J_dual - J_fd| / max|J_dual|", 1e-6),
    CheckSpec("involution", "yang_baxter", "spectral invariants Poisson-commute",
              "|{tr L(z)^k, tr L(w)^k}| / (|grad f| |grad g|), k = 2, 3", 1e-6),
    # reduction
    CheckSpec("gauge_det_unit", "reduction", "the compensator has unit determinant",
              "det G(alpha) = 1", 1e-12),
    CheckSpec("dressed_gauge_invariance", "reduction", "the dressed Lax matrix is gauge invariant",
              "l^G(g.x, z) = l^G(x, z)", 1e-9),
    CheckSpec("dressed_yang_baxter", "reduction", "at slice points the dressed Lax matrix obeys the r-matrix relation with r^H = r + {G_1, L_2}",
              "{l_1(z), l_2(w)} = [r^H(z,w), l_1] - [r^H_21(w,z), l_2]", 1e-5),
    CheckSpec("r_hitchin_independence", "reduction", "the dressed r-matrix depends only on q and alpha",
              "r^H(x) == r^H(x with p, beta replaced)", 0.0),
    CheckSpec("compensator_self_bracket", "reduction", "entries of the compensator Poisson-commute",
              "{G_ij, G_kl} = 0", 1e-10),
    CheckSpec("spin_cm_identities", "reduction", "the spin Calogero-Moser constraint residual is sum_a beta_a (x) alpha_a + eta",
              "residual(eta = -T) = 0, residual(eta = 0) = max|T|", 0.0),
    CheckSpec("moment_traceless", "reduction", "the moment map is traceless on the per-point constraint surface",
              "tr T = sum_a beta_a . alpha_a = 0", 1e-12),
    # dynamics
    CheckSpec("flow_hamiltonian_drift", "dynamics", "the generating Hamiltonian is conserved along its own flow",
              "max_t |H(t) - H(0)| / max(1, |H(0)|)", 1e-9),
    CheckSpec("flow_invariant_drift", "dynamics", "all spectral invariants are conserved along the flow",
              "max_t |tr L(w)^k(t) - tr L(w)^k(0)| / |tr L(w)^k(0)|, k = 2, 3", 1e-6),
    CheckSpec("flow_moment_drift", "dynamics", "the gauge-invariant flow preserves the moment map",
              "max_t |T(t) - T(0)|", 1e-6),
    CheckSpec("flow_constraint_drift", "dynamics", "the per-point constraint beta_a . alpha_a = 0 is preserved",
              "max_t max_a |beta_a . alpha_a|", 1e-6),
    CheckSpec("flow_time_reversal", "dynamics", "integrating forward and back returns to the start",
              "|c(T -> 0) - c(0)|", 1e-7),
]

REGISTRY: dict[str, CheckSpec] = {s.check_id: s for s in _SPECS}
DEFAULT_TOLERANCES: dict[str, float] = {s.check_id: s.tolerance for s in _SPECS}


def checks_in(suite: str) -> list[CheckSpec]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    return [s for s in _SPECS if s.suite == suite]


def explain(check_id: str) -> str:
    try:
        s = REGISTRY[check_id]
    except KeyError:
        raise KeyError(f"unknown check id {check_id!r}") from None
    return f"{s.check_id} [{s.suite}]\n  {s.anchor}\n  formula: {s.formula}\n  default tolerance: {s.tolerance:g}"
