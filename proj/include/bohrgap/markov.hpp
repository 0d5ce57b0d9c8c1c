#pragma once

// The averaging operator P_mu, the difference operator D_mu = I - P_mu,
// spectral-radius estimation on Cayley-ball truncations, Kesten-style
// gap verdicts, the spectral-gap bound audit, and finite-dimensional
// invariant-vector detection.

#include <Eigen/Dense>

#include <vector>

#include "bohrgap/groups.hpp"
#include "bohrgap/reps.hpp"

namespace bohrgap {

VecF apply_P(const RegularRep& rep, const GenMeasure& mu, const VecF& v);
VecQ apply_P(const RegularRep& rep, const GenMeasure& mu, const VecQ& v);
Eigen::VectorXd apply_P(const RepSpec& rep, const GenMeasure& mu, const Eigen::VectorXd& v);

VecF apply_D(const RegularRep& rep, const GenMeasure& mu, const VecF& v);
VecQ apply_D(const RegularRep& rep, const GenMeasure& mu, const VecQ& v);
Eigen::VectorXd apply_D(const RepSpec& rep, const GenMeasure& mu, const Eigen::VectorXd& v);

/// Dense matrix of P_mu for a finite-dimensional rep. Symmetric since mu
/// is symmetric and generator images are orthogonal.
Eigen::MatrixXd averaging_matrix(const RepSpec& rep, const GenMeasure& mu);

/// Top eigenvalue of the Dirichlet truncation of P_mu to the ball of
/// radius r, by power iteration from the deterministic start vector
/// delta_identity. Converged when successive Rayleigh quotients differ
/// by less than tol.
double spectral_radius_truncated(const GroupSpec& group, const GenMeasure& mu, int r,
                                 double tol = 1e-12, int max_iter = 100000,
                                 std::size_t ball_cap = 2000000);

enum class Verdict { Gap, NoGap, Inconclusive };

std::string verdict_name(Verdict v);

struct SpectralReport {
    std::vector<int> radii;
    std::vector<double> estimates;      // raw truncation estimates, per radius
    std::vector<double> extrapolated;   // limit extrapolations (r^-2 model), per window
    Verdict verdict = Verdict::Inconclusive;
    double plateau_value = 0;  // value the verdict is based on
    double margin = 0;         // theta - plateau_value (Gap) or distance to 1 (NoGap)
    bool finite_exact = false; // finite group: full eigendecomposition used
};

/// Kesten-style semi-decision. Raw truncation estimates increase to
/// ||P_mu|| at rate O(r^-2); the verdict therefore also tracks a
/// three-point Richardson extrapolation in 1/(r+a)^2, which is what
/// plateaus at desk-scale radii. NoGap triggers when any estimate
/// reaches 1 - 1e-3; Gap when the extrapolated sequence stabilizes
/// (successive difference < 1e-3, or raw difference < 1e-6) at a value
/// <= theta. Finite permutation groups get an exact verdict from the
/// full spectrum: Gap iff the second eigenvalue on the orthocomplement
/// of constants is < 1.
SpectralReport kesten_verdict(const GroupSpec& group, const GenMeasure& mu,
                              const std::vector<int>& radii, double theta);

struct GapAudit {
    double epsilon = 0;       // certified lower bound on the uniform defect
    double epsilon_opt = 0;   // min-max defect found by the optimizer (upper bound)
    double bound = 0;         // 1 - eps^2/2 * mu(e) * min_{h != e} mu(h)
    int samples = 0;
    double max_observed = 0;  // max ||P v||^2 over sampled unit vectors
    bool passed = false;
};

/// Audits ||P_mu v||^2 <= 1 - eps^2/2 mu(e) min mu(h) on random unit
/// vectors. eps is certified from the smallest eigenvalue of the mean
/// defect quadratic form sum_h (I-pi_h)^T (I-pi_h) / |S\{e}|, so the
/// audited inequality is sound independently of the optimizer.
GapAudit gap_bound_audit(const RepSpec& rep, const GenMeasure& mu, int samples,
                         unsigned seed = 0);

/// Orthonormal basis of ker(D_mu) (singular values below threshold);
/// equals the space of G-invariant vectors.
std::vector<Eigen::VectorXd> invariant_subspace(const RepSpec& rep, const GenMeasure& mu,
                                                double threshold = 1e-8);

/// Solves D_mu v = b by conjugate gradients; D_mu is symmetric positive
/// definite exactly when there are no invariant vectors, and the solve
/// refuses to run otherwise.
Eigen::VectorXd solve_D(const RepSpec& rep, const GenMeasure& mu, const Eigen::VectorXd& b,
                        double tol = 1e-10);

}  // namespace bohrgap
