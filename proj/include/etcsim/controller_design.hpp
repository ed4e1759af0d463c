#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace etcsim {

/// Feedback design for homogeneous linear agents: F = -B'P with P from the
/// slack Riccati equation (A+aI)'P + P(A+aI) - 2PBB'P + eps*I = 0, coupling
/// gain c >= 1/lambda2.
struct LinearDesign {
    Eigen::MatrixXd P;
    Eigen::MatrixXd F;
    double c = 0.0;
    double alpha_margin = 0.0;
    double epsilon = 1e-6;
    double lmi_residual = 0.0;  // max eigenvalue of PA + A'P - 2PBB'P + 2*alpha*P
    std::string notes;
};

bool is_controllable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double tol = 1e-9);

/// Stabilizing solution of A'P + PA - 2PBB'P + Q = 0 via the stable invariant
/// subspace of the Hamiltonian matrix.
Eigen::MatrixXd solve_riccati(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const Eigen::MatrixXd& Q);

LinearDesign design_linear_controller(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                      double lambda2, double alpha_margin,
                                      double epsilon = 1e-6,
                                      std::optional<double> c_override = std::nullopt);

struct HurwitzReport {
    struct Entry {
        int j = 0;  // 1-based index into the sorted eigenvalue list
        double lambda = 0.0;
        double max_real_part = 0.0;
        bool hurwitz = false;
    };
    std::vector<Entry> entries;  // one per eigenvalue with j >= 2
    bool all_hurwitz = true;
};

/// Checks that A + c*lambda_j*B*F is Hurwitz for every nonzero Laplacian
/// eigenvalue (j >= 2; eigenvalues must be sorted ascending).
HurwitzReport verify_hurwitz_family(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                    const Eigen::MatrixXd& F, double c,
                                    const Eigen::VectorXd& laplacian_eigenvalues);

}  // namespace etcsim
