#include "etcsim/controller_design.hpp"

#include "etcsim/errors.hpp"

#include <cmath>
#include <complex>

namespace etcsim {

bool is_controllable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double tol) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXd ctrb(n, n * B.cols());
    Eigen::MatrixXd block = B;
    for (int k = 0; k < n; ++k) {
        ctrb.middleCols(k * B.cols(), B.cols()) = block;
        block = A * block;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ctrb);
    svd.setThreshold(tol);
    return svd.rank() == n;
}

Eigen::MatrixXd solve_riccati(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const Eigen::MatrixXd& Q) {
    const int n = static_cast<int>(A.rows());
    const Eigen::MatrixXd R = 2.0 * B * B.transpose();

    Eigen::MatrixXd ham(2 * n, 2 * n);
    ham.topLeftCorner(n, n) = A;
    ham.topRightCorner(n, n) = -R;
    ham.bottomLeftCorner(n, n) = -Q;
    ham.bottomRightCorner(n, n) = -A.transpose();

    Eigen::EigenSolver<Eigen::MatrixXd> eig(ham);
    if (eig.info() != Eigen::Success) throw NumericsError("Hamiltonian eigensolve failed");

    Eigen::MatrixXcd basis(2 * n, n);
    int picked = 0;
    for (int i = 0; i < 2 * n && picked < n; ++i) {
        if (eig.eigenvalues()(i).real() < 0.0) {
            basis.col(picked++) = eig.eigenvectors().col(i);
        }
    }
    if (picked != n) {
        throw NumericsError("Riccati solve failed: stable subspace has dimension " +
                            std::to_string(picked) + ", expected " + std::to_string(n));
    }

    const Eigen::MatrixXcd X = basis.topRows(n);
    const Eigen::MatrixXcd Y = basis.bottomRows(n);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(X);
    if (!lu.isInvertible()) throw NumericsError("Riccati solve failed: singular subspace basis");
    const Eigen::MatrixXcd Pc = Y * lu.inverse();
    Eigen::MatrixXd P = Pc.real();
    P = 0.5 * (P + P.transpose());
    return P;
}

LinearDesign design_linear_controller(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                      double lambda2, double alpha_margin, double epsilon,
                                      std::optional<double> c_override) {
    if (A.rows() != A.cols() || B.rows() != A.rows()) {
        throw ConfigError("system matrices have inconsistent dimensions");
    }
    if (!(lambda2 > 0.0)) throw ConfigError("design needs lambda2 > 0");
    if (alpha_margin < 0.0) throw ConfigError("design needs alpha_margin >= 0");
    if (!is_controllable(A, B)) throw ConfigError("(A, B) is not controllable");

    const int n = static_cast<int>(A.rows());
    const Eigen::MatrixXd shifted = A + alpha_margin * Eigen::MatrixXd::Identity(n, n);
    LinearDesign d;
    d.alpha_margin = alpha_margin;
    d.epsilon = epsilon;
    d.P = solve_riccati(shifted, B, epsilon * Eigen::MatrixXd::Identity(n, n));
    d.F = -B.transpose() * d.P;
    d.c = c_override.value_or(1.0 / lambda2);
    if (d.c < 1.0 / lambda2 - 1e-9) {
        throw ConfigError("coupling gain c = " + std::to_string(d.c) +
                          " is below 1/lambda2 = " + std::to_string(1.0 / lambda2));
    }

    const Eigen::MatrixXd lmi = d.P * A + A.transpose() * d.P -
                                2.0 * d.P * B * B.transpose() * d.P +
                                2.0 * alpha_margin * d.P;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lmi);
    d.lmi_residual = eig.eigenvalues().maxCoeff();
    if (!(d.lmi_residual < -1e-8)) {
        throw NumericsError("design certificate fails: max eigenvalue of the closed-loop "
                            "matrix inequality is " +
                            std::to_string(d.lmi_residual));
    }
    d.notes = "P solves (A+aI)'P + P(A+aI) - 2PBB'P + eps*I = 0 with a = " +
              std::to_string(alpha_margin) + ", eps = " + std::to_string(epsilon) +
              "; the strict inequality is recovered with slack eps.";
    return d;
}

HurwitzReport verify_hurwitz_family(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                    const Eigen::MatrixXd& F, double c,
                                    const Eigen::VectorXd& laplacian_eigenvalues) {
    HurwitzReport report;
    for (int j = 1; j < laplacian_eigenvalues.size(); ++j) {
        const double lambda = laplacian_eigenvalues(j);
        const Eigen::MatrixXd closed = A + c * lambda * B * F;
        Eigen::EigenSolver<Eigen::MatrixXd> eig(closed);
        double max_re = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < closed.rows(); ++k) {
            max_re = std::max(max_re, eig.eigenvalues()(k).real());
        }
        HurwitzReport::Entry entry;
        entry.j = j + 1;
        entry.lambda = lambda;
        entry.max_real_part = max_re;
        entry.hurwitz = max_re < 0.0;
        report.all_hurwitz = report.all_hurwitz && entry.hurwitz;
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace etcsim
