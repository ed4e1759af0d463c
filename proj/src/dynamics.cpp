#include "etcsim/dynamics.hpp"

#include "etcsim/errors.hpp"
#include "etcsim/graph.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace etcsim {

namespace {

void check_finite(const Eigen::VectorXd& v, const char* what) {
    if (!v.allFinite()) throw NumericsError(std::string("nonfinite state in ") + what);
}

}  // namespace

ScalarViews consistent_views(const Graph& g, const Eigen::VectorXd& broadcast) {
    ScalarViews views(g.size());
    for (int i = 0; i < g.size(); ++i) {
        for (int j : g.listen_set(i)) views[i].push_back(broadcast(j));
    }
    return views;
}

Eigen::VectorXd si_control_views(const Graph& g, const Eigen::VectorXd& x_hat,
                                 const ScalarViews& views) {
    const int n = g.size();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const auto& nbrs = g.listen_set(i);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            u(i) -= g.weight(i, nbrs[k]) * (x_hat(i) - views[i][k]);
        }
    }
    return u;
}

Eigen::VectorXd si_control(const Graph& g, const Eigen::VectorXd& x_hat) {
    return si_control_views(g, x_hat, consistent_views(g, x_hat));
}

void si_propagate(Eigen::VectorXd& x, const Eigen::VectorXd& u, double dt) {
    x += dt * u;
    check_finite(x, "si_propagate");
}

DiViews consistent_di_views(const Graph& g, const DoubleIntegratorState& s) {
    return {consistent_views(g, s.r_hat), consistent_views(g, s.v_hat)};
}

Eigen::VectorXd di_control_views(const Graph& g, const DoubleIntegratorState& s,
                                 const DiViews& views, double t, double gamma) {
    const int n = g.size();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const double tau = t - s.t_last(i);
        const auto& nbrs = g.listen_set(i);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            const double dv = s.v_hat(i) - views.v[i][k];
            const double dr = s.r_hat(i) - views.r[i][k];
            u(i) -= g.weight(i, nbrs[k]) * (dr + tau * dv + gamma * dv);
        }
    }
    return u;
}

Eigen::VectorXd di_control(const Graph& g, const DoubleIntegratorState& s, double t,
                           double gamma) {
    return di_control_views(g, s, consistent_di_views(g, s), t, gamma);
}

Eigen::VectorXd di_control_slope_views(const Graph& g, const DoubleIntegratorState& s,
                                       const DiViews& views) {
    const int n = g.size();
    Eigen::VectorXd slope = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const auto& nbrs = g.listen_set(i);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            slope(i) -= g.weight(i, nbrs[k]) * (s.v_hat(i) - views.v[i][k]);
        }
    }
    return slope;
}

void di_propagate(const Graph& g, DoubleIntegratorState& s, const DiViews& views, double t,
                  double dt, double gamma) {
    const Eigen::VectorXd u0 = di_control_views(g, s, views, t, gamma);
    const Eigen::VectorXd du = di_control_slope_views(g, s, views);
    const double dt2 = dt * dt;
    const double dt3 = dt2 * dt;
    s.r += s.v * dt + u0 * (dt2 / 2.0) + du * (dt3 / 6.0);
    s.v += u0 * dt + du * (dt2 / 2.0);
    check_finite(s.r, "di_propagate");
    check_finite(s.v, "di_propagate");
}

void di_errors(const DoubleIntegratorState& s, double t, Eigen::VectorXd* e_r,
               Eigen::VectorXd* e_v) {
    const Eigen::ArrayXd tau = t - s.t_last.array();
    *e_r = (s.r_hat.array() + tau * s.v_hat.array() - s.r.array()).matrix();
    *e_v = s.v_hat - s.v;
}

Eigen::MatrixXd di_gamma_matrix(const Eigen::MatrixXd& lap, double gamma) {
    const int n = static_cast<int>(lap.rows());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    m.bottomLeftCorner(n, n) = -lap;
    m.bottomRightCorner(n, n) = -gamma * lap;
    return m;
}

double di_lambda3(const Eigen::MatrixXd& lap, double gamma) {
    const Eigen::MatrixXd m = di_gamma_matrix(lap, gamma);
    Eigen::EigenSolver<Eigen::MatrixXd> eig(m);
    std::vector<double> rates;
    for (int i = 0; i < m.rows(); ++i) rates.push_back(-eig.eigenvalues()(i).real());
    std::sort(rates.begin(), rates.end());
    return rates.at(2);
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::MatrixXd linear_zhat(const Graph& g, const Eigen::MatrixXd& x_hat) {
    const int n_agents = g.size();
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(x_hat.rows(), n_agents);
    for (int i = 0; i < n_agents; ++i) {
        for (int j : g.listen_set(i)) {
            z.col(i) += g.weight(i, j) * (x_hat.col(i) - x_hat.col(j));
        }
    }
    return z;
}

Eigen::MatrixXd linear_control(const Graph& g, const LinearAgentsState& s, double c,
                               const Eigen::MatrixXd& F) {
    if (F.cols() != s.x_hat.rows()) {
        throw ConfigError("gain F has " + std::to_string(F.cols()) +
                          " columns for state dimension " + std::to_string(s.x_hat.rows()));
    }
    return c * F * linear_zhat(g, s.x_hat);
}

Eigen::MatrixXd linear_closed_loop_matrix(const Graph& g, const LinearSystem& sys, double c,
                                          const Eigen::MatrixXd& F) {
    const int n_agents = g.size();
    const int n = static_cast<int>(sys.A.rows());
    const int m = static_cast<int>(sys.B.cols());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n_agents, n_agents);
    const Eigen::MatrixXd lap = g.laplacian();

    const int dim = n_agents * (2 * n + m);
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
    const int xo = 0;
    const int ho = n_agents * n;
    const int uo = 2 * n_agents * n;
    gen.block(xo, xo, n_agents * n, n_agents * n) = kron(id, sys.A);
    gen.block(xo, ho, n_agents * n, n_agents * n) = c * kron(lap, sys.B * F);
    gen.block(ho, ho, n_agents * n, n_agents * n) = kron(id, sys.A);
    gen.block(ho, uo, n_agents * n, n_agents * m) = kron(id, sys.B);
    return gen;
}

Eigen::MatrixXd linear_sync_matrix(const Graph& g, const LinearSystem& sys, double c,
                                   const Eigen::MatrixXd& F) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(g.size(), g.size());
    return kron(id, sys.A) + c * kron(g.laplacian(), sys.B * F);
}

LinearPropagator::LinearPropagator(Eigen::MatrixXd generator) : gen_(std::move(generator)) {}

void LinearPropagator::advance(Eigen::VectorXd& stacked, double dt) const {
    if (dt == 0.0) return;
    if (gen_.rows() <= 400) {
        if (dt != cached_dt_) {
            cached_exp_ = (gen_ * dt).exp();
            cached_dt_ = dt;
        }
        stacked = cached_exp_ * stacked;
    } else {
        const int steps = std::max(1, static_cast<int>(std::ceil(dt / 1e-3)));
        const double hstep = dt / steps;
        for (int k = 0; k < steps; ++k) {
            const Eigen::VectorXd k1 = gen_ * stacked;
            const Eigen::VectorXd k2 = gen_ * (stacked + 0.5 * hstep * k1);
            const Eigen::VectorXd k3 = gen_ * (stacked + 0.5 * hstep * k2);
            const Eigen::VectorXd k4 = gen_ * (stacked + hstep * k3);
            stacked += hstep / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    check_finite(stacked, "linear propagation");
}

Eigen::VectorXd pack_linear_state(const LinearAgentsState& s) {
    const int nx = static_cast<int>(s.x.size());
    const int nh = static_cast<int>(s.x_hat.size());
    const int nu = static_cast<int>(s.u_hat.size());
    Eigen::VectorXd out(nx + nh + nu);
    out.segment(0, nx) = Eigen::Map<const Eigen::VectorXd>(s.x.data(), nx);
    out.segment(nx, nh) = Eigen::Map<const Eigen::VectorXd>(s.x_hat.data(), nh);
    out.segment(nx + nh, nu) = Eigen::Map<const Eigen::VectorXd>(s.u_hat.data(), nu);
    return out;
}

void unpack_linear_state(const Eigen::VectorXd& stacked, LinearAgentsState* s) {
    const int nx = static_cast<int>(s->x.size());
    const int nh = static_cast<int>(s->x_hat.size());
    s->x = Eigen::Map<const Eigen::MatrixXd>(stacked.data(), s->x.rows(), s->x.cols());
    s->x_hat =
        Eigen::Map<const Eigen::MatrixXd>(stacked.data() + nx, s->x_hat.rows(), s->x_hat.cols());
    s->u_hat = Eigen::Map<const Eigen::MatrixXd>(stacked.data() + nx + nh, s->u_hat.rows(),
                                                 s->u_hat.cols());
}

void linear_propagate(const Graph& g, const LinearSystem& sys, LinearAgentsState& s, double dt,
                      double c, const Eigen::MatrixXd& F) {
    const LinearPropagator prop(linear_closed_loop_matrix(g, sys, c, F));
    Eigen::VectorXd stacked = pack_linear_state(s);
    prop.advance(stacked, dt);
    unpack_linear_state(stacked, &s);
}

}  // namespace etcsim
