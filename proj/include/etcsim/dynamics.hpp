#pragma once

#include <Eigen/Dense>

#include <vector>

namespace etcsim {

class Graph;

/// Per-agent copies of the latest value received from each listened-to
/// agent; views[i][k] pairs with listen_set(i)[k]. Ideal channels keep every
/// copy equal to the sender's broadcast state; drops and delays make them
/// diverge (non-consistent reception).
using ScalarViews = std::vector<std::vector<double>>;

ScalarViews consistent_views(const Graph& g, const Eigen::VectorXd& broadcast);

// ---- single integrator, ZOH broadcasts ----

/// u = -L x_hat.
Eigen::VectorXd si_control(const Graph& g, const Eigen::VectorXd& x_hat);
Eigen::VectorXd si_control_views(const Graph& g, const Eigen::VectorXd& x_hat,
                                 const ScalarViews& views);
/// Exact between events: the input is constant.
void si_propagate(Eigen::VectorXd& x, const Eigen::VectorXd& u, double dt);

// ---- double integrator, FOH broadcasts ----

struct DoubleIntegratorState {
    Eigen::VectorXd r, v;          // plant
    Eigen::VectorXd r_hat, v_hat;  // own last broadcast samples
    Eigen::VectorXd t_last;        // per-agent last event time
};

struct DiViews {
    ScalarViews r, v;
};

DiViews consistent_di_views(const Graph& g, const DoubleIntegratorState& s);

/// FOH law: positions of both own and neighbor terms are extrapolated with
/// the broadcasting agent's own clock t_last(i), read literally.
Eigen::VectorXd di_control(const Graph& g, const DoubleIntegratorState& s, double t, double gamma);
Eigen::VectorXd di_control_views(const Graph& g, const DoubleIntegratorState& s,
                                 const DiViews& views, double t, double gamma);
/// du/dt between events (the input is affine in t).
Eigen::VectorXd di_control_slope_views(const Graph& g, const DoubleIntegratorState& s,
                                       const DiViews& views);
/// Exact update over [t, t+dt] with no events inside: v quadratic, r cubic.
void di_propagate(const Graph& g, DoubleIntegratorState& s, const DiViews& views, double t,
                  double dt, double gamma);
/// FOH errors recomputed from definitions (never integrated).
void di_errors(const DoubleIntegratorState& s, double t, Eigen::VectorXd* e_r,
               Eigen::VectorXd* e_v);

/// [0 I; -L -gamma L].
Eigen::MatrixXd di_gamma_matrix(const Eigen::MatrixXd& lap, double gamma);
/// Third-smallest decay rate (-Re of an eigenvalue) of the Gamma matrix;
/// the first two are zero from the agreement subspace.
double di_lambda3(const Eigen::MatrixXd& lap, double gamma);

// ---- homogeneous linear agents with model-based estimates ----

struct LinearSystem {
    Eigen::MatrixXd A;  // n x n
    Eigen::MatrixXd B;  // n x m
};

struct LinearAgentsState {
    Eigen::MatrixXd x;      // n x N plant states, column per agent
    Eigen::MatrixXd x_hat;  // n x N model-based estimates
    Eigen::MatrixXd u_hat;  // m x N held inputs driving the estimates
};

/// zhat_i = sum_j w_ij (x_hat_i - x_hat_j), one column per agent.
Eigen::MatrixXd linear_zhat(const Graph& g, const Eigen::MatrixXd& x_hat);
/// u_i = c F zhat_i.
Eigen::MatrixXd linear_control(const Graph& g, const LinearAgentsState& s, double c,
                               const Eigen::MatrixXd& F);

/// Generator of the stacked closed loop on [vec x; vec x_hat; vec u_hat]:
/// plant driven by the estimates, estimates driven by the held inputs.
Eigen::MatrixXd linear_closed_loop_matrix(const Graph& g, const LinearSystem& sys, double c,
                                          const Eigen::MatrixXd& F);
/// I (x) A + c L (x) BF: coupled flow with zero estimate error.
Eigen::MatrixXd linear_sync_matrix(const Graph& g, const LinearSystem& sys, double c,
                                   const Eigen::MatrixXd& F);

/// Advances a stacked linear state: matrix exponential up to dimension 400,
/// fixed-step RK4 beyond.
class LinearPropagator {
public:
    LinearPropagator() = default;
    explicit LinearPropagator(Eigen::MatrixXd generator);
    void advance(Eigen::VectorXd& stacked, double dt) const;

private:
    Eigen::MatrixXd gen_;
    mutable double cached_dt_ = -1.0;
    mutable Eigen::MatrixXd cached_exp_;
};

Eigen::VectorXd pack_linear_state(const LinearAgentsState& s);
void unpack_linear_state(const Eigen::VectorXd& stacked, LinearAgentsState* s);
void linear_propagate(const Graph& g, const LinearSystem& sys, LinearAgentsState& s, double dt,
                      double c, const Eigen::MatrixXd& F);

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace etcsim
