#include "etcsim/sim_engine.hpp"

#include "etcsim/controller_design.hpp"
#include "etcsim/dynamics.hpp"
#include "etcsim/errors.hpp"
#include "etcsim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

namespace etcsim {

namespace {

constexpr double kTimeEps = 1e-12;
constexpr double kBisectTol = 1e-9;
constexpr double kDivergenceGuard = 1e9;

struct Delivery {
    double time = 0.0;
    std::uint64_t seq = 0;
    int recipient = 0;
    int sender = 0;
    double a = 0.0;  // x (single integrator) or r (double integrator)
    double b = 0.0;  // v (double integrator)
};

struct DeliveryAfter {
    bool operator()(const Delivery& lhs, const Delivery& rhs) const {
        return std::tie(lhs.time, lhs.seq) > std::tie(rhs.time, rhs.seq);
    }
};

// Tentative state at segment start + dt; nothing here touches the live state.
struct Candidate {
    double dt = 0.0;
    Eigen::VectorXd x;          // single integrator
    DoubleIntegratorState di;   // double integrator
    LinearAgentsState lin;      // linear
    Eigen::VectorXd chi;
    std::vector<TriggerLevel> levels;
    bool any_fire = false;
};

class Runner {
public:
    explicit Runner(const Scenario& sc)
        : sc_(sc),
          n_(sc.graph.size()),
          lap_(sc.graph.laplacian()),
          spectral_(spectral_summary(sc.graph)),
          rng_(sc.seed ^ 0x51a7b3c9d2e8f601ull),
          monitor_(sc.graph.size(), sc.zeno) {
        std::vector<Violation> violations;
        trig_ = resolve_trigger(sc.trigger, sc.graph, spectral_, &violations);
        if (!violations.empty()) {
            throw ConfigError("invalid trigger configuration: " + violations.front().predicate);
        }
        periodic_ = trig_.detection == DetectionMode::Periodic;

        listen_index_.assign(n_, std::vector<int>(n_, -1));
        for (int i = 0; i < n_; ++i) {
            const auto& nbrs = sc_.graph.listen_set(i);
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                listen_index_[i][nbrs[k]] = static_cast<int>(k);
            }
        }

        trace_.dynamics = sc.dynamics;
        trace_.n_agents = n_;
        init_state();
        refresh_broadcast_caches();
        if (trig_.uses_chi()) chi_ = Eigen::VectorXd::Constant(n_, trig_.chi0);
        last_fire_instant_.assign(n_, -1.0);
    }

    Trace run() {
        record_sample(true);
        process_instant();  // events possible right at t = 0
        if (periodic_) next_sample_ = 1;

        while (!trace_.zeno.flagged) {
            if (!pending_.empty() && pending_.top().time <= t_ + kTimeEps) {
                apply_due_deliveries();
                if (!periodic_) process_instant();
                continue;
            }
            if (periodic_ && sample_time(next_sample_) <= t_ + kTimeEps) {
                process_instant();
                ++next_sample_;
                continue;
            }
            if (grid_time(next_grid_) <= t_ + kTimeEps) {
                record_sample(true);
                ++next_grid_;
                continue;
            }
            if (t_ >= sc_.horizon - kTimeEps) break;

            double stop = std::min(sc_.horizon, grid_time(next_grid_));
            if (periodic_) stop = std::min(stop, sample_time(next_sample_));
            if (!pending_.empty()) stop = std::min(stop, pending_.top().time);
            if (!periodic_) stop = std::min(stop, t_ + sc_.detection_step);
            const double dt_max = stop - t_;

            // Between sampling instants the periodic kinds never check
            // triggers; dense mode evaluates them at the tentative stop.
            Candidate full = probe(dt_max, !periodic_);
            if (!periodic_ && full.any_fire) {
                Candidate chosen = locate_crossing(full, dt_max);
                const double t_event = t_ + chosen.dt;
                commit(chosen, t_event);
                note_crossing_residual(chosen);
                process_instant();
                continue;
            }
            if (!periodic_) note_enforcement(full);
            commit(full, stop);
        }

        if (trace_.t.empty() || trace_.t.back() < t_ - kTimeEps) record_sample(true);
        return std::move(trace_);
    }

private:
    // ---- setup ----

    void init_state() {
        switch (sc_.dynamics) {
            case DynamicsKind::SingleIntegrator: {
                x_ = sc_.x0;
                xhat_ = sc_.x0;
                views_ = consistent_views(sc_.graph, xhat_);
                trace_.state_labels.reserve(n_);
                for (int i = 0; i < n_; ++i) trace_.state_labels.push_back("x_" + idx(i));
                break;
            }
            case DynamicsKind::DoubleIntegrator: {
                di_.r = sc_.r0;
                di_.v = sc_.v0;
                di_.r_hat = sc_.r0;
                di_.v_hat = sc_.v0;
                di_.t_last = Eigen::VectorXd::Zero(n_);
                di_views_ = consistent_di_views(sc_.graph, di_);
                for (int i = 0; i < n_; ++i) trace_.state_labels.push_back("r_" + idx(i));
                for (int i = 0; i < n_; ++i) trace_.state_labels.push_back("v_" + idx(i));
                break;
            }
            case DynamicsKind::Linear: {
                const LinearScenario& ls = *sc_.linear;
                sys_ = {ls.A, ls.B};
                design_ = design_linear_controller(ls.A, ls.B, spectral_.lambda2,
                                                   ls.alpha_margin, 1e-6, ls.c_override);
                pbbtp_ = design_.P * ls.B * ls.B.transpose() * design_.P;
                lin_.x = ls.x0;
                lin_.x_hat = ls.x0;  // everyone broadcasts at t = 0
                lin_.u_hat = linear_control(sc_.graph, lin_, design_.c, design_.F);
                prop_ = LinearPropagator(
                    linear_closed_loop_matrix(sc_.graph, sys_, design_.c, design_.F));
                const int dim = static_cast<int>(ls.A.rows());
                for (int i = 0; i < n_; ++i) {
                    for (int k = 0; k < dim; ++k) {
                        trace_.state_labels.push_back("x_" + idx(i) + "_" + std::to_string(k + 1));
                    }
                }
                break;
            }
        }
    }

    static std::string idx(int i) { return std::to_string(i + 1); }

    double grid_time(long k) const { return static_cast<double>(k) * sc_.output_grid; }
    double sample_time(long k) const { return static_cast<double>(k) * trig_.h; }

    // ---- probing ----

    Candidate probe(double dt, bool with_levels = true) {
        Candidate c;
        c.dt = dt;
        switch (sc_.dynamics) {
            case DynamicsKind::SingleIntegrator:
                c.x = x_ + dt * u_segment();
                break;
            case DynamicsKind::DoubleIntegrator:
                c.di = di_;
                di_propagate(sc_.graph, c.di, di_views_, t_, dt, trig_.gamma);
                break;
            case DynamicsKind::Linear: {
                c.lin = lin_;
                Eigen::VectorXd stacked = pack_linear_state(lin_);
                prop_.advance(stacked, dt);
                unpack_linear_state(stacked, &c.lin);
                break;
            }
        }
        if (trig_.uses_chi()) c.chi = integrate_chi(dt);
        if (with_levels) {
            c.levels = eval_levels(c, t_ + dt);
            for (const auto& lvl : c.levels) c.any_fire = c.any_fire || lvl.fire;
        }
        return c;
    }

    const Eigen::VectorXd& u_segment() {
        if (!u_segment_valid_) {
            u_seg_ = si_control_views(sc_.graph, xhat_, views_);
            u_segment_valid_ = true;
        }
        return u_seg_;
    }

    // chi moves with its own flow between events; the error is affine in
    // time inside a segment, so a few RK4 substeps are exact to far below
    // the bisection tolerance.
    Eigen::VectorXd integrate_chi(double dt) {
        const Eigen::VectorXd& u = u_segment();
        const Eigen::VectorXd e0 = xhat_ - x_;
        Eigen::VectorXd chi = chi_;
        const int substeps = 4;
        const double hsub = dt / substeps;
        for (int step = 0; step < substeps; ++step) {
            const double s0 = step * hsub;
            for (int i = 0; i < n_; ++i) {
                auto deriv = [&](double s, double chi_i) {
                    const double e = e0(i) - s * u(i);
                    if (trig_.kind == TriggerKind::Dynamic) {
                        return eval_dynamic(e, phihat_cache_(i), chi_i, sc_.graph.degree(i),
                                            trig_.sigma(i))
                            .chi_dot;
                    }
                    return eval_dynamic_miet(e, phihat_cache_(i), zhat_cache_(i), chi_i).chi_dot;
                };
                const double k1 = deriv(s0, chi(i));
                const double k2 = deriv(s0 + hsub / 2, chi(i) + hsub / 2 * k1);
                const double k3 = deriv(s0 + hsub / 2, chi(i) + hsub / 2 * k2);
                const double k4 = deriv(s0 + hsub, chi(i) + hsub * k3);
                chi(i) += hsub / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            }
        }
        return chi;
    }

    // zhat and phihat depend only on broadcast values: constant between
    // events, refreshed whenever a broadcast lands.
    void refresh_broadcast_caches() {
        if (sc_.dynamics != DynamicsKind::SingleIntegrator) return;
        zhat_cache_ = Eigen::VectorXd::Zero(n_);
        phihat_cache_ = Eigen::VectorXd::Zero(n_);
        wphihat_cache_ = Eigen::VectorXd::Zero(n_);
        for (int i = 0; i < n_; ++i) {
            const auto& nbrs = sc_.graph.listen_set(i);
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                const double diff = xhat_(i) - views_[i][k];
                zhat_cache_(i) += sc_.graph.weight(i, nbrs[k]) * diff;
                phihat_cache_(i) += diff * diff;
                wphihat_cache_(i) += sc_.graph.weight(i, nbrs[k]) * diff * diff;
            }
        }
        u_segment_valid_ = false;
    }

    std::vector<TriggerLevel> eval_levels(const Candidate& c, double t_abs) {
        std::vector<TriggerLevel> levels(n_);
        switch (trig_.kind) {
            case TriggerKind::Centralized: {
                const Eigen::VectorXd e = xhat_ - c.x;
                const TriggerLevel lvl =
                    eval_centralized(e, lap_ * c.x, spectral_.laplacian_norm, trig_.sigma(0));
                std::fill(levels.begin(), levels.end(), lvl);
                break;
            }
            case TriggerKind::DecentralizedState: {
                for (int i = 0; i < n_; ++i) {
                    double z = 0.0;
                    for (int j : sc_.graph.listen_set(i)) {
                        z += sc_.graph.weight(i, j) * (c.x(i) - c.x(j));
                    }
                    levels[i] = eval_decentralized_state(xhat_(i) - c.x(i), z,
                                                         sc_.graph.degree(i), trig_.sigma(i),
                                                         trig_.a);
                }
                break;
            }
            case TriggerKind::BroadcastZhat:
                for (int i = 0; i < n_; ++i) {
                    levels[i] = eval_broadcast_zhat(xhat_(i) - c.x(i), zhat_cache_(i),
                                                    sc_.graph.degree(i), trig_.sigma(i), trig_.a);
                }
                break;
            case TriggerKind::BroadcastPhi:
                for (int i = 0; i < n_; ++i) {
                    levels[i] = eval_broadcast_phi(xhat_(i) - c.x(i), phihat_cache_(i),
                                                   sc_.graph.degree(i), trig_.sigma(i));
                }
                break;
            case TriggerKind::PeriodicZhat:
                for (int i = 0; i < n_; ++i) {
                    levels[i] =
                        eval_periodic_zhat(xhat_(i) - c.x(i), zhat_cache_(i), trig_.sigma(i));
                }
                break;
            case TriggerKind::PeriodicPhi:
                for (int i = 0; i < n_; ++i) {
                    levels[i] = eval_periodic_phi(xhat_(i) - c.x(i), phihat_cache_(i),
                                                  sc_.graph.degree(i), trig_.sigma(i));
                }
                break;
            case TriggerKind::TimeDependent:
                for (int i = 0; i < n_; ++i) {
                    levels[i] = eval_time_dependent(xhat_(i) - c.x(i), t_abs, trig_.c0, trig_.c1,
                                                    trig_.alpha);
                }
                break;
            case TriggerKind::Dynamic:
                for (int i = 0; i < n_; ++i) {
                    levels[i] = eval_dynamic(xhat_(i) - c.x(i), phihat_cache_(i), c.chi(i),
                                             sc_.graph.degree(i), trig_.sigma(i))
                                    .level;
                }
                break;
            case TriggerKind::DynamicMiet:
                for (int i = 0; i < n_; ++i) {
                    levels[i] = eval_dynamic_miet(xhat_(i) - c.x(i), phihat_cache_(i),
                                                  zhat_cache_(i), c.chi(i))
                                    .level;
                }
                break;
            case TriggerKind::Directed:
                for (int i = 0; i < n_; ++i) {
                    levels[i] = eval_directed(xhat_(i) - c.x(i), wphihat_cache_(i),
                                              sc_.graph.degree(i), trig_.sigma(i));
                }
                break;
            case TriggerKind::DiTime: {
                Eigen::VectorXd er, ev;
                di_errors(c.di, t_abs, &er, &ev);
                for (int i = 0; i < n_; ++i) {
                    levels[i] = eval_di_time(er(i), ev(i), trig_.gamma, t_abs, trig_.c0,
                                             trig_.c1, trig_.alpha);
                }
                break;
            }
            case TriggerKind::LinearState: {
                const Eigen::MatrixXd zhat = linear_zhat(sc_.graph, c.lin.x_hat);
                for (int i = 0; i < n_; ++i) {
                    const Eigen::VectorXd e = c.lin.x_hat.col(i) - c.lin.x.col(i);
                    levels[i] = eval_linear_state(e, zhat.col(i), pbbtp_, sc_.graph.degree(i),
                                                  n_, trig_.sigma(i), trig_.c1_lin, trig_.c2_lin,
                                                  trig_.b(i));
                }
                break;
            }
            case TriggerKind::LinearTime:
                for (int i = 0; i < n_; ++i) {
                    const double e = (c.lin.x_hat.col(i) - c.lin.x.col(i)).norm();
                    levels[i] = eval_linear_time(e, t_abs, trig_.c1, trig_.alpha);
                }
                break;
        }
        return levels;
    }

    Candidate locate_crossing(Candidate full, double dt_max) {
        // First fire may be pending immediately after the last instant.
        const double floor_dt = std::min(kBisectTol, dt_max);
        Candidate tiny = probe(floor_dt);
        if (tiny.any_fire) return tiny;

        double lo = floor_dt;
        double hi = dt_max;
        Candidate chosen = std::move(full);
        while (hi - lo > kBisectTol) {
            const double mid = 0.5 * (lo + hi);
            Candidate c = probe(mid);
            if (c.any_fire) {
                hi = mid;
                chosen = std::move(c);
            } else {
                lo = mid;
            }
        }
        if (chosen.dt != hi) chosen = probe(hi);
        return chosen;
    }

    // ---- committing ----

    void commit(const Candidate& c, double t_target) {
        switch (sc_.dynamics) {
            case DynamicsKind::SingleIntegrator:
                x_ = c.x;
                if (x_.cwiseAbs().maxCoeff() > kDivergenceGuard) {
                    throw NumericsError("state divergence: |x| > 1e9");
                }
                break;
            case DynamicsKind::DoubleIntegrator:
                di_ = c.di;
                if (std::max(di_.r.cwiseAbs().maxCoeff(), di_.v.cwiseAbs().maxCoeff()) >
                    kDivergenceGuard) {
                    throw NumericsError("state divergence: |(r,v)| > 1e9");
                }
                break;
            case DynamicsKind::Linear:
                lin_ = c.lin;
                if (lin_.x.cwiseAbs().maxCoeff() > kDivergenceGuard) {
                    throw NumericsError("state divergence: |x| > 1e9");
                }
                break;
        }
        if (trig_.uses_chi()) chi_ = c.chi;
        t_ = t_target;
    }

    void note_enforcement(const Candidate& c) {
        for (const auto& lvl : c.levels) {
            trace_.max_enforcement_overshoot = std::max(
                trace_.max_enforcement_overshoot, lvl.error_measure - lvl.threshold);
        }
    }

    void note_crossing_residual(const Candidate& c) {
        for (const auto& lvl : c.levels) {
            if (!lvl.fire) continue;
            const double residual =
                std::abs(lvl.error_measure - lvl.threshold) / (1.0 + lvl.threshold);
            trace_.max_crossing_residual = std::max(trace_.max_crossing_residual, residual);
        }
    }

    // ---- events ----

    Candidate live_candidate() {
        Candidate c;
        c.dt = 0.0;
        switch (sc_.dynamics) {
            case DynamicsKind::SingleIntegrator: c.x = x_; break;
            case DynamicsKind::DoubleIntegrator: c.di = di_; break;
            case DynamicsKind::Linear: c.lin = lin_; break;
        }
        if (trig_.uses_chi()) c.chi = chi_;
        return c;
    }

    void process_instant() {
        bool fired_any = false;
        while (!trace_.zeno.flagged) {
            Candidate now = live_candidate();
            const auto levels = eval_levels(now, t_);
            std::vector<int> to_fire;
            for (int i = 0; i < n_; ++i) {
                if (levels[i].fire && last_fire_instant_[i] != t_) to_fire.push_back(i);
            }
            if (to_fire.empty()) break;
            if (trig_.kind == TriggerKind::Centralized) {
                to_fire.clear();
                for (int i = 0; i < n_; ++i) {
                    if (last_fire_instant_[i] != t_) to_fire.push_back(i);
                }
                if (to_fire.empty()) break;
            }
            for (int i : to_fire) {
                apply_broadcast(i);
                if (trig_.kind == TriggerKind::DynamicMiet) chi_(i) = 1.0;
                last_fire_instant_[i] = t_;
                trace_.events.push_back({i, t_, "broadcast"});
                if (auto report = monitor_.observe(i, t_)) {
                    trace_.zeno = *report;
                }
            }
            if (sc_.dynamics == DynamicsKind::Linear) {
                // Control inputs recomputed once after the whole batch.
                const Eigen::MatrixXd u = linear_control(sc_.graph, lin_, design_.c, design_.F);
                for (int i : to_fire) lin_.u_hat.col(i) = u.col(i);
            }
            refresh_broadcast_caches();
            fired_any = true;
        }
        if (fired_any) record_sample(false);
    }

    void apply_broadcast(int i) {
        switch (sc_.dynamics) {
            case DynamicsKind::SingleIntegrator: {
                const double payload = sc_.channel.quantizer.apply(x_(i));
                xhat_(i) = payload;
                deliver(i, payload, 0.0);
                break;
            }
            case DynamicsKind::DoubleIntegrator: {
                const double pr = sc_.channel.quantizer.apply(di_.r(i));
                const double pv = sc_.channel.quantizer.apply(di_.v(i));
                di_.r_hat(i) = pr;
                di_.v_hat(i) = pv;
                di_.t_last(i) = t_;
                deliver(i, pr, pv);
                break;
            }
            case DynamicsKind::Linear:
                lin_.x_hat.col(i) = lin_.x.col(i);
                break;
        }
    }

    void deliver(int sender, double a, double b) {
        for (int r : sc_.graph.recipients(sender)) {
            if (sc_.channel.drop_prob > 0.0 && bernoulli(rng_, sc_.channel.drop_prob)) continue;
            if (sc_.channel.delay > 0.0) {
                pending_.push({t_ + sc_.channel.delay, seq_++, r, sender, a, b});
            } else {
                apply_view(r, sender, a, b);
            }
        }
    }

    void apply_view(int recipient, int sender, double a, double b) {
        const int k = listen_index_[recipient][sender];
        if (k < 0) return;
        if (sc_.dynamics == DynamicsKind::SingleIntegrator) {
            views_[recipient][k] = a;
        } else {
            di_views_.r[recipient][k] = a;
            di_views_.v[recipient][k] = b;
        }
    }

    void apply_due_deliveries() {
        while (!pending_.empty() && pending_.top().time <= t_ + kTimeEps) {
            const Delivery d = pending_.top();
            pending_.pop();
            apply_view(d.recipient, d.sender, d.a, d.b);
        }
        refresh_broadcast_caches();
    }

    // ---- recording ----

    Eigen::VectorXd state_vector() const {
        switch (sc_.dynamics) {
            case DynamicsKind::SingleIntegrator: return x_;
            case DynamicsKind::DoubleIntegrator: {
                Eigen::VectorXd s(2 * n_);
                s << di_.r, di_.v;
                return s;
            }
            case DynamicsKind::Linear:
                return Eigen::Map<const Eigen::VectorXd>(lin_.x.data(), lin_.x.size());
        }
        return {};
    }

    double lyapunov() const {
        switch (sc_.dynamics) {
            case DynamicsKind::SingleIntegrator: return 0.5 * x_.dot(lap_ * x_);
            case DynamicsKind::DoubleIntegrator:
                return 0.5 * (di_.r.dot(lap_ * di_.r) + di_.v.dot(lap_ * di_.v));
            case DynamicsKind::Linear: {
                double v = 0.0;
                for (int k = 0; k < lin_.x.rows(); ++k) {
                    const Eigen::VectorXd row = lin_.x.row(k).transpose();
                    v += 0.5 * row.dot(lap_ * row);
                }
                return v;
            }
        }
        return 0.0;
    }

    double disagreement() const {
        switch (sc_.dynamics) {
            case DynamicsKind::SingleIntegrator:
                return (x_.array() - x_.mean()).matrix().norm();
            case DynamicsKind::DoubleIntegrator: {
                const double dr = (di_.r.array() - di_.r.mean()).matrix().squaredNorm();
                const double dv = (di_.v.array() - di_.v.mean()).matrix().squaredNorm();
                return std::sqrt(dr + dv);
            }
            case DynamicsKind::Linear: {
                const Eigen::VectorXd mean = lin_.x.rowwise().mean();
                return (lin_.x.colwise() - mean).norm();
            }
        }
        return 0.0;
    }

    void record_sample(bool grid) {
        if (!trace_.t.empty() && trace_.t.back() == t_) {
            if (grid) trace_.grid_sample.back() = 1;
            // State may have changed at this instant (events): refresh the row.
            trace_.state.back() = state_vector();
            trace_.lyapunov.back() = lyapunov();
            trace_.disagreement.back() = disagreement();
            return;
        }
        trace_.t.push_back(t_);
        trace_.state.push_back(state_vector());
        trace_.lyapunov.push_back(lyapunov());
        trace_.disagreement.push_back(disagreement());
        trace_.grid_sample.push_back(grid ? 1 : 0);
    }

    // ---- members ----

    Scenario sc_;
    int n_;
    Eigen::MatrixXd lap_;
    SpectralSummary spectral_;
    ResolvedTrigger trig_;
    bool periodic_ = false;

    double t_ = 0.0;
    Eigen::VectorXd x_, xhat_;
    ScalarViews views_;
    DoubleIntegratorState di_;
    DiViews di_views_;
    LinearSystem sys_;
    LinearDesign design_;
    Eigen::MatrixXd pbbtp_;
    LinearAgentsState lin_;
    LinearPropagator prop_;
    Eigen::VectorXd chi_;

    Eigen::VectorXd u_seg_;
    bool u_segment_valid_ = false;
    Eigen::VectorXd zhat_cache_, phihat_cache_, wphihat_cache_;

    std::vector<std::vector<int>> listen_index_;
    std::vector<double> last_fire_instant_;

    std::mt19937_64 rng_;
    std::priority_queue<Delivery, std::vector<Delivery>, DeliveryAfter> pending_;
    std::uint64_t seq_ = 0;

    ZenoMonitor monitor_;
    Trace trace_;
    long next_grid_ = 1;
    long next_sample_ = 0;
};

}  // namespace

Trace run_scenario(const Scenario& sc) {
    const ValidationReport report = validate_scenario(sc);
    if (!report.ok()) {
        throw ConfigError("invalid scenario: " + report.violations.front().predicate);
    }
    Runner runner(sc);
    return runner.run();
}

Eigen::MatrixXd reference_trajectory(const Graph& g, const Eigen::VectorXd& x0,
                                     const std::vector<double>& t_grid) {
    if (!g.undirected()) throw ConfigError("reference trajectory needs an undirected graph");
    const Eigen::MatrixXd lap = g.laplacian();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
    if (eig.info() != Eigen::Success) throw NumericsError("eigensolve failed");
    const Eigen::MatrixXd& basis = eig.eigenvectors();
    const Eigen::VectorXd coords = basis.transpose() * x0;

    Eigen::MatrixXd out(static_cast<Eigen::Index>(t_grid.size()), g.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const Eigen::VectorXd decay =
            (-eig.eigenvalues().array() * t_grid[k]).exp() * coords.array();
        out.row(static_cast<Eigen::Index>(k)) = (basis * decay).transpose();
    }
    return out;
}

}  // namespace etcsim
