#include "rkbs/learn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "rkbs/duality.hpp"
#include "rkbs/errors.hpp"

namespace rkbs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Column j holds Phi1(x_j).
Eigen::MatrixXd feature_columns(const RkbsPair& pair, const std::vector<double>& x) {
    Eigen::MatrixXd f(pair.space1.dim, static_cast<Eigen::Index>(x.size()));
    for (Eigen::Index j = 0; j < f.cols(); ++j) f.col(j) = feature(pair.map1, x[static_cast<size_t>(j)]);
    return f;
}

// Row j holds the weighted features, so (design * v)_j = f_v(x_j).
Eigen::MatrixXd design_matrix(const RkbsPair& pair, const Eigen::MatrixXd& cols) {
    return (cols.array().colwise() * pair.space2.weights.array()).matrix().transpose();
}

void require_smooth_w2(const RkbsPair& pair, const char* who) {
    if (!pair.space2.spec.smooth())
        throw ConfigError(std::string(who) + ": W2 spec " + pair.space2.spec.describe() + " is not smooth");
}

SolveReport zero_report(const RkbsPair& pair, int m, std::string message) {
    SolveReport rep;
    rep.coef = Vec::Zero(pair.space2.dim);
    rep.representer_coeffs = Vec::Zero(m);
    rep.converged = true;
    rep.message = std::move(message);
    return rep;
}

}  // namespace

SampleSet::SampleSet(std::vector<double> x_in, Vec t_in) : x(std::move(x_in)), t(std::move(t_in)) {
    if (x.empty()) throw ConfigError("sample set: need at least one sample");
    if (static_cast<Eigen::Index>(x.size()) != t.size())
        throw ConfigError("sample set: points and targets disagree in length");
    for (size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(t[static_cast<Eigen::Index>(i)]))
            throw ConfigError("sample set: entries must be finite");
        for (size_t j = i + 1; j < x.size(); ++j)
            if (std::abs(x[i] - x[j]) <= 1e-12)
                throw ConfigError("sample set: points " + std::to_string(i) + " and " + std::to_string(j) +
                                  " are not pairwise distinct");
    }
}

namespace {

// One damped-Newton run on the representer system R(c) = A D(F c) - t = 0.
struct NewtonRun {
    Vec c;
    Vec v;
    double resid = kInf;
    int iters = 0;
    bool ok = false;
};

NewtonRun newton_from(const RkbsPair& pair, const Eigen::MatrixXd& f_cols, const Eigen::MatrixXd& design,
                      const Vec& t, const Vec& c0, double tol) {
    const auto m = t.size();
    // Evaluates R(c); duality-map failures (bracketing breakdown, overflow)
    // just disqualify the trial point.
    auto residual = [&](const Vec& c, Vec& out, Vec& v_out) -> bool {
        Vec v;
        try {
            v = duality_map(pair.space1, Vec(f_cols * c));
        } catch (const std::exception&) {
            return false;
        }
        if (!v.allFinite()) return false;
        out = design * v - t;
        v_out = std::move(v);
        return out.allFinite();
    };

    NewtonRun run;
    Vec c = c0, r, v;
    if (!residual(c, r, v)) return run;
    double rn = r.lpNorm<Eigen::Infinity>();

    for (int it = 0; it < 80 && rn > tol; ++it) {
        Eigen::MatrixXd jac(m, m);
        bool jac_ok = true;
        for (Eigen::Index k = 0; k < m; ++k) {
            const double h = 1e-7 * (1.0 + std::abs(c[k]));
            Vec ck = c;
            ck[k] += h;
            Vec rk, vk;
            if (!residual(ck, rk, vk)) {
                jac_ok = false;
                break;
            }
            jac.col(k) = (rk - r) / h;
        }
        if (!jac_ok) break;
        Vec step = jac.colPivHouseholderQr().solve(-r);
        if (!step.allFinite()) break;

        double s = 1.0;
        bool moved = false;
        for (int halve = 0; halve <= 60; ++halve, s *= 0.5) {
            Vec ct = c + s * step, rt, vt;
            if (!residual(ct, rt, vt)) continue;
            const double rtn = rt.lpNorm<Eigen::Infinity>();
            if (rtn < rn) {
                c = std::move(ct);
                r = std::move(rt);
                v = std::move(vt);
                rn = rtn;
                moved = true;
                break;
            }
        }
        run.iters = it + 1;
        if (!moved) break;
    }
    run.c = c;
    run.v = v;
    run.resid = rn;
    run.ok = rn <= tol;
    return run;
}

SolveReport interpolate_full_rank(const RkbsPair& pair, const std::vector<double>& x, const Vec& t, double tol,
                                  uint64_t seed) {
    const auto m = t.size();
    const Eigen::MatrixXd f_cols = feature_columns(pair, x);
    const Eigen::MatrixXd design = design_matrix(pair, f_cols);

    // Gram-solve initialization: exact for p = 2, a sensible scale otherwise.
    const Eigen::MatrixXd gram = design * f_cols;
    Vec c0 = gram.colPivHouseholderQr().solve(t);
    if (!c0.allFinite()) c0 = Vec::Zero(m);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double spread_scale = 1.0 + c0.lpNorm<Eigen::Infinity>();

    std::vector<NewtonRun> converged;
    double best_resid = kInf;
    int iters_total = 0;
    for (int start = 0; start < 5; ++start) {
        Vec cs = c0;
        if (start > 0)
            for (Eigen::Index k = 0; k < m; ++k) cs[k] += spread_scale * gauss(rng);
        NewtonRun run = newton_from(pair, f_cols, design, t, cs, tol);
        iters_total += run.iters;
        best_resid = std::min(best_resid, run.resid);
        if (run.ok) converged.push_back(std::move(run));
    }
    if (converged.empty()) {
        std::ostringstream msg;
        msg << "min_norm_interpolate: Newton failed from all 5 starts; best residual " << best_resid;
        throw SolverError(msg.str());
    }

    double spread = 0.0;
    for (size_t a = 0; a < converged.size(); ++a)
        for (size_t b = a + 1; b < converged.size(); ++b)
            spread = std::max(spread, (converged[a].v - converged[b].v).lpNorm<Eigen::Infinity>());
    const NewtonRun* winner = &converged[0];
    for (const auto& run : converged)
        if (run.resid < winner->resid) winner = &run;

    SolveReport rep;
    rep.coef = winner->v;
    rep.representer_coeffs = winner->c;
    rep.norm_value = norm(pair.space2, winner->v);
    rep.objective = rep.norm_value;
    rep.constraint_residual = winner->resid;
    rep.iterations = iters_total;
    rep.converged = true;
    rep.multistart_spread = spread;
    std::ostringstream msg;
    msg << converged.size() << "/5 starts converged";
    rep.message = msg.str();
    return rep;
}

}  // namespace

SolveReport min_norm_interpolate(const RkbsPair& pair, const SampleSet& samples, double tol, uint64_t seed) {
    require_smooth_w2(pair, "min_norm_interpolate");
    const int m = samples.size();
    const Eigen::MatrixXd f_cols = feature_columns(pair, samples.x);
    const Eigen::MatrixXd design = design_matrix(pair, f_cols);

    if (samples.t.lpNorm<Eigen::Infinity>() == 0.0)
        return zero_report(pair, m, "zero targets: the zero function interpolates with minimal norm");

    std::vector<Vec> probes;
    for (int j = 0; j < m; ++j) probes.push_back(f_cols.col(j));
    const int rank = independence_rank(probes, 1e-10);
    if (rank == m) {
        SolveReport rep = interpolate_full_rank(pair, samples.x, samples.t, tol, seed);
        rep.representer_residual = representer_residual(pair, rep.coef, samples);
        return rep;
    }

    // Dependent constraints: an interpolant exists only if the targets respect
    // the same dependencies, in which case a maximal independent subset pins
    // down the whole system.
    const Vec v_ls = design.colPivHouseholderQr().solve(samples.t);
    const double feasibility = (design * v_ls - samples.t).lpNorm<Eigen::Infinity>();
    if (feasibility > 1e-8 * (1.0 + samples.t.lpNorm<Eigen::Infinity>())) {
        std::ostringstream msg;
        msg << "min_norm_interpolate: features have rank " << rank << " < " << m
            << " and targets are inconsistent (defect " << feasibility << ")";
        throw SolverError(msg.str());
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.transpose());
    qr.setThreshold(1e-10);
    const auto& perm = qr.colsPermutation().indices();
    std::vector<double> x_sub;
    std::vector<int> picked;
    Vec t_sub(rank);
    for (int i = 0; i < rank; ++i) {
        picked.push_back(perm[i]);
        x_sub.push_back(samples.x[static_cast<size_t>(perm[i])]);
        t_sub[i] = samples.t[perm[i]];
    }
    SolveReport rep = interpolate_full_rank(pair, x_sub, t_sub, tol, seed);

    Vec c_full = Vec::Zero(m);
    for (int i = 0; i < rank; ++i) c_full[picked[static_cast<size_t>(i)]] = rep.representer_coeffs[i];
    rep.representer_coeffs = c_full;
    rep.constraint_residual = (design * rep.coef - samples.t).lpNorm<Eigen::Infinity>();
    rep.representer_residual = representer_residual(pair, rep.coef, samples);
    rep.subspace_solution = true;
    rep.message += "; rank-deficient features (" + std::to_string(rank) + "/" + std::to_string(m) +
                   "), solved on a maximal independent constraint subset";
    return rep;
}

namespace {

// Outcome of a first-order descent run. A line-search stall is the terminal
// state double precision affords near a minimum, so callers treat it as
// finished; only an exhausted iteration cap signals real non-convergence.
struct DescentState {
    Vec v;
    double value = kInf;
    double grad_inf = kInf;
    int iters = 0;
    bool hit_gtol = false;
    bool stalled = false;

    bool finished() const { return hit_gtol || stalled; }
};

// Objective decreases at or below this scale are indistinguishable from the
// round-off noise of evaluating the objective itself; a run of them means the
// descent has reached the floor double precision affords.
inline bool progress_below_noise(double drop, double value) {
    return drop <= 4e-15 * (1.0 + std::abs(value));
}
constexpr int kStallRun = 8;

// Barzilai-Borwein gradient descent with an Armijo backtracking guard.
template <typename ObjFn, typename GradFn>
DescentState bb_descent(const ObjFn& obj, const GradFn& grad, Vec v0, double gtol, int max_iter) {
    DescentState st;
    st.v = std::move(v0);
    st.value = obj(st.v);
    Vec g = grad(st.v);
    Vec v_prev, g_prev;
    int noise_steps = 0;

    for (int it = 0; it < max_iter; ++it) {
        st.grad_inf = g.lpNorm<Eigen::Infinity>();
        if (st.grad_inf <= gtol) {
            st.hit_gtol = true;
            break;
        }
        double alpha = 1.0 / (1.0 + g.norm());
        if (it > 0) {
            const Vec s = st.v - v_prev, y = g - g_prev;
            const double sy = s.dot(y);
            if (sy > 1e-300) alpha = std::clamp(s.dot(s) / sy, 1e-14, 1e10);
        }
        bool moved = false;
        const double g2 = g.squaredNorm();
        double a = alpha;
        for (int bt = 0; bt <= 60; ++bt, a *= 0.5) {
            Vec vt = st.v - a * g;
            const double ft = obj(vt);
            if (std::isfinite(ft) && ft <= st.value - 1e-4 * a * g2) {
                noise_steps = progress_below_noise(st.value - ft, ft) ? noise_steps + 1 : 0;
                v_prev = std::move(st.v);
                g_prev = std::move(g);
                st.v = std::move(vt);
                st.value = ft;
                g = grad(st.v);
                moved = true;
                break;
            }
        }
        st.iters = it + 1;
        if (!moved || noise_steps >= kStallRun) {
            st.stalled = true;
            break;
        }
    }
    st.grad_inf = g.lpNorm<Eigen::Infinity>();
    return st;
}

}  // namespace

SolveReport min_norm_oracle(const RkbsPair& pair, const SampleSet& samples, double tol) {
    require_smooth_w2(pair, "min_norm_oracle");
    const int m = samples.size();
    if (pair.space2.dim > 200 || m > 10)
        throw ConfigError("min_norm_oracle: brute-force scale is N <= 200, m <= 10");
    if (samples.t.lpNorm<Eigen::Infinity>() == 0.0)
        return zero_report(pair, m, "zero targets: zero function");

    const Eigen::MatrixXd f_cols = feature_columns(pair, samples.x);
    const Eigen::MatrixXd design = design_matrix(pair, f_cols);
    const Vec& w = pair.space2.weights;

    Vec v = design.colPivHouseholderQr().solve(samples.t);
    if (!v.allFinite()) v = Vec::Zero(pair.space2.dim);

    DescentState last;
    int iters_total = 0;
    for (double rho = 1e2; rho <= 1e8 + 1.0; rho *= 10.0) {
        auto obj = [&](const Vec& z) -> double {
            try {
                return norm(pair.space2, z) + rho * (design * z - samples.t).squaredNorm();
            } catch (const std::exception&) {
                return kInf;
            }
        };
        auto grad = [&](const Vec& z) -> Vec {
            const Vec r = design * z - samples.t;
            Vec g = 2.0 * rho * (design.transpose() * r);
            g += (w.array() * gateaux_derivative(pair.space2, z).array()).matrix();
            return g;
        };
        last = bb_descent(obj, grad, std::move(v), std::max(tol, 1e-9) * (1.0 + rho), 6000);
        v = last.v;
        iters_total += last.iters;
    }
    if (!last.finished()) {
        std::ostringstream msg;
        msg << "min_norm_oracle: iteration cap at rho=1e8, gradient " << last.grad_inf;
        throw SolverError(msg.str());
    }

    SolveReport rep;
    rep.coef = v;
    rep.norm_value = norm(pair.space2, v);
    rep.objective = rep.norm_value;
    rep.constraint_residual = (design * v - samples.t).lpNorm<Eigen::Infinity>();
    rep.representer_residual = representer_residual(pair, v, samples);
    rep.iterations = iters_total;
    rep.converged = true;
    std::ostringstream msg;
    msg << "penalty continuation to rho=1e8, final gradient " << last.grad_inf;
    rep.message = msg.str();
    return rep;
}

Loss Loss::square() {
    return Loss{[](const Vec& r) { return r.squaredNorm(); }, [](const Vec& r) { return Vec(2.0 * r); }};
}

namespace {

// Limited-memory BFGS with Armijo backtracking; history 8.
template <typename ObjFn, typename GradFn>
DescentState lbfgs(const ObjFn& obj, const GradFn& grad, Vec v0, double gtol, int max_iter) {
    DescentState st;
    st.v = std::move(v0);
    st.value = obj(st.v);
    Vec g = grad(st.v);
    std::vector<Vec> s_hist, y_hist;
    int noise_steps = 0;

    for (int it = 0; it < max_iter; ++it) {
        st.grad_inf = g.lpNorm<Eigen::Infinity>();
        if (st.grad_inf <= gtol) {
            st.hit_gtol = true;
            break;
        }
        // Two-loop recursion.
        Vec q = g;
        std::vector<double> a(s_hist.size());
        for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
            const auto ui = static_cast<size_t>(i);
            const double rho_i = 1.0 / y_hist[ui].dot(s_hist[ui]);
            a[ui] = rho_i * s_hist[ui].dot(q);
            q -= a[ui] * y_hist[ui];
        }
        if (!s_hist.empty()) q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
        for (size_t i = 0; i < s_hist.size(); ++i) {
            const double rho_i = 1.0 / y_hist[i].dot(s_hist[i]);
            q += (a[i] - rho_i * y_hist[i].dot(q)) * s_hist[i];
        }
        Vec d = -q;
        double gd = g.dot(d);
        if (!(gd < 0.0)) {
            d = -g;
            gd = -g.squaredNorm();
            s_hist.clear();
            y_hist.clear();
        }

        double step = 1.0;
        bool moved = false;
        for (int bt = 0; bt <= 60; ++bt, step *= 0.5) {
            Vec vt = st.v + step * d;
            const double ft = obj(vt);
            if (std::isfinite(ft) && ft <= st.value + 1e-4 * step * gd) {
                Vec g_new = grad(vt);
                Vec s = vt - st.v, y = g_new - g;
                if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
                    s_hist.push_back(std::move(s));
                    y_hist.push_back(std::move(y));
                    if (s_hist.size() > 8) {
                        s_hist.erase(s_hist.begin());
                        y_hist.erase(y_hist.begin());
                    }
                }
                noise_steps = progress_below_noise(st.value - ft, ft) ? noise_steps + 1 : 0;
                st.v = std::move(vt);
                st.value = ft;
                g = std::move(g_new);
                moved = true;
                break;
            }
        }
        st.iters = it + 1;
        if (!moved || noise_steps >= kStallRun) {
            st.stalled = true;
            break;
        }
    }
    st.grad_inf = g.lpNorm<Eigen::Infinity>();
    return st;
}

}  // namespace

SolveReport regnet(const RkbsPair& pair, const SampleSet& samples, double lambda, const Loss& loss, RegKind reg,
                   double tol, uint64_t seed, const Vec* warm_start) {
    require_smooth_w2(pair, "regnet");
    if (!(lambda > 0.0)) throw ConfigError("regnet: lambda must be positive");
    const Eigen::MatrixXd f_cols = feature_columns(pair, samples.x);
    const Eigen::MatrixXd design = design_matrix(pair, f_cols);
    const Vec& w = pair.space2.weights;
    const int n = pair.space2.dim;

    // Identity regularizer: v = 0 is optimal exactly when the loss gradient at
    // zero fits inside lambda times the dual unit ball.
    if (reg == RegKind::Identity) {
        const Vec g0 = design.transpose() * loss.grad(Vec(-samples.t));
        const FeatureSpace dual_space(n, w, pair.space2.spec.dual());
        if (norm(dual_space, (g0.array() / w.array()).matrix()) <= lambda * (1.0 + 1e-12)) {
            SolveReport rep = zero_report(pair, samples.size(), "zero solution: loss gradient within the dual ball");
            rep.objective = loss.value(Vec(-samples.t));
            rep.constraint_residual = samples.t.lpNorm<Eigen::Infinity>();
            return rep;
        }
    }

    auto obj = [&](const Vec& z) -> double {
        try {
            const double nz = norm(pair.space2, z);
            return loss.value(Vec(design * z - samples.t)) + lambda * (reg == RegKind::Square ? nz * nz : nz);
        } catch (const std::exception&) {
            return kInf;
        }
    };
    auto grad = [&](const Vec& z) -> Vec {
        Vec g = design.transpose() * loss.grad(Vec(design * z - samples.t));
        if (reg == RegKind::Square) {
            g += lambda * 2.0 * (w.array() * duality_map(pair.space2, z).array()).matrix();
        } else if (z.lpNorm<Eigen::Infinity>() > 0.0) {
            g += lambda * (w.array() * gateaux_derivative(pair.space2, z).array()).matrix();
        }
        return g;
    };

    Vec v_ls = design.colPivHouseholderQr().solve(samples.t);
    if (!v_ls.allFinite()) v_ls = Vec::Zero(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v_rand(n);
    for (int i = 0; i < n; ++i) v_rand[i] = 0.5 * (1.0 + v_ls.lpNorm<Eigen::Infinity>()) * gauss(rng);
    Vec v_near_zero = Vec::Zero(n);
    if (reg == RegKind::Identity)
        for (int i = 0; i < n; ++i) v_near_zero[i] = 1e-6 * gauss(rng);

    std::vector<Vec> starts;
    starts.push_back(warm_start != nullptr ? *warm_start : v_ls);
    starts.push_back(std::move(v_near_zero));
    starts.push_back(std::move(v_rand));

    const double gtol = tol * (1.0 + lambda);
    std::vector<DescentState> finished;
    int iters_total = 0;
    for (const Vec& s0 : starts) {
        DescentState st = lbfgs(obj, grad, s0, gtol, 3000);
        iters_total += st.iters;
        if (st.finished()) finished.push_back(std::move(st));
    }
    if (finished.empty()) throw SolverError("regnet: iteration cap exhausted on every start");

    const DescentState* winner = &finished[0];
    for (const auto& st : finished)
        if (st.value < winner->value) winner = &st;
    double spread = 0.0;
    for (size_t a = 0; a < finished.size(); ++a)
        for (size_t b = a + 1; b < finished.size(); ++b)
            spread = std::max(spread, (finished[a].v - finished[b].v).lpNorm<Eigen::Infinity>());

    SolveReport rep;
    rep.coef = winner->v;
    rep.objective = winner->value;
    rep.norm_value = norm(pair.space2, winner->v);
    rep.constraint_residual = (design * winner->v - samples.t).lpNorm<Eigen::Infinity>();
    rep.representer_residual = representer_residual(pair, winner->v, samples);
    rep.iterations = iters_total;
    rep.converged = true;
    rep.multistart_spread = spread;
    std::ostringstream msg;
    msg << finished.size() << "/3 starts stationary, final gradient " << winner->grad_inf;
    rep.message = msg.str();
    return rep;
}

double representer_residual(const RkbsPair& pair, const Vec& v, const SampleSet& samples) {
    if (v.size() != pair.space2.dim) throw ConfigError("representer_residual: coefficient dim != W2 dim");
    if (v.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
    const Vec g = gateaux_derivative(pair.space2, v);
    const double gn = g.norm();
    if (gn == 0.0) return 0.0;
    const Eigen::MatrixXd f_cols = feature_columns(pair, samples.x);
    const Vec fit = f_cols * f_cols.colPivHouseholderQr().solve(g);
    return (g - fit).norm() / gn;
}

SolveReport l1_regnet(const RkbsPair& pair, const SampleSet& samples, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("l1_regnet: lambda must be positive");
    if (pair.space2.spec.kind != NormKind::Lp || pair.space2.spec.p != 1.0)
        throw ConfigError("l1_regnet: W2 must carry the l1 norm, got " + pair.space2.spec.describe());
    const Eigen::MatrixXd f_cols = feature_columns(pair, samples.x);
    const Eigen::MatrixXd design = design_matrix(pair, f_cols);
    const Vec& w = pair.space2.weights;
    const int n = pair.space2.dim;
    const auto m = samples.t.size();

    // Lipschitz constant of the loss gradient: 2 sigma_max(design)^2, from
    // power iteration on the m-by-m outer product.
    const Eigen::MatrixXd outer = design * design.transpose();
    Vec pw = Vec::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
    double sigma_sq = 0.0;
    for (int it = 0; it < 500; ++it) {
        Vec next = outer * pw;
        const double nn = next.norm();
        if (nn == 0.0) break;
        next /= nn;
        const double estimate = next.dot(outer * next);
        const bool settled = it > 2 && std::abs(estimate - sigma_sq) <= 1e-13 * std::max(1.0, estimate);
        sigma_sq = estimate;
        pw = std::move(next);
        if (settled) break;
    }
    const double lip = 2.0 * sigma_sq * (1.0 + 1e-9);
    if (!(lip > 0.0)) throw SolverError("l1_regnet: degenerate design operator");
    const double step = 1.0 / lip;

    auto objective = [&](const Vec& z) {
        return (design * z - samples.t).squaredNorm() + lambda * (w.array() * z.array().abs()).sum();
    };
    // Proximal gradient with Nesterov extrapolation; a function-value restart
    // drops the momentum whenever it would push the objective up, so the
    // accepted sequence stays monotone and exact zeros still come from the
    // soft threshold.
    auto ista = [&](Vec v, int& iters, bool& converged) {
        double value = objective(v);
        converged = false;
        Vec y = v;
        double tk = 1.0;
        bool momentum = false;
        for (iters = 0; iters < 200000;) {
            const Vec g = 2.0 * (design.transpose() * (design * y - samples.t));
            Vec next(n);
            for (int i = 0; i < n; ++i) {
                const double z = y[i] - step * g[i];
                const double thr = step * lambda * w[i];
                next[i] = std::abs(z) <= thr ? 0.0 : (z > 0.0 ? z - thr : z + thr);
            }
            ++iters;
            const double next_value = objective(next);
            if (momentum && next_value > value) {
                tk = 1.0;
                y = v;
                momentum = false;
                continue;
            }
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
            const double beta = (tk - 1.0) / t_next;
            const double move = (next - v).lpNorm<Eigen::Infinity>();
            y = next + beta * (next - v);
            momentum = beta > 0.0;
            tk = t_next;
            v = std::move(next);
            if (move <= 1e-13 * (1.0 + v.lpNorm<Eigen::Infinity>()) &&
                value - next_value <= 1e-15 * (1.0 + std::abs(value))) {
                converged = true;
                break;
            }
            value = next_value;
        }
        return v;
    };

    // Two deterministic starts: the origin (a fixed point above the zero
    // threshold) and the least-squares fit (fast when lambda is small).
    Vec v_ls = design.colPivHouseholderQr().solve(samples.t);
    if (!v_ls.allFinite()) v_ls = Vec::Zero(n);
    int it0 = 0, it1 = 0;
    bool conv0 = false, conv1 = false;
    const Vec sol0 = ista(Vec::Zero(n), it0, conv0);
    const Vec sol1 = ista(std::move(v_ls), it1, conv1);
    const double e0 = objective(sol0), e1 = objective(sol1);
    const auto count_support = [](const Vec& z) {
        int c = 0;
        for (Eigen::Index i = 0; i < z.size(); ++i)
            if (z[i] != 0.0) ++c;
        return c;
    };
    const bool tie = std::abs(e0 - e1) <= 1e-12 * (1.0 + std::abs(e1));
    const bool use0 = tie ? count_support(sol0) <= count_support(sol1) : e0 < e1;
    const Vec& v = use0 ? sol0 : sol1;
    if (!(use0 ? conv0 : conv1)) throw SolverError("l1_regnet: proximal iteration hit the step cap without settling");

    SolveReport rep;
    rep.coef = v;
    rep.objective = objective(v);
    rep.norm_value = norm(pair.space2, v);
    rep.constraint_residual = (design * v - samples.t).lpNorm<Eigen::Infinity>();
    rep.iterations = it0 + it1;
    rep.converged = true;
    rep.support_size = count_support(v);
    rep.message = "proximal gradient with no representer claim; Lipschitz step from power iteration";
    return rep;
}

}  // namespace rkbs
