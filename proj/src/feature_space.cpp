#include "rkbs/feature_space.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rkbs/errors.hpp"

namespace rkbs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NormSpec NormSpec::lp(double p) {
    if (std::isnan(p) || p < 1.0) throw ConfigError("norm spec: p must lie in [1, inf], got " + std::to_string(p));
    if (std::isinf(p)) return sup();
    NormSpec s;
    s.kind = NormKind::Lp;
    s.p = p;
    return s;
}

NormSpec NormSpec::sup() {
    NormSpec s;
    s.kind = NormKind::Sup;
    s.p = kInf;
    return s;
}

NormSpec NormSpec::orlicz_gauge(const YoungPair& pair) {
    NormSpec s;
    s.kind = NormKind::OrliczGauge;
    s.young = pair;
    return s;
}

NormSpec NormSpec::orlicz_dual(const YoungPair& pair) {
    NormSpec s;
    s.kind = NormKind::OrliczDual;
    s.young = pair;
    return s;
}

bool NormSpec::smooth() const {
    switch (kind) {
        case NormKind::Lp: return p > 1.0 && std::isfinite(p);
        case NormKind::Sup: return false;
        case NormKind::OrliczGauge:
        case NormKind::OrliczDual: return true;
    }
    return false;
}

NormSpec NormSpec::dual() const {
    switch (kind) {
        case NormKind::Lp:
            if (p == 1.0) return sup();
            return lp(p / (p - 1.0));
        case NormKind::Sup: return lp(1.0);
        case NormKind::OrliczGauge: return orlicz_dual(*young);
        case NormKind::OrliczDual: return orlicz_gauge(*young);
    }
    return lp(2.0);
}

bool NormSpec::is_dual_partner_of(const NormSpec& other) const {
    const NormSpec d = dual();
    if (d.kind != other.kind) return false;
    switch (d.kind) {
        case NormKind::Lp: return std::abs(d.p - other.p) <= 1e-12 * std::max(1.0, std::abs(d.p));
        case NormKind::Sup: return true;
        case NormKind::OrliczGauge:
        case NormKind::OrliczDual:
            return d.young->same_family(*other.young) && d.young->conjugated() == other.young->conjugated();
    }
    return false;
}

std::string NormSpec::describe() const {
    switch (kind) {
        case NormKind::Lp: {
            if (p == 1.0) return "l1";
            char buf[48];
            std::snprintf(buf, sizeof(buf), "lp(%.12g)", p);
            return buf;
        }
        case NormKind::Sup: return "sup";
        case NormKind::OrliczGauge: return "orlicz_gauge(" + young->describe() + ")";
        case NormKind::OrliczDual: return "orlicz_dual(" + young->describe() + ")";
    }
    return "?";
}

FeatureSpace::FeatureSpace(int dim_, Vec weights_, NormSpec spec_)
    : dim(dim_), weights(std::move(weights_)), spec(std::move(spec_)) {
    if (dim < 1) throw ConfigError("feature space: dim must be positive");
    if (weights.size() != dim) throw ConfigError("feature space: weights length != dim");
    for (int j = 0; j < dim; ++j)
        if (!(weights[j] > 0.0) || !std::isfinite(weights[j]))
            throw ConfigError("feature space: weights must be strictly positive and finite");
}

FeatureSpace FeatureSpace::counting(int dim, NormSpec spec) {
    return FeatureSpace(dim, Vec::Ones(dim), std::move(spec));
}

double pairing(const Vec& weights, const Vec& u, const Vec& v) {
    if (u.size() != weights.size() || v.size() != weights.size())
        throw ConfigError("pairing: dimension mismatch");
    return (weights.array() * u.array() * v.array()).sum();
}

double pairing(const FeatureSpace& w1, const FeatureSpace& w2, const Vec& u, const Vec& v) {
    if (w1.dim != w2.dim || w1.weights != w2.weights)
        throw ConfigError("pairing: spaces disagree on dim or weights");
    return pairing(w1.weights, u, v);
}

double gauge_norm(const YoungPair& pair, const Vec& v, const Vec& weights) {
    if (v.size() != weights.size()) throw ConfigError("gauge_norm: dimension mismatch");
    const double vmax = v.cwiseAbs().maxCoeff();
    if (vmax == 0.0) return 0.0;
    if (!std::isfinite(vmax)) throw ConfigError("gauge_norm: non-finite vector");

    const double rhs = pair.Phi(1.0);
    const auto G = [&](double a) {
        double s = 0.0;
        for (int j = 0; j < v.size(); ++j) {
            s += weights[j] * pair.Phi_sat(std::abs(v[j]) / a);
            if (s == kInf) return kInf;
        }
        return s - rhs;
    };

    double lo = vmax * 1e-6, hi = vmax * 1e6;
    int expand = 0;
    while (G(lo) <= 0.0 && expand < 10) { lo *= 0.1; ++expand; }
    expand = 0;
    while (G(hi) >= 0.0 && expand < 10) { hi *= 10.0; ++expand; }
    if (G(lo) <= 0.0 || G(hi) >= 0.0)
        throw SolverError("gauge_norm: no sign change in bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");

    // Geometric bisection; keep halving until the bracket is tight in relative
    // terms and the modular residual itself is small.
    const double res_tol = 0.5e-12 * std::max(1.0, rhs);
    double mid = std::sqrt(lo * hi), gm = G(mid);
    for (int it = 0; it < 300; ++it) {
        if (gm > 0.0) lo = mid; else hi = mid;
        const double next = std::sqrt(lo * hi);
        if (next == lo || next == hi) break;  // bracket exhausted at double resolution
        mid = next;
        gm = G(mid);
        if (hi - lo <= 1e-13 * mid && std::abs(gm) <= res_tol) break;
    }
    return mid;
}

namespace {

// Objective of the Orlicz-norm search at family parameter c: pair the vector
// against g_j = phi(c |v_j|) rescaled to unit gauge-Psi norm. v is prescaled
// so max |v_j| = 1 and the result is later multiplied back.
double orlicz_objective(const YoungPair& pair, const YoungPair& conj, const Vec& vabs, const Vec& weights, double c) {
    Vec g(vabs.size());
    double gmax = 0.0;
    for (int j = 0; j < vabs.size(); ++j) {
        g[j] = pair.phi_sat(c * vabs[j]);
        gmax = std::max(gmax, g[j]);
    }
    if (gmax == 0.0 || !std::isfinite(gmax)) return 0.0;
    g /= gmax;  // gauge is homogeneous, so renormalizing first is free
    const double a = gauge_norm(conj, g, weights);
    double s = 0.0;
    for (int j = 0; j < vabs.size(); ++j) s += weights[j] * vabs[j] * g[j];
    return s / a;
}

}  // namespace

double orlicz_norm(const YoungPair& pair, const Vec& v, const Vec& weights) {
    if (v.size() != weights.size()) throw ConfigError("orlicz_norm: dimension mismatch");
    const double vmax = v.cwiseAbs().maxCoeff();
    if (vmax == 0.0) return 0.0;
    if (!std::isfinite(vmax)) throw ConfigError("orlicz_norm: non-finite vector");

    const Vec vabs = v.cwiseAbs() / vmax;
    const YoungPair conj = pair.conjugate();
    const auto F = [&](double logc) { return orlicz_objective(pair, conj, vabs, weights, std::exp(logc)); };

    double lo = -12.0, hi = 12.0;
    for (int attempt = 0;; ++attempt) {
        const int n = 97;
        int best = 0;
        double fbest = -kInf, fmin = kInf;
        std::vector<double> fs(n);
        for (int i = 0; i < n; ++i) {
            const double f = F(lo + (hi - lo) * i / (n - 1));
            fs[i] = f;
            fmin = std::min(fmin, f);
            if (f > fbest) { fbest = f; best = i; }
        }
        if (fbest - fmin <= 1e-12 * std::max(1.0, fbest)) return vmax * fbest;  // flat in c (power pairs)

        int peaks = 0;
        for (int i = 1; i + 1 < n; ++i)
            if (fs[i] > fs[i - 1] + 1e-10 * fbest && fs[i] > fs[i + 1] + 1e-10 * fbest) ++peaks;
        if (peaks > 1) throw SolverError("orlicz_norm: non-unimodal search objective (" + std::to_string(peaks) + " peaks)");

        if (best == 0 || best == n - 1) {
            if (attempt >= 1)
                throw SolverError("orlicz_norm: search maximum stuck at log-c boundary [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            lo *= 2.0;
            hi *= 2.0;
            continue;
        }

        // golden-section refinement inside the bracketing grid cells
        const double step = (hi - lo) / (n - 1);
        double a = lo + step * (best - 1), b = lo + step * (best + 1);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = F(x1), f2 = F(x2);
        for (int it = 0; it < 90 && b - a > 1e-12; ++it) {
            if (f1 < f2) { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = F(x2); }
            else { b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = F(x1); }
        }
        return vmax * std::max(fbest, std::max(f1, f2));
    }
}

double norm(const FeatureSpace& space, const Vec& v) {
    if (v.size() != space.dim) throw ConfigError("norm: vector does not belong to the space");
    switch (space.spec.kind) {
        case NormKind::Lp: {
            const double p = space.spec.p;
            if (p == 1.0) return (space.weights.array() * v.array().abs()).sum();
            double s = 0.0;
            for (int j = 0; j < v.size(); ++j) s += space.weights[j] * std::pow(std::abs(v[j]), p);
            return std::pow(s, 1.0 / p);
        }
        case NormKind::Sup: return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
        case NormKind::OrliczGauge: return gauge_norm(*space.spec.young, v, space.weights);
        case NormKind::OrliczDual: return orlicz_norm(space.spec.young->conjugate(), v, space.weights);
    }
    return 0.0;
}

int independence_rank(const std::vector<Vec>& vectors, double tol) {
    if (vectors.empty()) throw ConfigError("independence_rank: empty vector list");
    const auto n = vectors.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(vectors.size()), n);
    for (size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != n) throw ConfigError("independence_rank: mixed dimensions");
        m.row(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

double pairing_bound_constant(const NormSpec& s1, const NormSpec& s2) {
    if (s1.is_dual_partner_of(s2)) return 1.0;
    throw ConfigError("pairing bound: unsupported norm pair (" + s1.describe() + ", " + s2.describe() +
                      "); only dual partners are certified");
}

}  // namespace rkbs
