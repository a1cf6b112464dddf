#include "rkbs/duality.hpp"

#include <cmath>
#include <limits>

#include "rkbs/errors.hpp"

namespace rkbs {

namespace {

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

// phi of the norm's Young structure: t^(p-1) for lp specs, pair.phi for gauge.
double norm_phi(const NormSpec& spec, double t) {
    if (spec.kind == NormKind::Lp) return std::pow(t, spec.p - 1.0);
    return spec.young->phi(t);
}

void require_sip_spec(const NormSpec& spec) {
    if (spec.kind == NormKind::OrliczGauge) return;
    if (spec.kind == NormKind::Lp && std::isfinite(spec.p)) return;
    throw ConfigError("sip: norm spec " + spec.describe() + " has no semi-inner-product formula here");
}

// J for gauge-type norms (lp and orlicz_gauge share the formula through phi).
Vec duality_map_gauge(const FeatureSpace& space, const Vec& f, double alpha) {
    const auto& w = space.weights;
    Vec num(f.size());
    double den = 0.0;
    for (int j = 0; j < f.size(); ++j) {
        const double ph = norm_phi(space.spec, std::abs(f[j]) / alpha);
        num[j] = sgn(f[j]) * ph;
        den += w[j] * std::abs(f[j]) * ph;
    }
    return (alpha * alpha / den) * num;
}

// Inverse of J_Phi, used as the duality map of an orlicz_dual space: find
// v with J_Phi(v) = u. With e_j = psi(c |u_j|) and c solving
// gauge_Phi(e) = 1, the solution is v = r sgn(u) .* e, r = sum w_j e_j |u_j|;
// then pairing(u, v) = |u|_Psi^2 and gauge_Phi(v) = |u|_Psi.
Vec duality_map_orlicz_dual(const FeatureSpace& space, const Vec& u) {
    const YoungPair& pair = *space.spec.young;
    const YoungPair conj = pair.conjugate();  // conj.phi_sat is a saturating psi
    const Vec uabs = u.cwiseAbs();
    const auto& w = space.weights;

    const auto E = [&](double c) {
        Vec e(u.size());
        for (int j = 0; j < u.size(); ++j) e[j] = conj.phi_sat(c * uabs[j]);
        return e;
    };
    const auto H = [&](double c) {
        const Vec e = E(c);
        const double m = e.maxCoeff();
        if (!std::isfinite(m)) return std::numeric_limits<double>::infinity();
        return gauge_norm(pair, e, w) - 1.0;
    };

    double lo = 1.0, hi = 1.0;
    int guard = 0;
    while (H(lo) >= 0.0 && guard++ < 80) lo *= 0.1;
    guard = 0;
    while (H(hi) <= 0.0 && guard++ < 80) hi *= 10.0;
    if (!(H(lo) < 0.0 && H(hi) > 0.0))
        throw SolverError("duality_map: inverse gauge-map bracket failed");

    double mid = std::sqrt(lo * hi);
    for (int it = 0; it < 240; ++it) {
        const double hm = H(mid);
        if (hm < 0.0) lo = mid; else hi = mid;
        const double next = std::sqrt(lo * hi);
        if (next == lo || next == hi) break;
        mid = next;
        if (hi - lo <= 1e-14 * mid && std::abs(hm) <= 1e-13) break;
    }

    const Vec e = E(mid);
    const double r = (w.array() * e.array() * uabs.array()).sum();
    Vec v(u.size());
    for (int j = 0; j < u.size(); ++j) v[j] = r * sgn(u[j]) * e[j];
    return v;
}

}  // namespace

SipValue sip(const FeatureSpace& space, const Vec& f, const Vec& g) {
    require_sip_spec(space.spec);
    if (f.size() != space.dim || g.size() != space.dim) throw ConfigError("sip: dimension mismatch");
    if (g.isZero(0.0)) throw ConfigError("sip: second argument must be nonzero");

    const double alpha = norm(space, g);
    const auto& w = space.weights;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double ph = norm_phi(space.spec, std::abs(g[j]) / alpha);
        num += w[j] * f[j] * sgn(g[j]) * ph;
        den += w[j] * std::abs(g[j]) * ph;
    }
    return SipValue{alpha * alpha * num / den, alpha};
}

Vec duality_map(const FeatureSpace& space, const Vec& f) {
    if (f.size() != space.dim) throw ConfigError("duality_map: dimension mismatch");
    if (!space.spec.smooth())
        throw ConfigError("duality_map: norm spec " + space.spec.describe() + " is not smooth");
    if (f.isZero(0.0)) return Vec::Zero(f.size());

    switch (space.spec.kind) {
        case NormKind::Lp:
        case NormKind::OrliczGauge:
            return duality_map_gauge(space, f, norm(space, f));
        case NormKind::OrliczDual:
            return duality_map_orlicz_dual(space, f);
        default:
            throw ConfigError("duality_map: unsupported spec");
    }
}

Vec gateaux_derivative(const FeatureSpace& space, const Vec& f) {
    if (f.size() != space.dim) throw ConfigError("gateaux_derivative: dimension mismatch");
    if (f.isZero(0.0)) return Vec::Zero(f.size());
    return duality_map(space, f) / norm(space, f);
}

double gateaux_fd(const FeatureSpace& space, const Vec& f, const Vec& h, double eps) {
    return (norm(space, f + eps * h) - norm(space, f - eps * h)) / (2.0 * eps);
}

std::vector<ScanPoint> sip_sphere_scan(const Vec& x, const Vec& y, const std::vector<double>& k_list) {
    if (k_list.empty()) throw ConfigError("sip_sphere_scan: empty k list");
    if (x.size() != y.size()) throw ConfigError("sip_sphere_scan: dimension mismatch");
    if (y.isZero(0.0)) throw ConfigError("sip_sphere_scan: y must be nonzero");

    std::vector<ScanPoint> out;
    out.reserve(k_list.size());
    for (double k : k_list) {
        if (!(k > 0.0)) throw ConfigError("sip_sphere_scan: k must be positive, got " + std::to_string(k));
        double num = 0.0, den = 0.0;
        for (int j = 0; j < y.size(); ++j) {
            const double l = std::log1p(k * std::abs(y[j]));
            num += x[j] * sgn(y[j]) * l;
            den += std::abs(y[j]) * l;
        }
        out.push_back(ScanPoint{k, num / den});
    }
    return out;
}

double scan_l2_limit(const Vec& x, const Vec& y) { return x.dot(y) / y.squaredNorm(); }

double scan_l1_limit(const Vec& x, const Vec& y) {
    double num = 0.0;
    for (int j = 0; j < y.size(); ++j) num += x[j] * sgn(y[j]);
    return num / y.cwiseAbs().sum();
}

}  // namespace rkbs
