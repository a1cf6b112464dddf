#include "rkbs/young.hpp"

#include <cmath>
#include <limits>

#include "rkbs/errors.hpp"

namespace rkbs {

namespace {

constexpr double kClampTol = 1e-14;
// exp overflows just above 709.78; stay a hair below.
constexpr double kExpMax = 709.0;

double checked_arg(double t) {
    if (t < 0.0) {
        if (t >= -kClampTol) return 0.0;
        throw ConfigError("young: negative argument " + std::to_string(t));
    }
    return t;
}

}  // namespace

YoungPair::YoungPair(YoungKind kind, double p, double q, double k, bool swapped)
    : kind_(kind), p_(p), q_(q), k_(k), swapped_(swapped) {}

YoungPair YoungPair::power(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw ConfigError("young: power exponent must lie in (1, inf), got " + std::to_string(p));
    return YoungPair(YoungKind::Power, p, p / (p - 1.0), 0.0, false);
}

YoungPair YoungPair::entropy() { return YoungPair(YoungKind::Entropy, 0.0, 0.0, 1.0, false); }

YoungPair YoungPair::scaled_entropy(double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw ConfigError("young: scaled-entropy scale must be positive, got " + std::to_string(k));
    return YoungPair(YoungKind::ScaledEntropy, 0.0, 0.0, k, false);
}

YoungPair YoungPair::conjugate() const { return YoungPair(kind_, p_, q_, k_, !swapped_); }

bool YoungPair::same_family(const YoungPair& other) const {
    return kind_ == other.kind_ && p_ == other.p_ && k_ == other.k_;
}

// Forward-role maps (as if swapped_ were false).

double YoungPair::phi_fwd(double t) const {
    switch (kind_) {
        case YoungKind::Power: return std::pow(t, p_ - 1.0);
        case YoungKind::Entropy: return std::log1p(t);
        case YoungKind::ScaledEntropy: return k_ * std::log1p(k_ * t);
    }
    return 0.0;
}

double YoungPair::psi_fwd(double t) const {
    switch (kind_) {
        case YoungKind::Power: return std::pow(t, q_ - 1.0);
        case YoungKind::Entropy:
            if (t > kExpMax) throw std::range_error("young: entropy psi overflow at t=" + std::to_string(t));
            return std::expm1(t);
        case YoungKind::ScaledEntropy:
            if (t / k_ > kExpMax) throw std::range_error("young: scaled-entropy psi overflow at t=" + std::to_string(t));
            return std::expm1(t / k_) / k_;
    }
    return 0.0;
}

double YoungPair::Phi_fwd(double t, bool) const {
    switch (kind_) {
        case YoungKind::Power: return std::pow(t, p_) / p_;
        case YoungKind::Entropy: return (1.0 + t) * std::log1p(t) - t;
        case YoungKind::ScaledEntropy: {
            const double s = k_ * t;  // Phi_k(t) = Phi_entropy(k t), exactly as composed
            return (1.0 + s) * std::log1p(s) - s;
        }
    }
    return 0.0;
}

double YoungPair::Psi_fwd(double t, bool saturate) const {
    switch (kind_) {
        case YoungKind::Power: return std::pow(t, q_) / q_;
        case YoungKind::Entropy:
            if (t > kExpMax) {
                if (saturate) return std::numeric_limits<double>::infinity();
                throw std::range_error("young: entropy Psi overflow at t=" + std::to_string(t));
            }
            return std::expm1(t) - t;
        case YoungKind::ScaledEntropy: {
            const double s = t / k_;  // Psi_k(t) = Psi_entropy(t / k)
            if (s > kExpMax) {
                if (saturate) return std::numeric_limits<double>::infinity();
                throw std::range_error("young: scaled-entropy Psi overflow at t=" + std::to_string(t));
            }
            return std::expm1(s) - s;
        }
    }
    return 0.0;
}

double YoungPair::phi(double t) const {
    t = checked_arg(t);
    return swapped_ ? psi_fwd(t) : phi_fwd(t);
}

double YoungPair::psi(double t) const {
    t = checked_arg(t);
    return swapped_ ? phi_fwd(t) : psi_fwd(t);
}

double YoungPair::Phi(double t) const {
    t = checked_arg(t);
    return swapped_ ? Psi_fwd(t, false) : Phi_fwd(t, false);
}

double YoungPair::Psi(double t) const {
    t = checked_arg(t);
    return swapped_ ? Phi_fwd(t, false) : Psi_fwd(t, false);
}

double YoungPair::Phi_sat(double t) const {
    t = checked_arg(t);
    return swapped_ ? Psi_fwd(t, true) : Phi_fwd(t, true);
}

double YoungPair::phi_sat(double t) const {
    t = checked_arg(t);
    if (!swapped_) return phi_fwd(t);
    // psi role: exp-based maps may overflow
    if (kind_ == YoungKind::Entropy && t > kExpMax) return std::numeric_limits<double>::infinity();
    if (kind_ == YoungKind::ScaledEntropy && t / k_ > kExpMax) return std::numeric_limits<double>::infinity();
    return psi_fwd(t);
}

std::string YoungPair::describe() const {
    std::string base;
    switch (kind_) {
        case YoungKind::Power: base = "power(p=" + std::to_string(p_) + ")"; break;
        case YoungKind::Entropy: base = "entropy"; break;
        case YoungKind::ScaledEntropy: base = "scaled-entropy(k=" + std::to_string(k_) + ")"; break;
    }
    return swapped_ ? base + "*" : base;
}

double young_gap(const YoungPair& pair, double x, double y) {
    x = checked_arg(x);
    y = checked_arg(y);
    return pair.Phi(x) + pair.Psi(y) - x * y;
}

}  // namespace rkbs
