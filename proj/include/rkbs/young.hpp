#pragma once

#include <string>

namespace rkbs {

enum class YoungKind { Power, Entropy, ScaledEntropy };

// A conjugate pair of nice Young functions: a strictly increasing phi with
// phi(0)=0, its inverse psi, and their integrals Phi(t) = int_0^t phi and
// Psi(t) = int_0^t psi. Three built-in families:
//
//   power(p):          phi(t) = t^(p-1),       Phi(t) = t^p / p,  Psi(t) = t^q / q
//   entropy():         phi(t) = log(1+t),      Phi(t) = (1+t)log(1+t) - t,
//                      psi(t) = e^t - 1,       Psi(t) = e^t - t - 1
//   scaled_entropy(k): Phi_k(t) = Phi(k t), so phi_k(t) = k log(1+kt),
//                      psi_k(t) = (e^(t/k) - 1)/k, Psi_k(t) = Psi(t/k)
//
// Inputs are nonnegative; round-off below zero by at most 1e-14 is clamped,
// anything more negative is rejected. The exp-based maps throw std::range_error
// once e^t would overflow instead of silently returning infinity.
class YoungPair {
  public:
    static YoungPair power(double p);
    static YoungPair entropy();
    static YoungPair scaled_entropy(double k);

    double phi(double t) const;
    double psi(double t) const;
    double Phi(double t) const;
    double Psi(double t) const;

    // Saturating variants for norm internals: +infinity instead of a range
    // error, so monotone bracketing can treat overflow as "modular too big".
    double Phi_sat(double t) const;
    double phi_sat(double t) const;

    // Same functions with the roles of (phi, Phi) and (psi, Psi) exchanged.
    YoungPair conjugate() const;

    YoungKind kind() const { return kind_; }
    bool conjugated() const { return swapped_; }
    double p() const { return p_; }
    double q() const { return q_; }
    double k() const { return k_; }
    std::string describe() const;

    // Structural identity of the underlying pair, ignoring conjugation.
    bool same_family(const YoungPair& other) const;

  private:
    YoungPair(YoungKind kind, double p, double q, double k, bool swapped);

    double phi_fwd(double t) const;
    double psi_fwd(double t) const;
    double Phi_fwd(double t, bool saturate) const;
    double Psi_fwd(double t, bool saturate) const;

    YoungKind kind_;
    double p_ = 0.0;
    double q_ = 0.0;
    double k_ = 0.0;
    bool swapped_ = false;
};

// Phi(x) + Psi(y) - x*y; nonnegative by the Young inequality, zero exactly
// when y = phi(x), equivalently x = psi(y).
double young_gap(const YoungPair& pair, double x, double y);

}  // namespace rkbs
