#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "rkbs/young.hpp"

namespace rkbs {

using Vec = Eigen::VectorXd;

enum class NormKind { Lp, Sup, OrliczGauge, OrliczDual };

// Which norm a feature space carries. orlicz_gauge(P) is the Luxemburg norm
// ||v|| = inf{a > 0 : sum_j w_j Phi(|v_j|/a) <= Phi(1)}; orlicz_dual(P) is the
// Orlicz norm |v| = sup{sum_j w_j |v_j g_j| : ||g||_Psi <= 1}. The two are dual
// partners, as are lp(p)/lp(q) with 1/p + 1/q = 1 and sup/l1.
struct NormSpec {
    NormKind kind = NormKind::Lp;
    double p = 2.0;
    std::optional<YoungPair> young;

    static NormSpec lp(double p);  // p in [1, inf]; p = inf collapses to sup
    static NormSpec sup();
    static NormSpec l1() { return lp(1.0); }
    static NormSpec orlicz_gauge(const YoungPair& pair);
    static NormSpec orlicz_dual(const YoungPair& pair);

    bool smooth() const;     // admits a duality map: p in (1, inf) or either Orlicz spec
    NormSpec dual() const;   // the partner spec with pairing constant 1
    bool is_dual_partner_of(const NormSpec& other) const;
    std::string describe() const;
};

// Finite-dimensional coefficient space: dim entries, strictly positive weights
// (the discrete measure), and a norm. Coefficient vectors are plain Eigen
// vectors; operations validate lengths against the space they are used with.
struct FeatureSpace {
    int dim;
    Vec weights;
    NormSpec spec;

    FeatureSpace(int dim, Vec weights, NormSpec spec);
    static FeatureSpace counting(int dim, NormSpec spec);  // all-ones weights
};

// sum_j w_j u_j v_j. The two-space overload insists the spaces agree on dim
// and weights, which is what pairing a W1 vector against a W2 vector requires.
double pairing(const Vec& weights, const Vec& u, const Vec& v);
double pairing(const FeatureSpace& w1, const FeatureSpace& w2, const Vec& u, const Vec& v);

double norm(const FeatureSpace& space, const Vec& v);

// Luxemburg norm by bracketed bisection on the strictly decreasing
// G(a) = sum_j w_j Phi(|v_j|/a) - Phi(1); residual |G(a*)| <= 1e-12 max(1, Phi(1)).
double gauge_norm(const YoungPair& pair, const Vec& v, const Vec& weights);

// Orlicz norm sup{sum w|v g| : ||g||_Psi <= 1}. The Young equality condition
// puts the maximizer in the one-parameter family g_j = phi(c |v_j|); the search
// runs a coarse scan plus golden section over log c in [-12, 12], normalizing
// each candidate to unit gauge-Psi norm.
double orlicz_norm(const YoungPair& pair, const Vec& v, const Vec& weights);

// Count of singular values above tol * (largest singular value) of the matrix
// whose rows are the given vectors.
int independence_rank(const std::vector<Vec>& vectors, double tol);

// The constant B with |pairing(u, v)| <= B ||u|| ||v||; supported (and equal
// to 1) exactly for dual partner specs, anything else is rejected.
double pairing_bound_constant(const NormSpec& s1, const NormSpec& s2);

}  // namespace rkbs
