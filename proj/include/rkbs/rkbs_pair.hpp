#pragma once

#include <string>
#include <vector>

#include "rkbs/feature_space.hpp"
#include "rkbs/kernel.hpp"

namespace rkbs {

enum class Side { B1, B2 };

// A function carried by its coefficient vector. Side B1 is f_v with v in W2
// and f_v(x) = pairing(Phi1(x), v); side B2 is g_u with u in W1 and
// g_u(y) = pairing(u, Phi2(y)). Norms cross over accordingly: the B1 norm of
// f_v is the W2 norm of v, the B2 norm of g_u is the W1 norm of u.
struct BFunction {
    Side side;
    Vec coef;
};

// The bundle (W1, W2, Phi1, Phi2) of an adjoint pair of function spaces with
// kernel K(x,y) = pairing(Phi1(x), Phi2(y)). The rank certificate records the
// independence rank of feature images sampled over the domain at build time;
// when a truncated map is numerically rank-deficient, coefficient vectors are
// no longer pinned down by their functions and norms act as semi-norms of a
// chosen representative, which `note` says out loud.
struct RkbsPair {
    FeatureSpace space1;  // W1
    FeatureSpace space2;  // W2
    FeatureMap map1;      // Phi1, evaluated on domain1
    FeatureMap map2;      // Phi2, evaluated on domain2
    double bound_constant = 1.0;  // B with |pairing(u,v)| <= B ||u|| ||v||
    int rank1 = 0;
    int rank2 = 0;
    bool full_rank = false;
    std::string note;
};

// Validates shared dim/weights and map/space compatibility, computes the
// pairing bound from the norm specs (they must be dual partners), and records
// the rank certificate.
RkbsPair make_rkbs_pair(FeatureSpace space1, FeatureSpace space2, FeatureMap map1, FeatureMap map2);

// Ready-made pairs used by the tests and the CLI.
RkbsPair make_gaussian_rkhs(int dim);           // W1 = W2 = l2, Taylor features: the RKHS case
RkbsPair make_power_mercer(double p, int dim);  // W2 = l^p, W1 = l^q, Taylor features
RkbsPair make_hat_delta(int grid_n);            // W1 = sup + hat features, W2 = l1 + delta features on a [0,1] grid
RkbsPair make_entropy_orlicz(int dim);          // W2 = entropy gauge norm, W1 = its Orlicz dual, Taylor features

double eval(const RkbsPair& pair, const BFunction& fn, double point);
double bnorm(const RkbsPair& pair, const BFunction& fn);

// The bilinear form <f_v, g_u> := pairing(u, v); first argument must be side
// B1, second side B2.
double b_pairing(const RkbsPair& pair, const BFunction& f, const BFunction& g);

// max over points of |eval(fn, t) - b_pairing against the kernel section at t|
// (K(t,.) for side B1, K(.,t) for side B2). Zero up to round-off by
// construction; the bound 1e-10 (1 + bnorm) is what the tests pin.
double reproduce_residual(const RkbsPair& pair, const BFunction& fn, const std::vector<double>& points);

// The point-evaluation bound B ||Phi_side(point)||: |eval(fn, point)| never
// exceeds this times bnorm(fn).
double point_eval_constant(const RkbsPair& pair, double point, Side side);

double kernel_value(const RkbsPair& pair, double x, double y);

}  // namespace rkbs
