#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rkbs/rkbs_pair.hpp"

namespace rkbs {

// Interpolation / fitting data: 1-D sample points (pairwise distinct to
// 1e-12) in the B1 domain and real targets.
struct SampleSet {
    std::vector<double> x;
    Vec t;

    SampleSet(std::vector<double> x, Vec t);
    int size() const { return static_cast<int>(x.size()); }
};

struct SolveReport {
    Vec coef;                // solution v in W2 (the B1 function f_v)
    Vec representer_coeffs;  // c with v = D(sum_j c_j Phi1(x_j)), when the solver uses it
    double objective = 0.0;
    double norm_value = 0.0;            // W2 norm of coef
    double constraint_residual = 0.0;   // max_j |f_v(x_j) - t_j|
    double representer_residual = 0.0;  // span-membership defect of the norm gradient
    int iterations = 0;
    bool converged = false;
    double multistart_spread = 0.0;  // max inf-norm gap between converged starts
    int support_size = 0;            // exact nonzero count (l1 solver)
    bool subspace_solution = false;  // features rank-deficient, solved on a maximal independent subset
    std::string message;
};

// Smallest W2-norm interpolant of the samples. Candidates are parametrized by
// c in R^m through v(c) = D(sum_j c_j Phi1(x_j)) with D the duality map of W1
// into W2, so the interpolation conditions become an m-dimensional square
// system, solved by damped Newton (finite-difference Jacobian, Gram-solve
// initialization plus 4 random restarts). Requires a smooth W2 spec.
// Rank-deficient feature sets: inconsistent targets are rejected; consistent
// targets are solved on a maximal independent constraint subset and flagged.
SolveReport min_norm_interpolate(const RkbsPair& pair, const SampleSet& samples, double tol = 1e-10,
                                 uint64_t seed = 2024);

// Independent brute-force check: minimizes ||v|| + rho sum (f_v(x_j)-t_j)^2
// by Barzilai-Borwein gradient descent with backtracking on a continuation
// schedule rho = 1e2..1e8. Norm values agree with min_norm_interpolate to
// 1e-5 relative on solvable instances.
SolveReport min_norm_oracle(const RkbsPair& pair, const SampleSet& samples, double tol = 1e-8);

enum class RegKind { Identity, Square };

// Convex differentiable loss of the residual vector r_j = f_v(x_j) - t_j.
// Only the square loss ships; the hook exists so other losses slot in.
struct Loss {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;
    static Loss square();
};

// Regularization network: minimizes loss(residuals) + lambda * reg(||v||_W2)
// by limited-memory quasi-Newton descent with backtracking, 3 starts.
// warm_start (optional) seeds the first start, which is what lambda-path
// sweeps want.
SolveReport regnet(const RkbsPair& pair, const SampleSet& samples, double lambda,
                   const Loss& loss = Loss::square(), RegKind reg = RegKind::Square,
                   double tol = 1e-9, uint64_t seed = 2024, const Vec* warm_start = nullptr);

// Span-membership defect of the norm gradient at v: computes
// g = gateaux_derivative(W2, v) as a W1 coefficient vector and returns
// ||g - P g||_2 / ||g||_2 with P the Euclidean least-squares projection onto
// span{Phi1(x_j)}. Zero for v = 0.
double representer_residual(const RkbsPair& pair, const Vec& v, const SampleSet& samples);

// Sparse fit in an l1-normed W2: minimizes sum (f_v(x_j)-t_j)^2 + lambda ||v||_1,w
// by proximal gradient (soft thresholding) with the step from power iteration
// on the design operator. Reports exact support size; no representer claim.
SolveReport l1_regnet(const RkbsPair& pair, const SampleSet& samples, double lambda);

}  // namespace rkbs
