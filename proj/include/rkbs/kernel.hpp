#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "rkbs/feature_space.hpp"

namespace rkbs {

enum class KernelKind {
    Gaussian,        // exp(-gamma ||x-y||_2^2) on R^d
    Exponential,     // exp(-||x-y||_1) on R^d
    BrownianBridge,  // min{x,y} - x y on (0,1)
    Hat,             // 1 - |x-y| on [0,1]
    PowerBase,       // (1+y)^x on [0,1]^2 (asymmetric)
    ExpProduct,      // e^{x y} on [0,1]^2
    MercerGaussianTaylor,  // closed form exp(-(x-y)^2) on [-1,1], Taylor-factorized
    MercerBrownianSine,    // closed form min{x,y} - x y on [0,1], sine-factorized
};

struct Kernel {
    KernelKind kind = KernelKind::Gaussian;
    double gamma = 1.0;  // Gaussian only
    int dim = 1;

    static Kernel gaussian(double gamma = 1.0, int dim = 1);
    static Kernel exponential(int dim = 1);
    static Kernel brownian_bridge();
    static Kernel hat();
    static Kernel power_base();
    static Kernel exp_product();
    static Kernel mercer_gaussian_taylor();
    static Kernel mercer_brownian_sine();
    static Kernel by_name(const std::string& name, double gamma = 1.0, int dim = 1);
    std::string name() const;
};

double eval(const Kernel& kernel, const Vec& x, const Vec& y);
double eval(const Kernel& kernel, double x, double y);

enum class FeatureRule { HatGrid, DeltaGrid, GaussianTaylor, BrownianSine };

// A rule turning a 1-D input point into a coefficient vector:
//   hat_grid(t):        entries 1 - |t_j - x| on [0,1]
//   delta_grid(t):      canonical unit vector; x must hit the grid exactly
//   gaussian_taylor(T): e^{-x^2} sqrt(2^n/n!) x^n for n = 0..T-1 on [-1,1]
//   brownian_sine(T):   sqrt(2) sin(n pi x)/(n pi) for n = 1..T on [0,1]
struct FeatureMap {
    FeatureRule rule;
    Vec grid;       // grid rules
    int terms = 0;  // series rules

    static FeatureMap hat_grid(Vec grid);
    static FeatureMap delta_grid(Vec grid);
    static FeatureMap gaussian_taylor(int terms);
    static FeatureMap brownian_sine(int terms);

    int dim() const;
    double domain_min() const;
    double domain_max() const;
};

Vec feature(const FeatureMap& map, double x);

// K(x,y) = pairing of the two feature vectors. For the series rules this
// approximates the closed form within mercer_truncation_bound.
double kernel_from_features(const FeatureMap& m1, const FeatureMap& m2, double x, double y, const Vec& weights);

// Gram matrix [K(x_j, x_k)] at pairwise-distinct points (rows of `points`).
// `gram` fills entries in parallel; `gram_serial` is the reference kept for
// testing, and the two must agree exactly.
Eigen::MatrixXd gram(const Kernel& kernel, const Eigen::MatrixXd& points);
Eigen::MatrixXd gram_serial(const Kernel& kernel, const Eigen::MatrixXd& points);

// Row-major table K(xs[i], ys[j]); parallel primary plus serial reference.
std::vector<double> kernel_table(const Kernel& kernel, const std::vector<double>& xs, const std::vector<double>& ys);
std::vector<double> kernel_table_serial(const Kernel& kernel, const std::vector<double>& xs, const std::vector<double>& ys);

struct AdmissibilityReport {
    double min_singular_value = 0.0;
    double max_singular_value = 0.0;
    bool nonsingular = false;     // min > 1e-12 * max
    double grid_max_abs = 0.0;    // boundedness scan over the sampled domain
    std::string note;             // requirement (iii) is undecidable at finite sample
};

AdmissibilityReport admissibility_check(const Kernel& kernel, const Eigen::MatrixXd& points);

// Certified uniform tail bound once series terms past index N are dropped:
// gaussian Taylor on [-1,1]: sum_{n>N} 2^n/n!; brownian sine on [0,1]: 2/(pi^2 N).
double mercer_truncation_bound(KernelKind kind, int N);

}  // namespace rkbs
