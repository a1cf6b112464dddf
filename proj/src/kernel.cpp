#include "rkbs/kernel.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "rkbs/errors.hpp"

namespace rkbs {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_unit_interval(double t, const char* who, bool open) {
    if (open ? (t <= 0.0 || t >= 1.0) : (t < 0.0 || t > 1.0))
        throw ConfigError(std::string(who) + ": input " + std::to_string(t) + " outside the " +
                          (open ? "(0,1)" : "[0,1]") + " domain");
}

void require_sym_interval(double t, const char* who) {
    if (t < -1.0 || t > 1.0)
        throw ConfigError(std::string(who) + ": input " + std::to_string(t) + " outside [-1,1]");
}

}  // namespace

Kernel Kernel::gaussian(double gamma, int dim) {
    if (!(gamma > 0.0)) throw ConfigError("kernel: gaussian gamma must be positive");
    if (dim < 1) throw ConfigError("kernel: dim must be positive");
    return Kernel{KernelKind::Gaussian, gamma, dim};
}
Kernel Kernel::exponential(int dim) {
    if (dim < 1) throw ConfigError("kernel: dim must be positive");
    return Kernel{KernelKind::Exponential, 1.0, dim};
}
Kernel Kernel::brownian_bridge() { return Kernel{KernelKind::BrownianBridge, 1.0, 1}; }
Kernel Kernel::hat() { return Kernel{KernelKind::Hat, 1.0, 1}; }
Kernel Kernel::power_base() { return Kernel{KernelKind::PowerBase, 1.0, 1}; }
Kernel Kernel::exp_product() { return Kernel{KernelKind::ExpProduct, 1.0, 1}; }
Kernel Kernel::mercer_gaussian_taylor() { return Kernel{KernelKind::MercerGaussianTaylor, 1.0, 1}; }
Kernel Kernel::mercer_brownian_sine() { return Kernel{KernelKind::MercerBrownianSine, 1.0, 1}; }

Kernel Kernel::by_name(const std::string& name, double gamma, int dim) {
    if (name == "gaussian") return gaussian(gamma, dim);
    if (name == "exponential") return exponential(dim);
    if (name == "brownian_bridge") return brownian_bridge();
    if (name == "hat") return hat();
    if (name == "power_base") return power_base();
    if (name == "exp_product") return exp_product();
    if (name == "mercer_gaussian") return mercer_gaussian_taylor();
    if (name == "mercer_brownian") return mercer_brownian_sine();
    throw ConfigError("kernel: unknown kind '" + name + "'");
}

std::string Kernel::name() const {
    switch (kind) {
        case KernelKind::Gaussian: return "gaussian";
        case KernelKind::Exponential: return "exponential";
        case KernelKind::BrownianBridge: return "brownian_bridge";
        case KernelKind::Hat: return "hat";
        case KernelKind::PowerBase: return "power_base";
        case KernelKind::ExpProduct: return "exp_product";
        case KernelKind::MercerGaussianTaylor: return "mercer_gaussian";
        case KernelKind::MercerBrownianSine: return "mercer_brownian";
    }
    return "?";
}

double eval(const Kernel& kernel, const Vec& x, const Vec& y) {
    if (x.size() != kernel.dim || y.size() != kernel.dim)
        throw ConfigError("kernel eval: point dimension != kernel dim");
    switch (kernel.kind) {
        case KernelKind::Gaussian: return std::exp(-kernel.gamma * (x - y).squaredNorm());
        case KernelKind::Exponential: return std::exp(-(x - y).lpNorm<1>());
        default: break;
    }
    if (kernel.dim != 1) throw ConfigError("kernel eval: kind " + kernel.name() + " is one-dimensional");
    return eval(kernel, x[0], y[0]);
}

double eval(const Kernel& kernel, double x, double y) {
    switch (kernel.kind) {
        case KernelKind::Gaussian: return std::exp(-kernel.gamma * (x - y) * (x - y));
        case KernelKind::Exponential: return std::exp(-std::abs(x - y));
        case KernelKind::BrownianBridge:
            require_unit_interval(x, "brownian_bridge", true);
            require_unit_interval(y, "brownian_bridge", true);
            return std::min(x, y) - x * y;
        case KernelKind::Hat:
            require_unit_interval(x, "hat", false);
            require_unit_interval(y, "hat", false);
            return 1.0 - std::abs(x - y);
        case KernelKind::PowerBase:
            require_unit_interval(x, "power_base", false);
            require_unit_interval(y, "power_base", false);
            return std::pow(1.0 + y, x);
        case KernelKind::ExpProduct:
            require_unit_interval(x, "exp_product", false);
            require_unit_interval(y, "exp_product", false);
            return std::exp(x * y);
        case KernelKind::MercerGaussianTaylor:
            require_sym_interval(x, "mercer_gaussian");
            require_sym_interval(y, "mercer_gaussian");
            return std::exp(-(x - y) * (x - y));
        case KernelKind::MercerBrownianSine:
            require_unit_interval(x, "mercer_brownian", false);
            require_unit_interval(y, "mercer_brownian", false);
            return std::min(x, y) - x * y;
    }
    return 0.0;
}

FeatureMap FeatureMap::hat_grid(Vec grid) {
    if (grid.size() < 1) throw ConfigError("feature map: empty grid");
    for (int j = 0; j < grid.size(); ++j) require_unit_interval(grid[j], "hat grid", false);
    return FeatureMap{FeatureRule::HatGrid, std::move(grid), 0};
}
FeatureMap FeatureMap::delta_grid(Vec grid) {
    if (grid.size() < 1) throw ConfigError("feature map: empty grid");
    return FeatureMap{FeatureRule::DeltaGrid, std::move(grid), 0};
}
FeatureMap FeatureMap::gaussian_taylor(int terms) {
    if (terms < 1) throw ConfigError("feature map: need at least one series term");
    return FeatureMap{FeatureRule::GaussianTaylor, Vec(), terms};
}
FeatureMap FeatureMap::brownian_sine(int terms) {
    if (terms < 1) throw ConfigError("feature map: need at least one series term");
    return FeatureMap{FeatureRule::BrownianSine, Vec(), terms};
}

int FeatureMap::dim() const {
    switch (rule) {
        case FeatureRule::HatGrid:
        case FeatureRule::DeltaGrid: return static_cast<int>(grid.size());
        case FeatureRule::GaussianTaylor:
        case FeatureRule::BrownianSine: return terms;
    }
    return 0;
}

double FeatureMap::domain_min() const { return rule == FeatureRule::GaussianTaylor ? -1.0 : 0.0; }
double FeatureMap::domain_max() const { return 1.0; }

Vec feature(const FeatureMap& map, double x) {
    switch (map.rule) {
        case FeatureRule::HatGrid: {
            require_unit_interval(x, "hat feature", false);
            Vec v(map.grid.size());
            for (int j = 0; j < map.grid.size(); ++j) v[j] = 1.0 - std::abs(map.grid[j] - x);
            return v;
        }
        case FeatureRule::DeltaGrid: {
            for (int j = 0; j < map.grid.size(); ++j) {
                if (std::abs(map.grid[j] - x) <= 1e-12) {
                    Vec v = Vec::Zero(map.grid.size());
                    v[j] = 1.0;
                    return v;
                }
            }
            throw ConfigError("delta feature map: point " + std::to_string(x) + " is not on the grid");
        }
        case FeatureRule::GaussianTaylor: {
            require_sym_interval(x, "gaussian taylor feature");
            Vec v(map.terms);
            const double e = std::exp(-x * x);
            double coef = 1.0, xn = 1.0;  // sqrt(2^n/n!) and x^n, built up iteratively
            for (int n = 0; n < map.terms; ++n) {
                if (n > 0) {
                    coef *= std::sqrt(2.0 / n);
                    xn *= x;
                }
                v[n] = e * coef * xn;
            }
            return v;
        }
        case FeatureRule::BrownianSine: {
            require_unit_interval(x, "brownian sine feature", false);
            Vec v(map.terms);
            for (int n = 1; n <= map.terms; ++n) v[n - 1] = std::sqrt(2.0) * std::sin(n * kPi * x) / (n * kPi);
            return v;
        }
    }
    return Vec();
}

double kernel_from_features(const FeatureMap& m1, const FeatureMap& m2, double x, double y, const Vec& weights) {
    if (m1.dim() != m2.dim() || weights.size() != m1.dim())
        throw ConfigError("kernel_from_features: feature spaces disagree");
    return pairing(weights, feature(m1, x), feature(m2, y));
}

namespace {

void require_distinct(const Eigen::MatrixXd& points) {
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        for (Eigen::Index j = i + 1; j < points.rows(); ++j)
            if ((points.row(i) - points.row(j)).norm() <= 1e-12)
                throw ConfigError("gram: points " + std::to_string(i) + " and " + std::to_string(j) +
                                  " are not pairwise distinct");
}

template <bool Parallel>
Eigen::MatrixXd gram_impl(const Kernel& kernel, const Eigen::MatrixXd& points) {
    if (points.cols() != kernel.dim) throw ConfigError("gram: point dimension != kernel dim");
    require_distinct(points);
    const Eigen::Index m = points.rows();
    Eigen::MatrixXd g(m, m);
    const Eigen::Index total = m * m;
#pragma omp parallel for schedule(static) if (Parallel)
    for (Eigen::Index idx = 0; idx < total; ++idx) {
        const Eigen::Index i = idx / m, j = idx % m;
        g(i, j) = eval(kernel, points.row(i).transpose().eval(), points.row(j).transpose().eval());
    }
    return g;
}

template <bool Parallel>
std::vector<double> table_impl(const Kernel& kernel, const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> out(xs.size() * ys.size());
    const auto nx = static_cast<Eigen::Index>(xs.size()), ny = static_cast<Eigen::Index>(ys.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (Eigen::Index idx = 0; idx < nx * ny; ++idx) {
        out[static_cast<size_t>(idx)] = eval(kernel, xs[static_cast<size_t>(idx / ny)], ys[static_cast<size_t>(idx % ny)]);
    }
    return out;
}

}  // namespace

Eigen::MatrixXd gram(const Kernel& kernel, const Eigen::MatrixXd& points) { return gram_impl<true>(kernel, points); }
Eigen::MatrixXd gram_serial(const Kernel& kernel, const Eigen::MatrixXd& points) { return gram_impl<false>(kernel, points); }

std::vector<double> kernel_table(const Kernel& kernel, const std::vector<double>& xs, const std::vector<double>& ys) {
    return table_impl<true>(kernel, xs, ys);
}
std::vector<double> kernel_table_serial(const Kernel& kernel, const std::vector<double>& xs, const std::vector<double>& ys) {
    return table_impl<false>(kernel, xs, ys);
}

AdmissibilityReport admissibility_check(const Kernel& kernel, const Eigen::MatrixXd& points) {
    AdmissibilityReport rep;
    const Eigen::MatrixXd g = gram(kernel, points);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
    rep.max_singular_value = svd.singularValues()(0);
    rep.min_singular_value = svd.singularValues()(svd.singularValues().size() - 1);
    rep.nonsingular = rep.min_singular_value > 1e-12 * rep.max_singular_value;

    // Boundedness scan: |K| over a deterministic grid of domain pairs. For
    // multivariate kernels the scan runs along the padded bounding box of the
    // sample points.
    double lo, hi;
    bool open = false;
    switch (kernel.kind) {
        case KernelKind::Gaussian:
        case KernelKind::Exponential:
            lo = points.minCoeff() - 1.0;
            hi = points.maxCoeff() + 1.0;
            break;
        case KernelKind::MercerGaussianTaylor:
            lo = -1.0; hi = 1.0;
            break;
        case KernelKind::BrownianBridge:
            lo = 0.0; hi = 1.0; open = true;
            break;
        default:
            lo = 0.0; hi = 1.0;
            break;
    }
    const int n = 33;
    double mx = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double a = lo + (hi - lo) * i / (n - 1.0);
            double b = lo + (hi - lo) * j / (n - 1.0);
            if (open) {
                a = std::min(std::max(a, lo + 1e-6), hi - 1e-6);
                b = std::min(std::max(b, lo + 1e-6), hi - 1e-6);
            }
            if (kernel.dim == 1) {
                mx = std::max(mx, std::abs(eval(kernel, a, b)));
            } else {
                mx = std::max(mx, std::abs(eval(kernel, Vec::Constant(kernel.dim, a), Vec::Constant(kernel.dim, b))));
            }
        }
    }
    rep.grid_max_abs = mx;
    rep.note = "finite-sample only";
    return rep;
}

double mercer_truncation_bound(KernelKind kind, int N) {
    if (N < 1) throw ConfigError("mercer_truncation_bound: N must be >= 1");
    switch (kind) {
        case KernelKind::MercerGaussianTaylor: {
            // sum_{n>N} 2^n/n!, summed until it stalls; the trailing term is
            // doubled, which caps the remainder since the ratios are < 1/2
            // once n >= 3.
            double term = 1.0;
            for (int n = 1; n <= N + 1; ++n) term *= 2.0 / n;
            double sum = term;
            int n = N + 2;
            while (n <= N + 400) {
                term *= 2.0 / n;
                if (term < sum * 1e-20 || term == 0.0) break;
                sum += term;
                ++n;
            }
            return sum + 2.0 * term;
        }
        case KernelKind::MercerBrownianSine:
            return 2.0 / (kPi * kPi * N);
        default:
            throw ConfigError("mercer_truncation_bound: kernel kind " + std::to_string(static_cast<int>(kind)) +
                              " has no series realization");
    }
}

}  // namespace rkbs
