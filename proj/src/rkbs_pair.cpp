#include "rkbs/rkbs_pair.hpp"

#include <cmath>

#include "rkbs/errors.hpp"

namespace rkbs {

namespace {

// Points the rank certificate samples the map at. Grid rules use their own
// grid (delta features are only defined there); series rules use dim interior
// points so boundary zeros of the sine family do not waste samples.
std::vector<double> probe_points(const FeatureMap& map) {
    std::vector<double> pts;
    if (map.rule == FeatureRule::HatGrid || map.rule == FeatureRule::DeltaGrid) {
        pts.assign(map.grid.data(), map.grid.data() + map.grid.size());
        return pts;
    }
    const int n = map.dim();
    const double lo = map.domain_min(), hi = map.domain_max();
    pts.reserve(n);
    for (int j = 0; j < n; ++j) pts.push_back(lo + (hi - lo) * (j + 0.5) / n);
    return pts;
}

int certificate_rank(const FeatureMap& map) {
    std::vector<Vec> rows;
    for (double t : probe_points(map)) rows.push_back(feature(map, t));
    return independence_rank(rows, 1e-10);
}

}  // namespace

RkbsPair make_rkbs_pair(FeatureSpace space1, FeatureSpace space2, FeatureMap map1, FeatureMap map2) {
    if (space1.dim != space2.dim) throw ConfigError("rkbs pair: spaces must share dim");
    if (space1.weights != space2.weights) throw ConfigError("rkbs pair: spaces must share weights");
    if (map1.dim() != space1.dim) throw ConfigError("rkbs pair: map1 dim != space dim");
    if (map2.dim() != space2.dim) throw ConfigError("rkbs pair: map2 dim != space dim");

    RkbsPair pair{std::move(space1), std::move(space2), std::move(map1), std::move(map2), 1.0, 0, 0, false, ""};
    pair.bound_constant = pairing_bound_constant(pair.space1.spec, pair.space2.spec);
    pair.rank1 = certificate_rank(pair.map1);
    pair.rank2 = certificate_rank(pair.map2);
    pair.full_rank = pair.rank1 == pair.space1.dim && pair.rank2 == pair.space2.dim;
    if (!pair.full_rank)
        pair.note = "feature samples numerically rank-deficient (" + std::to_string(pair.rank1) + "/" +
                    std::to_string(pair.rank2) + " of " + std::to_string(pair.space1.dim) +
                    "); norms act on representatives, not functions";
    return pair;
}

RkbsPair make_gaussian_rkhs(int dim) {
    auto space = FeatureSpace::counting(dim, NormSpec::lp(2.0));
    auto map = FeatureMap::gaussian_taylor(dim);
    return make_rkbs_pair(space, space, map, map);
}

RkbsPair make_power_mercer(double p, int dim) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("power mercer pair: p must lie in (1, inf)");
    const double q = p / (p - 1.0);
    auto map = FeatureMap::gaussian_taylor(dim);
    return make_rkbs_pair(FeatureSpace::counting(dim, NormSpec::lp(q)),
                          FeatureSpace::counting(dim, NormSpec::lp(p)), map, map);
}

RkbsPair make_hat_delta(int grid_n) {
    if (grid_n < 2) throw ConfigError("hat/delta pair: need at least two grid points");
    Vec grid(grid_n);
    for (int j = 0; j < grid_n; ++j) grid[j] = static_cast<double>(j) / (grid_n - 1);
    return make_rkbs_pair(FeatureSpace::counting(grid_n, NormSpec::sup()),
                          FeatureSpace::counting(grid_n, NormSpec::l1()),
                          FeatureMap::hat_grid(grid), FeatureMap::delta_grid(grid));
}

RkbsPair make_entropy_orlicz(int dim) {
    const auto young = YoungPair::entropy();
    auto map = FeatureMap::gaussian_taylor(dim);
    return make_rkbs_pair(FeatureSpace::counting(dim, NormSpec::orlicz_dual(young)),
                          FeatureSpace::counting(dim, NormSpec::orlicz_gauge(young)), map, map);
}

double eval(const RkbsPair& pair, const BFunction& fn, double point) {
    if (fn.side == Side::B1) {
        if (fn.coef.size() != pair.space2.dim) throw ConfigError("eval: B1 coefficient dim != W2 dim");
        return pairing(pair.space2.weights, feature(pair.map1, point), fn.coef);
    }
    if (fn.coef.size() != pair.space1.dim) throw ConfigError("eval: B2 coefficient dim != W1 dim");
    return pairing(pair.space1.weights, fn.coef, feature(pair.map2, point));
}

double bnorm(const RkbsPair& pair, const BFunction& fn) {
    return fn.side == Side::B1 ? norm(pair.space2, fn.coef) : norm(pair.space1, fn.coef);
}

double b_pairing(const RkbsPair& pair, const BFunction& f, const BFunction& g) {
    if (f.side != Side::B1 || g.side != Side::B2)
        throw ConfigError("b_pairing: arguments must be a (B1, B2) pair in that order");
    return pairing(pair.space1, pair.space2, g.coef, f.coef);
}

double reproduce_residual(const RkbsPair& pair, const BFunction& fn, const std::vector<double>& points) {
    double worst = 0.0;
    for (double t : points) {
        const double direct = eval(pair, fn, t);
        double reproduced;
        if (fn.side == Side::B1) {
            reproduced = b_pairing(pair, fn, BFunction{Side::B2, feature(pair.map1, t)});
        } else {
            reproduced = b_pairing(pair, BFunction{Side::B1, feature(pair.map2, t)}, fn);
        }
        worst = std::max(worst, std::abs(direct - reproduced));
    }
    return worst;
}

double point_eval_constant(const RkbsPair& pair, double point, Side side) {
    if (side == Side::B1) return pair.bound_constant * norm(pair.space1, feature(pair.map1, point));
    return pair.bound_constant * norm(pair.space2, feature(pair.map2, point));
}

double kernel_value(const RkbsPair& pair, double x, double y) {
    return pairing(pair.space1.weights, feature(pair.map1, x), feature(pair.map2, y));
}

}  // namespace rkbs
