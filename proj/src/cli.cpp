#include "rkbs/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "rkbs/errors.hpp"
#include "rkbs/duality.hpp"
#include "rkbs/kernel.hpp"
#include "rkbs/learn.hpp"
#include "rkbs/rkbs_pair.hpp"
#include "rkbs/verify.hpp"

namespace rkbs::cli {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': not a number: '" + text + "'");
    }
    if (used != text.size()) throw ConfigError("field '" + key + "': trailing junk in '" + text + "'");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(key, trim(item)));
    if (out.empty()) throw ConfigError("field '" + key + "': empty list");
    return out;
}

struct Config {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const {
        const auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
    std::string require(const std::string& key) const {
        const auto it = values.find(key);
        if (it == values.end()) throw ConfigError("field '" + key + "' is required");
        return it->second;
    }
    double number(const std::string& key, double fallback) const {
        return has(key) ? parse_number(key, values.at(key)) : fallback;
    }
    double require_number(const std::string& key) const { return parse_number(key, require(key)); }
    int integer(const std::string& key, int fallback) const {
        const double v = number(key, fallback);
        if (v != std::floor(v)) throw ConfigError("field '" + key + "' must be an integer");
        return static_cast<int>(v);
    }
    uint64_t seed() const { return static_cast<uint64_t>(number("seed", 1.0)); }
};

void load_config_file(const std::string& path, std::map<std::string, std::string>& into) {
    std::ifstream f(path);
    if (!f) throw ConfigError("field 'config': cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("field 'config': " + path + ":" + std::to_string(lineno) + " is not key=value");
        into[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
}

Config parse_args(const std::vector<std::string>& args) {
    std::map<std::string, std::string> flags;
    for (size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0) throw ConfigError("expected --key or --key=value, got '" + a + "'");
        const std::string body = a.substr(2);
        const auto eq = body.find('=');
        if (eq != std::string::npos) {
            flags[body.substr(0, eq)] = body.substr(eq + 1);
        } else {
            if (i + 1 >= args.size()) throw ConfigError("flag --" + body + " is missing its value");
            flags[body] = args[++i];
        }
    }
    Config cfg;
    const auto it = flags.find("config");
    if (it != flags.end()) load_config_file(it->second, cfg.values);
    for (const auto& [k, v] : flags) cfg.values[k] = v;  // flags win over the file
    return cfg;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp(target);
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("field 'out': cannot write " + path);
        f << content;
    }
    fs::rename(tmp, target);
}

void emit_csv(const Config& cfg, std::ostream& out, const std::string& content) {
    if (cfg.has("out"))
        write_text_atomic(cfg.get("out", ""), content);
    else
        out << content;
}

// ---- shared builders ------------------------------------------------------

RkbsPair pair_from_config(const Config& cfg) {
    const std::string name = cfg.get("pair", "gaussian_rkhs");
    const int dim = cfg.integer("dim", 40);
    if (name == "gaussian_rkhs") return make_gaussian_rkhs(dim);
    if (name == "power_mercer") return make_power_mercer(cfg.number("p", 3.0), dim);
    if (name == "hat_delta") return make_hat_delta(cfg.integer("grid_n", 101));
    if (name == "entropy_orlicz") return make_entropy_orlicz(dim);
    throw ConfigError("field 'pair': unknown pair '" + name + "'");
}

SampleSet samples_from_config(const Config& cfg) {
    if (cfg.has("samples")) {
        std::ifstream f(cfg.get("samples", ""));
        if (!f) throw ConfigError("field 'samples': cannot open " + cfg.get("samples", ""));
        std::vector<double> xs, ts;
        std::string line;
        int lineno = 0;
        while (std::getline(f, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            const auto comma = t.find(',');
            if (comma == std::string::npos)
                throw ConfigError("field 'samples': line " + std::to_string(lineno) + " is not x,t");
            const std::string sx = trim(t.substr(0, comma)), st = trim(t.substr(comma + 1));
            if (lineno == 1 && (sx == "x" || st == "t")) continue;  // header row
            xs.push_back(parse_number("samples", sx));
            ts.push_back(parse_number("samples", st));
        }
        Vec targets(static_cast<Eigen::Index>(ts.size()));
        for (size_t i = 0; i < ts.size(); ++i) targets[static_cast<Eigen::Index>(i)] = ts[i];
        return SampleSet(std::move(xs), std::move(targets));
    }
    const std::vector<double> xs = parse_list("x", cfg.require("x"));
    const std::vector<double> ts = parse_list("t", cfg.require("t"));
    if (xs.size() != ts.size()) throw ConfigError("fields 'x' and 't' differ in length");
    Vec targets(static_cast<Eigen::Index>(ts.size()));
    for (size_t i = 0; i < ts.size(); ++i) targets[static_cast<Eigen::Index>(i)] = ts[i];
    return SampleSet(xs, std::move(targets));
}

YoungPair young_from_config(const Config& cfg) {
    const std::string kind = cfg.get("young", "entropy");
    if (kind == "power") return YoungPair::power(cfg.number("young_p", 2.0));
    if (kind == "entropy") return YoungPair::entropy();
    if (kind == "scaled-entropy") return YoungPair::scaled_entropy(cfg.number("k", 1.0));
    throw ConfigError("field 'young': unknown kind '" + kind + "'");
}

NormSpec spec_from_config(const Config& cfg) {
    const std::string kind = cfg.get("norm", "lp");
    if (kind == "lp") return NormSpec::lp(cfg.number("p", 2.0));
    if (kind == "sup") return NormSpec::sup();
    if (kind == "l1") return NormSpec::l1();
    if (kind == "orlicz_gauge") return NormSpec::orlicz_gauge(young_from_config(cfg));
    if (kind == "orlicz_dual") return NormSpec::orlicz_dual(young_from_config(cfg));
    throw ConfigError("field 'norm': unknown kind '" + kind + "'");
}

std::string solve_csv(const SolveReport& rep) {
    std::string csv = "series,index,value\n";
    for (Eigen::Index i = 0; i < rep.coef.size(); ++i)
        csv += "coef," + std::to_string(i) + "," + fmt(rep.coef[i]) + "\n";
    for (Eigen::Index i = 0; i < rep.representer_coeffs.size(); ++i)
        csv += "representer," + std::to_string(i) + "," + fmt(rep.representer_coeffs[i]) + "\n";
    return csv;
}

void print_summary(std::ostream& err, const char* cmd, const RkbsPair& pair, const SolveReport& rep) {
    err << cmd << ": norm=" << fmt(rep.norm_value) << " objective=" << fmt(rep.objective)
        << " constraint_residual=" << fmt(rep.constraint_residual)
        << " representer_residual=" << fmt(rep.representer_residual) << " iterations=" << rep.iterations
        << " converged=" << (rep.converged ? 1 : 0) << " spread=" << fmt(rep.multistart_spread)
        << " support=" << rep.support_size << "\n";
    if (!rep.message.empty()) err << cmd << ": " << rep.message << "\n";
    if (rep.subspace_solution) err << cmd << ": solved on the feasible subspace of a rank-deficient system\n";
    if (!pair.note.empty()) err << cmd << ": note: " << pair.note << "\n";
}

// ---- subcommands -----------------------------------------------------------

// a key outside the subcommand's vocabulary is a typo, not a request to be
// ignored; config/out/seed are understood everywhere
void reject_unknown_keys(const Config& cfg, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : cfg.values) {
        (void)value;
        if (key == "config" || key == "out" || key == "seed") continue;
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw ConfigError("field '" + key + "' is not recognized by this subcommand");
    }
}

int cmd_kernel_table(const Config& cfg, std::ostream& out, std::ostream&) {
    reject_unknown_keys(cfg, {"kernel", "gamma", "xmin", "xmax", "ymin", "ymax", "nx", "ny"});
    const Kernel kernel = Kernel::by_name(cfg.require("kernel"), cfg.number("gamma", 1.0), 1);
    double lo = 0.0, hi = 1.0;
    if (kernel.kind == KernelKind::Gaussian || kernel.kind == KernelKind::Exponential ||
        kernel.kind == KernelKind::MercerGaussianTaylor) {
        lo = -1.0;
    } else if (kernel.kind == KernelKind::BrownianBridge) {
        lo = 0.05;
        hi = 0.95;
    }
    const double xmin = cfg.number("xmin", lo), xmax = cfg.number("xmax", hi);
    const double ymin = cfg.number("ymin", lo), ymax = cfg.number("ymax", hi);
    const int nx = cfg.integer("nx", 11), ny = cfg.integer("ny", 11);
    if (nx < 1 || ny < 1) throw ConfigError("fields 'nx'/'ny' must be positive");
    std::vector<double> xs(nx), ys(ny);
    for (int i = 0; i < nx; ++i) xs[static_cast<size_t>(i)] = nx == 1 ? xmin : xmin + (xmax - xmin) * i / (nx - 1.0);
    for (int j = 0; j < ny; ++j) ys[static_cast<size_t>(j)] = ny == 1 ? ymin : ymin + (ymax - ymin) * j / (ny - 1.0);
    const auto table = kernel_table(kernel, xs, ys);
    std::string csv = "x,y,value\n";
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            csv += fmt(xs[static_cast<size_t>(i)]) + "," + fmt(ys[static_cast<size_t>(j)]) + "," +
                   fmt(table[static_cast<size_t>(i * ny + j)]) + "\n";
    emit_csv(cfg, out, csv);
    return 0;
}

int cmd_norm(const Config& cfg, std::ostream& out, std::ostream& err) {
    reject_unknown_keys(cfg, {"vector", "weights", "norm", "p", "young", "young_p", "k"});
    const std::vector<double> entries = parse_list("vector", cfg.require("vector"));
    const int n = static_cast<int>(entries.size());
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = entries[static_cast<size_t>(i)];
    Vec w = Vec::Ones(n);
    if (cfg.has("weights") && cfg.get("weights", "") != "counting") {
        const auto we = parse_list("weights", cfg.get("weights", ""));
        if (static_cast<int>(we.size()) != n) throw ConfigError("fields 'vector' and 'weights' differ in length");
        for (int i = 0; i < n; ++i) w[i] = we[static_cast<size_t>(i)];
    }
    const NormSpec spec = spec_from_config(cfg);
    const FeatureSpace space(n, w, spec);
    const double value = norm(space, v);
    emit_csv(cfg, out, "spec,value\n" + spec.describe() + "," + fmt(value) + "\n");
    err << "norm: " << spec.describe() << " of the input vector = " << fmt(value) << "\n";
    return 0;
}

int cmd_sip_scan(const Config& cfg, std::ostream& out, std::ostream&) {
    reject_unknown_keys(cfg, {"x", "y", "ks", "kmin", "kmax", "count"});
    const auto xe = parse_list("x", cfg.require("x"));
    const auto ye = parse_list("y", cfg.require("y"));
    if (xe.size() != ye.size()) throw ConfigError("fields 'x' and 'y' differ in length");
    Vec x(static_cast<Eigen::Index>(xe.size())), y(static_cast<Eigen::Index>(ye.size()));
    for (size_t i = 0; i < xe.size(); ++i) {
        x[static_cast<Eigen::Index>(i)] = xe[i];
        y[static_cast<Eigen::Index>(i)] = ye[i];
    }
    std::vector<double> ks;
    if (cfg.has("ks")) {
        ks = parse_list("ks", cfg.get("ks", ""));
    } else {
        const double kmin = cfg.number("kmin", 1e-6), kmax = cfg.number("kmax", 1e8);
        const int count = cfg.integer("count", 15);
        if (!(kmin > 0.0) || !(kmax > kmin) || count < 2)
            throw ConfigError("fields 'kmin'/'kmax'/'count' must give an increasing positive range");
        for (int i = 0; i < count; ++i)
            ks.push_back(kmin * std::pow(kmax / kmin, i / (count - 1.0)));
    }
    const auto scan = sip_sphere_scan(x, y, ks);
    const double l2 = scan_l2_limit(x, y), l1 = scan_l1_limit(x, y);
    std::string csv = "k,value,l2,l1\n";
    for (const auto& pt : scan) csv += fmt(pt.k) + "," + fmt(pt.value) + "," + fmt(l2) + "," + fmt(l1) + "\n";
    emit_csv(cfg, out, csv);
    return 0;
}

int cmd_interpolate(const Config& cfg, std::ostream& out, std::ostream& err) {
    reject_unknown_keys(cfg, {"pair", "dim", "p", "grid_n", "samples", "x", "t", "tol"});
    const RkbsPair pair = pair_from_config(cfg);
    const SampleSet samples = samples_from_config(cfg);
    const auto rep = min_norm_interpolate(pair, samples, cfg.number("tol", 1e-10), cfg.seed());
    emit_csv(cfg, out, solve_csv(rep));
    print_summary(err, "interpolate", pair, rep);
    return 0;
}

int cmd_regnet(const Config& cfg, std::ostream& out, std::ostream& err) {
    reject_unknown_keys(cfg, {"pair", "dim", "p", "grid_n", "samples", "x", "t", "reg", "tol", "lambda", "lambda_path"});
    const RkbsPair pair = pair_from_config(cfg);
    const SampleSet samples = samples_from_config(cfg);
    const std::string reg_name = cfg.get("reg", "square");
    RegKind reg = RegKind::Square;
    if (reg_name == "identity")
        reg = RegKind::Identity;
    else if (reg_name != "square")
        throw ConfigError("field 'reg': unknown regularizer '" + reg_name + "'");
    const double tol = cfg.number("tol", 1e-9);

    auto loss_of = [&](const Vec& v) {
        double s = 0.0;
        for (int j = 0; j < samples.size(); ++j) {
            const double r = eval(pair, BFunction{Side::B1, v}, samples.x[static_cast<size_t>(j)]) - samples.t[j];
            s += r * r;
        }
        return s;
    };

    if (cfg.has("lambda_path")) {
        const auto spec = parse_list("lambda_path", cfg.get("lambda_path", ""));
        if (spec.size() != 3) throw ConfigError("field 'lambda_path' must be max,min,count");
        const double lmax = spec[0], lmin = spec[1];
        const int count = static_cast<int>(spec[2]);
        if (!(lmax > lmin) || !(lmin > 0.0) || count < 2)
            throw ConfigError("field 'lambda_path' must give a decreasing positive range");
        std::string csv = "lambda,norm,loss,objective\n";
        Vec warm;
        for (int i = 0; i < count; ++i) {
            const double lambda = lmax * std::pow(lmin / lmax, i / (count - 1.0));
            const auto rep = regnet(pair, samples, lambda, Loss::square(), reg, tol, cfg.seed(),
                                    warm.size() > 0 ? &warm : nullptr);
            warm = rep.coef;
            csv += fmt(lambda) + "," + fmt(rep.norm_value) + "," + fmt(loss_of(rep.coef)) + "," +
                   fmt(rep.objective) + "\n";
            err << "regnet: lambda=" << fmt(lambda) << " norm=" << fmt(rep.norm_value) << "\n";
        }
        emit_csv(cfg, out, csv);
        return 0;
    }

    const auto rep = regnet(pair, samples, cfg.require_number("lambda"), Loss::square(), reg, tol, cfg.seed());
    emit_csv(cfg, out, solve_csv(rep));
    print_summary(err, "regnet", pair, rep);
    return 0;
}

int cmd_l1(const Config& cfg, std::ostream& out, std::ostream& err) {
    reject_unknown_keys(cfg, {"pair", "dim", "grid_n", "samples", "x", "t", "lambda"});
    Config with_default = cfg;
    if (!with_default.has("pair")) with_default.values["pair"] = "hat_delta";
    const RkbsPair pair = pair_from_config(with_default);
    const SampleSet samples = samples_from_config(cfg);
    const auto rep = l1_regnet(pair, samples, cfg.require_number("lambda"));
    emit_csv(cfg, out, solve_csv(rep));
    print_summary(err, "l1", pair, rep);
    return 0;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream&) {
    reject_unknown_keys(cfg, {});
    return verify_suite(cfg.seed(), out) ? 0 : 4;
}

const char* kUsage =
    "usage: rkbs <subcommand> [--config file] [--key value ...]\n"
    "subcommands: kernel-table | norm | sip-scan | interpolate | regnet | l1 | verify\n";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.empty()) {
            err << kUsage;
            return 2;
        }
        const Config cfg = parse_args(args);
        const std::string& cmd = args[0];
        if (cmd == "kernel-table") return cmd_kernel_table(cfg, out, err);
        if (cmd == "norm") return cmd_norm(cfg, out, err);
        if (cmd == "sip-scan") return cmd_sip_scan(cfg, out, err);
        if (cmd == "interpolate") return cmd_interpolate(cfg, out, err);
        if (cmd == "regnet") return cmd_regnet(cfg, out, err);
        if (cmd == "l1") return cmd_l1(cfg, out, err);
        if (cmd == "verify") return cmd_verify(cfg, out, err);
        throw ConfigError("unknown subcommand '" + cmd + "'");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::range_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rkbs::cli
