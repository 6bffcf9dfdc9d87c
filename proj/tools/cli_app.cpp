/*
 * Copyright 2026 The gnfp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli_app.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>
#include <json.hpp>

#include "gnfp/gnfp.hpp"

namespace gnfp::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class Issues {
public:
    void add(const std::string& path, const std::string& message) { items_.push_back(path + ": " + message); }
    bool empty() const { return items_.empty(); }
    [[noreturn]] void raise() { throw ConfigError(std::move(items_)); }
    void raise_if_any() {
        if (!items_.empty()) raise();
    }

private:
    std::vector<std::string> items_;
};

std::optional<double> read_real(const json& obj, const std::string& key, const std::string& path, Issues& issues) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        issues.add(path + key, "expected a number");
        return std::nullopt;
    }
    return v.get<double>();
}

std::optional<std::uint64_t> read_count(const json& obj, const std::string& key, const std::string& path,
                                        Issues& issues) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        issues.add(path + key, "expected a non-negative integer");
        return std::nullopt;
    }
    return v.get<std::uint64_t>();
}

std::optional<std::string> read_string(const json& obj, const std::string& key, const std::string& path,
                                       Issues& issues) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_string()) {
        issues.add(path + key, "expected a string");
        return std::nullopt;
    }
    return v.get<std::string>();
}

/// A number or a flat array of numbers.
std::optional<std::vector<double>> read_coords(const json& v, const std::string& path, Issues& issues) {
    if (v.is_number()) return std::vector<double>{v.get<double>()};
    if (v.is_array()) {
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) {
                issues.add(fmt::format("{}[{}]", path, i), "expected a number");
                return std::nullopt;
            }
            out.push_back(v[i].get<double>());
        }
        return out;
    }
    issues.add(path, "expected a number or an array of numbers");
    return std::nullopt;
}

/// Row-major table given either as rows x cols nested arrays or flat.
std::optional<std::vector<double>> read_table(const json& v, const std::string& path, std::size_t rows,
                                              std::size_t cols, Issues& issues) {
    if (!v.is_array()) {
        issues.add(path, "expected an array");
        return std::nullopt;
    }
    std::vector<double> out;
    const bool nested = !v.empty() && v[0].is_array();
    if (nested) {
        if (v.size() != rows) {
            issues.add(path, fmt::format("expected {} rows, got {}", rows, v.size()));
            return std::nullopt;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            auto row = read_coords(v[i], fmt::format("{}[{}]", path, i), issues);
            if (!row) return std::nullopt;
            if (row->size() != cols || !v[i].is_array()) {
                issues.add(fmt::format("{}[{}]", path, i), fmt::format("expected {} columns", cols));
                return std::nullopt;
            }
            out.insert(out.end(), row->begin(), row->end());
        }
        return out;
    }
    auto flat = read_coords(v, path, issues);
    if (!flat) return std::nullopt;
    if (flat->size() != rows * cols) {
        issues.add(path, fmt::format("expected {} entries, got {}", rows * cols, flat->size()));
        return std::nullopt;
    }
    return flat;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path, Issues& issues) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) issues.add(path + key, "unknown field");
}

DpProblem parse_problem(const json& p, const std::string& path) {
    Issues issues;
    if (!p.is_object()) {
        issues.add(path, "expected an object");
        issues.raise();
    }
    check_keys(p, {"states", "decisions", "reward", "transition", "aggregator"}, path + ".", issues);
    for (const char* key : {"states", "decisions", "reward", "transition", "aggregator"})
        if (!p.contains(key)) issues.add(path + "." + key, "missing field");
    issues.raise_if_any();

    auto states = read_coords(p.at("states"), path + ".states", issues);
    auto decisions = read_coords(p.at("decisions"), path + ".decisions", issues);
    issues.raise_if_any();
    const std::size_t ns = states->size();
    const std::size_t nd = decisions->size();
    auto reward = read_table(p.at("reward"), path + ".reward", ns, nd, issues);
    auto transition = read_table(p.at("transition"), path + ".transition", ns, nd, issues);

    std::optional<Aggregator> aggregator;
    const auto& agg = p.at("aggregator");
    const std::string agg_path = path + ".aggregator";
    if (agg.is_object() && agg.contains("affine")) {
        const auto& aff = agg.at("affine");
        AffineAggregator a;
        if (auto beta = read_real(aff, "beta", agg_path + ".affine.", issues))
            a.beta = *beta;
        else
            issues.add(agg_path + ".affine.beta", "missing field");
        if (aff.contains("c"))
            if (auto c = read_table(aff.at("c"), agg_path + ".affine.c", ns, nd, issues)) a.c = std::move(*c);
        aggregator = std::move(a);
    } else if (agg.is_object() && agg.contains("builtin")) {
        auto name = read_string(agg, "builtin", agg_path + ".", issues);
        const double beta = read_real(agg, "beta", agg_path + ".", issues).value_or(0.5);
        if (name) {
            try {
                aggregator = builtin_aggregator(*name, beta);
            } catch (const UsageError& e) {
                issues.add(agg_path + ".builtin", e.what());
            }
        }
    } else {
        issues.add(agg_path, "expected {\"affine\": {...}} or {\"builtin\": name}");
    }
    issues.raise_if_any();

    try {
        return DpProblem::from_tables(std::move(*states), std::move(*decisions), std::move(*reward), *transition,
                                      std::move(*aggregator));
    } catch (const IntegrityError& e) {
        throw IntegrityError(path + ".transition: " + e.what());
    } catch (const UsageError& e) {
        issues.add(path, e.what());
        issues.raise();
    }
}

bool is_table_carrier(const MetricSpec& m) { return m.construction == "sup"; }
bool is_vector_carrier(const MetricSpec& m) { return !is_table_carrier(m) && m.base == "euclidean"; }

MetricSpec parse_metric(const json& m, Issues& issues) {
    MetricSpec spec;
    if (!m.is_object()) {
        issues.add("metric", "expected an object");
        return spec;
    }
    check_keys(m, {"construction", "base", "dim", "n", "grid_size"}, "metric.", issues);
    if (auto c = read_string(m, "construction", "metric.", issues))
        spec.construction = *c;
    else
        issues.add("metric.construction", "missing field");
    if (auto b = read_string(m, "base", "metric.", issues)) spec.base = *b;
    if (auto n = read_count(m, "n", "metric.", issues)) spec.n = *n;
    if (auto g = read_count(m, "grid_size", "metric.", issues)) spec.grid_size = *g;
    if (auto d = read_count(m, "dim", "metric.", issues)) spec.dim = *d;

    static const std::set<std::string> constructions{"rho_max", "k1_sum", "k2_max", "sup"};
    if (!constructions.count(spec.construction))
        issues.add("metric.construction", "unknown construction '" + spec.construction + "'");
    if (spec.n < 3) issues.add("metric.n", "arity must be >= 3");
    if (spec.base != "abs" && spec.base != "euclidean") issues.add("metric.base", "unknown base metric '" + spec.base + "'");
    if (spec.construction == "rho_max" && spec.base != "abs") issues.add("metric.base", "rho_max is defined on reals only");
    if (is_vector_carrier(spec)) {
        if (!m.contains("dim")) spec.dim = 2;
        if (spec.dim != 2 && spec.dim != 3) issues.add("metric.dim", "euclidean base supports dim 2 or 3");
    } else if (!is_table_carrier(spec)) {
        spec.dim = 1;
    }
    if (is_table_carrier(spec) && spec.grid_size < 1) issues.add("metric.grid_size", "must be >= 1");
    return spec;
}

MappingSpec parse_mapping(const json& m, const MetricSpec& metric, Issues& issues) {
    MappingSpec spec;
    if (!m.is_object()) {
        issues.add("mapping", "expected an object");
        return spec;
    }
    check_keys(m, {"family", "a", "b", "scale", "angle"}, "mapping.", issues);
    if (auto f = read_string(m, "family", "mapping.", issues))
        spec.family = *f;
    else
        issues.add("mapping.family", "missing field");
    if (auto a = read_real(m, "a", "mapping.", issues)) spec.a = *a;
    if (auto s = read_real(m, "scale", "mapping.", issues)) spec.scale = *s;
    if (auto t = read_real(m, "angle", "mapping.", issues)) spec.angle = *t;
    spec.b.assign(metric.dim, 0.0);
    if (m.contains("b"))
        if (auto b = read_coords(m.at("b"), "mapping.b", issues)) {
            if (b->size() == metric.dim)
                spec.b = *b;
            else
                issues.add("mapping.b", fmt::format("expected {} coordinates", metric.dim));
        }

    if (is_table_carrier(metric)) {
        issues.add("mapping", "mapping families are defined for real and vector carriers only");
    } else if (spec.family == "affine") {
    } else if (spec.family == "cosine") {
        if (metric.dim != 1) issues.add("mapping.family", "cosine acts on reals only");
    } else if (spec.family == "scaled_rotation") {
        if (metric.dim != 2) issues.add("mapping.family", "scaled_rotation acts on R^2 only");
    } else if (!spec.family.empty()) {
        issues.add("mapping.family", "unknown mapping '" + spec.family + "'");
    }
    return spec;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// execution

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_file(const fs::path& path, const std::string& content, RunSummary& summary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
    summary.outputs.push_back(path);
}

template <class P>
P make_point(const std::vector<double>& coords);

template <>
double make_point<double>(const std::vector<double>& coords) {
    return coords.at(0);
}

template <>
Vec<2> make_point<Vec<2>>(const std::vector<double>& coords) {
    return {coords.at(0), coords.at(1)};
}

template <>
Vec<3> make_point<Vec<3>>(const std::vector<double>& coords) {
    return {coords.at(0), coords.at(1), coords.at(2)};
}

Mapping<double> make_mapping(const MappingSpec& m, double*) {
    const double a = m.a;
    const double b = m.b.at(0);
    if (m.family == "cosine") return [a, b](const double& x) { return a * std::cos(x) + b; };
    return [a, b](const double& x) { return a * x + b; };
}

template <std::size_t D>
Mapping<Vec<D>> make_mapping(const MappingSpec& m, Vec<D>*) {
    Vec<D> b{};
    std::copy(m.b.begin(), m.b.end(), b.begin());
    if constexpr (D == 2) {
        if (m.family == "scaled_rotation") {
            const double c = m.scale * std::cos(m.angle);
            const double s = m.scale * std::sin(m.angle);
            return [c, s, b](const Vec<2>& x) { return Vec<2>{c * x[0] - s * x[1] + b[0], s * x[0] + c * x[1] + b[1]}; };
        }
    }
    const double a = m.a;
    return [a, b](const Vec<D>& x) {
        Vec<D> y{};
        for (std::size_t i = 0; i < D; ++i) y[i] = a * x[i] + b[i];
        return y;
    };
}

/// Calls fn(metric, sampler) with the carrier selected by the metric spec.
template <class Fn>
RunSummary with_carrier(const RunConfig& cfg, Fn&& fn) {
    const auto& m = cfg.metric;
    const double lo = cfg.sample_lo;
    const double hi = cfg.sample_hi;
    if (is_table_carrier(m)) {
        std::vector<double> states(m.grid_size);
        for (std::size_t i = 0; i < states.size(); ++i) states[i] = static_cast<double>(i);
        auto grid = std::make_shared<const StateGrid>(std::move(states));
        return fn(sup_metric_gn(grid, m.n), uniform_table_sampler(grid, cfg.seed, lo, hi));
    }
    if (is_vector_carrier(m)) {
        if (m.dim == 2) {
            auto metric = m.construction == "k1_sum" ? k1_sum(euclidean_distance<2>(), m.n) : k2_max(euclidean_distance<2>(), m.n);
            return fn(metric, uniform_box_sampler<2>(cfg.seed, lo, hi));
        }
        auto metric = m.construction == "k1_sum" ? k1_sum(euclidean_distance<3>(), m.n) : k2_max(euclidean_distance<3>(), m.n);
        return fn(metric, uniform_box_sampler<3>(cfg.seed, lo, hi));
    }
    auto metric = m.construction == "rho_max" ? rho_max(m.n)
                  : m.construction == "k1_sum" ? k1_sum(abs_distance(), m.n)
                                               : k2_max(abs_distance(), m.n);
    return fn(metric, uniform_real_sampler(cfg.seed, lo, hi));
}

std::string header(const RunConfig& cfg) {
    return fmt::format("command={} seed={} trials={} tol={}\n", command_name(cfg.command), cfg.seed, cfg.trials,
                       cfg.tol);
}

RunSummary run_check_axioms(const RunConfig& cfg) {
    return with_carrier(cfg, [&]<class P>(const GnMetric<P>& metric, const Sampler<P>& sampler) {
        RunSummary s;
        std::vector<VerificationReport<P>> reports{check_axioms(metric, sampler, cfg.trials, cfg.tol),
                                                   check_propositions(metric, sampler, cfg.trials, cfg.tol)};
        std::ostringstream csv;
        write_verification_csv(csv, reports);
        s.success = reports[0].all_passed() && reports[1].all_passed();
        s.text = header(cfg) + "metric=" + metric.name() + "\n[axioms] " + format_verification_summary(reports[0]) +
                 "[propositions] " + format_verification_summary(reports[1]) +
                 fmt::format("result={}\n", s.success ? "PASS" : "FAIL");
        write_file(cfg.out_dir / "axioms_report.csv", csv.str(), s);
        write_file(cfg.out_dir / "summary.txt", s.text, s);
        return s;
    });
}

template <class P>
Mapping<P> mapping_for(const RunConfig& cfg) {
    if constexpr (std::is_same_v<P, BoundedFunctionPoint>) {
        throw UsageError("mapping families are defined for real and vector carriers only");
    } else {
        return make_mapping(*cfg.mapping, static_cast<P*>(nullptr));
    }
}

template <class P>
P point_for(const std::vector<double>& coords) {
    if constexpr (std::is_same_v<P, BoundedFunctionPoint>)
        throw UsageError("start points are defined for real and vector carriers only");
    else
        return make_point<P>(coords);
}

RunSummary run_solve_fixed_point(const RunConfig& cfg) {
    return with_carrier(cfg, [&]<class P>(const GnMetric<P>& metric, const Sampler<P>& sampler) {
        RunSummary s;
        CertifiedSolveOptions<P> opts;
        opts.tol = cfg.tol;
        opts.max_iter = cfg.max_iter;
        opts.trials = cfg.trials;
        opts.suzuki_tol = cfg.suzuki_tol;
        if (cfg.second_start) opts.second_start = point_for<P>(*cfg.second_start);
        const auto T = mapping_for<P>(cfg);
        const auto sol = solve_with_certificate(T, point_for<P>(cfg.y0), metric, sampler, opts);

        std::ostringstream csv;
        write_trace_csv(csv, sol.trace);
        s.success = sol.ok();
        s.text = header(cfg) + "metric=" + metric.name() + " mapping=" + cfg.mapping->family + "\n" +
                 format_certificate_summary(sol.certificate) +
                 (sol.suzuki ? format_suzuki_summary(*sol.suzuki) : std::string("suzuki: skipped\n")) +
                 format_trace_summary(sol.trace) + format_uniqueness_summary(sol.uniqueness) +
                 fmt::format("result={}\n", s.success ? "PASS" : "FAIL");
        write_file(cfg.out_dir / "trace.csv", csv.str(), s);
        write_file(cfg.out_dir / "summary.txt", s.text, s);
        return s;
    });
}

RunSummary run_suzuki_check(const RunConfig& cfg) {
    return with_carrier(cfg, [&]<class P>(const GnMetric<P>& metric, const Sampler<P>& sampler) {
        RunSummary s;
        const auto report = check_suzuki(mapping_for<P>(cfg), metric, cfg.r, sampler, cfg.trials, cfg.tol);
        std::ostringstream csv;
        write_suzuki_csv(csv, report);
        s.success = report.holds();
        s.text = header(cfg) + "metric=" + metric.name() + " mapping=" + cfg.mapping->family + "\n" +
                 format_suzuki_summary(report) + fmt::format("result={}\n", s.success ? "PASS" : "FAIL");
        write_file(cfg.out_dir / "suzuki_violations.csv", csv.str(), s);
        write_file(cfg.out_dir / "summary.txt", s.text, s);
        return s;
    });
}

RunSummary run_solve_dp(const RunConfig& cfg) {
    RunSummary s;
    const auto& problem = *cfg.problem;
    DpSolveOptions opts;
    opts.n = cfg.metric.n;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.lipschitz_samples = cfg.lipschitz_samples;
    opts.lipschitz_seed = cfg.seed;

    const auto lipschitz = verify_M_lipschitz(problem, problem.declared_r(), opts.lipschitz_samples, cfg.seed);
    std::string text = header(cfg) + fmt::format("states={} decisions={} n={}\n", problem.num_states(),
                                                 problem.num_decisions(), opts.n) +
                       format_lipschitz_summary(lipschitz);
    if (!lipschitz.passed) {
        s.text = text + "result=FAIL\n";
        write_file(cfg.out_dir / "summary.txt", s.text, s);
        return s;
    }
    const auto sol = solve(problem, opts);
    std::ostringstream value_csv;
    std::ostringstream trace_csv;
    write_value_csv(value_csv, problem, sol);
    write_trace_csv(trace_csv, sol.trace);
    s.success = sol.converged;
    text += format_trace_summary(sol.trace);
    if (sol.value)
        text += fmt::format("value: iterations={} functional_residual={}\n", sol.value->iterations,
                            format_real(sol.value->residual));
    s.text = text + fmt::format("result={}\n", s.success ? "PASS" : "FAIL");
    write_file(cfg.out_dir / "value.csv", value_csv.str(), s);
    write_file(cfg.out_dir / "trace.csv", trace_csv.str(), s);
    write_file(cfg.out_dir / "summary.txt", s.text, s);
    return s;
}

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::CheckAxioms: return "check-axioms";
        case Command::SolveFixedPoint: return "solve-fixed-point";
        case Command::SuzukiCheck: return "suzuki-check";
        case Command::SolveDp: return "solve-dp";
    }
    return "?";
}

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error([&] {
          std::string msg = "invalid configuration";
          for (const auto& i : issues) msg += "\n  " + i;
          return msg;
      }()),
      issues_(std::move(issues)) {}

RunConfig parse_config(std::string_view text, const fs::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("<json>: ") + e.what()});
    }
    Issues issues;
    if (!root.is_object()) {
        issues.add("<root>", "expected an object");
        issues.raise();
    }

    RunConfig cfg;
    const auto command = read_string(root, "command", "", issues);
    if (!command) {
        issues.add("command", "missing field");
        issues.raise();
    }
    if (*command == "check-axioms") {
        cfg.command = Command::CheckAxioms;
        cfg.tol = 1e-12;
    } else if (*command == "solve-fixed-point") {
        cfg.command = Command::SolveFixedPoint;
        cfg.tol = 1e-9;
    } else if (*command == "suzuki-check") {
        cfg.command = Command::SuzukiCheck;
        cfg.tol = 1e-12;
    } else if (*command == "solve-dp") {
        cfg.command = Command::SolveDp;
        cfg.tol = 1e-10;
    } else {
        issues.add("command", "unknown command '" + *command + "'");
        issues.raise();
    }

    std::set<std::string> allowed{"command", "tol", "trials", "seed", "out", "sample_box"};
    switch (cfg.command) {
        case Command::CheckAxioms: allowed.insert("metric"); break;
        case Command::SolveFixedPoint:
            allowed.insert({"metric", "mapping", "y0", "second_start", "max_iter", "suzuki_tol"});
            break;
        case Command::SuzukiCheck: allowed.insert({"metric", "mapping", "r"}); break;
        case Command::SolveDp:
            allowed.insert({"n", "max_iter", "problem", "problem_file", "lipschitz_samples"});
            break;
    }
    check_keys(root, allowed, "", issues);

    if (auto tol = read_real(root, "tol", "", issues)) {
        if (!(*tol > 0.0)) issues.add("tol", "tolerance must be > 0");
        cfg.tol = *tol;
    }
    if (auto st = read_real(root, "suzuki_tol", "", issues)) {
        if (!(*st > 0.0)) issues.add("suzuki_tol", "tolerance must be > 0");
        cfg.suzuki_tol = *st;
    }
    if (auto trials = read_count(root, "trials", "", issues)) {
        if (*trials < 1) issues.add("trials", "must be >= 1");
        cfg.trials = *trials;
    }
    if (auto seed = read_count(root, "seed", "", issues)) cfg.seed = *seed;
    if (auto mi = read_count(root, "max_iter", "", issues)) {
        if (*mi < 1) issues.add("max_iter", "must be >= 1");
        cfg.max_iter = *mi;
    }
    if (auto ls = read_count(root, "lipschitz_samples", "", issues)) cfg.lipschitz_samples = *ls;
    if (auto out = read_string(root, "out", "", issues)) cfg.out_dir = *out;
    if (root.contains("sample_box")) {
        auto box = read_coords(root.at("sample_box"), "sample_box", issues);
        if (box && (box->size() != 2 || !((*box)[0] < (*box)[1])))
            issues.add("sample_box", "expected [lo, hi] with lo < hi");
        else if (box) {
            cfg.sample_lo = (*box)[0];
            cfg.sample_hi = (*box)[1];
        }
    }

    if (cfg.command == Command::SolveDp) {
        if (auto n = read_count(root, "n", "", issues)) cfg.metric.n = *n;
        if (cfg.metric.n < 3) issues.add("n", "arity must be >= 3");
        const bool inline_problem = root.contains("problem");
        const bool file_problem = root.contains("problem_file");
        if (inline_problem == file_problem) issues.add("problem", "give exactly one of problem or problem_file");
        issues.raise_if_any();
        if (inline_problem) {
            cfg.problem = parse_problem(root.at("problem"), "problem");
        } else {
            auto rel = read_string(root, "problem_file", "", issues);
            issues.raise_if_any();
            fs::path path = fs::path(*rel).is_absolute() ? fs::path(*rel) : base_dir / *rel;
            json problem;
            try {
                problem = json::parse(slurp(path));
            } catch (const json::parse_error& e) {
                throw ConfigError({"problem_file: " + path.string() + ": " + e.what()});
            } catch (const std::runtime_error& e) {
                throw ConfigError({std::string("problem_file: ") + e.what()});
            }
            cfg.problem = parse_problem(problem, "problem_file");
        }
        return cfg;
    }

    if (!root.contains("metric"))
        issues.add("metric", "missing field");
    else
        cfg.metric = parse_metric(root.at("metric"), issues);

    if (cfg.command == Command::SolveFixedPoint || cfg.command == Command::SuzukiCheck) {
        if (!root.contains("mapping"))
            issues.add("mapping", "missing field");
        else
            cfg.mapping = parse_mapping(root.at("mapping"), cfg.metric, issues);
    }
    if (cfg.command == Command::SuzukiCheck) {
        if (auto r = read_real(root, "r", "", issues)) {
            if (!(*r >= 0.0 && *r < 1.0)) issues.add("r", "must lie in [0, 1)");
            cfg.r = *r;
        }
    }
    if (cfg.command == Command::SolveFixedPoint) {
        cfg.y0.assign(cfg.metric.dim, 0.0);
        for (const char* key : {"y0", "second_start"}) {
            if (!root.contains(key)) continue;
            auto coords = read_coords(root.at(key), key, issues);
            if (coords && coords->size() != cfg.metric.dim) {
                issues.add(key, fmt::format("expected {} coordinates", cfg.metric.dim));
                continue;
            }
            if (!coords) continue;
            if (std::string(key) == "y0")
                cfg.y0 = *coords;
            else
                cfg.second_start = *coords;
        }
    }
    issues.raise_if_any();
    return cfg;
}

RunConfig load_config(const fs::path& path) {
    std::string text;
    try {
        text = slurp(path);
    } catch (const std::runtime_error& e) {
        throw ConfigError({std::string("config: ") + e.what()});
    }
    return parse_config(text, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

RunSummary run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(config.out_dir);
    RunSummary summary;
    switch (config.command) {
        case Command::CheckAxioms: summary = run_check_axioms(config); break;
        case Command::SolveFixedPoint: summary = run_solve_fixed_point(config); break;
        case Command::SuzukiCheck: summary = run_suzuki_check(config); break;
        case Command::SolveDp: summary = run_solve_dp(config); break;
    }
    summary.command = std::string(command_name(config.command));
    summary.wall_seconds = seconds_since(start);
    return summary;
}

}  // namespace gnfp::cli
