// fgbar: hypothesis checker for mixed functions f(z) * conj(g(z)).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fgbar/aggregate.hpp"
#include "fgbar/error.hpp"
#include "fgbar/report.hpp"

namespace {

constexpr int kExitUsage = 3;

struct Common {
    bool json = false;
    std::uint64_t seed = 42;
    int starts = 200;
    double tol = 1e-10;
    std::string radius;
    std::string rays_file;
    int max_n = fgbar::kDefaultMaxN;
    int samples = 200;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fgbar::NumericConfig numeric_config(const Common& c) {
    fgbar::NumericConfig cfg;
    if (!c.radius.empty()) cfg.radii = fgbar::parse_double_list(c.radius);
    cfg.samples = c.samples;
    cfg.seed = c.seed;
    cfg.tol = c.tol;
    cfg.sphere_starts = c.starts;
    cfg.validate();
    return cfg;
}

void emit(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int run_analyze(const std::string& path, const Common& c) {
    const fgbar::PairSpec spec = fgbar::load_pair_file(path);
    fgbar::AggregateConfig acfg;
    acfg.search.seed = c.seed;
    acfg.search.starts = c.starts;
    acfg.search.residual_tol = c.tol;
    acfg.search.max_n = c.max_n;
    acfg.sphere.seed = c.seed;
    acfg.sphere.starts = c.starts;
    acfg.sphere.tol = c.tol;
    if (!c.rays_file.empty()) acfg.extra_rays = fgbar::parse_rays(read_file(c.rays_file), spec.n);
    const fgbar::NumericConfig ncfg = numeric_config(c);

    const fgbar::Aggregate a = fgbar::aggregate_hypotheses(spec.f, spec.g, acfg);
    const fgbar::NumericSection num = fgbar::run_numeric(spec.f, spec.g, ncfg);
    if (c.json)
        emit(fgbar::analyze_report(spec, a, acfg, num, ncfg));
    else
        std::cout << fgbar::render_analyze(spec, a, acfg, num, ncfg);
    return a.exit_code;
}

int run_numeric(const std::string& path, const Common& c) {
    const fgbar::PairSpec spec = fgbar::load_pair_file(path);
    const fgbar::NumericConfig ncfg = numeric_config(c);
    const fgbar::NumericSection num = fgbar::run_numeric(spec.f, spec.g, ncfg);
    if (c.json)
        emit(fgbar::numeric_report(spec, num, ncfg));
    else
        std::cout << fgbar::render_numeric(num, ncfg);
    return 0;
}

int run_newton(const std::string& path, const std::string& poly, int n, const std::vector<std::string>& queries,
               bool json) {
    std::vector<fgbar::Polynomial> polys;
    std::vector<std::string> names;
    if (!path.empty()) {
        const fgbar::PairSpec spec = fgbar::load_pair_file(path);
        polys = {spec.f, spec.g};
        names = {"f", "g"};
    } else {
        if (n < 1) throw std::invalid_argument("--poly needs --n");
        polys = {fgbar::parse_poly(poly, n)};
        names = {"p"};
        if (polys[0].is_zero()) throw std::invalid_argument("the zero polynomial has no Newton polyhedron");
    }
    std::vector<std::vector<fgbar::Rational>> qs;
    for (const auto& q : queries) qs.push_back(fgbar::parse_rational_list(q));

    if (json) {
        nlohmann::ordered_json j;
        j["tool"] = "fgbar";
        j["version"] = fgbar::kToolVersion;
        j["schema_version"] = fgbar::kSchemaVersion;
        j["command"] = "newton";
        nlohmann::ordered_json ps = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < polys.size(); ++k) ps[names[k]] = fgbar::newton_json(polys[k], qs);
        j["polynomials"] = ps;
        emit(j);
    } else {
        for (std::size_t k = 0; k < polys.size(); ++k) {
            if (polys.size() > 1) std::cout << "[" << names[k] << "]\n";
            std::cout << fgbar::render_newton(polys[k], qs);
        }
    }
    return 0;
}

int run_fixtures(const std::string& dir) {
    for (const auto& p : fgbar::write_fixtures(dir)) std::cout << p.string() << "\n";
    return 0;
}

void add_search_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "RNG seed for searches and sampling");
    cmd->add_option("--starts", c.starts, "multistart budget per face")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", c.tol, "residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--radius", c.radius, "comma separated sphere radii for the numeric section");
    cmd->add_option("--samples", c.samples, "ball samples per radius")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypothesis checks for f(z) conj(g(z))"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fgbar::kToolVersion);

    Common c;
    std::string pair_path;
    std::string poly;
    int n = 0;
    std::vector<std::string> queries;
    std::string dir;

    auto* analyze = app.add_subcommand("analyze", "check the hypothesis set for a pair");
    analyze->add_option("pair", pair_path, "pair file")->required();
    analyze->add_flag("--json", c.json, "structured output");
    add_search_flags(analyze, c);
    analyze->add_option("--rays", c.rays_file, "extra weight vectors for the multiplicity table");
    analyze->add_option("--max-n", c.max_n, "cap on n for subset enumeration")->check(CLI::Range(1, 30));

    auto* newton = app.add_subcommand("newton", "Newton polyhedra, faces and membership queries");
    auto* newton_pair = newton->add_option("pair", pair_path, "pair file");
    auto* newton_poly = newton->add_option("--poly", poly, "single polynomial instead of a pair file");
    newton->add_option("--n", n, "dimension for --poly")->check(CLI::Range(1, 30));
    newton->add_option("--query", queries, "point x (comma separated rationals); repeatable");
    newton->add_flag("--json", c.json, "structured output");
    newton_pair->excludes(newton_poly);

    auto* numeric = app.add_subcommand("numeric", "identity residuals, lambda report, sphere search");
    numeric->add_option("pair", pair_path, "pair file")->required();
    numeric->add_flag("--json", c.json, "structured output");
    add_search_flags(numeric, c);

    auto* fx = app.add_subcommand("fixtures", "write the bundled pair files");
    fx->add_option("dir", dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*analyze) return run_analyze(pair_path, c);
        if (*numeric) return run_numeric(pair_path, c);
        if (*newton) {
            if (pair_path.empty() && poly.empty()) throw std::invalid_argument("give a pair file or --poly");
            return run_newton(pair_path, poly, n, queries, c.json);
        }
        if (*fx) return run_fixtures(dir);
    } catch (const fgbar::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
