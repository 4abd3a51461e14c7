#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fgbar/aggregate.hpp"
#include "fgbar/milnor.hpp"
#include "fgbar/newton.hpp"

namespace fgbar {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Pair file: one "key = value" per line, '#' starts a comment.
//   n = 3
//   f = z1^2+z2^2+z2*z3
//   g = z1*z2+z2^2+z3^2
//   seed = 42          (optional; randomizes coefficients)
//   generic = g        (optional: f, g or f,g; default f,g when seed is set)
// With a seed, f is randomized with `seed` and g with `seed + 1`.
struct PairSpec {
    int n = 0;
    std::string f_text;
    std::string g_text;
    std::optional<std::uint64_t> seed;
    bool generic_f = false;
    bool generic_g = false;
    Polynomial f;  // after randomization
    Polynomial g;
};

// Throws ParseError; errors tied to a line start with "line L:".
PairSpec parse_pair_text(std::string_view text);
// Also throws std::runtime_error when the file cannot be read.
PairSpec load_pair_file(const std::filesystem::path& path);
std::string format_pair(const PairSpec& spec);

struct Fixture {
    std::string name;
    std::string text;  // pair file contents
};
std::vector<Fixture> fixtures();
// Writes <dir>/<name>.pair for every fixture; returns the paths written.
std::vector<std::filesystem::path> write_fixtures(const std::filesystem::path& dir);

struct NumericConfig {
    std::vector<double> radii{0.01, 0.1, 1.0};
    int samples = 200;  // ball samples per radius for the lambda report
    int locus_starts = 100;
    int identity_samples = 100;
    std::uint64_t seed = 42;
    double tol = 1e-10;
    int sphere_starts = 200;

    // Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

struct NumericSection {
    IdentitySummary identities;
    std::vector<LemmaPositiveReport> lemma;
    std::vector<SphereSearchReport> sphere;
};
NumericSection run_numeric(const Polynomial& f, const Polynomial& g, const NumericConfig& cfg);

nlohmann::ordered_json input_json(const PairSpec& spec);
nlohmann::ordered_json aggregate_json(const Aggregate& a, const AggregateConfig& cfg);
nlohmann::ordered_json numeric_json(const NumericSection& s, const NumericConfig& cfg);
nlohmann::ordered_json newton_json(const Polynomial& p, const std::vector<std::vector<Rational>>& queries);

// Full documents with the tool header.
nlohmann::ordered_json analyze_report(const PairSpec& spec, const Aggregate& a, const AggregateConfig& acfg,
                                      const NumericSection& num, const NumericConfig& ncfg);
nlohmann::ordered_json numeric_report(const PairSpec& spec, const NumericSection& num, const NumericConfig& ncfg);

std::string render_analyze(const PairSpec& spec, const Aggregate& a, const AggregateConfig& acfg,
                           const NumericSection& num, const NumericConfig& ncfg);
std::string render_numeric(const NumericSection& num, const NumericConfig& ncfg);
std::string render_newton(const Polynomial& p, const std::vector<std::vector<Rational>>& queries);

// "1,1/2,3" -> rationals; throws ParseError.
std::vector<Rational> parse_rational_list(std::string_view text);
// "0.01,0.1" -> doubles; throws ParseError.
std::vector<double> parse_double_list(std::string_view text);
// One weight vector per non-empty line, entries separated by commas or spaces.
std::vector<WeightVector> parse_rays(std::string_view text, int n);

}  // namespace fgbar
