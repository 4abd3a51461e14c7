#include "fgbar/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fgbar/error.hpp"

namespace fgbar {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string complex_text(Complex c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", c.real(), c.imag());
    return buf;
}

std::string point_text(const Point& z) {
    std::string s = "(";
    for (std::size_t j = 0; j < z.size(); ++j) s += (j ? ", " : "") + complex_text(z[j]);
    return s + ")";
}

std::string exponent_text(const Exponent& e) {
    std::string s = "(";
    for (std::size_t j = 0; j < e.size(); ++j) s += (j ? "," : "") + std::to_string(e[j]);
    return s + ")";
}

std::string rational_point_text(const std::vector<Rational>& x) {
    std::string s = "(";
    for (std::size_t j = 0; j < x.size(); ++j) s += (j ? "," : "") + x[j].get_str();
    return s + ")";
}

Json point_json(const Point& z) {
    Json a = Json::array();
    for (const auto& c : z) a.push_back({c.real(), c.imag()});
    return a;
}

Json sets_json(const std::vector<IndexSet>& sets) {
    Json a = Json::array();
    for (const auto& I : sets) a.push_back(I.to_string());
    return a;
}

std::string sets_text(const std::vector<IndexSet>& sets) {
    if (sets.empty()) return "none";
    std::string s;
    for (const auto& I : sets) s += (s.empty() ? "" : " ") + I.to_string();
    return s;
}

Json certificate_json(const Certificate& c) {
    Json j;
    j["kind"] = to_string(c.kind);
    j["point"] = point_json(c.point);
    j["residual"] = c.residual;
    j["face_witness"] = c.face_witness.entries();
    j["fixed"] = c.fixed ? Json(c.fixed->to_string()) : Json(nullptr);
    j["start"] = c.start;
    return j;
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["violation"] = v.violation();
    j["certificate"] = v.certificate ? certificate_json(*v.certificate) : Json(nullptr);
    j["starts"] = v.starts;
    j["seed"] = v.seed;
    Json faces = Json::array();
    for (const auto& f : v.faces) {
        Json fj;
        fj["witness"] = f.witness.entries();
        fj["face_f"] = f.face_f;
        if (!f.face_g.empty()) fj["face_g"] = f.face_g;
        fj["vacuous"] = f.vacuous;
        if (!f.note.empty()) fj["note"] = f.note;
        fj["best_objective"] = f.best_objective < 0.0 ? Json(nullptr) : Json(f.best_objective);
        faces.push_back(fj);
    }
    j["faces"] = faces;
    if (!v.radii.empty()) {
        j["radii"] = v.radii;
        j["radius_sensitive"] = v.radius_sensitive;
        j["large_radius_certificate"] =
            v.large_radius_certificate ? certificate_json(*v.large_radius_certificate) : Json(nullptr);
    }
    return j;
}

Json indexed_json(const std::vector<IndexedVerdict>& vs) {
    Json a = Json::array();
    for (const auto& iv : vs) a.push_back({{"I", iv.I.to_string()}, {"verdict", verdict_json(iv.verdict)}});
    return a;
}

std::string verdict_text(const Verdict& v) {
    if (v.certificate) {
        const auto& c = *v.certificate;
        std::string s = "VIOLATION " + to_string(c.kind) + " on the face of P=" + c.face_witness.to_string() +
                        " at " + point_text(c.point) + ", residual " + fmt(c.residual);
        if (c.fixed) s += ", fixed " + c.fixed->to_string();
        return s;
    }
    int vacuous = 0;
    for (const auto& f : v.faces) vacuous += f.vacuous ? 1 : 0;
    std::string s = "no violation on " + std::to_string(v.faces.size()) + " face(s)";
    if (vacuous) s += " (" + std::to_string(vacuous) + " vacuous)";
    if (v.radius_sensitive) s += "; radius-sensitive: a violation at the larger radius vanished at the smaller";
    return s;
}

Json sphere_json(const SphereSearchReport& r) {
    Json j;
    j["radius"] = r.radius;
    j["starts"] = r.starts;
    j["rejected"] = r.rejected;
    j["min_objective"] = r.min_objective < 0.0 ? Json(nullptr) : Json(r.min_objective);
    j["certificate"] = r.certificate ? point_json(*r.certificate) : Json(nullptr);
    if (r.certificate) {
        j["certificate_objective"] = r.certificate_objective;
        j["certificate_start"] = r.certificate_start;
        j["value"] = {r.value.real(), r.value.imag()};
    }
    return j;
}

int lambda_violations(const LemmaPositiveReport& r) {
    int k = 0;
    for (const auto& s : r.dependent) k += s.witness.lambda <= 0.0 ? 1 : 0;
    return k;
}

int from_locus(const LemmaPositiveReport& r) {
    int k = 0;
    for (const auto& s : r.dependent) k += s.from_locus ? 1 : 0;
    return k;
}

std::string ray_text(const NewtonPolyhedron& N, const std::vector<Rational>& x) {
    const RayHit h = ray_hit(N, x);
    if (!h.r_star) return "not in Γ₊₊ (ray misses Γ₊)";
    const std::string r = h.r_star->get_str();
    if (!h.hits_compact_face) return "not in Γ₊₊ (ray meets a non-compact face, r = " + r + ")";
    if (in_gamma_pp(N, x, true)) return "in Int Γ₊₊ (r = " + r + ")";
    if (in_gamma_pp(N, x, false)) return "in Γ₊₊ (r = " + r + ")";
    return "not in Γ₊₊ (r = " + r + ")";
}

Json facet_json(const Facet& f) { return {{"normal", f.normal}, {"offset", f.offset}}; }

std::string facet_text(const Facet& f) {
    std::string s = "<(";
    for (std::size_t j = 0; j < f.normal.size(); ++j) s += (j ? "," : "") + std::to_string(f.normal[j]);
    return s + "), x> >= " + std::to_string(f.offset);
}

// Polynomial with all coefficients set to 1 on the support, from a template
// function of (a, n).
using Builder = std::string (*)(int a, int n);

std::string pw(int j, int e) {
    if (e == 0) return "";
    return "z" + std::to_string(j) + (e == 1 ? "" : "^" + std::to_string(e));
}

std::string family_f(int a, int n) {
    std::string s;
    for (int j = 1; j <= n - 1; ++j) s += (s.empty() ? "" : "+") + pw(j, a);
    return s + "+" + pw(n - 1, 1) + "*" + pw(n, a - 1);
}

std::string family_g1(int a, int n) {
    std::string s = pw(1, a - 1) + "*" + pw(2, 1);
    for (int j = 2; j <= n; ++j) s += "+" + pw(j, a);
    return s;
}

std::string family_g2(int a, int n) {
    std::string s;
    for (int j = 1; j <= n - 1; ++j) s += (s.empty() ? "" : "+") + pw(j, 2 * a);
    return s + "+" + pw(n - 1, 2) + "*" + pw(n, 2 * a);
}

std::string pair_text(const std::string& comment, int n, const std::string& f, const std::string& g,
                      std::optional<std::uint64_t> seed = std::nullopt, const std::string& generic = "") {
    std::string s = "# " + comment + "\n";
    s += "n = " + std::to_string(n) + "\n";
    s += "f = " + f + "\n";
    s += "g = " + g + "\n";
    if (seed) s += "seed = " + std::to_string(*seed) + "\n";
    if (!generic.empty()) s += "generic = " + generic + "\n";
    return s;
}

}  // namespace

PairSpec parse_pair_text(std::string_view text) {
    std::map<std::string, std::pair<std::string, int>> kv;  // value, line
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key != "n" && key != "f" && key != "g" && key != "seed" && key != "generic")
            throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (kv.count(key)) throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = {value, lineno};
    }
    for (const char* k : {"n", "f", "g"})
        if (!kv.count(k)) throw ParseError(std::string("missing key '") + k + "'");

    PairSpec spec;
    auto integer = [&](const std::string& key, long long lo, long long hi) {
        const auto& [v, ln] = kv.at(key);
        std::size_t used = 0;
        long long x = 0;
        try {
            if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
            x = static_cast<long long>(std::stoull(v, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != v.size() || x < lo || x > hi)
            throw ParseError("line " + std::to_string(ln) + ": bad value for '" + key + "'");
        return x;
    };
    spec.n = static_cast<int>(integer("n", 1, IndexSet::kMaxDimension));
    spec.f_text = kv.at("f").first;
    spec.g_text = kv.at("g").first;
    if (kv.count("seed")) spec.seed = static_cast<std::uint64_t>(integer("seed", 0, (1LL << 62)));
    if (kv.count("generic")) {
        const auto& [v, ln] = kv.at("generic");
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item == "f") spec.generic_f = true;
            else if (item == "g") spec.generic_g = true;
            else if (item != "none")
                throw ParseError("line " + std::to_string(ln) + ": generic must list f and/or g");
        }
        if ((spec.generic_f || spec.generic_g) && !spec.seed)
            throw ParseError("line " + std::to_string(ln) + ": generic needs a seed");
    } else if (spec.seed) {
        spec.generic_f = spec.generic_g = true;
    }
    auto poly = [&](const std::string& key) {
        const auto& [v, ln] = kv.at(key);
        try {
            return parse_poly(v, spec.n);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(ln) + ": " + key + ": " + e.what());
        }
    };
    spec.f = poly("f");
    spec.g = poly("g");
    if (spec.f.is_zero() || spec.g.is_zero()) throw ParseError("f and g must be nonzero");
    if (spec.generic_f) spec.f = randomize_coefficients(spec.f, *spec.seed);
    if (spec.generic_g) spec.g = randomize_coefficients(spec.g, *spec.seed + 1);
    return spec;
}

PairSpec load_pair_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_pair_text(ss.str());
}

std::string format_pair(const PairSpec& spec) {
    std::string generic;
    if (spec.generic_f) generic = "f";
    if (spec.generic_g) generic += generic.empty() ? "g" : ",g";
    std::string s = "n = " + std::to_string(spec.n) + "\nf = " + spec.f_text + "\ng = " + spec.g_text + "\n";
    if (spec.seed) s += "seed = " + std::to_string(*spec.seed) + "\n";
    if (spec.seed) s += "generic = " + (generic.empty() ? std::string("none") : generic) + "\n";
    return s;
}

std::vector<Fixture> fixtures() {
    std::vector<Fixture> out;
    for (int n : {3, 4})
        for (int a : {2, 3}) {
            const std::string base = "oka-1-3-a" + std::to_string(a) + "-n" + std::to_string(n);
            // Seed 43 draws equal coefficients on z1 and z3 for g2 (a non-generic
            // pair with a real rank drop), so the g2 variants use 44.
            out.push_back({base, pair_text("f with g1: disjoint vanishing subspaces", n, family_f(a, n), family_g1(a, n), 42, "g")});
            out.push_back({base + "-g2", pair_text("f with g2: common vanishing subspace {" + std::to_string(n) + "}", n,
                                                    family_f(a, n), family_g2(a, n), 44, "g")});
        }
    out.push_back({"above-convenient", pair_text("convenient f, Gamma(g) above Gamma(f)", 2, "z1^2+z2^2", "z1^4+z2^4")});
    out.push_back({"pullback-m3", pair_text("pullback of f by z -> z^3 against g1", 3, to_string(pullback_power(parse_poly(family_f(2, 3), 3), 3)),
                                      family_g1(2, 3), 42, "g")});
    out.push_back({"diagonal-times-monomial", pair_text("diagonal f against g times z1^2 z2^2", 2, "z1^2+z2^2", "(z1^3+z2^3)*z1^2*z2^2", 42, "f")});
    out.push_back({"sharp-pass", pair_text("Gamma(g) inside Int Gamma_++(f)", 2, "z1+z2", "z1*z2")});
    out.push_back({"degenerate", pair_text("f has a torus critical point on z1 = -z2", 2, "(z1+z2)^2", "z1^3+z2^3")});
    out.push_back({"identical", pair_text("f = g", 2, "z1+z2", "z1+z2")});
    out.push_back({"coordinate-pair", pair_text("H = z1 conj(z2)", 2, "z1", "z2")});
    return out;
}

std::vector<std::filesystem::path> write_fixtures(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& fx : fixtures()) {
        const auto path = dir / (fx.name + ".pair");
        std::ofstream out(path, std::ios::binary);
        out << fx.text;
        if (!out) throw std::runtime_error("cannot write " + path.string());
        written.push_back(path);
    }
    return written;
}

void NumericConfig::validate() const {
    if (radii.empty()) throw std::invalid_argument("at least one radius is required");
    for (double r : radii)
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radii must be positive");
    if (samples < 0 || locus_starts < 0 || identity_samples < 0) throw std::invalid_argument("sample counts must be >= 0");
    if (sphere_starts < 1) throw std::invalid_argument("sphere starts must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

NumericSection run_numeric(const Polynomial& f, const Polynomial& g, const NumericConfig& cfg) {
    cfg.validate();
    NumericSection s;
    s.identities = identity_summary(f, g, cfg.identity_samples, cfg.seed);
    for (double r : cfg.radii) {
        LemmaSampleConfig lc;
        lc.radius = r;
        lc.samples = cfg.samples;
        lc.locus_starts = cfg.locus_starts;
        lc.seed = cfg.seed;
        s.lemma.push_back(sample_lemma_positive(f, g, lc));
        SphereSearchConfig sc;
        sc.seed = cfg.seed;
        sc.starts = cfg.sphere_starts;
        sc.tol = cfg.tol;
        s.sphere.push_back(sphere_phi_critical_search(f, g, r, sc));
    }
    return s;
}

Json input_json(const PairSpec& spec) {
    Json j;
    j["n"] = spec.n;
    j["f"] = spec.f_text;
    j["g"] = spec.g_text;
    j["seed"] = spec.seed ? Json(*spec.seed) : Json(nullptr);
    Json generic = Json::array();
    if (spec.generic_f) generic.push_back("f");
    if (spec.generic_g) generic.push_back("g");
    j["generic"] = generic;
    j["f_used"] = to_string(spec.f);
    j["g_used"] = to_string(spec.g);
    return j;
}

Json aggregate_json(const Aggregate& a, const AggregateConfig& cfg) {
    Json exact;
    exact["provenance"] = "exact";
    exact["vanishing_f"] = {{"maximal", sets_json(a.vanishing_f.maximal)}, {"all", sets_json(a.vanishing_f.all)}};
    exact["vanishing_g"] = {{"maximal", sets_json(a.vanishing_g.maximal)}, {"all", sets_json(a.vanishing_g.all)}};
    exact["disjointness"] = {{"disjoint", a.disjoint.disjoint},
                             {"witness", a.disjoint.witness ? Json(a.disjoint.witness->to_string()) : Json(nullptr)}};
    exact["sharp"] = {{"direction", to_string(a.sharp.direction)},
                      {"holds", a.sharp.holds()},
                      {"f_vertex_outside", a.sharp.f_vertex_outside ? Json(*a.sharp.f_vertex_outside) : Json(nullptr)},
                      {"g_vertex_outside", a.sharp.g_vertex_outside ? Json(*a.sharp.g_vertex_outside) : Json(nullptr)}};
    Json mult = Json::array();
    for (const auto& row : a.multiplicity)
        mult.push_back({{"P", row.P.entries()},
                        {"d_f", row.d_f},
                        {"d_g", row.d_g},
                        {"equal", row.equal()},
                        {"source", row.user_supplied ? "user" : "default"}});
    exact["multiplicity"] = mult;
    Json strata = Json::array();
    for (const auto& row : a.strata) {
        Json ss = Json::array();
        for (const auto& s : row.strata) ss.push_back({{"kind", s.kind}, {"empty", s.empty}});
        strata.push_back({{"I", row.I.to_string()},
                          {"case", to_string(row.tag)},
                          {"strata", ss},
                          {"f_monomial", row.f_monomial},
                          {"g_monomial", row.g_monomial}});
    }
    exact["stratification"] = strata;

    const SearchConfig& sc = cfg.search;
    Json search;
    search["provenance"] = "search";
    search["seed"] = sc.seed;
    search["starts"] = sc.starts;
    search["max_iters"] = sc.max_iters;
    search["tol"] = sc.residual_tol;
    search["ball_radius"] = sc.ball_radius;
    search["samples_fixed"] = sc.sample_count_fixed;
    search["condition1"] = {{"violation", a.search.violation_condition1()},
                            {"nondegenerate_f", verdict_json(a.search.nondegenerate_f)},
                            {"nondegenerate_g", verdict_json(a.search.nondegenerate_g)},
                            {"tame_f", indexed_json(a.search.tame_f)},
                            {"tame_g", indexed_json(a.search.tame_g)}};
    search["condition2a"] = {{"violation", a.search.violation_condition2a()}, {"verdict", verdict_json(a.search.ci_faces)}};
    search["condition2b"] = {{"violation", a.search.violation_condition2b()}, {"checks", indexed_json(a.search.ci_fixed)}};

    Json master;
    master["route"] = to_string(a.route);
    master["verdict"] = a.verdict;
    master["exit_code"] = a.exit_code;
    if (a.route == Route::Disjoint) {
        Json reports = Json::array();
        for (const auto& r : a.critical_values) reports.push_back(sphere_json(r));
        master["critical_value_check"] = {
            {"provenance", "search"},
            {"seed", cfg.sphere.seed},
            {"starts", cfg.sphere.starts},
            {"nonzero_critical_value_found", a.critical_value_caveat()},
            {"reports", reports}};
    } else {
        master["critical_value_check"] = nullptr;
    }

    Json j;
    j["exact"] = exact;
    j["search"] = search;
    j["master"] = master;
    return j;
}

Json numeric_json(const NumericSection& s, const NumericConfig& cfg) {
    Json j;
    j["provenance"] = "sampled";
    j["seed"] = cfg.seed;
    j["radii"] = cfg.radii;
    const auto& id = s.identities;
    j["identities"] = {{"samples", id.samples},       {"euler_samples", id.euler_samples},
                       {"polar_samples", id.polar_samples}, {"euler_max", id.euler_max},
                       {"polar_max", id.polar_max},   {"logH_max", id.logH_max},
                       {"sublemma_max", id.sublemma_max}};
    Json lemma = Json::array();
    for (const auto& r : s.lemma) {
        Json lj;
        lj["radius"] = r.radius;
        lj["sampled"] = r.sampled;
        lj["rejected"] = r.rejected;
        lj["independent"] = r.independent;
        lj["borderline"] = r.borderline;
        lj["dependent"] = r.dependent.size();
        lj["dependent_from_locus"] = from_locus(r);
        lj["min_lambda"] = r.min_lambda ? Json(*r.min_lambda) : Json(nullptr);
        lj["violations"] = lambda_violations(r);
        lj["violation_point"] = r.violation ? point_json(r.violation->z) : Json(nullptr);
        lj["unstable"] = r.unstable;
        lj["cos_v1v2"] = {{"min", r.cos_v1v2_min}, {"max", r.cos_v1v2_max}, {"mean_abs", r.cos_v1v2_mean_abs}};
        lemma.push_back(lj);
    }
    j["lemma_positive"] = lemma;
    Json sphere = Json::array();
    for (const auto& r : s.sphere) sphere.push_back(sphere_json(r));
    j["sphere"] = sphere;
    return j;
}

Json newton_json(const Polynomial& p, const std::vector<std::vector<Rational>>& queries) {
    const NewtonPolyhedron N = newton_polyhedron(p);
    Json j;
    j["provenance"] = "exact";
    j["polynomial"] = to_string(p);
    j["n"] = p.dimension();
    Json support = Json::array();
    for (const auto& e : N.generators()) support.push_back(e);
    j["support"] = support;
    Json facets = Json::array();
    for (const auto& f : N.facets()) facets.push_back(facet_json(f));
    j["facets"] = facets;
    Json faces = Json::array();
    for (const auto& f : compact_faces(N)) {
        Json pts = Json::array();
        for (const auto& e : f.points) pts.push_back(e);
        faces.push_back({{"dim", f.dim},
                         {"witness", f.witness.entries()},
                         {"points", pts},
                         {"face_function", to_string(face_function(p, f.witness).face)}});
    }
    j["compact_faces"] = faces;
    j["convenient"] = is_convenient(p);
    j["vanishing"] = sets_json(vanishing_subspaces(p).maximal);
    Json qs = Json::array();
    for (const auto& x : queries) {
        if (static_cast<int>(x.size()) != p.dimension()) throw std::invalid_argument("query has wrong dimension");
        const RayHit h = ray_hit(N, x);
        Json pt = Json::array();
        for (const auto& c : x) pt.push_back(c.get_str());
        qs.push_back({{"point", pt},
                      {"r_star", h.r_star ? Json(h.r_star->get_str()) : Json(nullptr)},
                      {"hits_compact_face", h.hits_compact_face},
                      {"in_gamma_pp", in_gamma_pp(N, x, false)},
                      {"in_int_gamma_pp", in_gamma_pp(N, x, true)},
                      {"summary", ray_text(N, x)}});
    }
    j["queries"] = qs;
    return j;
}

namespace {

Json header(const char* command) {
    Json j;
    j["tool"] = "fgbar";
    j["version"] = kToolVersion;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

}  // namespace

Json analyze_report(const PairSpec& spec, const Aggregate& a, const AggregateConfig& acfg, const NumericSection& num,
                    const NumericConfig& ncfg) {
    Json j = header("analyze");
    j["input"] = input_json(spec);
    Json agg = aggregate_json(a, acfg);
    j["exact"] = agg["exact"];
    j["search"] = agg["search"];
    j["numeric"] = numeric_json(num, ncfg);
    j["master"] = agg["master"];
    return j;
}

Json numeric_report(const PairSpec& spec, const NumericSection& num, const NumericConfig& ncfg) {
    Json j = header("numeric");
    j["input"] = input_json(spec);
    j["numeric"] = numeric_json(num, ncfg);
    return j;
}

std::string render_numeric(const NumericSection& num, const NumericConfig& ncfg) {
    std::ostringstream o;
    const auto& id = num.identities;
    o << "[identity verified at samples (seed " << ncfg.seed << ")]\n";
    o << "  euler      max " << fmt(id.euler_max) << " over " << id.euler_samples << " samples\n";
    o << "  polar      max " << fmt(id.polar_max) << " over " << id.polar_samples << " samples\n";
    o << "  d log H    max " << fmt(id.logH_max) << " over " << id.samples << " samples\n";
    o << "  wirtinger  max " << fmt(id.sublemma_max) << " over " << id.samples << " samples\n";
    o << "[sampled dependence z = lambda v1 + mu v2 (seed " << ncfg.seed << ")]\n";
    for (const auto& r : num.lemma) {
        o << "  r = " << fmt(r.radius) << ": " << r.dependent.size() << " dependent (" << from_locus(r)
          << " from the locus search), " << r.independent << " independent, " << r.borderline << " borderline";
        if (r.min_lambda)
            o << "; min lambda = " << fmt(*r.min_lambda) << " = " << fmt(*r.min_lambda / (r.radius * r.radius))
              << " r^2";
        o << "; violations " << lambda_violations(r);
        if (r.unstable) o << "; unstable " << r.unstable;
        o << "\n    Re<v1,v2>/(|v1||v2|) in [" << fmt(r.cos_v1v2_min) << ", " << fmt(r.cos_v1v2_max)
          << "] (logged only)\n";
        if (r.violation) o << "    lambda <= 0 at " << point_text(r.violation->z) << "\n";
    }
    o << "[critical points of H/|H| on spheres (seed " << ncfg.seed << ", " << ncfg.sphere_starts << " starts)]\n";
    for (const auto& r : num.sphere) {
        o << "  r = " << fmt(r.radius) << ": ";
        if (r.certificate)
            o << "critical point at " << point_text(*r.certificate) << ", objective " << fmt(r.certificate_objective)
              << "\n";
        else
            o << "none found, min objective " << (r.min_objective < 0.0 ? std::string("n/a") : fmt(r.min_objective))
              << "\n";
    }
    return o.str();
}

std::string render_analyze(const PairSpec& spec, const Aggregate& a, const AggregateConfig& acfg,
                           const NumericSection& num, const NumericConfig& ncfg) {
    std::ostringstream o;
    o << "fgbar " << kToolVersion << " analyze\n";
    o << "input: n = " << spec.n << "\n";
    o << "  f = " << to_string(spec.f) << (spec.generic_f ? "  (generic, seed " + std::to_string(*spec.seed) + ")" : "")
      << "\n";
    o << "  g = " << to_string(spec.g)
      << (spec.generic_g ? "  (generic, seed " + std::to_string(*spec.seed + 1) + ")" : "") << "\n";

    o << "[proved exactly]\n";
    o << "  vanishing subspaces of f: " << sets_text(a.vanishing_f.maximal) << "\n";
    o << "  vanishing subspaces of g: " << sets_text(a.vanishing_g.maximal) << "\n";
    o << "  disjoint: "
      << (a.disjoint.disjoint ? std::string("yes") : "no, both vanish on " + a.disjoint.witness->to_string()) << "\n";
    o << "  tame Newton multiplicity (sharp): " << to_string(a.sharp.direction);
    if (!a.sharp.holds()) {
        if (a.sharp.f_vertex_outside) o << "; f vertex " << exponent_text(*a.sharp.f_vertex_outside) << " outside Int Γ₊₊(g)";
        if (a.sharp.g_vertex_outside) o << "; g vertex " << exponent_text(*a.sharp.g_vertex_outside) << " outside Int Γ₊₊(f)";
    }
    o << "\n  toric multiplicity:";
    if (a.multiplicity.empty()) o << " no strictly positive rays";
    o << "\n";
    for (const auto& row : a.multiplicity)
        o << "    P = " << row.P.to_string() << ": d_f = " << row.d_f << ", d_g = " << row.d_g
          << (row.equal() ? "  EQUAL" : "") << (row.user_supplied ? "  (user ray)" : "") << "\n";
    o << "  stratification:\n";
    for (const auto& row : a.strata) {
        o << "    I = " << row.I.to_string() << " " << to_string(row.tag) << ":";
        for (const auto& s : row.strata) o << " " << s.kind << (s.empty ? "(empty)" : "");
        o << "\n";
    }

    const SearchConfig& sc = acfg.search;
    o << "[no violation found unless stated (budget " << sc.starts << " starts, seed " << sc.seed << ")]\n";
    o << "  (1) f non-degenerate: " << verdict_text(a.search.nondegenerate_f) << "\n";
    o << "  (1) g non-degenerate: " << verdict_text(a.search.nondegenerate_g) << "\n";
    for (const auto& iv : a.search.tame_f)
        o << "  (1) f locally tame on " << iv.I.to_string() << " (radius " << fmt(sc.ball_radius)
          << "): " << verdict_text(iv.verdict) << "\n";
    for (const auto& iv : a.search.tame_g)
        o << "  (1) g locally tame on " << iv.I.to_string() << " (radius " << fmt(sc.ball_radius)
          << "): " << verdict_text(iv.verdict) << "\n";
    o << "  (2-a) complete intersection on faces: " << verdict_text(a.search.ci_faces) << "\n";
    for (const auto& iv : a.search.ci_fixed)
        o << "  (2-b) complete intersection on " << iv.I.to_string() << ": " << verdict_text(iv.verdict) << "\n";

    o << render_numeric(num, ncfg);

    o << "verdict: " << a.verdict << "\n";
    if (a.route == Route::Disjoint) {
        for (const auto& r : a.critical_values) {
            if (!r.certificate) {
                o << "  route (ii) also assumes 0 is the only critical value of H: none other found on |z| = "
                  << fmt(r.radius) << "\n";
                continue;
            }
            o << "  caveat: route (ii) also assumes 0 is the only critical value of H; H has the critical value "
              << complex_text(r.value) << " at " << point_text(*r.certificate) << " (|z| = " << fmt(r.radius) << ")\n";
        }
    }
    return o.str();
}

std::string render_newton(const Polynomial& p, const std::vector<std::vector<Rational>>& queries) {
    const NewtonPolyhedron N = newton_polyhedron(p);
    std::ostringstream o;
    o << "polynomial: " << to_string(p) << " (n = " << p.dimension() << ")\n";
    o << "support:";
    for (const auto& e : N.generators()) o << " " << exponent_text(e);
    o << "\nfacets:\n";
    for (const auto& f : N.facets()) o << "  " << facet_text(f) << "\n";
    const auto faces = compact_faces(N);
    o << "compact faces: " << faces.size() << "\n";
    for (const auto& f : faces)
        o << "  dim " << f.dim << ", P = " << f.witness.to_string() << ": " << to_string(face_function(p, f.witness).face)
          << "\n";
    o << "convenient: " << (is_convenient(p) ? "true" : "false")
      << "; vanishing: " << sets_text(vanishing_subspaces(p).maximal) << "\n";
    for (const auto& x : queries) {
        if (static_cast<int>(x.size()) != p.dimension()) throw std::invalid_argument("query has wrong dimension");
        o << "query " << rational_point_text(x) << ": " << ray_text(N, x) << "\n";
    }
    return o.str();
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t pos = 0;
    const std::string s(text);
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const std::string item = trim(std::string_view(s).substr(pos, comma == std::string::npos ? s.npos : comma - pos));
        Rational r;
        if (item.empty() || r.set_str(item, 10) != 0) throw ParseError("bad rational '" + item + "'", pos);
        if (item.find('/') != std::string::npos && r.get_den() == 0) throw ParseError("zero denominator", pos);
        r.canonicalize();
        out.push_back(r);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    const std::string s(text);
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const std::string item = trim(std::string_view(s).substr(pos, comma == std::string::npos ? s.npos : comma - pos));
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size()) throw ParseError("bad number '" + item + "'", pos);
        out.push_back(x);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<WeightVector> parse_rays(std::string_view text, int n) {
    std::vector<WeightVector> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        std::vector<long long> p;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            long long v = -1;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || v < 0) throw ParseError("line " + std::to_string(lineno) + ": bad weight '" + tok + "'");
            p.push_back(v);
        }
        if (p.empty()) continue;
        if (static_cast<int>(p.size()) != n)
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(n) + " weights");
        out.emplace_back(p);
    }
    return out;
}

}  // namespace fgbar
