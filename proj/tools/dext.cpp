// dext: command-line front end.
//
//   dext build    --n 2 --d 2                      objects.json, ar.dot
//   dext ct-check --n 2 --d 2 --M "P(0,1)+P(2,1)"  cluster-tilting certificate
//   dext quotient --n 2 --d 2 --M ...              quotient_ar.dot, homs.json
//   dext lambda   --n 2 --d 2 --M ...              lambda.json
//   dext dem      --n 2 --d 2 --M ...              dem_modules.json
//   dext verify   --n 2 --d 2 --M ...              verify_report.json
//   dext selfinj  --n 2 --d 2 --M ...              selfinj.json
//
// Options may also come from a TOML file (--config); flags win over the file.
// Exit codes: 0 pass, 1 verification failure, 2 usage or configuration
// error, 3 internal invariant violation.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "dext/errors.hpp"
#include "dext/morita.hpp"

using namespace dext;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3 };

struct Config {
    int n = 0;
    int d = 0;
    std::string m;
    std::string field = "Q";
    std::string out_dir;
    std::string format = "text";
    int bar_length = 0;  // 0: d + 2
    int depth = 0;       // 0: engine default
    bool force = false;
    std::string golden_ar, golden_quotient, presentation;
    std::vector<int> shifts;
    int brute_force = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string dump(const Json& j) { return sorted(j).dump(1) + "\n"; }

void write_file(const Config& cfg, const std::string& name, const std::string& contents) {
    if (cfg.out_dir.empty()) return;
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream out(std::filesystem::path(cfg.out_dir) / name, std::ios::binary);
    if (!out) throw UsageError("cannot write " + name + " in " + cfg.out_dir);
    out << contents;
}

Json read_json(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw UsageError("malformed JSON in " + file + ": " + e.what());
    }
}

// Emits the primary payload on stdout in the requested format.
void emit(const Config& cfg, const Json& j, const std::string& text, const std::string& dot = "") {
    if (cfg.format == "json")
        std::cout << dump(j);
    else if (cfg.format == "dot")
        std::cout << (dot.empty() ? dump(j) : dot);
    else
        std::cout << text;
}

// Differences between a computed quiver and a golden one (both in the
// to_json layout); empty when they agree.
std::vector<std::string> quiver_diff(const Json& computed, const Json& golden) {
    std::vector<std::string> out;
    for (const char* key : {"vertices", "arrows", "tau"}) {
        std::multiset<std::string> a, b;
        for (const auto& e : computed.value(key, Json::array())) a.insert(e.dump());
        for (const auto& e : golden.value(key, Json::array())) b.insert(e.dump());
        for (const auto& e : a)
            if (a.count(e) > b.count(e)) out.push_back(std::string(key) + ": extra " + e);
        for (const auto& e : b)
            if (b.count(e) > a.count(e)) out.push_back(std::string(key) + ": missing " + e);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// The categories named by the configuration, built lazily in dependency order.
struct Session {
    const Config& cfg;
    std::unique_ptr<ClusterCategory> cat;
    std::unique_ptr<QuotientCategory> quo;
    std::unique_ptr<MoritaContext> ctx;

    explicit Session(const Config& c) : cfg(c) {
        if (cfg.n < 1 || cfg.d < 1) throw UsageError("--n and --d must both be at least 1");
        cat = std::make_unique<ClusterCategory>(cfg.n, cfg.d);
    }
    std::vector<ObjectId> m() const {
        if (cfg.m.empty()) throw UsageError("--M is required for this command");
        return cat->parse_objects(cfg.m);
    }
    const QuotientCategory& quotient(bool force) {
        if (!quo) quo = std::make_unique<QuotientCategory>(*cat, m(), force);
        return *quo;
    }
    const MoritaContext& context() {
        if (!ctx) ctx = std::make_unique<MoritaContext>(quotient(false));
        return *ctx;
    }
    int bar_length() const { return cfg.bar_length > 0 ? cfg.bar_length : cfg.d + 2; }
};

std::string names_of(const ClusterCategory& c, const std::vector<ObjectId>& xs) {
    std::string s;
    for (ObjectId x : xs) s += (s.empty() ? "" : "+") + c.name(x);
    return s.empty() ? "0" : s;
}

// ---- subcommands -----------------------------------------------------------

int cmd_build(const Config& cfg) {
    Session s(cfg);
    const ClusterCategory& c = *s.cat;
    Json objs = c.objects_json();
    for (ObjectId x = 0; x < c.size(); ++x) {
        objs[x]["shift_image"] = c.name(c.shift_object(x, 1));
        objs[x]["tau_image"] = c.name(c.tau_object(x));
    }
    const QuiverGraph ar = c.ar_quiver();
    const std::string dot = ar.to_dot("ar_" + std::to_string(cfg.n) + "_" + std::to_string(cfg.d));
    write_file(cfg, "objects.json", dump(objs));
    write_file(cfg, "ar.dot", dot);
    std::ostringstream text;
    text << "objects: " << c.size() << "\n";
    for (ObjectId x = 0; x < c.size(); ++x)
        text << "  " << c.name(x) << "  [1] -> " << c.name(c.shift_object(x, 1)) << "  tau -> "
             << c.name(c.tau_object(x)) << "\n";
    text << "AR arrows: " << ar.to_json()["arrows"].size() << "\n";
    emit(cfg, objs, text.str(), dot);
    if (!cfg.golden_ar.empty()) {
        const auto diff = quiver_diff(ar.to_json(), read_json(cfg.golden_ar));
        for (const auto& l : diff) std::cerr << "golden AR quiver: " << l << "\n";
        if (!diff.empty()) return kFail;
    }
    return kPass;
}

int cmd_ct_check(const Config& cfg) {
    Session s(cfg);
    const auto m = s.m();
    const ClusterTiltingReport r = s.cat->cluster_tilting_report(m);
    Json j{{"M", names_of(*s.cat, m)}, {"cluster_tilting", r.ok}, {"violations", Json::array()}};
    std::ostringstream text;
    text << names_of(*s.cat, m) << (r.ok ? " is" : " is not") << " cluster-tilting\n";
    for (const auto& v : r.violations) {
        j["violations"].push_back(
            {{"object", s.cat->name(v.object)}, {"degree", v.degree}, {"side", v.side}, {"reason", v.reason}});
        text << "  " << s.cat->name(v.object) << " degree " << v.degree << " (" << v.side << "): " << v.reason
             << "\n";
    }
    emit(cfg, j, text.str());
    return r.ok ? kPass : kFail;
}

int cmd_quotient(const Config& cfg) {
    Session s(cfg);
    const QuotientCategory& q = s.quotient(cfg.force);
    const QuiverGraph g = q.quotient_ar_quiver();
    const std::string dot =
        g.to_dot("quotient_ar_" + std::to_string(cfg.n) + "_" + std::to_string(cfg.d));
    // Negative degrees come from splicing towers, which only exist for a
    // cluster-tilting M; a forced quotient gets its degree-0 table only.
    const bool tilting = s.cat->is_cluster_tilting(q.m());
    Json homs = Json::array();
    if (tilting) {
        homs = q.hom_table_json();
    } else {
        for (ObjectId x : q.surviving())
            for (ObjectId y : q.surviving())
                homs.push_back({{"source", s.cat->name(x)},
                                {"target", s.cat->name(y)},
                                {"dims", {{"0", q.quotient_hom0(x, y)}}}});
    }
    write_file(cfg, "quotient_ar.dot", dot);
    write_file(cfg, "homs.json", dump(homs));
    std::ostringstream text;
    text << "M = " << names_of(*s.cat, q.m()) << (tilting ? "" : " (not cluster-tilting; degree 0 only)") << "\n"
         << "surviving objects: " << q.surviving().size() << "\n"
         << "quotient AR arrows: " << g.to_json()["arrows"].size() << "\n";
    if (tilting)
        text << "projectives: " << names_of(*s.cat, q.projectives()) << "\n"
             << "injectives: " << names_of(*s.cat, q.injectives()) << "\n";
    emit(cfg, Json{{"quotient_ar", g.to_json()}, {"homs", homs}}, text.str(), dot);
    if (!cfg.golden_quotient.empty()) {
        const auto diff = quiver_diff(g.to_json(), read_json(cfg.golden_quotient));
        for (const auto& l : diff) std::cerr << "golden quotient AR quiver: " << l << "\n";
        if (!diff.empty()) return kFail;
    }
    return kPass;
}

// Compares Lambda with a presentation file; nullopt when none was given.
std::optional<bool> presentation_matches(const Config& cfg, const MoritaContext& ctx, Json& out) {
    if (cfg.presentation.empty()) return std::nullopt;
    GradedQuiverPresentation p;
    try {
        p = load_presentation(cfg.presentation);
    } catch (const DextError& e) {
        throw UsageError(e.what());
    }
    std::optional<AlgebraIsomorphism> iso;
    try {
        iso = find_algebra_isomorphism(p, *ctx.lambda());
    } catch (const NotStabilized&) {
        // The presented algebra is infinite-dimensional, so it cannot match.
    }
    out["presentation"] = cfg.presentation;
    out["isomorphic"] = iso.has_value();
    if (iso) {
        out["vertex_map"] = iso->vertex_map;
        out["arrow_images"] = iso->arrow_images;
    }
    return iso.has_value();
}

int cmd_lambda(const Config& cfg) {
    Session s(cfg);
    const MoritaContext& ctx = s.context();
    Json j = ctx.lambda_json();
    j["frobenius"] = frobenius_check(*s.cat, s.quotient(false).m());
    Json cmp;
    const auto match = presentation_matches(cfg, ctx, cmp);
    if (match) j["comparison"] = cmp;
    write_file(cfg, "lambda.json", dump(j));
    std::ostringstream text;
    text << "Lambda: " << ctx.lambda()->num_vertices() << " vertices, graded dims";
    for (const auto& [deg, dim] : ctx.lambda()->graded_dims()) text << " " << deg << ":" << dim;
    text << "\nFrobenius: " << (j["frobenius"].get<bool>() ? "true" : "false") << "\n";
    if (match) text << "presentation " << cfg.presentation << (*match ? " matches" : " does not match") << "\n";
    emit(cfg, j, text.str());
    return match.value_or(true) ? kPass : kFail;
}

int cmd_dem(const Config& cfg) {
    Session s(cfg);
    const MoritaContext& ctx = s.context();
    const QuotientCategory& q = s.quotient(false);
    const DemCategory& dem = ctx.dem();
    const int d = cfg.d;
    const int depth = cfg.depth > 0 ? cfg.depth : dem.default_depth();
    Json mods = Json::array(), homs = Json::array();
    bool truncated = true;
    std::ostringstream text;
    std::vector<DGModule> images;
    for (ObjectId x : q.surviving()) images.push_back(ctx.transport(x));
    for (std::size_t i = 0; i < images.size(); ++i) {
        const DGModule& m = images[i];
        Json dims;
        for (const auto& [deg, dim] : m.graded_dims()) dims[std::to_string(deg)] = dim;
        const bool om = dem.omega_power(m, d).total_cohomology() == 0;
        const bool sg = dem.sigma_power(m, d).total_cohomology() == 0;
        truncated = truncated && om && sg;
        mods.push_back({{"object", s.cat->name(q.surviving()[i])},
                        {"graded_dims", dims},
                        {"in_dem", m.in_dem(d)},
                        {"omega_d_zero", om},
                        {"sigma_d_zero", sg}});
        text << "F(" << s.cat->name(q.surviving()[i]) << "): dim " << m.dim() << "\n";
    }
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = 0; j < images.size(); ++j) {
            const RHom r = dem.rhom(images[i], images[j], -d + 1, 0, depth);
            Json dims;
            for (const auto& [deg, dim] : r.dims) dims[std::to_string(deg)] = dim;
            homs.push_back({{"source", s.cat->name(q.surviving()[i])},
                            {"target", s.cat->name(q.surviving()[j])},
                            {"dims", dims}});
        }
    const Json j{{"depth", depth}, {"modules", mods}, {"rhom", homs}, {"omega_sigma_d_zero", truncated}};
    write_file(cfg, "dem_modules.json", dump(j));
    text << "Omega^d = Sigma^d = 0 on all images: " << (truncated ? "yes" : "no") << "\n";
    emit(cfg, j, text.str());
    return truncated ? kPass : kFail;
}

Json selfinj_json(const Config& cfg, Session& s, bool& agree) {
    const MoritaContext& ctx = s.context();
    const auto shifts = cfg.shifts.empty() ? std::vector<int>{cfg.d - 1, cfg.d} : cfg.shifts;
    const SelfInjectivityReport r = ctx.dem().self_injectivity_probe(shifts);
    const bool frob = frobenius_check(*s.cat, s.quotient(false).m());
    agree = r.positive() == frob;
    Json j = r.to_json();
    j["frobenius"] = frob;
    j["agrees_with_frobenius"] = agree;
    if (!agree)
        j["discrepancy"] = std::string("probe verdict ") + (r.positive() ? "positive" : "negative") +
                           " but Frobenius check " + (frob ? "true" : "false");
    return j;
}

int cmd_selfinj(const Config& cfg) {
    Session s(cfg);
    bool agree = false;
    const Json j = selfinj_json(cfg, s, agree);
    write_file(cfg, "selfinj.json", dump(j));
    std::ostringstream text;
    for (const auto& p : j["probes"])
        text << "shift " << p["shift"].get<int>() << ": "
             << (p["quasi_iso_found"].get<bool>() ? "Lambda ~ D(Lambda)[s]" : "no quasi-isomorphism") << " ("
             << p["detail"].get<std::string>() << ")\n";
    text << "probe " << (j["positive"].get<bool>() ? "positive" : "negative") << ", Frobenius "
         << (j["frobenius"].get<bool>() ? "true" : "false") << "\n";
    if (!agree) text << "DISCREPANCY: " << j["discrepancy"].get<std::string>() << "\n";
    emit(cfg, j, text.str());
    return agree ? kPass : kFail;
}

int cmd_verify(const Config& cfg) {
    Session s(cfg);
    const ClusterCategory& c = *s.cat;
    const MoritaContext& ctx = s.context();
    const QuotientCategory& q = s.quotient(false);
    const int d = cfg.d;
    Json checks = Json::object();
    std::vector<std::string> failures;
    auto record = [&](const std::string& name, bool ok, Json detail = Json()) {
        checks[name] = {{"pass", ok}};
        if (!detail.is_null()) checks[name]["detail"] = detail;
        if (!ok) failures.push_back(name);
    };

    const VerificationReport bridge = verify_equivalence(ctx);
    record("bridge", bridge.ok(), bridge.to_json());

    // Bar oracle against the factoring quotient, at two bar lengths.
    const int len = s.bar_length();
    Json bar_mismatch = Json::array();
    for (ObjectId x = 0; x < c.size(); ++x)
        for (ObjectId y = 0; y < c.size(); ++y) {
            const std::size_t direct = q.quotient_hom0(x, y);
            for (int l : {len, len + 1}) {
                const std::size_t bar = q.bar_quotient_hom0(x, y, l);
                if (bar != direct)
                    bar_mismatch.push_back(
                        {{"source", c.name(x)}, {"target", c.name(y)}, {"bar_length", l}, {"bar", bar},
                         {"factoring", direct}});
            }
        }
    record("bar_oracle", bar_mismatch.empty(), Json{{"bar_length", len}, {"mismatches", bar_mismatch}});

    bool omega = true;
    for (ObjectId y = 0; y < c.size(); ++y) {
        for (ObjectId z : q.loop_object(y, d)) omega = omega && q.in_add_m(z);
        for (ObjectId x = 0; x < c.size(); ++x) omega = omega && q.quotient_hom(x, y, -d) == 0;
    }
    record("omega_d_zero", omega);

    bool prop_end = true;
    for (ObjectId mv : q.m()) {
        const ObjectId p = c.shift_object(mv, -d);
        for (ObjectId y = 0; y < c.size(); ++y)
            for (int i = -d + 1; i <= 0; ++i) prop_end = prop_end && q.quotient_hom(p, y, i) == c.hom_dim(p, y, i);
    }
    record("projective_homs_unchanged", prop_end);

    bool frob_consistent = q.is_frobenius() == frobenius_check(c, q.m());
    record("frobenius_consistent", frob_consistent, Json{{"frobenius", frobenius_check(c, q.m())}});

    bool agree = false;
    const Json probe = selfinj_json(cfg, s, agree);
    record("selfinj_probe", agree, probe);

    if (!cfg.golden_ar.empty()) {
        const auto diff = quiver_diff(c.ar_quiver().to_json(), read_json(cfg.golden_ar));
        record("golden_ar", diff.empty(), diff);
    }
    if (!cfg.golden_quotient.empty()) {
        const auto diff = quiver_diff(q.quotient_ar_quiver().to_json(), read_json(cfg.golden_quotient));
        record("golden_quotient_ar", diff.empty(), diff);
    }
    Json cmp;
    if (const auto match = presentation_matches(cfg, ctx, cmp)) record("presentation", *match, cmp);

    if (cfg.brute_force > 0) {
        // The enumeration needs a small prime field; rebuild everything there.
        FieldScope f2(2);
        const ClusterCategory c2(cfg.n, cfg.d);
        const QuotientCategory q2(c2, c2.parse_objects(cfg.m));
        const MoritaContext ctx2(q2);
        const SurjectivityReport r = essential_surjectivity(ctx2, cfg.brute_force);
        record("essential_surjectivity", r.ok(),
               Json{{"bound", cfg.brute_force}, {"found", r.found}, {"matched", r.matched}, {"matches", r.matches}});
    }

    const Json report{{"n", cfg.n},
                      {"d", cfg.d},
                      {"M", names_of(c, q.m())},
                      {"field", cfg.field},
                      {"frobenius", frobenius_check(c, q.m())},
                      {"checks", checks},
                      {"failures", failures},
                      {"pass", failures.empty()}};
    write_file(cfg, "verify_report.json", dump(report));
    std::ostringstream text;
    for (const auto& [name, v] : checks.items())
        text << (v["pass"].get<bool>() ? "PASS " : "FAIL ") << name << "\n";
    for (const auto& f : bridge.failures) text << "  bridge: " << f << "\n";
    text << "Frobenius: " << (report["frobenius"].get<bool>() ? "true" : "false") << "\n"
         << (failures.empty() ? "all checks passed" : "verification FAILED") << "\n";
    emit(cfg, report, text.str());
    return failures.empty() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Higher cluster categories, their ideal quotients and d-extended module categories"};
    app.set_config("--config", "", "TOML file with option values; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--n", cfg.n, "number of vertices of the linear quiver A_n")->check(CLI::PositiveNumber);
    app.add_option("--d", cfg.d, "the d of the (d+1)-cluster category")->check(CLI::PositiveNumber);
    app.add_option("--M", cfg.m, "cluster-tilting object, e.g. \"P(0,1)+P(2,1)\"");
    app.add_option("--field", cfg.field, "ground field: Q or Fp:p")->capture_default_str();
    app.add_option("--out-dir", cfg.out_dir, "directory for output files (none written when empty)");
    app.add_option("--format", cfg.format, "stdout format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();
    app.add_option("--bar-length", cfg.bar_length, "bar oracle word length (default d+2)")
        ->check(CLI::Range(2, 64));
    app.add_option("--depth", cfg.depth, "resolution depth for derived homs (default d+2)")
        ->check(CLI::Range(1, 64));
    app.add_flag("--force", cfg.force, "build the quotient even if M is not cluster-tilting");
    app.add_option("--golden-ar", cfg.golden_ar, "compare the AR quiver with this JSON file");
    app.add_option("--golden-quotient", cfg.golden_quotient, "compare the quotient AR quiver with this JSON file");
    app.add_option("--presentation", cfg.presentation, "compare Lambda with this quiver presentation");
    app.add_option("--shifts", cfg.shifts, "shifts probed by selfinj (default d-1 d)");
    app.add_option("--brute-force", cfg.brute_force, "verify: enumerate modules of dimension <= B over F_2")
        ->check(CLI::Range(0, 6));

    std::map<std::string, int (*)(const Config&)> commands{
        {"build", cmd_build},       {"ct-check", cmd_ct_check}, {"quotient", cmd_quotient},
        {"lambda", cmd_lambda},     {"dem", cmd_dem},           {"verify", cmd_verify},
        {"selfinj", cmd_selfinj}};
    const std::map<std::string, std::string> help{
        {"build", "enumerate indecomposables and the AR quiver"},
        {"ct-check", "certify that M is cluster-tilting"},
        {"quotient", "ideal quotient by add M: AR quiver and graded homs"},
        {"lambda", "the truncated endomorphism algebra of M"},
        {"dem", "transported modules and derived homs on the module side"},
        {"verify", "full comparison of the quotient with the module side"},
        {"selfinj", "self-injectivity probe against the Frobenius check"}};
    for (const auto& [name, fn] : commands) app.add_subcommand(name, help.at(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        std::uint32_t modulus = 0;
        try {
            modulus = parse_field(cfg.field);
        } catch (const std::exception& e) {
            throw UsageError(std::string("bad --field: ") + e.what());
        }
        std::optional<FieldScope> scope;
        if (modulus != 0) scope.emplace(modulus);
        for (const auto& [name, fn] : commands)
            if (app.got_subcommand(name)) return fn(cfg);
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DextError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_internal() ? kInternal : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
