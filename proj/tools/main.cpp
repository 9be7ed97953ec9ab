// seqspace: norms, norming functionals, numerical positivity, and
// minimal-norm projections in finite-dimensional symmetric sequence spaces.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "seqspace/duality.hpp"
#include "seqspace/operators.hpp"
#include "seqspace/positivity.hpp"
#include "seqspace/serialization.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/theorems.hpp"
#include "seqspace/verify.hpp"

namespace {

using seqspace::json;

struct CommonOpts {
    std::string space_path;
    std::uint64_t seed = 0;
    int budget = 64;
    double tol = 1e-9;
    std::string out_path;
    std::string format = "json";
    bool expect_compatible = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_space) {
    auto* sp = cmd->add_option("--space", o.space_path, "space spec JSON file");
    if (needs_space) sp->required();
    cmd->add_option("--seed", o.seed, "search seed");
    cmd->add_option("--budget", o.budget, "search restarts");
    cmd->add_option("--tol", o.tol, "absolute tolerance");
    cmd->add_option("--out", o.out_path, "write the report to this file");
    cmd->add_option("--format", o.format, "json|csv|human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    cmd->add_flag("--expect-compatible", o.expect_compatible,
                  "exit 2 when the verdict is Refuted/Incompatible/Impossible");
}

seqspace::Vector parse_vector(const std::string& csv) {
    seqspace::Vector v;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        v.push_back(std::stod(tok));
    }
    if (v.empty()) throw seqspace::ParamOutOfRange("empty vector argument");
    return v;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw seqspace::ParamOutOfRange("file not readable: " + path);
    json j;
    in >> j;
    return j;
}

void flatten(const std::string& prefix, const json& j, std::ostream& os, bool human) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(prefix.empty() ? k : prefix + "." + k, v, os, human);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& v : j) {
            flatten(prefix + "[" + std::to_string(i) + "]", v, os, human);
            ++i;
        }
    } else {
        os << prefix << (human ? ": " : ",") << j.dump() << "\n";
    }
}

int emit(const CommonOpts& o, const std::string& command, const json& config,
         const json& result) {
    json report;
    report["schema"] = seqspace::kSchema;
    report["command"] = command;
    report["config"] = config;
    report["config_hash"] = seqspace::config_hash(config);
    report["result"] = result;

    std::ostringstream body;
    if (o.format == "json") {
        body << report.dump(2) << "\n";
    } else {
        flatten("", report, body, o.format == "human");
    }
    if (o.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(o.out_path);
        if (!out) throw seqspace::ParamOutOfRange("cannot write: " + o.out_path);
        out << body.str();
    }

    if (o.expect_compatible) {
        const json* verdict = nullptr;
        if (result.contains("verdict")) verdict = &result["verdict"];
        if (result.is_object())
            for (const auto& [k, v] : result.items())
                if (v.is_object() && v.contains("verdict") && !verdict) verdict = &v["verdict"];
        if (verdict) {
            const std::string v = verdict->get<std::string>();
            if (v == "Refuted" || v == "Incompatible" || v == "Impossible") return 2;
        }
        if (result.contains("witness_found") && result["witness_found"].get<bool>()) return 2;
    }
    return 0;
}

json base_config(const CommonOpts& o, const std::optional<seqspace::SpaceSpec>& s) {
    json cfg;
    if (s) cfg["space"] = seqspace::to_json(*s);
    cfg["seed"] = o.seed;
    cfg["budget"] = json{{"restarts", o.budget}, {"steps", 200}};
    cfg["tol"] = o.tol;
    return cfg;
}

seqspace::SearchBudget budget_of(const CommonOpts& o) {
    seqspace::SearchBudget b;
    b.restarts = o.budget;
    return b;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric sequence space norms, projections, and positivity"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string x_csv, f_csv, phi_path, op_path, proj_path, fs_path, case_name, classify_what;
    bool contains_basis = false;

    auto* c_norm = app.add_subcommand("norm", "vector norm in the given space");
    add_common(c_norm, o, true);
    c_norm->add_option("--x", x_csv, "comma-separated coordinates")->required();

    auto* c_conj = app.add_subcommand("conjugate", "Young conjugate piece table");
    add_common(c_conj, o, false);
    c_conj->add_option("--phi", phi_path, "Orlicz function JSON file")->required();

    auto* c_norming = app.add_subcommand("norming", "norming functional and extremes");
    add_common(c_norming, o, true);
    c_norming->add_option("--x", x_csv, "comma-separated coordinates")->required();

    auto* c_opnorm = app.add_subcommand("opnorm", "operator norm estimate");
    add_common(c_opnorm, o, true);
    c_opnorm->add_option("--op", op_path, "operator JSON file");
    c_opnorm->add_option("--projection", proj_path, "projection spec JSON file");

    auto* c_pos = app.add_subcommand("positivity", "numerical positivity scan");
    add_common(c_pos, o, true);
    c_pos->add_option("--op", op_path, "operator JSON file");
    c_pos->add_option("--projection", proj_path, "projection spec JSON file (runs the norm-one check)");

    auto* c_minproj = app.add_subcommand("minproj", "minimal-norm projection search");
    add_common(c_minproj, o, true);
    c_minproj->add_option("--fs", fs_path, "JSON array of kernel functionals")->required();

    auto* c_classify = app.add_subcommand("classify", "classification predicates");
    add_common(c_classify, o, false);
    c_classify->add_option("what", classify_what, "phi | lorentz-hyperplane | orlicz-subspace")
        ->required();
    c_classify->add_option("--phi", phi_path, "Orlicz function JSON file");
    c_classify->add_option("--f", f_csv, "functional, comma-separated");
    c_classify->add_option("--fs", fs_path, "JSON array of kernel functionals");
    c_classify->add_flag("--contains-basis-vector", contains_basis,
                         "the subspace contains a basis vector");

    auto* c_verify = app.add_subcommand("verify", "run the acceptance suite");
    add_common(c_verify, o, false);
    c_verify->add_option("--case", case_name, "run a single named case");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const seqspace::SearchBudget budget = budget_of(o);

        if (c_norm->parsed()) {
            const seqspace::SpaceSpec s = seqspace::space_from_file(o.space_path);
            const seqspace::Vector x = parse_vector(x_csv);
            json cfg = base_config(o, s);
            cfg["x"] = x;
            return emit(o, "norm", cfg, json{{"value", seqspace::space_norm(s, x)}});
        }

        if (c_conj->parsed()) {
            const seqspace::OrliczFunction phi =
                seqspace::orlicz_function_from_json(load_json(phi_path));
            const seqspace::PiecewisePower conj = seqspace::young_conjugate(phi);
            json cfg = base_config(o, std::nullopt);
            cfg["phi"] = seqspace::to_json(phi);
            json pieces = json::array();
            for (const auto& p : conj.pieces())
                pieces.push_back(json{{"t0", p.t0}, {"a", p.a}, {"b", p.b}, {"c", p.c}, {"q", p.q}});
            json result{{"pieces", pieces}};
            if (std::isfinite(conj.domain_end())) result["domain_end"] = conj.domain_end();
            return emit(o, "conjugate", cfg, result);
        }

        if (c_norming->parsed()) {
            const seqspace::SpaceSpec s = seqspace::space_from_file(o.space_path);
            const seqspace::Vector x = parse_vector(x_csv);
            json cfg = base_config(o, s);
            cfg["x"] = x;
            json result;
            result["functional"] = seqspace::norming_functional(s, x);
            result["extremes"] = seqspace::norming_extremes(s, x, 64, o.seed);
            return emit(o, "norming", cfg, result);
        }

        if (c_opnorm->parsed() || c_pos->parsed()) {
            const seqspace::SpaceSpec s = seqspace::space_from_file(o.space_path);
            json cfg = base_config(o, s);
            if (!proj_path.empty()) {
                const seqspace::ProjectionSpec ps =
                    seqspace::projection_from_json(load_json(proj_path));
                cfg["projection"] = seqspace::to_json(ps);
                if (c_opnorm->parsed()) {
                    const auto r = seqspace::operator_norm(
                        s, seqspace::build_projection(ps, seqspace::dim_of(s)), budget, o.seed);
                    return emit(o, "opnorm", cfg, seqspace::to_json(r));
                }
                const auto r = seqspace::prop_a_check(s, ps, budget, o.seed);
                return emit(o, "positivity", cfg, seqspace::to_json(r));
            }
            if (op_path.empty())
                throw seqspace::ParamOutOfRange("need --op or --projection");
            const seqspace::LinearOperator T = seqspace::operator_from_json(load_json(op_path));
            cfg["op"] = seqspace::to_json(T);
            if (c_opnorm->parsed()) {
                const auto r = seqspace::operator_norm(s, T, budget, o.seed);
                return emit(o, "opnorm", cfg, seqspace::to_json(r));
            }
            const auto r = seqspace::positivity_scan(s, T, budget, o.seed, o.tol);
            return emit(o, "positivity", cfg, seqspace::to_json(r));
        }

        if (c_minproj->parsed()) {
            const seqspace::SpaceSpec s = seqspace::space_from_file(o.space_path);
            const auto fs = load_json(fs_path).get<std::vector<seqspace::FunctionalVec>>();
            json cfg = base_config(o, s);
            cfg["fs"] = fs;
            const auto r = seqspace::minimal_projection_search(s, fs, budget, o.seed);
            return emit(o, "minproj", cfg, seqspace::to_json(r));
        }

        if (c_classify->parsed()) {
            if (classify_what == "phi") {
                if (phi_path.empty()) throw seqspace::ParamOutOfRange("classify phi needs --phi");
                const seqspace::OrliczFunction phi =
                    seqspace::orlicz_function_from_json(load_json(phi_path));
                json cfg = base_config(o, std::nullopt);
                cfg["phi"] = seqspace::to_json(phi);
                return emit(o, "classify-phi", cfg,
                            seqspace::to_json(seqspace::classify_orlicz_phi(phi)));
            }
            if (classify_what == "lorentz-hyperplane") {
                if (o.space_path.empty() || f_csv.empty())
                    throw seqspace::ParamOutOfRange(
                        "classify lorentz-hyperplane needs --space and --f");
                const seqspace::SpaceSpec s = seqspace::space_from_file(o.space_path);
                const auto* l = std::get_if<seqspace::LorentzSpec>(&s);
                if (!l) throw seqspace::ParamOutOfRange("space must be a Lorentz space");
                const seqspace::FunctionalVec f = parse_vector(f_csv);
                json cfg = base_config(o, s);
                cfg["f"] = f;
                return emit(o, "classify-lorentz-hyperplane", cfg,
                            seqspace::to_json(seqspace::lorentz_hyperplane_verdict(*l, f)));
            }
            if (classify_what == "orlicz-subspace") {
                if (o.space_path.empty() || fs_path.empty())
                    throw seqspace::ParamOutOfRange(
                        "classify orlicz-subspace needs --space and --fs");
                const seqspace::SpaceSpec s = seqspace::space_from_file(o.space_path);
                const auto* os = std::get_if<seqspace::OrliczSpec>(&s);
                if (!os) throw seqspace::ParamOutOfRange("space must be an Orlicz space");
                const auto fs = load_json(fs_path).get<std::vector<seqspace::FunctionalVec>>();
                json cfg = base_config(o, s);
                cfg["fs"] = fs;
                cfg["contains_basis_vector"] = contains_basis;
                return emit(o, "classify-orlicz-subspace", cfg,
                            seqspace::to_json(
                                seqspace::orlicz_subspace_verdict(*os, fs, contains_basis)));
            }
            throw seqspace::ParamOutOfRange("unknown classify target: " + classify_what);
        }

        if (c_verify->parsed()) {
            std::vector<seqspace::AcResult> results;
            if (case_name.empty())
                results = seqspace::run_acceptance_suite();
            else
                results.push_back(seqspace::run_acceptance_case(case_name));
            json cfg = base_config(o, std::nullopt);
            if (!case_name.empty()) cfg["case"] = case_name;
            json table = json::array();
            bool all_pass = true;
            for (const auto& r : results) {
                table.push_back(json{{"id", r.id},
                                     {"name", r.name},
                                     {"pass", r.pass},
                                     {"detail", r.detail},
                                     {"seconds", r.seconds}});
                all_pass = all_pass && r.pass;
                std::fprintf(stderr, "AC-%d %-30s %s (%.2fs)\n", r.id, r.name.c_str(),
                             r.pass ? "pass" : "FAIL", r.seconds);
            }
            const int rc = emit(o, "verify", cfg, json{{"cases", table}, {"all_pass", all_pass}});
            return all_pass ? rc : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
