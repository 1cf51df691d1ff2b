#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "puregauss/puregauss.h"

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0, kExitUsage = 2, kExitResource = 3, kExitInternal = 4;

struct CliError {
    int code;
    std::string message;
};

int exit_code(pg_status s) {
    switch (s) {
        case PG_OK: return kExitOk;
        case PG_ERR_DOMAIN: return kExitUsage;
        case PG_ERR_RESOURCE: return kExitResource;
        default: return kExitInternal;
    }
}

ordered_json take(pg_status s, char*& out) {
    if (s != PG_OK) throw CliError{exit_code(s), pg_last_error()};
    ordered_json j = ordered_json::parse(out);
    pg_string_free(out);
    out = nullptr;
    return j;
}

std::vector<uint64_t> read_index_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitUsage, "cannot read index-set file " + path};
    std::vector<uint64_t> I;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        uint64_t x;
        if (ls >> x) I.push_back(x);
    }
    return I;
}

struct InstanceFile {
    uint64_t p = 0, f = 0, s = 1, N = 0;
    std::vector<uint64_t> I;
};

void write_instance(const std::string& path, const InstanceFile& inst) {
    std::ofstream out(path);
    if (!out) throw CliError{kExitUsage, "cannot write instance file " + path};
    ordered_json j = {{"p", inst.p}, {"f", inst.f}, {"s", inst.s}, {"N", inst.N}, {"I", inst.I}};
    out << j.dump(2) << "\n";
}

InstanceFile read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitUsage, "cannot read instance file " + path + " (run shds build first)"};
    ordered_json j;
    try {
        j = ordered_json::parse(in);
        InstanceFile inst;
        inst.p = j.at("p");
        inst.f = j.at("f");
        inst.s = j.at("s");
        inst.N = j.at("N");
        inst.I = j.at("I").get<std::vector<uint64_t>>();
        return inst;
    } catch (const ordered_json::exception& e) {
        throw CliError{kExitUsage, std::string("malformed instance file: ") + e.what()};
    }
}

struct ShdsHandle {
    pg_shds* h = nullptr;
    ~ShdsHandle() { pg_shds_free(h); }
};

void open_instance(ShdsHandle& out, const InstanceFile& inst, uint64_t cap) {
    pg_status s = pg_shds_build(inst.p, inst.f, inst.s, inst.N, inst.I.data(), inst.I.size(), cap, &out.h);
    if (s != PG_OK) throw CliError{exit_code(s), pg_last_error()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pure Gauss sums, their classification, and skew Hadamard difference sets"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(pg_version()));

    unsigned threads = 0;
    uint64_t field_cap = 1ULL << 23;
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--field-cap", field_cap, "Largest field size q to build");

    uint64_t N = 0, p = 0, f = 0, s = 1, a = 0, p1 = 0, p2 = 0, nmax = 0, threshold = 3;
    uint64_t budget = 1ULL << 24;
    int64_t j = 1;
    std::string emit = "json", index_file, instance_path = "shds_instance.json";
    bool explain = false, use_default = false, exhaustive = false, literal = false, brute = false, relaxed = false;

    auto* purity = app.add_subcommand("purity", "Purity verdicts from both oracles");
    purity->add_option("--N", N)->required();
    purity->add_option("--p", p)->required();
    purity->add_option("--f", f, "Must equal ord_N(p) when given");

    auto* classify = app.add_subcommand("classify", "Enumerate pure triples of odd order");
    auto* opt_f = classify->add_option("--f", f, "Odd order");
    auto* opt_nmax = classify->add_option("--nmax", nmax, "Scan every N up to this bound");
    opt_f->excludes(opt_nmax);
    classify->add_option("--emit", emit)->check(CLI::IsMember({"csv", "json"}));
    classify->add_flag("--explain", explain, "Include pruning provenance");

    auto* gauss = app.add_subcommand("gauss", "Exact Gauss sum G_{p^f}(eta_N^j)");
    gauss->add_option("--p", p)->required();
    gauss->add_option("--f", f)->required();
    gauss->add_option("--N", N)->required();
    gauss->add_option("--j", j);

    auto* sign = app.add_subcommand("sign", "Sign constants for a pure triple with the subproduct property");
    sign->add_option("--p", p)->required();
    sign->add_option("--f", f)->required();
    sign->add_option("--N", N)->required();

    auto* shds = app.add_subcommand("shds", "Skew Hadamard difference sets");
    shds->require_subcommand(1);
    shds->fallthrough();
    shds->add_option("--instance", instance_path, "Instance file written by build")->capture_default_str();
    auto* build = shds->add_subcommand("build", "Validate an index set and record the instance");
    build->add_option("--p", p)->required();
    build->add_option("--f", f)->required();
    build->add_option("--s", s)->capture_default_str();
    build->add_option("--N", N)->required();
    auto* opt_file = build->add_option("--index-set", index_file, "One integer per line");
    auto* opt_def = build->add_flag("--default", use_default, "Block construction index set");
    opt_file->excludes(opt_def);
    auto* verify = shds->add_subcommand("verify", "Exact character values of D");
    verify->add_flag("--brute-force", brute, "Also count all differences (q <= 20000)");
    auto* dual = shds->add_subcommand("dual", "Index set of the dual");
    auto* invariant = shds->add_subcommand("invariant", "Distinct values of |D & (D-x) & (D-ax)|");
    invariant->add_option("--a", a)->required();
    invariant->add_flag("--exhaustive", exhaustive, "Scan every orbit instead of stopping at the threshold");
    invariant->add_option("--threshold", threshold)->capture_default_str();
    invariant->add_flag("--literal", literal, "Scan every field element (q <= 20000)");
    auto* flat = shds->add_subcommand("flatpoly", "Search for flat polynomials");
    flat->add_option("--p1", p1)->required();
    flat->add_option("--p2", p2)->required();
    flat->add_flag("--relaxed", relaxed, "Drop the Phi_{2p1}, Phi_{2p2} conditions");
    flat->add_option("--budget", budget)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    ordered_json report;
    ordered_json params;
    std::string command;
    auto t0 = std::chrono::steady_clock::now();
    int code = kExitOk;
    bool csv_only = false;
    std::string csv;
    char* out = nullptr;
    try {
        if (purity->parsed()) {
            command = "purity";
            params = {{"N", N}, {"p", p}};
            if (f) params["f"] = f;
            report["result"] = take(pg_purity_json(N, p, f, &out), out);
        } else if (classify->parsed()) {
            command = "classify";
            if (opt_f->count()) {
                params = {{"f", f}};
                if (f % 2 == 0) throw CliError{kExitUsage, "f must be odd"};
                report["result"] = take(pg_classify_f_json(f, explain, &out), out);
            } else if (opt_nmax->count()) {
                params = {{"nmax", nmax}};
                report["result"] = take(pg_scan_tables_json(nmax, threads, explain, &out), out);
            } else {
                throw CliError{kExitUsage, "classify needs --f or --nmax"};
            }
            params["explain"] = explain;
            if (emit == "csv") {
                csv_only = true;
                csv = "N,f,p_bar,label\n";
                for (const auto& r : report["result"]["rows"])
                    csv += std::to_string(r["N"].get<uint64_t>()) + "," + std::to_string(r["f"].get<uint64_t>()) + "," +
                           std::to_string(r["p_bar"].get<uint64_t>()) + "," + r["label"].get<std::string>() + "\n";
            }
        } else if (gauss->parsed()) {
            command = "gauss";
            params = {{"p", p}, {"f", f}, {"N", N}, {"j", j}};
            report["result"] = take(pg_gauss_sum_json(p, f, N, j, field_cap, &out), out);
        } else if (sign->parsed()) {
            command = "sign";
            params = {{"p", p}, {"f", f}, {"N", N}};
            report["result"] = take(pg_sign_constants_json(p, f, N, field_cap, &out), out);
        } else if (build->parsed()) {
            command = "shds build";
            params = {{"p", p}, {"f", f}, {"s", s}, {"N", N}};
            InstanceFile inst{p, f, s, N, {}};
            if (!index_file.empty()) {
                inst.I = read_index_file(index_file);
                params["index_set"] = index_file;
            } else if (use_default) {
                ordered_json d = take(pg_default_index_set_json(N, p, &out), out);
                inst.I = d["I"].get<std::vector<uint64_t>>();
                params["index_set"] = "default";
            } else {
                throw CliError{kExitUsage, "build needs --index-set FILE or --default"};
            }
            ShdsHandle h;
            open_instance(h, inst, field_cap);
            report["result"] = take(pg_shds_describe_json(h.h, &out), out);
            write_instance(instance_path, inst);
            report["result"]["instance_file"] = instance_path;
        } else if (verify->parsed() || dual->parsed() || invariant->parsed()) {
            command = verify->parsed() ? "shds verify" : dual->parsed() ? "shds dual" : "shds invariant";
            params = {{"instance", instance_path}};
            InstanceFile inst = read_instance(instance_path);
            ShdsHandle h;
            open_instance(h, inst, field_cap);
            if (verify->parsed()) {
                params["brute_force"] = brute;
                report["result"] = take(pg_shds_verify_json(h.h, brute, &out), out);
            } else if (dual->parsed()) {
                report["result"] = take(pg_shds_dual_json(h.h, &out), out);
            } else {
                params["a"] = a;
                params["exhaustive"] = exhaustive;
                params["literal"] = literal;
                if (!exhaustive && !literal) params["threshold"] = threshold;
                report["result"] =
                    take(pg_shds_invariant_json(h.h, a, exhaustive ? 0 : threshold, literal, threads, &out), out);
            }
        } else if (flat->parsed()) {
            command = "shds flatpoly";
            params = {{"p1", p1}, {"p2", p2}, {"relaxed", relaxed}, {"budget", budget}};
            report["result"] = take(pg_flatpoly_json(p1, p2, relaxed, budget, &out), out);
        }
    } catch (const CliError& e) {
        code = e.code;
        csv_only = false;
        report["result"] = {{"error", e.message}};
    }
    if (csv_only) {
        std::fputs(csv.c_str(), stdout);
        return code;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    ordered_json full = {{"command", command},
                         {"parameters", params},
                         {"result", report["result"]},
                         {"elapsed", ms},
                         {"version", pg_version()}};
    std::cout << full.dump(2) << "\n";
    if (code != kExitOk) std::cerr << "error: " << report["result"]["error"].get<std::string>() << "\n";
    return code;
}
