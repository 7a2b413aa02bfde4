// Command-line surface: compute flow densities, dump decorated trees, query
// the vertex-integral oracle, print KdV densities, run verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 unsupported integral pattern.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "drh/jsonio.hpp"
#include "drh/laxkdv.hpp"
#include "drh/verify.hpp"

namespace {

using namespace drh;

struct RunConfig {
    int rank = 2;
    int dmax = 6;
    int emax = 4;
    std::string r1_spec;  // "i,j=p/q;..." or "i,j=xi"; default xi at (1,2)
    std::string g_spec;   // "sym" or comma-separated rationals
    std::string format = "json";
};

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto last = s.find_last_not_of(" \t\r");
            s.erase(last == std::string::npos ? 0 : last + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

FamilySpec build_family(const RunConfig& cfg) {
    FamilySpec spec = FamilySpec::diagonal(cfg.rank);
    const int np = spec.num_params();
    if (!cfg.g_spec.empty() && cfg.g_spec != "sym") {
        std::stringstream ss(cfg.g_spec);
        std::string item;
        int i = 0;
        while (std::getline(ss, item, ',')) {
            if (i >= cfg.rank) throw std::invalid_argument("--G: too many entries");
            spec.G[static_cast<size_t>(i++)] = ParamRational::constant(np, rat_from_string(item));
        }
        if (i != cfg.rank) throw std::invalid_argument("--G: wrong entry count");
    }
    if (cfg.r1_spec.empty()) {
        if (cfg.rank == 2) spec.R1[0][1] = ParamRational::symbol(np, 0);
    } else {
        std::stringstream ss(cfg.r1_spec);
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (item.empty()) continue;
            auto eq = item.find('=');
            auto comma = item.find(',');
            if (eq == std::string::npos || comma == std::string::npos || comma > eq)
                throw std::invalid_argument("--R1: expected \"i,j=value;...\"");
            int i = std::stoi(item.substr(0, comma));
            int j = std::stoi(item.substr(comma + 1, eq - comma - 1));
            std::string val = item.substr(eq + 1);
            if (i < 1 || i > cfg.rank || j < 1 || j > cfg.rank)
                throw std::invalid_argument("--R1: index out of range");
            spec.R1[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
                val == "xi" ? ParamRational::symbol(np, 0)
                            : ParamRational::constant(np, rat_from_string(val));
        }
    }
    if (!check_nilpotent(spec))
        throw std::invalid_argument("R1 must be strictly upper triangular with R1^2 = 0");
    return spec;
}

void emit(const json& j, const RunConfig& cfg) {
    if (cfg.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

int cmd_flows(const RunConfig& cfg, int alpha, int beta, int d, bool miura) {
    FamilySpec spec = build_family(cfg);
    TruncationContext ctx(cfg.rank, cfg.dmax, cfg.emax);
    Oracle oracle;
    DiffPoly P = assemble_P(alpha, beta, d, spec, ctx, oracle);
    json out;
    out["alpha"] = alpha;
    out["beta"] = beta;
    out["d"] = d;
    out["P"] = to_json(P);
    out["P_text"] = P.to_string();
    out["dxP"] = to_json(dx(P));
    if (miura) {
        if (cfg.rank != 2)
            throw std::invalid_argument("--miura is defined for the rank-2 family");
        std::vector<DiffPoly> column;
        for (int gamma = 1; gamma <= cfg.rank; ++gamma)
            column.push_back(gamma == alpha ? P
                                            : assemble_P(gamma, beta, d, spec, ctx, oracle));
        auto flows = transform_flows(column, normalizing_miura(spec, ctx));
        json mf = json::array();
        for (int a = 1; a <= cfg.rank; ++a) {
            json e;
            e["var"] = a;
            e["rhs"] = to_json(flows[static_cast<size_t>(a - 1)]);
            e["rhs_text"] = flows[static_cast<size_t>(a - 1)].to_string();
            mf.push_back(std::move(e));
        }
        out["miura_flows"] = std::move(mf);
    }
    emit(out, cfg);
    return 0;
}

int cmd_trees(const RunConfig& cfg, int alpha, int beta, int d, int n, int g) {
    FamilySpec spec = build_family(cfg);
    json out;
    out["alpha"] = alpha;
    out["beta"] = beta;
    out["d"] = d;
    out["n"] = n;
    out["g"] = g;
    json trees = json::array();
    std::vector<LinearForm> leg_mults(static_cast<size_t>(n) + 3, zero_form(n));
    for (int i = 0; i < n; ++i) {
        leg_mults[1][static_cast<size_t>(i)] = -1;
        leg_mults[static_cast<size_t>(i) + 3] = unit_form(n, i);
    }
    std::set<std::string> families;
    for (const auto& tree : enumerate_trees(cfg.rank, g, n + 2, d)) {
        auto S = balance_multiplicities(tree, leg_mults);
        for (const auto& dec : enumerate_decorations(tree, alpha, beta, spec, d)) {
            trees.push_back(to_json(dec, S));
            families.insert(family_signature(dec));
        }
    }
    out["n_decorated"] = trees.size();
    out["n_families"] = families.size();
    out["trees"] = std::move(trees);
    emit(out, cfg);
    return 0;
}

int cmd_oracle(const RunConfig& cfg, const std::string& query_file) {
    json in;
    if (query_file.empty() || query_file == "-") {
        std::cin >> in;
    } else {
        std::ifstream f(query_file);
        if (!f) throw std::invalid_argument("cannot open " + query_file);
        f >> in;
    }
    Oracle oracle;
    VertexIntegralQuery q = query_from_json(in);
    MultiPoly value = oracle.evaluate(q);
    json out;
    out["query"] = in;
    out["value"] = to_json(value);
    out["value_text"] = msym_string(value);
    emit(out, cfg);
    return 0;
}

int cmd_kdv(const RunConfig& cfg, int d) {
    TruncationContext ctx(1, std::max(cfg.dmax, d + 1), std::max(cfg.emax, 2 * d));
    DiffPoly P = kdv_P(d, ctx);
    json out;
    out["d"] = d;
    out["P"] = to_json(P);
    out["P_text"] = P.to_string();
    out["dxP"] = to_json(dx(P));
    emit(out, cfg);
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, bool corrupt_q) {
    VerifyOptions opt;
    opt.corrupt_q_table = corrupt_q;
    std::vector<SuiteReport> reports;
    if (suite == "kdv")
        reports.push_back(verify_kdv(opt));
    else if (suite == "oracle")
        reports.push_back(verify_oracle(opt));
    else if (suite == "theorem-n2")
        reports.push_back(verify_theorem_n2(opt));
    else if (suite == "finiteness")
        reports.push_back(verify_finiteness(opt));
    else if (suite == "commutativity")
        reports.push_back(verify_commutativity(opt));
    else if (suite == "all")
        reports = verify_all(opt);
    else
        throw std::invalid_argument("unknown suite: " + suite);
    json out = json::array();
    bool pass = true;
    for (const auto& r : reports) {
        pass = pass && r.all_pass();
        out.push_back(to_json(r));
    }
    emit(out, cfg);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact constructor and verifier for the finite-type rank-N DR hierarchies"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (flags override)");
    app.add_option("--rank", cfg.rank, "family rank N");
    app.add_option("--Dmax", cfg.dmax, "u-degree cutoff");
    app.add_option("--Emax", cfg.emax, "eps-power cutoff");
    app.add_option("--R1", cfg.r1_spec, "R1 entries, e.g. \"1,2=xi\" or \"1,2=3/5\"");
    app.add_option("--xi", [&cfg](const std::vector<std::string>& v) {
        cfg.r1_spec = "1,2=" + v.at(0);
        return true;
    }, "shorthand for --R1 \"1,2=<value>\"");
    app.add_option("--G", cfg.g_spec, "\"sym\" (default) or rationals \"p/q,p/q,...\"");
    app.add_option("--format", cfg.format, "json|text");

    int alpha = 1, beta = 1, dflow = 0, n_in = 2, g_in = 0;
    bool miura = false;

    auto* flows = app.add_subcommand("flows", "assemble P^alpha_{beta,d} and its x-derivative");
    flows->add_option("--alpha", alpha)->required();
    flows->add_option("--beta", beta)->required();
    flows->add_option("--d", dflow);
    flows->add_flag("--miura", miura, "also emit the transformed flows");

    auto* trees = app.add_subcommand("trees", "dump decorated stable trees with weights");
    trees->add_option("--alpha", alpha)->required();
    trees->add_option("--beta", beta)->required();
    trees->add_option("--d", dflow);
    trees->add_option("--n", n_in, "number of inputs");
    trees->add_option("--g", g_in, "total genus");

    std::string query_file;
    auto* oracle_cmd = app.add_subcommand("oracle", "evaluate one vertex integral (JSON query)");
    oracle_cmd->add_option("--query", query_file, "query file, or - for stdin");

    int kdv_d = 1;
    auto* kdv_cmd = app.add_subcommand("kdv", "KdV flow density from the Lax engine");
    kdv_cmd->add_option("--d", kdv_d)->required();

    std::string suite = "all";
    bool corrupt_q = false;
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    verify_cmd->add_option("suite", suite,
                           "kdv | oracle | theorem-n2 | finiteness | commutativity | all");
    verify_cmd->add_flag("--corrupt-q-table", corrupt_q)->group("");  // negative-control hook

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            auto kv = read_config_file(config_path);
            auto get = [&](const std::string& k, auto& target, auto parse) {
                auto it = kv.find(k);
                if (it == kv.end()) return;
                target = parse(it->second);
            };
            // Flags given on the command line already overrode the defaults;
            // only fill values the user did not pass.
            if (!app.count("--rank")) get("rank", cfg.rank, [](const std::string& s) { return std::stoi(s); });
            if (!app.count("--Dmax")) get("Dmax", cfg.dmax, [](const std::string& s) { return std::stoi(s); });
            if (!app.count("--Emax")) get("Emax", cfg.emax, [](const std::string& s) { return std::stoi(s); });
            if (!app.count("--R1")) get("R1", cfg.r1_spec, [](const std::string& s) { return s; });
            if (!app.count("--G")) get("G", cfg.g_spec, [](const std::string& s) { return s; });
        }
        if (flows->parsed()) return cmd_flows(cfg, alpha, beta, dflow, miura);
        if (trees->parsed()) return cmd_trees(cfg, alpha, beta, dflow, n_in, g_in);
        if (oracle_cmd->parsed()) return cmd_oracle(cfg, query_file);
        if (kdv_cmd->parsed()) return cmd_kdv(cfg, kdv_d);
        if (verify_cmd->parsed()) return cmd_verify(cfg, suite, corrupt_q);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const drh::UnsupportedPattern& e) {
        json err;
        err["error"] = "unsupported-pattern";
        err["what"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        json err;
        err["error"] = "configuration";
        err["what"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "internal";
        err["what"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
}
