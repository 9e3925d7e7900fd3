// Copyright 2026 The ftqs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ftqs: command-line front end. Exit codes: 0 success, 2 configuration
// error, 3 runtime failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli_config.h"
#include "ftqs/bounds_estimator/bounds.h"
#include "ftqs/common/rng.h"
#include "ftqs/graph_sampler/sampler.h"
#include "ftqs/msd/distill.h"
#include "ftqs/msd/zmsd.h"
#include "ftqs/pipeline/pipeline.h"
#include "ftqs/routing/routing.h"
#include "ftqs/surface_code/surface_code.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ftqs;
using cli::ConfigError;

namespace {

struct Context {
    std::string command;
    json cfg;
    fs::path out;
    std::vector<std::string> written;

    template <typename T>
    T get(const char *key) const {
        return cfg.at(key).get<T>();
    }
    uint64_t seed() const {
        return uint64_t(cfg.at("seed").get<int64_t>());
    }
    int threads() const {
        return int(cfg.at("threads").get<int64_t>());
    }

    void write(const std::string &name, const std::string &body) {
        fs::path p = out / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write '" + p.string() + "'");
        }
        f << body;
        written.push_back(p.string());
    }
    // CSV files carry the resolved config as leading comment lines.
    void write_csv(const std::string &name, const std::string &csv) {
        write(name, "# ftqs " + command + "\n# config: " + cfg.dump() + "\n" + csv);
    }
    void write_json(const std::string &name, json body) {
        body["command"] = command;
        body["config"] = cfg;
        write(name, body.dump(2) + "\n");
    }
};

GraphSpec load_graph(int n, int k, const std::string &gadget) {
    GadgetSpec g;
    bool prime = false;
    if (gadget == "gb") {
        g = GadgetSpec::default_gb();
    } else if (gadget == "gb_prime") {
        g = GadgetSpec::default_gb();
        prime = true;
    } else {
        try {
            g = GadgetSpec::from_json_file(gadget);
        } catch (const std::runtime_error &e) {
            throw ConfigError(e.what());
        }
    }
    GraphSpec s = build_brickwork_graph(n, k, g);
    return prime ? substitute_gbprime(s) : s;
}

void cmd_sample(Context &c) {
    GraphSpec spec = load_graph(c.get<int>("n"), c.get<int>("k"), c.get<std::string>("gadget"));
    spec.output_hadamard = c.get<bool>("output_hadamard");
    const int cap = c.get<int>("cap");
    if (int(spec.num_vertices()) > cap) {
        throw std::length_error("graph has " + std::to_string(spec.num_vertices()) + " vertices, cap is " +
                                std::to_string(cap));
    }
    const int64_t shots = c.get<int64_t>("shots");
    if (shots < 0) {
        throw ConfigError("shots must be non-negative");
    }
    OutcomeDistribution dist = exact_distribution(spec, size_t(cap));
    c.write_csv("distribution.csv", dist.to_csv());
    json stats;
    stats["num_vertices"] = spec.num_vertices();
    stats["num_s"] = dist.num_s;
    stats["num_x"] = dist.num_x;
    stats["total_probability"] = dist.total();
    stats["uniform_s_deviation"] = uniform_s_marginal_check(dist);
    stats["alpha"] = c.get<double>("alpha");
    stats["beta"] = anticoncentration_stats(dist, c.get<double>("alpha"));
    if (shots > 0) {
        OutcomeSampler sampler(spec, size_t(cap));
        auto samples = sampler.sample_batch(size_t(shots), c.seed(), c.threads());
        std::ostringstream csv;
        csv << "shot,s,x\n";
        for (size_t i = 0; i < samples.size(); i++) {
            uint64_t s = samples[i] & ((uint64_t(1) << dist.num_s) - 1);
            uint64_t x = samples[i] >> dist.num_s;
            csv << i << "," << bits_to_string(s, dist.num_s) << "," << bits_to_string(x, dist.num_x) << "\n";
        }
        c.write_csv("samples.csv", csv.str());
        auto emp = OutcomeDistribution::empirical(dist.num_s, dist.num_x, samples);
        stats["shots"] = shots;
        stats["l1_empirical"] = l1_distance(emp, dist);
    }
    c.write_json("sample_stats.json", stats);
}

void cmd_decode_bench(Context &c) {
    const int64_t trials = c.get<int64_t>("trials");
    if (trials <= 0) {
        throw ConfigError("trials must be positive");
    }
    auto distances = c.get<std::vector<int>>("distances");
    auto rates = c.get<std::vector<double>>("rates");
    for (int d : distances) {
        if (d < 1 || d % 2 == 0) {
            throw ConfigError("distances must be odd and positive");
        }
    }
    for (double p : rates) {
        if (!(p >= 0.0 && p <= 0.5)) {
            throw ConfigError("rates must lie in [0, 0.5]");
        }
    }
    std::vector<RateEstimate> rows;
    json fits = json::array();
    uint64_t point = 0;
    for (double p : rates) {
        std::vector<std::pair<int, double>> pts;
        for (int d : distances) {
            RateEstimate r = logical_error_rate(d, p, uint64_t(trials), derive_seed(c.seed(), point++), c.threads());
            rows.push_back(r);
            if (r.p_l > 0.0) {
                pts.emplace_back(d, r.p_l);
            }
        }
        json fit = {{"p", p}};
        fit["c"] = pts.size() >= 2 ? json(fit_pf_exponent(pts)) : json(nullptr);
        fits.push_back(fit);
    }
    c.write_csv("decode_bench.csv", rate_sweep_csv(rows));
    c.write_json("decode_fit.json", {{"fits", fits}, {"model", "p_L ~ A exp(-c sqrt(l)), l = d^2"}});
}

void cmd_msd_plan(Context &c) {
    ZMsdOptions o;
    int d = c.get<int>("d");
    o.C = c.get<double>("C");
    std::string proto = c.get<std::string>("protocol");
    if (!proto.empty()) {
        MsdProtocolSpec ps;
        try {
            ps = MsdProtocolSpec::builtin(proto);
        } catch (const std::exception &e) {
            throw ConfigError(e.what());
        }
        d = ps.d;
        o.C = ps.C;
    }
    std::string law = c.get<std::string>("law");
    if (law == "exact") {
        o.law = SuppressionLaw::kExactRecursion;
    } else if (law == "leading_order") {
        o.law = SuppressionLaw::kLeadingOrder;
    } else {
        throw ConfigError("law must be exact or leading_order");
    }
    o.nmsd_constant = c.get<double>("nmsd_constant");
    o.c_compile = c.get<double>("c_compile");
    o.c_clifford = c.get<double>("c_clifford");
    o.c_nn = c.get<double>("c_nn");
    int64_t ts = c.get<int64_t>("target_successes");
    if (ts < 0) {
        throw ConfigError("target_successes must be non-negative");
    }
    o.target_successes = uint64_t(ts);
    o.fail_budget = c.get<double>("fail_budget");
    ZMsdPlan plan;
    try {
        plan = plan_zmsd(c.get<double>("eps"), c.get<double>("target"), d, c.get<double>("n"), o);
    } catch (const std::domain_error &e) {
        throw ConfigError(e.what());
    }
    c.write_json("msd_plan.json", {{"plan", json::parse(plan.to_json_text())}});
}

MsdProtocolSpec load_protocol(const std::string &name) {
    try {
        return MsdProtocolSpec::builtin(name);
    } catch (const std::exception &) {
    }
    if (!fs::exists(name)) {
        throw ConfigError("unknown protocol '" + name + "' (not a builtin and no such file)");
    }
    return MsdProtocolSpec::from_json_file(name);
}

void cmd_msd_sim(Context &c) {
    MsdProtocolSpec proto = load_protocol(c.get<std::string>("protocol"));
    const int64_t shots = c.get<int64_t>("shots");
    if (shots <= 0) {
        throw ConfigError("shots must be positive");
    }
    DistillOptions opts;
    std::string method = c.get<std::string>("method");
    if (method == "stratified") {
        opts.method = DistillMethod::kStratified;
    } else if (method == "plain") {
        opts.method = DistillMethod::kPlain;
    } else {
        throw ConfigError("method must be stratified or plain");
    }
    opts.exhaustive_cap = uint64_t(c.get<int64_t>("exhaustive_cap"));
    opts.threads = c.threads();
    auto eps = c.get<std::vector<double>>("eps");
    std::vector<DistillResult> rows;
    std::vector<double> xs, ys;
    for (size_t i = 0; i < eps.size(); i++) {
        rows.push_back(simulate_distillation(proto, eps[i], uint64_t(shots), derive_seed(c.seed(), i), opts));
        if (rows.back().infidelity > 0.0 && eps[i] > 0.0) {
            xs.push_back(eps[i]);
            ys.push_back(rows.back().infidelity);
        }
    }
    c.write_csv("msd_sim.csv", distill_sweep_csv(rows));
    json body = {{"protocol", proto.name}};
    body["loglog_slope"] = xs.size() >= 2 ? json(loglog_slope(xs, ys)) : json(nullptr);
    c.write_json("msd_sim.json", body);
}

void cmd_route(Context &c) {
    const int p = c.get<int>("p"), m = c.get<int>("m");
    std::string flag_text = c.get<std::string>("flags");
    if (int(flag_text.size()) != p) {
        throw ConfigError("flags must have one character per candidate (" + std::to_string(p) + ")");
    }
    std::vector<bool> flags;
    for (char ch : flag_text) {
        if (ch != '0' && ch != '1') {
            throw ConfigError("flags must be a 0/1 string");
        }
        flags.push_back(ch == '1');
    }
    RoutingPlan plan = plan_routes(p, m, flags);
    c.write("route_plan.txt", "# config: " + c.cfg.dump() + "\n" + plan.to_text());

    std::vector<std::string> inputs;
    std::string in_text = c.get<std::string>("inputs");
    if (in_text.empty()) {
        for (int i = 0; i < m; i++) {
            inputs.push_back(i % 2 ? "+X" : "+Z");
        }
    } else {
        std::stringstream ss(in_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            inputs.push_back(item);
        }
    }
    const int64_t branches = c.get<int64_t>("branches");
    if (branches < 0) {
        throw ConfigError("branches must be non-negative");
    }
    int64_t matched = 0;
    for (int64_t b = 0; b < branches; b++) {
        Rng rng = make_rng(c.seed(), uint64_t(b));
        RoutingResult r = simulate_routing(plan, inputs, rng);
        matched += r.all_matched() ? 1 : 0;
    }
    auto pat = measurement_pattern(plan);
    json counts = {{"X", std::count(pat.begin(), pat.end(), 'X')},
                   {"Z", std::count(pat.begin(), pat.end(), 'Z')},
                   {"O", std::count(pat.begin(), pat.end(), 'O')}};
    json paths = json::array();
    for (const auto &path : plan.paths) {
        json pj = json::array();
        for (const auto &v : path) {
            pj.push_back({v.row, v.col});
        }
        paths.push_back(pj);
    }
    c.write_json("route_report.json", {{"grid", {{"rows", plan.grid.rows}, {"cols", plan.grid.cols}}},
                                       {"sources", plan.sources},
                                       {"paths", paths},
                                       {"verified", verify_plan(plan)},
                                       {"pattern_counts", counts},
                                       {"branches", branches},
                                       {"matched_branches", matched},
                                       {"parity_convention",
                                        "even teleport chains (external sources, spaced rows): identity routes"}});
    if (matched != branches) {
        throw std::runtime_error("routing identity failed on " + std::to_string(branches - matched) + " branches");
    }
}

json bounds_section(const Context &c) {
    const double n = c.get<double>("n");
    const double k = c.get<double>("k") > 0 ? c.get<double>("k") : n;
    json b;
    ChooseLResult cl = choose_l(n, k, c.get<double>("r"), c.get<double>("delta"));
    b["choose_l"] = {{"formula", "l = ceil(r ln(n)^2); check sqrt(l) > (1 + delta) ln(k n)"},
                     {"value", cl.l},
                     {"degree_ok", cl.degree_ok},
                     {"lhs_log", cl.lhs_log},
                     {"rhs_log", cl.rhs_log}};
    const double cdec = c.get<double>("c");
    L1Bound a = appendix_a_l1_bound(n, k, double(cl.l), cdec);
    b["decode_l1"] = {{"formula", "2 (1 - (1 - e^{-c sqrt l})^{k n}); linearized 2 k n e^{-c sqrt l}"},
                      {"value", a.exact},
                      {"linearized", a.linearized}};
    double eps_out = c.get<double>("eps_out") > 0 ? c.get<double>("eps_out") : std::pow(n, -4.0);
    double num_logical = k * n;
    L1Chain ch = appendix_b_l1_chain(n, double(cl.l), cdec, eps_out, n * n, num_logical);
    b["l1_chain"] = {{"formula", "decode + 2 sqrt(1 - (1 - eps_out)^{2 n^2})"},
                     {"eps_out", eps_out},
                     {"decode", ch.decode},
                     {"fidelity", ch.fidelity},
                     {"value", ch.total},
                     {"linearized", ch.total_linearized}};
    LmResult lm = lm_for_target(n, c.get<double>("poly_degree"));
    double q = c.get<double>("q");
    SawBound saw = saw_failure_bound(q, lm.L_m, std::pow(n, c.get<double>("poly_degree")));
    b["walk_failure"] = {{"formula", "n^deg sum_{L >= L_m} 6 5^{L-1} (4q)^{L/2}, L_m = ceil(alpha ln n)"},
                         {"alpha", lm.alpha},
                         {"L_m", lm.L_m},
                         {"q", q},
                         {"value", saw.exact},
                         {"leading_term", saw.coarse},
                         {"ratio", saw.ratio}};
    ThresholdResult t = threshold_backsolve(q, c.get<double>("d_total"),
                                            parse_threshold_mode(c.get<std::string>("threshold_mode")));
    b["threshold"] = {{"formula", "ln p = 4^{d+1} ln(q) or 4^{d+1} ln(q / 4)"},
                      {"ln_p", t.ln_p},
                      {"p", t.p},
                      {"ln_p_crude", t.ln_p_crude},
                      {"ln_p_crude_inverted", t.ln_p_crude_inverted}};
    return b;
}

void cmd_estimate(Context &c) {
    std::string mode = c.get<std::string>("mode");
    ScalingParams sp;
    sp.n = c.get<double>("n");
    sp.r = c.get<double>("r");
    sp.k = c.get<double>("k") > 0 ? c.get<double>("k") : sp.n;
    for (const auto &[name, v] : c.cfg.at("constants").items()) {
        sp.constants[name] = v.get<double>();
    }
    json body;
    if (mode == "4d" || mode == "3d") {
        ResourceReport rep = mode == "4d" ? overhead_4d(sp) : overhead_3d(sp);
        body["report"] = json::parse(rep.to_json_text());
        body["reevaluation_mismatch"] = rep.reevaluate();
    } else if (mode != "bounds") {
        throw ConfigError("mode must be 4d, 3d or bounds");
    }
    body["bounds"] = bounds_section(c);
    c.write_json("estimate.json", body);
}

void cmd_pipeline(Context &c) {
    json pc = json::object();
    for (const char *key : {"mode", "arch", "n", "k", "gadget", "distance", "p_phys", "eps_T", "eps_Y", "t_protocol",
                            "y_protocol", "t_candidates", "y_candidates", "p_f", "eps_out", "decode_model",
                            "calib_trials", "cap", "seed", "threads"}) {
        pc[key] = c.cfg.at(key);
    }
    if (c.get<bool>("noiseless")) {
        pc["p_phys"] = 0.0;
        pc["eps_T"] = 0.0;
        pc["eps_Y"] = 0.0;
        pc["p_f"] = 0.0;
        pc["eps_out"] = 0.0;
        // Echo the values that actually ran.
        for (const char *key : {"p_phys", "eps_T", "eps_Y", "p_f", "eps_out"}) {
            c.cfg[key] = pc[key];
        }
    }
    PipelineConfig config = PipelineConfig::from_json_text(pc.dump());
    const int64_t shots = c.get<int64_t>("shots");
    if (shots <= 0) {
        throw ConfigError("shots must be positive");
    }
    json body;
    DepthAudit depth = quantum_depth_audit(config);
    body["depth_audit"] = json::parse(depth.to_json_text());
    if (config.mode == PipelineMode::kExactSmall) {
        ExactSmallBatch b = run_exact_small_batch(config, uint64_t(shots));
        if (b.records.empty()) {
            throw std::runtime_error("every run fell short of distilled states (" + std::to_string(b.aborted) +
                                     " aborted)");
        }
        c.write_csv("pipeline_distribution.csv", b.decoded.to_csv());
        c.write_csv("pipeline_raw_distribution.csv", b.raw.to_csv());
        body["l1_decoded"] = b.l1_decoded;
        body["l1_raw"] = b.l1_raw;
        body["envelope"] = b.envelope;
        body["within_envelope"] = b.l1_decoded <= b.envelope;
        body["completed"] = b.records.size();
        body["aborted"] = b.aborted;
        body["success_rate"] = b.success_rate;
        body["feedback_layers"] = interaction_audit(b.records);
        bool routed = true;
        for (const auto &r : b.records) {
            routed = routed && r.routing_verified;
        }
        body["routing_verified"] = routed;
    } else {
        ErrorModelResult r = run_error_model(config, uint64_t(shots));
        c.write_csv("pipeline_distribution.csv", r.empirical.to_csv());
        body["p_f"] = r.p_f;
        body["eps_out"] = r.eps_out;
        body["l1"] = r.l1;
        body["envelope"] = r.envelope;
        body["bound"] = {{"decode", r.bound.decode}, {"fidelity", r.bound.fidelity}, {"total", r.bound.total}};
        body["within_bound"] = r.l1 <= r.bound.total + r.envelope;
    }
    c.write_json("pipeline.json", body);
}

using Handler = void (*)(Context &);

Handler handler_for(const std::string &name) {
    if (name == "sample") return cmd_sample;
    if (name == "decode-bench") return cmd_decode_bench;
    if (name == "msd-plan") return cmd_msd_plan;
    if (name == "msd-sim") return cmd_msd_sim;
    if (name == "route") return cmd_route;
    if (name == "estimate") return cmd_estimate;
    if (name == "pipeline") return cmd_pipeline;
    throw ConfigError("unknown subcommand '" + name + "'");
}

const char *type_name(cli::KeyType t) {
    switch (t) {
        case cli::KeyType::kInt:
            return "int";
        case cli::KeyType::kDouble:
            return "number";
        case cli::KeyType::kOptionalDouble:
            return "number|null";
        case cli::KeyType::kString:
            return "string";
        case cli::KeyType::kBool:
            return "bool";
        case cli::KeyType::kDoubleList:
            return "number list";
        case cli::KeyType::kIntList:
            return "int list";
        case cli::KeyType::kObject:
            return "object";
    }
    return "?";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ftqs: fault-tolerant sampling toolkit"};
    app.require_subcommand(1);
    struct SubState {
        std::string config_path;
        std::map<std::string, std::string> values;
        std::map<std::string, bool> bools;
        std::map<std::string, CLI::Option *> options;
    };
    std::map<std::string, SubState> state;
    std::map<std::string, CLI::App *> subs;
    for (const auto &schema : cli::command_schemas()) {
        CLI::App *sub = app.add_subcommand(schema.name, schema.help);
        SubState &st = state[schema.name];
        sub->add_option("--config", st.config_path, "JSON config file");
        auto add = [&](const cli::KeySpec &key) {
            std::string help = key.help + " [" + type_name(key.type) + ", default " + key.default_value.dump() + "]";
            if (key.type == cli::KeyType::kBool) {
                st.options[key.name] = sub->add_flag("--" + key.name, st.bools[key.name], help);
            } else {
                st.options[key.name] = sub->add_option("--" + key.name, st.values[key.name], help);
            }
        };
        for (const auto &key : schema.keys) {
            add(key);
        }
        for (const auto &key : cli::global_keys()) {
            add(key);
        }
        subs[schema.name] = sub;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    std::string name;
    for (const auto &[n, sub] : subs) {
        if (sub->parsed()) {
            name = n;
        }
    }
    try {
        const cli::CommandSchema &schema = cli::schema_for(name);
        SubState &st = state[name];
        std::map<std::string, std::string> flags;
        for (const auto &[key, opt] : st.options) {
            if (opt->count() > 0) {
                flags[key] = st.bools.count(key) ? "true" : st.values[key];
            }
        }
        std::optional<json> file;
        if (!st.config_path.empty()) {
            file = cli::read_config_file(st.config_path);
        }
        Context ctx;
        ctx.command = name;
        ctx.cfg = cli::resolve_config(schema, file, flags);
        ctx.out = ctx.cfg.at("out").get<std::string>();
        fs::create_directories(ctx.out);
        handler_for(name)(ctx);
        for (const auto &p : ctx.written) {
            std::cout << "wrote " << p << "\n";
        }
        return 0;
    } catch (const ConfigError &e) {
        std::cerr << "ftqs " << name << ": config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception &e) {
        std::cerr << "ftqs " << name << ": config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "ftqs " << name << ": config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error &e) {
        std::cerr << "ftqs " << name << ": config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "ftqs " << name << ": runtime failure: " << e.what() << "\n";
        return 3;
    }
}
