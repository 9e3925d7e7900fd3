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

#include "cli_config.h"

#include <fstream>
#include <sstream>

namespace ftqs::cli {

using nlohmann::json;

const KeySpec *CommandSchema::find(const std::string &key) const {
    for (const auto &k : keys) {
        if (k.name == key) {
            return &k;
        }
    }
    for (const auto &k : global_keys()) {
        if (k.name == key) {
            return &k;
        }
    }
    return nullptr;
}

const std::vector<KeySpec> &global_keys() {
    static const std::vector<KeySpec> keys = {
        {"seed", KeyType::kInt, 1, "master seed; trial i uses a seed derived from (seed, i)"},
        {"threads", KeyType::kInt, 1, "worker threads (results do not depend on this)"},
        {"out", KeyType::kString, ".", "output directory"},
    };
    return keys;
}

const std::vector<CommandSchema> &command_schemas() {
    using K = KeyType;
    static const std::vector<CommandSchema> schemas = {
        {"sample",
         "exact outcome table, samples and statistics of a brickwork graph state",
         {
             {"n", K::kInt, 1, "rows"},
             {"k", K::kInt, 2, "columns"},
             {"gadget", K::kString, "gb", "gb, gb_prime or a gadget JSON path"},
             {"output_hadamard", K::kBool, true, "apply H to output vertices"},
             {"shots", K::kInt, 0, "samples to draw (0: exact table only)"},
             {"alpha", K::kDouble, 1.0, "anti-concentration threshold alpha"},
             {"cap", K::kInt, 24, "statevector qubit cap"},
         }},
        {"decode-bench",
         "surface-code readout failure sweep with fitted exponent",
         {
             {"distances", K::kIntList, json::array({3, 5, 7}), "odd code distances"},
             {"rates", K::kDoubleList, json::array({0.01}), "physical flip rates"},
             {"trials", K::kInt, 10000, "Monte Carlo trials per point"},
         }},
        {"msd-plan",
         "layered distillation plan and instance count",
         {
             {"eps", K::kDouble, 0.01, "input infidelity"},
             {"target", K::kDouble, 1e-9, "target output infidelity"},
             {"d", K::kInt, 3, "suppression power per layer"},
             {"n", K::kDouble, 16.0, "problem size"},
             {"C", K::kDouble, 35.0, "suppression constant"},
             {"law", K::kString, "exact", "exact or leading_order"},
             {"nmsd_constant", K::kDouble, 1.0, "n_NMSD = nmsd_constant d^z"},
             {"c_compile", K::kDouble, 1.0, "compile factor of n_c"},
             {"c_clifford", K::kDouble, 1.0, "Clifford factor of n_c"},
             {"c_nn", K::kDouble, 1.0, "nearest-neighbour factor of n_c"},
             {"target_successes", K::kInt, 0, "successful instances needed (0: n^2)"},
             {"fail_budget", K::kDouble, 1e-9, "allowed probability of too few successes"},
             {"protocol", K::kString, "", "builtin protocol supplying d and C (overrides them)"},
         }},
        {"msd-sim",
         "noisy distillation sweep",
         {
             {"protocol", K::kString, "reed_muller_15", "builtin name or protocol JSON path"},
             {"eps", K::kDoubleList, json::array({0.005, 0.01, 0.02, 0.04}), "input error rates"},
             {"shots", K::kInt, 100000, "shots per rate"},
             {"method", K::kString, "stratified", "stratified or plain"},
             {"exhaustive_cap", K::kInt, 200000, "largest weight stratum enumerated exactly"},
         }},
        {"route",
         "grid routing plan, measurement pattern and stabilizer check",
         {
             {"p", K::kInt, 7, "candidates"},
             {"m", K::kInt, 2, "routes"},
             {"flags", K::kString, "0100100", "success flag per candidate, candidate 0 first"},
             {"inputs", K::kString, "", "comma-separated source states per route (default +Z,+X,...)"},
             {"branches", K::kInt, 100, "sampled outcome branches to check"},
         }},
        {"estimate",
         "bounds and overhead reports",
         {
             {"mode", K::kString, "4d", "4d, 3d or bounds"},
             {"n", K::kDouble, 64.0, "problem size"},
             {"k", K::kDouble, 0.0, "columns (0: n)"},
             {"r", K::kDouble, 1.0, "block-size constant"},
             {"c", K::kDouble, 1.0, "decode decay constant"},
             {"delta", K::kDouble, 0.1, "slack in the block-size degree check"},
             {"q", K::kDouble, 0.0075, "pushed-noise rate for the walk bound"},
             {"poly_degree", K::kDouble, 3.0, "degree of the site-count polynomial"},
             {"d_total", K::kDouble, 6.0, "circuit depth for the threshold back-solve"},
             {"threshold_mode", K::kString, "four_times_power_law", "power_law or four_times_power_law"},
             {"eps_out", K::kDouble, 0.0, "distilled infidelity (0: n^-4)"},
             {"constants", K::kObject, json::object(), "named O(1) factors, default 1"},
         }},
        {"pipeline",
         "end-to-end runs",
         {
             {"mode", K::kString, "exact_small", "exact_small or error_model"},
             {"arch", K::kString, "4d", "4d or 3d"},
             {"n", K::kInt, 1, "rows"},
             {"k", K::kInt, 2, "columns"},
             {"gadget", K::kString, "gb", "gb, gb_prime or a gadget JSON path"},
             {"distance", K::kInt, 1, "readout code distance"},
             {"p_phys", K::kDouble, 0.0, "physical readout flip rate"},
             {"eps_T", K::kDouble, 0.0, "noisy T infidelity"},
             {"eps_Y", K::kDouble, 0.0, "noisy Y infidelity"},
             {"t_protocol", K::kString, "reed_muller_15", "T distillation protocol or none"},
             {"y_protocol", K::kString, "steane_7", "Y distillation protocol or none"},
             {"t_candidates", K::kInt, 0, "T candidates (0: 2m+2)"},
             {"y_candidates", K::kInt, 0, "Y candidates (0: 2m+2)"},
             {"p_f", K::kOptionalDouble, nullptr, "decode failure rate per logical qubit"},
             {"eps_out", K::kOptionalDouble, nullptr, "distilled T infidelity"},
             {"decode_model", K::kString, "independent", "independent or union_bound"},
             {"calib_trials", K::kInt, 20000, "trials used to calibrate p_f"},
             {"cap", K::kInt, 20, "statevector qubit cap"},
             {"shots", K::kInt, 1000, "runs"},
             {"noiseless", K::kBool, false, "zero every noise parameter"},
         }},
    };
    return schemas;
}

const CommandSchema &schema_for(const std::string &command) {
    for (const auto &s : command_schemas()) {
        if (s.name == command) {
            return s;
        }
    }
    throw ConfigError("unknown subcommand '" + command + "'");
}

json coerce(const KeySpec &key, const json &v) {
    auto fail = [&](const char *want) -> json {
        throw ConfigError("config key '" + key.name + "' must be " + want + ", got " + v.dump());
    };
    switch (key.type) {
        case KeyType::kInt:
            if (v.is_number_integer()) {
                return v;
            }
            if (v.is_number_float() && double(int64_t(v.get<double>())) == v.get<double>()) {
                return int64_t(v.get<double>());
            }
            return fail("an integer");
        case KeyType::kDouble:
            return v.is_number() ? json(v.get<double>()) : fail("a number");
        case KeyType::kOptionalDouble:
            return v.is_null() ? v : v.is_number() ? json(v.get<double>()) : fail("a number or null");
        case KeyType::kString:
            return v.is_string() ? v : fail("a string");
        case KeyType::kBool:
            return v.is_boolean() ? v : fail("a boolean");
        case KeyType::kObject:
            if (!v.is_object()) {
                return fail("an object");
            }
            for (const auto &[name, x] : v.items()) {
                if (!x.is_number()) {
                    throw ConfigError("config key '" + key.name + "." + name + "' must be a number");
                }
            }
            return v;
        case KeyType::kDoubleList:
        case KeyType::kIntList: {
            json arr = v.is_array() ? v : json::array({v});
            json out = json::array();
            KeySpec elem{key.name, key.type == KeyType::kIntList ? KeyType::kInt : KeyType::kDouble, {}, {}};
            for (const auto &x : arr) {
                out.push_back(coerce(elem, x));
            }
            if (out.empty()) {
                return fail("a non-empty list");
            }
            return out;
        }
    }
    return fail("valid");
}

json parse_flag_value(const KeySpec &key, const std::string &text) {
    auto bad = [&]() -> json { throw ConfigError("--" + key.name + ": cannot parse '" + text + "'"); };
    try {
        switch (key.type) {
            case KeyType::kString:
                return text;
            case KeyType::kBool:
                if (text == "true" || text == "1" || text.empty()) {
                    return true;
                }
                if (text == "false" || text == "0") {
                    return false;
                }
                return bad();
            case KeyType::kObject:
                return coerce(key, json::parse(text));
            case KeyType::kOptionalDouble:
                if (text == "null" || text == "none") {
                    return nullptr;
                }
                [[fallthrough]];
            case KeyType::kInt:
            case KeyType::kDouble: {
                json v = json::parse(text);
                return coerce(key, v);
            }
            case KeyType::kDoubleList:
            case KeyType::kIntList: {
                json arr = json::array();
                std::stringstream ss(text);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    arr.push_back(json::parse(item));
                }
                return coerce(key, arr);
            }
        }
    } catch (const json::exception &) {
        return bad();
    }
    return bad();
}

json resolve_config(const CommandSchema &schema, const std::optional<json> &file,
                    const std::map<std::string, std::string> &flags) {
    json out = json::object();
    for (const auto &k : global_keys()) {
        out[k.name] = k.default_value;
    }
    for (const auto &k : schema.keys) {
        out[k.name] = k.default_value;
    }
    if (file) {
        if (!file->is_object()) {
            throw ConfigError("config must be a JSON object");
        }
        for (const auto &[name, v] : file->items()) {
            const KeySpec *spec = schema.find(name);
            if (!spec) {
                throw ConfigError("unknown config key '" + name + "' for " + schema.name);
            }
            out[name] = coerce(*spec, v);
        }
    }
    for (const auto &[name, text] : flags) {
        const KeySpec *spec = schema.find(name);
        if (!spec) {
            throw ConfigError("unknown option --" + name);
        }
        out[name] = parse_flag_value(*spec, text);
    }
    if (out["threads"].get<int64_t>() < 1) {
        throw ConfigError("threads must be at least 1");
    }
    return out;
}

json read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace ftqs::cli
