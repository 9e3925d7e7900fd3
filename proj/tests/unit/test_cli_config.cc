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
#include "doctest.h"

using namespace ftqs::cli;
using nlohmann::json;

TEST_CASE("defaults, file and flags resolve in order") {
    const CommandSchema &s = schema_for("sample");
    json base = resolve_config(s, std::nullopt, {});
    CHECK(base["n"] == 1);
    CHECK(base["seed"] == 1);
    json file = {{"n", 2}, {"k", 3}};
    json mid = resolve_config(s, file, {});
    CHECK(mid["n"] == 2);
    json top = resolve_config(s, file, {{"n", "3"}, {"output_hadamard", "false"}});
    CHECK(top["n"] == 3);
    CHECK(top["k"] == 3);
    CHECK(top["output_hadamard"] == false);
}

TEST_CASE("bad configuration is rejected") {
    const CommandSchema &s = schema_for("decode-bench");
    CHECK_THROWS_AS(resolve_config(s, json{{"nope", 1}}, {}), ConfigError);
    CHECK_THROWS_AS(resolve_config(s, json{{"trials", "many"}}, {}), ConfigError);
    CHECK_THROWS_AS(resolve_config(s, json{{"trials", 1.5}}, {}), ConfigError);
    CHECK_THROWS_AS(resolve_config(s, std::nullopt, {{"threads", "0"}}), ConfigError);
    CHECK_THROWS_AS(resolve_config(s, json::array(), {}), ConfigError);
    CHECK_THROWS_AS(schema_for("teleport"), ConfigError);
    CHECK_THROWS_AS(read_config_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("list and optional values parse from flags") {
    const CommandSchema &s = schema_for("decode-bench");
    json c = resolve_config(s, std::nullopt, {{"distances", "3,5"}, {"rates", "0.01,0.02"}});
    CHECK(c["distances"] == json::array({3, 5}));
    CHECK(c["rates"].size() == 2);
    const CommandSchema &p = schema_for("pipeline");
    CHECK(resolve_config(p, std::nullopt, {{"p_f", "null"}})["p_f"].is_null());
    CHECK(resolve_config(p, std::nullopt, {{"p_f", "0.1"}})["p_f"] == 0.1);
}

TEST_CASE("every schema key has a well-typed default") {
    for (const auto &schema : command_schemas()) {
        for (const auto &key : schema.keys) {
            CHECK_NOTHROW(coerce(key, key.default_value));
            CHECK_FALSE(key.help.empty());
        }
    }
}
