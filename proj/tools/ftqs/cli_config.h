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

#ifndef FTQS_TOOLS_CLI_CONFIG_H
#define FTQS_TOOLS_CLI_CONFIG_H

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ftqs::cli {

/// Bad configuration: maps to exit code 2.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class KeyType { kInt, kDouble, kString, kBool, kDoubleList, kIntList, kObject, kOptionalDouble };

struct KeySpec {
    std::string name;
    KeyType type;
    nlohmann::json default_value;
    std::string help;
};

struct CommandSchema {
    std::string name;
    std::string help;
    std::vector<KeySpec> keys;
    const KeySpec *find(const std::string &key) const;
};

/// Global keys accepted by every subcommand: seed, threads, out.
const std::vector<KeySpec> &global_keys();

/// Schemas for every subcommand, in display order.
const std::vector<CommandSchema> &command_schemas();
const CommandSchema &schema_for(const std::string &command);

/// Checks type and converts a JSON value for `key`. Throws ConfigError.
nlohmann::json coerce(const KeySpec &key, const nlohmann::json &value);
/// Parses a command-line string for `key`. Throws ConfigError.
nlohmann::json parse_flag_value(const KeySpec &key, const std::string &text);

/// Defaults, then the config file object, then command-line overrides.
/// Unknown keys in the file throw ConfigError.
nlohmann::json resolve_config(const CommandSchema &schema, const std::optional<nlohmann::json> &file,
                              const std::map<std::string, std::string> &flags);

/// Reads a JSON config file; missing or malformed files throw ConfigError
/// naming the path.
nlohmann::json read_config_file(const std::string &path);

}  // namespace ftqs::cli

#endif
