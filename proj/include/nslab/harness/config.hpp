/*
   Copyright 2026 The nullstellensatz-lab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NSLAB_HARNESS_CONFIG_HPP
#define NSLAB_HARNESS_CONFIG_HPP

#include "nslab/errors.hpp"

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace nslab {

/// One key/value table of the config file. The pre-section keys form the
/// global table; each repeated [name] section adds one row-like table.
struct ConfigSection {
    std::string name;  // empty for the global table
    int line = 0;
    std::vector<std::pair<std::string, std::string>> entries;

    bool has(const std::string& key) const;
    /// Last assignment wins. Throws ParseError when the key is absent.
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& def) const;
};

/// Structured text config: "key = value" lines, '#'/';' comments,
/// repeated [section] blocks as tables. All ranges are inclusive.
struct ConfigFile {
    ConfigSection global;
    std::vector<ConfigSection> sections;

    static ConfigFile load(const std::string& path);
    static ConfigFile parse(std::istream& in, const std::string& source_name);
};

std::int64_t parse_i64(const std::string& s);
std::uint64_t parse_u64(const std::string& s);
bool parse_bool(const std::string& s);
/// "3" or "1..4" (inclusive).
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s);
std::vector<std::int64_t> parse_i64_list(const std::string& s);
std::vector<std::string> parse_str_list(const std::string& s, char sep = ',');
/// "1:2, 2:3" -> {(1,2),(2,3)}.
std::vector<std::pair<std::int64_t, std::int64_t>> parse_pair_list(const std::string& s);

}  // namespace nslab

#endif
