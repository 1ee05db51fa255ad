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

#include "nslab/harness/config.hpp"

#include <fstream>

namespace nslab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
    std::size_t pos = std::string::npos;
    for (char marker : {'#', ';'}) {
        std::size_t p = s.find(marker);
        if (p != std::string::npos) pos = std::min(pos, p);
    }
    return pos == std::string::npos ? s : s.substr(0, pos);
}

}  // namespace

bool ConfigSection::has(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return true;
    return false;
}

std::string ConfigSection::get(const std::string& key) const {
    const std::string* found = nullptr;
    for (const auto& [k, v] : entries)
        if (k == key) found = &v;
    if (!found)
        throw_err(Err::ParseError, "missing config key '" + key + "'" +
                                       (name.empty() ? "" : " in section [" + name + "]"));
    return *found;
}

std::string ConfigSection::get_or(const std::string& key, const std::string& def) const {
    return has(key) ? get(key) : def;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_err(Err::ParseError, "cannot open config file " + path);
    return parse(in, path);
}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source_name) {
    ConfigFile cfg;
    ConfigSection* current = &cfg.global;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = trim(strip_comment(raw));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw_err(Err::ParseError, source_name + ":" + std::to_string(line) + ": unterminated section header");
            ConfigSection s;
            s.name = trim(text.substr(1, text.size() - 2));
            s.line = line;
            if (s.name.empty())
                throw_err(Err::ParseError, source_name + ":" + std::to_string(line) + ": empty section name");
            cfg.sections.push_back(std::move(s));
            current = &cfg.sections.back();
            continue;
        }
        std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw_err(Err::ParseError, source_name + ":" + std::to_string(line) + ": expected 'key = value'");
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key.empty())
            throw_err(Err::ParseError, source_name + ":" + std::to_string(line) + ": empty key");
        current->entries.emplace_back(std::move(key), std::move(value));
    }
    return cfg;
}

std::int64_t parse_i64(const std::string& s) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(trim(s), &pos);
        if (pos != trim(s).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw_err(Err::ParseError, "bad integer '" + s + "'");
    }
}

std::uint64_t parse_u64(const std::string& s) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(trim(s), &pos);
        if (pos != trim(s).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw_err(Err::ParseError, "bad unsigned integer '" + s + "'");
    }
}

bool parse_bool(const std::string& s) {
    std::string t = trim(s);
    if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
    if (t == "false" || t == "no" || t == "0" || t == "off") return false;
    throw_err(Err::ParseError, "bad boolean '" + s + "'");
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
    std::size_t dots = s.find("..");
    if (dots == std::string::npos) {
        std::int64_t v = parse_i64(s);
        return {v, v};
    }
    std::int64_t lo = parse_i64(s.substr(0, dots));
    std::int64_t hi = parse_i64(s.substr(dots + 2));
    if (hi < lo) throw_err(Err::ParseError, "empty range '" + s + "'");
    return {lo, hi};
}

std::vector<std::string> parse_str_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + sep) {
        if (c == sep) {
            std::string t = trim(cur);
            if (!t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    return out;
}

std::vector<std::int64_t> parse_i64_list(const std::string& s) {
    std::vector<std::int64_t> out;
    for (const auto& part : parse_str_list(s)) out.push_back(parse_i64(part));
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> parse_pair_list(const std::string& s) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& part : parse_str_list(s)) {
        std::size_t colon = part.find(':');
        if (colon == std::string::npos) throw_err(Err::ParseError, "bad pair '" + part + "', expected k:n");
        out.emplace_back(parse_i64(part.substr(0, colon)), parse_i64(part.substr(colon + 1)));
    }
    return out;
}

}  // namespace nslab
