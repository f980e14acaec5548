/*
 * Copyright 2026 The kgap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KGAP_JSON_UTIL_HPP
#define KGAP_JSON_UTIL_HPP

#include <initializer_list>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgap/error.hpp"

namespace kgap::detail {

using json = nlohmann::ordered_json;

inline json
parse_json(std::istream &in)
{
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(std::string("malformed document: ") + e.what());
    }
}

inline void
require_object(const json &j, const char *what, std::initializer_list<const char *> allowed)
{
    if (!j.is_object()) throw InputError(std::string(what) + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char *k : allowed) known = known || it.key() == k;
        if (!known) throw InputError(std::string("unknown field '") + it.key() + "' in " + what);
    }
}

inline const json &
get_field(const json &j, const char *key)
{
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
    return *it;
}

inline std::string
as_string(const json &j, const char *what)
{
    if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

inline int
as_int(const json &j, const char *what)
{
    if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
    return j.get<int>();
}

inline std::string
get_string(const json &j, const char *key)
{
    return as_string(get_field(j, key), key);
}

inline int
get_int(const json &j, const char *key)
{
    return as_int(get_field(j, key), key);
}

inline const json &
get_array(const json &j, const char *key)
{
    const json &a = get_field(j, key);
    if (!a.is_array()) throw InputError(std::string("field '") + key + "' must be a list");
    return a;
}

inline std::vector<std::string>
as_strings(const json &j, const char *what)
{
    if (!j.is_array()) throw InputError(std::string(what) + " must be a list");
    std::vector<std::string> res;
    for (const auto &e : j) res.push_back(as_string(e, what));
    return res;
}

}

#endif
