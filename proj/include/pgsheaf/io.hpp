#ifndef PGSHEAF_IO_HPP
#define PGSHEAF_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "pgsheaf/reps.hpp"

namespace pgsheaf {

// Group descriptor files: {"family": ..., "p": ..., "r"/"n": ...,
// "basis": [[[int]]], "variables": [names]}.  Built-ins are addressable by
// name through load_group.
nlohmann::json group_to_json(const GroupSchemeDescriptor& g);
GroupPtr group_from_json(const nlohmann::json& j);

// spec is a builtin name ("sl2", "ea(2)", ...) or a path to a JSON file.
// p is required for builtin names and cross-checked against files.
GroupPtr load_group(const std::string& spec, std::optional<std::uint32_t> p);

// Module files: {"group": <name or object>, "dim": n, "matrices": [[[int]]]}.
nlohmann::json module_to_json(const Representation& r);
Representation module_from_json(const nlohmann::json& j, GroupPtr group_hint);

// Module expressions: tensor(a,b), dual(a), sum(a,b), omega(a), builtin
// names, or JSON file paths.  The result is validated.
Representation parse_module_expr(const std::string& expr, const GroupPtr& group);

// "0,0,1,0" or "x3=1" (missing coordinates are zero).
NullconePoint parse_point(const GroupSchemeDescriptor& g, const std::string& text);

nlohmann::json fingerprint_to_json(const Fingerprint& fp);
nlohmann::json report_to_json(const SheafReport& r);
nlohmann::json jordan_report_to_json(const LocalJordanReport& r);

std::string partition_string(const Partition& p);

} // namespace pgsheaf

#endif
