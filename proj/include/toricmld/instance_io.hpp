#pragma once

// JSON instance documents:
//   {"dim": 2, "rays": [[0,1],[3,-1]],
//    "coefficients": [{"type":"standard","l":1}, {"type":"one"}]}
// Integers may also be given as decimal strings.

#include <string>
#include <vector>

#include "toricmld/families.hpp"

namespace toric {

/// Throws InvalidDocument naming the offending field path.
Instance parse_instance(const std::string& json_text);
/// A JSON array of documents, or {"instances": [...]}.
std::vector<Instance> parse_instance_list(const std::string& json_text);
std::string instance_to_json(const Instance& inst);

std::string report_json(const LogCanonicalReport& report);
std::string report_text(const LogCanonicalReport& report);

}  // namespace toric
