#ifndef GCOH_JOBS_HPP
#define GCOH_JOBS_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "gcoh/finite_group.hpp"
#include "gcoh/word.hpp"

namespace gcoh {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kConvention =
    "the value of a defining system is the class of -sum_{l=2}^{n} a_{1l} u a_{l,n+1}; "
    "cochains are normalized and non-homogeneous";

struct JobOptions {
  std::optional<Residue> prime;
  std::optional<unsigned long long> budget;
  std::optional<std::size_t> modulus_exponent;
};

// Input documents:
//   {"type": "presentation", "presentation": "paper-g" | "paper-h" | {"generators", "relators", "label"},
//    "characters": [{"modulus", "values"}], "budget"}
//   {"type": "finite-group", "group": catalog name | {"table", "names", "label"},
//    "characters": [...], "prime", "orientation": [units per generator], "budget"}
// Character values are read on presentation generators, or on every element
// when the group has no known presentation or "per_element" is true.
Presentation parse_presentation(const Json& doc);
GroupPtr parse_group(const Json& doc);

Json run_massey(const Json& input, const JobOptions& options);
Json run_cohomology(const Json& input, const JobOptions& options);
// Scenarios: paper-example, lemma-i+n, u3-resolution, exactness-sweep, formal-h90.
// The report carries "passed".
Json run_verify(const std::string& scenario);

// Exit codes: 0 success, 1 input error, 2 budget exceeded, 3 internal inconsistency.
enum ExitCode { kExitOk = 0, kExitInput = 1, kExitBudget = 2, kExitInternal = 3 };

// Writes through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& text);

}  // namespace gcoh

#endif
