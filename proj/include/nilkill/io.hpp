#pragma once

#include <string>

#include "json.hpp"

#include "nilkill/algebra.hpp"
#include "nilkill/exterior.hpp"
#include "nilkill/killing.hpp"
#include "nilkill/structure.hpp"

namespace nilkill {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Algebra file format (0-based indices, brackets listed once with i < j):
// {"schema": 1, "name": ..., "dim": n, "basis": [...],
//  "brackets": [[i, j, k, c], ...], "metric": {"identity": true} | {"gram": [[...]]}}
Json algebra_to_json(const MetricLieAlgebra& algebra);
MetricLieAlgebra algebra_from_json(const Json& doc);

// Throws ParseError on unreadable files or malformed documents.
MetricLieAlgebra load_algebra_file(const std::string& path);
void save_algebra_file(const MetricLieAlgebra& algebra, const std::string& path);

// {"dim": n, "degree": k, "terms": [{"indices": [...], "coeff": c}, ...]}
Json form_to_json(const Form& form, double tol = 0.0);
Form form_from_json(const Json& doc);

// {d, factors: [{dim, dims_vz, complex, nat_reductive}], dimK2, dimK3}
Json decomposition_to_json(const Decomposition& decomposition);

// {degree, dim, method, per_factor}
Json killing_summary_json(const KillingSpace& space, const std::vector<int>& per_factor);

}  // namespace nilkill
