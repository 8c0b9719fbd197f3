#pragma once

#include <string>

#include "json.hpp"

#include "hkr/complexes.hpp"
#include "hkr/hochschild.hpp"

namespace hkr {
namespace rep {

using Json = nlohmann::ordered_json;

/// All integers in reports are decimal strings for cross-platform stability.
std::string dec(const Int& n);
std::string dec(long n);

/// {"free_rank": "r", "torsion": ["p^k", ...]} with the invariant factors
/// split into prime powers, sorted by (p, k).
Json group_json(const cx::HomologyGroup& g);

/// {"name": ..., "verdict": "pass" | "fail" | "not-verified",
///  "diagnostics": ...}; diagnostics must be nonempty unless passing.
Json verdict_json(const std::string& name, const std::string& verdict,
                  const std::string& diagnostics);

/// Top-level report envelope with stable field order.
Json make_report(const std::string& subcommand, const Json& config, const Json& tables,
                 const Json& verdicts);

/// Serialization: UTF-8, two-space indent, trailing newline, byte-identical
/// across runs for equal inputs.
std::string emit(const Json& j);

/// Algebra mini-grammar: BASE[x(w1),y(w2)]/(rel1,rel2) with weights
/// defaulting to 1, BASE in {Q, Z, Fp, Z(p)}. Relation terms are integer
/// multiples of '*'-separated powers, e.g. "y^2-x^3" or "2*x*y".
hh::FPGradedAlgebra parse_algebra(const std::string& text);

/// Hochschild homology table: rows per internal degree <= dmax and
/// homological degree <= window.
Json hh_table(const hh::FPGradedAlgebra& A, long dmax, int window, long max_dim);

/// CSV export of the same table, header "n,internal_degree,free_rank,torsion".
std::string hh_csv(const hh::FPGradedAlgebra& A, long dmax, int window, long max_dim);

}  // namespace rep
}  // namespace hkr
