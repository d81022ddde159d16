#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "segal/bisimplicial.hpp"
#include "segal/nerve.hpp"
#include "segal/simplicial_set.hpp"

namespace segal {

/// A commutative square  A --top--> X
///                       |i         |f
///                       B -bottom-> Y
struct LiftingProblem {
  SimplicialMap i;
  SimplicialMap f;
  SimplicialMap top;
  SimplicialMap bottom;
};

/// Throws std::invalid_argument when the maps do not form a commutative square.
void check_square(const LiftingProblem& p);

/// A diagonal l : B -> X with l i = top and f l = bottom, if one exists.
/// Cells of B are assigned by increasing dimension; cells hit by i are forced.
std::optional<SimplicialMap> solve_lifting(const LiftingProblem& p);

enum class Status { holds, fails, unknown };
std::string to_string(Status s);

struct Verdict {
  Status status = Status::unknown;
  std::string strategy;
  /// Dimension bound actually examined.
  int bound = 0;
  std::string detail;
  std::optional<SimplicialMap> lift;
  std::optional<LiftingProblem> counterexample;
};

/// Member of a lifting family: an inclusion A -> B with a display name.
struct NamedInclusion {
  std::string name;
  SimplicialMap map;
};

std::vector<NamedInclusion> horn_inclusions(int max_dim, bool inner_only);
std::vector<NamedInclusion> boundary_inclusions(int max_dim);

/// Solves every lifting problem of each family member against f. Members of
/// dimension above `bound` are skipped. Reports the first failing square.
/// With a non-exact truncation on either side the examined bound is clipped
/// to the truncation and "holds" becomes unknown.
Verdict has_rlp(const SimplicialMap& f, const std::vector<NamedInclusion>& family, int bound);

/// Horn filling for X -> *. Coskeletal inputs are certified beyond the
/// bound: a c-coskeletal X fills every horn of dimension > c + 1.
Verdict is_kan(const SSetPtr& x, int bound);
Verdict is_quasi_category(const SSetPtr& x, int bound);
/// Nerve shortcuts: Kan iff groupoid, and nerves always have inner fillers.
Verdict is_kan(const Nerve& n, int bound);
Verdict is_quasi_category(const Nerve& n, int bound);

/// RLP against dDelta^n in Delta^n for n <= bound. If both sides are
/// coskeletal (c = the larger value) squares of dimension > c lift uniquely.
Verdict is_trivial_fibration(const SimplicialMap& f, int bound);

/// Lifting against all horns. With both sides c-coskeletal, horns of
/// dimension > c + 1 lift automatically.
Verdict is_kan_fibration(const SimplicialMap& f, int bound);

/// Inner horns plus lifting against the endpoint {0} of the nerve of the
/// two-object chaotic groupoid truncated at `bound`.
Verdict is_quasi_fibration(const SimplicialMap& f, int bound);

enum class Strategy { iso, rlp, homology, homotopy };
std::string to_string(Strategy s);
/// Throws std::invalid_argument for an unknown name.
Strategy strategy_from_string(const std::string& name);

/// Segal maps for 1 <= n <= bound, each tested by the strategy (homotopy is
/// not available here).
Verdict check_segal(const BSetPtr& x, Strategy strategy, int bound);

/// Restriction hom(I x~ Delta^q, X) -> X_{0,q} along F(0) -> I, with I
/// horizontally truncated at `bound` and q <= bound.
Verdict check_complete(const BSetPtr& x, int bound, Strategy strategy = Strategy::iso);

/// Weak-equivalence evidence for f, trying the strategies in the fixed order
/// iso, rlp, homology, homotopy. A homology isomorphism is only a necessary
/// condition and is reported as such.
Verdict weq_oracle(const SimplicialMap& f, const std::vector<Strategy>& strategies, int bound);

}  // namespace segal
