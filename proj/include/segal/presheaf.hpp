#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segal/bisimplicial.hpp"
#include "segal/category.hpp"
#include "segal/simplicial_set.hpp"

namespace segal {

/// Covering sieves per object, each a sorted list of morphism indices with
/// that object as target. Carried along but not used by any check.
struct Topology {
  std::vector<std::vector<std::vector<int>>> covering;
  bool operator==(const Topology&) const = default;
};

/// A presheaf of categories on a finite index category. For alpha : V -> U,
/// restrictions[alpha] is the functor alpha^* : A(U) -> A(V).
struct CategoryPresheaf {
  FiniteCategory index;
  std::vector<FiniteCategory> sections;
  std::vector<FunctorData> restrictions;
  Topology topology;
};
/// Functors, identities to identity functors, (beta alpha)^* = alpha^* beta^*.
/// Throws std::invalid_argument naming the first violation.
void validate(const CategoryPresheaf& a);
CategoryPresheaf constant_presheaf(const FiniteCategory& index, const FiniteCategory& value);

/// A presheaf of simplicial sets; restrictions[alpha] : X(U) -> X(V).
struct SSetPresheaf {
  FiniteCategory index;
  std::vector<SSetPtr> sections;
  std::vector<SimplicialMap> restrictions;
  Topology topology;
};
void validate(const SSetPresheaf& x);
/// U -> B(A(U)) with nerves truncated at max_dim.
SSetPresheaf nerve_presheaf(const CategoryPresheaf& a, int max_dim);

/// The category C/A of pairs (U, x), x an object of A(U). A morphism
/// (alpha, f) : (V, y) -> (U, x) has alpha : V -> U and f : alpha^*(x) -> y
/// in A(V); (alpha, f) o (gamma, g) = (alpha gamma, g . gamma^*(f)).
struct Grothendieck {
  FiniteCategory category;
  std::vector<std::pair<int, int>> objects;    // (U, x)
  std::vector<std::pair<int, int>> morphisms;  // (alpha, f)
  /// The forgetful functor C/A -> C.
  FunctorData forgetful;
  /// Sieves c^{-1}(S) for the covering sieves S of the index.
  Topology topology;
  int object_of(int u, int x) const;
  /// -1 when absent. `target` is an object of the category.
  int morphism_of(int alpha, int f, int target) const;
};
/// Validates a first.
Grothendieck grothendieck(const CategoryPresheaf& a);

/// The truncated simplex category: objects [0..n], all monotone maps.
struct SimplexCategory {
  int max_dim = 0;
  FiniteCategory category;
  std::vector<Monotone> maps;
  int index_of(const Monotone& theta) const;
};
SimplexCategory simplex_category(int max_dim);

/// An A-diagram: pi : X -> Ob(A) and an action m : X x_s Mor(A) -> X over t.
/// pi[U][n][c] is the object of A(U) under the nondegenerate cell (n, c) of
/// X(U); action[U][f][n][c] is m((n, c), f), read only for cells over s(f).
struct ADiagram {
  CategoryPresheaf a;
  SSetPresheaf x;
  std::vector<std::vector<std::vector<int>>> pi;
  std::vector<std::vector<std::vector<std::vector<SimplexRef>>>> action;
};

struct ADiagramReport {
  bool ok = true;
  /// "pi", "action-square", "simplicial", "naturality", "identity" or "composition".
  std::string axiom;
  /// Index object, cell (dim, index), then the morphisms involved.
  std::vector<int> witness;
  std::string detail;
};
/// Exhaustive check of every axiom; stops at the first violation.
ADiagramReport check_adiagram(const ADiagram& d);

/// The A-diagram of a bisimplicial set over the point: A = (Delta_{<=N})^op,
/// X = coproduct of the slices X_{n,*}, and f : [n] -> [m] in A acting by
/// the horizontal operator of the corresponding [m] -> [n].
ADiagram adiagram_from_bisimplicial(const BisimplicialSet& x, int max_dim);

/// X as a presheaf on Delta_{<=N}: sections X_{n,*}, restrictions the
/// horizontal operators.
SSetPresheaf bisimplicial_to_presheaf(const BisimplicialSet& x, int max_dim);
/// Inverse on N-truncations. The index must be simplex_category(N).category.
BSetPtr presheaf_to_bisimplicial(const SSetPresheaf& p, int max_dim);

/// Sectionwise application. Functors: "identity", "k-shriek", "k-upper",
/// "core-J" (param = truncation bound; ignored by identity and core-J).
/// Reports: "homology", "kan", "qcat" (param = bound).
struct SectionwiseResult {
  std::optional<SSetPresheaf> presheaf;
  /// One line per index object for reports.
  std::vector<std::string> report;
  /// Functoriality of the result and the naturality square of the
  /// unit, counit or inclusion against every restriction.
  bool natural = true;
  std::string detail;
};
/// Throws std::invalid_argument for an unknown name.
SectionwiseResult sectionwise_apply(const std::string& name, const SSetPresheaf& p, int param);

}  // namespace segal
