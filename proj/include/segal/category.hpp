#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace segal {

/// A finite category given by an explicit composition table. Every object
/// gets an identity morphism when added; composites with identities are
/// implicit, all other composable pairs must be entered.
class FiniteCategory {
 public:
  int add_object(std::string name = {});
  int add_morphism(int source, int target, std::string name = {});
  /// Records g o f = h.
  void set_composite(int g, int f, int h);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  int source(int m) const { return morphisms_.at(static_cast<std::size_t>(m)).source; }
  int target(int m) const { return morphisms_.at(static_cast<std::size_t>(m)).target; }
  int identity(int obj) const { return objects_.at(static_cast<std::size_t>(obj)).identity; }
  bool is_identity(int m) const { return identity(source(m)) == m; }
  /// g o f, or -1 when not composable or not recorded.
  int compose(int g, int f) const;
  const std::vector<int>& hom(int a, int b) const;

  const std::string& object_name(int obj) const { return objects_.at(static_cast<std::size_t>(obj)).name; }
  const std::string& morphism_name(int m) const { return morphisms_.at(static_cast<std::size_t>(m)).name; }

  /// Totality of composition on composable pairs, unit laws, associativity.
  /// Throws std::invalid_argument naming the first violation.
  void validate() const;

  /// Inverse of m, or -1.
  int inverse(int m) const;
  bool is_iso(int m) const { return inverse(m) >= 0; }

  bool operator==(const FiniteCategory&) const = default;

 private:
  struct Object {
    std::string name;
    int identity = -1;
    bool operator==(const Object&) const = default;
  };
  struct Morphism {
    int source = 0;
    int target = 0;
    std::string name;
    bool operator==(const Morphism&) const = default;
  };
  std::vector<Object> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<int> table_;  // morphism_count^2, -1 if absent
  std::vector<std::vector<std::vector<int>>> hom_;
  void grow_table(int old_count);
};

/// A functor between finite categories, by its action on objects and morphisms.
struct FunctorData {
  std::vector<int> objects;
  std::vector<int> morphisms;
  bool operator==(const FunctorData&) const = default;
  auto operator<=>(const FunctorData&) const = default;
};

/// The linear order [n] = {0 < 1 < ... < n}.
FiniteCategory linear_order(int n);
FiniteCategory terminal_category();
FiniteCategory discrete_category(int n);
/// Objects 0..n with exactly one morphism between each ordered pair.
FiniteCategory chaotic_groupoid(int n);
/// A poset on 0..n-1 given by a reflexive-transitive relation.
FiniteCategory poset(int n, const std::function<bool(int, int)>& leq);
/// A one-object category from a monoid multiplication table on 0..k-1 (0 the unit).
FiniteCategory monoid_category(const std::vector<std::vector<int>>& mult);

bool is_groupoid(const FiniteCategory& c);

/// Wide subcategory of invertible morphisms. `morphism_map` receives the
/// index of each kept morphism in c.
FiniteCategory iso_subcategory(const FiniteCategory& c, std::vector<int>* morphism_map = nullptr);

/// C^op. `morphism_map` receives, for each morphism of c, its index in C^op.
FiniteCategory opposite(const FiniteCategory& c, std::vector<int>* morphism_map = nullptr);

bool is_functor(const FiniteCategory& c, const FiniteCategory& d, const FunctorData& f);

/// All functors C -> D, ordered lexicographically by object assignment and
/// then by morphism assignment.
std::vector<FunctorData> enumerate_functors(const FiniteCategory& c, const FiniteCategory& d);
void for_each_functor(const FiniteCategory& c, const FiniteCategory& d, const std::function<bool(const FunctorData&)>& visit);

FunctorData compose_functors(const FunctorData& g, const FunctorData& f);
FunctorData identity_functor(const FiniteCategory& c);

/// Fully faithful and essentially surjective.
bool is_equivalence(const FiniteCategory& c, const FiniteCategory& d, const FunctorData& f);

/// An isomorphism of categories, if any.
std::optional<FunctorData> find_category_isomorphism(const FiniteCategory& c, const FiniteCategory& d);

/// C x D; object (a, b) has index a * |Ob D| + b.
FiniteCategory product_category(const FiniteCategory& c, const FiniteCategory& d);

/// Fun(C, D): functors and natural transformations. `functors` receives
/// the object list.
FiniteCategory functor_category(const FiniteCategory& c, const FiniteCategory& d, std::vector<FunctorData>* functors = nullptr);

/// Generators and relations for the fundamental groupoid of a simplicial set.
struct GroupoidPresentation {
  int objects = 0;
  /// One generator per nondegenerate edge: (source vertex, target vertex).
  std::vector<std::pair<int, int>> generators;
  /// Per nondegenerate 2-cell, the relation d_1 = d_0 . d_2 as a word of
  /// (generator, exponent) pairs read right to left; degenerate edges omitted.
  std::vector<std::vector<std::pair<int, int>>> relations;
  /// Present when the input is a standard simplex: the chaotic groupoid it
  /// presents.
  std::optional<FiniteCategory> normal_form;
};

}  // namespace segal
