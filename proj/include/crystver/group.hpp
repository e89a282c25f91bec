#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crystver/matrix.hpp"
#include "crystver/word.hpp"

namespace crystver::group {

/// Exact coefficient domain for group elements: the integers, or the field
/// with a prime number of elements.
class CoefficientDomain {
 public:
  static CoefficientDomain integers() { return CoefficientDomain(0); }
  /// Throws InputError unless p is prime.
  static CoefficientDomain prime_field(const exact::Int& p);

  bool is_integers() const { return modulus_ == 0; }
  const exact::Int& modulus() const { return modulus_; }

  exact::IntMatrix reduce(exact::IntMatrix m) const;
  exact::IntMatrix mul(const exact::IntMatrix& a, const exact::IntMatrix& b) const;
  /// Throws InputError when the matrix is not invertible over the domain
  /// (over the integers this means det != +-1).
  exact::IntMatrix inverse(const exact::IntMatrix& a) const;
  bool invertible(const exact::IntMatrix& a) const;

  bool operator==(const CoefficientDomain&) const = default;

 private:
  explicit CoefficientDomain(exact::Int m) : modulus_(std::move(m)) {}
  exact::Int modulus_;  // 0 = integers
};

/// Least k >= 1 with g^k = identity; throws NotFiniteOrder past the cap.
std::size_t element_order(const CoefficientDomain& domain, const exact::IntMatrix& g,
                          std::size_t cap = 10000);

struct NamedGenerator {
  std::string name;
  exact::IntMatrix matrix;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::string> relators;
};

struct PresentationCheck {
  bool ok = false;
  std::string first_failing;  // relator text when !ok
};

/// True iff every relator evaluates to the identity matrix.
PresentationCheck check_presentation(const CoefficientDomain& domain,
                                     std::span<const NamedGenerator> generators,
                                     const Presentation& presentation);

struct ConjugacyClass {
  std::size_t representative;        // element index, least in enumeration order
  std::vector<std::size_t> members;  // sorted element indices
  std::size_t element_order;
};

struct ConjugacyClasses {
  std::vector<ConjugacyClass> classes;
  std::vector<std::size_t> class_of;  // element index -> class index
};

/// Subgroup of a FiniteMatrixGroup, as sorted element indices into the parent.
struct Subgroup {
  std::vector<std::size_t> elements;
  std::size_t order() const { return elements.size(); }
  bool is_trivial() const { return elements.size() == 1; }
};

/// Closure of a finite set of invertible matrices over an exact domain.
///
/// Elements are enumerated breadth-first over right products with the
/// generators in their listed order, identity first, so the enumeration
/// (and every word, class representative and report derived from it) is
/// input-deterministic. Immutable once built.
class FiniteMatrixGroup {
 public:
  static constexpr std::size_t kDefaultCap = 1000000;

  /// Throws GroupTooLarge when the closure exceeds `cap`.
  static FiniteMatrixGroup closure(const CoefficientDomain& domain,
                                   std::vector<NamedGenerator> generators,
                                   std::size_t cap = kDefaultCap);

  std::size_t order() const { return elements_.size(); }
  const CoefficientDomain& domain() const { return domain_; }
  std::span<const NamedGenerator> generators() const { return generators_; }
  const exact::IntMatrix& element(std::size_t i) const { return elements_[i]; }
  std::size_t degree() const { return elements_.empty() ? 0 : elements_[0].rows(); }

  /// Index lookup; nullopt when the matrix is not an element.
  std::optional<std::size_t> index_of(const exact::IntMatrix& m) const;

  /// Shortest generator word for element i (empty for the identity).
  std::string word_for(std::size_t i) const;

  // index arithmetic via the multiplication table
  std::size_t mul(std::size_t i, std::size_t j) const { return table_[i * order() + j]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  std::size_t conjugate(std::size_t x, std::size_t by) const {
    return mul(mul(inverse_[by], x), by);
  }
  std::size_t order_of(std::size_t i) const;
  std::span<const std::size_t> generator_indices() const { return generator_index_; }

  const ConjugacyClasses& conjugacy_classes() const { return classes_; }

  /// Subgroup generated by the given element indices (identity if empty);
  /// result sorted ascending.
  Subgroup generated_subgroup(std::span<const std::size_t> gens) const;

  /// Smallest normal subgroup containing the given elements.
  Subgroup normal_closure(std::span<const std::size_t> gens) const;

  /// Derived subgroup of a subgroup, inside this group.
  Subgroup derived_of(const Subgroup& h) const;
  bool subgroup_solvable(const Subgroup& h) const;

  /// Images of every element under the homomorphism sending each named
  /// generator to `action[name]`; computed by replaying the closure words.
  /// The action must respect the relations (caller-checked).
  std::vector<exact::IntMatrix> action_images(
      const std::map<std::string, exact::IntMatrix>& action) const;

 private:
  FiniteMatrixGroup() : domain_(CoefficientDomain::integers()) {}

  void build_tables();
  void build_classes();

  CoefficientDomain domain_;
  std::vector<NamedGenerator> generators_;
  std::vector<exact::IntMatrix> elements_;
  // BFS predecessor: element i (> 0) is elements_[pred_[i]] * generators_[pred_gen_[i]]
  std::vector<std::size_t> pred_;
  std::vector<std::size_t> pred_gen_;
  std::vector<std::size_t> generator_index_;
  std::vector<std::size_t> table_;  // order x order, row-major
  std::vector<std::size_t> inverse_;
  ConjugacyClasses classes_;
  bool plain_words_ = true;  // all generator names single characters
};

// ---- predicates -----------------------------------------------------------

/// Commutator subgroup, materialized as a group in its own right.
FiniteMatrixGroup derived_subgroup(const FiniteMatrixGroup& g);

/// Derived series reaches the trivial group.
bool is_solvable(const FiniteMatrixGroup& g);

/// The derived subgroup is the whole group.
bool is_perfect(const FiniteMatrixGroup& g);

/// Minimal non-solvable: g is non-solvable and every proper subgroup is
/// solvable. Uses the two-generator criterion (a finite group is solvable
/// iff all its 2-generated subgroups are), sweeping one conjugacy-class
/// representative against all elements with memoization on the generated
/// subgroup.
bool is_mns(const FiniteMatrixGroup& g);

/// The unique maximal proper normal subgroup, or nullopt when it is not
/// unique. Proper normal subgroups are enumerated as joins of normal
/// closures of class representatives.
std::optional<Subgroup> unique_maximal_normal(const FiniteMatrixGroup& g);

/// Elements acting as the identity under the given action; a trivial
/// result certifies faithfulness.
Subgroup block_kernel(const FiniteMatrixGroup& g,
                      const std::map<std::string, exact::IntMatrix>& action);

/// Rank of the fixed sublattice of an integral action, computed as the
/// trace average over the group and cross-checked against the nullity of
/// the stacked system (rho(gen) - I) x = 0. Throws InputError when the
/// trace average is not an integer (the action is not a representation).
std::size_t fixed_rank(const FiniteMatrixGroup& g,
                       const std::map<std::string, exact::IntMatrix>& action);

}  // namespace crystver::group
