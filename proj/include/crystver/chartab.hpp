#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "crystver/group.hpp"
#include "crystver/quadratic.hpp"

namespace crystver::chartab {

struct ClassInfo {
  std::string label;
  exact::Int size;
  exact::Int element_order;
};

struct Character {
  std::string name;
  std::vector<QuadraticValue> values;  // one per class, table column order
};

/// Ordinary character table over a quadratic ring. Tables are inputs
/// (fixtures), never computed from a group.
struct CharacterTable {
  std::string name;
  exact::Int group_order = 0;
  QuadraticRing ring;
  std::vector<ClassInfo> classes;
  /// For each prime q dividing the order: class label -> label of the
  /// class of q-th powers.
  std::map<exact::Int, std::map<std::string, std::string>> power_maps;
  std::vector<Character> characters;

  std::size_t class_index(const std::string& label) const;
  /// Index of the row with all values 1; throws CorruptTable when absent.
  std::size_t trivial_character() const;
};

struct TableCheck {
  bool ok = false;
  std::string first_violation;
};

/// Exact verification of all table invariants: class sizes sum to the
/// order, degrees are positive integers with sum of squares the order,
/// row and column orthogonality in Q(w).
TableCheck validate_table(const CharacterTable& t);

/// Frobenius-Schur indicator nu_2 of character chi (by row index):
/// (1/|G|) sum over classes of |c| chi(square class of c).
/// Throws InputError when no squaring power map is present, CorruptTable
/// when the result is not in {-1, 0, 1}.
int frobenius_schur(const CharacterTable& t, std::size_t chi);

/// 2 when nu_2 = -1, else 1.
int schur_lower_bound(const CharacterTable& t, std::size_t chi);

/// m times the sum of chi over its Galois orbit ({chi} when chi is
/// rational-valued, {chi, chi-bar} otherwise); always rational-valued.
std::vector<exact::Rational> rationalize(const CharacterTable& t, std::size_t chi,
                                         const exact::Int& m);

struct BlockPartition {
  exact::Int prime;
  std::vector<std::vector<std::size_t>> blocks;  ///< numbered by first occurrence
  std::size_t principal = 0;                     ///< block of the trivial character
  bool prime_divides_order = true;               ///< false => singleton fallback
  std::string ideal;                             ///< how the prime was realized
};

/// p-block partition via central-character congruences: characters lie in
/// the same block iff omega_chi(c) = |c| chi(c)/chi(1) agree modulo a fixed
/// maximal ideal over p for every class c. The ideal comes from factoring
/// x^2 + u x + c mod p: inert -> arithmetic in the field with p^2 elements;
/// split or ramified -> w maps to the smallest nonnegative root.
/// When p does not divide the order, returns singleton blocks with
/// prime_divides_order = false.
BlockPartition p_blocks(const CharacterTable& t, const exact::Int& p);

/// True iff no character in the subset lies in the principal block.
bool principal_block_check(const BlockPartition& partition,
                           std::span<const std::size_t> subset);

/// Group class index -> candidate table column indices, matched by
/// (element order, class size). Singleton candidate lists are resolved
/// matches; longer lists are reported ambiguities. Throws MismatchedTable
/// when the order or the (order, size) multisets disagree.
std::vector<std::vector<std::size_t>> identify_classes(const group::FiniteMatrixGroup& g,
                                                       const CharacterTable& t);

}  // namespace crystver::chartab
