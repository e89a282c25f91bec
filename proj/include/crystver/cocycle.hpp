#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crystver/group.hpp"
#include "crystver/matrix.hpp"
#include "crystver/word.hpp"

namespace crystver::cohom {

/// Generator name -> unimodular action matrix, one lattice block.
using ActionMap = std::map<std::string, exact::IntMatrix>;

/// Generator name -> rational vector, entries canonical in [0, 1).
/// Represents a class in H^1(G, Q^n/Z^n) ~ H^2(G, Z^n) by its values on
/// the generators.
using Cocycle = std::map<std::string, exact::RatVector>;

/// Integral affine motion (A, t): x -> A x + t with A unimodular.
struct AffineElement {
  exact::IntMatrix linear;
  exact::RatVector translation;

  bool operator==(const AffineElement&) const = default;
};

AffineElement affine_identity(std::size_t rank);
/// (A,t)(B,s) = (AB, A s + t)
AffineElement affine_mul(const AffineElement& x, const AffineElement& y);
AffineElement affine_inverse(const AffineElement& x);
AffineElement affine_pow(const AffineElement& x, std::size_t k);

/// Crossed-homomorphism extension d(w) of the generator cocycle over a
/// word, evaluated left to right via d(gh) = d(g) + rho(g) d(h) and
/// d(g^-1) = -rho(g)^-1 d(g). The result is a representative in Q^n, not
/// reduced modulo Z^n.
exact::RatVector extend_to_word(const ActionMap& action, const Cocycle& cocycle,
                                const word::Word& w);

/// Full affine evaluation (rho(w), d(w)) of a word.
AffineElement affine_evaluate(const ActionMap& action, const Cocycle& cocycle,
                              const word::Word& w);

struct CocycleCheck {
  bool ok = false;
  std::string first_failing;  // relator text when !ok
};

/// The generator data extends to a well-defined cocycle on the presented
/// group iff every relator extends to an integral vector.
CocycleCheck validate_cocycle(const ActionMap& action, const group::Presentation& presentation,
                              const Cocycle& cocycle);

/// True iff some v in Q^n satisfies (rho(g) - I) v = d(g) (mod Z^n) for all
/// generators. Decided exactly: stack M = rows of (rho(g) - I), compute
/// SNF(M) = U M V, and test integrality of the zero-row coordinates of
/// U (stacked d).
bool is_coboundary(const ActionMap& action, const Cocycle& cocycle);

struct Restriction {
  bool nontrivial = false;
  exact::IntVector witness_m;                 ///< m = N d(g), integral
  std::optional<exact::IntVector> lift_shift;  ///< z with m + N z = 0 when trivial
};

/// Restriction of the class to the cyclic subgroup generated by the word g
/// of prime order p. With N = sum of rho(g)^i, the lifts of g satisfy
/// (rho(g), t+z)^p = (I, m + N z), so the restriction is nonzero iff
/// m + N z = 0 has no integral solution z.
/// Requires the order of rho(g) to be exactly p; throws InputError
/// otherwise, InvalidCocycle if m is not integral.
Restriction restriction_nontrivial(const ActionMap& action, const Cocycle& cocycle,
                                   const word::Word& g, const exact::Int& p);

struct BlockData {
  std::size_t rank = 0;
  ActionMap action;
  Cocycle cocycle;
};

struct BlockOutcome {
  bool nontrivial = false;
  exact::IntVector witness_m;
  std::optional<exact::IntVector> lift_shift;
};

struct ClassCertificate {
  std::size_t class_index = 0;
  std::string representative_word;
  std::size_t prime = 0;
  std::size_t class_size = 0;
  std::vector<BlockOutcome> blocks;
  bool covered = false;  ///< nontrivial in at least one block
};

struct TorsionCertificate {
  bool torsion_free = false;
  std::vector<ClassCertificate> classes;  ///< one per prime-order class, enumeration order
};

/// Torsion-freeness of the crystallographic group determined by the
/// holonomy closure and its lattice blocks: every conjugacy class of
/// prime-order holonomy elements must restrict nontrivially on at least
/// one block. With all_elements set, every prime-order element is tested
/// instead of one representative per class.
TorsionCertificate torsion_free(const group::FiniteMatrixGroup& holonomy,
                                std::span<const BlockData> blocks, bool all_elements = false);

}  // namespace crystver::cohom
