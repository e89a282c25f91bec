#include "crystver/cocycle.hpp"

#include <algorithm>

#include "crystver/errors.hpp"
#include "crystver/normal_form.hpp"

namespace crystver::cohom {

using exact::Int;
using exact::IntMatrix;
using exact::IntVector;
using exact::RatMatrix;
using exact::Rational;
using exact::RatVector;

AffineElement affine_identity(std::size_t rank) {
  return {IntMatrix::identity(rank), RatVector(rank)};
}

AffineElement affine_mul(const AffineElement& x, const AffineElement& y) {
  return {x.linear * y.linear, exact::add(x.linear * y.translation, x.translation)};
}

AffineElement affine_inverse(const AffineElement& x) {
  IntMatrix inv = exact::rat_inverse(RatMatrix::from_int(x.linear)).to_int();
  return {inv, exact::negate(inv * x.translation)};
}

AffineElement affine_pow(const AffineElement& x, std::size_t k) {
  AffineElement acc = affine_identity(x.linear.rows());
  for (std::size_t i = 0; i < k; ++i) acc = affine_mul(acc, x);
  return acc;
}

namespace {

AffineElement affine_for(const ActionMap& action, const Cocycle& cocycle,
                         const std::string& name) {
  auto a = action.find(name);
  if (a == action.end()) throw InputError("no action matrix for generator '" + name + "'");
  auto c = cocycle.find(name);
  if (c == cocycle.end()) throw InputError("no cocycle vector for generator '" + name + "'");
  if (c->second.size() != a->second.rows()) {
    throw InputError("cocycle vector length mismatch for generator '" + name + "'");
  }
  return {a->second, c->second};
}

}  // namespace

AffineElement affine_evaluate(const ActionMap& action, const Cocycle& cocycle,
                              const word::Word& w) {
  if (action.empty()) throw InputError("empty action");
  const std::size_t rank = action.begin()->second.rows();
  return word::evaluate<AffineElement>(
      w, affine_identity(rank),
      [&](const std::string& g) { return affine_for(action, cocycle, g); }, affine_mul,
      affine_inverse);
}

RatVector extend_to_word(const ActionMap& action, const Cocycle& cocycle, const word::Word& w) {
  return affine_evaluate(action, cocycle, w).translation;
}

CocycleCheck validate_cocycle(const ActionMap& action, const group::Presentation& presentation,
                              const Cocycle& cocycle) {
  for (const std::string& rel : presentation.relators) {
    word::Word w = word::parse(rel, presentation.generators);
    if (!exact::is_integral(extend_to_word(action, cocycle, w))) return {false, rel};
  }
  return {true, {}};
}

bool is_coboundary(const ActionMap& action, const Cocycle& cocycle) {
  if (action.empty()) throw InputError("empty action");
  const std::size_t rank = action.begin()->second.rows();
  const std::size_t k = action.size();
  IntMatrix stacked(k * rank, rank);
  RatVector rhs(k * rank);
  std::size_t row = 0;
  for (const auto& [name, mat] : action) {
    const RatVector& d = cocycle.at(name);
    for (std::size_t i = 0; i < rank; ++i, ++row) {
      for (std::size_t j = 0; j < rank; ++j) {
        stacked(row, j) = mat(i, j) - (i == j ? 1 : 0);
      }
      rhs[row] = d[i];
    }
  }
  exact::SnfResult s = exact::snf(stacked);
  // M v = d + z is solvable iff the zero rows of U M V leave U d integral
  for (std::size_t i = s.rank; i < k * rank; ++i) {
    Rational coord = 0;
    for (std::size_t j = 0; j < k * rank; ++j) coord += Rational(s.u(i, j)) * rhs[j];
    if (!exact::is_integral(coord)) return false;
  }
  return true;
}

namespace {

Restriction restriction_impl(const ActionMap& action, const Cocycle& cocycle,
                             const word::Word& g, const Int& p) {
  if (p < 2) throw InputError("restriction: order must be a prime >= 2");
  AffineElement ag = affine_evaluate(action, cocycle, g);
  const std::size_t rank = ag.linear.rows();
  const std::size_t pk = static_cast<std::size_t>(p);
  // rho(g)^p = I is what the lift analysis needs; a non-faithful block may
  // act trivially on a prime-order element
  std::size_t ord = group::element_order(group::CoefficientDomain::integers(), ag.linear);
  if (pk % ord != 0) {
    throw InputError("restriction: action matrix of the word has order " + std::to_string(ord) +
                     ", which does not divide " + p.str());
  }
  IntMatrix norm(rank, rank);
  IntMatrix pow = IntMatrix::identity(rank);
  for (std::size_t i = 0; i < pk; ++i) {
    norm = norm + pow;
    pow = pow * ag.linear;
  }
  RatVector m_rat = norm * ag.translation;
  if (!exact::is_integral(m_rat)) {
    throw InvalidCocycle("restriction: N d(g) is not integral; validate the cocycle first");
  }
  IntVector m(rank);
  IntVector minus_m(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    m[i] = exact::num(m_rat[i]);
    minus_m[i] = -m[i];
  }
  std::optional<IntVector> z = exact::solve_integer(norm, minus_m);
  Restriction out;
  out.nontrivial = !z.has_value();
  out.witness_m = std::move(m);
  out.lift_shift = std::move(z);
  return out;
}

}  // namespace

Restriction restriction_nontrivial(const ActionMap& action, const Cocycle& cocycle,
                                   const word::Word& g, const Int& p) {
  return restriction_impl(action, cocycle, g, p);
}

TorsionCertificate torsion_free(const group::FiniteMatrixGroup& holonomy,
                                std::span<const BlockData> blocks, bool all_elements) {
  std::vector<std::string> gen_names;
  for (const auto& g : holonomy.generators()) gen_names.push_back(g.name);

  TorsionCertificate cert;
  cert.torsion_free = true;
  const auto& classes = holonomy.conjugacy_classes();

  auto test_element = [&](std::size_t cls_index, std::size_t elem) {
    const auto& cls = classes.classes[cls_index];
    ClassCertificate cc;
    cc.class_index = cls_index;
    cc.representative_word = holonomy.word_for(elem);
    cc.prime = cls.element_order;
    cc.class_size = cls.members.size();
    word::Word w = word::parse(cc.representative_word, gen_names);
    for (const BlockData& b : blocks) {
      Restriction r = restriction_impl(b.action, b.cocycle, w, Int(cls.element_order));
      cc.blocks.push_back({r.nontrivial, std::move(r.witness_m), std::move(r.lift_shift)});
    }
    cc.covered = std::any_of(cc.blocks.begin(), cc.blocks.end(),
                             [](const BlockOutcome& o) { return o.nontrivial; });
    if (!cc.covered) cert.torsion_free = false;
    cert.classes.push_back(std::move(cc));
  };

  auto prime = [](std::size_t n) {
    if (n < 2) return false;
    for (std::size_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };

  for (std::size_t ci = 0; ci < classes.classes.size(); ++ci) {
    const auto& cls = classes.classes[ci];
    if (!prime(cls.element_order)) continue;
    if (all_elements) {
      for (std::size_t e : cls.members) test_element(ci, e);
    } else {
      test_element(ci, cls.representative);
    }
  }
  return cert;
}

}  // namespace crystver::cohom
