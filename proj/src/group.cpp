#include "crystver/group.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "crystver/errors.hpp"
#include "crystver/normal_form.hpp"

namespace crystver::group {

using exact::Int;
using exact::IntMatrix;
using exact::RatMatrix;

// ---- coefficient domain -----------------------------------------------------

namespace {

bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Int mod_positive(const Int& x, const Int& p) {
  Int r = x % p;
  if (r < 0) r += p;
  return r;
}

}  // namespace

CoefficientDomain CoefficientDomain::prime_field(const Int& p) {
  if (!is_prime(p)) throw InputError("prime_field: modulus " + p.str() + " is not prime");
  return CoefficientDomain(p);
}

IntMatrix CoefficientDomain::reduce(IntMatrix m) const {
  if (is_integers()) return m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_positive(m(i, j), modulus_);
  return m;
}

IntMatrix CoefficientDomain::mul(const IntMatrix& a, const IntMatrix& b) const {
  return reduce(a * b);
}

bool CoefficientDomain::invertible(const IntMatrix& a) const {
  if (!a.is_square()) return false;
  Int d = a.determinant();
  if (is_integers()) return d == 1 || d == -1;
  return mod_positive(d, modulus_) != 0;
}

IntMatrix CoefficientDomain::inverse(const IntMatrix& a) const {
  if (!a.is_square()) throw InputError("inverse of non-square matrix");
  if (is_integers()) {
    Int d = a.determinant();
    if (d != 1 && d != -1) {
      throw InputError("matrix is not unimodular (det = " + d.str() + ")");
    }
    return exact::rat_inverse(RatMatrix::from_int(a)).to_int();
  }
  // Gauss-Jordan over F_p
  const std::size_t n = a.rows();
  IntMatrix m = reduce(a);
  IntMatrix inv = IntMatrix::identity(n);
  auto inv_mod = [&](const Int& x) {
    // Fermat: x^(p-2) mod p
    Int e = modulus_ - 2, base = mod_positive(x, modulus_), acc = 1;
    while (e > 0) {
      if (e % 2 == 1) acc = acc * base % modulus_;
      base = base * base % modulus_;
      e /= 2;
    }
    return acc;
  };
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw InputError("matrix is singular over F_" + modulus_.str());
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(p, j));
        std::swap(inv(c, j), inv(p, j));
      }
    }
    Int f = inv_mod(m(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) = m(c, j) * f % modulus_;
      inv(c, j) = inv(c, j) * f % modulus_;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      Int g = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) = mod_positive(m(r, j) - g * m(c, j), modulus_);
        inv(r, j) = mod_positive(inv(r, j) - g * inv(c, j), modulus_);
      }
    }
  }
  return inv;
}

std::size_t element_order(const CoefficientDomain& domain, const IntMatrix& g, std::size_t cap) {
  if (!domain.invertible(g)) throw InputError("element_order: matrix not invertible");
  IntMatrix p = domain.reduce(g);
  const IntMatrix id = IntMatrix::identity(g.rows());
  std::size_t k = 1;
  while (!(p == id)) {
    p = domain.mul(p, g);
    if (++k > cap) throw NotFiniteOrder("element order exceeds cap " + std::to_string(cap));
  }
  return k;
}

// ---- presentation check -----------------------------------------------------

PresentationCheck check_presentation(const CoefficientDomain& domain,
                                     std::span<const NamedGenerator> generators,
                                     const Presentation& presentation) {
  std::map<std::string, const IntMatrix*> by_name;
  for (const auto& g : generators) by_name[g.name] = &g.matrix;
  for (const auto& name : presentation.generators) {
    if (!by_name.count(name)) throw InputError("no matrix for generator '" + name + "'");
  }
  const std::size_t n = generators.empty() ? 0 : generators.front().matrix.rows();
  const IntMatrix id = IntMatrix::identity(n);
  for (const std::string& rel : presentation.relators) {
    word::Word w = word::parse(rel, presentation.generators);
    IntMatrix val = word::evaluate<IntMatrix>(
        w, id, [&](const std::string& g) { return domain.reduce(*by_name.at(g)); },
        [&](const IntMatrix& a, const IntMatrix& b) { return domain.mul(a, b); },
        [&](const IntMatrix& a) { return domain.inverse(a); });
    if (!(val == id)) return {false, rel};
  }
  return {true, {}};
}

// ---- closure ----------------------------------------------------------------

FiniteMatrixGroup FiniteMatrixGroup::closure(const CoefficientDomain& domain,
                                             std::vector<NamedGenerator> generators,
                                             std::size_t cap) {
  if (generators.empty()) throw InputError("closure: no generators");
  const std::size_t n = generators.front().matrix.rows();
  for (auto& g : generators) {
    if (!g.matrix.is_square() || g.matrix.rows() != n) {
      throw InputError("closure: generators must be square of equal size");
    }
    if (!domain.invertible(g.matrix)) {
      throw InputError("closure: generator '" + g.name + "' is not invertible over the domain");
    }
    g.matrix = domain.reduce(g.matrix);
  }

  FiniteMatrixGroup grp;
  grp.domain_ = domain;
  grp.generators_ = std::move(generators);
  for (const auto& g : grp.generators_) {
    if (g.name.size() != 1) grp.plain_words_ = false;
  }

  std::unordered_map<std::string, std::size_t> index;
  grp.elements_.push_back(IntMatrix::identity(n));
  grp.pred_.push_back(0);
  grp.pred_gen_.push_back(0);
  index.emplace(grp.elements_[0].key(), 0);
  for (std::size_t i = 0; i < grp.elements_.size(); ++i) {
    for (std::size_t k = 0; k < grp.generators_.size(); ++k) {
      IntMatrix p = domain.mul(grp.elements_[i], grp.generators_[k].matrix);
      auto [it, inserted] = index.emplace(p.key(), grp.elements_.size());
      if (inserted) {
        grp.elements_.push_back(std::move(p));
        grp.pred_.push_back(i);
        grp.pred_gen_.push_back(k);
        if (grp.elements_.size() > cap) {
          throw GroupTooLarge("closure exceeded cap of " + std::to_string(cap) + " elements");
        }
      }
    }
  }
  grp.generator_index_.resize(grp.generators_.size());
  for (std::size_t k = 0; k < grp.generators_.size(); ++k) {
    grp.generator_index_[k] = index.at(grp.generators_[k].matrix.key());
  }
  grp.build_tables();
  grp.build_classes();
  return grp;
}

void FiniteMatrixGroup::build_tables() {
  const std::size_t n = order();
  table_.assign(n * n, 0);
  // generator columns by matrix multiplication, the rest by table recursion:
  // elements_[j] = elements_[pred_[j]] * gen[pred_gen_[j]], so
  // i*j = (i * pred_[j]) * gen.
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index.emplace(elements_[i].key(), i);
  std::vector<std::vector<std::size_t>> gen_col(generators_.size(),
                                                std::vector<std::size_t>(n));
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      gen_col[k][i] = index.at(domain_.mul(elements_[i], generators_[k].matrix).key());
    }
  }
  for (std::size_t i = 0; i < n; ++i) table_[i * n] = i;  // j = identity
  for (std::size_t j = 1; j < n; ++j) {
    const std::size_t pj = pred_[j], gk = pred_gen_[j];
    for (std::size_t i = 0; i < n; ++i) {
      table_[i * n + j] = gen_col[gk][table_[i * n + pj]];
    }
  }
  inverse_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (table_[i * n + j] == 0) {
        inverse_[i] = j;
        break;
      }
    }
  }
}

void FiniteMatrixGroup::build_classes() {
  const std::size_t n = order();
  classes_.class_of.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (classes_.class_of[i] != n) continue;
    ConjugacyClass cls;
    cls.representative = i;
    std::vector<std::size_t> frontier = {i};
    classes_.class_of[i] = classes_.classes.size();
    std::vector<std::size_t> members = {i};
    while (!frontier.empty()) {
      std::size_t x = frontier.back();
      frontier.pop_back();
      for (std::size_t g : generator_index_) {
        std::size_t y = conjugate(x, g);
        if (classes_.class_of[y] == n) {
          classes_.class_of[y] = classes_.classes.size();
          members.push_back(y);
          frontier.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    cls.members = std::move(members);
    cls.element_order = order_of(i);
    classes_.classes.push_back(std::move(cls));
  }
}

std::optional<std::size_t> FiniteMatrixGroup::index_of(const IntMatrix& m) const {
  IntMatrix r = domain_.reduce(m);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == r) return i;
  }
  return std::nullopt;
}

std::string FiniteMatrixGroup::word_for(std::size_t i) const {
  std::vector<std::size_t> gens;
  while (i != 0) {
    gens.push_back(pred_gen_[i]);
    i = pred_[i];
  }
  std::string out;
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
    if (!plain_words_ && !out.empty()) out += '*';
    out += generators_[*it].name;
  }
  return out;
}

std::size_t FiniteMatrixGroup::order_of(std::size_t i) const {
  std::size_t k = 1, p = i;
  while (p != 0) {
    p = mul(p, i);
    ++k;
  }
  return k;
}

Subgroup FiniteMatrixGroup::generated_subgroup(std::span<const std::size_t> gens) const {
  std::vector<char> seen(order(), 0);
  std::vector<std::size_t> bfs = {0};
  seen[0] = 1;
  for (std::size_t g : gens) {
    if (!seen[g]) {
      seen[g] = 1;
      bfs.push_back(g);
    }
  }
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    for (std::size_t g : gens) {
      std::size_t y = mul(bfs[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        bfs.push_back(y);
      }
    }
  }
  std::sort(bfs.begin(), bfs.end());
  return Subgroup{std::move(bfs)};
}

Subgroup FiniteMatrixGroup::normal_closure(std::span<const std::size_t> gens) const {
  std::vector<std::size_t> core(gens.begin(), gens.end());
  Subgroup s = generated_subgroup(core);
  for (;;) {
    std::vector<std::size_t> extra;
    std::vector<char> in(order(), 0);
    for (std::size_t x : s.elements) in[x] = 1;
    for (std::size_t x : s.elements) {
      for (std::size_t g : generator_index_) {
        std::size_t y = conjugate(x, g);
        if (!in[y]) extra.push_back(y);
      }
    }
    if (extra.empty()) return s;
    core.insert(core.end(), s.elements.begin(), s.elements.end());
    core.insert(core.end(), extra.begin(), extra.end());
    s = generated_subgroup(core);
  }
}

Subgroup FiniteMatrixGroup::derived_of(const Subgroup& h) const {
  std::vector<char> seen(order(), 0);
  std::vector<std::size_t> comms;
  for (std::size_t x : h.elements) {
    for (std::size_t y : h.elements) {
      std::size_t c = mul(mul(inverse_[x], inverse_[y]), mul(x, y));
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  }
  return generated_subgroup(comms);
}

bool FiniteMatrixGroup::subgroup_solvable(const Subgroup& h) const {
  Subgroup cur = h;
  for (;;) {
    if (cur.is_trivial()) return true;
    Subgroup next = derived_of(cur);
    if (next.elements == cur.elements) return false;
    cur = std::move(next);
  }
}

std::vector<IntMatrix> FiniteMatrixGroup::action_images(
    const std::map<std::string, IntMatrix>& action) const {
  std::vector<const IntMatrix*> gen_mat(generators_.size());
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    auto it = action.find(generators_[k].name);
    if (it == action.end()) {
      throw InputError("action gives no matrix for generator '" + generators_[k].name + "'");
    }
    gen_mat[k] = &it->second;
  }
  const std::size_t rank = gen_mat.empty() ? 0 : gen_mat[0]->rows();
  std::vector<IntMatrix> images;
  images.reserve(order());
  images.push_back(IntMatrix::identity(rank));
  for (std::size_t i = 1; i < order(); ++i) {
    images.push_back(images[pred_[i]] * *gen_mat[pred_gen_[i]]);
  }
  return images;
}

// ---- predicates --------------------------------------------------------------

FiniteMatrixGroup derived_subgroup(const FiniteMatrixGroup& g) {
  Subgroup d = g.derived_of(Subgroup{[&] {
    std::vector<std::size_t> all(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) all[i] = i;
    return all;
  }()});
  // pick a small generating set greedily, in enumeration order
  std::vector<NamedGenerator> gens;
  std::vector<std::size_t> picked;
  for (std::size_t x : d.elements) {
    if (x == 0) continue;
    if (!picked.empty()) {
      Subgroup span = g.generated_subgroup(picked);
      if (std::binary_search(span.elements.begin(), span.elements.end(), x)) continue;
      if (span.order() == d.order()) break;
    }
    picked.push_back(x);
    gens.push_back({"k" + std::to_string(gens.size() + 1), g.element(x)});
  }
  if (gens.empty()) gens.push_back({"k1", exact::IntMatrix::identity(g.degree())});
  FiniteMatrixGroup out = FiniteMatrixGroup::closure(g.domain(), std::move(gens));
  if (out.order() != d.order()) throw Error("internal: derived subgroup materialization mismatch");
  return out;
}

bool is_solvable(const FiniteMatrixGroup& g) {
  std::vector<std::size_t> all(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) all[i] = i;
  return g.subgroup_solvable(Subgroup{std::move(all)});
}

bool is_perfect(const FiniteMatrixGroup& g) {
  std::vector<std::size_t> all(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) all[i] = i;
  return g.derived_of(Subgroup{std::move(all)}).order() == g.order();
}

bool is_mns(const FiniteMatrixGroup& g) {
  if (is_solvable(g)) return false;
  // conjugate pairs generate conjugate subgroups, so one class representative
  // against all elements covers every 2-generated subgroup up to conjugacy
  std::map<std::vector<std::size_t>, bool> memo;
  for (const ConjugacyClass& cls : g.conjugacy_classes().classes) {
    if (cls.representative == 0) continue;
    for (std::size_t y = 1; y < g.order(); ++y) {
      const std::size_t pair[2] = {cls.representative, y};
      Subgroup h = g.generated_subgroup(pair);
      if (h.order() == g.order()) continue;  // not proper
      auto [it, inserted] = memo.try_emplace(h.elements, false);
      if (inserted) it->second = g.subgroup_solvable(h);
      if (!it->second) return false;
    }
  }
  return true;
}

std::optional<Subgroup> unique_maximal_normal(const FiniteMatrixGroup& g) {
  std::set<std::vector<std::size_t>> proper;
  proper.insert({0});  // trivial subgroup
  for (const ConjugacyClass& cls : g.conjugacy_classes().classes) {
    if (cls.representative == 0) continue;
    const std::size_t rep[1] = {cls.representative};
    Subgroup n = g.normal_closure(rep);
    if (n.order() < g.order()) proper.insert(n.elements);
  }
  // close under joins
  for (;;) {
    std::set<std::vector<std::size_t>> next = proper;
    for (const auto& a : proper) {
      for (const auto& b : proper) {
        std::vector<std::size_t> both = a;
        both.insert(both.end(), b.begin(), b.end());
        Subgroup j = g.generated_subgroup(both);
        if (j.order() < g.order()) next.insert(j.elements);
      }
    }
    if (next.size() == proper.size()) break;
    proper = std::move(next);
  }
  // maximal = not strictly contained in another proper normal subgroup
  std::vector<const std::vector<std::size_t>*> maximal;
  for (const auto& a : proper) {
    bool contained = false;
    for (const auto& b : proper) {
      if (a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        contained = true;
        break;
      }
    }
    if (!contained) maximal.push_back(&a);
  }
  if (maximal.size() != 1) return std::nullopt;
  return Subgroup{*maximal.front()};
}

Subgroup block_kernel(const FiniteMatrixGroup& g,
                      const std::map<std::string, IntMatrix>& action) {
  std::vector<IntMatrix> images = g.action_images(action);
  std::vector<std::size_t> kernel;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].is_identity()) kernel.push_back(i);
  }
  return Subgroup{std::move(kernel)};
}

std::size_t fixed_rank(const FiniteMatrixGroup& g,
                       const std::map<std::string, IntMatrix>& action) {
  std::vector<IntMatrix> images = g.action_images(action);
  Int total = 0;
  for (const IntMatrix& m : images) total += m.trace();
  if (total % Int(g.order()) != 0) {
    throw InputError("fixed_rank: trace average is not an integer; action is not a representation");
  }
  Int avg = total / Int(g.order());
  // cross-check: nullity of the stacked system (rho(gen) - I) x = 0
  const std::size_t rank = images[0].rows();
  IntMatrix stacked(rank * g.generators().size(), rank);
  std::size_t row = 0;
  for (const auto& gen : g.generators()) {
    const IntMatrix& m = action.at(gen.name);
    for (std::size_t i = 0; i < rank; ++i, ++row) {
      for (std::size_t j = 0; j < rank; ++j) {
        stacked(row, j) = m(i, j) - (i == j ? 1 : 0);
      }
    }
  }
  const std::size_t nullity = rank - exact::snf(stacked).rank;
  if (Int(nullity) != avg) {
    throw Error("internal: fixed_rank mismatch between trace average and nullspace");
  }
  return nullity;
}

}  // namespace crystver::group
