#include "crystver/chartab.hpp"

#include <algorithm>
#include <map>

#include "crystver/errors.hpp"

namespace crystver::chartab {

using exact::Int;
using exact::Rational;

std::string to_string(const QuadraticValue& x) {
  if (x.is_rational()) return exact::to_string(x.a);
  return exact::to_string(x.a) + (x.b > 0 ? "+" : "") + exact::to_string(x.b) + "w";
}

std::size_t CharacterTable::class_index(const std::string& label) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].label == label) return i;
  }
  throw InputError("unknown class label '" + label + "'");
}

std::size_t CharacterTable::trivial_character() const {
  for (std::size_t i = 0; i < characters.size(); ++i) {
    bool all_one = true;
    for (const QuadraticValue& v : characters[i].values) {
      if (!(v == QuadraticValue{1, 0})) {
        all_one = false;
        break;
      }
    }
    if (all_one) return i;
  }
  throw CorruptTable("table has no trivial character");
}

TableCheck validate_table(const CharacterTable& t) {
  const std::size_t k = t.classes.size();
  Int size_sum = 0;
  for (const ClassInfo& c : t.classes) size_sum += c.size;
  if (size_sum != t.group_order) {
    return {false, "class sizes sum to " + size_sum.str() + ", not the group order"};
  }
  for (const Character& ch : t.characters) {
    if (ch.values.size() != k) return {false, "character " + ch.name + " has wrong row length"};
    const QuadraticValue& deg = ch.values.empty() ? QuadraticValue{0, 0} : ch.values[0];
    if (!deg.is_rational() || !exact::is_integral(deg.a) || deg.a <= 0) {
      return {false, "degree of " + ch.name + " is not a positive integer"};
    }
  }
  Int deg_sq = 0;
  for (const Character& ch : t.characters) {
    deg_sq += exact::num(ch.values[0].a) * exact::num(ch.values[0].a);
  }
  if (deg_sq != t.group_order) {
    return {false, "sum of squared degrees is " + deg_sq.str() + ", not the group order"};
  }
  // row orthogonality: (1/|G|) sum |c| chi(c) conj(psi(c)) = delta
  for (std::size_t i = 0; i < t.characters.size(); ++i) {
    for (std::size_t j = i; j < t.characters.size(); ++j) {
      QuadraticValue s{0, 0};
      for (std::size_t c = 0; c < k; ++c) {
        QuadraticValue term = qmul(t.ring, t.characters[i].values[c],
                                   complex_conj(t.ring, t.characters[j].values[c]));
        term.a *= Rational(t.classes[c].size);
        term.b *= Rational(t.classes[c].size);
        s = qadd(s, term);
      }
      QuadraticValue want{i == j ? Rational(t.group_order) : Rational(0), 0};
      if (!(s == want)) {
        return {false,
                "row orthogonality <" + t.characters[i].name + "," + t.characters[j].name + ">"};
      }
    }
  }
  // column orthogonality: sum_chi chi(c) conj(chi(c')) = delta |G|/|c|
  for (std::size_t c1 = 0; c1 < k; ++c1) {
    for (std::size_t c2 = c1; c2 < k; ++c2) {
      QuadraticValue s{0, 0};
      for (const Character& ch : t.characters) {
        s = qadd(s, qmul(t.ring, ch.values[c1], complex_conj(t.ring, ch.values[c2])));
      }
      QuadraticValue want{
          c1 == c2 ? Rational(t.group_order) / Rational(t.classes[c1].size) : Rational(0), 0};
      if (!(s == want)) {
        return {false, "column orthogonality (" + t.classes[c1].label + "," +
                           t.classes[c2].label + ")"};
      }
    }
  }
  return {true, {}};
}

int frobenius_schur(const CharacterTable& t, std::size_t chi) {
  auto pm = t.power_maps.find(2);
  if (pm == t.power_maps.end()) throw InputError("no squaring power map in table");
  const Character& ch = t.characters.at(chi);
  QuadraticValue s{0, 0};
  for (std::size_t c = 0; c < t.classes.size(); ++c) {
    auto target = pm->second.find(t.classes[c].label);
    if (target == pm->second.end()) {
      throw CorruptTable("squaring map misses class " + t.classes[c].label);
    }
    QuadraticValue v = ch.values[t.class_index(target->second)];
    v.a *= Rational(t.classes[c].size);
    v.b *= Rational(t.classes[c].size);
    s = qadd(s, v);
  }
  if (s.b != 0) throw CorruptTable("FS indicator of " + ch.name + " is irrational");
  Rational nu = s.a / Rational(t.group_order);
  if (nu != -1 && nu != 0 && nu != 1) {
    throw CorruptTable("FS indicator of " + ch.name + " is " + exact::to_string(nu) +
                       ", outside {-1,0,1}: corrupt table or power map");
  }
  return static_cast<int>(exact::num(nu));
}

int schur_lower_bound(const CharacterTable& t, std::size_t chi) {
  return frobenius_schur(t, chi) == -1 ? 2 : 1;
}

std::vector<Rational> rationalize(const CharacterTable& t, std::size_t chi, const Int& m) {
  if (m < 1) throw InputError("rationalize: multiplier must be >= 1");
  const Character& ch = t.characters.at(chi);
  const bool rational_row =
      std::all_of(ch.values.begin(), ch.values.end(),
                  [](const QuadraticValue& v) { return v.is_rational(); });
  std::vector<Rational> out;
  out.reserve(ch.values.size());
  for (const QuadraticValue& v : ch.values) {
    if (rational_row) {
      out.push_back(Rational(m) * v.a);
    } else {
      QuadraticValue orbit_sum = qadd(v, galois_conj(t.ring, v));
      // the b-parts cancel by construction
      out.push_back(Rational(m) * orbit_sum.a);
    }
  }
  return out;
}

namespace {

long long to_ll(const Int& x) { return static_cast<long long>(x); }

// residue of a rational with p-coprime denominator
long long rat_mod(const Rational& q, long long p) {
  Int d = exact::den(q) % p;
  if (d == 0) {
    throw CorruptTable("central character has denominator divisible by " + std::to_string(p));
  }
  // denominator inverse by Fermat
  long long base = to_ll(d), acc = 1, e = p - 2;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  long long n = to_ll(((exact::num(q) % p) + p) % p);
  return n * acc % p;
}

}  // namespace

BlockPartition p_blocks(const CharacterTable& t, const Int& p) {
  if (p < 2) throw InputError("p_blocks: p must be a prime");
  BlockPartition out;
  out.prime = p;
  if (t.group_order % p != 0) {
    out.prime_divides_order = false;
    out.ideal = "p does not divide the group order";
    for (std::size_t i = 0; i < t.characters.size(); ++i) out.blocks.push_back({i});
    out.principal = t.trivial_character();
    return out;
  }
  const long long pl = to_ll(p);
  // factor x^2 + u x + c mod p
  std::vector<long long> roots;
  const long long u = to_ll(((t.ring.u % p) + p) % p);
  const long long c = to_ll(((t.ring.c % p) + p) % p);
  for (long long r = 0; r < pl; ++r) {
    if ((r * r + u * r + c) % pl == 0) roots.push_back(r);
  }
  const bool inert = roots.empty();
  if (inert) {
    out.ideal = "inert";
  } else if (roots.size() == 1 || roots[0] == roots[1]) {
    out.ideal = "ramified, w -> " + std::to_string(roots[0]);
  } else {
    out.ideal = "split, w -> " + std::to_string(roots[0]);
  }

  // fingerprint of omega_chi modulo the ideal, one residue pair per class
  using Fingerprint = std::vector<std::pair<long long, long long>>;
  std::map<Fingerprint, std::size_t> block_of;
  std::vector<std::size_t> assignment(t.characters.size());
  for (std::size_t i = 0; i < t.characters.size(); ++i) {
    const Character& ch = t.characters[i];
    const Rational deg = ch.values[0].a;
    Fingerprint fp;
    fp.reserve(t.classes.size());
    for (std::size_t cidx = 0; cidx < t.classes.size(); ++cidx) {
      QuadraticValue w{Rational(t.classes[cidx].size) * ch.values[cidx].a / deg,
                       Rational(t.classes[cidx].size) * ch.values[cidx].b / deg};
      if (!is_algebraic_integer(t.ring, w)) {
        throw CorruptTable("central character of " + ch.name + " at " + t.classes[cidx].label +
                           " is not an algebraic integer");
      }
      if (inert) {
        fp.emplace_back(rat_mod(w.a, pl), rat_mod(w.b, pl));
      } else {
        fp.emplace_back((rat_mod(w.a, pl) + rat_mod(w.b, pl) * (roots[0] % pl)) % pl, 0);
      }
    }
    auto [it, inserted] = block_of.try_emplace(std::move(fp), out.blocks.size());
    if (inserted) out.blocks.push_back({});
    out.blocks[it->second].push_back(i);
    assignment[i] = it->second;
  }
  out.principal = assignment[t.trivial_character()];
  return out;
}

bool principal_block_check(const BlockPartition& partition, std::span<const std::size_t> subset) {
  const auto& principal = partition.blocks.at(partition.principal);
  for (std::size_t chi : subset) {
    if (std::find(principal.begin(), principal.end(), chi) != principal.end()) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> identify_classes(const group::FiniteMatrixGroup& g,
                                                       const CharacterTable& t) {
  if (Int(g.order()) != t.group_order) {
    throw MismatchedTable("group order " + std::to_string(g.order()) +
                          " does not match table order " + t.group_order.str());
  }
  const auto& classes = g.conjugacy_classes().classes;
  if (classes.size() != t.classes.size()) {
    throw MismatchedTable("group has " + std::to_string(classes.size()) + " classes, table has " +
                          std::to_string(t.classes.size()));
  }
  using Key = std::pair<Int, Int>;  // (element order, size)
  std::map<Key, std::vector<std::size_t>> table_by_key;
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    table_by_key[{t.classes[i].element_order, t.classes[i].size}].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out(classes.size());
  std::map<Key, std::size_t> group_count;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    Key key{Int(classes[i].element_order), Int(classes[i].members.size())};
    auto it = table_by_key.find(key);
    if (it == table_by_key.end()) {
      throw MismatchedTable("no table class of order " + key.first.str() + ", size " +
                            key.second.str());
    }
    if (++group_count[key] > it->second.size()) {
      throw MismatchedTable("too many group classes of order " + key.first.str() + ", size " +
                            key.second.str());
    }
    out[i] = it->second;
  }
  return out;
}

}  // namespace crystver::chartab
