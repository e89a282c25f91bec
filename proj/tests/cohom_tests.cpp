#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crystver/cocycle.hpp"
#include "crystver/errors.hpp"
#include "crystver/verify.hpp"
#include "test_util.hpp"

using namespace crystver;
using namespace crystver::cohom;
using exact::Int;
using exact::IntMatrix;
using exact::Rational;
using exact::RatVector;
using testutil::im;
using testutil::rv;

namespace {

const std::vector<std::string> kAB = {"a", "b"};

word::Word w(const std::string& text, const std::vector<std::string>& names = kAB) {
  return word::parse(text, names);
}

io::CrystalDescriptor a5() { return testutil::load_fixture("a5_dim15.json"); }
io::CrystalDescriptor l32() { return testutil::load_fixture("l32_dim15.json"); }

group::FiniteMatrixGroup holonomy_of(const io::CrystalDescriptor& d) {
  return group::FiniteMatrixGroup::closure(group::CoefficientDomain::integers(),
                                           io::direct_sum_generators(d));
}

// random positive/negative word over a and b
std::string random_word(std::mt19937& rng, int len) {
  static const char* atoms[] = {"a", "b", "a^-1", "b^-1", "(ab)", "[a,b]"};
  std::uniform_int_distribution<int> pick(0, 5);
  std::string out;
  for (int i = 0; i < len; ++i) {
    if (!out.empty()) out += ' ';
    out += atoms[pick(rng)];
  }
  return out;
}

Cocycle coboundary_from(const ActionMap& action, const RatVector& v) {
  Cocycle out;
  for (const auto& [name, mat] : action) {
    RatVector img = mat * v;
    for (std::size_t i = 0; i < v.size(); ++i) img[i] -= v[i];
    out.emplace(name, exact::mod_one(img));
  }
  return out;
}

}  // namespace

TEST_CASE("extension over words") {
  auto d = a5();
  const ActionMap& act = d.blocks[0].action;
  const Cocycle& coc = d.blocks[0].cocycle;

  CHECK(extend_to_word(act, coc, w("")) == RatVector(4));
  CHECK(extend_to_word(act, coc, w("a^2")) == rv({"0", "1", "1", "-1"}));

  // defining recursion d(w1 w2) = d(w1) + rho(w1) d(w2) on random words
  std::mt19937 rng(23);
  for (int it = 0; it < 200; ++it) {
    std::string w1 = random_word(rng, 1 + it % 4), w2 = random_word(rng, 1 + (it / 4) % 4);
    AffineElement e1 = affine_evaluate(act, coc, w(w1));
    RatVector d2 = extend_to_word(act, coc, w(w2));
    RatVector lhs = extend_to_word(act, coc, w(w1 + " " + w2));
    RatVector rhs = exact::add(e1.translation, e1.linear * d2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("affine element algebra") {
  AffineElement id = affine_identity(3);
  AffineElement x{im({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), rv({"1/2", "0", "1/3"})};
  CHECK(affine_mul(x, affine_inverse(x)) == id);
  CHECK(affine_mul(affine_inverse(x), x) == id);
  CHECK(affine_pow(x, 0) == id);
  CHECK(affine_pow(x, 3).linear == IntMatrix::identity(3));
}

TEST_CASE("validate_cocycle") {
  auto d = a5();
  // zero cocycle is always valid
  Cocycle zero;
  for (const std::string& g : kAB) zero.emplace(g, RatVector(4));
  CHECK(validate_cocycle(d.blocks[0].action, d.presentation, zero).ok);

  for (const auto& block : d.blocks) {
    CHECK(validate_cocycle(block.action, d.presentation, block.cocycle).ok);
  }
  for (const auto& block : l32().blocks) {
    CHECK(validate_cocycle(block.action, l32().presentation, block.cocycle).ok);
  }

  // perturbing d(a)[0] by 1/7 breaks exactly at a^2 (row 1 of I + rho(a) is (2,0,0,0))
  Cocycle bad = d.blocks[0].cocycle;
  bad["a"][0] += Rational(1, 7);
  CocycleCheck cc = validate_cocycle(d.blocks[0].action, d.presentation, bad);
  CHECK_FALSE(cc.ok);
  CHECK(cc.first_failing == "a^2");
  CHECK(extend_to_word(d.blocks[0].action, bad, w("a^2"))[0] == Rational(2, 7));
}

TEST_CASE("is_coboundary") {
  auto d = a5();
  const ActionMap& act = d.blocks[0].action;
  Cocycle zero;
  for (const std::string& g : kAB) zero.emplace(g, RatVector(4));
  CHECK(is_coboundary(act, zero));

  Cocycle built = coboundary_from(act, rv({"1/3", "1/5", "0", "0"}));
  CHECK(validate_cocycle(act, d.presentation, built).ok);
  CHECK(is_coboundary(act, built));

  CHECK_FALSE(is_coboundary(act, d.blocks[0].cocycle));
  CHECK_FALSE(is_coboundary(d.blocks[1].action, d.blocks[1].cocycle));
}

TEST_CASE("restriction on rank-1 examples") {
  const std::vector<std::string> just_g = {"g"};
  ActionMap trivial;
  trivial.emplace("g", IntMatrix::identity(1));
  Cocycle half;
  half.emplace("g", rv({"1/2"}));
  // trivial action, t = 1/2, p = 2: N = (2), m = (1), 2z = -1 unsolvable
  Restriction r = restriction_nontrivial(trivial, half, w("g", just_g), 2);
  CHECK(r.nontrivial);
  CHECK(r.witness_m == exact::IntVector{Int(1)});

  ActionMap sign;
  sign.emplace("g", im({{-1}}));
  // (-1, 1/2) squares to the identity: restriction trivial
  Restriction r2 = restriction_nontrivial(sign, half, w("g", just_g), 2);
  CHECK_FALSE(r2.nontrivial);
  CHECK(r2.witness_m == exact::IntVector{Int(0)});
  REQUIRE(r2.lift_shift.has_value());
  // the lift (rho(g), t + z) has order exactly 2
  AffineElement lift{im({{-1}}), rv({"1/2"})};
  lift.translation[0] += Rational((*r2.lift_shift)[0]);
  CHECK(affine_pow(lift, 2) == affine_identity(1));
}

TEST_CASE("restriction on the shipped lattice blocks") {
  auto d = a5();
  Restriction rb =
      restriction_nontrivial(d.blocks[0].action, d.blocks[0].cocycle, w("b"), 3);
  CHECK(rb.nontrivial);
  CHECK(rb.witness_m == exact::IntVector{Int(1), Int(1), Int(1), Int(1)});

  Restriction ra =
      restriction_nontrivial(d.blocks[1].action, d.blocks[1].cocycle, w("a"), 2);
  CHECK(ra.nontrivial);
  CHECK(ra.witness_m == exact::IntVector{Int(1), Int(0), Int(0), Int(1), Int(-1)});
}

TEST_CASE("restriction errors") {
  auto d = a5();
  // rho(a) has order 2, which does not divide 3
  CHECK_THROWS_AS(
      restriction_nontrivial(d.blocks[0].action, d.blocks[0].cocycle, w("a"), 3),
      InputError);
  // an order-4 action matrix cannot certify p = 2 either
  const std::vector<std::string> just_g = {"g"};
  ActionMap rot;
  rot.emplace("g", im({{0, -1}, {1, 0}}));
  Cocycle zero2;
  zero2.emplace("g", exact::RatVector(2));
  CHECK_THROWS_AS(restriction_nontrivial(rot, zero2, w("g", just_g), 2), InputError);
  // invalid cocycle: m fails integrality
  Cocycle bad;
  bad.emplace("a", rv({"1/7", "0", "0", "0"}));
  bad.emplace("b", RatVector(4));
  CHECK_THROWS_AS(restriction_nontrivial(d.blocks[0].action, bad, w("a"), 2),
                  InvalidCocycle);
}

TEST_CASE("torsion certificates of the fixtures") {
  auto d5 = a5();
  auto g5 = holonomy_of(d5);
  std::vector<BlockData> blocks;
  for (const auto& b : d5.blocks) blocks.push_back({b.rank, b.action, b.cocycle});
  TorsionCertificate cert = torsion_free(g5, blocks);
  CHECK(cert.torsion_free);
  REQUIRE(cert.classes.size() == 4);
  // frozen class-by-block matrix: orders (2,3,5,5) certified by blocks (1,0,2,2)
  auto pattern = [&](std::size_t i) {
    std::vector<bool> out;
    for (const auto& b : cert.classes[i].blocks) out.push_back(b.nontrivial);
    return out;
  };
  CHECK(cert.classes[0].prime == 2);
  CHECK(pattern(0) == std::vector<bool>{false, true, false});
  CHECK(cert.classes[1].prime == 3);
  CHECK(pattern(1) == std::vector<bool>{true, false, false});
  CHECK(cert.classes[2].prime == 5);
  CHECK(pattern(2) == std::vector<bool>{false, false, true});
  CHECK(cert.classes[3].prime == 5);
  CHECK(pattern(3) == std::vector<bool>{false, false, true});

  auto dl = l32();
  auto gl = holonomy_of(dl);
  std::vector<BlockData> lblocks;
  for (const auto& b : dl.blocks) lblocks.push_back({b.rank, b.action, b.cocycle});
  TorsionCertificate lcert = torsion_free(gl, lblocks);
  CHECK(lcert.torsion_free);
  REQUIRE(lcert.classes.size() == 4);  // orders 2, 3, 7, 7 (order 4 is not prime)
  CHECK(lcert.classes[0].prime == 2);
  CHECK(lcert.classes[0].blocks[0].nontrivial);
  CHECK(lcert.classes[1].prime == 3);
  CHECK(lcert.classes[1].blocks[0].nontrivial);
  CHECK(lcert.classes[2].prime == 7);
  CHECK(lcert.classes[2].blocks[1].nontrivial);
  CHECK(lcert.classes[3].prime == 7);
  CHECK(lcert.classes[3].blocks[1].nontrivial);
}

TEST_CASE("zero cocycle has torsion everywhere") {
  auto d = a5();
  auto g = holonomy_of(d);
  std::vector<BlockData> blocks;
  for (const auto& b : d.blocks) {
    Cocycle zero;
    for (const std::string& gn : kAB) zero.emplace(gn, RatVector(b.rank));
    blocks.push_back({b.rank, b.action, zero});
  }
  TorsionCertificate cert = torsion_free(g, blocks);
  CHECK_FALSE(cert.torsion_free);
  for (const auto& c : cert.classes) CHECK_FALSE(c.covered);
}

TEST_CASE("verdicts are conjugation invariant") {
  auto d = a5();
  auto g = holonomy_of(d);
  std::vector<std::string> names = {"a", "b"};
  std::mt19937 rng(29);
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  for (const auto& cls : g.conjugacy_classes().classes) {
    if (cls.element_order != 2 && cls.element_order != 3 && cls.element_order != 5) continue;
    std::string base = g.word_for(cls.representative);
    for (int it = 0; it < 5; ++it) {
      std::string h = g.word_for(pick(rng));
      std::string conj = "(" + h + ")(" + base + ")(" + h + ")^-1";
      for (const auto& b : d.blocks) {
        Restriction r0 = restriction_nontrivial(b.action, b.cocycle, w(base),
                                                Int(cls.element_order));
        Restriction r1 = restriction_nontrivial(b.action, b.cocycle, w(conj),
                                                Int(cls.element_order));
        CHECK(r0.nontrivial == r1.nontrivial);
      }
    }
  }
}

TEST_CASE("coboundaries restrict trivially everywhere (exhaustive, order <= 168)") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<long long> numer(-3, 3);
  std::uniform_int_distribution<long long> denom(1, 4);

  auto exhaust = [&](const io::CrystalDescriptor& d, std::size_t block_index) {
    const auto& block = d.blocks[block_index];
    // single-block holonomy for this action
    std::vector<group::NamedGenerator> gens;
    for (const auto& [name, mat] : block.action) gens.push_back({name, mat});
    auto g = group::FiniteMatrixGroup::closure(group::CoefficientDomain::integers(), gens);
    for (int trial = 0; trial < 3; ++trial) {
      RatVector v(block.rank);
      for (auto& q : v) q = Rational(numer(rng), denom(rng));
      Cocycle cob = coboundary_from(block.action, v);
      REQUIRE(validate_cocycle(block.action, d.presentation, cob).ok);
      REQUIRE(is_coboundary(block.action, cob));
      std::vector<BlockData> one = {{block.rank, block.action, cob}};
      TorsionCertificate cert = torsion_free(g, one, /*all_elements=*/true);
      for (const auto& c : cert.classes) {
        CHECK_FALSE(c.covered);  // every prime-order element restricts trivially
      }
    }
  };
  exhaust(a5(), 0);   // order 60
  exhaust(l32(), 0);  // order 168
}

TEST_CASE("affine order-p consistency of the certificates") {
  auto check_fixture = [&](const io::CrystalDescriptor& d) {
    auto g = holonomy_of(d);
    std::vector<BlockData> blocks;
    for (const auto& b : d.blocks) blocks.push_back({b.rank, b.action, b.cocycle});
    TorsionCertificate cert = torsion_free(g, blocks);
    std::mt19937 rng(37);
    std::uniform_int_distribution<long long> shift(-1, 1);
    for (const auto& c : cert.classes) {
      word::Word gw = w(c.representative_word);
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        AffineElement base = affine_evaluate(blocks[bi].action, blocks[bi].cocycle, gw);
        const BlockOutcome& o = c.blocks[bi];
        if (!o.nontrivial) {
          REQUIRE(o.lift_shift.has_value());
          AffineElement lift = base;
          for (std::size_t i = 0; i < lift.translation.size(); ++i) {
            lift.translation[i] += Rational((*o.lift_shift)[i]);
          }
          CHECK(affine_pow(lift, c.prime) == affine_identity(blocks[bi].rank));
        } else {
          for (int it = 0; it < 40; ++it) {
            AffineElement lift = base;
            for (auto& t : lift.translation) t += Rational(shift(rng));
            CHECK_FALSE(affine_pow(lift, c.prime) == affine_identity(blocks[bi].rank));
          }
        }
      }
    }
  };
  check_fixture(a5());
  check_fixture(l32());
}

TEST_CASE("m is integral on every validated fixture class") {
  for (const char* name : {"a5_dim15.json", "l32_dim15.json", "klein_bottle.json"}) {
    auto d = testutil::load_fixture(name);
    auto g = holonomy_of(d);
    std::vector<BlockData> blocks;
    for (const auto& b : d.blocks) blocks.push_back({b.rank, b.action, b.cocycle});
    // torsion_free asserts integrality of every m internally; reaching the
    // certificate at all is the check, plus the witnesses are present
    TorsionCertificate cert = torsion_free(g, blocks);
    for (const auto& c : cert.classes) {
      for (const auto& o : c.blocks) CHECK(o.witness_m.size() > 0);
    }
  }
}
