// Acceptance suite: runs each shipped criterion end to end against the CLI
// binary and the library, printing one PASS/FAIL line per criterion.
//
// usage: acceptance <crystver-binary> <fixtures-dir>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crystver/chartab.hpp"
#include "crystver/cocycle.hpp"
#include "crystver/errors.hpp"
#include "crystver/normal_form.hpp"
#include "crystver/verify.hpp"

using namespace crystver;
using exact::Int;
using exact::IntMatrix;
using exact::IntVector;
using exact::Rational;
using exact::RatVector;
using nlohmann::json;

namespace {

std::string g_bin, g_fixtures;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  CliResult r;
  std::string cmd = g_bin + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) { return g_fixtures + "/" + name; }

struct Criterion {
  std::string name;
  std::function<void(std::ostringstream&)> body;  // throws / writes to fail on problems
};

class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1 and 2: the two dimension-15 constructions -------------------

void check_dim15(const std::string& file, long expected_order,
                 const std::map<long, std::vector<std::size_t>>& prime_to_blocks,
                 const std::multiset<long>& expected_class_orders, bool check_mns) {
  auto t0 = std::chrono::steady_clock::now();
  CliResult r = run_cli("verify " + fx(file) + " --report json");
  double dt = seconds_since(t0);
  require(r.code == 0, "exit code " + std::to_string(r.code) + ", expected 0");
  json rep = json::parse(r.out);
  require(rep["verdict"] == "verified-bieberbach", "verdict is not verified-bieberbach");
  require(rep["dimension"] == 15, "dimension is not 15");
  require(rep["holonomy"]["order"] == expected_order, "holonomy order mismatch");
  require(rep["holonomy"]["solvable"] == false, "holonomy must be non-solvable");
  require(rep["holonomy"]["perfect"] == true, "holonomy must be perfect");
  if (check_mns) require(rep["holonomy"]["mns"] == true, "holonomy must be MNS");
  require(rep["torsion"]["torsion_free"] == true, "torsion certificate must pass");
  std::multiset<long> class_orders;
  for (const auto& cls : rep["torsion"]["classes"]) {
    class_orders.insert(cls["order"].get<long>());
    long p = cls["order"].get<long>();
    auto it = prime_to_blocks.find(p);
    if (it != prime_to_blocks.end()) {
      for (std::size_t bi : it->second) {
        require(cls["blocks"][bi]["nontrivial"] == true,
                "block " + std::to_string(bi) + " must certify the order-" + std::to_string(p) +
                    " class " + cls["word"].get<std::string>());
      }
    }
  }
  require(class_orders == expected_class_orders, "certificate class orders mismatch");
  require(dt < 60.0, "runtime " + std::to_string(dt) + "s exceeds 60s");
}

// ---- criterion 4 helpers ------------------------------------------------------

group::FiniteMatrixGroup a5_integral() {
  io::CrystalDescriptor d = io::load_descriptor(fx("a5_dim15.json"));
  std::vector<group::NamedGenerator> gens;
  for (const auto& [name, mat] : d.blocks[0].action) gens.push_back({name, mat});
  return group::FiniteMatrixGroup::closure(group::CoefficientDomain::integers(), gens);
}

group::FiniteMatrixGroup sl2(long long p) {
  std::vector<group::NamedGenerator> gens = {
      {"s", IntMatrix(2, 2, {Int(0), Int(1), Int(p - 1), Int(0)})},
      {"t", IntMatrix(2, 2, {Int(1), Int(1), Int(0), Int(1)})}};
  return group::FiniteMatrixGroup::closure(group::CoefficientDomain::prime_field(p), gens);
}

group::FiniteMatrixGroup l32_f2() {
  std::vector<group::NamedGenerator> gens = {
      {"x", IntMatrix(3, 3, {Int(1), Int(1), Int(0), Int(0), Int(1), Int(0), Int(0), Int(0),
                             Int(1)})},
      {"y", IntMatrix(3, 3, {Int(0), Int(0), Int(1), Int(1), Int(0), Int(0), Int(0), Int(1),
                             Int(0)})}};
  return group::FiniteMatrixGroup::closure(group::CoefficientDomain::prime_field(2), gens);
}

group::FiniteMatrixGroup a5_times_c2() {
  io::CrystalDescriptor d = io::load_descriptor(fx("a5_dim15.json"));
  const IntMatrix& a4 = d.blocks[0].action.at("a");
  const IntMatrix& b4 = d.blocks[0].action.at("b");
  auto embed = [](const IntMatrix& m, int sign) {
    IntMatrix out = IntMatrix::identity(5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) out(i, j) = m(i, j);
    out(4, 4) = sign;
    return out;
  };
  std::vector<group::NamedGenerator> gens = {{"a", embed(a4, 1)},
                                             {"b", embed(b4, 1)},
                                             {"c", embed(IntMatrix::identity(4), -1)}};
  return group::FiniteMatrixGroup::closure(group::CoefficientDomain::integers(), gens);
}

// ---- criterion 5 helpers ------------------------------------------------------

bool unimodular(const IntMatrix& m) {
  Int d = m.determinant();
  return d == 1 || d == -1;
}

void snf_hnf_property_suite() {
  std::mt19937 rng(101);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_int_distribution<long long> val(-10, 10);
  for (int it = 0; it < 1000; ++it) {
    std::size_t rows = dim(rng), cols = dim(rng);
    IntMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = val(rng);

    exact::SnfResult s = exact::snf(a);
    require(s.u * a * s.v == s.d, "SNF transform identity fails");
    require(unimodular(s.u) && unimodular(s.v), "SNF transforms not unimodular");
    Int prev = 0;
    for (std::size_t i = 0; i < s.rank; ++i) {
      require(s.d(i, i) > 0, "SNF diagonal not positive");
      if (i > 0) require(s.d(i, i) % prev == 0, "SNF divisibility chain fails");
      prev = s.d(i, i);
    }
    if (rows == cols) {
      Int det = a.determinant();
      if (det != 0) {
        Int prod = 1;
        for (std::size_t i = 0; i < s.rank; ++i) prod *= s.d(i, i);
        require(prod == abs(det), "SNF determinant invariant fails");
      }
    }
    auto [h, u] = exact::hnf(a);
    require(u * a == h, "HNF transform identity fails");
    require(unimodular(u), "HNF transform not unimodular");
  }
}

void solve_integer_property_suite() {
  std::mt19937 rng(103);
  std::uniform_int_distribution<long long> val(-10, 10);
  for (int it = 0; it < 200; ++it) {
    IntMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = val(rng);
    IntVector b(3);
    if (it % 2 == 0) {
      IntVector x0(3);
      for (auto& v : x0) v = val(rng);
      b = a * x0;
    } else {
      for (auto& v : b) v = val(rng);
    }
    auto got = exact::solve_integer(a, b);
    bool brute = false;
    for (long long x0 = -10; x0 <= 10 && !brute; ++x0)
      for (long long x1 = -10; x1 <= 10 && !brute; ++x1)
        for (long long x2 = -10; x2 <= 10 && !brute; ++x2) {
          IntVector x{Int(x0), Int(x1), Int(x2)};
          if (a * x == b) brute = true;
        }
    if (got) require(a * *got == b, "claimed solution does not solve the system");
    if (brute) require(got.has_value(), "brute force found a solution the solver missed");
    if (!got) require(!brute, "solver reported infeasible but brute force solved it");
  }
}

void cocycle_recursion_suite() {
  std::mt19937 rng(107);
  static const char* atoms[] = {"a", "b", "a^-1", "b^-1", "(ab)", "[a,b]"};
  std::uniform_int_distribution<int> pick(0, 5), len(1, 4);
  for (const char* file : {"a5_dim15.json", "l32_dim15.json"}) {
    io::CrystalDescriptor d = io::load_descriptor(fx(file));
    const auto& block = d.blocks[0];
    auto rand_word = [&] {
      std::string out;
      int n = len(rng);
      for (int i = 0; i < n; ++i) {
        if (!out.empty()) out += ' ';
        out += atoms[pick(rng)];
      }
      return out;
    };
    for (int it = 0; it < 200; ++it) {
      std::string w1 = rand_word(), w2 = rand_word();
      auto parse = [&](const std::string& s) {
        return word::parse(s, d.presentation.generators);
      };
      cohom::AffineElement e1 = cohom::affine_evaluate(block.action, block.cocycle, parse(w1));
      RatVector d2 = cohom::extend_to_word(block.action, block.cocycle, parse(w2));
      RatVector lhs = cohom::extend_to_word(block.action, block.cocycle, parse(w1 + " " + w2));
      RatVector rhs = exact::add(e1.translation, e1.linear * d2);
      require(lhs == rhs, "cocycle recursion identity fails");
    }
  }
}

void coboundary_trivial_suite() {
  std::mt19937 rng(109);
  std::uniform_int_distribution<long long> numer(-3, 3), denom(1, 4);
  struct Case {
    const char* file;
    std::size_t block;
  };
  // holonomy orders 60, 168 and 2: exhaustive over every prime-order element
  for (const Case c : {Case{"a5_dim15.json", 0}, Case{"l32_dim15.json", 0},
                       Case{"klein_bottle.json", 0}}) {
    io::CrystalDescriptor d = io::load_descriptor(fx(c.file));
    const auto& block = d.blocks[c.block];
    std::vector<group::NamedGenerator> gens;
    for (const auto& [name, mat] : block.action) gens.push_back({name, mat});
    auto g = group::FiniteMatrixGroup::closure(group::CoefficientDomain::integers(), gens);
    for (int trial = 0; trial < 3; ++trial) {
      RatVector v(block.rank);
      for (auto& q : v) q = Rational(numer(rng), denom(rng));
      cohom::Cocycle cob;
      for (const auto& [name, mat] : block.action) {
        RatVector img = mat * v;
        for (std::size_t i = 0; i < v.size(); ++i) img[i] -= v[i];
        cob.emplace(name, exact::mod_one(img));
      }
      require(cohom::validate_cocycle(block.action, d.presentation, cob).ok,
              "coboundary failed validation");
      require(cohom::is_coboundary(block.action, cob), "coboundary not detected");
      std::vector<cohom::BlockData> one = {{block.rank, block.action, cob}};
      cohom::TorsionCertificate cert = cohom::torsion_free(g, one, /*all_elements=*/true);
      for (const auto& cls : cert.classes) {
        require(!cls.covered, "a coboundary restricted nontrivially");
      }
    }
  }
}

void table_mutation_suite() {
  io::LoadedTable lt = io::load_table(fx("a5_table.json"));
  require(chartab::validate_table(lt.table).ok, "pristine A_5 table must validate");
  for (std::size_t chi = 0; chi < lt.table.characters.size(); ++chi) {
    for (std::size_t c = 0; c < lt.table.classes.size(); ++c) {
      chartab::CharacterTable mutated = lt.table;
      mutated.characters[chi].values[c].a += 1;
      require(!chartab::validate_table(mutated).ok,
              "mutation at (" + std::to_string(chi) + "," + std::to_string(c) +
                  ") went undetected");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <crystver-binary> <fixtures-dir>\n";
    return 2;
  }
  g_bin = argv[1];
  g_fixtures = argv[2];

  std::vector<Criterion> criteria;

  criteria.push_back({"criterion-1 a5_dim15 verifies as a 15-dimensional Bieberbach group",
                      [](std::ostringstream&) {
                        check_dim15("a5_dim15.json", 60,
                                    {{3, {0}}, {2, {1}}, {5, {2}}},
                                    {2, 3, 5, 5}, /*check_mns=*/true);
                      }});

  criteria.push_back({"criterion-2 l32_dim15 verifies with the annotated block primes",
                      [](std::ostringstream&) {
                        check_dim15("l32_dim15.json", 168,
                                    {{2, {0}}, {3, {0}}, {7, {1}}},
                                    {2, 3, 7, 7}, /*check_mns=*/false);
                      }});

  criteria.push_back({"criterion-3 table fixture reproduces the printed block partitions",
                      [](std::ostringstream&) {
                        CliResult r = run_cli("table " + fx("l32n23_table.json") +
                                              " --blocks 2,3,7");
                        require(r.code == 0, "table CLI exit " + std::to_string(r.code));
                        io::LoadedTable lt = io::load_table(fx("l32n23_table.json"));
                        auto part = [&](int p) { return chartab::p_blocks(lt.table, p); };
                        chartab::BlockPartition b2 = part(2);
                        require(b2.blocks.size() == 1 && b2.blocks[0].size() == 11,
                                "p=2 must have a single block of 11");
                        chartab::BlockPartition b3 = part(3);
                        auto names = [&](const std::vector<std::size_t>& blk) {
                          std::set<std::string> out;
                          for (std::size_t chi : blk) out.insert(lt.table.characters[chi].name);
                          return out;
                        };
                        std::set<std::set<std::string>> got3;
                        for (const auto& blk : b3.blocks) got3.insert(names(blk));
                        std::set<std::set<std::string>> want3 = {
                            {"chi_1", "chi_5", "chi_8"}, {"chi_2"}, {"chi_3"}, {"chi_4"},
                            {"chi_6", "chi_7", "chi_9"}, {"chi_10"}, {"chi_11"}};
                        require(got3 == want3, "p=3 partition mismatch");
                        require(names(b3.blocks[b3.principal]) ==
                                    std::set<std::string>{"chi_1", "chi_5", "chi_8"},
                                "p=3 principal block mismatch");
                        chartab::BlockPartition b7 = part(7);
                        std::set<std::set<std::string>> got7;
                        for (const auto& blk : b7.blocks) got7.insert(names(blk));
                        std::set<std::set<std::string>> want7 = {
                            {"chi_1", "chi_2", "chi_3", "chi_4", "chi_8"}, {"chi_5"},
                            {"chi_6"}, {"chi_7"}, {"chi_9"}, {"chi_10"}, {"chi_11"}};
                        require(got7 == want7, "p=7 partition mismatch");
                        require(names(b7.blocks[b7.principal]) ==
                                    std::set<std::string>{"chi_1", "chi_2", "chi_3", "chi_4",
                                                          "chi_8"},
                                "p=7 principal block mismatch");
                        // the degree-7 faithful characters avoid the principal 3-block
                        std::vector<std::size_t> faithful;
                        for (std::size_t i = 0; i < lt.table.characters.size(); ++i) {
                          const std::string& n = lt.table.characters[i].name;
                          if (n == "chi_6" || n == "chi_7") faithful.push_back(i);
                        }
                        require(chartab::principal_block_check(b3, faithful),
                                "chi_6/chi_7 must avoid the principal 3-block");
                      }});

  criteria.push_back(
      {"criterion-4 MNS verdicts for A_5, SL_2(5), L_3(2), SL_2(7) and A_5 x C_2",
       [](std::ostringstream& detail) {
         struct Case {
           const char* name;
           std::function<group::FiniteMatrixGroup()> build;
           std::size_t order;
           bool mns;
         };
         const std::vector<Case> cases = {
             {"A_5", [] { return a5_integral(); }, 60, true},
             {"SL_2(5)", [] { return sl2(5); }, 120, true},
             {"L_3(2)", [] { return l32_f2(); }, 168, true},
             {"SL_2(7)", [] { return sl2(7); }, 336, true},
             {"A_5xC_2", [] { return a5_times_c2(); }, 120, false},
         };
         for (const Case& c : cases) {
           auto t0 = std::chrono::steady_clock::now();
           group::FiniteMatrixGroup g = c.build();
           require(g.order() == c.order, std::string(c.name) + " order mismatch");
           bool mns = group::is_mns(g);
           require(mns == c.mns, std::string(c.name) + " MNS verdict wrong");
           if (c.mns) {
             require(group::is_perfect(g), std::string(c.name) + " is MNS but not perfect");
             require(group::unique_maximal_normal(g).has_value(),
                     std::string(c.name) + " is MNS without a unique maximal normal subgroup");
           }
           double dt = seconds_since(t0);
           require(dt < 300.0, std::string(c.name) + " exceeded 5 minutes");
           detail << c.name << "=" << (mns ? "mns" : "not-mns") << "(" << std::fixed
                  << std::setprecision(2) << dt << "s) ";
         }
       }});

  criteria.push_back({"criterion-5 property suites (SNF/HNF, solve, recursion, coboundary, "
                      "mutation)",
                      [](std::ostringstream&) {
                        snf_hnf_property_suite();
                        solve_integer_property_suite();
                        cocycle_recursion_suite();
                        coboundary_trivial_suite();
                        table_mutation_suite();
                      }});

  criteria.push_back(
      {"criterion-6 deterministic reports and the 0/1/2 exit-code contract",
       [](std::ostringstream&) {
         for (const char* f : {"a5_dim15.json", "l32_dim15.json", "klein_bottle.json"}) {
           CliResult r1 = run_cli("verify " + fx(f) + " --report json");
           CliResult r2 = run_cli("verify " + fx(f) + " --report json");
           require(r1.code == 0 && r2.code == 0, std::string(f) + " must exit 0");
           require(r1.out == r2.out, std::string(f) + " reports are not byte-identical");
         }
         CliResult zero = run_cli("verify " + fx("negative/a5_zero_cocycle.json"));
         require(zero.code == 1, "zero-cocycle fixture must exit 1, got " +
                                     std::to_string(zero.code));
         CliResult bad = run_cli("verify " + fx("negative/malformed.json"));
         require(bad.code == 2, "malformed fixture must exit 2, got " +
                                    std::to_string(bad.code));
         CliResult shape = run_cli("verify " + fx("negative/bad_block_shape.json"));
         require(shape.code == 2, "bad-shape fixture must exit 2");
         CliResult flag = run_cli("verify --not-a-flag x.json");
         require(flag.code == 2, "unknown flag must exit 2");
         CliResult grp = run_cli("group " + fx("a5_dim15.json") + " --order --mns");
         require(grp.code == 0 && grp.out.find("order: 60") != std::string::npos &&
                     grp.out.find("mns: true") != std::string::npos,
                 "group subcommand output unexpected");
         CliResult nomns = run_cli("verify " + fx("klein_bottle.json") +
                                   " --no-mns --report json");
         require(nomns.code == 0 &&
                     json::parse(nomns.out)["holonomy"].contains("mns") == false,
                 "--no-mns must omit the MNS verdict");
       }});

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::ostringstream detail;
    try {
      c.body(detail);
      std::cout << "PASS " << c.name;
      if (!detail.str().empty()) std::cout << " [" << detail.str() << "]";
      std::cout << "\n";
    } catch (const std::exception& e) {
      std::cout << "FAIL " << c.name << ": " << e.what() << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
