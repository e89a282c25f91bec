#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crystver/errors.hpp"
#include "crystver/verify.hpp"

namespace {

using namespace crystver;

int run_verify(const std::string& path, const std::string& format, bool all_elements,
               bool no_mns) {
  io::CrystalDescriptor d = io::load_descriptor(path);
  io::VerifyOptions opts;
  opts.all_elements = all_elements;
  opts.run_mns = !no_mns;
  io::VerificationReport rep = io::verify(d, opts);
  if (format == "json") {
    std::cout << rep.to_json().dump(2) << "\n";
  } else {
    std::cout << rep.to_text();
  }
  return rep.exit_code(d);
}

int run_group(const std::string& path, bool want_order, bool want_solvable, bool want_perfect,
              bool want_mns) {
  io::CrystalDescriptor d = io::load_descriptor(path);
  group::FiniteMatrixGroup g = group::FiniteMatrixGroup::closure(
      group::CoefficientDomain::integers(), io::direct_sum_generators(d));
  const bool all = !(want_order || want_solvable || want_perfect || want_mns);
  if (want_order || all) std::cout << "order: " << g.order() << "\n";
  if (want_solvable || all) {
    std::cout << "solvable: " << (group::is_solvable(g) ? "true" : "false") << "\n";
  }
  if (want_perfect || all) {
    std::cout << "perfect: " << (group::is_perfect(g) ? "true" : "false") << "\n";
  }
  if (want_mns || all) std::cout << "mns: " << (group::is_mns(g) ? "true" : "false") << "\n";
  return 0;
}

int run_table(const std::string& path, const std::vector<std::string>& primes, bool fs,
              bool rationalize) {
  io::LoadedTable lt = io::load_table(path);
  io::TableReportOptions opts;
  for (const std::string& p : primes) opts.primes.push_back(exact::Int(p));
  opts.fs = fs;
  opts.rationalize = rationalize;
  io::TableReport rep = io::table_report(lt, opts);
  std::cout << rep.to_text(lt.table);
  return rep.exit_code();
}

int run_selftest(const std::string& dir) {
  struct Case {
    std::string file;
    bool is_table;
    std::vector<std::string> primes;
  };
  const std::vector<Case> cases = {
      {"klein_bottle.json", false, {}},
      {"a5_dim15.json", false, {}},
      {"l32_dim15.json", false, {}},
      {"a5_table.json", true, {"2", "3", "5"}},
      {"sl25_table.json", true, {"2", "3", "5"}},
      {"l32n23_table.json", true, {"2", "3", "7"}},
  };
  int failures = 0;
  for (const Case& c : cases) {
    const std::string path = dir + "/" + c.file;
    int code = 0;
    std::string detail;
    try {
      if (c.is_table) {
        io::LoadedTable lt = io::load_table(path);
        io::TableReportOptions opts;
        for (const std::string& p : c.primes) opts.primes.push_back(exact::Int(p));
        opts.fs = true;
        code = io::table_report(lt, opts).exit_code();
      } else {
        io::CrystalDescriptor d = io::load_descriptor(path);
        code = io::verify(d).exit_code(d);
      }
    } catch (const Error& e) {
      code = 2;
      detail = e.what();
    }
    std::cout << (code == 0 ? "PASS" : "FAIL") << " " << c.file;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (code != 0) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verifier for crystallographic-group descriptors and character tables"};
  app.require_subcommand(1);

  std::string path, format = "text", fixtures_dir = "fixtures";
  bool all_elements = false, no_mns = false;
  bool want_order = false, want_solvable = false, want_perfect = false, want_mns = false;
  bool fs = false, rationalize = false;
  std::vector<std::string> primes;

  CLI::App* verify = app.add_subcommand("verify", "verify a descriptor end to end");
  verify->add_option("descriptor", path, "descriptor JSON file")->required();
  verify->add_option("--report", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_flag("--all-elements", all_elements,
                   "test every prime-order element, not one per class");
  verify->add_flag("--no-mns", no_mns, "skip the minimal-non-solvable check");

  CLI::App* grp = app.add_subcommand("group", "holonomy group facts only");
  grp->add_option("descriptor", path, "descriptor JSON file")->required();
  grp->add_flag("--order", want_order, "print the group order");
  grp->add_flag("--solvable", want_solvable, "print solvability");
  grp->add_flag("--perfect", want_perfect, "print perfectness");
  grp->add_flag("--mns", want_mns, "print the minimal-non-solvable verdict");

  CLI::App* table = app.add_subcommand("table", "validate a character table");
  table->add_option("table", path, "character table JSON file")->required();
  table->add_option("--blocks", primes, "primes for p-block partitions")->delimiter(',');
  table->add_flag("--fs", fs, "print Frobenius-Schur indicators and Schur bounds");
  table->add_flag("--rationalize", rationalize, "print rationalized character rows");

  CLI::App* selftest = app.add_subcommand("selftest", "run the shipped fixture suite");
  selftest->add_option("fixtures", fixtures_dir, "fixture directory (default: fixtures)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify(path, format, all_elements, no_mns);
    if (app.got_subcommand(grp)) {
      return run_group(path, want_order, want_solvable, want_perfect, want_mns);
    }
    if (app.got_subcommand(table)) return run_table(path, primes, fs, rationalize);
    if (app.got_subcommand(selftest)) return run_selftest(fixtures_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
