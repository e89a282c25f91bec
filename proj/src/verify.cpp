#include "crystver/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "crystver/errors.hpp"

namespace crystver::io {

using exact::Int;
using nlohmann::ordered_json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified_bieberbach:
      return "verified-bieberbach";
    case Verdict::verified_crystallographic_with_torsion:
      return "verified-crystallographic-with-torsion";
    case Verdict::invalid_input:
      return "invalid-input";
  }
  return "invalid-input";
}

VerificationReport verify(const CrystalDescriptor& d, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.name = d.name;
  rep.dimension = d.dimension();

  const group::CoefficientDomain dom = group::CoefficientDomain::integers();

  // stage 1: presentation per block
  for (const DescriptorBlock& b : d.blocks) {
    BlockStageReport br;
    br.rank = b.rank;
    std::vector<group::NamedGenerator> gens;
    for (const auto& [name, mat] : b.action) gens.push_back({name, mat});
    group::PresentationCheck pc = group::check_presentation(dom, gens, d.presentation);
    br.presentation_ok = pc.ok;
    br.failing_relator = pc.first_failing;
    rep.blocks.push_back(std::move(br));
  }
  for (const BlockStageReport& br : rep.blocks) {
    if (!br.presentation_ok) {
      rep.verdict = Verdict::invalid_input;
      rep.invalid_reason = "presentation fails at relator '" + br.failing_relator + "'";
      return rep;
    }
  }

  // stage 2: closure of the direct-sum action
  group::FiniteMatrixGroup holonomy =
      group::FiniteMatrixGroup::closure(dom, direct_sum_generators(d), opts.closure_cap);
  rep.holonomy_order = holonomy.order();

  // stage 3: faithfulness of the direct sum, and block-wise kernels
  {
    cohom::ActionMap full;
    for (const auto& g : direct_sum_generators(d)) full.emplace(g.name, g.matrix);
    rep.faithful = group::block_kernel(holonomy, full).is_trivial();
  }
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    rep.blocks[bi].kernel_order = group::block_kernel(holonomy, d.blocks[bi].action).order();
  }

  // stage 4: fixed rank per block (advisory gate)
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    rep.blocks[bi].fixed_rank = group::fixed_rank(holonomy, d.blocks[bi].action);
    rep.blocks[bi].fixed_rank_warning = rep.blocks[bi].fixed_rank != 0;
  }

  // stage 5: cocycle validity per block
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    cohom::CocycleCheck cc =
        cohom::validate_cocycle(d.blocks[bi].action, d.presentation, d.blocks[bi].cocycle);
    rep.blocks[bi].cocycle_valid = cc.ok;
    rep.blocks[bi].failing_cocycle_relator = cc.first_failing;
  }
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    if (!rep.blocks[bi].cocycle_valid) {
      rep.verdict = Verdict::invalid_input;
      rep.invalid_reason = "cocycle of block " + std::to_string(bi) +
                           " is not integral on relator '" +
                           rep.blocks[bi].failing_cocycle_relator + "'";
      return rep;
    }
  }

  // stage 6: torsion certificate
  std::vector<cohom::BlockData> blocks;
  for (const DescriptorBlock& b : d.blocks) blocks.push_back({b.rank, b.action, b.cocycle});
  rep.torsion = cohom::torsion_free(holonomy, blocks, opts.all_elements);

  // stage 7: holonomy predicates
  rep.solvable = group::is_solvable(holonomy);
  rep.perfect = group::is_perfect(holonomy);
  if (opts.run_mns) {
    rep.mns = group::is_mns(holonomy);
    rep.mns_checked = true;
  }

  rep.verdict = rep.torsion.torsion_free ? Verdict::verified_bieberbach
                                         : Verdict::verified_crystallographic_with_torsion;

  // stage 8: expectations
  if (d.expect) {
    const DescriptorExpectations& e = *d.expect;
    if (e.order && *e.order != Int(rep.holonomy_order)) {
      rep.expectation_failures.push_back("holonomy order is " +
                                         std::to_string(rep.holonomy_order) + ", expected " +
                                         e.order->str());
    }
    if (e.torsion_free && *e.torsion_free != rep.torsion.torsion_free) {
      rep.expectation_failures.push_back(std::string("torsion-free is ") +
                                         (rep.torsion.torsion_free ? "true" : "false") +
                                         ", expected the opposite");
    }
    for (const auto& [bi, primes] : e.primes) {
      for (const Int& p : primes) {
        bool saw_class = false;
        for (const cohom::ClassCertificate& cc : rep.torsion.classes) {
          if (Int(cc.prime) != p) continue;
          saw_class = true;
          if (!cc.blocks[bi].nontrivial) {
            rep.expectation_failures.push_back(
                "block " + std::to_string(bi) + " does not certify the order-" + p.str() +
                " class '" + cc.representative_word + "'");
          }
        }
        if (!saw_class) {
          rep.expectation_failures.push_back("no class of prime order " + p.str() +
                                             " for block " + std::to_string(bi));
        }
      }
    }
  }
  return rep;
}

int VerificationReport::exit_code(const CrystalDescriptor& d) const {
  if (verdict == Verdict::invalid_input) return 2;
  Verdict required = Verdict::verified_bieberbach;
  if (d.expect && d.expect->torsion_free && !*d.expect->torsion_free) {
    required = Verdict::verified_crystallographic_with_torsion;
  }
  if (verdict != required || !expectation_failures.empty()) return 1;
  return 0;
}

namespace {

ordered_json vector_json(const exact::IntVector& v) {
  ordered_json out = ordered_json::array();
  for (const Int& x : v) out.push_back(x.str());
  return out;
}

}  // namespace

ordered_json VerificationReport::to_json() const {
  ordered_json j;
  j["version"] = "crystver-report/1";
  j["name"] = name;
  j["verdict"] = to_string(verdict);
  if (verdict == Verdict::invalid_input) {
    j["reason"] = invalid_reason;
    return j;
  }
  j["dimension"] = dimension;
  ordered_json jh;
  jh["order"] = holonomy_order;
  jh["faithful"] = faithful;
  jh["solvable"] = solvable;
  jh["perfect"] = perfect;
  if (mns_checked) jh["mns"] = mns;
  j["holonomy"] = std::move(jh);
  ordered_json jblocks = ordered_json::array();
  for (const BlockStageReport& b : blocks) {
    ordered_json jb;
    jb["rank"] = b.rank;
    jb["presentation_ok"] = b.presentation_ok;
    jb["cocycle_valid"] = b.cocycle_valid;
    jb["fixed_rank"] = b.fixed_rank;
    if (b.fixed_rank_warning) jb["fixed_rank_warning"] = true;
    jb["kernel_order"] = b.kernel_order;
    jblocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(jblocks);
  ordered_json jt;
  jt["torsion_free"] = torsion.torsion_free;
  ordered_json jclasses = ordered_json::array();
  for (const cohom::ClassCertificate& c : torsion.classes) {
    ordered_json jc;
    jc["word"] = c.representative_word;
    jc["order"] = c.prime;
    jc["size"] = c.class_size;
    jc["covered"] = c.covered;
    ordered_json jb = ordered_json::array();
    for (const cohom::BlockOutcome& o : c.blocks) {
      ordered_json jo;
      jo["nontrivial"] = o.nontrivial;
      jo["m"] = vector_json(o.witness_m);
      if (o.lift_shift) jo["lift_shift"] = vector_json(*o.lift_shift);
      jb.push_back(std::move(jo));
    }
    jc["blocks"] = std::move(jb);
    jclasses.push_back(std::move(jc));
  }
  jt["classes"] = std::move(jclasses);
  j["torsion"] = std::move(jt);
  ordered_json je = ordered_json::array();
  for (const std::string& f : expectation_failures) je.push_back(f);
  j["expectation_failures"] = std::move(je);
  return j;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "descriptor: " << name << "\n";
  out << "verdict: " << to_string(verdict) << "\n";
  if (verdict == Verdict::invalid_input) {
    out << "reason: " << invalid_reason << "\n";
    return out.str();
  }
  out << "dimension: " << dimension << "\n";
  out << "holonomy order: " << holonomy_order << "\n";
  out << "faithful: " << (faithful ? "yes" : "no") << "\n";
  out << "holonomy solvable: " << (solvable ? "yes" : "no") << ", perfect: "
      << (perfect ? "yes" : "no");
  if (mns_checked) out << ", mns: " << (mns ? "yes" : "no");
  out << "\n";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const BlockStageReport& b = blocks[i];
    out << "block " << i << ": rank " << b.rank << ", presentation ok, cocycle valid"
        << ", fixed rank " << b.fixed_rank << (b.fixed_rank_warning ? " (warning: nonzero)" : "")
        << ", kernel order " << b.kernel_order << "\n";
  }
  out << "torsion-free: " << (torsion.torsion_free ? "yes" : "no") << "\n";
  for (const cohom::ClassCertificate& c : torsion.classes) {
    out << "  class '" << c.representative_word << "' (order " << c.prime << ", size "
        << c.class_size << "):";
    for (std::size_t bi = 0; bi < c.blocks.size(); ++bi) {
      out << " block" << bi << "=" << (c.blocks[bi].nontrivial ? "nontrivial" : "trivial");
    }
    out << (c.covered ? "" : "  ** uncovered **") << "\n";
  }
  if (!expectation_failures.empty()) {
    out << "expectation failures:\n";
    for (const std::string& f : expectation_failures) out << "  - " << f << "\n";
  } else {
    out << "expectations: met\n";
  }
  return out.str();
}

// ---- table report -----------------------------------------------------------

TableReport table_report(const LoadedTable& lt, const TableReportOptions& opts) {
  const chartab::CharacterTable& t = lt.table;
  TableReport rep;
  rep.name = t.name;
  rep.fs_requested = opts.fs;
  rep.rationalize_requested = opts.rationalize;
  chartab::TableCheck check = chartab::validate_table(t);
  rep.valid = check.ok;
  rep.violation = check.first_violation;
  if (!rep.valid) return rep;

  const bool want_fs = opts.fs || opts.rationalize || !lt.expect.schur.empty();
  if (want_fs) {
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      rep.fs.push_back(chartab::frobenius_schur(t, i));
      rep.schur.push_back(chartab::schur_lower_bound(t, i));
    }
  }
  if (opts.rationalize) {
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      rep.rationalized.push_back(chartab::rationalize(t, i, Int(rep.schur[i])));
    }
  }
  for (const Int& p : opts.primes) {
    rep.partitions.push_back(chartab::p_blocks(t, p));
  }

  // expectations
  for (const auto& [name, m] : lt.expect.schur) {
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      if (t.characters[i].name == name && Int(rep.schur[i]) != m) {
        rep.expectation_failures.push_back("schur bound of " + name + " is " +
                                           std::to_string(rep.schur[i]) + ", expected " +
                                           m.str());
      }
    }
  }
  for (const chartab::BlockPartition& part : rep.partitions) {
    auto it = lt.expect.blocks.find(part.prime);
    if (it == lt.expect.blocks.end()) continue;
    // compare as partitions of character names
    std::set<std::set<std::string>> got, want;
    for (const auto& blk : part.blocks) {
      std::set<std::string> names;
      for (std::size_t chi : blk) names.insert(t.characters[chi].name);
      got.insert(std::move(names));
    }
    for (const auto& blk : it->second) want.insert({blk.begin(), blk.end()});
    if (got != want) {
      rep.expectation_failures.push_back("p=" + part.prime.str() +
                                         " block partition differs from expectation");
    } else {
      // principal block must be the expected block containing the trivial character
      const std::string trivial = t.characters[t.trivial_character()].name;
      std::set<std::string> principal;
      for (std::size_t chi : part.blocks[part.principal]) {
        principal.insert(t.characters[chi].name);
      }
      if (!principal.count(trivial)) {
        rep.expectation_failures.push_back("p=" + part.prime.str() +
                                           " principal block misses the trivial character");
      }
    }
  }
  return rep;
}

int TableReport::exit_code() const {
  return (valid && expectation_failures.empty()) ? 0 : 1;
}

ordered_json TableReport::to_json(const chartab::CharacterTable& t) const {
  ordered_json j;
  j["version"] = "crystver-report/1";
  j["name"] = name;
  j["valid"] = valid;
  if (!valid) {
    j["violation"] = violation;
    return j;
  }
  if (fs_requested && !fs.empty()) {
    ordered_json jf, js;
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      jf[t.characters[i].name] = fs[i];
      js[t.characters[i].name] = schur[i];
    }
    j["frobenius_schur"] = std::move(jf);
    j["schur_lower_bound"] = std::move(js);
  }
  if (!rationalized.empty()) {
    ordered_json jr;
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (const exact::Rational& q : rationalized[i]) row.push_back(exact::to_string(q));
      jr[t.characters[i].name] = std::move(row);
    }
    j["rationalized"] = std::move(jr);
  }
  ordered_json jp = ordered_json::array();
  for (const chartab::BlockPartition& part : partitions) {
    ordered_json jq;
    jq["p"] = part.prime.str();
    jq["divides_order"] = part.prime_divides_order;
    jq["ideal"] = part.ideal;
    ordered_json jbs = ordered_json::array();
    for (const auto& blk : part.blocks) {
      ordered_json names = ordered_json::array();
      for (std::size_t chi : blk) names.push_back(t.characters[chi].name);
      jbs.push_back(std::move(names));
    }
    jq["blocks"] = std::move(jbs);
    jq["principal"] = part.principal;
    jp.push_back(std::move(jq));
  }
  j["p_blocks"] = std::move(jp);
  ordered_json je = ordered_json::array();
  for (const std::string& f : expectation_failures) je.push_back(f);
  j["expectation_failures"] = std::move(je);
  return j;
}

std::string TableReport::to_text(const chartab::CharacterTable& t) const {
  std::ostringstream out;
  out << "table: " << name << "\n";
  out << "valid: " << (valid ? "yes" : "no") << "\n";
  if (!valid) {
    out << "violation: " << violation << "\n";
    return out.str();
  }
  if (fs_requested && !fs.empty()) {
    out << "frobenius-schur / schur lower bound:\n";
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      out << "  " << t.characters[i].name << ": nu2 = " << fs[i] << ", m >= " << schur[i] << "\n";
    }
  }
  if (!rationalized.empty()) {
    out << "rationalized rows (m = schur lower bound):\n";
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      out << "  " << t.characters[i].name << ":";
      for (const exact::Rational& q : rationalized[i]) out << " " << exact::to_string(q);
      out << "\n";
    }
  }
  for (const chartab::BlockPartition& part : partitions) {
    out << "p = " << part.prime.str() << " (" << part.ideal << "): "
        << part.blocks.size() << " blocks\n";
    for (std::size_t b = 0; b < part.blocks.size(); ++b) {
      out << "  block " << (b + 1) << (b == part.principal ? " (principal):" : ":");
      for (std::size_t chi : part.blocks[b]) out << " " << t.characters[chi].name;
      out << "\n";
    }
  }
  if (!expectation_failures.empty()) {
    out << "expectation failures:\n";
    for (const std::string& f : expectation_failures) out << "  - " << f << "\n";
  } else {
    out << "expectations: met\n";
  }
  return out.str();
}

}  // namespace crystver::io
