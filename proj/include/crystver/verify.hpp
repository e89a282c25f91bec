#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "crystver/io.hpp"

namespace crystver::io {

enum class Verdict {
  verified_bieberbach,
  verified_crystallographic_with_torsion,
  invalid_input,
};

std::string to_string(Verdict v);

struct VerifyOptions {
  bool all_elements = false;  ///< test every prime-order element, not one per class
  bool run_mns = true;
  std::size_t closure_cap = group::FiniteMatrixGroup::kDefaultCap;
};

struct BlockStageReport {
  std::size_t rank = 0;
  bool presentation_ok = false;
  std::string failing_relator;
  bool cocycle_valid = false;
  std::string failing_cocycle_relator;
  std::size_t fixed_rank = 0;
  bool fixed_rank_warning = false;  ///< nonzero fixed rank (advisory, see Klein bottle)
  std::size_t kernel_order = 0;     ///< block-wise kernel inside the holonomy
};

struct VerificationReport {
  std::string name;
  Verdict verdict = Verdict::invalid_input;
  std::string invalid_reason;  ///< set when verdict == invalid_input
  std::size_t dimension = 0;
  std::size_t holonomy_order = 0;
  bool faithful = false;  ///< direct-sum kernel is trivial
  std::vector<BlockStageReport> blocks;
  cohom::TorsionCertificate torsion;
  bool solvable = false;
  bool perfect = false;
  bool mns = false;
  bool mns_checked = false;
  std::vector<std::string> expectation_failures;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;

  /// 0 verified per expectations, 1 completed with failed verdict or
  /// expectation mismatch, 2 invalid input.
  int exit_code(const CrystalDescriptor& d) const;
};

/// Runs the full pipeline: per-block presentation check, direct-sum
/// closure, faithfulness, fixed ranks (warning when nonzero), cocycle
/// validation, torsion certificate, holonomy predicates, expectations.
VerificationReport verify(const CrystalDescriptor& d, const VerifyOptions& opts = {});

struct TableReportOptions {
  std::vector<exact::Int> primes;  ///< p-block partitions to compute
  bool fs = false;                 ///< report FS indicators and Schur bounds
  bool rationalize = false;        ///< report rationalized rows
};

struct TableReport {
  std::string name;
  bool fs_requested = false;
  bool rationalize_requested = false;
  bool valid = false;
  std::string violation;
  std::vector<int> fs;
  std::vector<int> schur;
  std::vector<std::vector<exact::Rational>> rationalized;
  std::vector<chartab::BlockPartition> partitions;
  std::vector<std::string> expectation_failures;

  nlohmann::ordered_json to_json(const chartab::CharacterTable& t) const;
  std::string to_text(const chartab::CharacterTable& t) const;
  int exit_code() const;  ///< 0 valid and expectations met, else 1
};

TableReport table_report(const LoadedTable& lt, const TableReportOptions& opts);

}  // namespace crystver::io
