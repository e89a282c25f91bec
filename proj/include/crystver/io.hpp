#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crystver/chartab.hpp"
#include "crystver/cocycle.hpp"
#include "crystver/group.hpp"

namespace crystver::io {

struct DescriptorBlock {
  std::size_t rank = 0;
  cohom::ActionMap action;
  cohom::Cocycle cocycle;  // canonicalized into [0,1) on load
};

struct DescriptorExpectations {
  std::optional<exact::Int> order;
  std::optional<bool> torsion_free;
  /// block index -> primes whose classes that block must certify
  std::map<std::size_t, std::vector<exact::Int>> primes;
};

/// File-level description of a crystallographic group: presentation of the
/// holonomy, one action/cocycle pair per lattice block, optional expected
/// outcomes.
struct CrystalDescriptor {
  std::string name;
  group::Presentation presentation;
  std::vector<DescriptorBlock> blocks;
  std::optional<DescriptorExpectations> expect;

  std::size_t dimension() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rank;
    return n;
  }
};

/// Parses and schema-validates a descriptor file. Rationals are parsed
/// exactly from "p/q" strings. Throws ParseError (malformed JSON, with
/// location) or SchemaError (shape violations, naming the field).
CrystalDescriptor load_descriptor(const std::filesystem::path& path);
CrystalDescriptor parse_descriptor(const std::string& text);

/// Block-diagonal direct sum of all block actions per generator.
std::vector<group::NamedGenerator> direct_sum_generators(const CrystalDescriptor& d);

struct TableExpectations {
  /// prime -> partition of character names
  std::map<exact::Int, std::vector<std::vector<std::string>>> blocks;
  /// character name -> expected Schur-index lower bound
  std::map<std::string, exact::Int> schur;
};

struct LoadedTable {
  chartab::CharacterTable table;
  TableExpectations expect;
};

LoadedTable load_table(const std::filesystem::path& path);
LoadedTable parse_table(const std::string& text);

}  // namespace crystver::io
