#include "crystver/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "crystver/errors.hpp"

namespace crystver::io {

using exact::Int;
using exact::Rational;
using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

Int to_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw SchemaError(where + ": expected an integer");
}

Rational to_rational(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return exact::parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw SchemaError(where + ": " + e.what());
  }
  throw SchemaError(where + ": expected a rational as \"p/q\" string or integer");
}

exact::IntMatrix to_matrix(const json& j, std::size_t rank, const std::string& where) {
  if (!j.is_array() || j.size() != rank) {
    throw SchemaError(where + ": expected a " + std::to_string(rank) + "x" +
                      std::to_string(rank) + " integer matrix");
  }
  exact::IntMatrix m(rank, rank);
  for (std::size_t i = 0; i < rank; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != rank) {
      throw SchemaError(where + ": row " + std::to_string(i) + " does not have " +
                        std::to_string(rank) + " entries");
    }
    for (std::size_t k = 0; k < rank; ++k) m(i, k) = to_int(row[k], where);
  }
  return m;
}

}  // namespace

CrystalDescriptor parse_descriptor(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw SchemaError("descriptor: top level must be an object");
  CrystalDescriptor d;
  d.name = field(j, "name", "descriptor").get<std::string>();

  const json& gens = field(j, "generators", "descriptor");
  if (!gens.is_array() || gens.empty()) {
    throw SchemaError("descriptor.generators: expected a nonempty array of names");
  }
  std::set<std::string> seen;
  for (const json& g : gens) {
    std::string name = g.get<std::string>();
    if (name.empty() || !seen.insert(name).second) {
      throw SchemaError("descriptor.generators: names must be nonempty and unique");
    }
    d.presentation.generators.push_back(std::move(name));
  }

  for (const json& r : field(j, "relators", "descriptor")) {
    std::string rel = r.get<std::string>();
    try {
      word::parse(rel, d.presentation.generators);  // surfaces unknown generators now
    } catch (const Error& e) {
      throw SchemaError("descriptor.relators: " + std::string(e.what()));
    }
    d.presentation.relators.push_back(std::move(rel));
  }

  const json& blocks = field(j, "blocks", "descriptor");
  if (!blocks.is_array() || blocks.empty()) {
    throw SchemaError("descriptor.blocks: expected a nonempty array");
  }
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const std::string where = "descriptor.blocks[" + std::to_string(bi) + "]";
    const json& jb = blocks[bi];
    DescriptorBlock b;
    Int rank = to_int(field(jb, "rank", where), where + ".rank");
    if (rank <= 0) throw SchemaError(where + ".rank: must be positive");
    b.rank = static_cast<std::size_t>(rank);
    const json& action = field(jb, "action", where);
    const json& cocycle = field(jb, "cocycle", where);
    for (const auto& [key, value] : action.items()) {
      if (std::find(d.presentation.generators.begin(), d.presentation.generators.end(), key) ==
          d.presentation.generators.end()) {
        throw SchemaError(where + ".action: unknown generator '" + key + "'");
      }
      exact::IntMatrix m = to_matrix(value, b.rank, where + ".action." + key);
      Int det = m.determinant();
      if (det != 1 && det != -1) {
        throw SchemaError(where + ".action." + key + ": matrix is not unimodular (det = " +
                          det.str() + ")");
      }
      b.action.emplace(key, std::move(m));
    }
    for (const auto& [key, value] : cocycle.items()) {
      if (std::find(d.presentation.generators.begin(), d.presentation.generators.end(), key) ==
          d.presentation.generators.end()) {
        throw SchemaError(where + ".cocycle: unknown generator '" + key + "'");
      }
      if (!value.is_array() || value.size() != b.rank) {
        throw SchemaError(where + ".cocycle." + key + ": expected " + std::to_string(b.rank) +
                          " rational entries");
      }
      exact::RatVector v;
      for (const json& e : value) v.push_back(to_rational(e, where + ".cocycle." + key));
      b.cocycle.emplace(key, exact::mod_one(v));
    }
    for (const std::string& g : d.presentation.generators) {
      if (!b.action.count(g)) throw SchemaError(where + ".action: missing generator '" + g + "'");
      if (!b.cocycle.count(g)) {
        throw SchemaError(where + ".cocycle: missing generator '" + g + "'");
      }
    }
    d.blocks.push_back(std::move(b));
  }

  if (j.contains("expect")) {
    const json& je = j["expect"];
    DescriptorExpectations e;
    if (je.contains("order")) e.order = to_int(je["order"], "descriptor.expect.order");
    if (je.contains("torsion_free")) e.torsion_free = je["torsion_free"].get<bool>();
    if (je.contains("primes")) {
      for (const auto& [key, value] : je["primes"].items()) {
        std::size_t bi = 0;
        try {
          bi = std::stoul(key);
        } catch (...) {
          throw SchemaError("descriptor.expect.primes: bad block index '" + key + "'");
        }
        if (bi >= d.blocks.size()) {
          throw SchemaError("descriptor.expect.primes: block index " + key + " out of range");
        }
        std::vector<Int> primes;
        for (const json& p : value) primes.push_back(to_int(p, "descriptor.expect.primes"));
        e.primes.emplace(bi, std::move(primes));
      }
    }
    d.expect = std::move(e);
  }
  return d;
}

CrystalDescriptor load_descriptor(const std::filesystem::path& path) {
  return parse_descriptor(read_file(path));
}

std::vector<group::NamedGenerator> direct_sum_generators(const CrystalDescriptor& d) {
  std::vector<group::NamedGenerator> out;
  const std::size_t n = d.dimension();
  for (const std::string& g : d.presentation.generators) {
    exact::IntMatrix m(n, n);
    std::size_t off = 0;
    for (const DescriptorBlock& b : d.blocks) {
      const exact::IntMatrix& a = b.action.at(g);
      for (std::size_t i = 0; i < b.rank; ++i)
        for (std::size_t k = 0; k < b.rank; ++k) m(off + i, off + k) = a(i, k);
      off += b.rank;
    }
    out.push_back({g, std::move(m)});
  }
  return out;
}

LoadedTable parse_table(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw SchemaError("table: top level must be an object");
  LoadedTable out;
  chartab::CharacterTable& t = out.table;
  if (j.contains("name")) t.name = j["name"].get<std::string>();
  t.group_order = to_int(field(j, "order", "table"), "table.order");
  if (t.group_order <= 0) throw SchemaError("table.order: must be positive");
  const json& ring = field(j, "ring", "table");
  t.ring.u = to_int(field(ring, "u", "table.ring"), "table.ring.u");
  t.ring.c = to_int(field(ring, "c", "table.ring"), "table.ring.c");

  std::set<std::string> labels;
  for (const json& jc : field(j, "classes", "table")) {
    chartab::ClassInfo c;
    c.label = field(jc, "label", "table.classes").get<std::string>();
    c.size = to_int(field(jc, "size", "table.classes"), "table.classes.size");
    c.element_order = to_int(field(jc, "order", "table.classes"), "table.classes.order");
    if (c.size <= 0 || c.element_order <= 0) {
      throw SchemaError("table.classes: size and order must be positive");
    }
    if (!labels.insert(c.label).second) {
      throw SchemaError("table.classes: duplicate label '" + c.label + "'");
    }
    t.classes.push_back(std::move(c));
  }
  if (t.classes.empty()) throw SchemaError("table.classes: must be nonempty");

  if (j.contains("power_maps")) {
    for (const auto& [key, value] : j["power_maps"].items()) {
      Int q(key);
      std::map<std::string, std::string> pm;
      for (const auto& [from, to] : value.items()) {
        if (!labels.count(from) || !labels.count(to.get<std::string>())) {
          throw SchemaError("table.power_maps." + key + ": unknown class label");
        }
        pm.emplace(from, to.get<std::string>());
      }
      if (pm.size() != t.classes.size()) {
        throw SchemaError("table.power_maps." + key + ": map must cover every class");
      }
      t.power_maps.emplace(std::move(q), std::move(pm));
    }
  }

  std::set<std::string> char_names;
  for (const json& jc : field(j, "characters", "table")) {
    chartab::Character ch;
    ch.name = field(jc, "name", "table.characters").get<std::string>();
    if (!char_names.insert(ch.name).second) {
      throw SchemaError("table.characters: duplicate name '" + ch.name + "'");
    }
    const json& values = field(jc, "values", "table.characters");
    if (!values.is_array() || values.size() != t.classes.size()) {
      throw SchemaError("table.characters." + ch.name + ": expected " +
                        std::to_string(t.classes.size()) + " value pairs");
    }
    for (const json& v : values) {
      if (!v.is_array() || v.size() != 2) {
        throw SchemaError("table.characters." + ch.name + ": values are (a, b) pairs");
      }
      ch.values.push_back({to_rational(v[0], "table.characters." + ch.name),
                           to_rational(v[1], "table.characters." + ch.name)});
    }
    t.characters.push_back(std::move(ch));
  }
  if (t.characters.empty()) throw SchemaError("table.characters: must be nonempty");

  if (j.contains("expect")) {
    const json& je = j["expect"];
    if (je.contains("blocks")) {
      for (const auto& [key, value] : je["blocks"].items()) {
        std::vector<std::vector<std::string>> partition;
        for (const json& blk : value) {
          std::vector<std::string> names;
          for (const json& nm : blk) {
            std::string n = nm.get<std::string>();
            if (!char_names.count(n)) {
              throw SchemaError("table.expect.blocks: unknown character '" + n + "'");
            }
            names.push_back(std::move(n));
          }
          partition.push_back(std::move(names));
        }
        out.expect.blocks.emplace(Int(key), std::move(partition));
      }
    }
    if (je.contains("schur")) {
      for (const auto& [key, value] : je["schur"].items()) {
        if (!char_names.count(key)) {
          throw SchemaError("table.expect.schur: unknown character '" + key + "'");
        }
        out.expect.schur.emplace(key, to_int(value, "table.expect.schur"));
      }
    }
  }
  return out;
}

LoadedTable load_table(const std::filesystem::path& path) {
  return parse_table(read_file(path));
}

}  // namespace crystver::io
