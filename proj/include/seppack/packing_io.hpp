#pragma once

#include <map>
#include <optional>
#include <string>

#include "seppack/packing.hpp"

namespace sep {

// Versioned single-document JSON packing file. Numbers round-trip exactly
// (shortest decimal form), so parse(serialize(P)) == P.
struct PackingFile {
  int version = 1;
  Packing packing;
  std::map<std::string, std::string> metadata;  // seed, provenance, ...

  explicit PackingFile(Packing p) : packing(std::move(p)) {}
};

// body spec strings used by the CLI and file format:
//   disk:R  ball:R  square:H  hexagon:R  cube:H  octahedron:R
Body parse_body_spec(const std::string& spec);

PackingFile parse_packing(const std::string& json_text);
PackingFile load_packing(const std::string& path);
std::string serialize_packing(const PackingFile& f);
void save_packing(const PackingFile& f, const std::string& path);

}  // namespace sep
