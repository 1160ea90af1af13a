#pragma once

// Result emission (JSON and its CSV mirror) and the per-input-file result
// cache. Field ordering is fixed, rationals come out as {"num","den"} in
// JSON and "num/den" in CSV, and every document ends with a newline.

#include <json.hpp>
#include <optional>
#include <string>

#include "binhk/hk.hpp"

namespace binhk {

using Json = nlohmann::ordered_json;

Json rational_json(const Rat &r);

// Serialized document with a trailing newline.
std::string emit_json(const Json &doc);

// CSV mirror of the result schema: metadata rows, then the series table
// and/or the multiplicity row, with the exact same values.
std::string emit_csv(const Json &doc);

// 64-bit FNV-1a, printed as 16 hex digits; used for cache keys and for
// partition signature hashes.
std::string fnv1a_hex(const std::string &data);

// One JSON sidecar per input file: {"version": v, "entries": {key: value}}.
// A missing, unreadable or version-mismatched sidecar counts as empty, and
// writes go through a temp file plus rename so readers never observe a
// partial file.
class SidecarCache {
 public:
  SidecarCache(std::string path, int version);

  std::optional<Json> get(const std::string &key) const;
  void put(const std::string &key, Json value);

  const std::string &path() const { return path_; }

 private:
  std::string path_;
  int version_;
  Json entries_;
};

}  // namespace binhk
