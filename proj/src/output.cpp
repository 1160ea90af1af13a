#include "binhk/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace binhk {

namespace {

// Integers that fit are emitted as JSON numbers, huge ones as strings.
Json int_json(const Int &v) {
  if (v.fits_slong_p()) return Json((long long)v.get_si());
  return Json(v.get_str());
}

std::string plain(const Json &v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

Json rational_json(const Rat &r) {
  Rat c = r;
  c.canonicalize();
  Json j;
  j["num"] = int_json(c.get_num());
  j["den"] = int_json(c.get_den());
  return j;
}

std::string emit_json(const Json &doc) { return doc.dump(2) + "\n"; }

std::string emit_csv(const Json &doc) {
  std::ostringstream os;
  if (doc.contains("model")) os << "model," << doc["model"].get<std::string>() << "\n";
  if (doc.contains("ideal")) os << "ideal," << doc["ideal"].get<std::string>() << "\n";
  if (doc.contains("series")) {
    os << "q,count\n";
    for (const Json &row : doc["series"])
      os << plain(row["q"]) << "," << plain(row["count"]) << "\n";
  }
  if (doc.contains("ehk")) {
    const Json &e = doc["ehk"];
    os << "ehk," << plain(e["num"]) << "/" << plain(e["den"]) << ","
       << e["method"].get<std::string>() << "\n";
  }
  if (doc.contains("refusal")) {
    const Json &r = doc["refusal"];
    os << "refusal," << r["precondition"].get<std::string>() << "\n";
  }
  return os.str();
}

std::string fnv1a_hex(const std::string &data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

SidecarCache::SidecarCache(std::string path, int version)
    : path_(std::move(path)), version_(version), entries_(Json::object()) {
  std::ifstream in(path_);
  if (!in) return;
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception &) {
    return;  // corrupt sidecar: start over
  }
  if (!doc.is_object() || !doc.contains("version") ||
      !doc["version"].is_number_integer() ||
      doc["version"].get<int>() != version_ || !doc.contains("entries") ||
      !doc["entries"].is_object())
    return;
  entries_ = doc["entries"];
}

std::optional<Json> SidecarCache::get(const std::string &key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return *it;
}

void SidecarCache::put(const std::string &key, Json value) {
  entries_[key] = std::move(value);
  Json doc;
  doc["version"] = version_;
  doc["entries"] = entries_;
  std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;  // cache is best effort; results are still computed
    out << doc.dump(2) << "\n";
  }
  std::rename(tmp.c_str(), path_.c_str());
}

}  // namespace binhk
