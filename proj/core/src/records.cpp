#include "offshell/records.hpp"

#include <cstdio>

#include "json.hpp"
#include "offshell/error.hpp"

#ifndef OFFSHELL_VERSION
#define OFFSHELL_VERSION "0.0.0"
#endif

namespace offshell {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json parse_config(std::string_view config_json) {
  try {
    return nlohmann::json::parse(config_json.begin(), config_json.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed config JSON: ") + e.what());
  }
}

}  // namespace

std::string_view version() noexcept { return OFFSHELL_VERSION; }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(std::string_view config_json) {
  return fnv1a_hex(parse_config(config_json).dump());
}

void write_csv(std::ostream& os, const std::vector<Record>& records, std::string_view config_json) {
  os << "# offshell_gf " << version() << " config_hash=" << config_hash(config_json) << "\n";
  os << kCsvColumns << "\n";
  for (const auto& r : records) {
    os << fmt(r.t) << ',' << fmt(r.r) << ',' << fmt(r.tau) << ',' << fmt(r.q) << ',' << r.region << ','
       << r.variant << ',' << (r.value ? fmt(*r.value) : std::string()) << ',' << fmt(r.abs_err) << ','
       << r.flags << "\n";
  }
}

void write_json(std::ostream& os, const std::vector<Record>& records, std::string_view config_json) {
  nlohmann::ordered_json doc;
  const auto cfg = parse_config(config_json);
  doc["version"] = std::string(version());
  doc["config_hash"] = fnv1a_hex(cfg.dump());
  doc["config"] = cfg;
  doc["columns"] = nlohmann::json::array({"t", "r", "tau", "Q", "region", "variant", "value", "abs_err", "flags"});
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json o;
    o["t"] = r.t;
    o["r"] = r.r;
    o["tau"] = r.tau;
    o["Q"] = r.q;
    o["region"] = r.region;
    o["variant"] = r.variant;
    o["value"] = r.value ? nlohmann::ordered_json(*r.value) : nlohmann::ordered_json(nullptr);
    o["abs_err"] = r.abs_err;
    o["flags"] = r.flags;
    arr.push_back(std::move(o));
  }
  doc["records"] = std::move(arr);
  os << doc.dump(2) << "\n";
}

}  // namespace offshell
