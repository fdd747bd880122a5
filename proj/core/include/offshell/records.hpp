#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace offshell {

std::string_view version() noexcept;

/// 64-bit FNV-1a over the bytes, printed as 16 lower-case hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Hash of a JSON document after normalisation (parsed and re-dumped with
/// sorted keys). Throws InvalidArgument on malformed JSON.
std::string config_hash(std::string_view config_json);

/// One evaluated point. A missing value means the point was masked, e.g. on
/// a cone inside a slice.
struct Record {
  double t = 0.0;
  double r = 0.0;
  double tau = 0.0;
  double q = 0.0;
  std::string region;
  std::string variant;
  std::optional<double> value;
  double abs_err = 0.0;
  std::string flags;
};

inline constexpr std::string_view kCsvColumns = "t,r,tau,Q,region,variant,value,abs_err,flags";

/// CSV with a leading '# offshell_gf <version> config_hash=<hash>' line.
/// Masked values are written as empty fields. Doubles use 17 significant digits.
void write_csv(std::ostream& os, const std::vector<Record>& records, std::string_view config_json);

/// {"version", "config_hash", "config", "columns", "records": [...]} with null
/// for masked values.
void write_json(std::ostream& os, const std::vector<Record>& records, std::string_view config_json);

}  // namespace offshell
