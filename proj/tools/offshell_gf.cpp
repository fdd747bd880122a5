#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "offshell/core.hpp"
#include "offshell/error.hpp"
#include "offshell/greens.hpp"
#include "offshell/records.hpp"
#include "offshell/verify.hpp"

using namespace offshell;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string variant = "CANONICAL";
  std::string signature = "O41";
  std::string config;
  std::string out;
  std::string format = "csv";
  std::optional<double> tol;
  std::optional<std::size_t> max_evals;
};

bool domain_error(ErrorCode c) {
  return c == ErrorCode::InvalidArgument || c == ErrorCode::OnSingularSupport ||
         c == ErrorCode::UndefinedAtTauZero || c == ErrorCode::Degenerate;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  try {
    auto j = nlohmann::json::parse(read_file(path));
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad config: ") + e.what());
  }
}

Signature parse_signature(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "O41" || s == "O(4,1)" || s == "+1" || s == "1") return Signature::o41();
  if (s == "O32" || s == "O(3,2)" || s == "-1") return Signature::o32();
  throw Error(ErrorCode::InvalidArgument, "unknown signature '" + s + "' (use O41 or O32)");
}

std::string signature_name(Signature s) { return s.is_o41() ? "O41" : "O32"; }

// Runs body with output bound to --out or stdout.
template <typename F>
void with_output(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  body(os);
}

void emit(const Common& c, const std::vector<Record>& recs, const std::string& cfg) {
  with_output(c.out, [&](std::ostream& os) {
    if (c.format == "json") {
      write_json(os, recs, cfg);
    } else {
      write_csv(os, recs, cfg);
    }
  });
}

Record make_record(const Event5& e, GFVariant v, std::optional<double> value, std::string flags) {
  Record r;
  r.t = e.t();
  r.r = e.r();
  r.tau = e.tau();
  r.q = e.q();
  r.region = std::string(to_string(classify(e)));
  r.variant = std::string(to_string(v));
  r.value = value;
  if (known_erroneous(v)) flags = flags.empty() ? "known-erroneous" : "known-erroneous;" + flags;
  r.flags = std::move(flags);
  return r;
}

int cmd_eval(const Common& c, const std::vector<std::vector<double>>& cli_points) {
  const auto cfg = load_config(c.config);
  const GFVariant v = variant_from_string(cfg.value("variant", c.variant));
  const Signature sig = parse_signature(cfg.value("signature", c.signature));
  std::vector<std::array<double, 3>> pts;
  if (cfg.contains("points")) {
    for (const auto& p : cfg.at("points")) pts.push_back(p.get<std::array<double, 3>>());
  }
  for (const auto& p : cli_points) {
    if (p.size() != 3) throw Error(ErrorCode::InvalidArgument, "--point takes t,r,tau");
    pts.push_back({p[0], p[1], p[2]});
  }
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "no points given (use --point t,r,tau)");

  ojson eff;
  eff["command"] = "eval";
  eff["variant"] = std::string(to_string(v));
  eff["signature"] = signature_name(sig);
  eff["points"] = pts;
  const std::string effj = eff.dump();

  std::vector<Record> recs;
  for (const auto& p : pts) {
    const Event5 e(p[0], p[1], p[2]);
    try {
      recs.push_back(make_record(e, v, eval_variant(v, e, sig), ""));
    } catch (const Error& err) {
      std::fprintf(stderr, "offshell-gf: point (t, r, tau) = (%.17g, %.17g, %.17g)\n", p[0], p[1], p[2]);
      throw;
    }
  }
  emit(c, recs, effj);
  return kExitOk;
}

struct SliceSpec {
  std::string plane = "tr";
  double at = 0.0;
  std::vector<double> x_range{-4.0, 4.0};
  std::vector<double> y_range{0.0, 4.0};
  std::vector<std::size_t> res{81, 41};
  std::string minus;
};

Event5 slice_point(const std::string& plane, double x, double y, double at) {
  if (plane == "tr") return Event5(x, y, at);
  if (plane == "ttau") return Event5(x, at, y);
  if (plane == "rtau") return Event5(at, x, y);
  throw Error(ErrorCode::InvalidArgument, "unknown plane '" + plane + "' (use tr, ttau or rtau)");
}

struct Plane {
  std::string name;
  double at;
  Event5 point(double x, double y) const { return slice_point(name, x, y, at); }
};

// A cell is masked when either cone crosses it: the sign of Q or of t^2 - r^2
// differs between its corners, or the centre sits on a cone.
bool cone_adjacent(const Plane& p, double x, double y, double hx, double hy) {
  const Event5 c = p.point(x, y);
  if (is_cone(classify(c))) return true;
  const auto s5 = std::signbit(c.q());
  const auto s4 = std::signbit(-c.interval4());
  for (double dx : {-0.5, 0.5}) {
    for (double dy : {-0.5, 0.5}) {
      double cx = x + dx * hx, cy = y + dy * hy;
      if (p.name == "tr") cy = std::max(cy, 0.0);
      if (p.name == "rtau") cx = std::max(cx, 0.0);
      const Event5 e = p.point(cx, cy);
      if (std::signbit(e.q()) != s5 || std::signbit(-e.interval4()) != s4) return true;
    }
  }
  return false;
}

int cmd_slice(const Common& c, SliceSpec s) {
  const auto cfg = load_config(c.config);
  const GFVariant v = variant_from_string(cfg.value("variant", c.variant));
  const Signature sig = parse_signature(cfg.value("signature", c.signature));
  s.plane = cfg.value("plane", s.plane);
  s.at = cfg.value("at", s.at);
  s.x_range = cfg.value("x_range", s.x_range);
  s.y_range = cfg.value("y_range", s.y_range);
  s.res = cfg.value("resolution", s.res);
  s.minus = cfg.value("minus", s.minus);
  if (s.x_range.size() != 2 || s.y_range.size() != 2 || s.res.size() != 2 || s.res[0] < 2 || s.res[1] < 2 ||
      !(s.x_range[1] > s.x_range[0]) || !(s.y_range[1] > s.y_range[0]) || !std::isfinite(s.at)) {
    throw Error(ErrorCode::InvalidArgument, "malformed plane: need lo<hi ranges and resolution >= 2 per axis");
  }
  if (s.plane != "tr" && s.plane != "ttau" && s.plane != "rtau") {
    throw Error(ErrorCode::InvalidArgument, "unknown plane '" + s.plane + "' (use tr, ttau or rtau)");
  }
  if ((s.plane == "tr" && s.y_range[0] < 0) || (s.plane == "rtau" && s.x_range[0] < 0) ||
      (s.plane == "ttau" && s.at < 0)) {
    throw Error(ErrorCode::InvalidArgument, "malformed plane: r must be >= 0");
  }
  std::optional<GFVariant> minus;
  if (!s.minus.empty()) minus = variant_from_string(s.minus);

  ojson eff;
  eff["command"] = "slice";
  eff["variant"] = std::string(to_string(v));
  eff["minus"] = minus ? std::string(to_string(*minus)) : std::string();
  eff["signature"] = signature_name(sig);
  eff["plane"] = s.plane;
  eff["at"] = s.at;
  eff["x_range"] = s.x_range;
  eff["y_range"] = s.y_range;
  eff["resolution"] = s.res;
  const std::string effj = eff.dump();

  const double hx = (s.x_range[1] - s.x_range[0]) / static_cast<double>(s.res[0] - 1);
  const double hy = (s.y_range[1] - s.y_range[0]) / static_cast<double>(s.res[1] - 1);
  const Plane plane{s.plane, s.at};
  std::vector<Record> recs;
  recs.reserve(s.res[0] * s.res[1]);
  for (std::size_t iy = 0; iy < s.res[1]; ++iy) {
    const double y = s.y_range[0] + hy * static_cast<double>(iy);
    for (std::size_t ix = 0; ix < s.res[0]; ++ix) {
      const double x = s.x_range[0] + hx * static_cast<double>(ix);
      const Event5 e = plane.point(x, y);
      const GFVariant tag = v;
      std::string flags = minus ? "minus=" + std::string(to_string(*minus)) : "";
      if (cone_adjacent(plane, x, y, hx, hy)) {
        recs.push_back(make_record(e, tag, std::nullopt, flags.empty() ? "cone" : flags + ";cone"));
        continue;
      }
      try {
        double val = eval_variant(v, e, sig);
        if (minus) val -= eval_variant(*minus, e, sig);
        recs.push_back(make_record(e, tag, val, flags));
      } catch (const Error& err) {
        const std::string f(to_string(err.code()));
        recs.push_back(make_record(e, tag, std::nullopt, flags.empty() ? f : flags + ";" + f));
      }
    }
  }
  emit(c, recs, effj);
  return kExitOk;
}

int cmd_verify(const Common& c, const std::string& suite) {
  VerifyConfig vc = c.config.empty() ? VerifyConfig{} : VerifyConfig::from_json(read_file(c.config));
  if (c.tol) {
    if (!(*c.tol > 0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
    if (suite == "pde") {
      vc.pde_tol = *c.tol;
    } else {
      vc.quad.tol = *c.tol;
    }
  }
  if (c.max_evals) vc.quad.max_evals = *c.max_evals;
  vc = VerifyConfig::from_json(vc.to_json());

  SuiteReport rep;
  try {
    rep = run_suite(suite, vc);
  } catch (const Error& err) {
    if (domain_error(err.code())) throw;
    rep.suite = suite;
    Check ch;
    ch.name = "suite aborted";
    ch.detail = err.what();
    rep.checks.push_back(ch);
  }
  std::cout << rep.table();
  const std::string path = c.out.empty() ? "offshell_verify_" + suite + ".json" : c.out;
  with_output(path, [&](std::ostream& os) { os << rep.to_json(vc); });
  if (path != "-") std::cout << "report: " << path << "\n";
  return rep.passed() ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green functions of the 5D off-shell wave operator: evaluation, slices and verification"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", c.config, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "output path ('-' for stdout)");
    sub->add_option("--tol", c.tol, "tolerance override");
    sub->add_option("--max-evals", c.max_evals, "integrand evaluation budget");
  };
  auto add_variant = [&](CLI::App* sub) {
    sub->add_option("--variant", c.variant,
                    "CANONICAL, LH_PRINCIPAL, LH_PUBLISHED, OH_PUBLISHED, K5_ROUTE or RETARDED")
        ->capture_default_str();
    sub->add_option("--signature", c.signature, "O41 or O32")->capture_default_str();
    sub->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };

  auto* eval = app.add_subcommand("eval", "evaluate a variant at points");
  std::vector<std::vector<double>> points;
  eval->add_option("--point", points, "t,r,tau (repeatable)")->delimiter(',')->allow_extra_args(false);
  add_variant(eval);
  add_common(eval);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "identities, routes, oracle or pde")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  add_common(verify);

  auto* slice = app.add_subcommand("slice", "evaluate a variant on a rectangular plane");
  SliceSpec ss;
  slice->add_option("--plane", ss.plane, "tr, ttau or rtau")->capture_default_str();
  slice->add_option("--at", ss.at, "value of the fixed coordinate")->capture_default_str();
  slice->add_option("--x-range", ss.x_range, "lo,hi of the first axis")->delimiter(',')->expected(2);
  slice->add_option("--y-range", ss.y_range, "lo,hi of the second axis")->delimiter(',')->expected(2);
  slice->add_option("--res", ss.res, "nx,ny")->delimiter(',')->expected(2);
  slice->add_option("--minus", ss.minus, "subtract a second variant");
  add_variant(slice);
  add_common(slice);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(c, points);
    if (*slice) return cmd_slice(c, ss);
    return cmd_verify(c, suite);
  } catch (const Error& e) {
    std::cerr << "offshell-gf: " << e.what() << "\n";
    return domain_error(e.code()) ? kExitUsage : kExitFail;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "offshell-gf: bad config: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "offshell-gf: " << e.what() << "\n";
    return kExitUsage;
  }
}
