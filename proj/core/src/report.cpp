#include "opz/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "opz/equilibrium.hpp"
#include "opz/error.hpp"
#include "opz/floquet.hpp"
#include "opz/parallel.hpp"
#include "opz/verify.hpp"
#include "opz/zeros.hpp"

namespace opz {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ValidationError, what); }

std::vector<double> number_list(const json& root, const char* field) {
  if (!root.contains(field)) invalid(std::string("missing field '") + field + "'");
  const json& arr = root.at(field);
  if (!arr.is_array() || arr.empty()) invalid(std::string("field '") + field + "' must be a nonempty list");
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& v = arr[i];
    if (!v.is_number()) invalid(std::string("field '") + field + "[" + std::to_string(i) + "]' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) invalid(std::string("field '") + field + "[" + std::to_string(i) + "]' must be finite");
    out.push_back(x);
  }
  return out;
}

void reject_fields(const json& root, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : root.items()) {
    if (allowed.count(key) == 0) invalid("unknown field '" + key + "'");
  }
}

// A double cell with -0 folded to 0, or its spelling when not finite so JSON
// output stays valid.
Cell num(double x) {
  if (x == 0.0) return 0.0;
  if (std::isfinite(x)) return x;
  return format_double(x);
}

Cell num(std::int64_t x) { return x; }
Cell num(int x) { return static_cast<std::int64_t>(x); }

std::string csv_field(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string placement_label(Placement p, int region) {
  if (p == Placement::OffSpectrum) return "off";
  return std::string(to_string(p)) + ":" + std::to_string(region);
}

std::string sign_label(DirichletSign s) {
  switch (s) {
    case DirichletSign::Plus: return "plus";
    case DirichletSign::Minus: return "minus";
    case DirichletSign::Edge: return "edge";
  }
  return "edge";
}

const std::vector<int>& require_n(const RunConfig& cfg) {
  if (cfg.n_list.empty()) throw Error(ErrorKind::InvalidArgument, "--n or --n-list is required");
  return cfg.n_list;
}

Table bands_table(const Spectrum& s) {
  Table t{"bands", {"kind", "value1", "value2", "flag"}, {}};
  for (double e : s.bands.edges) t.rows.push_back({"edge", num(e), "", ""});
  for (const Band& b : s.bands.bands) {
    t.rows.push_back({"band", num(b.lo), num(b.hi), b.orientation > 0 ? "increasing" : "decreasing"});
  }
  for (const Gap& g : s.bands.gaps) t.rows.push_back({"gap", num(g.lo), num(g.hi), g.closed ? "closed" : "open"});
  t.rows.push_back({"capacity", num(capacity(s.model())), "", ""});
  return t;
}

Table equilibrium_table(const Spectrum& s, const RunConfig& cfg) {
  const int per_band = cfg.n_list.empty() ? 16 : cfg.n_list.front();
  if (per_band < 1) throw Error(ErrorKind::InvalidArgument, "--n must be positive");
  const int p = s.period();
  Table t{"equilibrium", {"band", "t", "k", "density"}, {}};
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < per_band; ++i) {
      const double k = (j + (i + 0.5) / per_band) / p;
      const double x = k_inverse(s, j, k);
      t.rows.push_back({num(j), num(x), num(k), num(density(s, x))});
    }
  }
  return t;
}

Table dirichlet_table(const Spectrum& s) {
  Table t{"dirichlet", {"index", "location", "re", "im", "multiplier_re", "multiplier_im", "sign", "gap", "closed"}, {}};
  int i = 0;
  for (const DirichletDatum& d : dirichlet_data(s)) {
    t.rows.push_back({num(i++), num(d.location), num(d.point.real()), num(d.point.imag()), num(d.multiplier.real()),
                      num(d.multiplier.imag()), sign_label(d.sign), num(d.gap), d.closed_gap ? "yes" : "no"});
  }
  return t;
}

Table zeros_table(const Spectrum& s, const RunConfig& cfg, RunResult& res) {
  const std::vector<int>& ns = require_n(cfg);
  std::vector<ZeroReport> reports(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) { reports[i] = polynomial_zeros(s, ns[i]); });
  Table t{"zeros", {"n", "index", "re", "im", "band", "residual"}, {}};
  for (const ZeroReport& r : reports) {
    if (r.residual_too_large) {
      res.warnings.push_back("n=" + std::to_string(r.n) + ": worst residual " + format_double(r.worst_residual));
    }
    for (std::size_t i = 0; i < r.zeros.size(); ++i) {
      t.rows.push_back({num(r.n), num(static_cast<std::int64_t>(i)), num(r.zeros[i].real()), num(r.zeros[i].imag()),
                        placement_label(r.placement[i], r.region[i]), num(r.residuals[i])});
    }
  }
  return t;
}

Table predict_table(const Spectrum& s, const RunConfig& cfg, RunResult& res) {
  if (!cfg.m) throw Error(ErrorKind::InvalidArgument, "--m is required");
  const int m = *cfg.m;
  const int p = s.period();
  const std::vector<double> pred = predict_exact(s, m);
  std::vector<double> comp;
  const bool angles = s.kind() == ModelKind::Verblunsky;
  if (angles) {
    comp = para_zeros(std::get<PeriodicVerblunsky>(s.model()), m * p);
  } else {
    for (cplx z : oprl_zeros(s, m * p - 1).zeros) comp.push_back(z.real());
  }
  Table t{"predict", {"m", "index", "predicted", "computed", "error"}, {}};
  std::int64_t i = 0;
  for (const auto& [x, y] : match_pairs(pred, comp, angles)) {
    const double err = angles ? std::abs(std::remainder(x - y, 2.0 * std::numbers::pi)) : std::abs(x - y);
    if (!(err <= cfg.tol)) res.verification_failed = true;
    t.rows.push_back({num(m), num(i++), num(x), num(y), num(err)});
  }
  return t;
}

Table clock_table(const Spectrum& s, const RunConfig& cfg) {
  const std::vector<int>& ns = require_n(cfg);
  std::vector<ClockStats> stats(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) { stats[i] = clock_stats(s, polynomial_zeros(s, ns[i])); });
  Table t{"clock", {"n", "band", "count", "max_deviation"}, {}};
  for (const ClockStats& c : stats) {
    for (const BandClock& b : c.bands) t.rows.push_back({num(c.n), num(b.band), num(b.count), num(b.max_deviation)});
  }
  return t;
}

Table jost_table(const Spectrum& s, const RunConfig& cfg) {
  const int p = s.period();
  int lo = s.kind() == ModelKind::Jacobi ? 0 : 1, hi = p;
  if (cfg.offset) lo = hi = *cfg.offset;
  Table t{"jost", {"offset", "index", "re", "im", "multiplicity", "residual", "bound"}, {}};
  for (int b = lo; b <= hi; ++b) {
    const JostZeros jz = jost_offband_zeros(s, b);
    std::int64_t i = 0;
    for (const JostZero& z : jz.zeros) {
      t.rows.push_back({num(b), num(i++), num(z.point.real()), num(z.point.imag()), num(z.multiplicity),
                        num(z.residual), num(jz.bound)});
    }
  }
  return t;
}

Table verify_table(const ModelFile& file, RunResult& res) {
  const VerifyReport rep = verify_model({file.label.value_or("model"), file.model});
  Table t{"verify", {"criterion", "check", "model", "status", "detail"}, {}};
  for (const CheckRow& r : rep.rows) {
    t.rows.push_back({num(r.criterion), r.check, r.model, std::string(to_string(r.status)), r.detail});
  }
  const std::string name = file.label.value_or("model");
  for (const std::string& op : rep.missing_coverage) {
    t.rows.push_back({num(0), "coverage: " + op, name, "fail", "operation never exercised"});
  }
  if (rep.missing_coverage.empty()) {
    const std::size_t n = required_coverage(kind_of(file.model)).size();
    t.rows.push_back({num(0), "coverage", name, "pass", std::to_string(n) + " operations exercised"});
  }
  res.verification_failed = !rep.ok();
  return t;
}

}  // namespace

ModelFile parse_model(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!root.is_object()) invalid("top level must be an object");
  if (!root.contains("model") || !root.at("model").is_string()) invalid("field 'model' must be a string");
  const std::string kind = root.at("model").get<std::string>();

  ModelFile out{PeriodicJacobi({1.0}, {0.0}), std::nullopt, false};
  if (root.contains("label")) {
    if (!root.at("label").is_string()) invalid("field 'label' must be a string");
    out.label = root.at("label").get<std::string>();
  }
  if (kind == "jacobi") {
    reject_fields(root, {"model", "label", "a", "b"});
    const std::vector<double> a = number_list(root, "a");
    const std::vector<double> b = number_list(root, "b");
    if (a.size() != b.size()) invalid("fields 'a' and 'b' must have equal length");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!(a[i] > 0)) invalid("field 'a[" + std::to_string(i) + "]' must be positive");
    }
    out.model = PeriodicJacobi(a, b);
    return out;
  }
  if (kind == "verblunsky") {
    reject_fields(root, {"model", "label", "alpha"});
    if (!root.contains("alpha")) invalid("missing field 'alpha'");
    const json& arr = root.at("alpha");
    if (!arr.is_array() || arr.empty()) invalid("field 'alpha' must be a nonempty list");
    std::vector<cplx> alpha;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "field 'alpha[" + std::to_string(i) + "]'";
      const json& v = arr[i];
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        invalid(where + " must be a [re, im] pair");
      }
      const cplx z{v[0].get<double>(), v[1].get<double>()};
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) invalid(where + " must be finite");
      if (!(std::abs(z) < 1.0)) invalid(where + " must have modulus < 1");
      alpha.push_back(z);
    }
    out.doubled = alpha.size() % 2 == 1;
    out.model = PeriodicVerblunsky(alpha);
    return out;
  }
  invalid("field 'model' must be \"jacobi\" or \"verblunsky\"");
}

std::string serialize_model(const ModelFile& file) {
  json root;
  if (const auto* jm = std::get_if<PeriodicJacobi>(&file.model)) {
    root["model"] = "jacobi";
    root["a"] = std::vector<double>(jm->a_values().begin(), jm->a_values().end());
    root["b"] = std::vector<double>(jm->b_values().begin(), jm->b_values().end());
  } else {
    const auto& v = std::get<PeriodicVerblunsky>(file.model);
    root["model"] = "verblunsky";
    json alpha = json::array();
    for (cplx z : v.original_alpha()) alpha.push_back({z.real(), z.imag()});
    root["alpha"] = alpha;
  }
  if (file.label) root["label"] = *file.label;
  return root.dump(2) + "\n";
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + csv_field(r[i]);
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& t) {
  json root;
  root["subcommand"] = t.subcommand;
  root["columns"] = t.columns;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < r.size() && i < t.columns.size(); ++i) {
      std::visit([&](const auto& v) { obj[t.columns[i]] = v; }, r[i]);
    }
    rows.push_back(std::move(obj));
  }
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

std::string render(const Table& t, Format f) { return f == Format::Csv ? render_csv(t) : render_json(t); }

Table parse_table_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  Table t;
  t.subcommand = root.at("subcommand").get<std::string>();
  t.columns = root.at("columns").get<std::vector<std::string>>();
  for (const json& obj : root.at("rows")) {
    std::vector<Cell> r;
    for (const std::string& c : t.columns) {
      const json& v = obj.at(c);
      if (v.is_number_integer()) {
        r.emplace_back(v.get<std::int64_t>());
      } else if (v.is_number()) {
        r.emplace_back(v.get<double>());
      } else {
        r.emplace_back(v.get<std::string>());
      }
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

RunResult run_subcommand(std::string_view name, const ModelFile& model, const RunConfig& config) {
  if (!(config.tol > 0)) throw Error(ErrorKind::InvalidArgument, "--tol must be positive");
  RunResult res;
  if (name == "verify") {
    res.table = verify_table(model, res);
    return res;
  }
  const Spectrum s(model.model);
  if (name == "bands") {
    res.table = bands_table(s);
  } else if (name == "equilibrium") {
    res.table = equilibrium_table(s, config);
  } else if (name == "dirichlet") {
    res.table = dirichlet_table(s);
  } else if (name == "zeros") {
    res.table = zeros_table(s, config, res);
  } else if (name == "predict") {
    res.table = predict_table(s, config, res);
  } else if (name == "clock") {
    res.table = clock_table(s, config);
  } else if (name == "jost") {
    res.table = jost_table(s, config);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown subcommand '" + std::string(name) + "'");
  }
  return res;
}

void write_atomic(const std::string& path, std::string_view content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::InvalidArgument, "cannot rename onto " + path);
  }
}

}  // namespace opz
