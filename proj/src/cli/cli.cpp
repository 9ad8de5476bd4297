#include "mahlerkit/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "mahlerkit/algnum/algebraic.hpp"
#include "mahlerkit/algnum/height.hpp"
#include "mahlerkit/algnum/mahler.hpp"
#include "mahlerkit/bounds/bounds.hpp"
#include "mahlerkit/errors.hpp"
#include "mahlerkit/matrixlab/audit.hpp"
#include "mahlerkit/matrixlab/lemmas.hpp"
#include "mahlerkit/matrixlab/logmatrix.hpp"
#include "mahlerkit/search/search.hpp"

namespace mahlerkit::cli {

namespace {

using json = nlohmann::ordered_json;
using mahlerkit::to_string;

constexpr int kDigits = 17;
// Bound values below exp(-1e6) are reported in log space only.
constexpr double kLogSpaceThreshold = -1e6;

// Enough digits that printing adds little to the radius at the ball's precision.
int digits_for(Precision prec) { return std::max(kDigits, static_cast<int>(static_cast<double>(prec) * 0.30103) + 1); }

std::string text(const RealBall& x) { return x.to_string(digits_for(x.precision())); }
std::string number(const Mpfr& x) { return x.to_string(kDigits); }

// Midpoint and radius texts that together enclose the ball.
std::pair<std::string, std::string> split_ball(const RealBall& x) {
  const std::string whole = text(x);
  const auto at = whole.find("±");
  return {whole.substr(0, at), whole.substr(at + std::string("±").size())};
}

json row_json(const CheckRow& row) {
  json out{{"name", row.name}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"relation", row.relation}, {"pass", row.pass}};
  if (!row.note.empty()) out["note"] = row.note;
  return out;
}

json report_json(const Report& report) {
  json rows = json::array();
  for (const auto& row : report.rows) rows.push_back(row_json(row));
  return rows;
}

json matrix_json(const matrixlab::RationalMatrix& m) { return json(m.to_strings()); }

template <class T>
json strings(const std::vector<T>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::vector<long> parse_long_list(const std::string& textual) {
  std::vector<long> out;
  std::stringstream in(textual);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_long(parse_integer(item)));
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

// Option storage shared by all subcommands.
struct Options {
  // shapes and parameters
  long m = 1, n = 1, r = 1, D = 1, S = 1, T = 1, count = 10;
  long from = 0, to = 0, bmax = 0;
  unsigned sweep = 0;
  std::string value, poly, point, a, b, exponent = "40", h, h1, h2, c, c0, c1, c2, B;
  std::string h_alpha, abs_log, h_beta;
  std::string input, lic, t, method = "both", kind, exp_ref = "40";
  double re = 0.0, im = 0.0, tolerance = 1e-8;
  long nodes = algnum::kDefaultQuadratureNodes;
  bool plot_data = false, resume = false;
  bool log_space = false;
  std::vector<std::string> constants;  // name=value
};

// Single writer for the chosen sink.
class Sink {
 public:
  Sink(const RunConfig& config, std::ostream& fallback, bool append = false) {
    if (config.output.empty()) {
      stream_ = &fallback;
      return;
    }
    file_.open(config.output, append ? std::ios::app : std::ios::trunc);
    if (!file_) throw ParseError("cannot open '" + config.output + "' for writing");
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

// Top-level scalars as "field,value" lines; nested values as compact JSON.
void write_flat_csv(const json& j, std::ostream& out) {
  out << "field,value\n";
  for (const auto& [key, v] : j.items()) {
    std::string cell = v.is_string() ? v.get<std::string>() : v.dump();
    if (cell.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : cell) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      cell = quoted + "\"";
    }
    out << key << "," << cell << "\n";
  }
}

void emit(const RunConfig& config, std::ostream& out, const json& j) {
  Sink sink(config, out);
  if (config.format == "csv") {
    write_flat_csv(j, sink.stream());
  } else {
    sink.stream() << j.dump(2) << "\n";
  }
}

// A table: CSV by default, JSON array of objects on request.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void emit_table(const RunConfig& config, std::ostream& out, const Table& table) {
  Sink sink(config, out);
  auto& s = sink.stream();
  if (config.format == "json") {
    json arr = json::array();
    for (const auto& row : table.rows) {
      json obj = json::object();
      for (std::size_t k = 0; k < row.size(); ++k) obj[table.header[k]] = row[k];
      arr.push_back(obj);
    }
    s << arr.dump(2) << "\n";
    return;
  }
  for (std::size_t k = 0; k < table.header.size(); ++k) s << (k ? "," : "") << table.header[k];
  s << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) s << (k ? "," : "") << row[k];
    s << "\n";
  }
}

std::string flag(bool value) { return value ? "true" : "false"; }

// --- subcommands ---------------------------------------------------------------

json cmd_height(const Options& o, const RunConfig& config) {
  const Precision prec = config.precision.start;
  if (!o.value.empty() == !o.poly.empty()) throw ParseError("height needs exactly one of --value and --poly");
  if (!o.value.empty()) {
    const Rational q = parse_rational(o.value);
    return json{{"input", o.value},
                {"kind", "rational"},
                {"value", to_string(q)},
                {"naive_height", to_string(algnum::naive_height(q))},
                {"height", text(algnum::height_rational(q, prec))}};
  }
  const auto alpha = algnum::AlgebraicNumber::nearest_root(algnum::IntPolynomial::parse(o.poly), o.re, o.im);
  return json{{"input", o.poly},
              {"kind", "algebraic"},
              {"minimal_polynomial", alpha.minpoly().to_string()},
              {"degree", alpha.degree()},
              {"root", alpha.enclosure(prec).to_string(digits_for(prec))},
              {"height", text(algnum::weil_height(alpha, prec))}};
}

json cmd_mahler_measure(const Options& o, const RunConfig& config) {
  if (o.method != "roots" && o.method != "integral" && o.method != "both") {
    throw ParseError("--method must be roots, integral or both");
  }
  const auto f = algnum::IntPolynomial::parse(o.poly);
  json out{{"polynomial", f.to_string()}};
  std::optional<RealBall> measure;
  if (o.method != "integral") {
    measure = algnum::mahler_measure_roots(f, config.precision.start);
    out["measure"] = text(*measure);
    out["log_measure"] = text(log(*measure));
  }
  if (o.method != "roots") {
    const auto estimate = algnum::mahler_measure_integral(f, o.nodes, o.tolerance);
    out["integral"] = json{{"value", estimate.value}, {"error_estimate", estimate.error_estimate},
                           {"nodes", estimate.nodes}};
    if (measure) {
      const double exact = measure->to_double();
      out["relative_difference"] = std::abs(exact - estimate.value) / exact;
    }
  }
  return out;
}

json cmd_proj_height(const Options& o, const RunConfig& config) {
  const auto p = algnum::ProjectivePoint::parse(o.point);
  return json{{"input", o.point},
              {"point", p.to_string()},
              {"naive_height", to_string(p.naive_height())},
              {"height", text(algnum::projective_height_rational(p, config.precision.start))}};
}

bounds::BoundContext context(const Options& o, const RunConfig& config) {
  bounds::BoundContext ctx;
  ctx.m = o.m;
  ctx.n = o.n;
  ctx.r = o.r;
  ctx.D = o.D;
  if (!o.h.empty()) ctx.h = parse_rational(o.h);
  if (!o.h1.empty()) ctx.h1 = parse_rational(o.h1);
  if (!o.h2.empty()) ctx.h2 = parse_rational(o.h2);
  if (!o.c.empty()) ctx.constants["c"] = parse_rational(o.c);
  if (!o.c0.empty()) ctx.constants["c0"] = parse_rational(o.c0);
  if (!o.c1.empty()) ctx.constants["c1"] = parse_rational(o.c1);
  if (!o.c2.empty()) ctx.constants["c2"] = parse_rational(o.c2);
  ctx.precision = config.precision;
  return ctx;
}

bounds::OperandData operand_data(const Options& o) {
  bounds::OperandData data;
  if (!o.h_alpha.empty()) data.height_alpha = bounds::parse_real(o.h_alpha);
  if (!o.abs_log.empty()) data.abs_log = bounds::parse_real(o.abs_log);
  if (!o.h_beta.empty()) data.height_beta = bounds::parse_real(o.h_beta);
  return data;
}

LazyReal required_real(const std::string& value, const std::string& name) {
  if (value.empty()) throw MissingConstant(name);
  return bounds::parse_real(value);
}

json bound_inputs(const Options& o) {
  json inputs{{"m", o.m}, {"n", o.n}, {"r", o.r}, {"D", o.D}, {"S", o.S}};
  const std::pair<const char*, const std::string*> named[] = {
      {"a", &o.a},   {"b", &o.b},   {"exponent", &o.exponent}, {"h", &o.h},   {"h1", &o.h1},
      {"h2", &o.h2}, {"c", &o.c},   {"c0", &o.c0},             {"c1", &o.c1}, {"c2", &o.c2},
      {"B", &o.B},   {"h_alpha", &o.h_alpha}, {"abs_log", &o.abs_log}, {"h_beta", &o.h_beta}};
  for (const auto& [key, value] : named) {
    if (!value->empty()) inputs[key] = *value;
  }
  return inputs;
}

json bound_json(const Options& o, const bounds::BoundResult& result) {
  json out{{"bound", o.kind},
           {"formula", result.formula},
           {"inputs", bound_inputs(o)},
           {"status", bounds::to_string(result.status)},
           {"conjectural", result.status == bounds::Status::kConjectural},
           {"branch", result.branch},
           {"log_value", text(result.log_value)},
           {"log_value_approx", result.log_value.to_double()}};
  if (o.log_space) {
    out["value"] = nullptr;
    out["value_note"] = "log space requested";
  } else if (result.log_value.to_double() >= kLogSpaceThreshold) {
    out["value"] = text(result.value());
  } else {
    out["value"] = nullptr;
    out["value_note"] = "below exp(-1e6); reported in log space only";
  }
  out["hypothesis_report"] = report_json(result.hypotheses);
  return out;
}

// Folds "--const name=value" entries into the named options.
Options with_constants(Options o) {
  for (const auto& entry : o.constants) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw ParseError("--const expects name=value, got '" + entry + "'");
    const std::string key = entry.substr(0, eq);
    const std::string value = entry.substr(eq + 1);
    if (key == "c") o.c = value;
    else if (key == "c0") o.c0 = value;
    else if (key == "c1") o.c1 = value;
    else if (key == "c2") o.c2 = value;
    else throw ParseError("unknown constant '" + key + "'");
  }
  return o;
}

json cmd_bound(const Options& options, const RunConfig& config) {
  const Options o = with_constants(options);
  const auto& k = o.kind;
  const PrecisionPolicy& policy = config.precision;
  const Rational exponent = parse_rational(o.exponent);
  if (k == "mahler-log") return bound_json(o, bounds::bound_mahler_log(parse_integer(o.a), exponent, policy));
  if (k == "mahler-exp") return bound_json(o, bounds::bound_mahler_exp(parse_integer(o.b), exponent, policy));
  if (k == "nw") return bound_json(o, bounds::bound_nw(context(o, config), operand_data(o)));
  if (k == "feldman") {
    return bound_json(o, bounds::bound_feldman(o.m, o.D, required_real(o.h, "h"), required_real(o.c, "c"), policy));
  }
  if (k == "rw") {
    return bound_json(o, bounds::bound_rw(o.m, o.D, required_real(o.h1, "h1"), required_real(o.h2, "h2"),
                                          required_real(o.c, "c"), policy));
  }
  if (k == "conj0" || k == "conj1" || k == "conj2") {
    return bound_json(o, bounds::bound_conjecture(k.back() - '0', context(o, config), operand_data(o)));
  }
  if (k == "phi1") return bound_json(o, bounds::phi1(context(o, config)));
  if (k == "phi2") return bound_json(o, bounds::phi2(context(o, config)));
  if (k == "liouville") {
    return bound_json(o, bounds::liouville_linear_form(o.m, o.D, o.S, required_real(o.h1, "h1"), policy));
  }
  if (k == "lemma1") {
    if (o.B.empty()) throw MissingConstant("B");
    const RealBall log_value = matrixlab::lemma1_log_bound(o.n, o.D, parse_rational(o.B), policy.start);
    bounds::BoundResult result{"n^(-nD) B^(-n(n+1)D)", log_value, 0, bounds::Status::kProven, {}};
    return bound_json(o, result);
  }
  throw ParseError("unknown bound '" + k + "'");
}

json cmd_lemma2(const Options& o) {
  if (o.input.empty()) throw ParseError("lemma2 needs --in");
  const auto b = matrixlab::RationalMatrix::read_csv(o.input);
  const auto cert = matrixlab::lemma2_factor(b, o.r);
  return json{{"rank", cert.rank},
              {"row_order", cert.row_order},
              {"col_order", cert.col_order},
              {"pivot_determinant", to_string(cert.pivot_determinant)},
              {"height_base", to_string(cert.height_base)},
              {"permuted", matrix_json(cert.permuted)},
              {"left", matrix_json(cert.left)},
              {"right", matrix_json(cert.right)},
              {"product_check", cert.checks.rows.front().pass},
              {"valid", cert.checks.passed()},
              {"checks", report_json(cert.checks)}};
}

matrixlab::LogMatrix log_matrix(const Options& o) {
  if (!o.input.empty() && !o.lic.empty()) throw ParseError("give either --in or --lic, not both");
  if (!o.lic.empty()) {
    const auto dims = parse_long_list(o.lic);
    if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1) throw ParseError("--lic expects 'm,n'");
    return matrixlab::make_lic_matrix(static_cast<std::size_t>(dims[0]), static_cast<std::size_t>(dims[1]));
  }
  if (o.input.empty()) throw ParseError("needs --in or --lic");
  return matrixlab::LogMatrix(matrixlab::RationalMatrix::read_csv(o.input));
}

json cmd_lic_check(const Options& o, const RunConfig& config) {
  const auto l = log_matrix(o);
  const auto result = matrixlab::lic_check_box(l, o.T, o.S, config.budget, Executor(config.jobs));
  json out{{"matrix", matrix_json(l.bases())}, {"base", strings(l.base())}, {"T", o.T}, {"S", o.S},
           {"pairs", result.pairs}, {"pass", result.pass}};
  out["witness"] = result.witness ? json{{"t", result.witness->t}, {"s", result.witness->s}} : json(nullptr);
  return out;
}

json cmd_lemma3(const Options& o) {
  const auto l = log_matrix(o);
  const auto t = parse_long_list(o.t);
  const auto result = matrixlab::lemma3_count(l, t, o.S);
  return json{{"matrix", matrix_json(l.bases())}, {"t", t},        {"S", o.S},
              {"count", result.count},          {"threshold", to_string(result.threshold)},
              {"pass", result.pass}};
}

json parameters_json(const matrixlab::ProofParameters& p) {
  json integers = json::object(), exact = json::object(), reals = json::object();
  for (const auto& [k, v] : p.integers) integers[k] = to_string(v);
  for (const auto& [k, v] : p.exact) exact[k] = to_string(v);
  for (const auto& [k, v] : p.reals) reals[k] = text(v);
  return json{{"c0", to_string(p.c0)}, {"integers", integers}, {"exact", exact}, {"reals", reals}};
}

json sweep_json(const matrixlab::C0Sweep& sweep) {
  json entries = json::array();
  for (const auto& e : sweep.entries) {
    entries.push_back(json{{"c0", to_string(e.c0)}, {"passed", e.passed}, {"first_failure", e.first_failure}});
  }
  return json{{"entries", entries},
              {"least_passing_c0", sweep.least_passing ? json(to_string(*sweep.least_passing)) : json(nullptr)}};
}

json cmd_audit(int theorem, const Options& o, const RunConfig& config) {
  const Rational c0 = parse_rational(o.c0.empty() ? "2" : o.c0);
  const auto result =
      theorem == 1
          ? matrixlab::audit_theorem1_params(o.m, o.n, o.r, o.D, parse_rational(o.h1), parse_rational(o.h2), c0,
                                             config.precision)
          : matrixlab::audit_theorem2_params(o.m, o.n, o.r, o.D, parse_rational(o.h), c0, config.precision);
  json out{{"theorem", theorem}, {"m", o.m}, {"n", o.n}, {"r", o.r}, {"D", o.D}};
  out["parameters"] = parameters_json(result.parameters);
  out["rows"] = report_json(result.report);
  out["passed"] = result.passed();
  if (o.sweep > 0) {
    const auto values = matrixlab::doubling_sweep(o.sweep);
    out["sweep"] = sweep_json(theorem == 1 ? matrixlab::sweep_theorem1(o.m, o.n, o.r, o.D, parse_rational(o.h1),
                                                                       parse_rational(o.h2), values, config.precision)
                                           : matrixlab::sweep_theorem2(o.m, o.n, o.r, o.D, parse_rational(o.h),
                                                                       values, config.precision));
  }
  return out;
}

// Last key written by an earlier run of the same scan, if any.
std::optional<long> last_key(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  std::optional<long> last;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("key", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    try {
      last = std::stol(line.substr(0, comma));
    } catch (const std::exception&) {
      throw ParseError("cannot resume: unreadable row '" + line + "'");
    }
  }
  return last;
}

int cmd_scan(bool exp_scan, const Options& o, const RunConfig& config, std::ostream& out) {
  search::ScanOptions options;
  options.exponent_ref = parse_rational(o.exp_ref);
  options.policy = config.precision;
  options.jobs = config.jobs;
  long from = o.from;
  bool append = false;
  if (o.resume) {
    if (config.output.empty()) throw ParseError("--resume needs --out");
    if (o.plot_data || config.format == "json") throw ParseError("--resume works with CSV output only");
    if (auto last = last_key(config.output)) {
      from = *last + 1;
      append = true;
    }
  }
  Sink sink(config, out, append);
  auto& s = sink.stream();
  const bool json_out = config.format == "json" && !o.plot_data;
  if (o.plot_data) {
    s << "# key exponent\n";
  } else if (json_out) {
    s << "[";
  } else if (!append) {
    s << "key,midpoint,radius,nearest,distance,exponent,flag\n";
  }
  if (from > o.to) return kExitOk;
  bool first = true;
  int uncertified = 0;
  const search::RecordSink write = [&](const std::vector<search::ScanRecord>& batch) {
    for (const auto& rec : batch) {
      if (!rec.certified) ++uncertified;
      const std::string distance = rec.certified ? number(rec.distance.mid()) : "";
      const std::string exponent = rec.certified && rec.exponent ? number(rec.exponent->mid()) : "";
      const std::string flag_text = rec.certified ? flag(rec.flag) : "uncertified";
      if (o.plot_data) {
        if (rec.certified) s << rec.key << " " << exponent << "\n";
      } else if (json_out) {
        json row{{"key", rec.key}, {"value", rec.certified ? text(rec.value) : ""},
                 {"nearest", rec.certified ? to_string(rec.nearest) : ""},
                 {"distance", rec.certified ? text(rec.distance) : ""},
                 {"exponent", rec.certified && rec.exponent ? text(*rec.exponent) : ""},
                 {"precision", rec.precision_used}, {"flag", flag_text}};
        if (!rec.certified) row["error"] = rec.error;
        s << (first ? "\n" : ",\n") << row.dump();
      } else {
        const auto [mid, rad] = rec.certified ? split_ball(rec.value) : std::pair<std::string, std::string>{};
        s << rec.key << "," << mid << "," << rad << ","
          << (rec.certified ? to_string(rec.nearest) : "") << "," << distance << "," << exponent << ","
          << flag_text << "\n";
      }
      first = false;
    }
    s.flush();  // checkpoint
  };
  if (exp_scan) {
    search::scan_exp(from, o.to, options, write);
  } else {
    search::scan_log(from, o.to, options, write);
  }
  if (json_out) s << "\n]\n";
  return uncertified == 0 ? kExitOk : kExitPrecision;
}

int cmd_mahler_seq(const Options& o, const RunConfig& config, std::ostream& out) {
  const auto rows = search::mahler_sequence(o.bmax, config.precision);
  Table table{{"b", "a", "difference", "inverse", "pass"}, {}};
  if (o.plot_data) {
    Sink sink(config, out);
    sink.stream() << "# b difference\n";
    for (const auto& row : rows) sink.stream() << row.b << " " << number(row.difference.mid()) << "\n";
    return kExitOk;
  }
  for (const auto& row : rows) {
    table.rows.push_back({std::to_string(row.b), to_string(row.a), number(row.difference.mid()),
                          number(row.inverse.mid()), flag(row.pass)});
  }
  emit_table(config, out, table);
  return kExitOk;
}

int cmd_probe(const Options& o, const RunConfig& config, std::ostream& out) {
  if (o.c.empty()) throw MissingConstant("c");
  const auto rows = search::mahler_problem_probe(o.bmax, parse_rational(o.c), config.precision);
  if (o.plot_data) {
    Sink sink(config, out);
    sink.stream() << "# b ratio\n";
    for (const auto& row : rows) sink.stream() << row.b << " " << number(row.ratio.mid()) << "\n";
    return kExitOk;
  }
  Table table{{"b", "a", "distance", "threshold", "ratio", "holds"}, {}};
  for (const auto& row : rows) {
    table.rows.push_back({std::to_string(row.b), to_string(row.a), number(row.distance.mid()),
                          number(row.threshold.mid()), number(row.ratio.mid()), flag(row.holds)});
  }
  emit_table(config, out, table);
  return kExitOk;
}

json cmd_cf(const Options& o, const RunConfig& config) {
  if (o.count < 1) throw DomainError("--count must be positive");
  LazyReal x;
  if (auto named = search::named_constant(o.value)) {
    x = *named;
  } else {
    try {
      const Rational q = parse_rational(o.value);
      throw RationalDetected("value " + to_string(q) + " is rational");
    } catch (const ParseError&) {
      x = bounds::parse_real(o.value);
    }
  }
  const auto list = search::convergents(x, static_cast<std::size_t>(o.count), config.precision);
  json convergents = json::array();
  for (std::size_t k = 0; k < list.partial_quotients.size(); ++k) convergents.push_back(to_string(list.convergent(k)));
  return json{{"value", o.value},
              {"partial_quotients", strings(list.partial_quotients)},
              {"convergents", convergents},
              {"precision_used", list.precision_used}};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const MissingConstant*>(&e) || dynamic_cast<const ParseError*>(&e)) return kExitUsage;
  if (dynamic_cast<const PrecisionBudgetExceeded*>(&e) || dynamic_cast<const RootIsolationFailure*>(&e) ||
      dynamic_cast<const QuadratureDivergence*>(&e) || dynamic_cast<const BudgetExceeded*>(&e)) {
    return kExitPrecision;
  }
  if (dynamic_cast<const Error*>(&e)) return kExitHypothesis;
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heights, Mahler measures, linear-form bounds and certified scans"};
  app.name("mahlerkit");
  app.require_subcommand(1);
  app.fallthrough();
  // "-h" would clash with the height options "--h", "--h1", "--h2".
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "Read options from a TOML/INI file");

  RunConfig config;
  Options o;
  app.add_option("--precision", config.precision.start, "Starting precision in bits")->check(CLI::PositiveNumber);
  app.add_option("--precision-cap", config.precision.cap, "Precision cap in bits")->check(CLI::PositiveNumber);
  app.add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget", config.budget, "Enumeration budget (pairs)")->check(CLI::PositiveNumber);
  app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", config.output, "Output file (default: standard output)");

  auto* height = app.add_subcommand("height", "Absolute logarithmic height of a rational or algebraic number");
  height->add_option("--value", o.value, "Rational p/q");
  height->add_option("--poly", o.poly, "Minimal polynomial, e.g. 'x^2 - x - 1'");
  height->add_option("--re", o.re, "Real part near the chosen root");
  height->add_option("--im", o.im, "Imaginary part near the chosen root");

  auto* measure = app.add_subcommand("mahler-measure", "Mahler measure by roots and by Jensen quadrature");
  measure->add_option("--poly", o.poly, "Integer polynomial")->required();
  measure->add_option("--method", o.method, "roots, integral or both");
  measure->add_option("--nodes", o.nodes, "Initial quadrature nodes");
  measure->add_option("--tol", o.tolerance, "Relative quadrature tolerance");

  auto* proj = app.add_subcommand("proj-height", "Height of a rational projective point");
  proj->add_option("--point", o.point, "Point such as (1:2:3)")->required();

  auto* bound = app.add_subcommand("bound", "Evaluate a lower bound or exponent quantity");
  bound->add_option("kind", o.kind, "Bound name")
      ->required()
      ->check(CLI::IsMember({"mahler-log", "mahler-exp", "nw", "feldman", "rw", "conj0", "conj1", "conj2", "phi1",
                             "phi2", "liouville", "lemma1"}));
  for (auto* sub : {bound}) {
    sub->add_option("--m", o.m);
    sub->add_option("--n", o.n);
    sub->add_option("--r", o.r);
    sub->add_option("--D", o.D);
    sub->add_option("--S", o.S);
    sub->add_option("--a", o.a);
    sub->add_option("--b", o.b);
    sub->add_option("--exponent", o.exponent);
    sub->add_option("--h", o.h);
    sub->add_option("--h1", o.h1);
    sub->add_option("--h2", o.h2);
    sub->add_option("--c", o.c);
    sub->add_option("--c0", o.c0);
    sub->add_option("--c1", o.c1);
    sub->add_option("--c2", o.c2);
    sub->add_option("--B", o.B);
    sub->add_option("--h-alpha", o.h_alpha, "max h(alpha_i)");
    sub->add_option("--abs-log", o.abs_log, "max |lambda_i|");
    sub->add_option("--h-beta", o.h_beta, "max h(beta_i)");
    sub->add_option("--const", o.constants, "Named constant, e.g. c0=2 (repeatable)");
    sub->add_flag("--log-space", o.log_space, "Report the logarithm only");
  }

  auto* lemma2 = app.add_subcommand("lemma2", "Rank factorization with height certificate");
  lemma2->add_option("--in", o.input, "Matrix CSV")->required();
  lemma2->add_option("--r", o.r, "Declared rank")->required();

  auto* lic = app.add_subcommand("lic-check", "Box search for multiplicative relations");
  lic->add_option("--in", o.input, "CSV of positive rationals alpha_ij");
  lic->add_option("--lic", o.lic, "Use the distinct-prime matrix of shape 'm,n'");
  lic->add_option("--T", o.T)->required();
  lic->add_option("--S", o.S)->required();

  auto* lemma3 = app.add_subcommand("lemma3-count", "Count distinct products over a box");
  lemma3->add_option("--in", o.input);
  lemma3->add_option("--lic", o.lic);
  lemma3->add_option("--t", o.t, "Comma-separated nonzero tuple")->required();
  lemma3->add_option("--S", o.S)->required();

  auto* audit1 = app.add_subcommand("audit-t1", "Check the auxiliary parameters of the three-exponent proof");
  auto* audit2 = app.add_subcommand("audit-t2", "Check the auxiliary parameters of the kappa proof");
  for (auto* sub : {audit1, audit2}) {
    sub->add_option("--m", o.m)->required();
    sub->add_option("--n", o.n)->required();
    sub->add_option("--r", o.r)->required();
    sub->add_option("--D", o.D);
    sub->add_option("--c0", o.c0, "Constant c0 (default 2)");
    sub->add_option("--sweep", o.sweep, "Also sweep c0 = 2, 4, ..., 2^K");
  }
  audit1->add_option("--h1", o.h1)->required();
  audit1->add_option("--h2", o.h2)->required();
  audit2->add_option("--h", o.h)->required();

  auto* scan_log = app.add_subcommand("scan-log", "Certified ||log a|| and exponents over a range");
  auto* scan_exp = app.add_subcommand("scan-exp", "Certified ||e^b|| and exponents over a range");
  for (auto* sub : {scan_log, scan_exp}) {
    sub->add_option("--from", o.from)->required();
    sub->add_option("--to", o.to)->required();
    sub->add_option("--exp-ref", o.exp_ref, "Reference exponent (default 40)");
    sub->add_flag("--plot-data", o.plot_data, "Two-column output for plotting");
    sub->add_flag("--resume", o.resume, "Continue an interrupted CSV in --out");
  }

  auto* seq = app.add_subcommand("mahler-seq", "a = round(e^b) and |log a - b| < 1/a");
  seq->add_option("--bmax", o.bmax)->required();
  seq->add_flag("--plot-data", o.plot_data);

  auto* probe = app.add_subcommand("probe", "Compare |e^b - a| with a^(-c)");
  probe->add_option("--bmax", o.bmax)->required();
  probe->add_option("--c", o.c)->required();
  probe->add_flag("--plot-data", o.plot_data);

  auto* cf = app.add_subcommand("cf", "Certified continued fraction");
  cf->add_option("--value", o.value, "ln2, e, pi, golden, sqrt2 or an expression such as e^2")->required();
  cf->add_option("--count", o.count, "Number of partial quotients");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (config.precision.cap < config.precision.start) {
    err << "error: --precision-cap is below --precision\n";
    return kExitUsage;
  }

  const auto selected = app.get_subcommands();
  config.subcommand = selected.front()->get_name();
  if (!o.input.empty()) config.inputs.push_back(o.input);
  const std::string& name = config.subcommand;
  try {
    if (name == "scan-log" || name == "scan-exp") return cmd_scan(name == "scan-exp", o, config, out);
    if (name == "mahler-seq") return cmd_mahler_seq(o, config, out);
    if (name == "probe") return cmd_probe(o, config, out);
    json result;
    if (name == "height") result = cmd_height(o, config);
    else if (name == "mahler-measure") result = cmd_mahler_measure(o, config);
    else if (name == "proj-height") result = cmd_proj_height(o, config);
    else if (name == "bound") result = cmd_bound(o, config);
    else if (name == "lemma2") result = cmd_lemma2(o);
    else if (name == "lic-check") result = cmd_lic_check(o, config);
    else if (name == "lemma3-count") result = cmd_lemma3(o);
    else if (name == "audit-t1") result = cmd_audit(1, o, config);
    else if (name == "audit-t2") result = cmd_audit(2, o, config);
    else if (name == "cf") result = cmd_cf(o, config);
    emit(config, out, result);
    return kExitOk;
  } catch (const HypothesisViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace mahlerkit::cli
