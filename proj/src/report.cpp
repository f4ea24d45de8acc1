#include "logconc/report.hpp"

#include <chrono>
#include <ctime>
#include <utility>

#include "json.hpp"

namespace logconc {

namespace {

using Json = nlohmann::ordered_json;

template <typename T, typename F>
Json optional_json(const std::optional<T>& value, F&& convert) {
  return value ? convert(*value) : Json(nullptr);
}

template <typename T, typename F>
std::optional<T> optional_from(const Json& j, F&& convert) {
  if (j.is_null()) return std::nullopt;
  return convert(j);
}

Json index_json(const std::optional<std::size_t>& n) {
  return optional_json(n, [](std::size_t v) { return Json(v); });
}

std::optional<std::size_t> index_from(const Json& j) {
  return optional_from<std::size_t>(j, [](const Json& v) { return v.get<std::size_t>(); });
}

// Balls

Json ball_json(const Ball& b) { return Json{{"mid", b.mid_string()}, {"rad", b.rad_string()}, {"bits", b.precision()}}; }

Ball ball_from(const Json& j) {
  return Ball::from_strings(j.at("mid").get<std::string>(), j.at("rad").get<std::string>(),
                            j.at("bits").get<Precision>());
}

Json cball_json(const ComplexBall& z) { return Json{{"re", ball_json(z.re)}, {"im", ball_json(z.im)}}; }

ComplexBall cball_from(const Json& j) { return ComplexBall(ball_from(j.at("re")), ball_from(j.at("im"))); }

Json cballs_json(const std::vector<ComplexBall>& values) {
  Json out = Json::array();
  for (const auto& z : values) out.push_back(cball_json(z));
  return out;
}

std::vector<ComplexBall> cballs_from(const Json& j) {
  std::vector<ComplexBall> out;
  for (const auto& item : j) out.push_back(cball_from(item));
  return out;
}

// Rationals and specs

Json rationals_json(std::span<const mpq_class> values) {
  Json out = Json::array();
  for (const auto& q : values) out.push_back(rational_string(q));
  return out;
}

std::vector<mpq_class> rationals_from(const Json& j) {
  std::vector<mpq_class> out;
  for (const auto& item : j) out.push_back(parse_rational(item.get<std::string>()));
  return out;
}

Json spec_json(const RecurrenceSpec& spec) {
  return Json{{"order", spec.order()},
              {"coefficients", rationals_json(spec.coefficients())},
              {"initial_values", rationals_json(spec.initial_values())},
              {"family", optional_json(spec.family(), [](const FamilyTag& tag) {
                 return Json{{"name", tag.name}, {"parameter", tag.parameter}};
               })}};
}

RecurrenceSpec spec_from(const Json& j) {
  auto family = optional_from<FamilyTag>(j.at("family"), [](const Json& f) {
    return FamilyTag{f.at("name").get<std::string>(), f.at("parameter").get<int>()};
  });
  RecurrenceSpec spec(rationals_from(j.at("coefficients")), rationals_from(j.at("initial_values")), std::move(family));
  if (spec.order() != j.at("order").get<std::size_t>()) {
    throw Error(ErrorCode::parse_error, "spec order does not match its coefficient list");
  }
  return spec;
}

Json error_json(const ReportError& e) {
  return Json{{"code", error_code_name(e.code)}, {"exit_code", exit_code_for(e.code)}, {"message", e.message}};
}

ReportError error_from(const Json& j) {
  return ReportError{parse_error_code(j.at("code").get<std::string>()), j.at("message").get<std::string>()};
}

// Numeric results

std::string hypotheses_status_name(HypothesisStatus status) {
  switch (status) {
    case HypothesisStatus::holds: return "holds";
    case HypothesisStatus::reducible: return "reducible";
    case HypothesisStatus::unknown: return "unknown";
  }
  return "unknown";
}

HypothesisStatus hypotheses_status_from(const std::string& name) {
  if (name == "holds") return HypothesisStatus::holds;
  if (name == "reducible") return HypothesisStatus::reducible;
  if (name == "unknown") return HypothesisStatus::unknown;
  throw Error(ErrorCode::parse_error, "unknown hypotheses status '" + name + "'");
}

Json profile_json(const RootProfile& p) {
  return Json{{"precision_bits", p.precision},
              {"dominant_root", ball_json(p.dominant_root)},
              {"derivative_at_dominant", ball_json(p.derivative_at_dominant)},
              {"dominance_ratio", ball_json(p.dominance_ratio)},
              {"distinct", p.distinct},
              {"roots", cballs_json(p.roots)},
              {"coefficients", cballs_json(p.coefficients)}};
}

RootProfile profile_from(const Json& j) {
  RootProfile p;
  p.precision = j.at("precision_bits").get<Precision>();
  p.dominant_root = ball_from(j.at("dominant_root"));
  p.derivative_at_dominant = ball_from(j.at("derivative_at_dominant"));
  p.dominance_ratio = ball_from(j.at("dominance_ratio"));
  p.distinct = j.at("distinct").get<bool>();
  p.roots = cballs_from(j.at("roots"));
  p.coefficients = cballs_from(j.at("coefficients"));
  return p;
}

Json bound_json(const TailBound& b) {
  return Json{{"C", ball_json(b.scale)}, {"r", ball_json(b.ratio)}, {"n0", b.start}};
}

TailBound bound_from(const Json& j) {
  return TailBound{ball_from(j.at("C")), ball_from(j.at("r")), j.at("n0").get<std::size_t>()};
}

Json tail_json(const TailCertificate& t) {
  return Json{{"index", t.index},
              {"M_N", ball_json(t.m_at)},
              {"M_N_minus_1", ball_json(t.m_before)},
              {"lhs_a", ball_json(t.lhs_a)},
              {"rhs_a", ball_json(t.rhs_a)},
              {"rhs_b", ball_json(t.rhs_b)},
              {"propagation_bound", ball_json(t.propagation)}};
}

TailCertificate tail_from(const Json& j) {
  return TailCertificate{j.at("index").get<std::size_t>(), ball_from(j.at("M_N")),     ball_from(j.at("M_N_minus_1")),
                         ball_from(j.at("lhs_a")),         ball_from(j.at("rhs_a")),   ball_from(j.at("rhs_b")),
                         ball_from(j.at("propagation_bound"))};
}

Verdict verdict_from(const std::string& name) {
  for (Verdict v : {Verdict::holds, Verdict::fails, Verdict::undefined}) {
    if (verdict_name(v) == name) return v;
  }
  throw Error(ErrorCode::parse_error, "unknown verdict '" + name + "'");
}

Json phase_json(const PhaseResult& p) {
  Json verdicts = Json::array();
  for (Verdict v : p.verdicts) verdicts.push_back(verdict_name(v));
  return Json{{"tail", optional_json(p.tail, tail_json)},
              {"first_checked", p.first_checked},
              {"verdicts", std::move(verdicts)},
              {"n_first", index_json(p.n_first)},
              {"minimal", index_json(p.minimal)}};
}

PhaseResult phase_from(const Json& j) {
  PhaseResult p;
  p.tail = optional_from<TailCertificate>(j.at("tail"), tail_from);
  p.first_checked = j.at("first_checked").get<std::size_t>();
  for (const auto& v : j.at("verdicts")) p.verdicts.push_back(verdict_from(v.get<std::string>()));
  p.n_first = index_from(j.at("n_first"));
  p.minimal = index_from(j.at("minimal"));
  return p;
}

Json certificate_json(const Certificate& c) {
  std::optional<ReportError> failure;
  if (c.failure) failure = ReportError{*c.failure, c.reason};
  return Json{{"kind", "certificate"},
              {"status", c.certified() ? "certified" : "failed"},
              {"failure", optional_json(failure, error_json)},
              {"precision_bits", c.precision},
              {"prefix_cap", c.prefix_cap},
              {"spec", spec_json(c.spec)},
              {"profile", optional_json(c.profile, profile_json)},
              {"tail_bound", optional_json(c.bound, bound_json)},
              {"decrease", phase_json(c.decrease)},
              {"increase", optional_json(c.increase, phase_json)}};
}

Certificate certificate_from(const Json& j) {
  Certificate c(spec_from(j.at("spec")));
  const std::string status = j.at("status").get<std::string>();
  if (status != "certified" && status != "failed") throw Error(ErrorCode::parse_error, "unknown status " + status);
  c.status = status == "certified" ? CertificateStatus::certified : CertificateStatus::failed;
  if (auto failure = optional_from<ReportError>(j.at("failure"), error_from)) {
    c.failure = failure->code;
    c.reason = failure->message;
  }
  c.precision = j.at("precision_bits").get<Precision>();
  c.prefix_cap = j.at("prefix_cap").get<std::size_t>();
  c.profile = optional_from<RootProfile>(j.at("profile"), profile_from);
  c.bound = optional_from<TailBound>(j.at("tail_bound"), bound_from);
  c.decrease = phase_from(j.at("decrease"));
  c.increase = optional_from<PhaseResult>(j.at("increase"), phase_from);
  return c;
}

Json terms_json(const TermsResult& t) {
  return Json{{"kind", "terms"}, {"first", t.first}, {"terms", rationals_json(t.terms)}};
}

TermsResult terms_from(const Json& j) {
  return TermsResult{j.at("first").get<std::size_t>(), rationals_from(j.at("terms"))};
}

Json dominance_json(const DominanceSummary& d) {
  return Json{{"lambda1", ball_json(d.lambda1)},  {"c1", ball_json(d.c1)},
              {"f_prime_lambda1", ball_json(d.derivative)}, {"r", ball_json(d.ratio)},
              {"C", ball_json(d.scale)},          {"separation_m", ball_json(d.separation)}};
}

DominanceSummary dominance_from(const Json& j) {
  return DominanceSummary{ball_from(j.at("lambda1")), ball_from(j.at("c1")), ball_from(j.at("f_prime_lambda1")),
                          ball_from(j.at("r")),       ball_from(j.at("C")),  ball_from(j.at("separation_m"))};
}

Json roots_json(const RootsResult& r) {
  return Json{{"kind", "roots"},
              {"polynomial", r.polynomial},
              {"hypotheses", Json{{"status", hypotheses_status_name(r.hypotheses.status)},
                                  {"support_gcd", r.hypotheses.support_gcd}}},
              {"precision_bits", r.precision},
              {"roots", cballs_json(r.roots)},
              {"coefficients", cballs_json(r.coefficients)},
              {"dominance", optional_json(r.dominance, dominance_json)},
              {"dominance_issue", optional_json(r.dominance_issue, error_json)}};
}

RootsResult roots_from(const Json& j) {
  RootsResult r;
  r.polynomial = j.at("polynomial").get<std::string>();
  r.hypotheses.status = hypotheses_status_from(j.at("hypotheses").at("status").get<std::string>());
  r.hypotheses.support_gcd = j.at("hypotheses").at("support_gcd").get<std::size_t>();
  r.precision = j.at("precision_bits").get<Precision>();
  r.roots = cballs_from(j.at("roots"));
  r.coefficients = cballs_from(j.at("coefficients"));
  r.dominance = optional_from<DominanceSummary>(j.at("dominance"), dominance_from);
  r.dominance_issue = optional_from<ReportError>(j.at("dominance_issue"), error_from);
  return r;
}

Json reduce_json(const ReduceResult& r) {
  return Json{{"kind", "reduce"},
              {"support_gcd", r.support_gcd},
              {"reduced", spec_json(r.reduced)},
              {"verified_through", r.verified_through}};
}

ReduceResult reduce_from(const Json& j) {
  return ReduceResult{j.at("support_gcd").get<std::size_t>(), spec_from(j.at("reduced")),
                      j.at("verified_through").get<std::size_t>()};
}

Json scan_row_json(const ScanRow& row) {
  return Json{{"k", row.k},
              {"status", row.certified ? "certified" : "failed"},
              {"failure", optional_json(row.failure, error_json)},
              {"lambda1", optional_json(row.lambda1, ball_json)},
              {"c1", optional_json(row.c1, ball_json)},
              {"r", optional_json(row.ratio, ball_json)},
              {"C", optional_json(row.scale, ball_json)},
              {"N_tail", index_json(row.n_tail)},
              {"N_min", index_json(row.n_min)},
              {"separation_m", optional_json(row.separation, ball_json)},
              {"runtime_ms", row.runtime_ms}};
}

ScanRow scan_row_from(const Json& j) {
  ScanRow row;
  row.k = j.at("k").get<int>();
  row.certified = j.at("status").get<std::string>() == "certified";
  row.failure = optional_from<ReportError>(j.at("failure"), error_from);
  row.lambda1 = optional_from<Ball>(j.at("lambda1"), ball_from);
  row.c1 = optional_from<Ball>(j.at("c1"), ball_from);
  row.ratio = optional_from<Ball>(j.at("r"), ball_from);
  row.scale = optional_from<Ball>(j.at("C"), ball_from);
  row.n_tail = index_from(j.at("N_tail"));
  row.n_min = index_from(j.at("N_min"));
  row.separation = optional_from<Ball>(j.at("separation_m"), ball_from);
  row.runtime_ms = j.at("runtime_ms").get<double>();
  return row;
}

Json scan_json(const ScanResult& s) {
  Json rows = Json::array();
  for (const auto& row : s.rows) rows.push_back(scan_row_json(row));
  return Json{{"kind", "scan"},
              {"family", family_kind_name(s.kind)},
              {"k_lo", s.k_lo},
              {"k_hi", s.k_hi},
              {"rows", std::move(rows)}};
}

ScanResult scan_from(const Json& j) {
  ScanResult s;
  s.kind = parse_family_kind(j.at("family").get<std::string>());
  s.k_lo = j.at("k_lo").get<int>();
  s.k_hi = j.at("k_hi").get<int>();
  for (const auto& row : j.at("rows")) s.rows.push_back(scan_row_from(row));
  return s;
}

struct ResultsToJson {
  Json operator()(std::monostate) const { return nullptr; }
  Json operator()(const TermsResult& r) const { return terms_json(r); }
  Json operator()(const RootsResult& r) const { return roots_json(r); }
  Json operator()(const Certificate& r) const { return certificate_json(r); }
  Json operator()(const ReduceResult& r) const { return reduce_json(r); }
  Json operator()(const ScanResult& r) const { return scan_json(r); }
};

ReportResults results_from(const Json& j) {
  if (j.is_null()) return std::monostate{};
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "terms") return terms_from(j);
  if (kind == "roots") return roots_from(j);
  if (kind == "certificate") return certificate_from(j);
  if (kind == "reduce") return reduce_from(j);
  if (kind == "scan") return scan_from(j);
  throw Error(ErrorCode::parse_error, "unknown results kind '" + kind + "'");
}

}  // namespace

std::string serialize_report(const ReportDocument& doc) {
  Json j{{"schema_version", doc.schema_version},
         {"command", doc.command},
         {"timestamp", doc.timestamp},
         {"status", doc.error ? "error" : "ok"},
         {"error", optional_json(doc.error, error_json)},
         {"warnings", doc.warnings},
         {"spec", optional_json(doc.spec, spec_json)},
         {"results", std::visit(ResultsToJson{}, doc.results)}};
  return j.dump(2) + "\n";
}

ReportDocument parse_report(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed report: ") + e.what());
  }
  try {
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kSchemaVersion) {
      throw Error(ErrorCode::parse_error, "unsupported schema version " + std::to_string(doc.schema_version));
    }
    doc.command = j.at("command").get<std::vector<std::string>>();
    doc.timestamp = j.at("timestamp").get<std::string>();
    doc.error = optional_from<ReportError>(j.at("error"), error_from);
    doc.warnings = j.at("warnings").get<std::vector<std::string>>();
    doc.spec = optional_from<RecurrenceSpec>(j.at("spec"), spec_from);
    doc.results = results_from(j.at("results"));
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("report does not match the schema: ") + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

}  // namespace logconc
