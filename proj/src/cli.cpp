#include "logconc/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "logconc/catalog.hpp"
#include "logconc/certifier.hpp"
#include "logconc/report.hpp"

namespace logconc {

namespace {

constexpr Precision kPrecisionCap = 4096;
constexpr std::size_t kReduceHorizon = 30;

struct Options {
  std::string coeffs;
  std::string initial;
  std::string family;
  std::size_t n = 20;
  Precision precision = kDefaultPrecision;
  std::size_t prefix_cap = kDefaultExactIndexCap;
  std::size_t tail_cap = kDefaultTailCap;
  std::string format = "table";
  std::string out;
  bool increasing = false;
  std::string k_range;
};

std::vector<mpq_class> parse_list(const std::string& text, const char* what) {
  std::vector<mpq_class> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c) != 0; }),
               item.end());
    out.push_back(parse_rational(item));
  }
  if (out.empty() || (!text.empty() && text.back() == ',')) {
    throw Error(ErrorCode::parse_error, std::string("empty entry in ") + what + " list '" + text + "'");
  }
  return out;
}

RecurrenceSpec spec_from_options(const Options& o) {
  if (o.coeffs.empty() == o.family.empty()) {
    throw Error(ErrorCode::parse_error, "give exactly one of --coeffs or --family");
  }
  RecurrenceSpec spec = o.family.empty() ? RecurrenceSpec::with_default_start(parse_list(o.coeffs, "--coeffs"))
                                         : family_spec(parse_family(o.family));
  if (o.initial.empty()) return spec;
  return RecurrenceSpec(spec.coefficients(), parse_list(o.initial, "--initial"), spec.family());
}

std::pair<int, int> parse_k_range(const std::string& text) {
  auto to_int = [&](const std::string& part) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(part, &used);
      if (used == part.size()) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::parse_error, "malformed --k range '" + text + "'; expected a..b");
  };
  const auto dots = text.find("..");
  const int lo = to_int(text.substr(0, dots));
  const int hi = dots == std::string::npos ? lo : to_int(text.substr(dots + 2));
  if (lo < 2 || hi < lo) throw Error(ErrorCode::invalid_spec, "--k range must satisfy 2 <= a <= b");
  return {lo, hi};
}

CertifyOptions certify_options(const Options& o) {
  CertifyOptions c;
  c.numeric.precision = o.precision;
  c.numeric.precision_cap = kPrecisionCap;
  c.prefix_cap = o.prefix_cap;
  c.tail_cap = o.tail_cap;
  c.want_increasing = o.increasing;
  return c;
}

std::string spec_line(const RecurrenceSpec& spec) {
  std::string out = "k=" + std::to_string(spec.order()) + " alpha=(";
  for (std::size_t i = 0; i < spec.order(); ++i) out += (i ? "," : "") + rational_string(spec.coefficients()[i]);
  out += ") start=(";
  for (std::size_t i = 0; i < spec.order(); ++i) out += (i ? "," : "") + rational_string(spec.initial_values()[i]);
  return out + ")";
}

std::string complex_display(const ComplexBall& z) {
  if (z.is_real()) return z.re.display();
  return z.re.display() + "  " + (z.im.mid().sign() < 0 ? "-" : "+") + "i " + abs(z.im).display();
}

std::string index_text(const std::optional<std::size_t>& n) { return n ? std::to_string(*n) : "-"; }

void row(std::ostream& out, const std::string& label, const std::string& value) {
  out << std::left << std::setw(18) << label << value << "\n";
}

// ---------------------------------------------------------------- commands

TermsResult run_terms(const RecurrenceSpec& spec, const Options& o) {
  const TermWindow window = generate_terms(spec, std::max(o.n, spec.order() - 1));
  TermsResult result;
  result.first = 0;
  result.terms.assign(window.terms().begin(), window.terms().begin() + static_cast<std::ptrdiff_t>(o.n + 1));
  return result;
}

RootsResult run_roots(const RecurrenceSpec& spec, const Options& o, std::vector<std::string>& warnings) {
  const CharPoly poly = build_charpoly(spec);
  RootsResult result;
  result.polynomial = poly.to_string();
  result.hypotheses = dominant_zero_hypotheses(spec);
  if (result.hypotheses.status == HypothesisStatus::reducible) {
    warnings.push_back(hypotheses_name(result.hypotheses) + ": roots come in rotated families; run reduce");
    result.dominance_issue =
        ReportError{ErrorCode::reducible, "no dominant zero: support gcd " + std::to_string(result.hypotheses.support_gcd)};
  } else {
    try {
      RootProfile profile = compute_root_profile(spec, {o.precision, kPrecisionCap});
      const TailBound bound = tail_constants(profile, spec.order());
      result.precision = profile.precision;
      result.dominance = DominanceSummary{profile.dominant_root, profile.c1(), profile.derivative_at_dominant,
                                          profile.dominance_ratio, bound.scale, separation_min(profile)};
      result.roots = std::move(profile.roots);
      result.coefficients = std::move(profile.coefficients);
      return result;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::cluster_unresolved) throw;
      result.dominance_issue = ReportError{e.code(), e.what()};
      warnings.push_back(std::string("no certified dominant zero: ") + e.what());
    }
  }
  for (Precision prec = o.precision;; prec *= 2) {
    try {
      result.roots = all_roots(poly, prec);
      result.coefficients = closed_form_coeffs(result.roots, poly);
      result.precision = prec;
      return result;
    } catch (const Error& e) {
      const bool retry = e.code() == ErrorCode::cluster_unresolved || e.code() == ErrorCode::precision_failure;
      if (!retry || prec * 2 > kPrecisionCap) throw;
    }
  }
}

ReduceResult run_reduce(const RecurrenceSpec& spec) {
  ReduceResult result{support_gcd(spec), reduce_support(spec), kReduceHorizon};
  const std::size_t d = result.support_gcd;
  const TermWindow original = generate_terms(spec, d * kReduceHorizon + d - 1);
  const TermWindow reduced = generate_terms(result.reduced, std::max(kReduceHorizon, result.reduced.order() - 1));
  for (std::size_t m = 0; m <= kReduceHorizon; ++m) {
    if (reduced[m] != original[d * m + d - 1]) {
      throw Error(ErrorCode::precision_failure, "reduced sequence disagrees at m=" + std::to_string(m));
    }
  }
  return result;
}

ScanRow scan_one(FamilyKind kind, int k, const CertifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ScanRow row;
  row.k = k;
  const Certificate cert = find_min_N(family_spec(FamilyId{kind, k, {}}), options);
  row.certified = cert.certified();
  if (cert.failure) row.failure = ReportError{*cert.failure, cert.reason};
  if (cert.profile) {
    row.lambda1 = cert.profile->dominant_root;
    row.c1 = cert.profile->c1();
    row.ratio = cert.profile->dominance_ratio;
    row.separation = separation_min(*cert.profile);
  }
  if (cert.bound) row.scale = cert.bound->scale;
  if (cert.decrease.tail) row.n_tail = cert.decrease.tail->index;
  if (cert.certified()) row.n_min = cert.decrease.minimal;
  const auto elapsed = std::chrono::steady_clock::now() - start;
  row.runtime_ms = std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0;
  return row;
}

ScanResult run_scan(const Options& o) {
  if (o.family.empty()) throw Error(ErrorCode::parse_error, "scan needs --family kfib|kbon");
  ScanResult result;
  result.kind = parse_family_kind(o.family);
  std::tie(result.k_lo, result.k_hi) = parse_k_range(o.k_range);
  const CertifyOptions options = certify_options(o);
  std::vector<std::future<ScanRow>> pending;
  for (int k = result.k_lo; k <= result.k_hi; ++k) {
    pending.push_back(std::async(std::launch::async, scan_one, result.kind, k, options));
  }
  for (auto& f : pending) result.rows.push_back(f.get());
  return result;
}

// ------------------------------------------------------------------ output

void write_table(std::ostream& out, const ReportDocument& doc) {
  if (doc.spec) row(out, "spec", spec_line(*doc.spec));
  for (const auto& w : doc.warnings) row(out, "warning", w);
  struct Visitor {
    std::ostream& out;
    void operator()(std::monostate) const {}
    void operator()(const TermsResult& t) const {
      out << std::right << std::setw(6) << "n" << "  a_n\n";
      for (std::size_t i = 0; i < t.terms.size(); ++i) {
        out << std::right << std::setw(6) << t.first + i << "  " << rational_string(t.terms[i]) << "\n";
      }
    }
    void operator()(const RootsResult& r) const {
      row(out, "polynomial", r.polynomial);
      row(out, "hypotheses", hypotheses_name(r.hypotheses));
      row(out, "precision", std::to_string(r.precision) + " bits");
      for (std::size_t i = 0; i < r.roots.size(); ++i) {
        row(out, "lambda_" + std::to_string(i + 1), complex_display(r.roots[i]));
        row(out, "c_" + std::to_string(i + 1), complex_display(r.coefficients[i]));
      }
      if (r.dominance) {
        row(out, "f'(lambda_1)", r.dominance->derivative.display());
        row(out, "r", r.dominance->ratio.display());
        row(out, "C", r.dominance->scale.display());
        row(out, "m(k)", r.dominance->separation.display());
      }
      if (r.dominance_issue) row(out, "dominance", r.dominance_issue->message);
    }
    void operator()(const Certificate& c) const {
      row(out, "status", c.certified() ? "certified" : "failed: " + c.reason);
      row(out, "precision", std::to_string(c.precision) + " bits");
      if (c.profile) {
        row(out, "lambda_1", c.profile->dominant_root.display());
        row(out, "c_1", c.profile->c1().display());
        row(out, "f'(lambda_1)", c.profile->derivative_at_dominant.display());
      }
      if (c.bound) {
        row(out, "C", c.bound->scale.display());
        row(out, "r", c.bound->ratio.display());
      }
      phase(c.decrease, "N_tail", "N_min");
      if (c.increase) phase(*c.increase, "increase tail", "increase_from");
    }
    void phase(const PhaseResult& p, const std::string& tail_label, const std::string& label) const {
      if (p.tail) row(out, tail_label, std::to_string(p.tail->index));
      if (!p.verdicts.empty()) {
        std::string text;
        for (std::size_t i = 0; i < p.verdicts.size(); ++i) {
          text += (i ? " " : "") + std::to_string(p.first_checked + i) + ":" + std::string(verdict_name(p.verdicts[i]));
        }
        row(out, "exact checks", text);
      }
      if (p.minimal) row(out, label, std::to_string(*p.minimal));
    }
    void operator()(const ReduceResult& r) const {
      row(out, "support gcd", std::to_string(r.support_gcd));
      row(out, "reduced", spec_line(r.reduced));
      row(out, "verified", "b_m = a_{dm+d-1} for m <= " + std::to_string(r.verified_through));
    }
    void operator()(const ScanResult& s) const {
      out << "k  status     lambda_1         c_1              r                C                N_tail N_min m(k)\n";
      for (const auto& r : s.rows) {
        auto short_ball = [](const std::optional<Ball>& b) { return b ? b->display(10).substr(0, 16) : "-"; };
        out << std::left << std::setw(3) << r.k << std::setw(11) << (r.certified ? "certified" : "failed")
            << std::setw(17) << short_ball(r.lambda1) << std::setw(17) << short_ball(r.c1) << std::setw(17)
            << short_ball(r.ratio) << std::setw(17) << short_ball(r.scale) << std::setw(7) << index_text(r.n_tail)
            << std::setw(6) << index_text(r.n_min) << short_ball(r.separation) << "\n";
      }
    }
  };
  std::visit(Visitor{out}, doc.results);
}

std::string csv_number(const std::optional<Ball>& b) {
  if (!b) return "";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.15g", b->mid_double());
  return buffer;
}

void write_csv(std::ostream& out, const ReportDocument& doc) {
  if (const auto* terms = std::get_if<TermsResult>(&doc.results)) {
    out << "n,a_n\n";
    for (std::size_t i = 0; i < terms->terms.size(); ++i) {
      out << terms->first + i << "," << rational_string(terms->terms[i]) << "\n";
    }
  } else if (const auto* scan = std::get_if<ScanResult>(&doc.results)) {
    out << "k,lambda1,c1,r,C,N_tail,N_min,m_k,runtime_ms,status\n";
    for (const auto& r : scan->rows) {
      out << r.k << "," << csv_number(r.lambda1) << "," << csv_number(r.c1) << "," << csv_number(r.ratio) << ","
          << csv_number(r.scale) << "," << (r.n_tail ? std::to_string(*r.n_tail) : "") << ","
          << (r.n_min ? std::to_string(*r.n_min) : "") << "," << csv_number(r.separation) << "," << std::fixed
          << std::setprecision(3) << r.runtime_ms << std::defaultfloat << ","
          << (r.certified ? "certified" : std::string(error_code_name(r.failure->code))) << "\n";
    }
  }
}

void emit(const ReportDocument& doc, const Options& o, std::ostream& out) {
  std::ofstream file;
  std::ostream* target = &out;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw Error(ErrorCode::parse_error, "cannot open --out file '" + o.out + "'");
    target = &file;
  }
  if (o.format == "json") {
    *target << serialize_report(doc);
  } else if (o.format == "csv") {
    write_csv(*target, doc);
  } else {
    write_table(*target, doc);
  }
}

void add_spec_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--coeffs", o.coeffs, "alpha_1..alpha_k, comma separated rationals (e.g. 1,0,3/2)");
  cmd->add_option("--family", o.family, "tribonacci, three_bonacci, tetranacci, four_bonacci, fibonacci, kfib:K, kbon:K");
  cmd->add_option("--initial", o.initial, "a_0..a_{k-1}, comma separated (default 0,...,0,1)");
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->envname("LOGCONC_FORMAT")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "write the report to FILE instead of stdout");
}

void add_numeric_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--precision-bits", o.precision, "starting working precision; doubled up to 4096 when needed")
      ->check(CLI::Range(static_cast<Precision>(32), kPrecisionCap))
      ->envname("LOGCONC_PRECISION_BITS")
      ->capture_default_str();
}

void add_certify_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--prefix-cap", o.prefix_cap, "largest index decided by exact comparison")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->envname("LOGCONC_PREFIX_CAP")
      ->capture_default_str();
  cmd->add_option("--tail-cap", o.tail_cap, "largest tail index searched")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100'000'000}))
      ->envname("LOGCONC_TAIL_CAP")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Certified minimal indices for log-concavity of n-th roots of linear recurrences", "logconc"};
  app.require_subcommand(1);

  auto* terms = app.add_subcommand("terms", "exact terms a_0..a_n");
  add_spec_options(terms, o);
  terms->add_option("--n", o.n, "last index")->capture_default_str();
  add_output_options(terms, o);

  auto* roots = app.add_subcommand("roots", "certified roots, c_i, r, C, f'(lambda_1) and m(k)");
  add_spec_options(roots, o);
  add_numeric_options(roots, o);
  add_output_options(roots, o);

  auto* min_n = app.add_subcommand("min-n", "certificate for the minimal N with R_n decreasing from N on");
  add_spec_options(min_n, o);
  add_numeric_options(min_n, o);
  add_certify_options(min_n, o);
  min_n->add_flag("--increasing", o.increasing, "also certify where the n-th root starts increasing");
  add_output_options(min_n, o);

  auto* reduce = app.add_subcommand("reduce", "lower-order recurrence for support gcd d > 1");
  add_spec_options(reduce, o);
  add_output_options(reduce, o);

  auto* scan = app.add_subcommand("scan", "certify a family over a range of k");
  scan->add_option("--family", o.family, "kfib or kbon")->required();
  scan->add_option("--k", o.k_range, "range a..b")->required();
  add_numeric_options(scan, o);
  add_certify_options(scan, o);
  add_output_options(scan, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: parse-error: " << e.what() << "\n";
    return 2;
  }

  ReportDocument doc;
  doc.command = args;
  doc.timestamp = utc_timestamp();
  int status = 0;
  try {
    if (o.format == "csv" && !terms->parsed() && !scan->parsed()) {
      throw Error(ErrorCode::parse_error, "csv output is only available for terms and scan; use json or table");
    }
    if (scan->parsed()) {
      ScanResult result = run_scan(o);
      for (const auto& r : result.rows) {
        if (!r.certified && status == 0) status = exit_code_for(r.failure->code);
      }
      doc.results = std::move(result);
    } else {
      const RecurrenceSpec spec = spec_from_options(o);
      doc.spec = spec;
      if (terms->parsed()) {
        doc.results = run_terms(spec, o);
      } else if (roots->parsed()) {
        doc.results = run_roots(spec, o, doc.warnings);
      } else if (reduce->parsed()) {
        doc.results = run_reduce(spec);
      } else {
        Certificate cert = find_min_N(spec, certify_options(o));
        if (cert.failure) {
          doc.error = ReportError{*cert.failure, cert.reason};
          status = exit_code_for(*cert.failure);
        }
        doc.results = std::move(cert);
      }
    }
  } catch (const Error& e) {
    doc.error = ReportError{e.code(), e.what()};
    status = exit_code_for(e.code());
  } catch (const std::exception& e) {
    doc.error = ReportError{ErrorCode::precision_failure, std::string("internal error: ") + e.what()};
    status = 3;
  }
  if (doc.error) err << "error: " << error_code_name(doc.error->code) << ": " << doc.error->message << "\n";
  for (const auto& w : doc.warnings) err << "warning: " << w << "\n";
  try {
    // Failed certificates still carry their partial data; other errors only
    // produce a document in json mode.
    if (!doc.error || o.format == "json" || std::holds_alternative<Certificate>(doc.results)) {
      emit(doc, o, out);
    }
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return status;
}

}  // namespace logconc
