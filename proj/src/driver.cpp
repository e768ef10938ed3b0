#include "hpt/driver.hpp"

#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hpt/elab.hpp"
#include "hpt/overloaded.hpp"
#include "hpt/surface.hpp"

namespace hpt {

const char* to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "error";
}

Diagnostic diagnostic_from(const Error& e, const std::string& fallback_file) {
  Diagnostic d{Severity::Error, e.span(), e.what(), e.notes()};
  if (d.span.file.empty()) d.span = SourceSpan{fallback_file, 1, 1, 1, 1};
  return d;
}

bool CheckReport::has_errors() const {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::Error) return true;
  return false;
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t millis_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
          .count());
}

std::string show(const TermPtr& t) { return pretty(t, {}, {.sugar = true}); }

// Normal forms of a closed term and of its type.
std::pair<std::string, std::string> normal_strings(const GlobalEnv& globals,
                                                   const ElabTerm& et,
                                                   StepBudget& budget) {
  Val universe = infer_type(globals, {}, et.type, budget);
  unsigned level = universe->as<value::Type>()->level.index;
  TermPtr ty = normalize(globals, et.type, mk_type(level), budget);
  TermPtr value = normalize(globals, et.term, et.type, budget);
  return {show(value), show(ty)};
}

void check_decls(Session& s, const SourceFile& file, CheckReport& report,
                 std::vector<std::pair<std::string, bool>>* assertion_log) {
  report.files.push_back(file.name);
  s.sources[file.name] = file.text;
  report.sources[file.name] = file.text;
  std::vector<SurfaceDecl> decls;
  try {
    decls = parse_file(file.text, file.name);
  } catch (const Error& e) {
    report.diagnostics.push_back(diagnostic_from(e, file.name));
    return;
  }
  for (const auto& d : decls) {
    StepBudget budget(s.options.step_budget);
    try {
      std::visit(
          overloaded{
              [&](const decl::Check& x) {
                ElabTerm et = elaborate_term(s.globals, x.term, budget);
                check_type(s.globals, {}, et.term,
                           eval(s.globals, nullptr, et.type, budget), budget);
                report.diagnostics.push_back(
                    {Severity::Info, d.span, show(et.term) + " : " + show(et.type), {}});
              },
              [&](const decl::Eval& x) {
                ElabTerm et = elaborate_term(s.globals, x.term, budget);
                check_type(s.globals, {}, et.term,
                           eval(s.globals, nullptr, et.type, budget), budget);
                auto [v, t] = normal_strings(s.globals, et, budget);
                report.diagnostics.push_back(
                    {Severity::Info, d.span, v + " : " + t, {}});
              },
              [&](const decl::AssertDefeq& x) {
                ElabAssertion a = elaborate_assertion(s.globals, x, budget);
                bool ok = assert_defeq(s.globals, a.lhs, a.rhs, a.type, budget);
                std::string text = print_surface(x.lhs) + " ~ " +
                                   print_surface(x.rhs) + " : " +
                                   print_surface(x.type);
                if (assertion_log) assertion_log->emplace_back(text, ok);
                if (ok) {
                  ++report.assertions_passed;
                  return;
                }
                ++report.assertions_failed;
                TermPtr l = normalize(s.globals, a.lhs, a.type, budget);
                TermPtr r = normalize(s.globals, a.rhs, a.type, budget);
                report.diagnostics.push_back(
                    {Severity::Error, d.span,
                     "assertion failed: sides are not definitionally equal",
                     {"left normal form:  " + show(l),
                      "right normal form: " + show(r)}});
              },
              [&](const auto&) {
                CoreDecl core = elaborate_decl(s.globals, d, budget);
                s.globals = check_decl(s.globals, core, budget);
                ++report.declarations_checked;
              },
          },
          d.node);
    } catch (Error& e) {
      e.set_span_if_missing(d.span);
      if (assertion_log && std::holds_alternative<decl::AssertDefeq>(d.node)) {
        const auto& x = std::get<decl::AssertDefeq>(d.node);
        assertion_log->emplace_back(print_surface(x.lhs) + " ~ " +
                                        print_surface(x.rhs),
                                    false);
        ++report.assertions_failed;
      }
      report.diagnostics.push_back(diagnostic_from(e, file.name));
      return;
    }
  }
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream f(path, std::ios::binary);
  ok = static_cast<bool>(f);
  if (!ok) return {};
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

void check_source(Session& s, const SourceFile& file, CheckReport& report) {
  check_decls(s, file, report, nullptr);
}

CorpusRun run_corpus(const CorpusData& data, const Options& options) {
  auto start = Clock::now();
  CorpusRun run;
  run.session.options = options;
  for (const auto& f : data.sources) check_decls(run.session, f, run.report, nullptr);
  if (!data.assertions.name.empty())
    check_decls(run.session, data.assertions, run.report, &run.assertions);
  for (const auto& e : data.manifest) {
    bool passed = e.kind == "assertion" || run.session.globals.contains(e.name);
    run.entries.push_back({e, passed});
    if (!passed)
      run.report.diagnostics.push_back(
          {Severity::Error, SourceSpan{"manifest.tsv", 1, 1, 1, 1},
           "manifest entry '" + e.name + "' was not checked",
           {"anchor: " + e.anchor}});
  }
  run.report.elapsed_ms = millis_since(start);
  return run;
}

Session open_session(const Options& options, CheckReport& report) {
  Session s;
  s.options = options;
  if (!options.open_corpus) return s;
  try {
    CorpusData data = load_corpus();
    CheckReport corpus_report;
    for (const auto& f : data.sources) check_decls(s, f, corpus_report, nullptr);
    for (auto& d : corpus_report.diagnostics)
      if (d.severity == Severity::Error) report.diagnostics.push_back(d);
    report.sources.insert(corpus_report.sources.begin(),
                          corpus_report.sources.end());
  } catch (const Error& e) {
    report.diagnostics.push_back(diagnostic_from(e, "<corpus>"));
  }
  return s;
}

CheckReport run_check(const std::vector<std::string>& paths,
                      const Options& options) {
  auto start = Clock::now();
  CheckReport report;
  Session s = open_session(options, report);
  for (const auto& path : paths) {
    bool ok = false;
    std::string text = read_file(path, ok);
    if (!ok) {
      report.files.push_back(path);
      report.diagnostics.push_back({Severity::Error, SourceSpan{path, 1, 1, 1, 1},
                                    "cannot read file", {}});
      continue;
    }
    check_source(s, {path, text}, report);
  }
  report.elapsed_ms = millis_since(start);
  return report;
}

EvalResult run_eval(const std::string& expr, const Options& options) {
  auto start = Clock::now();
  EvalResult out;
  Session s = open_session(options, out.report);
  const std::string file = "<expr>";
  s.sources[file] = expr;
  out.report.sources[file] = expr;
  if (!out.report.has_errors()) {
    StepBudget budget(options.step_budget);
    try {
      SurfacePtr t = parse_term(expr, file);
      ElabTerm et = elaborate_term(s.globals, t, budget);
      check_type(s.globals, {}, et.term, eval(s.globals, nullptr, et.type, budget),
                 budget);
      auto [v, ty] = normal_strings(s.globals, et, budget);
      out.value = v;
      out.type = ty;
    } catch (Error& e) {
      e.set_span_if_missing(SourceSpan{file, 1, 1, 1,
                                       static_cast<unsigned>(expr.size() + 1)});
      out.report.diagnostics.push_back(diagnostic_from(e, file));
    }
  }
  out.report.elapsed_ms = millis_since(start);
  return out;
}

std::string render_diagnostic(const Diagnostic& d,
                              const std::map<std::string, std::string>& sources,
                              bool color) {
  std::string sev = to_string(d.severity);
  if (color) {
    const char* code = d.severity == Severity::Error     ? "1;31"
                       : d.severity == Severity::Warning ? "1;33"
                                                         : "1;36";
    sev = std::string("\x1b[") + code + "m" + sev + "\x1b[0m";
  }
  std::ostringstream out;
  out << d.span.file << ":" << d.span.start_line << ":" << d.span.start_col
      << ": " << sev << ": " << d.message << "\n";
  if (d.severity != Severity::Info) {
    auto it = sources.find(d.span.file);
    if (it != sources.end()) {
      std::istringstream in(it->second);
      std::string line;
      bool found = false;
      for (unsigned i = 0; i < d.span.start_line; ++i)
        found = static_cast<bool>(std::getline(in, line));
      if (found) {
        unsigned start = d.span.start_col;
        unsigned end = d.span.end_line == d.span.start_line
                           ? d.span.end_col
                           : static_cast<unsigned>(line.size() + 1);
        if (end <= start) end = start + 1;
        out << "  " << line << "\n  " << std::string(start - 1, ' ') << "^"
            << std::string(end - start - 1, '~') << "\n";
      }
    }
  }
  for (const auto& n : d.notes) out << "  note: " << n << "\n";
  return out.str();
}

std::string summary_line(const CheckReport& r) {
  std::ostringstream out;
  out << r.files.size() << (r.files.size() == 1 ? " file, " : " files, ")
      << r.declarations_checked << " declarations checked, "
      << r.assertions_passed << " assertions passed, " << r.assertions_failed
      << " failed";
  return out.str();
}

std::string render_report(const CheckReport& r, bool color) {
  std::string out;
  for (const auto& d : r.diagnostics)
    out += render_diagnostic(d, r.sources, color);
  return out + summary_line(r) + "\n";
}

std::string render_corpus(const CorpusRun& run, bool color) {
  std::ostringstream out;
  auto mark = [&](bool ok) {
    std::string word = ok ? "PASS" : "FAIL";
    if (!color) return word;
    return std::string(ok ? "\x1b[32m" : "\x1b[1;31m") + word + "\x1b[0m";
  };
  for (const auto& e : run.entries)
    out << mark(e.passed) << "  " << e.entry.anchor << "  " << e.entry.name
        << " (" << e.entry.kind << ")\n";
  for (const auto& [text, ok] : run.assertions)
    out << mark(ok) << "  defeq  " << text << "\n";
  for (const auto& d : run.report.diagnostics)
    if (d.severity != Severity::Info)
      out << render_diagnostic(d, run.report.sources, color);
  out << summary_line(run.report) << "\n";
  return out.str();
}

namespace {

nlohmann::ordered_json report_object(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["files"] = r.files;
  j["declarations_checked"] = r.declarations_checked;
  j["assertions_passed"] = r.assertions_passed;
  j["assertions_failed"] = r.assertions_failed;
  auto diags = nlohmann::ordered_json::array();
  for (const auto& d : r.diagnostics) {
    nlohmann::ordered_json dj;
    dj["severity"] = to_string(d.severity);
    dj["file"] = d.span.file;
    dj["line"] = d.span.start_line;
    dj["col"] = d.span.start_col;
    dj["message"] = d.message;
    diags.push_back(dj);
  }
  j["diagnostics"] = diags;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace

std::string report_json(const CheckReport& r) { return report_object(r).dump(2); }

std::string eval_json(const EvalResult& r) {
  nlohmann::ordered_json j = report_object(r.report);
  if (r.value) {
    j["value"] = *r.value;
    j["type"] = *r.type;
  }
  return j.dump(2);
}

int exit_code(const CheckReport& r) { return r.ok() ? 0 : 1; }

}  // namespace hpt
