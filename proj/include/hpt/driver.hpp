#pragma once

// Checking sessions over source files and the bundled corpus, with
// human-readable and JSON reporting. The `hpt` executable is a thin wrapper.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpt/corpus.hpp"
#include "hpt/error.hpp"
#include "hpt/kernel.hpp"

namespace hpt {

enum class Severity { Error, Warning, Info };
const char* to_string(Severity s);

struct Diagnostic {
  Severity severity;
  SourceSpan span;
  std::string message;
  std::vector<std::string> notes;
};

Diagnostic diagnostic_from(const Error& e, const std::string& fallback_file);

struct CheckReport {
  std::vector<std::string> files;
  std::size_t declarations_checked = 0;
  std::size_t assertions_passed = 0;
  std::size_t assertions_failed = 0;
  std::vector<Diagnostic> diagnostics;
  std::uint64_t elapsed_ms = 0;
  // Text of every file seen, for source excerpts; not serialized.
  std::map<std::string, std::string> sources;

  bool has_errors() const;
  bool ok() const { return !has_errors() && assertions_failed == 0; }
};

struct Options {
  std::uint64_t step_budget = kDefaultStepBudget;
  bool open_corpus = false;
  bool color = false;
};

// A growing global environment plus the text of every source seen, for
// rendering excerpts.
struct Session {
  GlobalEnv globals;
  std::map<std::string, std::string> sources;
  Options options;
};

// Checks each file in order, stopping at the first error within a file.
void check_source(Session& s, const SourceFile& file, CheckReport& report);

struct EntryResult {
  CorpusEntry entry;
  bool passed;
};

struct CorpusRun {
  CheckReport report;
  std::vector<EntryResult> entries;
  std::vector<std::pair<std::string, bool>> assertions;  // text, passed
  Session session;
};

CorpusRun run_corpus(const CorpusData& data, const Options& options);

// Loads the corpus into a session; errors land in `report`.
Session open_session(const Options& options, CheckReport& report);

CheckReport run_check(const std::vector<std::string>& paths,
                      const Options& options);

struct EvalResult {
  CheckReport report;
  std::optional<std::string> value;
  std::optional<std::string> type;
};

EvalResult run_eval(const std::string& expr, const Options& options);

std::string render_diagnostic(const Diagnostic& d,
                              const std::map<std::string, std::string>& sources,
                              bool color);
std::string render_report(const CheckReport& r, bool color);
std::string summary_line(const CheckReport& r);
// Single JSON object with files, declarations_checked, assertions_passed,
// assertions_failed, diagnostics and elapsed_ms.
std::string report_json(const CheckReport& r);
// The report object extended with `value` and `type` when evaluation succeeded.
std::string eval_json(const EvalResult& r);
// Human output for the corpus command: one line per manifest entry and
// assertion, then diagnostics and the summary.
std::string render_corpus(const CorpusRun& run, bool color);

int exit_code(const CheckReport& r);

}  // namespace hpt
