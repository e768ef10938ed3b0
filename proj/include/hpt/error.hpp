#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hpt {

struct SourceSpan {
  std::string file;
  unsigned start_line = 1;
  unsigned start_col = 1;
  unsigned end_line = 1;
  unsigned end_col = 1;

  bool operator==(const SourceSpan&) const = default;

  // Smallest span covering both.
  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    s.end_line = b.end_line;
    s.end_col = b.end_col;
    return s;
  }
};

enum class ErrorKind {
  Lex,
  Parse,
  UnboundName,
  UnsolvedMeta,
  TypeMismatch,
  OccursCheck,
  UnifyFailure,
  KernelType,
  DuplicateName,
  BudgetExceeded,
  AssertionFailed,
  Io,
};

const char* to_string(ErrorKind kind);

// Every failure the toolchain reports. The span is optional in the sense that
// kernel errors raised on core terms carry an empty file name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, SourceSpan span, std::string message,
        std::vector<std::string> notes = {})
      : std::runtime_error(message),
        kind_(kind),
        span_(std::move(span)),
        notes_(std::move(notes)) {}

  ErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& notes() const { return notes_; }
  bool has_span() const { return !span_.file.empty(); }

  void set_span_if_missing(const SourceSpan& span) {
    if (!has_span()) span_ = span;
  }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

 private:
  ErrorKind kind_;
  SourceSpan span_;
  std::vector<std::string> notes_;
};

}  // namespace hpt
