#pragma once

#include <map>
#include <string>
#include <string_view>

#include "asurf/model.hpp"

namespace asurf {

struct SourceSpan {
  std::string file = "<input>";
  int line = 1;    // 1-based
  int column = 1;  // 1-based
};

class ParseError : public Error {
public:
  ParseError(SourceSpan span, std::string message, std::string expected = "")
      : Error(span.file + ":" + std::to_string(span.line) + ":" +
              std::to_string(span.column) + ": " + message),
        span_(std::move(span)),
        message_(std::move(message)),
        expected_(std::move(expected)) {}

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::string& expected() const { return expected_; }

private:
  SourceSpan span_;
  std::string message_;
  std::string expected_;
};

// Parses ASM-DL source into a validated model. Fail-fast: throws ParseError
// at the first lexical, syntactic, or semantic problem. On success the
// returned model produces no error-severity diagnostics from validate().
SystemModel parse_model(std::string_view source,
                        const std::string& filename = "<input>");

// Canonical textual form; parse_model(pretty_print(m)) is structurally
// identical to m.
std::string pretty_print(const SystemModel& model);

struct ImpactTable {
  std::map<std::string, double> loss_kw;  // the imp(d) values
  std::map<std::string, double> load_kw;  // retained for reporting only
};

// CSV with the exact header `data,load_kw,loss_kw`. Throws ParseError on a
// malformed row, a negative loss, or a duplicate identifier.
ImpactTable parse_impact_table(std::string_view source,
                               const std::string& filename = "<input>");

// Overwrites impact values of matching data items (source becomes Computed).
// Table entries without a corresponding data item are ignored.
void apply_impacts(SystemModel& model, const std::map<std::string, double>& loss_kw);

}  // namespace asurf
