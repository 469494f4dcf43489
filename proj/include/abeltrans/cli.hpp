#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "abeltrans/complements.hpp"
#include "abeltrans/errors.hpp"
#include "abeltrans/oracle.hpp"

namespace abeltrans::cli {

/// Malformed command line, input document or environment. Exit status 2.
class ParseError : public Error {
 public:
  using Error::Error;
};

struct NamedSubgroup {
  std::string name;
  std::vector<std::vector<std::int64_t>> generators;
};

struct ProblemSpec {
  std::string task;
  std::vector<std::int64_t> orders;
  std::vector<NamedSubgroup> subgroups;
  /// Candidate transversal for verify.
  std::vector<std::vector<std::int64_t>> elements;
  bool json = false;
  /// count-common: the subgroup playing B in G = A_1 x ... x A_t x B.
  std::string direct;
  /// count-complements: also list the complements.
  bool list = false;
  /// sweep
  std::string family;
  std::int64_t max_order = 0;
  std::int64_t prime = 2;
  unsigned max_exponent = 0;
  bool construct = true;
  std::uint64_t oracle_cap = kDefaultOracleCap;
  std::uint64_t hom_cap = kDefaultHomCap;
};

/// "1,0,3"
std::vector<std::int64_t> parse_vector(const std::string& text);
/// "1,0;0,1"
std::vector<std::vector<std::int64_t>> parse_vectors(const std::string& text);
/// "A=1,0;0,1"
NamedSubgroup parse_named(const std::string& text);
/// Reads {"orders": [...], "subgroups": {"A": [[...], ...]}, "elements": [[...]]}.
void load_document(const std::string& path, ProblemSpec& spec);

/// Runs one task. Writes the report to out and diagnostics to err; returns
/// the exit status (0 ok, 2 parse, 3 precondition, 4 internal).
int execute(const ProblemSpec& spec, std::ostream& out, std::ostream& err);

/// Parses arguments (without the program name), reads ABELTRANS_CAP and
/// ABELTRANS_ENUM_CAP, and runs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abeltrans::cli
