#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "maxcover/hardness.hpp"
#include "maxcover/instance.hpp"

namespace mkc {

// `cover <n> <u>` then `S<i>: e1 e2 ...` lines; '#' starts a comment.
// Sets that are never listed stay empty.  ParseError carries the line number.
CoverInstance parse_set_family(const std::string& text);
// `graph <n>` then `u v` lines; duplicate edges collapse.
PdsGraph parse_edge_list(const std::string& text);

// Canonical forms; `comment` (may be empty) becomes a leading '#' line.
std::string emit_set_family(const CoverInstance& inst, const std::string& comment = "");
std::string emit_edge_list(const PdsGraph& g, const std::string& comment = "");

// Line-oriented certificate: key=value header, then `active`, `vector` and
// `map` lines holding the source (k,h) instance and the vertex mapping.
std::string emit_certificate(const KhOvInstance& inst, const ReductionOutput& out, std::uint64_t seed);

struct Certificate {
  std::string kind;
  int k = 0;
  int h = 0;
  int sign = 1;
  std::int64_t t = 0;
  std::uint64_t seed = 0;
  KhOvInstance source;
  std::vector<std::vector<Id>> vertex_of;
};
Certificate parse_certificate(const std::string& text);

// Exit codes of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

// Subcommands: solve-cover, solve-pds, gen, verify, verify-certificate, bench.
// args excludes the program name.  MKC_BUDGET / MKC_OMEGA set the defaults of
// --budget / --omega.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mkc
