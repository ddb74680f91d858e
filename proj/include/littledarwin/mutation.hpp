#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "littledarwin/java_parser.hpp"
#include "littledarwin/source_file.hpp"

namespace littledarwin {

// The nine classic operators plus the four null-type operators.
enum class OperatorKind : uint8_t {
  AOR_B,  // binary arithmetic: a + b -> a - b
  AOR_S,  // shortcut arithmetic: ++a -> --a
  AOR_U,  // unary arithmetic: -a -> +a
  LOR,    // logical: a & b -> a | b
  SOR,    // shift: a >> b -> a << b
  ROR,    // relational: a >= b -> a < b
  COR,    // binary conditional: a && b -> a || b
  COD,    // unary conditional delete: !a -> a
  SAOR,   // shortcut assignment: a *= b -> a /= b
  NullifyReturnValue,
  NullifyInputVariable,
  NullifyObjectInitialization,
  RemoveNullCheck,
};

enum class OperatorFamily : uint8_t { Classic, NullType };

const char* operator_name(OperatorKind kind);
OperatorFamily operator_family(OperatorKind kind);
std::optional<OperatorKind> operator_from_name(std::string_view name);
const std::vector<OperatorKind>& all_operators();

class Unmappable : public std::runtime_error {
 public:
  Unmappable(OperatorKind kind, std::string_view token)
      : std::runtime_error(std::string("token '") + std::string(token) +
                           "' outside the domain of " + operator_name(kind)) {}
};

// The fixed token replacement tables. Throws Unmappable when the token is
// outside the operator's domain.
std::string replacement_for(OperatorKind kind, std::string_view operator_token);

// One source-level mutant: a single edit for first-order mutants, plus the
// provenance recorded in the mutant header.
struct Mutant {
  int mutant_id = 0;
  OperatorKind op = OperatorKind::AOR_B;
  std::vector<Edit> edits;
  std::string before;
  std::string after;
  uint32_t line = 0;
  std::vector<int32_t> node_ids;
  std::string source_path;
};

// All first-order mutants under the nine classic operators, restricted to
// `enabled`. Deterministic order: span start, then operator name. AOR-B
// skips sites where either operand subtree contains a string literal.
std::vector<Mutant> enumerate_mutants(const SyntaxTree& tree,
                                      const SourceFile& file,
                                      const std::set<OperatorKind>& enabled);

// All null-type mutants (Nullify*/RemoveNullCheck). Reference-vs-primitive
// typing is decided syntactically.
std::vector<Mutant> enumerate_null_mutants(const SyntaxTree& tree,
                                           const SourceFile& file);

// Classic and null-type mutants merged under one id sequence; this is what
// the mutate phase writes to disk.
std::vector<Mutant> enumerate_all(const SyntaxTree& tree,
                                  const SourceFile& file,
                                  const std::set<OperatorKind>& enabled);

inline constexpr std::string_view kMutantHeaderMagic = "/* LittleDarwin mutant";

// Complete mutant file: provenance header comment followed by the spliced
// source. Stripping the header yields exactly splice(file, m.edits).
std::string render_mutant(const SourceFile& file, const Mutant& m);

// Header values must stay on one line and must not terminate the comment.
std::string sanitize_header_text(std::string_view text);

// Returns the content after the header block, or the whole input when no
// header is present.
std::string_view strip_mutant_header(std::string_view rendered);

}  // namespace littledarwin
