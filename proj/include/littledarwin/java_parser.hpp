#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "littledarwin/java_lexer.hpp"
#include "littledarwin/source_file.hpp"

namespace littledarwin {

class UnknownNode : public std::runtime_error {
 public:
  explicit UnknownNode(int32_t id)
      : std::runtime_error("unknown node id " + std::to_string(id)) {}
};

enum class NodeKind : uint8_t {
  CompilationUnit,
  PackageDecl,
  ImportDecl,
  ClassDecl,
  InterfaceDecl,
  EnumDecl,
  AnnotationTypeDecl,
  EnumConstant,
  FieldDecl,
  MethodDecl,
  ConstructorDecl,
  InitializerBlock,
  Param,
  TypeRef,
  TypeParams,
  Annotation,
  Block,
  IfStmt,
  WhileStmt,
  DoStmt,
  ForStmt,
  ForEachStmt,
  SwitchStmt,
  SwitchCase,
  TryStmt,
  CatchClause,
  ReturnStmt,
  ThrowStmt,
  BreakStmt,
  ContinueStmt,
  SynchronizedStmt,
  LabeledStmt,
  ExprStmt,
  LocalVarDecl,
  VarDeclarator,
  AssertStmt,
  EmptyStmt,
  BinaryExpr,
  UnaryExpr,
  PostfixExpr,
  AssignExpr,
  ConditionalExpr,
  InstanceOfExpr,
  CastExpr,
  CallExpr,
  FieldAccessExpr,
  ArrayAccessExpr,
  NewExpr,
  ArrayNewExpr,
  ArrayInitializer,
  LiteralExpr,
  NameExpr,
  ThisExpr,
  SuperExpr,
  ParenExpr,
  LambdaExpr,
  MethodRefExpr,
  ClassLiteralExpr,
};

const char* node_kind_name(NodeKind kind);

struct Node {
  // Bit flags; which ones apply depends on the node kind.
  static constexpr uint16_t kStringLiteral = 1 << 0;   // LiteralExpr
  static constexpr uint16_t kNullLiteral = 1 << 1;     // LiteralExpr
  static constexpr uint16_t kPrimitiveType = 1 << 2;   // TypeRef: primitive, no dims
  static constexpr uint16_t kVoidType = 1 << 3;        // TypeRef
  static constexpr uint16_t kReferenceType = 1 << 4;   // Param: declared type is a reference
  static constexpr uint16_t kReturnsReference = 1 << 5;  // MethodDecl
  static constexpr uint16_t kFinal = 1 << 6;           // Param
  static constexpr uint16_t kVarargs = 1 << 7;         // Param
  static constexpr uint16_t kQualifiedNew = 1 << 8;    // NewExpr: a.new Inner()
  static constexpr uint16_t kAnonymousBody = 1 << 9;   // NewExpr with class body
  static constexpr uint16_t kStatic = 1 << 10;         // member decls
  static constexpr uint16_t kAbstract = 1 << 11;       // member decls

  int32_t id = -1;
  NodeKind kind = NodeKind::CompilationUnit;
  ByteSpan span;
  uint32_t line = 1;  // 1-based line of span.start
  int32_t parent = -1;
  std::vector<int32_t> children;
  // Binary/Unary/Postfix/Assign/InstanceOf: the operator token text.
  std::string operator_token;
  // The operator token's own span (the edit target for token mutations).
  ByteSpan op_span;
  // Kind-dependent name: declared name for type/method/param/declarator
  // nodes, member name for field access and calls, label text.
  std::string name;
  uint16_t flags = 0;

  bool has_flag(uint16_t f) const { return (flags & f) != 0; }
};

struct SyntaxTree {
  std::vector<Node> nodes;
  int32_t root = -1;

  const Node& node(int32_t id) const {
    if (id < 0 || static_cast<size_t>(id) >= nodes.size()) throw UnknownNode(id);
    return nodes[static_cast<size_t>(id)];
  }

  // Walks ancestors of `id` (inclusive) until `pred` matches; -1 if none.
  template <typename Pred>
  int32_t find_ancestor(int32_t id, Pred pred) const {
    for (int32_t cur = id; cur >= 0; cur = node(cur).parent) {
      if (pred(node(cur))) return cur;
    }
    return -1;
  }

  // Preorder walk of the subtree rooted at `id`.
  template <typename Fn>
  void visit_subtree(int32_t id, Fn fn) const {
    fn(node(id));
    for (int32_t child : node(id).children) visit_subtree(child, fn);
  }
};

// Parses one Java source file into a span-annotated tree. Covers the Java 8
// statement and expression grammar with full operator precedence; generics,
// annotations and lambdas are accepted and spanned. Throws ParseError.
SyntaxTree parse_source(const SourceFile& file);

// Source text and 1-based line of the smallest statement-like node enclosing
// `node_id` (the node itself when it is a statement). Falls back to the text
// of the node's own line when no enclosing statement exists.
std::pair<std::string, uint32_t> statement_text(const SyntaxTree& tree,
                                                const SourceFile& file,
                                                int32_t node_id);

// True for node kinds that statement_text treats as statements. Field
// declarations count: an expression in a field initializer has no enclosing
// statement proper.
bool is_statement_like(NodeKind kind);

}  // namespace littledarwin
