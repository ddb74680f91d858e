#include "littledarwin/java_parser.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace littledarwin {

namespace {

constexpr size_t kScanFail = std::numeric_limits<size_t>::max();
constexpr int kMaxDepth = 1500;

bool is_modifier_keyword(std::string_view t) {
  return t == "public" || t == "protected" || t == "private" || t == "static" ||
         t == "abstract" || t == "final" || t == "native" ||
         t == "synchronized" || t == "transient" || t == "volatile" ||
         t == "strictfp" || t == "default";
}

bool is_assignment_op(std::string_view t) {
  return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" ||
         t == "%=" || t == "&=" || t == "|=" || t == "^=" || t == "<<=" ||
         t == ">>=" || t == ">>>=";
}

int binary_precedence(const Token& t) {
  if (t.kind == TokenKind::Keyword) return t.text == "instanceof" ? 7 : 0;
  if (t.kind != TokenKind::Punct) return 0;
  std::string_view s = t.text;
  if (s == "||") return 1;
  if (s == "&&") return 2;
  if (s == "|") return 3;
  if (s == "^") return 4;
  if (s == "&") return 5;
  if (s == "==" || s == "!=") return 6;
  if (s == "<" || s == ">" || s == "<=" || s == ">=") return 7;
  if (s == "<<" || s == ">>" || s == ">>>") return 8;
  if (s == "+" || s == "-") return 9;
  if (s == "*" || s == "/" || s == "%") return 10;
  return 0;
}

struct MemberPrefix {
  uint32_t start = std::numeric_limits<uint32_t>::max();
  std::vector<int32_t> annotations;
  uint16_t flags = 0;
  bool any = false;

  uint32_t start_or(uint32_t fallback) const {
    return any ? start : fallback;
  }
};

class Parser {
 public:
  explicit Parser(const SourceFile& file)
      : file_(file), toks_(lex_java(file.content(), file.path())) {}

  SyntaxTree parse() {
    if (toks_.size() <= 1) {
      throw ParseError(file_.path(), 1, "empty compilation unit");
    }
    int32_t root = parse_compilation_unit();
    if (!at_end()) fail("unexpected trailing input");
    SyntaxTree tree;
    tree.nodes = std::move(nodes_);
    tree.root = root;
    return tree;
  }

 private:
  const SourceFile& file_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<Node> nodes_;
  int depth_ = 0;

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) p.fail("nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
  };

  // ---- token cursor -------------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(size_t k) const {
    size_t i = pos_ + k;
    return toks_[i < toks_.size() ? i : toks_.size() - 1];
  }
  bool at_end() const { return cur().kind == TokenKind::End; }
  void advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }

  bool at_punct(std::string_view t) const { return cur().is_punct(t); }
  bool at_keyword(std::string_view t) const { return cur().is_keyword(t); }
  bool accept_punct(std::string_view t) {
    if (!at_punct(t)) return false;
    advance();
    return true;
  }
  bool accept_keyword(std::string_view t) {
    if (!at_keyword(t)) return false;
    advance();
    return true;
  }
  Token expect_punct(std::string_view t) {
    if (!at_punct(t)) fail("expected '" + std::string(t) + "'");
    Token tok = cur();
    advance();
    return tok;
  }
  void expect_keyword(std::string_view t) {
    if (!at_keyword(t)) fail("expected '" + std::string(t) + "'");
    advance();
  }
  Token expect_identifier() {
    if (cur().kind != TokenKind::Identifier) fail("expected identifier");
    Token tok = cur();
    advance();
    return tok;
  }
  uint32_t prev_end() const {
    return pos_ > 0 ? toks_[pos_ - 1].end : 0;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string context(cur().text.substr(0, 24));
    throw ParseError(file_.path(), cur().line,
                     msg + (context.empty() ? "" : " near '" + context + "'"));
  }

  // Consumes one '>' from the head of the current token, splitting compound
  // tokens lexed greedily (">>", ">>>", ">>=", ...). Returns the byte offset
  // just past the consumed '>'.
  uint32_t consume_type_close() {
    Token& t = toks_[pos_];
    if (t.kind != TokenKind::Punct || t.text.empty() || t.text[0] != '>') {
      fail("expected '>'");
    }
    uint32_t end = t.start + 1;
    if (t.text.size() == 1) {
      advance();
    } else {
      t.start += 1;
      t.text = t.text.substr(1);
    }
    return end;
  }

  // ---- node building ------------------------------------------------------

  int32_t make(NodeKind kind, uint32_t start) {
    Node n;
    n.id = static_cast<int32_t>(nodes_.size());
    n.kind = kind;
    n.span.start = start;
    n.span.end = start;
    n.line = file_.line_of(start);
    nodes_.push_back(std::move(n));
    return nodes_.back().id;
  }
  Node& node(int32_t id) { return nodes_[static_cast<size_t>(id)]; }
  void close(int32_t id, uint32_t end) { node(id).span.end = end; }
  void adopt(int32_t parent, int32_t child) {
    node(child).parent = parent;
    node(parent).children.push_back(child);
  }

  // ---- speculative scanners (no tokens consumed, no nodes built) ----------

  size_t scan_qualified_name(size_t i) const {
    if (toks_[i].kind != TokenKind::Identifier) return kScanFail;
    ++i;
    while (toks_[i].is_punct(".") &&
           toks_[i + 1].kind == TokenKind::Identifier) {
      i += 2;
    }
    return i;
  }

  size_t scan_annotation(size_t i) const {
    if (!toks_[i].is_punct("@")) return kScanFail;
    size_t j = scan_qualified_name(i + 1);
    if (j == kScanFail) return kScanFail;
    if (toks_[j].is_punct("(")) {
      j = scan_balanced(j, "(", ")");
      if (j == kScanFail) return kScanFail;
    }
    return j;
  }

  // From the index of the opening token, returns the index just past the
  // matching close, tracking only the requested pair.
  size_t scan_balanced(size_t i, std::string_view open,
                       std::string_view close_tok) const {
    int depth = 0;
    for (; toks_[i].kind != TokenKind::End; ++i) {
      if (toks_[i].is_punct(open)) {
        ++depth;
      } else if (toks_[i].is_punct(close_tok)) {
        if (--depth == 0) return i + 1;
      }
    }
    return kScanFail;
  }

  int leading_gt(const Token& t) const {
    if (t.kind != TokenKind::Punct) return 0;
    int n = 0;
    for (char c : t.text) {
      if (c != '>') break;
      ++n;
    }
    return n;
  }

  // At '<'; returns the index just past the balanced type-argument list.
  size_t scan_type_args(size_t i) const {
    if (!toks_[i].is_punct("<")) return kScanFail;
    int depth = 0;
    for (; toks_[i].kind != TokenKind::End; ++i) {
      const Token& t = toks_[i];
      if (t.is_punct("<")) {
        ++depth;
        continue;
      }
      int gts = leading_gt(t);
      if (gts > 0) {
        if (gts > depth) return kScanFail;
        depth -= gts;
        if (depth == 0) {
          // an '=' tail (">=", ">>=") would leave us mid-token
          return t.text.size() == static_cast<size_t>(gts) ? i + 1 : kScanFail;
        }
        continue;
      }
      bool ok = t.kind == TokenKind::Identifier || t.is_punct(",") ||
                t.is_punct(".") || t.is_punct("?") || t.is_punct("[") ||
                t.is_punct("]") || t.is_punct("&") || t.is_punct("@") ||
                t.is_punct("(") || t.is_punct(")") ||
                (t.kind == TokenKind::Keyword &&
                 (is_primitive_type_keyword(t.text) || t.text == "extends" ||
                  t.text == "super")) ||
                t.is_literal();
      // literals/parens admitted only as annotation arguments
      if (!ok) return kScanFail;
    }
    return kScanFail;
  }

  // Scans a type: annotations, primitive or qualified name with type
  // arguments, array dims. Optionally '&'-joined intersection bounds.
  size_t scan_type(size_t i, bool allow_intersection = false) const {
    while (toks_[i].is_punct("@")) {
      size_t j = scan_annotation(i);
      if (j == kScanFail) return kScanFail;
      i = j;
    }
    const Token& t = toks_[i];
    if (t.kind == TokenKind::Keyword && is_primitive_type_keyword(t.text)) {
      ++i;
    } else if (t.kind == TokenKind::Identifier) {
      ++i;
      if (toks_[i].is_punct("<")) {
        size_t j = scan_type_args(i);
        if (j == kScanFail) return kScanFail;
        i = j;
      }
      while (toks_[i].is_punct(".") &&
             toks_[i + 1].kind == TokenKind::Identifier) {
        i += 2;
        if (toks_[i].is_punct("<")) {
          size_t j = scan_type_args(i);
          if (j == kScanFail) return kScanFail;
          i = j;
        }
      }
    } else {
      return kScanFail;
    }
    while (toks_[i].is_punct("[") && toks_[i + 1].is_punct("]")) i += 2;
    if (allow_intersection) {
      while (toks_[i].is_punct("&")) {
        size_t j = scan_type(i + 1, false);
        if (j == kScanFail) return kScanFail;
        i = j;
      }
    }
    return i;
  }

  // From a statement (or for-init) start: is this a local variable
  // declaration? Checks `[final|annotation]* Type Identifier` followed by
  // '=', ';', ',' or C-style dims.
  bool scan_local_var_decl(size_t i, bool foreach = false) const {
    for (;;) {
      if (toks_[i].is_keyword("final")) {
        ++i;
        continue;
      }
      if (toks_[i].is_punct("@")) {
        size_t j = scan_annotation(i);
        if (j == kScanFail) return false;
        i = j;
        continue;
      }
      break;
    }
    size_t j = scan_type(i);
    if (j == kScanFail) return false;
    if (toks_[j].kind != TokenKind::Identifier) return false;
    ++j;
    while (toks_[j].is_punct("[") && toks_[j + 1].is_punct("]")) j += 2;
    if (foreach) return toks_[j].is_punct(":");
    return toks_[j].is_punct("=") || toks_[j].is_punct(";") ||
           toks_[j].is_punct(",");
  }

  bool scan_lambda_at_paren() const {
    size_t j = scan_balanced(pos_, "(", ")");
    return j != kScanFail && toks_[j].is_punct("->");
  }

  // At '(' in unary position: cast detection per the JLS lookahead rules.
  bool scan_cast() const {
    size_t j = scan_type(pos_ + 1, /*allow_intersection=*/true);
    if (j == kScanFail || !toks_[j].is_punct(")")) return false;
    size_t first = pos_ + 1;
    while (toks_[first].is_punct("@")) {
      size_t a = scan_annotation(first);
      if (a == kScanFail) return false;
      first = a;
    }
    bool primitive = toks_[first].kind == TokenKind::Keyword &&
                     is_primitive_type_keyword(toks_[first].text);
    const Token& after = toks_[j + 1];
    if (after.kind == TokenKind::Identifier || after.is_literal() ||
        after.is_punct("(") || after.is_punct("!") || after.is_punct("~") ||
        after.is_keyword("this") || after.is_keyword("super") ||
        after.is_keyword("new") ||
        (after.kind == TokenKind::Keyword &&
         is_primitive_type_keyword(after.text))) {
      return true;
    }
    if (primitive && (after.is_punct("+") || after.is_punct("-") ||
                      after.is_punct("++") || after.is_punct("--"))) {
      return true;
    }
    return false;
  }

  // ---- committed type parsing --------------------------------------------

  // Consumes a type without building nodes. Returns the end offset;
  // `primitive`/`dims`/`is_void`/`name` describe the base type.
  uint32_t parse_type_tokens(bool* primitive = nullptr, int* dims = nullptr,
                             bool* is_void = nullptr,
                             std::string* name = nullptr) {
    while (at_punct("@")) parse_annotation_tokens();
    uint32_t end;
    bool prim = false;
    bool voidt = false;
    std::string base;
    if (cur().kind == TokenKind::Keyword &&
        (is_primitive_type_keyword(cur().text) || cur().text == "void")) {
      prim = is_primitive_type_keyword(cur().text);
      voidt = cur().text == "void";
      base = std::string(cur().text);
      end = cur().end;
      advance();
    } else if (cur().kind == TokenKind::Identifier) {
      base = std::string(cur().text);
      end = cur().end;
      advance();
      if (at_punct("<")) end = parse_type_args_tokens();
      while (at_punct(".") && ahead(1).kind == TokenKind::Identifier) {
        advance();
        base += ".";
        base += std::string(cur().text);
        end = cur().end;
        advance();
        if (at_punct("<")) end = parse_type_args_tokens();
      }
    } else {
      fail("expected type");
    }
    int d = 0;
    for (;;) {
      while (at_punct("@")) parse_annotation_tokens();
      if (at_punct("[") && ahead(1).is_punct("]")) {
        advance();
        end = cur().end;
        advance();
        ++d;
      } else {
        break;
      }
    }
    if (primitive) *primitive = prim;
    if (dims) *dims = d;
    if (is_void) *is_void = voidt;
    if (name) *name = base;
    return end;
  }

  // At '<': consumes a type-argument list, returns the offset past the
  // closing '>'.
  uint32_t parse_type_args_tokens() {
    expect_punct("<");
    if (leading_gt(cur()) > 0) return consume_type_close();  // diamond
    for (;;) {
      while (at_punct("@")) parse_annotation_tokens();
      if (accept_punct("?")) {
        if (accept_keyword("extends") || accept_keyword("super")) {
          parse_type_tokens();
        }
      } else {
        parse_type_tokens();
      }
      if (!accept_punct(",")) break;
    }
    return consume_type_close();
  }

  void parse_annotation_tokens() {
    expect_punct("@");
    expect_identifier();
    while (at_punct(".") && ahead(1).kind == TokenKind::Identifier) {
      advance();
      advance();
    }
    if (at_punct("(")) {
      int depth = 0;
      do {
        if (at_punct("(")) ++depth;
        if (at_punct(")")) --depth;
        advance();
      } while (depth > 0 && !at_end());
    }
  }

  int32_t parse_annotation_node() {
    uint32_t start = cur().start;
    int32_t id = make(NodeKind::Annotation, start);
    size_t name_pos = pos_ + 1;
    parse_annotation_tokens();
    node(id).name = std::string(toks_[name_pos].text);
    close(id, prev_end());
    return id;
  }

  // Builds a leaf TypeRef node covering the whole type text.
  int32_t parse_type_ref() {
    uint32_t start = cur().start;
    int32_t id = make(NodeKind::TypeRef, start);
    bool prim = false;
    bool voidt = false;
    int dims = 0;
    std::string name;
    uint32_t end = parse_type_tokens(&prim, &dims, &voidt, &name);
    Node& n = node(id);
    n.name = std::move(name);
    if (voidt) n.flags |= Node::kVoidType;
    if (prim && dims == 0) n.flags |= Node::kPrimitiveType;
    close(id, end);
    return id;
  }

  // ---- modifiers ----------------------------------------------------------

  MemberPrefix parse_member_prefix() {
    MemberPrefix pre;
    for (;;) {
      if (cur().kind == TokenKind::Keyword && is_modifier_keyword(cur().text)) {
        if (!pre.any) pre.start = cur().start;
        pre.any = true;
        if (cur().text == "static") pre.flags |= Node::kStatic;
        if (cur().text == "abstract") pre.flags |= Node::kAbstract;
        if (cur().text == "final") pre.flags |= Node::kFinal;
        advance();
        continue;
      }
      if (at_punct("@") && ahead(1).kind == TokenKind::Identifier) {
        if (!pre.any) pre.start = cur().start;
        pre.any = true;
        pre.annotations.push_back(parse_annotation_node());
        continue;
      }
      break;
    }
    return pre;
  }

  // ---- compilation unit ---------------------------------------------------

  int32_t parse_compilation_unit() {
    int32_t unit = make(NodeKind::CompilationUnit, 0);
    close(unit, static_cast<uint32_t>(file_.content().size()));

    MemberPrefix pre = parse_member_prefix();
    if (at_keyword("package")) {
      int32_t pkg = make(NodeKind::PackageDecl, pre.start_or(cur().start));
      for (int32_t a : pre.annotations) adopt(pkg, a);
      advance();
      size_t name_pos = pos_;
      size_t j = scan_qualified_name(pos_);
      if (j == kScanFail) fail("expected package name");
      pos_ = j;
      node(pkg).name = qualified_text(name_pos, j);
      expect_punct(";");
      close(pkg, prev_end());
      adopt(unit, pkg);
      pre = MemberPrefix{};
    }
    while (at_keyword("import")) {
      if (pre.any) fail("modifiers before import");
      int32_t imp = make(NodeKind::ImportDecl, cur().start);
      advance();
      accept_keyword("static");
      size_t name_pos = pos_;
      size_t j = scan_qualified_name(pos_);
      if (j == kScanFail) fail("expected import name");
      pos_ = j;
      node(imp).name = qualified_text(name_pos, j);
      if (accept_punct(".")) expect_punct("*");
      expect_punct(";");
      close(imp, prev_end());
      adopt(unit, imp);
    }
    while (!at_end()) {
      if (accept_punct(";")) continue;
      if (!pre.any) pre = parse_member_prefix();
      adopt(unit, parse_type_decl(pre));
      pre = MemberPrefix{};
    }
    return unit;
  }

  std::string qualified_text(size_t from, size_t to) const {
    std::string out;
    for (size_t i = from; i < to; ++i) out += std::string(toks_[i].text);
    return out;
  }

  // ---- type declarations --------------------------------------------------

  int32_t parse_type_decl(const MemberPrefix& pre) {
    uint32_t start = pre.start_or(cur().start);
    if (at_keyword("class")) {
      int32_t id = make(NodeKind::ClassDecl, start);
      node(id).flags |= pre.flags;
      for (int32_t a : pre.annotations) adopt(id, a);
      advance();
      Token name = expect_identifier();
      node(id).name = std::string(name.text);
      if (at_punct("<")) adopt(id, parse_type_params());
      if (accept_keyword("extends")) adopt(id, parse_type_ref());
      if (accept_keyword("implements")) {
        do {
          adopt(id, parse_type_ref());
        } while (accept_punct(","));
      }
      parse_class_body(id, node(id).name, /*is_enum=*/false);
      close(id, prev_end());
      return id;
    }
    if (at_keyword("interface")) {
      int32_t id = make(NodeKind::InterfaceDecl, start);
      node(id).flags |= pre.flags;
      for (int32_t a : pre.annotations) adopt(id, a);
      advance();
      Token name = expect_identifier();
      node(id).name = std::string(name.text);
      if (at_punct("<")) adopt(id, parse_type_params());
      if (accept_keyword("extends")) {
        do {
          adopt(id, parse_type_ref());
        } while (accept_punct(","));
      }
      parse_class_body(id, node(id).name, /*is_enum=*/false);
      close(id, prev_end());
      return id;
    }
    if (at_keyword("enum")) {
      int32_t id = make(NodeKind::EnumDecl, start);
      node(id).flags |= pre.flags;
      for (int32_t a : pre.annotations) adopt(id, a);
      advance();
      Token name = expect_identifier();
      node(id).name = std::string(name.text);
      if (accept_keyword("implements")) {
        do {
          adopt(id, parse_type_ref());
        } while (accept_punct(","));
      }
      parse_enum_body(id);
      close(id, prev_end());
      return id;
    }
    if (at_punct("@") && ahead(1).is_keyword("interface")) {
      int32_t id = make(NodeKind::AnnotationTypeDecl, start);
      node(id).flags |= pre.flags;
      for (int32_t a : pre.annotations) adopt(id, a);
      advance();
      advance();
      Token name = expect_identifier();
      node(id).name = std::string(name.text);
      parse_class_body(id, node(id).name, /*is_enum=*/false);
      close(id, prev_end());
      return id;
    }
    fail("expected type declaration");
  }

  int32_t parse_type_params() {
    int32_t id = make(NodeKind::TypeParams, cur().start);
    expect_punct("<");
    uint32_t end;
    for (;;) {
      while (at_punct("@")) parse_annotation_tokens();
      expect_identifier();
      if (accept_keyword("extends")) {
        parse_type_tokens();
        while (accept_punct("&")) parse_type_tokens();
      }
      if (!accept_punct(",")) break;
    }
    end = consume_type_close();
    close(id, end);
    return id;
  }

  void parse_enum_body(int32_t owner) {
    expect_punct("{");
    while (!at_punct(";") && !at_punct("}")) {
      MemberPrefix pre = parse_member_prefix();  // constant annotations
      uint32_t start = pre.start_or(cur().start);
      Token name = expect_identifier();
      int32_t c = make(NodeKind::EnumConstant, start);
      node(c).name = std::string(name.text);
      for (int32_t a : pre.annotations) adopt(c, a);
      if (at_punct("(")) {
        for (int32_t arg : parse_args()) adopt(c, arg);
      }
      if (at_punct("{")) parse_class_body(c, "", false);
      close(c, prev_end());
      adopt(owner, c);
      if (!accept_punct(",")) break;
    }
    if (accept_punct(";")) {
      while (!at_punct("}")) {
        if (accept_punct(";")) continue;
        parse_member(owner, node(owner).name);
      }
    }
    expect_punct("}");
  }

  void parse_class_body(int32_t owner, const std::string& type_name,
                        bool is_enum) {
    (void)is_enum;
    expect_punct("{");
    while (!at_punct("}")) {
      if (at_end()) fail("unterminated class body");
      if (accept_punct(";")) continue;
      parse_member(owner, type_name);
    }
    expect_punct("}");
  }

  void parse_member(int32_t owner, const std::string& type_name) {
    DepthGuard guard(*this);
    MemberPrefix pre = parse_member_prefix();
    // initializer block
    if (at_punct("{")) {
      int32_t id = make(NodeKind::InitializerBlock, pre.start_or(cur().start));
      node(id).flags |= pre.flags;
      adopt(id, parse_block());
      close(id, prev_end());
      adopt(owner, id);
      return;
    }
    if (at_keyword("class") || at_keyword("interface") || at_keyword("enum") ||
        (at_punct("@") && ahead(1).is_keyword("interface"))) {
      adopt(owner, parse_type_decl(pre));
      return;
    }
    int32_t type_params = -1;
    if (at_punct("<")) type_params = parse_type_params();
    // constructor
    if (cur().kind == TokenKind::Identifier && cur().text == type_name &&
        ahead(1).is_punct("(")) {
      uint32_t start = pre.start_or(
          type_params >= 0 ? node(type_params).span.start : cur().start);
      int32_t id = make(NodeKind::ConstructorDecl, start);
      node(id).flags |= pre.flags;
      node(id).name = std::string(cur().text);
      for (int32_t a : pre.annotations) adopt(id, a);
      if (type_params >= 0) adopt(id, type_params);
      advance();
      parse_params_into(id);
      if (at_keyword("throws")) parse_throws_tokens();
      adopt(id, parse_block());
      close(id, prev_end());
      adopt(owner, id);
      return;
    }
    // method or field: both start with a type
    uint32_t start = pre.start_or(
        type_params >= 0 ? node(type_params).span.start : cur().start);
    bool must_be_method = type_params >= 0 || at_keyword("void");
    if (!must_be_method) {
      size_t j = scan_type(pos_);
      if (j == kScanFail) fail("expected member declaration");
      must_be_method = toks_[j].kind == TokenKind::Identifier &&
                       toks_[j + 1].is_punct("(");
      if (!must_be_method) {
        // field declaration
        int32_t id = make(NodeKind::FieldDecl, start);
        node(id).flags |= pre.flags;
        for (int32_t a : pre.annotations) adopt(id, a);
        adopt(id, parse_type_ref());
        parse_declarators_into(id);
        expect_punct(";");
        close(id, prev_end());
        adopt(owner, id);
        return;
      }
    }
    int32_t id = make(NodeKind::MethodDecl, start);
    node(id).flags |= pre.flags;
    for (int32_t a : pre.annotations) adopt(id, a);
    if (type_params >= 0) adopt(id, type_params);
    int32_t ret = parse_type_ref();
    adopt(id, ret);
    Token name = expect_identifier();
    node(id).name = std::string(name.text);
    parse_params_into(id);
    int extra_dims = 0;
    while (at_punct("[") && ahead(1).is_punct("]")) {
      advance();
      advance();
      ++extra_dims;
    }
    if (at_keyword("throws")) parse_throws_tokens();
    const Node& rt = node(ret);
    bool returns_ref = !rt.has_flag(Node::kVoidType) &&
                       (!rt.has_flag(Node::kPrimitiveType) || extra_dims > 0);
    if (returns_ref) node(id).flags |= Node::kReturnsReference;
    if (at_punct("{")) {
      adopt(id, parse_block());
    } else if (at_keyword("default")) {
      // annotation type element default value
      advance();
      parse_element_value_tokens();
      expect_punct(";");
    } else {
      expect_punct(";");
    }
    close(id, prev_end());
    adopt(owner, id);
  }

  void parse_throws_tokens() {
    expect_keyword("throws");
    do {
      parse_type_tokens();
    } while (accept_punct(","));
  }

  void parse_element_value_tokens() {
    // annotation element default: consume a balanced value up to ';'
    int depth = 0;
    while (!at_end()) {
      if (at_punct("(") || at_punct("{") || at_punct("[")) ++depth;
      if (at_punct(")") || at_punct("}") || at_punct("]")) --depth;
      if (depth == 0 && at_punct(";")) return;
      if (depth < 0) fail("malformed default value");
      advance();
    }
    fail("unterminated default value");
  }

  void parse_params_into(int32_t owner) {
    expect_punct("(");
    if (accept_punct(")")) return;
    do {
      uint32_t start = cur().start;
      std::vector<int32_t> annos;
      uint16_t flags = 0;
      for (;;) {
        if (at_keyword("final")) {
          flags |= Node::kFinal;
          advance();
          continue;
        }
        if (at_punct("@") && ahead(1).kind == TokenKind::Identifier) {
          annos.push_back(parse_annotation_node());
          continue;
        }
        break;
      }
      int32_t p = make(NodeKind::Param, start);
      node(p).flags |= flags;
      for (int32_t a : annos) adopt(p, a);
      int32_t type = parse_type_ref();
      adopt(p, type);
      bool varargs = accept_punct("...");
      Token name;
      if (at_keyword("this")) {
        // receiver parameter; never a mutation target
        name = cur();
        advance();
        node(p).flags |= Node::kFinal;
      } else {
        name = expect_identifier();
      }
      node(p).name = std::string(name.text);
      int extra_dims = 0;
      while (at_punct("[") && ahead(1).is_punct("]")) {
        advance();
        advance();
        ++extra_dims;
      }
      bool reference = varargs || extra_dims > 0 ||
                       !node(type).has_flag(Node::kPrimitiveType);
      if (node(type).has_flag(Node::kVoidType)) reference = false;
      if (reference) node(p).flags |= Node::kReferenceType;
      if (varargs) node(p).flags |= Node::kVarargs;
      close(p, prev_end());
      adopt(owner, p);
    } while (accept_punct(","));
    expect_punct(")");
  }

  // Shared by fields and local variable declarations.
  void parse_declarators_into(int32_t owner) {
    do {
      Token name = expect_identifier();
      int32_t d = make(NodeKind::VarDeclarator, name.start);
      node(d).name = std::string(name.text);
      while (at_punct("[") && ahead(1).is_punct("]")) {
        advance();
        advance();
      }
      if (accept_punct("=")) {
        adopt(d, at_punct("{") ? parse_array_initializer() : parse_expression());
      }
      close(d, prev_end());
      adopt(owner, d);
    } while (accept_punct(","));
  }

  // ---- statements ---------------------------------------------------------

  int32_t parse_block() {
    int32_t id = make(NodeKind::Block, cur().start);
    expect_punct("{");
    while (!at_punct("}")) {
      if (at_end()) fail("unterminated block");
      adopt(id, parse_statement());
    }
    expect_punct("}");
    close(id, prev_end());
    return id;
  }

  // Local variable declaration without the trailing ';' (shared with for-init
  // and try-resources).
  int32_t parse_local_var_core() {
    uint32_t start = cur().start;
    int32_t id = make(NodeKind::LocalVarDecl, start);
    for (;;) {
      if (at_keyword("final")) {
        node(id).flags |= Node::kFinal;
        advance();
        continue;
      }
      if (at_punct("@") && ahead(1).kind == TokenKind::Identifier) {
        adopt(id, parse_annotation_node());
        continue;
      }
      break;
    }
    adopt(id, parse_type_ref());
    parse_declarators_into(id);
    close(id, prev_end());
    return id;
  }

  int32_t parse_statement() {
    DepthGuard guard(*this);
    const Token& t = cur();
    if (t.is_punct("{")) return parse_block();
    if (t.is_punct(";")) {
      int32_t id = make(NodeKind::EmptyStmt, t.start);
      advance();
      close(id, prev_end());
      return id;
    }
    if (t.kind == TokenKind::Keyword) {
      std::string_view kw = t.text;
      if (kw == "if") return parse_if();
      if (kw == "while") return parse_while();
      if (kw == "do") return parse_do();
      if (kw == "for") return parse_for();
      if (kw == "switch") return parse_switch();
      if (kw == "try") return parse_try();
      if (kw == "return") {
        int32_t id = make(NodeKind::ReturnStmt, t.start);
        advance();
        if (!at_punct(";")) adopt(id, parse_expression());
        expect_punct(";");
        close(id, prev_end());
        return id;
      }
      if (kw == "throw") {
        int32_t id = make(NodeKind::ThrowStmt, t.start);
        advance();
        adopt(id, parse_expression());
        expect_punct(";");
        close(id, prev_end());
        return id;
      }
      if (kw == "break" || kw == "continue") {
        int32_t id = make(kw == "break" ? NodeKind::BreakStmt
                                        : NodeKind::ContinueStmt,
                          t.start);
        advance();
        if (cur().kind == TokenKind::Identifier) {
          node(id).name = std::string(cur().text);
          advance();
        }
        expect_punct(";");
        close(id, prev_end());
        return id;
      }
      if (kw == "synchronized") {
        int32_t id = make(NodeKind::SynchronizedStmt, t.start);
        advance();
        expect_punct("(");
        adopt(id, parse_expression());
        expect_punct(")");
        adopt(id, parse_block());
        close(id, prev_end());
        return id;
      }
      if (kw == "assert") {
        int32_t id = make(NodeKind::AssertStmt, t.start);
        advance();
        adopt(id, parse_expression());
        if (accept_punct(":")) adopt(id, parse_expression());
        expect_punct(";");
        close(id, prev_end());
        return id;
      }
      if (kw == "class" || kw == "interface" || kw == "enum" ||
          kw == "abstract" || kw == "final" || kw == "static") {
        // local class, or a final local variable
        size_t i = pos_;
        while (toks_[i].is_keyword("final") || toks_[i].is_keyword("static") ||
               toks_[i].is_keyword("abstract")) {
          ++i;
        }
        if (toks_[i].is_keyword("class") || toks_[i].is_keyword("interface") ||
            toks_[i].is_keyword("enum")) {
          MemberPrefix pre = parse_member_prefix();
          return parse_type_decl(pre);
        }
        return parse_local_var_statement();
      }
    }
    if (t.is_punct("@") && ahead(1).kind == TokenKind::Identifier) {
      return parse_local_var_statement();  // annotated local or local class
    }
    if (t.kind == TokenKind::Identifier && ahead(1).is_punct(":")) {
      int32_t id = make(NodeKind::LabeledStmt, t.start);
      node(id).name = std::string(t.text);
      advance();
      advance();
      adopt(id, parse_statement());
      close(id, prev_end());
      return id;
    }
    if (scan_local_var_decl(pos_)) return parse_local_var_statement();
    int32_t id = make(NodeKind::ExprStmt, t.start);
    adopt(id, parse_expression());
    expect_punct(";");
    close(id, prev_end());
    return id;
  }

  int32_t parse_local_var_statement() {
    if (!scan_local_var_decl(pos_)) {
      // could still be an annotated local class
      size_t i = pos_;
      while (toks_[i].is_punct("@")) {
        size_t j = scan_annotation(i);
        if (j == kScanFail) break;
        i = j;
      }
      while (toks_[i].is_keyword("final") || toks_[i].is_keyword("static") ||
             toks_[i].is_keyword("abstract")) {
        ++i;
      }
      if (toks_[i].is_keyword("class") || toks_[i].is_keyword("interface") ||
          toks_[i].is_keyword("enum")) {
        MemberPrefix pre = parse_member_prefix();
        return parse_type_decl(pre);
      }
      fail("expected local variable declaration");
    }
    int32_t id = parse_local_var_core();
    expect_punct(";");
    close(id, prev_end());
    return id;
  }

  int32_t parse_if() {
    int32_t id = make(NodeKind::IfStmt, cur().start);
    expect_keyword("if");
    expect_punct("(");
    adopt(id, parse_expression());
    expect_punct(")");
    adopt(id, parse_statement());
    if (accept_keyword("else")) adopt(id, parse_statement());
    close(id, prev_end());
    return id;
  }

  int32_t parse_while() {
    int32_t id = make(NodeKind::WhileStmt, cur().start);
    expect_keyword("while");
    expect_punct("(");
    adopt(id, parse_expression());
    expect_punct(")");
    adopt(id, parse_statement());
    close(id, prev_end());
    return id;
  }

  int32_t parse_do() {
    int32_t id = make(NodeKind::DoStmt, cur().start);
    expect_keyword("do");
    adopt(id, parse_statement());
    expect_keyword("while");
    expect_punct("(");
    adopt(id, parse_expression());
    expect_punct(")");
    expect_punct(";");
    close(id, prev_end());
    return id;
  }

  int32_t parse_for() {
    uint32_t start = cur().start;
    expect_keyword("for");
    expect_punct("(");
    if (scan_local_var_decl(pos_, /*foreach=*/true)) {
      int32_t id = make(NodeKind::ForEachStmt, start);
      adopt(id, parse_local_var_core());
      expect_punct(":");
      adopt(id, parse_expression());
      expect_punct(")");
      adopt(id, parse_statement());
      close(id, prev_end());
      return id;
    }
    int32_t id = make(NodeKind::ForStmt, start);
    if (!at_punct(";")) {
      if (scan_local_var_decl(pos_)) {
        adopt(id, parse_local_var_core());
      } else {
        do {
          adopt(id, parse_expression());
        } while (accept_punct(","));
      }
    }
    expect_punct(";");
    if (!at_punct(";")) adopt(id, parse_expression());
    expect_punct(";");
    if (!at_punct(")")) {
      do {
        adopt(id, parse_expression());
      } while (accept_punct(","));
    }
    expect_punct(")");
    adopt(id, parse_statement());
    close(id, prev_end());
    return id;
  }

  int32_t parse_switch() {
    int32_t id = make(NodeKind::SwitchStmt, cur().start);
    expect_keyword("switch");
    expect_punct("(");
    adopt(id, parse_expression());
    expect_punct(")");
    expect_punct("{");
    while (!at_punct("}")) {
      if (at_end()) fail("unterminated switch");
      int32_t grp = make(NodeKind::SwitchCase, cur().start);
      bool any_label = false;
      for (;;) {
        if (at_keyword("case")) {
          advance();
          adopt(grp, parse_expression());
          expect_punct(":");
          any_label = true;
        } else if (at_keyword("default") && ahead(1).is_punct(":")) {
          node(grp).name = "default";
          advance();
          advance();
          any_label = true;
        } else {
          break;
        }
      }
      if (!any_label) fail("expected switch label");
      while (!at_keyword("case") && !at_punct("}") &&
             !(at_keyword("default") && ahead(1).is_punct(":"))) {
        adopt(grp, parse_statement());
      }
      close(grp, prev_end());
      adopt(id, grp);
    }
    expect_punct("}");
    close(id, prev_end());
    return id;
  }

  int32_t parse_try() {
    int32_t id = make(NodeKind::TryStmt, cur().start);
    expect_keyword("try");
    if (accept_punct("(")) {
      for (;;) {
        if (at_punct(")")) break;
        if (scan_local_var_decl(pos_) ||
            (scan_type(pos_) != kScanFail &&
             toks_[scan_type(pos_)].kind == TokenKind::Identifier)) {
          adopt(id, parse_local_var_core());
        } else {
          adopt(id, parse_expression());
        }
        if (!accept_punct(";")) break;
      }
      expect_punct(")");
    }
    adopt(id, parse_block());
    while (at_keyword("catch")) {
      int32_t cc = make(NodeKind::CatchClause, cur().start);
      advance();
      expect_punct("(");
      uint32_t pstart = cur().start;
      int32_t p = make(NodeKind::Param, pstart);
      for (;;) {
        if (at_keyword("final")) {
          node(p).flags |= Node::kFinal;
          advance();
          continue;
        }
        if (at_punct("@") && ahead(1).kind == TokenKind::Identifier) {
          adopt(p, parse_annotation_node());
          continue;
        }
        break;
      }
      adopt(p, parse_type_ref());
      while (accept_punct("|")) adopt(p, parse_type_ref());
      Token name = expect_identifier();
      node(p).name = std::string(name.text);
      node(p).flags |= Node::kReferenceType;
      close(p, prev_end());
      adopt(cc, p);
      expect_punct(")");
      adopt(cc, parse_block());
      close(cc, prev_end());
      adopt(id, cc);
    }
    if (accept_keyword("finally")) adopt(id, parse_block());
    close(id, prev_end());
    return id;
  }

  // ---- expressions --------------------------------------------------------

  int32_t parse_expression() {
    DepthGuard guard(*this);
    return parse_assignment();
  }

  int32_t parse_assignment() {
    int32_t lhs = parse_ternary();
    if (cur().kind == TokenKind::Punct && is_assignment_op(cur().text)) {
      Token op = cur();
      int32_t id = make(NodeKind::AssignExpr, node(lhs).span.start);
      node(id).operator_token = std::string(op.text);
      node(id).op_span = {op.start, op.end};
      advance();
      adopt(id, lhs);
      int32_t rhs = parse_assignment();
      adopt(id, rhs);
      close(id, node(rhs).span.end);
      return id;
    }
    return lhs;
  }

  int32_t parse_ternary() {
    int32_t cond = parse_binary(1);
    if (!at_punct("?")) return cond;
    int32_t id = make(NodeKind::ConditionalExpr, node(cond).span.start);
    advance();
    adopt(id, cond);
    adopt(id, parse_expression());
    expect_punct(":");
    int32_t rhs = parse_assignment();
    adopt(id, rhs);
    close(id, node(rhs).span.end);
    return id;
  }

  int32_t parse_binary(int min_prec) {
    int32_t left = parse_unary();
    for (;;) {
      if (at_keyword("instanceof") && 7 >= min_prec) {
        Token op = cur();
        int32_t id = make(NodeKind::InstanceOfExpr, node(left).span.start);
        node(id).operator_token = "instanceof";
        node(id).op_span = {op.start, op.end};
        advance();
        adopt(id, left);
        int32_t type = parse_type_ref();
        adopt(id, type);
        close(id, node(type).span.end);
        left = id;
        continue;
      }
      int prec = binary_precedence(cur());
      if (prec == 0 || prec < min_prec) return left;
      Token op = cur();
      advance();
      int32_t right = parse_binary(prec + 1);
      int32_t id = make(NodeKind::BinaryExpr, node(left).span.start);
      node(id).operator_token = std::string(op.text);
      node(id).op_span = {op.start, op.end};
      adopt(id, left);
      adopt(id, right);
      close(id, node(right).span.end);
      left = id;
    }
  }

  int32_t parse_unary() {
    DepthGuard guard(*this);
    const Token& t = cur();
    if (t.is_punct("+") || t.is_punct("-") || t.is_punct("++") ||
        t.is_punct("--") || t.is_punct("!") || t.is_punct("~")) {
      int32_t id = make(NodeKind::UnaryExpr, t.start);
      node(id).operator_token = std::string(t.text);
      node(id).op_span = {t.start, t.end};
      advance();
      int32_t operand = parse_unary();
      adopt(id, operand);
      close(id, node(operand).span.end);
      return id;
    }
    if (t.is_punct("(")) {
      if (scan_lambda_at_paren()) return parse_paren_lambda();
      if (scan_cast()) {
        int32_t id = make(NodeKind::CastExpr, t.start);
        advance();
        adopt(id, parse_type_ref());
        while (accept_punct("&")) adopt(id, parse_type_ref());
        expect_punct(")");
        int32_t operand = parse_unary();
        adopt(id, operand);
        close(id, node(operand).span.end);
        return id;
      }
    }
    return parse_postfix();
  }

  int32_t parse_postfix() {
    int32_t p = parse_primary();
    for (;;) {
      if (at_punct(".")) {
        if (ahead(1).kind == TokenKind::Identifier) {
          if (ahead(2).is_punct("(")) {
            int32_t id = make(NodeKind::CallExpr, node(p).span.start);
            advance();
            node(id).name = std::string(cur().text);
            advance();
            adopt(id, p);
            for (int32_t arg : parse_args()) adopt(id, arg);
            close(id, prev_end());
            p = id;
            continue;
          }
          int32_t id = make(NodeKind::FieldAccessExpr, node(p).span.start);
          advance();
          node(id).name = std::string(cur().text);
          uint32_t end = cur().end;
          advance();
          adopt(id, p);
          close(id, end);
          p = id;
          continue;
        }
        if (ahead(1).is_punct("<")) {
          // explicit type arguments on a method call
          int32_t id = make(NodeKind::CallExpr, node(p).span.start);
          advance();
          parse_type_args_tokens();
          Token name = expect_identifier();
          node(id).name = std::string(name.text);
          adopt(id, p);
          for (int32_t arg : parse_args()) adopt(id, arg);
          close(id, prev_end());
          p = id;
          continue;
        }
        if (ahead(1).is_keyword("this") || ahead(1).is_keyword("super")) {
          int32_t id = make(NodeKind::FieldAccessExpr, node(p).span.start);
          advance();
          node(id).name = std::string(cur().text);
          uint32_t end = cur().end;
          advance();
          adopt(id, p);
          close(id, end);
          p = id;
          continue;
        }
        if (ahead(1).is_keyword("new")) {
          advance();
          advance();
          p = parse_creator(node(p).span.start, /*qualified=*/true, p);
          continue;
        }
        if (ahead(1).is_keyword("class")) {
          int32_t id = make(NodeKind::ClassLiteralExpr, node(p).span.start);
          advance();
          uint32_t end = cur().end;
          advance();
          adopt(id, p);
          close(id, end);
          p = id;
          continue;
        }
        fail("unexpected '.'");
      }
      if (at_punct("(") && (node(p).kind == NodeKind::NameExpr ||
                            node(p).kind == NodeKind::FieldAccessExpr ||
                            node(p).kind == NodeKind::ThisExpr ||
                            node(p).kind == NodeKind::SuperExpr)) {
        int32_t id = make(NodeKind::CallExpr, node(p).span.start);
        node(id).name = node(p).name;
        if (node(p).kind == NodeKind::ThisExpr) node(id).name = "this";
        if (node(p).kind == NodeKind::SuperExpr) node(id).name = "super";
        adopt(id, p);
        for (int32_t arg : parse_args()) adopt(id, arg);
        close(id, prev_end());
        p = id;
        continue;
      }
      if (at_punct("[") && node(p).kind != NodeKind::ArrayNewExpr) {
        int32_t id = make(NodeKind::ArrayAccessExpr, node(p).span.start);
        advance();
        adopt(id, p);
        adopt(id, parse_expression());
        expect_punct("]");
        close(id, prev_end());
        p = id;
        continue;
      }
      if (at_punct("++") || at_punct("--")) {
        Token op = cur();
        int32_t id = make(NodeKind::PostfixExpr, node(p).span.start);
        node(id).operator_token = std::string(op.text);
        node(id).op_span = {op.start, op.end};
        advance();
        adopt(id, p);
        close(id, op.end);
        p = id;
        continue;
      }
      if (at_punct("::")) {
        int32_t id = make(NodeKind::MethodRefExpr, node(p).span.start);
        advance();
        if (at_punct("<")) parse_type_args_tokens();
        if (at_keyword("new")) {
          node(id).name = "new";
        } else {
          node(id).name = std::string(expect_identifier().text);
          adopt(id, p);
          close(id, prev_end());
          p = id;
          continue;
        }
        uint32_t end = cur().end;
        advance();
        adopt(id, p);
        close(id, end);
        p = id;
        continue;
      }
      return p;
    }
  }

  std::vector<int32_t> parse_args() {
    expect_punct("(");
    std::vector<int32_t> args;
    if (accept_punct(")")) return args;
    do {
      args.push_back(parse_expression());
    } while (accept_punct(","));
    expect_punct(")");
    return args;
  }

  int32_t parse_primary() {
    const Token& t = cur();
    if (t.is_literal()) {
      int32_t id = make(NodeKind::LiteralExpr, t.start);
      if (t.kind == TokenKind::StringLiteral) node(id).flags |= Node::kStringLiteral;
      if (t.kind == TokenKind::NullLiteral) node(id).flags |= Node::kNullLiteral;
      close(id, t.end);
      advance();
      return id;
    }
    if (t.kind == TokenKind::Identifier) {
      if (ahead(1).is_punct("->")) {
        int32_t id = make(NodeKind::LambdaExpr, t.start);
        advance();
        advance();
        int32_t body = parse_lambda_body();
        adopt(id, body);
        close(id, node(body).span.end);
        return id;
      }
      int32_t id = make(NodeKind::NameExpr, t.start);
      node(id).name = std::string(t.text);
      close(id, t.end);
      advance();
      return id;
    }
    if (t.is_keyword("this")) {
      int32_t id = make(NodeKind::ThisExpr, t.start);
      close(id, t.end);
      advance();
      return id;
    }
    if (t.is_keyword("super")) {
      int32_t id = make(NodeKind::SuperExpr, t.start);
      close(id, t.end);
      advance();
      return id;
    }
    if (t.is_punct("(")) {
      int32_t id = make(NodeKind::ParenExpr, t.start);
      advance();
      adopt(id, parse_expression());
      expect_punct(")");
      close(id, prev_end());
      return id;
    }
    if (t.is_keyword("new")) {
      uint32_t start = t.start;
      advance();
      return parse_creator(start, /*qualified=*/false, -1);
    }
    if (t.kind == TokenKind::Keyword &&
        (is_primitive_type_keyword(t.text) || t.text == "void")) {
      // primitive class literal: int.class, int[].class
      int32_t id = make(NodeKind::ClassLiteralExpr, t.start);
      parse_type_tokens();
      expect_punct(".");
      if (!at_keyword("class")) fail("expected 'class'");
      uint32_t end = cur().end;
      advance();
      close(id, end);
      return id;
    }
    fail("expected expression");
  }

  int32_t parse_paren_lambda() {
    int32_t id = make(NodeKind::LambdaExpr, cur().start);
    size_t close_idx = scan_balanced(pos_, "(", ")");
    assert(close_idx != kScanFail);
    while (pos_ < close_idx) advance();  // parameters: spanned, not structured
    expect_punct("->");
    int32_t body = parse_lambda_body();
    adopt(id, body);
    close(id, node(body).span.end);
    return id;
  }

  int32_t parse_lambda_body() {
    if (at_punct("{")) return parse_block();
    return parse_expression();
  }

  int32_t parse_array_initializer() {
    int32_t id = make(NodeKind::ArrayInitializer, cur().start);
    expect_punct("{");
    while (!at_punct("}")) {
      adopt(id, at_punct("{") ? parse_array_initializer() : parse_expression());
      if (!accept_punct(",")) break;
    }
    expect_punct("}");
    close(id, prev_end());
    return id;
  }

  int32_t parse_creator(uint32_t start, bool qualified, int32_t receiver) {
    if (at_punct("<")) parse_type_args_tokens();
    bool prim = false;
    int dims_eaten = 0;
    parse_type_tokens(&prim, &dims_eaten, nullptr, nullptr);
    if (at_punct("(") && dims_eaten == 0) {
      int32_t id = make(NodeKind::NewExpr, start);
      if (qualified) node(id).flags |= Node::kQualifiedNew;
      if (receiver >= 0) adopt(id, receiver);
      for (int32_t arg : parse_args()) adopt(id, arg);
      if (at_punct("{")) {
        node(id).flags |= Node::kAnonymousBody;
        parse_class_body(id, "", false);
      }
      close(id, prev_end());
      return id;
    }
    int32_t id = make(NodeKind::ArrayNewExpr, start);
    if (receiver >= 0) adopt(id, receiver);
    if (dims_eaten == 0) {
      while (at_punct("[")) {
        advance();
        if (!at_punct("]")) adopt(id, parse_expression());
        expect_punct("]");
        while (at_punct("[") && ahead(1).is_punct("]")) {
          advance();
          advance();
        }
      }
      if (at_punct("{")) adopt(id, parse_array_initializer());
    } else {
      if (!at_punct("{")) fail("expected array initializer");
      adopt(id, parse_array_initializer());
    }
    close(id, prev_end());
    return id;
  }
};

}  // namespace

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::CompilationUnit: return "compilation-unit";
    case NodeKind::PackageDecl: return "package-decl";
    case NodeKind::ImportDecl: return "import-decl";
    case NodeKind::ClassDecl: return "class-decl";
    case NodeKind::InterfaceDecl: return "interface-decl";
    case NodeKind::EnumDecl: return "enum-decl";
    case NodeKind::AnnotationTypeDecl: return "annotation-type-decl";
    case NodeKind::EnumConstant: return "enum-constant";
    case NodeKind::FieldDecl: return "field-decl";
    case NodeKind::MethodDecl: return "method-decl";
    case NodeKind::ConstructorDecl: return "constructor-decl";
    case NodeKind::InitializerBlock: return "initializer-block";
    case NodeKind::Param: return "param";
    case NodeKind::TypeRef: return "type-ref";
    case NodeKind::TypeParams: return "type-params";
    case NodeKind::Annotation: return "annotation";
    case NodeKind::Block: return "block";
    case NodeKind::IfStmt: return "if-stmt";
    case NodeKind::WhileStmt: return "while-stmt";
    case NodeKind::DoStmt: return "do-stmt";
    case NodeKind::ForStmt: return "for-stmt";
    case NodeKind::ForEachStmt: return "foreach-stmt";
    case NodeKind::SwitchStmt: return "switch-stmt";
    case NodeKind::SwitchCase: return "switch-case";
    case NodeKind::TryStmt: return "try-stmt";
    case NodeKind::CatchClause: return "catch-clause";
    case NodeKind::ReturnStmt: return "return-stmt";
    case NodeKind::ThrowStmt: return "throw-stmt";
    case NodeKind::BreakStmt: return "break-stmt";
    case NodeKind::ContinueStmt: return "continue-stmt";
    case NodeKind::SynchronizedStmt: return "synchronized-stmt";
    case NodeKind::LabeledStmt: return "labeled-stmt";
    case NodeKind::ExprStmt: return "expr-stmt";
    case NodeKind::LocalVarDecl: return "local-var-decl";
    case NodeKind::VarDeclarator: return "var-declarator";
    case NodeKind::AssertStmt: return "assert-stmt";
    case NodeKind::EmptyStmt: return "empty-stmt";
    case NodeKind::BinaryExpr: return "binary-expr";
    case NodeKind::UnaryExpr: return "unary-expr";
    case NodeKind::PostfixExpr: return "postfix-expr";
    case NodeKind::AssignExpr: return "assign-expr";
    case NodeKind::ConditionalExpr: return "conditional-expr";
    case NodeKind::InstanceOfExpr: return "instanceof-expr";
    case NodeKind::CastExpr: return "cast-expr";
    case NodeKind::CallExpr: return "call-expr";
    case NodeKind::FieldAccessExpr: return "field-access-expr";
    case NodeKind::ArrayAccessExpr: return "array-access-expr";
    case NodeKind::NewExpr: return "new-expr";
    case NodeKind::ArrayNewExpr: return "array-new-expr";
    case NodeKind::ArrayInitializer: return "array-initializer";
    case NodeKind::LiteralExpr: return "literal";
    case NodeKind::NameExpr: return "identifier";
    case NodeKind::ThisExpr: return "this-expr";
    case NodeKind::SuperExpr: return "super-expr";
    case NodeKind::ParenExpr: return "paren-expr";
    case NodeKind::LambdaExpr: return "lambda-expr";
    case NodeKind::MethodRefExpr: return "method-ref-expr";
    case NodeKind::ClassLiteralExpr: return "class-literal-expr";
  }
  return "unknown";
}

bool is_statement_like(NodeKind kind) {
  switch (kind) {
    case NodeKind::IfStmt:
    case NodeKind::WhileStmt:
    case NodeKind::DoStmt:
    case NodeKind::ForStmt:
    case NodeKind::ForEachStmt:
    case NodeKind::SwitchStmt:
    case NodeKind::SwitchCase:
    case NodeKind::TryStmt:
    case NodeKind::ReturnStmt:
    case NodeKind::ThrowStmt:
    case NodeKind::BreakStmt:
    case NodeKind::ContinueStmt:
    case NodeKind::SynchronizedStmt:
    case NodeKind::LabeledStmt:
    case NodeKind::ExprStmt:
    case NodeKind::LocalVarDecl:
    case NodeKind::AssertStmt:
    case NodeKind::EmptyStmt:
    case NodeKind::FieldDecl:
    case NodeKind::EnumConstant:
      return true;
    default:
      return false;
  }
}

SyntaxTree parse_source(const SourceFile& file) {
  Parser parser(file);
  return parser.parse();
}

std::pair<std::string, uint32_t> statement_text(const SyntaxTree& tree,
                                                const SourceFile& file,
                                                int32_t node_id) {
  const Node& start = tree.node(node_id);
  int32_t stmt = tree.find_ancestor(
      node_id, [](const Node& n) { return is_statement_like(n.kind); });
  if (stmt >= 0) {
    const Node& n = tree.node(stmt);
    return {std::string(file.text(n.span)), n.line};
  }
  // No enclosing statement: fall back to the node's source line.
  uint32_t line = start.line;
  const auto& idx = file.line_index();
  uint32_t from = idx[line - 1];
  uint32_t to = line < idx.size() ? idx[line]
                                  : static_cast<uint32_t>(file.content().size());
  std::string text(file.content().substr(from, to - from));
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return {text, line};
}

}  // namespace littledarwin
