#include "littledarwin/mutation.hpp"

#include <algorithm>
#include <map>

namespace littledarwin {

namespace {

const std::map<std::string_view, std::string_view> kAorB = {
    {"+", "-"}, {"-", "+"}, {"*", "/"}, {"/", "*"}, {"%", "/"},
};
const std::map<std::string_view, std::string_view> kAorS = {
    {"++", "--"},
    {"--", "++"},
};
const std::map<std::string_view, std::string_view> kAorU = {
    {"-", "+"},
    {"+", "-"},
};
const std::map<std::string_view, std::string_view> kLor = {
    {"&", "|"},
    {"|", "&"},
    {"^", "&"},
};
const std::map<std::string_view, std::string_view> kSor = {
    {">>", "<<"},
    {"<<", ">>"},
    {">>>", ">>"},
};
const std::map<std::string_view, std::string_view> kRor = {
    {">=", "<"}, {"<=", ">"}, {">", "<="},
    {"<", ">="}, {"==", "!="}, {"!=", "=="},
};
const std::map<std::string_view, std::string_view> kCor = {
    {"&&", "||"},
    {"||", "&&"},
};
const std::map<std::string_view, std::string_view> kCod = {
    {"!", ""},
};
const std::map<std::string_view, std::string_view> kSaor = {
    {"+=", "-="},  {"-=", "+="},  {"*=", "/="}, {"/=", "*="}, {"%=", "/="},
    {"&=", "|="},  {"|=", "&="},  {"<<=", ">>="}, {">>=", "<<="},
    {"^=", "&="},
};

const std::map<std::string_view, std::string_view>* table_for(
    OperatorKind kind) {
  switch (kind) {
    case OperatorKind::AOR_B: return &kAorB;
    case OperatorKind::AOR_S: return &kAorS;
    case OperatorKind::AOR_U: return &kAorU;
    case OperatorKind::LOR: return &kLor;
    case OperatorKind::SOR: return &kSor;
    case OperatorKind::ROR: return &kRor;
    case OperatorKind::COR: return &kCor;
    case OperatorKind::COD: return &kCod;
    case OperatorKind::SAOR: return &kSaor;
    default: return nullptr;
  }
}

bool subtree_contains_string_literal(const SyntaxTree& tree, int32_t id) {
  bool found = false;
  tree.visit_subtree(id, [&](const Node& n) {
    if (n.kind == NodeKind::LiteralExpr && n.has_flag(Node::kStringLiteral)) {
      found = true;
    }
  });
  return found;
}

int32_t unwrap_parens(const SyntaxTree& tree, int32_t id) {
  while (tree.node(id).kind == NodeKind::ParenExpr &&
         !tree.node(id).children.empty()) {
    id = tree.node(id).children.front();
  }
  return id;
}

bool is_null_literal(const SyntaxTree& tree, int32_t id) {
  const Node& n = tree.node(unwrap_parens(tree, id));
  return n.kind == NodeKind::LiteralExpr && n.has_flag(Node::kNullLiteral);
}

// Statement text with one edit applied; the edit must lie inside the
// statement span.
std::string apply_within(const SourceFile& file, ByteSpan stmt,
                         const Edit& edit) {
  std::string text(file.text(stmt));
  if (!stmt.contains(edit.span)) return text;
  text.replace(edit.span.start - stmt.start, edit.span.length(),
               edit.replacement);
  return text;
}

Mutant token_mutant(const SyntaxTree& tree, const SourceFile& file,
                    OperatorKind kind, const Node& site) {
  Mutant m;
  m.op = kind;
  m.edits = {Edit{site.op_span, replacement_for(kind, site.operator_token)}};
  int32_t stmt = tree.find_ancestor(
      site.id, [](const Node& n) { return is_statement_like(n.kind); });
  auto [before, line] = statement_text(tree, file, site.id);
  m.before = std::move(before);
  m.line = line;
  ByteSpan stmt_span =
      stmt >= 0 ? tree.node(stmt).span
                : ByteSpan{site.span.start, site.span.end};
  if (stmt < 0) m.before = std::string(file.text(stmt_span));
  m.after = apply_within(file, stmt_span, m.edits[0]);
  m.node_ids = {site.id};
  m.source_path = file.path();
  return m;
}

void finish(std::vector<Mutant>& mutants) {
  std::sort(mutants.begin(), mutants.end(),
            [](const Mutant& a, const Mutant& b) {
              if (a.edits[0].span.start != b.edits[0].span.start) {
                return a.edits[0].span.start < b.edits[0].span.start;
              }
              int cmp = std::string_view(operator_name(a.op))
                            .compare(operator_name(b.op));
              if (cmp != 0) return cmp < 0;
              return a.node_ids < b.node_ids;
            });
  int next = 1;
  for (Mutant& m : mutants) m.mutant_id = next++;
}

std::vector<Mutant> collect_classic(const SyntaxTree& tree,
                                    const SourceFile& file,
                                    const std::set<OperatorKind>& enabled) {
  std::vector<Mutant> out;
  auto want = [&](OperatorKind k) { return enabled.count(k) > 0; };
  for (const Node& n : tree.nodes) {
    const std::string& tok = n.operator_token;
    switch (n.kind) {
      case NodeKind::BinaryExpr:
        if (kAorB.count(tok) && want(OperatorKind::AOR_B)) {
          bool string_operand = false;
          for (int32_t child : n.children) {
            if (subtree_contains_string_literal(tree, child)) {
              string_operand = true;
              break;
            }
          }
          if (!string_operand) {
            out.push_back(token_mutant(tree, file, OperatorKind::AOR_B, n));
          }
        }
        if (kLor.count(tok) && want(OperatorKind::LOR)) {
          out.push_back(token_mutant(tree, file, OperatorKind::LOR, n));
        }
        if (kSor.count(tok) && want(OperatorKind::SOR)) {
          out.push_back(token_mutant(tree, file, OperatorKind::SOR, n));
        }
        if (kRor.count(tok) && want(OperatorKind::ROR)) {
          out.push_back(token_mutant(tree, file, OperatorKind::ROR, n));
        }
        if (kCor.count(tok) && want(OperatorKind::COR)) {
          out.push_back(token_mutant(tree, file, OperatorKind::COR, n));
        }
        break;
      case NodeKind::UnaryExpr:
        if ((tok == "++" || tok == "--") && want(OperatorKind::AOR_S)) {
          out.push_back(token_mutant(tree, file, OperatorKind::AOR_S, n));
        }
        if ((tok == "-" || tok == "+") && want(OperatorKind::AOR_U)) {
          out.push_back(token_mutant(tree, file, OperatorKind::AOR_U, n));
        }
        if (tok == "!" && want(OperatorKind::COD)) {
          out.push_back(token_mutant(tree, file, OperatorKind::COD, n));
        }
        break;
      case NodeKind::PostfixExpr:
        if ((tok == "++" || tok == "--") && want(OperatorKind::AOR_S)) {
          out.push_back(token_mutant(tree, file, OperatorKind::AOR_S, n));
        }
        break;
      case NodeKind::AssignExpr:
        if (kSaor.count(tok) && want(OperatorKind::SAOR)) {
          out.push_back(token_mutant(tree, file, OperatorKind::SAOR, n));
        }
        break;
      default:
        break;
    }
  }
  return out;
}

std::vector<Mutant> collect_null_type(const SyntaxTree& tree,
                                      const SourceFile& file,
                                      const std::set<OperatorKind>& enabled) {
  std::vector<Mutant> out;
  auto want = [&](OperatorKind k) { return enabled.count(k) > 0; };
  for (const Node& n : tree.nodes) {
    if (n.kind == NodeKind::ReturnStmt && want(OperatorKind::NullifyReturnValue)) {
      if (n.children.empty()) continue;
      int32_t expr = n.children.front();
      if (is_null_literal(tree, expr)) continue;
      int32_t callable = tree.find_ancestor(n.parent, [](const Node& a) {
        return a.kind == NodeKind::MethodDecl ||
               a.kind == NodeKind::ConstructorDecl ||
               a.kind == NodeKind::LambdaExpr ||
               a.kind == NodeKind::InitializerBlock;
      });
      if (callable < 0 ||
          tree.node(callable).kind != NodeKind::MethodDecl ||
          !tree.node(callable).has_flag(Node::kReturnsReference)) {
        continue;
      }
      Mutant m;
      m.op = OperatorKind::NullifyReturnValue;
      m.edits = {Edit{tree.node(expr).span, "null"}};
      m.before = std::string(file.text(n.span));
      m.after = apply_within(file, n.span, m.edits[0]);
      m.line = n.line;
      m.node_ids = {expr};
      m.source_path = file.path();
      out.push_back(std::move(m));
    }
    if (n.kind == NodeKind::NewExpr &&
        want(OperatorKind::NullifyObjectInitialization)) {
      if (n.has_flag(Node::kQualifiedNew)) continue;
      Mutant m;
      m.op = OperatorKind::NullifyObjectInitialization;
      m.edits = {Edit{n.span, "null"}};
      auto [before, line] = statement_text(tree, file, n.id);
      int32_t stmt = tree.find_ancestor(
          n.id, [](const Node& a) { return is_statement_like(a.kind); });
      ByteSpan stmt_span = stmt >= 0 ? tree.node(stmt).span : n.span;
      m.before = std::move(before);
      m.after = apply_within(file, stmt_span, m.edits[0]);
      m.line = line;
      m.node_ids = {n.id};
      m.source_path = file.path();
      out.push_back(std::move(m));
    }
    if (n.kind == NodeKind::BinaryExpr &&
        (n.operator_token == "==" || n.operator_token == "!=") &&
        want(OperatorKind::RemoveNullCheck)) {
      bool has_null_operand = false;
      for (int32_t child : n.children) {
        if (is_null_literal(tree, child)) has_null_operand = true;
      }
      if (!has_null_operand) continue;
      Mutant m = token_mutant(tree, file, OperatorKind::ROR, n);
      m.op = OperatorKind::RemoveNullCheck;
      out.push_back(std::move(m));
    }
    if (n.kind == NodeKind::MethodDecl &&
        want(OperatorKind::NullifyInputVariable)) {
      int32_t body = -1;
      for (int32_t child : n.children) {
        if (tree.node(child).kind == NodeKind::Block) body = child;
      }
      if (body < 0) continue;
      uint32_t insert_at = tree.node(body).span.start + 1;
      for (int32_t child : n.children) {
        const Node& p = tree.node(child);
        if (p.kind != NodeKind::Param) continue;
        if (!p.has_flag(Node::kReferenceType) || p.has_flag(Node::kFinal)) {
          continue;
        }
        Mutant m;
        m.op = OperatorKind::NullifyInputVariable;
        m.edits = {Edit{ByteSpan{insert_at, insert_at},
                        " " + p.name + " = null;"}};
        m.before = std::string(file.text(p.span));
        m.after = p.name + " = null;";
        m.line = file.line_of(insert_at);
        m.node_ids = {p.id};
        m.source_path = file.path();
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

}  // namespace

const char* operator_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::AOR_B: return "AOR-B";
    case OperatorKind::AOR_S: return "AOR-S";
    case OperatorKind::AOR_U: return "AOR-U";
    case OperatorKind::LOR: return "LOR";
    case OperatorKind::SOR: return "SOR";
    case OperatorKind::ROR: return "ROR";
    case OperatorKind::COR: return "COR";
    case OperatorKind::COD: return "COD";
    case OperatorKind::SAOR: return "SAOR";
    case OperatorKind::NullifyReturnValue: return "NullifyReturnValue";
    case OperatorKind::NullifyInputVariable: return "NullifyInputVariable";
    case OperatorKind::NullifyObjectInitialization:
      return "NullifyObjectInitialization";
    case OperatorKind::RemoveNullCheck: return "RemoveNullCheck";
  }
  return "?";
}

OperatorFamily operator_family(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::NullifyReturnValue:
    case OperatorKind::NullifyInputVariable:
    case OperatorKind::NullifyObjectInitialization:
    case OperatorKind::RemoveNullCheck:
      return OperatorFamily::NullType;
    default:
      return OperatorFamily::Classic;
  }
}

const std::vector<OperatorKind>& all_operators() {
  static const std::vector<OperatorKind> kAll = {
      OperatorKind::AOR_B,
      OperatorKind::AOR_S,
      OperatorKind::AOR_U,
      OperatorKind::LOR,
      OperatorKind::SOR,
      OperatorKind::ROR,
      OperatorKind::COR,
      OperatorKind::COD,
      OperatorKind::SAOR,
      OperatorKind::NullifyReturnValue,
      OperatorKind::NullifyInputVariable,
      OperatorKind::NullifyObjectInitialization,
      OperatorKind::RemoveNullCheck,
  };
  return kAll;
}

std::optional<OperatorKind> operator_from_name(std::string_view name) {
  for (OperatorKind k : all_operators()) {
    if (name == operator_name(k)) return k;
  }
  return std::nullopt;
}

std::string replacement_for(OperatorKind kind, std::string_view operator_token) {
  const auto* table = table_for(kind);
  if (table == nullptr) throw Unmappable(kind, operator_token);
  auto it = table->find(operator_token);
  if (it == table->end()) throw Unmappable(kind, operator_token);
  return std::string(it->second);
}

std::vector<Mutant> enumerate_mutants(const SyntaxTree& tree,
                                      const SourceFile& file,
                                      const std::set<OperatorKind>& enabled) {
  std::vector<Mutant> out = collect_classic(tree, file, enabled);
  finish(out);
  return out;
}

std::vector<Mutant> enumerate_null_mutants(const SyntaxTree& tree,
                                           const SourceFile& file) {
  std::set<OperatorKind> enabled(all_operators().begin(),
                                 all_operators().end());
  std::vector<Mutant> out = collect_null_type(tree, file, enabled);
  finish(out);
  return out;
}

std::vector<Mutant> enumerate_all(const SyntaxTree& tree,
                                  const SourceFile& file,
                                  const std::set<OperatorKind>& enabled) {
  std::vector<Mutant> out = collect_classic(tree, file, enabled);
  std::vector<Mutant> null_type = collect_null_type(tree, file, enabled);
  out.insert(out.end(), std::make_move_iterator(null_type.begin()),
             std::make_move_iterator(null_type.end()));
  finish(out);
  return out;
}

std::string sanitize_header_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      out += "\\n";
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '*' && i + 1 < text.size() && text[i + 1] == '/') {
      out += "*\\/";
      ++i;
    } else {
      out += c;
    }
  }
  return out;
}

namespace {

std::string join_ints(const std::vector<int32_t>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string render_mutant(const SourceFile& file, const Mutant& m) {
  std::string out(kMutantHeaderMagic);
  out += "\n";
  out += "mutant_id: " + std::to_string(m.mutant_id) + "\n";
  out += "operator: " + std::string(operator_name(m.op)) + "\n";
  out += "before: " + sanitize_header_text(m.before) + "\n";
  out += "after: " + sanitize_header_text(m.after) + "\n";
  out += "line: " + std::to_string(m.line) + "\n";
  out += "node_ids: " + join_ints(m.node_ids) + "\n";
  out += "*/\n";
  out += splice(file, m.edits);
  return out;
}

std::string_view strip_mutant_header(std::string_view rendered) {
  if (rendered.substr(0, kMutantHeaderMagic.size()) != kMutantHeaderMagic) {
    return rendered;
  }
  size_t end = rendered.find("*/\n");
  if (end == std::string_view::npos) return rendered;
  return rendered.substr(end + 3);
}

}  // namespace littledarwin
