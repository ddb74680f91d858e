#include <doctest.h>

#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "littledarwin/mutation.hpp"

using namespace littledarwin;

namespace {

const char* kCorpusFiles[] = {
    "com/example/Calculator.java", "com/example/Edge.java",
    "com/example/Legacy.java",
    "com/example/Order.java",      "com/example/Shapes.java",
    "com/example/StringUtil.java", "com/example/util/Matrix.java",
};

SourceFile load_corpus_file(const std::string& rel) {
  return SourceFile::load(std::string(LD_FIXTURES_DIR) + "/corpus/" + rel, rel);
}

SourceFile inline_file(const std::string& content) {
  return SourceFile("inline.java", content);
}

std::set<OperatorKind> only(OperatorKind k) { return {k}; }

std::set<OperatorKind> everything() {
  return {all_operators().begin(), all_operators().end()};
}

std::vector<Mutant> mutants_of(const std::string& java,
                               const std::set<OperatorKind>& enabled) {
  SourceFile f = inline_file(java);
  SyntaxTree tree = parse_source(f);
  return enumerate_all(tree, f, enabled);
}

}  // namespace

TEST_SUITE("mutation") {

TEST_CASE("replacement tables cover the fixed mappings") {
  // AOR-B: + <-> -, * <-> /, % -> /
  CHECK(replacement_for(OperatorKind::AOR_B, "+") == "-");
  CHECK(replacement_for(OperatorKind::AOR_B, "-") == "+");
  CHECK(replacement_for(OperatorKind::AOR_B, "*") == "/");
  CHECK(replacement_for(OperatorKind::AOR_B, "/") == "*");
  CHECK(replacement_for(OperatorKind::AOR_B, "%") == "/");
  // AOR-S: ++ <-> --
  CHECK(replacement_for(OperatorKind::AOR_S, "++") == "--");
  CHECK(replacement_for(OperatorKind::AOR_S, "--") == "++");
  // AOR-U: - <-> +
  CHECK(replacement_for(OperatorKind::AOR_U, "-") == "+");
  CHECK(replacement_for(OperatorKind::AOR_U, "+") == "-");
  // LOR: & <-> |, ^ -> &
  CHECK(replacement_for(OperatorKind::LOR, "&") == "|");
  CHECK(replacement_for(OperatorKind::LOR, "|") == "&");
  CHECK(replacement_for(OperatorKind::LOR, "^") == "&");
  // SOR: >> <-> <<, >>> -> >>
  CHECK(replacement_for(OperatorKind::SOR, ">>") == "<<");
  CHECK(replacement_for(OperatorKind::SOR, "<<") == ">>");
  CHECK(replacement_for(OperatorKind::SOR, ">>>") == ">>");
  // ROR: negations
  CHECK(replacement_for(OperatorKind::ROR, ">=") == "<");
  CHECK(replacement_for(OperatorKind::ROR, "<=") == ">");
  CHECK(replacement_for(OperatorKind::ROR, ">") == "<=");
  CHECK(replacement_for(OperatorKind::ROR, "<") == ">=");
  CHECK(replacement_for(OperatorKind::ROR, "==") == "!=");
  CHECK(replacement_for(OperatorKind::ROR, "!=") == "==");
  // COR: && <-> ||
  CHECK(replacement_for(OperatorKind::COR, "&&") == "||");
  CHECK(replacement_for(OperatorKind::COR, "||") == "&&");
  // COD: delete '!'
  CHECK(replacement_for(OperatorKind::COD, "!") == "");
  // SAOR
  CHECK(replacement_for(OperatorKind::SAOR, "+=") == "-=");
  CHECK(replacement_for(OperatorKind::SAOR, "-=") == "+=");
  CHECK(replacement_for(OperatorKind::SAOR, "*=") == "/=");
  CHECK(replacement_for(OperatorKind::SAOR, "/=") == "*=");
  CHECK(replacement_for(OperatorKind::SAOR, "%=") == "/=");
  CHECK(replacement_for(OperatorKind::SAOR, "&=") == "|=");
  CHECK(replacement_for(OperatorKind::SAOR, "|=") == "&=");
  CHECK(replacement_for(OperatorKind::SAOR, "<<=") == ">>=");
  CHECK(replacement_for(OperatorKind::SAOR, ">>=") == "<<=");
  CHECK(replacement_for(OperatorKind::SAOR, "^=") == "&=");
}

TEST_CASE("tokens outside an operator's domain are unmappable") {
  CHECK_THROWS_AS(replacement_for(OperatorKind::AOR_B, "&&"), Unmappable);
  CHECK_THROWS_AS(replacement_for(OperatorKind::ROR, "+"), Unmappable);
  CHECK_THROWS_AS(replacement_for(OperatorKind::SAOR, ">>>="), Unmappable);
  CHECK_THROWS_AS(replacement_for(OperatorKind::NullifyReturnValue, "+"),
                  Unmappable);
}

TEST_CASE("operator names round-trip and split 9/4 by family") {
  int classic = 0;
  int null_type = 0;
  for (OperatorKind k : all_operators()) {
    CHECK(operator_from_name(operator_name(k)) == k);
    if (operator_family(k) == OperatorFamily::Classic) ++classic;
    if (operator_family(k) == OperatorFamily::NullType) ++null_type;
  }
  CHECK(classic == 9);
  CHECK(null_type == 4);
  CHECK(!operator_from_name("NOPE"));
}

// The nine classic before/after examples, applied to one-statement methods.
TEST_CASE("classic operator catalog examples reproduce verbatim") {
  struct Case {
    OperatorKind op;
    const char* body;
    const char* before;
    const char* after;
  };
  const Case cases[] = {
      {OperatorKind::AOR_B, "int m(int a, int b) { return a + b; }",
       "return a + b;", "return a - b;"},
      {OperatorKind::AOR_S, "int m(int a) { return ++a; }", "return ++a;",
       "return --a;"},
      {OperatorKind::AOR_U, "int m(int a) { return -a; }", "return -a;",
       "return +a;"},
      {OperatorKind::LOR, "int m(int a, int b) { return a & b; }",
       "return a & b;", "return a | b;"},
      {OperatorKind::SOR, "int m(int a, int b) { return a >> b; }",
       "return a >> b;", "return a << b;"},
      {OperatorKind::ROR, "boolean m(int a, int b) { return a >= b; }",
       "return a >= b;", "return a < b;"},
      {OperatorKind::COR, "boolean m(boolean a, boolean b) { return a && b; }",
       "return a && b;", "return a || b;"},
      {OperatorKind::COD, "boolean m(boolean a) { return !a; }", "return !a;",
       "return a;"},
      {OperatorKind::SAOR, "void m(int a, int b) { a *= b; }", "a *= b;",
       "a /= b;"},
  };
  for (const Case& c : cases) {
    CAPTURE(operator_name(c.op));
    std::string java = std::string("class T { ") + c.body + " }";
    SourceFile f = inline_file(java);
    SyntaxTree tree = parse_source(f);
    std::vector<Mutant> mutants = enumerate_mutants(tree, f, only(c.op));
    REQUIRE(mutants.size() == 1);
    CHECK(mutants[0].before == c.before);
    CHECK(mutants[0].after == c.after);
    CHECK(mutants[0].op == c.op);
    // the spliced file contains the mutated statement verbatim
    std::string mutated = splice(f, mutants[0].edits);
    CHECK(mutated.find(c.after) != std::string::npos);
    CHECK(mutated.find(c.before) == std::string::npos);
  }
}

TEST_CASE("AOR-B skips sites with a string-literal operand") {
  auto none = mutants_of(
      "class T { String m(String x) { return \"s\" + x; } }",
      only(OperatorKind::AOR_B));
  CHECK(none.empty());

  // the exclusion looks through the whole operand subtree
  auto nested = mutants_of(
      "class T { String m(String x, String y) { return \"s\" + x + y; } }",
      only(OperatorKind::AOR_B));
  CHECK(nested.empty());

  // arithmetic stays mutable when no operand contains a string
  auto arith = mutants_of(
      "class T { int m(int a, int b) { int c = a + b; return c; } }",
      only(OperatorKind::AOR_B));
  CHECK(arith.size() == 1);
}

TEST_CASE("an interface without mutable statements yields no mutants") {
  auto mutants = mutants_of("interface I { void f(); }", everything());
  CHECK(mutants.empty());
}

// ---- null-type operators ------------------------------------------------------

TEST_CASE("NullifyReturnValue rewrites reference returns to null") {
  auto mutants = mutants_of(
      "import java.util.List;\n"
      "class T { List<String> m() { return makeList(); }\n"
      "  List<String> makeList() { return null; } }",
      only(OperatorKind::NullifyReturnValue));
  REQUIRE(mutants.size() == 1);
  CHECK(mutants[0].before == "return makeList();");
  CHECK(mutants[0].after == "return null;");
}

TEST_CASE("NullifyReturnValue skips primitive and void methods") {
  auto mutants = mutants_of(
      "class T { int m() { return 1; } void n() { return; } }",
      only(OperatorKind::NullifyReturnValue));
  CHECK(mutants.empty());
}

TEST_CASE("NullifyReturnValue covers primitive-array returns") {
  auto mutants = mutants_of(
      "class T { int[] m() { return build(); } int[] build() { return null; } }",
      only(OperatorKind::NullifyReturnValue));
  CHECK(mutants.size() == 1);
}

TEST_CASE("NullifyReturnValue skips returns that are already null") {
  auto mutants = mutants_of("class T { String m() { return null; } }",
                            only(OperatorKind::NullifyReturnValue));
  CHECK(mutants.empty());
}

TEST_CASE("NullifyInputVariable nullifies each reference parameter") {
  SourceFile f = inline_file(
      "class T { int m(String s, int x, Object o) { return s.length() + x; } }");
  SyntaxTree tree = parse_source(f);
  auto mutants = enumerate_null_mutants(tree, f);
  std::vector<Mutant> inputs;
  for (const Mutant& m : mutants) {
    if (m.op == OperatorKind::NullifyInputVariable) inputs.push_back(m);
  }
  REQUIRE(inputs.size() == 2);  // s and o; x is primitive
  std::string first = splice(f, inputs[0].edits);
  CHECK(first.find("{ s = null; return") != std::string::npos);
  std::string second = splice(f, inputs[1].edits);
  CHECK(second.find("{ o = null; return") != std::string::npos);
}

TEST_CASE("NullifyInputVariable: primitive parameter produces no mutant") {
  auto mutants = mutants_of("class T { int f(int x) { return x; } }",
                            only(OperatorKind::NullifyInputVariable));
  CHECK(mutants.empty());
}

TEST_CASE("NullifyInputVariable skips final params and bodyless methods") {
  auto mutants = mutants_of(
      "abstract class T { abstract int f(String s);\n"
      "  int g(final String s) { return s.length(); } }",
      only(OperatorKind::NullifyInputVariable));
  CHECK(mutants.empty());
}

TEST_CASE("NullifyObjectInitialization replaces new expressions with null") {
  auto mutants = mutants_of(
      "class T { Object m() { return new java.util.ArrayList<String>(); } }",
      only(OperatorKind::NullifyObjectInitialization));
  REQUIRE(mutants.size() == 1);
  CHECK(mutants[0].after == "return null;");
}

TEST_CASE("RemoveNullCheck negates null comparisons both ways") {
  auto ne = mutants_of(
      "class T { boolean m(String s) { if (s != null) { return true; } "
      "return false; } }",
      only(OperatorKind::RemoveNullCheck));
  REQUIRE(ne.size() == 1);
  CHECK(ne[0].after.find("s == null") != std::string::npos);

  auto eq = mutants_of("class T { boolean m(String s) { return s == null; } }",
                       only(OperatorKind::RemoveNullCheck));
  REQUIRE(eq.size() == 1);
  CHECK(eq[0].after == "return s != null;");

  // comparisons without a null operand are left to ROR
  auto none = mutants_of(
      "class T { boolean m(int a, int b) { return a == b; } }",
      only(OperatorKind::RemoveNullCheck));
  CHECK(none.empty());
}

// ---- enumeration contracts ----------------------------------------------------

TEST_CASE("enumeration is deterministic, ordered and singly-edited") {
  for (const char* rel : kCorpusFiles) {
    CAPTURE(rel);
    SourceFile f = load_corpus_file(rel);
    SyntaxTree tree = parse_source(f);
    std::vector<Mutant> a = enumerate_all(tree, f, everything());
    std::vector<Mutant> b = enumerate_all(tree, f, everything());
    REQUIRE(a.size() == b.size());
    std::set<int> ids;
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].mutant_id == b[i].mutant_id);
      CHECK(a[i].op == b[i].op);
      CHECK(a[i].edits == b[i].edits);
      CHECK(a[i].edits.size() == 1);
      CHECK(a[i].before != a[i].after);
      CHECK(!a[i].node_ids.empty());
      ids.insert(a[i].mutant_id);
      if (i > 0) {
        CHECK(a[i - 1].edits[0].span.start <= a[i].edits[0].span.start);
      }
    }
    CHECK(ids.size() == a.size());  // unique ids per file
  }
}

TEST_CASE("every corpus mutant still lexes and parses as Java") {
  for (const char* rel : kCorpusFiles) {
    CAPTURE(rel);
    SourceFile f = load_corpus_file(rel);
    SyntaxTree tree = parse_source(f);
    for (const Mutant& m : enumerate_all(tree, f, everything())) {
      CAPTURE(m.mutant_id);
      CAPTURE(operator_name(m.op));
      std::string mutated = splice(f, m.edits);
      SourceFile mf("mutant.java", mutated);
      CHECK_NOTHROW(parse_source(mf));
      CHECK(mutated != f.content());
    }
  }
}

TEST_CASE("classic site counts on Calculator agree with the parser oracle") {
  std::ifstream in(std::string(LD_FIXTURES_DIR) + "/parser_oracle.json");
  nlohmann::json oracle;
  in >> oracle;
  const auto& facts = oracle["com/example/Calculator.java"];

  std::map<std::string, int> bin_counts;
  for (const auto& item : facts["binary_ops"]) {
    bin_counts[item[0].get<std::string>()]++;
  }
  std::map<std::string, int> unary_counts;
  for (const auto& item : facts["unary_prefix"]) {
    unary_counts[item[0].get<std::string>()]++;
  }
  for (const auto& item : facts["unary_postfix"]) {
    unary_counts[std::string("post") + item[0].get<std::string>()]++;
  }
  std::map<std::string, int> assign_counts;
  for (const auto& item : facts["assign_ops"]) {
    assign_counts[item[0].get<std::string>()]++;
  }

  SourceFile f = load_corpus_file("com/example/Calculator.java");
  SyntaxTree tree = parse_source(f);
  auto count_op = [&](OperatorKind k) {
    return static_cast<int>(enumerate_mutants(tree, f, only(k)).size());
  };
  // Calculator has no string literals, so AOR-B covers all arithmetic sites
  CHECK(count_op(OperatorKind::AOR_B) ==
        bin_counts["+"] + bin_counts["-"] + bin_counts["*"] +
            bin_counts["/"] + bin_counts["%"]);
  CHECK(count_op(OperatorKind::LOR) ==
        bin_counts["&"] + bin_counts["|"] + bin_counts["^"]);
  CHECK(count_op(OperatorKind::SOR) ==
        bin_counts["<<"] + bin_counts[">>"] + bin_counts[">>>"]);
  CHECK(count_op(OperatorKind::ROR) ==
        bin_counts["<"] + bin_counts[">"] + bin_counts["<="] +
            bin_counts[">="] + bin_counts["=="] + bin_counts["!="]);
  CHECK(count_op(OperatorKind::COR) == bin_counts["&&"] + bin_counts["||"]);
  CHECK(count_op(OperatorKind::AOR_S) ==
        unary_counts["++"] + unary_counts["--"] + unary_counts["post++"] +
            unary_counts["post--"]);
  CHECK(count_op(OperatorKind::AOR_U) ==
        unary_counts["+"] + unary_counts["-"]);
  CHECK(count_op(OperatorKind::COD) == unary_counts["!"]);
  int saor_sites = 0;
  for (const auto& [tok, n] : assign_counts) {
    if (tok != "=" && tok != ">>>=") saor_sites += n;
  }
  CHECK(count_op(OperatorKind::SAOR) == saor_sites);
}

TEST_CASE("string-operand exclusions on StringUtil") {
  SourceFile f = load_corpus_file("com/example/StringUtil.java");
  SyntaxTree tree = parse_source(f);
  auto mutants = enumerate_mutants(tree, f, only(OperatorKind::AOR_B));
  // five '+' sites; three have a string-literal operand and are excluded:
  //   "s" + "fixed", "hello, " + name, "#" + index
  // label + suffix (no literal operand) and a + b remain
  CHECK(mutants.size() == 2);
}

// ---- rendering ------------------------------------------------------------------

TEST_CASE("render_mutant emits the exact header grammar") {
  SourceFile f =
      inline_file("class T { int m(int a, int b) { return a + b; } }");
  SyntaxTree tree = parse_source(f);
  auto mutants = enumerate_mutants(tree, f, only(OperatorKind::AOR_B));
  REQUIRE(mutants.size() == 1);
  std::string rendered = render_mutant(f, mutants[0]);

  std::string expected_header =
      "/* LittleDarwin mutant\n"
      "mutant_id: 1\n"
      "operator: AOR-B\n"
      "before: return a + b;\n"
      "after: return a - b;\n"
      "line: " + std::to_string(mutants[0].line) + "\n"
      "node_ids: " + std::to_string(mutants[0].node_ids[0]) + "\n"
      "*/\n";
  CHECK(rendered.substr(0, expected_header.size()) == expected_header);
  CHECK(std::string(strip_mutant_header(rendered)) ==
        splice(f, mutants[0].edits));
}

TEST_CASE("header values are sanitized against comment breakage") {
  CHECK(sanitize_header_text("a\nb") == "a\\nb");
  CHECK(sanitize_header_text("a\r\nb") == "a\\nb");
  CHECK(sanitize_header_text("end */ breakout") == "end *\\/ breakout");
  CHECK(sanitize_header_text("plain") == "plain");
}

TEST_CASE("header-stripped render equals the splice output on the corpus") {
  for (const char* rel : kCorpusFiles) {
    SourceFile f = load_corpus_file(rel);
    SyntaxTree tree = parse_source(f);
    for (const Mutant& m : enumerate_all(tree, f, everything())) {
      CHECK(std::string(strip_mutant_header(render_mutant(f, m))) ==
            splice(f, m.edits));
    }
  }
}

TEST_CASE("two distinct mutants of one file get distinct ids") {
  auto mutants = mutants_of(
      "class T { int m(int a, int b) { return a + b * 2; } }",
      only(OperatorKind::AOR_B));
  REQUIRE(mutants.size() == 2);
  CHECK(mutants[0].mutant_id != mutants[1].mutant_id);
}

}  // TEST_SUITE
