#include "ocp/dsl.hpp"

#include <cctype>

#include "ocp/errors.hpp"

namespace ocp {

ParseError::ParseError(std::string file, int line, int column, std::string message)
    : file_(std::move(file)), line_(line), column_(column), message_(std::move(message)) {
  formatted_ = file_ + ":" + std::to_string(line_) + ":" + std::to_string(column_) + ": " +
               message_;
}

namespace {

enum class Tok { ident, integer, string, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;   // ident name, punct spelling
  int64_t number = 0; // integer
  std::string str;    // string body (unescaped)
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  Lexer(const std::string& source, std::string filename)
      : src_(source), file_(std::move(filename)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t = next();
      bool done = t.kind == Tok::end;
      out.push_back(std::move(t));
      if (done) break;
    }
    return out;
  }

 private:
  [[noreturn]] void error(const std::string& msg) { throw ParseError(file_, line_, col_, msg); }

  char peek(size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == '#') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  Token next() {
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;

    char c = peek();
    if (ident_start(c)) {
      t.kind = Tok::ident;
      while (pos_ < src_.size() && ident_char(peek())) {
        // a '-' is part of the identifier only when followed by another
        // identifier character (so `a-b` is one name but `a -5` is not cut short)
        if (peek() == '-' && !(pos_ + 1 < src_.size() && ident_char(peek(1)))) break;
        t.text += advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      t.kind = Tok::integer;
      std::string digits;
      if (c == '-') digits += advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(peek())))
        digits += advance();
      try {
        t.number = std::stoll(digits);
      } catch (const std::exception&) {
        error("integer out of range: " + digits);
      }
      return t;
    }
    if (c == '"') {
      t.kind = Tok::string;
      advance();
      while (true) {
        if (pos_ >= src_.size()) error("unterminated string literal");
        char d = advance();
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= src_.size()) error("unterminated escape");
          char e = advance();
          switch (e) {
            case 'n': t.str += '\n'; break;
            case 't': t.str += '\t'; break;
            case 'r': t.str += '\r'; break;
            case '"': t.str += '"'; break;
            case '\\': t.str += '\\'; break;
            default: error(std::string("unknown escape '\\") + e + "'");
          }
        } else {
          t.str += d;
        }
      }
      return t;
    }

    t.kind = Tok::punct;
    advance();
    switch (c) {
      case '!':
        if (peek() == '=') { advance(); t.text = "!="; return t; }
        error("expected '=' after '!'");
      case '<':
        if (peek() == '=') { advance(); t.text = "<="; } else t.text = "<";
        return t;
      case '>':
        if (peek() == '=') { advance(); t.text = ">="; } else t.text = ">";
        return t;
      case '{': case '}': case '[': case ']': case '(': case ')':
      case ':': case ';': case ',': case '=': case '.': case '@':
        t.text = std::string(1, c);
        return t;
      default:
        error(std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& src_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Descriptor key aliases accepted on `meta` blocks.
std::string canonical_descriptor(const std::string& key) {
  if (key == "access") return "access-rights";
  if (key == "integrity") return "integrity-constraints";
  if (key == "display") return "display-hints";
  return key;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string filename)
      : toks_(std::move(tokens)), file_(std::move(filename)) {}

  std::vector<Statement> model() {
    std::vector<Statement> out;
    while (!at_end()) out.push_back(statement());
    return out;
  }

  Statement single_statement() {
    Statement s = statement();
    if (!at_end()) error("trailing input after statement");
    return s;
  }

  Formula full_formula() {
    Formula f = formula();
    if (!at_end()) error("trailing input after formula");
    return f;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = current();
    throw ParseError(file_, t.line, t.column, msg);
  }

  const Token& current() const { return toks_[idx_]; }
  const Token& lookahead(size_t n = 1) const {
    size_t i = idx_ + n;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at_end() const { return current().kind == Tok::end; }

  bool is_ident(const char* word) const {
    return current().kind == Tok::ident && current().text == word;
  }
  bool is_punct(const char* p) const {
    return current().kind == Tok::punct && current().text == p;
  }

  Token take() { return toks_[idx_++]; }

  void expect_punct(const char* p) {
    if (!is_punct(p)) error(std::string("expected '") + p + "'");
    take();
  }
  void expect_ident(const char* word) {
    if (!is_ident(word)) error(std::string("expected '") + word + "'");
    take();
  }
  std::string ident() {
    if (current().kind != Tok::ident) error("expected identifier");
    return take().text;
  }
  std::string string_lit() {
    if (current().kind != Tok::string) error("expected string literal");
    return take().str;
  }
  int64_t integer_lit() {
    if (current().kind != Tok::integer) error("expected integer");
    return take().number;
  }

  // ---- literals and terms ----

  bool at_literal() const {
    return current().kind == Tok::integer || current().kind == Tok::string ||
           is_ident("true") || is_ident("false") || is_ident("null") || is_punct("@");
  }

  Value literal() {
    if (current().kind == Tok::integer) return Value(take().number);
    if (current().kind == Tok::string) return Value(take().str);
    if (is_ident("true")) { take(); return Value(true); }
    if (is_ident("false")) { take(); return Value(false); }
    if (is_ident("null")) { take(); return null_value(); }
    if (is_punct("@")) {
      take();
      int64_t level = integer_lit();
      expect_punct(":");
      int64_t id = integer_lit();
      if (level < 0 || id < 0) error("object ref components must be non-negative");
      return Value(ObjectRef{static_cast<int32_t>(level), static_cast<uint64_t>(id)});
    }
    error("expected a literal");
  }

  // constant | identifier | identifier.attr | Concept[identity...] | literal
  TermExpr term() {
    if (at_literal()) return TermExpr::lit(literal());
    if (current().kind != Tok::ident) error("expected a term");
    std::string name = take().text;
    if (is_punct("[")) {
      take();
      std::vector<Value> identity;
      if (!is_punct("]")) {
        identity.push_back(literal());
        while (is_punct(",")) { take(); identity.push_back(literal()); }
      }
      expect_punct("]");
      return TermExpr::object(std::move(name), std::move(identity));
    }
    if (is_punct(".")) {
      take();
      return TermExpr::attr(std::move(name), ident());
    }
    return TermExpr::ident(std::move(name));
  }

  // ---- formulas ----

  DomainSpec domain_spec() {
    if (is_ident("level")) {
      take();
      return DomainSpec::tower_level(static_cast<int32_t>(integer_lit()));
    }
    return DomainSpec::named(ident());
  }

  Formula formula() { return or_expr(); }

  Formula or_expr() {
    Formula lhs = and_expr();
    while (is_ident("or")) {
      take();
      lhs = Formula::disjunction(std::move(lhs), and_expr());
    }
    return lhs;
  }

  Formula and_expr() {
    Formula lhs = not_expr();
    while (is_ident("and")) {
      take();
      lhs = Formula::conjunction(std::move(lhs), not_expr());
    }
    return lhs;
  }

  Formula not_expr() {
    if (is_ident("not")) {
      take();
      return Formula::negation(not_expr());
    }
    return primary();
  }

  Formula primary() {
    if (is_ident("true") && !comparison_follows()) { take(); return Formula::constant_of(true); }
    if (is_ident("false") && !comparison_follows()) { take(); return Formula::constant_of(false); }
    if (is_punct("(")) {
      take();
      Formula f = formula();
      expect_punct(")");
      return f;
    }
    if (is_ident("exists") || is_ident("forall")) {
      bool existential = current().text == "exists";
      take();
      std::string var = ident();
      expect_ident("in");
      DomainSpec d = domain_spec();
      expect_punct(":");
      Formula body = formula();
      return existential ? Formula::exists(std::move(var), std::move(d), std::move(body))
                         : Formula::forall(std::move(var), std::move(d), std::move(body));
    }
    return atom();
  }

  // `true`/`false` as a comparison operand (e.g. `open = true`) rather than
  // a propositional constant.
  bool comparison_follows() const {
    const Token& n = lookahead();
    return n.kind == Tok::punct &&
           (n.text == "=" || n.text == "!=" || n.text == "<" || n.text == "<=" ||
            n.text == ">" || n.text == ">=");
  }

  Formula atom() {
    // frame atom: IDENT '(' term ',' term ')'
    if (current().kind == Tok::ident && lookahead().kind == Tok::punct &&
        lookahead().text == "(") {
      std::string pred = take().text;
      expect_punct("(");
      TermExpr subj = term();
      expect_punct(",");
      TermExpr obj = term();
      expect_punct(")");
      return Formula::frame(std::move(pred), std::move(subj), std::move(obj));
    }
    TermExpr lhs = term();
    if (current().kind != Tok::punct) error("expected a comparison operator");
    std::string op = take().text;
    TermExpr rhs = term();
    if (op == "=") return Formula::compare(std::move(lhs), CompareOp::eq, std::move(rhs));
    if (op == "!=") return Formula::compare(std::move(lhs), CompareOp::ne, std::move(rhs));
    if (op == "<") return Formula::compare(std::move(lhs), CompareOp::lt, std::move(rhs));
    if (op == "<=") return Formula::compare(std::move(lhs), CompareOp::le, std::move(rhs));
    // a > b  ==  b < a ; a >= b  ==  b <= a
    if (op == ">") return Formula::compare(std::move(rhs), CompareOp::lt, std::move(lhs));
    if (op == ">=") return Formula::compare(std::move(rhs), CompareOp::le, std::move(lhs));
    error("unknown comparison operator '" + op + "'");
  }

  // ---- statements ----

  AssignList assign_block() {
    AssignList out;
    expect_punct("{");
    if (!is_punct("}")) {
      out.push_back(assign());
      while (is_punct(",")) { take(); out.push_back(assign()); }
    }
    expect_punct("}");
    return out;
  }

  // attr = literal | bare-enum-symbol | Concept[identity]
  std::pair<std::string, TermExpr> assign() {
    std::string name = ident();
    expect_punct("=");
    TermExpr rhs = term();
    if (rhs.kind == TermExpr::Kind::attribute)
      error("attribute access is not allowed on the right-hand side of an assignment");
    return {std::move(name), std::move(rhs)};
  }

  TypeTag type_tag() {
    std::string name = ident();
    if (name == "bool") return TypeTag::boolean();
    if (name == "int") return TypeTag::integer();
    if (name == "text") return TypeTag::text();
    // enum or concept reference; resolved when the concept is defined
    return TypeTag{TypeTag::Kind::concept_ref, std::move(name), {}};
  }

  Statement statement() {
    if (current().kind != Tok::ident) error("expected a statement keyword");
    const std::string& kw = current().text;

    if (kw == "repository") { take(); return RepositoryStmt{ident()}; }
    if (kw == "content-critical") { take(); return ContentCriticalStmt{ident()}; }
    if (kw == "enum") return enum_stmt();
    if (kw == "concept") return concept_stmt();
    if (kw == "individual") return individual_stmt();
    if (kw == "state") return state_stmt();
    if (kw == "meta") return meta_stmt();
    if (kw == "predicate") { take(); return PredicateStmt{ident()}; }
    if (kw == "constant") return constant_stmt();
    if (kw == "fact") return fact_stmt(false);
    if (kw == "retract") return fact_stmt(true);
    if (kw == "scenario") return scenario_stmt();
    if (kw == "coordinate") return coordinate_stmt();
    if (kw == "generalized") return generalized_stmt();
    if (kw == "cost") return cost_model_stmt();
    if (kw == "profile") return profile_stmt();
    if (kw == "role") return role_stmt();
    if (kw == "grant") return grant_stmt();
    if (kw == "bind") return bind_stmt();
    if (kw == "view") return view_stmt();
    if (kw == "tick") { take(); return TickStmt{}; }
    if (kw == "refresh") { take(); return RefreshStmt{ident()}; }
    error("unknown statement '" + kw + "'");
  }

  Statement enum_stmt() {
    take();
    EnumStmt s;
    s.name = ident();
    expect_punct("{");
    s.values.push_back(ident());
    while (is_punct(",")) { take(); s.values.push_back(ident()); }
    expect_punct("}");
    return s;
  }

  Statement concept_stmt() {
    take();
    ConceptStmt s;
    s.def.name = ident();
    expect_punct("{");
    while (!is_punct("}")) {
      AttributeDef a;
      a.name = ident();
      expect_punct(":");
      a.range = type_tag();
      if (is_ident("key")) {
        take();
        s.def.identifying.push_back(a.name);
      }
      s.def.attributes.push_back(std::move(a));
      if (is_punct(";")) take();
      else break;
    }
    expect_punct("}");
    return s;
  }

  Statement individual_stmt() {
    take();
    IndividualStmt s;
    s.concept_name = ident();
    s.assigns = assign_block();
    return s;
  }

  std::vector<Value> identity_brackets() {
    expect_punct("[");
    std::vector<Value> identity;
    identity.push_back(literal());
    while (is_punct(",")) { take(); identity.push_back(literal()); }
    expect_punct("]");
    return identity;
  }

  Statement state_stmt() {
    take();
    StateStmt s;
    s.concept_name = ident();
    s.identity = identity_brackets();
    expect_ident("cause");
    s.cause = string_lit();
    s.updates = assign_block();
    return s;
  }

  Statement meta_stmt() {
    take();
    MetaStmt s;
    s.name = ident();
    expect_ident("level");
    s.level = static_cast<int32_t>(integer_lit());
    expect_ident("over");
    if (is_ident("level")) {
      take();
      s.over_level = static_cast<int32_t>(integer_lit());
    } else {
      s.over_concept = ident();
    }
    expect_ident("where");
    s.where = formula();
    if (is_punct("{")) {
      take();
      if (!is_punct("}")) {
        s.descriptors.push_back(descriptor());
        while (is_punct(",")) { take(); s.descriptors.push_back(descriptor()); }
      }
      expect_punct("}");
    }
    return s;
  }

  std::pair<std::string, std::string> descriptor() {
    std::string key = canonical_descriptor(ident());
    expect_punct("=");
    return {std::move(key), string_lit()};
  }

  Statement constant_stmt() {
    take();
    ConstantStmt s;
    s.name = ident();
    expect_punct("=");
    s.value = term();
    if (s.value.kind != TermExpr::Kind::literal && s.value.kind != TermExpr::Kind::symbolic_ref)
      error("a constant must be bound to a literal or Concept[identity] reference");
    return s;
  }

  Statement fact_stmt(bool retract) {
    take();
    FactStmt s;
    s.retract = retract;
    s.predicate = ident();
    expect_punct("(");
    s.subject = term();
    expect_punct(",");
    s.object = term();
    expect_punct(")");
    return s;
  }

  Statement scenario_stmt() {
    take();
    ScenarioStmt s;
    s.name = ident();
    expect_ident("when");
    s.guard = formula();
    expect_ident("do");
    s.steps.push_back(scenario_step());
    while (is_punct(";")) { take(); s.steps.push_back(scenario_step()); }
    return s;
  }

  ScenarioStep scenario_step() {
    ScenarioStep step;
    std::string action = ident();
    if (action == "assert-frame") {
      step.kind = ScenarioStep::Kind::assert_frame;
      expect_punct("(");
      step.predicate = ident();
      expect_punct(",");
      step.args.push_back(term());
      expect_punct(",");
      step.args.push_back(term());
      expect_punct(")");
    } else if (action == "transition-state") {
      step.kind = ScenarioStep::Kind::transition_state;
      expect_punct("(");
      step.concept_name = ident();
      step.identity = identity_brackets();
      expect_punct(",");
      step.cause = string_lit();
      expect_punct(",");
      step.updates = assign_block();
      expect_punct(")");
    } else if (action == "render-view") {
      step.kind = ScenarioStep::Kind::render_view;
      expect_punct("(");
      step.view = current().kind == Tok::string ? string_lit() : ident();
      expect_punct(")");
    } else if (action == "deny") {
      step.kind = ScenarioStep::Kind::deny;
      expect_punct("(");
      step.reason = string_lit();
      expect_punct(")");
    } else {
      error("unknown scenario action '" + action + "'");
    }
    return step;
  }

  Statement coordinate_stmt() {
    take();
    CoordinateStmt s;
    s.name = ident();
    expect_punct("{");
    s.values.push_back(ident());
    while (is_punct(",")) { take(); s.values.push_back(ident()); }
    expect_punct("}");
    return s;
  }

  GvSpec gv_spec() {
    GvSpec spec;
    expect_ident("over");
    expect_punct("(");
    if (!is_punct(")")) {
      spec.coords.push_back(ident());
      while (is_punct(",")) { take(); spec.coords.push_back(ident()); }
    }
    expect_punct(")");
    expect_punct("{");
    if (!is_punct("}")) {
      spec.entries.push_back(gv_entry(spec.coords.size()));
      while (is_punct(",")) { take(); spec.entries.push_back(gv_entry(spec.coords.size())); }
    }
    expect_punct("}");
    return spec;
  }

  std::pair<std::vector<std::string>, Value> gv_entry(size_t arity) {
    std::vector<std::string> tuple;
    if (arity == 0) return {tuple, literal()};
    if (arity == 1) {
      tuple.push_back(ident());
    } else {
      expect_punct("(");
      tuple.push_back(ident());
      while (is_punct(",")) { take(); tuple.push_back(ident()); }
      expect_punct(")");
      if (tuple.size() != arity) error("tuple arity does not match the coordinate list");
    }
    expect_punct(":");
    return {std::move(tuple), literal()};
  }

  Statement generalized_stmt() {
    take();
    GeneralizedStmt s;
    s.name = ident();
    s.spec = gv_spec();
    return s;
  }

  Statement cost_model_stmt() {
    take();
    expect_ident("model");
    CostModelStmt s;
    s.name = ident();
    expect_punct("{");
    s.stages.push_back(cost_stage());
    while (is_punct(";")) { take(); s.stages.push_back(cost_stage()); }
    expect_punct("}");
    return s;
  }

  CostStageSpec cost_stage() {
    CostStageSpec stage;
    expect_ident("stage");
    expect_ident("l");
    expect_punct("=");
    stage.duration = integer_lit();
    expect_ident("q");
    if (is_punct("=")) {
      take();
      stage.overhead_ref = ident();
    } else {
      stage.overhead = gv_spec();
    }
    return stage;
  }

  Statement profile_stmt() {
    take();
    expect_ident("user");
    ProfileUserStmt s;
    s.user = string_lit();
    expect_punct("{");
    if (!is_punct("}")) {
      s.coordinates.push_back(coord_assign());
      while (is_punct(",")) { take(); s.coordinates.push_back(coord_assign()); }
    }
    expect_punct("}");
    return s;
  }

  std::pair<std::string, std::string> coord_assign() {
    std::string coord = ident();
    expect_punct("=");
    return {std::move(coord), ident()};
  }

  Statement role_stmt() {
    take();
    expect_ident("for");
    RoleAssignStmt s;
    s.user = string_lit();
    expect_punct("=");
    s.role = ident();
    return s;
  }

  Statement grant_stmt() {
    take();
    GrantStmt s;
    s.role = ident();
    s.op = ident();
    if (s.op != "read" && s.op != "write") error("expected read|write");
    s.kind = ident();
    if (s.kind != "data" && s.kind != "metadata") error("expected data|metadata");
    s.repo = ident();
    return s;
  }

  Statement bind_stmt() {
    take();
    expect_ident("on");
    BindStmt s;
    s.event = ident();
    if (is_ident("when")) {
      take();
      bind_guard(s);
      while (is_punct(",")) { take(); bind_guard(s); }
    }
    expect_ident("run");
    s.scenario = ident();
    return s;
  }

  void bind_guard(BindStmt& s) {
    if (is_ident("role")) {
      take();
      s.role_guard = ident();
      return;
    }
    s.coordinate_guards.push_back(coord_assign());
  }

  Statement view_stmt() {
    take();
    ViewStmt s;
    s.name = ident();
    expect_ident("over");
    s.repo = ident();
    expect_punct("{");
    expect_ident("from");
    s.from_concept = ident();
    if (is_ident("where")) {
      take();
      s.where = formula();
    }
    while (is_punct(";")) {
      take();
      if (is_punct("}")) break;
      view_clause(s);
    }
    expect_punct("}");
    if (s.projection.empty()) error("view '" + s.name + "' has no projection");
    return s;
  }

  void view_clause(ViewStmt& s) {
    if (is_ident("project")) {
      take();
      expect_punct("(");
      s.projection.push_back(ident());
      while (is_punct(",")) { take(); s.projection.push_back(ident()); }
      expect_punct(")");
      return;
    }
    if (is_ident("update")) {
      take();
      s.mode = ident();
      if (s.mode == "periodic") s.interval = integer_lit();
      else if (s.mode != "automatic" && s.mode != "manual")
        error("expected automatic|periodic|manual");
      return;
    }
    if (is_ident("visibility")) {
      take();
      s.visibility = ident();
      if (s.visibility != "public" && s.visibility != "registered" &&
          s.visibility != "corporate")
        error("expected public|registered|corporate");
      return;
    }
    if (is_ident("template")) {
      take();
      ViewTemplateSpec t;
      t.device = ident();
      expect_punct("{");
      while (!is_punct("}")) {
        template_field(t);
        if (is_punct(";")) take();
        else break;
      }
      expect_punct("}");
      s.templates.push_back(std::move(t));
      return;
    }
    error("unknown view clause");
  }

  void template_field(ViewTemplateSpec& t) {
    std::string field = ident();
    expect_punct("=");
    if (field == "sections") {
      expect_punct("[");
      t.sections.clear();
      t.sections.push_back(ident());
      while (is_punct(",")) { take(); t.sections.push_back(ident()); }
      expect_punct("]");
    } else if (field == "max-rows") {
      t.max_rows = integer_lit();
    } else if (field == "multimedia") {
      if (is_ident("true")) { take(); t.multimedia = true; }
      else if (is_ident("false")) { take(); t.multimedia = false; }
      else error("expected true|false");
    } else {
      error("unknown template field '" + field + "'");
    }
  }

  std::vector<Token> toks_;
  std::string file_;
  size_t idx_ = 0;
};

}  // namespace

std::vector<Statement> parse_model(const std::string& source, const std::string& filename) {
  Lexer lexer(source, filename);
  Parser parser(lexer.run(), filename);
  return parser.model();
}

Statement parse_statement(const std::string& source, const std::string& filename) {
  Lexer lexer(source, filename);
  Parser parser(lexer.run(), filename);
  return parser.single_statement();
}

Formula parse_formula(const std::string& source, const std::string& filename) {
  Lexer lexer(source, filename);
  Parser parser(lexer.run(), filename);
  return parser.full_formula();
}

}  // namespace ocp
