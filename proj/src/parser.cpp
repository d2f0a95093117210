#include "sreq/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sreq {

namespace {

bool is_binary_only(TokenKind kind) {
  switch (kind) {
    case TokenKind::KwAnd:
    case TokenKind::KwOr:
    case TokenKind::KwImplies:
    case TokenKind::Equal:
    case TokenKind::NotEqual:
    case TokenKind::Less:
    case TokenKind::LessEq:
    case TokenKind::Greater:
    case TokenKind::GreaterEq:
    case TokenKind::Plus:
    case TokenKind::Dot:
      return true;
    default:
      return false;
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class Parser {
 public:
  Parser(std::span<const Token> raw, std::string file) : file_(std::move(file)) {
    // Split comments off as trivia: a comment on the same line as the
    // preceding significant token trails it, otherwise it leads the next one.
    std::vector<std::string> pending;
    for (const Token& t : raw) {
      if (t.kind == TokenKind::Comment) {
        if (!tokens_.empty() && tokens_.back().line == t.line && pending.empty()) {
          trailing_.back().push_back(t.lexeme);
        } else {
          pending.push_back(t.lexeme);
        }
        continue;
      }
      tokens_.push_back(t);
      leading_.push_back(std::move(pending));
      trailing_.emplace_back();
      pending.clear();
    }
    Token eof{TokenKind::EndOfFile, "", 1, 1, true};
    if (!raw.empty()) {
      eof.line = raw.back().line + 1;
    }
    tokens_.push_back(eof);
    leading_.push_back(std::move(pending));
    trailing_.emplace_back();
  }

  bool at_end() const { return peek().kind == TokenKind::EndOfFile; }

  ParsedClass parse_class_decl() {
    std::vector<std::string> notes;
    if (accept(TokenKind::KwNote)) notes = parse_notes();

    bool deferred = false;
    bool frozen = false;
    if (accept(TokenKind::KwDeferred)) {
      deferred = true;
    } else if (accept(TokenKind::KwFrozen)) {
      frozen = true;
    }
    const Token& class_kw = expect(TokenKind::KwClass, "'class'");
    const Token& name = expect(TokenKind::Identifier, "class name");
    std::string description = normalize_comment(leading_[pos_]);

    std::optional<std::string> parent;
    SourceLocation parent_loc;
    if (peek().kind == TokenKind::KwInherit) {
      if (!deferred) {
        fail(DiagnosticKind::MisplacedConstruct, "inheritance between operational classes is not supported",
             peek());
      }
      advance();
      const Token& p = expect(TokenKind::Identifier, "parent class name");
      parent = p.lexeme;
      parent_loc = loc(p);
    }

    if (deferred) {
      RequirementClass rc;
      rc.name = name.lexeme;
      rc.location = loc(class_kw);
      rc.notes = std::move(notes);
      rc.description = std::move(description);
      rc.parent = parent;
      rc.parent_location = parent_loc;
      while (accept(TokenKind::KwFeature)) {
        while (peek().kind == TokenKind::Identifier) {
          rc.drivers.push_back(parse_driver(rc.name));
        }
      }
      expect(TokenKind::KwEnd, "'end' closing class " + rc.name);
      if (!rc.drivers.empty()) rc.header_comment = rc.drivers.front().leading_comment;
      return rc;
    }

    ContractedClass cls;
    cls.name = name.lexeme;
    cls.frozen = frozen;
    cls.location = loc(class_kw);
    cls.notes = std::move(notes);
    cls.description = std::move(description);
    while (accept(TokenKind::KwFeature)) {
      while (peek().kind == TokenKind::Identifier) parse_operational_feature(cls);
    }
    expect(TokenKind::KwEnd, "'end' closing class " + cls.name);
    return cls;
  }

 private:
  // ---- token plumbing -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(TokenKind kind) {
    if (peek().kind != kind) return false;
    advance();
    return true;
  }
  SourceLocation loc(const Token& t) const { return SourceLocation{file_, t.line, t.column}; }

  [[noreturn]] void fail(DiagnosticKind kind, const std::string& message, const Token& at) const {
    throw DiagnosticError(Diagnostic{kind, message, loc(at)});
  }
  [[noreturn]] void syntax(const std::string& expected, const Token& found) const {
    std::string shown = found.kind == TokenKind::EndOfFile ? std::string("end of file")
                                                          : "'" + found.lexeme + "'";
    fail(DiagnosticKind::SyntaxError, "expected " + expected + ", found " + shown, found);
  }
  const Token& expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) syntax(what, peek());
    return advance();
  }

  /// Whether an infix operator token continues the current expression. At
  /// paren depth zero a token starting a new line ends the clause unless it
  /// can only be an infix operator.
  bool continues(TokenKind kind) const {
    const Token& t = peek();
    if (t.kind != kind) return false;
    return depth_ > 0 || !t.line_start || is_binary_only(kind);
  }

  std::vector<std::string> parse_notes() {
    std::vector<std::string> notes;
    while (peek().kind == TokenKind::Identifier && peek(1).kind == TokenKind::Colon) {
      std::string entry = advance().lexeme + ":";
      advance();
      while (peek().kind != TokenKind::EndOfFile && peek().kind != TokenKind::KwClass &&
             peek().kind != TokenKind::KwDeferred && peek().kind != TokenKind::KwFrozen &&
             !(peek().kind == TokenKind::Identifier && peek(1).kind == TokenKind::Colon)) {
        const Token& t = advance();
        if (t.kind == TokenKind::Comma) {
          entry += ",";
        } else {
          entry += " " + t.lexeme;
        }
      }
      notes.push_back(std::move(entry));
    }
    if (notes.empty()) syntax("note entry 'name: value'", peek());
    return notes;
  }

  std::string parse_type() { return expect(TokenKind::Identifier, "type name").lexeme; }

  std::vector<Argument> parse_formals() {
    std::vector<Argument> args;
    expect(TokenKind::LParen, "'('");
    ++depth_;
    if (peek().kind != TokenKind::RParen) {
      for (;;) {
        std::vector<const Token*> names;
        names.push_back(&expect(TokenKind::Identifier, "argument name"));
        while (accept(TokenKind::Comma)) names.push_back(&expect(TokenKind::Identifier, "argument name"));
        expect(TokenKind::Colon, "':'");
        std::string type = parse_type();
        for (const Token* n : names) args.push_back(Argument{n->lexeme, type, loc(*n)});
        if (!accept(TokenKind::Semicolon)) break;
      }
    }
    --depth_;
    expect(TokenKind::RParen, "')'");
    return args;
  }

  struct RoutineParts {
    std::vector<Clause> precondition;
    std::vector<std::string> modify_set;
    bool has_do = false;
    bool hidden = false;
    std::vector<Statement> body;
    std::vector<Clause> postcondition;
    std::string comment;
  };

  RoutineParts parse_routine_rest(bool allow_modify) {
    RoutineParts parts;
    parts.comment = normalize_comment(leading_[pos_]);
    if (accept(TokenKind::KwRequire)) {
      parts.precondition = parse_clauses(allow_modify ? &parts.modify_set : nullptr);
    }
    if (peek().kind == TokenKind::KwDo) {
      advance();
      parts.has_do = true;
      if (peek().kind == TokenKind::KwEnsure || peek().kind == TokenKind::KwEnd) {
        for (const auto& c : leading_[pos_]) {
          if (lower(c).find("hidden implementation") != std::string::npos) parts.hidden = true;
        }
      }
      parts.body = parse_statements();
    }
    if (accept(TokenKind::KwEnsure)) parts.postcondition = parse_clauses(nullptr);
    expect(TokenKind::KwEnd, "'end'");
    return parts;
  }

  SpecificationDriver parse_driver(const std::string& owner) {
    std::string leading = normalize_comment(leading_[pos_]);
    const Token& name = advance();
    if (peek().kind == TokenKind::Comma || (peek().kind == TokenKind::Colon && peek(2).kind != TokenKind::KwRequire &&
                                            peek(2).kind != TokenKind::KwDo && peek(2).kind != TokenKind::KwEnsure)) {
      fail(DiagnosticKind::MisplacedConstruct,
           "requirement classes declare only specification drivers, not attributes", name);
    }
    SpecificationDriver d;
    d.name = name.lexeme;
    d.location = loc(name);
    d.owner = owner;
    d.leading_comment = std::move(leading);
    if (peek().kind == TokenKind::LParen) d.args = parse_formals();
    if (peek().kind == TokenKind::Colon) {
      fail(DiagnosticKind::MisplacedConstruct, "specification drivers cannot return a result", peek());
    }
    if (peek().kind != TokenKind::KwRequire && peek().kind != TokenKind::KwDo &&
        peek().kind != TokenKind::KwEnsure) {
      syntax("'require', 'do' or 'ensure'", peek());
    }
    RoutineParts parts = parse_routine_rest(true);
    d.comment = std::move(parts.comment);
    d.modify_set = std::move(parts.modify_set);
    d.precondition = std::move(parts.precondition);
    d.body = std::move(parts.body);
    d.postcondition = std::move(parts.postcondition);
    return d;
  }

  void parse_operational_feature(ContractedClass& cls) {
    const Token& first = advance();
    if (peek().kind == TokenKind::Comma) {
      std::vector<const Token*> names{&first};
      while (accept(TokenKind::Comma)) names.push_back(&expect(TokenKind::Identifier, "attribute name"));
      expect(TokenKind::Colon, "':'");
      std::string type = parse_type();
      for (const Token* n : names) cls.attributes.push_back(Attribute{n->lexeme, type, loc(*n)});
      return;
    }
    std::vector<Argument> args;
    if (peek().kind == TokenKind::LParen) args = parse_formals();
    std::string result_type;
    if (accept(TokenKind::Colon)) result_type = parse_type();

    const bool routine = peek().kind == TokenKind::KwRequire || peek().kind == TokenKind::KwDo ||
                         peek().kind == TokenKind::KwEnsure;
    if (!routine) {
      if (result_type.empty() || !args.empty()) syntax("'require', 'do' or 'ensure'", peek());
      cls.attributes.push_back(Attribute{first.lexeme, result_type, loc(first)});
      return;
    }
    if (!result_type.empty() && peek().kind == TokenKind::KwRequire) {
      fail(DiagnosticKind::MisplacedConstruct, "query preconditions are not supported", peek());
    }
    RoutineParts parts = parse_routine_rest(false);
    std::optional<std::vector<Statement>> body;
    if (parts.has_do && !parts.hidden) body = std::move(parts.body);
    if (result_type.empty()) {
      Command c;
      c.name = first.lexeme;
      c.location = loc(first);
      c.args = std::move(args);
      c.precondition = std::move(parts.precondition);
      c.body = std::move(body);
      c.postcondition = std::move(parts.postcondition);
      c.comment = std::move(parts.comment);
      cls.commands.push_back(std::move(c));
    } else {
      Query q;
      q.name = first.lexeme;
      q.location = loc(first);
      q.args = std::move(args);
      q.result_type = std::move(result_type);
      q.body = std::move(body);
      q.postcondition = std::move(parts.postcondition);
      q.comment = std::move(parts.comment);
      cls.queries.push_back(std::move(q));
    }
  }

  // ---- assertions and statements -------------------------------------------

  static bool ends_block(TokenKind k) {
    return k == TokenKind::KwDo || k == TokenKind::KwEnsure || k == TokenKind::KwEnd ||
           k == TokenKind::KwElse || k == TokenKind::KwElseif || k == TokenKind::EndOfFile;
  }

  std::vector<Clause> parse_clauses(std::vector<std::string>* modify_set) {
    std::vector<Clause> clauses;
    for (;;) {
      while (accept(TokenKind::Semicolon)) {
      }
      if (ends_block(peek().kind)) break;
      if (peek().kind == TokenKind::KwModify) {
        if (modify_set == nullptr) {
          fail(DiagnosticKind::MisplacedConstruct,
               "modify clauses are allowed only in specification driver preconditions", peek());
        }
        advance();
        expect(TokenKind::LParen, "'('");
        ++depth_;
        modify_set->push_back(expect(TokenKind::Identifier, "argument name").lexeme);
        while (accept(TokenKind::Comma)) {
          modify_set->push_back(expect(TokenKind::Identifier, "argument name").lexeme);
        }
        --depth_;
        expect(TokenKind::RParen, "')'");
      } else {
        Clause clause;
        clause.location = loc(peek());
        if (peek().kind == TokenKind::Identifier && peek(1).kind == TokenKind::Colon) {
          clause.label = advance().lexeme;
          advance();
        }
        clause.expr = parse_expr();
        clauses.push_back(std::move(clause));
      }
      const Token& next = peek();
      if (!ends_block(next.kind) && next.kind != TokenKind::Semicolon && !next.line_start) {
        syntax("end of assertion clause", next);
      }
    }
    return clauses;
  }

  std::vector<Statement> parse_statements() {
    std::vector<Statement> stmts;
    for (;;) {
      while (accept(TokenKind::Semicolon)) {
      }
      if (ends_block(peek().kind)) break;
      stmts.push_back(parse_statement());
    }
    return stmts;
  }

  Statement parse_statement() {
    const Token& start = peek();
    Statement s;
    s.location = loc(start);
    if (accept(TokenKind::KwIf)) {
      s.kind = Statement::Kind::If;
      Branch b;
      b.condition = parse_expr();
      expect(TokenKind::KwThen, "'then'");
      b.body = parse_statements();
      s.branches.push_back(std::move(b));
      while (accept(TokenKind::KwElseif)) {
        Branch e;
        e.condition = parse_expr();
        expect(TokenKind::KwThen, "'then'");
        e.body = parse_statements();
        s.branches.push_back(std::move(e));
      }
      if (accept(TokenKind::KwElse)) {
        s.has_else = true;
        s.otherwise = parse_statements();
      }
      expect(TokenKind::KwEnd, "'end' closing 'if'");
      return s;
    }
    if (accept(TokenKind::KwCheck)) {
      s.kind = Statement::Kind::Check;
      s.assertions = parse_clauses(nullptr);
      expect(TokenKind::KwEnd, "'end' closing 'check'");
      return s;
    }
    if (start.kind != TokenKind::Identifier && start.kind != TokenKind::KwCurrent &&
        start.kind != TokenKind::KwResult) {
      syntax("statement", start);
    }
    ExprPtr target = parse_postfix();
    if (accept(TokenKind::Assign)) {
      if (target->kind == Expr::Kind::Result) {
        s.variable = "Result";
      } else if (target->kind == Expr::Kind::Name) {
        s.variable = target->name;
      } else {
        fail(DiagnosticKind::SyntaxError, "assignment target must be an attribute or Result", start);
      }
      s.kind = Statement::Kind::Assign;
      s.value = parse_expr();
      return s;
    }
    if (target->kind != Expr::Kind::Feature && target->kind != Expr::Kind::Name) {
      syntax("feature call", start);
    }
    s.kind = Statement::Kind::Call;
    s.call = std::move(target);
    return s;
  }

  // ---- expressions ----------------------------------------------------------

  ExprPtr parse_expr() { return parse_implies(); }

  ExprPtr parse_implies() {
    ExprPtr lhs = parse_or();
    if (continues(TokenKind::KwImplies)) {
      SourceLocation at = loc(advance());
      ExprPtr rhs = parse_implies();
      return Expr::make_binary(BinaryOp::Implies, std::move(lhs), std::move(rhs), at);
    }
    return lhs;
  }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (continues(TokenKind::KwOr)) {
      SourceLocation at = loc(advance());
      accept(TokenKind::KwElse);  // `or else`
      lhs = Expr::make_binary(BinaryOp::Or, std::move(lhs), parse_and(), at);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_comparison();
    while (continues(TokenKind::KwAnd)) {
      SourceLocation at = loc(advance());
      accept(TokenKind::KwThen);  // `and then`
      lhs = Expr::make_binary(BinaryOp::And, std::move(lhs), parse_comparison(), at);
    }
    return lhs;
  }

  std::optional<BinaryOp> comparison_at() const {
    static const std::pair<TokenKind, BinaryOp> ops[] = {
        {TokenKind::Equal, BinaryOp::Eq}, {TokenKind::NotEqual, BinaryOp::Neq},
        {TokenKind::Less, BinaryOp::Lt},  {TokenKind::LessEq, BinaryOp::Le},
        {TokenKind::Greater, BinaryOp::Gt}, {TokenKind::GreaterEq, BinaryOp::Ge},
    };
    for (auto [kind, op] : ops) {
      if (continues(kind)) return op;
    }
    return std::nullopt;
  }

  ExprPtr parse_comparison() {
    ExprPtr lhs = parse_additive();
    if (auto op = comparison_at()) {
      SourceLocation at = loc(advance());
      ExprPtr rhs = parse_additive();
      if (comparison_at()) {
        fail(DiagnosticKind::SyntaxError, "comparison operators do not chain; add parentheses", peek());
      }
      return Expr::make_binary(*op, std::move(lhs), std::move(rhs), at);
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (continues(TokenKind::Plus)) {
        SourceLocation at = loc(advance());
        lhs = Expr::make_binary(BinaryOp::Add, std::move(lhs), parse_unary(), at);
      } else if (continues(TokenKind::Minus)) {
        SourceLocation at = loc(advance());
        lhs = Expr::make_binary(BinaryOp::Sub, std::move(lhs), parse_unary(), at);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    const Token& t = peek();
    if (accept(TokenKind::KwNot)) return Expr::make_unary(UnaryOp::Not, parse_unary(), loc(t));
    if (accept(TokenKind::Minus)) return Expr::make_unary(UnaryOp::Negate, parse_unary(), loc(t));
    if (accept(TokenKind::KwOld)) return Expr::make_old(parse_unary(), loc(t));
    return parse_postfix();
  }

  std::vector<ExprPtr> parse_actuals() {
    std::vector<ExprPtr> args;
    advance();  // '('
    ++depth_;
    if (peek().kind != TokenKind::RParen) {
      args.push_back(parse_expr());
      while (accept(TokenKind::Comma)) args.push_back(parse_expr());
    }
    --depth_;
    expect(TokenKind::RParen, "')'");
    return args;
  }

  bool actuals_follow() const {
    return peek().kind == TokenKind::LParen && !peek().line_start;
  }

  ExprPtr parse_postfix() {
    const Token& t = peek();
    ExprPtr e;
    switch (t.kind) {
      case TokenKind::Integer:
        advance();
        e = Expr::make_integer(std::stoll(t.lexeme), loc(t));
        return e;
      case TokenKind::KwTrue:
        advance();
        return Expr::make_boolean(true, loc(t));
      case TokenKind::KwFalse:
        advance();
        return Expr::make_boolean(false, loc(t));
      case TokenKind::LParen: {
        advance();
        ++depth_;
        e = parse_expr();
        --depth_;
        expect(TokenKind::RParen, "')'");
        break;
      }
      case TokenKind::KwResult:
        advance();
        e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Result;
        e->location = loc(t);
        break;
      case TokenKind::KwCurrent:
        advance();
        e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Current;
        e->location = loc(t);
        break;
      case TokenKind::Identifier:
        advance();
        if (actuals_follow()) {
          e = Expr::make_feature(nullptr, t.lexeme, parse_actuals(), loc(t));
        } else {
          e = Expr::make_name(t.lexeme, loc(t));
        }
        break;
      default:
        syntax("expression", t);
    }
    while (peek().kind == TokenKind::Dot) {
      advance();
      const Token& f = expect(TokenKind::Identifier, "feature name");
      std::vector<ExprPtr> args;
      if (actuals_follow()) args = parse_actuals();
      e = Expr::make_feature(std::move(e), f.lexeme, std::move(args), loc(f));
    }
    return e;
  }

  std::string file_;
  std::vector<Token> tokens_;
  std::vector<std::vector<std::string>> leading_;
  std::vector<std::vector<std::string>> trailing_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// ---- printing ---------------------------------------------------------------

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary:
      switch (e.binary) {
        case BinaryOp::Implies: return 1;
        case BinaryOp::Or: return 2;
        case BinaryOp::And: return 3;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 5;
        default: return 4;
      }
    case Expr::Kind::Unary:
    case Expr::Kind::Old: return 6;
    default: return 7;
  }
}

void print_expr_to(std::ostream& out, const Expr& e, int min_prec) {
  const int prec = precedence(e);
  const bool paren = prec < min_prec;
  if (paren) out << '(';
  switch (e.kind) {
    case Expr::Kind::Integer: out << e.integer; break;
    case Expr::Kind::Boolean: out << (e.boolean ? "True" : "False"); break;
    case Expr::Kind::Name: out << e.name; break;
    case Expr::Kind::Result: out << "Result"; break;
    case Expr::Kind::Current: out << "Current"; break;
    case Expr::Kind::Feature:
      if (e.operand) {
        print_expr_to(out, *e.operand, 7);
        out << '.';
      }
      out << e.name;
      if (!e.args.empty()) {
        out << " (";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i) out << ", ";
          print_expr_to(out, *e.args[i], 0);
        }
        out << ')';
      }
      break;
    case Expr::Kind::Old:
      out << "old ";
      print_expr_to(out, *e.operand, 6);
      break;
    case Expr::Kind::Unary:
      if (e.unary == UnaryOp::Not) {
        out << "not ";
      } else {
        out << '-';
        if (e.operand->kind == Expr::Kind::Unary || e.operand->kind == Expr::Kind::Old) out << ' ';
      }
      print_expr_to(out, *e.operand, 6);
      break;
    case Expr::Kind::Binary: {
      int lmin = prec;
      int rmin = prec + 1;
      if (e.binary == BinaryOp::Implies) {
        lmin = prec + 1;
        rmin = prec;
      } else if (prec == 4) {
        lmin = prec + 1;
      }
      print_expr_to(out, *e.lhs, lmin);
      out << ' ' << spelling(e.binary) << ' ';
      print_expr_to(out, *e.rhs, rmin);
      break;
    }
  }
  if (paren) out << ')';
}

void print_comment(std::ostream& out, const std::string& text, const std::string& indent) {
  if (!text.empty()) out << indent << "-- " << text << '\n';
}

void print_args(std::ostream& out, const std::vector<Argument>& args) {
  if (args.empty()) return;
  out << " (";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out << "; ";
    out << args[i].name << ": " << args[i].type;
  }
  out << ')';
}

void print_clauses(std::ostream& out, const std::vector<Clause>& clauses, const std::string& indent) {
  for (const Clause& c : clauses) {
    out << indent;
    if (!c.label.empty()) out << c.label << ": ";
    print_expr_to(out, *c.expr, 0);
    out << '\n';
  }
}

void print_statements(std::ostream& out, const std::vector<Statement>& stmts, const std::string& indent) {
  for (const Statement& s : stmts) {
    switch (s.kind) {
      case Statement::Kind::Call:
        out << indent;
        print_expr_to(out, *s.call, 0);
        out << '\n';
        break;
      case Statement::Kind::Assign:
        out << indent << s.variable << " := ";
        print_expr_to(out, *s.value, 0);
        out << '\n';
        break;
      case Statement::Kind::Check:
        out << indent << "check\n";
        print_clauses(out, s.assertions, indent + "  ");
        out << indent << "end\n";
        break;
      case Statement::Kind::If:
        for (std::size_t i = 0; i < s.branches.size(); ++i) {
          out << indent << (i == 0 ? "if " : "elseif ");
          print_expr_to(out, *s.branches[i].condition, 0);
          out << " then\n";
          print_statements(out, s.branches[i].body, indent + "  ");
        }
        if (s.has_else) {
          out << indent << "else\n";
          print_statements(out, s.otherwise, indent + "  ");
        }
        out << indent << "end\n";
        break;
    }
  }
}

void print_notes(std::ostream& out, const std::vector<std::string>& notes) {
  if (notes.empty()) return;
  out << "note";
  for (const auto& n : notes) out << ' ' << n;
  out << '\n';
}

}  // namespace

std::string normalize_comment(const std::vector<std::string>& lines) {
  std::string result;
  for (const std::string& raw : lines) {
    std::size_t start = 0;
    while (start < raw.size() && raw[start] == '-') ++start;
    std::istringstream words(raw.substr(start));
    std::string w;
    while (words >> w) {
      if (!result.empty()) result += ' ';
      result += w;
    }
  }
  return result;
}

std::string extract_comment(const SpecificationDriver& driver) {
  const std::string& header = driver.leading_comment;
  if (!header.empty() && header.back() == ':') {
    std::string joined = header.substr(0, header.size() - 1);
    if (!driver.comment.empty()) joined += " " + driver.comment;
    return joined;
  }
  return driver.comment;
}

ParsedClass parse_class(std::span<const Token> tokens, const std::string& file) {
  Parser parser(tokens, file);
  ParsedClass result = parser.parse_class_decl();
  if (!parser.at_end()) {
    const Token* extra = nullptr;
    for (const Token& t : tokens) {
      if (t.kind != TokenKind::Comment) extra = &t;
    }
    throw DiagnosticError(Diagnostic{DiagnosticKind::SyntaxError, "unexpected input after class",
                                     SourceLocation{file, extra ? extra->line : 1,
                                                    extra ? extra->column : 1}});
  }
  return result;
}

ParsedUnit parse_source(std::string_view text, const std::string& file) {
  std::vector<Token> tokens = lex(text, file);
  Parser parser(tokens, file);
  ParsedUnit unit;
  while (!parser.at_end()) {
    ParsedClass cls = parser.parse_class_decl();
    if (auto* c = std::get_if<ContractedClass>(&cls)) {
      unit.classes.push_back(std::move(*c));
    } else {
      unit.requirement_classes.push_back(std::get<RequirementClass>(std::move(cls)));
    }
  }
  return unit;
}

void add_unit(Project& project, ParsedUnit unit) {
  for (auto& c : unit.classes) {
    project.source_index.emplace(c.name, c.location);
    for (const auto& a : c.attributes) project.source_index.emplace(c.name + "." + a.name, a.location);
    for (const auto& cmd : c.commands) project.source_index.emplace(c.name + "." + cmd.name, cmd.location);
    for (const auto& q : c.queries) project.source_index.emplace(c.name + "." + q.name, q.location);
    project.classes.push_back(std::move(c));
  }
  for (auto& rc : unit.requirement_classes) {
    project.source_index.emplace(rc.name, rc.location);
    for (const auto& d : rc.drivers) project.source_index.emplace(rc.name + "." + d.name, d.location);
    project.requirement_classes.push_back(std::move(rc));
  }
}

std::string print_expr(const Expr& expr) {
  std::ostringstream out;
  print_expr_to(out, expr, 0);
  return out.str();
}

std::string print_class(const ContractedClass& cls) {
  std::ostringstream out;
  print_notes(out, cls.notes);
  out << (cls.frozen ? "frozen class " : "class ") << cls.name << '\n';
  print_comment(out, cls.description, "  ");
  out << "feature\n";
  for (const auto& a : cls.attributes) out << "  " << a.name << ": " << a.type << '\n';
  auto routine = [&](const std::string& name, const std::vector<Argument>& args, const std::string& result,
                     const std::string& comment, const std::vector<Clause>& pre,
                     const std::optional<std::vector<Statement>>& body, const std::vector<Clause>& post) {
    out << "\n  " << name;
    print_args(out, args);
    if (!result.empty()) out << ": " << result;
    out << '\n';
    print_comment(out, comment, "      ");
    if (!pre.empty()) {
      out << "    require\n";
      print_clauses(out, pre, "      ");
    }
    out << "    do\n";
    if (body) {
      print_statements(out, *body, "      ");
    } else {
      out << "      -- Hidden implementation\n";
    }
    if (!post.empty()) {
      out << "    ensure\n";
      print_clauses(out, post, "      ");
    }
    out << "    end\n";
  };
  for (const auto& c : cls.commands) {
    routine(c.name, c.args, "", c.comment, c.precondition, c.body, c.postcondition);
  }
  for (const auto& q : cls.queries) {
    routine(q.name, q.args, q.result_type, q.comment, {}, q.body, q.postcondition);
  }
  out << "end\n";
  return out.str();
}

std::string print_class(const RequirementClass& cls) {
  std::ostringstream out;
  print_notes(out, cls.notes);
  out << "deferred class " << cls.name << '\n';
  print_comment(out, cls.description, "  ");
  if (cls.parent) out << "inherit " << *cls.parent << '\n';
  out << "feature\n";
  for (const auto& d : cls.drivers) {
    print_comment(out, d.leading_comment, "  ");
    out << "  " << d.name;
    print_args(out, d.args);
    out << '\n';
    print_comment(out, d.comment, "      ");
    if (!d.modify_set.empty() || !d.precondition.empty()) {
      out << "    require\n";
      if (!d.modify_set.empty()) {
        out << "      modify (";
        for (std::size_t i = 0; i < d.modify_set.size(); ++i) {
          if (i) out << ", ";
          out << d.modify_set[i];
        }
        out << ")\n";
      }
      print_clauses(out, d.precondition, "      ");
    }
    out << "    do\n";
    print_statements(out, d.body, "      ");
    if (!d.postcondition.empty()) {
      out << "    ensure\n";
      print_clauses(out, d.postcondition, "      ");
    }
    out << "    end\n";
  }
  out << "end\n";
  return out.str();
}

std::string print_project(const Project& project) {
  std::string text;
  for (const auto& c : project.classes) text += print_class(c) + "\n";
  for (const auto& rc : project.requirement_classes) text += print_class(rc) + "\n";
  return text;
}

}  // namespace sreq
