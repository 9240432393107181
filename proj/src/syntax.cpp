#include "locpa/syntax.hpp"

#include <cctype>
#include <sstream>

namespace locpa {

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << span.line << ":" << span.col << ": " << message;
  return os.str();
}

namespace {

enum class Tok {
  Ident, Number,
  LParen, RParen, LBrace, RBrace, Langle, Rangle,
  Plus, Semi, Dot, Comma, ColonColon, At, Eq,
  SlashSlash, BarBar, Bar, LtLt,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Token> toks;
  std::optional<Diagnostic> error;

  explicit Lexer(const std::string& s) : src(s) {}

  void adv(size_t n) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') { ++line; col = 1; } else ++col;
    }
  }

  void push(Tok k, size_t len) {
    Token t;
    t.kind = k;
    t.text = src.substr(pos, len);
    t.span = {pos, pos + len, line, col};
    toks.push_back(t);
    adv(len);
  }

  bool at(const char* s) const {
    size_t n = std::char_traits<char>::length(s);
    return src.compare(pos, n, s) == 0;
  }

  void run() {
    while (pos < src.size()) {
      char c = src[pos];
      if (std::isspace(static_cast<unsigned char>(c))) { adv(1); continue; }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t n = 1;
        while (pos + n < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos + n])) || src[pos + n] == '_' ||
                src[pos + n] == '\''))
          ++n;
        push(Tok::Ident, n);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t n = 1;
        while (pos + n < src.size() && std::isdigit(static_cast<unsigned char>(src[pos + n]))) ++n;
        push(Tok::Number, n);
        continue;
      }
      if (at("::")) { push(Tok::ColonColon, 2); continue; }
      if (at("//")) { push(Tok::SlashSlash, 2); continue; }
      if (at("||")) { push(Tok::BarBar, 2); continue; }
      if (at("<<")) { push(Tok::LtLt, 2); continue; }
      switch (c) {
        case '(': push(Tok::LParen, 1); continue;
        case ')': push(Tok::RParen, 1); continue;
        case '{': push(Tok::LBrace, 1); continue;
        case '}': push(Tok::RBrace, 1); continue;
        case '<': push(Tok::Langle, 1); continue;
        case '>': push(Tok::Rangle, 1); continue;
        case '+': push(Tok::Plus, 1); continue;
        case ';': push(Tok::Semi, 1); continue;
        case '.': push(Tok::Dot, 1); continue;
        case ',': push(Tok::Comma, 1); continue;
        case '@': push(Tok::At, 1); continue;
        case '=': push(Tok::Eq, 1); continue;
        case '|': push(Tok::Bar, 1); continue;
        default: {
          error = Diagnostic{{pos, pos + 1, line, col}, std::string("unexpected character '") + c + "'"};
          return;
        }
      }
    }
    Token t;
    t.kind = Tok::End;
    t.span = {pos, pos, line, col};
    toks.push_back(t);
  }
};

struct ParseError {
  Diagnostic diag;
};

struct Parser {
  std::vector<Token> toks;
  size_t i = 0;
  bool summand_mode = false;  // ';' separates equations, not sequences

  const Token& cur() const { return toks[i]; }
  const Token& peek(size_t k = 1) const { return toks[std::min(i + k, toks.size() - 1)]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_kw(const char* kw) const { return at(Tok::Ident) && cur().text == kw; }
  Token take() { return toks[i++]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError{{cur().span, msg}}; }

  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    ++i;
  }

  std::string expect_ident(const char* what) {
    if (!at(Tok::Ident)) fail(std::string("expected ") + what);
    return take().text;
  }

  // l1.l2.l3  (or "eps"). Only called when the caller has verified the
  // shape ident (. ident)* '::'.
  LocWord parse_loc_word() {
    LocWord w;
    std::string first = expect_ident("location name");
    if (first != "eps") w.parts.push_back(first);
    while (at(Tok::Dot) && peek().kind == Tok::Ident) {
      ++i;
      std::string l = expect_ident("location name");
      if (l != "eps") w.parts.push_back(l);
    }
    return w;
  }

  // Does a location word start here, i.e. ident (. ident)* '::' ?
  bool loc_word_ahead() const {
    if (!at(Tok::Ident)) return false;
    size_t k = i + 1;
    while (k + 1 < toks.size() && toks[k].kind == Tok::Dot && toks[k + 1].kind == Tok::Ident)
      k += 2;
    return k < toks.size() && toks[k].kind == Tok::ColonColon;
  }

  TermPtr parse_term_top() {
    TermPtr t = parse_alt();
    if (!at(Tok::End)) fail("unexpected trailing input");
    return t;
  }

  TermPtr parse_alt() {
    TermPtr t = parse_par();
    while (at(Tok::Plus)) {
      ++i;
      t = mk_alt(t, parse_par());
    }
    return t;
  }

  TermPtr parse_par() {
    TermPtr t = parse_seq();
    for (;;) {
      Op op;
      if (at(Tok::SlashSlash)) op = Op::Par;
      else if (at(Tok::BarBar)) op = Op::Merge;
      else if (at(Tok::Bar)) op = Op::Comm;
      else if (at(Tok::LtLt)) op = Op::LeftMerge;
      else break;
      ++i;
      t = mk_bin(op, t, parse_seq());
    }
    return t;
  }

  TermPtr parse_seq() {
    TermPtr t = parse_dot();
    while (!summand_mode && at(Tok::Semi)) {
      ++i;
      t = mk_seq(t, parse_dot());
    }
    return t;
  }

  // Action prefix: a 'prefixable' head followed by '.' and a continuation.
  TermPtr parse_dot() {
    TermPtr t = parse_primary();
    if (at(Tok::Dot)) {
      std::vector<LocatedAction> items;
      if (!to_prefix_items(t, items))
        fail("left operand of '.' must be an action, a located action, or a <...> group");
      ++i;
      return mk_prefix(std::move(items), parse_dot());
    }
    return t;
  }

  // Converts a parsed head term into prefix items: a, tau, u::a, and <<
  // combinations of those.
  static bool to_prefix_items(const TermPtr& t, std::vector<LocatedAction>& out) {
    return collect_items(t, LocWord::eps(), out);
  }

  static bool collect_items(const TermPtr& t, const LocWord& pre, std::vector<LocatedAction>& out) {
    switch (t->op) {
      case Op::Act:
        out.push_back({t->name, pre});
        return true;
      case Op::TauAtom:
        out.push_back({kTau, LocWord::eps()});
        return true;
      case Op::LocPrefix:
        return collect_items(t->a, pre.concat(t->word), out);
      case Op::LeftMerge:
        return collect_items(t->a, pre, out) && collect_items(t->b, pre, out);
      case Op::Prefix:
        // a <...> group with no continuation parsed yet
        if (t->a->op != Op::Nil) return false;
        for (const auto& it : t->prefix_items) {
          LocatedAction la = it;
          la.at = pre.concat(la.at);
          out.push_back(la);
        }
        return true;
      default:
        return false;
    }
  }

  std::vector<LocatedAction> parse_angle_items() {
    expect(Tok::Langle, "'<'");
    std::vector<LocatedAction> items;
    for (;;) {
      LocWord w;
      if (loc_word_ahead()) {
        w = parse_loc_word();
        expect(Tok::ColonColon, "'::'");
      }
      std::string a = expect_ident("action name");
      if (is_tau(a))
        items.push_back({kTau, LocWord::eps()});
      else if (is_delta(a))
        fail("d cannot appear in an action prefix");
      else
        items.push_back({a, w});
      if (at(Tok::Comma) || at(Tok::SlashSlash)) { ++i; continue; }
      break;
    }
    expect(Tok::Rangle, "'>'");
    if (items.size() > 1) {
      bool any_tau = false, any_vis = false;
      for (const auto& it : items) (is_tau(it.action) ? any_tau : any_vis) = true;
      if (any_tau && any_vis) fail("tau cannot be combined with visible actions in one prefix");
    }
    return items;
  }

  std::set<std::string> parse_brace_set() {
    expect(Tok::LBrace, "'{'");
    std::set<std::string> s;
    if (!at(Tok::RBrace)) {
      for (;;) {
        s.insert(expect_ident("action name"));
        if (at(Tok::Comma)) { ++i; continue; }
        break;
      }
    }
    expect(Tok::RBrace, "'}'");
    return s;
  }

  TermPtr parse_call_1(const char* name, TermPtr (*mk)(const std::string&, TermPtr), bool) {
    ++i;  // keyword
    expect(Tok::LParen, "'('");
    std::string arg = expect_ident(name);
    expect(Tok::Comma, "','");
    TermPtr body = parse_alt();
    expect(Tok::RParen, "')'");
    return mk(arg, body);
  }

  TermPtr parse_primary() {
    if (at(Tok::Number)) {
      if (cur().text == "0") { ++i; return mk_nil(); }
      fail("unexpected number");
    }
    if (at(Tok::LParen)) {
      ++i;
      bool saved = summand_mode;
      summand_mode = false;  // full grammar inside parentheses
      TermPtr t = parse_alt();
      summand_mode = saved;
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::Langle)) {
      auto items = parse_angle_items();
      if (at(Tok::Dot)) {
        ++i;
        return mk_prefix(std::move(items), parse_dot());
      }
      // a bare multiset of located actions, e.g. a linear-spec summand
      return mk_prefix(std::move(items), mk_nil());
    }
    if (at(Tok::Ident)) {
      const std::string& w = cur().text;
      if (w == "d") { ++i; return mk_delta(); }
      if (w == "tau") { ++i; return mk_tau(); }
      if (w == "theta") {
        ++i;
        expect(Tok::LParen, "'('");
        TermPtr t = parse_alt();
        expect(Tok::RParen, "')'");
        return mk_theta(t);
      }
      if (w == "unless") {
        ++i;
        expect(Tok::LParen, "'('");
        TermPtr a = parse_alt();
        expect(Tok::Comma, "','");
        TermPtr b = parse_alt();
        expect(Tok::RParen, "')'");
        return mk_unless(a, b);
      }
      if (w == "encap") return parse_call_1("encapsulation set name", &mk_encap, true);
      if (w == "hide") return parse_call_1("hiding set name", &mk_hide, true);
      if (w == "relabel") return parse_call_1("relabelling name", &mk_relabel, true);
      if (w == "pi") {
        ++i;
        expect(Tok::LParen, "'('");
        if (!at(Tok::Number)) fail("expected projection depth");
        int n = std::stoi(take().text);
        expect(Tok::Comma, "','");
        TermPtr t = parse_alt();
        expect(Tok::RParen, "')'");
        return mk_proj(n, t);
      }
      if (w == "restrict") {
        ++i;
        expect(Tok::LParen, "'('");
        auto L = parse_brace_set();
        expect(Tok::Comma, "','");
        TermPtr t = parse_alt();
        expect(Tok::RParen, "')'");
        return mk_restrict(std::move(L), t);
      }
      if (loc_word_ahead()) {
        LocWord word = parse_loc_word();
        expect(Tok::ColonColon, "'::'");
        return mk_locprefix(word, parse_primary());
      }
      std::string name = take().text;
      if (at(Tok::At)) {
        ++i;
        std::string spec = expect_ident("specification name");
        return mk_recref(name, spec);
      }
      return mk_act(name);
    }
    fail("expected a term");
  }

  // ---- linear specifications ----

  LinearSpec parse_spec_top() {
    LinearSpec sp = parse_one_spec();
    if (!at(Tok::End)) fail("unexpected trailing input");
    return sp;
  }

  LinearSpec parse_one_spec() {
    if (!at_kw("spec")) fail("expected 'spec'");
    ++i;
    LinearSpec sp;
    sp.name = expect_ident("specification name");
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      std::string var = expect_ident("recursion variable");
      expect(Tok::Eq, "'='");
      std::vector<Summand> sums;
      if (at_kw("d") && (peek().kind == Tok::Semi || peek().kind == Tok::RBrace)) {
        ++i;  // X = d is the empty sum, i.e. deadlock
      } else {
        for (;;) {
          sums.push_back(parse_summand(sp.name));
          if (at(Tok::Plus)) { ++i; continue; }
          break;
        }
      }
      if (sp.equations.count(var)) fail("duplicate equation for " + var);
      sp.vars.push_back(var);
      sp.equations[var] = std::move(sums);
      if (at(Tok::Semi)) ++i;
    }
    expect(Tok::RBrace, "'}'");
    // resolve targets: every target must be a declared variable
    for (auto& [v, sums] : sp.equations) {
      (void)v;
      for (auto& s : sums)
        if (s.has_target && !sp.has_var(s.target))
          throw ParseError{{{0, 0, 1, 1}, "unknown variable in summand target: " + s.target}};
    }
    return sp;
  }

  Summand parse_summand(const std::string&) {
    const Token& start = cur();
    // parse at the '//'-tier so '+' and ';' end the summand
    summand_mode = true;
    TermPtr t;
    try {
      t = parse_par();
    } catch (const ParseError& e) {
      summand_mode = false;
      if (e.diag.message.find("left operand of '.'") != std::string::npos)
        throw ParseError{{start.span, "summand not linear"}};
      throw;
    }
    summand_mode = false;
    Summand s;
    if (!classify_summand(t, s))
      throw ParseError{{start.span, "summand not linear"}};
    std::sort(s.actions.begin(), s.actions.end());
    return s;
  }

  static bool classify_summand(const TermPtr& t, Summand& s) {
    // forms: H, H . X, H ; X  with H a step head (located actions joined
    // by << or a <...> group) and X a variable reference
    if (t->op == Op::Prefix) {
      s.actions = t->prefix_items;
      return classify_target(t->a, s);
    }
    if (t->op == Op::Seq) {
      if (!collect_items(t->a, LocWord::eps(), s.actions)) return false;
      return classify_target(t->b, s);
    }
    if (collect_items(t, LocWord::eps(), s.actions)) return !s.actions.empty();
    return false;
  }

  static bool classify_target(const TermPtr& t, Summand& s) {
    if (t->op == Op::Nil) { s.has_target = false; return !s.actions.empty(); }
    if (t->op == Op::Act || t->op == Op::Const) {
      s.has_target = true;
      s.target = t->name;
      return !s.actions.empty();
    }
    return false;
  }
};

template <typename T, typename F>
Parsed<T> run_parser(const std::string& text, F f) {
  Lexer lx(text);
  lx.run();
  Parsed<T> out;
  if (lx.error) {
    out.error = lx.error;
    return out;
  }
  Parser p{std::move(lx.toks)};
  try {
    out.value = f(p);
  } catch (const ParseError& e) {
    out.error = e.diag;
  }
  return out;
}

}  // namespace

Parsed<TermPtr> parse_term(const std::string& text) {
  return run_parser<TermPtr>(text, [](Parser& p) { return p.parse_term_top(); });
}

Parsed<LinearSpec> parse_spec(const std::string& text) {
  return run_parser<LinearSpec>(text, [](Parser& p) { return p.parse_spec_top(); });
}

Parsed<std::vector<LinearSpec>> parse_spec_file(const std::string& text) {
  return run_parser<std::vector<LinearSpec>>(text, [](Parser& p) {
    std::vector<LinearSpec> out;
    while (!p.at(Tok::End)) out.push_back(p.parse_one_spec());
    return out;
  });
}

// ---- printing ----

namespace {

// precedence tiers, higher binds tighter
constexpr int kAlt = 1, kPar = 2, kSeq = 3, kDot = 4, kLoc = 5, kAtom = 6;

int prec_of(const TermPtr& t) {
  switch (t->op) {
    case Op::Alt: return kAlt;
    case Op::Par:
    case Op::Merge:
    case Op::Comm:
    case Op::LeftMerge: return kPar;
    case Op::Seq: return kSeq;
    case Op::Prefix: return kDot;
    case Op::LocPrefix: return kLoc;
    default: return kAtom;
  }
}

void print_rec(const TermPtr& t, int min_prec, std::string& out);

void print_wrapped(const TermPtr& t, int min_prec, std::string& out) {
  if (prec_of(t) < min_prec) {
    out += '(';
    print_rec(t, 0, out);
    out += ')';
  } else {
    print_rec(t, min_prec, out);
  }
}

// Would the printed form of t begin with ident(.ident)*'::', so that a
// preceding prefix action and its dot would lex into a location word?
bool leads_into_loc_word(const TermPtr& t) {
  if (t->op == Op::LocPrefix) return true;
  if (t->op == Op::Prefix && t->prefix_items.size() == 1) {
    if (!t->prefix_items[0].at.empty()) return true;  // prints "l1::a . ..."
    return leads_into_loc_word(t->a);                 // prints "a . ..." or "tau . ..."
  }
  return false;
}

void print_items(const std::vector<LocatedAction>& items, std::string& out) {
  if (items.size() == 1 && items[0].at.empty()) {
    out += items[0].action;
    return;
  }
  if (items.size() == 1) {
    out += items[0].at.str() + "::" + items[0].action;
    return;
  }
  out += '<';
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    if (!items[i].at.empty()) out += items[i].at.str() + "::";
    out += items[i].action;
  }
  out += '>';
}

void print_rec(const TermPtr& t, int min_prec, std::string& out) {
  switch (t->op) {
    case Op::Nil: out += "0"; return;
    case Op::Delta: out += "d"; return;
    case Op::TauAtom: out += "tau"; return;
    case Op::Act:
    case Op::Const: out += t->name; return;
    case Op::RecRef: out += t->name + "@" + t->spec_name; return;
    case Op::LocPrefix:
      out += t->word.str();
      out += " :: ";
      print_wrapped(t->a, kLoc, out);
      return;
    case Op::Prefix: {
      print_items(t->prefix_items, out);
      out += " . ";
      // a continuation whose print starts with a location word would glue
      // onto the action's dot as "a.l1 :: ..." and re-lex as one word
      bool single = t->prefix_items.size() == 1;
      if (single && leads_into_loc_word(t->a)) {
        out += '(';
        print_rec(t->a, 0, out);
        out += ')';
      } else {
        print_wrapped(t->a, kDot, out);
      }
      return;
    }
    case Op::Seq:
      print_wrapped(t->a, kSeq, out);
      out += " ; ";
      print_wrapped(t->b, kSeq + 1, out);
      return;
    case Op::Alt:
      print_wrapped(t->a, kAlt, out);
      out += " + ";
      print_wrapped(t->b, kAlt + 1, out);
      return;
    case Op::Par:
    case Op::Merge:
    case Op::Comm:
    case Op::LeftMerge: {
      print_wrapped(t->a, kPar, out);
      out += t->op == Op::Par ? " // " : t->op == Op::Merge ? " || " : t->op == Op::Comm ? " | " : " << ";
      print_wrapped(t->b, kPar + 1, out);
      return;
    }
    case Op::Theta:
      out += "theta(";
      print_rec(t->a, 0, out);
      out += ')';
      return;
    case Op::Unless:
      out += "unless(";
      print_rec(t->a, 0, out);
      out += ", ";
      print_rec(t->b, 0, out);
      out += ')';
      return;
    case Op::Encap:
    case Op::Hide:
    case Op::Relabel:
      out += t->op == Op::Encap ? "encap(" : t->op == Op::Hide ? "hide(" : "relabel(";
      out += t->name + ", ";
      print_rec(t->a, 0, out);
      out += ')';
      return;
    case Op::Proj:
      out += "pi(" + std::to_string(t->proj_n) + ", ";
      print_rec(t->a, 0, out);
      out += ')';
      return;
    case Op::Restrict: {
      out += "restrict({";
      bool first = true;
      for (const auto& l : t->label_set) {
        if (!first) out += ",";
        first = false;
        out += l;
      }
      out += "}, ";
      print_rec(t->a, 0, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  print_rec(t, 0, out);
  return out;
}

std::string print_located_action(const LocatedAction& la) {
  if (is_tau(la.action)) return kTau;
  return la.action + "@" + la.at.str();
}

// ---- alphabet files ----

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
      cur += c;
    else {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

Parsed<Alphabet> parse_alphabet(const std::string& text) {
  Parsed<Alphabet> out;
  Alphabet al;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  auto err = [&](const std::string& msg) {
    out.error = Diagnostic{{0, 0, lineno, 1}, msg};
  };
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t colon = line.find(':');
    if (colon == std::string::npos) { err("expected 'section: ...'"); return out; }
    std::string head = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    // '#' starts a trailing comment everywhere except on conflict lines,
    // where it is the conflict symbol
    if (head != "conflict") {
      size_t h = rest.find('#');
      if (h != std::string::npos) rest = trim(rest.substr(0, h));
    }
    if (head == "actions") {
      for (const auto& a : split_names(rest)) al.declare_action(a);
    } else if (head == "comm") {
      size_t star = rest.find('*'), eq = rest.find('=');
      if (star == std::string::npos || eq == std::string::npos || eq < star) {
        err("expected 'comm: a * b = c'");
        return out;
      }
      std::string a = trim(rest.substr(0, star));
      std::string b = trim(rest.substr(star + 1, eq - star - 1));
      std::string c = trim(rest.substr(eq + 1));
      if (a.empty() || b.empty() || c.empty()) { err("expected 'comm: a * b = c'"); return out; }
      al.declare_comm(a, b, c);
    } else if (head == "conflict") {
      size_t hash = rest.find('#');
      if (hash == std::string::npos) { err("expected 'conflict: a # b'"); return out; }
      std::string a = trim(rest.substr(0, hash));
      std::string b = trim(rest.substr(hash + 1));
      if (a.empty() || b.empty()) { err("expected 'conflict: a # b'"); return out; }
      al.declare_conflict(a, b);
    } else if (head == "causal") {
      size_t lt = rest.find('<');
      if (lt == std::string::npos) { err("expected 'causal: a < b'"); return out; }
      std::string a = trim(rest.substr(0, lt));
      std::string b = trim(rest.substr(lt + 1));
      if (a.empty() || b.empty()) { err("expected 'causal: a < b'"); return out; }
      al.declare_causal(a, b);
    } else if (head.rfind("relabel", 0) == 0) {
      std::string fname = trim(head.substr(7));
      if (fname.empty()) { err("expected 'relabel f: a -> b'"); return out; }
      auto& table = al.relabellings[fname];  // may stay empty (identity)
      std::string items = rest;
      std::istringstream ps(items);
      std::string piece;
      while (std::getline(ps, piece, ',')) {
        piece = trim(piece);
        if (piece.empty()) continue;
        size_t arrow = piece.find("->");
        if (arrow == std::string::npos) { err("expected 'a -> b' in relabel"); return out; }
        std::string a = trim(piece.substr(0, arrow));
        std::string b = trim(piece.substr(arrow + 2));
        if (a.empty() || b.empty()) { err("expected 'a -> b' in relabel"); return out; }
        table[a] = b;
      }
    } else if (head.rfind("encap", 0) == 0) {
      std::string hname = trim(head.substr(5));
      if (hname.empty()) { err("expected 'encap H: {..}'"); return out; }
      auto names = split_names(rest);
      al.encap_sets[hname] = std::set<std::string>(names.begin(), names.end());
    } else if (head.rfind("hide", 0) == 0) {
      std::string iname = trim(head.substr(4));
      if (iname.empty()) { err("expected 'hide I: {..}'"); return out; }
      auto names = split_names(rest);
      al.hide_sets[iname] = std::set<std::string>(names.begin(), names.end());
    } else {
      err("unknown section '" + head + "'");
      return out;
    }
  }
  al.finalize();
  auto errs = al.validate();
  if (!errs.empty()) {
    lineno = 0;
    err("invalid alphabet: " + errs.front());
    return out;
  }
  out.value = std::move(al);
  return out;
}

}  // namespace locpa
