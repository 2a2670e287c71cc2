#include "spectrum/formula.hpp"

#include <algorithm>
#include <cctype>

#include "spectrum/error.hpp"

namespace spectrum {

Formula truth() { return Formula{}; }

Formula falsity() {
  Formula f;
  f.kind = NodeKind::Disj;
  return f;
}

Formula constant(Rational c) {
  Formula f;
  f.kind = NodeKind::Const;
  f.constant = std::move(c);
  f.constant.canonicalize();
  return f;
}

Formula disj(std::vector<Formula> args) {
  Formula f;
  f.kind = NodeKind::Disj;
  f.args = std::move(args);
  return f;
}

Formula conj(std::vector<Formula> args) {
  Formula f;
  f.kind = NodeKind::Conj;
  f.args = std::move(args);
  return f;
}

Formula neg(Formula g) {
  Formula f;
  f.kind = NodeKind::Neg;
  f.args.push_back(std::move(g));
  return f;
}

Formula affine(std::vector<Rational> coeffs, std::vector<Formula> args, Rational offset) {
  Formula f;
  f.kind = NodeKind::Affine;
  f.coeffs = std::move(coeffs);
  f.args = std::move(args);
  f.constant = std::move(offset);
  f.constant.canonicalize();
  for (auto& c : f.coeffs) c.canonicalize();
  return f;
}

Formula diamond(ActionId a, Formula g) {
  Formula f;
  f.kind = NodeKind::Diamond;
  f.act = a;
  f.args.push_back(std::move(g));
  return f;
}

Formula decorated(ActionId a, ActionSet set, Formula g) {
  Formula f = diamond(a, std::move(g));
  f.kind = NodeKind::DecoratedDiamond;
  f.set = set;
  return f;
}

Formula star() {
  Formula f;
  f.kind = NodeKind::Star;
  return f;
}

Formula ready_const(ActionSet set) {
  Formula f;
  f.kind = NodeKind::ReadyConst;
  f.set = set;
  return f;
}

Formula fail_const(ActionSet set) {
  Formula f;
  f.kind = NodeKind::FailConst;
  f.set = set;
  return f;
}

Vocabulary vocabulary(SemanticsId sem, Alphabet alphabet) {
  if (!has_logic(sem)) throw UnsupportedSemantics(std::string(name(sem)) + " has no graded logic");
  return Vocabulary{sem, std::move(alphabet), std::nullopt};
}

namespace {

std::string node_name(const Formula& f) {
  switch (f.kind) {
    case NodeKind::Truth: return "truth constant";
    case NodeKind::Const: return "numeric constant";
    case NodeKind::Disj: return f.args.empty() ? "false" : "disjunction";
    case NodeKind::Conj: return "conjunction";
    case NodeKind::Neg: return "negation";
    case NodeKind::Affine: return "affine combination";
    case NodeKind::Diamond: return "undecorated diamond";
    case NodeKind::DecoratedDiamond: return "decorated diamond";
    case NodeKind::Star: return "*";
    case NodeKind::ReadyConst: return "ready{}";
    case NodeKind::FailConst: return "fail{}";
  }
  return "node";
}

bool admitted(NodeKind k, SemanticsId s) {
  using S = SemanticsId;
  switch (k) {
    case NodeKind::Truth:
    case NodeKind::Disj: return s != S::ProbabilisticTrace;
    case NodeKind::Const:
    case NodeKind::Affine: return s == S::ProbabilisticTrace;
    case NodeKind::Conj:
    case NodeKind::Neg: return s == S::Bisimilarity;
    case NodeKind::Diamond: return s != S::ReadyTrace && s != S::FailureTrace;
    case NodeKind::DecoratedDiamond: return s == S::ReadyTrace || s == S::FailureTrace;
    case NodeKind::Star: return s == S::CompletedTrace || s == S::ReadyTrace || s == S::FailureTrace;
    case NodeKind::ReadyConst: return s == S::Readiness;
    case NodeKind::FailConst: return s == S::Failures;
  }
  return false;
}

void check_node(const Formula& f, const Vocabulary& v) {
  if (!admitted(f.kind, v.semantics))
    throw VocabularyError(node_name(f) + " not admitted under " + std::string(name(v.semantics)));
  const ActionSet all = v.alphabet.full();
  switch (f.kind) {
    case NodeKind::Const:
      if (f.constant < 0 || f.constant > 1) throw VocabularyError("truth constant " + to_string(f.constant) + " outside [0,1]");
      break;
    case NodeKind::Affine: {
      if (f.args.empty() || f.coeffs.size() != f.args.size())
        throw VocabularyError("affine combination needs one coefficient per argument");
      Rational sum = f.constant;
      if (f.constant < 0) throw VocabularyError("negative affine offset");
      for (const auto& c : f.coeffs) {
        if (c < 0) throw VocabularyError("negative affine coefficient " + to_string(c));
        sum += c;
      }
      if (sum > 1) throw VocabularyError("affine coefficients and offset sum to " + to_string(sum) + " > 1");
      break;
    }
    case NodeKind::Neg:
      if (f.args.size() != 1) throw VocabularyError("negation takes one argument");
      break;
    case NodeKind::Diamond:
    case NodeKind::DecoratedDiamond:
      if (f.args.size() != 1) throw VocabularyError("diamond takes one argument");
      if (f.act >= v.alphabet.size()) throw VocabularyError("diamond over an action outside the alphabet");
      if (v.modal_actions && !v.modal_actions->contains(f.act))
        throw VocabularyError("modality <" + v.alphabet.label(f.act) + "> not admitted");
      if (!f.set.subset_of(all)) throw VocabularyError("decoration outside the alphabet");
      break;
    case NodeKind::ReadyConst:
    case NodeKind::FailConst:
      if (!f.set.subset_of(all)) throw VocabularyError("set constant outside the alphabet");
      break;
    default: break;
  }
}

struct DepthInfo {
  int min;
  bool exact;
};

Alphabet fallback_alphabet(const Formula& f) {
  ActionId top = 0;
  auto visit = [&](auto&& self, const Formula& g) -> void {
    top = std::max<ActionId>(top, g.act + 1);
    for (auto m : g.set.members()) top = std::max<ActionId>(top, m + 1);
    for (const auto& a : g.args) self(self, a);
  };
  visit(visit, f);
  std::vector<std::string> labels;
  for (ActionId a = 0; a < top && a < max_alphabet_size; ++a) labels.push_back("a" + std::to_string(a));
  return Alphabet(labels);
}

bool is_constant(const Formula& f) { return f.kind == NodeKind::Truth || f.kind == NodeKind::Const; }

DepthInfo depth_info(const Formula& f, const Alphabet* labels) {
  switch (f.kind) {
    case NodeKind::Truth:
    case NodeKind::Const: return {0, true};
    case NodeKind::Star:
    case NodeKind::ReadyConst:
    case NodeKind::FailConst: return {1, false};
    case NodeKind::Diamond:
    case NodeKind::DecoratedDiamond: {
      auto d = depth_info(f.args.at(0), labels);
      return {d.min + 1, d.exact};
    }
    case NodeKind::Neg: return depth_info(f.args.at(0), labels);
    case NodeKind::Disj:
    case NodeKind::Conj:
    case NodeKind::Affine: {
      std::optional<int> exact;
      const Formula* exact_arg = nullptr;
      int flex = 0;
      const Formula* flex_arg = nullptr;
      auto fail = [&](const Formula& a, int da, const Formula& b, int db) {
        if (is_constant(a) || is_constant(b))
          throw IllFormed("truth constant at top level of a depth-" + std::to_string(std::max(da, db)) + " formula");
        Alphabet fallback;
        if (!labels) fallback = fallback_alphabet(f);
        throw IllFormed("non-uniform depths " + std::to_string(da) + " and " + std::to_string(db) + " in " +
                        print(f, labels ? *labels : fallback));
      };
      for (const auto& a : f.args) {
        auto d = depth_info(a, labels);
        if (d.exact) {
          if (exact && *exact != d.min) fail(*exact_arg, *exact, a, d.min);
          exact = d.min;
          exact_arg = &a;
        } else if (d.min > flex) {
          flex = d.min;
          flex_arg = &a;
        }
      }
      if (exact && flex > *exact) fail(*exact_arg, *exact, *flex_arg, flex);
      if (exact) return {*exact, true};
      return {flex, false};
    }
  }
  return {0, true};
}

}  // namespace

void check_vocabulary(const Formula& f, const Vocabulary& vocab) {
  check_node(f, vocab);
  for (const auto& a : f.args) check_vocabulary(a, vocab);
}

int uniform_depth(const Formula& f, const Alphabet* labels) { return depth_info(f, labels).min; }

bool admits_depth(const Formula& f, int n) {
  auto d = depth_info(f, nullptr);
  return d.exact ? d.min == n : n >= d.min;
}

// Printer. Levels: 0 sums and disjunctions, 1 conjunctions, 2 atoms and prefix forms.

namespace {

int level(const Formula& f) {
  switch (f.kind) {
    case NodeKind::Disj: return f.args.empty() ? 2 : 0;
    case NodeKind::Affine: return 0;
    case NodeKind::Conj: return 1;
    default: return 2;
  }
}

void print_to(std::string& out, const Formula& f, const Alphabet& al, int need) {
  bool paren = level(f) < need;
  if (paren) out += '(';
  auto join = [&](const char* sep, int inner) {
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      if (i) out += sep;
      print_to(out, f.args[i], al, inner);
    }
  };
  switch (f.kind) {
    case NodeKind::Truth: out += "true"; break;
    case NodeKind::Const: out += to_string(f.constant); break;
    case NodeKind::Disj:
      if (f.args.empty()) out += "false";
      else join(" | ", 1);
      break;
    case NodeKind::Conj: join(" & ", 2); break;
    case NodeKind::Neg:
      out += '~';
      print_to(out, f.args.at(0), al, 2);
      break;
    case NodeKind::Affine:
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += " + ";
        out += to_string(f.coeffs.at(i)) + "*";
        print_to(out, f.args[i], al, 2);
      }
      if (f.constant != 0) out += " + " + to_string(f.constant);
      break;
    case NodeKind::Diamond:
    case NodeKind::DecoratedDiamond: {
      out += "<" + al.label(f.act);
      if (f.kind == NodeKind::DecoratedDiamond) out += "|" + render_set(f.set, al);
      out += ">";
      const auto& g = f.args.at(0);
      if (g.kind == NodeKind::ReadyConst || g.kind == NodeKind::FailConst) out += ' ';
      print_to(out, g, al, 2);
      break;
    }
    case NodeKind::Star: out += "*"; break;
    case NodeKind::ReadyConst: out += "ready" + render_set(f.set, al); break;
    case NodeKind::FailConst: out += "fail" + render_set(f.set, al); break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string print(const Formula& f, const Alphabet& alphabet) {
  std::string out;
  print_to(out, f, alphabet, 0);
  return out;
}

// Parser.

namespace {

class FormulaParser {
public:
  FormulaParser(std::string_view text, const Vocabulary& vocab) : s_(text), vocab_(vocab) {}

  Formula run() {
    Formula f = is_probabilistic(vocab_.semantics) ? sum() : disjunction();
    skip();
    if (pos_ < s_.size()) {
      if (is_probabilistic(vocab_.semantics) && (s_[pos_] == '|' || s_[pos_] == '&'))
        throw VocabularyError(std::string(s_[pos_] == '|' ? "disjunction" : "conjunction") +
                              " not admitted under probabilistic-trace");
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(0, "formula column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool keyword(std::string_view kw) {
    skip();
    if (s_.substr(pos_, kw.size()) != kw) return false;
    std::size_t end = pos_ + kw.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  std::string label_until(std::string_view stops) {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && stops.find(s_[pos_]) == std::string_view::npos) ++pos_;
    std::string_view raw = s_.substr(start, pos_ - start);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    if (raw.empty()) fail("expected an action label");
    return std::string(raw);
  }

  ActionId action(const std::string& label) {
    auto a = vocab_.alphabet.find(label);
    if (!a) throw VocabularyError("unknown action '" + label + "'");
    return *a;
  }

  ActionSet set() {
    expect('{');
    ActionSet out;
    if (eat('}')) return out;
    do out = out.with(action(label_until(",}"))); while (eat(','));
    expect('}');
    return out;
  }

  Formula modal_prefix(Formula (FormulaParser::*body)()) {
    std::string label = label_until(">|");
    ActionId a = action(label);
    if (eat('|')) {
      ActionSet deco = set();
      expect('>');
      return decorated(a, deco, (this->*body)());
    }
    expect('>');
    return diamond(a, (this->*body)());
  }

  Formula disjunction() {
    std::vector<Formula> args{conjunction()};
    while (eat('|')) args.push_back(conjunction());
    return args.size() == 1 ? std::move(args.front()) : disj(std::move(args));
  }

  Formula conjunction() {
    std::vector<Formula> args{unary()};
    while (eat('&')) args.push_back(unary());
    return args.size() == 1 ? std::move(args.front()) : conj(std::move(args));
  }

  Formula unary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of formula");
    char c = s_[pos_];
    if (c == '~') {
      ++pos_;
      return neg(unary());
    }
    if (c == '<') {
      ++pos_;
      return modal_prefix(&FormulaParser::unary);
    }
    if (c == '(') {
      ++pos_;
      Formula f = disjunction();
      expect(')');
      return f;
    }
    if (c == '*') {
      ++pos_;
      return star();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      throw VocabularyError("numeric truth constant not admitted under " + std::string(name(vocab_.semantics)));
    if (keyword("true")) return truth();
    if (keyword("false")) return falsity();
    if (keyword("ready")) return ready_const(set());
    if (keyword("fail")) return fail_const(set());
    fail("expected a formula");
  }

  std::optional<Rational> number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == '/'))
      ++pos_;
    if (start == pos_) return std::nullopt;
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  Formula sum() {
    std::vector<Rational> coeffs;
    std::vector<Formula> args;
    Rational offset;
    bool bare_only = true;
    std::size_t terms = 0;
    std::optional<Formula> single;
    do {
      ++terms;
      if (auto c = number()) {
        if (eat('*')) {
          coeffs.push_back(*c);
          args.push_back(prob_unary());
          bare_only = false;
        } else {
          offset += *c;
          single = constant(*c);
        }
      } else {
        Formula f = prob_unary();
        single = f;
        coeffs.push_back(1);
        args.push_back(std::move(f));
      }
    } while (eat('+'));
    if (terms == 1 && bare_only) return *single;
    if (args.empty()) return constant(offset);
    return affine(std::move(coeffs), std::move(args), offset);
  }

  Formula prob_unary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of formula");
    char c = s_[pos_];
    if (c == '<') {
      ++pos_;
      return modal_prefix(&FormulaParser::prob_unary);
    }
    if (c == '(') {
      ++pos_;
      Formula f = sum();
      expect(')');
      return f;
    }
    if (auto r = number()) return constant(*r);
    if (keyword("true")) return constant(1);
    if (c == '~') throw VocabularyError("negation not admitted under probabilistic-trace");
    if (c == '*') throw VocabularyError("* not admitted under probabilistic-trace");
    if (keyword("false")) throw VocabularyError("false not admitted under probabilistic-trace");
    fail("expected a formula");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const Vocabulary& vocab_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  if (!has_logic(vocab.semantics)) throw UnsupportedSemantics(std::string(name(vocab.semantics)) + " has no graded logic");
  Formula f = FormulaParser(text, vocab).run();
  check_vocabulary(f, vocab);
  uniform_depth(f, &vocab.alphabet);
  return f;
}

}  // namespace spectrum
