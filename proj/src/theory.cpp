#include "spectrum/theory.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "spectrum/error.hpp"

namespace spectrum {

namespace {

int compare_rationals(const Rational& a, const Rational& b) { return a < b ? -1 : (b < a ? 1 : 0); }

template <class T>
int three_way(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

int compare_terms(const Term& a, const Term& b) {
  if (int c = three_way(static_cast<int>(a.kind), static_cast<int>(b.kind))) return c;
  if (int c = three_way(a.var, b.var)) return c;
  if (int c = three_way(a.act, b.act)) return c;
  if (a.set != b.set) return decoration_less(a.set, b.set) ? -1 : 1;
  if (int c = compare_rationals(a.p, b.p)) return c;
  if (int c = three_way(a.weights.size(), b.weights.size())) return c;
  for (std::size_t i = 0; i < a.weights.size(); ++i)
    if (int c = compare_rationals(a.weights[i], b.weights[i])) return c;
  if (int c = three_way(a.args.size(), b.args.size())) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare_terms(a.args[i], b.args[i])) return c;
  return 0;
}

Term var_term(std::uint32_t v) {
  Term t;
  t.var = v;
  return t;
}

Term join_term(std::vector<Term> args) {
  Term t;
  t.kind = TermKind::Join;
  t.args = std::move(args);
  return t;
}

Term convex_term(Rational p, Term a, Term b) {
  Term t;
  t.kind = TermKind::Convex;
  t.p = std::move(p);
  t.p.canonicalize();
  t.args = {std::move(a), std::move(b)};
  return t;
}

Term act_term(ActionId a, Term arg) {
  Term t;
  t.kind = TermKind::Act;
  t.act = a;
  t.args = {std::move(arg)};
  return t;
}

Term dec_term(ActionSet s, ActionId a, Term arg) {
  Term t;
  t.kind = TermKind::Dec;
  t.act = a;
  t.set = s;
  t.args = {std::move(arg)};
  return t;
}

Term star_term() {
  Term t;
  t.kind = TermKind::Star;
  return t;
}

Term set_term(ActionSet s) {
  Term t;
  t.kind = TermKind::SetConst;
  t.set = s;
  return t;
}

namespace {

Term mix_term(std::vector<Rational> weights, std::vector<Term> args) {
  Term t;
  t.kind = TermKind::Mix;
  t.weights = std::move(weights);
  t.args = std::move(args);
  return t;
}

// ---- depth -------------------------------------------------------------------------------------------

struct DepthInfo {
  int least = 0;
  bool flexible = false;
};

DepthInfo combine(const std::vector<DepthInfo>& parts) {
  DepthInfo out{0, true};
  std::optional<int> exact;
  for (const auto& d : parts) {
    if (d.flexible) {
      out.least = std::max(out.least, d.least);
      continue;
    }
    if (exact && *exact != d.least)
      throw IllFormed("non-uniform depths " + std::to_string(*exact) + " and " + std::to_string(d.least));
    exact = d.least;
  }
  if (!exact) return out;
  if (out.least > *exact)
    throw IllFormed("non-uniform depths " + std::to_string(*exact) + " and " + std::to_string(out.least));
  return {*exact, false};
}

DepthInfo depth_info(const Term& t) {
  switch (t.kind) {
    case TermKind::Var: return {0, false};
    case TermKind::Star:
    case TermKind::SetConst: return {1, true};
    case TermKind::Act:
    case TermKind::Dec: {
      auto d = depth_info(t.args.at(0));
      return {d.least + 1, d.flexible};
    }
    default: {
      std::vector<DepthInfo> parts;
      for (const auto& a : t.args) parts.push_back(depth_info(a));
      return combine(parts);
    }
  }
}

// ---- signature ---------------------------------------------------------------------------------------

bool admits(SemanticsId th, TermKind k) {
  using S = SemanticsId;
  switch (k) {
    case TermKind::Var: return true;
    case TermKind::Join: return !is_probabilistic(th);
    case TermKind::Convex:
    case TermKind::Mix: return is_probabilistic(th);
    case TermKind::Act:
      return th == S::Trace || th == S::CompletedTrace || th == S::Readiness || th == S::Failures ||
             th == S::Simulation || th == S::ProbabilisticTrace;
    case TermKind::Dec: return th == S::ReadyTrace || th == S::FailureTrace || th == S::ReadySimulation;
    case TermKind::Star:
      return th == S::CompletedTrace || th == S::ReadyTrace || th == S::FailureTrace || th == S::ReadySimulation;
    case TermKind::SetConst: return th == S::Readiness || th == S::Failures;
  }
  return false;
}

std::string kind_name(TermKind k) {
  switch (k) {
    case TermKind::Var: return "variable";
    case TermKind::Join: return "join";
    case TermKind::Convex: return "convex combination";
    case TermKind::Mix: return "convex combination";
    case TermKind::Act: return "undecorated action";
    case TermKind::Dec: return "decorated action";
    case TermKind::Star: return "*";
    case TermKind::SetConst: return "set constant";
  }
  return "?";
}

void require_theory(SemanticsId th) {
  if (th == SemanticsId::Bisimilarity)
    throw UnsupportedSemantics("no graded theory for bisimilarity in the theory lab");
}

// ---- rewriting ---------------------------------------------------------------------------------------

bool distributive(SemanticsId th) { return !is_coinductive(th) && !is_probabilistic(th); }

bool absorbing(SemanticsId th) {
  return th == SemanticsId::Failures || th == SemanticsId::FailureTrace || is_simulation_like(th);
}

bool strictly_sorted(const std::vector<Term>& args) {
  for (std::size_t i = 1; i < args.size(); ++i)
    if (compare_terms(args[i - 1], args[i]) >= 0) return false;
  return true;
}

const std::vector<Term>& elements(const Term& t, std::vector<Term>& scratch) {
  if (t.kind == TermKind::Join) return t.args;
  scratch = {t};
  return scratch;
}

bool sim_leq(const Term& s, const Term& t);

bool sim_elem_leq(const Term& e, const Term& f) {
  if (e.kind != f.kind) return false;
  switch (e.kind) {
    case TermKind::Var: return e.var == f.var;
    case TermKind::Star: return true;
    case TermKind::Act: return e.act == f.act && sim_leq(e.args[0], f.args[0]);
    case TermKind::Dec: return e.act == f.act && e.set == f.set && sim_leq(e.args[0], f.args[0]);
    default: return e == f;
  }
}

// Downset inclusion of normal forms.
bool sim_leq(const Term& s, const Term& t) {
  std::vector<Term> ss, ts;
  const auto& es = elements(s, ss);
  const auto& ft = elements(t, ts);
  return std::all_of(es.begin(), es.end(), [&](const Term& e) {
    return std::any_of(ft.begin(), ft.end(), [&](const Term& f) { return sim_elem_leq(e, f); });
  });
}

// Paths with equal actions and ends, constants and decorations included positionwise.
bool path_leq(const Term& p, const Term& q) {
  if (p.kind != q.kind) return false;
  switch (p.kind) {
    case TermKind::Var: return p.var == q.var;
    case TermKind::Star: return true;
    case TermKind::SetConst: return p.set.subset_of(q.set);
    case TermKind::Act: return p.act == q.act && path_leq(p.args[0], q.args[0]);
    case TermKind::Dec: return p.act == q.act && p.set.subset_of(q.set) && path_leq(p.args[0], q.args[0]);
    default: return false;
  }
}

bool dominated(SemanticsId th, const Term& p, const Term& q) {
  if (is_simulation_like(th)) return sim_elem_leq(p, q);
  return path_leq(p, q);
}

std::optional<Term> root_rewrite(SemanticsId th, const Term& t);

bool normal(SemanticsId th, const Term& t) {
  for (const auto& a : t.args)
    if (!normal(th, a)) return false;
  return !root_rewrite(th, t);
}

std::optional<Term> rewrite_join(SemanticsId th, const Term& t) {
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (t.args[i].kind != TermKind::Join) continue;
    std::vector<Term> out(t.args.begin(), t.args.begin() + static_cast<std::ptrdiff_t>(i));
    for (std::size_t j = i; j < t.args.size(); ++j) {
      if (t.args[j].kind == TermKind::Join)
        out.insert(out.end(), t.args[j].args.begin(), t.args[j].args.end());
      else
        out.push_back(t.args[j]);
    }
    return join_term(std::move(out));
  }
  if (t.args.size() == 1) return t.args[0];
  if (!strictly_sorted(t.args)) {
    auto out = t.args;
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return compare_terms(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return join_term(std::move(out));
  }
  if (absorbing(th)) {
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (!normal(th, t.args[i])) continue;
      for (std::size_t j = 0; j < t.args.size(); ++j) {
        if (i == j || !normal(th, t.args[j]) || !dominated(th, t.args[i], t.args[j])) continue;
        auto out = t.args;
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        return join_term(std::move(out));
      }
    }
  }
  return std::nullopt;
}

std::optional<Term> rewrite_mix(const Term& t) {
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (t.args[i].kind != TermKind::Mix) continue;
    std::vector<Rational> ws;
    std::vector<Term> as;
    for (std::size_t j = 0; j < t.args.size(); ++j) {
      if (t.args[j].kind == TermKind::Mix) {
        for (std::size_t k = 0; k < t.args[j].args.size(); ++k) {
          ws.push_back(t.weights[j] * t.args[j].weights[k]);
          as.push_back(t.args[j].args[k]);
        }
      } else {
        ws.push_back(t.weights[j]);
        as.push_back(t.args[j]);
      }
    }
    return mix_term(std::move(ws), std::move(as));
  }
  bool canonical = strictly_sorted(t.args) &&
                   std::all_of(t.weights.begin(), t.weights.end(), [](const Rational& w) { return w > 0; });
  if (!canonical) {
    std::vector<std::size_t> order(t.args.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return compare_terms(t.args[a], t.args[b]) < 0; });
    std::vector<Rational> ws;
    std::vector<Term> as;
    for (auto i : order) {
      if (!as.empty() && as.back() == t.args[i])
        ws.back() += t.weights[i];
      else
        ws.push_back(t.weights[i]), as.push_back(t.args[i]);
    }
    std::vector<Rational> kw;
    std::vector<Term> ka;
    for (std::size_t i = 0; i < as.size(); ++i)
      if (ws[i] != 0) kw.push_back(ws[i]), ka.push_back(std::move(as[i]));
    return mix_term(std::move(kw), std::move(ka));
  }
  if (t.args.size() == 1) return t.args[0];
  return std::nullopt;
}

std::optional<Term> root_rewrite(SemanticsId th, const Term& t) {
  switch (t.kind) {
    case TermKind::Join: return rewrite_join(th, t);
    case TermKind::Convex: {
      Rational q = 1 - t.p;
      return mix_term({t.p, q}, {t.args[0], t.args[1]});
    }
    case TermKind::Mix: return rewrite_mix(t);
    case TermKind::Act:
    case TermKind::Dec: {
      const Term& arg = t.args[0];
      if (arg.kind == TermKind::Join && distributive(th)) {
        std::vector<Term> out;
        for (const auto& a : arg.args) {
          Term u = t;
          u.args = {a};
          out.push_back(std::move(u));
        }
        return join_term(std::move(out));
      }
      if (arg.kind == TermKind::Mix) {
        std::vector<Term> out;
        for (const auto& a : arg.args) {
          Term u = t;
          u.args = {a};
          out.push_back(std::move(u));
        }
        return mix_term(arg.weights, std::move(out));
      }
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

Term innermost(SemanticsId th, Term t) {
  for (auto& a : t.args) a = innermost(th, std::move(a));
  if (auto r = root_rewrite(th, t)) return innermost(th, std::move(*r));
  return t;
}

void redexes(SemanticsId th, const Term& t, std::vector<std::size_t>& path,
             std::vector<std::vector<std::size_t>>& out) {
  if (root_rewrite(th, t)) out.push_back(path);
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    path.push_back(i);
    redexes(th, t.args[i], path, out);
    path.pop_back();
  }
}

Term& at(Term& t, const std::vector<std::size_t>& path) {
  Term* cur = &t;
  for (auto i : path) cur = &cur->args[i];
  return *cur;
}

// ---- parsing -----------------------------------------------------------------------------------------

class TermParser {
public:
  TermParser(std::string_view text, TermContext& ctx) : s_(text), ctx_(ctx) {}

  Term run() {
    Term t = sum();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return t;
  }

private:
  static constexpr std::string_view specials = "(){}<>,+*";

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(0, "term column " + std::to_string(pos_ + 1) + ": " + what);
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

  bool convex_op() {
    skip();
    if (s_.substr(pos_, 3) != "(+)") return false;
    pos_ += 3;
    return true;
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && specials.find(s_[pos_]) == std::string_view::npos &&
           !std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
    return std::string(s_.substr(start, pos_ - start));
  }

  ActionId action(const std::string& label) {
    auto a = ctx_.alphabet.find(label);
    if (!a) throw VocabularyError("unknown action '" + label + "'");
    return *a;
  }

  ActionSet set() {
    expect('{');
    ActionSet out;
    if (eat('}')) return out;
    do out = out.with(action(word())); while (eat(','));
    expect('}');
    return out;
  }

  Term argument() {
    expect('(');
    Term t = sum();
    expect(')');
    return t;
  }

  Term sum() {
    std::vector<Term> parts{convex()};
    while (eat('+')) parts.push_back(convex());
    if (parts.size() == 1) return std::move(parts[0]);
    return join_term(std::move(parts));
  }

  Term convex() {
    Term t = atom();
    while (convex_op()) {
      std::string num = word();
      Rational p;
      try {
        p = parse_rational(num);
      } catch (const std::exception&) {
        fail("expected a probability, got '" + num + "'");
      }
      if (p < 0 || p > 1) fail("probability " + num + " outside [0,1]");
      if (!convex_op()) fail("expected '(+)'");
      t = convex_term(p, std::move(t), atom());
    }
    return t;
  }

  Term atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (s_.substr(pos_, 3) == "(+)") fail("unexpected '(+)'");
    if (eat('(')) {
      Term t = sum();
      expect(')');
      return t;
    }
    if (eat('*')) return star_term();
    if (peek('{')) return set_term(set());
    if (eat('<')) {
      ActionSet s = set();
      expect(',');
      ActionId a = action(word());
      expect('>');
      return dec_term(s, a, argument());
    }
    std::string w = word();
    if (w == "0") return join_term({});
    if (peek('(') && s_.substr(pos_, 3) != "(+)") return act_term(action(w), argument());
    if (ctx_.alphabet.find(w)) fail("action '" + w + "' needs an argument");
    if (std::isdigit(static_cast<unsigned char>(w[0]))) fail("unexpected number '" + w + "'");
    auto it = std::find(ctx_.variables.begin(), ctx_.variables.end(), w);
    if (it != ctx_.variables.end()) return var_term(static_cast<std::uint32_t>(it - ctx_.variables.begin()));
    ctx_.variables.push_back(w);
    return var_term(static_cast<std::uint32_t>(ctx_.variables.size() - 1));
  }

  std::string_view s_;
  TermContext& ctx_;
  std::size_t pos_ = 0;
};

// ---- printing ----------------------------------------------------------------------------------------

Term mix_as_convex(const std::vector<Rational>& ws, const std::vector<Term>& as, std::size_t from) {
  if (from + 1 >= as.size()) return as.at(from);
  Rational rest = 0;
  for (std::size_t i = from; i < ws.size(); ++i) rest += ws[i];
  Rational p = ws[from] / rest;
  return convex_term(p, as[from], mix_as_convex(ws, as, from + 1));
}

std::string print_sum(const Term& t, const TermContext& ctx);
std::string print_atom(const Term& t, const TermContext& ctx);

std::string print_convex(const Term& t, const TermContext& ctx) {
  if (t.kind == TermKind::Mix) return t.args.empty() ? "(+)" : print_convex(mix_as_convex(t.weights, t.args, 0), ctx);
  if (t.kind != TermKind::Convex) return print_atom(t, ctx);
  return print_convex(t.args[0], ctx) + " (+) " + to_string(t.p) + " (+) " + print_atom(t.args[1], ctx);
}

std::string print_atom(const Term& t, const TermContext& ctx) {
  switch (t.kind) {
    case TermKind::Var:
      return t.var < ctx.variables.size() ? ctx.variables[t.var] : "v" + std::to_string(t.var);
    case TermKind::Star: return "*";
    case TermKind::SetConst: return render_set(t.set, ctx.alphabet);
    case TermKind::Act: return ctx.alphabet.label(t.act) + "(" + print_sum(t.args[0], ctx) + ")";
    case TermKind::Dec:
      return "<" + render_set(t.set, ctx.alphabet) + "," + ctx.alphabet.label(t.act) + ">(" +
             print_sum(t.args[0], ctx) + ")";
    case TermKind::Join:
      if (t.args.empty()) return "0";
      if (t.args.size() == 1) return print_atom(t.args[0], ctx);
      [[fallthrough]];
    default: return "(" + print_sum(t, ctx) + ")";
  }
}

std::string print_sum(const Term& t, const TermContext& ctx) {
  if (t.kind != TermKind::Join || t.args.size() < 2) return print_convex(t, ctx);
  std::string out;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += " + ";
    out += print_convex(t.args[i], ctx);
  }
  return out;
}

// ---- values ------------------------------------------------------------------------------------------

[[noreturn]] void not_normal() { throw Error("term is not a normal form"); }

enum class End { Var, Star, Set };

struct Path {
  Word word;
  End end;
  ActionSet set;
};

Path walk(const Term& t) {
  Path p;
  const Term* cur = &t;
  while (cur->kind == TermKind::Act || cur->kind == TermKind::Dec) {
    p.word.push_back(Letter{cur->act, cur->kind == TermKind::Dec ? cur->set : ActionSet{}});
    cur = &cur->args[0];
  }
  switch (cur->kind) {
    case TermKind::Var: p.end = End::Var; break;
    case TermKind::Star: p.end = End::Star; break;
    case TermKind::SetConst: p.end = End::Set, p.set = cur->set; break;
    default: not_normal();
  }
  return p;
}

const TreeNode* tree_of(TreeFamily fam, const Term& t, int depth, TreeStore& store) {
  std::vector<Term> scratch;
  const auto& es = elements(t, scratch);
  if (depth == 0) {
    for (const auto& e : es)
      if (e.kind != TermKind::Var) not_normal();
    return es.empty() ? store.bottom(fam) : store.top(fam);
  }
  bool star = false;
  std::vector<TreeChild> children;
  for (const auto& e : es) {
    if (e.kind == TermKind::Star) {
      star = true;
    } else if (e.kind == TermKind::Act || e.kind == TermKind::Dec) {
      Letter l{e.act, e.kind == TermKind::Dec ? e.set : ActionSet{}};
      children.push_back({l, tree_of(fam, e.args[0], depth - 1, store)});
    } else {
      not_normal();
    }
  }
  return store.make_maximal(fam, depth, star, std::move(children));
}

void collect_vars(const Term& t, std::vector<std::uint32_t>& out) {
  if (t.kind == TermKind::Var) {
    out.push_back(t.var);
    return;
  }
  if (t.kind != TermKind::Join) not_normal();
  for (const auto& a : t.args) collect_vars(a, out);
}

}  // namespace

Term parse_term(std::string_view text, TermContext& ctx) {
  require_theory(ctx.theory);
  Term t = TermParser(text, ctx).run();
  check_signature(ctx.theory, t, ctx.alphabet);
  term_depth(t);
  return t;
}

std::string print(const Term& t, const TermContext& ctx) { return print_sum(t, ctx); }

int term_depth(const Term& t) { return depth_info(t).least; }

bool term_admits_depth(const Term& t, int n) {
  auto d = depth_info(t);
  return d.flexible ? n >= d.least : n == d.least;
}

void check_signature(SemanticsId th, const Term& t, const Alphabet& alphabet) {
  require_theory(th);
  if (!admits(th, t.kind)) throw VocabularyError(kind_name(t.kind) + " not admitted under " + std::string(name(th)));
  if ((t.kind == TermKind::Act || t.kind == TermKind::Dec) && t.act >= alphabet.size())
    throw VocabularyError("action index outside the alphabet");
  if (!t.set.subset_of(alphabet.full())) throw VocabularyError("set outside the alphabet");
  if (t.kind == TermKind::Convex && (t.p < 0 || t.p > 1)) throw VocabularyError("probability outside [0,1]");
  if (t.kind == TermKind::Mix) {
    Rational total = 0;
    for (const auto& w : t.weights) {
      if (w < 0) throw VocabularyError("negative weight");
      total += w;
    }
    if (total != 1 || t.weights.size() != t.args.size()) throw VocabularyError("weights must sum to 1");
  }
  for (const auto& a : t.args) check_signature(th, a, alphabet);
}

Term normalize(SemanticsId th, const Term& t) {
  require_theory(th);
  return innermost(th, t);
}

Term normalize_random(SemanticsId th, const Term& t, std::mt19937_64& rng) {
  require_theory(th);
  Term cur = t;
  std::vector<std::size_t> path;
  std::vector<std::vector<std::size_t>> found;
  for (;;) {
    found.clear();
    redexes(th, cur, path, found);
    if (found.empty()) return cur;
    const auto& pick = found[std::uniform_int_distribution<std::size_t>(0, found.size() - 1)(rng)];
    Term& site = at(cur, pick);
    site = *root_rewrite(th, site);
  }
}

bool is_normal(SemanticsId th, const Term& t) {
  require_theory(th);
  return normal(th, t);
}

bool check_equation(SemanticsId th, const Term& lhs, const Term& rhs) {
  combine({depth_info(lhs), depth_info(rhs)});
  return normalize(th, lhs) == normalize(th, rhs);
}

SemanticValue to_value(SemanticsId th, const Term& nf, int depth) {
  require_theory(th);
  if (!term_admits_depth(nf, depth)) throw IllFormed("normal form does not admit depth " + std::to_string(depth));
  using S = SemanticsId;
  if (is_simulation_like(th)) {
    auto fam = tree_family(th);
    const TreeNode* node = tree_of(fam, nf, depth, tree_store());
    if (th == S::Simulation) return SimulationValue{node};
    return ReadySimulationValue{node};
  }
  if (is_probabilistic(th)) {
    ProbTraceValue r{depth, {}};
    auto add = [&](const Term& e, const Rational& w) {
      Path p = walk(e);
      if (p.end != End::Var) not_normal();
      r.mass[p.word] += w;
    };
    if (nf.kind == TermKind::Mix) {
      for (std::size_t i = 0; i < nf.args.size(); ++i) add(nf.args[i], nf.weights[i]);
    } else {
      add(nf, Rational(1));
    }
    return r;
  }
  std::vector<Term> scratch;
  WordSet live, dead;
  std::set<std::pair<Word, ActionSet>> ready;
  std::map<Word, SetAntichain> failures;
  for (const auto& e : elements(nf, scratch)) {
    Path p = walk(e);
    switch (p.end) {
      case End::Var: live.insert(p.word); break;
      case End::Star: dead.insert(p.word); break;
      case End::Set:
        ready.insert({p.word, p.set});
        insert_maximal(failures[p.word], p.set);
        break;
    }
  }
  switch (th) {
    case S::Trace: return TraceValue{depth, std::move(live)};
    case S::CompletedTrace: return CompletedTraceValue{depth, std::move(live), std::move(dead)};
    case S::Readiness: return ReadinessValue{depth, std::move(live), std::move(ready)};
    case S::Failures: return FailuresValue{depth, std::move(live), std::move(failures)};
    case S::ReadyTrace: return ReadyTraceValue{depth, std::move(live), std::move(dead)};
    case S::FailureTrace: return FailureTraceValue{depth, maximal_words(live), maximal_words(dead)};
    default: break;
  }
  throw UnsupportedSemantics("no graded theory for " + std::string(name(th)));
}

SemanticValue normal_value(SemanticsId th, const Term& t) { return to_value(th, normalize(th, t), term_depth(t)); }

Layer layer_from_normal_form(SemanticsId th, const Term& nf) {
  require_theory(th);
  if (!term_admits_depth(nf, 1)) throw IllFormed("layer needs a depth-1 normal form");
  Layer layer{th, {}, false, {}};
  auto add = [&](const Term& e, const Rational& w) {
    switch (e.kind) {
      case TermKind::Star: layer.star = true; break;
      case TermKind::SetConst: layer.sets.push_back(e.set); break;
      case TermKind::Act:
      case TermKind::Dec: {
        LayerStep s{Letter{e.act, e.kind == TermKind::Dec ? e.set : ActionSet{}}, {}, w};
        collect_vars(e.args[0], s.targets);
        layer.steps.push_back(std::move(s));
        break;
      }
      default: not_normal();
    }
  };
  if (nf.kind == TermKind::Mix) {
    for (std::size_t i = 0; i < nf.args.size(); ++i) add(nf.args[i], nf.weights[i]);
  } else if (nf.kind == TermKind::Join) {
    for (const auto& e : nf.args) add(e, Rational(1));
  } else {
    add(nf, Rational(1));
  }
  return layer;
}

Term substitute(const Term& t, const std::vector<Term>& by_var) {
  if (t.kind == TermKind::Var) return by_var.at(t.var);
  Term out = t;
  for (auto& a : out.args) a = substitute(a, by_var);
  return out;
}

Alphabet theory_alphabet() { return Alphabet({"a", "b"}); }

namespace {

const std::vector<std::string> set_texts = {"{}", "{a}", "{b}", "{a,b}"};

std::string set_union_text(std::size_t a, std::size_t b) { return set_texts[a | b]; }

std::vector<EquationText> semilattice_axioms() {
  return {{"x + (y + z)", "(x + y) + z"}, {"x + y", "y + x"}, {"x + x", "x"}, {"x + 0", "x"}};
}

}  // namespace

std::vector<EquationText> axiom_instances(SemanticsId th) {
  require_theory(th);
  using S = SemanticsId;
  std::vector<EquationText> out;
  if (is_probabilistic(th)) {
    const std::vector<Rational> ps = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
    const std::vector<Rational> qs = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)};
    for (const auto& p : ps) {
      std::string pt = to_string(p), cp = to_string(Rational(1 - p));
      out.push_back({"x (+) " + pt + " (+) x", "x"});
      out.push_back({"x (+) " + pt + " (+) y", "y (+) " + cp + " (+) x"});
      for (const char* a : {"a", "b"})
        out.push_back({std::string(a) + "(x (+) " + pt + " (+) y)",
                       std::string(a) + "(x) (+) " + pt + " (+) " + a + "(y)"});
      for (const auto& q : qs) {
        Rational r = p + (1 - p) * q;
        if (r == 0) continue;
        Rational pr = p / r;
        pr.canonicalize();
        out.push_back({"x (+) " + pt + " (+) (y (+) " + to_string(q) + " (+) z)",
                       "(x (+) " + to_string(pr) + " (+) y) (+) " + to_string(r) + " (+) z"});
      }
    }
    out.push_back({"x (+) 0 (+) y", "y"});
    return out;
  }
  out = semilattice_axioms();
  std::vector<std::string> ops;
  if (th == S::ReadyTrace || th == S::FailureTrace || th == S::ReadySimulation) {
    for (const auto& s : set_texts)
      for (const char* a : {"a", "b"}) ops.push_back("<" + s + "," + a + ">");
  } else {
    ops = {"a", "b"};
  }
  if (distributive(th)) {
    for (const auto& o : ops) {
      out.push_back({o + "(x + y)", o + "(x) + " + o + "(y)"});
      out.push_back({o + "(0)", "0"});
    }
  } else {
    for (const auto& o : ops) out.push_back({o + "(x + y) + " + o + "(x)", o + "(x + y)"});
  }
  if (th == S::Failures)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        out.push_back({set_texts[a] + " + " + set_union_text(a, b), set_union_text(a, b)});
  if (th == S::FailureTrace)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (const char* act : {"a", "b"}) {
          std::string big = "<" + set_union_text(a, b) + "," + act + ">(x)";
          out.push_back({"<" + set_texts[a] + "," + act + ">(x) + " + big, big});
        }
  return out;
}

std::vector<EquationText> non_equations(SemanticsId th) {
  require_theory(th);
  using S = SemanticsId;
  switch (th) {
    case S::Trace: return {{"a(x + y)", "a(x)"}, {"a(b(x))", "b(a(x))"}, {"x", "0"}};
    case S::CompletedTrace: return {{"*", "0"}, {"a(0)", "a(*)"}};
    case S::Readiness: return {{"{a} + {a,b}", "{a,b}"}, {"{a}", "{}"}};
    case S::Failures: return {{"{a} + {b}", "{a,b}"}, {"{a,b}", "{a}"}};
    case S::ReadyTrace: return {{"<{a},a>(x) + <{a,b},a>(x)", "<{a,b},a>(x)"}, {"<{a},a>(0)", "<{a},a>(*)"}};
    case S::FailureTrace: return {{"<{a},a>(x)", "<{b},a>(x)"}, {"<{a},a>(x) + <{b},a>(x)", "<{a,b},a>(x)"}};
    case S::Simulation: return {{"a(x + y)", "a(x) + a(y)"}, {"a(0)", "0"}};
    case S::ReadySimulation:
      return {{"<{a},a>(x + y)", "<{a},a>(x) + <{a},a>(y)"}, {"<{a},a>(x) + <{a,b},a>(x)", "<{a,b},a>(x)"}};
    case S::ProbabilisticTrace: return {{"x (+) 1/3 (+) y", "y (+) 1/3 (+) x"}, {"a(x) (+) 1/2 (+) b(x)", "a(x)"}};
    default: break;
  }
  return {};
}

}  // namespace spectrum
