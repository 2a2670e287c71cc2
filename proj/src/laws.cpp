#include "spectrum/laws.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "spectrum/error.hpp"
#include "spectrum/model.hpp"

namespace spectrum {

bool LawReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const LawResult& r) { return r.passed; });
}

namespace {

constexpr std::size_t exhaustive_cap = 10000;
constexpr std::size_t sample_size = 2000;
constexpr std::size_t actions = 2;
constexpr std::uint64_t all_decos = 4;

// Elements of nested functor applications over X = {0..k-1}.
struct Elem {
  enum class Tag : std::uint8_t { Atom, Set, Dist, Pair, Star, Fail };
  Tag tag = Tag::Atom;
  std::uint32_t a = 0;  // atom index or action
  ActionSet deco;       // decoration, or ready/failure set
  std::vector<Elem> items;
  std::vector<Rational> weights;
};

int cmp(const Elem& x, const Elem& y) {
  if (x.tag != y.tag) return x.tag < y.tag ? -1 : 1;
  if (x.a != y.a) return x.a < y.a ? -1 : 1;
  if (x.deco != y.deco) return x.deco < y.deco ? -1 : 1;
  if (x.items.size() != y.items.size()) return x.items.size() < y.items.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.items.size(); ++i)
    if (int c = cmp(x.items[i], y.items[i])) return c;
  for (std::size_t i = 0; i < x.weights.size(); ++i)
    if (x.weights[i] != y.weights[i]) return x.weights[i] < y.weights[i] ? -1 : 1;
  return 0;
}

bool operator==(const Elem& x, const Elem& y) { return cmp(x, y) == 0; }
bool less(const Elem& x, const Elem& y) { return cmp(x, y) < 0; }

Elem atom(std::uint32_t i) { return Elem{Elem::Tag::Atom, i, {}, {}, {}}; }

Elem pair(std::uint32_t act, ActionSet deco, Elem arg) {
  return Elem{Elem::Tag::Pair, act, deco, {std::move(arg)}, {}};
}

Elem set_of(std::vector<Elem> items) {
  std::sort(items.begin(), items.end(), less);
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return Elem{Elem::Tag::Set, 0, {}, std::move(items), {}};
}

Elem dist_of(std::vector<Elem> items, std::vector<Rational> weights) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return less(items[i], items[j]); });
  Elem out{Elem::Tag::Dist, 0, {}, {}, {}};
  for (auto i : order) {
    if (!out.items.empty() && out.items.back() == items[i]) {
      out.weights.back() += weights[i];
    } else {
      out.items.push_back(items[i]);
      out.weights.push_back(weights[i]);
    }
  }
  std::vector<Elem> ki;
  std::vector<Rational> kw;
  for (std::size_t i = 0; i < out.items.size(); ++i)
    if (out.weights[i] != 0) ki.push_back(std::move(out.items[i])), kw.push_back(out.weights[i]);
  out.items = std::move(ki);
  out.weights = std::move(kw);
  return out;
}

std::string render(const Elem& e) {
  static const char* labels[] = {"a", "b"};
  auto deco = [](ActionSet s) {
    std::string out = "{";
    for (auto m : s.members()) out += std::string(out.size() > 1 ? "," : "") + labels[m];
    return out + "}";
  };
  switch (e.tag) {
    case Elem::Tag::Atom: return "x" + std::to_string(e.a);
    case Elem::Tag::Star: return "*";
    case Elem::Tag::Fail: return "set" + deco(e.deco);
    case Elem::Tag::Pair:
      return std::string("(") + (e.deco.empty() ? "" : deco(e.deco) + ",") + labels[e.a] + "," +
             render(e.items[0]) + ")";
    case Elem::Tag::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < e.items.size(); ++i) out += (i ? ", " : "") + render(e.items[i]);
      return out + "}";
    }
    case Elem::Tag::Dist: {
      std::string out = "[";
      for (std::size_t i = 0; i < e.items.size(); ++i)
        out += (i ? ", " : "") + to_string(e.weights[i]) + ":" + render(e.items[i]);
      return out + "]";
    }
  }
  return "?";
}

enum class Outer { Pow, Id, Dist };
enum class Down { None, FailSets, Deco, Arg };

struct Shape {
  Outer m0 = Outer::Pow;
  Outer m1 = Outer::Pow;
  bool decorated = false;
  bool star = false;
  bool sets = false;
  bool arg_m0 = false;  // pairs carry an M₀-element (simulation-like)
  Down down = Down::None;
  LawMutant mutant = LawMutant::None;
};

Shape shape_of(SemanticsId sem, LawMutant mutant) {
  using S = SemanticsId;
  Shape s;
  s.mutant = mutant;
  switch (sem) {
    case S::Bisimilarity: s.m0 = Outer::Id; break;
    case S::Trace: break;
    case S::CompletedTrace: s.star = true; break;
    case S::Readiness: s.sets = true; break;
    case S::Failures: s.sets = true, s.down = Down::FailSets; break;
    case S::ReadyTrace: s.decorated = s.star = true; break;
    case S::FailureTrace: s.decorated = s.star = true, s.down = Down::Deco; break;
    case S::Simulation: s.arg_m0 = true, s.down = Down::Arg; break;
    case S::ReadySimulation: s.decorated = s.star = s.arg_m0 = true, s.down = Down::Arg; break;
    case S::ProbabilisticTrace: s.m0 = s.m1 = Outer::Dist; break;
  }
  return s;
}

std::vector<std::uint64_t> submasks(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = m;; s = (s - 1) & m) {
    out.push_back(s);
    if (s == 0) break;
  }
  return out;
}

// ---- structure maps ----------------------------------------------------------------------------------

using Fn = std::function<Elem(const Elem&)>;

Elem eta(const Shape& s, const Elem& x) {
  switch (s.m0) {
    case Outer::Pow: return set_of({x});
    case Outer::Id: return x;
    case Outer::Dist: return dist_of({x}, {Rational(1)});
  }
  return x;
}

Elem map0(const Shape& s, const Fn& f, const Elem& e) {
  switch (s.m0) {
    case Outer::Id: return f(e);
    case Outer::Pow: {
      std::vector<Elem> out;
      for (const auto& i : e.items) out.push_back(f(i));
      return set_of(std::move(out));
    }
    case Outer::Dist: {
      std::vector<Elem> out;
      for (const auto& i : e.items) out.push_back(f(i));
      return dist_of(std::move(out), e.weights);
    }
  }
  return e;
}

Elem mu00(const Shape& s, const Elem& e) {
  switch (s.m0) {
    case Outer::Id: return e;
    case Outer::Pow: {
      std::vector<Elem> out;
      for (const auto& inner : e.items) out.insert(out.end(), inner.items.begin(), inner.items.end());
      return set_of(std::move(out));
    }
    case Outer::Dist: {
      std::vector<Elem> out;
      std::vector<Rational> ws;
      for (std::size_t i = 0; i < e.items.size(); ++i)
        for (std::size_t j = 0; j < e.items[i].items.size(); ++j) {
          out.push_back(e.items[i].items[j]);
          ws.push_back(e.weights[i] * e.items[i].weights[j]);
        }
      return dist_of(std::move(out), std::move(ws));
    }
  }
  return e;
}

Elem canon1(const Shape& s, std::vector<Elem> entries) {
  std::vector<Elem> closed;
  for (const auto& en : entries) {
    if (s.down == Down::FailSets && en.tag == Elem::Tag::Fail) {
      for (auto m : submasks(en.deco.bits())) closed.push_back(Elem{Elem::Tag::Fail, 0, ActionSet(m), {}, {}});
    } else if (s.down == Down::Deco && en.tag == Elem::Tag::Pair) {
      for (auto m : submasks(en.deco.bits())) closed.push_back(pair(en.a, ActionSet(m), en.items[0]));
    } else if (s.down == Down::Arg && en.tag == Elem::Tag::Pair) {
      const auto& arg = en.items[0].items;
      for (auto m : submasks((std::uint64_t{1} << arg.size()) - 1)) {
        std::vector<Elem> sub;
        for (std::size_t i = 0; i < arg.size(); ++i)
          if ((m >> i) & 1u) sub.push_back(arg[i]);
        closed.push_back(pair(en.a, en.deco, set_of(std::move(sub))));
      }
    } else {
      closed.push_back(en);
    }
  }
  return set_of(std::move(closed));
}

Elem map1(const Shape& s, const Fn& f, const Elem& e) {
  if (s.m1 == Outer::Dist) {
    std::vector<Elem> out;
    for (const auto& p : e.items) out.push_back(pair(p.a, p.deco, f(p.items[0])));
    return dist_of(std::move(out), e.weights);
  }
  std::vector<Elem> out;
  for (const auto& en : e.items) {
    if (en.tag != Elem::Tag::Pair) {
      out.push_back(en);
      continue;
    }
    out.push_back(pair(en.a, en.deco, s.arg_m0 ? map0(s, f, en.items[0]) : f(en.items[0])));
  }
  return canon1(s, std::move(out));
}

Elem mu01(const Shape& s, const Elem& e) {
  switch (s.m0) {
    case Outer::Id: return e;
    case Outer::Pow: {
      std::vector<Elem> out;
      for (const auto& m : e.items) out.insert(out.end(), m.items.begin(), m.items.end());
      return canon1(s, std::move(out));
    }
    case Outer::Dist: return mu00(s, e);
  }
  return e;
}

Elem mu10(const Shape& s, const Elem& e) {
  if (s.m1 == Outer::Dist) {
    std::vector<Elem> out;
    std::vector<Rational> ws;
    for (std::size_t i = 0; i < e.items.size(); ++i) {
      const auto& p = e.items[i];
      const auto& d = p.items[0];
      for (std::size_t j = 0; j < d.items.size(); ++j) {
        out.push_back(pair(p.a, p.deco, d.items[j]));
        ws.push_back(e.weights[i] * d.weights[j]);
      }
    }
    return dist_of(std::move(out), std::move(ws));
  }
  if (s.m0 == Outer::Id) return e;
  std::vector<Elem> out;
  for (const auto& en : e.items) {
    if (en.tag != Elem::Tag::Pair) {
      out.push_back(en);
    } else if (s.arg_m0) {
      out.push_back(pair(en.a, en.deco, mu00(s, en.items[0])));
    } else if (s.mutant != LawMutant::TraceNonDistributing || en.items[0].items.size() == 1) {
      for (const auto& x : en.items[0].items) out.push_back(pair(en.a, en.deco, x));
    }
  }
  Elem r = canon1(s, std::move(out));
  if (s.mutant == LawMutant::FailuresNoDownclosure) {
    std::vector<Elem> kept;
    for (const auto& en : r.items) {
      bool dominated = en.tag == Elem::Tag::Fail && std::any_of(r.items.begin(), r.items.end(), [&](const Elem& o) {
                         return o.tag == Elem::Tag::Fail && o.deco != en.deco && en.deco.subset_of(o.deco);
                       });
      if (!dominated) kept.push_back(en);
    }
    r.items = std::move(kept);
  }
  return r;
}

// ---- enumeration -------------------------------------------------------------------------------------

struct Domain {
  std::vector<Elem> elems;
  bool exhaustive = true;
};

std::size_t sat_mul(std::size_t a, std::size_t b) { return (b && a > exhaustive_cap * 10 / b) ? exhaustive_cap * 10 : a * b; }

std::size_t pow2(std::size_t n) { return n >= 20 ? exhaustive_cap * 10 : std::size_t{1} << n; }

std::size_t quarter_dists(std::size_t n) {
  // compositions of 4 into n parts
  if (n == 0) return 0;
  std::size_t c = 1;
  for (std::size_t i = 1; i <= 3; ++i) c = c * (n + i) / i;
  return c;
}

void dedupe(std::vector<Elem>& v) {
  std::sort(v.begin(), v.end(), less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Elem> all_dists(const std::vector<Elem>& support) {
  std::vector<Elem> out;
  std::vector<int> parts(support.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == support.size()) {
      parts[i] = left;
      std::vector<Rational> ws;
      for (int p : parts) ws.push_back(Rational(p, 4));
      for (auto& w : ws) w.canonicalize();
      out.push_back(dist_of(support, ws));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      parts[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (!support.empty()) rec(0, 4);
  return out;
}

Elem random_dist(const std::vector<Elem>& support, std::mt19937_64& rng) {
  std::size_t k = 1 + rng() % 3;
  std::vector<Elem> items;
  std::vector<Rational> ws;
  int left = 4;
  for (std::size_t i = 0; i < k; ++i) {
    int part = i + 1 == k ? left : static_cast<int>(rng() % (left + 1));
    left -= part;
    items.push_back(support[rng() % support.size()]);
    Rational w(part, 4);
    w.canonicalize();
    ws.push_back(w);
  }
  return dist_of(std::move(items), std::move(ws));
}

std::vector<Elem> random_subset(const std::vector<Elem>& from, std::mt19937_64& rng, std::size_t max_size) {
  std::vector<Elem> out;
  if (from.empty()) return out;
  std::size_t k = rng() % (max_size + 1);
  for (std::size_t i = 0; i < k; ++i) out.push_back(from[rng() % from.size()]);
  return out;
}

Domain enum0(const Shape& s, const Domain& l, std::mt19937_64& rng) {
  Domain d;
  const std::size_t n = l.elems.size();
  switch (s.m0) {
    case Outer::Id: return l;
    case Outer::Pow:
      if (pow2(n) <= exhaustive_cap) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
          std::vector<Elem> sub;
          for (std::size_t i = 0; i < n; ++i)
            if ((m >> i) & 1u) sub.push_back(l.elems[i]);
          d.elems.push_back(set_of(std::move(sub)));
        }
        d.exhaustive = l.exhaustive;
      } else {
        for (std::size_t i = 0; i < sample_size; ++i) d.elems.push_back(set_of(random_subset(l.elems, rng, 4)));
        d.exhaustive = false;
      }
      break;
    case Outer::Dist:
      if (quarter_dists(n) <= exhaustive_cap) {
        d.elems = all_dists(l.elems);
        d.exhaustive = l.exhaustive;
      } else {
        for (std::size_t i = 0; i < sample_size; ++i) d.elems.push_back(random_dist(l.elems, rng));
        d.exhaustive = false;
      }
      break;
  }
  dedupe(d.elems);
  return d;
}

Domain enum1(const Shape& s, const Domain& l, std::mt19937_64& rng) {
  Domain d;
  const std::size_t n = l.elems.size();
  const std::size_t decos = s.decorated ? all_decos : 1;
  if (s.m1 == Outer::Dist) {
    std::vector<Elem> atoms;
    for (std::uint32_t a = 0; a < actions; ++a)
      for (const auto& x : l.elems) atoms.push_back(pair(a, {}, x));
    if (quarter_dists(atoms.size()) <= exhaustive_cap) {
      d.elems = all_dists(atoms);
      d.exhaustive = l.exhaustive;
    } else {
      for (std::size_t i = 0; i < sample_size; ++i) d.elems.push_back(random_dist(atoms, rng));
      d.exhaustive = false;
    }
    dedupe(d.elems);
    return d;
  }
  std::size_t args = s.arg_m0 && s.m0 == Outer::Pow ? pow2(n) : n;
  std::size_t atom_count = sat_mul(sat_mul(actions, decos), args) + (s.star ? 1 : 0) + (s.sets ? all_decos : 0);
  if (pow2(atom_count) <= exhaustive_cap) {
    std::vector<Elem> arg_elems = s.arg_m0 ? enum0(s, l, rng).elems : l.elems;
    std::vector<Elem> atoms;
    for (std::uint32_t a = 0; a < actions; ++a)
      for (std::uint64_t m = 0; m < decos; ++m)
        for (const auto& x : arg_elems) atoms.push_back(pair(a, ActionSet(s.decorated ? m : 0), x));
    if (s.star) atoms.push_back(Elem{Elem::Tag::Star, 0, {}, {}, {}});
    if (s.sets)
      for (std::uint64_t m = 0; m < all_decos; ++m) atoms.push_back(Elem{Elem::Tag::Fail, 0, ActionSet(m), {}, {}});
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << atoms.size()); ++m) {
      std::vector<Elem> sub;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if ((m >> i) & 1u) sub.push_back(atoms[i]);
      d.elems.push_back(canon1(s, std::move(sub)));
    }
    d.exhaustive = l.exhaustive;
  } else {
    for (std::size_t i = 0; i < sample_size; ++i) {
      std::vector<Elem> entries;
      std::size_t k = rng() % 5;
      for (std::size_t j = 0; j < k; ++j) {
        std::uint64_t kind = rng() % 6;
        if (kind == 0 && s.star) {
          entries.push_back(Elem{Elem::Tag::Star, 0, {}, {}, {}});
        } else if (kind == 1 && s.sets) {
          entries.push_back(Elem{Elem::Tag::Fail, 0, ActionSet(rng() % all_decos), {}, {}});
        } else if (n > 0 || s.arg_m0) {
          Elem arg = s.arg_m0 ? set_of(random_subset(l.elems, rng, 3)) : l.elems[rng() % n];
          ActionSet deco(s.decorated ? rng() % all_decos : 0);
          entries.push_back(pair(static_cast<std::uint32_t>(rng() % actions), deco, std::move(arg)));
        }
      }
      d.elems.push_back(canon1(s, std::move(entries)));
    }
    d.exhaustive = false;
  }
  dedupe(d.elems);
  return d;
}

}  // namespace

LawReport check_monad_laws(SemanticsId sem, const std::vector<std::size_t>& carrier_sizes, std::uint64_t seed,
                           LawMutant mutant) {
  if (mutant == LawMutant::FailuresNoDownclosure && sem != SemanticsId::Failures)
    throw Error("the downclosure mutant applies to failures only");
  if (mutant == LawMutant::TraceNonDistributing && sem != SemanticsId::Trace)
    throw Error("the non-distributing mutant applies to trace only");
  for (auto k : carrier_sizes)
    if (k > 4) throw Error("carrier size " + std::to_string(k) + " exceeds 4");

  const Shape s = shape_of(sem, mutant);
  LawReport report{sem, carrier_sizes, {}};
  const Fn f_eta = [&](const Elem& e) { return eta(s, e); };
  const Fn f_mu00 = [&](const Elem& e) { return mu00(s, e); };
  const Fn f_mu01 = [&](const Elem& e) { return mu01(s, e); };
  const Fn f_mu10 = [&](const Elem& e) { return mu10(s, e); };

  for (auto k : carrier_sizes) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (k + 1)));
    Domain x;
    for (std::uint32_t i = 0; i < k; ++i) x.elems.push_back(atom(i));
    auto m0 = [&](const Domain& l) { return enum0(s, l, rng); };
    auto m1 = [&](const Domain& l) { return enum1(s, l, rng); };

    auto check = [&](const std::string& law, const Domain& dom, const Fn& lhs, const Fn& rhs) {
      LawResult r{law, k, true, dom.exhaustive, 0, {}};
      for (const auto& m : dom.elems) {
        ++r.checked;
        Elem l = lhs(m), rh = rhs(m);
        if (!(l == rh)) {
          r.passed = false;
          r.witness = render(m) + " gives " + render(l) + " vs " + render(rh);
          break;
        }
      }
      report.results.push_back(std::move(r));
    };
    const Fn id = [](const Elem& e) { return e; };

    Domain d0 = m0(x), d1 = m1(x);
    check("unit: mu00 . eta M0 = id", d0, [&](const Elem& m) { return mu00(s, eta(s, m)); }, id);
    check("unit: mu00 . M0 eta = id", d0, [&](const Elem& m) { return mu00(s, map0(s, f_eta, m)); }, id);
    check("unit: mu01 . eta M1 = id", d1, [&](const Elem& m) { return mu01(s, eta(s, m)); }, id);
    check("unit: mu10 . M1 eta = id", d1, [&](const Elem& m) { return mu10(s, map1(s, f_eta, m)); }, id);
    check("associativity of mu00", m0(m0(d0)), [&](const Elem& m) { return mu00(s, map0(s, f_mu00, m)); },
          [&](const Elem& m) { return mu00(s, mu00(s, m)); });
    check("right M0-module", m1(m0(d0)), [&](const Elem& m) { return mu10(s, map1(s, f_mu00, m)); },
          [&](const Elem& m) { return mu10(s, mu10(s, m)); });
    check("left M0-module", m0(m0(d1)), [&](const Elem& m) { return mu01(s, map0(s, f_mu01, m)); },
          [&](const Elem& m) { return mu01(s, mu00(s, m)); });
    check("mu10 homomorphy", m0(m1(d0)), [&](const Elem& m) { return mu10(s, mu01(s, m)); },
          [&](const Elem& m) { return mu01(s, map0(s, f_mu10, m)); });
  }
  return report;
}

}  // namespace spectrum
