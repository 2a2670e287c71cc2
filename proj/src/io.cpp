#include <algorithm>
#include <cctype>
#include <tuple>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spectrum/error.hpp"
#include "spectrum/model.hpp"

namespace spectrum {

namespace {

class LineCursor {
public:
  LineCursor(std::string_view s, std::size_t line) : s_(s), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }
  void expect(char c, const char* what) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "' " + what);
    ++pos_;
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  std::uint64_t number(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    if (pos_ - start > 18) fail(std::string(what) + " too large");
    return std::stoull(std::string(s_.substr(start, pos_ - start)));
  }
  std::string label() {
    skip_ws();
    std::string out;
    if (pos_ < s_.size() && s_[pos_] == '"') {
      ++pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') out += s_[pos_++];
      if (pos_ >= s_.size()) fail("unterminated label");
      ++pos_;
    } else {
      while (pos_ < s_.size() && s_[pos_] != ',' && !std::isspace(static_cast<unsigned char>(s_[pos_])))
        out += s_[pos_++];
    }
    if (out.empty()) fail("empty label");
    return out;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(line_, msg); }

private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Lts parse_aut(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }

  std::size_t i = 0;
  auto blank = [](std::string_view l) {
    for (char c : l)
      if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
  };
  while (i < lines.size() && blank(lines[i])) ++i;
  if (i == lines.size()) throw ParseError(1, "missing header 'des (first, m, n)'");

  LineCursor head(lines[i], i + 1);
  if (!head.accept_word("des")) head.fail("malformed header, expected 'des (first, m, n)'");
  head.expect('(', "in header");
  auto first = head.number("initial state");
  head.expect(',', "in header");
  auto m = head.number("transition count");
  head.expect(',', "in header");
  auto n = head.number("state count");
  head.expect(')', "in header");
  if (!head.at_end()) head.fail("trailing text after header");
  if (n == 0) head.fail("state count must be positive");
  if (first >= n) head.fail("initial state " + std::to_string(first) + " out of range");
  std::size_t header_line = i + 1;

  Alphabet alphabet;
  std::vector<Transition> ts;
  for (++i; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    LineCursor c(lines[i], i + 1);
    if (ts.size() == m) c.fail("more transition lines than the " + std::to_string(m) + " declared");
    c.expect('(', "at start of transition");
    auto src = c.number("source state");
    c.expect(',', "after source state");
    auto lab = c.label();
    c.expect(',', "after label");
    auto dst = c.number("target state");
    c.expect(')', "at end of transition");
    if (!c.at_end()) c.fail("trailing text after transition");
    if (src >= n) c.fail("state index " + std::to_string(src) + " out of range");
    if (dst >= n) c.fail("state index " + std::to_string(dst) + " out of range");
    if (lab.find('"') != std::string::npos) c.fail("label contains '\"'");
    ts.push_back({static_cast<StateId>(src), alphabet.intern(lab), static_cast<StateId>(dst)});
  }
  if (ts.size() != m)
    throw ParseError(header_line, "header declares " + std::to_string(m) + " transitions, found " +
                                      std::to_string(ts.size()));
  try {
    return Lts(n, static_cast<StateId>(first), std::move(alphabet), std::move(ts));
  } catch (const ModelError& e) {
    throw ParseError(header_line, e.what());
  }
}

std::string render_aut(const Lts& lts) {
  auto ts = lts.transitions();
  std::sort(ts.begin(), ts.end(), [](const Transition& a, const Transition& b) {
    return std::tie(a.act, a.src, a.dst) < std::tie(b.act, b.src, b.dst);
  });
  std::ostringstream out;
  out << "des (" << lts.initial() << "," << ts.size() << "," << lts.num_states() << ")\n";
  for (const auto& t : ts) out << "(" << t.src << ",\"" << lts.alphabet().label(t.act) << "\"," << t.dst << ")\n";
  return out.str();
}

Gps parse_gps(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("malformed GPS document: ") + e.what());
  }
  auto need = [&](const json& obj, const char* key) -> const json& {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(0, std::string("missing field '") + key + "'");
    return obj.at(key);
  };
  auto natural = [&](const json& v, const char* what) -> std::uint64_t {
    if (!v.is_number_unsigned()) throw ParseError(0, std::string(what) + " must be a natural number");
    return v.get<std::uint64_t>();
  };
  auto n = natural(need(doc, "states"), "states");
  if (n == 0) throw ParseError(0, "states must be positive");
  auto initial = doc.contains("initial") ? natural(doc.at("initial"), "initial") : 0;
  if (initial >= n) throw ParseError(0, "initial state " + std::to_string(initial) + " out of range");
  const auto& trans = need(doc, "transitions");
  if (!trans.is_array()) throw ParseError(0, "transitions must be an array");

  Alphabet alphabet;
  std::vector<std::vector<GpsEntry>> rows(n);
  std::size_t k = 0;
  for (const auto& t : trans) {
    std::string where = "transition " + std::to_string(k++) + ": ";
    auto src = natural(need(t, "src"), "src");
    auto dst = natural(need(t, "dst"), "dst");
    if (src >= n || dst >= n)
      throw ParseError(0, where + "state index " + std::to_string(std::max(src, dst)) + " out of range");
    const auto& act = need(t, "act");
    if (!act.is_string() || act.get<std::string>().empty()) throw ParseError(0, where + "act must be a nonempty string");
    const auto& pj = need(t, "prob");
    Rational p;
    try {
      if (pj.is_string()) p = parse_rational(pj.get<std::string>());
      else if (pj.is_number_integer()) p = Rational(pj.get<long>());
      else throw std::invalid_argument("prob must be a string such as \"1/2\"");
    } catch (const std::invalid_argument& e) {
      throw ParseError(0, where + e.what());
    }
    if (p <= 0 || p > 1) throw ParseError(0, where + "probability " + to_string(p) + " not in (0,1]");
    rows[src].push_back({p, alphabet.intern(act.get<std::string>()), static_cast<StateId>(dst)});
  }
  try {
    return Gps(n, static_cast<StateId>(initial), std::move(alphabet), std::move(rows));
  } catch (const ModelError& e) {
    throw ParseError(0, e.what());
  }
}

std::string render_gps(const Gps& gps) {
  nlohmann::ordered_json doc;
  doc["states"] = gps.num_states();
  doc["initial"] = gps.initial();
  auto trans = nlohmann::ordered_json::array();
  for (StateId x = 0; x < gps.num_states(); ++x)
    for (const auto& e : gps.row(x))
      trans.push_back({{"src", x}, {"prob", to_string(e.prob)}, {"act", gps.alphabet().label(e.act)}, {"dst", e.dst}});
  doc["transitions"] = std::move(trans);
  return doc.dump(2) + "\n";
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  try {
    if (ends_with(".gps") || ends_with(".json")) return parse_gps(buf.str());
    return parse_aut(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

}  // namespace spectrum
