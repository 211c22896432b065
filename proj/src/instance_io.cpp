#include "gmdist/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace gmdist {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct KeyValue {
  std::string_view key;
  std::string_view value;
  std::size_t key_column;
  std::size_t value_column;
};

class Parser {
 public:
  Parser(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  Instance run() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      auto nl = text_.find('\n', pos);
      auto line = text_.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      handle_line(line);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (!seen_sections_.count("manifold")) fail(line_no_, 1, "missing [manifold] section");
    if (!seen_sections_.count("surface")) fail(line_no_, 1, "missing [surface] section");
    return std::move(inst_);
  }

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) const {
    throw ParseError(std::string(source_), line, col, msg);
  }

  static bool is_id(std::string_view s) {
    if (s.empty()) return false;
    auto ok_first = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto ok_rest = [&](char c) { return ok_first(c) || (c >= '0' && c <= '9') || c == '.'; };
    if (!ok_first(s[0])) return false;
    for (char c : s.substr(1)) {
      if (!ok_rest(c)) return false;
    }
    return true;
  }

  std::vector<Token> tokenize(std::string_view line) const {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] == '#') break;
      if (line[i] == ' ' || line[i] == '\t') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '#') ++j;
      out.push_back({line.substr(i, j - i), i + 1});
      i = j;
    }
    return out;
  }

  void handle_line(std::string_view line) {
    auto tokens = tokenize(line);
    if (tokens.empty()) return;
    const auto& head = tokens.front();
    if (head.text.front() == '[') {
      if (tokens.size() != 1 || head.text.back() != ']' || head.text.size() < 3) {
        fail(line_no_, head.column, "malformed section header");
      }
      auto name = head.text.substr(1, head.text.size() - 2);
      static const std::set<std::string_view> known{"manifold", "surface", "params", "probe"};
      if (!known.count(name)) fail(line_no_, head.column + 1, "unknown section '" + std::string(name) + "'");
      if (!seen_sections_.insert(std::string(name)).second) {
        fail(line_no_, head.column + 1, "duplicate section '" + std::string(name) + "'");
      }
      section_ = std::string(name);
      if (section_ == "params") inst_.params = GeometryParams{};
      if (section_ == "probe") inst_.probe = ProbeSection{};
      return;
    }
    if (section_.empty()) fail(line_no_, head.column, "statement outside of any section");
    if (section_ == "manifold") return manifold_statement(tokens);
    if (section_ == "surface") return surface_statement(tokens);
    if (section_ == "params") return params_statement(tokens);
    return probe_statement(tokens);
  }

  KeyValue split_kv(const Token& t) const {
    auto eq = t.text.find('=');
    if (eq == std::string_view::npos || eq == 0)
      fail(line_no_, t.column, "expected key=value, got '" + std::string(t.text) + "'");
    if (eq + 1 == t.text.size())
      fail(line_no_, t.column + eq + 1, "missing value for '" + std::string(t.text.substr(0, eq)) + "'");
    return {t.text.substr(0, eq), t.text.substr(eq + 1), t.column, t.column + eq + 1};
  }

  // Parses the key=value tokens after `first`; every key in `required` must
  // appear exactly once and no other key is accepted.
  std::map<std::string, KeyValue> keyed(const std::vector<Token>& tokens, std::size_t first,
                                        const std::vector<std::string>& required) const {
    std::map<std::string, KeyValue> out;
    for (std::size_t i = first; i < tokens.size(); ++i) {
      auto kv = split_kv(tokens[i]);
      std::string key(kv.key);
      if (std::find(required.begin(), required.end(), key) == required.end()) {
        fail(line_no_, kv.key_column, "unknown key '" + key + "'");
      }
      if (!out.emplace(key, kv).second) fail(line_no_, kv.key_column, "duplicate key '" + key + "'");
    }
    for (const auto& k : required) {
      if (!out.count(k)) fail(line_no_, tokens.back().column + tokens.back().text.size(), "missing key '" + k + "'");
    }
    return out;
  }

  std::string id_at(const std::vector<Token>& tokens, std::size_t i, const char* what) const {
    if (i >= tokens.size()) {
      fail(line_no_, tokens.back().column + tokens.back().text.size(), std::string("expected ") + what + " id");
    }
    if (!is_id(tokens[i].text))
      fail(line_no_, tokens[i].column, std::string("invalid ") + what + " id '" + std::string(tokens[i].text) + "'");
    return std::string(tokens[i].text);
  }

  std::string id_value(const KeyValue& kv) const {
    if (!is_id(kv.value)) fail(line_no_, kv.value_column, "invalid id '" + std::string(kv.value) + "'");
    return std::string(kv.value);
  }

  std::int64_t int_value(const KeyValue& kv) const {
    std::int64_t v = 0;
    auto s = kv.value;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      fail(line_no_, kv.value_column, "expected an integer, got '" + std::string(kv.value) + "'");
    }
    if (v < -(std::int64_t{1} << 40) || v > (std::int64_t{1} << 40))
      fail(line_no_, kv.value_column, "integer out of range");
    return v;
  }

  std::size_t count_value(const KeyValue& kv) const {
    auto v = int_value(kv);
    if (v < 0) fail(line_no_, kv.value_column, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  Rational rational_value(const KeyValue& kv) const {
    try {
      return parse_rational(kv.value);
    } catch (const std::invalid_argument& e) {
      fail(line_no_, kv.value_column, e.what());
    }
  }

  void unique_id(std::set<std::string>& seen, const std::string& id, std::size_t col, const char* what) const {
    if (!seen.insert(id).second) fail(line_no_, col, std::string("duplicate ") + what + " id '" + id + "'");
  }

  void manifold_statement(const std::vector<Token>& tokens) {
    const auto& kw = tokens.front().text;
    if (kw == "piece") {
      auto id = id_at(tokens, 1, "piece");
      unique_id(piece_ids_, id, tokens[1].column, "piece");
      auto kv = keyed(tokens, 2, {"genus", "boundary"});
      inst_.manifold.pieces.push_back({id, static_cast<int>(int_value(kv.at("genus"))),
                                       static_cast<int>(int_value(kv.at("boundary")))});
    } else if (kw == "edge") {
      auto id = id_at(tokens, 1, "edge");
      unique_id(edge_ids_, id, tokens[1].column, "edge");
      auto kv = keyed(tokens, 2, {"tail", "head"});
      inst_.manifold.edges.push_back({id, id_value(kv.at("tail")), id_value(kv.at("head"))});
    } else {
      fail(line_no_, tokens.front().column, "unknown manifold statement '" + std::string(kw) + "'");
    }
  }

  void surface_statement(const std::vector<Token>& tokens) {
    const auto& kw = tokens.front().text;
    if (kw == "block") {
      auto id = id_at(tokens, 1, "block");
      unique_id(block_ids_, id, tokens[1].column, "block");
      auto kv = keyed(tokens, 2, {"over"});
      inst_.surface.blocks.push_back({id, id_value(kv.at("over"))});
    } else if (kw == "curve") {
      auto id = id_at(tokens, 1, "curve");
      unique_id(curve_ids_, id, tokens[1].column, "curve");
      auto kv = keyed(tokens, 2, {"tail", "head", "over", "a", "b"});
      inst_.surface.curves.push_back({id, id_value(kv.at("tail")), id_value(kv.at("head")), id_value(kv.at("over")),
                                      int_value(kv.at("a")), int_value(kv.at("b"))});
    } else {
      fail(line_no_, tokens.front().column, "unknown surface statement '" + std::string(kw) + "'");
    }
  }

  void params_statement(const std::vector<Token>& tokens) {
    auto& p = *inst_.params;
    const std::map<std::string_view, Rational GeometryParams::*> fields{
        {"L", &GeometryParams::L},     {"Lp", &GeometryParams::Lp}, {"rho", &GeometryParams::rho},
        {"eta", &GeometryParams::eta}, {"R", &GeometryParams::R},   {"r", &GeometryParams::r}};
    for (const auto& t : tokens) {
      auto kv = split_kv(t);
      auto it = fields.find(kv.key);
      if (it == fields.end()) fail(line_no_, kv.key_column, "unknown key '" + std::string(kv.key) + "'");
      if (!params_seen_.insert(std::string(kv.key)).second) {
        fail(line_no_, kv.key_column, "duplicate key '" + std::string(kv.key) + "'");
      }
      p.*(it->second) = rational_value(kv);
    }
  }

  void probe_statement(const std::vector<Token>& tokens) {
    auto& p = *inst_.probe;
    for (const auto& t : tokens) {
      auto kv = split_kv(t);
      std::string key(kv.key);
      if (!probe_seen_.insert(key).second) fail(line_no_, kv.key_column, "duplicate key '" + key + "'");
      if (key == "mu") {
        auto v = int_value(kv);
        if (v < 1) fail(line_no_, kv.value_column, "mu must be a positive integer");
        p.mu = Integer(static_cast<long>(v));
      } else if (key == "nmax") {
        p.nmax = count_value(kv);
      } else if (key == "periods") {
        p.periods = count_value(kv);
      } else if (key == "cycle") {
        p.cycle = std::string(kv.value);
      } else {
        fail(line_no_, kv.key_column, "unknown key '" + key + "'");
      }
    }
  }

  std::string_view text_;
  std::string_view source_;
  std::size_t line_no_ = 0;
  std::string section_;
  std::set<std::string> seen_sections_;
  std::set<std::string> piece_ids_, edge_ids_, block_ids_, curve_ids_, params_seen_, probe_seen_;
  Instance inst_;
};

}  // namespace

Instance parse_instance(std::string_view text, std::string_view source) { return Parser(text, source).run(); }

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return parse_instance(buf.str(), path.string());
}

std::string serialize(const Instance& inst) {
  std::ostringstream out;
  out << "[manifold]\n";
  for (const auto& p : inst.manifold.pieces) {
    out << "piece " << p.id << " genus=" << p.base_genus << " boundary=" << p.boundary_count << "\n";
  }
  for (const auto& e : inst.manifold.edges) out << "edge " << e.id << " tail=" << e.tail << " head=" << e.head << "\n";
  out << "\n[surface]\n";
  for (const auto& b : inst.surface.blocks) out << "block " << b.id << " over=" << b.piece << "\n";
  for (const auto& c : inst.surface.curves) {
    out << "curve " << c.id << " tail=" << c.tail_block << " head=" << c.head_block << " over=" << c.over_edge
        << " a=" << c.a << " b=" << c.b << "\n";
  }
  if (inst.params) {
    const auto& p = *inst.params;
    out << "\n[params]\nL=" << to_string(p.L) << " Lp=" << to_string(p.Lp) << " rho=" << to_string(p.rho)
        << " eta=" << to_string(p.eta) << " R=" << to_string(p.R) << " r=" << to_string(p.r) << "\n";
  }
  if (inst.probe) {
    const auto& p = *inst.probe;
    std::vector<std::string> items;
    if (p.mu) items.push_back("mu=" + p.mu->get_str());
    if (p.nmax) items.push_back("nmax=" + std::to_string(*p.nmax));
    if (p.periods) items.push_back("periods=" + std::to_string(*p.periods));
    if (p.cycle) items.push_back("cycle=" + *p.cycle);
    out << "\n[probe]\n";
    for (std::size_t i = 0; i < items.size(); ++i) out << (i ? " " : "") << items[i];
    out << "\n";
  }
  return out.str();
}

GeometryParams parse_params_list(std::string_view text) {
  std::vector<Rational> values;
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    values.push_back(
        parse_rational(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (values.size() != 6) throw std::invalid_argument("--params expects six values L,Lp,rho,eta,R,r");
  return GeometryParams{values[0], values[1], values[2], values[3], values[4], values[5]};
}

}  // namespace gmdist
