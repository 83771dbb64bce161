#pragma once

// Text formats: group specs like "[2^4,5]" or "[4,0]", elements as bracketed
// coordinate lists, JSON reports (exact rationals as "num/den" strings with a
// decimal alongside), and RFC-4180 CSV.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "apxhom/bounds.hpp"
#include "apxhom/fuzz.hpp"
#include "apxhom/lemma_lab.hpp"
#include "apxhom/point_map.hpp"
#include "apxhom/search.hpp"

namespace apxhom::io {

using json = nlohmann::ordered_json;

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, const std::string& token, const std::string& message)
      : std::invalid_argument("parse error at position " + std::to_string(position) + " near '" + token +
                              "': " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    auto digits = text_.substr(start, pos_ - start);
    if (digits.empty() || digits == "-" || digits == "+") {
      pos_ = start;
      fail("expected an integer");
    }
    try {
      return std::stoll(digits);
    } catch (const std::out_of_range&) {
      pos_ = start;
      fail("integer out of range");
    }
  }
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t end = pos_;
    while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) && end - pos_ < 8) ++end;
    std::string token = pos_ < text_.size() ? text_.substr(pos_, std::max<std::size_t>(1, end - pos_)) : "<end>";
    throw ParseError(pos_, token, message);
  }
  std::size_t position() const { return pos_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// "[2^3,5]" -> [2,2,2,5]; "[4,0]" -> Z/4 x Z; "[]" -> trivial group.
inline GroupSpec parse_spec(const std::string& text) {
  detail::Cursor cur(text);
  cur.expect('[');
  std::vector<std::int64_t> moduli;
  if (!cur.accept(']')) {
    do {
      auto at = cur.position();
      auto d = cur.integer();
      if (d == 1 || d < 0) {
        throw ParseError(at, std::to_string(d),
                         d == 1 ? "modulus 1 is not allowed" : "moduli must be nonnegative");
      }
      std::int64_t copies = 1;
      if (cur.accept('^')) {
        auto eat = cur.position();
        copies = cur.integer();
        if (copies < 1 || copies > 4096) throw ParseError(eat, std::to_string(copies), "repeat count must be in [1, 4096]");
      }
      moduli.insert(moduli.end(), static_cast<std::size_t>(copies), d);
    } while (cur.accept(','));
    cur.expect(']');
  }
  if (!cur.at_end()) cur.fail("trailing characters after spec");
  return GroupSpec(std::move(moduli));
}

/// Inverse of parse_spec; runs of equal moduli are written with '^'.
inline std::string format_spec(const GroupSpec& spec) {
  std::string out = "[";
  auto m = spec.moduli();
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (i > 0) out += ",";
    out += std::to_string(m[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out + "]";
}

inline std::string format_element(const GroupElement& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x[i]);
  }
  return out + "]";
}

inline GroupElement parse_element(const GroupSpec& spec, const std::string& text) {
  detail::Cursor cur(text);
  cur.expect('[');
  std::vector<std::int64_t> c;
  if (!cur.accept(']')) {
    do c.push_back(cur.integer());
    while (cur.accept(','));
    cur.expect(']');
  }
  if (!cur.at_end()) cur.fail("trailing characters after element");
  if (c.size() != spec.factor_count())
    throw std::invalid_argument("element " + text + " has " + std::to_string(c.size()) + " coordinates, spec " +
                                format_spec(spec) + " has " + std::to_string(spec.factor_count()));
  return make_element(spec, std::move(c));
}

// ---------------------------------------------------------------------------
// JSON

inline json integer_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return json(v.convert_to<std::uint64_t>());
  if (v < 0 && v >= BigInt(std::numeric_limits<std::int64_t>::min())) return json(v.convert_to<std::int64_t>());
  return json(v.str());
}

inline json element_json(const GroupElement& x) { return json(std::vector<std::int64_t>(x.coords().begin(), x.coords().end())); }

inline GroupElement element_from_json(const GroupSpec& spec, const json& j) {
  auto c = j.get<std::vector<std::int64_t>>();
  if (c.size() != spec.factor_count()) throw std::invalid_argument("element arity does not match spec " + format_spec(spec));
  return make_element(spec, std::move(c));
}

inline json set_json(const ElementSet& s) {
  json elems = json::array();
  for (const auto& e : s.elements()) elems.push_back(element_json(e));
  return json{{"spec", format_spec(s.spec())}, {"elements", elems}};
}

inline ElementSet set_from_json(const json& j) {
  auto spec = parse_spec(j.at("spec").get<std::string>());
  std::vector<GroupElement> elems;
  for (const auto& e : j.at("elements")) elems.push_back(element_from_json(spec, e));
  return ElementSet::from_elements(spec, std::move(elems));
}

inline json map_json(const PointMap& f) {
  json table = json::array();
  for (const auto& v : f.table()) table.push_back(element_json(v));
  return json{{"domain", format_spec(f.domain())},
              {"codomain", format_spec(f.codomain())},
              {"recipe", recipe_name(f.provenance().recipe)},
              {"params", f.provenance().params},
              {"injective", f.injective()},
              {"table", table}};
}

inline PointMap map_from_json(const json& j) {
  auto domain = parse_spec(j.at("domain").get<std::string>());
  auto codomain = parse_spec(j.at("codomain").get<std::string>());
  std::vector<GroupElement> table;
  for (const auto& v : j.at("table")) table.push_back(element_from_json(codomain, v));
  return PointMap(domain, codomain, std::move(table));
}

inline json agreement_json(const AgreementReport& r) {
  return json{{"good_pairs", integer_json(r.good_pairs)},
              {"total_pairs", integer_json(r.total_pairs)},
              {"total", integer_json(r.total_pairs)},
              {"probability", to_fraction_string(r.probability)},
              {"as_float", r.as_float}};
}

inline json bound_json(const BoundReport& b) {
  return json{{"r", b.r},
              {"alpha", to_fraction_string(b.alpha)},
              {"alpha_decimal", to_decimal_string(b.alpha)},
              {"base", to_fraction_string(b.base)},
              {"base_decimal", to_decimal_string(b.base)},
              {"bound_value", b.bound_value},
              {"side_used", side_name(b.side_used)}};
}

inline json log_value_json(const LogValue& v) {
  return json{{"log2_argument", integer_json(v.argument)},
              {"coefficient", to_fraction_string(v.coefficient)},
              {"exact", v.to_string()},
              {"decimal", v.approx()}};
}

inline json check_json(const lab::Inequality& c) {
  return json{{"name", c.name},
              {"lhs", integer_json(c.lhs)},
              {"relation", lab::relation_symbol(c.relation)},
              {"rhs", integer_json(c.rhs)},
              {"holds", c.holds()}};
}

inline json report_json(const lab::CheckReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  return json{{"checker", r.checker}, {"ok", r.ok()}, {"checks", checks}};
}

inline json counterexample_json(const lab::CounterexampleStats& s) {
  return json{{"d", s.d},
              {"size_A", s.size_a},
              {"size_2A", s.size_2a},
              {"size_A_plus_B", s.size_a_plus_b},
              {"size_2A_plus_2B", s.size_2a_plus_2b},
              {"ratio_sum", to_fraction_string(s.ratio_sum)},
              {"ratio_sum_decimal", to_decimal_string(s.ratio_sum)},
              {"ratio_dilate", to_fraction_string(s.ratio_dilate)},
              {"ratio_dilate_decimal", to_decimal_string(s.ratio_dilate)},
              {"ok", s.checks.ok()},
              {"checks", report_json(s.checks)["checks"]}};
}

inline json bsg_json(const lab::BsgResult& r) {
  const auto& o = r.output;
  const auto& c = o.certified;
  return json{{"T", set_json(o.t)},
              {"x0", element_json(o.x0)},
              {"U_size", o.u_size},
              {"R_size", r.trace.r_size},
              {"epsilon", to_fraction_string(o.epsilon)},
              {"c", to_fraction_string(r.trace.c)},
              {"candidates_scanned", r.trace.candidates_scanned},
              {"certified",
               {{"symmetric", c.symmetric},
                {"subset", c.subset},
                {"u_large", c.u_large},
                {"popular_pairs", c.popular_pairs},
                {"r_large", c.r_large},
                {"t_large", c.t_large},
                {"difference_bound", c.difference_bound}}},
              {"checks", report_json(o.checks)["checks"]}};
}

inline json search_json(const search::SearchResult& r) {
  json ctx = json::array();
  for (const auto& b : r.bound_context) ctx.push_back(bound_json(b));
  return json{{"method", search::method_name(r.method)},
              {"best_good_pairs", integer_json(r.best_good_pairs)},
              {"best_probability", to_fraction_string(r.best_probability)},
              {"as_float", to_double(r.best_probability)},
              {"visited", r.visited},
              {"witness", map_json(r.witness)},
              {"bound_context", ctx}};
}

/// One JSON line per fuzz trial. Failing trials carry every input for replay.
inline json trial_json(lab::Checker checker, std::uint64_t seed, const lab::TrialOutcome& t) {
  json j{{"checker", lab::checker_name(checker)}, {"seed", seed}, {"trial", t.trial}, {"ok", t.ok()}};
  std::size_t checks = 0;
  for (const auto& r : t.reports) checks += r.checks.size();
  j["checks"] = checks;
  if (!t.ok()) {
    if (!t.error.empty()) j["error"] = t.error;
    json violations = json::array();
    for (const auto& r : t.reports)
      for (const auto& v : r.violations()) violations.push_back(check_json(v));
    j["violations"] = violations;
    json inputs = json::object();
    for (const auto& [name, set] : t.inputs) inputs[name] = set_json(set);
    j["inputs"] = inputs;
    json params = json::object();
    for (const auto& [name, v] : t.params) params[name] = v;
    j["params"] = params;
  }
  return j;
}

// ---------------------------------------------------------------------------
// CSV (RFC 4180 quoting).

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string emit_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << csv_field(cells[i]);
    }
    out << "\r\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

inline std::string bound_table_csv(const std::vector<search::BoundRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.bound.r), to_fraction_string(r.bound.alpha), to_fraction_string(r.bound.base),
                     r.bound.bound_value, side_name(r.bound.side_used),
                     r.observed ? to_fraction_string(*r.observed) : "",
                     r.observed ? to_decimal_string(*r.observed) : ""});
  }
  return emit_csv({"r", "alpha", "base", "base^alpha", "side_used", "observed", "observed_decimal"}, cells);
}

}  // namespace apxhom::io
