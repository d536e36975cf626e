#include "sofic/group_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sofic/errors.hpp"

namespace sofic {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::pair<std::string, std::int64_t> parse_term(const std::string& raw, int sign,
                                                const std::string& expr) {
  const std::string term = trim(raw);
  if (term.empty()) throw ParseError("empty term in '" + expr + "'");
  std::size_t i = 0;
  while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
  std::int64_t coeff = 1;
  if (i > 0) {
    try {
      coeff = std::stoll(term.substr(0, i));
    } catch (const std::exception&) {
      throw ParseError("coefficient out of range in '" + expr + "'");
    }
  }
  std::string word = trim(term.substr(i));
  if (i > 0 && !word.empty() && word[0] == '*') word = trim(word.substr(1));
  if (word.empty()) word = "1";
  return {word, sign * coeff};
}

}  // namespace

RingTerms parse_ring_expression(const std::string& expr) {
  RingTerms terms;
  std::string current;
  int sign = 1;
  bool seen_content = false;
  for (std::size_t i = 0; i < expr.size(); ++i) {
    const char c = expr[i];
    const bool after_caret = !current.empty() && trim(current).back() == '^';
    if ((c == '+' || c == '-') && !after_caret) {
      if (seen_content) {
        terms.push_back(parse_term(current, sign, expr));
      } else if (!trim(current).empty()) {
        throw ParseError("malformed expression '" + expr + "'");
      }
      current.clear();
      sign = c == '-' ? -1 : 1;
      seen_content = false;
      continue;
    }
    current += c;
    if (!std::isspace(static_cast<unsigned char>(c))) seen_content = true;
  }
  if (!seen_content) throw ParseError("malformed expression '" + expr + "'");
  terms.push_back(parse_term(current, sign, expr));
  return terms;
}

GroupRingElement to_ring_element(const Group& group, PrimeField field, const RingTerms& terms) {
  GroupRingElement out(group, field);
  for (const auto& [word, coeff] : terms) out.add_term(group.evaluate(word), field.reduce(coeff));
  return out;
}

GroupRingElement parse_ring_element(const Group& group, PrimeField field,
                                    const std::string& expr) {
  return to_ring_element(group, field, parse_ring_expression(expr));
}

GroupRingElement GroupDocument::element(const std::string& name_or_expr,
                                        PrimeField field) const {
  if (const auto it = elements.find(name_or_expr); it != elements.end()) {
    return to_ring_element(group, field, it->second);
  }
  return parse_ring_element(group, field, name_or_expr);
}

namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("group file: missing \"") + key + "\"");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("group file: bad value for \"") + key + "\"");
  }
}

std::vector<std::string> optional_names(const json& doc) {
  if (!doc.contains("generator_names")) return {};
  return get_field<std::vector<std::string>>(doc, "generator_names");
}

}  // namespace

GroupDocument parse_group_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("group file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("group file must be a JSON object");
  const auto kind = get_field<std::string>(doc, "kind");
  const std::string name = doc.contains("name") ? get_field<std::string>(doc, "name") : "";

  std::optional<Group> group;
  try {
    if (kind == "finite-table") {
      auto table = get_field<std::vector<std::vector<std::uint32_t>>>(doc, "table");
      auto gens = get_field<std::vector<std::pair<std::string, std::uint32_t>>>(doc, "generators");
      group = Group::finite_table(name.empty() ? "G" : name, std::move(table), std::move(gens));
    } else if (kind == "permutation") {
      const auto degree = get_field<std::size_t>(doc, "degree");
      auto gens = get_field<std::vector<std::pair<std::string, std::vector<std::uint32_t>>>>(
          doc, "generators");
      group = Group::from_permutations(name.empty() ? "G" : name, degree, std::move(gens));
    } else if (kind == "free-abelian") {
      group = Group::free_abelian(get_field<std::size_t>(doc, "rank"), optional_names(doc));
    } else if (kind == "finite-quotient-of") {
      group = Group::finite_quotient(get_field<std::vector<std::int64_t>>(doc, "moduli"),
                                     optional_names(doc));
    } else {
      throw ParseError("unknown group kind '" + kind + "'");
    }
  } catch (const DomainError& e) {
    throw ParseError(std::string("group file: ") + e.what());
  }

  GroupDocument out{*group, std::nullopt, {}};
  if (doc.contains("prime")) {
    out.prime = get_field<std::uint32_t>(doc, "prime");
    if (!is_prime(*out.prime)) {
      throw ParseError("group file: prime " + std::to_string(*out.prime) + " is not prime");
    }
  }
  if (doc.contains("elements")) {
    const auto& elems = doc.at("elements");
    if (!elems.is_object()) throw ParseError("group file: \"elements\" must be an object");
    for (const auto& [key, value] : elems.items()) {
      if (value.is_string()) {
        out.elements[key] = parse_ring_expression(value.get<std::string>());
      } else {
        try {
          out.elements[key] = value.get<RingTerms>();
        } catch (const json::exception&) {
          throw ParseError("group file: element '" + key +
                           "' must be an expression or a list of [word, coeff] pairs");
        }
      }
      // Words must resolve in this group.
      try {
        for (const auto& [word, coeff] : out.elements[key]) (void)out.group.evaluate(word);
      } catch (const DomainError& e) {
        throw ParseError("group file: element '" + key + "': " + e.what());
      }
    }
  }
  return out;
}

GroupDocument load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_document(buf.str());
}

}  // namespace sofic
