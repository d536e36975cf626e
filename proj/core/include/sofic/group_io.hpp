#ifndef SOFIC_GROUP_IO_HPP
#define SOFIC_GROUP_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sofic/group.hpp"
#include "sofic/group_ring.hpp"

namespace sofic {

/// (word in generators, coefficient) pairs, not yet reduced mod p.
using RingTerms = std::vector<std::pair<std::string, std::int64_t>>;

/// Parses "2 + 2g", "1 + t", "x*y^-1 - 3", "t^-1". Each term is an optional
/// integer coefficient (optionally followed by '*') and a word; a bare integer
/// is a multiple of the identity.
RingTerms parse_ring_expression(const std::string& expr);

GroupRingElement to_ring_element(const Group& group, PrimeField field, const RingTerms& terms);
GroupRingElement parse_ring_element(const Group& group, PrimeField field,
                                    const std::string& expr);

/// One group description document.
///
/// JSON object with "kind" one of
///   "finite-table"        "table": [[...]], "generators": [["a", 1], ...]
///   "permutation"         "degree": d, "generators": [["a", [1,0,2]], ...]
///   "free-abelian"        "rank": d, optional "generator_names"
///   "finite-quotient-of"  "moduli": [n1, ...], optional "generator_names"
/// plus optional "name", "prime", and "elements": {"a": "1+t",
/// "b": [["t^-1", 1], ["1", 2]]}.
struct GroupDocument {
  Group group;
  std::optional<std::uint32_t> prime;
  std::map<std::string, RingTerms> elements;

  /// Named element, or an inline expression when no element has that name.
  GroupRingElement element(const std::string& name_or_expr, PrimeField field) const;
};

GroupDocument parse_group_document(const std::string& text);
GroupDocument load_group_file(const std::string& path);

}  // namespace sofic

#endif  // SOFIC_GROUP_IO_HPP
