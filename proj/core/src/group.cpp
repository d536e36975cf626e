#include "sofic/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "sofic/errors.hpp"

namespace sofic {

struct Group::Impl {
  GroupKind kind = GroupKind::kFiniteTable;
  std::string name;
  // kFiniteTable
  std::vector<std::vector<std::uint32_t>> table;
  std::vector<std::uint32_t> inverse_index;
  std::uint32_t identity_index = 0;
  // kFreeAbelian / kFiniteQuotient
  std::size_t rank = 0;
  std::vector<std::int64_t> moduli;

  std::vector<Generator> primary;
  std::vector<Generator> symmetric;
};

namespace {

std::vector<std::string> default_names(std::size_t rank) {
  if (rank == 1) return {"t"};
  if (rank <= 3) {
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(rank);
    return names;
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= rank; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

bool valid_name(const std::string& name) {
  if (name.empty() || name == "1") return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  const std::int64_t m = a % n;
  return m < 0 ? m + n : m;
}

GroupElement table_element(std::uint32_t i) { return GroupElement{{static_cast<std::int64_t>(i)}}; }

}  // namespace

// --- construction ----------------------------------------------------------

namespace {

void complete_symmetric(const Group& g, Group::Impl& impl) {
  for (const auto& gen : impl.primary) {
    if (!valid_name(gen.name)) throw DomainError("invalid generator name: '" + gen.name + "'");
  }
  std::set<std::string> names;
  for (const auto& gen : impl.primary) {
    if (!names.insert(gen.name).second) {
      throw DomainError("duplicate generator name: '" + gen.name + "'");
    }
  }
  auto present = [&](const GroupElement& e) {
    return std::any_of(impl.symmetric.begin(), impl.symmetric.end(),
                       [&](const Generator& s) { return s.element == e; });
  };
  for (const auto& gen : impl.primary) {
    if (!present(gen.element)) impl.symmetric.push_back(gen);
    GroupElement inv = g.inverse(gen.element);
    if (!present(inv)) impl.symmetric.push_back({gen.name + "^-1", std::move(inv)});
  }
}

}  // namespace

Group Group::finite_table(std::string name,
                          std::vector<std::vector<std::uint32_t>> table,
                          std::vector<std::pair<std::string, std::uint32_t>> generators) {
  const std::size_t n = table.size();
  if (n == 0) throw DomainError("empty multiplication table");
  for (const auto& row : table) {
    if (row.size() != n) throw DomainError("multiplication table is not square");
    for (auto x : row) {
      if (x >= n) throw DomainError("table entry out of range");
    }
  }
  // Latin square: every row and column is a permutation.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (row_seen[table[i][j]] || col_seen[table[j][i]]) {
        throw DomainError("table is not a Latin square; not a group");
      }
      row_seen[table[i][j]] = col_seen[table[j][i]] = true;
    }
  }
  std::optional<std::uint32_t> identity;
  for (std::uint32_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw DomainError("table has no identity element");

  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    return table[table[a][b]][c] == table[a][table[b][c]];
  };
  if (n <= 128) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!assoc(a, b, c)) throw DomainError("table is not associative");
  } else {
    std::mt19937_64 rng(0x50f1c);
    for (int t = 0; t < 200000; ++t) {
      if (!assoc(rng() % n, rng() % n, rng() % n)) {
        throw DomainError("table is not associative");
      }
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::kFiniteTable;
  impl->name = std::move(name);
  impl->table = std::move(table);
  impl->identity_index = *identity;
  impl->inverse_index.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (impl->table[a][b] == *identity) impl->inverse_index[a] = b;
    }
  }
  for (auto& [gname, idx] : generators) {
    if (idx >= n) throw DomainError("generator '" + gname + "' out of range");
    impl->primary.push_back({gname, table_element(idx)});
  }
  Group g(impl);
  complete_symmetric(g, *impl);

  // B must generate.
  std::vector<bool> seen(n, false);
  std::deque<std::uint32_t> queue{*identity};
  seen[*identity] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (const auto& b : impl->symmetric) {
      const auto y = impl->table[b.element.coords[0]][x];
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        queue.push_back(y);
      }
    }
  }
  if (reached != n) {
    throw DomainError("generators of '" + impl->name + "' do not generate the group");
  }
  return g;
}

Group Group::from_permutations(
    std::string name, std::size_t degree,
    std::vector<std::pair<std::string, std::vector<std::uint32_t>>> generators) {
  using Perm = std::vector<std::uint32_t>;
  for (const auto& [gname, perm] : generators) {
    if (perm.size() != degree) throw DomainError("permutation '" + gname + "' has wrong degree");
    std::vector<bool> hit(degree, false);
    for (auto x : perm) {
      if (x >= degree || hit[x]) throw DomainError("'" + gname + "' is not a permutation");
      hit[x] = true;
    }
  }
  auto compose = [&](const Perm& s, const Perm& t) {
    Perm out(degree);
    for (std::size_t i = 0; i < degree; ++i) out[i] = s[t[i]];
    return out;
  };
  Perm id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);

  constexpr std::size_t kMaxOrder = 4096;
  std::set<Perm> found{id};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    Perm x = std::move(queue.front());
    queue.pop_front();
    for (const auto& [gname, s] : generators) {
      Perm y = compose(s, x);
      if (found.insert(y).second) {
        if (found.size() > kMaxOrder) {
          throw ResourceError("permutation group '" + name + "' exceeds " +
                              std::to_string(kMaxOrder) + " elements");
        }
        queue.push_back(std::move(y));
      }
    }
  }
  // Finite order: the closure under generators is already closed under inverses.
  std::vector<Perm> elems(found.begin(), found.end());
  std::map<Perm, std::uint32_t> index;
  for (std::uint32_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  std::vector<std::vector<std::uint32_t>> table(elems.size(),
                                                std::vector<std::uint32_t>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      table[a][b] = index.at(compose(elems[a], elems[b]));
  std::vector<std::pair<std::string, std::uint32_t>> gens;
  for (const auto& [gname, s] : generators) gens.emplace_back(gname, index.at(s));
  return finite_table(std::move(name), std::move(table), std::move(gens));
}

Group Group::free_abelian(std::size_t rank, std::vector<std::string> generator_names) {
  if (rank == 0) throw DomainError("free abelian rank must be positive");
  if (generator_names.empty()) generator_names = default_names(rank);
  if (generator_names.size() != rank) throw DomainError("need one generator name per rank");
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::kFreeAbelian;
  impl->rank = rank;
  impl->name = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    GroupElement e{std::vector<std::int64_t>(rank, 0)};
    e.coords[i] = 1;
    impl->primary.push_back({generator_names[i], std::move(e)});
  }
  Group g(impl);
  complete_symmetric(g, *impl);
  return g;
}

Group Group::finite_quotient(std::vector<std::int64_t> moduli,
                             std::vector<std::string> generator_names) {
  const std::size_t rank = moduli.size();
  if (rank == 0) throw DomainError("finite quotient needs at least one modulus");
  for (auto n : moduli) {
    if (n < 1) throw DomainError("moduli must be positive");
  }
  if (generator_names.empty()) generator_names = default_names(rank);
  if (generator_names.size() != rank) throw DomainError("need one generator name per modulus");
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::kFiniteQuotient;
  impl->rank = rank;
  impl->moduli = moduli;
  impl->name.clear();
  for (std::size_t i = 0; i < rank; ++i) {
    if (i) impl->name += "x";
    impl->name += "Z/" + std::to_string(moduli[i]);
  }
  for (std::size_t i = 0; i < rank; ++i) {
    GroupElement e{std::vector<std::int64_t>(rank, 0)};
    e.coords[i] = floor_mod(1, moduli[i]);
    impl->primary.push_back({generator_names[i], std::move(e)});
  }
  Group g(impl);
  complete_symmetric(g, *impl);
  return g;
}

// --- arithmetic ------------------------------------------------------------

GroupKind Group::kind() const { return impl_->kind; }
const std::string& Group::name() const { return impl_->name; }

std::size_t Group::arity() const {
  return impl_->kind == GroupKind::kFiniteTable ? 1 : impl_->rank;
}

GroupElement Group::identity() const {
  if (impl_->kind == GroupKind::kFiniteTable) return table_element(impl_->identity_index);
  return GroupElement{std::vector<std::int64_t>(impl_->rank, 0)};
}

bool Group::contains(const GroupElement& g) const {
  if (g.coords.size() != arity()) return false;
  switch (impl_->kind) {
    case GroupKind::kFiniteTable:
      return g.coords[0] >= 0 &&
             static_cast<std::size_t>(g.coords[0]) < impl_->table.size();
    case GroupKind::kFreeAbelian:
      return true;
    case GroupKind::kFiniteQuotient:
      for (std::size_t i = 0; i < impl_->rank; ++i) {
        if (g.coords[i] < 0 || g.coords[i] >= impl_->moduli[i]) return false;
      }
      return true;
  }
  return false;
}

namespace {

void require_member(const Group& group, const GroupElement& g) {
  if (!group.contains(g)) throw DomainError("element is not in group " + group.name());
}

}  // namespace

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  require_member(*this, a);
  require_member(*this, b);
  switch (impl_->kind) {
    case GroupKind::kFiniteTable:
      return table_element(impl_->table[a.coords[0]][b.coords[0]]);
    case GroupKind::kFreeAbelian: {
      GroupElement out = a;
      for (std::size_t i = 0; i < impl_->rank; ++i) out.coords[i] += b.coords[i];
      return out;
    }
    case GroupKind::kFiniteQuotient: {
      GroupElement out = a;
      for (std::size_t i = 0; i < impl_->rank; ++i) {
        out.coords[i] = floor_mod(out.coords[i] + b.coords[i], impl_->moduli[i]);
      }
      return out;
    }
  }
  return {};
}

GroupElement Group::inverse(const GroupElement& a) const {
  require_member(*this, a);
  switch (impl_->kind) {
    case GroupKind::kFiniteTable:
      return table_element(impl_->inverse_index[a.coords[0]]);
    case GroupKind::kFreeAbelian: {
      GroupElement out = a;
      for (auto& c : out.coords) c = -c;
      return out;
    }
    case GroupKind::kFiniteQuotient: {
      GroupElement out = a;
      for (std::size_t i = 0; i < impl_->rank; ++i) {
        out.coords[i] = floor_mod(-out.coords[i], impl_->moduli[i]);
      }
      return out;
    }
  }
  return {};
}

GroupElement Group::power(const GroupElement& a, std::int64_t k) const {
  GroupElement base = k < 0 ? inverse(a) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  GroupElement out = identity();
  while (e) {
    if (e & 1) out = multiply(out, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return out;
}

const std::vector<Generator>& Group::primary_generators() const { return impl_->primary; }
const std::vector<Generator>& Group::generators() const { return impl_->symmetric; }

std::optional<std::size_t> Group::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < impl_->symmetric.size(); ++i) {
    if (impl_->symmetric[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Group::order() const {
  switch (impl_->kind) {
    case GroupKind::kFiniteTable:
      return impl_->table.size();
    case GroupKind::kFreeAbelian:
      throw DomainError("order of an infinite group");
    case GroupKind::kFiniteQuotient: {
      std::size_t n = 1;
      for (auto m : impl_->moduli) n *= static_cast<std::size_t>(m);
      return n;
    }
  }
  return 0;
}

std::vector<GroupElement> Group::elements() const {
  const std::size_t n = order();
  std::vector<GroupElement> out;
  out.reserve(n);
  if (impl_->kind == GroupKind::kFiniteTable) {
    for (std::uint32_t i = 0; i < n; ++i) out.push_back(table_element(i));
    return out;
  }
  // Mixed-radix counting, last coordinate fastest: lexicographic order.
  std::vector<std::int64_t> digits(impl_->rank, 0);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(GroupElement{digits});
    for (std::size_t i = impl_->rank; i-- > 0;) {
      if (++digits[i] < impl_->moduli[i]) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::size_t Group::index_of(const GroupElement& g) const {
  require_member(*this, g);
  if (impl_->kind == GroupKind::kFiniteTable) return static_cast<std::size_t>(g.coords[0]);
  if (impl_->kind == GroupKind::kFreeAbelian) throw DomainError("index_of in an infinite group");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < impl_->rank; ++i) {
    idx = idx * static_cast<std::size_t>(impl_->moduli[i]) + static_cast<std::size_t>(g.coords[i]);
  }
  return idx;
}

const std::vector<std::vector<std::uint32_t>>& Group::table() const {
  if (impl_->kind != GroupKind::kFiniteTable) throw DomainError("group has no explicit table");
  return impl_->table;
}

const std::vector<std::int64_t>& Group::moduli() const { return impl_->moduli; }

// --- text ------------------------------------------------------------------

GroupElement Group::evaluate(const std::string& word) const {
  std::string normalized = word;
  std::replace(normalized.begin(), normalized.end(), '*', ' ');
  std::istringstream in(normalized);
  GroupElement out = identity();
  std::string token;
  while (in >> token) {
    if (token == "1" || token == "e") continue;
    std::string base = token;
    std::int64_t exponent = 1;
    if (const auto caret = token.find('^'); caret != std::string::npos) {
      base = token.substr(0, caret);
      const std::string exp_text = token.substr(caret + 1);
      std::size_t pos = 0;
      try {
        exponent = std::stoll(exp_text, &pos);
      } catch (const std::exception&) {
        pos = std::string::npos;
      }
      if (pos != exp_text.size()) throw ParseError("bad exponent in '" + token + "'");
    }
    const auto it = std::find_if(impl_->primary.begin(), impl_->primary.end(),
                                 [&](const Generator& g) { return g.name == base; });
    if (it == impl_->primary.end()) {
      throw ParseError("unknown generator '" + base + "' in group " + impl_->name);
    }
    out = multiply(out, power(it->element, exponent));
  }
  return out;
}

std::string Group::format(const GroupElement& g) const {
  if (g.coords.size() == 1) return std::to_string(g.coords[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.coords[i]);
  }
  return s + ")";
}

GroupElement Group::parse_element(const std::string& text) const {
  std::string body = text;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw ParseError("unbalanced element '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream in(body);
  GroupElement g;
  std::int64_t v = 0;
  while (in >> v) g.coords.push_back(v);
  if (!in.eof()) throw ParseError("malformed element '" + text + "'");
  if (!contains(g)) throw ParseError("'" + text + "' is not an element of " + impl_->name);
  return g;
}

bool operator==(const Group& a, const Group& b) {
  if (a.impl_ == b.impl_) return true;
  const auto& x = *a.impl_;
  const auto& y = *b.impl_;
  auto same_gens = [](const std::vector<Generator>& p, const std::vector<Generator>& q) {
    if (p.size() != q.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i].name != q[i].name || p[i].element != q[i].element) return false;
    }
    return true;
  };
  return x.kind == y.kind && x.name == y.name && x.rank == y.rank &&
         x.moduli == y.moduli && x.table == y.table && same_gens(x.primary, y.primary);
}

// --- balls -----------------------------------------------------------------

Ball::Ball(int radius, std::vector<GroupElement> elements, std::vector<int> lengths)
    : radius_(radius), elements_(std::move(elements)), lengths_(std::move(lengths)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::optional<std::size_t> Ball::index_of(const GroupElement& g) const {
  const auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Ball::length_of(const GroupElement& g) const {
  const auto i = index_of(g);
  if (!i) return std::nullopt;
  return lengths_[*i];
}

Ball ball(const Group& group, int r, BallOptions options) {
  if (r < 0) throw PreconditionError("ball radius must be non-negative");
  std::vector<GroupElement> elements{group.identity()};
  std::vector<int> lengths{0};
  std::set<GroupElement> seen{group.identity()};
  std::size_t layer_begin = 0;
  for (int k = 1; k <= r; ++k) {
    const std::size_t layer_end = elements.size();
    std::set<GroupElement> next;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& b : group.generators()) {
        GroupElement y = group.multiply(b.element, elements[i]);
        if (!seen.count(y)) next.insert(std::move(y));
      }
    }
    if (next.empty()) break;  // finite group exhausted
    if (elements.size() + next.size() > options.max_elements) {
      throw ResourceError("ball of radius " + std::to_string(r) + " in " + group.name() +
                          " exceeds " + std::to_string(options.max_elements) + " elements");
    }
    for (const auto& y : next) {
      seen.insert(y);
      elements.push_back(y);
      lengths.push_back(k);
    }
    layer_begin = layer_end;
  }
  return Ball(r, std::move(elements), std::move(lengths));
}

std::optional<int> word_length(const Group& group, const GroupElement& g, int max_radius) {
  const Ball b = ball(group, max_radius);
  return b.length_of(g);
}

}  // namespace sofic
