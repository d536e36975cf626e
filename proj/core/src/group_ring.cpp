#include "sofic/group_ring.hpp"

#include "sofic/errors.hpp"

namespace sofic {

GroupRingElement::GroupRingElement(Group group, PrimeField field)
    : group_(std::move(group)), field_(field) {}

GroupRingElement GroupRingElement::zero(const Group& group, PrimeField field) {
  return GroupRingElement(group, field);
}

GroupRingElement GroupRingElement::one(const Group& group, PrimeField field) {
  return monomial(group, field, group.identity(), 1);
}

GroupRingElement GroupRingElement::monomial(const Group& group, PrimeField field,
                                            const GroupElement& g, std::int64_t coeff) {
  GroupRingElement out(group, field);
  out.add_term(g, field.reduce(coeff));
  return out;
}

GroupRingElement GroupRingElement::from_terms(
    const Group& group, PrimeField field,
    const std::vector<std::pair<GroupElement, std::int64_t>>& terms) {
  GroupRingElement out(group, field);
  for (const auto& [g, c] : terms) out.add_term(g, field.reduce(c));
  return out;
}

std::vector<GroupElement> GroupRingElement::support() const {
  std::vector<GroupElement> out;
  out.reserve(terms_.size());
  for (const auto& [g, c] : terms_) out.push_back(g);
  return out;
}

std::uint32_t GroupRingElement::coefficient(const GroupElement& g) const {
  const auto it = terms_.find(g);
  return it == terms_.end() ? 0 : it->second;
}

void GroupRingElement::add_term(const GroupElement& g, std::uint32_t coeff) {
  if (!group_.contains(g)) throw DomainError("term outside group " + group_.name());
  coeff = field_.reduce(coeff);
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(g, coeff);
  if (!inserted) {
    it->second = field_.add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
  }
}

std::string GroupRingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [g, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c) + "*[" + group_.format(g) + "]";
  }
  return s;
}

bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
  return a.field_ == b.field_ && a.group_ == b.group_ && a.terms_ == b.terms_;
}

namespace {

void require_compatible(const GroupRingElement& a, const GroupRingElement& b) {
  if (a.prime() != b.prime()) {
    throw DomainError("group ring elements over different primes: " +
                      std::to_string(a.prime()) + " vs " + std::to_string(b.prime()));
  }
  if (!(a.group() == b.group())) {
    throw DomainError("group ring elements over different groups: " + a.group().name() +
                      " vs " + b.group().name());
  }
}

}  // namespace

GroupRingElement ring_mul(const GroupRingElement& a, const GroupRingElement& b) {
  require_compatible(a, b);
  const auto& f = a.field();
  GroupRingElement out(a.group(), f);
  for (const auto& [s, x] : a.terms()) {
    for (const auto& [t, y] : b.terms()) {
      out.add_term(a.group().multiply(s, t), f.mul(x, y));
    }
  }
  return out;
}

GroupRingElement ring_add(const GroupRingElement& a, const GroupRingElement& b) {
  require_compatible(a, b);
  GroupRingElement out = a;
  for (const auto& [g, c] : b.terms()) out.add_term(g, c);
  return out;
}

GroupRingElement ring_sub(const GroupRingElement& a, const GroupRingElement& b) {
  require_compatible(a, b);
  GroupRingElement out = a;
  for (const auto& [g, c] : b.terms()) out.add_term(g, a.field().neg(c));
  return out;
}

GroupRingElement ring_scale(const GroupRingElement& a, std::int64_t k) {
  const std::uint32_t factor = a.field().reduce(k);
  GroupRingElement out(a.group(), a.field());
  for (const auto& [g, c] : a.terms()) out.add_term(g, a.field().mul(c, factor));
  return out;
}

bool ring_is_one(const GroupRingElement& a) {
  return a.terms().size() == 1 && a.terms().begin()->first == a.group().identity() &&
         a.terms().begin()->second == 1;
}

FpMatrix regular_representation(const GroupRingElement& a) {
  const Group& g = a.group();
  const auto elems = g.elements();
  FpMatrix m(elems.size(), elems.size(), a.field());
  for (std::size_t h = 0; h < elems.size(); ++h) {
    for (const auto& [s, c] : a.terms()) {
      m.accumulate(g.index_of(g.multiply(s, elems[h])), h, c);
    }
  }
  return m;
}

GroupRingElement element_from_regular_column(const Group& group, const FpMatrix& m,
                                             std::size_t column) {
  const auto elems = group.elements();
  if (m.rows() != elems.size() || column >= m.cols()) {
    throw DomainError("matrix does not match the order of " + group.name());
  }
  GroupRingElement out(group, m.field());
  for (std::size_t r = 0; r < elems.size(); ++r) out.add_term(elems[r], m(r, column));
  return out;
}

std::optional<GroupRingElement> right_inverse(const GroupRingElement& a) {
  const auto inv = inverse(regular_representation(a));
  if (!inv) return std::nullopt;
  // L_a b = e_1 exactly when a b = 1.
  return element_from_regular_column(a.group(), *inv, a.group().index_of(a.group().identity()));
}

// --- matrices over the group ring -------------------------------------------

RingMatrix::RingMatrix(std::size_t n, const Group& group, PrimeField field)
    : n_(n), group_(group), field_(field),
      entries_(n * n, GroupRingElement::zero(group, field)) {}

RingMatrix RingMatrix::identity(std::size_t n, const Group& group, PrimeField field) {
  RingMatrix m(n, group, field);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GroupRingElement::one(group, field);
  return m;
}

bool RingMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i == j ? !ring_is_one(at(i, j)) : !at(i, j).is_zero()) return false;
    }
  }
  return true;
}

RingMatrix ring_matrix_mul(const RingMatrix& a, const RingMatrix& b) {
  if (a.size() != b.size()) throw DomainError("ring matrix sizes differ");
  if (!(a.group() == b.group()) || a.field() != b.field()) {
    throw DomainError("ring matrices over different rings");
  }
  RingMatrix out(a.size(), a.group(), a.field());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      GroupRingElement acc = GroupRingElement::zero(a.group(), a.field());
      for (std::size_t k = 0; k < a.size(); ++k) {
        acc = ring_add(acc, ring_mul(a.at(i, k), b.at(k, j)));
      }
      out.at(i, j) = std::move(acc);
    }
  }
  return out;
}

FpMatrix regular_representation(const RingMatrix& a) {
  const std::size_t order = a.group().order();
  FpMatrix m(a.size() * order, a.size() * order, a.field());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      const FpMatrix block = regular_representation(a.at(i, j));
      for (std::size_t r = 0; r < order; ++r) {
        for (std::size_t c = 0; c < order; ++c) m.set(i * order + r, j * order + c, block(r, c));
      }
    }
  }
  return m;
}

RingMatrix ring_matrix_from_blocks(const Group& group, const FpMatrix& m, std::size_t n) {
  const std::size_t order = group.order();
  if (m.rows() != n * order || m.cols() != n * order) {
    throw DomainError("block matrix has the wrong size");
  }
  const std::size_t id = group.index_of(group.identity());
  const auto elems = group.elements();
  RingMatrix out(n, group, m.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      GroupRingElement e(group, m.field());
      for (std::size_t r = 0; r < order; ++r) e.add_term(elems[r], m(i * order + r, j * order + id));
      out.at(i, j) = std::move(e);
    }
  }
  return out;
}

std::optional<RingMatrix> right_inverse(const RingMatrix& a) {
  const auto inv = inverse(regular_representation(a));
  if (!inv) return std::nullopt;
  return ring_matrix_from_blocks(a.group(), *inv, a.size());
}

}  // namespace sofic
