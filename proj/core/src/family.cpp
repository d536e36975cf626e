#include "sofic/family.hpp"

#include <algorithm>
#include <string>

#include "sofic/errors.hpp"

namespace sofic {

Rational level_epsilon(std::size_t level) {
  const std::size_t k = std::min<std::size_t>(std::max<std::size_t>(level, 1), 62);
  return Rational(1, std::int64_t{1} << k);
}

namespace {

std::string level_label(const char* kind, std::int64_t size, int radius, std::size_t level) {
  return std::string(kind) + " n=" + std::to_string(size) + " r=" + std::to_string(radius) +
         " eps=" + to_string(level_epsilon(level));
}

// Finite groups: a level of size n is n / |G| copies of the regular action.
std::size_t copies_for(const Group& group, std::int64_t size) {
  const auto order = static_cast<std::int64_t>(group.order());
  if (size % order != 0) {
    throw DomainError("level size " + std::to_string(size) + " is not a multiple of |G| = " +
                      std::to_string(order));
  }
  return static_cast<std::size_t>(size / order);
}

void check_sizes(const std::vector<std::int64_t>& sizes) {
  if (sizes.empty()) throw DomainError("empty schedule");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw DomainError("schedule sizes must be positive");
    if (i && sizes[i] < sizes[i - 1]) throw DomainError("schedule must be nondecreasing");
  }
}

}  // namespace

std::vector<SoficApproximation> folner_family(const Group& group,
                                              const std::vector<std::int64_t>& sides,
                                              int radius) {
  check_sizes(sides);
  const auto F = ball(group, radius).elements();
  std::vector<SoficApproximation> out;
  for (std::size_t k = 0; k < sides.size(); ++k) {
    const auto label = level_label("folner", sides[k], radius, k + 1);
    if (group.kind() == GroupKind::kFreeAbelian) {
      out.push_back(folner_approx(group, BoxWindow::cube(group.arity(), sides[k]), F,
                                  level_epsilon(k + 1), label));
    } else {
      out.push_back(amplify(folner_approx(group, WholeGroup{}, F, level_epsilon(k + 1), label),
                            copies_for(group, sides[k])));
    }
  }
  return out;
}

std::vector<SoficApproximation> quotient_family(const Group& group,
                                                const std::vector<std::int64_t>& orders,
                                                int radius) {
  check_sizes(orders);
  const auto F = ball(group, radius).elements();
  std::vector<SoficApproximation> out;
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const auto label = level_label("quotient", orders[k], radius, k + 1);
    if (group.is_finite()) {
      out.push_back(amplify(
          quotient_approx(QuotientHom::identity(group), F, level_epsilon(k + 1), label),
          copies_for(group, orders[k])));
    } else {
      const auto hom = QuotientHom::reduction(
          group, std::vector<std::int64_t>(group.arity(), orders[k]));
      out.push_back(quotient_approx(hom, F, level_epsilon(k + 1), label));
    }
  }
  return out;
}

}  // namespace sofic
