#ifndef SOFIC_FAMILY_HPP
#define SOFIC_FAMILY_HPP

#include <cstdint>
#include <vector>

#include "sofic/group.hpp"
#include "sofic/sofic_approx.hpp"

namespace sofic {

/// Refining families of approximations: level k (1-based) uses F = N_r and
/// epsilon = 2^-k, so later levels lie in every tail {H in F, eps <= delta}.

/// Z^d: cubes of the given sides. Finite groups: a level of size n is the
/// regular action amplified n / |G| times; n must be a multiple of |G|.
std::vector<SoficApproximation> folner_family(const Group& group,
                                              const std::vector<std::int64_t>& sides,
                                              int radius);

/// Z^d (or a finite quotient of it): reduction onto (Z/n)^d for each order n.
/// Finite groups: the regular action amplified n / |G| times.
std::vector<SoficApproximation> quotient_family(const Group& group,
                                                const std::vector<std::int64_t>& orders,
                                                int radius);

/// 2^-k, saturating at 2^-62.
Rational level_epsilon(std::size_t level);

}  // namespace sofic

#endif  // SOFIC_FAMILY_HPP
