#ifndef SOFIC_MAP_ON_V_HPP
#define SOFIC_MAP_ON_V_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sofic/rational.hpp"

namespace sofic {

/// A self-map of V = {0, ..., n-1}; not necessarily a bijection.
class MapOnV {
 public:
  /// Throws DomainError if an image is out of range or the map is empty.
  explicit MapOnV(std::vector<std::uint32_t> images);

  static MapOnV identity(std::size_t n);
  static MapOnV constant(std::size_t n, std::uint32_t value);

  std::size_t size() const { return images_.size(); }
  std::uint32_t operator()(std::size_t v) const { return images_[v]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  /// |image|; the map is injective on a subset of exactly this size.
  std::size_t image_size() const;
  bool is_identity() const;

  friend bool operator==(const MapOnV&, const MapOnV&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

/// (e o f)(v) = e(f(v)), left action.
MapOnV compose(const MapOnV& e, const MapOnV& f);

/// |{v : e(v) != f(v)}| / |V|.
Rational similarity_fraction(const MapOnV& e, const MapOnV& f);
/// |{v : e(v) == f(v)}| / |V|.
Rational agreement_fraction(const MapOnV& e, const MapOnV& f);

/// e, f are eps-similar when they disagree on at most eps |V| points.
bool epsilon_similar(const MapOnV& e, const MapOnV& f, const Rational& eps);
/// e, f are (1-eps)-different when they agree on fewer than eps |V| points.
bool epsilon_different(const MapOnV& e, const MapOnV& f, const Rational& eps);

}  // namespace sofic

#endif  // SOFIC_MAP_ON_V_HPP
