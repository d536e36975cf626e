#include "sofic/map_on_v.hpp"

#include <algorithm>
#include <string>

#include "sofic/errors.hpp"

namespace sofic {

MapOnV::MapOnV(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  if (images_.empty()) throw DomainError("MapOnV needs |V| >= 1");
  for (auto x : images_) {
    if (x >= images_.size()) {
      throw DomainError("image " + std::to_string(x) + " outside V of size " +
                        std::to_string(images_.size()));
    }
  }
}

MapOnV MapOnV::identity(std::size_t n) {
  std::vector<std::uint32_t> images(n);
  for (std::size_t v = 0; v < n; ++v) images[v] = static_cast<std::uint32_t>(v);
  return MapOnV(std::move(images));
}

MapOnV MapOnV::constant(std::size_t n, std::uint32_t value) {
  return MapOnV(std::vector<std::uint32_t>(n, value));
}

std::size_t MapOnV::image_size() const {
  std::vector<bool> hit(images_.size(), false);
  std::size_t count = 0;
  for (auto x : images_) {
    if (!hit[x]) {
      hit[x] = true;
      ++count;
    }
  }
  return count;
}

bool MapOnV::is_identity() const {
  for (std::size_t v = 0; v < images_.size(); ++v) {
    if (images_[v] != v) return false;
  }
  return true;
}

namespace {

void require_same_size(const MapOnV& e, const MapOnV& f) {
  if (e.size() != f.size()) {
    throw DomainError("maps on sets of different sizes: " + std::to_string(e.size()) + " vs " +
                      std::to_string(f.size()));
  }
}

std::int64_t count_disagreements(const MapOnV& e, const MapOnV& f) {
  require_same_size(e, f);
  std::int64_t n = 0;
  for (std::size_t v = 0; v < e.size(); ++v) n += e(v) != f(v);
  return n;
}

}  // namespace

MapOnV compose(const MapOnV& e, const MapOnV& f) {
  require_same_size(e, f);
  std::vector<std::uint32_t> images(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) images[v] = e(f(v));
  return MapOnV(std::move(images));
}

Rational similarity_fraction(const MapOnV& e, const MapOnV& f) {
  return Rational(count_disagreements(e, f), static_cast<std::int64_t>(e.size()));
}

Rational agreement_fraction(const MapOnV& e, const MapOnV& f) {
  const auto n = static_cast<std::int64_t>(e.size());
  return Rational(n - count_disagreements(e, f), n);
}

bool epsilon_similar(const MapOnV& e, const MapOnV& f, const Rational& eps) {
  return similarity_fraction(e, f) <= eps;
}

bool epsilon_different(const MapOnV& e, const MapOnV& f, const Rational& eps) {
  return agreement_fraction(e, f) < eps;
}

}  // namespace sofic
