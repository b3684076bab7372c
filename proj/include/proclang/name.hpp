#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace proclang {

// Source names are plain identifiers. Reserved names (minted by encodings)
// print as `base$N`, fresh names (minted by renaming) as `base'N`, so the
// three spaces never collide and every printed name parses back.
enum class NameOrigin : std::uint8_t { kSource, kReserved, kFresh };

class Name {
 public:
  Name() = default;

  static Name source(std::string id) { return Name(NameOrigin::kSource, std::move(id), 0); }
  static Name reserved(std::string base, std::uint32_t counter) {
    return Name(NameOrigin::kReserved, std::move(base), counter);
  }
  static Name fresh(std::string base, std::uint32_t counter) {
    return Name(NameOrigin::kFresh, std::move(base), counter);
  }

  NameOrigin origin() const { return origin_; }
  const std::string& base() const { return base_; }
  std::uint32_t counter() const { return counter_; }
  bool is_source() const { return origin_ == NameOrigin::kSource; }

  std::string str() const;

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name&, const Name&) = default;

 private:
  Name(NameOrigin origin, std::string base, std::uint32_t counter)
      : origin_(origin), base_(std::move(base)), counter_(counter) {}

  NameOrigin origin_ = NameOrigin::kSource;
  std::string base_;
  std::uint32_t counter_ = 0;
};

bool is_keyword(const std::string& word);

}  // namespace proclang

template <>
struct std::hash<proclang::Name> {
  std::size_t operator()(const proclang::Name& n) const noexcept {
    std::size_t h = std::hash<std::string>{}(n.base());
    h ^= (static_cast<std::size_t>(n.counter()) << 2) + static_cast<std::size_t>(n.origin()) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
