#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ohba {

/// Colors are dense integers below this cap; a list is a 64-bit mask.
inline constexpr int kPaletteSize = 64;
/// Vertex sets are 32-bit masks; instances are capped at 16 vertices.
inline constexpr int kMaxVertices = 16;

using ColorSet = std::uint64_t;
using VertexSet = std::uint32_t;

/// Error taxonomy shared by every module. The CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    invalid_shape,      // malformed part sizes or wrong target shape
    invalid_edit,       // edge deletion that is not an edge
    invalid_partition,  // contraction class that is not independent
    invalid_input,      // malformed lists, syntax errors, bad specs
    resource,           // scale guard tripped
  };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

constexpr int popcount(std::uint64_t x) noexcept { return std::popcount(x); }

constexpr ColorSet color_bit(int c) noexcept { return ColorSet{1} << c; }
constexpr VertexSet vertex_bit(int v) noexcept { return VertexSet{1} << v; }

inline ColorSet make_colors(std::initializer_list<int> colors) {
  ColorSet s = 0;
  for (int c : colors) {
    if (c < 0 || c >= kPaletteSize) {
      throw Error(Error::Kind::invalid_input, "color " + std::to_string(c) + " outside palette");
    }
    s |= color_bit(c);
  }
  return s;
}

inline ColorSet make_colors(const std::vector<int>& colors) {
  ColorSet s = 0;
  for (int c : colors) {
    if (c < 0 || c >= kPaletteSize) {
      throw Error(Error::Kind::invalid_input, "color " + std::to_string(c) + " outside palette");
    }
    s |= color_bit(c);
  }
  return s;
}

/// Members of a bit set in ascending order.
template <typename Mask>
std::vector<int> members(Mask s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

template <typename Mask>
constexpr int lowest(Mask s) noexcept {
  return std::countr_zero(s);
}

}  // namespace ohba
