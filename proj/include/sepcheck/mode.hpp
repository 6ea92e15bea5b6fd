#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace sepcheck {

// Separability modes, from least to most demanding.
enum class Mode : std::uint8_t { Ind = 0, Sep = 1, Deepsep = 2 };

inline constexpr std::array<Mode, 3> all_modes{Mode::Ind, Mode::Sep, Mode::Deepsep};

constexpr Mode max(Mode a, Mode b) { return a < b ? b : a; }
constexpr Mode min(Mode a, Mode b) { return a < b ? a : b; }

// Requirement composition: if t(α) needs α at `n` and t(...) itself is
// needed at `m`, the argument is needed at mode_compose(m, n).
constexpr Mode mode_compose(Mode m, Mode n) {
  switch (m) {
    case Mode::Ind:
      return Mode::Ind;
    case Mode::Sep:
      return n;
    case Mode::Deepsep:
      return Mode::Deepsep;
  }
  return Mode::Deepsep;
}

constexpr std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Ind:
      return "Ind";
    case Mode::Sep:
      return "Sep";
    case Mode::Deepsep:
      return "Deepsep";
  }
  return "?";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : all_modes) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

}  // namespace sepcheck
