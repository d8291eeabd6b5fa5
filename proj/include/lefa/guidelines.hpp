#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace lefa {

/// The 21 Easy-to-Read writing guidelines.
enum class Guideline : std::uint8_t {
  G1 = 1, G2, G3, G4, G5, G6, G7, G8, G9, G10, G11,
  G12, G13, G14, G15, G16, G17, G18, G19, G20, G21,
};

inline constexpr std::size_t kGuidelineCount = 21;

/// What automation can honestly claim for a guideline. Mechanical rules emit
/// violations, heuristic rules emit advisories, unchecked rules never emit.
enum class Checkability { Mechanical, Heuristic, Unchecked };

struct GuidelineInfo {
  Guideline id;
  std::optional<std::string_view> une_ref;  // UNE 153101 clause
  std::optional<std::string_view> ue_ref;   // European guidelines clause
  Checkability checkability;
  std::string_view text;
};

std::span<const GuidelineInfo, kGuidelineCount> guideline_catalog();
const GuidelineInfo& guideline_info(Guideline id);

constexpr std::size_t guideline_index(Guideline id) { return static_cast<std::size_t>(id) - 1; }
constexpr Guideline guideline_at(std::size_t index) {
  return static_cast<Guideline>(index + 1);
}

std::string_view to_string(Guideline id);
std::string_view to_string(Checkability checkability);
std::optional<Guideline> parse_guideline(std::string_view text);

}  // namespace lefa
