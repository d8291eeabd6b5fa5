#pragma once

#include <string_view>
#include <vector>

#include "lefa/guidelines.hpp"

namespace lefa::test {

/// A hand-labelled text: whether a linguist expects `guideline` to be flagged.
struct GuidelineCase {
  Guideline guideline;
  std::string_view text;
  bool should_fire;
};

/// At least three positive and three negative cases for each guideline the
/// linter can emit.
const std::vector<GuidelineCase>& guideline_cases();

/// Guidelines the linter never emits.
inline constexpr Guideline kSilentGuidelines[] = {Guideline::G5, Guideline::G16};

}  // namespace lefa::test
