#include "lefa/guidelines.hpp"

#include <array>

namespace lefa {

namespace {

using C = Checkability;
using G = Guideline;

// G3 and G9 are decidable from the surface string. G5 needs reader knowledge
// and G16 needs discourse context, so neither is automated.
constexpr std::array<GuidelineInfo, kGuidelineCount> kCatalog{{
    {G::G1, "6.1.1", std::nullopt, C::Heuristic,
     "One should not write words or phrases with all their letters in uppercase, except when "
     "they are acronyms"},
    {G::G2, "6.1.4", "5.13", C::Heuristic,
     "Linked ideas should be separated by a period instead of a comma"},
    {G::G3, "6.1.7", "5.13", C::Mechanical, "The semicolon (;) should not be used"},
    {G::G4, "6.2.1", "5.1", C::Heuristic, "Use simple and commonly used language"},
    {G::G5, "6.2.2", "5.4", C::Unchecked,
     "Vocabulary should be appropriate for the end user of the document."},
    {G::G6, "6.2.4", "5.2", C::Heuristic, "Avoid using abstract, technical, or complex terms"},
    {G::G7, "6.2.8", std::nullopt, C::Heuristic, "Avoid superlatives"},
    {G::G8, "6.2.10", "5.17", C::Heuristic,
     "Avoid using words in other languages unless they are widely known and properly "
     "explained"},
    {G::G9, "6.2.11", "5.20", C::Mechanical, "Avoid abbreviations"},
    {G::G10, "6.2.15", "5.15", C::Heuristic,
     "Deter from using expressions or metaphors that all readers may not understand unless "
     "they are common in everyday language"},
    {G::G11, "6.2.17", "5.12", C::Heuristic,
     "Use the same word throughout the text to refer to the same object or referent"},
    {G::G12, "6.3.1", "5.7", C::Heuristic, "Use simple sentences and avoid complex sentences"},
    {G::G13, "6.3.2", std::nullopt, C::Heuristic, "Use the present indicative whenever possible"},
    {G::G14, "6.3.3", "5.14", C::Heuristic,
     "One should avoid compound or uncommon verb tenses, as well as the use of conditionals "
     "and subjunctives"},
    {G::G15, "6.3.4", "5.10", C::Heuristic, "Avoid using the passive voice"},
    {G::G16, "6.3.6", std::nullopt, C::Unchecked,
     "Use the imperative only in clear contexts to avoid confusion with the third person "
     "singular of the present indicative"},
    {G::G17, "6.3.7", "5.6", C::Heuristic, "One should avoid the use of impersonal sentences"},
    {G::G18, "6.3.9", "5.1", C::Heuristic,
     "One should avoid using two or more verbs in a row, except for periphrases with modal "
     "verbs like \"should,\" \"want,\" \"know,\" and \"can.\""},
    {G::G19, "6.3.10", "5.9", C::Heuristic,
     "Preferably use affirmative sentences, except in cases such as simple prohibitions, where "
     "negative forms may be clearer and more direct"},
    {G::G20, "6.3.11", "5.9", C::Heuristic, "Avoid negative forms and double negations"},
    {G::G21, "6.3.15", "5.8", C::Heuristic, "Include only one main idea in each sentence"},
}};

constexpr std::array<std::string_view, kGuidelineCount> kNames{
    "G1",  "G2",  "G3",  "G4",  "G5",  "G6",  "G7",  "G8",  "G9",  "G10", "G11",
    "G12", "G13", "G14", "G15", "G16", "G17", "G18", "G19", "G20", "G21"};

}  // namespace

std::span<const GuidelineInfo, kGuidelineCount> guideline_catalog() { return kCatalog; }

const GuidelineInfo& guideline_info(Guideline id) { return kCatalog[guideline_index(id)]; }

std::string_view to_string(Guideline id) { return kNames[guideline_index(id)]; }

std::string_view to_string(Checkability checkability) {
  switch (checkability) {
    case Checkability::Mechanical: return "Mechanical";
    case Checkability::Heuristic: return "Heuristic";
    case Checkability::Unchecked: return "Unchecked";
  }
  return "Unchecked";
}

std::optional<Guideline> parse_guideline(std::string_view text) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == text) return guideline_at(i);
  }
  return std::nullopt;
}

}  // namespace lefa
