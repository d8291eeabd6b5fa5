#include <doctest.h>

#include "lefa/evaluator.hpp"
#include "support/fixtures.hpp"

using namespace lefa;

namespace {

const LintResources& resources() { return test::shipped_resources(); }

std::vector<ErrorInstance> agreement(std::string_view text) {
  return detect_agreement_errors(test::doc(text), resources().morph);
}

std::vector<ErrorInstance> unexplained(std::string_view text) {
  const LintConfig& config = resources().config;
  return detect_unexplained_terms(test::doc(text), config.glossary, &*config.frequency_lexicon,
                                  config.rare_rank_threshold);
}

std::vector<std::string> surfaces(const std::vector<ErrorInstance>& errors, const Document& d) {
  std::vector<std::string> out;
  for (const auto& e : errors) out.push_back(span_text(d.sentences[e.sentence], e.span));
  return out;
}

constexpr std::string_view kS1Original =
    "Para la disputa de los encuentros, podrán convocarse un máximo de 14 jugadores. Dada la "
    "limitación del acta, los jugadores de más se añadirán en el reverso de esta y será "
    "reflejado por el árbitro";
constexpr std::string_view kS1Adaptation =
    "El equipo puede llamar a jugar hasta 14 jugadores para cada partido. En el acta en el que "
    "el árbitro inscribe a los jugadores solo caben 14. Cuando el equipo llama a jugar a más de "
    "14 jugadores,el árbitro escribe sus nombres en la parte de atrás del acta";

}  // namespace

TEST_CASE("determiner and noun must agree") {
  const Document d = test::doc("Los equipo de nueva creación que quieran acceder.");
  const auto errors = detect_agreement_errors(d, resources().morph);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].error_class == ErrorClass::AgreementError);
  CHECK(surfaces(errors, d) == std::vector<std::string>{"Los equipo"});
  CHECK(errors[0].detail.find("plural determiner with singular noun") != std::string::npos);
  CHECK_FALSE(errors[0].related_guideline.has_value());

  CHECK(agreement("Los equipos.").empty());
  CHECK(agreement("El agua está fría.").empty());
  CHECK(agreement("Un agua clara.").empty());
  CHECK(agreement("La mano y el día.").empty());
  CHECK(agreement("Los deportistas y las deportistas.").empty());
  CHECK(agreement("Los vemos mañana.").empty());
  CHECK(agreement("El autobús llega.").empty());
  CHECK(agreement("Los buenos jugadores.").empty());
  CHECK(agreement("El Madrid gana.").empty());
}

TEST_CASE("agreement failures by number and gender") {
  CHECK(agreement("El equipos juega.").size() == 1);
  CHECK(agreement("La equipo gana.").size() == 1);
  CHECK(agreement("Una partido.").size() == 1);
  CHECK(agreement("Los buenos jugador.").size() == 1);
  CHECK(agreement("Las mesa y el mesas.").size() == 2);
}

TEST_CASE("one name per referent") {
  const Document d = test::doc("Los jugadores llegan. Los deportistas entran. Los jugadores salen.");
  const auto errors = detect_term_inconsistency(d, *resources().config.synonym_groups);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].error_class == ErrorClass::TermInconsistency);
  CHECK(errors[0].related_guideline == Guideline::G11);
  CHECK(errors[0].sentence == 1);
  CHECK(surfaces(errors, d) == std::vector<std::string>{"deportistas"});
  CHECK(errors[0].detail.find("jugador") != std::string::npos);

  CHECK(detect_term_inconsistency(test::doc("Los jugadores llegan. El jugador sale."),
                                  *resources().config.synonym_groups)
            .empty());
}

TEST_CASE("term inconsistency does not depend on the gold text") {
  // The same candidate is flagged whatever the reference uses, so the detector
  // takes no gold document at all.
  const Document candidate = test::doc("Los jugadores llegan. Los deportistas entran.");
  const auto groups = *resources().config.synonym_groups;
  CHECK(detect_term_inconsistency(candidate, groups).size() == 1);
  const Document gold = test::doc("Los jugadores llegan. Los deportistas entran.");
  CHECK(detect_term_inconsistency(gold, groups).size() == 1);
}

TEST_CASE("technical terms need an explanation") {
  const auto errors = unexplained("El árbitro firma el acta.");
  const Document d = test::doc("El árbitro firma el acta.");
  std::vector<std::string> found = surfaces(errors, d);
  CHECK(std::find(found.begin(), found.end(), "acta") != found.end());
  for (const auto& e : errors) {
    CHECK(e.error_class == ErrorClass::UnexplainedTerm);
    CHECK(e.related_guideline == Guideline::G6);
  }

  CHECK(unexplained("El equipo firma la lista.").empty());
  CHECK(unexplained("El acta es el documento donde se anotan los jugadores. El equipo firma el "
                    "acta.")
            .empty());
  CHECK(unexplained("El equipo firma el acta (la hoja del partido).").empty());
  CHECK(unexplained("Acta: la hoja del partido.").empty());
}

TEST_CASE("each unexplained term is reported once, at its first use") {
  const Document d = test::doc("Trae la licencia. Sin licencia no juegas. Enseña las licencias.");
  const LintConfig& config = resources().config;
  const auto errors = detect_unexplained_terms(d, config.glossary, &*config.frequency_lexicon,
                                               config.rare_rank_threshold);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].sentence == 0);
  CHECK(surfaces(errors, d) == std::vector<std::string>{"licencia"});
}

TEST_CASE("rare words count as unexplained only with a frequency lexicon") {
  const Document d = test::doc("La prueba es propedéutica.");
  const LintConfig& config = resources().config;
  CHECK(detect_unexplained_terms(d, config.glossary, &*config.frequency_lexicon,
                                 config.rare_rank_threshold)
            .size() == 1);
  CHECK(detect_unexplained_terms(d, config.glossary, nullptr, config.rare_rank_threshold).empty());
}

TEST_CASE("detect_errors combines and orders the three classes") {
  const Document d =
      test::doc("Los equipo firman el acta. El partido empieza. El encuentro acaba.");
  const auto errors = detect_errors(d, resources());
  REQUIRE(errors.size() == 3);
  CHECK(errors[0].error_class == ErrorClass::AgreementError);
  CHECK(errors[1].error_class == ErrorClass::UnexplainedTerm);
  CHECK(errors[2].error_class == ErrorClass::TermInconsistency);
  CHECK(detect_errors(test::doc("Los equipos juegan hoy en casa."), resources()).empty());
}

TEST_CASE("audit hook") {
  const AuditHook hook = make_audit_hook(resources());
  const auto errors = hook(test::doc("Los equipo deben inscribirse en la plataforma."));
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].error_class == ErrorClass::AgreementError);
}

TEST_CASE("compliance comparison") {
  const auto& config = resources().config;
  const auto& morph = resources().morph;
  const Document gold = test::doc("Los equipos pueden inscribir entre 8 y 16 deportistas.");
  CHECK(compare_compliance(gold, gold, config, morph).is_zero());

  const Document semicolon =
      test::doc("Los equipos pueden inscribir entre 8 y 16 deportistas; hoy.");
  const auto delta = compare_compliance(gold, semicolon, config, morph);
  CHECK(delta[Guideline::G3].candidate_violations == 1);
  CHECK(delta[Guideline::G3].gold_violations == 0);
  CHECK(delta[Guideline::G3].net_delta() == 1);
  CHECK_FALSE(delta.is_zero());

  const auto s1 = compare_compliance(test::doc(kS1Adaptation), test::doc(kS1Original), config,
                                     morph);
  CHECK(s1[Guideline::G15].candidate_advisories > s1[Guideline::G15].gold_advisories);
}

TEST_CASE("error taxonomy JSON") {
  CHECK(to_string(ErrorClass::AgreementError) == "AgreementError");
  CHECK(related_guideline(ErrorClass::TermInconsistency) == Guideline::G11);
  CHECK(related_guideline(ErrorClass::UnexplainedTerm) == Guideline::G6);
  CHECK_FALSE(related_guideline(ErrorClass::AgreementError).has_value());

  const auto json = to_json(make_error(ErrorClass::UnexplainedTerm, 2, {4, 8}, "x"));
  std::vector<std::string> keys;
  for (const auto& [key, value] : json.items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"error_class", "sentence", "span", "detail",
                                         "related_guideline"});
  CHECK(json["related_guideline"] == "G6");
  CHECK(to_json(make_error(ErrorClass::AgreementError, 0, {0, 1}, ""))["related_guideline"]
            .is_null());

  const auto& config = resources().config;
  const Document gold = test::doc("Hola.");
  const auto rows = to_json(compare_compliance(gold, test::doc("Hola; adiós."), config,
                                               resources().morph));
  REQUIRE(rows.size() == 21);
  CHECK(rows[2]["guideline"] == "G3");
  CHECK(rows[2]["candidate_violations"] == 1);
  CHECK(rows[2]["net_delta"] == 1);
}
