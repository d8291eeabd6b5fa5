#include <doctest.h>

#include <sstream>

#include "lefa/aligner.hpp"
#include "lefa/cli.hpp"
#include "lefa/corpus.hpp"
#include "support/fixtures.hpp"
#include "support/mock_server.hpp"

using namespace lefa;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "lefa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kResources = LEFA_RESOURCE_DIR;

}  // namespace

TEST_CASE("version and usage") {
  const auto version = run({"--version"});
  CHECK(version.code == cli::kExitOk);
  CHECK(version.out.find("schema version 1") != std::string::npos);

  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({}).code == cli::kExitError);
  CHECK(run({"frobnicate"}).code == cli::kExitError);
  const auto missing = run({"lint"});
  CHECK(missing.code == cli::kExitError);
  CHECK(missing.err.find("--in") != std::string::npos);
  CHECK(run({"stats", "--in", "x", "--format", "xml"}).code == cli::kExitError);
}

TEST_CASE("segment writes a document") {
  test::TempDir dir;
  test::write_text(dir / "text.txt", "Hola, Sr. Pérez. ¿Vienes hoy? Sí.");
  auto outcome = run({"segment", "--in", (dir / "text.txt").string(), "--resources", kResources,
                      "--role", "adapted", "--theme", "sport"});
  REQUIRE(outcome.code == cli::kExitOk);
  const Document document = document_from_json(nlohmann::json::parse(outcome.out));
  CHECK(document.id == "text");
  CHECK(document.role == Role::Adapted);
  CHECK(document.theme == Theme::Sport);
  CHECK(document.sentences.size() == 3);

  outcome = run({"segment", "--in", (dir / "text.txt").string(), "--out",
                 (dir / "doc.json").string(), "--id", "mine"});
  REQUIRE(outcome.code == cli::kExitOk);
  CHECK(outcome.out.find("mine: ") == 0);
  CHECK(document_from_json(nlohmann::json::parse(test::read_text(dir / "doc.json"))).id == "mine");

  CHECK(run({"segment", "--in", (dir / "text.txt").string(), "--role", "gold"}).code ==
        cli::kExitError);
  const auto absent = run({"segment", "--in", (dir / "none.txt").string()});
  CHECK(absent.code == cli::kExitError);
  CHECK(absent.err.find("MissingResource") != std::string::npos);
}

TEST_CASE("align with a file store, then stats") {
  test::Rng rng(7);
  const auto instance = test::random_instance(rng, 6, 5, 8, 0.0);
  test::TempDir dir;
  test::write_text(dir / "original.json", to_json(instance.original).dump());
  test::write_text(dir / "adapted.json", to_json(instance.adapted).dump());
  test::write_store(dir / "store.jsonl", instance);

  const std::vector<std::string> base{"align",      "--original", (dir / "original.json").string(),
                                      "--adapted",  (dir / "adapted.json").string(),
                                      "--provider", "file:" + (dir / "store.jsonl").string(),
                                      "--dims",     "8"};
  auto args = base;
  args.insert(args.end(), {"--out", (dir / "pairs.jsonl").string()});
  auto outcome = run(args);
  REQUIRE_MESSAGE(outcome.code == cli::kExitOk, outcome.err);

  AlignmentConfig config;
  const AlignedCorpus expected =
      align_embedded(instance.original, instance.adapted, instance.original_vectors,
                     instance.adapted_vectors, config);
  const AlignedCorpus written = import_pairs(dir / "pairs.jsonl");
  REQUIRE(written.pairs.size() == expected.pairs.size());
  for (std::size_t i = 0; i < written.pairs.size(); ++i) {
    CHECK(written.pairs[i].original == expected.pairs[i].original);
    CHECK(written.pairs[i].adapted == expected.pairs[i].adapted);
  }
  CHECK(written.dropped_originals.size() == expected.dropped_originals.size());

  outcome = run({"stats", "--in", (dir / "pairs.jsonl").string(), "--format", "json"});
  REQUIRE(outcome.code == cli::kExitOk);
  const auto stats = nlohmann::json::parse(outcome.out);
  CHECK(stats["sentence_count"] == compute_stats(expected).sentence_count);

  outcome = run({"stats", "--in", (dir / "pairs.jsonl").string()});
  CHECK(outcome.code == cli::kExitOk);
  CHECK_FALSE(outcome.out.empty());

  SUBCASE("wrong dims") {
    auto wrong = base;
    wrong[8] = "16";
    const auto failed = run(wrong);
    CHECK(failed.code == cli::kExitError);
    CHECK(failed.err.find("DimensionMismatch") != std::string::npos);
  }
  SUBCASE("bad threshold") {
    auto bad = base;
    bad.insert(bad.end(), {"--threshold", "1.5"});
    CHECK(run(bad).code == cli::kExitError);
  }
  SUBCASE("TSV output round-trips through stats") {
    auto tsv = base;
    tsv.insert(tsv.end(), {"--out", (dir / "pairs.tsv").string(), "--one-to-one"});
    REQUIRE(run(tsv).code == cli::kExitOk);
    CHECK(run({"stats", "--in", (dir / "pairs.tsv").string()}).code == cli::kExitOk);
  }
}

TEST_CASE("stats on a malformed corpus") {
  test::TempDir dir;
  test::write_text(dir / "bad.jsonl", "{\"schema_version\": 1}\nnot json\n");
  const auto outcome = run({"stats", "--in", (dir / "bad.jsonl").string()});
  CHECK(outcome.code == cli::kExitError);
  CHECK(outcome.err.find("ParseError") != std::string::npos);
}

TEST_CASE("lint exit codes and formats") {
  test::TempDir dir;
  test::write_text(dir / "bad.txt", "Ponte la camiseta; empieza el partido");
  test::write_text(dir / "good.txt", "Los equipos pueden inscribir entre 8 y 16 deportistas.");

  auto outcome = run({"lint", "--in", (dir / "bad.txt").string(), "--resources", kResources});
  CHECK(outcome.code == cli::kExitViolations);
  CHECK(outcome.out.find("bad:0:17-18: G3 violation") != std::string::npos);
  CHECK(outcome.out.find("1 violations") != std::string::npos);

  outcome = run({"lint", "--in", (dir / "good.txt").string(), "--resources", kResources});
  CHECK(outcome.code == cli::kExitOk);

  outcome = run({"lint", "--in", (dir / "bad.txt").string(), "--resources", kResources,
                 "--format", "json", "--applicability"});
  CHECK(outcome.code == cli::kExitViolations);
  const auto json = nlohmann::json::parse(outcome.out);
  CHECK(json["document"] == "bad");
  bool found = false;
  for (const auto& d : json["diagnostics"]) {
    found |= d["guideline"] == "G3" && d["severity"] == "violation";
  }
  CHECK(found);
  CHECK(json["applicability"].contains("applicable_count"));

  outcome = run({"lint", "--in", (dir / "good.txt").string(), "--resources", kResources,
                 "--applicability"});
  CHECK(outcome.out.find("of 21 guidelines applicable") != std::string::npos);

  outcome = run({"lint", "--in", (dir / "good.txt").string(), "--resources", kResources, "--out",
                 (dir / "report.txt").string()});
  CHECK(outcome.code == cli::kExitOk);
  CHECK(test::read_text(dir / "report.txt").find("findings") != std::string::npos);

  SUBCASE("thresholds from flags") {
    test::write_text(dir / "long.txt",
                     "Para la disputa de los encuentros, podrán convocarse un máximo de 14 "
                     "jugadores. Dada la limitación del acta, los jugadores de más se añadirán en "
                     "el reverso de esta y será reflejado por el árbitro");
    const auto lowered = run({"lint", "--in", (dir / "long.txt").string(), "--resources",
                              kResources, "--max-simple-sentence-words", "5", "--format", "json"});
    const auto report = nlohmann::json::parse(lowered.out);
    int g12 = 0;
    for (const auto& d : report["diagnostics"]) g12 += d["guideline"] == "G12";
    CHECK(g12 == 2);
    CHECK(run({"lint", "--in", (dir / "long.txt").string(), "--resources", kResources,
               "--max-commas", "-1"})
              .code == cli::kExitError);
  }
  SUBCASE("config file supplies options") {
    test::write_text(dir / "lefa.toml", "[lint]\nresources = \"" + kResources + "\"\n");
    outcome = run({"--config", (dir / "lefa.toml").string(), "lint", "--in",
                   (dir / "bad.txt").string()});
    CHECK(outcome.code == cli::kExitViolations);
  }
  SUBCASE("missing resources") {
    outcome = run({"lint", "--in", (dir / "bad.txt").string()});
    CHECK(outcome.code == cli::kExitError);
    CHECK(outcome.err.find("MissingResource") != std::string::npos);
    outcome = run({"lint", "--in", (dir / "bad.txt").string(), "--resources",
                   (dir / "nowhere").string()});
    CHECK(outcome.code == cli::kExitError);
  }
  SUBCASE("document JSON input") {
    test::write_text(dir / "doc.json", to_json(test::doc("Hola; adiós.", Role::Adapted, "j")).dump());
    outcome = run({"lint", "--in", (dir / "doc.json").string(), "--resources", kResources});
    CHECK(outcome.code == cli::kExitViolations);
    CHECK(outcome.out.find("j:0:") != std::string::npos);
    test::write_text(dir / "broken.json", "{");
    CHECK(run({"lint", "--in", (dir / "broken.json").string(), "--resources", kResources}).code ==
          cli::kExitError);
  }
}

TEST_CASE("simplify against a mock endpoint") {
  test::GenerationMock mock([](const std::string&) { return "Ponte la camiseta; empieza"; });
  test::TempDir dir;
  test::write_text(dir / "in.txt", "Primera frase.\n\nSegunda frase.\r\n");

  auto outcome = run({"simplify", "--experiment", "E3", "--in", (dir / "in.txt").string(),
                      "--endpoint", mock.url(), "--timeout-ms", "5000"});
  REQUIRE_MESSAGE(outcome.code == cli::kExitOk, outcome.err);
  std::istringstream lines(outcome.out);
  std::vector<nlohmann::json> records;
  for (std::string line; std::getline(lines, line);) records.push_back(nlohmann::json::parse(line));
  REQUIRE(records.size() == 2);
  CHECK(records[0]["input_sentence"] == "Primera frase.");
  CHECK(records[1]["input_sentence"] == "Segunda frase.");
  CHECK(records[0]["config_id"] == "E3");
  CHECK(records[0]["final_output"] == "Ponte la camiseta; empieza");
  CHECK(mock.request_count() == 2);

  outcome = run({"simplify", "--experiment", "E4", "--in", (dir / "in.txt").string(), "--endpoint",
                 mock.url(), "--timeout-ms", "5000", "--audit", "--resources", kResources, "--out",
                 (dir / "out.jsonl").string()});
  REQUIRE_MESSAGE(outcome.code == cli::kExitOk, outcome.err);
  CHECK(mock.request_count() == 8);
  CHECK(outcome.out.find("2 violations in the outputs") != std::string::npos);
  const auto first = nlohmann::json::parse(test::read_text(dir / "out.jsonl").substr(
      0, test::read_text(dir / "out.jsonl").find('\n')));
  CHECK(first["transcript"].size() == 3);
  CHECK(first.contains("diagnostics"));
  CHECK(first.contains("errors"));

  SUBCASE("failing endpoint") {
    mock.fail_always();
    outcome = run({"simplify", "--experiment", "E1", "--in", (dir / "in.txt").string(),
                   "--endpoint", mock.url(), "--retries", "0"});
    CHECK(outcome.code == cli::kExitError);
    CHECK(outcome.err.find("EndpointError") != std::string::npos);
  }
  SUBCASE("unknown experiment") {
    CHECK(run({"simplify", "--experiment", "E9", "--in", (dir / "in.txt").string(), "--endpoint",
               mock.url()})
              .code == cli::kExitError);
  }
  SUBCASE("empty input file") {
    test::write_text(dir / "empty.txt", "\n  \n");
    CHECK(run({"simplify", "--experiment", "E1", "--in", (dir / "empty.txt").string(),
               "--endpoint", mock.url()})
              .code == cli::kExitError);
  }
}

TEST_CASE("evaluate reports errors and compliance") {
  test::TempDir dir;
  test::write_text(dir / "gold.txt", "Los equipos pueden inscribir entre 8 y 16 deportistas.");
  test::write_text(dir / "cand.txt", "Los equipo pueden inscribir deportistas; hoy.");
  auto outcome = run({"evaluate", "--gold", (dir / "gold.txt").string(), "--candidate",
                      (dir / "cand.txt").string(), "--resources", kResources});
  REQUIRE_MESSAGE(outcome.code == cli::kExitOk, outcome.err);
  const auto report = nlohmann::json::parse(outcome.out);
  CHECK(report["gold"] == "gold");
  CHECK(report["candidate"] == "cand");
  REQUIRE_FALSE(report["errors"].empty());
  CHECK(report["errors"][0]["error_class"] == "AgreementError");
  REQUIRE(report["compliance"].size() == 21);
  CHECK(report["compliance"][2]["guideline"] == "G3");
  CHECK(report["compliance"][2]["net_delta"] == 1);

  outcome = run({"evaluate", "--gold", (dir / "gold.txt").string(), "--candidate",
                 (dir / "cand.txt").string(), "--resources", kResources, "--report",
                 (dir / "report.json").string()});
  CHECK(outcome.code == cli::kExitOk);
  CHECK(outcome.out.find("G3: +1") != std::string::npos);
  CHECK(nlohmann::json::parse(test::read_text(dir / "report.json")) == report);
}
