#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "muspan/corpus.hpp"
#include "muspan/text.hpp"

using namespace muspan;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("muspan_test_" + std::to_string(++counter) + "_" +
            std::to_string(::getpid()) + ".jsonl");
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

const char* kRecord =
    R"({"query_id": 7, "query": "what color is the sky", )"
    R"("passages": [{"is_selected": 1, "passage_text": "The sky is blue today."}, )"
    R"({"is_selected": 0, "passage_text": "Grass is green."}], )"
    R"("answers": ["Blue"], "wellFormedAnswers": "[]"})";

AnnotatedExample make_annotation(int n_spans, int distance, int start, int boundary) {
  AnnotatedExample ex;
  ex.boundary = boundary;
  ex.edit_distance = distance;
  for (int i = 0; i < n_spans; ++i) ex.spans.push_back({start + 2 * i, start + 2 * i});
  ex.accepted = n_spans > 0;
  return ex;
}

}  // namespace

TEST_CASE("parse_corpus_record reads the published field names") {
  const CorpusRecord rec = parse_corpus_record(kRecord);
  CHECK(rec.query_id == "7");
  CHECK(rec.query == "what color is the sky");
  REQUIRE(rec.passages.size() == 2);
  CHECK(rec.passages[0].is_selected);
  CHECK_FALSE(rec.passages[1].is_selected);
  CHECK(rec.answers == std::vector<std::string>{"Blue"});
  CHECK(rec.well_formed_answers.empty());  // "[]" string form

  CHECK_THROWS(parse_corpus_record("{\"query\": \"x\"}"));
  CHECK_THROWS(parse_corpus_record("not json"));
  CHECK_THROWS(parse_corpus_record(R"({"query_id": 1, "query": "q", "passages": []})"));
}

TEST_CASE("corpus reader streams records in order") {
  TempFile empty("");
  CorpusReader none(empty.path, false);
  CHECK(!none.next().has_value());

  TempFile one(std::string(kRecord) + "\n");
  CorpusReader single(one.path, false);
  const auto rec = single.next();
  REQUIRE(rec.has_value());
  CHECK(rec->query_id == "7");
  CHECK(!single.next().has_value());
  CHECK(single.skipped() == 0);
}

TEST_CASE("corpus reader: lenient skips, strict throws") {
  const std::string bad_line = R"({"query_id": 9, "passages": []})";
  TempFile mixed(std::string(kRecord) + "\n" + bad_line + "\n" + kRecord + "\n");

  CorpusReader lenient(mixed.path, true);
  int count = 0;
  while (lenient.next()) ++count;
  CHECK(count == 2);
  CHECK(lenient.skipped() == 1);

  CorpusReader strict(mixed.path, false);
  CHECK(strict.next().has_value());
  CHECK_THROWS(strict.next());
}

TEST_CASE("corpus reader rejects missing files") {
  CHECK_THROWS(CorpusReader("/nonexistent/muspan.jsonl", true));
}

TEST_CASE("select_answer prefers well-formed answers only in NLG mode") {
  CorpusRecord rec;
  rec.answers = {"No Answer Present.", "short answer"};
  rec.well_formed_answers = {"", "A well formed answer."};
  CHECK(select_answer(rec, true) == "A well formed answer.");
  CHECK(select_answer(rec, false) == "short answer");

  CorpusRecord unanswerable;
  unanswerable.answers = {"No Answer Present."};
  CHECK(!select_answer(unanswerable, false).has_value());
}

TEST_CASE("synthesize_tree builds a right-branching parse") {
  const std::vector<std::string> tokens{"ten", "to", "twenty"};
  const ParseTree t = synthesize_tree(tokens);
  CHECK(leaves(t) == tokens);
  CHECK(serialize(t) == "(X (XX ten) (X (XX to) (XX twenty)))");
  CHECK_THROWS_AS(synthesize_tree({}), std::invalid_argument);
}

TEST_CASE("annotate_record picks the best selected passage") {
  const CorpusRecord rec = parse_corpus_record(
      R"({"query_id": 3, "query": "what color is the sky", )"
      R"("passages": [{"is_selected": 1, "passage_text": "No match here."}, )"
      R"({"is_selected": 1, "passage_text": "The sky is blue."}, )"
      R"({"is_selected": 0, "passage_text": "blue blue blue"}], )"
      R"("answers": ["blue"]})");
  const ParseTree tree = synthesize_tree(tokenize("blue"));
  const auto ex = annotate_record(rec, tree, {8, 9});
  REQUIRE(ex.has_value());
  CHECK(ex->example_id == "3");
  CHECK(ex->accepted);
  CHECK(ex->edit_distance == 0);
  REQUIRE(ex->spans.size() == 1);
  // Matched inside the second selected passage, past the question boundary.
  CHECK(ex->spans[0].start >= ex->boundary);

  const CorpusRecord no_gold = parse_corpus_record(
      R"({"query_id": 4, "query": "q", )"
      R"("passages": [{"is_selected": 0, "passage_text": "text"}], "answers": ["a"]})");
  CHECK(!annotate_record(no_gold, tree, {8, 9}).has_value());
}

TEST_CASE("span_histogram buckets by span count under the cap") {
  std::vector<AnnotatedExample> annotations;
  for (int i = 0; i < 3; ++i) annotations.push_back(make_annotation(1, 0, 0, 0));
  for (int i = 0; i < 2; ++i) annotations.push_back(make_annotation(2, 1, 0, 0));
  annotations.push_back(make_annotation(2, 9, 0, 0));   // over the cap
  annotations.push_back(make_annotation(0, 2, 0, 0));   // no spans
  annotations.push_back(make_annotation(12, 0, 0, 0));  // overflow bucket

  const auto hist = span_histogram(annotations, 4);
  CHECK(hist.at(1) == 3);
  CHECK(hist.at(2) == 2);
  CHECK(hist.at(kHistogramOverflow) == 1);
  CHECK(hist.size() == 3);

  CHECK(span_histogram(annotations, 0).empty());
}

TEST_CASE("coverage_rate counts non-empty annotations under both caps") {
  std::vector<AnnotatedExample> annotations{
      make_annotation(1, 0, 0, 0),
      make_annotation(3, 0, 0, 0),
      make_annotation(5, 0, 0, 0),
  };
  CHECK(coverage_rate(annotations, 3, 100) == doctest::Approx(2.0 / 3));
  CHECK(coverage_rate(annotations, 0, 100) == 0.0);
  CHECK(coverage_rate(annotations, 100, 100) == doctest::Approx(1.0));

  // Monotone in both arguments.
  std::vector<AnnotatedExample> mixed;
  for (int spans = 1; spans <= 6; ++spans)
    for (int d = 0; d <= 5; ++d) mixed.push_back(make_annotation(spans, d, 0, 0));
  double prev = -1;
  for (int cap = 0; cap <= 7; ++cap) {
    const double rate = coverage_rate(mixed, cap, 3);
    CHECK(rate >= prev);
    prev = rate;
  }
  prev = -1;
  for (int d = 0; d <= 6; ++d) {
    const double rate = coverage_rate(mixed, 3, d);
    CHECK(rate >= prev);
    prev = rate;
  }
}

TEST_CASE("single_span_rate requires one passage-side exact span") {
  std::vector<AnnotatedExample> verbatim{
      make_annotation(1, 0, 5, 3),  // single span at 5, boundary 3 -> passage side
      make_annotation(1, 0, 8, 3),
  };
  CHECK(single_span_rate(verbatim) == doctest::Approx(1.0));

  std::vector<AnnotatedExample> abstractive{
      make_annotation(1, 2, 5, 3),  // nonzero distance
      make_annotation(2, 0, 5, 3),  // two spans
      make_annotation(1, 0, 1, 3),  // inside the question segment
  };
  CHECK(single_span_rate(abstractive) == 0.0);
  CHECK(single_span_rate({}) == 0.0);
}

TEST_CASE("compute_stats assembles the full report") {
  std::vector<AnnotatedExample> annotations{
      make_annotation(1, 0, 5, 3),
      make_annotation(2, 1, 5, 3),
      make_annotation(4, 2, 5, 3),
  };
  const CorpusStats stats = compute_stats(annotations, 4, 8, 5);
  CHECK(stats.n_records == 3);
  CHECK(stats.single_span_rate == doctest::Approx(1.0 / 3));
  CHECK(stats.span_histogram.at(1) == 1);
  CHECK(stats.span_histogram.at(2) == 1);
  CHECK(stats.span_histogram.at(4) == 1);
  CHECK(stats.coverage_by_max_spans.at(1) == doctest::Approx(1.0 / 3));
  CHECK(stats.coverage_by_max_spans.at(2) == doctest::Approx(2.0 / 3));
  CHECK(stats.coverage_by_max_spans.at(4) == doctest::Approx(1.0));
  CHECK(stats.coverage_by_max_spans.size() == 5);
}
