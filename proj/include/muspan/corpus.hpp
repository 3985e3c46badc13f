#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "muspan/annotator.hpp"
#include "muspan/tree.hpp"

namespace muspan {

struct Passage {
  std::string text;
  bool is_selected = false;
};

// One MS MARCO-style record. well_formed_answers is empty for QA-only
// records (the published files encode that as the string "[]").
struct CorpusRecord {
  std::string query_id;
  std::string query;
  std::vector<Passage> passages;
  std::vector<std::string> answers;
  std::vector<std::string> well_formed_answers;
};

// Throws std::runtime_error with a field-level message on malformed input.
CorpusRecord parse_corpus_record(const std::string& json_line);

// Streaming JSONL reader; never loads the whole file. Lenient mode skips
// malformed lines (counting them), strict mode throws with the line number.
class CorpusReader {
 public:
  CorpusReader(const std::filesystem::path& path, bool lenient);

  std::optional<CorpusRecord> next();
  std::size_t skipped() const { return skipped_; }
  std::size_t line() const { return line_; }

 private:
  std::ifstream in_;
  std::filesystem::path path_;
  bool lenient_;
  std::size_t skipped_ = 0;
  std::size_t line_ = 0;
};

// Answer string used for annotation: the first usable well-formed answer
// when prefer_well_formed, otherwise the first usable plain answer. Empty
// strings and "No Answer Present." are not usable.
std::optional<std::string> select_answer(const CorpusRecord& record,
                                         bool prefer_well_formed);

// Right-branching parse over the answer tokens, for running without an
// external constituency parse. Matching quality is below a real parse: the
// only subtrees are suffixes and single tokens.
ParseTree synthesize_tree(std::span<const std::string> answer_tokens);

// Annotates against each selected passage and keeps the smallest edit
// distance (ties to the lowest passage index). nullopt when the record has
// no selected passage.
std::optional<AnnotatedExample> annotate_record(const CorpusRecord& record,
                                                const ParseTree& answer_tree,
                                                const AnnotatorConfig& config);

// Span-count histogram over annotations with at least one span and edit
// distance strictly below the cap. Counts above 9 land in the overflow
// bucket, key 10.
inline constexpr int kHistogramOverflow = 10;
std::map<int, std::size_t> span_histogram(std::span<const AnnotatedExample> annotations,
                                          int edit_distance_cap);

// Fraction of annotations with a non-empty span list that would be accepted
// under the given caps. Monotone non-decreasing in both arguments.
double coverage_rate(std::span<const AnnotatedExample> annotations,
                     int max_spans, int d_max);

// Fraction of annotations whose answer matched as exactly one span, at edit
// distance 0, inside the passage segment.
double single_span_rate(std::span<const AnnotatedExample> annotations);

struct CorpusStats {
  std::size_t n_records = 0;
  double single_span_rate = 0;
  std::map<int, std::size_t> span_histogram;
  std::map<int, double> coverage_by_max_spans;
};

CorpusStats compute_stats(std::span<const AnnotatedExample> annotations,
                          int edit_distance_cap, int coverage_d_max,
                          int max_spans_sweep);

}  // namespace muspan
