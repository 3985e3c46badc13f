#include "muspan/corpus.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "muspan/text.hpp"

namespace muspan {

namespace {

using nlohmann::json;

std::vector<std::string> read_string_array(const json& v) {
  // The published files sometimes hold the literal string "[]" instead of an
  // empty array; any non-array value maps to an empty list.
  std::vector<std::string> out;
  if (v.is_array())
    for (const json& s : v)
      if (s.is_string()) out.push_back(s.get<std::string>());
  return out;
}

}  // namespace

CorpusRecord parse_corpus_record(const std::string& json_line) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("record is not a JSON object");

  CorpusRecord rec;
  if (!j.contains("query_id")) throw std::runtime_error("missing query_id");
  const json& qid = j["query_id"];
  rec.query_id = qid.is_string() ? qid.get<std::string>() : qid.dump();

  if (!j.contains("query") || !j["query"].is_string())
    throw std::runtime_error("missing query");
  rec.query = j["query"].get<std::string>();
  if (rec.query.empty()) throw std::runtime_error("empty query");

  if (!j.contains("passages") || !j["passages"].is_array() || j["passages"].empty())
    throw std::runtime_error("missing passages");
  for (const json& p : j["passages"]) {
    if (!p.is_object() || !p.contains("passage_text") || !p["passage_text"].is_string())
      throw std::runtime_error("passage without passage_text");
    Passage passage;
    passage.text = p["passage_text"].get<std::string>();
    if (p.contains("is_selected")) {
      const json& sel = p["is_selected"];
      passage.is_selected =
          sel.is_boolean() ? sel.get<bool>()
                           : (sel.is_number() && sel.get<double>() != 0.0);
    }
    rec.passages.push_back(std::move(passage));
  }

  if (j.contains("answers")) rec.answers = read_string_array(j["answers"]);
  if (j.contains("wellFormedAnswers"))
    rec.well_formed_answers = read_string_array(j["wellFormedAnswers"]);
  else if (j.contains("well_formed_answers"))
    rec.well_formed_answers = read_string_array(j["well_formed_answers"]);
  return rec;
}

CorpusReader::CorpusReader(const std::filesystem::path& path, bool lenient)
    : in_(path), path_(path), lenient_(lenient) {
  if (!in_) throw std::runtime_error("cannot open " + path.string());
}

std::optional<CorpusRecord> CorpusReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      return parse_corpus_record(line);
    } catch (const std::exception& e) {
      if (lenient_) {
        ++skipped_;
        continue;
      }
      throw std::runtime_error(path_.string() + ":" + std::to_string(line_) +
                               ": " + e.what());
    }
  }
  return std::nullopt;
}

namespace {

bool usable_answer(const std::string& text) {
  return !text.empty() && text != "No Answer Present.";
}

const std::string* first_usable(const std::vector<std::string>& answers) {
  for (const std::string& a : answers)
    if (usable_answer(a)) return &a;
  return nullptr;
}

}  // namespace

std::optional<std::string> select_answer(const CorpusRecord& record,
                                         bool prefer_well_formed) {
  if (prefer_well_formed) {
    if (const std::string* wf = first_usable(record.well_formed_answers)) return *wf;
    if (const std::string* a = first_usable(record.answers)) return *a;
    return std::nullopt;
  }
  if (const std::string* a = first_usable(record.answers)) return *a;
  return std::nullopt;
}

ParseTree synthesize_tree(std::span<const std::string> answer_tokens) {
  if (answer_tokens.empty())
    throw std::invalid_argument("synthesize_tree: no answer tokens");
  auto leaf = [](const std::string& tok) {
    ParseTree t;
    t.label = "XX";
    t.token = tok;
    return t;
  };
  ParseTree node = leaf(answer_tokens.back());
  for (std::size_t i = answer_tokens.size() - 1; i-- > 0;) {
    ParseTree parent;
    parent.label = "X";
    parent.children.push_back(leaf(answer_tokens[i]));
    parent.children.push_back(std::move(node));
    node = std::move(parent);
  }
  return node;
}

std::optional<AnnotatedExample> annotate_record(const CorpusRecord& record,
                                                const ParseTree& answer_tree,
                                                const AnnotatorConfig& config) {
  const std::vector<std::string> question_tokens = tokenize(record.query);
  std::optional<AnnotatedExample> best;
  for (const Passage& p : record.passages) {
    if (!p.is_selected) continue;
    const std::vector<std::string> passage_tokens = tokenize(p.text);
    AnnotatedExample ex =
        annotate(question_tokens, passage_tokens, answer_tree, config);
    ex.example_id = record.query_id;
    if (!best || ex.edit_distance < best->edit_distance) best = std::move(ex);
  }
  return best;
}

std::map<int, std::size_t> span_histogram(
    std::span<const AnnotatedExample> annotations, int edit_distance_cap) {
  std::map<int, std::size_t> hist;
  for (const AnnotatedExample& a : annotations) {
    if (a.spans.empty() || a.edit_distance >= edit_distance_cap) continue;
    ++hist[std::min(static_cast<int>(a.spans.size()), kHistogramOverflow)];
  }
  return hist;
}

double coverage_rate(std::span<const AnnotatedExample> annotations,
                     int max_spans, int d_max) {
  std::size_t denom = 0, num = 0;
  for (const AnnotatedExample& a : annotations) {
    if (a.spans.empty()) continue;
    ++denom;
    if (static_cast<int>(a.spans.size()) <= max_spans && a.edit_distance <= d_max)
      ++num;
  }
  return denom == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(denom);
}

double single_span_rate(std::span<const AnnotatedExample> annotations) {
  if (annotations.empty()) return 0.0;
  std::size_t num = 0;
  for (const AnnotatedExample& a : annotations) {
    if (a.spans.size() == 1 && a.edit_distance == 0 &&
        a.spans[0].start >= a.boundary)
      ++num;
  }
  return static_cast<double>(num) / static_cast<double>(annotations.size());
}

CorpusStats compute_stats(std::span<const AnnotatedExample> annotations,
                          int edit_distance_cap, int coverage_d_max,
                          int max_spans_sweep) {
  CorpusStats stats;
  stats.n_records = annotations.size();
  stats.single_span_rate = single_span_rate(annotations);
  stats.span_histogram = span_histogram(annotations, edit_distance_cap);
  for (int cap = 1; cap <= max_spans_sweep; ++cap)
    stats.coverage_by_max_spans[cap] = coverage_rate(annotations, cap, coverage_d_max);
  return stats;
}

}  // namespace muspan
