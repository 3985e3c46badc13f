#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace muspan {

// The tokenization every text metric runs on: lowercase, every ASCII
// punctuation character becomes a standalone token, whitespace splits.
std::vector<std::string> normalize_eval_text(std::string_view text);

struct EvalPair {
  std::string candidate;
  std::vector<std::string> references;  // at least one
};

// Corpus-level unigram precision with per-type clipping against the maximum
// reference count, times a brevity penalty exp(1 - r/c) when the candidate
// corpus is shorter than the closest-length references.
double bleu1(std::span<const EvalPair> pairs);

int lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// LCS F-measure: P = LCS/|cand|, R = LCS/|ref|, F = (1+b^2)PR / (R + b^2 P);
// 0 when either side is empty or nothing is shared.
double rouge_l_tokens(std::span<const std::string> candidate,
                      std::span<const std::string> reference, double beta);
double rouge_l(std::string_view candidate, std::string_view reference, double beta);
double rouge_l_max(std::string_view candidate,
                   std::span<const std::string> references, double beta);

struct RankedQuery {
  std::vector<std::string> ranking;   // passage ids, best first
  std::set<std::string> relevant;     // non-empty
};

double mean_average_precision(std::span<const RankedQuery> queries);
double mean_reciprocal_rank(std::span<const RankedQuery> queries);

struct EvalReport {
  double bleu1 = 0;
  double rouge_l = 0;  // mean over examples of the best reference's score
  std::size_t n_examples = 0;
  std::vector<std::pair<std::string, double>> per_example;  // (id, rouge_l)
};

// ids runs parallel to pairs. Per-example ROUGE-L scores are computed
// data-parallel when workers > 1 and reduced in example order, so the report
// does not depend on the worker count.
EvalReport evaluate(std::span<const std::string> example_ids,
                    std::span<const EvalPair> pairs, double beta,
                    bool keep_per_example, int workers = 1);

struct RankingReport {
  double map = 0;
  double mrr = 0;
  std::size_t n_queries = 0;
};

RankingReport evaluate_rankings(std::span<const RankedQuery> queries);

}  // namespace muspan
