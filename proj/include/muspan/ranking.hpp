#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace muspan {

struct PassageScore {
  std::string passage_id;
  double relevance = 0;    // r, softmax output
  double unrelevance = 0;  // u, its complement
};

struct RankedCandidateSet {
  std::string question_id;
  std::vector<PassageScore> candidates;
};

// Checks r, u >= 0 and r + u == 1 within 1e-6 for every candidate.
void validate_candidate_set(const RankedCandidateSet& set);

// Softmax over relevance scores, max-subtracted for overflow safety.
std::vector<double> normalize_relevance(std::span<const double> scores);

// Passage ids by descending normalized relevance; ties by ascending id.
std::vector<std::string> rank(const RankedCandidateSet& set);

// One ranking training question: ids of its selected (positive) and
// unselected passages.
struct RankingQuestion {
  std::string question_id;
  std::vector<std::string> selected_ids;
  std::vector<std::string> unselected_ids;
};

struct SamplingPair {
  std::string question_id;
  std::string positive_id;
  std::string negative_id;
  bool operator==(const SamplingPair&) const = default;
};

struct SamplingEpochPlan {
  int epoch = 0;
  std::uint64_t base_seed = 0;
  std::vector<SamplingPair> pairs;
  std::size_t skipped = 0;  // questions lacking a positive or a negative

  bool operator==(const SamplingEpochPlan&) const = default;
};

// Per-question RNG seed:
//   splitmix64(splitmix64(splitmix64(base_seed) ^ epoch) ^ fnv1a64(question_id))
// which keeps plans independent of corpus order and worker count.
std::uint64_t mix_seed(std::uint64_t base_seed, int epoch, std::string_view question_id);

// One (positive, negative) pair per selected passage; each negative is drawn
// uniformly from the question's unselected passages using the per-question
// seeded RNG. Questions without both sides are skipped and counted.
SamplingEpochPlan dynamic_sample(std::span<const RankingQuestion> questions,
                                 int epoch, std::uint64_t base_seed);

// -(1/T) sum_t log r(Q_t, P_t+) + log u(Q_t, P_t-). Pairs hold
// (positive relevance, negative unrelevance) in (0, 1]; a zero score yields
// +infinity.
double ranker_nll(std::span<const std::pair<double, double>> pairs);

}  // namespace muspan
