#include "muspan/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace muspan {

void validate_candidate_set(const RankedCandidateSet& set) {
  for (const PassageScore& c : set.candidates) {
    if (c.relevance < 0 || c.unrelevance < 0 ||
        std::abs(c.relevance + c.unrelevance - 1.0) > 1e-6)
      throw std::invalid_argument("question " + set.question_id + " passage " +
                                  c.passage_id +
                                  ": (r, u) is not a 2-way softmax output");
  }
}

std::vector<double> normalize_relevance(std::span<const double> scores) {
  if (scores.empty())
    throw std::invalid_argument("normalize_relevance: empty score list");
  const double peak = *std::max_element(scores.begin(), scores.end());
  std::vector<double> out(scores.size());
  double z = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(scores[i] - peak);
    z += out[i];
  }
  for (double& v : out) v /= z;
  return out;
}

std::vector<std::string> rank(const RankedCandidateSet& set) {
  if (set.candidates.empty()) return {};
  std::vector<double> scores(set.candidates.size());
  for (std::size_t i = 0; i < set.candidates.size(); ++i)
    scores[i] = set.candidates[i].relevance;
  const std::vector<double> rhat = normalize_relevance(scores);

  std::vector<std::size_t> order(set.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rhat[a] != rhat[b]) return rhat[a] > rhat[b];
    return set.candidates[a].passage_id < set.candidates[b].passage_id;
  });

  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (std::size_t i : order) ids.push_back(set.candidates[i].passage_id);
  return ids;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Uniform over [0, bound) from the raw engine stream. uniform_int_distribution
// is implementation-defined, so plans would differ across standard libraries;
// rejection sampling keeps them bit-identical everywhere.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t base_seed, int epoch,
                       std::string_view question_id) {
  const std::uint64_t e = static_cast<std::uint64_t>(epoch);
  return splitmix64(splitmix64(splitmix64(base_seed) ^ e) ^ fnv1a64(question_id));
}

SamplingEpochPlan dynamic_sample(std::span<const RankingQuestion> questions,
                                 int epoch, std::uint64_t base_seed) {
  SamplingEpochPlan plan;
  plan.epoch = epoch;
  plan.base_seed = base_seed;
  for (const RankingQuestion& q : questions) {
    if (q.selected_ids.empty() || q.unselected_ids.empty()) {
      ++plan.skipped;
      continue;
    }
    std::mt19937_64 rng(mix_seed(base_seed, epoch, q.question_id));
    for (const std::string& pos : q.selected_ids) {
      const std::string& neg =
          q.unselected_ids[bounded_uniform(rng, q.unselected_ids.size())];
      plan.pairs.push_back({q.question_id, pos, neg});
    }
  }
  return plan;
}

double ranker_nll(std::span<const std::pair<double, double>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("ranker_nll: empty pair list");
  double total = 0;
  bool zero_score = false;
  for (const auto& [r_pos, u_neg] : pairs) {
    if (r_pos < 0 || u_neg < 0 || r_pos > 1 + 1e-9 || u_neg > 1 + 1e-9)
      throw std::invalid_argument("ranker_nll: score outside [0, 1]");
    if (r_pos == 0 || u_neg == 0)
      zero_score = true;
    else
      total -= std::log(r_pos) + std::log(u_neg);
  }
  if (zero_score) return std::numeric_limits<double>::infinity();
  return std::max(total / static_cast<double>(pairs.size()), 0.0);
}

}  // namespace muspan
