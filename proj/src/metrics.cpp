#include "muspan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

#include "muspan/parallel.hpp"
#include "muspan/text.hpp"

namespace muspan {

std::vector<std::string> normalize_eval_text(std::string_view text) {
  return tokenize(to_lower_ascii(text));
}

double bleu1(std::span<const EvalPair> pairs) {
  if (pairs.empty()) throw std::invalid_argument("bleu1: empty corpus");
  long long matched = 0;
  long long cand_len = 0;
  long long ref_len = 0;
  for (const EvalPair& pair : pairs) {
    if (pair.references.empty())
      throw std::invalid_argument("bleu1: candidate without references");
    const auto cand = normalize_eval_text(pair.candidate);

    std::map<std::string, long long> cand_counts;
    for (const std::string& t : cand) ++cand_counts[t];

    // Clip counts against the maximum count any single reference provides;
    // track the reference length closest to the candidate's (ties go to the
    // shorter reference).
    std::map<std::string, long long> clip;
    long long closest = -1;
    for (const std::string& ref_text : pair.references) {
      const auto ref = normalize_eval_text(ref_text);
      std::map<std::string, long long> ref_counts;
      for (const std::string& t : ref) ++ref_counts[t];
      for (const auto& [tok, count] : ref_counts)
        clip[tok] = std::max(clip[tok], count);
      const long long rl = static_cast<long long>(ref.size());
      const long long cl = static_cast<long long>(cand.size());
      if (closest < 0 || std::llabs(rl - cl) < std::llabs(closest - cl) ||
          (std::llabs(rl - cl) == std::llabs(closest - cl) && rl < closest))
        closest = rl;
    }
    for (const auto& [tok, count] : cand_counts) {
      auto it = clip.find(tok);
      if (it != clip.end()) matched += std::min(count, it->second);
    }
    cand_len += static_cast<long long>(cand.size());
    ref_len += closest;
  }
  if (cand_len == 0) return 0.0;
  const double precision = static_cast<double>(matched) / static_cast<double>(cand_len);
  const double bp = cand_len < ref_len
                        ? std::exp(1.0 - static_cast<double>(ref_len) /
                                             static_cast<double>(cand_len))
                        : 1.0;
  return bp * precision;
}

int lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<int> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l_tokens(std::span<const std::string> candidate,
                      std::span<const std::string> reference, double beta) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const int lcs = lcs_length(candidate, reference);
  if (lcs == 0) return 0.0;
  const double p = static_cast<double>(lcs) / static_cast<double>(candidate.size());
  const double r = static_cast<double>(lcs) / static_cast<double>(reference.size());
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

double rouge_l(std::string_view candidate, std::string_view reference, double beta) {
  const auto cand = normalize_eval_text(candidate);
  const auto ref = normalize_eval_text(reference);
  return rouge_l_tokens(cand, ref, beta);
}

double rouge_l_max(std::string_view candidate,
                   std::span<const std::string> references, double beta) {
  double best = 0.0;
  for (const std::string& ref : references)
    best = std::max(best, rouge_l(candidate, ref, beta));
  return best;
}

double mean_average_precision(std::span<const RankedQuery> queries) {
  if (queries.empty())
    throw std::invalid_argument("mean_average_precision: no queries");
  double sum = 0;
  for (const RankedQuery& q : queries) {
    if (q.relevant.empty())
      throw std::invalid_argument("mean_average_precision: query with empty relevant set");
    std::set<std::string> seen;
    int hits = 0;
    double ap = 0;
    for (std::size_t i = 0; i < q.ranking.size(); ++i) {
      if (q.relevant.count(q.ranking[i]) != 0 && seen.insert(q.ranking[i]).second) {
        ++hits;
        ap += static_cast<double>(hits) / static_cast<double>(i + 1);
      }
    }
    sum += ap / static_cast<double>(q.relevant.size());
  }
  return sum / static_cast<double>(queries.size());
}

double mean_reciprocal_rank(std::span<const RankedQuery> queries) {
  if (queries.empty())
    throw std::invalid_argument("mean_reciprocal_rank: no queries");
  double sum = 0;
  for (const RankedQuery& q : queries) {
    if (q.relevant.empty())
      throw std::invalid_argument("mean_reciprocal_rank: query with empty relevant set");
    for (std::size_t i = 0; i < q.ranking.size(); ++i) {
      if (q.relevant.count(q.ranking[i]) != 0) {
        sum += 1.0 / static_cast<double>(i + 1);
        break;
      }
    }
  }
  return sum / static_cast<double>(queries.size());
}

EvalReport evaluate(std::span<const std::string> example_ids,
                    std::span<const EvalPair> pairs, double beta,
                    bool keep_per_example, int workers) {
  if (pairs.empty()) throw std::invalid_argument("evaluate: empty corpus");
  if (example_ids.size() != pairs.size())
    throw std::invalid_argument("evaluate: ids and pairs differ in length");

  std::vector<std::size_t> index(pairs.size());
  std::iota(index.begin(), index.end(), 0);
  const std::vector<double> scores = parallel_map(
      index,
      [&](const std::size_t& i) {
        return rouge_l_max(pairs[i].candidate, pairs[i].references, beta);
      },
      workers);

  EvalReport report;
  report.bleu1 = bleu1(pairs);
  double sum = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {  // serial fold, fixed order
    sum += scores[i];
    if (keep_per_example) report.per_example.emplace_back(example_ids[i], scores[i]);
  }
  report.rouge_l = sum / static_cast<double>(scores.size());
  report.n_examples = pairs.size();
  return report;
}

RankingReport evaluate_rankings(std::span<const RankedQuery> queries) {
  RankingReport report;
  report.map = mean_average_precision(queries);
  report.mrr = mean_reciprocal_rank(queries);
  report.n_queries = queries.size();
  return report;
}

}  // namespace muspan
