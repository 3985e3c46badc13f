#include "muspan/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace muspan {

void SpanProbabilities::validate() const {
  if (n < 0) throw std::invalid_argument("span probabilities: negative length");
  if (steps.empty()) throw std::invalid_argument("span probabilities: no steps");
  const std::size_t want = static_cast<std::size_t>(n) + 1;
  for (const Step& step : steps) {
    for (const std::vector<double>* dist : {&step.start, &step.end}) {
      if (dist->size() != want)
        throw std::invalid_argument("span probabilities: distribution length != n + 1");
      double sum = 0;
      for (double p : *dist) {
        if (p < 0) throw std::invalid_argument("span probabilities: negative entry");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-6)
        throw std::invalid_argument("span probabilities: distribution does not sum to 1");
    }
  }
}

std::vector<double> apply_conditional_mask(std::span<const double> dist,
                                           std::span<const int> masked) {
  if (dist.empty()) throw std::invalid_argument("apply_conditional_mask: empty distribution");
  const int n = static_cast<int>(dist.size()) - 1;
  std::vector<double> out(dist.begin(), dist.end());
  for (int ix : masked) {
    if (ix < 0 || ix >= n)
      throw std::invalid_argument("apply_conditional_mask: index outside token range");
    out[static_cast<std::size_t>(ix)] = 0.0;
  }
  return out;
}

DecodedAnswer decode_spans(const SpanProbabilities& probs, bool allow_equal) {
  const int n = probs.n;
  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  std::vector<int> masked_ix;
  DecodedAnswer out;

  for (const SpanProbabilities::Step& step : probs.steps) {
    const auto start = apply_conditional_mask(step.start, masked_ix);
    const auto end = apply_conditional_mask(step.end, masked_ix);

    // Valid (k, l) pairs live inside maximal unblocked runs. Scanning each
    // run left to right with a running earliest-argmax prefix of start[]
    // finds the best pair in O(n) and lands on the same winner as full
    // enumeration under the smallest-(k, l) tie rule.
    bool have = false;
    double best = 0;
    int bk = -1, bl = -1;
    int i = 0;
    while (i < n) {
      if (blocked[static_cast<std::size_t>(i)]) {
        ++i;
        continue;
      }
      const int a = i;
      while (i < n && !blocked[static_cast<std::size_t>(i)]) ++i;
      const int b = i - 1;

      double pmax = 0;
      int pk = -1;
      for (int l = a; l <= b; ++l) {
        if (allow_equal && (pk < 0 || start[static_cast<std::size_t>(l)] > pmax)) {
          pmax = start[static_cast<std::size_t>(l)];
          pk = l;
        }
        if (pk >= 0) {
          const double sc = pmax * end[static_cast<std::size_t>(l)];
          if (!have || sc > best ||
              (sc == best && (pk < bk || (pk == bk && l < bl)))) {
            have = true;
            best = sc;
            bk = pk;
            bl = l;
          }
        }
        if (!allow_equal && (pk < 0 || start[static_cast<std::size_t>(l)] > pmax)) {
          pmax = start[static_cast<std::size_t>(l)];
          pk = l;
        }
      }
    }

    const double stop = start[static_cast<std::size_t>(n)] * end[static_cast<std::size_t>(n)];
    if (!have || stop > best) {  // the stop pair loses ties to real pairs
      out.stopped = true;
      break;
    }
    out.spans.push_back({bk, bl});
    for (int j = bk; j <= bl; ++j) {
      blocked[static_cast<std::size_t>(j)] = 1;
      masked_ix.push_back(j);
    }
  }
  return out;
}

std::string join_spans(std::span<const Span> spans, const PackedSequence& seq) {
  return reconstruct(spans, seq);
}

double span_nll(const SpanProbabilities& probs, std::span<const Span> gold) {
  if (gold.size() > probs.steps.size())
    throw std::invalid_argument("span_nll: more gold spans than prediction steps");
  double total = 0;
  for (std::size_t j = 0; j < gold.size(); ++j) {
    const SpanProbabilities::Step& step = probs.steps[j];
    const Span& g = gold[j];
    if (g.start < 0 || g.start > probs.n || g.end < 0 || g.end > probs.n)
      throw std::invalid_argument("span_nll: gold index out of range");
    const double ps = step.start[static_cast<std::size_t>(g.start)];
    const double pe = step.end[static_cast<std::size_t>(g.end)];
    if (ps <= 0.0 || pe <= 0.0) return std::numeric_limits<double>::infinity();
    total -= std::log(ps) + std::log(pe);
  }
  return std::max(total, 0.0);
}

}  // namespace muspan
