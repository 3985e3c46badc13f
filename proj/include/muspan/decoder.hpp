#pragma once

#include <span>
#include <string>
#include <vector>

#include "muspan/annotator.hpp"

namespace muspan {

// Externally produced per-step start/end distributions over n + 1 positions;
// index n is the virtual stop position.
struct SpanProbabilities {
  int n = 0;
  struct Step {
    std::vector<double> start;  // n + 1 entries, sums to 1
    std::vector<double> end;
  };
  std::vector<Step> steps;

  // Throws std::invalid_argument on wrong vector lengths, negative entries,
  // or sums off by more than 1e-6.
  void validate() const;
};

struct DecodedAnswer {
  std::vector<Span> spans;
  bool stopped = false;  // the stop span won an argmax before steps ran out
};

// Entries at masked token indices set to 0 for argmax purposes; no
// renormalization. The stop index (dist.size() - 1) is never maskable and
// masking it throws std::invalid_argument.
std::vector<double> apply_conditional_mask(std::span<const double> dist,
                                           std::span<const int> masked);

// Greedy per-step argmax of start[k]*end[l] over pairs with k < l (k <= l
// when allow_equal) whose whole index range is unmasked, plus the virtual
// stop pair (n, n). An emitted span masks its entire range for later steps,
// which keeps the output pairwise disjoint. Ties break toward the smallest
// k, then the smallest l; the stop pair therefore loses ties to real pairs.
DecodedAnswer decode_spans(const SpanProbabilities& probs, bool allow_equal);

// Same contract as reconstruct(): lowercased tokens, single spaces, spans in
// prediction order.
std::string join_spans(std::span<const Span> spans, const PackedSequence& seq);

// -sum_j log start_j[s_j] + log end_j[e_j] over a gold span list (training
// lists end with the stop span (n, n)). Returns +infinity when any gold
// position carries zero mass.
double span_nll(const SpanProbabilities& probs, std::span<const Span> gold);

}  // namespace muspan
