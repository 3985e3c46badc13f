#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "muspan/tree.hpp"

namespace muspan {

// Question and passage tokens packed into one search sequence. Matching runs
// on match_keys (lowercased surface forms); a match never straddles the
// question/passage boundary.
struct PackedSequence {
  std::vector<std::string> tokens;
  std::vector<std::string> match_keys;
  std::size_t boundary = 0;  // index of the first passage token

  std::size_t size() const { return tokens.size(); }
};

// Inclusive token-index pair into a PackedSequence.
struct Span {
  int start = 0;
  int end = 0;
  bool operator==(const Span&) const = default;
};

struct AnnotatorConfig {
  int d_max = 32;     // edit-distance threshold, characters
  int max_spans = 9;  // accepted examples keep at most this many pruned spans
};

struct AnnotatedExample {
  std::string example_id;
  std::vector<Span> spans;
  int boundary = 0;
  std::string reconstructed;
  int edit_distance = 0;
  bool accepted = false;
};

PackedSequence pack(std::span<const std::string> question_tokens,
                    std::span<const std::string> passage_tokens);

// Index of the first occurrence of pattern in seq.match_keys that lies
// entirely inside one segment, or nullopt. O(|pattern| + |seq|).
std::optional<std::size_t> kmp_find(std::span<const std::string> pattern,
                                    const PackedSequence& seq);

// Character-level Levenshtein distance with unit insert/delete/substitute
// costs, computed over bytes.
int edit_distance(std::string_view a, std::string_view b);

// Lowercased surface tokens of each span joined by single spaces, spans in
// list order. Throws std::out_of_range on an invalid span.
std::string reconstruct(std::span<const Span> spans, const PackedSequence& seq);

// Repeatedly merges list-adjacent spans that are contiguous in the text
// (next.start == prev.end + 1). Input spans must be pairwise non-overlapping;
// throws std::invalid_argument otherwise. Idempotent.
std::vector<Span> prune(std::span<const Span> spans);

// Walks the answer tree depth-first, accepting every subtree whose leaf
// sequence occurs inside one segment of the packed input and descending into
// the rest. The matched spans are gated on the edit distance between the
// answer and its reconstruction, then merged.
AnnotatedExample annotate(std::span<const std::string> question_tokens,
                          std::span<const std::string> passage_tokens,
                          const ParseTree& answer_tree,
                          const AnnotatorConfig& config);

}  // namespace muspan
