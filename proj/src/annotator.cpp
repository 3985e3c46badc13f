#include "muspan/annotator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "muspan/text.hpp"

namespace muspan {

PackedSequence pack(std::span<const std::string> question_tokens,
                    std::span<const std::string> passage_tokens) {
  PackedSequence seq;
  seq.tokens.reserve(question_tokens.size() + passage_tokens.size());
  seq.tokens.assign(question_tokens.begin(), question_tokens.end());
  seq.tokens.insert(seq.tokens.end(), passage_tokens.begin(), passage_tokens.end());
  seq.boundary = question_tokens.size();
  seq.match_keys.reserve(seq.tokens.size());
  for (const std::string& tok : seq.tokens) seq.match_keys.push_back(to_lower_ascii(tok));
  return seq;
}

namespace {

std::vector<std::size_t> failure_function(std::span<const std::string> pat) {
  std::vector<std::size_t> fail(pat.size(), 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < pat.size(); ++i) {
    while (k > 0 && pat[i] != pat[k]) k = fail[k - 1];
    if (pat[i] == pat[k]) ++k;
    fail[i] = k;
  }
  return fail;
}

std::optional<std::size_t> kmp_in_range(std::span<const std::string> pat,
                                        const std::vector<std::size_t>& fail,
                                        const std::vector<std::string>& keys,
                                        std::size_t lo, std::size_t hi) {
  if (hi < lo + pat.size()) return std::nullopt;
  std::size_t k = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    while (k > 0 && keys[i] != pat[k]) k = fail[k - 1];
    if (keys[i] == pat[k]) ++k;
    if (k == pat.size()) return i + 1 - pat.size();
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> kmp_find(std::span<const std::string> pattern,
                                    const PackedSequence& seq) {
  if (pattern.empty()) throw std::invalid_argument("kmp_find: empty pattern");
  const auto fail = failure_function(pattern);
  // Segments are searched separately, so a window can never straddle the
  // boundary; any question-side hit starts before any passage-side one.
  if (auto at = kmp_in_range(pattern, fail, seq.match_keys, 0, seq.boundary))
    return at;
  return kmp_in_range(pattern, fail, seq.match_keys, seq.boundary,
                      seq.match_keys.size());
}

int edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return static_cast<int>(a.size());
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string reconstruct(std::span<const Span> spans, const PackedSequence& seq) {
  std::string out;
  for (const Span& s : spans) {
    if (s.start < 0 || s.end < s.start ||
        static_cast<std::size_t>(s.end) >= seq.size())
      throw std::out_of_range("reconstruct: span outside sequence");
    for (int i = s.start; i <= s.end; ++i) {
      if (!out.empty()) out.push_back(' ');
      out += seq.match_keys[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

namespace {

// Single left-to-right pass; a chain of contiguous entries collapses into
// one span because each merge extends the previous output entry.
std::vector<Span> merge_contiguous(std::span<const Span> spans) {
  std::vector<Span> out;
  out.reserve(spans.size());
  for (const Span& s : spans) {
    if (!out.empty() && s.start == out.back().end + 1)
      out.back().end = s.end;
    else
      out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<Span> prune(std::span<const Span> spans) {
  std::vector<Span> sorted(spans.begin(), spans.end());
  for (const Span& s : sorted)
    if (s.end < s.start) throw std::invalid_argument("prune: inverted span");
  std::sort(sorted.begin(), sorted.end(),
            [](const Span& a, const Span& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].start <= sorted[i - 1].end)
      throw std::invalid_argument("prune: overlapping spans");
  return merge_contiguous(spans);
}

AnnotatedExample annotate(std::span<const std::string> question_tokens,
                          std::span<const std::string> passage_tokens,
                          const ParseTree& answer_tree,
                          const AnnotatorConfig& config) {
  const PackedSequence seq = pack(question_tokens, passage_tokens);

  std::vector<Span> matched;
  DfsTraversal walk(answer_tree);
  while (const ParseTree* node = walk.next()) {
    std::vector<std::string> keys;
    for (const std::string& tok : leaves(*node)) keys.push_back(to_lower_ascii(tok));
    if (auto at = kmp_find(keys, seq)) {
      matched.push_back({static_cast<int>(*at),
                         static_cast<int>(*at + keys.size() - 1)});
      walk.accept();
    } else {
      walk.reject();  // a leaf has no children, so this just drops it
    }
  }

  AnnotatedExample out;
  out.boundary = static_cast<int>(seq.boundary);
  out.reconstructed = reconstruct(matched, seq);
  const std::string answer = to_lower_ascii(join_tokens(leaves(answer_tree)));
  out.edit_distance = edit_distance(answer, out.reconstructed);
  if (out.edit_distance > config.d_max) matched.clear();
  // Traversal-order matches of repeated phrases can overlap in the packed
  // text, so the merge runs without prune()'s disjointness check.
  out.spans = merge_contiguous(matched);
  out.accepted = out.edit_distance <= config.d_max && !out.spans.empty() &&
                 static_cast<int>(out.spans.size()) <= config.max_spans;
  return out;
}

}  // namespace muspan
