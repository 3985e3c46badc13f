#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace muspan {

struct TreeParseError : std::runtime_error {
  TreeParseError(const std::string& what, std::size_t offset_in);
  std::size_t offset;  // byte offset into the input
};

// Labeled constituency tree. A node either has children or carries a single
// surface token, never both.
struct ParseTree {
  std::string label;
  std::string token;  // set iff leaf
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const ParseTree&) const = default;
};

// Reads one Penn-Treebank-style bracketed expression, e.g.
//   (S (NP (DT a) (NN dog)) (VP (VBZ runs)))
// Functional tags and coindexing are stripped from labels ("NP-SBJ-1" -> "NP");
// labels beginning with '-' (-LRB-, -NONE-) are kept verbatim. Escaped
// parentheses in tokens stay in their -LRB-/-RRB- form.
ParseTree parse_bracketed(std::string_view text);

// Canonical single-line form; parse_bracketed(serialize(t)) == t.
std::string serialize(const ParseTree& tree);

// Left-to-right surface tokens.
std::vector<std::string> leaves(const ParseTree& tree);

// Stack-driven depth-first walk where the caller decides, per yielded
// subtree, whether to descend. next() pops and returns the next subtree
// (root first); accept() skips its descendants, reject() queues its children
// so the leftmost is yielded next. Calling next() again without a verdict
// behaves like accept().
class DfsTraversal {
 public:
  explicit DfsTraversal(const ParseTree& root) { stack_.push_back(&root); }

  const ParseTree* next();  // nullptr once exhausted
  void accept() { pending_ = nullptr; }
  void reject();

 private:
  std::vector<const ParseTree*> stack_;
  const ParseTree* pending_ = nullptr;
};

}  // namespace muspan
