#include "muspan/tree.hpp"

#include <cctype>

namespace muspan {

TreeParseError::TreeParseError(const std::string& what, std::size_t offset_in)
    : std::runtime_error(what + " (byte " + std::to_string(offset_in) + ")"),
      offset(offset_in) {}

namespace {

inline bool is_space(unsigned char c) { return std::isspace(c) != 0; }

// "NP-SBJ-1" -> "NP", "S=2" -> "S"; punctuation labels like -LRB- keep
// their leading dash and stay whole.
std::string clean_label(std::string raw) {
  if (raw.empty() || raw[0] == '-') return raw;
  auto cut = raw.find_first_of("-=");
  if (cut != std::string::npos) raw.erase(cut);
  return raw;
}

}  // namespace

ParseTree parse_bracketed(std::string_view text) {
  struct Frame {
    ParseTree node;
    std::size_t open;  // offset of this node's '('
  };
  std::vector<Frame> stack;
  ParseTree root;
  bool done = false;

  const std::size_t n = text.size();
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < n && is_space(text[i])) ++i;
  };
  auto read_word = [&] {
    std::size_t start = i;
    while (i < n && !is_space(text[i]) && text[i] != '(' && text[i] != ')') ++i;
    return text.substr(start, i - start);
  };

  skip_ws();
  if (i >= n) throw TreeParseError("empty input", i);
  if (text[i] != '(') throw TreeParseError("expected '('", i);

  while (true) {
    skip_ws();
    if (i >= n) break;
    const char c = text[i];
    if (done) throw TreeParseError("trailing content after tree", i);
    if (c == '(') {
      Frame f;
      f.open = i++;
      skip_ws();
      auto label = read_word();
      if (label.empty()) throw TreeParseError("missing node label", f.open);
      if (!stack.empty() && !stack.back().node.token.empty())
        throw TreeParseError("node mixes a token with subtrees", f.open);
      f.node.label = clean_label(std::string(label));
      stack.push_back(std::move(f));
    } else if (c == ')') {
      if (stack.empty()) throw TreeParseError("unbalanced ')'", i);
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (f.node.children.empty() && f.node.token.empty())
        throw TreeParseError("empty node", f.open);
      ++i;
      if (stack.empty()) {
        root = std::move(f.node);
        done = true;
      } else {
        stack.back().node.children.push_back(std::move(f.node));
      }
    } else {
      std::size_t start = i;
      auto word = read_word();
      ParseTree& top = stack.back().node;
      if (!top.children.empty())
        throw TreeParseError("node mixes a token with subtrees", start);
      if (!top.token.empty())
        throw TreeParseError("multiple tokens under one label", start);
      top.token = std::string(word);
    }
  }
  if (!done)
    throw TreeParseError("unbalanced '(' at end of input",
                         stack.empty() ? n : stack.back().open);
  return root;
}

namespace {

void serialize_into(const ParseTree& t, std::string& out) {
  out.push_back('(');
  out += t.label;
  if (t.is_leaf()) {
    out.push_back(' ');
    out += t.token;
  } else {
    for (const ParseTree& child : t.children) {
      out.push_back(' ');
      serialize_into(child, out);
    }
  }
  out.push_back(')');
}

}  // namespace

std::string serialize(const ParseTree& tree) {
  std::string out;
  serialize_into(tree, out);
  return out;
}

std::vector<std::string> leaves(const ParseTree& tree) {
  std::vector<std::string> out;
  std::vector<const ParseTree*> stack{&tree};
  while (!stack.empty()) {
    const ParseTree* node = stack.back();
    stack.pop_back();
    if (node->is_leaf()) {
      out.push_back(node->token);
    } else {
      for (auto it = node->children.rbegin(); it != node->children.rend(); ++it)
        stack.push_back(&*it);
    }
  }
  return out;
}

const ParseTree* DfsTraversal::next() {
  pending_ = nullptr;
  if (stack_.empty()) return nullptr;
  pending_ = stack_.back();
  stack_.pop_back();
  return pending_;
}

void DfsTraversal::reject() {
  if (pending_ == nullptr)
    throw std::logic_error("reject() called without a pending subtree");
  // Children go on right to left so the leftmost one is popped next.
  for (auto it = pending_->children.rbegin(); it != pending_->children.rend(); ++it)
    stack_.push_back(&*it);
  pending_ = nullptr;
}

}  // namespace muspan
