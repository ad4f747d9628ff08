#ifndef OIEROBUST_TREE_HPP
#define OIEROBUST_TREE_HPP

// Constituency trees in Penn-Treebank bracketed notation.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <deque>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oierobust/error.hpp"

namespace oierobust {

struct ConstituencyTree {
  std::string label;
  std::vector<ConstituencyTree> children;
  // True for word tokens written without brackets. A bracketed node with no
  // children, e.g. "(NP)", is a leaf but not a word.
  bool word = false;

  bool is_leaf() const noexcept { return children.empty(); }

  // Node count of the whole subtree.
  std::size_t size() const noexcept {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }

  // Number of levels; a single node has height 1.
  std::size_t height() const noexcept {
    std::size_t h = 0;
    for (const auto& c : children) h = std::max(h, c.height());
    return h + 1;
  }

  friend bool operator==(const ConstituencyTree&,
                         const ConstituencyTree&) = default;
};

struct PrunedTree {
  ConstituencyTree root;
  std::size_t height = 1;
};

using LabelSequence = std::vector<std::string>;

struct ParseOptions {
  // Drop functional decorations such as NP-SBJ or NP=2 from bracketed labels.
  // Labels starting with '-' (-NONE-, -LRB-) are left alone.
  bool strip_function_tags = true;
};

namespace detail {

inline bool is_tree_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

inline std::string strip_function_tag(std::string label) {
  if (label.empty() || label.front() == '-') return label;
  const auto cut = label.find_first_of("-=", 1);
  if (cut != std::string::npos) label.erase(cut);
  return label;
}

class TreeReader {
 public:
  TreeReader(std::string_view text, const ParseOptions& opts)
      : text_(text), opts_(opts) {}

  ConstituencyTree read() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty input", pos_);
    if (text_[pos_] != '(') throw ParseError("expected '('", pos_);
    ConstituencyTree t = read_bracketed();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing characters", pos_);
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_tree_space(text_[pos_])) ++pos_;
  }

  std::string read_token() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_tree_space(text_[pos_]) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Iterative so that deep inputs cannot exhaust the stack.
  ConstituencyTree read_bracketed() {
    std::vector<ConstituencyTree> stack;
    ConstituencyTree result;
    while (true) {
      skip_space();
      if (pos_ == text_.size()) throw ParseError("unbalanced brackets", pos_);
      const char c = text_[pos_];
      if (c == '(') {
        ++pos_;
        skip_space();
        const std::size_t label_at = pos_;
        std::string label = read_token();
        if (label.empty()) throw ParseError("empty label", label_at);
        if (opts_.strip_function_tags) label = strip_function_tag(label);
        ConstituencyTree node;
        node.label = std::move(label);
        stack.push_back(std::move(node));
      } else if (c == ')') {
        if (stack.empty()) throw ParseError("unexpected ')'", pos_);
        ++pos_;
        ConstituencyTree done = std::move(stack.back());
        stack.pop_back();
        if (stack.empty()) {
          result = std::move(done);
          break;
        }
        stack.back().children.push_back(std::move(done));
      } else {
        if (stack.empty()) throw ParseError("expected '('", pos_);
        ConstituencyTree leaf;
        leaf.label = read_token();
        leaf.word = true;
        stack.back().children.push_back(std::move(leaf));
      }
    }
    return result;
  }

  std::string_view text_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

inline void serialize_into(const ConstituencyTree& t, std::string& out) {
  if (t.word) {
    out += t.label;
    return;
  }
  out += '(';
  out += t.label;
  for (const auto& c : t.children) {
    out += ' ';
    serialize_into(c, out);
  }
  out += ')';
}

inline void prune_into(ConstituencyTree& t, std::size_t depth,
                       std::size_t height) {
  if (depth >= height) {
    t.children.clear();
    return;
  }
  for (auto& c : t.children) prune_into(c, depth + 1, height);
}

}  // namespace detail

inline ConstituencyTree parse_tree(std::string_view text,
                                   const ParseOptions& opts = {}) {
  return detail::TreeReader(text, opts).read();
}

// Canonical form: single spaces, words bare, every other node bracketed.
inline std::string serialize(const ConstituencyTree& t) {
  std::string out;
  detail::serialize_into(t, out);
  return out;
}

// Keeps the nodes at depth <= height (root depth is 1).
inline PrunedTree prune(const ConstituencyTree& tree, std::size_t height) {
  if (height == 0) throw ArgumentError("pruning height must be >= 1");
  PrunedTree p{tree, height};
  detail::prune_into(p.root, 1, height);
  return p;
}

// Removes word tokens. The root is kept even when it is itself a word.
inline ConstituencyTree strip_words(const ConstituencyTree& tree) {
  ConstituencyTree out{tree.label, {}, tree.word};
  for (const auto& c : tree.children) {
    if (!c.word) out.children.push_back(strip_words(c));
  }
  return out;
}

inline LabelSequence level_order(const ConstituencyTree& tree) {
  LabelSequence seq;
  std::deque<const ConstituencyTree*> queue{&tree};
  while (!queue.empty()) {
    const ConstituencyTree* n = queue.front();
    queue.pop_front();
    seq.push_back(n->label);
    for (const auto& c : n->children) queue.push_back(&c);
  }
  return seq;
}

}  // namespace oierobust

#endif  // OIEROBUST_TREE_HPP
