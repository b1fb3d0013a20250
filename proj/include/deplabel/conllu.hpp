#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deplabel/deptree.hpp"

namespace deplabel::conllu {

// One syntactic word. Only the columns the toolkit works with are kept;
// LEMMA, XPOS, FEATS, DEPS and MISC are read but written back as "_".
struct Token {
  int id = 0;
  std::string form = "_";
  std::string upos = "_";  // "_" when absent
  int head = 0;
  std::string deprel = "_";

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<std::string> comments;  // verbatim lines, leading '#' included

  int size() const { return static_cast<int>(tokens.size()); }
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// Rows skipped during parsing: multiword-token ranges ("3-4") and empty
// nodes ("3.1").
struct ParseStats {
  std::size_t multiword_skipped = 0;
  std::size_t empty_node_skipped = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses CoNLL-U text: tab-separated 10-column token rows, '#' comments,
// blank-line sentence separation. Multiword and empty-node rows are skipped
// and counted. Head range and self-reference are always checked; strict mode
// additionally requires each sentence's heads to form a tree rooted at 0.
// Non-strict mode accepts multi-root and cyclic head columns, so raw decoder
// output can be serialized and read back before repair.
std::vector<Sentence> parse(std::string_view text, bool strict = false,
                            ParseStats* stats = nullptr);

// Serializes sentences back to CoNLL-U. Unused columns become "_".
// parse(write(s)) reproduces ids, forms, upos, heads, deprels and comments.
std::string write(const std::vector<Sentence>& sentences);

// Convenience glue with the tree model.
DepTree tree_of(const Sentence& sentence);
std::vector<std::string> tags_of(const Sentence& sentence);  // upos per token
Sentence with_tree(Sentence sentence, const DepTree& tree);  // heads/deprels replaced

}  // namespace deplabel::conllu
