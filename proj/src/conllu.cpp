#include "deplabel/conllu.hpp"

#include <algorithm>
#include <cctype>

namespace deplabel::conllu {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

// "3-4" multiword range, "3.1" empty node.
bool is_range_id(std::string_view s) {
  auto dash = s.find('-');
  return dash != std::string_view::npos && all_digits(s.substr(0, dash)) &&
         all_digits(s.substr(dash + 1));
}

bool is_empty_node_id(std::string_view s) {
  auto dot = s.find('.');
  return dot != std::string_view::npos && all_digits(s.substr(0, dot)) &&
         all_digits(s.substr(dot + 1));
}

int parse_int(std::string_view digits, std::size_t line_no, const char* what) {
  try {
    return std::stoi(std::string(digits));
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string(what) + " does not fit in an integer");
  }
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

struct PendingSentence {
  Sentence sentence;
  std::vector<std::size_t> token_lines;
  std::size_t first_line = 0;
};

void finish_sentence(PendingSentence& pending, bool strict, std::vector<Sentence>& out) {
  Sentence& s = pending.sentence;
  const int n = s.size();
  if (n == 0) {
    // Comments with no token rows are dropped; nothing to emit.
    pending = {};
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (s.tokens[i].head > n)
      throw ParseError(pending.token_lines[i], "head out of range");
  }
  if (strict) {
    // Heads must form a tree rooted at 0: acyclic, everything reaches 0.
    for (int i = 1; i <= n; ++i) {
      int cur = i;
      for (int steps = 0; cur != 0; ++steps) {
        if (steps >= n)
          throw ParseError(pending.token_lines[i - 1], "head cycle detected in strict mode");
        cur = s.tokens[cur - 1].head;
      }
    }
  }
  out.push_back(std::move(s));
  pending = {};
}

}  // namespace

std::vector<Sentence> parse(std::string_view text, bool strict, ParseStats* stats) {
  std::vector<Sentence> out;
  PendingSentence pending;
  ParseStats local;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = nl == std::string_view::npos
                                ? text.substr(start)
                                : text.substr(start, nl - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      finish_sentence(pending, strict, out);
    } else if (line.front() == '#') {
      if (pending.sentence.tokens.empty() && pending.sentence.comments.empty())
        pending.first_line = line_no;
      pending.sentence.comments.emplace_back(line);
    } else {
      auto cols = split_tabs(line);
      if (cols.size() != 10)
        throw ParseError(line_no, "expected 10 tab-separated columns, got " +
                                      std::to_string(cols.size()));
      if (is_range_id(cols[0])) {
        ++local.multiword_skipped;
      } else if (is_empty_node_id(cols[0])) {
        ++local.empty_node_skipped;
      } else {
        if (!all_digits(cols[0])) throw ParseError(line_no, "malformed token id");
        Token tok;
        tok.id = parse_int(cols[0], line_no, "token id");
        if (tok.id != pending.sentence.size() + 1)
          throw ParseError(line_no, "non-contiguous token id");
        tok.form = std::string(cols[1]);
        tok.upos = std::string(cols[3]);
        if (!all_digits(cols[6])) throw ParseError(line_no, "non-integer head");
        tok.head = parse_int(cols[6], line_no, "head");
        if (tok.head == tok.id) throw ParseError(line_no, "token is its own head");
        tok.deprel = std::string(cols[7]);
        if (pending.sentence.tokens.empty() && pending.sentence.comments.empty())
          pending.first_line = line_no;
        pending.sentence.tokens.push_back(std::move(tok));
        pending.token_lines.push_back(line_no);
      }
    }

    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  finish_sentence(pending, strict, out);

  if (stats) *stats = local;
  return out;
}

std::string write(const std::vector<Sentence>& sentences) {
  std::string out;
  for (const Sentence& s : sentences) {
    for (const std::string& comment : s.comments) {
      out += comment;
      out += '\n';
    }
    for (const Token& tok : s.tokens) {
      out += std::to_string(tok.id);
      out += '\t';
      out += tok.form;
      out += "\t_\t";
      out += tok.upos;
      out += "\t_\t_\t";
      out += std::to_string(tok.head);
      out += '\t';
      out += tok.deprel;
      out += "\t_\t_\n";
    }
    out += '\n';
  }
  return out;
}

DepTree tree_of(const Sentence& sentence) {
  std::vector<int> heads;
  std::vector<std::string> deprels;
  heads.reserve(sentence.tokens.size());
  deprels.reserve(sentence.tokens.size());
  for (const Token& tok : sentence.tokens) {
    heads.push_back(tok.head);
    deprels.push_back(tok.deprel);
  }
  return DepTree::from_heads(heads, deprels);
}

std::vector<std::string> tags_of(const Sentence& sentence) {
  std::vector<std::string> tags;
  tags.reserve(sentence.tokens.size());
  for (const Token& tok : sentence.tokens) tags.push_back(tok.upos);
  return tags;
}

Sentence with_tree(Sentence sentence, const DepTree& tree) {
  if (tree.n != sentence.size())
    throw std::invalid_argument("tree size does not match sentence length");
  for (int i = 1; i <= tree.n; ++i) {
    sentence.tokens[i - 1].head = tree.heads[i];
    sentence.tokens[i - 1].deprel = tree.deprels[i];
  }
  return sentence;
}

}  // namespace deplabel::conllu
